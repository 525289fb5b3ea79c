//! Local explorer for the Bruhat–Tits building of `PGL_n(F_q((t)))`.
//!
//! Vertices are homothety classes of lattices, represented by canonical
//! upper-triangular matrices over `F_q[t]` with diagonal `t^{m_i}` and entries
//! `deg f_{i,j} < m_i` above the diagonal, with trivial `t`-content.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::{Field, FieldElement, TowerMap};
use crate::ffpoly::Polynomial;
use crate::graph::Graph;

pub type PolyMatrix = Vec<Vec<Polynomial>>;

/// Largest rank handled; minors are expanded directly.
pub const MAX_RANK: usize = 4;
/// Default radius cap for rank-3 audits.
pub const DEFAULT_RANK3_RADIUS: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BuildingVertex {
    exponents: Vec<usize>,
    entries: PolyMatrix,
}

fn check_square(field: &Field, m: &PolyMatrix) -> Result<usize> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return Err(Error::RaggedMatrix);
    }
    if m.iter().flatten().any(|p| p.field() != field) {
        return Err(Error::FieldMismatch);
    }
    Ok(n)
}

fn det(m: &PolyMatrix) -> Polynomial {
    let n = m.len();
    let field = m[0][0].field().clone();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Polynomial::zero(&field);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: PolyMatrix = m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, p)| p.clone()).collect()).collect();
        let term = &m[0][j] * &det(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn mat_mul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let n = a.len();
    let field = a[0][0].field().clone();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Polynomial::zero(&field), |acc, k| &acc + &(&a[i][k] * &b[k][j])))
                .collect()
        })
        .collect()
}

fn adjugate(m: &PolyMatrix) -> PolyMatrix {
    let n = m.len();
    let field = m[0][0].field().clone();
    if n == 1 {
        return vec![vec![Polynomial::one(&field)]];
    }
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let minor: PolyMatrix = (0..n)
                        .filter(|&r| r != j)
                        .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c].clone()).collect())
                        .collect();
                    let d = det(&minor);
                    if (i + j) % 2 == 0 {
                        d
                    } else {
                        -&d
                    }
                })
                .collect()
        })
        .collect()
}

/// Inverse of a unit power series modulo `t^k`.
fn series_inverse(u: &Polynomial, k: usize) -> Polynomial {
    let field = u.field().clone();
    let b0 = u.coeff(0).inv().expect("unit constant term");
    let mut b = vec![b0.clone()];
    for i in 1..k {
        let mut s = field.zero();
        for j in 1..=i {
            s = &s + &(&u.coeff(j) * &b[i - j]);
        }
        b.push(-&(&b0 * &s));
    }
    Polynomial::new(&field, b).expect("same field")
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur = vec![];
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `t`-adic valuations of the elementary divisors, ascending.
pub fn elementary_divisors(m: &PolyMatrix) -> Result<Vec<usize>> {
    let n = m.len();
    let mut prefix = vec![0usize];
    for k in 1..=n {
        let mut best: Option<usize> = None;
        for rows in k_subsets(n, k) {
            for cols in k_subsets(n, k) {
                let sub: PolyMatrix = rows.iter().map(|&r| cols.iter().map(|&c| m[r][c].clone()).collect()).collect();
                if let Some(v) = det(&sub).valuation() {
                    best = Some(best.map_or(v, |b: usize| b.min(v)));
                }
            }
        }
        prefix.push(best.ok_or(Error::SingularMatrix)?);
    }
    Ok(prefix.windows(2).map(|w| w[1] - w[0]).collect())
}

impl BuildingVertex {
    /// Column Hermite reduction over `F_q[[t]]` followed by removal of the `t`-content.
    pub fn canonicalize(field: &Field, m: &PolyMatrix) -> Result<BuildingVertex> {
        let n = check_square(field, m)?;
        if n > MAX_RANK {
            return Err(Error::InvalidParameter(format!("rank {n} exceeds {MAX_RANK}")));
        }
        let d = det(m);
        let k = d.valuation().ok_or(Error::SingularMatrix)? + 1;
        let mut cols: Vec<Vec<Polynomial>> = (0..n).map(|j| (0..n).map(|i| m[i][j].truncate(k)).collect()).collect();
        let mut exponents = vec![0usize; n];
        for r in (0..n).rev() {
            let (c, v) = (0..=r)
                .filter_map(|c| cols[c][r].valuation().map(|v| (c, v)))
                .min_by_key(|&(c, v)| (v, c))
                .ok_or(Error::SingularMatrix)?;
            cols.swap(c, r);
            let unit = cols[r][r].shift_down(v);
            let scale = series_inverse(&unit, k);
            for i in 0..=r {
                cols[r][i] = (&cols[r][i] * &scale).truncate(k);
            }
            exponents[r] = v;
            for c in 0..r {
                if cols[c][r].is_zero() {
                    continue;
                }
                let factor = cols[c][r].shift_down(v);
                for i in 0..=r {
                    cols[c][i] = (&cols[c][i] - &(&factor * &cols[r][i])).truncate(k);
                }
            }
        }
        for j in 0..n {
            for i in (0..j).rev() {
                let factor = cols[j][i].shift_down(exponents[i]);
                if factor.is_zero() {
                    continue;
                }
                for r in 0..=i {
                    cols[j][r] = &cols[j][r] - &(&factor * &cols[i][r]);
                }
            }
        }
        let mut entries: PolyMatrix = (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect();
        let content = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .filter_map(|(i, j)| entries[i][j].valuation())
            .min()
            .unwrap_or(0);
        if content > 0 {
            for row in entries.iter_mut() {
                for p in row.iter_mut() {
                    *p = p.shift_down(content);
                }
            }
            for e in exponents.iter_mut() {
                *e -= content;
            }
        }
        Ok(BuildingVertex { exponents, entries })
    }

    pub fn standard(field: &Field, n: usize) -> BuildingVertex {
        let entries = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Polynomial::one(field) } else { Polynomial::zero(field) }).collect())
            .collect();
        BuildingVertex { exponents: vec![0; n], entries }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn field(&self) -> &Field {
        self.entries[0][0].field()
    }

    /// Diagonal exponents `m_1, …, m_n`.
    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.entries
    }

    /// `Σ m_i mod n`.
    pub fn color(&self) -> usize {
        self.exponents.iter().sum::<usize>() % self.rank()
    }

    pub fn is_standard(&self) -> bool {
        self.exponents.iter().all(|&m| m == 0)
    }

    /// Matrix label in the style `((1,0),(0,t^2))`.
    pub fn label(&self, var: &str) -> String {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|row| format!("({})", row.iter().map(|p| poly_label(p, var)).collect::<Vec<_>>().join(",")))
            .collect();
        format!("({})", rows.join(","))
    }
}

impl fmt::Display for BuildingVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label("t"))
    }
}

impl Serialize for BuildingVertex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(serializer)
    }
}

fn coeff_label(c: &FieldElement) -> String {
    if c.is_prime_subfield() {
        c.coeffs()[0].to_string()
    } else {
        format!("[{}]", c.coeffs().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    }
}

/// Sparse polynomial text: `1+2t+t^3`.
pub fn poly_label(p: &Polynomial, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms = vec![];
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let cs = coeff_label(c);
        terms.push(match (i, c.is_one()) {
            (0, _) => cs,
            (1, true) => var.to_string(),
            (1, false) => format!("{cs}{var}"),
            (_, true) => format!("{var}^{i}"),
            (_, false) => format!("{cs}{var}^{i}"),
        });
    }
    terms.join("+")
}

/// Lattice distance in the 1-skeleton: spread of the relative elementary divisors.
pub fn distance(a: &BuildingVertex, b: &BuildingVertex) -> Result<usize> {
    if a.rank() != b.rank() || a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let rel = mat_mul(&adjugate(&a.entries), &b.entries);
    let e = elementary_divisors(&rel)?;
    Ok(e[e.len() - 1] - e[0])
}

/// The neighbor matrices `A` of the standard vertex.
#[derive(Clone, Debug)]
pub struct NeighborAlphabet {
    field: Field,
    n: usize,
    matrices: Vec<PolyMatrix>,
    exponents: Vec<Vec<usize>>,
}

impl NeighborAlphabet {
    pub fn new(n: usize, q: u64) -> Result<NeighborAlphabet> {
        let field = Field::with_order(q)?;
        NeighborAlphabet::over(&field, n)
    }

    /// Exhaustive enumeration: `m_i ∈ {0, 1}`, not all equal; `f_{i,j} ∈ F_q` when
    /// `m_i = 1` and `m_j = 0`, otherwise `0`.
    pub fn over(field: &Field, n: usize) -> Result<NeighborAlphabet> {
        if !(2..=MAX_RANK).contains(&n) {
            return Err(Error::InvalidParameter(format!("rank must lie in 2..={MAX_RANK}, got {n}")));
        }
        let elements: Vec<FieldElement> = field.elements().collect();
        let mut matrices = vec![];
        let mut exponents = vec![];
        for mask in 1..(1usize << n) - 1 {
            let m: Vec<usize> = (0..n).map(|i| (mask >> i) & 1).collect();
            let free: Vec<(usize, usize)> =
                (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| m[i] == 1 && m[j] == 0).collect();
            let count = (elements.len() as u64).pow(free.len() as u32);
            for idx in 0..count {
                let mut a: PolyMatrix = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| if i == j { Polynomial::monomial(field.one(), m[i]) } else { Polynomial::zero(field) })
                            .collect()
                    })
                    .collect();
                let mut rest = idx;
                for &(i, j) in free.iter().rev() {
                    a[i][j] = Polynomial::constant(elements[(rest % elements.len() as u64) as usize].clone());
                    rest /= elements.len() as u64;
                }
                matrices.push(a);
                exponents.push(m.clone());
            }
        }
        Ok(NeighborAlphabet { field: field.clone(), n, matrices, exponents })
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrices(&self) -> &[PolyMatrix] {
        &self.matrices
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// `D(A) = diag(t^{m_i})`.
    pub fn diagonal(&self, k: usize) -> PolyMatrix {
        diag(&self.field, &self.exponents[k])
    }

    /// `T(A) = A·D(A)`: the diagonal of `A` squared.
    pub fn ramified_image(&self, k: usize) -> PolyMatrix {
        mat_mul(&self.matrices[k], &self.diagonal(k))
    }
}

fn diag(field: &Field, exps: &[usize]) -> PolyMatrix {
    let n = exps.len();
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Polynomial::monomial(field.one(), exps[i]) } else { Polynomial::zero(field) }).collect())
        .collect()
}

/// Canonical neighbors `{[A_v · A] : A ∈ N}`, deduplicated in alphabet order.
pub fn neighbors(v: &BuildingVertex, alphabet: &NeighborAlphabet) -> Result<Vec<BuildingVertex>> {
    if v.rank() != alphabet.n || v.field() != &alphabet.field {
        return Err(Error::FieldMismatch);
    }
    let mut seen = HashSet::new();
    let mut out = vec![];
    for a in &alphabet.matrices {
        let w = BuildingVertex::canonicalize(&alphabet.field, &mat_mul(&v.entries, a))?;
        if seen.insert(w.clone()) {
            out.push(w);
        }
    }
    Ok(out)
}

/// `s ↦ t²` in every entry, then canonicalize.
pub fn embed_ramified(v: &BuildingVertex) -> Result<BuildingVertex> {
    let m: PolyMatrix = v.entries.iter().map(|row| row.iter().map(|p| p.inflate(2)).collect()).collect();
    BuildingVertex::canonicalize(v.field(), &m)
}

/// Coefficient-wise inclusion of the base field into the target field.
pub fn embed_unramified(v: &BuildingVertex, map: &TowerMap) -> Result<BuildingVertex> {
    if v.field() != map.source() {
        return Err(Error::FieldMismatch);
    }
    let m = v
        .entries
        .iter()
        .map(|row| row.iter().map(|p| p.map_coeffs(map.target(), |c| map.apply(c))).collect::<Result<Vec<_>>>())
        .collect::<Result<PolyMatrix>>()?;
    BuildingVertex::canonicalize(map.target(), &m)
}

/// Ball around the standard vertex, materialized by BFS with deterministic ids.
#[derive(Clone, Debug)]
pub struct Ball {
    radius: usize,
    vertices: Vec<BuildingVertex>,
    dist: Vec<usize>,
    index: HashMap<BuildingVertex, usize>,
    /// In-ball neighbors, in alphabet order.
    adjacency: Vec<Vec<usize>>,
    /// Full neighbor count of each vertex.
    full_degree: Vec<usize>,
}

impl Ball {
    pub fn new(alphabet: &NeighborAlphabet, radius: usize) -> Result<Ball> {
        let root = BuildingVertex::standard(&alphabet.field, alphabet.n);
        let mut vertices = vec![root.clone()];
        let mut dist = vec![0];
        let mut index = HashMap::from([(root, 0usize)]);
        let mut nbrs: Vec<Vec<BuildingVertex>> = vec![];
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            let list = neighbors(&vertices[u], alphabet)?;
            if dist[u] < radius {
                for w in &list {
                    if !index.contains_key(w) {
                        let id = vertices.len();
                        index.insert(w.clone(), id);
                        vertices.push(w.clone());
                        dist.push(dist[u] + 1);
                        queue.push_back(id);
                    }
                }
            }
            nbrs.push(list);
        }
        for v in &vertices {
            debug_assert!(v.exponents().iter().all(|&m| m <= radius.max(1) * (alphabet.n - 1)));
        }
        let adjacency = nbrs.iter().map(|list| list.iter().filter_map(|w| index.get(w).copied()).collect()).collect();
        let full_degree = nbrs.iter().map(|l| l.len()).collect();
        Ok(Ball { radius, vertices, dist, index, adjacency, full_degree })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[BuildingVertex] {
        &self.vertices
    }

    pub fn vertex(&self, id: usize) -> &BuildingVertex {
        &self.vertices[id]
    }

    pub fn id_of(&self, v: &BuildingVertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn dist(&self, id: usize) -> usize {
        self.dist[id]
    }

    pub fn adjacency(&self, id: usize) -> &[usize] {
        &self.adjacency[id]
    }

    pub fn full_degree(&self, id: usize) -> usize {
        self.full_degree[id]
    }

    /// Every neighbor of `id` lies in the ball.
    pub fn is_interior(&self, id: usize) -> bool {
        self.adjacency[id].len() == self.full_degree[id]
    }

    /// Vertex counts by distance from the center.
    pub fn sphere_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.radius + 1];
        for &d in &self.dist {
            out[d] += 1;
        }
        out
    }

    pub fn graph(&self) -> Result<Graph> {
        let mut edges = vec![];
        for (u, list) in self.adjacency.iter().enumerate() {
            for &w in list {
                if u < w {
                    edges.push((u, w));
                }
            }
        }
        Graph::from_edges(self.len(), &edges)
    }

    pub fn labels(&self, var: &str) -> Vec<String> {
        self.vertices.iter().map(|v| v.label(var)).collect()
    }

    pub fn to_dot(&self, var: &str) -> Result<String> {
        Ok(self.graph()?.to_dot(Some(&self.labels(var))))
    }

    pub fn to_json(&self, var: &str) -> serde_json::Value {
        let vertices: Vec<serde_json::Value> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| {
                serde_json::json!({
                    "id": i,
                    "label": v.label(var),
                    "distance": self.dist[i],
                    "color": v.color(),
                    "exponents": v.exponents(),
                })
            })
            .collect();
        let mut edges = vec![];
        for (u, list) in self.adjacency.iter().enumerate() {
            for &w in list {
                if u < w {
                    edges.push([u, w]);
                }
            }
        }
        serde_json::json!({ "radius": self.radius, "vertices": vertices, "edges": edges })
    }
}

/// `1 + (q+1)(q^r − 1)/(q − 1)`.
pub fn tree_ball_size(q: u64, r: u32) -> u64 {
    1 + (q + 1) * (q.pow(r) - 1) / (q - 1)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UniqueNeighborAudit {
    pub rank: usize,
    pub q: u64,
    pub radius: usize,
    pub ball_size: usize,
    pub z_size: usize,
    /// Vertices of `N(Z)` at distance `≤ radius − 1` from the center.
    pub audited: usize,
    pub histogram: BTreeMap<usize, usize>,
    pub witness_checks: usize,
    pub witness_failures: usize,
    pub counterexample: Option<String>,
    pub pass: bool,
}

/// Counts `Z`-neighbors of every interior vertex adjacent to `Z`; passes when all
/// counts equal 2.
pub fn audit_no_unique_neighbors(ball: &Ball, z: &HashSet<usize>) -> Result<UniqueNeighborAudit> {
    if ball.radius < 1 {
        return Err(Error::BoundaryContamination("radius must be at least 1".into()));
    }
    let mut histogram = BTreeMap::new();
    let mut counterexample = None;
    let mut audited = 0;
    for x in 0..ball.len() {
        if ball.dist[x] + 1 > ball.radius {
            continue;
        }
        let count = ball.adjacency[x].iter().filter(|w| z.contains(w)).count();
        if count == 0 {
            continue;
        }
        debug_assert!(ball.is_interior(x));
        audited += 1;
        *histogram.entry(count).or_insert(0) += 1;
        if count != 2 && counterexample.is_none() {
            counterexample = Some(ball.vertices[x].to_string());
        }
    }
    let field = ball.vertices[0].field();
    Ok(UniqueNeighborAudit {
        rank: ball.vertices[0].rank(),
        q: field.order(),
        radius: ball.radius,
        ball_size: ball.len(),
        z_size: z.len(),
        audited,
        pass: audited > 0 && counterexample.is_none(),
        histogram,
        witness_checks: 0,
        witness_failures: 0,
        counterexample,
    })
}

/// Ball of radius `radius` and the ids of its vertices in the ramified image.
/// The image of the source ball of radius `radius/2 + 1` covers every image vertex
/// of the target ball, since the embedding doubles distances.
pub fn ramified_image(alphabet: &NeighborAlphabet, radius: usize) -> Result<(Ball, HashSet<usize>)> {
    let big = Ball::new(alphabet, radius)?;
    let small = Ball::new(alphabet, radius / 2 + 1)?;
    let mut z = HashSet::new();
    for v in small.vertices() {
        if let Some(id) = big.id_of(&embed_ramified(v)?) {
            z.insert(id);
        }
    }
    Ok((big, z))
}

/// Source ball over `F_q`, target ball over `F_{q²}` (rank 2, same radius) and the
/// image id of every source vertex.
pub fn unramified_image(q: u64, radius: usize) -> Result<(Ball, Ball, Vec<Option<usize>>)> {
    let small_field = Field::with_order(q)?;
    let big_field = Field::with_order(q * q)?;
    let map = TowerMap::new(&small_field, &big_field)?;
    let small = Ball::new(&NeighborAlphabet::over(&small_field, 2)?, radius)?;
    let big = Ball::new(&NeighborAlphabet::over(&big_field, 2)?, radius)?;
    let image = small.vertices().iter().map(|v| Ok(big.id_of(&embed_unramified(v, &map)?))).collect::<Result<Vec<_>>>()?;
    Ok((small, big, image))
}

/// Image of the ramified embedding inside a ball of radius `radius`, with the
/// constructive second-neighbor witness `M·A·D(A) = M·T(A) ∈ Z` checked for every
/// audited neighbor.
pub fn ramified_audit(n: usize, q: u64, radius: usize) -> Result<UniqueNeighborAudit> {
    if radius < 2 {
        return Err(Error::BoundaryContamination("ramified audit needs radius at least 2".into()));
    }
    let alphabet = NeighborAlphabet::new(n, q)?;
    let (big, z) = ramified_image(&alphabet, radius)?;
    let mut report = audit_no_unique_neighbors(&big, &z)?;
    let field = alphabet.field().clone();
    for &zid in &z {
        if big.dist[zid] + 2 > radius {
            continue;
        }
        let m = &big.vertices[zid].entries;
        for k in 0..alphabet.len() {
            let x = BuildingVertex::canonicalize(&field, &mat_mul(m, &alphabet.matrices[k]))?;
            let w = BuildingVertex::canonicalize(&field, &mat_mul(m, &alphabet.ramified_image(k)))?;
            let via_x = BuildingVertex::canonicalize(&field, &mat_mul(&x.entries, &alphabet.diagonal(k)))?;
            report.witness_checks += 1;
            let ok = via_x == w
                && w != big.vertices[zid]
                && big.id_of(&w).is_some_and(|wid| z.contains(&wid))
                && distance(&x, &w)? == 1;
            if !ok {
                report.witness_failures += 1;
                if report.counterexample.is_none() {
                    report.counterexample = Some(x.to_string());
                }
            }
        }
    }
    report.pass &= report.witness_failures == 0;
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InternalDegreeAudit {
    pub q: u64,
    pub radius: usize,
    pub ball_size: usize,
    pub z_size: usize,
    pub audited: usize,
    /// `q + 1`.
    pub expected: usize,
    /// `q² + 1`.
    pub full_degree: usize,
    pub histogram: BTreeMap<usize, usize>,
    pub injective: bool,
    pub adjacency_preserved: bool,
    pub pass: bool,
}

/// Internal `Z`-degree of interior vertices of the unramified image `F_q ↪ F_{q²}` (rank 2).
pub fn unramified_audit(q: u64, radius: usize) -> Result<InternalDegreeAudit> {
    if radius < 1 {
        return Err(Error::BoundaryContamination("unramified audit needs radius at least 1".into()));
    }
    let (small, big, image) = unramified_image(q, radius)?;
    let injective = image.iter().flatten().collect::<HashSet<_>>().len() == small.len() && image.iter().all(Option::is_some);
    let z: HashSet<usize> = image.iter().flatten().copied().collect();
    let adjacency_preserved = (0..small.len()).all(|u| {
        small.adjacency[u].iter().all(|&w| match (image[u], image[w]) {
            (Some(a), Some(b)) => big.adjacency[a].contains(&b),
            _ => false,
        })
    });
    let mut histogram = BTreeMap::new();
    let mut audited = 0;
    for &id in &z {
        if big.dist[id] + 1 > radius {
            continue;
        }
        audited += 1;
        let count = big.adjacency[id].iter().filter(|w| z.contains(w)).count();
        *histogram.entry(count).or_insert(0) += 1;
    }
    let expected = q as usize + 1;
    let pass = injective && adjacency_preserved && audited > 0 && histogram.keys().all(|&k| k == expected);
    Ok(InternalDegreeAudit {
        q,
        radius,
        ball_size: big.len(),
        z_size: z.len(),
        audited,
        expected,
        full_degree: (q * q) as usize + 1,
        histogram,
        injective,
        adjacency_preserved,
        pass,
    })
}
