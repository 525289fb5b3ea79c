//! Vertex and edge expansion audits, non-backtracking walk counts, the
//! irregular Moore bound, Chebyshev identities for non-backtracking operators,
//! and the finite-l Kahale bounds.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigUint;
use num_traits::{CheckedAdd, CheckedSub, One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph, Subset};
use crate::spectral::{adjacency_matrix, RamanujanAudit};

fn big_as_string<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn bigs_as_strings<S: Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn to_f64(v: &BigUint) -> f64 {
    v.to_f64().unwrap_or(f64::INFINITY)
}

/// Neighbor multiplicities of a subset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NeighborProfile {
    pub subset_size: usize,
    /// `N(Y)`, sorted; may meet `Y`.
    pub boundary: Vec<usize>,
    /// Number of `Y`-neighbors (with multiplicity) → number of vertices.
    pub histogram: BTreeMap<usize, usize>,
    pub has_unique_neighbor: bool,
    pub has_odd_neighbor: bool,
}

impl NeighborProfile {
    pub fn boundary_size(&self) -> usize {
        self.boundary.len()
    }
}

/// Count of edges from `s` into each vertex.
fn neighbor_counts(g: &Graph, s: &Subset) -> Vec<usize> {
    let mut count = vec![0usize; g.n()];
    for &v in s.ids() {
        for w in g.neighbors(v) {
            count[w] += 1;
        }
    }
    count
}

pub fn neighbor_profile(g: &Graph, y: &Subset) -> Result<NeighborProfile> {
    if y.is_empty() {
        return Err(Error::InvalidSubset("subset is empty".into()));
    }
    if y.universe() != g.n() {
        return Err(Error::InvalidSubset("subset universe differs from graph".into()));
    }
    let count = neighbor_counts(g, y);
    let boundary: Vec<usize> = (0..g.n()).filter(|&x| count[x] > 0).collect();
    let mut histogram = BTreeMap::new();
    for &x in &boundary {
        *histogram.entry(count[x]).or_insert(0) += 1;
    }
    Ok(NeighborProfile {
        subset_size: y.len(),
        has_unique_neighbor: histogram.contains_key(&1),
        has_odd_neighbor: histogram.keys().any(|k| k % 2 == 1),
        boundary,
        histogram,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InducedDegree {
    /// Directed edges with both ends in `S`.
    pub edges: usize,
    pub size: usize,
    pub value: f64,
}

pub fn induced_average_degree(g: &Graph, s: &Subset) -> Result<InducedDegree> {
    if s.is_empty() {
        return Err(Error::InvalidSubset("subset is empty".into()));
    }
    let edges = (0..g.edge_count()).filter(|&e| s.contains(g.src(e)) && s.contains(g.dst(e))).count();
    Ok(InducedDegree { edges, size: s.len(), value: edges as f64 / s.len() as f64 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CounterWidth {
    U128,
    Big,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetWalks {
    pub size: usize,
    /// `M_l(S)` for `l = 1..=l_max`.
    #[serde(serialize_with = "bigs_as_strings")]
    pub within: Vec<BigUint>,
    /// `M_l(S, X)` for `l = 1..=l_max`.
    #[serde(serialize_with = "bigs_as_strings")]
    pub from_to: Vec<BigUint>,
}

/// Non-backtracking path counts, indexed by `l − 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WalkCounts {
    pub l_max: usize,
    #[serde(serialize_with = "bigs_as_strings")]
    pub total: Vec<BigUint>,
    pub subsets: Vec<SubsetWalks>,
    pub width: CounterWidth,
}

impl WalkCounts {
    /// `M_l(X)`.
    pub fn total_at(&self, l: usize) -> &BigUint {
        &self.total[l - 1]
    }
}

/// Edge transfer recursion: `c'(e') = Σ_{t(e)=s(e')} c(e) − c(ē')`. Returns
/// per-`l` sums over paths whose first edge leaves `start` and last edge enters `end`;
/// `None` on overflow.
fn transfer<T>(g: &Graph, start: Option<&Subset>, end: Option<&Subset>, l_max: usize) -> Option<Vec<T>>
where
    T: Clone + Zero + One + CheckedAdd + CheckedSub,
{
    let m = g.edge_count();
    let mut c: Vec<T> = (0..m)
        .map(|e| if start.is_none_or(|s| s.contains(g.src(e))) { T::one() } else { T::zero() })
        .collect();
    let mut out = Vec::with_capacity(l_max);
    let mut in_sum = vec![T::zero(); g.n()];
    for l in 1..=l_max {
        let mut total = T::zero();
        for e in 0..m {
            if end.is_none_or(|s| s.contains(g.dst(e))) {
                total = total.checked_add(&c[e])?;
            }
        }
        out.push(total);
        if l == l_max {
            break;
        }
        in_sum.iter_mut().for_each(|x| *x = T::zero());
        for e in 0..m {
            let t = g.dst(e);
            in_sum[t] = in_sum[t].checked_add(&c[e])?;
        }
        let next = (0..m)
            .map(|e| in_sum[g.src(e)].checked_sub(&c[g.rev(e)]))
            .collect::<Option<Vec<T>>>()?;
        c = next;
    }
    Some(out)
}

fn transfer_big(g: &Graph, start: Option<&Subset>, end: Option<&Subset>, l_max: usize, width: &mut CounterWidth) -> Vec<BigUint> {
    if *width == CounterWidth::U128 {
        if let Some(v) = transfer::<u128>(g, start, end, l_max) {
            return v.into_iter().map(BigUint::from).collect();
        }
        *width = CounterWidth::Big;
    }
    transfer::<BigUint>(g, start, end, l_max).expect("big integers do not overflow")
}

/// `M_l(X)`, and for each subset `M_l(S)` and `M_l(S, X)`, for `1 ≤ l ≤ l_max`.
pub fn nb_counts(g: &Graph, l_max: usize, subsets: &[Subset]) -> Result<WalkCounts> {
    if l_max == 0 {
        return Err(Error::InvalidParameter("l_max must be at least 1".into()));
    }
    if subsets.iter().any(|s| s.universe() != g.n()) {
        return Err(Error::InvalidSubset("subset universe differs from graph".into()));
    }
    let mut width = CounterWidth::U128;
    let total = transfer_big(g, None, None, l_max, &mut width);
    let subsets = subsets
        .iter()
        .map(|s| {
            let induced = g.induced(s);
            SubsetWalks {
                size: s.len(),
                within: transfer_big(&induced, None, None, l_max, &mut width),
                from_to: transfer_big(g, Some(s), Some(s), l_max, &mut width),
            }
        })
        .collect();
    Ok(WalkCounts { l_max, total, subsets, width })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MooreRow {
    pub l: usize,
    #[serde(serialize_with = "big_as_string")]
    pub observed: BigUint,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BipartiteComparison {
    pub left_size: usize,
    pub right_size: usize,
    pub d_bar_left: f64,
    pub d_bar_right: f64,
    /// `√((d̄_L − 1)(d̄_R − 1))`.
    pub rhs: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MooreReport {
    pub n: usize,
    pub directed_edges: usize,
    pub d_bar: f64,
    pub d_tilde: f64,
    pub regular: bool,
    pub d_comparison_pass: bool,
    /// `d̃ > d̄` beyond rounding.
    pub strict: bool,
    pub bipartite: Option<BipartiteComparison>,
    pub rows: Vec<MooreRow>,
    pub pass: bool,
}

/// Relative slack for floating comparisons against exact counts.
const REL_TOL: f64 = 1e-9;

/// `d̃ − 1 = exp(Σ_e ln(d_{s(e)} − 1) / m)`.
pub fn d_tilde(g: &Graph) -> Result<f64> {
    let m = g.edge_count();
    if m == 0 {
        return Err(Error::InvalidGraph("graph has no edges".into()));
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 1) {
        return Err(Error::DegreeOneVertex(v));
    }
    let log_sum: f64 = (0..g.n())
        .map(|v| {
            let d = g.degree(v) as f64;
            if d == 0.0 {
                0.0
            } else {
                d * (d - 1.0).ln()
            }
        })
        .sum();
    Ok((log_sum / m as f64).exp() + 1.0)
}

/// Checks `M_l(X) ≥ m(d̃ − 1)^{l−1}` for `l ≤ l_max`, `d̃ ≥ d̄`, and the bipartite
/// comparison `d̃ − 1 ≥ √((d̄_L − 1)(d̄_R − 1))`. Degree-1 vertices must be peeled first.
pub fn moore_audit(g: &Graph, l_max: usize) -> Result<MooreReport> {
    let dt = d_tilde(g)?;
    let m = g.edge_count();
    let d_bar = g.average_degree();
    let counts = nb_counts(g, l_max, &[])?;
    let rows: Vec<MooreRow> = (1..=l_max)
        .map(|l| {
            let observed = counts.total_at(l).clone();
            let bound = m as f64 * (dt - 1.0).powi(l as i32 - 1);
            let pass = to_f64(&observed) >= bound * (1.0 - REL_TOL);
            MooreRow { l, observed, bound, pass }
        })
        .collect();
    let regular = g.regular_degree().is_some();
    let d_comparison_pass = dt >= d_bar * (1.0 - REL_TOL);
    let strict = dt > d_bar * (1.0 + REL_TOL);
    let bipartite = match g.bipartition() {
        Bipartition::Coloring(color) => {
            let left = color.iter().filter(|&&c| c == 0).count();
            let right = g.n() - left;
            let d_l = (m / 2) as f64 / left as f64;
            let d_r = (m / 2) as f64 / right as f64;
            let rhs = ((d_l - 1.0) * (d_r - 1.0)).max(0.0).sqrt();
            Some(BipartiteComparison {
                left_size: left,
                right_size: right,
                d_bar_left: d_l,
                d_bar_right: d_r,
                rhs,
                pass: dt - 1.0 >= rhs * (1.0 - REL_TOL),
            })
        }
        Bipartition::OddCycle(_) => None,
    };
    let pass = rows.iter().all(|r| r.pass) && d_comparison_pass && bipartite.as_ref().is_none_or(|b| b.pass);
    Ok(MooreReport { n: g.n(), directed_edges: m, d_bar, d_tilde: dt, regular, d_comparison_pass, strict, bipartite, rows, pass })
}

/// Non-backtracking operators `A_1, …, A_{l_max}` as dense row-major `n × n`
/// integer matrices; entry `(x, y)` counts paths from `y` to `x`.
pub fn nb_operators(g: &Graph, l_max: usize) -> Result<Vec<Vec<i64>>> {
    let n = g.n();
    if n > 4096 {
        return Err(Error::SizeLimit { n, limit: 4096 });
    }
    let m = g.edge_count();
    let mut ops = vec![vec![0i64; n * n]; l_max];
    let mut in_sum = vec![0i64; n];
    for y in 0..n {
        let mut c: Vec<i64> = (0..m).map(|e| i64::from(g.src(e) == y)).collect();
        for (l, op) in ops.iter_mut().enumerate() {
            for e in 0..m {
                if c[e] != 0 {
                    op[g.dst(e) * n + y] += c[e];
                }
            }
            if l + 1 == l_max {
                break;
            }
            in_sum.iter_mut().for_each(|x| *x = 0);
            for e in 0..m {
                in_sum[g.dst(e)] += c[e];
            }
            c = (0..m).map(|e| in_sum[g.src(e)] - c[g.rev(e)]).collect();
        }
    }
    Ok(ops)
}

/// `(A · B)(x, y) = Σ_{e: s(e)=x} B(t(e), y)`.
fn adjacency_times(g: &Graph, b: &[i64]) -> Vec<i64> {
    let n = g.n();
    let mut out = vec![0i64; n * n];
    for x in 0..n {
        for w in g.neighbors(x) {
            let (dst, src) = (&mut out[x * n..(x + 1) * n], &b[w * n..(w + 1) * n]);
            for (o, s) in dst.iter_mut().zip(src) {
                *o += s;
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub l: usize,
    pub pass: bool,
    /// `(x, y, lhs, rhs)` at the first differing entry.
    pub witness: Option<(usize, usize, i64, i64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChebyshevReport {
    /// `None` for irregular graphs.
    pub degree: Option<usize>,
    pub l_max: usize,
    pub checks: Vec<IdentityCheck>,
    /// Max entrywise error of the spectral closed form, scaled by `max(1, max |A_l|)`.
    pub closed_form_error: Option<f64>,
    pub closed_form_pass: Option<bool>,
    pub tolerance: f64,
    pub pass: bool,
}

fn compare(name: &str, l: usize, n: usize, lhs: &[i64], rhs: &[i64]) -> IdentityCheck {
    let witness = lhs.iter().zip(rhs).position(|(a, b)| a != b).map(|i| (i / n, i % n, lhs[i], rhs[i]));
    IdentityCheck { name: name.to_string(), l, pass: witness.is_none(), witness }
}

/// `(T_l(x), U_l(x))` by the three-term recurrences.
pub fn chebyshev(l: usize, x: f64) -> (f64, f64) {
    let (mut t0, mut t1) = (1.0, x);
    let (mut u0, mut u1) = (1.0, 2.0 * x);
    if l == 0 {
        return (t0, u0);
    }
    for _ in 1..l {
        (t0, t1) = (t1, 2.0 * x * t1 - t0);
        (u0, u1) = (u1, 2.0 * x * u1 - u0);
    }
    (t1, u1)
}

/// Eigenvalue of `A_l` on an `A`-eigenvector with eigenvalue `λ`:
/// `(d−1)^{l/2}((1 − 1/(d−1)) U_l(x) + 2/(d−1) T_l(x))`, `x = λ / (2√(d−1))`.
pub fn nb_polynomial(l: usize, d: usize, lambda: f64) -> f64 {
    let q = d as f64 - 1.0;
    let x = lambda / (2.0 * q.sqrt());
    let (t, u) = chebyshev(l, x);
    q.powf(l as f64 / 2.0) * ((1.0 - 1.0 / q) * u + 2.0 / q * t)
}

/// Verifies `A_1 = A`, `A² = D + A_2` and `A·A_l = (D − I)A_{l−1} + A_{l+1}` for
/// `2 ≤ l < l_max` exactly, with `D` the degree diagonal (`dI` when regular). For
/// regular graphs with `n ≤ closed_form_limit` the spectral closed form is checked too.
pub fn chebyshev_identity_audit(g: &Graph, l_max: usize, tol: f64, closed_form_limit: usize) -> Result<ChebyshevReport> {
    if l_max < 2 {
        return Err(Error::InvalidParameter("l_max must be at least 2".into()));
    }
    let regular = g.regular_degree();
    let n = g.n();
    let deg: Vec<i64> = (0..n).map(|v| g.degree(v) as i64).collect();
    let ops = nb_operators(g, l_max)?;
    let a: Vec<i64> = adjacency_matrix(g).transpose().iter().map(|&v| v as i64).collect();
    let mut checks = vec![compare("A_1 = A", 1, n, &ops[0], &a)];
    let a2 = adjacency_times(g, &a);
    let mut rhs = ops[1].clone();
    for x in 0..n {
        rhs[x * n + x] += deg[x];
    }
    checks.push(compare("A^2 = D + A_2", 2, n, &a2, &rhs));
    for l in 2..l_max {
        let lhs = adjacency_times(g, &ops[l - 1]);
        let rhs: Vec<i64> = (0..n * n).map(|i| (deg[i / n] - 1) * ops[l - 2][i] + ops[l][i]).collect();
        checks.push(compare("A A_l = (D-I) A_{l-1} + A_{l+1}", l, n, &lhs, &rhs));
    }
    let (closed_form_error, closed_form_pass) = match regular {
        Some(d) if d >= 2 && n <= closed_form_limit => {
            let eig = SymmetricEigen::new(adjacency_matrix(g));
            let v = &eig.eigenvectors;
            let mut worst: f64 = 0.0;
            for (l, op) in ops.iter().enumerate() {
                let l = l + 1;
                let diag = DMatrix::from_diagonal(&eig.eigenvalues.map(|lam| nb_polynomial(l, d, lam)));
                let p = v * diag * v.transpose();
                let scale = op.iter().map(|x| x.abs()).max().unwrap_or(0).max(1) as f64;
                let err = (0..n * n).map(|i| (p[(i / n, i % n)] - op[i] as f64).abs()).fold(0.0, f64::max);
                worst = worst.max(err / scale);
            }
            (Some(worst), Some(worst <= tol))
        }
        _ => (None, None),
    };
    let pass = checks.iter().all(|c| c.pass) && closed_form_pass.unwrap_or(true);
    Ok(ChebyshevReport { degree: regular, l_max, checks, closed_form_error, closed_form_pass, tolerance: tol, pass })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WalkBoundReport {
    pub l: usize,
    pub subset_size: usize,
    pub n: usize,
    pub degree: usize,
    #[serde(serialize_with = "big_as_string")]
    pub observed: BigUint,
    /// `|S|(l+3)(d−1)^{l/2}`.
    pub bound: f64,
    pub slack: f64,
    pub pass: bool,
}

fn require_certificate(g: &Graph, certificate: &RamanujanAudit) -> Result<usize> {
    let d = g.regular_degree().ok_or(Error::NotRegular)?;
    if !certificate.pass {
        return Err(Error::Precondition("graph is not certified Ramanujan".into()));
    }
    Ok(d)
}

/// Exact `M_l(S, X)` against `|S|(l+3)(d−1)^{l/2}`.
pub fn kahale_walk_bound_audit(g: &Graph, s: &Subset, l: usize, certificate: &RamanujanAudit) -> Result<WalkBoundReport> {
    let d = require_certificate(g, certificate)?;
    if l == 0 || s.is_empty() {
        return Err(Error::InvalidParameter("need l ≥ 1 and a nonempty subset".into()));
    }
    let half_power = (d as f64 - 1.0).powf(l as f64 / 2.0);
    if s.len() as f64 * half_power > g.n() as f64 * (1.0 + REL_TOL) {
        return Err(Error::Precondition(format!("|S|(d-1)^(l/2) > n for |S| = {}, l = {l}", s.len())));
    }
    let counts = nb_counts(g, l, std::slice::from_ref(s))?;
    let observed = counts.subsets[0].from_to[l - 1].clone();
    let bound = s.len() as f64 * (l as f64 + 3.0) * half_power;
    let slack = bound - to_f64(&observed);
    Ok(WalkBoundReport { l, subset_size: s.len(), n: g.n(), degree: d, observed, bound, slack, pass: slack >= -REL_TOL * bound })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VertexAuditReport {
    pub l: usize,
    pub subset_size: usize,
    pub n: usize,
    pub degree: usize,
    pub boundary_size: usize,
    pub half_degree_bound: f64,
    pub expansion_ratio: f64,
    /// `|N(S)| = d/2 · |S|`.
    pub extremal: bool,
    /// Vertices of `S` dropped for having fewer than two edges into `M`.
    pub removed: usize,
    pub reduced_size: usize,
    /// Directed edges from reduced `S` into `M`.
    pub e: usize,
    pub m: usize,
    pub m_prime: usize,
    pub m_prime_consistent: bool,
    pub d_prime_minus_one: Option<f64>,
    /// `(l+3)^{1/l} √(d−1)`.
    pub bound: f64,
    /// No vertex has two neighbors in `S` after reduction: the inequality is vacuous.
    pub vacuous: bool,
    pub pass: bool,
}

/// Proof chain of the spectral vertex expansion bound at explicit `l`.
pub fn kahale_vertex_audit(g: &Graph, s: &Subset, l: usize, certificate: &RamanujanAudit) -> Result<VertexAuditReport> {
    let d = require_certificate(g, certificate)?;
    if l == 0 || s.is_empty() {
        return Err(Error::InvalidParameter("need l ≥ 1 and a nonempty subset".into()));
    }
    if s.len() as f64 * (d as f64 - 1.0).powi(l as i32) > g.n() as f64 * (1.0 + REL_TOL) {
        return Err(Error::Precondition(format!("|S|(d-1)^l > n for |S| = {}, l = {l}", s.len())));
    }
    let profile = neighbor_profile(g, s)?;
    let boundary_size = profile.boundary_size();
    // Drop S vertices with fewer than two edges into M until stable.
    let mut current = s.clone();
    loop {
        let count = neighbor_counts(g, &current);
        let keep: Vec<usize> = current
            .ids()
            .iter()
            .copied()
            .filter(|&v| g.neighbors(v).filter(|&w| count[w] >= 2).count() >= 2)
            .collect();
        if keep.len() == current.len() {
            break;
        }
        current = Subset::new(g.n(), &keep)?;
    }
    let reduced_size = current.len();
    let count = neighbor_counts(g, &current);
    let m = count.iter().filter(|&&c| c >= 2).count();
    let m_prime = count.iter().filter(|&&c| c == 1).count();
    let e: usize = count.iter().filter(|&&c| c >= 2).sum();
    let m_prime_consistent = m_prime == d * reduced_size - e;
    let bound = (l as f64 + 3.0).powf(1.0 / l as f64) * (d as f64 - 1.0).sqrt();
    let vacuous = m == 0 || reduced_size == 0;
    let d_prime_minus_one = (!vacuous).then(|| {
        let sz = reduced_size as f64;
        let ef = e as f64;
        ((ef / sz - 1.0) * (ef / m as f64 - 1.0)).max(0.0).sqrt()
    });
    let inequality = d_prime_minus_one.is_none_or(|x| x <= bound * (1.0 + REL_TOL));
    let half = d as f64 / 2.0 * s.len() as f64;
    Ok(VertexAuditReport {
        l,
        subset_size: s.len(),
        n: g.n(),
        degree: d,
        boundary_size,
        half_degree_bound: half,
        expansion_ratio: boundary_size as f64 / s.len() as f64,
        extremal: 2 * boundary_size == d * s.len(),
        removed: s.len() - reduced_size,
        reduced_size,
        e,
        m,
        m_prime,
        m_prime_consistent,
        d_prime_minus_one,
        bound,
        vacuous,
        pass: inequality && m_prime_consistent,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EdgeAuditReport {
    pub l: usize,
    pub subset_size: usize,
    pub induced_average_degree: f64,
    /// Size of the induced graph after peeling vertices of degree below 2.
    pub core_size: usize,
    pub core_d_bar: Option<f64>,
    pub core_d_tilde: Option<f64>,
    /// `(l+3)^{1/l} √(d−1) + 1`.
    pub bound: f64,
    pub vacuous: bool,
    pub pass: bool,
}

/// Average induced degree against the finite-l edge expansion bound, via the
/// Moore bound on the peeled induced subgraph.
pub fn kahale_edge_audit(g: &Graph, s: &Subset, l: usize, certificate: &RamanujanAudit) -> Result<EdgeAuditReport> {
    let d = require_certificate(g, certificate)?;
    if l == 0 || s.is_empty() {
        return Err(Error::InvalidParameter("need l ≥ 1 and a nonempty subset".into()));
    }
    if s.len() as f64 * (d as f64 - 1.0).powf(l as f64 / 2.0) > g.n() as f64 * (1.0 + REL_TOL) {
        return Err(Error::Precondition(format!("|S|(d-1)^(l/2) > n for |S| = {}, l = {l}", s.len())));
    }
    let avg = induced_average_degree(g, s)?.value;
    let (core, _) = g.induced(s).peel();
    let bound = (l as f64 + 3.0).powf(1.0 / l as f64) * (d as f64 - 1.0).sqrt() + 1.0;
    if core.edge_count() == 0 {
        return Ok(EdgeAuditReport {
            l,
            subset_size: s.len(),
            induced_average_degree: avg,
            core_size: core.n(),
            core_d_bar: None,
            core_d_tilde: None,
            bound,
            vacuous: true,
            pass: avg <= bound,
        });
    }
    let dt = d_tilde(&core)?;
    let d_bar = core.average_degree();
    Ok(EdgeAuditReport {
        l,
        subset_size: s.len(),
        induced_average_degree: avg,
        core_size: core.n(),
        core_d_bar: Some(d_bar),
        core_d_tilde: Some(dt),
        bound,
        vacuous: false,
        pass: d_bar <= dt * (1.0 + REL_TOL) && dt <= bound * (1.0 + REL_TOL),
    })
}
