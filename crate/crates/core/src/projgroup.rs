//! Projective linear groups over finite fields: canonical matrices and
//! subgroup enumeration by breadth-first closure.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Mul;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ff::{Field, FieldElement};

/// An element of `PGL_n(F)`, stored with its first nonzero entry (row-major) equal to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectiveMatrix {
    field: Field,
    n: usize,
    entries: Vec<FieldElement>,
}

impl ProjectiveMatrix {
    /// Canonicalizes a square matrix given by rows.
    pub fn new(rows: Vec<Vec<FieldElement>>) -> Result<ProjectiveMatrix> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::RaggedMatrix);
        }
        let field = rows[0][0].field().clone();
        let entries: Vec<FieldElement> = rows.into_iter().flatten().collect();
        if entries.iter().any(|e| e.field() != &field) {
            return Err(Error::FieldMismatch);
        }
        let m = ProjectiveMatrix { field, n, entries };
        if m.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(m.normalized())
    }

    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Result<ProjectiveMatrix> {
        ProjectiveMatrix::new(rows.iter().map(|r| r.iter().map(|&v| field.from_int(v)).collect()).collect())
    }

    pub fn identity(field: &Field, n: usize) -> ProjectiveMatrix {
        let entries = (0..n * n)
            .map(|i| if i / n == i % n { field.one() } else { field.zero() })
            .collect();
        ProjectiveMatrix { field: field.clone(), n, entries }
    }

    fn normalized(mut self) -> ProjectiveMatrix {
        let lead = self.entries.iter().find(|e| !e.is_zero()).expect("nonsingular").clone();
        if !lead.is_one() {
            let s = lead.inv().expect("nonzero");
            for e in &mut self.entries {
                *e = &*e * &s;
            }
        }
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<FieldElement>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == ProjectiveMatrix::identity(&self.field, self.n)
    }

    /// Determinant of the canonical representative.
    pub fn det(&self) -> FieldElement {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = self.field.one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return self.field.zero();
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = -&det;
            }
            let p = a[col * n + col].clone();
            det = &det * &p;
            let p_inv = p.inv().expect("nonzero pivot");
            for r in col + 1..n {
                let factor = &a[r * n + col] * &p_inv;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] = &a[r * n + j] - &(&factor * &a[col * n + j]);
                }
            }
        }
        det
    }

    pub fn checked_mul(&self, other: &ProjectiveMatrix) -> Result<ProjectiveMatrix> {
        if self.field != other.field || self.n != other.n {
            return Err(Error::FieldMismatch);
        }
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.field.zero();
                for k in 0..n {
                    acc = &acc + &(self.entry(i, k) * other.entry(k, j));
                }
                entries.push(acc);
            }
        }
        Ok(ProjectiveMatrix { field: self.field.clone(), n, entries }.normalized())
    }

    /// Inverse class: adjugate for `n = 2`, Gauss–Jordan otherwise.
    pub fn inv(&self) -> ProjectiveMatrix {
        let n = self.n;
        if n == 2 {
            let (a, b, c, d) = (self.entry(0, 0), self.entry(0, 1), self.entry(1, 0), self.entry(1, 1));
            let entries = vec![d.clone(), -b, -c, a.clone()];
            return ProjectiveMatrix { field: self.field.clone(), n, entries }.normalized();
        }
        let mut a = self.entries.clone();
        let mut b = ProjectiveMatrix::identity(&self.field, n).entries;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r * n + col].is_zero()).expect("nonsingular");
            for j in 0..n {
                a.swap(pivot * n + j, col * n + j);
                b.swap(pivot * n + j, col * n + j);
            }
            let p_inv = a[col * n + col].inv().expect("nonzero pivot");
            for j in 0..n {
                a[col * n + j] = &a[col * n + j] * &p_inv;
                b[col * n + j] = &b[col * n + j] * &p_inv;
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let factor = a[r * n + col].clone();
                for j in 0..n {
                    a[r * n + j] = &a[r * n + j] - &(&factor * &a[col * n + j]);
                    b[r * n + j] = &b[r * n + j] - &(&factor * &b[col * n + j]);
                }
            }
        }
        ProjectiveMatrix { field: self.field.clone(), n, entries: b }.normalized()
    }

    pub fn pow(&self, mut e: u64) -> ProjectiveMatrix {
        let mut base = self.clone();
        let mut acc = ProjectiveMatrix::identity(&self.field, self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Order of the class, searching up to `limit`.
    pub fn order(&self, limit: u64) -> Option<u64> {
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_identity() {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }

    /// Applies a coefficient map to every entry and re-canonicalizes.
    pub fn map_entries<F>(&self, f: F) -> Result<ProjectiveMatrix>
    where
        F: Fn(&FieldElement) -> Result<FieldElement>,
    {
        let rows = self
            .entries
            .chunks(self.n)
            .map(|r| r.iter().map(&f).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        ProjectiveMatrix::new(rows)
    }
}

impl Mul<&ProjectiveMatrix> for &ProjectiveMatrix {
    type Output = ProjectiveMatrix;
    /// Panics on mismatched fields or sizes.
    fn mul(self, rhs: &ProjectiveMatrix) -> ProjectiveMatrix {
        self.checked_mul(rhs).expect("matrix mismatch")
    }
}

impl fmt::Display for ProjectiveMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, row) in self.entries.chunks(self.n).enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            write!(f, "({})", cells.join(","))?;
        }
        f.write_str(")")
    }
}

impl Serialize for ProjectiveMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.n))?;
        for row in self.entries.chunks(self.n) {
            seq.serialize_element(row)?;
        }
        seq.end()
    }
}

/// A finite subgroup enumerated from its generators.
#[derive(Clone, Debug)]
pub struct GroupClosure {
    generators: Vec<ProjectiveMatrix>,
    elements: Vec<ProjectiveMatrix>,
    index: HashMap<ProjectiveMatrix, usize>,
    depth: Vec<u32>,
    left: Vec<Vec<usize>>,
}

/// Breadth-first closure from the identity, multiplying on the left by each
/// generator. Ids follow discovery order.
pub fn generate_closure(generators: &[ProjectiveMatrix], cap: usize) -> Result<GroupClosure> {
    let first = generators
        .first()
        .ok_or_else(|| Error::InvalidParameter("empty generator list".into()))?;
    if cap == 0 {
        return Err(Error::InvalidParameter("cap must be at least 1".into()));
    }
    if generators.iter().any(|g| g.field != first.field || g.n != first.n) {
        return Err(Error::FieldMismatch);
    }
    let id = ProjectiveMatrix::identity(&first.field, first.n);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut depth = vec![0u32];
    let mut left: Vec<Vec<usize>> = Vec::new();
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head].clone();
        let mut row = Vec::with_capacity(generators.len());
        for g in generators {
            let y = g * &x;
            let next = elements.len();
            let yid = *index.entry(y.clone()).or_insert(next);
            if yid == next {
                if next >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                elements.push(y);
                depth.push(depth[head] + 1);
            }
            row.push(yid);
        }
        left.push(row);
        head += 1;
    }
    Ok(GroupClosure { generators: generators.to_vec(), elements, index, depth, left })
}

impl GroupClosure {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn generators(&self) -> &[ProjectiveMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[ProjectiveMatrix] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> &ProjectiveMatrix {
        &self.elements[id]
    }

    pub fn id_of(&self, m: &ProjectiveMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Word length of each element in the generators.
    pub fn depth(&self, id: usize) -> u32 {
        self.depth[id]
    }

    pub fn max_depth(&self) -> u32 {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    /// Id of `generators[k] · element(id)`.
    pub fn left_mul(&self, id: usize, k: usize) -> usize {
        self.left[id][k]
    }

    /// Id ↔ matrix table.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.len(),
            "generators": self.generators,
            "elements": self.elements.iter().enumerate().map(|(i, m)| serde_json::json!({
                "id": i,
                "depth": self.depth[i],
                "matrix": m,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Histogram of element orders.
pub fn order_statistics(g: &GroupClosure) -> BTreeMap<u64, usize> {
    let limit = g.len() as u64;
    let mut hist = BTreeMap::new();
    for x in &g.elements {
        let o = x.order(limit).expect("element order divides group order");
        *hist.entry(o).or_insert(0) += 1;
    }
    hist
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn random_matrix(field: &Field, n: usize, rng: &mut ChaCha8Rng) -> ProjectiveMatrix {
        loop {
            let rows = (0..n)
                .map(|_| (0..n).map(|_| field.element_at(rng.gen_range(0..field.order()))).collect())
                .collect();
            if let Ok(m) = ProjectiveMatrix::new(rows) {
                return m;
            }
        }
    }

    #[test]
    fn make_examples() {
        let f = f3();
        assert!(ProjectiveMatrix::from_ints(&f, &[&[2, 0], &[0, 2]]).unwrap().is_identity());
        let m = ProjectiveMatrix::from_ints(&f, &[&[0, 1], &[2, 0]]).unwrap();
        assert_eq!(m, ProjectiveMatrix::from_ints(&f, &[&[0, 1], &[2, 0]]).unwrap());
        assert_eq!(m.entry(1, 0), &f.from_int(2));
        let s = ProjectiveMatrix::from_ints(&f, &[&[2, 1], &[1, 1]]).unwrap();
        assert_eq!(s.rows(), ProjectiveMatrix::from_ints(&f, &[&[1, 2], &[2, 2]]).unwrap().rows());
        assert_eq!(ProjectiveMatrix::from_ints(&f, &[&[1, 1], &[1, 1]]), Err(Error::SingularMatrix));
        assert_eq!(
            ProjectiveMatrix::new(vec![vec![f.one(), f.zero()], vec![f.one()]]),
            Err(Error::RaggedMatrix)
        );
    }

    #[test]
    fn scalar_classes_collapse() {
        let f9 = Field::with_order(9).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_matrix(&f9, 2, &mut rng);
        for lambda in f9.elements().filter(|x| !x.is_zero()) {
            let scaled = ProjectiveMatrix::new(
                m.rows().iter().map(|r| r.iter().map(|e| e * &lambda).collect()).collect(),
            )
            .unwrap();
            assert_eq!(scaled, m);
        }
    }

    #[test]
    fn inverse_examples() {
        let f = f3();
        let m = ProjectiveMatrix::from_ints(&f, &[&[0, 1], &[2, 0]]).unwrap();
        // Adjugate of [[0,1],[2,0]] is [[0,-1],[-2,0]] = [[0,2],[1,0]] ~ [[0,1],[2,0]].
        assert_eq!(m.inv(), ProjectiveMatrix::from_ints(&f, &[&[0, 2], &[1, 0]]).unwrap());
        assert_eq!(m.inv(), m);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for field in [f3(), Field::with_order(9).unwrap(), Field::prime(7).unwrap()] {
            for n in [2, 3] {
                for _ in 0..100 {
                    let a = random_matrix(&field, n, &mut rng);
                    assert!((&a * &a.inv()).is_identity());
                    assert!((&a.inv() * &a).is_identity());
                }
            }
        }
    }

    #[test]
    fn multiplication_is_associative() {
        let field = Field::with_order(9).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let (a, b, c) =
                (random_matrix(&field, 2, &mut rng), random_matrix(&field, 2, &mut rng), random_matrix(&field, 2, &mut rng));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }
    }

    #[test]
    fn mismatched_fields_rejected() {
        let a = ProjectiveMatrix::identity(&f3(), 2);
        let b = ProjectiveMatrix::identity(&Field::prime(5).unwrap(), 2);
        assert_eq!(a.checked_mul(&b), Err(Error::FieldMismatch));
        assert_eq!(generate_closure(&[a, b], 10).err(), Some(Error::FieldMismatch));
    }

    #[test]
    fn closure_examples() {
        let f = f3();
        let id = ProjectiveMatrix::identity(&f, 2);
        assert_eq!(generate_closure(&[id.clone()], 1).unwrap().len(), 1);
        let u = ProjectiveMatrix::from_ints(&f, &[&[1, 1], &[0, 1]]).unwrap();
        let g = generate_closure(&[u.clone()], 10).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(order_statistics(&g), BTreeMap::from([(1, 1), (3, 2)]));
        assert_eq!(g.element(0), &id);
        assert_eq!(g.depth(0), 0);
        assert_eq!(generate_closure(&[u], 2).err(), Some(Error::CapExceeded { cap: 2 }));
        assert!(generate_closure(&[], 2).is_err());
    }

    #[test]
    fn full_pgl2_orders() {
        // Elementary matrices with a primitive diagonal generate PGL_2(F_p).
        for p in [3u64, 5, 7] {
            let f = Field::prime(p).unwrap();
            let g = f.primitive_element();
            let gens = vec![
                ProjectiveMatrix::from_ints(&f, &[&[1, 1], &[0, 1]]).unwrap(),
                ProjectiveMatrix::from_ints(&f, &[&[1, 0], &[1, 1]]).unwrap(),
                ProjectiveMatrix::new(vec![vec![g, f.zero()], vec![f.zero(), f.one()]]).unwrap(),
            ];
            let closure = generate_closure(&gens, 10_000).unwrap();
            assert_eq!(closure.len() as u64, p * (p * p - 1));
            let total: usize = order_statistics(&closure).values().sum();
            assert_eq!(total, closure.len());
        }
    }

    #[test]
    fn s4_fingerprint() {
        let f = f3();
        let gens = vec![
            ProjectiveMatrix::from_ints(&f, &[&[1, 1], &[0, 1]]).unwrap(),
            ProjectiveMatrix::from_ints(&f, &[&[0, 1], &[1, 0]]).unwrap(),
            ProjectiveMatrix::from_ints(&f, &[&[2, 0], &[0, 1]]).unwrap(),
        ];
        let closure = generate_closure(&gens, 100).unwrap();
        assert_eq!(order_statistics(&closure), BTreeMap::from([(1, 1), (2, 9), (3, 8), (4, 6)]));
    }

    #[test]
    fn closure_is_closed_and_depths_consistent() {
        let f = Field::prime(5).unwrap();
        let gens = vec![
            ProjectiveMatrix::from_ints(&f, &[&[1, 2], &[0, 1]]).unwrap(),
            ProjectiveMatrix::from_ints(&f, &[&[0, 1], &[1, 3]]).unwrap(),
        ];
        let closure = generate_closure(&gens, 1000).unwrap();
        for id in 0..closure.len() {
            for (k, g) in gens.iter().enumerate() {
                let y = closure.left_mul(id, k);
                assert_eq!(closure.element(y), &(g * closure.element(id)));
                assert!(closure.depth(y) <= closure.depth(id) + 1);
            }
        }
    }

    #[test]
    fn three_by_three_inverse_and_det() {
        let f = Field::prime(5).unwrap();
        assert_eq!(
            ProjectiveMatrix::from_ints(&f, &[&[1, 2, 0], &[0, 1, 3], &[4, 0, 1]]),
            Err(Error::SingularMatrix)
        );
        let m = ProjectiveMatrix::from_ints(&f, &[&[1, 2, 0], &[0, 1, 3], &[1, 0, 1]]).unwrap();
        assert_eq!(m.det(), f.from_int(7));
        assert!((&m * &m.inv()).is_identity());
    }

    #[test]
    fn serializes_row_major() {
        let f = f3();
        let m = ProjectiveMatrix::from_ints(&f, &[&[0, 1], &[2, 0]]).unwrap();
        assert_eq!(serde_json::to_string(&m).unwrap(), "[[[0],[1]],[[2],[0]]]");
        assert_eq!(m.to_string(), "((0,1),(2,0))");
    }
}
