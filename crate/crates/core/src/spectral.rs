//! Adjacency spectra, Ramanujan certificates, and the eigenvalue-0
//! eigenfunction supported on the small subgroup.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph};

/// Environment variable overriding the dense eigensolve size limit.
pub const DENSE_LIMIT_ENV: &str = "RAMANUJAN_DENSE_LIMIT";
pub const DEFAULT_DENSE_LIMIT: usize = 4096;
/// Number of nontrivial eigenvalues extracted by the iterative method.
pub const ITERATIVE_TOP: usize = 8;

pub fn dense_limit() -> usize {
    std::env::var(DENSE_LIMIT_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_DENSE_LIMIT)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Dense,
    Iterative,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub n: usize,
    pub degree: usize,
    pub method: Method,
    pub tolerance: f64,
    pub bipartite: bool,
    /// Full spectrum (dense) or extremal nontrivial eigenvalues (iterative), descending.
    pub eigenvalues: Vec<f64>,
    pub trivial: Vec<f64>,
    pub max_nontrivial_abs: f64,
    pub ramanujan_bound: f64,
    pub ramanujan_margin: f64,
    pub max_residual: f64,
    /// `|Σλ − tr A|` and `|Σλ² − tr A²|` relative to `max(1, tr A²)`; dense only.
    pub trace_error: Option<f64>,
    pub second_moment_error: Option<f64>,
    pub iterations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RamanujanAudit {
    pub pass: bool,
    pub max_nontrivial_abs: f64,
    pub bound: f64,
    pub margin: f64,
    pub tolerance: f64,
    pub method: Method,
}

/// Dense symmetric adjacency matrix; entry `(x, y)` counts edges `y → x`.
pub fn adjacency_matrix(g: &Graph) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(g.n(), g.n());
    for e in 0..g.edge_count() {
        a[(g.dst(e), g.src(e))] += 1.0;
    }
    a
}

fn check_regular_connected(g: &Graph) -> Result<usize> {
    let d = g.regular_degree().ok_or(Error::NotRegular)?;
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::NotConnected);
    }
    Ok(d)
}

/// Spectrum with the size limit from the environment.
pub fn adjacency_spectrum(g: &Graph, method: Method, tol: f64) -> Result<SpectrumReport> {
    adjacency_spectrum_with_limit(g, method, tol, dense_limit())
}

pub fn adjacency_spectrum_with_limit(g: &Graph, method: Method, tol: f64, limit: usize) -> Result<SpectrumReport> {
    let d = check_regular_connected(g)?;
    match method {
        Method::Dense => {
            if g.n() > limit {
                return Err(Error::SizeLimit { n: g.n(), limit });
            }
            dense_spectrum(g, d, tol)
        }
        Method::Iterative => iterative_spectrum(g, d, tol),
    }
}

fn dense_spectrum(g: &Graph, d: usize, tol: f64) -> Result<SpectrumReport> {
    let a = adjacency_matrix(g);
    let eig = SymmetricEigen::new(a.clone());
    let residuals = &a * &eig.eigenvectors - &eig.eigenvectors * DMatrix::from_diagonal(&eig.eigenvalues);
    let max_residual = residuals.column_iter().map(|c| c.norm()).fold(0.0, f64::max);
    if max_residual > tol * d as f64 {
        return Err(Error::NoConvergence { iterations: 0, residual: max_residual });
    }
    let mut eigenvalues: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(|x, y| y.total_cmp(x));
    let trace = a.trace();
    let trace2 = (&a * &a).trace();
    let scale = trace2.max(1.0);
    let sum: f64 = eigenvalues.iter().sum();
    let sum2: f64 = eigenvalues.iter().map(|x| x * x).sum();
    let bipartite = g.is_bipartite();
    let (trivial, nontrivial) = split_trivial(&eigenvalues, bipartite);
    Ok(finish(
        g,
        d,
        Method::Dense,
        tol,
        bipartite,
        eigenvalues,
        trivial,
        &nontrivial,
        max_residual,
        Some((sum - trace).abs() / scale),
        Some((sum2 - trace2).abs() / scale),
        0,
    ))
}

/// Splits off the largest eigenvalue (`d`) and, for bipartite graphs, the smallest (`−d`).
fn split_trivial(sorted_desc: &[f64], bipartite: bool) -> (Vec<f64>, Vec<f64>) {
    let mut rest = sorted_desc.to_vec();
    let mut trivial = vec![rest.remove(0)];
    if bipartite {
        trivial.push(rest.pop().expect("at least two eigenvalues"));
    }
    (trivial, rest)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    g: &Graph,
    d: usize,
    method: Method,
    tol: f64,
    bipartite: bool,
    eigenvalues: Vec<f64>,
    trivial: Vec<f64>,
    nontrivial: &[f64],
    max_residual: f64,
    trace_error: Option<f64>,
    second_moment_error: Option<f64>,
    iterations: usize,
) -> SpectrumReport {
    let max_nontrivial_abs = nontrivial.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let bound = 2.0 * ((d as f64) - 1.0).max(0.0).sqrt();
    SpectrumReport {
        n: g.n(),
        degree: d,
        method,
        tolerance: tol,
        bipartite,
        eigenvalues,
        trivial,
        max_nontrivial_abs,
        ramanujan_bound: bound,
        ramanujan_margin: bound - max_nontrivial_abs,
        max_residual,
        trace_error,
        second_moment_error,
        iterations,
    }
}

fn apply(g: &Graph, v: &DVector<f64>) -> DVector<f64> {
    DVector::from_fn(g.n(), |x, _| g.neighbors(x).map(|w| v[w]).sum())
}

/// Deterministic pseudo-random start vector.
fn start_vector(n: usize) -> DVector<f64> {
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
    DVector::from_fn(n, |_, _| {
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        (z >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    })
}

fn orthogonalize(w: &mut DVector<f64>, against: &[DVector<f64>]) {
    for u in against {
        let c = u.dot(w);
        w.axpy(-c, u, 1.0);
    }
}

/// Lanczos with full reorthogonalization on the complement of the constant vector
/// (and the bipartition sign vector). Stops when the top Ritz pairs by modulus have
/// residual below `tol·d` or the Krylov space becomes invariant.
fn iterative_spectrum(g: &Graph, d: usize, tol: f64) -> Result<SpectrumReport> {
    const CHECK_EVERY: usize = 10;
    let n = g.n();
    let bipartite_coloring = match g.bipartition() {
        Bipartition::Coloring(c) => Some(c),
        Bipartition::OddCycle(_) => None,
    };
    let bip = bipartite_coloring.is_some();
    let scale = 1.0 / (n as f64).sqrt();
    let mut known = vec![DVector::from_element(n, scale)];
    let mut trivial = vec![d as f64];
    if let Some(c) = &bipartite_coloring {
        known.push(DVector::from_fn(n, |i, _| if c[i] == 0 { scale } else { -scale }));
        trivial.push(-(d as f64));
    }
    let available = n.saturating_sub(known.len());
    if available == 0 {
        return Ok(finish(g, d, Method::Iterative, tol, bip, vec![], trivial, &[], 0.0, None, None, 0));
    }
    let mut q = start_vector(n);
    orthogonalize(&mut q, &known);
    let norm = q.norm();
    if norm == 0.0 {
        return Err(Error::NoConvergence { iterations: 0, residual: f64::INFINITY });
    }
    let mut basis = vec![q / norm];
    let mut alpha: Vec<f64> = vec![];
    let mut beta: Vec<f64> = vec![];
    let mut residual;
    loop {
        let j = basis.len() - 1;
        let mut w = apply(g, &basis[j]);
        alpha.push(basis[j].dot(&w));
        for _ in 0..2 {
            orthogonalize(&mut w, &known);
            orthogonalize(&mut w, &basis);
        }
        let b = w.norm();
        let size = basis.len();
        let exhausted = b <= 1e-10 * d as f64 || size == available;
        if exhausted || size % CHECK_EVERY == 0 {
            let t = DMatrix::from_fn(size, size, |r, c| {
                if r == c {
                    alpha[r]
                } else if r + 1 == c {
                    beta[r]
                } else if c + 1 == r {
                    beta[c]
                } else {
                    0.0
                }
            });
            let eig = SymmetricEigen::new(t);
            let mut order: Vec<usize> = (0..size).collect();
            order.sort_by(|&x, &y| eig.eigenvalues[y].abs().total_cmp(&eig.eigenvalues[x].abs()));
            let k = ITERATIVE_TOP.min(size);
            let mut worst = 0.0f64;
            for &i in &order[..k] {
                let s = eig.eigenvectors.column(i);
                let mut y = DVector::zeros(n);
                for (r, v) in basis.iter().enumerate() {
                    y.axpy(s[r], v, 1.0);
                }
                let r = apply(g, &y) - &y * eig.eigenvalues[i];
                worst = worst.max(r.norm());
            }
            residual = worst;
            if residual <= tol * d as f64 {
                let mut top: Vec<f64> = order[..k].iter().map(|&i| eig.eigenvalues[i]).collect();
                top.sort_by(|x, y| y.total_cmp(x));
                return Ok(finish(g, d, Method::Iterative, tol, bip, top.clone(), trivial, &top, residual, None, None, size));
            }
            if exhausted {
                break;
            }
        }
        beta.push(b);
        basis.push(w / b);
    }
    Err(Error::NoConvergence { iterations: basis.len(), residual })
}

/// Passes iff every nontrivial `|λ| ≤ 2√(d−1) + tol`. Uses the dense method when
/// the graph fits under the size limit.
pub fn ramanujan_audit(g: &Graph, tol: f64) -> Result<RamanujanAudit> {
    let method = if g.n() <= dense_limit() { Method::Dense } else { Method::Iterative };
    let report = adjacency_spectrum(g, method, tol.max(1e-12))?;
    Ok(audit_from_report(&report, tol))
}

pub fn audit_from_report(report: &SpectrumReport, tol: f64) -> RamanujanAudit {
    RamanujanAudit {
        pass: report.max_nontrivial_abs <= report.ramanujan_bound + tol,
        max_nontrivial_abs: report.max_nontrivial_abs,
        bound: report.ramanujan_bound,
        margin: report.ramanujan_margin,
        tolerance: tol,
        method: report.method,
    }
}

/// Per-vertex integer function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegerVector {
    pub values: Vec<i64>,
}

impl IntegerVector {
    pub fn zeros(n: usize) -> IntegerVector {
        IntegerVector { values: vec![0; n] }
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| self.values[i] != 0).collect()
    }

    pub fn sum(&self) -> i64 {
        self.values.iter().sum()
    }

    pub fn norm2_squared(&self) -> i64 {
        self.values.iter().map(|v| v * v).sum()
    }

    pub fn sup_norm(&self) -> i64 {
        self.values.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    pub fn dot(&self, other: &[i64]) -> i64 {
        self.values.iter().zip(other).map(|(a, b)| a * b).sum()
    }

    /// `{vertex: value}` over the support.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> =
            self.support().into_iter().map(|i| (i.to_string(), serde_json::Value::from(self.values[i]))).collect();
        serde_json::Value::Object(map)
    }
}

/// `+1` on the `Y` bipartition class containing the identity (Y vertex 0),
/// `−1` on the other class, `0` off `Y`.
pub fn zero_eigenfunction(x: &Graph, y_in_x: &[usize], y_graph: &Graph) -> Result<IntegerVector> {
    if y_in_x.is_empty() || y_graph.n() == 0 {
        return Err(Error::Precondition("Y is empty".into()));
    }
    if y_in_x.len() != y_graph.n() {
        return Err(Error::InvalidSubset("Y embedding and Y graph differ in size".into()));
    }
    let coloring = match y_graph.bipartition() {
        Bipartition::Coloring(c) => c,
        Bipartition::OddCycle(_) => return Err(Error::NotBipartite),
    };
    let mut f = IntegerVector::zeros(x.n());
    for (j, &v) in y_in_x.iter().enumerate() {
        if v >= x.n() {
            return Err(Error::InvalidSubset(format!("vertex {v} out of range")));
        }
        f.values[v] = if coloring[j] == coloring[0] { 1 } else { -1 };
    }
    Ok(f)
}

/// Exact `(Af)(x) = Σ_{t(e)=x} f(s(e))`; returns the first vertex where it is nonzero.
pub fn verify_af_zero(g: &Graph, f: &IntegerVector) -> (bool, Option<(usize, i64)>) {
    for x in 0..g.n() {
        // Edges into x are the reverses of edges out of x.
        let s: i64 = g.out_edges(x).iter().map(|&e| f.values[g.dst(e)]).sum();
        if s != 0 {
            return (false, Some((x, s)));
        }
    }
    (true, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = vec![];
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9)
    }

    #[test]
    fn known_spectra() {
        let k4 = adjacency_spectrum(&complete(4), Method::Dense, 1e-9).unwrap();
        assert!(close(&k4.eigenvalues, &[3.0, -1.0, -1.0, -1.0]));
        assert!(!k4.bipartite);
        let c4 = adjacency_spectrum(&cycle(4), Method::Dense, 1e-9).unwrap();
        assert!(close(&c4.eigenvalues, &[2.0, 0.0, 0.0, -2.0]));
        assert_eq!(c4.trivial.len(), 2);
        assert!(c4.trace_error.unwrap() < 1e-9 && c4.second_moment_error.unwrap() < 1e-9);
    }

    #[test]
    fn cycle_spectrum_is_cosines() {
        let n = 8;
        let report = adjacency_spectrum(&cycle(n), Method::Dense, 1e-9).unwrap();
        let mut expected: Vec<f64> = (0..n).map(|k| 2.0 * (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos()).collect();
        expected.sort_by(|x, y| y.total_cmp(x));
        assert!(close(&report.eigenvalues, &expected));
        let audit = audit_from_report(&report, 1e-9);
        assert!(audit.pass);
        // Nontrivial eigenvalues of C_8 are 2cos(2πk/8) for k = 1..3, 5..7: max √2.
        assert!((report.max_nontrivial_abs - 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn preconditions() {
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(adjacency_spectrum(&path, Method::Dense, 1e-9).err(), Some(Error::NotRegular));
        let two_triangles = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(adjacency_spectrum(&two_triangles, Method::Dense, 1e-9).err(), Some(Error::NotConnected));
        assert_eq!(
            adjacency_spectrum_with_limit(&cycle(10), Method::Dense, 1e-9, 5).err(),
            Some(Error::SizeLimit { n: 10, limit: 5 })
        );
    }

    #[test]
    fn iterative_matches_dense_on_cycles_and_circulants() {
        // Circulant C_30(1, 4): 4-regular, spectrum 2cos(2πk/30) + 2cos(8πk/30).
        let n = 30;
        let mut edges = vec![];
        for i in 0..n {
            edges.push((i, (i + 1) % n));
            edges.push((i, (i + 4) % n));
        }
        let g = Graph::from_edges(n, &edges).unwrap();
        let dense = adjacency_spectrum(&g, Method::Dense, 1e-9).unwrap();
        let iter = adjacency_spectrum(&g, Method::Iterative, 1e-8).unwrap();
        assert!((dense.max_nontrivial_abs - iter.max_nontrivial_abs).abs() < 1e-6);
        for lam in &iter.eigenvalues {
            assert!(dense.eigenvalues.iter().any(|mu| (lam - mu).abs() < 1e-6));
        }
        assert_eq!(iter.eigenvalues.len(), ITERATIVE_TOP);
    }

    #[test]
    fn eigenfunction_on_cycle_pair() {
        // X = C_8, Y = {0, 2, 4, 6} forming C_4 through distance-2 steps.
        let x = cycle(8);
        let y = cycle(4);
        let f = zero_eigenfunction(&x, &[0, 2, 4, 6], &y).unwrap();
        assert_eq!(f.values, vec![1, 0, -1, 0, 1, 0, -1, 0]);
        assert_eq!(f.sum(), 0);
        // A f at odd vertex 1: f(0) + f(2) = 0.
        assert!(verify_af_zero(&x, &f).0);
    }

    #[test]
    fn af_checks() {
        let k4 = complete(4);
        assert!(verify_af_zero(&k4, &IntegerVector::zeros(4)).0);
        let mut f = IntegerVector::zeros(4);
        f.values[0] = 1;
        let (ok, witness) = verify_af_zero(&k4, &f);
        assert!(!ok);
        assert_eq!(witness, Some((1, 1)));
        assert!(zero_eigenfunction(&k4, &[], &Graph::from_edges(0, &[]).unwrap()).is_err());
        assert_eq!(zero_eigenfunction(&k4, &[0, 1, 2], &complete(3)).err(), Some(Error::NotBipartite));
    }
}
