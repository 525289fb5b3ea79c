#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ramanujan_audit::ff::Field;
use ramanujan_audit::ffpoly::Polynomial;
use ramanujan_audit::graph::Graph;
use ramanujan_audit::morgenstern::{build_instance, Instance, InstanceParams};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The q = 3, m = 1, h̃ = s + 1 instance.
pub fn q3_instance() -> Instance {
    let f3 = Field::prime(3).unwrap();
    let params = InstanceParams::new(Polynomial::from_ints(&f3, &[1, 1]), None).unwrap();
    build_instance(&params).unwrap()
}

/// Erdős–Rényi graph `G(n, p)`.
pub fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = vec![];
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// `2k`-regular multigraph from `k` random permutations and their inverses.
pub fn permutation_graph(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut perms = vec![];
    let mut pairing = vec![];
    for i in 0..k {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(rng);
        let mut inv = vec![0; n];
        for (x, &y) in p.iter().enumerate() {
            inv[y] = x;
        }
        perms.push(p);
        perms.push(inv);
        pairing.push(2 * i + 1);
        pairing.push(2 * i);
    }
    Graph::from_permutations(n, &perms, &pairing).unwrap()
}

/// Random bipartite graph with sides `a` and `b`.
pub fn random_bipartite(a: usize, b: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = vec![];
    for u in 0..a {
        for v in 0..b {
            if rng.gen_bool(p) {
                edges.push((u, a + v));
            }
        }
    }
    Graph::from_edges(a + b, &edges).unwrap()
}

/// Subdivision of a graph: a midpoint on every edge.
pub fn subdivide(g: &Graph) -> Graph {
    let mut edges = vec![];
    let mut mid = g.n();
    for e in 0..g.edge_count() {
        if e < g.rev(e) {
            edges.push((g.src(e), mid));
            edges.push((mid, g.dst(e)));
            mid += 1;
        }
    }
    Graph::from_edges(mid, &edges).unwrap()
}
