//! Finite multigraphs in the directed-edge-with-involution formalism, Cayley
//! graphs of enumerated groups, and basic structural queries.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::projgroup::{GroupClosure, ProjectiveMatrix};

/// Multigraph given by directed edges `e` with source `s(e)`, target `t(e)`
/// and a fixed-point-free involution `ē` satisfying `s(ē) = t(e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    src: Vec<usize>,
    dst: Vec<usize>,
    rev: Vec<usize>,
    label: Vec<u32>,
    out_offsets: Vec<usize>,
    out_edges: Vec<usize>,
}

/// Graphs produced from a group and generator set.
pub type CayleyGraph = Graph;

/// Sorted vertex subset with a membership bitmap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subset {
    ids: Vec<usize>,
    member: Vec<bool>,
}

impl Subset {
    pub fn new(n: usize, ids: &[usize]) -> Result<Subset> {
        let mut member = vec![false; n];
        for &v in ids {
            if v >= n {
                return Err(Error::InvalidSubset(format!("vertex {v} out of range 0..{n}")));
            }
            if member[v] {
                return Err(Error::InvalidSubset(format!("duplicate vertex {v}")));
            }
            member[v] = true;
        }
        let ids = (0..n).filter(|&v| member[v]).collect();
        Ok(Subset { ids, member })
    }

    pub fn from_mask(member: Vec<bool>) -> Subset {
        let ids = member.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v).collect();
        Subset { ids, member }
    }

    pub fn full(n: usize) -> Subset {
        Subset::from_mask(vec![true; n])
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.member.get(v).copied().unwrap_or(false)
    }

    /// Size of the ambient vertex set.
    pub fn universe(&self) -> usize {
        self.member.len()
    }
}

/// Result of a bipartiteness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bipartition {
    /// Color 0 or 1 per vertex; each component's lowest vertex gets color 0.
    Coloring(Vec<u8>),
    /// A closed walk of odd length, as a vertex sequence returning to its start.
    OddCycle(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub directed_edges: usize,
    pub degree: Option<usize>,
    pub girth: Option<usize>,
    pub bipartite: bool,
    pub components: usize,
}

impl Graph {
    /// Builds from directed edge arrays, validating the involution.
    pub fn from_directed(n: usize, src: Vec<usize>, dst: Vec<usize>, rev: Vec<usize>, label: Vec<u32>) -> Result<Graph> {
        let m = src.len();
        if dst.len() != m || rev.len() != m || label.len() != m {
            return Err(Error::InvalidGraph("edge arrays differ in length".into()));
        }
        for e in 0..m {
            if src[e] >= n || dst[e] >= n {
                return Err(Error::InvalidGraph(format!("edge {e} has an endpoint out of range")));
            }
            let r = rev[e];
            if r >= m || r == e || rev[r] != e {
                return Err(Error::InvalidGraph(format!("edge {e} has no valid reverse")));
            }
            if src[r] != dst[e] || dst[r] != src[e] {
                return Err(Error::InvalidGraph(format!("reverse of edge {e} has wrong endpoints")));
            }
        }
        let mut out_offsets = vec![0usize; n + 1];
        for &s in &src {
            out_offsets[s + 1] += 1;
        }
        for v in 0..n {
            out_offsets[v + 1] += out_offsets[v];
        }
        let mut fill = out_offsets.clone();
        let mut out_edges = vec![0usize; m];
        for (e, &s) in src.iter().enumerate() {
            out_edges[fill[s]] = e;
            fill[s] += 1;
        }
        Ok(Graph { n, src, dst, rev, label, out_offsets, out_edges })
    }

    /// Each undirected pair `(u, v)` yields two directed edges, reverses of each other.
    /// A pair `(u, u)` is a loop contributing 2 to the degree of `u`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut src = Vec::with_capacity(2 * edges.len());
        let mut dst = Vec::with_capacity(2 * edges.len());
        let mut rev = Vec::with_capacity(2 * edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            src.extend([u, v]);
            dst.extend([v, u]);
            rev.extend([2 * i + 1, 2 * i]);
        }
        let label = vec![0; src.len()];
        Graph::from_directed(n, src, dst, rev, label)
    }

    /// Cayley graph from permutations: edge `x → perms[k][x]` with label `k`,
    /// reversed by the edge labelled `pairing[k]` at the target.
    pub fn from_permutations(n: usize, perms: &[Vec<usize>], pairing: &[usize]) -> Result<Graph> {
        let d = perms.len();
        if pairing.len() != d || perms.iter().any(|p| p.len() != n) {
            return Err(Error::InvalidGraph("permutation table has the wrong shape".into()));
        }
        let mut src = Vec::with_capacity(n * d);
        let mut dst = Vec::with_capacity(n * d);
        let mut rev = Vec::with_capacity(n * d);
        let mut label = Vec::with_capacity(n * d);
        for x in 0..n {
            for k in 0..d {
                let y = perms[k][x];
                src.push(x);
                dst.push(y);
                rev.push(y * d + pairing[k]);
                label.push(k as u32);
            }
        }
        Graph::from_directed(n, src, dst, rev, label)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of directed edges (twice the undirected count).
    pub fn edge_count(&self) -> usize {
        self.src.len()
    }

    pub fn src(&self, e: usize) -> usize {
        self.src[e]
    }

    pub fn dst(&self, e: usize) -> usize {
        self.dst[e]
    }

    pub fn rev(&self, e: usize) -> usize {
        self.rev[e]
    }

    pub fn label(&self, e: usize) -> u32 {
        self.label[e]
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[self.out_offsets[v]..self.out_offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.out_offsets[v + 1] - self.out_offsets[v]
    }

    /// Targets of the edges leaving `v`, with multiplicity.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out_edges(v).iter().map(|&e| self.dst[e])
    }

    /// Common degree, if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = if self.n == 0 { 0 } else { self.degree(0) };
        (0..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    pub fn average_degree(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.edge_count() as f64 / self.n as f64
        }
    }

    /// Subgraph induced on `s`, with vertices renumbered in increasing order.
    pub fn induced(&self, s: &Subset) -> Graph {
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in s.ids().iter().enumerate() {
            new_id[v] = i;
        }
        let mut edge_id = vec![usize::MAX; self.edge_count()];
        let kept: Vec<usize> = (0..self.edge_count())
            .filter(|&e| s.contains(self.src[e]) && s.contains(self.dst[e]))
            .collect();
        for (i, &e) in kept.iter().enumerate() {
            edge_id[e] = i;
        }
        let src = kept.iter().map(|&e| new_id[self.src[e]]).collect();
        let dst = kept.iter().map(|&e| new_id[self.dst[e]]).collect();
        let rev = kept.iter().map(|&e| edge_id[self.rev[e]]).collect();
        let label = kept.iter().map(|&e| self.label[e]).collect();
        Graph::from_directed(s.len(), src, dst, rev, label).expect("induced subgraph of a valid graph")
    }

    /// Iteratively removes vertices of degree below 2; returns the remaining
    /// graph and the original ids of its vertices.
    pub fn peel(&self) -> (Graph, Vec<usize>) {
        let mut alive = vec![true; self.n];
        let mut deg: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut queue: VecDeque<usize> = (0..self.n).filter(|&v| deg[v] < 2).collect();
        while let Some(v) = queue.pop_front() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for w in self.neighbors(v) {
                if alive[w] {
                    deg[w] -= 1;
                    if deg[w] < 2 {
                        queue.push_back(w);
                    }
                }
            }
        }
        let s = Subset::from_mask(alive);
        (self.induced(&s), s.ids().to_vec())
    }

    /// Length of the shortest cycle, `None` for forests. Loops count as
    /// 1-cycles and parallel edges as 2-cycles.
    pub fn girth(&self) -> Option<usize> {
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut touched = Vec::new();
        for root in 0..self.n {
            for &v in &touched {
                dist[v] = usize::MAX;
                parent[v] = usize::MAX;
            }
            touched.clear();
            dist[root] = 0;
            touched.push(root);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u] >= best {
                    break;
                }
                for &e in self.out_edges(u) {
                    if parent[u] != usize::MAX && e == self.rev[parent[u]] {
                        continue;
                    }
                    let w = self.dst[e];
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = e;
                        touched.push(w);
                        queue.push_back(w);
                    } else {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        (best != usize::MAX).then_some(best)
    }

    /// BFS 2-coloring, or an odd closed walk as refutation.
    pub fn bipartition(&self) -> Bipartition {
        let mut color = vec![u8::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for root in 0..self.n {
            if color[root] != u8::MAX {
                continue;
            }
            color[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u) {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        parent[w] = u;
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return Bipartition::OddCycle(odd_walk(&parent, u, w));
                    }
                }
            }
        }
        Bipartition::Coloring(color)
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self.bipartition(), Bipartition::Coloring(_))
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for root in 0..self.n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut comp = vec![root];
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// BFS distances from `root` (`usize::MAX` when unreachable).
    pub fn distances(&self, root: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn summary(&self) -> GraphSummary {
        GraphSummary {
            n: self.n,
            directed_edges: self.edge_count(),
            degree: self.regular_degree(),
            girth: self.girth(),
            bipartite: self.is_bipartite(),
            components: self.components().len(),
        }
    }

    /// Sorted list of per-vertex distance profiles (vertices at each distance);
    /// an isomorphism invariant.
    pub fn neighborhood_fingerprint(&self) -> Vec<Vec<usize>> {
        let dist_profile = |v: usize| {
            let d = self.distances(v);
            let mut counts = vec![0usize; self.n + 1];
            for x in d.into_iter().filter(|&x| x != usize::MAX) {
                counts[x] += 1;
            }
            while counts.last() == Some(&0) {
                counts.pop();
            }
            counts
        };
        let mut fp: Vec<Vec<usize>> = (0..self.n).map(dist_profile).collect();
        fp.sort();
        fp
    }

    /// Undirected DOT; each undirected edge is listed once.
    pub fn to_dot(&self, labels: Option<&[String]>) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n {
            match labels {
                Some(l) => writeln!(out, "  {v} [label=\"{}\"];", l[v].replace('"', "\\\"")).unwrap(),
                None => writeln!(out, "  {v};").unwrap(),
            }
        }
        for e in 0..self.edge_count() {
            if e < self.rev[e] {
                writeln!(out, "  {} -- {} [label=\"{}\"];", self.src[e], self.dst[e], self.label[e]).unwrap();
            }
        }
        out.push_str("}\n");
        out
    }

    /// Directed edge list `src,dst,label`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("src,dst,label\n");
        for e in 0..self.edge_count() {
            writeln!(out, "{},{},{}", self.src[e], self.dst[e], self.label[e]).unwrap();
        }
        out
    }
}

fn odd_walk(parent: &[usize], u: usize, w: usize) -> Vec<usize> {
    let path_to_root = |mut v: usize| {
        let mut p = vec![v];
        while parent[v] != usize::MAX {
            v = parent[v];
            p.push(v);
        }
        p
    };
    let pu = path_to_root(u);
    let pw = path_to_root(w);
    // Trim the shared tail to get the lowest common ancestor.
    let mut i = pu.len();
    let mut j = pw.len();
    while i > 1 && j > 1 && pu[i - 2] == pw[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut cycle: Vec<usize> = pu[..i].to_vec();
    cycle.extend(pw[..j - 1].iter().rev());
    cycle.push(u);
    cycle
}

/// Index `k'` with `gens[k'] = gens[k]⁻¹` for each `k`.
pub fn inverse_pairing(gens: &[ProjectiveMatrix]) -> Result<Vec<usize>> {
    gens.iter()
        .map(|g| {
            let inv = g.inv();
            gens.iter().position(|h| *h == inv).ok_or(Error::NotInverseClosed)
        })
        .collect()
}

/// Cayley graph with edges `x → γx` for each generator `γ`.
pub fn cayley_build(group: &GroupClosure, gens: &[ProjectiveMatrix]) -> Result<CayleyGraph> {
    let pairing = inverse_pairing(gens)?;
    if gens.iter().any(|g| g.is_identity()) {
        return Err(Error::InvalidParameter("identity generator would create a self-paired loop".into()));
    }
    let n = group.len();
    let same_gens = gens == group.generators();
    let mut perms = Vec::with_capacity(gens.len());
    for (k, g) in gens.iter().enumerate() {
        let perm = if same_gens {
            (0..n).map(|x| group.left_mul(x, k)).collect()
        } else {
            (0..n)
                .map(|x| group.id_of(&(g * group.element(x))).ok_or(Error::GeneratorNotInClosure))
                .collect::<Result<Vec<_>>>()?
        };
        perms.push(perm);
    }
    Graph::from_permutations(n, &perms, &pairing)
}
