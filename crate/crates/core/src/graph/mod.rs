//! Simple undirected graphs on at most 64 vertices, stored as adjacency
//! bitmasks, with the subgraph machinery needed by the classification.

mod canonical;
mod generating;

pub use canonical::CanonicalGraph;
pub use generating::GeneratingSet;

use crate::f2::BitIter;

/// An undirected graph without self-loops.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    adj: Vec<u64>,
    /// Index of each vertex in the generating set it was derived from.
    tags: Vec<usize>,
}

/// Kinds of induced subgraphs that obstruct equivalence to a D_{m,1} tree.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ForbiddenKind {
    /// Star with three leaves, the D_{2,2} tree.
    D22,
    /// Two triangles sharing an edge.
    Diamond,
    /// Chordless cycle of length at least four.
    Cycle,
}

impl ForbiddenKind {
    pub fn name(&self) -> &'static str {
        match self {
            ForbiddenKind::D22 => "D22",
            ForbiddenKind::Diamond => "two-triangles",
            ForbiddenKind::Cycle => "cycle",
        }
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        assert!(n <= 64, "graphs are limited to 64 vertices");
        Graph { adj: vec![0; n], tags: (0..n).collect() }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub(crate) fn from_adjacency(adj: Vec<u64>) -> Self {
        let n = adj.len();
        Graph { adj, tags: (0..n).collect() }
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0);
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn tags(&self) -> &[usize] {
        &self.tags
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b, "self-loop at {a}");
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        self.adj[a] &= !(1 << b);
        self.adj[b] &= !(1 << a);
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        (self.adj[a] >> b) & 1 == 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.vertex_count() {
            for b in BitIter(self.adj[a] >> a >> 1) {
                out.push((a, a + 1 + b));
            }
        }
        out
    }

    fn all_mask(&self) -> u64 {
        if self.vertex_count() == 64 {
            u64::MAX
        } else {
            (1u64 << self.vertex_count()) - 1
        }
    }

    /// Subgraph induced on the vertices in `mask`, relabelled in ascending
    /// order; tags follow the kept vertices.
    pub fn induced(&self, mask: u64) -> Graph {
        let keep: Vec<usize> = BitIter(mask & self.all_mask()).collect();
        let mut g = Graph::new(keep.len());
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g.tags = keep.iter().map(|&v| self.tags[v]).collect();
        g
    }

    pub fn induced_on(&self, vertices: &[usize]) -> Graph {
        self.induced(vertices.iter().fold(0u64, |m, &v| m | (1 << v)))
    }

    /// Connected components within `mask`, as vertex masks ordered by least
    /// vertex.
    pub(crate) fn component_masks(&self, mask: u64) -> Vec<u64> {
        let mut rest = mask;
        let mut out = Vec::new();
        while rest != 0 {
            let start = rest & rest.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let mut next = 0u64;
                for v in BitIter(frontier) {
                    next |= self.adj[v];
                }
                next &= mask & !comp;
                comp |= next;
                frontier = next;
            }
            out.push(comp);
            rest &= !comp;
        }
        out
    }

    pub(crate) fn component_count_in(&self, mask: u64) -> usize {
        self.component_masks(mask).len()
    }

    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        self.component_masks(self.all_mask()).into_iter().map(|m| BitIter(m).collect()).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.component_masks(self.all_mask()).len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count() + 1 == self.vertex_count().max(1)
    }

    /// All maximal cliques, each as an ascending vertex list, sorted.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.cliques_within(self.all_mask(), &mut |c| out.push(BitIter(c).collect::<Vec<_>>()));
        out.sort();
        out
    }

    /// Maximal cliques of the subgraph induced on `mask`, as masks.
    pub(crate) fn maximal_clique_masks(&self, mask: u64) -> Vec<u64> {
        let mut out = Vec::new();
        self.cliques_within(mask, &mut |c| out.push(c));
        out
    }

    fn cliques_within(&self, mask: u64, emit: &mut dyn FnMut(u64)) {
        if mask != 0 {
            self.bron_kerbosch(0, mask, 0, mask, emit);
        }
    }

    /// Bron–Kerbosch with Tomita pivoting.
    fn bron_kerbosch(&self, r: u64, p: u64, x: u64, mask: u64, emit: &mut dyn FnMut(u64)) {
        if p == 0 && x == 0 {
            emit(r);
            return;
        }
        let pivot = BitIter(p | x).max_by_key(|&u| (self.adj[u] & p).count_ones()).unwrap();
        let mut p = p;
        let mut x = x;
        for v in BitIter(p & !self.adj[pivot]) {
            let nv = self.adj[v] & mask;
            self.bron_kerbosch(r | (1 << v), p & nv, x & nv, mask, emit);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }

    /// Every induced D_{2,2} star, two-triangles graph, and chordless cycle of
    /// length ≥ 4, tagged by kind, sorted by (kind, vertices).
    pub fn find_forbidden(&self) -> Vec<(ForbiddenKind, Vec<usize>)> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for c in 0..n {
            let nb: Vec<usize> = BitIter(self.adj[c]).collect();
            for (i, &a) in nb.iter().enumerate() {
                for (j, &b) in nb.iter().enumerate().skip(i + 1) {
                    if self.has_edge(a, b) {
                        continue;
                    }
                    for &d in &nb[j + 1..] {
                        if !self.has_edge(a, d) && !self.has_edge(b, d) {
                            let mut s = vec![c, a, b, d];
                            s.sort();
                            out.push((ForbiddenKind::D22, s));
                        }
                    }
                }
            }
        }
        for (u, v) in self.edges() {
            let common: Vec<usize> = BitIter(self.adj[u] & self.adj[v]).collect();
            for (i, &a) in common.iter().enumerate() {
                for &b in &common[i + 1..] {
                    if !self.has_edge(a, b) {
                        let mut s = vec![u, v, a, b];
                        s.sort();
                        out.push((ForbiddenKind::Diamond, s));
                    }
                }
            }
        }
        for cycle in self.chordless_cycles(4) {
            let mut s = cycle;
            s.sort();
            out.push((ForbiddenKind::Cycle, s));
        }
        out.sort();
        out
    }

    /// Chordless cycles of length ≥ `min_len`, each once, in cyclic order
    /// starting at the least vertex.
    pub fn chordless_cycles(&self, min_len: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        for s in 0..self.vertex_count() {
            path.clear();
            path.push(s);
            self.extend_cycle(&mut path, 1u64 << s, min_len.max(3), &mut out);
        }
        out
    }

    fn extend_cycle(&self, path: &mut Vec<usize>, on_path: u64, min_len: usize, out: &mut Vec<Vec<usize>>) {
        let s = path[0];
        let last = *path.last().unwrap();
        let k = path.len() - 1;
        // vertices strictly inside the path must not touch the candidate
        let interior: u64 = path[1..k.max(1)].iter().fold(0, |m, &v| m | (1 << v));
        let above_s = !((1u64 << s) | ((1u64 << s) - 1));
        let candidates = self.adj[last] & above_s & !on_path;
        for w in BitIter(candidates) {
            if self.adj[w] & interior != 0 {
                continue;
            }
            if k >= 1 && self.has_edge(s, w) {
                if k + 2 >= min_len && path[1] < w {
                    let mut c = path.clone();
                    c.push(w);
                    out.push(c);
                }
                continue;
            }
            path.push(w);
            self.extend_cycle(path, on_path | (1 << w), min_len, out);
            path.pop();
        }
    }

    pub fn canonical(&self) -> CanonicalGraph {
        CanonicalGraph::of(self)
    }
}

/// One representative of every isomorphism class of connected graphs on `n`
/// vertices, ordered by canonical key. Enumerates all labelled graphs, so
/// `n` is capped at 7.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=7).contains(&n), "connected_graphs supports 1 to 7 vertices");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|q| (0..q).map(move |p| (p, q))).collect();
    let mut seen = std::collections::BTreeSet::new();
    for code in 0u64..1 << pairs.len() {
        let mut g = Graph::new(n);
        for (i, &(p, q)) in pairs.iter().enumerate() {
            if (code >> i) & 1 == 1 {
                g.add_edge(p, q);
            }
        }
        if g.is_connected() {
            seen.insert(g.canonical());
        }
    }
    seen.into_iter().map(|c| c.to_graph()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges)
    }

    #[test]
    fn connected_graph_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 6, 21]);
    }

    #[test]
    fn components() {
        assert_eq!(Graph::new(4).connected_components().len(), 4);
        assert!(star(3).is_connected());
        let g = Graph::path(4).induced_on(&[0, 2]);
        assert_eq!(g.connected_components(), vec![vec![0], vec![1]]);
        assert_eq!(g.tags(), &[0, 2]);
    }

    #[test]
    fn clique_examples() {
        assert_eq!(Graph::cycle(3).maximal_cliques(), vec![vec![0, 1, 2]]);
        assert_eq!(Graph::path(3).maximal_cliques(), vec![vec![0, 1], vec![1, 2]]);
        let diamond = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(diamond.maximal_cliques(), vec![vec![0, 1, 2], vec![1, 2, 3]]);
        assert_eq!(Graph::new(2).maximal_cliques(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn forbidden_examples() {
        // D_{4,1} is a path on five vertices
        assert!(Graph::path(5).find_forbidden().is_empty());
        assert_eq!(Graph::cycle(5).find_forbidden(), vec![(ForbiddenKind::Cycle, vec![0, 1, 2, 3, 4])]);
        assert_eq!(star(3).find_forbidden(), vec![(ForbiddenKind::D22, vec![0, 1, 2, 3])]);
        let diamond = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(diamond.find_forbidden(), vec![(ForbiddenKind::Diamond, vec![0, 1, 2, 3])]);
        assert_eq!(Graph::cycle(4).find_forbidden(), vec![(ForbiddenKind::Cycle, vec![0, 1, 2, 3])]);
    }

    #[test]
    fn chordless_cycles_in_prism() {
        // triangular prism: two triangles and three induced 4-cycles
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]);
        assert_eq!(g.chordless_cycles(4).len(), 3);
        assert_eq!(g.chordless_cycles(3).len(), 5);
    }

    #[test]
    fn trees() {
        assert!(Graph::path(1).is_tree());
        assert!(star(4).is_tree());
        assert!(!Graph::cycle(4).is_tree());
    }
}
