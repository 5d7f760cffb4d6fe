use super::Graph;
use crate::f2::BitIter;

/// Isomorphism-invariant key of a graph with at most 16 vertices.
///
/// Vertices are first split into cells by colour refinement; the key is the
/// least upper-triangle adjacency code over all orderings that respect the
/// cell order. Equal keys iff isomorphic graphs.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalGraph {
    n: u8,
    code: u128,
}

pub const CANONICAL_MAX_VERTICES: usize = 16;

impl CanonicalGraph {
    pub fn vertex_count(&self) -> usize {
        self.n as usize
    }

    pub fn code(&self) -> u128 {
        self.code
    }

    /// The graph in canonical vertex order.
    pub fn to_graph(&self) -> Graph {
        let n = self.vertex_count();
        let mut g = Graph::new(n);
        let total = n * n.saturating_sub(1) / 2;
        let mut bit = total;
        for p in 1..n {
            for q in 0..p {
                bit -= 1;
                if (self.code >> bit) & 1 == 1 {
                    g.add_edge(q, p);
                }
            }
        }
        g
    }

    pub fn of(g: &Graph) -> CanonicalGraph {
        let n = g.vertex_count();
        assert!(n <= CANONICAL_MAX_VERTICES, "canonical form limited to {CANONICAL_MAX_VERTICES} vertices");
        if n <= 1 {
            return CanonicalGraph { n: n as u8, code: 0 };
        }
        let colors = refine(g);
        let mut cells: Vec<u64> = Vec::new();
        let max_color = *colors.iter().max().unwrap();
        for c in 0..=max_color {
            let m = (0..n).filter(|&v| colors[v] == c).fold(0u64, |m, v| m | (1 << v));
            if m != 0 {
                cells.push(m);
            }
        }
        let mut search = Search {
            g,
            n,
            total: n * (n - 1) / 2,
            order: Vec::with_capacity(n),
            best: None,
        };
        search.run(&cells, 0, 0, 0);
        CanonicalGraph { n: n as u8, code: search.best.unwrap() }
    }
}

/// Stable colour refinement with isomorphism-invariant colour numbering.
fn refine(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut colors: Vec<usize> = vec![0; n];
    let mut classes = 1;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = BitIter(g.neighbors(v)).map(|u| colors[u]).collect();
                nb.sort();
                (colors[v], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs.iter().map(|s| distinct.binary_search(s).unwrap()).collect();
        if distinct.len() == classes {
            return next;
        }
        classes = distinct.len();
        colors = next;
    }
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    total: usize,
    order: Vec<usize>,
    best: Option<u128>,
}

impl Search<'_> {
    /// Places vertices position by position; `code` holds the bits for pairs
    /// among already placed positions, most significant first.
    fn run(&mut self, cells: &[u64], cell: usize, used: u64, code: u128) {
        let placed = self.order.len();
        if placed == self.n {
            if self.best.is_none_or(|b| code < b) {
                self.best = Some(code);
            }
            return;
        }
        let mut cell = cell;
        while cells[cell] & !used == 0 {
            cell += 1;
        }
        for v in BitIter(cells[cell] & !used) {
            let mut c = code;
            for &u in &self.order {
                c = (c << 1) | self.g.has_edge(u, v) as u128;
            }
            let bits = (placed + 1) * placed / 2;
            if let Some(b) = self.best {
                let prefix = b >> (self.total - bits);
                if c > prefix {
                    continue;
                }
            }
            self.order.push(v);
            self.run(cells, cell, used | (1 << v), c);
            self.order.pop();
        }
    }
}
