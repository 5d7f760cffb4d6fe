//! Basic moves on generating sets, exploration of move-equivalence classes,
//! E₆ detection, and recognition of the equivalence class of a basis.

use std::collections::{BTreeSet, BinaryHeap, HashSet, VecDeque};
use std::cmp::Reverse;
use std::fmt;
use std::sync::OnceLock;

use crate::classify::quadratic_form;
use crate::error::{Error, Result};
use crate::f2::{QuadraticForm, Subspace};
use crate::graph::{CanonicalGraph, GeneratingSet, Graph};
use crate::orbits::{v0, v000_with, Delta};

/// φ_{c,a}: replaces generator `c` by c + a; requires Ω(a, c) = 1.
pub fn basic_move(b: &GeneratingSet, c: usize, a: usize) -> Result<GeneratingSet> {
    if c >= b.len() {
        return Err(Error::IndexOutOfRange(c));
    }
    if a >= b.len() {
        return Err(Error::IndexOutOfRange(a));
    }
    let (va, vc) = (b.vectors()[a], b.vectors()[c]);
    if c == a || !b.form().pair(&va, &vc)? {
        return Err(Error::NotAdjacent { c, a });
    }
    b.replace(c, vc + va)
}

/// The graph-level effect of φ_{c,a} for an alternating form: c is
/// connected to the neighbours of a it was not connected to and
/// disconnected from the ones it was.
pub fn move_graph(g: &Graph, c: usize, a: usize) -> Result<Graph> {
    if !g.has_edge(a, c) {
        return Err(Error::NotAdjacent { c, a });
    }
    let mut adj = g.adjacency().to_vec();
    let flip = adj[a] & !(1 << c);
    adj[c] ^= flip;
    for v in crate::f2::BitIter(flip) {
        adj[v] ^= 1 << c;
    }
    Ok(Graph::from_adjacency(adj))
}

/// Default cap on the number of graphs visited by [`equivalence_class`].
pub const DEFAULT_CLASS_BUDGET: usize = 200_000;

/// Every graph reachable from `g` by basic moves, up to isomorphism.
///
/// Fails with `BudgetExceeded` rather than returning a partial class.
pub fn equivalence_class(g: &Graph, budget: usize) -> Result<BTreeSet<CanonicalGraph>> {
    let start = g.canonical();
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(key) = queue.pop_front() {
        let h = key.to_graph();
        for (u, v) in h.edges() {
            for (c, a) in [(u, v), (v, u)] {
                let next = move_graph(&h, c, a)?.canonical();
                if seen.insert(next) {
                    if seen.len() > budget {
                        return Err(Error::BudgetExceeded(budget));
                    }
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(seen)
}

/// The Dynkin tree E₆: chain x₁–x₂–x₃–x₄–x₅ with x₆ attached to x₃.
pub fn e6_graph() -> Graph {
    Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)])
}

/// The move-equivalence class of E₆, computed once.
pub fn e6_class() -> &'static BTreeSet<CanonicalGraph> {
    static CLASS: OnceLock<BTreeSet<CanonicalGraph>> = OnceLock::new();
    CLASS.get_or_init(|| equivalence_class(&e6_graph(), DEFAULT_CLASS_BUDGET).expect("E6 class fits the budget"))
}

/// Some 6-vertex set whose induced subgraph is equivalent to E₆.
pub fn contains_e6(g: &Graph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    if n < 6 {
        return None;
    }
    let class = e6_class();
    let mut found = None;
    for_each_subset(n, 6, &mut |mask| {
        let h = g.induced(mask);
        if h.is_connected() && class.contains(&h.canonical()) {
            found = Some(crate::f2::BitIter(mask).collect());
            return true;
        }
        false
    });
    found
}

/// Calls `f` on every `k`-subset of `0..n` (as a mask) until it returns true.
fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(u64) -> bool) -> bool {
    fn rec(start: usize, n: usize, k: usize, mask: u64, f: &mut dyn FnMut(u64) -> bool) -> bool {
        if k == 0 {
            return f(mask);
        }
        for v in start..=n - k {
            if rec(v + 1, n, k - 1, mask | (1 << v), f) {
                return true;
            }
        }
        false
    }
    k <= n && rec(0, n, k, 0, f)
}

/// Whether a connected graph is equivalent to a D_{m,1} tree, i.e. has no
/// induced D_{2,2}, two-triangles, or long chordless cycle.
pub fn is_dm1(g: &Graph) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    Ok(g.find_forbidden().is_empty())
}

/// Normal form of a move-equivalence class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassKind {
    /// Broom tree: chain a₁…a_m with k leaves on a_m. The single edge is
    /// reported as `DType { m: 1, k: 1 }`.
    DType { m: usize, k: usize },
    TreeA { n: usize, p: usize },
    TreeB { n: usize, p: usize },
    TreeC { n: usize, p: usize },
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassKind::DType { m, k } => write!(f, "D({m},{k})"),
            ClassKind::TreeA { n, p } => write!(f, "TreeA(n={n},p={p})"),
            ClassKind::TreeB { n, p } => write!(f, "TreeB(n={n},p={p})"),
            ClassKind::TreeC { n, p } => write!(f, "TreeC(n={n},p={p})"),
        }
    }
}

/// Invariants from which a class label is read off.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClassWitness {
    pub dim: usize,
    pub dim_v0: usize,
    pub dim_v000: usize,
    pub q_radical_nontrivial: bool,
    pub arf: Option<bool>,
    pub contains_e6: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClassLabel {
    pub kind: ClassKind,
    pub witness: ClassWitness,
}

impl ClassLabel {
    pub fn is_dtype(&self) -> bool {
        matches!(self.kind, ClassKind::DType { .. })
    }
}

/// Recognizes the equivalence class of a connected basis of its span from
/// the invariants dim V, dim V₀, dim V₀₀₀, Q_B(V₀) and Arf(Q_B).
pub fn recognize(b: &GeneratingSet) -> Result<ClassLabel> {
    precheck(b)?;
    let v0 = v0(b)?;
    let delta = Delta::new(b)?;
    let v000 = v000_with(b, &delta, &v0)?;
    let q = quadratic_form(b)?;
    recognize_with(b, &v0, &v000, &q)
}

fn precheck(b: &GeneratingSet) -> Result<()> {
    if b.len() < 2 {
        return Err(Error::DimensionTooSmall(b.len()));
    }
    if !b.graph().is_connected() {
        return Err(Error::NotConnected);
    }
    if !b.is_alternating() {
        return Err(Error::NotAlternating);
    }
    Ok(())
}

pub(crate) fn recognize_with(b: &GeneratingSet, v0: &Subspace, v000: &Subspace, q: &QuadraticForm) -> Result<ClassLabel> {
    precheck(b)?;
    let dim = b.len();
    let dim_v0 = v0.dim();
    let dim_v000 = v000.dim();
    let q_radical_nontrivial = v0.basis().iter().map(|h| q.eval(h)).collect::<Result<Vec<_>>>()?.into_iter().any(|v| v);
    let arf = if q_radical_nontrivial { None } else { Some(q.arf()?) };
    let e6 = contains_e6(b.graph()).is_some();
    let witness = ClassWitness { dim, dim_v0, dim_v000, q_radical_nontrivial, arf, contains_e6: e6 };
    let bad = |why: &str| Error::Unclassifiable(format!("{why}: {witness:?}"));
    let kind = if e6 {
        if !(dim - dim_v0).is_multiple_of(2) {
            return Err(bad("odd rank"));
        }
        let n = (dim - dim_v0) / 2;
        let p = dim_v0;
        match arf {
            None => ClassKind::TreeC { n, p },
            Some(arf) if arf == matches!(n % 4, 2 | 3) => ClassKind::TreeA { n, p },
            Some(_) => ClassKind::TreeB { n, p },
        }
    } else if dim_v000 + 1 == dim_v0 {
        let k = dim_v000 + 1;
        let m = dim - k;
        if !m.is_multiple_of(2) || m < 4 {
            return Err(bad("m must be even and greater than 2"));
        }
        ClassKind::DType { m, k }
    } else if dim_v000 == dim_v0 {
        if dim_v0 >= 1 && dim == dim_v0 + 2 {
            ClassKind::DType { m: 2, k: dim_v0 }
        } else {
            let k = dim_v0 + 1;
            let m = dim.checked_sub(k).ok_or_else(|| bad("k exceeds dimension"))?;
            if m % 2 == 0 || (m == 1 && dim != 2) {
                return Err(bad("m must be odd"));
            }
            ClassKind::DType { m, k }
        }
    } else {
        return Err(bad("dim V0 / V000 > 1"));
    };
    Ok(ClassLabel { kind, witness })
}

/// An equivalent basis whose graph is a tree, found by best-first search
/// over basic moves preferring fewer edges.
pub fn normalize_to_tree(b: &GeneratingSet, budget: usize) -> Result<GeneratingSet> {
    if !b.graph().is_connected() {
        return Err(Error::NotConnected);
    }
    if b.graph().is_tree() {
        return Ok(b.clone());
    }
    let mut seen = HashSet::from([b.graph().canonical()]);
    let mut states = vec![b.clone()];
    let mut heap = BinaryHeap::from([Reverse((b.graph().edge_count(), 0usize))]);
    while let Some(Reverse((_, id))) = heap.pop() {
        let current = states[id].clone();
        for (u, v) in current.graph().edges() {
            for (c, a) in [(u, v), (v, u)] {
                let Ok(next) = basic_move(&current, c, a) else { continue };
                if next.graph().is_tree() {
                    return Ok(next);
                }
                if seen.insert(next.graph().canonical()) {
                    if seen.len() > budget {
                        return Err(Error::BudgetExceeded(budget));
                    }
                    heap.push(Reverse((next.graph().edge_count(), states.len())));
                    states.push(next);
                }
            }
        }
    }
    Err(Error::BudgetExceeded(budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2::F2Vector;

    fn broom_graph(m: usize, k: usize) -> Graph {
        let mut edges: Vec<_> = (1..m).map(|i| (i - 1, i)).collect();
        edges.extend((0..k).map(|j| (m - 1, m + j)));
        Graph::from_edges(m + k, &edges)
    }

    fn label(g: &Graph) -> ClassKind {
        recognize(&GeneratingSet::from_graph(g).unwrap()).unwrap().kind
    }

    #[test]
    fn move_on_chain() {
        // c - a - d, φ_{c,a}: c' = c + a meets both a and d
        let b = GeneratingSet::from_graph(&Graph::path(3)).unwrap();
        let moved = basic_move(&b, 0, 1).unwrap();
        assert_eq!(moved.graph().edge_count(), 3);
        assert!(moved.graph().has_edge(0, 2));
        assert_eq!(move_graph(b.graph(), 0, 1).unwrap(), *moved.graph());
        let back = basic_move(&moved, 0, 1).unwrap();
        assert_eq!(back.vectors(), b.vectors());
        assert!(matches!(basic_move(&b, 2, 0), Err(Error::NotAdjacent { .. })));
    }

    #[test]
    fn equivalence_class_examples() {
        let c4 = equivalence_class(&Graph::cycle(4), 1000).unwrap();
        assert!(c4.contains(&broom_graph(2, 2).canonical()));
        let e6 = e6_class();
        assert!(!e6.contains(&Graph::cycle(6).canonical()));
        assert_eq!(equivalence_class(&Graph::path(2), 10).unwrap().len(), 1);
        assert!(matches!(equivalence_class(&e6_graph(), 2), Err(Error::BudgetExceeded(2))));
    }

    #[test]
    fn e6_detection() {
        assert_eq!(contains_e6(&e6_graph()), Some((0..6).collect()));
        for (m, k) in [(2, 3), (3, 3), (5, 2), (7, 1), (4, 4)] {
            assert_eq!(contains_e6(&broom_graph(m, k)), None, "D({m},{k})");
        }
        // family C at n = 3, p = 1 is E7
        let e7 = Graph::from_edges(7, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (0, 4)]);
        assert!(contains_e6(&e7).is_some());
    }

    #[test]
    fn dm1_examples() {
        assert!(is_dm1(&Graph::path(6)).unwrap());
        assert!(!is_dm1(&Graph::cycle(4)).unwrap());
        assert!(!is_dm1(&broom_graph(3, 2)).unwrap());
        assert_eq!(is_dm1(&Graph::new(2)), Err(Error::NotConnected));
    }

    #[test]
    fn recognition_examples() {
        assert_eq!(label(&Graph::cycle(5)), ClassKind::DType { m: 3, k: 2 });
        assert_eq!(label(&broom_graph(2, 3)), ClassKind::DType { m: 2, k: 3 });
        let e6 = recognize(&GeneratingSet::from_graph(&e6_graph()).unwrap()).unwrap();
        assert_eq!(e6.kind, ClassKind::TreeA { n: 3, p: 0 });
        assert_eq!(e6.witness.arf, Some(true));
        assert_eq!(e6.witness.dim_v0, 0);
        for (m, k) in [(2, 1), (3, 1), (4, 2), (6, 1), (5, 3), (8, 1)] {
            assert_eq!(label(&broom_graph(m, k)), ClassKind::DType { m, k });
        }
        assert_eq!(label(&Graph::path(2)), ClassKind::DType { m: 1, k: 1 });
    }

    #[test]
    fn tree_normalization() {
        let tri = GeneratingSet::from_graph(&Graph::cycle(3)).unwrap();
        let t = normalize_to_tree(&tri, 100).unwrap();
        assert!(t.graph().is_tree());
        assert_eq!(t.graph().canonical(), Graph::path(3).canonical());
        let c4 = GeneratingSet::from_graph(&Graph::cycle(4)).unwrap();
        let t = normalize_to_tree(&c4, 100).unwrap();
        assert_eq!(t.graph().canonical(), broom_graph(2, 2).canonical());
        let path = GeneratingSet::from_graph(&Graph::path(4)).unwrap();
        assert_eq!(normalize_to_tree(&path, 1).unwrap().vectors(), path.vectors());
        let _ = F2Vector::zero(1);
    }
}
