use std::sync::Arc;

use super::Graph;
use crate::error::{Error, Result};
use crate::f2::{parity, BilinearForm, CoordinateSystem, F2Vector, Subspace};

/// An ordered, linearly independent set B of isotropic vectors together with
/// the ambient form and its derived graph Gr(B).
#[derive(Clone, Debug)]
pub struct GeneratingSet {
    form: Arc<BilinearForm>,
    vectors: Vec<F2Vector>,
    labels: Vec<String>,
    coords: CoordinateSystem,
    /// Ω(x, bᵢ) = parity(x & left[i]).
    left: Vec<u64>,
    graph: Graph,
}

impl GeneratingSet {
    pub fn new(form: BilinearForm, vectors: Vec<F2Vector>, labels: Vec<String>) -> Result<Self> {
        Self::with_shared_form(Arc::new(form), vectors, labels)
    }

    /// Generators labelled `b1`, `b2`, ….
    pub fn unlabelled(form: BilinearForm, vectors: Vec<F2Vector>) -> Result<Self> {
        let labels = (1..=vectors.len()).map(|i| format!("b{i}")).collect();
        Self::new(form, vectors, labels)
    }

    /// The standard basis of F₂ⁿ with the alternating form of a graph.
    pub fn from_graph(g: &Graph) -> Result<Self> {
        let n = g.vertex_count();
        let form = BilinearForm::from_edges(n, &g.edges())?;
        let vectors = (0..n).map(|i| F2Vector::unit(n, i)).collect();
        Self::unlabelled(form, vectors)
    }

    pub(crate) fn with_shared_form(form: Arc<BilinearForm>, vectors: Vec<F2Vector>, labels: Vec<String>) -> Result<Self> {
        if labels.len() != vectors.len() {
            return Err(Error::DimensionMismatch { expected: vectors.len(), found: labels.len() });
        }
        let coords = CoordinateSystem::new(form.dim(), &vectors)?;
        for (b, label) in vectors.iter().zip(&labels) {
            if form.pair(b, b)? {
                return Err(Error::Semantic(format!("generator {label} has Omega(b, b) = 1")));
            }
        }
        let left: Vec<u64> = vectors.iter().map(|b| form.left_functional(b.bits())).collect();
        let mut graph = Graph::new(vectors.len());
        for i in 0..vectors.len() {
            for j in 0..i {
                let (bi, bj) = (vectors[i].bits(), vectors[j].bits());
                if form.pair_bits(bi, bj) || form.pair_bits(bj, bi) {
                    graph.add_edge(i, j);
                }
            }
        }
        Ok(GeneratingSet { form, vectors, labels, coords, left, graph })
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub(crate) fn shared_form(&self) -> Arc<BilinearForm> {
        Arc::clone(&self.form)
    }

    pub fn vectors(&self) -> &[F2Vector] {
        &self.vectors
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    /// Gr(B): i ~ j iff Ω(bᵢ, bⱼ) = 1 or Ω(bⱼ, bᵢ) = 1.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn span(&self) -> Subspace {
        Subspace::span_bits(self.dim(), self.vectors.iter().map(|v| v.bits()))
    }

    pub fn spans_ambient(&self) -> bool {
        self.len() == self.dim()
    }

    /// Whether Ω restricted to span(B) is alternating.
    pub fn is_alternating(&self) -> bool {
        self.form.is_alternating_on(&self.vectors)
    }

    /// Coefficients of `x` in the basis B (bit i ↔ bᵢ).
    pub fn expand(&self, x: &F2Vector) -> Result<u64> {
        self.form.check(x)?;
        self.coords.coordinates_bits(x.bits()).ok_or_else(|| Error::NotInSpan(x.to_string()))
    }

    #[inline]
    pub(crate) fn expand_bits(&self, x: u64) -> Option<u64> {
        self.coords.coordinates_bits(x)
    }

    #[inline]
    pub(crate) fn combine_bits(&self, coefficients: u64) -> u64 {
        self.coords.combine_bits(coefficients)
    }

    /// Gr(B, x): the subgraph of Gr(B) on the support of x in basis B.
    pub fn support_subgraph(&self, x: &F2Vector) -> Result<Graph> {
        Ok(self.graph.induced(self.expand(x)?))
    }

    /// Ω(x, bᵢ).
    #[inline]
    pub(crate) fn pairs_with(&self, x: u64, i: usize) -> bool {
        parity(x & self.left[i])
    }

    /// τ_{bᵢ}(x) = x + Ω(x, bᵢ) bᵢ.
    #[inline]
    pub(crate) fn transvect_bits(&self, i: usize, x: u64) -> u64 {
        if self.pairs_with(x, i) {
            x ^ self.vectors[i].bits()
        } else {
            x
        }
    }

    /// x is fixed by Γ_B iff Ω(x, b) = 0 for every generator.
    #[inline]
    pub(crate) fn fixes_bits(&self, x: u64) -> bool {
        self.left.iter().all(|&l| !parity(x & l))
    }

    pub fn fixes(&self, x: &F2Vector) -> bool {
        self.fixes_bits(x.bits())
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The same form with generator `i` replaced.
    pub fn replace(&self, i: usize, v: F2Vector) -> Result<GeneratingSet> {
        if i >= self.len() {
            return Err(Error::IndexOutOfRange(i));
        }
        let mut vectors = self.vectors.clone();
        vectors[i] = v;
        Self::with_shared_form(self.shared_form(), vectors, self.labels.clone())
    }

    /// B ∖ {bᵢ}.
    pub fn without(&self, i: usize) -> Result<GeneratingSet> {
        if i >= self.len() {
            return Err(Error::IndexOutOfRange(i));
        }
        let mut vectors = self.vectors.clone();
        let mut labels = self.labels.clone();
        vectors.remove(i);
        labels.remove(i);
        Self::with_shared_form(self.shared_form(), vectors, labels)
    }

    /// B ∪ {v}, appended last.
    pub fn with_extra(&self, v: F2Vector, label: &str) -> Result<GeneratingSet> {
        let mut vectors = self.vectors.clone();
        let mut labels = self.labels.clone();
        vectors.push(v);
        labels.push(label.to_string());
        Self::with_shared_form(self.shared_form(), vectors, labels).map_err(|e| match e {
            Error::NotIndependent => Error::Dependent(v.to_string()),
            e => e,
        })
    }

    /// Subset of generators by index, in the given order.
    pub fn subset(&self, indices: &[usize]) -> Result<GeneratingSet> {
        let vectors = indices.iter().map(|&i| self.vectors.get(i).copied().ok_or(Error::IndexOutOfRange(i))).collect::<Result<Vec<_>>>()?;
        let labels = indices.iter().map(|&i| self.labels[i].clone()).collect();
        Self::with_shared_form(self.shared_form(), vectors, labels)
    }

    /// Renders a vector of span(B) as `b1+b3`, or `0`.
    pub fn describe(&self, x: &F2Vector) -> Option<String> {
        let c = self.expand(x).ok()?;
        if c == 0 {
            return Some("0".into());
        }
        Some(crate::f2::BitIter(c).map(|i| self.labels[i].as_str()).collect::<Vec<_>>().join("+"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e6() -> GeneratingSet {
        GeneratingSet::from_graph(&Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)])).unwrap()
    }

    #[test]
    fn graph_of_e6_is_the_tree() {
        let b = e6();
        assert!(b.graph().is_tree());
        let x2 = b.vectors()[1];
        let x3 = b.vectors()[2];
        let x1 = b.vectors()[0];
        assert!(b.form().pair(&x2, &x3).unwrap());
        assert!(!b.form().pair(&x1, &x3).unwrap());
    }

    #[test]
    fn zero_form_gives_edgeless_graph() {
        let b = GeneratingSet::unlabelled(BilinearForm::zero(3).unwrap(), (0..3).map(|i| F2Vector::unit(3, i)).collect()).unwrap();
        assert_eq!(b.graph().edge_count(), 0);
    }

    #[test]
    fn directed_pair_still_makes_an_edge() {
        let mut form = BilinearForm::zero(2).unwrap();
        form.set(1, 0, true);
        let b = GeneratingSet::unlabelled(form, vec![F2Vector::unit(2, 0), F2Vector::unit(2, 1)]).unwrap();
        assert!(b.graph().has_edge(0, 1));
    }

    #[test]
    fn support_subgraphs() {
        // chain a1 - a2 - a3 - a4 - c1
        let b = GeneratingSet::from_graph(&Graph::path(5)).unwrap();
        let x = b.vectors()[0] + b.vectors()[2];
        let g = b.support_subgraph(&x).unwrap();
        assert_eq!(g.connected_components().len(), 2);
        let y = b.vectors()[0] + b.vectors()[1];
        assert_eq!(b.support_subgraph(&y).unwrap().connected_components().len(), 1);
        assert_eq!(b.support_subgraph(&b.vectors()[1]).unwrap().vertex_count(), 1);
    }

    #[test]
    fn rejects_dependent_or_anisotropic() {
        let form = BilinearForm::zero(2).unwrap();
        let v = F2Vector::unit(2, 0);
        assert_eq!(GeneratingSet::unlabelled(form.clone(), vec![v, v]).unwrap_err(), Error::NotIndependent);
        let mut f = form;
        f.set(0, 0, true);
        assert!(GeneratingSet::unlabelled(f, vec![v]).is_err());
    }

    #[test]
    fn not_in_span() {
        let form = BilinearForm::zero(3).unwrap();
        let b = GeneratingSet::unlabelled(form, vec![F2Vector::unit(3, 0)]).unwrap();
        assert!(matches!(b.support_subgraph(&F2Vector::unit(3, 1)), Err(Error::NotInSpan(_))));
    }
}
