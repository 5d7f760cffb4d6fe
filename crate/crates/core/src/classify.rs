//! Closed-form orbit classification for a connected basis: Q_B, the d
//! formula on minimal representatives, the broom fold, and the structure of
//! V₀₀₀ through forbidden subgraphs.
//!
//! Every theorem-backed result is re-checked at runtime; a failed check is
//! reported through an invariant error rather than returned as data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::f2::{BitIter, F2Vector, QuadraticForm, Subspace};
use crate::graph::GeneratingSet;
use crate::moves::{recognize, recognize_with, ClassKind, ClassLabel};
use crate::orbits::{v0, v000_with, Delta};

/// Q_B: the quadratic form on span(B) with Q(b) = 1 for every generator.
pub fn quadratic_form(b: &GeneratingSet) -> Result<QuadraticForm> {
    QuadraticForm::new(b.form(), b.vectors(), &vec![true; b.len()])
}

/// Randomized check that Q(τ_b(x)) = Q(x) for generators b and random x in
/// the domain of Q.
pub fn gamma_invariance_check(b: &GeneratingSet, q: &QuadraticForm, trials: usize, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis: Vec<u64> = q.basis().iter().map(|v| v.bits()).collect();
    if b.is_empty() {
        return true;
    }
    (0..trials).all(|_| {
        let c: u64 = rng.gen::<u64>() & crate::f2::mask(basis.len());
        let x = BitIter(c).fold(0, |acc, i| acc ^ basis[i]);
        let g = rng.gen_range(0..b.len());
        let y = b.transvect_bits(g, x);
        matches!((q.eval_bits(x), q.eval_bits(y)), (Some(qx), Some(qy)) if qx == qy)
    })
}

/// Orbit type of a vector of span(B).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitLabel {
    Fixed,
    Moving { d: usize },
}

impl std::fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrbitLabel::Fixed => write!(f, "fixed"),
            OrbitLabel::Moving { d } => write!(f, "moving (d = {d})"),
        }
    }
}

/// Invariants of a connected basis, computed once and shared by every
/// closed-form query.
#[derive(Clone, Debug)]
pub struct Classifier {
    b: GeneratingSet,
    label: ClassLabel,
    q: QuadraticForm,
    v0: Subspace,
    v000: Subspace,
    /// Nonzero members of V₀₀₀ as coefficient masks in basis B.
    v000_supports: Vec<u64>,
}

impl Classifier {
    pub fn new(b: &GeneratingSet) -> Result<Self> {
        let v0 = v0(b)?;
        let delta = Delta::new(b)?;
        let v000 = v000_with(b, &delta, &v0)?;
        let q = quadratic_form(b)?;
        let label = recognize_with(b, &v0, &v000, &q)?;
        let v000_supports = v000
            .members()
            .filter(|u| !u.is_zero())
            .map(|u| b.expand(&u))
            .collect::<Result<_>>()?;
        Ok(Classifier { b: b.clone(), label, q, v0, v000, v000_supports })
    }

    pub fn generating_set(&self) -> &GeneratingSet {
        &self.b
    }

    pub fn label(&self) -> &ClassLabel {
        &self.label
    }

    pub fn quadratic(&self) -> &QuadraticForm {
        &self.q
    }

    pub fn v0(&self) -> &Subspace {
        &self.v0
    }

    pub fn v000(&self) -> &Subspace {
        &self.v000
    }

    fn require_dtype(&self) -> Result<()> {
        if self.label.is_dtype() {
            Ok(())
        } else {
            Err(Error::NotDType)
        }
    }

    fn require_moving(&self, x: &F2Vector) -> Result<u64> {
        let c = self.b.expand(x)?;
        if self.v0.contains(x) {
            return Err(Error::InRadical(x.to_string()));
        }
        Ok(c)
    }

    /// No nonzero u ∈ V₀₀₀ has support inside the support of `c`.
    fn is_minimal_coords(&self, c: u64) -> bool {
        self.v000_supports.iter().all(|&u| u & !c != 0)
    }

    /// The least x̄ ∈ x + V₀₀₀ whose support contains no nonzero V₀₀₀ support.
    pub fn minimal_representative(&self, x: &F2Vector) -> Result<F2Vector> {
        self.require_dtype()?;
        self.require_moving(x)?;
        self.minimal_representatives(x)?.into_iter().next().ok_or(Error::NoMinimalRepresentative)
    }

    /// Every minimal representative of x + V₀₀₀, ascending.
    pub fn minimal_representatives(&self, x: &F2Vector) -> Result<Vec<F2Vector>> {
        self.b.expand(x)?;
        let mut reps: Vec<F2Vector> =
            self.v000.coset_members(x).filter(|y| self.is_minimal_coords(self.b.expand_bits(y.bits()).unwrap())).collect();
        reps.sort();
        Ok(reps)
    }

    /// c(x̄) + Σ (⌈|A|/2⌉ − 1) over maximal cliques A of Gr(B, x̄) with |A| ≥ 3.
    pub fn d_formula(&self, x: &F2Vector) -> Result<usize> {
        self.require_dtype()?;
        self.require_moving(x)?;
        Ok(self.d_of_representative(&self.minimal_representative(x)?))
    }

    pub(crate) fn d_of_representative(&self, xbar: &F2Vector) -> usize {
        let c = self.b.expand_bits(xbar.bits()).expect("representative lies in the span");
        let g = self.b.graph();
        let cliques: usize = g
            .maximal_clique_masks(c)
            .into_iter()
            .map(|a| a.count_ones() as usize)
            .filter(|&s| s >= 3)
            .map(|s| s.div_ceil(2) - 1)
            .sum();
        g.component_count_in(c) + cliques
    }

    /// Fixed on V₀; otherwise the d value from the formula (D type) or
    /// 2 − Q_B(x) (E₆ type).
    pub fn orbit_label(&self, x: &F2Vector) -> Result<OrbitLabel> {
        self.b.expand(x)?;
        if self.v0.contains(x) {
            return Ok(OrbitLabel::Fixed);
        }
        let d = if self.label.is_dtype() { self.d_formula(x)? } else { 2 - self.q.eval(x)? as usize };
        Ok(OrbitLabel::Moving { d })
    }

    /// F₂^X ∩ V₀₀₀ for a vertex set X, which must be nonzero whenever X
    /// carries one of the forbidden patterns. For a chordless cycle of length
    /// at least 5 it must be spanned by the sum over X.
    pub fn v000_local(&self, x: &[usize]) -> Result<Subspace> {
        self.require_dtype()?;
        let vectors = self.b.vectors();
        let mut mask = 0u64;
        for &i in x {
            if i >= vectors.len() {
                return Err(Error::IndexOutOfRange(i));
            }
            mask |= 1 << i;
        }
        let fx = Subspace::span_bits(self.b.dim(), BitIter(mask).map(|i| vectors[i].bits()));
        let local = fx.intersect(&self.v000)?;
        if local.dim() == 0 {
            return Err(Error::EmptyIntersection(format!("{x:?}")));
        }
        let g = self.b.graph().induced(mask);
        let is_long_cycle = x.len() >= 5 && g.is_connected() && (0..g.vertex_count()).all(|v| g.degree(v) == 2);
        if is_long_cycle {
            let all = Subspace::span_bits(self.b.dim(), [self.b.combine_bits(mask)]);
            if local != all {
                return Err(Error::InvariantViolated(format!("cycle {x:?}: local V000 is not spanned by its sum")));
            }
        }
        Ok(local)
    }

    /// Σ v000_local over every forbidden-pattern occurrence, checked equal to
    /// the brute-force V₀₀₀.
    pub fn v000_from_subgraphs(&self) -> Result<Subspace> {
        self.require_dtype()?;
        if self.b.len() < 3 {
            return Err(Error::DimensionTooSmall(self.b.len()));
        }
        let mut total = Subspace::zero(self.b.dim());
        for (_, vertices) in self.b.graph().find_forbidden() {
            total = total.sum(&self.v000_local(&vertices)?)?;
        }
        if total != self.v000 {
            return Err(Error::SpanMismatch);
        }
        Ok(total)
    }

    /// Removes generator `i` from the support of u ∈ V₀₀₀ and checks that the
    /// rest is a connected basis of type D_{m,k−1}.
    pub fn deletion_check(&self, u: &F2Vector, i: usize) -> Result<ClassLabel> {
        let ClassKind::DType { m, k } = self.label.kind else {
            return Err(Error::NotDType);
        };
        if k < 2 {
            return Err(Error::Precondition(format!("deletion needs k >= 2, found D({m},{k})")));
        }
        if u.is_zero() || !self.v000.contains(u) {
            return Err(Error::Precondition(format!("{u} is not a nonzero element of V000")));
        }
        if self.b.expand(u)? & (1 << i) == 0 {
            return Err(Error::Precondition(format!("generator {i} is outside the support of {u}")));
        }
        let rest = self.b.without(i)?;
        if !rest.graph().is_connected() {
            return Err(Error::CorollaryViolated(format!("removing generator {i} disconnects the graph")));
        }
        let label = recognize(&rest)?;
        if label.kind != (ClassKind::DType { m, k: k - 1 }) {
            return Err(Error::CorollaryViolated(format!("removing generator {i} gives {}, expected D({m},{})", label.kind, k - 1)));
        }
        Ok(label)
    }
}

/// Broom fold invariant: the number of connected components of Gr(B, p(x))
/// where p fixes a₁…a_m and sends every leaf c_j to c₁.
///
/// B must be literally the broom: generators a₁…a_m then c₁…c_k, with the
/// chain a₁–…–a_m and every leaf attached to a_m.
pub fn broom_invariant(b: &GeneratingSet, m: usize, k: usize, x: &F2Vector) -> Result<usize> {
    if m == 0 || k == 0 || b.len() != m + k {
        return Err(Error::NotNormalForm(format!("expected {} generators, found {}", m + k, b.len())));
    }
    let g = b.graph();
    let mut expected = crate::graph::Graph::new(m + k);
    for i in 1..m {
        expected.add_edge(i - 1, i);
    }
    for j in 0..k {
        expected.add_edge(m - 1, m + j);
    }
    if *g != expected {
        return Err(Error::NotNormalForm(format!("graph is not D({m},{k}) in broom order")));
    }
    let c = b.expand(x)?;
    let leaves = crate::f2::mask(m + k) & !crate::f2::mask(m);
    let folded = (c & !leaves) | (((c & leaves).count_ones() as u64 & 1) << m);
    Ok(g.component_count_in(folded))
}
