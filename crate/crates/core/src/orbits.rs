//! The Γ_B action: transvections, orbit closure, partitions of finite
//! domains, fixed points, Δ, V₀₀₀, V₀₀, and the brute-force d oracle.

use std::collections::{HashSet, VecDeque};

use crate::classify::quadratic_form;
use crate::error::{Error, Result};
use crate::f2::{radical, BilinearForm, F2Vector, Subspace};
use crate::graph::GeneratingSet;

/// Default visited-set budget: domains of up to 2²⁴ vectors.
pub const DEFAULT_BUDGET_LOG2: usize = 24;

/// τ_a(x) = x + Ω(x, a)·a.
pub fn transvect(form: &BilinearForm, a: &F2Vector, x: &F2Vector) -> Result<F2Vector> {
    form.check(a)?;
    form.check(x)?;
    if a.is_zero() || form.pair(a, a)? {
        return Err(Error::InvalidTransvector(a.to_string()));
    }
    Ok(if form.pair(x, a)? { *x + *a } else { *x })
}

/// Closure of {x} under every τ_b, b ∈ B, sorted ascending.
pub fn orbit(b: &GeneratingSet, x: &F2Vector) -> Result<Vec<F2Vector>> {
    b.form().check(x)?;
    let mut out: Vec<F2Vector> = orbit_bits(b, x.bits()).into_iter().map(|v| F2Vector::raw(b.dim(), v)).collect();
    out.sort();
    Ok(out)
}

pub(crate) fn orbit_bits(b: &GeneratingSet, x: u64) -> HashSet<u64> {
    let mut seen = HashSet::new();
    seen.insert(x);
    let mut queue = VecDeque::from([x]);
    while let Some(y) = queue.pop_front() {
        for i in 0..b.len() {
            let z = b.transvect_bits(i, y);
            if seen.insert(z) {
                queue.push_back(z);
            }
        }
    }
    seen
}

/// A finite Γ_B-stable domain of vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    /// The whole ambient space.
    Whole,
    /// A subspace (must be Γ_B-stable, e.g. span(B)).
    Subspace(Subspace),
    /// The coset `offset + space`.
    Coset { offset: F2Vector, space: Subspace },
}

impl Domain {
    pub fn span_of(b: &GeneratingSet) -> Domain {
        Domain::Subspace(b.span())
    }

    pub fn describe(&self) -> String {
        match self {
            Domain::Whole => "whole space".into(),
            Domain::Subspace(s) => format!("subspace of dimension {}", s.dim()),
            Domain::Coset { offset, space } => format!("coset {} + subspace of dimension {}", offset, space.dim()),
        }
    }

    /// (space, reduced offset).
    fn resolve(&self, ambient: usize) -> (Subspace, u64) {
        match self {
            Domain::Whole => (Subspace::whole(ambient), 0),
            Domain::Subspace(s) => (s.clone(), 0),
            Domain::Coset { offset, space } => (space.clone(), space.coset_leader(offset).bits()),
        }
    }
}

/// Indexing of a domain `offset + space` by integers in ascending member
/// order.
#[derive(Clone, Debug)]
pub(crate) struct DomainIndex {
    space: Subspace,
    offset: u64,
    whole: bool,
}

impl DomainIndex {
    fn new(space: Subspace, offset: u64) -> Self {
        let whole = space.dim() == space.ambient_dim() && offset == 0;
        DomainIndex { space, offset, whole }
    }

    pub(crate) fn len(&self) -> usize {
        1usize << self.space.dim()
    }

    #[inline]
    pub(crate) fn member(&self, index: usize) -> u64 {
        if self.whole {
            index as u64
        } else {
            self.space.member_bits(self.offset, index as u64)
        }
    }

    #[inline]
    pub(crate) fn index(&self, x: u64) -> Option<usize> {
        if self.whole {
            return Some(x as usize);
        }
        let idx = self.space.index_of_bits(x) as usize;
        (self.member(idx) == x).then_some(idx)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitClass {
    /// Least member.
    pub representative: F2Vector,
    pub size: usize,
}

/// Partition of a finite domain into Γ_B-orbits; classes are sorted by
/// their least member.
#[derive(Clone, Debug)]
pub struct OrbitPartition {
    domain: Domain,
    index: DomainIndex,
    ambient: usize,
    assignment: Vec<u32>,
    classes: Vec<OrbitClass>,
}

impl PartialEq for OrbitPartition {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.classes == other.classes && self.assignment == other.assignment
    }
}

impl OrbitPartition {
    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn classes(&self) -> &[OrbitClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn domain_size(&self) -> usize {
        self.assignment.len()
    }

    pub fn class_of(&self, x: &F2Vector) -> Option<usize> {
        if x.dim() != self.ambient {
            return None;
        }
        self.index.index(x.bits()).map(|i| self.assignment[i] as usize)
    }

    pub fn members(&self, class: usize) -> Vec<F2Vector> {
        self.assignment
            .iter()
            .enumerate()
            .filter(|(_, &c)| c as usize == class)
            .map(|(i, _)| F2Vector::raw(self.ambient, self.index.member(i)))
            .collect()
    }

    /// Every class with its members, in class order.
    pub fn member_lists(&self) -> Vec<Vec<F2Vector>> {
        let mut out = vec![Vec::new(); self.classes.len()];
        for (i, &c) in self.assignment.iter().enumerate() {
            out[c as usize].push(F2Vector::raw(self.ambient, self.index.member(i)));
        }
        out
    }

    pub fn singleton_count(&self) -> usize {
        self.classes.iter().filter(|c| c.size == 1).count()
    }
}

fn prepare(b: &GeneratingSet, domain: &Domain, budget_log2: usize) -> Result<DomainIndex> {
    let (space, offset) = domain.resolve(b.dim());
    if space.ambient_dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: b.dim(), found: space.ambient_dim() });
    }
    if space.dim() > budget_log2 || space.dim() >= 32 {
        return Err(Error::DomainTooLarge(space.dim()));
    }
    Ok(DomainIndex::new(space, offset))
}

fn not_closed() -> Error {
    Error::InvariantViolated("domain is not closed under the group".into())
}

/// Full orbit partition of `domain` with the default budget.
pub fn orbit_partition(b: &GeneratingSet, domain: &Domain) -> Result<OrbitPartition> {
    orbit_partition_with_budget(b, domain, DEFAULT_BUDGET_LOG2)
}

pub fn orbit_partition_with_budget(b: &GeneratingSet, domain: &Domain, budget_log2: usize) -> Result<OrbitPartition> {
    #[cfg(feature = "parallel")]
    {
        orbit_partition_parallel(b, domain, budget_log2)
    }
    #[cfg(not(feature = "parallel"))]
    {
        orbit_partition_sequential(b, domain, budget_log2)
    }
}

/// Breadth-first closure from each unvisited member in ascending order.
pub fn orbit_partition_sequential(b: &GeneratingSet, domain: &Domain, budget_log2: usize) -> Result<OrbitPartition> {
    let index = prepare(b, domain, budget_log2)?;
    let n = index.len();
    let mut assignment = vec![u32::MAX; n];
    let mut classes = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if assignment[start] != u32::MAX {
            continue;
        }
        let id = classes.len() as u32;
        assignment[start] = id;
        queue.push_back(start);
        let mut size = 0;
        while let Some(i) = queue.pop_front() {
            size += 1;
            let x = index.member(i);
            for g in 0..b.len() {
                let y = b.transvect_bits(g, x);
                if y == x {
                    continue;
                }
                let j = index.index(y).ok_or_else(not_closed)?;
                if assignment[j] == u32::MAX {
                    assignment[j] = id;
                    queue.push_back(j);
                }
            }
        }
        classes.push(OrbitClass { representative: F2Vector::raw(b.dim(), index.member(start)), size });
    }
    Ok(OrbitPartition { domain: domain.clone(), index, ambient: b.dim(), assignment, classes })
}

/// Min-label propagation with pointer jumping. The fixpoint labels every
/// member with the least index of its orbit, so the result is identical to
/// the sequential partition.
#[cfg(feature = "parallel")]
pub fn orbit_partition_parallel(b: &GeneratingSet, domain: &Domain, budget_log2: usize) -> Result<OrbitPartition> {
    use rayon::prelude::*;

    let index = prepare(b, domain, budget_log2)?;
    let n = index.len();
    let neighbours: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let x = index.member(i);
            (0..b.len())
                .filter_map(|g| {
                    let y = b.transvect_bits(g, x);
                    (y != x).then(|| index.index(y).map(|j| j as u32).ok_or_else(not_closed))
                })
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<_>>()?;
    let mut labels: Vec<u32> = (0..n as u32).collect();
    loop {
        let mut next: Vec<u32> = (0..n)
            .into_par_iter()
            .map(|i| neighbours[i].iter().fold(labels[i], |m, &j| m.min(labels[j as usize])))
            .collect();
        loop {
            let jumped: Vec<u32> = next.par_iter().map(|&l| next[l as usize]).collect();
            if jumped == next {
                break;
            }
            next = jumped;
        }
        if next == labels {
            break;
        }
        labels = next;
    }
    let mut class_id = vec![u32::MAX; n];
    let mut classes = Vec::new();
    for i in 0..n {
        if labels[i] as usize == i {
            class_id[i] = classes.len() as u32;
            classes.push(OrbitClass { representative: F2Vector::raw(b.dim(), index.member(i)), size: 0 });
        }
    }
    let assignment: Vec<u32> = labels.par_iter().map(|&l| class_id[l as usize]).collect();
    for &c in &assignment {
        classes[c as usize].size += 1;
    }
    Ok(OrbitPartition { domain: domain.clone(), index, ambient: b.dim(), assignment, classes })
}

/// {x ∈ domain : Ω(x, b) = 0 for all b ∈ B}, ascending.
pub fn fixed_points(b: &GeneratingSet, domain: &Domain) -> Result<Vec<F2Vector>> {
    let index = prepare(b, domain, DEFAULT_BUDGET_LOG2)?;
    Ok((0..index.len())
        .map(|i| index.member(i))
        .filter(|&x| b.fixes_bits(x))
        .map(|x| F2Vector::raw(b.dim(), x))
        .collect())
}

/// Δ: the orbit of the first generator, which contains all of B when Gr(B)
/// is connected.
pub fn delta_orbit(b: &GeneratingSet) -> Result<Vec<F2Vector>> {
    Ok(Delta::new(b)?.members().collect())
}

/// The orbit Δ with O(1) membership.
#[derive(Clone, Debug)]
pub struct Delta {
    ambient: usize,
    sorted: Vec<u64>,
    set: HashSet<u64>,
}

impl Delta {
    pub fn new(b: &GeneratingSet) -> Result<Self> {
        if b.is_empty() || !b.graph().is_connected() {
            return Err(Error::NotConnected);
        }
        let set = orbit_bits(b, b.vectors()[0].bits());
        for v in b.vectors() {
            if !set.contains(&v.bits()) {
                return Err(Error::InvariantViolated(format!("generator {v} outside Delta")));
            }
        }
        let mut sorted: Vec<u64> = set.iter().copied().collect();
        sorted.sort_unstable();
        Ok(Delta { ambient: b.dim(), sorted, set })
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn contains(&self, x: &F2Vector) -> bool {
        self.set.contains(&x.bits())
    }

    #[inline]
    pub(crate) fn contains_bits(&self, x: u64) -> bool {
        self.set.contains(&x)
    }

    pub(crate) fn sorted_bits(&self) -> &[u64] {
        &self.sorted
    }

    pub fn members(&self) -> impl Iterator<Item = F2Vector> + '_ {
        self.sorted.iter().map(|&x| F2Vector::raw(self.ambient, x))
    }
}

fn require_alternating(b: &GeneratingSet) -> Result<()> {
    if b.is_alternating() {
        Ok(())
    } else {
        Err(Error::NotAlternating)
    }
}

/// V₀: the radical of Ω on span(B).
pub fn v0(b: &GeneratingSet) -> Result<Subspace> {
    require_alternating(b)?;
    radical(b.form(), &b.span())
}

/// V₀₀₀ = {y ∈ V₀ : y = x₁ + x₂ with x₁, x₂ ∈ Δ}, computed by brute force
/// and checked to be closed under addition.
pub fn v000(b: &GeneratingSet) -> Result<Subspace> {
    let delta = Delta::new(b)?;
    v000_with(b, &delta, &v0(b)?)
}

pub(crate) fn v000_with(b: &GeneratingSet, delta: &Delta, v0: &Subspace) -> Result<Subspace> {
    let expressible = |y: u64| y == 0 || delta.sorted_bits().iter().any(|&x| delta.contains_bits(x ^ y));
    let hits: Vec<u64> = v0.members().map(|y| y.bits()).filter(|&y| expressible(y)).collect();
    let span = Subspace::span_bits(b.dim(), hits.iter().copied());
    if span.members().count() != hits.len() {
        return Err(Error::InvariantViolated("V000 is not closed under addition".into()));
    }
    Ok(span)
}

/// V₀₀ = {y ∈ V₀ : Q_B(y) = 0}.
pub fn v00(b: &GeneratingSet) -> Result<Subspace> {
    let v0 = v0(b)?;
    let q = quadratic_form(b)?;
    let basis = v0.basis();
    let values: Vec<bool> = basis.iter().map(|h| q.eval(h)).collect::<Result<_>>()?;
    let Some(odd) = values.iter().position(|&v| v) else {
        return Ok(v0);
    };
    let kernel = basis
        .iter()
        .zip(&values)
        .enumerate()
        .filter(|&(i, _)| i != odd)
        .map(|(_, (h, &val))| if val { h.bits() ^ basis[odd].bits() } else { h.bits() });
    Ok(Subspace::span_bits(b.dim(), kernel))
}

/// Exact minimum-length Δ-decompositions by iterative deepening.
#[derive(Clone, Debug)]
pub struct DeltaOracle {
    b: GeneratingSet,
    delta: Delta,
    v0: Subspace,
}

impl DeltaOracle {
    pub fn new(b: &GeneratingSet) -> Result<Self> {
        let v0 = v0(b)?;
        Ok(DeltaOracle { b: b.clone(), delta: Delta::new(b)?, v0 })
    }

    pub fn delta(&self) -> &Delta {
        &self.delta
    }

    /// d(x) with a witness decomposition (parts ascending, pairwise
    /// orthogonal, linearly independent, summing to x).
    pub fn d(&self, x: &F2Vector) -> Result<(usize, Vec<F2Vector>)> {
        self.b.form().check(x)?;
        if self.b.expand(x).is_err() || self.v0.contains(x) {
            return Err(Error::NoDecomposition(x.to_string()));
        }
        let form = self.b.form();
        let xb = x.bits();
        let candidates: Vec<u64> =
            self.delta.sorted_bits().iter().copied().filter(|&y| !form.pair_bits(y, xb)).collect();
        let max_depth = self.b.len();
        for depth in 1..=max_depth {
            let mut parts = Vec::with_capacity(depth);
            if self.search(xb, depth, &candidates, &mut parts) {
                let witness = parts.iter().map(|&p| F2Vector::raw(self.b.dim(), p)).collect();
                return Ok((depth, witness));
            }
        }
        Err(Error::NoDecomposition(x.to_string()))
    }

    /// Looks for `remaining_parts` more parts, each larger than the last
    /// chosen, drawn from `candidates` (already orthogonal to x and to every
    /// chosen part), summing to `rest`.
    fn search(&self, rest: u64, remaining_parts: usize, candidates: &[u64], parts: &mut Vec<u64>) -> bool {
        let floor = parts.last().copied();
        if remaining_parts == 1 {
            // the last part is forced; orthogonality to the others is automatic
            let ok = self.delta.contains_bits(rest)
                && floor.is_none_or(|f| rest > f)
                && !Subspace::span_bits(self.b.dim(), parts.iter().copied()).contains_bits(rest);
            if ok {
                parts.push(rest);
            }
            return ok;
        }
        let chosen = Subspace::span_bits(self.b.dim(), parts.iter().copied());
        let form = self.b.form();
        for (k, &p) in candidates.iter().enumerate() {
            if floor.is_some_and(|f| p <= f) || chosen.contains_bits(p) {
                continue;
            }
            let rest2 = rest ^ p;
            if rest2 == 0 {
                continue;
            }
            let next: Vec<u64> = candidates[k + 1..].iter().copied().filter(|&q| !form.pair_bits(q, p)).collect();
            // the forced last part must exceed p, so rest2 > p is necessary
            // only when it is the last; otherwise some candidate must remain
            if remaining_parts > 2 && next.len() < remaining_parts - 2 {
                continue;
            }
            parts.push(p);
            if self.search(rest2, remaining_parts - 1, &next, parts) {
                return true;
            }
            parts.pop();
        }
        false
    }
}

/// d(x) by exhaustive search; builds Δ on every call.
pub fn d_oracle(b: &GeneratingSet, x: &F2Vector) -> Result<(usize, Vec<F2Vector>)> {
    DeltaOracle::new(b)?.d(x)
}

/// Ω(x, b) = 0 for every generator.
pub fn is_fixed(b: &GeneratingSet, x: &F2Vector) -> bool {
    b.fixes(x)
}
