//! Orbits of Γ_B on a coset v + U of U = span(B) when B does not span the
//! ambient space.

use std::collections::BTreeMap;

use crate::classify::{quadratic_form, Classifier, OrbitLabel};
use crate::error::{Error, Result};
use crate::f2::{F2Vector, QuadraticForm, Subspace};
use crate::graph::GeneratingSet;
use crate::moves::contains_e6;
use crate::orbits::{orbit_partition, v000, Domain, OrbitPartition};

/// A connected generating set B and a vector v outside U = span(B).
#[derive(Clone, Debug)]
pub struct CosetProblem {
    b: GeneratingSet,
    v: F2Vector,
}

impl CosetProblem {
    pub fn new(b: GeneratingSet, v: F2Vector) -> Result<Self> {
        b.form().check(&v)?;
        if b.span().contains(&v) {
            return Err(Error::Dependent(v.to_string()));
        }
        if !b.graph().is_connected() {
            return Err(Error::NotConnected);
        }
        Ok(CosetProblem { b, v })
    }

    pub fn generating_set(&self) -> &GeneratingSet {
        &self.b
    }

    pub fn offset(&self) -> &F2Vector {
        &self.v
    }

    /// v + U, ascending.
    pub fn members(&self) -> Vec<F2Vector> {
        let mut out: Vec<F2Vector> = self.b.span().coset_members(&self.v).collect();
        out.sort();
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetBranch {
    /// Gr(B) contains E₆: fixed points, then the two Q_{B∪{v}} level sets.
    E6Split,
    /// Ω(v, U₀₀₀) ≠ 0: exactly the two Q_{B∪{v}} level sets.
    TwoOrbits,
    /// A fixed point v + u exists: translates of the orbits in U.
    FixedPointTranslation,
    /// Orbits are traces of the orbits of an extended basis B ∪ {w}.
    ExtendedReduction,
}

impl CosetBranch {
    pub fn name(&self) -> &'static str {
        match self {
            CosetBranch::E6Split => "e6-split",
            CosetBranch::TwoOrbits => "two-orbits",
            CosetBranch::FixedPointTranslation => "fixed-point-translation",
            CosetBranch::ExtendedReduction => "extended-reduction",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetClass {
    /// Ascending; the first member is the representative.
    pub members: Vec<F2Vector>,
    /// How the class was identified, e.g. `Q = 1` or `fixed`.
    pub description: String,
}

impl CosetClass {
    pub fn representative(&self) -> F2Vector {
        self.members[0]
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Clone, Debug)]
pub struct CosetReport {
    pub branch: CosetBranch,
    /// Sorted by representative.
    pub classes: Vec<CosetClass>,
    /// The fixed point v + u, or the extension vector w.
    pub witness: Option<F2Vector>,
    pub fixed_points: Vec<F2Vector>,
}

impl CosetReport {
    /// Same classes as a brute-force partition of the coset.
    pub fn agrees_with(&self, brute: &OrbitPartition) -> bool {
        let theirs = brute.member_lists();
        theirs.len() == self.classes.len() && theirs.iter().zip(&self.classes).all(|(t, c)| *t == c.members)
    }
}

/// Q_{B∪{v}}: value 1 on every generator and on v.
pub fn extended_quadratic(b: &GeneratingSet, v: &F2Vector) -> Result<QuadraticForm> {
    quadratic_form(&b.with_extra(*v, "v")?)
}

/// Fixed points of Γ_B in v + U, ascending. Checked to be empty whenever
/// Ω(v, U₀₀₀) ≠ 0.
pub fn coset_fixed_points(b: &GeneratingSet, v: &F2Vector) -> Result<Vec<F2Vector>> {
    let u = b.span();
    let mut fixed: Vec<F2Vector> = u.coset_members(v).filter(|x| b.fixes(x)).collect();
    fixed.sort();
    if !fixed.is_empty() && pairs_with_v000(b, v, &v000(b)?) {
        return Err(Error::InvariantViolated(format!("{} is fixed although Omega(v, U000) != 0", fixed[0])));
    }
    Ok(fixed)
}

fn pairs_with_v000(b: &GeneratingSet, v: &F2Vector, u000: &Subspace) -> bool {
    u000.basis().iter().any(|u| b.form().pair_bits(v.bits(), u.bits()))
}

/// Closed-form partition of v + U into Γ_B-orbits.
pub fn classify_coset(problem: &CosetProblem) -> Result<CosetReport> {
    let b = &problem.b;
    let v = &problem.v;
    if b.len() < 2 {
        return Err(Error::DimensionTooSmall(b.len()));
    }
    let classifier = Classifier::new(b)?;
    let fixed = coset_fixed_points(b, v)?;
    let members = problem.members();
    let mut report = if contains_e6(b.graph()).is_some() {
        let q = extended_quadratic(b, v)?;
        let mut classes: Vec<CosetClass> =
            fixed.iter().map(|&f| CosetClass { members: vec![f], description: "fixed".into() }).collect();
        let moving: Vec<F2Vector> = members.iter().copied().filter(|x| !b.fixes(x)).collect();
        classes.extend(level_sets(&q, &moving)?);
        CosetReport { branch: CosetBranch::E6Split, classes, witness: None, fixed_points: fixed }
    } else if pairs_with_v000(b, v, classifier.v000()) {
        let q = extended_quadratic(b, v)?;
        CosetReport { branch: CosetBranch::TwoOrbits, classes: level_sets(&q, &members)?, witness: None, fixed_points: fixed }
    } else if let Some(&f) = fixed.first() {
        let groups = group_by(&members, |x| orbit_key(&classifier, &(*x + f), x))?;
        CosetReport { branch: CosetBranch::FixedPointTranslation, classes: groups, witness: Some(f), fixed_points: fixed }
    } else {
        let (w, extended) = find_extension(b, &members)?;
        let groups = group_by(&members, |x| orbit_key(&extended, x, x))?;
        CosetReport { branch: CosetBranch::ExtendedReduction, classes: groups, witness: Some(w), fixed_points: fixed }
    };
    report.classes.sort_by_key(|c| c.members[0]);
    let total: usize = report.classes.iter().map(CosetClass::size).sum();
    if total != members.len() {
        return Err(Error::InvariantViolated(format!("coset classes cover {total} of {} vectors", members.len())));
    }
    Ok(report)
}

/// The first w ∈ v + U (ascending) for which Gr(B ∪ {w}) is connected and
/// free of E₆, with its classifier.
fn find_extension(b: &GeneratingSet, members: &[F2Vector]) -> Result<(F2Vector, Classifier)> {
    for &w in members {
        let Ok(extended) = b.with_extra(w, "w") else { continue };
        if !extended.graph().is_connected() || contains_e6(extended.graph()).is_some() {
            continue;
        }
        if let Ok(c) = Classifier::new(&extended) {
            if c.label().is_dtype() {
                return Ok((w, c));
            }
        }
    }
    Err(Error::NoExtensionFound)
}

/// Fixed vectors are singleton classes keyed by `x` itself.
fn orbit_key(classifier: &Classifier, y: &F2Vector, x: &F2Vector) -> Result<String> {
    Ok(match classifier.orbit_label(y)? {
        OrbitLabel::Fixed => format!("fixed {x}"),
        l => l.to_string(),
    })
}

fn level_sets(q: &QuadraticForm, xs: &[F2Vector]) -> Result<Vec<CosetClass>> {
    group_by(xs, |x| q.eval(x).map(|v| format!("Q = {}", v as u8)))
}

/// Groups `xs` (ascending) by key; classes are ordered by least member.
fn group_by(xs: &[F2Vector], key: impl Fn(&F2Vector) -> Result<String>) -> Result<Vec<CosetClass>> {
    let mut groups: BTreeMap<String, Vec<F2Vector>> = BTreeMap::new();
    for x in xs {
        groups.entry(key(x)?).or_default().push(*x);
    }
    let mut classes: Vec<CosetClass> =
        groups.into_iter().map(|(description, members)| CosetClass { members, description }).collect();
    classes.sort_by_key(|c| c.members[0]);
    Ok(classes)
}

/// Orbit partition of v + U by breadth-first closure.
pub fn brute_coset_partition(b: &GeneratingSet, v: &F2Vector) -> Result<OrbitPartition> {
    orbit_partition(b, &Domain::Coset { offset: *v, space: b.span() })
}
