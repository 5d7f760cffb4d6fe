use crate::error::{Error, Result};
use crate::f2::form::BilinearForm;
use crate::f2::subspace::{relations, CoordinateSystem, Subspace};
use crate::f2::vector::{parity, BitIter, F2Vector};

/// {x ∈ ambient : Ω(x, u) = 0 for all u ∈ ambient}.
pub fn radical(form: &BilinearForm, ambient: &Subspace) -> Result<Subspace> {
    if ambient.ambient_dim() != form.dim() {
        return Err(Error::DimensionMismatch { expected: form.dim(), found: ambient.ambient_dim() });
    }
    let basis = ambient.rows();
    let gram: Vec<u64> = basis
        .iter()
        .map(|&a| {
            let r = form.right_functional(a);
            basis.iter().enumerate().fold(0u64, |acc, (j, &b)| acc | ((parity(r & b) as u64) << j))
        })
        .collect();
    let kernel = relations(&gram)
        .into_iter()
        .map(|c| BitIter(c).fold(0u64, |acc, i| acc ^ basis[i]));
    Ok(Subspace::span_bits(form.dim(), kernel))
}

/// A basis e₁, f₁, …, e_r, f_r, h₁, …, h_p with Ω(eᵢ, fⱼ) = δᵢⱼ, every
/// other pairing zero, and the hⱼ spanning the radical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticDecomposition {
    pub pairs: Vec<(F2Vector, F2Vector)>,
    pub radical: Vec<F2Vector>,
}

impl SymplecticDecomposition {
    pub fn rank(&self) -> usize {
        2 * self.pairs.len()
    }

    /// Checks the full pairing table.
    pub fn verify(&self, form: &BilinearForm) -> bool {
        let mut all: Vec<(F2Vector, Option<(usize, bool)>)> = Vec::new();
        for (i, (e, f)) in self.pairs.iter().enumerate() {
            all.push((*e, Some((i, false))));
            all.push((*f, Some((i, true))));
        }
        all.extend(self.radical.iter().map(|h| (*h, None)));
        all.iter().all(|(u, tu)| {
            all.iter().all(|(v, tv)| {
                let expected = match (tu, tv) {
                    (Some((i, a)), Some((j, b))) => i == j && a != b,
                    _ => false,
                };
                form.pair_bits(u.bits(), v.bits()) == expected
            })
        })
    }
}

/// Greedy symplectic reduction of span(`ambient`).
pub fn symplectic_basis(form: &BilinearForm, ambient: &Subspace) -> Result<SymplecticDecomposition> {
    symplectic_basis_from(form, &ambient.basis())
}

/// Greedy symplectic reduction starting from an explicit basis order: take
/// the first vector with a non-orthogonal partner, pair it with the first
/// such partner, and orthogonalize the remaining vectors against the pair.
pub fn symplectic_basis_from(form: &BilinearForm, basis: &[F2Vector]) -> Result<SymplecticDecomposition> {
    for v in basis {
        form.check(v)?;
    }
    if !form.is_alternating_on(basis) {
        return Err(Error::NotAlternating);
    }
    let mut rest: Vec<u64> = basis.iter().map(|v| v.bits()).collect();
    let mut pairs = Vec::new();
    loop {
        let found = rest.iter().enumerate().find_map(|(i, &u)| {
            rest.iter().enumerate().skip(i + 1).find(|(_, &w)| form.pair_bits(u, w)).map(|(j, _)| (i, j))
        });
        let Some((i, j)) = found else { break };
        let e = rest[i];
        let f = rest[j];
        rest.remove(j);
        rest.remove(i);
        for w in rest.iter_mut() {
            let we = form.pair_bits(*w, e);
            let wf = form.pair_bits(*w, f);
            if wf {
                *w ^= e;
            }
            if we {
                *w ^= f;
            }
        }
        pairs.push((F2Vector::raw(form.dim(), e), F2Vector::raw(form.dim(), f)));
    }
    let radical = rest.into_iter().map(|h| F2Vector::raw(form.dim(), h)).collect();
    Ok(SymplecticDecomposition { pairs, radical })
}

/// A quadratic form on a subspace, given by its values on a basis and its
/// polarization Ω: Q(u + v) = Q(u) + Q(v) + Ω(u, v).
#[derive(Clone, Debug)]
pub struct QuadraticForm {
    form: BilinearForm,
    basis: Vec<F2Vector>,
    coords: CoordinateSystem,
    /// Bit `i` is Q(basis[i]).
    values: u64,
    /// Bit `j > i` of `upper[i]` is Ω(basis[i], basis[j]).
    upper: Vec<u64>,
}

impl QuadraticForm {
    pub fn new(form: &BilinearForm, basis: &[F2Vector], values: &[bool]) -> Result<Self> {
        if basis.len() != values.len() {
            return Err(Error::DimensionMismatch { expected: basis.len(), found: values.len() });
        }
        let coords = CoordinateSystem::new(form.dim(), basis)?;
        if !form.is_alternating_on(basis) {
            return Err(Error::NotAlternating);
        }
        let upper = basis
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let r = form.right_functional(a.bits());
                basis
                    .iter()
                    .enumerate()
                    .skip(i + 1)
                    .fold(0u64, |acc, (j, b)| acc | ((parity(r & b.bits()) as u64) << j))
            })
            .collect();
        let values = values.iter().enumerate().fold(0u64, |acc, (i, &v)| acc | ((v as u64) << i));
        Ok(QuadraticForm { form: form.clone(), basis: basis.to_vec(), coords, values, upper })
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn basis(&self) -> &[F2Vector] {
        &self.basis
    }

    pub fn domain(&self) -> Subspace {
        Subspace::span_bits(self.form.dim(), self.basis.iter().map(|b| b.bits()))
    }

    pub fn eval(&self, x: &F2Vector) -> Result<bool> {
        self.form.check(x)?;
        self.eval_bits(x.bits()).ok_or_else(|| Error::NotInSpan(x.to_string()))
    }

    #[inline]
    pub(crate) fn eval_bits(&self, x: u64) -> Option<bool> {
        let c = self.coords.coordinates_bits(x)?;
        Some(self.eval_coords(c))
    }

    #[inline]
    pub(crate) fn eval_coords(&self, c: u64) -> bool {
        let mut q = parity(c & self.values);
        for i in BitIter(c) {
            q ^= parity(self.upper[i] & c);
        }
        q
    }

    /// Replaces the value on one basis vector; used to build deliberately
    /// inconsistent forms in tests.
    pub fn with_basis_value(mut self, index: usize, value: bool) -> Self {
        if value {
            self.values |= 1 << index;
        } else {
            self.values &= !(1 << index);
        }
        self
    }

    /// Arf invariant Σ Q(eᵢ)Q(fᵢ) over a symplectic basis of the domain.
    pub fn arf(&self) -> Result<bool> {
        self.arf_with_basis(&self.basis)
    }

    /// Same as [`QuadraticForm::arf`], running the symplectic reduction
    /// from a caller-chosen basis of the domain.
    pub fn arf_with_basis(&self, basis: &[F2Vector]) -> Result<bool> {
        let dec = symplectic_basis_from(&self.form, basis)?;
        for h in &dec.radical {
            if self.eval(h)? {
                return Err(Error::ArfUndefined);
            }
        }
        let mut arf = false;
        for (e, f) in &dec.pairs {
            arf ^= self.eval(e)? & self.eval(f)?;
        }
        Ok(arf)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn units(dim: usize) -> Vec<F2Vector> {
        (0..dim).map(|i| F2Vector::unit(dim, i)).collect()
    }

    #[test]
    fn zero_form_is_all_radical() {
        let form = BilinearForm::zero(3).unwrap();
        let dec = symplectic_basis(&form, &Subspace::whole(3)).unwrap();
        assert_eq!(dec.pairs.len(), 0);
        assert_eq!(dec.radical.len(), 3);
        assert_eq!(radical(&form, &Subspace::whole(1)).map(|_| ()), Err(Error::DimensionMismatch { expected: 3, found: 1 }));
        let one = BilinearForm::zero(1).unwrap();
        assert_eq!(radical(&one, &Subspace::whole(1)).unwrap().dim(), 1);
    }

    #[test]
    fn single_edge_is_hyperbolic_plane() {
        let form = BilinearForm::from_edges(2, &[(0, 1)]).unwrap();
        let dec = symplectic_basis(&form, &Subspace::whole(2)).unwrap();
        assert_eq!(dec.pairs.len(), 1);
        assert!(dec.radical.is_empty());
        assert!(dec.verify(&form));
        let q = QuadraticForm::new(&form, &units(2), &[true, true]).unwrap();
        assert!(q.arf().unwrap());
        let q0 = QuadraticForm::new(&form, &units(2), &[false, false]).unwrap();
        assert!(!q0.arf().unwrap());
    }

    #[test]
    fn non_alternating_is_rejected() {
        let mut form = BilinearForm::zero(2).unwrap();
        form.set(0, 1, true);
        assert_eq!(symplectic_basis(&form, &Subspace::whole(2)), Err(Error::NotAlternating));
    }

    #[test]
    fn arf_undefined_on_odd_radical() {
        let form = BilinearForm::zero(1).unwrap();
        let q = QuadraticForm::new(&form, &units(1), &[true]).unwrap();
        assert_eq!(q.arf(), Err(Error::ArfUndefined));
    }

    #[test]
    fn quadratic_relation_holds() {
        let form = BilinearForm::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let q = QuadraticForm::new(&form, &units(4), &[true, false, true, true]).unwrap();
        for u in 0..16u64 {
            for v in 0..16u64 {
                let lhs = q.eval_bits(u ^ v).unwrap();
                let rhs = q.eval_bits(u).unwrap() ^ q.eval_bits(v).unwrap() ^ form.pair_bits(u, v);
                assert_eq!(lhs, rhs);
            }
        }
    }
}
