use crate::error::{Error, Result};
use crate::f2::vector::{mask, parity, BitIter, F2Vector, MAX_DIM};

/// An F₂-valued bilinear form Ω(u, v) = uᵀMv, possibly non-symmetric.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BilinearForm {
    dim: usize,
    /// Row `i` has bit `j` set iff Ω(eᵢ, eⱼ) = 1.
    rows: Vec<u64>,
}

impl BilinearForm {
    pub fn zero(dim: usize) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::DimensionTooLarge(dim));
        }
        Ok(BilinearForm { dim, rows: vec![0; dim] })
    }

    pub fn from_rows(dim: usize, rows: Vec<u64>) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::DimensionTooLarge(dim));
        }
        if rows.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: rows.len() });
        }
        if rows.iter().any(|r| r & !mask(dim) != 0) {
            return Err(Error::DimensionMismatch { expected: dim, found: MAX_DIM });
        }
        Ok(BilinearForm { dim, rows })
    }

    /// The alternating form whose Gram matrix is the adjacency matrix of an
    /// undirected edge list.
    pub fn from_edges(dim: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut form = BilinearForm::zero(dim)?;
        for &(i, j) in edges {
            if i == j {
                return Err(Error::Semantic(format!("self-loop at {i}")));
            }
            form.set(i, j, true);
            form.set(j, i, true);
        }
        Ok(form)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        (self.rows[i] >> j) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.dim && j < self.dim);
        if value {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    /// Ω(u, v).
    pub fn pair(&self, u: &F2Vector, v: &F2Vector) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.pair_bits(u.bits(), v.bits()))
    }

    #[inline]
    pub(crate) fn pair_bits(&self, u: u64, v: u64) -> bool {
        parity(self.right_functional(u) & v)
    }

    /// Mask `r` with Ω(u, y) = parity(r & y) for all y.
    #[inline]
    pub(crate) fn right_functional(&self, u: u64) -> u64 {
        BitIter(u).fold(0, |acc, i| acc ^ self.rows[i])
    }

    /// Mask `l` with Ω(x, v) = parity(x & l) for all x.
    #[inline]
    pub(crate) fn left_functional(&self, v: u64) -> u64 {
        let mut l = 0u64;
        for (i, row) in self.rows.iter().enumerate() {
            if parity(row & v) {
                l |= 1 << i;
            }
        }
        l
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.entry(i, j) == self.entry(j, i)))
    }

    /// Symmetric with zero diagonal, i.e. Ω(x, x) = 0 for every x.
    pub fn is_alternating(&self) -> bool {
        (0..self.dim).all(|i| !self.entry(i, i)) && self.is_symmetric()
    }

    /// Whether Ω restricted to span(`basis`) is alternating.
    pub fn is_alternating_on(&self, basis: &[F2Vector]) -> bool {
        basis.iter().enumerate().all(|(i, a)| {
            !self.pair_bits(a.bits(), a.bits())
                && basis[..i]
                    .iter()
                    .all(|b| self.pair_bits(a.bits(), b.bits()) == self.pair_bits(b.bits(), a.bits()))
        })
    }

    pub(crate) fn check(&self, v: &F2Vector) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.dim() });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(dim: usize, idx: &[usize]) -> F2Vector {
        F2Vector::from_indices(dim, idx).unwrap()
    }

    #[test]
    fn pairing_with_zero_vanishes() {
        let form = BilinearForm::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        for bits in 0..8 {
            let x = F2Vector::from_bits(3, bits).unwrap();
            assert!(!form.pair(&x, &F2Vector::zero(3)).unwrap());
        }
    }

    #[test]
    fn non_symmetric_entries() {
        let mut form = BilinearForm::zero(2).unwrap();
        form.set(1, 0, true);
        assert!(!form.pair(&v(2, &[0]), &v(2, &[1])).unwrap());
        assert!(form.pair(&v(2, &[1]), &v(2, &[0])).unwrap());
        assert!(!form.is_alternating());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let form = BilinearForm::zero(3).unwrap();
        assert!(matches!(
            form.pair(&v(3, &[0]), &v(4, &[0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn functionals_agree_with_pairing() {
        let mut form = BilinearForm::zero(4).unwrap();
        for (i, j) in [(0, 1), (1, 3), (2, 0), (3, 3)] {
            form.set(i, j, true);
        }
        for a in 0..16u64 {
            let l = form.left_functional(a);
            let r = form.right_functional(a);
            for x in 0..16u64 {
                assert_eq!(parity(x & l), form.pair_bits(x, a));
                assert_eq!(parity(r & x), form.pair_bits(a, x));
            }
        }
    }
}
