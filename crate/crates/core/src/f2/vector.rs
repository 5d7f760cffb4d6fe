use std::fmt;
use std::ops::{Add, AddAssign};

use crate::error::{Error, Result};

/// Largest supported ambient dimension. Vectors are packed into one `u64`.
pub const MAX_DIM: usize = 64;

#[inline]
pub(crate) fn mask(dim: usize) -> u64 {
    if dim >= 64 {
        u64::MAX
    } else {
        (1u64 << dim) - 1
    }
}

#[inline]
pub(crate) fn parity(x: u64) -> bool {
    x.count_ones() & 1 == 1
}

/// A vector in F₂ⁿ.
///
/// Coordinate `i` is bit `i` of the packed word (little-endian relative to
/// the ambient label order). Vectors of equal dimension are ordered by their
/// integer encoding, which is the order used for every "least member" choice
/// in this crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct F2Vector {
    dim: u8,
    bits: u64,
}

impl F2Vector {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds MAX_DIM");
        F2Vector { dim: dim as u8, bits: 0 }
    }

    /// The `i`-th standard basis vector.
    pub fn unit(dim: usize, i: usize) -> Self {
        assert!(i < dim && dim <= MAX_DIM, "unit vector {i} out of range for dim {dim}");
        F2Vector { dim: dim as u8, bits: 1 << i }
    }

    pub fn from_bits(dim: usize, bits: u64) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::DimensionTooLarge(dim));
        }
        if bits & !mask(dim) != 0 {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: 64 - bits.leading_zeros() as usize,
            });
        }
        Ok(F2Vector { dim: dim as u8, bits })
    }

    /// Unchecked constructor for hot loops; high bits must already be clear.
    #[inline]
    pub(crate) fn raw(dim: usize, bits: u64) -> Self {
        debug_assert!(bits & !mask(dim) == 0);
        F2Vector { dim: dim as u8, bits }
    }

    pub fn from_indices(dim: usize, indices: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        for &i in indices {
            if i >= dim {
                return Err(Error::IndexOutOfRange(i));
            }
            bits ^= 1 << i;
        }
        F2Vector::from_bits(dim, bits)
    }

    /// Parses a bitstring written in coordinate order (`"0110"` has
    /// coordinates 1 and 2 set).
    pub fn parse_bitstring(s: &str) -> Result<Self> {
        let dim = s.chars().count();
        let mut bits = 0u64;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' if i < 64 => bits |= 1 << i,
                _ => {
                    return Err(Error::Semantic(format!("invalid bitstring {s:?}")));
                }
            }
        }
        F2Vector::from_bits(dim, bits)
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        i < self.dim() && (self.bits >> i) & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Indices of the non-zero coordinates, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> {
        BitIter(self.bits)
    }

    pub fn checked_add(self, other: F2Vector) -> Result<F2Vector> {
        self.check_dim(&other)?;
        Ok(F2Vector { dim: self.dim, bits: self.bits ^ other.bits })
    }

    pub fn check_dim(&self, other: &F2Vector) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }
}

/// Iterates over the set bit positions of a word.
pub(crate) struct BitIter(pub(crate) u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

impl Add for F2Vector {
    type Output = F2Vector;

    fn add(self, rhs: F2Vector) -> F2Vector {
        assert_eq!(self.dim, rhs.dim, "adding vectors of different dimension");
        F2Vector { dim: self.dim, bits: self.bits ^ rhs.bits }
    }
}

impl AddAssign for F2Vector {
    fn add_assign(&mut self, rhs: F2Vector) {
        *self = *self + rhs;
    }
}

impl fmt::Display for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Vector({self})")
    }
}
