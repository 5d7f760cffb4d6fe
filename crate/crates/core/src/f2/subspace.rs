use crate::error::{Error, Result};
use crate::f2::vector::{mask, F2Vector, MAX_DIM};

#[inline]
fn pivot(row: u64) -> u32 {
    63 - row.leading_zeros()
}

/// A subspace of F₂ⁿ kept in reduced echelon form.
///
/// Each row's pivot is its highest set bit and no other row has that bit.
/// Rows are sorted by ascending pivot, so bit `t` of a member's index selects
/// `rows[t]`, and index order coincides with the integer order of the
/// members (for cosets too, once the offset is reduced).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<u64>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        assert!(ambient <= MAX_DIM);
        Subspace { ambient, rows: Vec::new() }
    }

    pub fn whole(ambient: usize) -> Self {
        assert!(ambient <= MAX_DIM);
        Subspace { ambient, rows: (0..ambient).map(|i| 1u64 << i).collect() }
    }

    /// Span of `vectors` inside F₂^`ambient`.
    pub fn span(ambient: usize, vectors: &[F2Vector]) -> Result<Self> {
        if ambient > MAX_DIM {
            return Err(Error::DimensionTooLarge(ambient));
        }
        for v in vectors {
            if v.dim() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: v.dim() });
            }
        }
        Ok(Self::span_bits(ambient, vectors.iter().map(|v| v.bits())))
    }

    pub(crate) fn span_bits(ambient: usize, vectors: impl IntoIterator<Item = u64>) -> Self {
        let mut s = Subspace::zero(ambient);
        for v in vectors {
            s.insert_bits(v);
        }
        s
    }

    /// Adds `v` to the spanning set; returns false if it was already a member.
    pub(crate) fn insert_bits(&mut self, v: u64) -> bool {
        let r = self.reduce_bits(v);
        if r == 0 {
            return false;
        }
        let p = pivot(r);
        for row in self.rows.iter_mut() {
            if (*row >> p) & 1 == 1 {
                *row ^= r;
            }
        }
        let at = self.rows.partition_point(|&row| pivot(row) < p);
        self.rows.insert(at, r);
        true
    }

    /// Clears every pivot bit of `v`; the result is zero iff `v` is a member.
    #[inline]
    pub(crate) fn reduce_bits(&self, mut v: u64) -> u64 {
        for &row in self.rows.iter().rev() {
            if (v >> pivot(row)) & 1 == 1 {
                v ^= row;
            }
        }
        v
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> Vec<F2Vector> {
        self.rows.iter().map(|&r| F2Vector::raw(self.ambient, r)).collect()
    }

    pub(crate) fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn contains(&self, x: &F2Vector) -> bool {
        x.dim() == self.ambient && self.reduce_bits(x.bits()) == 0
    }

    #[inline]
    pub(crate) fn contains_bits(&self, x: u64) -> bool {
        self.reduce_bits(x) == 0
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.rows.iter().all(|&r| other.contains_bits(r))
    }

    /// Orthogonal complement with respect to the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        let pivots: u64 = self.rows.iter().fold(0, |acc, &r| acc | (1 << pivot(r)));
        let mut out = Subspace::zero(self.ambient);
        for j in 0..self.ambient {
            if (pivots >> j) & 1 == 1 {
                continue;
            }
            let mut v = 1u64 << j;
            for &row in &self.rows {
                if (row >> j) & 1 == 1 {
                    v |= 1 << pivot(row);
                }
            }
            out.insert_bits(v);
        }
        out
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        let mut sum = self.annihilator();
        for &r in other.annihilator().rows() {
            sum.insert_bits(r);
        }
        Ok(sum.annihilator())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        let mut out = self.clone();
        for &r in &other.rows {
            out.insert_bits(r);
        }
        Ok(out)
    }

    /// dim(self / sub); `sub` must be contained in `self`.
    pub fn quotient_dim(&self, sub: &Subspace) -> Result<usize> {
        self.same_ambient(sub)?;
        if !sub.is_subspace_of(self) {
            return Err(Error::NotSubspace);
        }
        Ok(self.dim() - sub.dim())
    }

    /// The least member of `v + self`.
    pub fn coset_leader(&self, v: &F2Vector) -> F2Vector {
        F2Vector::raw(self.ambient, self.reduce_bits(v.bits()))
    }

    /// Member of `offset + self` with the given index, for a reduced `offset`.
    #[inline]
    pub(crate) fn member_bits(&self, offset: u64, index: u64) -> u64 {
        let mut v = offset;
        let mut i = index;
        while i != 0 {
            let t = i.trailing_zeros() as usize;
            v ^= self.rows[t];
            i &= i - 1;
        }
        v
    }

    /// Inverse of [`Subspace::member_bits`] for members of a reduced coset.
    #[inline]
    pub(crate) fn index_of_bits(&self, x: u64) -> u64 {
        let mut idx = 0u64;
        for (t, &row) in self.rows.iter().enumerate() {
            idx |= ((x >> pivot(row)) & 1) << t;
        }
        idx
    }

    /// Enumerates `v + self` once each, in ascending order.
    pub fn coset_members(&self, v: &F2Vector) -> CosetIter<'_> {
        assert!(self.dim() < 64, "coset too large to enumerate");
        CosetIter { space: self, offset: self.reduce_bits(v.bits()), next: 0, end: 1u64 << self.dim() }
    }

    pub fn members(&self) -> CosetIter<'_> {
        self.coset_members(&F2Vector::zero(self.ambient))
    }

    fn same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    /// Whether the ambient bits above `ambient` are clear for every row.
    #[allow(dead_code)]
    pub(crate) fn well_formed(&self) -> bool {
        self.rows.iter().all(|r| r & !mask(self.ambient) == 0)
            && self.rows.windows(2).all(|w| pivot(w[0]) < pivot(w[1]))
            && self
                .rows
                .iter()
                .enumerate()
                .all(|(i, &r)| self.rows.iter().enumerate().all(|(j, &s)| i == j || (s >> pivot(r)) & 1 == 0))
    }
}

pub struct CosetIter<'a> {
    space: &'a Subspace,
    offset: u64,
    next: u64,
    end: u64,
}

impl Iterator for CosetIter<'_> {
    type Item = F2Vector;

    fn next(&mut self) -> Option<F2Vector> {
        if self.next == self.end {
            return None;
        }
        let v = self.space.member_bits(self.offset, self.next);
        self.next += 1;
        Some(F2Vector::raw(self.space.ambient, v))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

/// Coordinates with respect to an ordered list of independent vectors.
#[derive(Clone, Debug)]
pub struct CoordinateSystem {
    ambient: usize,
    vectors: Vec<u64>,
    /// Echelon rows paired with the combination of `vectors` they equal.
    rows: Vec<(u64, u64)>,
}

impl CoordinateSystem {
    pub fn new(ambient: usize, vectors: &[F2Vector]) -> Result<Self> {
        if vectors.len() > MAX_DIM {
            return Err(Error::NotIndependent);
        }
        let mut rows: Vec<(u64, u64)> = Vec::with_capacity(vectors.len());
        for (i, v) in vectors.iter().enumerate() {
            if v.dim() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: v.dim() });
            }
            let (r, c) = reduce_pair(&rows, v.bits(), 1 << i);
            if r == 0 {
                return Err(Error::NotIndependent);
            }
            rows.push((r, c));
            rows.sort_by_key(|&(r, _)| std::cmp::Reverse(pivot(r)));
        }
        Ok(CoordinateSystem { ambient, vectors: vectors.iter().map(|v| v.bits()).collect(), rows })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Bit `i` of the result is the coefficient of vector `i`, or `None` if
    /// `x` is outside the span.
    #[inline]
    pub fn coordinates_bits(&self, x: u64) -> Option<u64> {
        let (r, c) = reduce_pair(&self.rows, x, 0);
        (r == 0).then_some(c)
    }

    pub fn coordinates(&self, x: &F2Vector) -> Option<u64> {
        if x.dim() != self.ambient {
            return None;
        }
        self.coordinates_bits(x.bits())
    }

    /// Σ coefficients · vectors.
    pub fn combine_bits(&self, coefficients: u64) -> u64 {
        crate::f2::vector::BitIter(coefficients).fold(0, |acc, i| acc ^ self.vectors[i])
    }
}

fn reduce_pair(rows: &[(u64, u64)], mut v: u64, mut c: u64) -> (u64, u64) {
    // rows are sorted by descending pivot
    for &(r, rc) in rows {
        if (v >> pivot(r)) & 1 == 1 {
            v ^= r;
            c ^= rc;
        }
    }
    (v, c)
}

/// Basis of the relations Σ cᵢ vᵢ = 0, as coefficient masks.
pub fn relations(vectors: &[u64]) -> Vec<u64> {
    assert!(vectors.len() <= 64);
    let mut rows: Vec<(u64, u64)> = Vec::new();
    let mut out = Vec::new();
    for (i, &v) in vectors.iter().enumerate() {
        let (r, c) = reduce_pair(&rows, v, 1 << i);
        if r == 0 {
            out.push(c);
        } else {
            rows.push((r, c));
            rows.sort_by_key(|&(r, _)| std::cmp::Reverse(pivot(r)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vecs(dim: usize, bits: &[u64]) -> Vec<F2Vector> {
        bits.iter().map(|&b| F2Vector::from_bits(dim, b).unwrap()).collect()
    }

    #[test]
    fn empty_span_is_zero() {
        let s = Subspace::span(5, &[]).unwrap();
        assert_eq!(s.dim(), 0);
        assert_eq!(s.quotient_dim(&s).unwrap(), 0);
    }

    #[test]
    fn quotient_requires_containment() {
        let s = Subspace::span(3, &vecs(3, &[0b001])).unwrap();
        let t = Subspace::span(3, &vecs(3, &[0b010])).unwrap();
        assert_eq!(s.quotient_dim(&t), Err(Error::NotSubspace));
    }

    #[test]
    fn coset_members_are_distinct_and_sorted() {
        let s = Subspace::span(5, &vecs(5, &[0b00110, 0b01010, 0b11000])).unwrap();
        let v = F2Vector::from_bits(5, 0b00001).unwrap();
        let members: Vec<_> = s.coset_members(&v).collect();
        assert_eq!(members.len(), 8);
        assert!(members.windows(2).all(|w| w[0] < w[1]));
        for m in &members {
            assert!(s.contains(&(*m + v)));
            assert_eq!(s.index_of_bits(m.bits()), members.iter().position(|x| x == m).unwrap() as u64);
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let gens = vecs(4, &[0b0011, 0b0110, 0b1100]);
        let cs = CoordinateSystem::new(4, &gens).unwrap();
        for c in 0..8u64 {
            let x = cs.combine_bits(c);
            assert_eq!(cs.coordinates_bits(x), Some(c));
        }
        assert_eq!(cs.coordinates_bits(0b0001), None);
        assert!(CoordinateSystem::new(4, &vecs(4, &[0b11, 0b01, 0b10])).is_err());
    }

    fn brute_members(ambient: usize, s: &Subspace) -> Vec<u64> {
        (0..1u64 << ambient).filter(|&x| s.contains_bits(x)).collect()
    }

    proptest! {
        #[test]
        fn echelon_invariants_and_intersection(
            a in proptest::collection::vec(0u64..256, 0..6),
            b in proptest::collection::vec(0u64..256, 0..6),
        ) {
            let s = Subspace::span_bits(8, a.iter().copied());
            let t = Subspace::span_bits(8, b.iter().copied());
            prop_assert!(s.well_formed());
            let i = s.intersect(&t).unwrap();
            let expect: Vec<u64> = brute_members(8, &s).into_iter().filter(|&x| t.contains_bits(x)).collect();
            prop_assert_eq!(brute_members(8, &i), expect);
            let sum = s.sum(&t).unwrap();
            prop_assert_eq!(sum.dim() + i.dim(), s.dim() + t.dim());
            let members: Vec<u64> = s.members().map(|v| v.bits()).collect();
            prop_assert_eq!(members, brute_members(8, &s));
        }

        #[test]
        fn relations_are_kernel(v in proptest::collection::vec(0u64..64, 0..9)) {
            let rel = relations(&v);
            let rank = Subspace::span_bits(6, v.iter().copied()).dim();
            prop_assert_eq!(rel.len() + rank, v.len());
            for c in rel {
                let s = crate::f2::vector::BitIter(c).fold(0, |acc, i| acc ^ v[i]);
                prop_assert_eq!(s, 0);
            }
        }
    }
}
