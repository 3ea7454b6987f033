//! Packed exponent vectors and vertex subsets.

use std::fmt;

/// Maximum number of torus coordinates an [`Exponents`] value can hold.
pub const MAX_VARS: usize = 8;

const FIELD_BITS: u32 = 16;
const FIELD_MASK: u128 = 0xffff;
/// Exponents stay below this so that adding two never carries across fields.
pub const MAX_EXPONENT: u32 = 0x7fff;
const HIGH_BITS: u128 = 0x8000_8000_8000_8000_8000_8000_8000_8000;

/// An exponent vector in ℕᵐ, m ≤ 8, packed into 16-bit fields.
///
/// Coordinate 0 occupies the most significant field, so comparing the packed
/// word compares vectors lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponents {
    len: u8,
    packed: u128,
}

#[inline]
fn shift(i: usize) -> u32 {
    FIELD_BITS * (MAX_VARS - 1 - i) as u32
}

impl Exponents {
    pub fn zero(len: usize) -> Self {
        assert!(len <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        Exponents { len: len as u8, packed: 0 }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        Self::zero(len).with(i, 1)
    }

    pub fn try_from_slice(v: &[u32]) -> Option<Self> {
        if v.len() > MAX_VARS || v.iter().any(|&x| x > MAX_EXPONENT) {
            return None;
        }
        let mut e = Self::zero(v.len());
        for (i, &x) in v.iter().enumerate() {
            e.packed |= (x as u128) << shift(i);
        }
        Some(e)
    }

    /// Panics if there are more than [`MAX_VARS`] entries or an entry exceeds
    /// [`MAX_EXPONENT`].
    pub fn from_slice(v: &[u32]) -> Self {
        Self::try_from_slice(v).unwrap_or_else(|| panic!("exponent vector {v:?} out of range"))
    }

    /// Characteristic vector of a vertex set.
    pub fn indicator(len: usize, set: VertexSet) -> Self {
        let mut e = Self::zero(len);
        for i in set.iter() {
            e = e.with(i, 1);
        }
        e
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> u32 {
        debug_assert!(i < self.len());
        ((self.packed >> shift(i)) & FIELD_MASK) as u32
    }

    #[inline]
    pub fn with(mut self, i: usize, value: u32) -> Self {
        assert!(i < self.len(), "index {i} out of range for {} variables", self.len);
        assert!(value <= MAX_EXPONENT, "exponent {value} out of range");
        self.packed &= !(FIELD_MASK << shift(i));
        self.packed |= (value as u128) << shift(i);
        self
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.packed == 0
    }

    pub fn total(&self) -> u32 {
        self.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    /// Componentwise sum. Panics if a component would exceed [`MAX_EXPONENT`].
    #[inline]
    pub fn add(&self, other: &Exponents) -> Exponents {
        debug_assert_eq!(self.len, other.len);
        let packed = self.packed + other.packed;
        assert!(packed & HIGH_BITS == 0, "exponent overflow");
        Exponents { len: self.len, packed }
    }

    /// True when every component is ≤ the matching component of `bound`.
    #[inline]
    pub fn fits_under(&self, bound: &Exponents) -> bool {
        ((bound.packed | HIGH_BITS) - self.packed) & HIGH_BITS == HIGH_BITS
    }

    /// Dot product.
    pub fn dot(&self, other: &Exponents) -> u64 {
        (0..self.len()).map(|i| self.get(i) as u64 * other.get(i) as u64).sum()
    }

    /// The set ε(I) = {k : iₖ ≠ 0}.
    pub fn support(&self) -> VertexSet {
        let mut s = VertexSet::EMPTY;
        for i in 0..self.len() {
            if self.get(i) != 0 {
                s = s.insert(i);
            }
        }
        s
    }

    /// All vectors of length `len` with component sum `total`, in increasing
    /// lexicographic order.
    pub fn all_with_total(len: usize, total: u32) -> Vec<Exponents> {
        fn rec(len: usize, i: usize, left: u32, cur: Exponents, out: &mut Vec<Exponents>) {
            if i + 1 == len {
                out.push(cur.with(i, left));
                return;
            }
            for x in 0..=left {
                rec(len, i + 1, left - x, cur.with(i, x), out);
            }
        }
        let mut out = Vec::new();
        match len {
            0 if total == 0 => out.push(Exponents::zero(0)),
            0 => {}
            _ => rec(len, 0, total, Exponents::zero(len), &mut out),
        }
        out
    }

    /// First index with a nonzero component.
    pub fn first_nonzero(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.get(i) != 0)
    }
}

impl fmt::Debug for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A subset of the vertex set `{0, …, 31}` (0-based internally; rendered
/// and parsed 1-based).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(pub u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);
    pub const CAPACITY: usize = 32;

    pub fn full(m: usize) -> Self {
        assert!(m <= Self::CAPACITY);
        if m == 32 {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << m) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        VertexSet(1 << i)
    }

    /// From 0-based indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(Self::EMPTY, |s, i| s.insert(i))
    }

    /// From 1-based vertex labels; `None` if a label is 0 or too large.
    pub fn from_labels(labels: &[usize]) -> Option<Self> {
        labels.iter().try_fold(Self::EMPTY, |s, &l| {
            (1..=Self::CAPACITY).contains(&l).then(|| s.insert(l - 1))
        })
    }

    #[inline]
    pub fn insert(self, i: usize) -> Self {
        VertexSet(self.0 | (1 << i))
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (!self.is_empty()).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max(self) -> Option<usize> {
        (!self.is_empty()).then(|| 31 - self.0.leading_zeros() as usize)
    }

    /// 0-based members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..Self::CAPACITY).filter(move |&i| self.contains(i))
    }

    /// 1-based labels in increasing order.
    pub fn labels(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// All subsets, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(VertexSet(cur))
        })
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.labels().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packing_round_trips() {
        let e = Exponents::from_slice(&[3, 0, 7, 1]);
        assert_eq!(e.to_vec(), vec![3, 0, 7, 1]);
        assert_eq!(e.total(), 11);
        assert_eq!(e.support(), VertexSet::from_indices([0, 2, 3]));
        assert_eq!(e.with(1, 5).to_vec(), vec![3, 5, 7, 1]);
    }

    #[test]
    fn vectors_with_fixed_total() {
        let v = Exponents::all_with_total(3, 2);
        assert_eq!(v.len(), 6);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        assert!(v.iter().all(|e| e.total() == 2));
        assert_eq!(Exponents::all_with_total(0, 0).len(), 1);
        assert!(Exponents::all_with_total(0, 1).is_empty());
    }

    #[test]
    fn order_is_lexicographic() {
        let a = Exponents::from_slice(&[1, 0]);
        let b = Exponents::from_slice(&[0, 5]);
        let c = Exponents::from_slice(&[1, 1]);
        assert!(b < a && a < c);
    }

    #[test]
    fn fits_under_bound() {
        let d = Exponents::from_slice(&[4, 2]);
        assert!(Exponents::from_slice(&[4, 2]).fits_under(&d));
        assert!(Exponents::from_slice(&[0, 0]).fits_under(&d));
        assert!(!Exponents::from_slice(&[5, 0]).fits_under(&d));
        assert!(!Exponents::from_slice(&[0, 3]).fits_under(&d));
    }

    #[test]
    fn subsets_enumerates_power_set() {
        let s = VertexSet::from_indices([0, 2, 5]);
        let all: Vec<_> = s.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|t| t.is_subset(s)));
        assert_eq!(VertexSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn labels_are_one_based() {
        let s = VertexSet::from_labels(&[1, 3]).unwrap();
        assert_eq!(s.to_string(), "{1,3}");
        assert!(VertexSet::from_labels(&[0]).is_none());
    }
}
