//! Truncated model of KU*(∏ CP^{dᵢ}).
//!
//! Elements are homogeneous: `vˢ · p(x₁, …, x_m)` with `p` a polynomial in
//! which each `xᵢ` is truncated at degree `dᵢ`. Conjugate variables are
//! eliminated on construction through `x̄ = -x/(1+x)`, so two elements are
//! equal exactly when their coefficient maps agree.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exponents::{Exponents, VertexSet, MAX_VARS};

/// Largest truncation degree accepted per variable.
pub const MAX_TRUNCATION: u32 = 1024;

pub(crate) fn checked_mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("integer coefficient overflow")
}

pub(crate) fn checked_add(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("integer coefficient overflow")
}

/// Per-variable nilpotency bounds: `xᵢ^{dᵢ+1} = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Truncation {
    degrees: Arc<[u32]>,
    bound: Exponents,
}

impl Truncation {
    /// Every degree must be even and at least 2.
    pub fn new(degrees: Vec<u32>) -> Result<Self> {
        if degrees.len() > MAX_VARS {
            return Err(Error::InvalidTruncation(format!(
                "{} variables requested, at most {MAX_VARS} supported",
                degrees.len()
            )));
        }
        if let Some(&d) = degrees.iter().find(|&&d| d < 2 || d % 2 != 0 || d > MAX_TRUNCATION) {
            return Err(Error::InvalidTruncation(format!(
                "degree {d} must be even and in 2..={MAX_TRUNCATION}"
            )));
        }
        let bound = Exponents::from_slice(&degrees);
        Ok(Truncation {
            degrees: degrees.into(),
            bound,
        })
    }

    pub fn uniform(m: usize, d: u32) -> Result<Self> {
        Self::new(vec![d; m])
    }

    pub fn vars(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn bound(&self) -> &Exponents {
        &self.bound
    }

    pub fn contains(&self, e: &Exponents) -> bool {
        e.fits_under(&self.bound)
    }

    fn box_size(&self) -> Option<usize> {
        self.degrees
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d as usize + 1))
    }
}

impl fmt::Debug for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Truncation{:?}", &*self.degrees)
    }
}

/// Coefficients of `x^i · x̄^j` as a truncated univariate series.
fn univariate_series(i: u32, j: u32, d: u32) -> Vec<i128> {
    let mut out = vec![0i128; d as usize + 1];
    if i + j > d {
        return out;
    }
    if j == 0 {
        out[i as usize] = 1;
        return out;
    }
    // x̄^j = (-1)^j x^j Σ_n (-1)^n C(n+j-1, j-1) x^n
    let mut binom: i128 = 1; // C(j-1, j-1)
    for n in 0..=(d - i - j) {
        if n > 0 {
            binom = checked_mul(binom, (n + j - 1) as i128) / n as i128;
        }
        let sign = if (j + n).is_multiple_of(2) { 1 } else { -1 };
        out[(i + j + n) as usize] = sign * binom;
    }
    out
}

/// Homogeneous element of the truncated KU ring.
#[derive(Clone)]
pub struct KuElement {
    trunc: Truncation,
    s: i64,
    coeffs: BTreeMap<Exponents, i128>,
}

// Zero is equal to zero in every grading.
impl PartialEq for KuElement {
    fn eq(&self, other: &Self) -> bool {
        self.trunc == other.trunc && self.coeffs == other.coeffs && (self.s == other.s || self.coeffs.is_empty())
    }
}

impl Eq for KuElement {}

impl KuElement {
    pub fn zero(trunc: &Truncation, s: i64) -> Self {
        KuElement {
            trunc: trunc.clone(),
            s,
            coeffs: BTreeMap::new(),
        }
    }

    /// `c · vˢ`.
    pub fn constant(trunc: &Truncation, s: i64, c: i128) -> Self {
        let mut e = Self::zero(trunc, s);
        if c != 0 {
            e.coeffs.insert(Exponents::zero(trunc.vars()), c);
        }
        e
    }

    /// `vˢ · xᵢ` (0-based `i`).
    pub fn variable(trunc: &Truncation, s: i64, i: usize) -> Self {
        let mut e = Self::zero(trunc, s);
        e.coeffs.insert(Exponents::unit(trunc.vars(), i), 1);
        e
    }

    /// Builds an element from `(exponents, coefficient)` pairs; terms outside
    /// the truncation are dropped.
    pub fn from_terms<I>(trunc: &Truncation, s: i64, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, i128)>,
    {
        let mut e = Self::zero(trunc, s);
        for (exps, c) in terms {
            if exps.len() != trunc.vars() {
                return Err(Error::VariableMismatch(exps.len(), trunc.vars()));
            }
            let Some(ex) = Exponents::try_from_slice(&exps) else {
                continue;
            };
            if trunc.contains(&ex) {
                e.add_term(ex, c);
            }
        }
        Ok(e)
    }

    pub(crate) fn add_term(&mut self, e: Exponents, c: i128) {
        if c == 0 {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert(0);
        *slot = checked_add(*slot, c);
        if *slot == 0 {
            self.coeffs.remove(&e);
        }
    }

    pub fn trunc(&self) -> &Truncation {
        &self.trunc
    }

    /// The power of `v` carried by this element (it lives in KU^{-2s}).
    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn vars(&self) -> usize {
        self.trunc.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &i128)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> i128 {
        Exponents::try_from_slice(e)
            .and_then(|e| self.coeffs.get(&e).copied())
            .unwrap_or(0)
    }

    fn check_trunc(&self, other: &KuElement) -> Result<()> {
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch(
                self.trunc.degrees().to_vec(),
                other.trunc.degrees().to_vec(),
            ));
        }
        Ok(())
    }

    /// Sum; the zero element of any grading is accepted as an identity.
    pub fn add(&self, other: &KuElement) -> Result<KuElement> {
        self.check_trunc(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.s != other.s {
            return Err(Error::DegreeMismatch(-2 * self.s, -2 * other.s));
        }
        let mut out = self.clone();
        for (e, &c) in &other.coeffs {
            out.add_term(*e, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &KuElement) -> Result<KuElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> KuElement {
        self.scale(-1)
    }

    pub fn scale(&self, k: i128) -> KuElement {
        let mut out = KuElement::zero(&self.trunc, self.s);
        if k != 0 {
            out.coeffs = self.coeffs.iter().map(|(e, &c)| (*e, checked_mul(c, k))).collect();
        }
        out
    }

    /// Multiplies by `v^k`.
    pub fn shift_v(&self, k: i64) -> KuElement {
        KuElement {
            trunc: self.trunc.clone(),
            s: self.s + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Graded product.
    pub fn mul(&self, other: &KuElement) -> Result<KuElement> {
        self.check_trunc(other)?;
        let s = self.s + other.s;
        let trunc = &self.trunc;
        if self.is_zero() || other.is_zero() {
            return Ok(KuElement::zero(trunc, s));
        }
        let mut out = KuElement::zero(trunc, s);
        match trunc.box_size().filter(|&n| n <= 1 << 16) {
            Some(size) => {
                // Mixed-radix index; additive as long as the sum stays in the box.
                let radix: Vec<usize> = trunc.degrees().iter().map(|&d| d as usize + 1).collect();
                let index = |e: &Exponents| {
                    e.iter()
                        .zip(&radix)
                        .fold(0usize, |acc, (x, &r)| acc * r + x as usize)
                };
                let lhs: Vec<(Exponents, usize, i128)> =
                    self.coeffs.iter().map(|(e, &c)| (*e, index(e), c)).collect();
                let rhs: Vec<(Exponents, usize, i128)> =
                    other.coeffs.iter().map(|(e, &c)| (*e, index(e), c)).collect();
                let mut acc = vec![0i128; size];
                let mut touched = vec![false; size];
                let bound = trunc.bound();
                for (ea, ia, ca) in &lhs {
                    for (eb, ib, cb) in &rhs {
                        let e = ea.add(eb);
                        if !e.fits_under(bound) {
                            continue;
                        }
                        let k = ia + ib;
                        acc[k] = checked_add(acc[k], checked_mul(*ca, *cb));
                        touched[k] = true;
                    }
                }
                for (k, c) in acc.into_iter().enumerate() {
                    if c == 0 || !touched[k] {
                        continue;
                    }
                    let mut rest = k;
                    let mut exps = vec![0u32; radix.len()];
                    for (slot, &r) in exps.iter_mut().zip(&radix).rev() {
                        *slot = (rest % r) as u32;
                        rest /= r;
                    }
                    out.coeffs.insert(Exponents::from_slice(&exps), c);
                }
            }
            None => {
                for (ea, &ca) in &self.coeffs {
                    for (eb, &cb) in &other.coeffs {
                        let e = ea.add(eb);
                        if trunc.contains(&e) {
                            out.add_term(e, checked_mul(ca, cb));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Ring involution `xᵢ ↦ x̄ᵢ`, `v ↦ -v`.
    pub fn conjugate(&self) -> KuElement {
        let mut out = KuElement::zero(&self.trunc, self.s);
        let sign: i128 = if self.s.rem_euclid(2) == 0 { 1 } else { -1 };
        let zero = Exponents::zero(self.vars());
        for (e, &c) in &self.coeffs {
            let image = monomial_series(&zero, e, &self.trunc);
            for (f, d) in image {
                out.add_term(f, checked_mul(checked_mul(c, d), sign));
            }
        }
        out
    }

    /// Sets `xᵢ = 0` for every `i ∉ keep`.
    pub fn restrict(&self, keep: VertexSet) -> KuElement {
        self.filter_support(|supp| supp.is_subset(keep))
    }

    /// Keeps only the monomials whose support satisfies `pred`.
    pub fn filter_support(&self, pred: impl Fn(VertexSet) -> bool) -> KuElement {
        KuElement {
            trunc: self.trunc.clone(),
            s: self.s,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| pred(e.support()))
                .map(|(e, &c)| (*e, c))
                .collect(),
        }
    }
}

/// Canonical expansion of `x^I x̄^J` as `(exponents, coefficient)` pairs.
pub(crate) fn monomial_series(i: &Exponents, j: &Exponents, trunc: &Truncation) -> Vec<(Exponents, i128)> {
    let m = trunc.vars();
    let mut acc: Vec<(Exponents, i128)> = vec![(Exponents::zero(m), 1)];
    for k in 0..m {
        let series = univariate_series(i.get(k), j.get(k), trunc.degrees()[k]);
        let mut next = Vec::with_capacity(acc.len() * 2);
        for (e, c) in &acc {
            for (p, &a) in series.iter().enumerate() {
                if a != 0 {
                    next.push((e.with(k, p as u32), checked_mul(*c, a)));
                }
            }
        }
        acc = next;
        if acc.is_empty() {
            break;
        }
    }
    acc
}

/// Canonical form of `vˢ · x^I · x̄^J`.
pub fn ku_monomial(i: &[u32], j: &[u32], s: i64, trunc: &Truncation) -> Result<KuElement> {
    let m = trunc.vars();
    if i.len() != m || j.len() != m {
        return Err(Error::VariableMismatch(i.len().max(j.len()), m));
    }
    let (Some(ie), Some(je)) = (Exponents::try_from_slice(i), Exponents::try_from_slice(j)) else {
        return Err(Error::Precondition("exponent out of range".into()));
    };
    Ok(ku_monomial_exps(&ie, &je, s, trunc))
}

pub(crate) fn ku_monomial_exps(i: &Exponents, j: &Exponents, s: i64, trunc: &Truncation) -> KuElement {
    let mut out = KuElement::zero(trunc, s);
    // Terms are already distinct.
    out.coeffs = monomial_series(i, j, trunc).into_iter().collect();
    out
}

impl fmt::Display for KuElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut body = String::new();
        for (n, (e, &c)) in self.coeffs.iter().enumerate() {
            let mono: String = e
                .iter()
                .enumerate()
                .filter(|(_, p)| *p > 0)
                .map(|(k, p)| {
                    if p == 1 {
                        format!("x{}", k + 1)
                    } else {
                        format!("x{}^{}", k + 1, p)
                    }
                })
                .collect::<Vec<_>>()
                .join("*");
            let abs = c.unsigned_abs();
            let sign = if c < 0 { "-" } else { "+" };
            if n == 0 {
                if c < 0 {
                    body.push('-');
                }
            } else {
                body.push_str(&format!(" {sign} "));
            }
            match (mono.is_empty(), abs) {
                (true, _) => body.push_str(&abs.to_string()),
                (false, 1) => body.push_str(&mono),
                (false, _) => body.push_str(&format!("{abs}*{mono}")),
            }
        }
        match self.s {
            0 => write!(f, "{body}"),
            1 => write!(f, "v*({body})"),
            s => write!(f, "v^{s}*({body})"),
        }
    }
}

impl fmt::Debug for KuElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} @ {:?}", self.trunc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(d: &[u32]) -> Truncation {
        Truncation::new(d.to_vec()).unwrap()
    }

    fn poly(tr: &Truncation, s: i64, terms: &[(&[u32], i128)]) -> KuElement {
        KuElement::from_terms(tr, s, terms.iter().map(|(e, c)| (e.to_vec(), *c))).unwrap()
    }

    #[test]
    fn truncation_must_be_even() {
        assert!(Truncation::new(vec![3]).is_err());
        assert!(Truncation::new(vec![0]).is_err());
        assert!(Truncation::new(vec![2, 4, 6]).is_ok());
    }

    #[test]
    fn conjugate_variable_expands_geometrically() {
        let tr = t(&[4]);
        let e = ku_monomial(&[0], &[1], 0, &tr).unwrap();
        assert_eq!(e, poly(&tr, 0, &[(&[1], -1), (&[2], 1), (&[3], -1), (&[4], 1)]));
    }

    #[test]
    fn x_times_conjugate() {
        let tr = t(&[4]);
        // Odd truncations are rejected, so the x³ tail is followed by -x⁴.
        let e = ku_monomial(&[1], &[1], 0, &tr).unwrap();
        assert_eq!(e, poly(&tr, 0, &[(&[2], -1), (&[3], 1), (&[4], -1)]));
        let via_mul = ku_monomial(&[1], &[0], 0, &tr)
            .unwrap()
            .mul(&ku_monomial(&[0], &[1], 0, &tr).unwrap())
            .unwrap();
        assert_eq!(e, via_mul);
    }

    #[test]
    fn independent_variables() {
        let tr = t(&[2, 2]);
        let e = ku_monomial(&[1, 0], &[0, 1], 2, &tr).unwrap();
        assert_eq!(e, poly(&tr, 2, &[(&[1, 1], -1), (&[1, 2], 1)]));
    }

    #[test]
    fn defining_relation_vanishes() {
        for d in [2, 4, 6, 8] {
            let tr = t(&[d, d]);
            for i in 0..2 {
                let e = Exponents::unit(2, i);
                let z = Exponents::zero(2);
                let sum = ku_monomial_exps(&e, &e, 0, &tr)
                    .add(&ku_monomial_exps(&e, &z, 0, &tr))
                    .unwrap()
                    .add(&ku_monomial_exps(&z, &e, 0, &tr))
                    .unwrap();
                assert!(sum.is_zero(), "d={d} i={i}: {sum}");
            }
        }
    }

    #[test]
    fn one_plus_x_times_conjugate_plus_x() {
        let tr = t(&[4]);
        let one_plus_x = poly(&tr, 0, &[(&[0], 1), (&[1], 1)]);
        let xbar = ku_monomial(&[0], &[1], 0, &tr).unwrap();
        let x = KuElement::variable(&tr, 0, 0);
        assert!(one_plus_x.mul(&xbar).unwrap().add(&x).unwrap().is_zero());
    }

    #[test]
    fn zero_annihilates() {
        let tr = t(&[4, 4]);
        let x = KuElement::variable(&tr, 0, 0);
        assert!(x.mul(&KuElement::zero(&tr, 0)).unwrap().is_zero());
    }

    #[test]
    fn mismatched_truncations_error() {
        let a = KuElement::variable(&t(&[4]), 0, 0);
        let b = KuElement::variable(&t(&[6]), 0, 0);
        assert!(matches!(a.mul(&b), Err(Error::TruncationMismatch(..))));
        assert!(matches!(a.add(&b), Err(Error::TruncationMismatch(..))));
    }

    #[test]
    fn conjugation_examples() {
        let tr = t(&[4]);
        let x = KuElement::variable(&tr, 0, 0);
        assert_eq!(x.conjugate(), ku_monomial(&[0], &[1], 0, &tr).unwrap());
        let tr2 = t(&[4, 4]);
        let x1x2 = poly(&tr2, 0, &[(&[1, 1], 1)]);
        assert_eq!(x1x2.conjugate().conjugate(), x1x2);
        assert_eq!(KuElement::constant(&tr, 2, 1).conjugate(), KuElement::constant(&tr, 2, 1));
        assert_eq!(KuElement::constant(&tr, 1, 1).conjugate(), KuElement::constant(&tr, 1, -1));
    }

    #[test]
    fn restriction_examples() {
        let tr = t(&[4, 4]);
        let s1 = VertexSet::singleton(0);
        let x1 = poly(&tr, 0, &[(&[1, 0], 1)]);
        let sum = poly(&tr, 0, &[(&[1, 0], 1), (&[0, 1], 1)]);
        assert_eq!(sum.restrict(s1), x1);
        assert!(poly(&tr, 0, &[(&[1, 1], 1)]).restrict(s1).is_zero());
        assert_eq!(sum.restrict(VertexSet::full(2)), sum);
    }

    #[test]
    fn dense_and_sparse_products_agree() {
        let tr = t(&[6, 6, 6]);
        let a = poly(&tr, 1, &[(&[1, 0, 2], 3), (&[0, 2, 0], -1), (&[0, 0, 0], 2)]);
        let b = poly(&tr, 0, &[(&[5, 1, 1], 1), (&[2, 2, 2], 4), (&[0, 0, 6], -2)]);
        let mut expected = KuElement::zero(&tr, 1);
        for (ea, &ca) in a.terms() {
            for (eb, &cb) in b.terms() {
                let e = ea.add(eb);
                if tr.contains(&e) {
                    expected.add_term(e, ca * cb);
                }
            }
        }
        assert_eq!(a.mul(&b).unwrap(), expected);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        #[allow(clippy::type_complexity)]
        fn setup() -> impl Strategy<Value = (Vec<u32>, Vec<u32>, Vec<u32>, Vec<u32>, Vec<u32>, i64, i64)> {
            (1usize..=3).prop_flat_map(|m| {
                (
                    prop::collection::vec(prop::sample::select(vec![2u32, 4, 6]), m),
                    prop::collection::vec(0u32..4, m),
                    prop::collection::vec(0u32..4, m),
                    prop::collection::vec(0u32..4, m),
                    prop::collection::vec(0u32..4, m),
                    -3i64..4,
                    -3i64..4,
                )
            })
        }

        fn add_vec(a: &[u32], b: &[u32]) -> Vec<u32> {
            a.iter().zip(b).map(|(x, y)| x + y).collect()
        }

        proptest! {
            #[test]
            fn monomials_multiply((d, i, j, i2, j2, s, s2) in setup()) {
                let tr = Truncation::new(d).unwrap();
                let lhs = ku_monomial(&add_vec(&i, &i2), &add_vec(&j, &j2), s + s2, &tr).unwrap();
                let a = ku_monomial(&i, &j, s, &tr).unwrap();
                let b = ku_monomial(&i2, &j2, s2, &tr).unwrap();
                let rhs = a.mul(&b).unwrap();
                prop_assert_eq!(&lhs, &rhs);
                prop_assert!(rhs.is_zero() || rhs.s() == s + s2);
            }

            #[test]
            fn conjugation_is_involution((d, i, j, _i2, _j2, s, _s2) in setup()) {
                let tr = Truncation::new(d).unwrap();
                let a = ku_monomial(&i, &j, s, &tr).unwrap();
                prop_assert_eq!(a.conjugate().conjugate(), a.clone());
                // Conjugation swaps the roles of x and x̄ and flips v.
                let sign = if s.rem_euclid(2) == 0 { 1 } else { -1 };
                prop_assert_eq!(a.conjugate(), ku_monomial(&j, &i, s, &tr).unwrap().scale(sign));
            }

            #[test]
            fn conjugation_is_multiplicative((d, i, j, i2, j2, s, s2) in setup()) {
                let tr = Truncation::new(d).unwrap();
                let a = ku_monomial(&i, &j, s, &tr).unwrap();
                let b = ku_monomial(&i2, &j2, s2, &tr).unwrap();
                prop_assert_eq!(a.mul(&b).unwrap().conjugate(), a.conjugate().mul(&b.conjugate()).unwrap());
            }
        }
    }
}
