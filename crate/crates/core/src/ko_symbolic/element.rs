use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::exponents::{Exponents, VertexSet};
use crate::ku_model::{checked_add, checked_mul};

use super::scalar::{KoScalar, ScalarToken};
use super::symbol::{normalize_into, normalize_many_into, G2Symbol, NormalSum, PivotRule, SmallestPivot};

/// A homogeneous element of KO*(BT^m): a KO* scalar times the unit plus a
/// finite integer combination of normal-form generators `[I,J]^(s)`.
#[derive(Clone)]
pub struct KoElement {
    vars: usize,
    degree: i64,
    scalar: KoScalar,
    reduced: BTreeMap<G2Symbol, i128>,
}

impl PartialEq for KoElement {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars
            && self.scalar == other.scalar
            && self.reduced == other.reduced
            && (self.degree == other.degree || self.is_zero())
    }
}

impl Eq for KoElement {}

impl KoElement {
    pub fn zero(vars: usize, degree: i64) -> Self {
        KoElement {
            vars,
            degree,
            scalar: KoScalar::zero(),
            reduced: BTreeMap::new(),
        }
    }

    pub fn one(vars: usize) -> Self {
        Self::from_scalar(vars, KoScalar::one()).expect("unit is homogeneous")
    }

    pub fn integer(vars: usize, n: i128) -> Self {
        Self::from_scalar(vars, KoScalar::integer(n)).expect("integers are homogeneous")
    }

    /// Errors if the scalar is not homogeneous.
    pub fn from_scalar(vars: usize, scalar: KoScalar) -> Result<Self> {
        if scalar.is_zero() {
            return Ok(Self::zero(vars, 0));
        }
        let degree = scalar
            .degree()
            .ok_or_else(|| Error::Precondition(format!("scalar {scalar} is not homogeneous")))?;
        Ok(KoElement {
            vars,
            degree,
            scalar,
            reduced: BTreeMap::new(),
        })
    }

    /// `coeff · [I,J]^(s)` for an arbitrary pair, brought into normal form.
    pub fn symbol(i: &[u32], j: &[u32], s: i64) -> Result<Self> {
        if i.len() != j.len() {
            return Err(Error::VariableMismatch(i.len(), j.len()));
        }
        let (Some(ie), Some(je)) = (Exponents::try_from_slice(i), Exponents::try_from_slice(j)) else {
            return Err(Error::Precondition(format!("exponent vectors {i:?}, {j:?} out of range")));
        };
        Ok(normalize_symbol(ie, je, s))
    }

    pub(crate) fn from_normal_sum(vars: usize, degree: i64, sum: NormalSum) -> Self {
        KoElement {
            vars,
            degree,
            scalar: sum.scalar,
            reduced: sum.reduced,
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn scalar(&self) -> &KoScalar {
        &self.scalar
    }

    pub fn reduced(&self) -> &BTreeMap<G2Symbol, i128> {
        &self.reduced
    }

    pub fn symbols(&self) -> impl Iterator<Item = (&G2Symbol, &i128)> {
        self.reduced.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() && self.reduced.is_empty()
    }

    /// Every stored symbol satisfies the normal-form conditions and sits in
    /// the element's degree.
    pub fn is_well_formed(&self) -> bool {
        self.reduced
            .keys()
            .all(|k| k.is_normal() && k.vars() == self.vars && k.degree() == self.degree)
            && self.scalar.terms().all(|(t, _)| t.degree() == self.degree)
    }

    fn check_compatible(&self, other: &KoElement) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch(self.vars, other.vars));
        }
        Ok(())
    }

    pub fn add(&self, other: &KoElement) -> Result<KoElement> {
        self.check_compatible(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let mut sum = NormalSum {
            scalar: self.scalar.add(&other.scalar),
            reduced: self.reduced.clone(),
        };
        for (&k, &c) in &other.reduced {
            sum.add_symbol(k, c);
        }
        Ok(Self::from_normal_sum(self.vars, self.degree, sum))
    }

    pub fn sub(&self, other: &KoElement) -> Result<KoElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> KoElement {
        self.scale(-1)
    }

    pub fn scale(&self, k: i128) -> KoElement {
        let mut sum = NormalSum {
            scalar: self.scalar.scale(k),
            reduced: BTreeMap::new(),
        };
        for (&sym, &c) in &self.reduced {
            sum.add_symbol(sym, checked_mul(c, k));
        }
        Self::from_normal_sum(self.vars, self.degree, sum)
    }

    /// Keeps the generators whose support `ε(I) ∪ ε(J)` satisfies `pred`;
    /// the scalar part is untouched.
    pub fn filter_support(&self, pred: impl Fn(VertexSet) -> bool) -> KoElement {
        KoElement {
            vars: self.vars,
            degree: self.degree,
            scalar: self.scalar.clone(),
            reduced: self
                .reduced
                .iter()
                .filter(|(k, _)| pred(k.support()))
                .map(|(k, c)| (*k, *c))
                .collect(),
        }
    }

    /// Product in KO*(BT^m).
    ///
    /// Generators multiply by relation (C),
    /// `[I,J]^(s)·[H,K]^(t) = [I+H,J+K]^(s+t) + (−1)ˢ[J+H,I+K]^(s+t)`,
    /// with both terms renormalized; scalars act through
    /// [`KoElement::scalar_action`].
    pub fn mul(&self, other: &KoElement) -> Result<KoElement> {
        self.check_compatible(other)?;
        let degree = self.degree + other.degree;
        let mut sum = NormalSum {
            scalar: self.scalar.mul(&other.scalar),
            reduced: BTreeMap::new(),
        };
        act_into(&self.scalar, &other.reduced, &mut sum);
        act_into(&other.scalar, &self.reduced, &mut sum);
        // Collect raw products first; relation (A) merges [J,I] into [I,J].
        let mut raw: HashMap<(Exponents, Exponents, i64), i128> = HashMap::new();
        for (a, &ca) in &self.reduced {
            for (b, &cb) in &other.reduced {
                let c = checked_mul(ca, cb);
                let s = a.s + b.s;
                let first = (a.i.add(&b.i), a.j.add(&b.j));
                let second = (a.j.add(&b.i), a.i.add(&b.j));
                for ((i, j), k) in [(first, c), (second, checked_mul(c, parity(a.s)))] {
                    let (key, k) = if i >= j { ((i, j, s), k) } else { ((j, i, s), checked_mul(k, parity(s))) };
                    let slot = raw.entry(key).or_insert(0);
                    *slot = checked_add(*slot, k);
                }
            }
        }
        let mut by_degree: BTreeMap<i64, Vec<(Exponents, Exponents, i128)>> = BTreeMap::new();
        for ((i, j, s), k) in raw {
            by_degree.entry(s).or_default().push((i, j, k));
        }
        for (s, terms) in by_degree {
            normalize_many_into(terms, s, &mut SmallestPivot, &mut sum);
        }
        Ok(Self::from_normal_sum(self.vars, degree, sum))
    }

    /// KO*-module action: `e` kills generators, `α·[I,J]^(s) = 2[I,J]^(s+2)`,
    /// `β·[I,J]^(s) = [I,J]^(s+4)`; on the scalar part it is the ring product.
    pub fn scalar_action(&self, lambda: &KoScalar) -> Result<KoElement> {
        let lambda_elt = KoElement::from_scalar(self.vars, lambda.clone())?;
        if lambda.is_zero() {
            return Ok(KoElement::zero(self.vars, self.degree));
        }
        let mut sum = NormalSum {
            scalar: lambda.mul(&self.scalar),
            reduced: BTreeMap::new(),
        };
        act_into(lambda, &self.reduced, &mut sum);
        Ok(Self::from_normal_sum(self.vars, self.degree + lambda_elt.degree, sum))
    }

    /// `γʲ` on a reduced class: `[I,J]^(s) ↦ [I,J]^(s+2j)`.
    pub fn gamma_shift(&self, j: i64) -> Result<KoElement> {
        if !self.scalar.is_zero() {
            return Err(Error::GammaOnScalar);
        }
        Ok(KoElement {
            vars: self.vars,
            degree: self.degree - 4 * j,
            scalar: KoScalar::zero(),
            reduced: self.reduced.iter().map(|(k, &c)| (k.with_s(k.s + 2 * j), c)).collect(),
        })
    }
}

fn parity(s: i64) -> i128 {
    if s.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn act_into(lambda: &KoScalar, reduced: &BTreeMap<G2Symbol, i128>, sum: &mut NormalSum) {
    for (&t, &lc) in lambda.terms() {
        let (shift, factor) = match t {
            ScalarToken::Beta(p) => (4 * p, 1),
            ScalarToken::AlphaBeta(p) => (4 * p + 2, 2),
            ScalarToken::EBeta(_) | ScalarToken::E2Beta(_) => continue,
        };
        for (&sym, &c) in reduced {
            sum.add_symbol(sym.with_s(sym.s + shift), checked_mul(checked_mul(c, lc), factor));
        }
    }
}

/// Normal form of `[I,J]^(s)` using the smallest-index pivot.
pub fn normalize_symbol(i: Exponents, j: Exponents, s: i64) -> KoElement {
    normalize_symbol_with(i, j, s, &mut SmallestPivot)
}

/// As [`normalize_symbol`] with a caller-chosen relation-(B) pivot.
pub fn normalize_symbol_with<P: PivotRule>(i: Exponents, j: Exponents, s: i64, pivot: &mut P) -> KoElement {
    let mut sum = NormalSum::default();
    normalize_into(i, j, s, 1, pivot, &mut sum);
    KoElement::from_normal_sum(i.len(), -2 * s, sum)
}

impl fmt::Display for KoElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::notation::render(self))
    }
}

impl fmt::Debug for KoElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (deg {})", super::notation::render(self), self.degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(i: &[u32], j: &[u32], s: i64) -> KoElement {
        KoElement::symbol(i, j, s).unwrap()
    }

    #[test]
    fn product_of_coordinate_classes() {
        let a = sym(&[1, 0], &[0, 0], 0);
        let b = sym(&[0, 1], &[0, 0], 0);
        let expected = sym(&[1, 1], &[0, 0], 0).add(&sym(&[1, 0], &[0, 1], 0)).unwrap();
        assert_eq!(a.mul(&b).unwrap(), expected);
    }

    #[test]
    fn unit_image_doubles() {
        let a = sym(&[2, 1], &[0, 0], 1);
        let two = KoElement::from_scalar(2, KoScalar::realified_bott_power(0)).unwrap();
        assert_eq!(a.mul(&two).unwrap(), a.scale(2));
        assert_eq!(a.mul(&KoElement::one(2)).unwrap(), a);
    }

    #[test]
    fn e_annihilates_generators() {
        let a = sym(&[1, 2], &[0, 0], 3);
        let e = KoElement::from_scalar(2, KoScalar::e()).unwrap();
        assert!(e.mul(&a).unwrap().is_zero());
        assert!(a.scalar_action(&KoScalar::e().mul(&KoScalar::e())).unwrap().is_zero());
    }

    #[test]
    fn module_action() {
        let a = sym(&[1, 0], &[0, 2], 1);
        assert_eq!(a.scalar_action(&KoScalar::beta(1)).unwrap(), sym(&[1, 0], &[0, 2], 5));
        assert_eq!(a.scalar_action(&KoScalar::alpha()).unwrap(), sym(&[1, 0], &[0, 2], 3).scale(2));
        assert_eq!(a.scalar_action(&KoScalar::alpha()).unwrap().degree(), a.degree() - 4);
    }

    #[test]
    fn gamma_relations() {
        let a = sym(&[1, 1], &[0, 0], 0);
        assert_eq!(a.gamma_shift(1).unwrap(), sym(&[1, 1], &[0, 0], 2));
        // γ² = β and 2γ = α.
        assert_eq!(
            a.gamma_shift(1).unwrap().gamma_shift(1).unwrap(),
            a.scalar_action(&KoScalar::beta(1)).unwrap()
        );
        assert_eq!(a.gamma_shift(1).unwrap().scale(2), a.scalar_action(&KoScalar::alpha()).unwrap());
        assert_eq!(KoElement::one(1).gamma_shift(1), Err(Error::GammaOnScalar));
    }

    #[test]
    fn mismatched_degrees_do_not_add() {
        let a = sym(&[1], &[0], 0);
        let b = sym(&[1], &[0], 1);
        assert!(matches!(a.add(&b), Err(Error::DegreeMismatch(0, -2))));
        assert_eq!(a.add(&KoElement::zero(1, 7)).unwrap(), a);
    }
}
