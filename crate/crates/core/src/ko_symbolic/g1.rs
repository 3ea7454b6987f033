//! The square-free classes `X_S^(s) = r(vˢ ∏_{i∈S} xᵢ)` and the two
//! families of product relations they satisfy.

use crate::error::{Error, Result};
use crate::exponents::{Exponents, VertexSet};

use super::element::{normalize_symbol, KoElement};
use super::scalar::KoScalar;

/// `X_S^(s)` in `m` variables. For `S = ∅` this is the scalar `r(vˢ)`
/// (`1 + (−1)ˢ` for s ∈ {0, 1}).
pub fn g1_class(m: usize, set: VertexSet, s: i64) -> Result<KoElement> {
    check_subset(m, set)?;
    if set.is_empty() {
        let scalar = KoScalar::realified_bott_power(s);
        return if scalar.is_zero() {
            Ok(KoElement::zero(m, -2 * s))
        } else {
            KoElement::from_scalar(m, scalar)
        };
    }
    Ok(normalize_symbol(Exponents::indicator(m, set), Exponents::zero(m), s))
}

/// `X_S^(s)` for s ∈ {0, 1, 2}, with `X_S^(2) = γX_S` built by the γ action.
fn class_upto_gamma(m: usize, set: VertexSet, s: i64) -> Result<KoElement> {
    if s == 2 && !set.is_empty() {
        return g1_class(m, set, 0)?.gamma_shift(1);
    }
    g1_class(m, set, s)
}

/// `∏_{i∈S} Xᵢ` (the unit for `S = ∅`).
pub fn coordinate_product(m: usize, set: VertexSet) -> Result<KoElement> {
    check_subset(m, set)?;
    let mut acc = KoElement::one(m);
    for i in set.iter() {
        acc = acc.mul(&g1_class(m, VertexSet::singleton(i), 0)?)?;
    }
    Ok(acc)
}

fn check_subset(m: usize, set: VertexSet) -> Result<()> {
    if !set.is_subset(VertexSet::full(m)) {
        return Err(Error::Precondition(format!("{set} is not a subset of {{1..{m}}}")));
    }
    Ok(())
}

fn parity(n: usize) -> i128 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Both sides of
/// `X_{A∪B}^(s) X_{A∪C}^(t) = ∏_{i∈A}Xᵢ·[Σ_{T⊆A} X_{T∪B∪C}^(s+t)
///   + (−1)^{s+|A∪B|} Σ_{S⊆B} (−1)^{|S|}(∏_{i∈S}Xᵢ) X_{C∪B∖S}^(s+t)]`.
pub fn relation_i_sides(
    m: usize,
    a: VertexSet,
    b: VertexSet,
    c: VertexSet,
    s: i64,
    t: i64,
) -> Result<(KoElement, KoElement)> {
    for (x, y) in [(a, b), (a, c), (b, c)] {
        if !x.is_disjoint(y) {
            return Err(Error::Overlap(x.labels(), y.labels()));
        }
    }
    if !(0..=1).contains(&s) || !(0..=1).contains(&t) {
        return Err(Error::Precondition(format!("s, t must lie in {{0,1}}, got {s}, {t}")));
    }
    let lhs = g1_class(m, a.union(b), s)?.mul(&g1_class(m, a.union(c), t)?)?;

    let st = s + t;
    let mut bracket = KoElement::zero(m, -2 * st);
    for sub in a.subsets() {
        bracket = bracket.add(&class_upto_gamma(m, sub.union(b).union(c), st)?)?;
    }
    let outer = parity(s as usize + a.union(b).len());
    for sub in b.subsets() {
        let term = coordinate_product(m, sub)?.mul(&class_upto_gamma(m, c.union(b.difference(sub)), st)?)?;
        bracket = bracket.add(&term.scale(outer * parity(sub.len())))?;
    }
    let rhs = coordinate_product(m, a)?.mul(&bracket)?;
    Ok((lhs, rhs))
}

/// Both sides of
/// `XᵢX_S^(s) = (−1)ˢ Σ_{T⊆S} (−1)^{|T|}(∏_{j∈S∖T}Xⱼ) X_{{i}∪T}^(s) + X_{{i}∪S}^(s)`
/// for `i < min S`, `|S| > 1` (`i` is 0-based).
pub fn relation_ii_sides(m: usize, i: usize, set: VertexSet, s: i64) -> Result<(KoElement, KoElement)> {
    if set.len() < 2 || set.min().is_some_and(|lo| i >= lo) {
        return Err(Error::Precondition(format!(
            "relation (II) needs i < min(S) and |S| > 1, got i = {}, S = {set}",
            i + 1
        )));
    }
    if !(0..=1).contains(&s) {
        return Err(Error::Precondition(format!("s must lie in {{0,1}}, got {s}")));
    }
    let xi = VertexSet::singleton(i);
    let lhs = g1_class(m, xi, 0)?.mul(&g1_class(m, set, s)?)?;
    let mut sum = KoElement::zero(m, -2 * s);
    for sub in set.subsets() {
        let term = coordinate_product(m, set.difference(sub))?.mul(&g1_class(m, xi.union(sub), s)?)?;
        sum = sum.add(&term.scale(parity(sub.len())))?;
    }
    let rhs = sum.scale(parity(s as usize)).add(&g1_class(m, xi.union(set), s)?)?;
    Ok((lhs, rhs))
}
