//! Complexification `c: KO* → KU*` and realification `r: KU* → KO*`.
//!
//! `c` is injective, so comparing complexified images in a truncated KU
//! model is a sound (truncation-limited) equality test.

use crate::error::{Error, Result};
use crate::exponents::Exponents;
use crate::ku_model::{checked_mul, ku_monomial_exps, monomial_series, KuElement, Truncation};

use super::element::KoElement;
use super::scalar::{KoScalar, ScalarToken};
use super::rank::span_rank;
use super::symbol::{normal_symbols, normalize_into, NormalSum, SmallestPivot};

fn sign(s: i64) -> i128 {
    if s.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `s` such that KO-degree `degree` sits in `KU^{-2s}`, for odd degrees any
/// value works since the image is zero.
fn ku_index(degree: i64) -> i64 {
    -degree.div_euclid(2)
}

fn check_vars(vars: usize, trunc: &Truncation) -> Result<()> {
    if vars != trunc.vars() {
        return Err(Error::VariableMismatch(vars, trunc.vars()));
    }
    Ok(())
}

/// `c(βᵗ) = v^{4t}`, `c(αβᵗ) = 2v^{4t+2}`, `c(e) = 0`.
pub fn complexify_scalar(lambda: &KoScalar, trunc: &Truncation) -> KuElement {
    let mut out: Option<KuElement> = None;
    for (&t, &c) in lambda.terms() {
        let term = match t {
            ScalarToken::Beta(p) => KuElement::constant(trunc, 4 * p, c),
            ScalarToken::AlphaBeta(p) => KuElement::constant(trunc, 4 * p + 2, checked_mul(c, 2)),
            ScalarToken::EBeta(_) | ScalarToken::E2Beta(_) => continue,
        };
        out = Some(match out {
            None => term,
            Some(acc) => acc.add(&term).expect("homogeneous scalar"),
        });
    }
    out.unwrap_or_else(|| KuElement::zero(trunc, 0))
}

/// `c([I,J]^(s)) = vˢx^I x̄^J + (−1)ˢ vˢ x̄^I x^J` for an arbitrary
/// (not necessarily normal) pair.
pub fn complexify_symbol_raw(i: &[u32], j: &[u32], s: i64, trunc: &Truncation) -> Result<KuElement> {
    check_vars(i.len(), trunc)?;
    if i.len() != j.len() {
        return Err(Error::VariableMismatch(i.len(), j.len()));
    }
    let (Some(ie), Some(je)) = (Exponents::try_from_slice(i), Exponents::try_from_slice(j)) else {
        return Err(Error::Precondition(format!("exponent vectors {i:?}, {j:?} out of range")));
    };
    Ok(symbol_image(&ie, &je, s, trunc))
}

fn symbol_image(i: &Exponents, j: &Exponents, s: i64, trunc: &Truncation) -> KuElement {
    let a = ku_monomial_exps(i, j, s, trunc);
    let b = ku_monomial_exps(j, i, s, trunc).scale(sign(s));
    a.add(&b).expect("same truncation and degree")
}

/// The complexification of a KO element into the truncated KU model.
pub fn complexify(a: &KoElement, trunc: &Truncation) -> Result<KuElement> {
    check_vars(a.vars(), trunc)?;
    let s = ku_index(a.degree());
    let mut out = KuElement::zero(trunc, s);
    if a.degree().rem_euclid(2) != 0 {
        return Ok(out);
    }
    if !a.scalar().is_zero() {
        out = out.add(&complexify_scalar(a.scalar(), trunc))?;
    }
    for (sym, &c) in a.symbols() {
        let flip = checked_mul(c, sign(sym.s));
        for (e, k) in monomial_series(&sym.i, &sym.j, trunc) {
            out.add_term(e, checked_mul(c, k));
        }
        for (e, k) in monomial_series(&sym.j, &sym.i, trunc) {
            out.add_term(e, checked_mul(flip, k));
        }
    }
    Ok(out)
}

/// Realification: each canonical monomial `c·vˢx^E` maps to the normal form
/// of `c·[E,0]^(s)`.
pub fn realify(u: &KuElement) -> KoElement {
    let m = u.vars();
    let mut sum = NormalSum::default();
    let zero = Exponents::zero(m);
    for (e, &c) in u.terms() {
        normalize_into(*e, zero, u.s(), c, &mut SmallestPivot, &mut sum);
    }
    KoElement::from_normal_sum(m, -2 * u.s(), sum)
}

/// Equality of KO elements.
///
/// With a truncation, both sides are complexified and compared in the KU
/// model (authoritative for quotients). Without one, normal forms are
/// compared syntactically, which is sound because finite sums of distinct
/// normal-form generators are never zero.
pub fn ko_equal(a: &KoElement, b: &KoElement, trunc: Option<&Truncation>) -> Result<bool> {
    if a.vars() != b.vars() {
        return Err(Error::VariableMismatch(a.vars(), b.vars()));
    }
    if a.degree() != b.degree() && !a.is_zero() && !b.is_zero() {
        return Err(Error::DegreeMismatch(a.degree(), b.degree()));
    }
    match trunc {
        None => Ok(a == b),
        Some(t) => Ok(complexify(a, t)? == complexify(b, t)?),
    }
}

/// True when the generators `[I,J]^(s)` with entries at most `bound` have
/// linearly independent images in `trunc`, so that no truncation-induced
/// relation can hold among them.
pub fn faithful_window(vars: usize, bound: u32, s: i64, trunc: &Truncation) -> Result<bool> {
    check_vars(vars, trunc)?;
    let syms = normal_symbols(vars, bound, s);
    let images: Vec<KuElement> = syms.iter().map(|g| symbol_image(&g.i, &g.j, g.s, trunc)).collect();
    Ok(span_rank(&images) == syms.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(d: &[u32]) -> Truncation {
        Truncation::new(d.to_vec()).unwrap()
    }

    #[test]
    fn coordinate_class_image() {
        let x = KoElement::symbol(&[1], &[0], 0).unwrap();
        let img = complexify(&x, &t(&[4])).unwrap();
        let expected = KuElement::from_terms(&t(&[4]), 0, [(vec![2], 1), (vec![3], -1), (vec![4], 1)]).unwrap();
        assert_eq!(img, expected);
    }

    #[test]
    fn scalar_images() {
        let tr = t(&[2]);
        let alpha = KoElement::from_scalar(1, KoScalar::alpha()).unwrap();
        assert_eq!(complexify(&alpha, &tr).unwrap(), KuElement::constant(&tr, 2, 2));
        let e = KoElement::from_scalar(1, KoScalar::e()).unwrap();
        assert!(complexify(&e, &tr).unwrap().is_zero());
    }

    #[test]
    fn realify_examples() {
        let tr = t(&[4]);
        assert_eq!(realify(&KuElement::constant(&tr, 2, 1)).scalar(), &KoScalar::alpha());
        assert!(realify(&KuElement::constant(&tr, 1, 1)).is_zero());
        assert_eq!(
            realify(&KuElement::variable(&tr, 0, 0)),
            KoElement::symbol(&[1], &[0], 0).unwrap()
        );
    }

    #[test]
    fn infinite_relation_in_truncation() {
        for n in [4u32, 6, 8] {
            let tr = t(&[n]);
            let mut a = KoElement::symbol(&[1], &[0], 0).unwrap().scale(2);
            for k in 2..=n {
                let term = KoElement::symbol(&[k], &[0], 0).unwrap();
                a = a.add(&term.scale(if k % 2 == 0 { -1 } else { 1 })).unwrap();
            }
            assert!(ko_equal(&a, &KoElement::zero(1, 0), Some(&tr)).unwrap());
            assert!(!ko_equal(&a, &KoElement::zero(1, 0), None).unwrap());
        }
    }

    #[test]
    fn faithfulness_of_windows() {
        // In one variable every image lies in span{x², …, x^d}, so more than
        // d − 1 generators are necessarily dependent.
        assert!(faithful_window(1, 3, 0, &t(&[8])).unwrap());
        assert!(!faithful_window(1, 4, 0, &t(&[4])).unwrap());
        assert!(faithful_window(2, 2, 1, &t(&[6, 6])).unwrap());
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let a = KoElement::symbol(&[1], &[0], 0).unwrap();
        let b = KoElement::symbol(&[1], &[0], 1).unwrap();
        assert!(ko_equal(&a, &b, None).is_err());
    }
}
