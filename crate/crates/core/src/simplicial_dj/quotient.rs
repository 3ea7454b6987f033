use crate::error::{Error, Result};
use crate::ko_symbolic::{complexify, KoElement};
use crate::ku_model::{KuElement, Truncation};

use super::complex::SimplicialComplex;

fn check_vars(vars: usize, k: &SimplicialComplex) -> Result<()> {
    if vars != k.vertices() {
        return Err(Error::VariableMismatch(vars, k.vertices()));
    }
    Ok(())
}

/// Image in `KU*(DJ(K))`: drops every monomial whose support is a non-face.
///
/// This is the quotient map on canonical forms because eliminating `x̄`
/// never changes the support of a term.
pub fn sr_reduce_ku(a: &KuElement, k: &SimplicialComplex) -> Result<KuElement> {
    check_vars(a.vars(), k)?;
    Ok(a.filter_support(|s| k.is_face(s)))
}

/// Image in `KO*(DJ(K))`: drops every generator `[I,J]^(s)` with
/// `ε(I) ∪ ε(J)` a non-face. The scalar part is untouched.
pub fn sr_reduce_ko(a: &KoElement, k: &SimplicialComplex) -> Result<KoElement> {
    check_vars(a.vars(), k)?;
    Ok(a.filter_support(|s| k.is_face(s)))
}

/// Equality in `KO*(DJ(K))`, decided by complexifying `a − b` into the
/// truncated model and reducing by the KU Stanley–Reisner ideal.
pub fn dj_equal(a: &KoElement, b: &KoElement, k: &SimplicialComplex, trunc: &Truncation) -> Result<bool> {
    check_vars(a.vars(), k)?;
    let diff = a.sub(b)?;
    Ok(sr_reduce_ku(&complexify(&diff, trunc)?, k)?.is_zero())
}
