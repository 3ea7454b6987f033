use std::fmt;

use crate::error::{Error, Result};
use crate::exponents::VertexSet;
use crate::ko_symbolic::{ko_equal, KoElement};
use crate::ku_model::Truncation;

use super::complex::SimplicialComplex;

/// A family `(u_σ)` indexed by the facets of K, with `u_σ` supported on σ.
///
/// Elements keep the global coordinates of BT^m; restricting to σ means
/// discarding generators whose support leaves σ.
#[derive(Clone, PartialEq, Eq)]
pub struct LimitTuple {
    complex: SimplicialComplex,
    parts: Vec<KoElement>,
}

fn restrict(a: &KoElement, face: VertexSet) -> KoElement {
    a.filter_support(|s| s.is_subset(face))
}

/// The image of `a` under `KO*(BT^m) → lim KO*(BT^σ)`.
pub fn limit_tuple(a: &KoElement, k: &SimplicialComplex) -> Result<LimitTuple> {
    if a.vars() != k.vertices() {
        return Err(Error::VariableMismatch(a.vars(), k.vertices()));
    }
    Ok(LimitTuple {
        complex: k.clone(),
        parts: k.facets().iter().map(|&f| restrict(a, f)).collect(),
    })
}

/// Facetwise product.
pub fn tuple_mul(a: &LimitTuple, b: &LimitTuple) -> Result<LimitTuple> {
    if a.complex != b.complex {
        return Err(Error::ComplexMismatch);
    }
    let parts = a
        .parts
        .iter()
        .zip(&b.parts)
        .zip(a.complex.facets())
        .map(|((x, y), &f)| Ok(restrict(&x.mul(y)?, f)))
        .collect::<Result<_>>()?;
    Ok(LimitTuple {
        complex: a.complex.clone(),
        parts,
    })
}

impl LimitTuple {
    /// Builds a tuple from explicit components (one per facet, in the
    /// complex's facet order); components are restricted to their facet.
    pub fn from_parts(k: &SimplicialComplex, parts: Vec<KoElement>) -> Result<Self> {
        if parts.len() != k.facets().len() {
            return Err(Error::Shape(format!("{} components for {} facets", parts.len(), k.facets().len())));
        }
        if let Some(p) = parts.iter().find(|p| p.vars() != k.vertices()) {
            return Err(Error::VariableMismatch(p.vars(), k.vertices()));
        }
        let parts = parts.iter().zip(k.facets()).map(|(p, &f)| restrict(p, f)).collect();
        Ok(LimitTuple {
            complex: k.clone(),
            parts,
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn parts(&self) -> &[KoElement] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(KoElement::is_zero)
    }

    /// Restrictions to every pairwise facet intersection agree, compared
    /// symbolically or through the truncated oracle.
    pub fn is_compatible(&self, trunc: Option<&Truncation>) -> Result<bool> {
        let facets = self.complex.facets();
        for a in 0..facets.len() {
            for b in a + 1..facets.len() {
                let common = facets[a].intersection(facets[b]);
                let (x, y) = (restrict(&self.parts[a], common), restrict(&self.parts[b], common));
                if x.is_zero() && y.is_zero() {
                    continue;
                }
                if x.degree() != y.degree() && !x.is_zero() && !y.is_zero() {
                    return Ok(false);
                }
                if !ko_equal(&x, &y, trunc)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl fmt::Display for LimitTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for LimitTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
