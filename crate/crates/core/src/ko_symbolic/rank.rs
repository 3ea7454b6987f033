//! Rank bookkeeping for finite smash products of even projective spaces.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::exact_linalg::{rank, IntMatrix};
use crate::exponents::{Exponents, VertexSet};
use crate::ku_model::{KuElement, Truncation};

use super::element::KoElement;
use super::g1::{coordinate_product, g1_class};
use super::oracle::complexify;

/// ℤ-rank of the span of KU elements (all in the same truncation).
pub(crate) fn span_rank(elements: &[KuElement]) -> usize {
    let mut cols: BTreeMap<(i64, Exponents), usize> = BTreeMap::new();
    for u in elements {
        for (e, _) in u.terms() {
            let next = cols.len();
            cols.entry((u.s(), *e)).or_insert(next);
        }
    }
    if elements.is_empty() || cols.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<i128>> = elements
        .iter()
        .map(|u| {
            let mut row = vec![0i128; cols.len()];
            for (e, &c) in u.terms() {
                row[cols[&(u.s(), *e)]] = c;
            }
            row
        })
        .collect();
    rank(&IntMatrix::from_rows(&rows).expect("rectangular"))
}

/// Counts the KO^deg rank of `CP^{2n} ∧ (CP^{2n})_+^{m−1}` two ways, for
/// `n = window`.
///
/// The first entry is the ℤ-rank of the span of the complexified free-module
/// basis `γʲ X^e M_S^(s)` (1 ∈ S, `0 ≤ eᵢ < n`), where
/// `M_S^(s) = X_S^(s)·∏_{i∉S} Xᵢ`; the second is
/// `Σ_{k=1..n} rank K̃U^{deg+4k}` of the smash of the remaining `m − 1`
/// factors, by monomial enumeration.
pub fn smash_rank_two_ways(m: usize, degree: i64, window: usize) -> Result<(usize, usize)> {
    if m == 0 {
        return Err(crate::error::Error::Precondition("m must be at least 1".into()));
    }
    if window == 0 {
        return Ok((0, 0));
    }
    Ok((ko_side(m, degree, window)?, ku_side(m, degree, window)))
}

fn ko_side(m: usize, degree: i64, n: usize) -> Result<usize> {
    if degree.rem_euclid(2) != 0 {
        return Ok(0);
    }
    let s = (-degree / 2).rem_euclid(2);
    let j = (-degree - 2 * s) / 4;
    let trunc = Truncation::uniform(m, 2 * n as u32)?;
    let full = VertexSet::full(m);

    // X^e for every e ∈ [0, n)^m, built one coordinate at a time.
    let coords: Vec<KoElement> = (0..m)
        .map(|i| g1_class(m, VertexSet::singleton(i), 0))
        .collect::<Result<_>>()?;
    let mut powers = vec![KoElement::one(m)];
    for x in &coords {
        let mut next = Vec::with_capacity(powers.len() * n);
        for p in &powers {
            let mut acc = p.clone();
            for _ in 0..n {
                next.push(acc.clone());
                acc = acc.mul(x)?;
            }
        }
        powers = next;
    }

    let mut images = Vec::new();
    for set in full.subsets().filter(|t| t.contains(0)) {
        let base = g1_class(m, set, s)?.mul(&coordinate_product(m, full.difference(set))?)?;
        for p in &powers {
            let elt = p.mul(&base)?.gamma_shift(j)?;
            images.push(complexify(&elt, &trunc)?);
        }
    }
    Ok(span_rank(&images))
}

fn ku_side(m: usize, degree: i64, n: usize) -> usize {
    (1..=n as i64)
        .map(|k| reduced_ku_smash_rank(m - 1, degree + 4 * k, 2 * n as u32))
        .sum()
}

/// Rank of `K̃U^deg` of a smash of `factors` copies of `CP^d`: monomials
/// `vˢ x^a` with every `aᵢ ∈ [1, d]`; a smash of no factors is `S⁰`.
fn reduced_ku_smash_rank(factors: usize, degree: i64, d: u32) -> usize {
    if degree.rem_euclid(2) != 0 {
        return 0;
    }
    let mut count = 0usize;
    let mut a = vec![1u32; factors];
    loop {
        count += 1;
        let Some(pos) = a.iter().rposition(|&x| x < d) else {
            return count;
        };
        a[pos] += 1;
        for x in &mut a[pos + 1..] {
            *x = 1;
        }
    }
}
