//! Seeded generators shared by the integration suites.
#![allow(dead_code)]

use kotoric::ko_symbolic::normal_symbols;
use kotoric::{KoElement, KoScalar, KuElement, Truncation, VertexSet};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn set(labels: &[usize]) -> VertexSet {
    VertexSet::from_labels(labels).expect("labels in range")
}

pub fn exps(rng: &mut ChaCha8Rng, m: usize, bound: u32) -> Vec<u32> {
    (0..m).map(|_| rng.gen_range(0..=bound)).collect()
}

pub fn nonzero_coeff(rng: &mut ChaCha8Rng) -> i128 {
    let c = rng.gen_range(1..=4);
    if rng.gen_bool(0.5) {
        c
    } else {
        -c
    }
}

/// A combination of up to `terms` distinct normal symbols with entries at most
/// `bound`, plus (when `with_scalar`) a multiple of `r(vˢ)`.
pub fn ko_element(rng: &mut ChaCha8Rng, m: usize, bound: u32, s: i64, terms: usize, with_scalar: bool) -> KoElement {
    ko_element_from(rng, m, &normal_symbols(m, bound, s), s, terms, with_scalar)
}

pub fn ko_element_from(
    rng: &mut ChaCha8Rng,
    m: usize,
    pool: &[kotoric::G2Symbol],
    s: i64,
    terms: usize,
    with_scalar: bool,
) -> KoElement {
    let mut acc = KoElement::zero(m, -2 * s);
    for g in pool.choose_multiple(rng, terms.min(pool.len())) {
        let sym = KoElement::symbol(&g.i.to_vec(), &g.j.to_vec(), g.s).expect("normal symbol");
        acc = acc.add(&sym.scale(nonzero_coeff(rng))).expect("same degree");
    }
    let bott = KoScalar::realified_bott_power(s);
    if with_scalar && !bott.is_zero() {
        let c = KoElement::from_scalar(m, bott.scale(nonzero_coeff(rng))).expect("scalar");
        acc = acc.add(&c).expect("same degree");
    }
    acc
}

/// A random canonical KU element `vˢ·Σ cₑ xᵉ` inside `trunc`.
pub fn ku_element(rng: &mut ChaCha8Rng, trunc: &Truncation, s: i64, terms: usize) -> KuElement {
    let items: Vec<(Vec<u32>, i128)> = (0..terms)
        .map(|_| {
            let e = trunc.degrees().iter().map(|&d| rng.gen_range(0..=d)).collect();
            (e, nonzero_coeff(rng))
        })
        .collect();
    KuElement::from_terms(trunc, s, items).expect("inside truncation")
}
