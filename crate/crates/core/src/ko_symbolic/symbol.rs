//! The generators `[I,J]^(s) = r(vˢ x^I x̄^J)` and their normal form.

use std::cmp::{Ordering, Reverse};
use std::collections::BTreeMap;

use crate::exponents::Exponents;
use crate::ku_model::{checked_add, checked_mul};

use super::scalar::KoScalar;

/// A normal-form generator `[I,J]^(s)`: `I·J = 0`, `(I,J) ≠ (0,0)`, and the
/// first nonzero coordinate of `I + J` belongs to `I`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct G2Symbol {
    pub i: Exponents,
    pub j: Exponents,
    pub s: i64,
}

impl G2Symbol {
    /// Wraps `(I, J, s)` without normalizing; see [`G2Symbol::is_normal`].
    pub fn new(i: Exponents, j: Exponents, s: i64) -> Self {
        G2Symbol { i, j, s }
    }

    pub fn vars(&self) -> usize {
        self.i.len()
    }

    /// ε(I) ∪ ε(J).
    pub fn support(&self) -> crate::exponents::VertexSet {
        self.i.support().union(self.j.support())
    }

    pub fn is_normal(&self) -> bool {
        if self.i.len() != self.j.len() || self.i.dot(&self.j) != 0 {
            return false;
        }
        match (0..self.i.len()).find(|&k| self.i.get(k) + self.j.get(k) > 0) {
            None => false,
            Some(l) => self.j.get(l) == 0,
        }
    }

    pub fn degree(&self) -> i64 {
        -2 * self.s
    }

    pub fn with_s(self, s: i64) -> Self {
        G2Symbol { s, ..self }
    }
}

// Display order: larger I first, then smaller J.
impl Ord for G2Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.s, Reverse(self.i), self.j).cmp(&(other.s, Reverse(other.i), other.j))
    }
}

impl PartialOrd for G2Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Accumulated output of normalization: reduced symbols plus the scalar
/// coming from `[0,0]^(s) = r(vˢ)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalSum {
    pub scalar: KoScalar,
    pub reduced: BTreeMap<G2Symbol, i128>,
}

impl NormalSum {
    pub(crate) fn add_symbol(&mut self, sym: G2Symbol, c: i128) {
        if c == 0 {
            return;
        }
        let slot = self.reduced.entry(sym).or_insert(0);
        *slot = checked_add(*slot, c);
        if *slot == 0 {
            self.reduced.remove(&sym);
        }
    }
}

/// Every normal-form generator `[I,J]^(s)` in `vars` variables with all
/// entries of I and J at most `bound`.
pub fn normal_symbols(vars: usize, bound: u32, s: i64) -> Vec<G2Symbol> {
    // Per coordinate, (iₖ, jₖ) has iₖjₖ = 0.
    let pairs: Vec<(u32, u32)> = (0..=bound)
        .map(|a| (a, 0))
        .chain((1..=bound).map(|b| (0, b)))
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; vars];
    loop {
        let i: Vec<u32> = idx.iter().map(|&k| pairs[k].0).collect();
        let j: Vec<u32> = idx.iter().map(|&k| pairs[k].1).collect();
        let sym = G2Symbol::new(Exponents::from_slice(&i), Exponents::from_slice(&j), s);
        if sym.is_normal() {
            out.push(sym);
        }
        let Some(pos) = idx.iter().rposition(|&k| k + 1 < pairs.len()) else {
            break;
        };
        idx[pos] += 1;
        for k in &mut idx[pos + 1..] {
            *k = 0;
        }
    }
    out.sort();
    out
}

/// Which coordinate relation (B) splits on when several qualify.
pub trait PivotRule {
    fn pick(&mut self, candidates: &[usize]) -> usize;
}

/// Always the smallest index with `iₖjₖ ≠ 0`.
pub struct SmallestPivot;

impl PivotRule for SmallestPivot {
    fn pick(&mut self, candidates: &[usize]) -> usize {
        candidates[0]
    }
}

impl<F: FnMut(&[usize]) -> usize> PivotRule for F {
    fn pick(&mut self, candidates: &[usize]) -> usize {
        self(candidates)
    }
}

/// Adds `coeff · [I,J]^(s)` in normal form to `out`.
///
/// Relation (B) `[I,J] = −[I′,J] − [I,J′]` is applied until `I·J = 0`;
/// each application lowers `|I| + |J|`, so processing the worklist in
/// decreasing total degree visits every intermediate pair once. Relation (A)
/// `[I,J]^(s) = (−1)ˢ[J,I]^(s)` then fixes the leading coordinate.
pub fn normalize_into<P: PivotRule>(
    i: Exponents,
    j: Exponents,
    s: i64,
    coeff: i128,
    pivot: &mut P,
    out: &mut NormalSum,
) {
    assert_eq!(i.len(), j.len(), "exponent vectors of different length");
    normalize_many_into([(i, j, coeff)], s, pivot, out);
}

/// Adds `Σ c·[I,J]^(s)` in normal form to `out`, sharing one worklist so
/// intermediate pairs common to several inputs are split only once.
pub(crate) fn normalize_many_into<P: PivotRule>(
    terms: impl IntoIterator<Item = (Exponents, Exponents, i128)>,
    s: i64,
    pivot: &mut P,
    out: &mut NormalSum,
) {
    let mut work: BTreeMap<(Reverse<u32>, Exponents, Exponents), i128> = BTreeMap::new();
    for (i, j, c) in terms {
        if c != 0 {
            let slot = work.entry((Reverse(i.total() + j.total()), i, j)).or_insert(0);
            *slot = checked_add(*slot, c);
        }
    }
    let mut candidates = Vec::new();
    while let Some(((Reverse(total), a, b), c)) = work.pop_first() {
        if c == 0 {
            continue;
        }
        candidates.clear();
        candidates.extend((0..a.len()).filter(|&k| a.get(k) != 0 && b.get(k) != 0));
        if !candidates.is_empty() {
            let k = pivot.pick(&candidates);
            debug_assert!(candidates.contains(&k));
            let a1 = a.with(k, a.get(k) - 1);
            let b1 = b.with(k, b.get(k) - 1);
            for key in [(Reverse(total - 1), a1, b), (Reverse(total - 1), a, b1)] {
                let slot = work.entry(key).or_insert(0);
                *slot = checked_add(*slot, -c);
            }
            continue;
        }
        emit_reduced(a, b, s, c, out);
    }
}

/// Final step for a pair with `I·J = 0`.
fn emit_reduced(i: Exponents, j: Exponents, s: i64, c: i128, out: &mut NormalSum) {
    let lead = (0..i.len()).find(|&k| i.get(k) + j.get(k) > 0);
    match lead {
        None => {
            out.scalar = out.scalar.add(&KoScalar::realified_bott_power(s).scale(c));
        }
        Some(l) if j.get(l) > 0 => {
            let sign = if s.rem_euclid(2) == 0 { 1 } else { -1 };
            out.add_symbol(G2Symbol::new(j, i, s), checked_mul(c, sign));
        }
        Some(_) => out.add_symbol(G2Symbol::new(i, j, s), c),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(v: &[u32]) -> Exponents {
        Exponents::from_slice(v)
    }

    fn normalize(i: &[u32], j: &[u32], s: i64) -> NormalSum {
        let mut out = NormalSum::default();
        normalize_into(ex(i), ex(j), s, 1, &mut SmallestPivot, &mut out);
        out
    }

    #[test]
    fn relation_a_swaps_with_sign() {
        let n = normalize(&[0], &[1], 1);
        assert!(n.scalar.is_zero());
        assert_eq!(n.reduced.len(), 1);
        assert_eq!(n.reduced[&G2Symbol::new(ex(&[1]), ex(&[0]), 1)], -1);
    }

    #[test]
    fn x_times_conjugate_realifies_to_minus_two_x() {
        // [1,1] = -[0,1] - [1,0] = -2[1,0] at s = 0.
        let n = normalize(&[1], &[1], 0);
        assert_eq!(n.reduced.len(), 1);
        assert_eq!(n.reduced[&G2Symbol::new(ex(&[1]), ex(&[0]), 0)], -2);
    }

    #[test]
    fn empty_symbol_is_a_scalar() {
        assert_eq!(normalize(&[0], &[0], 2).scalar, KoScalar::alpha());
        assert!(normalize(&[0], &[0], 2).reduced.is_empty());
        assert!(normalize(&[0, 0], &[0, 0], 1).scalar.is_zero());
        assert_eq!(normalize(&[0], &[0], 0).scalar, KoScalar::integer(2));
    }

    #[test]
    fn normal_form_predicate() {
        assert!(G2Symbol::new(ex(&[1, 0]), ex(&[0, 1]), 0).is_normal());
        assert!(!G2Symbol::new(ex(&[0, 1]), ex(&[1, 0]), 0).is_normal());
        assert!(!G2Symbol::new(ex(&[1, 1]), ex(&[0, 1]), 0).is_normal());
        assert!(!G2Symbol::new(ex(&[0, 0]), ex(&[0, 0]), 0).is_normal());
        assert!(G2Symbol::new(ex(&[0, 2]), ex(&[0, 0]), 3).is_normal());
    }

    #[test]
    fn enumerates_normal_symbols() {
        // m = 1: [a,0] for a = 1..=b.
        assert_eq!(normal_symbols(1, 3, 0).len(), 3);
        // m = 2, bound 1: leading (1,0) then any of three, or (0,0) then (1,0).
        let syms = normal_symbols(2, 1, 0);
        assert!(syms.iter().all(G2Symbol::is_normal));
        assert_eq!(syms.len(), 4);
    }

    #[test]
    fn output_is_always_normal() {
        for a in 0..4u32 {
            for b in 0..4u32 {
                for c in 0..3u32 {
                    for d in 0..3u32 {
                        for s in -1..3 {
                            let n = normalize(&[a, c], &[b, d], s);
                            assert!(n.reduced.keys().all(G2Symbol::is_normal));
                        }
                    }
                }
            }
        }
    }
}
