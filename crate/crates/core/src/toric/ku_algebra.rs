use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact_linalg::{hermite_rows, rank, IntMatrix};
use crate::exponents::Exponents;
use crate::ko_symbolic::{complexify, KoElement};
use crate::ku_model::{checked_add, checked_mul, KuElement, Truncation};

use super::characteristic::QuasitoricManifold;
use super::mod2::{bb_numbers, BbNumbers};

/// `KU⁰(M)` as a finitely generated abelian group with integer normal forms.
///
/// Monomials of total degree below the window span; relations are the
/// non-face monomials (dropped outright) and the classes
/// `∏ᵢ(1+xᵢ)^{λᵢⱼ} − 1` times every monomial, Hermite-reduced. Every
/// reduced class is nilpotent of order n + 1, so a window of n + 1 is exact;
/// the rank is checked against the facet count.
#[derive(Clone, Debug)]
pub struct FiniteKuAlgebra {
    manifold: QuasitoricManifold,
    window: usize,
    monomials: Vec<Exponents>,
    index: HashMap<Exponents, usize>,
    relations: IntMatrix,
    pivots: Vec<usize>,
    trunc: Truncation,
    generators: Vec<KuElement>,
    bb: BbNumbers,
}

type Series = BTreeMap<Exponents, i128>;

/// `(1 + xᵢ)^k` below total degree `w`, negative k via the binomial series.
fn binomial_series(m: usize, i: usize, k: i64, w: u32) -> Series {
    let mut out = Series::new();
    let mut c: i128 = 1;
    for n in 0..w {
        if c == 0 {
            break;
        }
        out.insert(Exponents::unit(m, i).with(i, n), c);
        // C(k, n+1) = C(k, n)·(k − n)/(n + 1), exact at each step.
        c = checked_mul(c, (k - n as i64) as i128) / (n as i128 + 1);
    }
    out
}

fn series_mul(a: &Series, b: &Series, w: u32) -> Series {
    let mut out = Series::new();
    for (ea, &ca) in a {
        for (eb, &cb) in b {
            if ea.total() + eb.total() >= w {
                continue;
            }
            let slot = out.entry(ea.add(eb)).or_insert(0);
            *slot = checked_add(*slot, checked_mul(ca, cb));
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Builds the model with monomials of total degree `< window`.
pub fn manifold_ku(mfd: &QuasitoricManifold, window: usize) -> Result<FiniteKuAlgebra> {
    let m = mfd.m();
    let k = mfd.complex();
    let w = u32::try_from(window).map_err(|_| Error::Precondition("window too large".into()))?;
    let monomials: Vec<Exponents> = (0..w)
        .flat_map(|d| Exponents::all_with_total(m, d))
        .filter(|e| k.is_face(e.support()))
        .collect();
    let index: HashMap<Exponents, usize> = monomials.iter().enumerate().map(|(i, e)| (*e, i)).collect();

    let d = (window.saturating_sub(1).max(2) as u32).next_multiple_of(2);
    let trunc = Truncation::uniform(m, d)?;
    let mut generators = Vec::with_capacity(mfd.n());
    let mut rows: Vec<Vec<i128>> = Vec::new();
    for j in 0..mfd.n() {
        let mut g: Series = [(Exponents::zero(m), 1i128)].into_iter().collect();
        for i in 0..m {
            g = series_mul(&g, &binomial_series(m, i, mfd.lambda().entry(i, j), w), w);
        }
        let zero = Exponents::zero(m);
        let c0 = g.get(&zero).copied().unwrap_or(0) - 1;
        if c0 == 0 {
            g.remove(&zero);
        } else {
            g.insert(zero, c0);
        }
        generators.push(KuElement::from_terms(&trunc, 0, g.iter().map(|(e, &c)| (e.to_vec(), c)))?);
        for mu in &monomials {
            let mut row = vec![0i128; monomials.len()];
            let mut any = false;
            for (e, &c) in &g {
                if let Some(&col) = index.get(&mu.add(e)) {
                    row[col] = checked_add(row[col], c);
                    any = true;
                }
            }
            if any && row.iter().any(|&c| c != 0) {
                rows.push(row);
            }
        }
    }
    let lattice = IntMatrix::from_rows_with_cols(&rows, monomials.len())?;
    let (relations, pivots) = hermite_rows(&lattice);
    let rank = monomials.len() - pivots.len();
    let expected = k.facets().len();
    if rank != expected {
        return Err(Error::WindowTooSmall { window, rank, expected });
    }
    Ok(FiniteKuAlgebra {
        manifold: mfd.clone(),
        window,
        monomials,
        index,
        relations,
        pivots,
        trunc,
        generators,
        bb: bb_numbers(mfd),
    })
}

impl FiniteKuAlgebra {
    pub fn manifold(&self) -> &QuasitoricManifold {
        &self.manifold
    }

    pub fn window(&self) -> usize {
        self.window
    }

    /// Free rank of the quotient.
    pub fn rank(&self) -> usize {
        self.monomials.len() - self.pivots.len()
    }

    /// Monomials standing for the non-pivot generators of the quotient.
    pub fn basis_monomials(&self) -> Vec<Exponents> {
        (0..self.monomials.len())
            .filter(|c| !self.pivots.contains(c))
            .map(|c| self.monomials[c])
            .collect()
    }

    /// The truncation used when complexifying KO elements into the model.
    pub fn truncation(&self) -> &Truncation {
        &self.trunc
    }

    /// `∏ᵢ(1+xᵢ)^{λᵢⱼ} − 1` for j = 1..n, truncated below the window.
    pub fn ideal_generators(&self) -> &[KuElement] {
        &self.generators
    }

    pub fn bb_numbers(&self) -> &BbNumbers {
        &self.bb
    }

    pub fn is_sq2_acyclic(&self) -> bool {
        self.bb.is_acyclic()
    }

    fn vector(&self, u: &KuElement) -> Result<Vec<BigInt>> {
        if u.vars() != self.manifold.m() {
            return Err(Error::VariableMismatch(u.vars(), self.manifold.m()));
        }
        if u.trunc().degrees().iter().any(|&d| (d as usize) + 1 < self.window) {
            return Err(Error::Precondition(format!(
                "truncation {:?} loses terms below the window {}",
                u.trunc().degrees(),
                self.window
            )));
        }
        let mut v = vec![BigInt::zero(); self.monomials.len()];
        for (e, &c) in u.terms() {
            if let Some(&col) = self.index.get(e) {
                v[col] += c;
            }
        }
        Ok(v)
    }

    fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        for (r, &c) in self.pivots.iter().enumerate() {
            let row = self.relations.row(r);
            let q = v[c].div_floor(&row[c]);
            if q.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(row).skip(c) {
                *x -= &q * y;
            }
        }
        v
    }

    /// Canonical coordinates of the class of `u` (the `v`-power is ignored:
    /// `v` is a unit).
    pub fn normal_form(&self, u: &KuElement) -> Result<Vec<BigInt>> {
        Ok(self.reduce(self.vector(u)?))
    }

    pub fn is_zero_class(&self, u: &KuElement) -> Result<bool> {
        Ok(self.normal_form(u)?.iter().all(Zero::is_zero))
    }

    /// The element of `KU⁰` with the given coordinates.
    pub fn element(&self, coords: &[BigInt]) -> Result<KuElement> {
        let terms = self.monomials.iter().zip(coords).filter(|(_, c)| !c.is_zero()).map(|(e, c)| {
            let c = i128::try_from(c).map_err(|_| Error::Precondition("coefficient exceeds i128".into()))?;
            Ok((e.to_vec(), c))
        });
        KuElement::from_terms(&self.trunc, 0, terms.collect::<Result<Vec<_>>>()?)
    }

    /// Normal form of a product.
    pub fn product(&self, a: &KuElement, b: &KuElement) -> Result<Vec<BigInt>> {
        self.normal_form(&a.mul(b)?)
    }

    fn require_acyclic(&self) -> Result<()> {
        if self.is_sq2_acyclic() {
            Ok(())
        } else {
            Err(Error::NotSq2Acyclic(self.bb.s.clone()))
        }
    }
}

/// Equality in `KO*(M)` for an Sq²-acyclic M: `a − b` is complexified and
/// tested for membership in `I_SR + J` in the finite KU model.
///
/// This is complete because `c(w) ∈ J` gives `2w ∈ r(J)` and the quotient
/// has no additive torsion.
pub fn manifold_ko_equal(a: &KoElement, b: &KoElement, model: &FiniteKuAlgebra) -> Result<bool> {
    model.require_acyclic()?;
    if a.vars() != model.manifold.m() {
        return Err(Error::VariableMismatch(a.vars(), model.manifold.m()));
    }
    let diff = a.sub(b)?;
    model.is_zero_class(&complexify(&diff, &model.trunc)?)
}

/// Rank of `KO^degree(M)`, read off as the rank of the image of
/// `c∘r = 1 + conjugation` on `KU^degree(M)`.
pub fn manifold_ko_rank(model: &FiniteKuAlgebra, degree: i64) -> Result<usize> {
    model.require_acyclic()?;
    if degree.rem_euclid(2) != 0 {
        return Ok(0);
    }
    let sign: i128 = if (degree / 2).rem_euclid(2) == 0 { 1 } else { -1 };
    let m = model.manifold.m();
    let mut rows: Vec<Vec<BigInt>> = model.relations.row_vecs().to_vec();
    for mu in &model.monomials {
        let u = KuElement::from_terms(&model.trunc, 0, [(mu.to_vec(), 1)])?;
        debug_assert_eq!(u.vars(), m);
        let image = u.add(&u.conjugate().scale(sign))?;
        rows.push(model.vector(&image)?);
    }
    let stacked = IntMatrix::from_big_rows(rows, model.monomials.len())?;
    Ok(rank(&stacked) - model.pivots.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponents::VertexSet;
    use crate::ko_symbolic::{g1_class, realify};
    use crate::toric::fixtures;

    #[test]
    fn binomial_series_values() {
        let s = binomial_series(1, 0, -1, 5);
        let coeffs: Vec<i128> = (0..5).map(|n| s[&Exponents::from_slice(&[n])]).collect();
        assert_eq!(coeffs, vec![1, -1, 1, -1, 1]);
        let s = binomial_series(1, 0, 2, 5);
        assert_eq!(s.len(), 3);
        assert_eq!(s[&Exponents::from_slice(&[1])], 2);
    }

    #[test]
    fn ranks_match_vertex_counts() {
        assert_eq!(manifold_ku(&fixtures::cp(2), 3).unwrap().rank(), 3);
        assert_eq!(manifold_ku(&fixtures::cp1_x_cp1(), 3).unwrap().rank(), 4);
        assert_eq!(manifold_ku(&fixtures::cp(1), 2).unwrap().rank(), 2);
        assert_eq!(manifold_ku(&fixtures::point(), 1).unwrap().rank(), 1);
        assert!(matches!(
            manifold_ku(&fixtures::cp(2), 2),
            Err(Error::WindowTooSmall { expected: 3, .. })
        ));
    }

    #[test]
    fn quotient_map_is_multiplicative() {
        let model = manifold_ku(&fixtures::cp(2), 4).unwrap();
        let t = model.truncation().clone();
        let x1 = KuElement::variable(&t, 0, 0);
        let x3 = KuElement::variable(&t, 0, 2);
        let a = x1.add(&x3.scale(3)).unwrap();
        let b = x3.mul(&x3).unwrap().add(&x1).unwrap();
        let direct = model.product(&a, &b).unwrap();
        let na = model.element(&model.normal_form(&a).unwrap()).unwrap();
        let nb = model.element(&model.normal_form(&b).unwrap()).unwrap();
        assert_eq!(model.product(&na, &nb).unwrap(), direct);
    }

    #[test]
    fn ko_equality_over_cp2() {
        let model = manifold_ku(&fixtures::cp(2), 3).unwrap();
        let x1 = g1_class(3, VertexSet::singleton(0), 0).unwrap();
        let x12 = g1_class(3, VertexSet::from_indices([0, 1]), 0).unwrap();
        assert!(!manifold_ko_equal(&x1, &x12, &model).unwrap());
        assert!(manifold_ko_equal(&x1, &x1, &model).unwrap());
        // (1 + x₁)(1 + x₃)⁻¹ = 1 forces x₁ = x₃.
        let t = model.truncation().clone();
        let rel = KuElement::variable(&t, 0, 0).sub(&KuElement::variable(&t, 0, 2)).unwrap();
        assert!(model.is_zero_class(&rel).unwrap());
        for g in model.ideal_generators() {
            assert!(model.is_zero_class(&g.mul(&rel.add(&KuElement::constant(&t, 0, 5)).unwrap()).unwrap()).unwrap());
        }
        let shifted = x1.add(&realify(&rel)).unwrap();
        assert!(manifold_ko_equal(&x1, &shifted, &model).unwrap());
    }

    #[test]
    fn ko_ranks() {
        let model = manifold_ku(&fixtures::cp(2), 3).unwrap();
        let r0 = manifold_ko_rank(&model, 0).unwrap();
        let r2 = manifold_ko_rank(&model, -2).unwrap();
        assert_eq!(r0 + r2, 3);
        for d in -8..8 {
            assert_eq!(manifold_ko_rank(&model, d).unwrap(), manifold_ko_rank(&model, d - 8).unwrap());
        }
        assert_eq!(manifold_ko_rank(&model, -1).unwrap(), 0);
        let pt = manifold_ku(&fixtures::point(), 1).unwrap();
        assert_eq!(manifold_ko_rank(&pt, 0).unwrap(), 1);
    }

    #[test]
    fn non_acyclic_models_refuse_ko_queries() {
        let model = manifold_ku(&fixtures::cp(3), 4).unwrap();
        let x = g1_class(4, VertexSet::singleton(0), 0).unwrap();
        assert!(matches!(manifold_ko_equal(&x, &x, &model), Err(Error::NotSq2Acyclic(_))));
        assert!(matches!(manifold_ko_rank(&model, 0), Err(Error::NotSq2Acyclic(_))));
    }
}
