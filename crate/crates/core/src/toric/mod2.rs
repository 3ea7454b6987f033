use std::collections::HashMap;

use crate::error::Result;
use crate::exact_linalg::{f2_rank, F2Matrix, F2Reducer};
use crate::exponents::Exponents;

use super::characteristic::QuasitoricManifold;

/// One graded piece `H^{2d}`: face-supported monomials of degree d modulo
/// the linear relations times degree-(d−1) monomials.
#[derive(Clone, Debug)]
struct Piece {
    monomials: Vec<Exponents>,
    index: HashMap<Exponents, usize>,
    reducer: F2Reducer,
    /// Monomial columns that form the quotient basis.
    basis: Vec<usize>,
}

impl Piece {
    fn words(&self) -> usize {
        self.monomials.len().div_ceil(64).max(1)
    }

    fn vector(&self, terms: impl IntoIterator<Item = Exponents>) -> Vec<u64> {
        let mut v = vec![0u64; self.words()];
        for e in terms {
            if let Some(&c) = self.index.get(&e) {
                v[c / 64] ^= 1 << (c % 64);
            }
        }
        v
    }

    /// Coordinates of a monomial combination in the quotient basis.
    fn coordinates(&self, mut v: Vec<u64>) -> Vec<bool> {
        self.reducer.reduce_vec(&mut v);
        self.basis.iter().map(|&c| (v[c / 64] >> (c % 64)) & 1 == 1).collect()
    }
}

/// `H*(M; F₂) = F₂[v₁..v_m]/(I_SR + J)` with `J` spanned by the linear forms
/// `Σᵢ λᵢⱼvᵢ`, computed degree by degree up to the top degree 2n.
#[derive(Clone, Debug)]
pub struct Mod2Cohomology {
    m: usize,
    pieces: Vec<Piece>,
}

/// Multiplicities in `H̃*(M; F₂) ≅ ⊕ sᵢΣ^{2i}S⁰ ⊕ ⊕ mⱼΣ^{2j}ℳ`, indexed by
/// half the cohomological degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BbNumbers {
    pub s: Vec<usize>,
    pub m: Vec<usize>,
    /// `dim H̃^{2i}`.
    pub reduced_dims: Vec<usize>,
}

impl BbNumbers {
    pub fn is_acyclic(&self) -> bool {
        self.s.iter().all(|&x| x == 0)
    }

    /// `dim H̃^{2i} = sᵢ + mᵢ + m_{i−1}` for every i.
    pub fn bookkeeping_holds(&self) -> bool {
        self.reduced_dims.iter().enumerate().all(|(i, &d)| {
            let mi = self.m.get(i).copied().unwrap_or(0);
            let prev = if i == 0 { 0 } else { self.m.get(i - 1).copied().unwrap_or(0) };
            d == self.s[i] + mi + prev
        })
    }
}

/// The mod-2 cohomology ring of a quasitoric manifold.
pub fn mod2_cohomology(mfd: &QuasitoricManifold) -> Mod2Cohomology {
    let (k, lambda) = (mfd.complex(), mfd.lambda());
    let m = mfd.m();
    let mut pieces: Vec<Piece> = Vec::with_capacity(mfd.n() + 1);
    for d in 0..=mfd.n() as u32 {
        let monomials: Vec<Exponents> = Exponents::all_with_total(m, d)
            .into_iter()
            .filter(|e| k.is_face(e.support()))
            .collect();
        let index: HashMap<Exponents, usize> = monomials.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let mut rows: Vec<Vec<u8>> = Vec::new();
        if d > 0 {
            for mu in &pieces[d as usize - 1].monomials {
                for j in 0..mfd.n() {
                    let mut row = vec![0u8; monomials.len()];
                    for i in 0..m {
                        if lambda.entry(i, j).rem_euclid(2) == 1 {
                            let prod = mu.with(i, mu.get(i) + 1);
                            if let Some(&c) = index.get(&prod) {
                                row[c] ^= 1;
                            }
                        }
                    }
                    if row.contains(&1) {
                        rows.push(row);
                    }
                }
            }
        }
        let span = if rows.is_empty() {
            F2Matrix::zeros(0, monomials.len())
        } else {
            F2Matrix::from_rows(&rows).expect("rectangular")
        };
        let reducer = F2Reducer::new(span);
        let basis = (0..monomials.len()).filter(|c| !reducer.pivots().contains(c)).collect();
        pieces.push(Piece {
            monomials,
            index,
            reducer,
            basis,
        });
    }
    Mod2Cohomology { m, pieces }
}

impl Mod2Cohomology {
    /// Complex dimension n (top class in degree 2n).
    pub fn n(&self) -> usize {
        self.pieces.len() - 1
    }

    /// `dim H^{2d}` for d = 0..=n.
    pub fn betti(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.basis.len()).collect()
    }

    pub fn total_dimension(&self) -> usize {
        self.betti().iter().sum()
    }

    /// Representative monomials of the basis of `H^{2d}`.
    pub fn basis(&self, d: usize) -> Vec<Exponents> {
        let p = &self.pieces[d];
        p.basis.iter().map(|&c| p.monomials[c]).collect()
    }

    fn piece(&self, d: usize) -> Option<&Piece> {
        self.pieces.get(d)
    }

    /// Coordinates of the class of a sum of degree-d monomials.
    pub fn class_of(&self, d: usize, monomials: &[Exponents]) -> Vec<bool> {
        match self.piece(d) {
            Some(p) => p.coordinates(p.vector(monomials.iter().copied())),
            None => Vec::new(),
        }
    }

    /// Product of basis element `a` of `H^{2d1}` and `b` of `H^{2d2}`.
    pub fn mul_basis(&self, d1: usize, a: usize, d2: usize, b: usize) -> Vec<bool> {
        let (x, y) = (self.basis(d1)[a], self.basis(d2)[b]);
        self.class_of(d1 + d2, &[x.add(&y)])
    }

    /// Sq²: `H^{2d} → H^{2d+2}` as a matrix with one row per basis element.
    ///
    /// On monomials Sq² is the derivation `vᵢ ↦ vᵢ²` (Cartan formula with
    /// Sq¹ = 0 on these even classes): `Sq²(v^a) = Σᵢ aᵢ vᵢ v^a`.
    pub fn sq2_matrix(&self, d: usize) -> F2Matrix {
        let rows = self.basis(d);
        let Some(target) = self.piece(d + 1) else {
            return F2Matrix::zeros(rows.len(), 0);
        };
        let mut out = F2Matrix::zeros(rows.len(), target.basis.len());
        for (r, mono) in rows.iter().enumerate() {
            let image: Vec<Exponents> = (0..self.m)
                .filter(|&i| mono.get(i) % 2 == 1)
                .map(|i| mono.with(i, mono.get(i) + 1))
                .collect();
            for (c, bit) in target.coordinates(target.vector(image)).into_iter().enumerate() {
                out.set(r, c, bit);
            }
        }
        out
    }

    /// BB-numbers on reduced cohomology (the unit is excluded).
    pub fn bb_numbers(&self) -> BbNumbers {
        let n = self.n();
        let mut reduced_dims = self.betti();
        reduced_dims[0] -= 1;
        // Sq² leaves H̃⁰ = 0, so m₀ = 0 unless n = 0.
        let m: Vec<usize> = (0..n).map(|j| if j == 0 { 0 } else { f2_rank(&self.sq2_matrix(j)) }).collect();
        let s = (0..=n)
            .map(|i| {
                let mi = m.get(i).copied().unwrap_or(0);
                let prev = if i == 0 { 0 } else { m[i - 1] };
                reduced_dims[i] - mi - prev
            })
            .collect();
        BbNumbers { s, m, reduced_dims }
    }
}

pub fn bb_numbers(mfd: &QuasitoricManifold) -> BbNumbers {
    mod2_cohomology(mfd).bb_numbers()
}

pub fn is_sq2_acyclic(mfd: &QuasitoricManifold) -> bool {
    bb_numbers(mfd).is_acyclic()
}

/// Convenience: validates `(K, λ)` and returns its BB-numbers.
pub fn bb_numbers_of(
    k: &crate::simplicial_dj::SimplicialComplex,
    lambda: &super::characteristic::CharacteristicMatrix,
) -> Result<BbNumbers> {
    Ok(bb_numbers(&QuasitoricManifold::new(k.clone(), lambda.clone())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::fixtures;

    #[test]
    fn betti_numbers() {
        assert_eq!(mod2_cohomology(&fixtures::cp(2)).betti(), vec![1, 1, 1]);
        assert_eq!(mod2_cohomology(&fixtures::cp1_x_cp1()).betti(), vec![1, 2, 1]);
        assert_eq!(mod2_cohomology(&fixtures::cp(5)).betti(), vec![1; 6]);
        assert_eq!(mod2_cohomology(&fixtures::hirzebruch(3)).betti(), vec![1, 2, 1]);
    }

    #[test]
    fn even_projective_spaces_are_acyclic() {
        for n in [2, 4] {
            let bb = bb_numbers(&fixtures::cp(n));
            assert!(bb.is_acyclic(), "CP^{n}: {bb:?}");
            assert!(bb.bookkeeping_holds());
        }
    }

    #[test]
    fn odd_projective_spaces_have_one_trivial_summand() {
        let bb = bb_numbers(&fixtures::cp(3));
        assert_eq!(bb.s, vec![0, 0, 0, 1]);
        assert_eq!(bb.m, vec![0, 1, 0]);
        let bb5 = bb_numbers(&fixtures::cp(5));
        assert_eq!(bb5.s.iter().sum::<usize>(), 1);
        assert_eq!(bb5.s[5], 1);
    }

    #[test]
    fn product_of_spheres_and_odd_hirzebruch() {
        // Squares vanish in H*(S² × S²), so nothing is Sq²-joined.
        let bb = bb_numbers(&fixtures::cp1_x_cp1());
        assert_eq!(bb.s, vec![0, 2, 1]);
        assert!(!bb.is_acyclic());
        let odd = bb_numbers(&fixtures::hirzebruch(1));
        assert_eq!(odd.s, vec![0, 1, 0]);
        assert_eq!(odd.m, vec![0, 1]);
    }

    #[test]
    fn sq2_squares_to_zero() {
        for mfd in [fixtures::cp(4), fixtures::cp(5), fixtures::hirzebruch(1)] {
            let h = mod2_cohomology(&mfd);
            for d in 0..h.n().saturating_sub(1) {
                assert!(h.sq2_matrix(d).mul(&h.sq2_matrix(d + 1)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn sq2_in_degree_two_is_squaring() {
        let h = mod2_cohomology(&fixtures::cp(2));
        let v = h.basis(1)[0];
        let sq = h.class_of(2, &[v.add(&v)]);
        assert_eq!(h.sq2_matrix(1).get(0, 0), sq[0]);
        assert!(sq[0]);
        assert_eq!(h.mul_basis(1, 0, 1, 0), sq);
    }
}
