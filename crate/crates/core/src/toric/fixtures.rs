//! Standard quasitoric examples.

use crate::simplicial_dj::SimplicialComplex;

use super::characteristic::{CharacteristicMatrix, QuasitoricManifold};

fn build(m: usize, facets: &[Vec<usize>], lambda: Vec<Vec<i64>>, n: usize) -> QuasitoricManifold {
    let k = SimplicialComplex::new(m, facets).expect("fixture complex");
    let l = CharacteristicMatrix::new(lambda, Some(n)).expect("fixture matrix");
    QuasitoricManifold::new(k, l).expect("fixture data")
}

/// `CPⁿ`: the boundary of the n-simplex with λ = (e₁, …, eₙ, −Σeᵢ).
pub fn cp(n: usize) -> QuasitoricManifold {
    let facets: Vec<Vec<usize>> = (1..=n + 1).map(|skip| (1..=n + 1).filter(|&v| v != skip).collect()).collect();
    let mut lambda: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    lambda.push(vec![-1; n]);
    build(n + 1, &facets, lambda, n)
}

fn square() -> Vec<Vec<usize>> {
    vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]]
}

/// `CP¹ × CP¹` over the square.
pub fn cp1_x_cp1() -> QuasitoricManifold {
    build(4, &square(), vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]], 2)
}

/// The Hirzebruch surface with twist `a` (λ₃ = (−1, a)); `a = 0` is
/// `CP¹ × CP¹`.
pub fn hirzebruch(a: i64) -> QuasitoricManifold {
    build(4, &square(), vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]], 2)
}

/// The point: no vertices, one empty facet.
pub fn point() -> QuasitoricManifold {
    build(0, &[vec![]], vec![], 0)
}
