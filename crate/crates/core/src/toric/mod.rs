//! Quasitoric manifolds: characteristic data, mod-2 cohomology with Sq²,
//! BB-numbers, and the finite KU model behind `KO*(M)`.

mod characteristic;
pub mod fixtures;
mod ku_algebra;
mod mod2;

pub use characteristic::{validate_characteristic, CharacteristicMatrix, QuasitoricManifold};
pub use ku_algebra::{manifold_ko_equal, manifold_ko_rank, manifold_ku, FiniteKuAlgebra};
pub use mod2::{bb_numbers, bb_numbers_of, is_sq2_acyclic, mod2_cohomology, BbNumbers, Mod2Cohomology};
