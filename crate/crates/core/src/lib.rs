//! Exact computations in complex and real K-theory of torus classifying
//! spaces, Davis–Januszkiewicz spaces and quasitoric manifolds.
//!
//! ```
//! use kotoric::ko_symbolic::{ko_equal, parse_ko};
//! use kotoric::Truncation;
//!
//! let lhs = parse_ko("X_{1,2} X_{1,2}", None).unwrap();
//! let rhs = parse_ko("X_1 X_2 (X_{1,2} + X_1 + X_2 + 4)", None).unwrap();
//! assert_eq!(lhs, rhs);
//! let t = Truncation::uniform(2, 6).unwrap();
//! assert!(ko_equal(&lhs, &rhs, Some(&t)).unwrap());
//! ```

pub mod error;
pub mod exact_linalg;
pub mod exponents;
pub mod ko_symbolic;
pub mod ku_model;
pub mod simplicial_dj;
pub mod toric;

pub use error::{Error, Result};
pub use exponents::{Exponents, VertexSet};
pub use ko_symbolic::{G2Symbol, KoElement, KoScalar};
pub use ku_model::{ku_monomial, KuElement, Truncation};
pub use simplicial_dj::{LimitTuple, SimplicialComplex};
pub use toric::{CharacteristicMatrix, FiniteKuAlgebra, QuasitoricManifold};
