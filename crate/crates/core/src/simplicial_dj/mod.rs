//! Simplicial complexes, Stanley–Reisner quotients of KU and KO, and the
//! facetwise limit model of `KO*(DJ(K))`.

mod complex;
mod limit;
mod quotient;

pub use complex::SimplicialComplex;
pub use limit::{limit_tuple, tuple_mul, LimitTuple};
pub use quotient::{dj_equal, sr_reduce_ko, sr_reduce_ku};
