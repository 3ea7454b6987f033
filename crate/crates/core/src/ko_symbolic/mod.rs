//! KO*(BT^m): normal-form generators, the KO* coefficient action, the
//! square-free classes and their relations, and the bridge to KU.

mod element;
mod g1;
mod notation;
mod oracle;
mod rank;
mod scalar;
mod symbol;

pub use element::{normalize_symbol, normalize_symbol_with, KoElement};
pub use g1::{coordinate_product, g1_class, relation_i_sides, relation_ii_sides};
pub use notation::{parse_ko, render, to_json};
pub use oracle::{complexify, faithful_window, complexify_scalar, complexify_symbol_raw, ko_equal, realify};
pub use rank::smash_rank_two_ways;
pub use scalar::{KoScalar, ScalarToken};
pub use symbol::{normal_symbols, normalize_into, G2Symbol, NormalSum, PivotRule, SmallestPivot};
