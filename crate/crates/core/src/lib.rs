//! Exact-arithmetic toolkit for algebras in the one-parameter family
//! interpolating between associative (`q = 0`), flexible (`q = -1`), and
//! center-symmetric (`q = 1`) laws: identity checkers over structure
//! constants, bimodules and matched pairs with their semidirect and
//! bicrossed products, the double on a space plus its dual with the
//! canonical invariant form, and the octonion algebra as a fully
//! cross-checked fixture.
//!
//! All scalars are arbitrary-precision rationals; every verdict is exact
//! and every counterexample deterministic (first failing basis tuple in
//! lexicographic order).

pub mod algebra;
pub mod bimodule;
pub mod double;
pub mod error;
pub mod fixtures;
pub mod json;
pub mod linalg;
pub mod matched_pair;
pub mod octonion;
pub mod rational;
pub mod report;
pub mod search;

pub use algebra::{AlgebraRef, AlgebraSpec, Element};
pub use bimodule::Bimodule;
pub use double::{DoubleSpec, ManinReport};
pub use error::{Error, Result};
pub use linalg::{Matrix, Tensor3, Vector};
pub use matched_pair::MatchedPair;
pub use rational::Rat;
pub use report::{CheckReport, MyungReport};
