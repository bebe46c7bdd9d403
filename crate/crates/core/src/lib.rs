//! Exact root-system combinatorics for the twisted affine Lie superalgebras
//! `A(2k−1,2l−1)^(2)`, `A(2k,2l−1)^(2)`, `A(2k,2l)^(4)` and `D(k+1,l)^(2)`.
//!
//! Everything is exact: rationals are arbitrary precision, and coefficients
//! may be polynomials in a formal transcendental `ξ` (written `x`).
//!
//! ```
//! use taffine::rootsys::{Family, RootSystem};
//!
//! let sys = RootSystem::from_parts(Family::A2Mix, 1, 1).unwrap();
//! assert_eq!(sys.enumerate_window(0).len(), 11);
//! ```

pub mod acceptance;
pub mod cli;
pub mod decomp;
pub mod error;
pub mod examplecase;
pub mod json;
pub mod lattice;
pub mod linalg;
pub mod literal;
pub mod rootsys;
pub mod scalar;
pub mod subsystems;
pub mod supportcalc;

pub use error::{Error, Result};
pub use lattice::{form_eval, level, t_rep, Dims, RootVec, Weight};
pub use rootsys::{dot_of, Family, RootSystem, RootSystemSpec};
pub use scalar::{Rational, Scalar};
