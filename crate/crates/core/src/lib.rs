//! Exact intrinsic MacWilliams transform for permutation-invariant qudit codes.
//!
//! The transform on `Sym^n(C^q)` is an `(n+1) x (n+1)` matrix whose rows are
//! Racah polynomials evaluated on a quadratic lattice. Everything in this crate
//! is computed in exact rational arithmetic.

pub mod error;
pub mod exactnum;
pub mod lpbound;
pub mod pieri;
pub mod poly;
pub mod sectors;
pub mod transform;

pub use error::{Error, Result};
pub use exactnum::Rational;
pub use lpbound::{build_lp, solve_feasibility, LpInstance, LpResult, Profile};
pub use sectors::{ModelParams, SectorTable};
pub use transform::{build_matrix, CheckReport, MacWilliamsMatrix, RecurrenceCoefficients};
