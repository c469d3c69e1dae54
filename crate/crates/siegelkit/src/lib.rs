//! Exact arithmetic for effective Thue–Siegel irrationality measures.
//!
//! The crate builds everything on exact big integers and rationals. Real
//! quantities that are not rational (heights, logarithms, powers with real
//! exponents) are carried as [`interval::RInterval`] enclosures with outward
//! rounding, so every yes/no answer the crate gives is backed by an exact
//! comparison.
//!
//! Module map:
//! - [`interval`], [`poly`]: rationals, intervals, univariate and bivariate
//!   integer polynomials.
//! - [`field`], [`roots`], [`irreducible`]: arithmetic in `Q(θ)`, certified
//!   root isolation, heights and irreducibility certificates.
//! - [`siegel`]: the vanishing system, small kernel vectors and the
//!   auxiliary polynomial.
//! - [`zero`]: Wronskians, the nonvanishing index and the upper estimate.
//! - [`measure`]: the constants pipeline and convergent validation.
//! - [`families`]: the parametric families `(t-a)Q(t)+P(t)`.
//! - [`diophantine`]: Thue-equation bounds, searches and the gap-chain count.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod diophantine;
pub mod error;
pub mod expform;
pub mod families;
pub mod field;
pub mod interval;
pub mod irreducible;
pub mod linalg;
pub mod measure;
pub mod poly;
pub mod rat;
pub mod roots;
pub mod siegel;
pub mod target;
pub mod zero;

pub use error::{Error, Result};
pub use interval::{Policy, RInterval};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
