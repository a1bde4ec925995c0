//! Domain types, special functions and closed-form energy bounds for the
//! ideal anyon gas on the unit square.
//!
//! Energies are in units with ħ = 2m = 1 and always refer to the unit square
//! unless a [`SquareBox`] is attached explicitly through [`scale_energy`].

pub mod alpha;
pub mod bounds;
mod dd;
pub mod error;
pub mod model;
pub mod special;

pub use alpha::{canonicalize_alpha, Alpha, Fraction};
pub use error::{Error, Result};
pub use model::{
    endpoint_energy, scale_energy, BoundValue, BoundaryCondition, Direction, SquareBox,
};

/// Absolute part of the default floating comparison tolerance.
pub const ABS_TOL: f64 = 1e-12;
/// Relative part of the default floating comparison tolerance.
pub const REL_TOL: f64 = 1e-10;

/// Default comparison: `|a - b| <= ABS_TOL + REL_TOL * max(|a|, |b|)`.
pub fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= ABS_TOL + REL_TOL * a.abs().max(b.abs())
}
