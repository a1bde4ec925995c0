//! Monte Carlo oracle for the Dyson trial state of N anyons in the unit
//! square, and quadrature checks of the closed-form integrals that bound its
//! energy.

pub mod config;
pub mod error;
pub mod estimator;
pub mod integrals;
pub mod trial;

pub use config::DysonTrialConfig;
pub use error::{McError, Result};
pub use estimator::{rayleigh_quotient, McEstimate};
pub use integrals::{verify_auxiliary_integrals, AuxiliaryReport, IntegralCheck};
pub use trial::{jastrow, jastrow_gradient, one_body, trial_value, vector_potential_sq, Point};
