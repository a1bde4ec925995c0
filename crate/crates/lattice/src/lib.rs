//! Lattice oracle for the anyon ground-state energy.
//!
//! Two or three particles hop on an n×n cell-centred grid of the unit
//! square. Each hop carries the Peierls phase α·Σ Δarg(z_j − z_k), and the
//! state space holds exchange-symmetric (bosonic) configurations, so the
//! anyonic statistics live entirely in the phases.

mod config;
pub mod contact;
pub mod error;
pub mod extrapolate;
pub mod hamiltonian;
pub mod phase;
pub mod solver;
pub mod sparse;
pub mod spectral;

pub use config::count_configs;
pub use contact::{calibrate_contact, Contact};
pub use error::{LatticeError, Result};
pub use hamiltonian::{CoincidencePolicy, LatticeOperator, LatticeProblem, STATE_CAP};
pub use phase::{pair_angle_change, LinkPhase};
pub use solver::{
    dense_ground_energy, dense_ground_energy_real, ground_energy, GroundState, SolverOptions,
};
pub use sparse::SparseHermitian;
pub use spectral::{e2_numeric, spectral_sequence, GridEnergy, SpectralResult};
