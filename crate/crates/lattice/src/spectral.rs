//! Ground energies over a sequence of grids, extrapolated to the continuum.

use anyon_core::{Alpha, BoundaryCondition};
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::extrapolate::fit_power_law;
use crate::hamiltonian::{CoincidencePolicy, LatticeProblem};
use crate::solver::{ground_energy, SolverOptions};

/// Smallest grid accepted in a sequence.
pub const MIN_SEQUENCE_GRID: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridEnergy {
    pub n: usize,
    pub ground_energy: f64,
    pub residual: f64,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralResult {
    pub particles: usize,
    pub alpha: f64,
    pub bc: BoundaryCondition,
    pub policy: CoincidencePolicy,
    /// Contact coupling in units of 1/h², absent under hard core.
    pub contact: Option<f64>,
    pub per_grid: Vec<GridEnergy>,
    pub extrapolated: f64,
    pub extrapolation_error: f64,
    /// Fitted exponent γ, absent when the fit failed.
    pub exponent: Option<f64>,
    pub warning: Option<String>,
}

/// (limit, error, exponent, warning) for energies on ascending grids.
pub fn extrapolate(per_grid: &[GridEnergy]) -> (f64, f64, Option<f64>, Option<String>) {
    let k = per_grid.len();
    let last = per_grid[k - 1].ground_energy;
    let spread = (last - per_grid[k - 2].ground_energy).abs();
    let fit = |s: &[GridEnergy]| {
        fit_power_law(
            [s[0].n as f64, s[1].n as f64, s[2].n as f64],
            [s[0].ground_energy, s[1].ground_energy, s[2].ground_energy],
        )
    };
    match fit(&per_grid[k - 3..]) {
        Some(main) => {
            let error = if k >= 4 {
                fit(&per_grid[k - 4..k - 1]).map_or(spread, |prev| (main.limit - prev.limit).abs())
            } else {
                spread
            };
            (main.limit, error, Some(main.exponent), None)
        }
        None => (
            last,
            spread,
            None,
            Some("non-monotone tail: reporting the finest grid".to_string()),
        ),
    }
}

/// Solves on every grid and extrapolates.
pub fn spectral_sequence(
    particles: usize,
    alpha: Alpha,
    bc: BoundaryCondition,
    grids: &[usize],
    policy: CoincidencePolicy,
    opts: &SolverOptions,
) -> Result<SpectralResult> {
    if grids.len() < 3 {
        return Err(invalid("need at least three grids"));
    }
    if grids.iter().any(|&n| n < MIN_SEQUENCE_GRID) {
        return Err(invalid(format!(
            "every grid must be >= {MIN_SEQUENCE_GRID}"
        )));
    }
    if grids.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid("grids must be strictly ascending"));
    }
    let mut per_grid = Vec::with_capacity(grids.len());
    let mut contact = None;
    for &n in grids {
        let problem = LatticeProblem::new(n, particles, alpha, bc)?.with_policy(policy)?;
        let op = problem.build_hamiltonian()?;
        contact = op.contact();
        let g = ground_energy(op.matrix(), opts)?;
        per_grid.push(GridEnergy {
            n,
            ground_energy: g.energy,
            residual: g.residual,
            dim: op.dim(),
        });
    }
    let (extrapolated, extrapolation_error, exponent, warning) = extrapolate(&per_grid);
    Ok(SpectralResult {
        particles,
        alpha: alpha.value(),
        bc,
        policy,
        contact,
        per_grid,
        extrapolated,
        extrapolation_error,
        exponent,
        warning,
    })
}

/// Two-anyon ground energy on the unit square, extrapolated in the grid.
pub fn e2_numeric(
    alpha: Alpha,
    bc: BoundaryCondition,
    grids: &[usize],
    tol: f64,
) -> Result<SpectralResult> {
    spectral_sequence(
        2,
        alpha,
        bc,
        grids,
        CoincidencePolicy::Calibrated,
        &SolverOptions::with_tol(tol),
    )
}
