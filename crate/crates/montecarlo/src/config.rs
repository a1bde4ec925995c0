use anyon_core::{Alpha, BoundaryCondition};
use serde::Serialize;

use crate::error::{invalid, Result};

pub const DEFAULT_FD_STEP: f64 = 1e-5;
pub const DEFAULT_BATCHES: usize = 40;
pub const MIN_BATCHES: usize = 30;
pub const MAX_PARTICLES: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DysonTrialConfig {
    pub n_particles: usize,
    pub alpha: Alpha,
    pub bc: BoundaryCondition,
    pub samples: u64,
    pub seed: u64,
    /// Step of the finite-difference check on the trial-state gradient.
    pub fd_step: f64,
    pub batches: usize,
}

impl DysonTrialConfig {
    pub fn new(
        n_particles: usize,
        alpha: Alpha,
        bc: BoundaryCondition,
        samples: u64,
        seed: u64,
    ) -> Result<Self> {
        let c = DysonTrialConfig {
            n_particles,
            alpha,
            bc,
            samples,
            seed,
            fd_step: DEFAULT_FD_STEP,
            batches: DEFAULT_BATCHES,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn with_fd_step(mut self, fd_step: f64) -> Result<Self> {
        self.fd_step = fd_step;
        self.validate()?;
        Ok(self)
    }

    pub fn with_batches(mut self, batches: usize) -> Result<Self> {
        self.batches = batches;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=MAX_PARTICLES).contains(&self.n_particles) {
            return Err(invalid(format!(
                "particle count must be in 2..={MAX_PARTICLES}, got {}",
                self.n_particles
            )));
        }
        if !(1e-7..=1e-3).contains(&self.fd_step) {
            return Err(invalid(format!(
                "fd_step must lie in [1e-7, 1e-3], got {}",
                self.fd_step
            )));
        }
        if self.batches < MIN_BATCHES {
            return Err(invalid(format!("need at least {MIN_BATCHES} batches")));
        }
        if self.samples < self.batches as u64 {
            return Err(invalid("need at least one sample per batch"));
        }
        Ok(())
    }
}
