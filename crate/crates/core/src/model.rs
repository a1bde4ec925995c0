use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::alpha::Alpha;
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryCondition {
    Neumann,
    Dirichlet,
}

impl BoundaryCondition {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundaryCondition::Neumann => "neumann",
            BoundaryCondition::Dirichlet => "dirichlet",
        }
    }
}

impl fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundaryCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "neumann" | "n" => Ok(BoundaryCondition::Neumann),
            "dirichlet" | "d" => Ok(BoundaryCondition::Dirichlet),
            _ => Err(invalid(format!("unknown boundary condition '{s}'"))),
        }
    }
}

/// Axis-aligned square of side `side`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SquareBox {
    side: f64,
}

impl SquareBox {
    pub const UNIT: SquareBox = SquareBox { side: 1.0 };

    pub fn new(side: f64) -> Result<Self> {
        if !(side.is_finite() && side > 0.0) {
            return Err(invalid(format!("box side must be positive, got {side}")));
        }
        Ok(SquareBox { side })
    }

    pub fn side(&self) -> f64 {
        self.side
    }

    pub fn area(&self) -> f64 {
        self.side * self.side
    }
}

/// Energy on `square` from the unit-square energy: `E(Q) = E / |Q|`.
pub fn scale_energy(unit_square_energy: f64, square: SquareBox) -> f64 {
    unit_square_energy / square.area()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Upper,
    Lower,
}

impl Direction {
    pub fn as_str(&self) -> &'static str {
        match self {
            Direction::Upper => "upper",
            Direction::Lower => "lower",
        }
    }
}

/// One evaluated bound on the `n_particles`-anyon ground-state energy of the
/// unit square.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundValue {
    pub energy: f64,
    pub direction: Direction,
    pub bc: BoundaryCondition,
    pub valid: bool,
    pub validity_reason: String,
    pub source: &'static str,
    pub n_particles: u64,
}

impl BoundValue {
    pub(crate) fn valid(
        source: &'static str,
        direction: Direction,
        bc: BoundaryCondition,
        n_particles: u64,
        energy: f64,
    ) -> Self {
        BoundValue {
            energy,
            direction,
            bc,
            valid: true,
            validity_reason: String::new(),
            source,
            n_particles,
        }
    }

    pub(crate) fn invalid(
        source: &'static str,
        direction: Direction,
        bc: BoundaryCondition,
        n_particles: u64,
        reason: impl Into<String>,
    ) -> Self {
        BoundValue {
            energy: f64::NAN,
            direction,
            bc,
            valid: false,
            validity_reason: reason.into(),
            source,
            n_particles,
        }
    }

    /// The energy, or an error if the bound does not apply.
    pub fn checked_energy(&self) -> Result<f64> {
        if self.valid {
            Ok(self.energy)
        } else {
            Err(Error::InvalidBound {
                source_tag: self.source.to_string(),
                reason: self.validity_reason.clone(),
            })
        }
    }
}

/// Sum of the `n` lowest unit-square Laplacian eigenvalues, in units of π².
fn lowest_mode_sum(n: u64, bc: BoundaryCondition) -> u128 {
    let start: u64 = match bc {
        BoundaryCondition::Neumann => 0,
        BoundaryCondition::Dirichlet => 1,
    };
    // A quarter disc of radius R holds about πR²/4 lattice points.
    let radius = (4.0 * n as f64 / PI).sqrt().ceil() as u64 + 3;
    let mut levels: Vec<u64> = Vec::with_capacity(((radius + 1) * (radius + 1)) as usize);
    for j in start..=start + radius {
        for k in start..=start + radius {
            levels.push(j * j + k * k);
        }
    }
    levels.sort_unstable();
    levels.iter().take(n as usize).map(|&l| l as u128).sum()
}

/// Exact ground-state energy at the boson (α = 0) and fermion (α = 1)
/// endpoints; `None` for any other α.
pub fn endpoint_energy(n: u64, alpha: &Alpha, bc: BoundaryCondition) -> Option<f64> {
    if alpha.is_boson() {
        Some(match bc {
            BoundaryCondition::Neumann => 0.0,
            BoundaryCondition::Dirichlet => 2.0 * PI * PI * n as f64,
        })
    } else if alpha.is_fermion() {
        Some(PI * PI * lowest_mode_sum(n, bc) as f64)
    } else {
        None
    }
}
