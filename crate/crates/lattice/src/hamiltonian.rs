//! The N-anyon magnetic Laplacian on an n×n cell-centred grid of the unit
//! square, restricted to exchange-symmetric states.
//!
//! Basis states are normalized orbit sums over ordered tuples, one per
//! unordered configuration. With `c₀` a representative of orbit O,
//! ⟨O′|H|O⟩ = √(|O|/|O′|) Σ_{hops c₀ → c′ ∈ O′} H(c′, c₀).

use anyon_core::{Alpha, BoundaryCondition};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{count_configs, Config, ConfigSpace};
use crate::contact::{calibrate_contact, Contact};
use crate::error::{invalid, LatticeError, Result};
use crate::phase::{LinkPhase, PhaseTable, DIRECTIONS};
use crate::sparse::SparseHermitian;

/// Cap on the number of basis configurations.
pub const STATE_CAP: u64 = 10_000_000;
/// Largest grid admitted for three particles.
pub const MAX_GRID_THREE: usize = 14;

/// Treatment of configurations with two particles on one site.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "nu")]
pub enum CoincidencePolicy {
    /// Contact coupling ν*(α)/h² per coincident pair, see
    /// [`calibrate_contact`]; hard core at α = 1.
    Calibrated,
    /// Coincident configurations removed from the state space.
    HardCore,
    /// Coincident configurations kept with no extra coupling.
    Free,
    /// Explicit coupling ν/h² per coincident pair.
    Contact(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeProblem {
    n: usize,
    particles: usize,
    alpha: Alpha,
    bc: BoundaryCondition,
    policy: CoincidencePolicy,
}

impl LatticeProblem {
    pub fn new(n: usize, particles: usize, alpha: Alpha, bc: BoundaryCondition) -> Result<Self> {
        if n < 4 {
            return Err(invalid(format!("grid size must be >= 4, got {n}")));
        }
        if !(2..=3).contains(&particles) {
            return Err(invalid(format!(
                "lattice supports 2 or 3 particles, got {particles}"
            )));
        }
        if particles == 3 && n > MAX_GRID_THREE {
            return Err(LatticeError::ResourceLimit {
                dim: count_configs((n * n) as u64, 3, true),
                cap: STATE_CAP,
            });
        }
        let p = LatticeProblem {
            n,
            particles,
            alpha,
            bc,
            policy: CoincidencePolicy::Calibrated,
        };
        let dim = p.dim_for(true);
        if dim > STATE_CAP {
            return Err(LatticeError::ResourceLimit {
                dim,
                cap: STATE_CAP,
            });
        }
        Ok(p)
    }

    pub fn with_policy(mut self, policy: CoincidencePolicy) -> Result<Self> {
        if let CoincidencePolicy::Contact(nu) = policy {
            if !(nu.is_finite() && nu >= 0.0) {
                return Err(invalid(format!("contact coupling must be >= 0, got {nu}")));
            }
        }
        self.policy = policy;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spacing(&self) -> f64 {
        1.0 / self.n as f64
    }

    pub fn particles(&self) -> usize {
        self.particles
    }

    pub fn alpha(&self) -> Alpha {
        self.alpha
    }

    pub fn bc(&self) -> BoundaryCondition {
        self.bc
    }

    pub fn policy(&self) -> CoincidencePolicy {
        self.policy
    }

    /// Contact coupling in units of 1/h², `None` for hard core.
    pub fn contact(&self) -> Result<Option<f64>> {
        Ok(match self.policy {
            CoincidencePolicy::HardCore => None,
            CoincidencePolicy::Free => Some(0.0),
            CoincidencePolicy::Contact(nu) => Some(nu),
            CoincidencePolicy::Calibrated => match calibrate_contact(self.alpha.value())? {
                Contact::Coupling(nu) => Some(nu),
                Contact::HardCore => None,
            },
        })
    }

    fn dim_for(&self, repeats: bool) -> u64 {
        count_configs((self.n * self.n) as u64, self.particles, repeats)
    }

    /// Number of basis configurations.
    pub fn dim(&self) -> Result<u64> {
        Ok(self.dim_for(self.contact()?.is_some()))
    }

    pub fn build_hamiltonian(&self) -> Result<LatticeOperator> {
        let contact = self.contact()?;
        let space =
            ConfigSpace::enumerate((self.n * self.n) as u32, self.particles, contact.is_some());
        let builder = Builder {
            n: self.n as i32,
            alpha: self.alpha.value(),
            bc: self.bc,
            contact,
            inv_h2: (self.n * self.n) as f64,
            phases: PhaseTable::new(self.n),
            space: &space,
        };
        let rows: Vec<(f64, Vec<(u32, Complex64)>)> = (0..space.configs.len())
            .into_par_iter()
            .map(|o| builder.row(o))
            .collect();
        let matrix = SparseHermitian::from_upper(rows);
        Ok(LatticeOperator {
            problem: self.clone(),
            contact,
            space,
            matrix,
        })
    }
}

struct Builder<'a> {
    n: i32,
    alpha: f64,
    bc: BoundaryCondition,
    contact: Option<f64>,
    inv_h2: f64,
    phases: PhaseTable,
    space: &'a ConfigSpace,
}

impl Builder<'_> {
    fn pos(&self, site: u32) -> [i32; 2] {
        [site as i32 / self.n, site as i32 % self.n]
    }

    fn inside(&self, p: [i32; 2]) -> bool {
        (0..self.n).contains(&p[0]) && (0..self.n).contains(&p[1])
    }

    /// Target configuration and phase of moving particle `j` of `c` along
    /// direction `dir`, before any coincidence filtering.
    fn hop(&self, c: &Config, j: usize, dir: usize) -> Option<(Config, f64)> {
        let p = self.space.particles;
        let from = self.pos(c[j]);
        let d = DIRECTIONS[dir];
        let to = [from[0] + d[0], from[1] + d[1]];
        if !self.inside(to) {
            return None;
        }
        let mut phase = 0.0;
        for k in 0..p {
            if k != j {
                let q = self.pos(c[k]);
                phase += self.phases.get([from[0] - q[0], from[1] - q[1]], dir);
            }
        }
        let mut target = *c;
        target[j] = (to[0] * self.n + to[1]) as u32;
        target[..p].sort_unstable();
        Some((target, self.alpha * phase))
    }

    fn row(&self, o: usize) -> (f64, Vec<(u32, Complex64)>) {
        let space = self.space;
        let c = &space.configs[o];
        let p = space.particles;
        let mut diag = 0.0;
        let mut upper: Vec<(u32, Complex64)> = Vec::with_capacity(4 * p);
        let weight = space.orbit_size(c);
        for j in 0..p {
            let from = self.pos(c[j]);
            for (dir, d) in DIRECTIONS.iter().enumerate() {
                let in_bounds = self.inside([from[0] + d[0], from[1] + d[1]]);
                if in_bounds || self.bc == BoundaryCondition::Dirichlet {
                    diag += self.inv_h2;
                }
                let Some((target, phase)) = self.hop(c, j, dir) else {
                    continue;
                };
                if self.contact.is_none() && space.has_repeat(&target) {
                    continue;
                }
                let t = space.rank(&target);
                if t <= o {
                    continue;
                }
                let scale = (weight / space.orbit_size(&target)).sqrt() * self.inv_h2;
                upper.push((t as u32, -Complex64::from_polar(scale, phase)));
            }
        }
        if let Some(nu) = self.contact {
            diag += nu * self.inv_h2 * space.coincident_pairs(c) as f64;
        }
        upper.sort_by_key(|e| e.0);
        upper.dedup_by(|b, a| {
            if a.0 == b.0 {
                a.1 += b.1;
                true
            } else {
                false
            }
        });
        (diag, upper)
    }
}

/// Assembled Hamiltonian together with its configuration basis.
#[derive(Debug, Clone)]
pub struct LatticeOperator {
    problem: LatticeProblem,
    contact: Option<f64>,
    space: ConfigSpace,
    matrix: SparseHermitian,
}

impl LatticeOperator {
    pub fn problem(&self) -> &LatticeProblem {
        &self.problem
    }

    pub fn matrix(&self) -> &SparseHermitian {
        &self.matrix
    }

    pub fn into_matrix(self) -> SparseHermitian {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.space.configs.len()
    }

    /// Contact coupling in use, `None` under hard core.
    pub fn contact(&self) -> Option<f64> {
        self.contact
    }

    /// Grid coordinates (column, row) of the particles of configuration `index`.
    pub fn configuration(&self, index: usize) -> Vec<(usize, usize)> {
        let n = self.problem.n as u32;
        self.space.configs[index][..self.space.particles]
            .iter()
            .map(|&s| ((s / n) as usize, (s % n) as usize))
            .collect()
    }

    /// Index of the configuration with the given particle coordinates.
    pub fn index_of(&self, sites: &[(usize, usize)]) -> Option<usize> {
        let n = self.problem.n;
        if sites.len() != self.space.particles || sites.iter().any(|&(x, y)| x >= n || y >= n) {
            return None;
        }
        let mut c: Config = [0; 3];
        for (k, &(x, y)) in sites.iter().enumerate() {
            c[k] = (x * n + y) as u32;
        }
        c[..sites.len()].sort_unstable();
        if !self.space.repeats && self.space.has_repeat(&c) {
            return None;
        }
        Some(self.space.rank(&c))
    }

    /// Basis permutation induced by the reflection x ↔ y of the square.
    /// The statistical flux sits on the diagonal, so the reflection maps the
    /// Hamiltonian to its complex conjugate.
    pub fn diagonal_reflection(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|i| {
                let swapped: Vec<(usize, usize)> = self
                    .configuration(i)
                    .into_iter()
                    .map(|(x, y)| (y, x))
                    .collect();
                self.index_of(&swapped)
                    .expect("reflection stays in the state space")
            })
            .collect()
    }

    /// The hop of particle `particle` of configuration `from` in direction
    /// `dir` (0: +x, 1: −x, 2: +y, 3: −y), if it stays in the state space.
    pub fn link_phase(&self, from: usize, particle: usize, dir: usize) -> Option<LinkPhase> {
        if from >= self.dim() || particle >= self.space.particles || dir >= 4 {
            return None;
        }
        let builder = Builder {
            n: self.problem.n as i32,
            alpha: self.problem.alpha.value(),
            bc: self.problem.bc,
            contact: self.contact,
            inv_h2: 0.0,
            phases: PhaseTable::new(self.problem.n),
            space: &self.space,
        };
        let (target, phase) = builder.hop(&self.space.configs[from], particle, dir)?;
        if !self.space.repeats && self.space.has_repeat(&target) {
            return None;
        }
        Some(LinkPhase {
            from_config: from,
            to_config: self.space.rank(&target),
            phase,
        })
    }
}
