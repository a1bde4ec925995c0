//! The Dyson trial state Φ = Π_j φ(x_j) f(x_j − y_j), where y_j is the
//! nearest of x_1..x_{j−1} and f(x) = min{(|x|/√2)^α, 1}.

use std::f64::consts::{PI, SQRT_2};

use anyon_core::BoundaryCondition;

use crate::config::DysonTrialConfig;
use crate::error::{invalid, Result};

pub type Point = [f64; 2];

/// Radius of the ball outside which f = 1.
pub const BALL_RADIUS: f64 = SQRT_2;

/// f(r) = min{(r/√2)^α, 1}.
pub fn jastrow(r: f64, alpha: f64) -> f64 {
    if r >= BALL_RADIUS {
        1.0
    } else {
        (r / BALL_RADIUS).powf(alpha)
    }
}

/// One-body factor: 2 sin(πx) sin(πy) for Dirichlet, 1 for Neumann.
pub fn one_body(p: Point, bc: BoundaryCondition) -> f64 {
    match bc {
        BoundaryCondition::Neumann => 1.0,
        BoundaryCondition::Dirichlet => 2.0 * (PI * p[0]).sin() * (PI * p[1]).sin(),
    }
}

pub(crate) fn in_box(p: Point) -> bool {
    (0.0..=1.0).contains(&p[0]) && (0.0..=1.0).contains(&p[1])
}

/// Pairwise geometry in log-radius form, so that separations far below
/// f64 position resolution stay exact.
#[derive(Debug, Clone)]
pub(crate) struct Geometry {
    n: usize,
    /// ln |x_a − x_b| for a > b, row-major lower triangle.
    ln_r: Vec<f64>,
    /// Unit vector of x_a − x_b for a > b.
    dir: Vec<Point>,
}

/// Pair separation supplied exactly instead of from positions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Anchor {
    /// Particle placed relative to `base`; must be the larger index.
    pub moved: usize,
    pub base: usize,
    pub ln_r: f64,
    pub theta: f64,
}

fn tri(a: usize, b: usize) -> usize {
    debug_assert!(a > b);
    a * (a - 1) / 2 + b
}

impl Geometry {
    /// `None` when two particles coincide.
    pub fn new(pos: &[Point], anchor: Option<Anchor>) -> Option<Self> {
        let n = pos.len();
        let mut ln_r = Vec::with_capacity(n * (n - 1) / 2);
        let mut dir = Vec::with_capacity(n * (n - 1) / 2);
        for a in 1..n {
            for b in 0..a {
                if let Some(an) = anchor.filter(|an| an.moved == a && an.base == b) {
                    ln_r.push(an.ln_r);
                    dir.push([an.theta.cos(), an.theta.sin()]);
                    continue;
                }
                let d = [pos[a][0] - pos[b][0], pos[a][1] - pos[b][1]];
                let r = d[0].hypot(d[1]);
                if r == 0.0 {
                    return None;
                }
                ln_r.push(r.ln());
                dir.push([d[0] / r, d[1] / r]);
            }
        }
        Some(Geometry { n, ln_r, dir })
    }

    pub fn ln_r(&self, a: usize, b: usize) -> f64 {
        if a > b {
            self.ln_r[tri(a, b)]
        } else {
            self.ln_r[tri(b, a)]
        }
    }

    /// Unit vector of x_a − x_b.
    pub fn dir(&self, a: usize, b: usize) -> Point {
        if a > b {
            self.dir[tri(a, b)]
        } else {
            let d = self.dir[tri(b, a)];
            [-d[0], -d[1]]
        }
    }

    pub fn min_ln_r(&self) -> f64 {
        self.ln_r.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Nearest earlier particle of each j ≥ 1 (entry 0 unused).
    pub fn nearest_earlier(&self) -> Vec<usize> {
        let mut y = vec![0; self.n];
        for j in 1..self.n {
            let mut best = (0, self.ln_r(j, 0));
            for i in 1..j {
                let l = self.ln_r(j, i);
                if l < best.1 {
                    best = (i, l);
                }
            }
            y[j] = best.0;
        }
        y
    }

    /// ln of the Jastrow part F = Π_{j≥1} f(x_j − y_j).
    pub fn ln_jastrow(&self, alpha: f64, y: &[usize]) -> f64 {
        (1..self.n)
            .map(|j| alpha * (self.ln_r(j, y[j]) - BALL_RADIUS.ln()).min(0.0))
            .sum()
    }

    /// s·∇_a ln F for every particle a, with s = e^{ln_s}.
    pub fn scaled_grad_ln_jastrow(&self, alpha: f64, y: &[usize], ln_s: f64) -> Vec<Point> {
        let mut g = vec![[0.0; 2]; self.n];
        for j in 1..self.n {
            let k = y[j];
            let l = self.ln_r(j, k);
            if l >= BALL_RADIUS.ln() {
                continue;
            }
            let e = self.dir(j, k);
            let c = alpha * (ln_s - l).exp();
            g[j][0] += c * e[0];
            g[j][1] += c * e[1];
            g[k][0] -= c * e[0];
            g[k][1] -= c * e[1];
        }
        g
    }

    /// s²·Σ_a |A_a|² through the two-body plus three-body decomposition
    /// Σ_{a≠b} r_ab^{−2} + Σ_{a≠b≠c≠a} (x_a−x_b)^{−⊥}·(x_a−x_c)^{−⊥}.
    pub fn scaled_vector_potential_sq(&self, ln_s: f64) -> f64 {
        let n = self.n;
        let mut two = 0.0;
        let mut three = 0.0;
        for a in 0..n {
            for b in 0..n {
                if b == a {
                    continue;
                }
                let wb = (ln_s - self.ln_r(a, b)).exp();
                two += wb * wb;
                let eb = self.dir(a, b);
                for c in 0..n {
                    if c == a || c == b {
                        continue;
                    }
                    let wc = (ln_s - self.ln_r(a, c)).exp();
                    let ec = self.dir(a, c);
                    three += wb * wc * (eb[0] * ec[0] + eb[1] * ec[1]);
                }
            }
        }
        two + three
    }
}

fn check_positions(config: &DysonTrialConfig, positions: &[Point]) -> Result<()> {
    if positions.len() != config.n_particles {
        return Err(invalid(format!(
            "expected {} positions, got {}",
            config.n_particles,
            positions.len()
        )));
    }
    if positions.iter().any(|p| !in_box(*p)) {
        return Err(invalid("positions must lie in the unit square"));
    }
    Ok(())
}

/// Φ at the given positions.
pub fn trial_value(config: &DysonTrialConfig, positions: &[Point]) -> Result<f64> {
    check_positions(config, positions)?;
    let geo = Geometry::new(positions, None).ok_or_else(|| invalid("coincident points"))?;
    let y = geo.nearest_earlier();
    let a = config.alpha.value();
    let jastrow: f64 = (1..positions.len())
        .map(|j| jastrow(geo.ln_r(j, y[j]).exp(), a))
        .product();
    let phi: f64 = positions.iter().map(|&p| one_body(p, config.bc)).product();
    Ok(phi * jastrow)
}

/// Jastrow part F of Φ and its gradient with respect to every position.
pub fn jastrow_gradient(
    config: &DysonTrialConfig,
    positions: &[Point],
) -> Result<(f64, Vec<Point>)> {
    check_positions(config, positions)?;
    let geo = Geometry::new(positions, None).ok_or_else(|| invalid("coincident points"))?;
    let y = geo.nearest_earlier();
    let a = config.alpha.value();
    let f = geo.ln_jastrow(a, &y).exp();
    let g = geo
        .scaled_grad_ln_jastrow(a, &y, 0.0)
        .into_iter()
        .map(|v| [f * v[0], f * v[1]])
        .collect();
    Ok((f, g))
}

/// Σ_a |A_a|² with A_a = Σ_{b≠a} (x_a − x_b)^⊥/|x_a − x_b|².
pub fn vector_potential_sq(positions: &[Point]) -> Result<f64> {
    let geo = Geometry::new(positions, None).ok_or_else(|| invalid("coincident points"))?;
    Ok(geo.scaled_vector_potential_sq(0.0))
}
