//! Rayleigh quotient of the Dyson trial state.
//!
//! With Φ = P·F (P = Π φ(x_j), F the Jastrow part) and −Δφ = 2π²φ for the
//! Dirichlet φ, integrating the cross term by parts gives
//!
//!   Σ_j ∫|∇_jΦ|² = ∫P²Σ_j|∇_jF|² + 2π²N·[Dirichlet]·∫P²F²,
//!
//! so the estimator only differentiates F. Samples come from a mixture of
//! P² and pair densities ∝ r^{2α−2} around each pair, which cancel the
//! r^{2α−2} growth of the integrand at coincidences and keep every sample's
//! weight bounded.

use std::f64::consts::PI;

use anyon_core::BoundaryCondition;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::DysonTrialConfig;
use crate::error::Result;
use crate::trial::{in_box, jastrow_gradient, Anchor, Geometry, Point, BALL_RADIUS};

/// Probability of drawing from the pair component.
const PAIR_MIXTURE: f64 = 0.5;
/// Pair separations below this are carried in log form.
const ANCHOR_LIMIT: f64 = 1e-6;
/// Samples used by the finite-difference gradient check.
const FD_CHECK_SAMPLES: usize = 200;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
    pub batches: usize,
    /// Draws discarded because two particles coincided exactly.
    pub rejected: u64,
    /// Largest relative deviation between the analytic gradient of F and
    /// central differences with step `fd_step`, over well-separated samples.
    pub fd_gradient_check: f64,
}

fn ln_one_body_density(p: Point, bc: BoundaryCondition) -> f64 {
    if !in_box(p) {
        return f64::NEG_INFINITY;
    }
    match bc {
        BoundaryCondition::Neumann => 0.0,
        BoundaryCondition::Dirichlet => {
            2.0 * (2.0 * (PI * p[0]).sin() * (PI * p[1]).sin()).abs().ln()
        }
    }
}

fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

struct Sampler<'a> {
    c: &'a DysonTrialConfig,
    alpha: f64,
    mixture: f64,
    pairs: Vec<(usize, usize)>,
    /// ln of the normalization α/(π R^{2α}) of the pair density.
    ln_pair_norm: f64,
}

/// A draw and its contributions to the numerator and denominator.
struct Contribution {
    numerator: f64,
    denominator: f64,
}

impl<'a> Sampler<'a> {
    fn new(c: &'a DysonTrialConfig) -> Self {
        let alpha = c.alpha.value();
        let n = c.n_particles;
        let pairs = (1..n).flat_map(|b| (0..b).map(move |a| (a, b))).collect();
        Sampler {
            c,
            alpha,
            mixture: if alpha > 0.0 { PAIR_MIXTURE } else { 0.0 },
            pairs,
            ln_pair_norm: (alpha / PI).ln() - 2.0 * alpha * BALL_RADIUS.ln(),
        }
    }

    fn one_body(&self, rng: &mut ChaCha8Rng) -> Point {
        match self.c.bc {
            BoundaryCondition::Neumann => [rng.random(), rng.random()],
            BoundaryCondition::Dirichlet => {
                // 2 sin²(πx) per axis, by rejection from the uniform density
                let mut axis = || loop {
                    let x: f64 = rng.random();
                    let u: f64 = rng.random();
                    if u < (PI * x).sin().powi(2) {
                        return x;
                    }
                };
                [axis(), axis()]
            }
        }
    }

    fn ln_pair_density(&self, ln_r: f64) -> f64 {
        if ln_r >= BALL_RADIUS.ln() {
            f64::NEG_INFINITY
        } else {
            self.ln_pair_norm + (2.0 * self.alpha - 2.0) * ln_r
        }
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> (Vec<Point>, Option<Anchor>) {
        let mut pos: Vec<Point> = (0..self.c.n_particles)
            .map(|_| self.one_body(rng))
            .collect();
        if self.mixture == 0.0 || rng.random::<f64>() >= self.mixture {
            return (pos, None);
        }
        let (a, b) = self.pairs[rng.random_range(0..self.pairs.len())];
        let u: f64 = 1.0 - rng.random::<f64>();
        let ln_r = BALL_RADIUS.ln() + u.ln() / (2.0 * self.alpha);
        let theta = 2.0 * PI * rng.random::<f64>();
        if ln_r > ANCHOR_LIMIT.ln() {
            let r = ln_r.exp();
            pos[b] = [pos[a][0] + r * theta.cos(), pos[a][1] + r * theta.sin()];
            (pos, None)
        } else {
            pos[b] = pos[a];
            let anchor = Anchor {
                moved: b,
                base: a,
                ln_r,
                theta,
            };
            (pos, Some(anchor))
        }
    }

    /// `None` when the draw is degenerate.
    fn evaluate(&self, pos: &[Point], anchor: Option<Anchor>) -> Option<Contribution> {
        let zero = Contribution {
            numerator: 0.0,
            denominator: 0.0,
        };
        let ln_p: Vec<f64> = pos
            .iter()
            .map(|&p| ln_one_body_density(p, self.c.bc))
            .collect();
        let ln_p_all: f64 = ln_p.iter().sum();
        if ln_p_all == f64::NEG_INFINITY {
            return Some(zero);
        }
        let geo = Geometry::new(pos, anchor)?;
        let mut terms = Vec::with_capacity(self.pairs.len() + 1);
        terms.push((1.0 - self.mixture).ln() + ln_p_all);
        if self.mixture > 0.0 {
            let ln_pick = (self.mixture / self.pairs.len() as f64).ln();
            for &(a, b) in &self.pairs {
                let others: f64 = ln_p
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != b)
                    .map(|(_, v)| v)
                    .sum();
                terms.push(ln_pick + others + self.ln_pair_density(geo.ln_r(b, a)));
            }
        }
        let ln_q = log_sum_exp(&terms);
        let y = geo.nearest_earlier();
        let ln_f = geo.ln_jastrow(self.alpha, &y);
        let ln_w = ln_p_all - ln_q + 2.0 * ln_f;
        let ln_s = geo.min_ln_r();
        let grad = geo.scaled_grad_ln_jastrow(self.alpha, &y, ln_s);
        let kinetic: f64 = grad.iter().map(|g| g[0] * g[0] + g[1] * g[1]).sum();
        let magnetic = self.alpha * self.alpha * geo.scaled_vector_potential_sq(ln_s);
        Some(Contribution {
            numerator: (ln_w - 2.0 * ln_s).exp() * (kinetic + magnetic),
            denominator: ln_w.exp(),
        })
    }
}

struct BatchSums {
    numerator: f64,
    denominator: f64,
    rejected: u64,
}

fn run_batch(s: &Sampler, batch: usize, count: u64) -> BatchSums {
    let mut rng = ChaCha8Rng::seed_from_u64(s.c.seed);
    rng.set_stream(batch as u64);
    let mut out = BatchSums {
        numerator: 0.0,
        denominator: 0.0,
        rejected: 0,
    };
    for _ in 0..count {
        loop {
            let (pos, anchor) = s.draw(&mut rng);
            match s.evaluate(&pos, anchor) {
                Some(c) => {
                    out.numerator += c.numerator;
                    out.denominator += c.denominator;
                    break;
                }
                None => out.rejected += 1,
            }
        }
    }
    out
}

/// Largest relative deviation of the analytic Jastrow gradient from central
/// differences, on draws whose pair distances and nearest-neighbour margins
/// exceed 100 steps.
fn fd_gradient_check(c: &DysonTrialConfig) -> f64 {
    let s = Sampler::new(c);
    let h = c.fd_step;
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    rng.set_stream(u64::MAX);
    let mut worst: f64 = 0.0;
    let mut used = 0;
    let mut attempts = 0;
    while used < FD_CHECK_SAMPLES && attempts < 100 * FD_CHECK_SAMPLES {
        attempts += 1;
        let pos: Vec<Point> = (0..c.n_particles).map(|_| s.one_body(&mut rng)).collect();
        let Some(geo) = Geometry::new(&pos, None) else {
            continue;
        };
        let margin = 100.0 * h;
        if geo.min_ln_r() < margin.ln()
            || pos
                .iter()
                .any(|p| p.iter().any(|&x| !(margin..=1.0 - margin).contains(&x)))
        {
            continue;
        }
        let ties = (2..c.n_particles).any(|j| {
            let mut d: Vec<f64> = (0..j).map(|i| geo.ln_r(j, i).exp()).collect();
            d.sort_by(f64::total_cmp);
            d[1] - d[0] < margin
        });
        let near_ball = (1..c.n_particles)
            .flat_map(|j| (0..j).map(move |i| (j, i)))
            .any(|(j, i)| (geo.ln_r(j, i).exp() - BALL_RADIUS).abs() < margin);
        if ties || near_ball {
            continue;
        }
        let Ok((_, grad)) = jastrow_gradient(c, &pos) else {
            continue;
        };
        let jastrow_at = |p: &[Point]| jastrow_gradient(c, p).map(|(f, _)| f).unwrap_or(f64::NAN);
        let scale = grad
            .iter()
            .flat_map(|g| g.iter())
            .fold(0.0f64, |m, v| m.max(v.abs()));
        for a in 0..c.n_particles {
            for d in 0..2 {
                let mut p = pos.clone();
                p[a][d] += h;
                let up = jastrow_at(&p);
                p[a][d] -= 2.0 * h;
                let down = jastrow_at(&p);
                let fd = (up - down) / (2.0 * h);
                let dev = (fd - grad[a][d]).abs() / scale.max(f64::MIN_POSITIVE);
                if scale > 0.0 {
                    worst = worst.max(dev);
                }
            }
        }
        used += 1;
    }
    worst
}

/// Monte Carlo estimate of Σ_j ∫(|∇_jΦ|² + α²|A_j|²Φ²) / ∫Φ².
pub fn rayleigh_quotient(config: &DysonTrialConfig) -> Result<McEstimate> {
    config.validate()?;
    let s = Sampler::new(config);
    let b = config.batches as u64;
    let per = config.samples / b;
    let extra = config.samples % b;
    let sums: Vec<BatchSums> = (0..config.batches)
        .into_par_iter()
        .map(|i| run_batch(&s, i, per + u64::from((i as u64) < extra)))
        .collect();
    let numerator: f64 = sums.iter().map(|x| x.numerator).sum();
    let denominator: f64 = sums.iter().map(|x| x.denominator).sum();
    let ratios: Vec<f64> = sums.iter().map(|x| x.numerator / x.denominator).collect();
    let mean_ratio = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let var =
        ratios.iter().map(|r| (r - mean_ratio).powi(2)).sum::<f64>() / (ratios.len() - 1) as f64;
    let offset = match config.bc {
        BoundaryCondition::Dirichlet => 2.0 * PI * PI * config.n_particles as f64,
        BoundaryCondition::Neumann => 0.0,
    };
    Ok(McEstimate {
        mean: offset + numerator / denominator,
        stderr: (var / ratios.len() as f64).sqrt(),
        samples: config.samples,
        seed: config.seed,
        batches: config.batches,
        rejected: sums.iter().map(|x| x.rejected).sum(),
        fd_gradient_check: fd_gradient_check(config),
    })
}
