//! Verification suites shared by `anyon verify` and the acceptance tests.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::time::Instant;

use anyon_core::bounds::{
    c_alpha_lower, collect_bounds, dyson_upper_neumann, e2_lower, e2_upper, fractionality,
    global_upper_dirichlet, quadratic_lower,
};
use anyon_core::special::{first_derivative_zero, BesselOrder};
use anyon_core::{endpoint_energy, Alpha, BoundValue, BoundaryCondition, Direction};
use anyon_lattice::{
    dense_ground_energy_real, e2_numeric, ground_energy, LatticeProblem, SolverOptions,
    SpectralResult,
};
use anyon_mc::{rayleigh_quotient, verify_auxiliary_integrals, DysonTrialConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;

use BoundaryCondition::{Dirichlet, Neumann};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Suite {
    pub name: String,
    pub checks: Vec<Check>,
    pub seconds: f64,
}

impl Suite {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    /// Plain-text table, one line per check and a summary line.
    pub fn render(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut s = String::new();
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "{mark}  {:width$}  {}", c.name, c.detail);
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let _ = writeln!(
            s,
            "{}: {} checks, {} failed, {:.2} s",
            self.name,
            self.checks.len(),
            failed,
            self.seconds
        );
        s
    }
}

fn timed(name: &str, f: impl FnOnce() -> Result<Vec<Check>>) -> Result<Suite> {
    let start = Instant::now();
    let checks = f()?;
    Ok(Suite {
        name: name.to_string(),
        checks,
        seconds: start.elapsed().as_secs_f64(),
    })
}

fn alpha(x: f64) -> Alpha {
    Alpha::new(x).expect("alpha in [0, 1]")
}

fn rel_err(x: f64, y: f64) -> f64 {
    if x == y {
        0.0
    } else {
        (x - y).abs() / y.abs().max(f64::MIN_POSITIVE)
    }
}

/// `lo <= hi` up to a relative 1e-12 and absolute 1e-12.
fn ordered(lo: f64, hi: f64) -> bool {
    lo <= hi + 1e-12 * (1.0 + hi.abs())
}

fn valid_values(bounds: &[BoundValue], dir: Direction) -> impl Iterator<Item = f64> + '_ {
    bounds
        .iter()
        .filter(move |b| b.valid && b.direction == dir)
        .map(|b| b.energy)
}

pub fn endpoints_suite() -> Result<Suite> {
    timed("endpoints", || {
        let mut checks = Vec::new();
        let boson = alpha(0.0);
        let fermion = alpha(1.0);

        let mut rows = 0;
        let mut worst: f64 = 0.0;
        for n in 1..=200 {
            for b in collect_bounds(n, &boson, Neumann)
                .iter()
                .filter(|b| b.valid)
            {
                rows += 1;
                worst = worst.max(b.energy.abs());
            }
        }
        checks.push(Check::new(
            "neumann bounds vanish at alpha = 0",
            rows > 0 && worst <= 1e-12,
            format!("{rows} valid rows, max |value| = {worst:.3e}"),
        ));

        let mut worst: f64 = 0.0;
        for n in (1..=200).chain([1_000, 10_000]) {
            let g = global_upper_dirichlet(n, &boson)?.checked_energy()?;
            worst = worst.max(rel_err(g, 2.0 * PI * PI * n as f64));
        }
        checks.push(Check::new(
            "global upper = 2 pi^2 N at alpha = 0",
            worst <= 1e-10,
            format!("max rel error {worst:.3e}"),
        ));

        let exact = (1..=200).all(|n| {
            endpoint_energy(n, &boson, Neumann) == Some(0.0)
                && endpoint_energy(n, &boson, Dirichlet) == Some(2.0 * PI * PI * n as f64)
        });
        checks.push(Check::new("boson endpoint energies", exact, "N = 1..200"));

        for bc in [Neumann, Dirichlet] {
            let n = 10_000u64;
            let e = endpoint_energy(n, &fermion, bc).expect("fermion endpoint");
            let ratio = e / (n * n) as f64 / (2.0 * PI);
            checks.push(Check::new(
                format!("fermion E/N^2 -> 2 pi ({})", bc.as_str()),
                (ratio - 1.0).abs() <= 0.05,
                format!("N = 10^4, ratio to 2 pi = {ratio:.5}"),
            ));
        }

        let mut bad = Vec::new();
        for n in 1..=100 {
            for (a, bcs) in [
                (boson, [Neumann, Dirichlet]),
                (fermion, [Neumann, Dirichlet]),
            ] {
                for bc in bcs {
                    let e = endpoint_energy(n, &a, bc).expect("endpoint");
                    let bounds = collect_bounds(n, &a, bc);
                    if valid_values(&bounds, Direction::Lower).any(|l| !ordered(l, e))
                        || valid_values(&bounds, Direction::Upper).any(|u| !ordered(e, u))
                    {
                        bad.push(format!("N={n} alpha={a} {}", bc.as_str()));
                    }
                }
            }
        }
        checks.push(Check::new(
            "bounds bracket the exact endpoint energies",
            bad.is_empty(),
            if bad.is_empty() {
                "N = 1..100, alpha in {0, 1}, both bc".to_string()
            } else {
                format!("violations: {}", bad.join(", "))
            },
        ));
        Ok(checks)
    })
}

/// J_1'(x) = J_0(x) − J_1(x)/x from plain f64 power series.
fn bessel_j1_prime_oracle(x: f64) -> f64 {
    let h = 0.25 * x * x;
    let (mut t0, mut t1) = (1.0, 0.5 * x);
    let (mut j0, mut j1) = (t0, t1);
    for k in 1..60 {
        let k = k as f64;
        t0 *= -h / (k * k);
        t1 *= -h / (k * (k + 1.0));
        j0 += t0;
        j1 += t1;
    }
    j0 - j1 / x
}

fn j1_prime_zero_oracle() -> f64 {
    let (mut lo, mut hi) = (1.0, 3.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if bessel_j1_prime_oracle(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn bessel_suite(orders: usize) -> Result<Suite> {
    timed("bessel", || {
        let mut checks = Vec::new();
        let mut violations = Vec::new();
        for k in 1..=orders {
            let nu = k as f64 / orders as f64;
            let j = first_derivative_zero(BesselOrder::new(nu)?)?;
            if !((2.0 * nu).sqrt() <= j && j <= (2.0 * nu * (1.0 + nu)).sqrt()) {
                violations.push(format!("nu={nu}: j'={j}"));
            }
        }
        checks.push(Check::new(
            "sqrt(2 nu) <= j'_nu <= sqrt(2 nu (1 + nu))",
            violations.is_empty(),
            if violations.is_empty() {
                format!("{orders} orders in (0, 1]")
            } else {
                violations.join(", ")
            },
        ));
        let j1 = first_derivative_zero(BesselOrder::new(1.0)?)?;
        let oracle = j1_prime_zero_oracle();
        checks.push(Check::new(
            "j'_1 against bisection oracle",
            (j1 - oracle).abs() <= 1e-10 && (j1 - 1.8412).abs() <= 1e-3,
            format!("j'_1 = {j1:.12}, oracle {oracle:.12}"),
        ));
        Ok(checks)
    })
}

pub const DEFAULT_INTEGRAL_ALPHAS: [f64; 4] = [0.01, 0.05, 0.2, 0.8];
pub const DEFAULT_QUAD_POINTS: usize = 4000;

pub fn integrals_suite(alphas: &[Alpha], quad_points: usize) -> Result<Suite> {
    timed("integrals", || {
        let mut checks = Vec::new();
        for a in alphas {
            let report = verify_auxiliary_integrals(a, quad_points)?;
            for c in report.checks {
                checks.push(Check::new(
                    format!("{} (alpha = {a})", c.name),
                    c.rel_error <= anyon_mc::integrals::AUX_TOL,
                    format!(
                        "quadrature {:.12e}, closed form {:.12e}, rel error {:.2e}",
                        c.computed, c.closed_form, c.rel_error
                    ),
                ));
            }
        }
        Ok(checks)
    })
}

/// min over p ∈ {0..n−2}, q ∈ ℤ of |(2p+1)α − 2q| by direct enumeration.
fn brute_alpha_n(a: &Alpha, n: u64) -> f64 {
    match a.rational() {
        Some(r) => {
            let (mu, nu) = (r.num() as i128, r.den() as i128);
            let mut best = i128::MAX;
            for p in 0..=(n as i128 - 2) {
                for q in 0..=(2 * p + 2) {
                    best = best.min(((2 * p + 1) * mu - 2 * q * nu).abs());
                }
            }
            best as f64 / nu as f64
        }
        None => {
            let x = a.value();
            let mut best = f64::INFINITY;
            for p in 0..=(n - 2) {
                for q in 0..=(2 * p + 2) {
                    best = best.min(((2 * p + 1) as f64 * x - 2.0 * q as f64).abs());
                }
            }
            best
        }
    }
}

pub const FRACTIONALITY_SAMPLES: usize = 500;

pub fn fractionality_suite(seed: u64, samples: usize) -> Result<Suite> {
    timed("fractionality", || {
        let mut checks = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut mismatches = Vec::new();
        for i in 0..samples {
            let a = if i % 2 == 0 {
                let q: i64 = rng.random_range(1..=40);
                Alpha::from_fraction(rng.random_range(0..=q), q)?
            } else {
                Alpha::new(rng.random::<f64>())?
            };
            let n = rng.random_range(2..=30);
            let got = fractionality(&a, n)?.alpha_n;
            let want = brute_alpha_n(&a, n);
            if (got - want).abs() > 1e-12 {
                mismatches.push(format!("alpha={a} n={n}: {got} vs {want}"));
            }
        }
        checks.push(Check::new(
            "alpha_N against brute force",
            mismatches.is_empty(),
            if mismatches.is_empty() {
                format!("{samples} random (alpha, n), n <= 30, seed {seed}")
            } else {
                mismatches.join("; ")
            },
        ));

        let mut bad = Vec::new();
        let mut cases = 0;
        for nu in 2..=13u64 {
            for mu in (1..nu).filter(|&m| anyon_core::alpha::gcd(m, nu) == 1) {
                let a = Alpha::from_fraction(mu as i64, nu as i64)?;
                let expected = if mu % 2 == 1 { 1.0 / nu as f64 } else { 0.0 };
                for n in 2 * nu..=2 * nu + 3 {
                    cases += 1;
                    let f = fractionality(&a, n)?;
                    let brute = brute_alpha_n(&a, n);
                    if f.alpha_star != expected || f.alpha_n != expected || brute != expected {
                        bad.push(format!("{mu}/{nu} n={n}"));
                    }
                }
            }
        }
        checks.push(Check::new(
            "alpha_star = 1/nu for odd numerators (0 for even)",
            bad.is_empty(),
            if bad.is_empty() {
                format!("{cases} cases, nu <= 13, n in [2 nu, 2 nu + 3]")
            } else {
                bad.join(", ")
            },
        ));
        Ok(checks)
    })
}

/// Outcome of the ordering sweep at one α.
struct OrderingSweep {
    points: usize,
    pairs: usize,
    violations: Vec<String>,
}

fn ordering_at(a: Alpha, max_n: u64) -> OrderingSweep {
    let mut out = OrderingSweep {
        points: 0,
        pairs: 0,
        violations: Vec::new(),
    };
    for n in 1..=max_n {
        out.points += 1;
        let neumann = collect_bounds(n, &a, Neumann);
        let dirichlet = collect_bounds(n, &a, Dirichlet);
        // Every lower bound is on E^N, and E^N ≤ E^D.
        let lowers: Vec<(f64, &str)> = neumann
            .iter()
            .filter(|b| b.valid && b.direction == Direction::Lower)
            .map(|b| (b.energy, b.source))
            .collect();
        let uppers = neumann
            .iter()
            .chain(&dirichlet)
            .filter(|b| b.valid && b.direction == Direction::Upper);
        for u in uppers {
            for &(l, src) in &lowers {
                out.pairs += 1;
                if !ordered(l, u.energy) {
                    out.violations.push(format!(
                        "N={n} alpha={a}: {src} {l} > {} {}",
                        u.source, u.energy
                    ));
                }
            }
        }
    }
    out
}

pub fn ordering_suite(quick: bool) -> Result<Suite> {
    timed("ordering", || {
        let (max_n, step) = if quick { (40, 2) } else { (200, 1) };
        let alphas: Vec<Alpha> = (0..=20)
            .step_by(step)
            .map(|k| alpha(k as f64 * 0.05))
            .collect();
        let sweeps: Vec<OrderingSweep> =
            alphas.par_iter().map(|&a| ordering_at(a, max_n)).collect();
        let points: usize = sweeps.iter().map(|s| s.points).sum();
        let pairs: usize = sweeps.iter().map(|s| s.pairs).sum();
        let violations: Vec<String> = sweeps.into_iter().flat_map(|s| s.violations).collect();
        let mut checks = vec![Check::new(
            "every valid lower <= every valid upper",
            violations.is_empty() && pairs > 0,
            if violations.is_empty() {
                format!("{points} (N, alpha) points, {pairs} pairs, N <= {max_n}")
            } else {
                format!("{} violations, first: {}", violations.len(), violations[0])
            },
        )];

        let n = 1_000_000u64;
        let mut worst: f64 = 0.0;
        let mut detail = String::new();
        for a in &alphas {
            let (q, _) = quadratic_lower(n, a, 1, None)?;
            let limit = c_alpha_lower(a)? / 4.0;
            let ratio = q.energy / (n as f64 * n as f64);
            let err = if limit == 0.0 {
                ratio.abs()
            } else {
                rel_err(ratio, limit)
            };
            if err >= worst {
                worst = err;
                detail = format!("worst at alpha = {a}: E/N^2 = {ratio:.6e}, c/4 = {limit:.6e}");
            }
        }
        checks.push(Check::new(
            "quadratic / N^2 -> c_alpha / 4 at N = 10^6",
            worst <= 0.01,
            format!("max rel deviation {worst:.2e}; {detail}"),
        ));
        Ok(checks)
    })
}

/// Slack added on both sides of the two-anyon sandwich.
pub const SANDWICH_ABS_TOL: f64 = 1e-6;
/// Fraction of the closed-form lower bound the lattice value must reach.
pub const SANDWICH_LOWER_FACTOR: f64 = 0.95;

#[derive(Debug, Clone, Serialize)]
pub struct Sandwich {
    pub lower_bound: f64,
    pub lower_limit: f64,
    pub upper_bound: f64,
    pub upper_source: &'static str,
    pub abs_tol: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct E2Report {
    #[serde(flatten)]
    pub spectral: SpectralResult,
    pub sandwich: Sandwich,
}

/// Closed-form bracket of the two-anyon ground energy for `bc`.
pub fn e2_bracket(a: &Alpha, bc: BoundaryCondition) -> Result<(f64, f64, &'static str)> {
    // E₂ᴰ ≥ E₂ᴺ, so the Neumann lower bound serves both.
    let lower = e2_lower(a)?.checked_energy()?;
    let upper = match bc {
        Neumann => {
            let u = e2_upper(a)?;
            (u.checked_energy()?, u.source)
        }
        Dirichlet => collect_bounds(2, a, Dirichlet)
            .into_iter()
            .filter(|b| b.valid && b.direction == Direction::Upper)
            .map(|b| (b.energy, b.source))
            .min_by(|x, y| x.0.total_cmp(&y.0))
            .expect("global upper is always valid"),
    };
    Ok((lower, upper.0, upper.1))
}

pub fn e2_sandwich(a: Alpha, bc: BoundaryCondition, grids: &[usize], tol: f64) -> Result<E2Report> {
    let spectral = e2_numeric(a, bc, grids, tol)?;
    let (lower, upper, source) = e2_bracket(&a, bc)?;
    let lower_limit = SANDWICH_LOWER_FACTOR * lower;
    let e = spectral.extrapolated;
    let pass =
        e.is_finite() && e >= lower_limit - SANDWICH_ABS_TOL && e <= upper + SANDWICH_ABS_TOL;
    Ok(E2Report {
        spectral,
        sandwich: Sandwich {
            lower_bound: lower,
            lower_limit,
            upper_bound: upper,
            upper_source: source,
            abs_tol: SANDWICH_ABS_TOL,
            pass,
        },
    })
}

/// (N, α) pairs of the Monte Carlo dominance check, all Neumann.
pub const DOMINANCE_CASES: [(usize, f64); 3] = [(2, 0.01), (3, 0.01), (4, 0.005)];
/// Absolute slack on Monte Carlo comparisons, on top of three standard errors.
pub const MC_SLACK: f64 = 1e-3;

#[derive(Debug, Clone)]
pub struct CrossOracleParams {
    pub samples: u64,
    pub seed: u64,
    pub grids: Vec<usize>,
    /// Grid sizes for the dense-vs-iterative comparison.
    pub dense_grids: Vec<usize>,
    pub dense_alphas: Vec<f64>,
}

impl CrossOracleParams {
    pub fn full() -> Self {
        CrossOracleParams {
            samples: 1_000_000,
            seed: 2024,
            grids: vec![8, 12, 16, 20],
            dense_grids: vec![4, 6, 8],
            dense_alphas: vec![0.0, 0.25, 0.5, 0.75, 1.0],
        }
    }

    pub fn quick() -> Self {
        CrossOracleParams {
            samples: 100_000,
            seed: 2024,
            grids: vec![8, 12, 16],
            dense_grids: vec![4, 6],
            dense_alphas: vec![0.0, 0.25, 0.5, 0.75, 1.0],
        }
    }
}

/// Monte Carlo quotient of the Dyson state against its closed-form bound.
pub fn dominance_checks(samples: u64, seed: u64) -> Result<(Vec<Check>, f64, f64)> {
    let mut checks = Vec::new();
    let mut two = (f64::NAN, f64::NAN);
    for (n, x) in DOMINANCE_CASES {
        let a = alpha(x);
        let est = rayleigh_quotient(&DysonTrialConfig::new(n, a, Neumann, samples, seed)?)?;
        let bound = dyson_upper_neumann(n as u64, &a)?.checked_energy()?;
        let lhs = est.mean - 3.0 * est.stderr - MC_SLACK;
        checks.push(Check::new(
            format!("MC quotient <= upperN (N = {n}, alpha = {x})"),
            lhs <= bound,
            format!(
                "mean {:.6} +- {:.6}, closed form {bound:.6}, {samples} samples",
                est.mean, est.stderr
            ),
        ));
        if n == 2 {
            two = (est.mean, est.stderr);
        }
    }
    Ok((checks, two.0, two.1))
}

/// Dense against iterative ground energies, two anyons, Neumann. The dense
/// side runs in the real basis given by the diagonal reflection.
pub fn dense_checks(grids: &[usize], alphas: &[f64]) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for &n in grids {
        let mut worst: f64 = 0.0;
        for &x in alphas {
            let op = LatticeProblem::new(n, 2, alpha(x), Neumann)?.build_hamiltonian()?;
            let dense = dense_ground_energy_real(op.matrix(), &op.diagonal_reflection())?;
            let iter = ground_energy(op.matrix(), &SolverOptions::with_tol(1e-10))?.energy;
            worst = worst.max((dense - iter).abs());
        }
        checks.push(Check::new(
            format!("dense vs iterative (n = {n})"),
            worst <= 1e-8,
            format!("max |difference| {worst:.2e} over alpha in {alphas:?}"),
        ));
    }
    Ok(checks)
}

pub fn cross_oracle_suite(params: &CrossOracleParams) -> Result<Suite> {
    timed("cross-oracle", || {
        let (mut checks, mean, stderr) = dominance_checks(params.samples, params.seed)?;
        let lattice = e2_numeric(alpha(0.01), Neumann, &params.grids, 1e-8)?;
        checks.push(Check::new(
            "MC quotient >= lattice E2 (alpha = 0.01)",
            mean + 3.0 * stderr + MC_SLACK >= lattice.extrapolated,
            format!(
                "MC {mean:.6} +- {stderr:.6}, lattice {:.6} on grids {:?}",
                lattice.extrapolated, params.grids
            ),
        ));
        checks.extend(dense_checks(&params.dense_grids, &params.dense_alphas)?);
        Ok(checks)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j1_oracle_value() {
        assert!((j1_prime_zero_oracle() - 1.841_183_781_340_659).abs() < 1e-12);
    }

    #[test]
    fn brute_force_examples() {
        let a: Alpha = "1/3".parse().unwrap();
        assert_eq!(brute_alpha_n(&a, 2), 1.0 / 3.0);
        assert_eq!(brute_alpha_n(&a, 3), 1.0 / 3.0);
        assert_eq!(brute_alpha_n(&a, 4), 1.0 / 3.0);
        let c: Alpha = "2/3".parse().unwrap();
        assert_eq!(brute_alpha_n(&c, 2), 2.0 / 3.0);
        assert_eq!(brute_alpha_n(&c, 3), 0.0);
        let b = Alpha::new(0.3).unwrap();
        assert!((brute_alpha_n(&b, 3) - 0.3).abs() < 1e-15);
        assert!((brute_alpha_n(&b, 5) - 0.1).abs() < 1e-12);
    }

    #[test]
    fn render_marks_failures() {
        let s = Suite {
            name: "demo".into(),
            checks: vec![Check::new("a", true, "x"), Check::new("bb", false, "y")],
            seconds: 0.0,
        };
        assert!(!s.passed());
        let text = s.render();
        assert!(text.contains("PASS  a "));
        assert!(text.contains("FAIL  bb"));
        assert!(text.contains("2 checks, 1 failed"));
    }

    #[test]
    fn quick_suites_pass() {
        for s in [
            endpoints_suite().unwrap(),
            bessel_suite(20).unwrap(),
            fractionality_suite(1, 50).unwrap(),
            ordering_suite(true).unwrap(),
        ] {
            assert!(s.passed(), "{}", s.render());
        }
    }
}
