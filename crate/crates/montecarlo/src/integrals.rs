//! Quadrature checks of the integrals entering the Dyson upper bound.

use std::f64::consts::{PI, SQRT_2};

use anyon_core::{Alpha, BoundaryCondition};
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::trial::{jastrow, one_body, BALL_RADIUS};

pub const MIN_QUAD_POINTS: usize = 1000;
pub const AUX_TOL: f64 = 1e-6;
const GL_ORDER: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntegralCheck {
    pub name: &'static str,
    pub computed: f64,
    pub closed_form: f64,
    /// Relative error; absolute when the closed form vanishes.
    pub rel_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuxiliaryReport {
    pub alpha: f64,
    pub quad_points: usize,
    pub checks: Vec<IntegralCheck>,
    pub passed: bool,
}

/// Gauss–Legendre nodes and weights on [−1, 1].
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

/// Composite Gauss–Legendre rule on [a, b] with `points` nodes in total.
fn composite_rule(a: f64, b: f64, points: usize) -> Vec<(f64, f64)> {
    let base = gauss_legendre(GL_ORDER);
    let panels = (points / GL_ORDER).max(1);
    let width = (b - a) / panels as f64;
    let mut out = Vec::with_capacity(panels * GL_ORDER);
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * width;
        for &(x, w) in &base {
            out.push((mid + 0.5 * width * x, 0.5 * width * w));
        }
    }
    out
}

/// ∫_B h(|x|) dx over the ball of radius √2, through r = √2·e^{−s}, given
/// `h_r2(r)` = h(r)·r² (finite as r → 0 for the integrands here). `decay` is
/// the exponential rate of the transformed integrand in s.
fn radial<F: Fn(f64) -> f64>(h_r2: F, decay: f64, points: usize) -> f64 {
    let span = if decay > 0.0 { 40.0 / decay } else { 1.0 };
    composite_rule(0.0, span, points)
        .into_iter()
        .map(|(s, w)| {
            let r = BALL_RADIUS * (-s).exp();
            w * h_r2(r) * 2.0 * PI
        })
        .sum()
}

fn golden_max<F: Fn(f64) -> f64>(g: F, mut lo: f64, mut hi: f64) -> f64 {
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..200 {
        let a = hi - ratio * (hi - lo);
        let b = lo + ratio * (hi - lo);
        if g(a) < g(b) {
            lo = a;
        } else {
            hi = b;
        }
    }
    0.5 * (lo + hi)
}

fn check(name: &'static str, computed: f64, closed_form: f64) -> IntegralCheck {
    let err = (computed - closed_form).abs();
    IntegralCheck {
        name,
        computed,
        closed_form,
        rel_error: if closed_form == 0.0 {
            err
        } else {
            err / closed_form.abs()
        },
    }
}

/// Reproduces the five closed forms ∫|∇f|² = πα, ∫f|∇f| = √8πα/(1+2α),
/// ∫(1−f²) = 2πα/(1+α), ‖φ‖₄⁴ = 9/4 and ‖φ‖∞² = 4.
pub fn verify_auxiliary_integrals(alpha: &Alpha, quad_points: usize) -> Result<AuxiliaryReport> {
    if quad_points < MIN_QUAD_POINTS {
        return Err(invalid(format!(
            "need at least {MIN_QUAD_POINTS} quadrature points"
        )));
    }
    let a = alpha.value();
    let f = |r: f64| jastrow(r, a);
    // |∇f| = αf/r inside the ball
    let grad_sq = radial(|r| (a * f(r)).powi(2), 2.0 * a, quad_points);
    let f_grad = radial(|r| a * f(r).powi(2) * r, 2.0 * a + 1.0, quad_points);
    let deficit = radial(|r| (1.0 - f(r).powi(2)) * r * r, 2.0, quad_points);

    let phi = |x: f64, y: f64| one_body([x, y], BoundaryCondition::Dirichlet);
    let rule = composite_rule(0.0, 1.0, quad_points);
    let phi_l4: f64 = rule
        .iter()
        .map(|&(x, wx)| {
            wx * rule
                .iter()
                .map(|&(y, wy)| wy * phi(x, y).powi(4))
                .sum::<f64>()
        })
        .sum();

    let (mut bx, mut by, mut best) = (0.0, 0.0, f64::NEG_INFINITY);
    for &(x, _) in rule.iter().step_by(GL_ORDER) {
        for &(y, _) in rule.iter().step_by(GL_ORDER) {
            let v = phi(x, y).powi(2);
            if v > best {
                (bx, by, best) = (x, y, v);
            }
        }
    }
    for _ in 0..3 {
        bx = golden_max(|x| phi(x, by).powi(2), 0.0, 1.0);
        by = golden_max(|y| phi(bx, y).powi(2), 0.0, 1.0);
    }
    let phi_sup_sq = phi(bx, by).powi(2);

    let checks = vec![
        check("grad_f_sq", grad_sq, PI * a),
        check("f_grad_f", f_grad, 2.0 * SQRT_2 * PI * a / (1.0 + 2.0 * a)),
        check("one_minus_f_sq", deficit, 2.0 * PI * a / (1.0 + a)),
        check("phi_l4_pow4", phi_l4, 2.25),
        check("phi_sup_sq", phi_sup_sq, 4.0),
    ];
    let passed = checks.iter().all(|c| c.rel_error <= AUX_TOL);
    Ok(AuxiliaryReport {
        alpha: a,
        quad_points,
        checks,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_is_exact_for_polynomials() {
        let rule = gauss_legendre(GL_ORDER);
        let wsum: f64 = rule.iter().map(|p| p.1).sum();
        assert!((wsum - 2.0).abs() < 1e-14);
        // degree 19 is the highest exact degree
        let int: f64 = rule.iter().map(|&(x, w)| w * x.powi(18)).sum();
        assert!((int - 2.0 / 19.0).abs() < 1e-14);
    }

    #[test]
    fn examples() {
        let r = verify_auxiliary_integrals(&Alpha::new(0.05).unwrap(), 2000).unwrap();
        assert!(r.passed, "{r:?}");
        assert!((r.checks[0].computed - PI * 0.05).abs() < 1e-8);
        assert!((r.checks[2].computed - 2.0 * PI * 0.05 / 1.05).abs() < 1e-8);
        assert!((r.checks[3].computed - 2.25).abs() < 1e-10);
        let r = verify_auxiliary_integrals(&Alpha::BOSON, 1000).unwrap();
        assert!(r.passed);
        assert!(verify_auxiliary_integrals(&Alpha::FERMION, 999).is_err());
    }
}
