//! Closed-form upper and lower bounds on the N-anyon ground-state energy.
//!
//! Bounds whose validity region is restricted (the Dyson bounds) return a
//! [`BoundValue`] with `valid = false` instead of an error, so sweeps over
//! (N, α) grids never abort.

use std::f64::consts::PI;

use serde::Serialize;

use crate::alpha::Alpha;
use crate::error::{invalid, Result};
use crate::model::{BoundValue, BoundaryCondition, Direction, SquareBox};
use crate::special::{f_envelope, first_derivative_zero, BesselOrder};

use BoundaryCondition::{Dirichlet, Neumann};
use Direction::{Lower, Upper};

pub const TAG_UPPER_D: &str = "upperD";
pub const TAG_UPPER_N: &str = "upperN";
pub const TAG_GLOBAL_UPPER: &str = "global-upper";
pub const TAG_E2_LOWER: &str = "e2-lower";
pub const TAG_E2_UPPER: &str = "e2-upper";
pub const TAG_APRIORI: &str = "apriori-limit";
pub const TAG_LINEAR: &str = "new-lower-bound";
pub const TAG_QUADRATIC: &str = "quadratic";
pub const TAG_ALPHA_N: &str = "alpha_N";

const PI2: f64 = PI * PI;

fn require_particles(n: u64, min: u64) -> Result<()> {
    if n < min {
        return Err(invalid(format!("need N >= {min}, got {n}")));
    }
    Ok(())
}

/// Dyson-type upper bound on the Dirichlet energy, valid when 8παN < 1.
pub fn dyson_upper_dirichlet(n: u64, alpha: &Alpha) -> Result<BoundValue> {
    require_particles(n, 1)?;
    let a = alpha.value();
    let nf = n as f64;
    let gap = 1.0 - 8.0 * PI * a * nf;
    if gap <= 0.0 {
        return Ok(BoundValue::invalid(
            TAG_UPPER_D,
            Upper,
            Dirichlet,
            n,
            "8παN ≥ 1",
        ));
    }
    let three_body = 1.0 + (4.0f64 / 3.0).powi(3) * 20.0 * PI * (nf - 2.0) * a;
    let energy = 2.0 * PI2 * nf + 4.5 * PI * nf * (nf - 1.0) * a * three_body / (gap * gap);
    Ok(BoundValue::valid(TAG_UPPER_D, Upper, Dirichlet, n, energy))
}

/// Dyson-type upper bound on the Neumann energy, valid when 2παN < 1.
pub fn dyson_upper_neumann(n: u64, alpha: &Alpha) -> Result<BoundValue> {
    require_particles(n, 1)?;
    let a = alpha.value();
    let nf = n as f64;
    let gap = 1.0 - 2.0 * PI * a * nf;
    if gap <= 0.0 {
        return Ok(BoundValue::invalid(
            TAG_UPPER_N,
            Upper,
            Neumann,
            n,
            "2παN ≥ 1",
        ));
    }
    let three_body = 1.0 + 20.0 / 3.0 * PI * (nf - 2.0) * a;
    let energy = 2.0 * PI * nf * (nf - 1.0) * a * three_body / (gap * gap);
    Ok(BoundValue::valid(TAG_UPPER_N, Upper, Neumann, n, energy))
}

/// Upper bound on the Dirichlet energy of order N + αN², valid for all N, α.
///
/// Three regimes: one particle per sub-box when 16πα ≥ 1; a single Dyson box
/// when 16παN < 1; otherwise boxes of ⌊1/(16πα)⌋ particles.
pub fn global_upper_dirichlet(n: u64, alpha: &Alpha) -> Result<BoundValue> {
    require_particles(n, 1)?;
    let a = alpha.value();
    let nf = n as f64;
    let energy = if 16.0 * PI * a >= 1.0 {
        let r = nf.sqrt() + 1.0;
        2.0 * PI2 * nf * r * r
    } else if 16.0 * PI * a * nf < 1.0 {
        2.0 * PI2 * nf + 2.0 * PI * nf * nf * a * (9.0 + 80.0 / 3.0)
    } else {
        72.0 * PI * a * nf * nf * (2.0 * PI2 + 9.0 / 8.0 + 10.0 / 3.0)
    };
    Ok(BoundValue::valid(
        TAG_GLOBAL_UPPER,
        Upper,
        Dirichlet,
        n,
        energy,
    ))
}

/// Lower bound E₂ ≥ f((j_α′)²) ≥ (j_α′)²/6 on the two-anyon Neumann energy.
pub fn e2_lower(alpha: &Alpha) -> Result<BoundValue> {
    let j = first_derivative_zero(BesselOrder::new(alpha.value())?)?;
    let energy = f_envelope(j * j)?.lower;
    Ok(BoundValue::valid(TAG_E2_LOWER, Lower, Neumann, 2, energy))
}

/// Upper bound on the two-anyon Neumann energy: the Dyson bound where it
/// applies, and the α-independent 2π² otherwise.
pub fn e2_upper(alpha: &Alpha) -> Result<BoundValue> {
    let dyson = dyson_upper_neumann(2, alpha)?;
    let mut energy = 2.0 * PI2;
    if dyson.valid {
        energy = energy.min(dyson.energy);
    }
    Ok(BoundValue::valid(TAG_E2_UPPER, Upper, Neumann, 2, energy))
}

/// C(N,2)·(3/4)^(N−2), in log space above N = 50.
pub fn pair_occupation_weight(n: u64) -> f64 {
    let nf = n as f64;
    if n <= 50 {
        0.5 * nf * (nf - 1.0) * 0.75f64.powi(n as i32 - 2)
    } else {
        ((0.5 * nf * (nf - 1.0)).ln() + (nf - 2.0) * 0.75f64.ln()).exp()
    }
}

/// A-priori lower bound on E_N for N ≥ 3 in terms of a lower bound `e2` on
/// the two-anyon energy (the caller guarantees `e2 ≤ E₂`).
pub fn apriori_lower(n: u64, alpha: &Alpha, e2: f64) -> Result<BoundValue> {
    let _ = alpha;
    require_particles(n, 3)?;
    if !(e2.is_finite() && e2 >= 0.0) {
        return Err(invalid(format!(
            "e2 must be a nonnegative number, got {e2}"
        )));
    }
    let b = pair_occupation_weight(n);
    let d = PI + 4.0 * e2.sqrt();
    let energy = PI2 * b * e2 / (d * d + e2 * b);
    Ok(BoundValue::valid(TAG_APRIORI, Lower, Neumann, n, energy))
}

/// Positive root of (π + 4√x)² + 9x/4 = 9π²/4, i.e. π²(877 − 96√69)/5329.
pub fn apriori_root() -> f64 {
    PI2 * (877.0 - 96.0 * 69f64.sqrt()) / 5329.0
}

/// Rigorous lower bound ¼·min{e2_lower(α), 0.1473…} on
/// c(α) = ¼·min{E₂, E₃, E₄}.
pub fn c_alpha_lower(alpha: &Alpha) -> Result<f64> {
    let e2 = e2_lower(alpha)?.energy;
    Ok(0.25 * e2.min(apriori_root()))
}

/// Linear lower bound E_N ≥ c(α)(N − 1)₊.
pub fn linear_lower(n: u64, alpha: &Alpha) -> Result<BoundValue> {
    require_particles(n, 1)?;
    let c = c_alpha_lower(alpha)?;
    let energy = c * n.saturating_sub(1) as f64;
    Ok(BoundValue::valid(TAG_LINEAR, Lower, Neumann, n, energy))
}

/// Parameters of the linear-to-quadratic lift.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadraticLiftParams {
    pub k: u64,
    pub c: f64,
    /// Sub-squares per side, ⌈√(N/(2k))⌉.
    pub subdivisions: u64,
    /// Expected particles per sub-square, N/K².
    pub rho_q: f64,
}

impl QuadraticLiftParams {
    pub fn new(n: u64, k: u64, c: f64) -> Result<Self> {
        require_particles(n, 1)?;
        if k < 1 {
            return Err(invalid("exclusion threshold k must be >= 1"));
        }
        if !(c.is_finite() && c >= 0.0) {
            return Err(invalid(format!("coefficient c must be >= 0, got {c}")));
        }
        // smallest K with 2k·K² ≥ N
        let target = n.div_ceil(2 * k);
        let mut kk = (target as f64).sqrt() as u64;
        while (kk as u128) * (kk as u128) < target as u128 {
            kk += 1;
        }
        while kk > 1 && ((kk - 1) as u128) * ((kk - 1) as u128) >= target as u128 {
            kk -= 1;
        }
        let kk = kk.max(1);
        Ok(QuadraticLiftParams {
            k,
            c,
            subdivisions: kk,
            rho_q: n as f64 / (kk * kk) as f64,
        })
    }
}

/// Quadratic lower bound c·N²/(4k)·(2s − s²)₊ with s = (1 + √(2k/N))².
///
/// Requires E_M ≥ c(M − k)₊ for all M; the default (c_alpha_lower, k = 1)
/// satisfies this.
pub fn quadratic_lower(
    n: u64,
    alpha: &Alpha,
    k: u64,
    c_override: Option<f64>,
) -> Result<(BoundValue, QuadraticLiftParams)> {
    let c = match c_override {
        Some(c) => c,
        None => c_alpha_lower(alpha)?,
    };
    let params = QuadraticLiftParams::new(n, k, c)?;
    let nf = n as f64;
    let s = (1.0 + (2.0 * k as f64 / nf).sqrt()).powi(2);
    let energy = c * nf * nf / (4.0 * k as f64) * (2.0 * s - s * s).max(0.0);
    Ok((
        BoundValue::valid(TAG_QUADRATIC, Lower, Neumann, n, energy),
        params,
    ))
}

/// Fractionality α_n of α and its limit α_*.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fractionality {
    pub alpha: Alpha,
    pub n: u64,
    pub alpha_n: f64,
    pub alpha_star: f64,
    pub note: Option<String>,
}

/// α_n = min over p ∈ {0..n−2}, q ∈ ℤ of |(2p+1)α − 2q|; exact for rational α.
pub fn fractionality(alpha: &Alpha, n: u64) -> Result<Fractionality> {
    require_particles(n, 2)?;
    let (alpha_n, alpha_star, note) = match alpha.rational() {
        Some(r) => {
            let (mu, nu) = (r.num() as u128, r.den() as u128);
            let two_nu = 2 * nu;
            let mut best = u128::MAX;
            for p in 0..=(n as u128 - 2) {
                let a = ((2 * p + 1) * mu) % two_nu;
                best = best.min(a.min(two_nu - a));
                if best == 0 {
                    break;
                }
            }
            let alpha_n = best as f64 / nu as f64;
            let (star, note) = if mu % 2 == 1 && nu >= 2 {
                (1.0 / nu as f64, None)
            } else if mu % 2 == 1 {
                (
                    0.0,
                    Some("alpha = 1: reduced-fraction rule gives alpha_star = 0 while inf alpha_N = 1".to_string()),
                )
            } else {
                (0.0, None)
            };
            (alpha_n, star, note)
        }
        None => {
            let a = alpha.value();
            let mut best = f64::INFINITY;
            for p in 0..=(n - 2) {
                let v = (2 * p + 1) as f64 * a;
                let q = (0.5 * v).round();
                best = best.min((v - 2.0 * q).abs());
            }
            (
                best,
                0.0,
                Some("non-rational input: alpha_star taken as 0".to_string()),
            )
        }
    };
    Ok(Fractionality {
        alpha: *alpha,
        n,
        alpha_n,
        alpha_star,
        note,
    })
}

/// Fractionality lower bound E_N ≥ f((j′_{α_N})²)(N − 1)₊.
pub fn alpha_n_lower(n: u64, alpha: &Alpha) -> Result<BoundValue> {
    require_particles(n, 1)?;
    if n == 1 {
        return Ok(BoundValue::valid(TAG_ALPHA_N, Lower, Neumann, n, 0.0));
    }
    let frac = fractionality(alpha, n)?;
    let j = first_derivative_zero(BesselOrder::new(frac.alpha_n)?)?;
    let energy = f_envelope(j * j)?.lower * (n - 1) as f64;
    Ok(BoundValue::valid(TAG_ALPHA_N, Lower, Neumann, n, energy))
}

/// Inputs of the Lieb–Thirring bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LtInputs {
    /// ∫ϱ², length⁻².
    pub density_l2sq: f64,
    /// ∫V₋², energy²·length².
    pub potential_neg_l2sq: f64,
    /// Universal constant C; never defaulted.
    pub lt_constant: f64,
}

impl LtInputs {
    pub fn new(density_l2sq: f64, potential_neg_l2sq: f64, lt_constant: f64) -> Result<Self> {
        if !(density_l2sq >= 0.0 && potential_neg_l2sq >= 0.0) {
            return Err(invalid("LT integrals must be nonnegative"));
        }
        if !(lt_constant.is_finite() && lt_constant > 0.0) {
            return Err(invalid(format!(
                "LT constant must be positive, got {lt_constant}"
            )));
        }
        Ok(LtInputs {
            density_l2sq,
            potential_neg_l2sq,
            lt_constant,
        })
    }
}

/// Kinetic energy ≥ Cα∫ϱ².
pub fn lt_kinetic_lower(inputs: &LtInputs, alpha: &Alpha) -> f64 {
    inputs.lt_constant * alpha.value() * inputs.density_l2sq
}

/// Schrödinger energy ≥ −∫V₋²/(4Cα); empty for bosons.
pub fn lt_schroedinger_lower(inputs: &LtInputs, alpha: &Alpha) -> Result<f64> {
    if alpha.value() == 0.0 {
        return Err(invalid(
            "the potential form of the LT bound needs alpha > 0",
        ));
    }
    Ok(-inputs.potential_neg_l2sq / (4.0 * inputs.lt_constant * alpha.value()))
}

/// N anyons in the harmonic trap |x|²: energy ≥ (4/3)N^{3/2}√(Cα/π).
pub fn harmonic_lower(n: u64, alpha: &Alpha, lt_constant: f64) -> Result<f64> {
    require_particles(n, 1)?;
    if !(lt_constant.is_finite() && lt_constant > 0.0) {
        return Err(invalid(format!(
            "LT constant must be positive, got {lt_constant}"
        )));
    }
    let nf = n as f64;
    Ok(4.0 / 3.0 * nf.powf(1.5) * (lt_constant * alpha.value() / PI).sqrt())
}

/// Local exclusion: kinetic energy inside Q ≥ c(α)/|Q|·(∫_Q ϱ − 1)₊.
pub fn local_exclusion(q: SquareBox, integrated_density: f64, alpha: &Alpha) -> Result<f64> {
    if !(integrated_density.is_finite() && integrated_density >= 0.0) {
        return Err(invalid("integrated density must be nonnegative"));
    }
    let c = c_alpha_lower(alpha)?;
    Ok(c / q.area() * (integrated_density - 1.0).max(0.0))
}

/// Every bound applicable to (N, α, bc). Numerical failures come back as
/// invalid records carrying the error text.
pub fn collect_bounds(n: u64, alpha: &Alpha, bc: BoundaryCondition) -> Vec<BoundValue> {
    let mut out = Vec::new();
    let mut push = |tag: &'static str, dir: Direction, r: Result<BoundValue>| match r {
        Ok(b) => out.push(b),
        Err(e) => out.push(BoundValue::invalid(tag, dir, bc, n, e.to_string())),
    };
    match bc {
        Neumann => {
            if n == 2 {
                push(TAG_E2_LOWER, Lower, e2_lower(alpha));
                push(TAG_E2_UPPER, Upper, e2_upper(alpha));
            }
            if n >= 3 {
                let r = e2_lower(alpha).and_then(|e2| apriori_lower(n, alpha, e2.energy));
                push(TAG_APRIORI, Lower, r);
            }
            push(TAG_LINEAR, Lower, linear_lower(n, alpha));
            push(
                TAG_QUADRATIC,
                Lower,
                quadratic_lower(n, alpha, 1, None).map(|(b, _)| b),
            );
            push(TAG_ALPHA_N, Lower, alpha_n_lower(n, alpha));
            push(TAG_UPPER_N, Upper, dyson_upper_neumann(n, alpha));
        }
        Dirichlet => {
            push(TAG_UPPER_D, Upper, dyson_upper_dirichlet(n, alpha));
            push(TAG_GLOBAL_UPPER, Upper, global_upper_dirichlet(n, alpha));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::endpoint_energy;
    use proptest::prelude::*;

    fn a(x: f64) -> Alpha {
        Alpha::new(x).unwrap()
    }

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol
    }

    #[test]
    fn dyson_dirichlet_examples() {
        let b = dyson_upper_dirichlet(1, &a(0.01)).unwrap();
        assert!(b.valid && close(b.energy, 2.0 * PI2, 1e-12));
        // 2π²·2 + 9π·0.001/(1 − 0.016π)²
        let b = dyson_upper_dirichlet(2, &a(0.001)).unwrap();
        let gap: f64 = 1.0 - 0.016 * PI;
        let interaction = 9.0 * PI * 0.001 / (gap * gap);
        assert!(close(interaction, 0.031_346, 1e-6));
        assert!(close(b.energy, 4.0 * PI2 + interaction, 1e-12));
        let b = dyson_upper_dirichlet(10, &a(0.01)).unwrap();
        assert!(!b.valid);
        assert_eq!(b.validity_reason, "8παN ≥ 1");
        assert!(b.checked_energy().is_err());
    }

    #[test]
    fn dyson_neumann_examples() {
        assert_eq!(dyson_upper_neumann(2, &Alpha::BOSON).unwrap().energy, 0.0);
        let b = dyson_upper_neumann(2, &a(0.01)).unwrap();
        assert!(close(b.energy, 0.164_382, 1e-6), "{}", b.energy);
        assert!(!dyson_upper_neumann(2, &a(0.2)).unwrap().valid);
        // three-body term at N = 3
        let b = dyson_upper_neumann(3, &a(0.01)).unwrap();
        let gap: f64 = 1.0 - 0.06 * PI;
        let expect = 2.0 * PI * 6.0 * 0.01 * (1.0 + 20.0 / 3.0 * PI * 0.01) / (gap * gap);
        assert!(close(b.energy, expect, 1e-12));
    }

    #[test]
    fn global_upper_cases() {
        let b = global_upper_dirichlet(4, &Alpha::FERMION).unwrap();
        assert!(close(b.energy, 72.0 * PI2, 1e-9));
        let b = global_upper_dirichlet(3, &Alpha::BOSON).unwrap();
        assert_eq!(b.energy, 6.0 * PI2);
        let b = global_upper_dirichlet(1000, &a(0.001)).unwrap();
        let expect = 72.0 * PI * 1e3 * (2.0 * PI2 + 9.0 / 8.0 + 10.0 / 3.0);
        assert!(close(b.energy, expect, 1e-6));
        assert!(close(b.energy / 5.473e6, 1.0, 1e-3));
        // case (b): 16πα < 1 and 16παN < 1
        let b = global_upper_dirichlet(2, &a(0.005)).unwrap();
        let expect = 4.0 * PI2 + 2.0 * PI * 4.0 * 0.005 * (9.0 + 80.0 / 3.0);
        assert!(close(b.energy, expect, 1e-12));
        assert!(global_upper_dirichlet(0, &a(0.1)).is_err());
    }

    #[test]
    fn e2_bounds() {
        assert_eq!(e2_lower(&Alpha::BOSON).unwrap().energy, 0.0);
        let lo = e2_lower(&Alpha::FERMION).unwrap().energy;
        assert!(close(lo, 1.8412f64.powi(2) / 6.0, 1e-4));
        let lo = e2_lower(&a(0.5)).unwrap().energy;
        assert!((1.0 / 6.0..=0.25).contains(&lo));

        assert_eq!(e2_upper(&Alpha::BOSON).unwrap().energy, 0.0);
        assert_eq!(e2_upper(&a(0.5)).unwrap().energy, 2.0 * PI2);
        assert!(close(e2_upper(&a(0.01)).unwrap().energy, 0.164_382, 1e-6));
    }

    #[test]
    fn apriori_examples() {
        assert_eq!(apriori_lower(3, &a(0.1), 0.0).unwrap().energy, 0.0);
        let e = apriori_lower(3, &a(0.1), 0.5).unwrap().energy;
        let d = PI + 4.0 * 0.5f64.sqrt();
        assert!(close(e, PI2 * 2.25 * 0.5 / (d * d + 1.125), 1e-14));
        assert!(close(e, 0.302_00, 1e-5));
        assert!(close(
            pair_occupation_weight(20),
            190.0 * 0.75f64.powi(18),
            1e-13
        ));
        assert!(close(pair_occupation_weight(20), 1.0706, 1e-3));
        let e = apriori_lower(20, &a(0.1), 0.5).unwrap().energy;
        assert!(e > 0.0 && e < 0.5);
        assert!(apriori_lower(2, &a(0.1), 0.5).is_err());
        assert!(apriori_lower(3, &a(0.1), -1.0).is_err());
    }

    #[test]
    fn log_space_weight_is_continuous() {
        let direct = |n: u64| 0.5 * (n * (n - 1)) as f64 * 0.75f64.powi(n as i32 - 2);
        for n in [51u64, 60, 120, 400] {
            let w = pair_occupation_weight(n);
            assert!((w / direct(n) - 1.0).abs() < 1e-12);
        }
        assert!(pair_occupation_weight(100_000) >= 0.0);
    }

    #[test]
    fn root_and_c_alpha() {
        let x = apriori_root();
        assert!(close(x, 0.1474, 5e-4));
        let lhs = (PI + 4.0 * x.sqrt()).powi(2) + 2.25 * x;
        assert!(close(lhs, 2.25 * PI2, 1e-10));
        assert_eq!(c_alpha_lower(&Alpha::BOSON).unwrap(), 0.0);
        let c1 = c_alpha_lower(&Alpha::FERMION).unwrap();
        assert!(close(c1, 0.25 * x, 1e-15));
        assert!(close(c1, 0.036_839, 1e-6));
    }

    #[test]
    fn linear_examples() {
        assert_eq!(linear_lower(1, &a(0.7)).unwrap().energy, 0.0);
        let e = linear_lower(8, &Alpha::FERMION).unwrap().energy;
        assert!(close(e, 0.257_88, 1e-5));
        assert_eq!(linear_lower(8, &Alpha::BOSON).unwrap().energy, 0.0);
    }

    #[test]
    fn quadratic_examples() {
        let (b, p) = quadratic_lower(2, &a(0.3), 1, Some(1.0)).unwrap();
        assert_eq!(b.energy, 0.0);
        assert_eq!(p.subdivisions, 1);
        let (b, p) = quadratic_lower(100, &a(0.3), 1, Some(1.0)).unwrap();
        let s = (1.0 + 0.02f64.sqrt()).powi(2);
        assert!(close(b.energy, 2500.0 * (2.0 * s - s * s), 1e-9));
        assert!(close(b.energy, 2270.7, 0.05));
        assert_eq!(p.subdivisions, 8);
        let (b, _) = quadratic_lower(1_000_000, &a(0.3), 1, Some(1.0)).unwrap();
        assert!(b.energy / 1e12 >= 0.24);
        assert!(quadratic_lower(10, &a(0.3), 0, Some(1.0)).is_err());
    }

    #[test]
    fn fractionality_examples() {
        let third: Alpha = "1/3".parse().unwrap();
        let f = fractionality(&third, 4).unwrap();
        assert!(close(f.alpha_n, 1.0 / 3.0, 1e-15));
        assert!(close(f.alpha_star, 1.0 / 3.0, 1e-15));
        let f = fractionality(&"2/3".parse().unwrap(), 3).unwrap();
        assert_eq!(f.alpha_n, 0.0);
        assert_eq!(f.alpha_star, 0.0);
        let f = fractionality(&a(0.37), 2).unwrap();
        assert_eq!(f.alpha_n, 0.37);
        assert_eq!(f.alpha_star, 0.0);
        assert!(f.note.is_some());
        let f = fractionality(&Alpha::FERMION, 5).unwrap();
        assert_eq!(f.alpha_n, 1.0);
        assert_eq!(f.alpha_star, 0.0);
        assert!(f.note.unwrap().contains("alpha = 1"));
        assert!(fractionality(&a(0.5), 1).is_err());
        let f = fractionality(&"3/5".parse().unwrap(), 2).unwrap();
        assert!(close(f.alpha_star, 0.2, 1e-15));
    }

    #[test]
    fn alpha_n_lower_examples() {
        assert_eq!(alpha_n_lower(1, &a(0.4)).unwrap().energy, 0.0);
        for x in [0.0, 0.13, 0.5, 1.0] {
            let b = alpha_n_lower(2, &a(x)).unwrap();
            assert!(close(b.energy, e2_lower(&a(x)).unwrap().energy, 1e-15));
        }
        let two_thirds: Alpha = "2/3".parse().unwrap();
        assert_eq!(alpha_n_lower(10, &two_thirds).unwrap().energy, 0.0);
    }

    #[test]
    fn lieb_thirring() {
        let inp = LtInputs::new(0.0, 0.0, 0.01).unwrap();
        assert_eq!(lt_kinetic_lower(&inp, &a(0.5)), 0.0);
        assert_eq!(lt_schroedinger_lower(&inp, &a(0.5)).unwrap(), 0.0);
        let inp = LtInputs::new(10.0, 1.0, 0.01).unwrap();
        assert!(close(lt_kinetic_lower(&inp, &a(0.5)), 0.05, 1e-15));
        assert_eq!(lt_kinetic_lower(&inp, &Alpha::BOSON), 0.0);
        assert!(close(
            lt_schroedinger_lower(&inp, &a(0.5)).unwrap(),
            -50.0,
            1e-12
        ));
        assert!(lt_schroedinger_lower(&inp, &Alpha::BOSON).is_err());
        assert!(LtInputs::new(1.0, 1.0, 0.0).is_err());
        assert!(LtInputs::new(-1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic_lower(5, &Alpha::BOSON, 1.0).unwrap(), 0.0);
        assert!(close(
            harmonic_lower(1, &Alpha::FERMION, PI).unwrap(),
            4.0 / 3.0,
            1e-14
        ));
        assert!(close(
            harmonic_lower(4, &a(0.25), 0.04).unwrap(),
            0.6018,
            1e-4
        ));
        assert!(close(
            harmonic_lower(100, &a(0.5), 0.01).unwrap(),
            53.19,
            5e-3
        ));
    }

    /// The harmonic bound is the LT potential bound for V = |x|² − μ,
    /// optimized over μ. ∫V₋² is done by midpoint quadrature here.
    #[test]
    fn harmonic_matches_optimized_potential_bound() {
        let (n, alpha, c) = (7u64, a(0.3), 0.05);
        let v_neg_sq = |mu: f64| {
            let r_max = mu.sqrt();
            let m = 4000;
            let h = r_max / m as f64;
            (0..m)
                .map(|i| {
                    let r = (i as f64 + 0.5) * h;
                    (mu - r * r).powi(2) * 2.0 * PI * r * h
                })
                .sum::<f64>()
        };
        let bound = |mu: f64| {
            let inp = LtInputs::new(0.0, v_neg_sq(mu), c).unwrap();
            mu * n as f64 + lt_schroedinger_lower(&inp, &alpha).unwrap()
        };
        // golden-section maximization over μ
        let (mut lo, mut hi) = (1e-6, 10.0);
        let g = 0.5 * (5f64.sqrt() - 1.0);
        for _ in 0..200 {
            let m1 = hi - g * (hi - lo);
            let m2 = lo + g * (hi - lo);
            if bound(m1) < bound(m2) {
                lo = m1;
            } else {
                hi = m2;
            }
        }
        let best = bound(0.5 * (lo + hi));
        let closed = harmonic_lower(n, &alpha, c).unwrap();
        assert!((best / closed - 1.0).abs() < 1e-6, "{best} vs {closed}");
    }

    #[test]
    fn local_exclusion_examples() {
        let unit = SquareBox::UNIT;
        assert_eq!(local_exclusion(unit, 0.5, &Alpha::FERMION).unwrap(), 0.0);
        let e = local_exclusion(unit, 3.0, &Alpha::FERMION).unwrap();
        assert!(close(e, 0.073_678, 1e-6));
        let e = local_exclusion(SquareBox::new(2.0).unwrap(), 3.0, &Alpha::FERMION).unwrap();
        assert!(close(e, 0.018_420, 1e-6));
    }

    #[test]
    fn boson_endpoint_consistency() {
        for n in 1..=60 {
            for b in collect_bounds(n, &Alpha::BOSON, Neumann) {
                if b.direction == Lower {
                    assert_eq!(b.energy, 0.0, "{} at N={n}", b.source);
                }
            }
            let g = global_upper_dirichlet(n, &Alpha::BOSON).unwrap();
            assert!(close(g.energy, 2.0 * PI2 * n as f64, 1e-10 * g.energy));
        }
    }

    #[test]
    fn fermion_sanity() {
        for n in 1..=120 {
            let free_n = endpoint_energy(n, &Alpha::FERMION, Neumann).unwrap();
            let free_d = endpoint_energy(n, &Alpha::FERMION, Dirichlet).unwrap();
            for b in collect_bounds(n, &Alpha::FERMION, Neumann) {
                if b.valid && b.direction == Lower {
                    assert!(b.energy <= free_n, "{} at N={n}", b.source);
                }
            }
            let g = global_upper_dirichlet(n, &Alpha::FERMION).unwrap();
            assert!(free_d <= g.energy);
        }
    }

    /// Independent brute force over p and a window of q.
    fn brute_alpha_n(x: f64, n: u64) -> f64 {
        let w = n as i64 + 2;
        let mut best = f64::INFINITY;
        for p in 0..=(n - 2) {
            for q in -w..=w {
                best = best.min(((2 * p + 1) as f64 * x - 2.0 * q as f64).abs());
            }
        }
        best
    }

    #[test]
    fn fractionality_limit_for_odd_numerators() {
        for den in 2..=13u64 {
            for num in (1..den).step_by(2) {
                if crate::alpha::gcd(num, den) != 1 {
                    continue;
                }
                let al = Alpha::from_fraction(num as i64, den as i64).unwrap();
                for n in 2 * den..2 * den + 5 {
                    let f = fractionality(&al, n).unwrap();
                    assert!(
                        close(f.alpha_n, 1.0 / den as f64, 1e-15),
                        "{num}/{den} n={n}"
                    );
                    assert!(f.alpha_star <= f.alpha_n + 1e-15);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn fractionality_matches_brute_force(x in 0.0f64..=1.0, n in 2u64..30) {
            let f = fractionality(&a(x), n).unwrap();
            prop_assert!((f.alpha_n - brute_alpha_n(x, n)).abs() < 1e-12);
        }

        #[test]
        fn rational_fractionality_matches_brute_force(p in 0i64..200, q in 1i64..40, n in 2u64..30) {
            let al = Alpha::from_fraction(p, q).unwrap();
            let f = fractionality(&al, n).unwrap();
            prop_assert!((f.alpha_n - brute_alpha_n(al.value(), n)).abs() < 1e-12);
            prop_assert!(f.alpha_star <= f.alpha_n + 1e-15);
        }

        #[test]
        fn quadratic_lift_parameters(n in 1u64..5_000_000, k in 1u64..6) {
            let p = QuadraticLiftParams::new(n, k, 1.0).unwrap();
            let two_k = 2.0 * k as f64;
            let lo = two_k / (1.0 + (two_k / n as f64).sqrt()).powi(2);
            prop_assert!(p.subdivisions >= 1);
            prop_assert!(p.rho_q <= two_k * (1.0 + 1e-12));
            prop_assert!(p.rho_q >= lo * (1.0 - 1e-12));
        }

        #[test]
        fn quadratic_per_n2_is_monotone(n in 4u64..100_000) {
            let f = |m: u64| quadratic_lower(m, &Alpha::FERMION, 1, Some(1.0)).unwrap().0.energy / (m * m) as f64;
            prop_assert!(f(n + 1) >= f(n) - 1e-15);
        }
    }
}
