//! Bessel functions of small real order, the first zero of J_ν′, and the
//! proven envelope of the two-anyon lower-bound function f.

use std::f64::consts::PI;

use serde::Serialize;

use crate::dd::Dd;
use crate::error::{invalid, Error, Result};

/// Largest argument accepted by [`bessel_j`] and [`bessel_j_prime`].
pub const MAX_ARG: f64 = 50.0;
/// Largest order accepted by [`bessel_j`] and [`bessel_j_prime`].
pub const MAX_ORDER: f64 = 2.0;

/// Absolute tolerance of the bisection in [`first_derivative_zero`].
pub const ZERO_TOL: f64 = 1e-12;
const BRACKET_SLACK: f64 = 1e-6;

/// Order ν ≥ 0 of a Bessel function.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct BesselOrder(f64);

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self> {
        if !(nu.is_finite() && nu >= 0.0) {
            return Err(invalid(format!("Bessel order must be >= 0, got {nu}")));
        }
        Ok(BesselOrder(nu))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

// Lanczos approximation, g = 7, nine coefficients.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) for real x (reflection below 1/2).
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
}

fn check_window(nu: BesselOrder, x: f64) -> Result<()> {
    if nu.0 > MAX_ORDER {
        return Err(invalid(format!(
            "Bessel order {} outside supported window [0, {MAX_ORDER}]",
            nu.0
        )));
    }
    if !(0.0..=MAX_ARG).contains(&x) {
        return Err(invalid(format!(
            "Bessel argument {x} outside supported window [0, {MAX_ARG}]"
        )));
    }
    Ok(())
}

/// Σ_m c_m·w(m) with c_m = Π_{i<m} −(x/2)² / ((i+1)(i+ν+1)), summed in
/// double-double. `weight` selects J (w = 1) or x·J′ (w = ν + 2m).
fn ascending_sum(nu: f64, x: f64, lead: f64, derivative: bool) -> f64 {
    let half = Dd::from_f64(0.5 * x);
    let q = -(half * half);
    let nu_dd = Dd::from_f64(nu);
    let mut c = Dd::ONE;
    let mut sum = Dd::ZERO;
    let scale = if derivative {
        lead.abs() / x
    } else {
        lead.abs()
    };
    for m in 0..1000u32 {
        let mf = m as f64;
        let w = if derivative {
            Dd::from_f64(nu) + Dd::from_f64(2.0 * mf)
        } else {
            Dd::ONE
        };
        let term = c * w;
        sum = sum + term;
        if mf > 0.5 * x && term.abs().to_f64() * scale < 1e-20 {
            break;
        }
        let k = Dd::from_f64(mf + 1.0);
        c = c * q / (k * (k + nu_dd));
    }
    sum.to_f64()
}

/// J_ν(x) from the ascending series, for 0 ≤ ν ≤ 2 and 0 ≤ x ≤ 50.
pub fn bessel_j(nu: BesselOrder, x: f64) -> Result<f64> {
    check_window(nu, x)?;
    let nu = nu.0;
    if x == 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    let lead = (0.5 * x).powf(nu) / gamma(nu + 1.0);
    Ok(lead * ascending_sum(nu, x, lead, false))
}

/// J_ν′(x) from the termwise-differentiated series, for 0 < x ≤ 50.
pub fn bessel_j_prime(nu: BesselOrder, x: f64) -> Result<f64> {
    check_window(nu, x)?;
    if x <= 0.0 {
        return Err(invalid("J' requires x > 0"));
    }
    let nu = nu.0;
    let lead = (0.5 * x).powf(nu) / gamma(nu + 1.0);
    Ok(lead * ascending_sum(nu, x, lead, true) / x)
}

/// j_ν′, the first positive zero of J_ν′, for 0 ≤ ν ≤ 1 (j_0′ := 0).
///
/// Bisection inside √(2ν) ≤ j_ν′ ≤ √(2ν(1+ν)), widened by 1e-6.
pub fn first_derivative_zero(nu: BesselOrder) -> Result<f64> {
    let v = nu.0;
    if v > 1.0 {
        return Err(invalid(format!("order {v} outside [0, 1]")));
    }
    if v == 0.0 {
        return Ok(0.0);
    }
    let mut lo = ((2.0 * v).sqrt() - BRACKET_SLACK).max(f64::MIN_POSITIVE);
    let mut hi = (2.0 * v * (1.0 + v)).sqrt() + BRACKET_SLACK;
    let f_lo = bessel_j_prime(nu, lo)?;
    let f_hi = bessel_j_prime(nu, hi)?;
    if f_lo.signum() == f_hi.signum() || f_lo == 0.0 && f_hi == 0.0 {
        return Err(Error::Bracket {
            nu: v,
            lo,
            hi,
            f_lo,
            f_hi,
        });
    }
    let lo_sign = f_lo.signum();
    while hi - lo > ZERO_TOL {
        let mid = 0.5 * (lo + hi);
        let f = bessel_j_prime(nu, mid)?;
        if f == 0.0 {
            return Ok(mid);
        }
        if f.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Rigorous envelope t/6 ≤ f(t) ≤ 2πt of the two-anyon function f.
///
/// Only `lower` may be used in rigorous comparisons; `asymptotic` is the
/// small-t behaviour and carries no error bar.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FEnvelope {
    pub t: f64,
    pub lower: f64,
    pub asymptotic: f64,
}

/// Envelope of f on its domain [0, (j_1′)²].
pub fn f_envelope(t: f64) -> Result<FEnvelope> {
    let j1 = first_derivative_zero(BesselOrder(1.0))?;
    let t_max = j1 * j1;
    if !(t >= 0.0 && t <= t_max * (1.0 + 1e-12)) {
        return Err(invalid(format!(
            "f(t) is defined on [0, {t_max}], got t = {t}"
        )));
    }
    Ok(FEnvelope {
        t,
        lower: t / 6.0,
        asymptotic: 2.0 * PI * t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(nu: f64) -> BesselOrder {
        BesselOrder::new(nu).unwrap()
    }

    fn j_half(x: f64) -> f64 {
        (2.0 / (PI * x)).sqrt() * x.sin()
    }

    fn j_three_halves(x: f64) -> f64 {
        (2.0 / (PI * x)).sqrt() * (x.sin() / x - x.cos())
    }

    #[test]
    fn gamma_values() {
        let cases = [
            (0.5, PI.sqrt()),
            (1.0, 1.0),
            (1.5, 0.5 * PI.sqrt()),
            (2.0, 1.0),
            (3.0, 2.0),
            (4.5, 11.631_728_396_567_448),
            (5.0, 24.0),
        ];
        for (x, g) in cases {
            let rel = (gamma(x) - g).abs() / g;
            assert!(rel < 1e-13, "Γ({x}) rel err {rel}");
        }
    }

    #[test]
    fn series_endpoints() {
        assert_eq!(bessel_j(order(0.0), 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(order(1.0), 0.0).unwrap(), 0.0);
        assert!(bessel_j(order(0.5), PI).unwrap().abs() < 1e-14);
        assert!((bessel_j(order(0.0), 1.0).unwrap() - 0.765_197_686_557_966_6).abs() < 1e-15);
        assert!((bessel_j(order(1.0), 1.0).unwrap() - 0.440_050_585_744_933_5).abs() < 1e-15);
    }

    #[test]
    fn half_integer_closed_forms_across_window() {
        let mut x = 0.05;
        while x <= MAX_ARG {
            let a = bessel_j(order(0.5), x).unwrap();
            let b = bessel_j(order(1.5), x).unwrap();
            assert!(
                (a - j_half(x)).abs() < 1e-12,
                "J_1/2({x}): {a} vs {}",
                j_half(x)
            );
            assert!((b - j_three_halves(x)).abs() < 1e-12, "J_3/2({x})");
            x += 0.37;
        }
        assert!((bessel_j(order(0.5), 50.0).unwrap() - j_half(50.0)).abs() < 1e-12);
    }

    #[test]
    fn derivative_identities() {
        // J_0' = -J_1, and J_1/2' in closed form.
        for x in [1e-6, 0.3, 2.0, 7.5, 31.0, 50.0] {
            let d = bessel_j_prime(order(0.0), x).unwrap();
            let j1 = bessel_j(order(1.0), x).unwrap();
            assert!((d + j1).abs() < 1e-12, "x = {x}");
        }
        let x = PI / 2.0;
        let expect = -2.0 / (PI * PI);
        assert!((bessel_j_prime(order(0.5), x).unwrap() - expect).abs() < 1e-13);
        assert!(bessel_j_prime(order(0.0), 1e-9).unwrap().abs() < 1e-9);
    }

    #[test]
    fn derivative_matches_central_difference() {
        let h = 1e-5;
        for nu in [0.0, 0.1, 0.5, 1.0, 1.7, 2.0] {
            // Beyond x ≈ 40 the double-double rounding of J (~1e-13) divided by 2h
            // exceeds the 1e-8 budget; the closed-form tests cover that range.
            for x in [0.5, 1.0, 3.3, 12.0, 25.0, 40.0] {
                let fd = (bessel_j(order(nu), x + h).unwrap()
                    - bessel_j(order(nu), x - h).unwrap())
                    / (2.0 * h);
                let d = bessel_j_prime(order(nu), x).unwrap();
                assert!((fd - d).abs() <= 1e-8, "ν={nu} x={x}: {fd} vs {d}");
            }
        }
    }

    #[test]
    fn window_is_enforced() {
        assert!(bessel_j(order(2.5), 1.0).is_err());
        assert!(bessel_j(order(1.0), 50.5).is_err());
        assert!(bessel_j(order(1.0), -1.0).is_err());
        assert!(bessel_j_prime(order(1.0), 0.0).is_err());
        assert!(BesselOrder::new(-0.1).is_err());
        assert!(first_derivative_zero(order(1.5)).is_err());
    }

    /// Plain-f64 series and bisection: an independent route to j_ν′ for
    /// small arguments, where cancellation is harmless.
    fn naive_zero(nu: f64, mut lo: f64, mut hi: f64) -> f64 {
        let jp = |x: f64| {
            let mut s = 0.0;
            let mut fact = 1.0;
            for m in 0..40 {
                if m > 0 {
                    fact *= m as f64;
                }
                let mf = m as f64;
                s += (-1f64).powi(m) * (nu + 2.0 * mf) / 2.0 * (x / 2.0).powf(nu + 2.0 * mf - 1.0)
                    / (fact * gamma(mf + nu + 1.0));
            }
            s
        };
        let s_lo = jp(lo).signum();
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if jp(mid).signum() == s_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn zero_examples() {
        assert_eq!(first_derivative_zero(order(0.0)).unwrap(), 0.0);
        let j1 = first_derivative_zero(order(1.0)).unwrap();
        let oracle = naive_zero(1.0, 2f64.sqrt(), 2.0);
        assert!((j1 - oracle).abs() < 1e-10);
        assert!((j1 - 1.8412).abs() < 1e-3);
        assert!(bessel_j_prime(order(1.0), 1.841_183_78).unwrap().abs() < 1e-8);
        let jh = first_derivative_zero(order(0.5)).unwrap();
        assert!((1.0..=3f64.sqrt()).contains(&jh));
        // tan x = 2x for ν = 1/2
        assert!((jh.tan() - 2.0 * jh).abs() < 1e-9);
    }

    #[test]
    fn zero_obeys_bracket_and_is_monotone() {
        let mut prev = 0.0;
        for i in 1..=100 {
            let nu = i as f64 / 100.0;
            let z = first_derivative_zero(order(nu)).unwrap();
            assert!(
                (2.0 * nu).sqrt() <= z && z <= (2.0 * nu * (1.0 + nu)).sqrt(),
                "ν={nu}"
            );
            assert!(z >= prev);
            prev = z;
        }
    }

    #[test]
    fn envelope() {
        let e = f_envelope(0.0).unwrap();
        assert_eq!((e.lower, e.asymptotic), (0.0, 0.0));
        let e = f_envelope(0.6).unwrap();
        assert!((e.lower - 0.1).abs() < 1e-15);
        assert!((e.asymptotic - 1.2 * PI).abs() < 1e-14);
        let j1 = first_derivative_zero(order(1.0)).unwrap();
        let e = f_envelope(j1 * j1).unwrap();
        assert!((e.lower - 0.565).abs() < 1e-3);
        assert!((e.asymptotic - 21.30).abs() < 1e-2);
        assert!(f_envelope(3.5).is_err());
        assert!(f_envelope(-0.1).is_err());
        for i in 0..=30 {
            let e = f_envelope(j1 * j1 * i as f64 / 30.0).unwrap();
            assert!(e.lower <= e.asymptotic);
        }
    }
}
