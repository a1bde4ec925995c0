//! Grid-sequence extrapolation with a single power law E(n) = E∞ + a·n^{−γ}.

use serde::Serialize;

pub const GAMMA_MIN: f64 = 0.5;
pub const GAMMA_MAX: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub limit: f64,
    pub amplitude: f64,
    pub exponent: f64,
}

fn ratio(ns: [f64; 3], g: f64) -> f64 {
    let p = ns.map(|n| n.powf(-g));
    (p[0] - p[1]) / (p[1] - p[2])
}

/// Fits three points. The exponent is clamped to [GAMMA_MIN, GAMMA_MAX] and
/// the limit and amplitude are then least squares for that exponent.
/// Returns `None` when the differences change sign.
pub fn fit_power_law(ns: [f64; 3], es: [f64; 3]) -> Option<PowerLawFit> {
    let (d1, d2) = (es[0] - es[1], es[1] - es[2]);
    let flat = 1e-13 * es[2].abs().max(1.0);
    if d1.abs() <= flat && d2.abs() <= flat {
        return Some(PowerLawFit {
            limit: es[2],
            amplitude: 0.0,
            exponent: GAMMA_MAX,
        });
    }
    if d1 * d2 <= 0.0 {
        return None;
    }
    let target = d1 / d2;
    let gamma = if target <= ratio(ns, GAMMA_MIN) {
        GAMMA_MIN
    } else if target >= ratio(ns, GAMMA_MAX) {
        GAMMA_MAX
    } else {
        let (mut lo, mut hi) = (GAMMA_MIN, GAMMA_MAX);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if ratio(ns, mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let xs = ns.map(|n| n.powf(-gamma));
    let xm = xs.iter().sum::<f64>() / 3.0;
    let ym = es.iter().sum::<f64>() / 3.0;
    let sxy: f64 = xs.iter().zip(&es).map(|(x, y)| (x - xm) * (y - ym)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - xm) * (x - xm)).sum();
    let amplitude = sxy / sxx;
    Some(PowerLawFit {
        limit: ym - amplitude * xm,
        amplitude,
        exponent: gamma,
    })
}
