//! Calibration of the contact coupling used on coincident configurations.
//!
//! On the lattice the relative wave function of two anyons near contact is
//! polluted by a r^{−α} component that the continuum excludes. A diagonal
//! coupling μ at the origin of the relative lattice removes it; μ depends on
//! α only, because at zero energy the relative problem is scale free.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;

use crate::error::{invalid, LatticeError, Result};
use crate::phase::{pair_angle_change, DIRECTIONS};

/// Half-width of the relative lattice used for the calibration.
pub const CALIBRATION_HALF_WIDTH: i32 = 64;

/// Contact coupling per coincident pair, in units of 1/h².
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Contact {
    Coupling(f64),
    /// Coupling is effectively infinite; exclude coincidences instead.
    HardCore,
}

struct RelativeLattice {
    m: i32,
    width: usize,
    alpha: f64,
    /// Per site and direction: e^{iαΔθ} of the hop from the neighbour in
    /// that direction into the site.
    links: Vec<[Complex64; 4]>,
}

impl RelativeLattice {
    fn new(m: i32, alpha: f64) -> Self {
        let width = (2 * m - 1) as usize;
        let mut lat = RelativeLattice {
            m,
            width,
            alpha,
            links: Vec::new(),
        };
        lat.links = (0..width * width)
            .map(|i| {
                let (x, y) = lat.coords(i);
                DIRECTIONS.map(|d| {
                    let phase = alpha * pair_angle_change([x + d[0], y + d[1]], [-d[0], -d[1]]);
                    Complex64::from_polar(1.0, phase)
                })
            })
            .collect();
        lat
    }

    fn index(&self, x: i32, y: i32) -> usize {
        (x + self.m - 1) as usize * self.width + (y + self.m - 1) as usize
    }

    fn len(&self) -> usize {
        self.width * self.width
    }

    fn inside(&self, x: i32, y: i32) -> bool {
        x.abs() < self.m && y.abs() < self.m
    }

    fn coords(&self, i: usize) -> (i32, i32) {
        (
            (i / self.width) as i32 - self.m + 1,
            (i % self.width) as i32 - self.m + 1,
        )
    }

    /// (4 − Σ hops) g on the interior, hops weighted by the conjugate link
    /// phase so that the operator is Hermitian with rows as targets.
    fn apply(&self, g: &[Complex64], out: &mut [Complex64]) {
        for (i, o) in out.iter_mut().enumerate() {
            let (x, y) = self.coords(i);
            let mut acc = g[i] * 4.0;
            for (k, d) in DIRECTIONS.iter().enumerate() {
                let (tx, ty) = (x + d[0], y + d[1]);
                if self.inside(tx, ty) {
                    acc -= self.links[i][k] * g[self.index(tx, ty)];
                }
            }
            *o = acc;
        }
    }

    /// Right-hand side from the boundary data |r|^α.
    fn boundary_rhs(&self) -> Vec<Complex64> {
        let mut rhs = vec![Complex64::new(0.0, 0.0); self.len()];
        for (i, r) in rhs.iter_mut().enumerate() {
            let (x, y) = self.coords(i);
            for (k, d) in DIRECTIONS.iter().enumerate() {
                let (tx, ty) = (x + d[0], y + d[1]);
                if !self.inside(tx, ty) {
                    let value = ((tx * tx + ty * ty) as f64).sqrt().powf(self.alpha);
                    *r += self.links[i][k] * value;
                }
            }
        }
        rhs
    }

    fn solve(&self, rhs: &[Complex64]) -> Result<Vec<Complex64>> {
        conjugate_gradient(|v, o| self.apply(v, o), rhs, 1e-13, 50_000)
    }
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn conjugate_gradient<F>(
    apply: F,
    rhs: &[Complex64],
    rel_tol: f64,
    max_iter: usize,
) -> Result<Vec<Complex64>>
where
    F: Fn(&[Complex64], &mut [Complex64]),
{
    let n = rhs.len();
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    let mut r = rhs.to_vec();
    let mut p = r.clone();
    let mut ap = vec![Complex64::new(0.0, 0.0); n];
    let norm_b = dot(rhs, rhs).re.sqrt();
    let mut rr = dot(&r, &r).re;
    for it in 0..max_iter {
        if rr.sqrt() <= rel_tol * norm_b {
            return Ok(x);
        }
        apply(&p, &mut ap);
        let step = rr / dot(&p, &ap).re;
        for i in 0..n {
            x[i] += p[i] * step;
            r[i] -= ap[i] * step;
        }
        let rr_new = dot(&r, &r).re;
        let beta = rr_new / rr;
        rr = rr_new;
        for i in 0..n {
            p[i] = r[i] + p[i] * beta;
        }
        if it + 1 == max_iter {
            break;
        }
    }
    Err(LatticeError::Convergence {
        matvecs: max_iter,
        best_residual: rr.sqrt() / norm_b,
    })
}

/// Coefficient of r^{−α} in a least-squares fit g ≈ A r^α + B r^{−α}.
///
/// Fitted in the basis cosh(αu), sinh(αu)/α with u = ln r, which stays well
/// conditioned as α → 0.
fn singular_coefficient(lat: &RelativeLattice, g: &[Complex64]) -> Complex64 {
    let a = lat.alpha;
    let (r_lo, r_hi) = (lat.m as f64 / 8.0, lat.m as f64 / 2.0);
    let mut ata = [[0.0f64; 2]; 2];
    let mut atb = [Complex64::new(0.0, 0.0); 2];
    for (i, &gi) in g.iter().enumerate() {
        let (x, y) = lat.coords(i);
        let r = ((x * x + y * y) as f64).sqrt();
        if r <= r_lo || r >= r_hi {
            continue;
        }
        let u = r.ln();
        let basis = [(a * u).cosh(), (a * u).sinh() / a];
        for p in 0..2 {
            for q in 0..2 {
                ata[p][q] += basis[p] * basis[q];
            }
            atb[p] += gi * basis[p];
        }
    }
    let det = ata[0][0] * ata[1][1] - ata[0][1] * ata[1][0];
    let p = (atb[0] * ata[1][1] - atb[1] * ata[0][1]) / det;
    let q = (atb[1] * ata[0][0] - atb[0] * ata[1][0]) / det;
    (p - q / a) * 0.5
}

fn calibrate_uncached(alpha: f64, m: i32) -> Result<Contact> {
    if alpha == 0.0 {
        return Ok(Contact::Coupling(0.0));
    }
    if alpha >= 1.0 {
        return Ok(Contact::HardCore);
    }
    let lat = RelativeLattice::new(m, alpha);
    let g0 = lat.solve(&lat.boundary_rhs())?;
    let origin = lat.index(0, 0);
    let mut unit = vec![Complex64::new(0.0, 0.0); lat.len()];
    unit[origin] = Complex64::new(1.0, 0.0);
    let green = lat.solve(&unit)?;
    let b0 = singular_coefficient(&lat, &g0);
    let bg = singular_coefficient(&lat, &green);
    let mu = b0 / (g0[origin] * bg - b0 * green[origin]);
    let nu = 2.0 * mu.re;
    if nu.is_finite() && nu >= 0.0 {
        Ok(Contact::Coupling(nu))
    } else {
        Ok(Contact::HardCore)
    }
}

/// Contact coupling ν*(α) that removes the r^{−α} component at zero energy.
/// Cached per α for the life of the process.
pub fn calibrate_contact(alpha: f64) -> Result<Contact> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(invalid(format!("alpha must be canonical, got {alpha}")));
    }
    static CACHE: OnceLock<Mutex<HashMap<u64, Contact>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().unwrap().get(&alpha.to_bits()) {
        return Ok(*c);
    }
    let c = calibrate_uncached(alpha, CALIBRATION_HALF_WIDTH)?;
    cache.lock().unwrap().insert(alpha.to_bits(), c);
    Ok(c)
}
