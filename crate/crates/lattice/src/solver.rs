//! Lowest eigenpair of a sparse Hermitian matrix.
//!
//! Restarted Lanczos with full (twice classical Gram–Schmidt)
//! reorthogonalization; each cycle restarts from the current Ritz vector.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, LatticeError, Result};
use crate::sparse::SparseHermitian;

const CHUNK: usize = 4096;
/// Largest matrix handed to the dense oracle.
pub const DENSE_MAX_DIM: usize = 6000;
pub const MIN_TOL: f64 = 1e-10;
pub const MAX_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverOptions {
    /// Required residual ‖Hv − Ev‖ for unit v.
    pub tol: f64,
    /// Krylov vectors kept per restart cycle.
    pub krylov_dim: usize,
    /// Cap on matrix–vector products.
    pub max_matvecs: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-8,
            krylov_dim: 64,
            max_matvecs: 50_000,
        }
    }
}

impl SolverOptions {
    pub fn with_tol(tol: f64) -> Self {
        SolverOptions {
            tol,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone)]
pub struct GroundState {
    pub energy: f64,
    pub residual: f64,
    pub vector: Vec<Complex64>,
    pub matvecs: usize,
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.par_chunks(CHUNK)
        .zip(b.par_chunks(CHUNK))
        .map(|(x, y)| {
            x.iter()
                .zip(y)
                .map(|(p, q)| p.conj() * q)
                .sum::<Complex64>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.par_chunks(CHUNK)
        .map(|x| x.iter().map(|p| p.norm_sqr()).sum::<f64>())
        .collect::<Vec<_>>()
        .into_iter()
        .sum::<f64>()
        .sqrt()
}

fn scale(a: &mut [Complex64], s: f64) {
    a.par_iter_mut().for_each(|x| *x *= s);
}

/// w ← w − Σ_k c_k v_k, returning c_k = ⟨v_k, w⟩.
fn project_out(basis: &[Vec<Complex64>], w: &mut [Complex64]) -> Vec<Complex64> {
    let coeffs: Vec<Complex64> = basis.iter().map(|v| dot(v, w)).collect();
    w.par_chunks_mut(CHUNK).enumerate().for_each(|(c, ws)| {
        let base = c * CHUNK;
        for (k, wi) in ws.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (v, ck) in basis.iter().zip(&coeffs) {
                acc += ck * v[base + k];
            }
            *wi -= acc;
        }
    });
    coeffs
}

fn lowest_ritz(alphas: &[f64], betas: &[f64]) -> (f64, Vec<f64>) {
    let k = alphas.len();
    let mut t = DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        t[(i, i)] = alphas[i];
        if i + 1 < k {
            t[(i, i + 1)] = betas[i];
            t[(i + 1, i)] = betas[i];
        }
    }
    let eig = SymmetricEigen::new(t);
    let (imin, theta) = eig
        .eigenvalues
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
    (
        theta,
        eig.eigenvectors.column(imin).iter().copied().collect(),
    )
}

/// Lowest eigenvalue starting from the normalized all-ones vector.
pub fn ground_energy(h: &SparseHermitian, opts: &SolverOptions) -> Result<GroundState> {
    ground_energy_from(h, vec![Complex64::new(1.0, 0.0); h.dim()], opts)
}

pub fn ground_energy_from(
    h: &SparseHermitian,
    start: Vec<Complex64>,
    opts: &SolverOptions,
) -> Result<GroundState> {
    if !(MIN_TOL..=MAX_TOL).contains(&opts.tol) {
        return Err(invalid(format!(
            "tolerance must lie in [{MIN_TOL:e}, {MAX_TOL:e}], got {:e}",
            opts.tol
        )));
    }
    if opts.krylov_dim < 2 {
        return Err(invalid("Krylov dimension must be >= 2"));
    }
    let dim = h.dim();
    if dim == 0 || start.len() != dim {
        return Err(invalid("start vector does not match the operator"));
    }
    let mut x = start;
    let nx = norm(&x);
    if nx == 0.0 {
        return Err(invalid("start vector is zero"));
    }
    scale(&mut x, 1.0 / nx);

    let m = opts.krylov_dim.min(dim);
    let mut matvecs = 0;
    let mut best = f64::INFINITY;
    let mut w = vec![Complex64::new(0.0, 0.0); dim];
    loop {
        let mut basis: Vec<Vec<Complex64>> = vec![x];
        let mut alphas = Vec::with_capacity(m);
        let mut betas = Vec::with_capacity(m);
        for i in 0..m {
            h.apply(&basis[i], &mut w);
            matvecs += 1;
            let first = project_out(&basis, &mut w);
            project_out(&basis, &mut w);
            alphas.push(first[i].re);
            let b = norm(&w);
            let scale_t = alphas.iter().fold(0.0f64, |s, a| s.max(a.abs())).max(1.0);
            if i + 1 == m || b <= 1e-13 * scale_t {
                break;
            }
            if (i + 1) % 8 == 0 {
                let (_, y) = lowest_ritz(&alphas, &betas);
                if b * y[i].abs() < 0.1 * opts.tol {
                    break;
                }
            }
            betas.push(b);
            let mut v = w.clone();
            scale(&mut v, 1.0 / b);
            basis.push(v);
        }
        let k = alphas.len();
        let (_, y) = lowest_ritz(&alphas, &betas);
        let mut ritz = vec![Complex64::new(0.0, 0.0); dim];
        ritz.par_chunks_mut(CHUNK).enumerate().for_each(|(c, xs)| {
            let base = c * CHUNK;
            for (kk, xi) in xs.iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..k {
                    acc += basis[j][base + kk] * y[j];
                }
                *xi = acc;
            }
        });
        drop(basis);
        let nr = norm(&ritz);
        scale(&mut ritz, 1.0 / nr);
        h.apply(&ritz, &mut w);
        matvecs += 1;
        let energy = dot(&ritz, &w).re;
        w.par_iter_mut()
            .zip(ritz.par_iter())
            .for_each(|(wi, xi)| *wi -= xi * energy);
        let residual = norm(&w);
        best = best.min(residual);
        if residual <= opts.tol {
            return Ok(GroundState {
                energy,
                residual,
                vector: ritz,
                matvecs,
            });
        }
        if matvecs >= opts.max_matvecs {
            return Err(LatticeError::Convergence {
                matvecs,
                best_residual: best,
            });
        }
        x = ritz;
    }
}

/// Lowest eigenvalue by full dense diagonalization.
pub fn dense_ground_energy(h: &SparseHermitian) -> Result<f64> {
    if h.dim() > DENSE_MAX_DIM {
        return Err(LatticeError::ResourceLimit {
            dim: h.dim() as u64,
            cap: DENSE_MAX_DIM as u64,
        });
    }
    Ok(h.to_dense().symmetric_eigenvalues().min())
}

/// Lowest eigenvalue by dense diagonalization in a real basis.
///
/// `reflection` is an involutive permutation with
/// H[r(i), r(j)] = conj(H[i, j]). Complex conjugation composed with it is an
/// antiunitary symmetry, and H is real symmetric in the basis e_s for fixed
/// points and (e_s + e_t)/√2, i(e_s − e_t)/√2 for swapped pairs.
pub fn dense_ground_energy_real(h: &SparseHermitian, reflection: &[usize]) -> Result<f64> {
    let dim = h.dim();
    if dim > DENSE_MAX_DIM {
        return Err(LatticeError::ResourceLimit {
            dim: dim as u64,
            cap: DENSE_MAX_DIM as u64,
        });
    }
    if reflection.len() != dim || (0..dim).any(|i| reflection.get(reflection[i]) != Some(&i)) {
        return Err(invalid(
            "reflection must be an involutive permutation of the basis",
        ));
    }
    for i in 0..dim {
        for (j, v) in h.row(i) {
            let w = h.get(reflection[i], reflection[j]);
            if (w - v.conj()).norm() > 1e-12 * (1.0 + v.norm()) {
                return Err(invalid(format!(
                    "matrix is not conjugated by the reflection at ({i}, {j})"
                )));
            }
        }
    }

    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut coeffs: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); dim];
    let mut k = 0;
    for i in 0..dim {
        let t = reflection[i];
        if t == i {
            coeffs[i].push((k, Complex64::new(1.0, 0.0)));
            k += 1;
        } else if i < t {
            coeffs[i].push((k, Complex64::new(s, 0.0)));
            coeffs[t].push((k, Complex64::new(s, 0.0)));
            coeffs[i].push((k + 1, Complex64::new(0.0, s)));
            coeffs[t].push((k + 1, Complex64::new(0.0, -s)));
            k += 2;
        }
    }

    let mut re = DMatrix::<f64>::zeros(dim, dim);
    let mut im = DMatrix::<f64>::zeros(dim, dim);
    for i in 0..dim {
        for (j, v) in h.row(i) {
            for &(a, ci) in &coeffs[i] {
                for &(b, cj) in &coeffs[j] {
                    let z = ci.conj() * v * cj;
                    re[(a, b)] += z.re;
                    im[(a, b)] += z.im;
                }
            }
        }
    }
    let scale = re.amax().max(1.0);
    if im.amax() > 1e-10 * scale {
        return Err(invalid(format!(
            "real form has imaginary part {:e}",
            im.amax()
        )));
    }
    Ok(re.symmetric_eigenvalues().min())
}
