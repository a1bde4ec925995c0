//! Compressed-row storage for Hermitian matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

const ROW_CHUNK: usize = 1024;

#[derive(Debug, Clone, PartialEq)]
pub struct SparseHermitian {
    row_ptr: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<Complex64>,
}

impl SparseHermitian {
    /// Assembles the full matrix from each row's real diagonal and its
    /// entries right of the diagonal (sorted by column). The lower triangle
    /// is filled with exact conjugates.
    pub fn from_upper(rows: Vec<(f64, Vec<(u32, Complex64)>)>) -> Self {
        let dim = rows.len();
        let mut count = vec![1usize; dim];
        for (_, upper) in &rows {
            for &(c, _) in upper {
                count[c as usize] += 1;
            }
        }
        for (i, (_, upper)) in rows.iter().enumerate() {
            count[i] += upper.len();
        }
        let mut row_ptr = Vec::with_capacity(dim + 1);
        row_ptr.push(0);
        for c in &count {
            row_ptr.push(row_ptr.last().unwrap() + c);
        }
        let nnz = row_ptr[dim];
        let mut cols = vec![0u32; nnz];
        let mut vals = vec![Complex64::new(0.0, 0.0); nnz];
        let mut fill: Vec<usize> = row_ptr[..dim].to_vec();
        // Rows in ascending order: every lower entry of row t comes from a
        // row o < t and lands before t's own diagonal.
        for (o, (diag, upper)) in rows.into_iter().enumerate() {
            let at = fill[o];
            cols[at] = o as u32;
            vals[at] = Complex64::new(diag, 0.0);
            fill[o] += 1;
            for (t, v) in upper {
                let at = fill[o];
                cols[at] = t;
                vals[at] = v;
                fill[o] += 1;
                let t = t as usize;
                let at = fill[t];
                cols[at] = o as u32;
                vals[at] = v.conj();
                fill[t] += 1;
            }
        }
        SparseHermitian {
            row_ptr,
            cols,
            vals,
        }
    }

    /// Real diagonal matrix.
    pub fn diagonal_matrix(diag: &[f64]) -> Self {
        SparseHermitian::from_upper(diag.iter().map(|&d| (d, Vec::new())).collect())
    }

    pub fn identity(dim: usize) -> Self {
        SparseHermitian::diagonal_matrix(&vec![1.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.row_ptr.len() - 1
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[r.clone()]
            .iter()
            .map(|&c| c as usize)
            .zip(self.vals[r].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.row(i)
            .find(|&(c, _)| c == j)
            .map_or(Complex64::new(0.0, 0.0), |(_, v)| v)
    }

    /// y = H x. Rows are split across threads; each row is summed in a fixed
    /// order, so the result does not depend on the thread count.
    pub fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        assert_eq!(x.len(), self.dim());
        assert_eq!(y.len(), self.dim());
        y.par_chunks_mut(ROW_CHUNK)
            .enumerate()
            .for_each(|(chunk, ys)| {
                let base = chunk * ROW_CHUNK;
                for (k, yi) in ys.iter_mut().enumerate() {
                    let i = base + k;
                    let mut acc = Complex64::new(0.0, 0.0);
                    for p in self.row_ptr[i]..self.row_ptr[i + 1] {
                        acc += self.vals[p] * x[self.cols[p] as usize];
                    }
                    *yi = acc;
                }
            });
    }

    /// max |H_ij − conj(H_ji)| over stored entries.
    pub fn max_hermitian_defect(&self) -> f64 {
        (0..self.dim())
            .into_par_iter()
            .map(|i| {
                self.row(i)
                    .map(|(j, v)| (v - self.get(j, i).conj()).norm())
                    .fold(0.0, f64::max)
            })
            .reduce(|| 0.0, f64::max)
    }

    /// U H U† for the diagonal unitary U = diag(e^{iθ}).
    pub fn gauge_transformed(&self, theta: &[f64]) -> Self {
        assert_eq!(theta.len(), self.dim());
        let mut out = self.clone();
        for i in 0..self.dim() {
            for p in self.row_ptr[i]..self.row_ptr[i + 1] {
                let j = self.cols[p] as usize;
                out.vals[p] = self.vals[p] * Complex64::from_polar(1.0, theta[i] - theta[j]);
            }
        }
        out
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            for (j, v) in self.row(i) {
                m[(i, j)] = v;
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn assembly_mirrors_upper_triangle() {
        let z = |a: f64, b: f64| Complex64::new(a, b);
        let h = SparseHermitian::from_upper(vec![
            (1.0, vec![(1, z(0.0, 2.0)), (2, z(3.0, 0.0))]),
            (4.0, vec![(2, z(1.0, -1.0))]),
            (5.0, vec![]),
        ]);
        assert_eq!(h.nnz(), 9);
        assert_eq!(h.get(1, 0), z(0.0, -2.0));
        assert_eq!(h.get(2, 1), z(1.0, 1.0));
        assert_eq!(h.max_hermitian_defect(), 0.0);
        for i in 0..3 {
            let cols: Vec<usize> = h.row(i).map(|e| e.0).collect();
            assert!(cols.windows(2).all(|w| w[0] < w[1]));
        }
        let x = vec![z(1.0, 0.0), z(0.0, 1.0), z(1.0, 1.0)];
        let mut y = vec![z(0.0, 0.0); 3];
        h.apply(&x, &mut y);
        let dense = h.to_dense();
        for i in 0..3 {
            let expect: Complex64 = (0..3).map(|j| dense[(i, j)] * x[j]).sum();
            assert!((y[i] - expect).norm() < 1e-14);
        }
    }
}
