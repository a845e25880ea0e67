//! Shared dense linear algebra helpers.

use crate::error::{Error, Result};
use crate::quat::C64;
use nalgebra::{DMatrix, DVector};

/// Eigendecomposition of a real symmetric matrix, eigenvalues sorted
/// nonincreasing, eigenvectors as matching columns.
pub fn sym_eigen_desc(m: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let se = m.clone().symmetric_eigen();
    sort_desc(se.eigenvalues, se.eigenvectors)
}

/// Eigendecomposition of a complex hermitian matrix, sorted nonincreasing.
pub fn herm_eigen_desc(m: &DMatrix<C64>) -> (DVector<f64>, DMatrix<C64>) {
    let se = m.clone().symmetric_eigen();
    let (vals, vecs) = (se.eigenvalues, se.eigenvectors);
    let mut idx: Vec<usize> = (0..vals.len()).collect();
    idx.sort_by(|&a, &b| vals[b].partial_cmp(&vals[a]).unwrap());
    let sorted_vals = DVector::from_iterator(vals.len(), idx.iter().map(|&i| vals[i]));
    let mut sorted_vecs = DMatrix::zeros(vecs.nrows(), vecs.ncols());
    for (k, &i) in idx.iter().enumerate() {
        sorted_vecs.set_column(k, &vecs.column(i));
    }
    (sorted_vals, sorted_vecs)
}

fn sort_desc(vals: DVector<f64>, vecs: DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let mut idx: Vec<usize> = (0..vals.len()).collect();
    idx.sort_by(|&a, &b| vals[b].partial_cmp(&vals[a]).unwrap());
    let sorted_vals = DVector::from_iterator(vals.len(), idx.iter().map(|&i| vals[i]));
    let mut sorted_vecs = DMatrix::zeros(vecs.nrows(), vecs.ncols());
    for (k, &i) in idx.iter().enumerate() {
        sorted_vecs.set_column(k, &vecs.column(i));
    }
    (sorted_vals, sorted_vecs)
}

/// Eigenvalues of a general real matrix.
///
/// Uses a bounded Schur iteration; the unbounded one can stall on
/// structured inputs. If it fails to converge, a tiny random-ish jitter
/// is applied and the iteration retried (the callers use thresholds far
/// above the jitter scale).
pub fn complex_eigenvalues(m: &DMatrix<f64>) -> Vec<C64> {
    if let Some(s) = m.clone().try_schur(1e-13, 75_000) {
        return s.complex_eigenvalues().iter().copied().collect();
    }
    let scale = m.abs().max().max(1.0);
    let mut jittered = m.clone();
    for (k, v) in jittered.iter_mut().enumerate() {
        // deterministic pseudo-jitter
        let t = ((k as f64 * 0.754_877_666_246_69).fract() - 0.5) * 2.0;
        *v += 1e-11 * scale * t;
    }
    let s = jittered
        .try_schur(1e-13, 200_000)
        .expect("Schur iteration failed even after jitter");
    s.complex_eigenvalues().iter().copied().collect()
}

/// Matrix exponential.
pub fn expm(m: &DMatrix<f64>) -> DMatrix<f64> {
    m.clone().exp()
}

/// Numerical rank with a relative threshold.
pub fn rank(m: &DMatrix<f64>, rel_eps: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let svd = m.clone().svd(false, false);
    let smax = svd.singular_values.max();
    if smax == 0.0 {
        return 0;
    }
    svd.singular_values.iter().filter(|&&s| s > rel_eps * smax).count()
}

/// Numerical rank with the threshold floored at unit scale, for matrices
/// that may consist of pure roundoff noise.
pub fn rank_floored(m: &DMatrix<f64>, eps: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let svd = m.clone().svd(false, false);
    let smax = svd.singular_values.max().max(1.0);
    svd.singular_values.iter().filter(|&&s| s > eps * smax).count()
}

/// Orthonormal basis of the (right) nullspace of `m`, one column per vector.
pub fn nullspace(m: &DMatrix<f64>, rel_eps: f64) -> DMatrix<f64> {
    let n = m.ncols();
    // thin SVD of a wide matrix drops kernel directions; pad to square
    let work = if m.nrows() < n {
        let mut p = DMatrix::zeros(n, n);
        p.rows_mut(0, m.nrows()).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = work.svd(false, true);
    let vt = svd.v_t.expect("svd v_t");
    let smax = svd.singular_values.max().max(1e-300);
    let mut cols: Vec<DVector<f64>> = Vec::new();
    for i in 0..n {
        let s = if i < svd.singular_values.len() { svd.singular_values[i] } else { 0.0 };
        if s <= rel_eps * smax {
            cols.push(vt.row(i).transpose());
        }
    }
    let mut out = DMatrix::zeros(n, cols.len());
    for (k, c) in cols.iter().enumerate() {
        out.set_column(k, c);
    }
    out
}

/// Rank of a complex matrix.
pub fn rank_c(m: &DMatrix<C64>, rel_eps: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let svd = m.clone().svd(false, false);
    let smax = svd.singular_values.max();
    if smax == 0.0 {
        return 0;
    }
    svd.singular_values.iter().filter(|&&s| s > rel_eps * smax).count()
}

/// Least-squares coordinate solver for a fixed spanning set.
///
/// Columns of `basis_mat` are the vectorised basis elements; `solve`
/// returns coordinates together with the residual of the reconstruction.
pub struct SpanSolver {
    basis_mat: DMatrix<f64>,
    pinv: DMatrix<f64>,
}

impl SpanSolver {
    pub fn new(basis_mat: DMatrix<f64>) -> SpanSolver {
        let gram = basis_mat.transpose() * &basis_mat;
        let chol = gram.cholesky().expect("basis is linearly independent");
        let pinv = chol.inverse() * basis_mat.transpose();
        SpanSolver { basis_mat, pinv }
    }

    pub fn coords(&self, v: &DVector<f64>) -> (DVector<f64>, f64) {
        let c = &self.pinv * v;
        let resid = (&self.basis_mat * &c - v).norm();
        (c, resid)
    }

    pub fn coords_checked(&self, v: &DVector<f64>, tol: f64) -> Result<DVector<f64>> {
        let (c, resid) = self.coords(v);
        let scale = v.norm().max(1.0);
        if resid > tol * scale {
            return Err(Error::NumericalFailure(format!(
                "vector not in span (residual {resid:.3e})"
            )));
        }
        Ok(c)
    }
}

/// Row-major flattening of a matrix (the serialization convention).
pub fn to_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

pub fn from_rows(rows: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let nr = rows.len();
    if nr == 0 {
        return Ok(DMatrix::zeros(0, 0));
    }
    let nc = rows[0].len();
    if rows.iter().any(|r| r.len() != nc) {
        return Err(Error::NumericalFailure("ragged row-major matrix".into()));
    }
    Ok(DMatrix::from_fn(nr, nc, |i, j| rows[i][j]))
}

pub fn vectorize(m: &DMatrix<f64>) -> DVector<f64> {
    DVector::from_column_slice(m.as_slice())
}

pub fn unvectorize(v: &DVector<f64>, nrows: usize, ncols: usize) -> DMatrix<f64> {
    DMatrix::from_column_slice(nrows, ncols, v.as_slice())
}

/// Frobenius distance between the column-space projectors of two
/// full-column-rank matrices.
pub fn projector_distance(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    let pa = projector(a);
    let pb = projector(b);
    (pa - pb).norm()
}

pub fn projector(a: &DMatrix<f64>) -> DMatrix<f64> {
    let gram = a.transpose() * a;
    let inv = gram.cholesky().expect("full column rank").inverse();
    a * inv * a.transpose()
}

/// Smallest and largest singular values.
pub fn sv_extremes(m: &DMatrix<f64>) -> (f64, f64) {
    let svd = m.clone().svd(false, false);
    (svd.singular_values.min(), svd.singular_values.max())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_rank_one() {
        let m = DMatrix::from_row_slice(2, 3, &[1.0, 2.0, 3.0, 2.0, 4.0, 6.0]);
        let ns = nullspace(&m, 1e-12);
        assert_eq!(ns.ncols(), 2);
        assert!((&m * &ns).abs().max() < 1e-12);
    }

    #[test]
    fn span_solver_roundtrip() {
        let b = DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
        let solver = SpanSolver::new(b.clone());
        let target = DVector::from_column_slice(&[2.0, -1.0, 1.0]);
        let (c, resid) = solver.coords(&target);
        assert!(resid < 1e-12);
        assert!((c[0] - 2.0).abs() < 1e-12 && (c[1] + 1.0).abs() < 1e-12);
    }
}
