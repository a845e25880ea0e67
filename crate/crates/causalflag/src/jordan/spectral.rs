//! Spectral theory: decomposition x = sum lambda_i c_i over a Jordan
//! frame, inverses, determinants, signatures, cones and the spectral norm.

use super::{Algebra, Element, Rep};
use crate::error::{Error, Result};
use crate::linalg;
use crate::quat::{C64, Field, QMatrix};
use crate::tol;
use nalgebra::{DMatrix, DVector};

/// Eigenvalues (nonincreasing) together with an orthogonal frame of
/// primitive idempotents carrying them.
#[derive(Debug, Clone)]
pub struct SpectralData {
    pub eigenvalues: DVector<f64>,
    pub frame: Vec<Element>,
}

impl SpectralData {
    /// sum lambda_i c_i.
    pub fn reconstruct(&self) -> Element {
        let alg = self.frame[0].algebra.clone();
        let mut out = alg.zero();
        for (l, c) in self.eigenvalues.iter().zip(self.frame.iter()) {
            out.coords += *l * &c.coords;
        }
        out
    }

    /// Apply a scalar function on the spectrum: sum f(lambda_i) c_i.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Element {
        let alg = self.frame[0].algebra.clone();
        let mut out = alg.zero();
        for (l, c) in self.eigenvalues.iter().zip(self.frame.iter()) {
            out.coords += f(*l) * &c.coords;
        }
        out
    }
}

/// Count of positive and negative eigenvalues of an invertible element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
}

/// Bundle of det/trace/inverse/signature.
#[derive(Debug, Clone)]
pub struct ElementAnalysis {
    pub det: f64,
    pub trace: f64,
    pub inverse: Option<Element>,
    pub signature: Signature,
}

impl Element {
    /// Spectral decomposition. Matrix families go through a hermitian
    /// eigensolver on the complex model, the quaternionic case collapsing
    /// the doubled eigenvalues; the spin factor uses the closed form
    /// lambda = x0 +- |x|.
    pub fn spectral(&self) -> Result<SpectralData> {
        let alg = &self.algebra;
        match &alg.0.rep {
            Rep::Spin { d } => {
                let x0 = self.coords[0];
                let xv = self.coords.rows(1, d - 1).clone_owned();
                let norm = xv.norm();
                let dir: DVector<f64> = if norm < 1e-300 {
                    // degenerate: split along e1 (deterministic choice)
                    let mut u = DVector::zeros(d - 1);
                    u[0] = 1.0;
                    u
                } else {
                    xv / norm
                };
                let mut cp = DVector::zeros(*d);
                let mut cm = DVector::zeros(*d);
                cp[0] = 0.5;
                cm[0] = 0.5;
                for k in 1..*d {
                    cp[k] = 0.5 * dir[k - 1];
                    cm[k] = -0.5 * dir[k - 1];
                }
                Ok(SpectralData {
                    eigenvalues: DVector::from_column_slice(&[x0 + norm, x0 - norm]),
                    frame: vec![
                        Element { algebra: alg.clone(), coords: cp },
                        Element { algebra: alg.clone(), coords: cm },
                    ],
                })
            }
            Rep::Matrix { field, m, .. } => {
                let native = alg.native_of(&self.coords);
                match field {
                    Field::R => {
                        let real = native.realify();
                        let (vals, vecs) = linalg::sym_eigen_desc(&real);
                        let mut frame = Vec::with_capacity(*m);
                        for i in 0..*m {
                            let v = vecs.column(i);
                            let proj = DMatrix::from_fn(*m, *m, |a, b| v[a] * v[b]);
                            let mut q = QMatrix::zeros(Field::R, *m, *m);
                            for a in 0..*m {
                                for b in 0..*m {
                                    q[(a, b)] = crate::quat::Quat::real(proj[(a, b)]);
                                }
                            }
                            frame.push(Element {
                                algebra: alg.clone(),
                                coords: alg.coords_of_native(&q),
                            });
                        }
                        Ok(SpectralData { eigenvalues: vals, frame })
                    }
                    Field::C => {
                        let cm = native.complexify();
                        let (vals, vecs) = linalg::herm_eigen_desc(&cm);
                        let mut frame = Vec::with_capacity(*m);
                        for i in 0..*m {
                            let v = vecs.column(i).clone_owned();
                            let proj = &v * v.adjoint();
                            frame.push(Element {
                                algebra: alg.clone(),
                                coords: alg.coords_of_native(&qmatrix_from_complex(
                                    Field::C, &proj,
                                )?),
                            });
                        }
                        Ok(SpectralData { eigenvalues: vals, frame })
                    }
                    Field::H => {
                        let cm = native.complexify();
                        let (vals, vecs) = linalg::herm_eigen_desc(&cm);
                        quaternionic_frame(alg, *m, &vals, &vecs)
                    }
                }
            }
            Rep::Sum { inner } => {
                let n = inner.dim();
                let top = Element {
                    algebra: inner.clone(),
                    coords: DVector::from(self.coords.rows(0, n).clone_owned()),
                }
                .spectral()?;
                let bot = Element {
                    algebra: inner.clone(),
                    coords: DVector::from(self.coords.rows(n, n).clone_owned()),
                }
                .spectral()?;
                let mut pairs: Vec<(f64, Element)> = Vec::new();
                for (l, c) in top.eigenvalues.iter().zip(top.frame.iter()) {
                    let mut coords = DVector::zeros(2 * n);
                    coords.rows_mut(0, n).copy_from(&c.coords);
                    pairs.push((*l, Element { algebra: alg.clone(), coords }));
                }
                for (l, c) in bot.eigenvalues.iter().zip(bot.frame.iter()) {
                    let mut coords = DVector::zeros(2 * n);
                    coords.rows_mut(n, n).copy_from(&c.coords);
                    pairs.push((*l, Element { algebra: alg.clone(), coords }));
                }
                pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
                Ok(SpectralData {
                    eigenvalues: DVector::from_iterator(pairs.len(), pairs.iter().map(|p| p.0)),
                    frame: pairs.into_iter().map(|p| p.1).collect(),
                })
            }
        }
    }

    /// det, trace, inverse (when all eigenvalues clear +-tol) and signature.
    pub fn analyze(&self) -> Result<ElementAnalysis> {
        let spec = self.spectral()?;
        let t = tol::algebra();
        let det = spec.eigenvalues.iter().product();
        let trace: f64 = spec.eigenvalues.iter().sum();
        let invertible = spec.eigenvalues.iter().all(|l| l.abs() > t);
        let inverse = if invertible { Some(spec.map(|l| 1.0 / l)) } else { None };
        let p = spec.eigenvalues.iter().filter(|&&l| l > t).count();
        let q = spec.eigenvalues.iter().filter(|&&l| l < -t).count();
        Ok(ElementAnalysis { det, trace, inverse, signature: Signature { p, q } })
    }

    pub fn inverse(&self) -> Option<Element> {
        self.analyze().ok().and_then(|a| a.inverse)
    }

    pub fn det(&self) -> f64 {
        self.analyze().map(|a| a.det).unwrap_or(f64::NAN)
    }

    pub fn signature(&self) -> Signature {
        self.analyze().map(|a| a.signature).unwrap_or(Signature { p: 0, q: 0 })
    }

    /// min eigenvalue > tol.
    pub fn in_open_cone(&self) -> bool {
        match self.spectral() {
            Ok(s) => s.eigenvalues.iter().all(|&l| l > tol::algebra()),
            Err(_) => false,
        }
    }

    /// min eigenvalue > -tol.
    pub fn in_closed_cone(&self) -> bool {
        match self.spectral() {
            Ok(s) => s.eigenvalues.iter().all(|&l| l > -tol::algebra()),
            Err(_) => false,
        }
    }

    /// max |eigenvalue|.
    pub fn spectral_norm(&self) -> f64 {
        self.spectral()
            .map(|s| s.eigenvalues.iter().fold(0.0f64, |m, &l| m.max(l.abs())))
            .unwrap_or(f64::NAN)
    }

    /// Open unit ball of the spectral norm.
    pub fn in_unit_ball(&self) -> bool {
        self.spectral_norm() < 1.0 - tol::algebra()
    }
}

fn qmatrix_from_complex(field: Field, m: &DMatrix<C64>) -> Result<QMatrix> {
    let q = match field {
        Field::R => {
            let mut out = QMatrix::zeros(Field::R, m.nrows(), m.ncols());
            for i in 0..m.nrows() {
                for j in 0..m.ncols() {
                    out[(i, j)] = crate::quat::Quat::real(m[(i, j)].re);
                }
            }
            out
        }
        Field::C => {
            let mut out = QMatrix::zeros(Field::C, m.nrows(), m.ncols());
            for i in 0..m.nrows() {
                for j in 0..m.ncols() {
                    out[(i, j)] = crate::quat::Quat::complex(m[(i, j)].re, m[(i, j)].im);
                }
            }
            out
        }
        Field::H => {
            assert!(m.nrows() % 2 == 0 && m.ncols() % 2 == 0);
            let rows = m.nrows() / 2;
            let cols = m.ncols() / 2;
            let mut out = QMatrix::zeros(Field::H, rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    let a = m[(2 * i, 2 * j)];
                    let b = m[(2 * i, 2 * j + 1)];
                    out[(i, j)] = crate::quat::Quat { w: a.re, x: a.im, y: b.re, z: b.im };
                }
            }
            out
        }
    };
    let resid = (q.complexify() - m).map(|c| c.norm()).max();
    if resid > 1e-7 * (1.0 + m.map(|c| c.norm()).max()) {
        return Err(Error::NumericalFailure(format!(
            "matrix does not respect the field structure (residual {resid:.3e})"
        )));
    }
    Ok(q)
}

/// Build the quaternionic frame from the complex-model eigendecomposition.
///
/// Eigenvalues come in pairs; within each eigenvalue cluster the basis is
/// regrouped into quaternionic lines span{u, J conj(u)} so that the
/// resulting projectors live in Herm_m(H).
fn quaternionic_frame(
    alg: &Algebra,
    m: usize,
    vals: &DVector<f64>,
    vecs: &DMatrix<C64>,
) -> Result<SpectralData> {
    let n2 = 2 * m;
    let scale = vals.iter().fold(1.0f64, |a, &b| a.max(b.abs()));
    let radius = 1e-8 * scale;
    // structure map v -> J conj(v) in the interleaved complex model
    let jbar = |v: &DVector<C64>| -> DVector<C64> {
        let mut out = DVector::zeros(n2);
        for k in 0..m {
            out[2 * k] = v[2 * k + 1].conj();
            out[2 * k + 1] = -v[2 * k].conj();
        }
        out
    };

    let mut eigenvalues = Vec::with_capacity(m);
    let mut frame = Vec::with_capacity(m);
    let mut i = 0;
    while i < n2 {
        let mut jend = i + 1;
        while jend < n2 && (vals[jend] - vals[i]).abs() <= radius {
            jend += 1;
        }
        if (jend - i) % 2 != 0 {
            return Err(Error::NumericalFailure(
                "quaternionic eigenvalue cluster of odd size".into(),
            ));
        }
        let mean = (i..jend).map(|k| vals[k]).sum::<f64>() / (jend - i) as f64;
        let mut remaining: Vec<DVector<C64>> =
            (i..jend).map(|k| vecs.column(k).clone_owned()).collect();
        while !remaining.is_empty() {
            let u = remaining[0].normalize();
            // orthogonal to u by the quaternionic structure
            let w = jbar(&u).normalize();
            let proj = &u * u.adjoint() + &w * w.adjoint();
            let q = qmatrix_from_complex(Field::H, &proj)?;
            frame.push(Element { algebra: alg.clone(), coords: alg.coords_of_native(&q) });
            eigenvalues.push(mean);
            // deflate span{u, w} and re-orthonormalise the rest
            let mut next: Vec<DVector<C64>> = Vec::new();
            for v in remaining.iter().skip(1) {
                let mut r = v - &u * (u.adjoint() * v)[(0, 0)] - &w * (w.adjoint() * v)[(0, 0)];
                for b in &next {
                    let c = (b.adjoint() * &r)[(0, 0)];
                    r -= b * c;
                }
                if r.norm() > 1e-6 {
                    next.push(r.normalize());
                }
            }
            if next.len() + 2 != remaining.len() {
                return Err(Error::NumericalFailure(
                    "quaternionic eigenline deflation lost rank".into(),
                ));
            }
            remaining = next;
        }
        i = jend;
    }
    if frame.len() != m {
        return Err(Error::NumericalFailure(format!(
            "expected {m} quaternionic eigenlines, found {}",
            frame.len()
        )));
    }
    // order nonincreasing (clusters were scanned in descending order already)
    Ok(SpectralData {
        eigenvalues: DVector::from_vec(eigenvalues),
        frame,
    })
}
