//! The Lorentzian case: the quadric Q(R^{2,d}) of null rays, its
//! stereographic charts, de Sitter and anti-de Sitter hypersurface
//! models, wedge regions, the AdS geodesic exponential, boundary strata
//! and the global-hyperbolicity probe.
//!
//! Coordinates on R^{2,d} are ordered (t, v_0, ..., v_{d-1}, s) with the
//! form t^2 + beta(v,v) - s^2 and beta the Minkowski form on
//! V = R^{1,d-1}. The dense chart is eta(v) = [(1-beta)/2 : v :
//! -(1+beta)/2].

mod probe;
mod strata;
mod wedge;

pub use probe::{gh_probe, GhProbeReport, ProbeRegion};
pub use strata::{cc_stratum, ncc_stratum, CcStratum, NccStratum};
pub use wedge::{ads_exp, wedge_region, Component, Hypersurface, WedgeVerdict};

use crate::conformal::spin_beta;
use crate::error::{Error, Result};
use crate::jordan::{Algebra, Element, Family};
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

/// A projective null ray in R^{2,d}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuadricPoint {
    pub d: usize,
    pub ray: Vec<f64>,
}

/// The ambient form evaluated on two vectors of length d + 2.
pub fn tilde_beta(d: usize, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
    let mut s = x[0] * y[0] + x[1] * y[1];
    for k in 2..=d {
        s -= x[k] * y[k];
    }
    s - x[d + 1] * y[d + 1]
}

impl QuadricPoint {
    pub fn new(d: usize, ray: DVector<f64>) -> Result<QuadricPoint> {
        if ray.len() != d + 2 {
            return Err(Error::SizeMismatch { expected: d + 2, got: ray.len() });
        }
        let q = tilde_beta(d, &ray, &ray);
        let n2 = ray.norm_squared();
        if n2 < 1e-300 {
            return Err(Error::NumericalFailure("zero ray".into()));
        }
        if q.abs() > 1e-9 * n2 {
            return Err(Error::NotOnHypersurface(q.abs() / n2));
        }
        Ok(QuadricPoint { d, ray: ray.iter().copied().collect() })
    }

    pub fn ray_vec(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.ray)
    }

    /// eta(v) for a Minkowski vector.
    pub fn embed(v: &Element) -> Result<QuadricPoint> {
        let Family::SpinFactor = v.algebra.family() else {
            return Err(Error::ModelMismatch);
        };
        let d = v.algebra.size();
        let beta = spin_beta(&v.coords, &v.coords);
        let mut ray = DVector::zeros(d + 2);
        ray[0] = 0.5 * (1.0 - beta);
        for k in 0..d {
            ray[1 + k] = v.coords[k];
        }
        ray[d + 1] = -0.5 * (1.0 + beta);
        QuadricPoint::new(d, ray)
    }

    /// Chart preimage when defined (t != s on the ray).
    pub fn pullback(&self, algebra: &Algebra) -> Result<Option<Element>> {
        if *algebra.family() != Family::SpinFactor || algebra.size() != self.d {
            return Err(Error::ModelMismatch);
        }
        let ray = self.ray_vec();
        let denom = ray[0] - ray[self.d + 1];
        if denom.abs() < 1e-9 * ray.norm() {
            return Ok(None);
        }
        let coords =
            DVector::from_iterator(self.d, (0..self.d).map(|k| ray[1 + k] / denom));
        Ok(Some(algebra.element(coords)?))
    }

    pub fn projective_eq(&self, other: &QuadricPoint, tol: f64) -> bool {
        if self.d != other.d {
            return false;
        }
        let a = self.ray_vec().normalize();
        let b = other.ray_vec().normalize();
        (a.dot(&b).abs() - 1.0).abs() < tol
    }
}

/// Stereographic chart family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Chart {
    /// eta_1: V minus {beta = -1} onto the unit sphere of
    /// beta^ = t^2 + beta on R + V.
    General,
    /// V minus {beta = +1} onto dS^d = {beta(y_V) - y_s^2 = -1} in V + R.
    DeSitter,
    /// V minus {beta = -1} onto AdS^d = {y_t^2 + beta(y_V) = 1} in R + V.
    AntiDeSitter,
}

/// Forward chart map; the image is a point of the respective
/// hypersurface as a coordinate vector of length d + 1.
pub fn chart_forward(chart: Chart, v: &Element) -> Result<DVector<f64>> {
    let Family::SpinFactor = v.algebra.family() else {
        return Err(Error::ModelMismatch);
    };
    let d = v.algebra.size();
    let beta = spin_beta(&v.coords, &v.coords);
    let mut out = DVector::zeros(d + 1);
    match chart {
        Chart::General | Chart::AntiDeSitter => {
            if (1.0 + beta).abs() < 1e-12 {
                return Err(Error::OutsideChartDomain);
            }
            out[0] = (1.0 - beta) / (1.0 + beta);
            for k in 0..d {
                out[1 + k] = 2.0 * v.coords[k] / (1.0 + beta);
            }
        }
        Chart::DeSitter => {
            if (1.0 - beta).abs() < 1e-12 {
                return Err(Error::OutsideChartDomain);
            }
            for k in 0..d {
                out[k] = 2.0 * v.coords[k] / (1.0 - beta);
            }
            out[d] = (beta + 1.0) / (beta - 1.0);
        }
    }
    Ok(out)
}

/// Inverse chart map.
pub fn chart_inverse(chart: Chart, algebra: &Algebra, w: &DVector<f64>) -> Result<Element> {
    let Family::SpinFactor = algebra.family() else {
        return Err(Error::ModelMismatch);
    };
    let d = algebra.size();
    if w.len() != d + 1 {
        return Err(Error::SizeMismatch { expected: d + 1, got: w.len() });
    }
    let resid = hypersurface_residual(chart, d, w);
    if resid > 1e-8 {
        return Err(Error::NotOnHypersurface(resid));
    }
    let coords = match chart {
        Chart::General | Chart::AntiDeSitter => {
            if (1.0 + w[0]).abs() < 1e-12 {
                return Err(Error::OutsideChartDomain);
            }
            DVector::from_iterator(d, (0..d).map(|k| w[1 + k] / (1.0 + w[0])))
        }
        Chart::DeSitter => {
            if (1.0 - w[d]).abs() < 1e-12 {
                return Err(Error::OutsideChartDomain);
            }
            DVector::from_iterator(d, (0..d).map(|k| w[k] / (1.0 - w[d])))
        }
    };
    algebra.element(coords)
}

/// |Q(w) - target| for the chart's defining quadric, relative.
pub fn hypersurface_residual(chart: Chart, d: usize, w: &DVector<f64>) -> f64 {
    let n2 = w.norm_squared().max(1e-300);
    match chart {
        Chart::General | Chart::AntiDeSitter => {
            // w = (t, v): t^2 + beta(v,v) = 1
            let v = w.rows(1, d).clone_owned();
            let q = w[0] * w[0] + spin_beta(&v, &v);
            (q - 1.0).abs() / n2.max(1.0)
        }
        Chart::DeSitter => {
            // w = (v, s): beta(v,v) - s^2 = -1
            let v = w.rows(0, d).clone_owned();
            let q = spin_beta(&v, &v) - w[d] * w[d];
            (q + 1.0).abs() / n2.max(1.0)
        }
    }
}

/// Ray representation of a dS hypersurface point [1 : y_V : y_s].
pub fn ds_point_to_ray(d: usize, y: &DVector<f64>) -> Result<QuadricPoint> {
    let mut ray = DVector::zeros(d + 2);
    ray[0] = 1.0;
    for k in 0..=d {
        ray[1 + k] = y[k];
    }
    QuadricPoint::new(d, ray)
}

/// Ray representation of an AdS hypersurface point [y_t : y_V : -1].
pub fn ads_point_to_ray(d: usize, y: &DVector<f64>) -> Result<QuadricPoint> {
    let mut ray = DVector::zeros(d + 2);
    for k in 0..=d {
        ray[k] = y[k];
    }
    ray[d + 1] = -1.0;
    QuadricPoint::new(d, ray)
}

/// Matrix of beta^ = diag(1, beta) on R + V (the AdS ambient form).
pub fn beta_wedge_matrix(d: usize) -> DMatrix<f64> {
    let mut g = DMatrix::zeros(d + 1, d + 1);
    g[(0, 0)] = 1.0;
    g[(1, 1)] = 1.0;
    for k in 2..=d {
        g[(k, k)] = -1.0;
    }
    g
}

pub fn beta_wedge(d: usize, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
    let mut s = x[0] * y[0] + x[1] * y[1];
    for k in 2..=d {
        s -= x[k] * y[k];
    }
    s
}
