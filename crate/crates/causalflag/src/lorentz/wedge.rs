//! Wedge regions on dS^d and AdS^d and the AdS geodesic exponential.

use super::{beta_wedge, hypersurface_residual, Chart};
use crate::error::{Error, Result};
use crate::jordan::{Algebra, Family};
use nalgebra::DVector;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Hypersurface {
    DeSitter,
    AntiDeSitter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Component {
    /// Chart side beta(v,v) > -1 (contains the chart origin).
    Right,
    /// Chart side beta(v,v) < -1.
    Left,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct WedgeVerdict {
    pub member: bool,
    pub component: Option<Component>,
}

/// Wedge membership for a hypersurface point (length d + 1 coordinate
/// vector in the respective model).
///
/// dS: the positivity region of the boost h' pairing the chart time axis
/// with the s-direction; membership reads -y_s > |y_{v_0}|. AdS: the
/// positivity region of the boost h'' in the (v_0, v_{d-1})-plane; the
/// flow vector must be future timelike, future being the z_k-rotation
/// direction. The AdS wedge has two components, labeled through the
/// chart pullback by the sign of beta(v,v) + 1.
pub fn wedge_region(d: usize, y: &DVector<f64>, which: Hypersurface) -> Result<WedgeVerdict> {
    if y.len() != d + 1 {
        return Err(Error::SizeMismatch { expected: d + 1, got: y.len() });
    }
    match which {
        Hypersurface::DeSitter => {
            let resid = hypersurface_residual(Chart::DeSitter, d, y);
            if resid > 1e-8 {
                return Err(Error::NotOnHypersurface(resid));
            }
            // y = (y_V, y_s)
            let member = -y[d] > y[0].abs();
            Ok(WedgeVerdict { member, component: None })
        }
        Hypersurface::AntiDeSitter => {
            let resid = hypersurface_residual(Chart::AntiDeSitter, d, y);
            if resid > 1e-8 {
                return Err(Error::NotOnHypersurface(resid));
            }
            // y = (y_t, y_V); flow vector of h'' swaps v_0 and v_{d-1}
            let mut u = DVector::zeros(d + 1);
            u[1] = y[d];
            u[d] = y[1];
            let timelike = beta_wedge(d, &u, &u) > 0.0;
            // future direction from the z_k rotation (t, v_0)
            let mut zy = DVector::zeros(d + 1);
            zy[0] = -y[1];
            zy[1] = y[0];
            let future = beta_wedge(d, &u, &zy) > 0.0;
            let member = timelike && future;
            let component = if member {
                // wedge points are inside the chart; label by the sign of
                // beta(v,v) + 1 at the pullback, i.e. of y_t + 1 scaled
                let denom = 1.0 + y[0];
                if denom.abs() < 1e-12 {
                    None
                } else {
                    // beta(v,v) + 1 = 2 (1 + y_t)^{-1} ... sign of (1 + y_t)
                    Some(if denom > 0.0 { Component::Right } else { Component::Left })
                }
            } else {
                None
            };
            Ok(WedgeVerdict { member, component })
        }
    }
}

/// Geodesic exponential of AdS^d at p (a point of the hypersurface
/// beta^(p,p) = 1) applied to a tangent vector y (beta^(p,y) = 0):
/// Exp_p(y) = cos(sqrt(q)) p + sin(sqrt(q))/sqrt(q) y with q =
/// beta^(y,y), extended by the even power series to q <= 0.
pub fn ads_exp(d: usize, p: &DVector<f64>, y: &DVector<f64>) -> Result<DVector<f64>> {
    if p.len() != d + 1 || y.len() != d + 1 {
        return Err(Error::SizeMismatch { expected: d + 1, got: p.len().min(y.len()) });
    }
    let qp = beta_wedge(d, p, p);
    if (qp - 1.0).abs() > 1e-8 * p.norm_squared().max(1.0) {
        return Err(Error::NotOnHypersurface((qp - 1.0).abs()));
    }
    let pairing = beta_wedge(d, p, y);
    if pairing.abs() > 1e-8 * (1.0 + p.norm() * y.norm()) {
        return Err(Error::NotTangent(pairing.abs()));
    }
    let q = beta_wedge(d, y, y);
    let (c, sc) = cos_sinc(q);
    let out = c * p + sc * y;
    // the result stays on the hypersurface
    let qo = beta_wedge(d, &out, &out);
    if (qo - 1.0).abs() > 1e-8 * out.norm_squared().max(1.0) {
        return Err(Error::NumericalFailure(format!(
            "exponential left the hypersurface (residual {:.3e})",
            (qo - 1.0).abs()
        )));
    }
    Ok(out)
}

/// (cos(sqrt(q)), sin(sqrt(q))/sqrt(q)) continued through q <= 0 by the
/// even series: cosh / sinh for negative q.
fn cos_sinc(q: f64) -> (f64, f64) {
    if q > 1e-12 {
        let s = q.sqrt();
        (s.cos(), s.sin() / s)
    } else if q < -1e-12 {
        let s = (-q).sqrt();
        (s.cosh(), s.sinh() / s)
    } else {
        // series around 0
        (1.0 - q / 2.0 + q * q / 24.0, 1.0 - q / 6.0 + q * q / 120.0)
    }
}

/// Sample uniformly-ish a point of dS^d or AdS^d through the charts
/// (used by the randomized wedge tests).
pub fn random_hypersurface_point<R: rand::Rng>(
    d: usize,
    which: Hypersurface,
    rng: &mut R,
) -> Result<DVector<f64>> {
    let alg = Algebra::new(Family::SpinFactor, d)?;
    loop {
        let v = alg.random_element(rng).scale(1.5);
        let chart = match which {
            Hypersurface::DeSitter => Chart::DeSitter,
            Hypersurface::AntiDeSitter => Chart::AntiDeSitter,
        };
        match chart_guard(chart, &v) {
            Some(w) => return Ok(w),
            None => continue,
        }
    }
}

fn chart_guard(chart: Chart, v: &crate::jordan::Element) -> Option<DVector<f64>> {
    let beta = crate::conformal::spin_beta(&v.coords, &v.coords);
    let bad = match chart {
        Chart::DeSitter => (1.0 - beta).abs() < 1e-3,
        _ => (1.0 + beta).abs() < 1e-3,
    };
    if bad {
        return None;
    }
    super::chart_forward(chart, v).ok()
}
