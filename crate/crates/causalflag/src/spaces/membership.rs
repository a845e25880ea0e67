//! Makarevic-space membership through the Bergman operator.
//!
//! v belongs to M^{(+-alpha)} cap V up to components iff B(v, +-alpha v)
//! is invertible; the chart intersection is a union of connected
//! components of that set. Which component contains the base point is
//! probed along the straight segment from 0 to v; the probe is a
//! heuristic and reports None when the segment passes near a singular
//! pair.

use super::InvolutionSpec;
use crate::error::Result;
use crate::jordan::{bergman, Element};
use crate::tol;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct MembershipReport {
    pub bergman_invertible: bool,
    /// Some(true): the straight path from 0 stayed quasi-invertible.
    /// None: the path came too close to a singular pair (inconclusive).
    pub in_base_component: Option<bool>,
}

pub fn makarevic_membership(
    spec: &InvolutionSpec,
    sign: i32,
    v: &Element,
) -> Result<MembershipReport> {
    let alpha_v = spec.apply_v(v)?;
    let partner = if sign >= 0 { alpha_v.clone() } else { alpha_v.scale(-1.0) };
    let b = bergman(v, &partner)?;
    if !b.invertible {
        return Ok(MembershipReport { bergman_invertible: false, in_base_component: None });
    }
    // path probe 0 -> v at 64 points
    let mut conclusive = true;
    for k in 1..=64 {
        let t = k as f64 / 64.0;
        let xt = v.scale(t);
        let pt = partner.scale(t);
        let bt = bergman(&xt, &pt)?;
        let scale = bt.matrix.abs().max().max(1.0);
        if bt.sigma_min < tol::PATH_SINGULAR * scale {
            conclusive = false;
            break;
        }
    }
    Ok(MembershipReport {
        bergman_invertible: true,
        in_base_component: if conclusive { Some(true) } else { None },
    })
}
