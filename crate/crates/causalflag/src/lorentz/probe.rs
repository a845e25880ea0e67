//! Monte-Carlo probe of global hyperbolicity: sample the causal interval
//! D_{a,b} in the chart, intersect with a region, and look for interval
//! points clustering at the region's topological boundary. Boundary
//! clustering with the causal-interval condition still holding is the
//! operational signature of a non-compact causal interval, i.e. evidence
//! (never proof) against global hyperbolicity. Distances are Euclidean
//! diagnostics in the ambient chart.

use crate::conformal::spin_beta;
use crate::error::{Error, Result};
use crate::jordan::{Element, Family};
use crate::par;
use crate::tol;
use nalgebra::DVector;
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProbeRegion {
    /// The open cone V_+ of the chart algebra.
    PositiveCone,
    /// The dS wedge in the chart: the double cone D_{e0, -e0}.
    DsWedge,
    /// The right component of the AdS wedge: the Rindler wedge of the
    /// (v_0, v_{d-1}) boost minus the dS^{d-1} locus, side beta > -1.
    AdsWedgeRight,
    /// The flip wedge V_+ x (-V_+) of a doubled algebra.
    FlipWedge,
}

impl ProbeRegion {
    pub fn name(&self) -> &'static str {
        match self {
            ProbeRegion::PositiveCone => "positive-cone",
            ProbeRegion::DsWedge => "ds-wedge",
            ProbeRegion::AdsWedgeRight => "ads-wedge",
            ProbeRegion::FlipWedge => "flip-wedge",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GhProbeReport {
    pub region: String,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub samples: usize,
    /// Samples that landed in D_{a,b} and in the region.
    pub hits: usize,
    pub min_boundary_distance: f64,
    pub escape_detected: bool,
}

fn region_member(region: ProbeRegion, x: &Element) -> Result<bool> {
    match region {
        ProbeRegion::PositiveCone => Ok(x.in_open_cone()),
        ProbeRegion::DsWedge => {
            let e0 = x.algebra.unit();
            x.in_double_cone(&e0, &e0.scale(-1.0))
        }
        ProbeRegion::AdsWedgeRight => {
            let d = x.algebra.size();
            let beta = spin_beta(&x.coords, &x.coords);
            Ok(x.coords[d - 1] > x.coords[0].abs() && beta > -1.0)
        }
        ProbeRegion::FlipWedge => {
            let inner = x.algebra.inner().ok_or(Error::ModelMismatch)?.clone();
            let n = inner.dim();
            let top = inner.element(DVector::from(x.coords.rows(0, n).clone_owned()))?;
            let bot = inner.element(DVector::from(x.coords.rows(n, n).clone_owned()))?;
            crate::spaces::flip_wedge_membership(&top, &bot)
        }
    }
}

/// Euclidean chart distance to the region's topological boundary
/// (first-order estimate for the curved pieces).
fn boundary_distance(region: ProbeRegion, x: &Element) -> Result<f64> {
    let spin_factor = 1.0 / 2.0f64.sqrt();
    let cone_dist = |y: &Element| -> Result<f64> {
        let lmin = y.spectral()?.eigenvalues.min();
        Ok(if matches!(y.algebra.family(), Family::SpinFactor) {
            lmin * spin_factor
        } else {
            lmin
        })
    };
    match region {
        ProbeRegion::PositiveCone => cone_dist(x),
        ProbeRegion::DsWedge => {
            let e0 = x.algebra.unit();
            let d1 = cone_dist(&e0.sub(x)?)?;
            let d2 = cone_dist(&x.add(&e0)?)?;
            Ok(d1.min(d2))
        }
        ProbeRegion::AdsWedgeRight => {
            let d = x.algebra.size();
            let rindler = (x.coords[d - 1] - x.coords[0].abs()) * spin_factor;
            // distance to the dS^{d-1} locus {beta = -1}: |beta+1| / |grad|
            let beta = spin_beta(&x.coords, &x.coords);
            let grad = 2.0 * x.coords.norm();
            let ds_locus = (beta + 1.0).abs() / grad.max(1e-12);
            Ok(rindler.min(ds_locus))
        }
        ProbeRegion::FlipWedge => {
            let inner = x.algebra.inner().ok_or(Error::ModelMismatch)?.clone();
            let n = inner.dim();
            let top = inner.element(DVector::from(x.coords.rows(0, n).clone_owned()))?;
            let bot = inner.element(DVector::from(x.coords.rows(n, n).clone_owned()))?;
            Ok(cone_dist(&top)?.min(cone_dist(&bot.scale(-1.0))?))
        }
    }
}

/// Probe the causal interval D_{a,b} inside a region.
pub fn gh_probe(
    region: ProbeRegion,
    a: &Element,
    b: &Element,
    n_samples: usize,
    seed: u64,
) -> Result<GhProbeReport> {
    a.same_algebra(b)?;
    let diff = a.sub(b)?;
    if !diff.in_open_cone() {
        return Err(Error::NotCausallyRelated);
    }
    if !(region_member(region, a)? && region_member(region, b)?) {
        return Err(Error::NotCausallyRelated);
    }
    let alg = a.algebra.clone();
    let n = alg.dim();
    let center = a.add(b)?.scale(0.5);
    let halfwidth = diff.jordan_trace().abs().max(1e-9);

    let per_sample = |i: usize| -> Result<Option<f64>> {
        let mut rng = par::rng_for(seed, i as u64);
        let coords = DVector::from_iterator(
            n,
            (0..n).map(|k| center.coords[k] + halfwidth * rng.random_range(-1.0..1.0)),
        );
        let x = alg.element(coords)?;
        if !x.in_double_cone(a, b)? {
            return Ok(None);
        }
        if !region_member(region, &x)? {
            return Ok(None);
        }
        Ok(Some(boundary_distance(region, &x)?))
    };
    let results: Vec<Result<Option<f64>>> = par::map_samples(n_samples, per_sample);
    let mut hits = 0usize;
    let mut min_dist = f64::INFINITY;
    for r in results {
        if let Some(dist) = r? {
            hits += 1;
            min_dist = min_dist.min(dist);
        }
    }
    Ok(GhProbeReport {
        region: region.name().to_string(),
        a: a.coords.iter().copied().collect(),
        b: b.coords.iter().copied().collect(),
        samples: n_samples,
        hits,
        min_boundary_distance: min_dist,
        escape_detected: min_dist < tol::GH_ESCAPE,
    })
}
