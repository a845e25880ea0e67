//! Boundary strata of the Makarevic spaces M^{(+-r_j)} inside Q(R^{2,d}).
//!
//! The reflection r_j splits R^{2,d} into two blocks. On the compactly
//! causal side the blocks are R^{2,p-1} (spanning t, v_0, ..., v_{p-2}, s
//! with p = j + 1) and a negative-definite R^{q+1}; the open orbit
//! (AdS^p x S^q)/{+-1} is the dense set of rays with a nonzero sphere
//! block. On the non-compactly causal side the blocks carry signatures
//! (1, q) and (1, p); the sign of the form on the (1, q)-block separates
//! the dS^p x H^q orbit, the opposite orbit H^p x dS^q and the null
//! strata between them.

use super::{QuadricPoint};
use crate::error::{Error, Result};
use nalgebra::DVector;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CcStratum {
    /// Dense orbit (AdS^p x S^q)/{+-1}.
    Interior,
    /// Sphere block vanishes: the boundary quadric Q(R^{2,p-1}).
    BoundaryQuadric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NccStratum {
    /// dS^p x H^q, the orbit of the base point.
    InteriorPrimary,
    /// The opposite open orbit H^p x dS^q.
    InteriorOpposite,
    /// H-block zero: the sphere S^{p-1} of null rays in R^{1,p}.
    SpherePMinus1,
    /// Both blocks null and nonzero: S^{p-1} x R^x x S^{q-1}.
    MixedNull,
    /// dS-block zero: the sphere S^{q-1}.
    SphereQMinus1,
}

/// Index sets of the two r_j blocks in (t, v_0, .., v_{d-1}, s)
/// coordinates. CC: (R^{2,p-1}-block, sphere block); NCC: ((1,q)-block,
/// (1,p)-block).
fn cc_blocks(d: usize, j: usize) -> (Vec<usize>, Vec<usize>) {
    let p = j + 1;
    let mut ads = vec![0];
    for k in 0..(p - 1) {
        ads.push(1 + k);
    }
    ads.push(d + 1);
    let sphere: Vec<usize> = ((p - 1)..d).map(|k| 1 + k).collect();
    (ads, sphere)
}

fn ncc_blocks(d: usize, j: usize) -> (Vec<usize>, Vec<usize>) {
    // +1 eigenvectors of hat r_j = diag(1, -1, 1_{d-j-1}, -1_{j+1}):
    // t and the first d-1-j spatial directions
    let mut hblock = vec![0];
    for k in 1..(d - j) {
        hblock.push(1 + k);
    }
    let mut dsblock = vec![1];
    for k in (d - j)..d {
        dsblock.push(1 + k);
    }
    dsblock.push(d + 1);
    (hblock, dsblock)
}

/// Form value on a block; the first listed index carries +, the rest -.
fn block_form(ray: &DVector<f64>, idx: &[usize]) -> (f64, f64) {
    let mut q = 0.0;
    let mut norm2 = 0.0;
    for (pos, &i) in idx.iter().enumerate() {
        let sgn = if pos == 0 { 1.0 } else { -1.0 };
        q += sgn * ray[i] * ray[i];
        norm2 += ray[i] * ray[i];
    }
    (q, norm2)
}

const NULL_TOL: f64 = 1e-8;
const ZERO_TOL: f64 = 1e-10;

/// Stratum of a null ray under the compactly causal split of r_j.
pub fn cc_stratum(p: &QuadricPoint, j: usize) -> Result<CcStratum> {
    if j > p.d - 1 {
        return Err(Error::IndexOutOfRange { index: j, max: p.d - 1 });
    }
    let ray = p.ray_vec();
    let (_ads, sphere) = cc_blocks(p.d, j);
    let norm2: f64 = sphere.iter().map(|&i| ray[i] * ray[i]).sum();
    if norm2.sqrt() < ZERO_TOL * ray.norm() {
        Ok(CcStratum::BoundaryQuadric)
    } else {
        Ok(CcStratum::Interior)
    }
}

/// Stratum of a null ray under the non-compactly causal split of r_j.
pub fn ncc_stratum(point: &QuadricPoint, j: usize) -> Result<NccStratum> {
    if j > point.d - 1 {
        return Err(Error::IndexOutOfRange { index: j, max: point.d - 1 });
    }
    let ray = point.ray_vec();
    let scale = ray.norm();
    let (hblock, dsblock) = ncc_blocks(point.d, j);
    let (qh, nh2) = block_form(&ray, &hblock);
    let (_qd, nd2) = block_form(&ray, &dsblock);
    let h_zero = nh2.sqrt() < ZERO_TOL * scale;
    let d_zero = nd2.sqrt() < ZERO_TOL * scale;
    if h_zero {
        return Ok(NccStratum::SpherePMinus1);
    }
    if d_zero {
        return Ok(NccStratum::SphereQMinus1);
    }
    if qh.abs() < NULL_TOL * nh2 {
        return Ok(NccStratum::MixedNull);
    }
    if qh > 0.0 {
        Ok(NccStratum::InteriorPrimary)
    } else {
        Ok(NccStratum::InteriorOpposite)
    }
}
