//! Flip-type wedges and the partial Cayley maps d_j.

use crate::conformal::{apply_generator, CompletionPoint, ConformalGenerator};
use crate::error::{Error, Result};
use crate::jordan::Element;
use crate::lie::matrix_model;

/// Wedge of the flip Euler element (h, -h) in the chart V x V:
/// membership means x in V_+ and y in -V_+.
pub fn flip_wedge_membership(x: &Element, y: &Element) -> Result<bool> {
    x.same_algebra(y)?;
    Ok(x.in_open_cone() && y.scale(-1.0).in_open_cone())
}

/// d_j = exp(pi/2 z_k^j) applied to a completion point. d_j moves the
/// base point to the signature representative: d_j(eta(0)) = eta(c^j).
pub fn partial_cayley_dj(j: usize, p: &CompletionPoint) -> Result<CompletionPoint> {
    let model = p.model.clone();
    let r = model.algebra().rank();
    if j > r {
        return Err(Error::IndexOutOfRange { index: j, max: r });
    }
    let dj = model.euler().cayley_j(j)?;
    apply_generator(&ConformalGenerator::Matrix(model.matrix(dj)?), p)
}

/// Convenience: d_j applied to a chart element.
pub fn partial_cayley_dj_chart(j: usize, v: &Element) -> Result<Option<Element>> {
    let _ = matrix_model(&v.algebra)?;
    let p = crate::conformal::embed_point(v)?;
    let moved = partial_cayley_dj(j, &p)?;
    crate::conformal::chart_pullback(&moved)
}
