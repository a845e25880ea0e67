//! Bergman operator B(x,y) = Id - 2 (L(x*y) + [L(x), L(y)]) + P(x) P(y).
//!
//! Invertibility of B(x, y) is the quasi-invertibility criterion that cuts
//! out the Makarevic spaces inside the conformal completion. The algebraic
//! formula here is pinned in the test suite against an independent
//! finite-difference Jacobian of w -> ((x+w)^{-1} - y)^{-1} at w = 0.

use super::Element;
use crate::error::Result;
use crate::tol;
use nalgebra::DMatrix;

#[derive(Debug, Clone)]
pub struct BergmanOperator {
    pub matrix: DMatrix<f64>,
    pub invertible: bool,
    pub det: f64,
    /// Smallest singular value, the actual invertibility margin. The raw
    /// determinant is a product of dim-many factors and underflows long
    /// before the operator degenerates.
    pub sigma_min: f64,
}

/// The box operator x [] y = L(x*y) + [L(x), L(y)].
pub fn box_operator(x: &Element, y: &Element) -> Result<DMatrix<f64>> {
    x.same_algebra(y)?;
    let lx = x.l_operator();
    let ly = y.l_operator();
    let lxy = x.product(y)?.l_operator();
    Ok(lxy + &lx * &ly - &ly * &lx)
}

/// Bergman operator of the pair (x, y).
pub fn bergman(x: &Element, y: &Element) -> Result<BergmanOperator> {
    x.same_algebra(y)?;
    let n = x.algebra.dim();
    let id = DMatrix::identity(n, n);
    let bx = box_operator(x, y)?;
    let matrix = id - 2.0 * bx + x.p_operator() * y.p_operator();
    let det = matrix.clone().lu().determinant();
    let (smin, smax) = crate::linalg::sv_extremes(&matrix);
    let invertible = smin > tol::algebra() * smax.max(1.0);
    Ok(BergmanOperator { invertible, det, matrix, sigma_min: smin })
}
