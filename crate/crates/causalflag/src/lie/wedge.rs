//! Positivity regions W(h^j) in the Jordan chart.
//!
//! The wedge of h^j is the set of x whose V_1(h^j)-part lies in the
//! relative interior of the cone trace on V_1, whose V_{-1}-part lies in
//! the relative-interior negative part and whose V_0-part is free. The
//! equivalent bracket criterion [h^j, x] in V_+ (open) is exposed
//! separately as `wedge_bracket_test` so the two routes can be compared.

use super::matrix_model;
use crate::error::Result;
use crate::jordan::Element;
use crate::tol;
use nalgebra::{DMatrix, DVector};

/// The derivation-like operator v -> [h^j, X_v] on V, with eigenvalues
/// (-1, 0, 1); columns computed through the model.
fn pierce_operator(x: &Element, j: usize) -> Result<DMatrix<f64>> {
    let alg = &x.algebra;
    let model = matrix_model(alg)?;
    let hj = model.euler().h_j(j)?;
    let n = alg.dim();
    let mut d = DMatrix::zeros(n, n);
    for b in 0..n {
        let xb = model.embed_v_mat(&alg.basis_element(b).coords);
        let br = &hj * &xb - &xb * &hj;
        d.set_column(b, &model.pullback_v_mat(&br)?);
    }
    Ok(d)
}

/// Pierce projections of x relative to h^j: the (+1, 0, -1) eigenspace
/// components of the operator above.
pub fn pierce_components(x: &Element, j: usize) -> Result<(Element, Element, Element)> {
    let d = pierce_operator(x, j)?;
    let dx: DVector<f64> = &d * &x.coords;
    let ddx: DVector<f64> = &d * &dx;
    let plus = 0.5 * (&ddx + &dx);
    let zero = &x.coords - &ddx;
    let minus = 0.5 * (&ddx - &dx);
    Ok((
        x.algebra.element(plus)?,
        x.algebra.element(zero)?,
        x.algebra.element(minus)?,
    ))
}

/// Membership of x in the wedge W(h^j), decided by the eigenspace
/// decomposition route.
pub fn wedge_membership_hj(x: &Element, j: usize) -> Result<bool> {
    let alg = &x.algebra;
    let r = alg.rank();
    if j > r {
        return Err(crate::error::Error::IndexOutOfRange { index: j, max: r });
    }
    let (x1, _x0, xm) = pierce_components(x, j)?;
    let frame = alg.standard_frame();
    // units of the +-1 Pierce subalgebras
    let mut u_plus = alg.zero();
    let mut u_minus = alg.zero();
    for (i, c) in frame.iter().enumerate() {
        if i < r - j {
            u_plus.coords += &c.coords;
        } else {
            u_minus.coords += &c.coords;
        }
    }
    let shift = x.spectral_norm() + 1.0;
    // relative-interior positivity inside V_1: pad the complement with a
    // large positive multiple of the complementary unit, then the full
    // spectrum shows exactly the V_1-spectrum plus the padding values
    let plus_ok = {
        let padded = x1.add(&u_minus.scale(shift))?;
        padded.spectral()?.eigenvalues.iter().all(|&l| l > tol::algebra())
    };
    let minus_ok = {
        let padded = xm.scale(-1.0).add(&u_plus.scale(shift))?;
        padded.spectral()?.eigenvalues.iter().all(|&l| l > tol::algebra())
    };
    Ok(plus_ok && minus_ok)
}

/// The bracket route: [h^j, x] in the open cone.
pub fn wedge_bracket_test(x: &Element, j: usize) -> Result<bool> {
    let (x1, _x0, xm) = pierce_components(x, j)?;
    Ok(x1.sub(&xm)?.in_open_cone())
}
