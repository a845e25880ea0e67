//! Fixed algebras g^{(+-alpha)} and the cone classification of
//! C^{(+-alpha)} = {x +- theta_alpha(x) : x in the closed cone}.

use super::{cone_combination, InvolutionSpec};
use crate::error::{Error, Result};
use crate::lie::{ad_spectrum_class, LieMatrix, SpectrumClass};
use crate::linalg;
use crate::par;
use nalgebra::{DMatrix, DVector};
use serde::Serialize;

/// Fixed-point subalgebra of theta_{+-alpha} with its split under tau_h.
#[derive(Debug, Clone)]
pub struct FixedAlgebraReport {
    pub sign: i32,
    pub dim: usize,
    pub basis: Vec<LieMatrix>,
    /// Dimension of the tau_h-fixed part (g_0-side).
    pub h_part_dim: usize,
    /// Dimension of the -1 part, always dim V.
    pub q_part_dim: usize,
}

/// The linear map theta_{+-alpha} in model coordinates.
pub fn theta_coords_matrix(spec: &InvolutionSpec, sign: i32) -> Result<DMatrix<f64>> {
    let model = spec.model();
    let n = model.dim();
    let mut t = DMatrix::zeros(n, n);
    for (k, b) in model.basis().enumerate() {
        let img = spec.theta_signed(sign, &b.mat);
        t.set_column(k, &model.coords(&img)?);
    }
    Ok(t)
}

/// ker(theta_{+-alpha} - 1) with the tau_h split.
pub fn fixed_algebra(spec: &InvolutionSpec, sign: i32) -> Result<FixedAlgebraReport> {
    let model = spec.model();
    let n = model.dim();
    let t = theta_coords_matrix(spec, sign)?;
    // sanity: involution on the coordinate space
    let sq = &t * &t - DMatrix::identity(n, n);
    if sq.abs().max() > 1e-8 {
        return Err(Error::NumericalFailure(
            "theta_{+-alpha} is not an involution on the model".into(),
        ));
    }
    let fixed = linalg::nullspace(&(t - DMatrix::identity(n, n)), 1e-8);
    let dim = fixed.ncols();
    // tau_h restricted to the fixed space: h-part counts +1 eigenvalues
    let mut tau = DMatrix::zeros(n, n);
    for (k, b) in model.basis().enumerate() {
        tau.set_column(k, &model.coords(&model.tau_h(&b.mat))?);
    }
    let solver = linalg::SpanSolver::new(fixed.clone());
    let mut tau_f = DMatrix::zeros(dim, dim);
    for k in 0..dim {
        let col = &tau * fixed.column(k).clone_owned();
        let (c, resid) = solver.coords(&col);
        if resid > 1e-7 {
            return Err(Error::NumericalFailure(
                "tau_h does not preserve the fixed algebra".into(),
            ));
        }
        tau_f.set_column(k, &c);
    }
    let trace = tau_f.trace();
    let h_part_dim = ((dim as f64 + trace) / 2.0).round() as usize;
    let q_part_dim = dim - h_part_dim;
    let basis = (0..dim)
        .map(|k| {
            let c = DVector::from(fixed.column(k).clone_owned());
            model.matrix(model.from_coords(&c)).unwrap()
        })
        .collect();
    Ok(FixedAlgebraReport { sign, dim, basis, h_part_dim, q_part_dim })
}

/// Sampled classification of the causal cone C^{(+-alpha)}.
#[derive(Debug, Clone, Serialize)]
pub struct ConeClassification {
    pub sign: i32,
    pub samples: usize,
    pub verdict: SpectrumClass,
    /// Coordinates of a failing cone sample, when the verdict is Mixed.
    pub witness: Option<Vec<f64>>,
}

/// Classify ad-spectra of n_samples random elements x + sign theta(x),
/// x in the open cone. Uniform Elliptic (+) / Hyperbolic (-) verdicts are
/// expected; anything else yields Mixed with the witness.
pub fn cone_classification(
    spec: &InvolutionSpec,
    sign: i32,
    n_samples: usize,
    seed: u64,
) -> Result<ConeClassification> {
    if n_samples == 0 {
        return Err(Error::NumericalFailure("need at least one sample".into()));
    }
    let expected =
        if sign >= 0 { SpectrumClass::Elliptic } else { SpectrumClass::Hyperbolic };
    let results: Vec<Result<(SpectrumClass, Vec<f64>)>> = par::map_samples(n_samples, |i| {
        let mut rng = par::rng_for(seed, i as u64);
        let x = spec.algebra.random_cone_element(&mut rng, 0.1, 2.0);
        let y = cone_combination(spec, sign, &x)?;
        let class = ad_spectrum_class(&spec.model().matrix(y)?)?;
        Ok((class, x.coords.iter().copied().collect()))
    });
    for r in results {
        let (class, coords) = r?;
        if class != expected {
            return Ok(ConeClassification {
                sign,
                samples: n_samples,
                verdict: SpectrumClass::Mixed,
                witness: Some(coords),
            });
        }
    }
    Ok(ConeClassification { sign, samples: n_samples, verdict: expected, witness: None })
}
