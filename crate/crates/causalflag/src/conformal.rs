//! The conformal completion M of a euclidean Jordan algebra.
//!
//! Points are projective null rays in R^{d+2} for the spin factor, and
//! maximal isotropic subspaces of (K^{2r}, Omega) for the matrix families.
//! V embeds densely: the spin factor through
//! eta(v) = [(1 - beta(v,v))/2 : v : -(1 + beta(v,v))/2] and the matrix
//! families through the graph Gamma(v) with columns (v; 1).
//!
//! Generators: translations act by the unipotent exp(X_v), dilations by
//! exp(t h) with exp(t h).eta(v) = eta(e^t v), the inversion is the global
//! extension of v -> -v^{-1}, and rho(t) = exp(t z_k) interpolates to the
//! real Cayley transform at t = pi/2.

use crate::error::{Error, Result};
use crate::jordan::Element;
use crate::lie::{matrix_model, LieMatrix, LieModel, ModelKind};
use crate::linalg;
use crate::tol;
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone)]
pub enum PointRep {
    /// Nonzero beta-null vector of R^{d+2}, up to scale.
    QuadricRay(DVector<f64>),
    /// Realified full-column-rank basis of an isotropic K-subspace.
    IsotropicSubspace(DMatrix<f64>),
}

/// A point of the conformal completion.
#[derive(Debug, Clone)]
pub struct CompletionPoint {
    pub model: LieModel,
    pub rep: PointRep,
}

#[derive(Debug, Clone)]
pub enum ConformalGenerator {
    Translate(Element),
    Dilate(f64),
    Inversion,
    MoebiusRho(f64),
    Matrix(LieMatrix),
}

/// Minkowski form beta(v, w) = v0 w0 - <v, w> on the spin factor.
pub fn spin_beta(v: &DVector<f64>, w: &DVector<f64>) -> f64 {
    let mut s = v[0] * w[0];
    for k in 1..v.len() {
        s -= v[k] * w[k];
    }
    s
}

impl CompletionPoint {
    /// Residual of the defining isotropy condition, relative.
    pub fn isotropy_residual(&self) -> f64 {
        match &self.rep {
            PointRep::QuadricRay(v) => {
                let g = &self.model.0.form;
                let q = (v.transpose() * g * v)[(0, 0)];
                q.abs() / v.norm_squared().max(1e-300)
            }
            PointRep::IsotropicSubspace(b) => {
                let g = &self.model.0.form;
                let q = b.transpose() * g * b;
                let (_, smax) = linalg::sv_extremes(b);
                q.abs().max() / (smax * smax).max(1e-300)
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        let r = self.isotropy_residual();
        if r > 1e-8 {
            return Err(Error::NumericalFailure(format!(
                "point fails the isotropy condition (residual {r:.3e})"
            )));
        }
        if let PointRep::IsotropicSubspace(b) = &self.rep {
            let (smin, smax) = linalg::sv_extremes(b);
            if smin < 1e-10 * smax.max(1.0) {
                return Err(Error::NumericalFailure("subspace basis is rank deficient".into()));
            }
        }
        Ok(())
    }

    /// Normalised representative: unit ray vector with a sign convention,
    /// or a column-orthonormalised subspace basis.
    pub fn normalized(&self) -> CompletionPoint {
        match &self.rep {
            PointRep::QuadricRay(v) => {
                let mut n = v / v.norm();
                for k in 0..n.len() {
                    if n[k].abs() > 1e-9 {
                        if n[k] < 0.0 {
                            n = -n;
                        }
                        break;
                    }
                }
                CompletionPoint { model: self.model.clone(), rep: PointRep::QuadricRay(n) }
            }
            PointRep::IsotropicSubspace(b) => {
                let qr = b.clone().qr();
                let q = qr.q();
                CompletionPoint { model: self.model.clone(), rep: PointRep::IsotropicSubspace(q) }
            }
        }
    }

    /// Projective / subspace equality.
    pub fn point_eq(&self, other: &CompletionPoint, tol: f64) -> bool {
        if self.model != other.model {
            return false;
        }
        match (&self.rep, &other.rep) {
            (PointRep::QuadricRay(a), PointRep::QuadricRay(b)) => {
                let na = a / a.norm();
                let nb = b / b.norm();
                (na.dot(&nb).abs() - 1.0).abs() < tol
            }
            (PointRep::IsotropicSubspace(a), PointRep::IsotropicSubspace(b)) => {
                linalg::projector_distance(a, b) < tol
            }
            _ => false,
        }
    }
}

/// Open dense embedding of V into its conformal completion.
pub fn embed_point(v: &Element) -> Result<CompletionPoint> {
    let model = matrix_model(&v.algebra)?;
    match model.kind().clone() {
        ModelKind::SO2d { d } => {
            let beta = spin_beta(&v.coords, &v.coords);
            let mut ray = DVector::zeros(d + 2);
            ray[0] = 0.5 * (1.0 - beta);
            for k in 0..d {
                ray[1 + k] = v.coords[k];
            }
            ray[d + 1] = -0.5 * (1.0 + beta);
            Ok(CompletionPoint { model, rep: PointRep::QuadricRay(ray) })
        }
        ModelKind::UOmega { field, r } => {
            let half = field.dim() * r;
            let blk = v.algebra.native_of(&v.coords).realify();
            let mut b = DMatrix::zeros(2 * half, half);
            b.view_mut((0, 0), (half, half)).copy_from(&blk);
            b.view_mut((half, 0), (half, half))
                .copy_from(&DMatrix::identity(half, half));
            Ok(CompletionPoint { model, rep: PointRep::IsotropicSubspace(b) })
        }
        ModelKind::Doubled(_) => Err(Error::ModelMismatch),
    }
}

/// Chart preimage of a point, when it lies in the dense chart.
pub fn chart_pullback(p: &CompletionPoint) -> Result<Option<Element>> {
    let alg = p.model.algebra().clone();
    match (p.model.kind().clone(), &p.rep) {
        (ModelKind::SO2d { d }, PointRep::QuadricRay(ray)) => {
            let t = ray[0];
            let s = ray[d + 1];
            if (t - s).abs() < 1e-9 * ray.norm() {
                return Ok(None);
            }
            let coords = DVector::from_iterator(d, (0..d).map(|k| ray[1 + k] / (t - s)));
            Ok(Some(alg.element(coords)?))
        }
        (ModelKind::UOmega { field, r }, PointRep::IsotropicSubspace(b)) => {
            let half = field.dim() * r;
            let top = b.view((0, 0), (half, half)).clone_owned();
            let bot = b.view((half, 0), (half, half)).clone_owned();
            let (smin, smax) = linalg::sv_extremes(&bot);
            if smin < 1e-9 * smax.max(b.abs().max()) {
                return Ok(None);
            }
            let binv = bot.try_inverse().ok_or_else(|| {
                Error::NumericalFailure("pullback block inversion failed".into())
            })?;
            let phi = top * binv;
            let q = crate::quat::QMatrix::from_real(field, &phi);
            let resid = q.real_residual(&phi);
            if resid > 1e-6 * (1.0 + phi.abs().max()) {
                return Err(Error::NumericalFailure(format!(
                    "pullback violates the field structure (residual {resid:.3e})"
                )));
            }
            // hermitian by isotropy; symmetrise against roundoff
            let herm = q.add(&q.adjoint()).scale(0.5);
            Ok(Some(alg.element(alg.coords_of_native(&herm))?))
        }
        _ => Err(Error::ModelMismatch),
    }
}

/// Group matrix of a conformal generator.
pub fn generator_matrix(model: &LieModel, g: &ConformalGenerator) -> Result<DMatrix<f64>> {
    let eu = model.euler();
    Ok(match g {
        ConformalGenerator::Translate(v) => {
            let x = model.embed_v(v)?.mat;
            // X_v is 3-step nilpotent in every model
            let x2 = &x * &x;
            DMatrix::identity(model.size(), model.size()) + x + 0.5 * x2
        }
        ConformalGenerator::Dilate(t) => linalg::expm(&(*t * &eu.h)),
        ConformalGenerator::Inversion => linalg::expm(&(std::f64::consts::PI * &eu.zk)),
        ConformalGenerator::MoebiusRho(t) => linalg::expm(&(*t * &eu.zk)),
        ConformalGenerator::Matrix(m) => {
            if m.model != *model {
                return Err(Error::ModelMismatch);
            }
            model.check_group_membership(&m.mat)?;
            m.mat.clone()
        }
    })
}

/// Apply a conformal generator to a completion point.
pub fn apply_generator(g: &ConformalGenerator, p: &CompletionPoint) -> Result<CompletionPoint> {
    let mat = generator_matrix(&p.model, g)?;
    let out = match &p.rep {
        PointRep::QuadricRay(v) => {
            CompletionPoint { model: p.model.clone(), rep: PointRep::QuadricRay(&mat * v) }
        }
        PointRep::IsotropicSubspace(b) => CompletionPoint {
            model: p.model.clone(),
            rep: PointRep::IsotropicSubspace(&mat * b),
        }
        .normalized(),
    };
    out.validate()?;
    Ok(out)
}

/// Real Cayley transform c(z) = (e + z)(e - z)^{-1}, computed through the
/// spectral calculus lambda -> (1 + lambda)/(1 - lambda). None when 1 is
/// an eigenvalue.
pub fn cayley_real(z: &Element) -> Option<Element> {
    let spec = z.spectral().ok()?;
    if spec.eigenvalues.iter().any(|l| (1.0 - l).abs() < tol::algebra()) {
        return None;
    }
    Some(spec.map(|l| (1.0 + l) / (1.0 - l)))
}

/// Inverse Cayley transform c^{-1}(v) = (v - e)(v + e)^{-1}.
pub fn cayley_real_inv(v: &Element) -> Option<Element> {
    let spec = v.spectral().ok()?;
    if spec.eigenvalues.iter().any(|l| (1.0 + l).abs() < tol::algebra()) {
        return None;
    }
    Some(spec.map(|l| (l - 1.0) / (l + 1.0)))
}

/// Transversality of a pair of points (membership in the dense G-orbit
/// of (0, infinity)).
pub fn transversal(p: &CompletionPoint, q: &CompletionPoint) -> Result<bool> {
    if p.model != q.model {
        return Err(Error::ModelMismatch);
    }
    match (&p.rep, &q.rep) {
        (PointRep::QuadricRay(a), PointRep::QuadricRay(b)) => {
            let g = &p.model.0.form;
            let pairing = (a.transpose() * g * b)[(0, 0)];
            Ok(pairing.abs() > 1e-9 * a.norm() * b.norm())
        }
        (PointRep::IsotropicSubspace(a), PointRep::IsotropicSubspace(b)) => {
            let n = a.nrows();
            let k = a.ncols();
            let mut c = DMatrix::zeros(n, 2 * k);
            c.view_mut((0, 0), (n, k)).copy_from(a);
            c.view_mut((0, k), (n, k)).copy_from(b);
            let (smin, smax) = linalg::sv_extremes(&c);
            Ok(smin > 1e-9 * smax)
        }
        _ => Err(Error::ModelMismatch),
    }
}

/// Wire format: {model, algebra, rep: [[f64]]}.
#[derive(Serialize, Deserialize)]
struct PointWire {
    model: String,
    algebra: crate::jordan::Family,
    size: usize,
    rep: Vec<Vec<f64>>,
}

impl Serialize for CompletionPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (model, rep) = match &self.rep {
            PointRep::QuadricRay(v) => {
                ("QuadricRay".to_string(), vec![v.iter().copied().collect()])
            }
            PointRep::IsotropicSubspace(b) => ("IsotropicSubspace".to_string(), linalg::to_rows(b)),
        };
        PointWire {
            model,
            algebra: self.model.algebra().family().clone(),
            size: self.model.algebra().size(),
            rep,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CompletionPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = PointWire::deserialize(d)?;
        let alg = crate::jordan::Algebra::new(wire.algebra, wire.size)
            .map_err(serde::de::Error::custom)?;
        let model = matrix_model(&alg).map_err(serde::de::Error::custom)?;
        let rep = match wire.model.as_str() {
            "QuadricRay" => PointRep::QuadricRay(DVector::from_vec(wire.rep[0].clone())),
            "IsotropicSubspace" => PointRep::IsotropicSubspace(
                linalg::from_rows(&wire.rep).map_err(serde::de::Error::custom)?,
            ),
            other => {
                return Err(serde::de::Error::custom(format!("unknown point model {other}")))
            }
        };
        let p = CompletionPoint { model, rep };
        p.validate().map_err(serde::de::Error::custom)?;
        Ok(p)
    }
}
