//! Causal Makarevic spaces: involutive Jordan automorphisms alpha, the
//! induced involutions theta_{+-alpha} = theta sigma_alpha (resp. tau_h
//! theta_alpha) on the conformal Lie algebra, their fixed algebras, cone
//! classification, membership probes, modularity verdicts and the partial
//! Cayley transforms d_j onto the satellites of the positive cone.
//!
//! Catalog of involution kinds per family:
//!
//! | family    | kinds                                                  |
//! |-----------|--------------------------------------------------------|
//! | Sym_r(R)  | Identity, Pierce(j), NS1 (r even)                      |
//! | Herm_r(C) | Identity, Pierce(j), S1, NS2 (r even)                  |
//! | Herm_r(H) | Identity, Pierce(j), S2                                |
//! | R^{1,d-1} | Identity, MinkowskiReflection(j) (Pierce(1) = r_{d-2}) |
//! | V + V     | Identity, Flip                                         |

mod fixed;
mod flip;
mod membership;
mod modularity;
pub mod tables;

pub use fixed::{cone_classification, fixed_algebra, ConeClassification, FixedAlgebraReport};
pub use flip::{flip_wedge_membership, partial_cayley_dj, partial_cayley_dj_chart};
pub use membership::{makarevic_membership, MembershipReport};
pub use modularity::{modularity_check, ModularityReport};

use crate::error::{Error, Result};
use crate::jordan::{Algebra, Element, Family};
use crate::lie::{matrix_model, LieModel};
use crate::quat::{Field, QMatrix, Quat};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InvolutionKind {
    Identity,
    /// alpha(x) = I_{r-j,j} x I_{r-j,j}, fixing the standard frame.
    Pierce(usize),
    /// Entrywise complex conjugation on Herm_r(C).
    SplitS1,
    /// Entrywise q -> i q i^{-1} on Herm_r(H).
    SplitS2,
    /// x -> Omega x Omega^{-1} on Sym_{2s}(R).
    NonSplitNS1,
    /// z -> Omega conj(z) Omega^{-1} on Herm_{2s}(C).
    NonSplitNS2,
    /// r_j = diag(1_{d-j}, -1_j) on R^{1,d-1}.
    MinkowskiReflection(usize),
    /// (v, w) -> (w, v) on V + V.
    Flip,
}

impl fmt::Display for InvolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvolutionKind::Identity => write!(f, "identity"),
            InvolutionKind::Pierce(j) => write!(f, "pierce({j})"),
            InvolutionKind::SplitS1 => write!(f, "s1"),
            InvolutionKind::SplitS2 => write!(f, "s2"),
            InvolutionKind::NonSplitNS1 => write!(f, "ns1"),
            InvolutionKind::NonSplitNS2 => write!(f, "ns2"),
            InvolutionKind::MinkowskiReflection(j) => write!(f, "mink({j})"),
            InvolutionKind::Flip => write!(f, "flip"),
        }
    }
}

/// An involutive Jordan automorphism together with its action on the
/// Lie model: sigma_alpha(x) = C x C^{-1} with an orthogonal C.
#[derive(Clone)]
pub struct InvolutionSpec {
    pub algebra: Algebra,
    pub kind: InvolutionKind,
    /// Matrix of alpha on V in the coordinate basis.
    pub v_matrix: DMatrix<f64>,
    /// Conjugating matrix implementing sigma_alpha on the model.
    pub lie_matrix: DMatrix<f64>,
    pub(crate) model: LieModel,
}

impl fmt::Debug for InvolutionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "InvolutionSpec({:?}, {})", self.algebra, self.kind)
    }
}

impl InvolutionSpec {
    /// alpha applied to an element of V.
    pub fn apply_v(&self, x: &Element) -> Result<Element> {
        if x.algebra != self.algebra {
            return Err(Error::AlgebraMismatch);
        }
        self.algebra.element(&self.v_matrix * &x.coords)
    }

    /// sigma_alpha on the model.
    pub fn sigma(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        // C is orthogonal, so the inverse is the transpose
        &self.lie_matrix * x * self.lie_matrix.transpose()
    }

    /// theta_alpha = theta o sigma_alpha.
    pub fn theta_alpha(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        self.model.cartan_theta(&self.sigma(x))
    }

    /// theta_{-alpha} = tau_h o theta_alpha.
    pub fn theta_minus_alpha(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        self.model.tau_h(&self.theta_alpha(x))
    }

    /// theta_{+-alpha} by sign.
    pub fn theta_signed(&self, sign: i32, x: &DMatrix<f64>) -> DMatrix<f64> {
        if sign >= 0 {
            self.theta_alpha(x)
        } else {
            self.theta_minus_alpha(x)
        }
    }

    pub fn model(&self) -> &LieModel {
        &self.model
    }

    /// Dimension of the fixed subalgebra V^alpha.
    pub fn v_fixed_dim(&self) -> usize {
        let n = self.algebra.dim();
        let id = DMatrix::identity(n, n);
        n - crate::linalg::rank_floored(&(&self.v_matrix - id), 1e-9)
    }

    /// Construction invariants: alpha^2 = 1, alpha(e) = e, sigma fixes h,
    /// and alpha is multiplicative on sampled pairs.
    pub fn validate(&self) -> Result<()> {
        let n = self.algebra.dim();
        let id = DMatrix::identity(n, n);
        if (&self.v_matrix * &self.v_matrix - id).abs().max() > 1e-9 {
            return Err(Error::NumericalFailure("alpha is not an involution".into()));
        }
        let e = self.algebra.unit();
        if !(self.apply_v(&e)?).approx_eq(&e, 1e-9) {
            return Err(Error::NumericalFailure("alpha does not fix the unit".into()));
        }
        let h = &self.model.euler().h;
        if (self.sigma(h) - h).abs().max() > 1e-9 {
            return Err(Error::NumericalFailure("sigma_alpha does not fix h".into()));
        }
        let mut rng = crate::par::rng_for(0xA17A, self.algebra.dim() as u64);
        for _ in 0..100 {
            let x = self.algebra.random_element(&mut rng);
            let y = self.algebra.random_element(&mut rng);
            let lhs = self.apply_v(&x.product(&y)?)?;
            let rhs = self.apply_v(&x)?.product(&self.apply_v(&y)?)?;
            if !lhs.approx_eq(&rhs, 1e-9 * (1.0 + lhs.coord_norm())) {
                return Err(Error::NumericalFailure(
                    "alpha is not a Jordan automorphism".into(),
                ));
            }
        }
        Ok(())
    }
}

fn incompatible(kind: InvolutionKind, alg: &Algebra) -> Error {
    Error::IncompatibleKind { kind: kind.to_string(), family: alg.family().to_string() }
}

/// Catalog constructor.
pub fn make_involution(algebra: &Algebra, kind: InvolutionKind) -> Result<InvolutionSpec> {
    let model = matrix_model(algebra)?;
    let size = model.size();
    let r = algebra.rank();

    let lie_matrix: DMatrix<f64> = match (kind, algebra.family()) {
        (InvolutionKind::Identity, _) => DMatrix::identity(size, size),
        (InvolutionKind::Pierce(j), Family::SymR | Family::HermC | Family::HermH) => {
            if j > r {
                return Err(Error::IndexOutOfRange { index: j, max: r });
            }
            let field = algebra.family().matrix_field().unwrap();
            let mut w = QMatrix::identity(field, r);
            for i in (r - j)..r {
                w[(i, i)] = -Quat::ONE;
            }
            let blk = w.realify();
            let mut c = DMatrix::zeros(size, size);
            let half = size / 2;
            c.view_mut((0, 0), (half, half)).copy_from(&blk);
            c.view_mut((half, half), (half, half)).copy_from(&blk);
            c
        }
        (InvolutionKind::Pierce(j), Family::SpinFactor) => {
            // the spin frame has rank 2: pierce(1) is the reflection r_{d-2}
            let d = algebra.size();
            return match j {
                0 | 2 => make_involution(algebra, InvolutionKind::Identity),
                1 => make_involution(algebra, InvolutionKind::MinkowskiReflection(d - 2)),
                _ => Err(Error::IndexOutOfRange { index: j, max: 2 }),
            };
        }
        (InvolutionKind::MinkowskiReflection(j), Family::SpinFactor) => {
            let d = algebra.size();
            if j > d - 1 {
                return Err(Error::IndexOutOfRange { index: j, max: d - 1 });
            }
            if j == 0 {
                return make_involution(algebra, InvolutionKind::Identity);
            }
            let mut c = DMatrix::identity(size, size);
            for k in (d - j)..d {
                c[(1 + k, 1 + k)] = -1.0;
            }
            c
        }
        (InvolutionKind::SplitS1, Family::HermC) => conj_matrix(Field::C, 2 * algebra.size()),
        (InvolutionKind::SplitS2, Family::HermH) => {
            QMatrix::scalar(Field::H, 2 * algebra.size(), Quat::I).realify()
        }
        (InvolutionKind::NonSplitNS1, Family::SymR) => {
            if r % 2 != 0 {
                return Err(incompatible(kind, algebra));
            }
            let om = inner_omega(Field::R, r);
            let blk = om.realify();
            let mut c = DMatrix::zeros(size, size);
            let half = size / 2;
            c.view_mut((0, 0), (half, half)).copy_from(&blk);
            c.view_mut((half, half), (half, half)).copy_from(&blk);
            c
        }
        (InvolutionKind::NonSplitNS2, Family::HermC) => {
            if r % 2 != 0 {
                return Err(incompatible(kind, algebra));
            }
            let om = inner_omega(Field::C, r);
            let blk = om.realify();
            let half = size / 2;
            let mut c = DMatrix::zeros(size, size);
            c.view_mut((0, 0), (half, half)).copy_from(&blk);
            c.view_mut((half, half), (half, half)).copy_from(&blk);
            c * conj_matrix(Field::C, 2 * r)
        }
        (InvolutionKind::Flip, Family::DirectSum(_)) => {
            let half = size / 2;
            let mut c = DMatrix::zeros(size, size);
            c.view_mut((0, half), (half, half))
                .copy_from(&DMatrix::identity(half, half));
            c.view_mut((half, 0), (half, half))
                .copy_from(&DMatrix::identity(half, half));
            c
        }
        _ => return Err(incompatible(kind, algebra)),
    };

    // restrict sigma to g_1(h) to obtain alpha on V
    let n = algebra.dim();
    let mut v_matrix = DMatrix::zeros(n, n);
    for b in 0..n {
        let xb = model.embed_v_mat(&algebra.basis_element(b).coords);
        let img = &lie_matrix * xb * lie_matrix.transpose();
        v_matrix.set_column(b, &model.pullback_v_mat(&img)?);
    }

    let spec = InvolutionSpec { algebra: algebra.clone(), kind, v_matrix, lie_matrix, model };
    spec.validate()?;
    Ok(spec)
}

/// Realified matrix of entrywise complex conjugation on K^n.
fn conj_matrix(field: Field, n: usize) -> DMatrix<f64> {
    let d = field.dim();
    let mut blk = DMatrix::identity(d, d);
    if d > 1 {
        blk[(1, 1)] = -1.0;
    }
    if d > 2 {
        blk[(2, 2)] = -1.0;
        blk[(3, 3)] = -1.0;
    }
    let mut c = DMatrix::zeros(n * d, n * d);
    for k in 0..n {
        c.view_mut((k * d, k * d), (d, d)).copy_from(&blk);
    }
    c
}

/// The r x r symplectic-type matrix [[0, 1], [-1, 0]] over the field.
fn inner_omega(field: Field, r: usize) -> QMatrix {
    let s = r / 2;
    let mut om = QMatrix::zeros(field, r, r);
    for i in 0..s {
        om[(i, s + i)] = Quat::ONE;
        om[(s + i, i)] = -Quat::ONE;
    }
    om
}

/// The involution kinds available for a family (the nontrivial catalog
/// plus the identity).
pub fn catalog(algebra: &Algebra) -> Vec<InvolutionKind> {
    let r = algebra.rank();
    let mut out = vec![InvolutionKind::Identity];
    match algebra.family() {
        Family::SymR => {
            for j in 1..r {
                out.push(InvolutionKind::Pierce(j));
            }
            if r % 2 == 0 {
                out.push(InvolutionKind::NonSplitNS1);
            }
        }
        Family::HermC => {
            for j in 1..r {
                out.push(InvolutionKind::Pierce(j));
            }
            out.push(InvolutionKind::SplitS1);
            if r % 2 == 0 {
                out.push(InvolutionKind::NonSplitNS2);
            }
        }
        Family::HermH => {
            for j in 1..r {
                out.push(InvolutionKind::Pierce(j));
            }
            out.push(InvolutionKind::SplitS2);
        }
        Family::SpinFactor => {
            let d = algebra.size();
            for j in 1..d {
                out.push(InvolutionKind::MinkowskiReflection(j));
            }
        }
        Family::DirectSum(_) => {
            out.push(InvolutionKind::Flip);
        }
    }
    out
}

/// Parse an involution kind from its display form.
pub fn parse_kind(s: &str) -> Result<InvolutionKind> {
    let s = s.trim().to_lowercase();
    match s.as_str() {
        "identity" | "id" => return Ok(InvolutionKind::Identity),
        "s1" => return Ok(InvolutionKind::SplitS1),
        "s2" => return Ok(InvolutionKind::SplitS2),
        "ns1" => return Ok(InvolutionKind::NonSplitNS1),
        "ns2" => return Ok(InvolutionKind::NonSplitNS2),
        "flip" => return Ok(InvolutionKind::Flip),
        _ => {}
    }
    for (prefix, f) in [
        ("pierce(", InvolutionKind::Pierce as fn(usize) -> InvolutionKind),
        ("mink(", InvolutionKind::MinkowskiReflection as fn(usize) -> InvolutionKind),
    ] {
        if let Some(rest) = s.strip_prefix(prefix) {
            if let Some(num) = rest.strip_suffix(')') {
                let j: usize = num
                    .parse()
                    .map_err(|_| Error::NumericalFailure(format!("bad involution index {num}")))?;
                return Ok(f(j));
            }
        }
    }
    Err(Error::NumericalFailure(format!("unknown involution kind {s}")))
}

/// The doubled algebra used by flip involutions.
pub fn doubled(algebra: &Algebra) -> Result<Algebra> {
    Algebra::direct_sum(algebra)
}

/// x_lie + sign * theta_alpha(x_lie), an element of the cone C^{(+-alpha)}
/// when x is in the closed cone of V.
pub(crate) fn cone_combination(
    spec: &InvolutionSpec,
    sign: i32,
    x: &Element,
) -> Result<DMatrix<f64>> {
    let xl = spec.model.embed_v_mat(&x.coords);
    let th = spec.theta_alpha(&xl);
    Ok(if sign >= 0 { &xl + th } else { &xl - th })
}
