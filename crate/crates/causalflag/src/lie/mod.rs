//! Matrix models of the conformal Lie algebras.
//!
//! The matrix families share the model u(Omega, K^{2r}) of matrices x with
//! x* Omega + Omega x = 0, realified entrywise so the conjugate transpose
//! becomes the real transpose: sp_{2r}(R) for K = R, u_{r,r}(C) for K = C
//! and so*(4r) for K = H. The spin factor R^{1,d-1} gets so_{2,d} acting on
//! R x V x R with the form diag(1, beta, -1). Direct sums double the model
//! blockwise.
//!
//! The model carries a verified basis (dimension checked against the
//! nullity of the defining linear system), the Euler element h of the
//! 3-grading with g_1(h) identified with the Jordan algebra V, and the
//! distinguished elements e, f = -theta(e)/2, z_k and the frame data that
//! the Cayley-transform machinery needs.

mod euler;
mod spectrum;
mod wedge;

pub use euler::{grade_project, EulerData};
pub use spectrum::{ad_spectrum_class, orientation_sign, SpectrumClass};
pub use wedge::{wedge_bracket_test, wedge_membership_hj};

use crate::error::{Error, Result};
use crate::jordan::{hermitian_basis, Algebra, Element, Family};
use crate::linalg::{self, SpanSolver};
use crate::quat::{Field, QMatrix, Quat};
use crate::tol;
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelKind {
    /// u(Omega, K^{2r}); realified matrix size 2 * dim(K) * r.
    UOmega { field: Field, r: usize },
    /// so_{2,d} on R^{d+2}.
    SO2d { d: usize },
    /// Block-diagonal double of an inner model.
    Doubled(Box<ModelKind>),
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelKind::UOmega { field, r } => write!(f, "u(Omega, {}^{})", field.name(), 2 * r),
            ModelKind::SO2d { d } => write!(f, "so(2,{d})"),
            ModelKind::Doubled(inner) => write!(f, "{inner} + {inner}"),
        }
    }
}

pub struct LieModelData {
    pub algebra: Algebra,
    pub kind: ModelKind,
    /// Real matrix size.
    pub size: usize,
    /// Invariant form (Omega realified, or diag(1, beta, -1)).
    pub form: DMatrix<f64>,
    /// Basis of the realified Lie algebra.
    pub basis: Vec<DMatrix<f64>>,
    pub dim: usize,
    solver: SpanSolver,
    /// Right-multiplication structure matrices whose commutant cuts out
    /// K-linear maps (empty for R and for so_{2,d}).
    structure: Vec<DMatrix<f64>>,
    euler: EulerData,
}

/// Shared handle to a conformal Lie algebra model.
#[derive(Clone)]
pub struct LieModel(pub(crate) Arc<LieModelData>);

impl fmt::Debug for LieModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieModel({}, dim {})", self.0.kind, self.0.dim)
    }
}

impl PartialEq for LieModel {
    fn eq(&self, other: &Self) -> bool {
        self.0.kind == other.0.kind
    }
}

/// An element of the model (Lie algebra vector or group matrix; group
/// matrices are only produced by the generator machinery and checked
/// against the group condition where required).
#[derive(Clone)]
pub struct LieMatrix {
    pub model: LieModel,
    pub mat: DMatrix<f64>,
}

impl fmt::Debug for LieMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieMatrix({})", self.model.0.kind)
    }
}

impl LieMatrix {
    pub fn approx_eq(&self, other: &LieMatrix, tol: f64) -> bool {
        self.model == other.model && (&self.mat - &other.mat).abs().max() <= tol
    }
}

fn model_cache() -> &'static Mutex<HashMap<(Family, usize), LieModel>> {
    static CACHE: OnceLock<Mutex<HashMap<(Family, usize), LieModel>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The matrix model of the conformal Lie algebra of an algebra family.
/// Models are memoized per (family, size).
pub fn matrix_model(algebra: &Algebra) -> Result<LieModel> {
    let key = (algebra.family().clone(), algebra.size());
    if let Some(m) = model_cache().lock().unwrap().get(&key) {
        return Ok(m.clone());
    }
    let model = build_model(algebra)?;
    model_cache().lock().unwrap().insert(key, model.clone());
    Ok(model)
}

fn build_model(algebra: &Algebra) -> Result<LieModel> {
    match algebra.family() {
        Family::SymR | Family::HermC | Family::HermH => build_uomega(algebra),
        Family::SpinFactor => build_so2d(algebra),
        Family::DirectSum(_) => build_doubled(algebra),
    }
}

fn omega_q(field: Field, r: usize) -> QMatrix {
    let mut om = QMatrix::zeros(field, 2 * r, 2 * r);
    for i in 0..r {
        om[(i, r + i)] = Quat::ONE;
        om[(r + i, i)] = -Quat::ONE;
    }
    om
}

fn field_units(field: Field) -> &'static [Quat] {
    match field {
        Field::R => &[Quat::ONE],
        Field::C => &[Quat::ONE, Quat::I],
        Field::H => &[Quat::ONE, Quat::I, Quat::J, Quat::K],
    }
}

fn build_uomega(algebra: &Algebra) -> Result<LieModel> {
    let field = algebra.family().matrix_field().unwrap();
    let r = algebra.size();
    let d = field.dim();
    let size = 2 * d * r;
    let form = omega_q(field, r).realify();

    // block basis: a arbitrary in gl_r(K), b and c hermitian
    let mut basis: Vec<DMatrix<f64>> = Vec::new();
    for p in 0..r {
        for q in 0..r {
            for &u in field_units(field) {
                let mut top = QMatrix::zeros(field, r, r);
                top[(p, q)] = u;
                let bot = top.adjoint().scale(-1.0);
                basis.push(assemble_blocks(field, r, Some(&top), None, None, Some(&bot)));
            }
        }
    }
    for b in hermitian_basis(field, r) {
        basis.push(assemble_blocks(field, r, None, Some(&b), None, None));
    }
    for c in hermitian_basis(field, r) {
        basis.push(assemble_blocks(field, r, None, None, Some(&c), None));
    }
    let dim = basis.len();
    let expected = match field {
        Field::R => r * (2 * r + 1),
        Field::C => 4 * r * r,
        Field::H => 2 * r * (4 * r - 1),
    };
    if dim != expected {
        return Err(Error::NumericalFailure(format!(
            "basis count {dim} does not match the family dimension {expected}"
        )));
    }
    // the defining linear system x* Omega + Omega x = 0 over K
    let omega = omega_q(field, r);
    let nullity = uomega_nullity(field, r, &omega);
    if nullity != dim {
        return Err(Error::NumericalFailure(format!(
            "membership system nullity {nullity} disagrees with basis count {dim}"
        )));
    }

    let structure = structure_matrices(field, 2 * r);
    finish_model(algebra, ModelKind::UOmega { field, r }, size, form, basis, structure)
}

/// Nullity of Y -> Y* Omega + Omega Y on gl_{2r}(K), computed over the
/// K-entry parametrisation.
fn uomega_nullity(field: Field, r: usize, omega: &QMatrix) -> usize {
    let m = 2 * r;
    let d = field.dim();
    let nunk = d * m * m;
    let mut cons = DMatrix::zeros(nunk, nunk);
    let mut col = 0;
    for p in 0..m {
        for q in 0..m {
            for &u in field_units(field) {
                let mut y = QMatrix::zeros(field, m, m);
                y[(p, q)] = u;
                let lhs = y.adjoint().matmul(omega).add(&omega.matmul(&y));
                // flatten K-entries to real components
                let mut row = 0;
                for i in 0..m {
                    for j in 0..m {
                        let e = lhs[(i, j)];
                        let comps = [e.w, e.x, e.y, e.z];
                        for c in comps.iter().take(d) {
                            cons[(row, col)] = *c;
                            row += 1;
                        }
                    }
                }
                col += 1;
            }
        }
    }
    nunk - linalg::rank(&cons, 1e-10)
}

fn assemble_blocks(
    field: Field,
    r: usize,
    a: Option<&QMatrix>,
    b: Option<&QMatrix>,
    c: Option<&QMatrix>,
    d_blk: Option<&QMatrix>,
) -> DMatrix<f64> {
    let d = field.dim();
    let s = 2 * d * r;
    let mut out = DMatrix::zeros(s, s);
    if let Some(m) = a {
        out.view_mut((0, 0), (d * r, d * r)).copy_from(&m.realify());
    }
    if let Some(m) = b {
        out.view_mut((0, d * r), (d * r, d * r)).copy_from(&m.realify());
    }
    if let Some(m) = c {
        out.view_mut((d * r, 0), (d * r, d * r)).copy_from(&m.realify());
    }
    if let Some(m) = d_blk {
        out.view_mut((d * r, d * r), (d * r, d * r)).copy_from(&m.realify());
    }
    out
}

/// Right-scalar-multiplication matrices; the commutant of these inside
/// gl(realified) is exactly the set of K-linear maps.
fn structure_matrices(field: Field, n: usize) -> Vec<DMatrix<f64>> {
    let d = field.dim();
    let per: Vec<Quat> = match field {
        Field::R => vec![],
        Field::C => vec![Quat::I],
        Field::H => vec![Quat::I, Quat::J],
    };
    per.into_iter()
        .map(|u| {
            let blk = u.right_block(field);
            let mut s = DMatrix::zeros(n * d, n * d);
            for k in 0..n {
                s.view_mut((k * d, k * d), (d, d)).copy_from(&blk);
            }
            s
        })
        .collect()
}

fn build_so2d(algebra: &Algebra) -> Result<LieModel> {
    let d = algebra.size();
    let size = d + 2;
    // form diag(1, beta, -1) with beta the Minkowski form on V
    let mut form = DMatrix::zeros(size, size);
    form[(0, 0)] = 1.0;
    form[(1, 1)] = 1.0;
    for k in 2..=d {
        form[(k, k)] = -1.0;
    }
    form[(d + 1, d + 1)] = -1.0;

    // basis: G_jj E_ij - G_ii E_ji for i < j
    let mut basis = Vec::new();
    for i in 0..size {
        for j in (i + 1)..size {
            let mut m = DMatrix::zeros(size, size);
            m[(i, j)] = form[(j, j)];
            m[(j, i)] = -form[(i, i)];
            basis.push(m);
        }
    }
    let dim = basis.len();
    debug_assert_eq!(dim, (d + 2) * (d + 1) / 2);
    // nullity of X^T G + G X = 0
    let mut cons = DMatrix::zeros(size * size, size * size);
    let mut col = 0;
    for p in 0..size {
        for q in 0..size {
            let mut x = DMatrix::zeros(size, size);
            x[(p, q)] = 1.0;
            let lhs = x.transpose() * &form + &form * &x;
            let mut row = 0;
            for i in 0..size {
                for j in 0..size {
                    cons[(row, col)] = lhs[(i, j)];
                    row += 1;
                }
            }
            col += 1;
        }
    }
    let nullity = size * size - linalg::rank(&cons, 1e-10);
    if nullity != dim {
        return Err(Error::NumericalFailure(format!(
            "so(2,{d}) nullity {nullity} != {dim}"
        )));
    }
    finish_model(algebra, ModelKind::SO2d { d }, size, form, basis, Vec::new())
}

fn build_doubled(algebra: &Algebra) -> Result<LieModel> {
    let inner_alg = algebra.inner().unwrap().clone();
    let inner = matrix_model(&inner_alg)?;
    let s = inner.0.size;
    let size = 2 * s;
    let mut form = DMatrix::zeros(size, size);
    form.view_mut((0, 0), (s, s)).copy_from(&inner.0.form);
    form.view_mut((s, s), (s, s)).copy_from(&inner.0.form);
    let mut basis = Vec::new();
    for b in &inner.0.basis {
        let mut m = DMatrix::zeros(size, size);
        m.view_mut((0, 0), (s, s)).copy_from(b);
        basis.push(m);
    }
    for b in &inner.0.basis {
        let mut m = DMatrix::zeros(size, size);
        m.view_mut((s, s), (s, s)).copy_from(b);
        basis.push(m);
    }
    let mut structure = Vec::new();
    for st in &inner.0.structure {
        let mut m = DMatrix::zeros(size, size);
        m.view_mut((0, 0), (s, s)).copy_from(st);
        m.view_mut((s, s), (s, s)).copy_from(st);
        structure.push(m);
    }
    finish_model(
        algebra,
        ModelKind::Doubled(Box::new(inner.0.kind.clone())),
        size,
        form,
        basis,
        structure,
    )
}

fn finish_model(
    algebra: &Algebra,
    kind: ModelKind,
    size: usize,
    form: DMatrix<f64>,
    basis: Vec<DMatrix<f64>>,
    structure: Vec<DMatrix<f64>>,
) -> Result<LieModel> {
    let dim = basis.len();
    let mut bm = DMatrix::zeros(size * size, dim);
    for (k, b) in basis.iter().enumerate() {
        bm.set_column(k, &linalg::vectorize(b));
    }
    let solver = SpanSolver::new(bm);
    let mut data = LieModelData {
        algebra: algebra.clone(),
        kind,
        size,
        form,
        basis,
        dim,
        solver,
        structure,
        euler: EulerData::placeholder(),
    };
    data.euler = euler::build_euler_data(&data)?;
    let model = LieModel(Arc::new(data));
    // membership sanity for the constructed basis
    for b in &model.0.basis {
        model.check_algebra_membership(b)?;
    }
    Ok(model)
}

impl LieModel {
    pub fn algebra(&self) -> &Algebra {
        &self.0.algebra
    }

    pub fn kind(&self) -> &ModelKind {
        &self.0.kind
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn basis(&self) -> impl Iterator<Item = LieMatrix> + '_ {
        self.0.basis.iter().map(move |b| LieMatrix { model: self.clone(), mat: b.clone() })
    }

    pub fn euler(&self) -> &EulerData {
        &self.0.euler
    }

    pub fn matrix(&self, mat: DMatrix<f64>) -> Result<LieMatrix> {
        if mat.nrows() != self.0.size || mat.ncols() != self.0.size {
            return Err(Error::SizeMismatch { expected: self.0.size, got: mat.nrows() });
        }
        Ok(LieMatrix { model: self.clone(), mat })
    }

    /// Coordinates in the model basis; errors when the matrix is not in
    /// the Lie algebra.
    pub fn coords(&self, x: &DMatrix<f64>) -> Result<DVector<f64>> {
        self.0.solver.coords_checked(&linalg::vectorize(x), 1e-8)
    }

    pub fn from_coords(&self, c: &DVector<f64>) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(self.0.size, self.0.size);
        for (k, b) in self.0.basis.iter().enumerate() {
            if c[k] != 0.0 {
                out += c[k] * b;
            }
        }
        out
    }

    pub fn check_algebra_membership(&self, x: &DMatrix<f64>) -> Result<()> {
        let resid = (x.transpose() * &self.0.form + &self.0.form * x).abs().max();
        let scale = 1.0 + x.abs().max();
        if resid > 1e-8 * scale {
            return Err(Error::NumericalFailure(format!(
                "algebra condition violated (residual {resid:.3e})"
            )));
        }
        for s in &self.0.structure {
            let r = (x * s - s * x).abs().max();
            if r > 1e-8 * scale {
                return Err(Error::NumericalFailure(format!(
                    "field-structure condition violated (residual {r:.3e})"
                )));
            }
        }
        Ok(())
    }

    /// Group condition g^T F g = F plus K-linearity.
    pub fn group_residual(&self, g: &DMatrix<f64>) -> f64 {
        let mut resid = (g.transpose() * &self.0.form * g - &self.0.form).abs().max();
        for s in &self.0.structure {
            resid = resid.max((g * s - s * g).abs().max());
        }
        resid
    }

    pub fn check_group_membership(&self, g: &DMatrix<f64>) -> Result<()> {
        let r = self.group_residual(g);
        if r > tol::GROUP * (1.0 + self.0.form.abs().max()) {
            Err(Error::NonGroupMatrix(r))
        } else {
            Ok(())
        }
    }

    /// Embedding V = g_1(h): translation generator X_v.
    pub fn embed_v(&self, v: &Element) -> Result<LieMatrix> {
        if v.algebra != self.0.algebra {
            return Err(Error::AlgebraMismatch);
        }
        Ok(LieMatrix { model: self.clone(), mat: self.embed_v_mat(&v.coords) })
    }

    pub fn embed_v_mat(&self, coords: &DVector<f64>) -> DMatrix<f64> {
        match &self.0.kind {
            ModelKind::UOmega { .. } => {
                let native = self.0.algebra.native_of(coords);
                let blk = native.realify();
                let half = blk.nrows();
                let mut out = DMatrix::zeros(2 * half, 2 * half);
                out.view_mut((0, half), (half, half)).copy_from(&blk);
                out
            }
            ModelKind::SO2d { d } => {
                let d = *d;
                let mut out = DMatrix::zeros(d + 2, d + 2);
                // flat = beta v, beta = diag(1, -1, ..., -1)
                let mut flat = coords.clone();
                for k in 1..d {
                    flat[k] = -flat[k];
                }
                for k in 0..d {
                    out[(0, 1 + k)] = -flat[k];
                    out[(1 + k, 0)] = coords[k];
                    out[(1 + k, d + 1)] = -coords[k];
                    out[(d + 1, 1 + k)] = -flat[k];
                }
                out
            }
            ModelKind::Doubled(_) => {
                let inner_alg = self.0.algebra.inner().unwrap();
                let inner = matrix_model(inner_alg).unwrap();
                let n = inner_alg.dim();
                let s = inner.0.size;
                let top = inner.embed_v_mat(&DVector::from(coords.rows(0, n).clone_owned()));
                let bot = inner.embed_v_mat(&DVector::from(coords.rows(n, n).clone_owned()));
                let mut out = DMatrix::zeros(2 * s, 2 * s);
                out.view_mut((0, 0), (s, s)).copy_from(&top);
                out.view_mut((s, s), (s, s)).copy_from(&bot);
                out
            }
        }
    }

    /// Inverse of `embed_v`; errors when the matrix is not in g_1(h).
    pub fn pullback_v(&self, x: &LieMatrix) -> Result<Element> {
        if x.model != *self {
            return Err(Error::ModelMismatch);
        }
        let coords = self.pullback_v_mat(&x.mat)?;
        self.0.algebra.element(coords)
    }

    pub fn pullback_v_mat(&self, mat: &DMatrix<f64>) -> Result<DVector<f64>> {
        let coords = self.pullback_v_unchecked(mat);
        let back = self.embed_v_mat(&coords);
        let resid = (&back - mat).abs().max();
        if resid > 1e-7 * (1.0 + mat.abs().max()) {
            return Err(Error::NumericalFailure(format!(
                "matrix is not in g_1(h) (residual {resid:.3e})"
            )));
        }
        Ok(coords)
    }

    pub(crate) fn pullback_v_unchecked(&self, mat: &DMatrix<f64>) -> DVector<f64> {
        match &self.0.kind {
            ModelKind::UOmega { field, r } => {
                let half = field.dim() * r;
                let blk = mat.view((0, half), (half, half)).clone_owned();
                let q = QMatrix::from_real(*field, &blk);
                self.0.algebra.coords_of_native(&q)
            }
            ModelKind::SO2d { d } => {
                DVector::from_iterator(*d, (0..*d).map(|k| mat[(1 + k, 0)]))
            }
            ModelKind::Doubled(_) => {
                let inner_alg = self.0.algebra.inner().unwrap();
                let inner = matrix_model(inner_alg).unwrap();
                let s = inner.0.size;
                let top = inner.pullback_v_unchecked(&mat.view((0, 0), (s, s)).clone_owned());
                let bot = inner.pullback_v_unchecked(&mat.view((s, s), (s, s)).clone_owned());
                let mut out = DVector::zeros(2 * inner_alg.dim());
                out.rows_mut(0, inner_alg.dim()).copy_from(&top);
                out.rows_mut(inner_alg.dim(), inner_alg.dim()).copy_from(&bot);
                out
            }
        }
    }

    /// Matrix of ad(x) in the model basis.
    pub fn ad_matrix(&self, x: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        let n = self.0.dim;
        let mut out = DMatrix::zeros(n, n);
        for (k, b) in self.0.basis.iter().enumerate() {
            let br = x * b - b * x;
            let c = self.coords(&br)?;
            out.set_column(k, &c);
        }
        Ok(out)
    }

    /// Cartan involution theta(x) = -x^T on the realified model.
    pub fn cartan_theta(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        -x.transpose()
    }

    /// tau_h = Ad of the grading involution: +1 on g_0, -1 on g_{+-1}.
    pub fn tau_h(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        let t = self.tau_h_matrix();
        &t * x * t
    }

    /// The involutive matrix implementing tau_h by conjugation.
    pub fn tau_h_matrix(&self) -> DMatrix<f64> {
        match &self.0.kind {
            ModelKind::UOmega { field, r } => {
                let half = field.dim() * r;
                let mut t = DMatrix::identity(2 * half, 2 * half);
                for k in half..2 * half {
                    t[(k, k)] = -1.0;
                }
                t
            }
            ModelKind::SO2d { d } => {
                let mut t = DMatrix::identity(d + 2, d + 2);
                t[(0, 0)] = -1.0;
                t[(d + 1, d + 1)] = -1.0;
                t
            }
            ModelKind::Doubled(_) => {
                let inner = matrix_model(self.0.algebra.inner().unwrap()).unwrap();
                let s = inner.0.size;
                let ti = inner.tau_h_matrix();
                let mut t = DMatrix::zeros(2 * s, 2 * s);
                t.view_mut((0, 0), (s, s)).copy_from(&ti);
                t.view_mut((s, s), (s, s)).copy_from(&ti);
                t
            }
        }
    }
}

/// Wire format {model: {kind, size}, mat: [[f64]]} (row-major).
#[derive(Serialize, Deserialize)]
struct LieMatrixWire {
    model: LieModelWire,
    mat: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct LieModelWire {
    kind: ModelKind,
    size: usize,
}

impl Serialize for LieMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LieMatrixWire {
            model: LieModelWire { kind: self.model.0.kind.clone(), size: self.model.0.size },
            mat: linalg::to_rows(&self.mat),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LieMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = LieMatrixWire::deserialize(d)?;
        let model = model_for_kind(&wire.model.kind).map_err(serde::de::Error::custom)?;
        let mat = linalg::from_rows(&wire.mat).map_err(serde::de::Error::custom)?;
        model.matrix(mat).map_err(serde::de::Error::custom)
    }
}

/// Reconstruct the model determined by a kind tag.
pub fn model_for_kind(kind: &ModelKind) -> Result<LieModel> {
    let algebra = algebra_for_kind(kind)?;
    matrix_model(&algebra)
}

fn algebra_for_kind(kind: &ModelKind) -> Result<Algebra> {
    match kind {
        ModelKind::UOmega { field, r } => {
            let family = match field {
                Field::R => Family::SymR,
                Field::C => Family::HermC,
                Field::H => Family::HermH,
            };
            Algebra::new(family, *r)
        }
        ModelKind::SO2d { d } => Algebra::new(Family::SpinFactor, *d),
        ModelKind::Doubled(inner) => {
            let ia = algebra_for_kind(inner)?;
            Algebra::direct_sum(&ia)
        }
    }
}
