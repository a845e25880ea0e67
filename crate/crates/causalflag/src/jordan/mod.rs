//! Euclidean Jordan algebras.
//!
//! Four families are supported: the spin factor R^{1,d-1} (Minkowski
//! space with the product (x0,x)(y0,y) = (x0 y0 + <x,y>, x0 y + y0 x)),
//! the hermitian matrix algebras Sym_r(R), Herm_r(C), Herm_r(H) with the
//! symmetrised matrix product, and direct sums V + V used by flip
//! involutions. Elements are real coordinate vectors over a fixed basis;
//! the trace form tr(x y) is positive definite, which is what "euclidean"
//! means here.
//!
//! Quaternionic algebras are stored over an explicit real basis and their
//! spectra are computed on the 2r x 2r complex model, collapsing the
//! doubled eigenvalues.

mod bergman;
mod spectral;

pub use bergman::{bergman, box_operator, BergmanOperator};
pub use spectral::{ElementAnalysis, Signature, SpectralData};

use crate::error::{Error, Result};
use crate::linalg;
use crate::quat::{Field, QMatrix, Quat};
use crate::tol;
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// Algebra family tag. `DirectSum` doubles an inner family.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    SpinFactor,
    SymR,
    HermC,
    HermH,
    DirectSum(Box<Family>),
}

impl Family {
    pub fn matrix_field(&self) -> Option<Field> {
        match self {
            Family::SymR => Some(Field::R),
            Family::HermC => Some(Field::C),
            Family::HermH => Some(Field::H),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::SpinFactor => write!(f, "SpinFactor"),
            Family::SymR => write!(f, "SymR"),
            Family::HermC => write!(f, "HermC"),
            Family::HermH => write!(f, "HermH"),
            Family::DirectSum(inner) => write!(f, "DirectSum({inner})"),
        }
    }
}

/// Internal representation of the basis.
#[derive(Debug)]
pub(crate) enum Rep {
    /// Hermitian matrices over `field`, side length `m`.
    Matrix { field: Field, m: usize, basis: Vec<QMatrix> },
    /// Spin factor of dimension d.
    Spin { d: usize },
    /// V + V.
    Sum { inner: Algebra },
}

#[derive(Debug)]
pub struct AlgebraData {
    family: Family,
    size: usize,
    rank: usize,
    dim: usize,
    pub(crate) rep: Rep,
    /// Matrices M_a with L(x) = sum_a x_a M_a.
    l_basis: Vec<DMatrix<f64>>,
    trace_form: DMatrix<f64>,
    trace_form_inv: DMatrix<f64>,
}

/// Shared handle to an algebra descriptor. Cloning is cheap.
#[derive(Clone)]
pub struct Algebra(pub(crate) Arc<AlgebraData>);

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({}, {})", self.0.family, self.0.size)
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.0.family == other.0.family && self.0.size == other.0.size
    }
}

impl Algebra {
    /// Construct an algebra descriptor.
    ///
    /// `size` is the rank for matrix families, the vector-space dimension
    /// for the spin factor and the inner size for direct sums.
    pub fn new(family: Family, size: usize) -> Result<Algebra> {
        if size == 0 {
            return Err(Error::InvalidSize { family: family.to_string(), size });
        }
        let rep = match &family {
            Family::SpinFactor => {
                // simplicity needs d >= 3; d = 2 is permitted and non-simple
                if size < 2 {
                    return Err(Error::InvalidSize { family: family.to_string(), size });
                }
                Rep::Spin { d: size }
            }
            Family::SymR | Family::HermC | Family::HermH => {
                let field = family.matrix_field().unwrap();
                Rep::Matrix { field, m: size, basis: hermitian_basis(field, size) }
            }
            Family::DirectSum(inner) => {
                if matches!(**inner, Family::DirectSum(_)) {
                    return Err(Error::UnsupportedFamily("nested DirectSum".into()));
                }
                Rep::Sum { inner: Algebra::new((**inner).clone(), size)? }
            }
        };
        let (rank, dim) = match &rep {
            Rep::Spin { d } => (2, *d),
            Rep::Matrix { field, m, basis } => {
                let expect = match field {
                    Field::R => m * (m + 1) / 2,
                    Field::C => m * m,
                    Field::H => m * (2 * m - 1),
                };
                debug_assert_eq!(basis.len(), expect);
                (*m, basis.len())
            }
            Rep::Sum { inner } => (2 * inner.rank(), 2 * inner.dim()),
        };

        // products of basis pairs give the trace form and the L-operators
        let mut data = AlgebraData {
            family,
            size,
            rank,
            dim,
            rep,
            l_basis: Vec::new(),
            trace_form: DMatrix::zeros(dim, dim),
            trace_form_inv: DMatrix::zeros(dim, dim),
        };
        data.trace_form = DMatrix::from_fn(dim, dim, |a, b| data.basis_trace_pair(a, b));
        data.trace_form_inv = data
            .trace_form
            .clone()
            .cholesky()
            .ok_or_else(|| Error::NumericalFailure("trace form not positive definite".into()))?
            .inverse();
        let mut l_basis = Vec::with_capacity(dim);
        for a in 0..dim {
            let mut ma = DMatrix::zeros(dim, dim);
            let ea = unit_vec(dim, a);
            for b in 0..dim {
                let prod = data.native_product(&ea, &unit_vec(dim, b));
                ma.set_column(b, &prod);
            }
            l_basis.push(ma);
        }
        data.l_basis = l_basis;
        Ok(Algebra(Arc::new(data)))
    }

    pub fn direct_sum(inner: &Algebra) -> Result<Algebra> {
        Algebra::new(Family::DirectSum(Box::new(inner.family().clone())), inner.size())
    }

    pub fn family(&self) -> &Family {
        &self.0.family
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn rank(&self) -> usize {
        self.0.rank
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn is_simple(&self) -> bool {
        match &self.0.rep {
            Rep::Spin { d } => *d >= 3,
            Rep::Matrix { .. } => true,
            Rep::Sum { .. } => false,
        }
    }

    pub fn trace_form(&self) -> &DMatrix<f64> {
        &self.0.trace_form
    }

    pub fn inner(&self) -> Option<&Algebra> {
        match &self.0.rep {
            Rep::Sum { inner } => Some(inner),
            _ => None,
        }
    }

    pub fn zero(&self) -> Element {
        Element { algebra: self.clone(), coords: DVector::zeros(self.dim()) }
    }

    /// The Jordan unit e.
    pub fn unit(&self) -> Element {
        let mut coords = DVector::zeros(self.dim());
        match &self.0.rep {
            Rep::Spin { .. } => coords[0] = 1.0,
            Rep::Matrix { m, .. } => {
                for i in 0..*m {
                    coords[i] = 1.0;
                }
            }
            Rep::Sum { inner } => {
                let u = inner.unit();
                let n = inner.dim();
                coords.rows_mut(0, n).copy_from(&u.coords);
                coords.rows_mut(n, n).copy_from(&u.coords);
            }
        }
        Element { algebra: self.clone(), coords }
    }

    pub fn element(&self, coords: DVector<f64>) -> Result<Element> {
        if coords.len() != self.dim() {
            return Err(Error::SizeMismatch { expected: self.dim(), got: coords.len() });
        }
        Ok(Element { algebra: self.clone(), coords })
    }

    pub fn element_from(&self, coords: &[f64]) -> Result<Element> {
        self.element(DVector::from_column_slice(coords))
    }

    pub fn basis_element(&self, k: usize) -> Element {
        assert!(k < self.dim());
        Element { algebra: self.clone(), coords: unit_vec(self.dim(), k) }
    }

    /// The standard Jordan frame c_1, ..., c_r.
    ///
    /// Matrix families use the diagonal matrix units; the spin factor uses
    /// the halved lightlike vectors (e0 +- e1)/2, which are the idempotent
    /// normalisation.
    pub fn standard_frame(&self) -> Vec<Element> {
        match &self.0.rep {
            Rep::Spin { d } => {
                let mut c1 = DVector::zeros(*d);
                let mut c2 = DVector::zeros(*d);
                c1[0] = 0.5;
                c1[1] = 0.5;
                c2[0] = 0.5;
                c2[1] = -0.5;
                vec![
                    Element { algebra: self.clone(), coords: c1 },
                    Element { algebra: self.clone(), coords: c2 },
                ]
            }
            Rep::Matrix { m, .. } => (0..*m).map(|i| self.basis_element(i)).collect(),
            Rep::Sum { inner } => {
                let n = inner.dim();
                let mut out = Vec::new();
                for c in inner.standard_frame() {
                    let mut coords = DVector::zeros(self.dim());
                    coords.rows_mut(0, n).copy_from(&c.coords);
                    out.push(Element { algebra: self.clone(), coords });
                }
                for c in inner.standard_frame() {
                    let mut coords = DVector::zeros(self.dim());
                    coords.rows_mut(n, n).copy_from(&c.coords);
                    out.push(Element { algebra: self.clone(), coords });
                }
                out
            }
        }
    }

    /// c^j = c_1 + ... + c_{r-j} - c_{r-j+1} - ... - c_r, the standard
    /// representative of signature (r-j, j).
    pub fn signature_rep(&self, j: usize) -> Result<Element> {
        let r = self.rank();
        if j > r {
            return Err(Error::IndexOutOfRange { index: j, max: r });
        }
        let frame = self.standard_frame();
        let mut out = self.zero();
        for (i, c) in frame.iter().enumerate() {
            let sign = if i < r - j { 1.0 } else { -1.0 };
            out.coords += sign * &c.coords;
        }
        Ok(out)
    }

    /// Coordinates of a native hermitian matrix (matrix families only).
    pub(crate) fn coords_of_native(&self, x: &QMatrix) -> DVector<f64> {
        let Rep::Matrix { basis, .. } = &self.0.rep else {
            panic!("coords_of_native on non-matrix family")
        };
        let t = DVector::from_iterator(
            self.dim(),
            basis.iter().map(|e| x.matmul(e).re_trace()),
        );
        &self.0.trace_form_inv * t
    }

    /// Native matrix of an element (matrix families only).
    pub(crate) fn native_of(&self, x: &DVector<f64>) -> QMatrix {
        let Rep::Matrix { field, m, basis } = &self.0.rep else {
            panic!("native_of on non-matrix family")
        };
        let mut out = QMatrix::zeros(*field, *m, *m);
        for (a, e) in basis.iter().enumerate() {
            if x[a] != 0.0 {
                out = out.add(&e.scale(x[a]));
            }
        }
        out
    }

    /// Sample with i.i.d. standard normal coordinates.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Element {
        let coords =
            DVector::from_iterator(self.dim(), (0..self.dim()).map(|_| {
                let v: f64 = StandardNormal.sample(rng);
                v
            }));
        Element { algebra: self.clone(), coords }
    }

    /// Random Jordan frame: the frame of a generic element.
    pub fn random_frame<R: Rng>(&self, rng: &mut R) -> Vec<Element> {
        let x = self.random_element(rng);
        x.spectral().expect("spectral decomposition").frame
    }

    /// Random element of the open cone, with eigenvalues in [lo, hi].
    pub fn random_cone_element<R: Rng>(&self, rng: &mut R, lo: f64, hi: f64) -> Element {
        let frame = self.random_frame(rng);
        let mut out = self.zero();
        for c in &frame {
            let l = rng.random_range(lo..hi);
            out.coords += l * &c.coords;
        }
        out
    }

    /// Random element of the open unit ball (spectral norm < `radius`).
    pub fn random_ball_element<R: Rng>(&self, rng: &mut R, radius: f64) -> Element {
        let frame = self.random_frame(rng);
        let mut out = self.zero();
        for c in &frame {
            let l = rng.random_range(-radius..radius);
            out.coords += l * &c.coords;
        }
        out
    }

    /// Random invertible element of signature (r-j, j), eigenvalue
    /// magnitudes in [lo, hi].
    pub fn random_signature_element<R: Rng>(
        &self,
        rng: &mut R,
        j: usize,
        lo: f64,
        hi: f64,
    ) -> Element {
        let frame = self.random_frame(rng);
        let r = self.rank();
        assert!(j <= r);
        let mut out = self.zero();
        for (i, c) in frame.iter().enumerate() {
            let mag = rng.random_range(lo..hi);
            let sign = if i < r - j { 1.0 } else { -1.0 };
            out.coords += sign * mag * &c.coords;
        }
        out
    }
}

impl AlgebraData {
    fn basis_trace_pair(&self, a: usize, b: usize) -> f64 {
        match &self.rep {
            Rep::Spin { d } => {
                // tr((x0,x)(y0,y)) = 2 (x0 y0 + <x,y>)
                if a == b {
                    2.0
                } else {
                    let _ = d;
                    0.0
                }
            }
            Rep::Matrix { basis, .. } => basis[a].matmul(&basis[b]).re_trace(),
            Rep::Sum { inner } => {
                let n = inner.dim();
                if (a < n) == (b < n) {
                    inner.0.trace_form[(a % n, b % n)]
                } else {
                    0.0
                }
            }
        }
    }

    pub(crate) fn native_product(&self, a: &DVector<f64>, b: &DVector<f64>) -> DVector<f64> {
        match &self.rep {
            Rep::Matrix { field, m, basis } => {
                let mut qa = QMatrix::zeros(*field, *m, *m);
                let mut qb = QMatrix::zeros(*field, *m, *m);
                for (k, e) in basis.iter().enumerate() {
                    if a[k] != 0.0 {
                        qa = qa.add(&e.scale(a[k]));
                    }
                    if b[k] != 0.0 {
                        qb = qb.add(&e.scale(b[k]));
                    }
                }
                let prod = qa.jordan(&qb);
                let t = DVector::from_iterator(
                    basis.len(),
                    basis.iter().map(|e| prod.matmul(e).re_trace()),
                );
                &self.trace_form_inv * t
            }
            Rep::Spin { d } => {
                let mut out = DVector::zeros(*d);
                let mut s = 0.0;
                for k in 0..*d {
                    s += a[k] * b[k];
                }
                out[0] = s;
                for k in 1..*d {
                    out[k] = a[0] * b[k] + b[0] * a[k];
                }
                out
            }
            Rep::Sum { inner } => {
                let n = inner.dim();
                let pa = DVector::from(a.rows(0, n).clone_owned());
                let pb = DVector::from(b.rows(0, n).clone_owned());
                let qa = DVector::from(a.rows(n, n).clone_owned());
                let qb = DVector::from(b.rows(n, n).clone_owned());
                let top = inner.0.native_product(&pa, &pb);
                let bot = inner.0.native_product(&qa, &qb);
                let mut out = DVector::zeros(2 * n);
                out.rows_mut(0, n).copy_from(&top);
                out.rows_mut(n, n).copy_from(&bot);
                out
            }
        }
    }
}

/// An element of a euclidean Jordan algebra: a coordinate vector over
/// the algebra's fixed basis.
#[derive(Clone, PartialEq)]
pub struct Element {
    pub algebra: Algebra,
    pub coords: DVector<f64>,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({:?}, {:?})", self.algebra, self.coords.as_slice())
    }
}

impl Element {
    pub fn same_algebra(&self, other: &Element) -> Result<()> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Jordan product x * y.
    pub fn product(&self, other: &Element) -> Result<Element> {
        self.same_algebra(other)?;
        Ok(Element {
            algebra: self.algebra.clone(),
            coords: self.l_operator() * &other.coords,
        })
    }

    /// Matrix of y -> x * y in the fixed basis.
    pub fn l_operator(&self) -> DMatrix<f64> {
        let n = self.algebra.dim();
        let mut l = DMatrix::zeros(n, n);
        for (a, ma) in self.algebra.0.l_basis.iter().enumerate() {
            if self.coords[a] != 0.0 {
                l += self.coords[a] * ma;
            }
        }
        l
    }

    /// Quadratic representation P(x) = 2 L(x)^2 - L(x^2).
    pub fn p_operator(&self) -> DMatrix<f64> {
        let l = self.l_operator();
        let sq = Element { algebra: self.algebra.clone(), coords: &l * &self.coords };
        2.0 * &l * &l - sq.l_operator()
    }

    pub fn square(&self) -> Element {
        self.product(self).unwrap()
    }

    pub fn scale(&self, s: f64) -> Element {
        Element { algebra: self.algebra.clone(), coords: s * &self.coords }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.same_algebra(other)?;
        Ok(Element { algebra: self.algebra.clone(), coords: &self.coords + &other.coords })
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.same_algebra(other)?;
        Ok(Element { algebra: self.algebra.clone(), coords: &self.coords - &other.coords })
    }

    /// Euclidean norm of the coordinate vector.
    pub fn coord_norm(&self) -> f64 {
        self.coords.norm()
    }

    /// Jordan trace (sum of spectral eigenvalues), linear in x.
    pub fn jordan_trace(&self) -> f64 {
        match &self.algebra.0.rep {
            Rep::Spin { .. } => 2.0 * self.coords[0],
            Rep::Matrix { m, .. } => (0..*m).map(|i| self.coords[i]).sum(),
            Rep::Sum { inner } => {
                let n = inner.dim();
                let top = Element {
                    algebra: inner.clone(),
                    coords: DVector::from(self.coords.rows(0, n).clone_owned()),
                };
                let bot = Element {
                    algebra: inner.clone(),
                    coords: DVector::from(self.coords.rows(n, n).clone_owned()),
                };
                top.jordan_trace() + bot.jordan_trace()
            }
        }
    }

    /// trace form <x, y> = tr(x * y).
    pub fn trace_pairing(&self, other: &Element) -> Result<f64> {
        self.same_algebra(other)?;
        Ok((self.coords.transpose() * self.algebra.trace_form() * &other.coords)[(0, 0)])
    }

    /// Membership of x in the double cone D_{a,b} = (a - V+) cap (b + V+).
    pub fn in_double_cone(&self, a: &Element, b: &Element) -> Result<bool> {
        self.same_algebra(a)?;
        self.same_algebra(b)?;
        Ok(a.sub(self)?.in_open_cone() && self.sub(b)?.in_open_cone())
    }

    /// Check |x - y| in coordinates.
    pub fn approx_eq(&self, other: &Element, tol: f64) -> bool {
        self.algebra == other.algebra && (&self.coords - &other.coords).norm() <= tol
    }
}

/// Serialization form: {algebra: {family, size}, coords: [f64]}.
#[derive(Serialize, Deserialize)]
struct ElementWire {
    algebra: AlgebraWire,
    coords: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct AlgebraWire {
    family: Family,
    size: usize,
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementWire {
            algebra: AlgebraWire {
                family: self.algebra.family().clone(),
                size: self.algebra.size(),
            },
            coords: self.coords.iter().copied().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Element, D::Error> {
        let wire = ElementWire::deserialize(d)?;
        let alg = Algebra::new(wire.algebra.family, wire.algebra.size)
            .map_err(serde::de::Error::custom)?;
        alg.element_from(&wire.coords).map_err(serde::de::Error::custom)
    }
}

/// Orthonormal-ish hermitian basis of Herm_m(field): diagonal matrix units
/// first (these are the standard Jordan frame), then the off-diagonal
/// hermitian pairs u E_ij + conj(u) E_ji for each field unit u.
pub(crate) fn hermitian_basis(field: Field, m: usize) -> Vec<QMatrix> {
    let mut out = Vec::new();
    for i in 0..m {
        let mut e = QMatrix::zeros(field, m, m);
        e[(i, i)] = Quat::ONE;
        out.push(e);
    }
    let units: &[Quat] = match field {
        Field::R => &[Quat::ONE],
        Field::C => &[Quat::ONE, Quat::I],
        Field::H => &[Quat::ONE, Quat::I, Quat::J, Quat::K],
    };
    for i in 0..m {
        for j in (i + 1)..m {
            for &u in units {
                let mut e = QMatrix::zeros(field, m, m);
                e[(i, j)] = u;
                e[(j, i)] = u.conj();
                out.push(e);
            }
        }
    }
    out
}

fn unit_vec(n: usize, k: usize) -> DVector<f64> {
    let mut v = DVector::zeros(n);
    v[k] = 1.0;
    v
}

/// Structural self-checks used by tests: the trace form is symmetric
/// positive definite and the unit acts as identity.
pub fn validate_algebra(alg: &Algebra) -> Result<()> {
    let g = alg.trace_form();
    if (g - g.transpose()).abs().max() > tol::algebra() {
        return Err(Error::NumericalFailure("trace form asymmetric".into()));
    }
    if g.clone().cholesky().is_none() {
        return Err(Error::NumericalFailure("trace form not positive definite".into()));
    }
    let e = alg.unit();
    let l = e.l_operator();
    if (l - DMatrix::identity(alg.dim(), alg.dim())).abs().max() > tol::algebra() {
        return Err(Error::NumericalFailure("unit is not an identity".into()));
    }
    linalg::rank(g, 1e-12); // touch helper to keep rank in one place
    Ok(())
}
