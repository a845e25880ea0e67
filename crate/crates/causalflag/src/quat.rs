//! Scalars over R, C and H with their real and complex matrix models.
//!
//! All three base fields are handled through one scalar type: a quaternion
//! `w + xi + yj + zk` with the unused components pinned to zero for R and C.
//! A matrix over the field is realified entrywise by the left-multiplication
//! representation, under which the conjugate transpose becomes the plain real
//! transpose. The complex model (used only by the hermitian eigensolvers)
//! embeds a quaternion as a 2x2 complex block.

use nalgebra::{Complex, DMatrix};
use std::ops::{Add, Mul, Neg, Sub};

pub type C64 = Complex<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Field {
    R,
    C,
    H,
}

impl Field {
    /// Real dimension of the field.
    pub fn dim(self) -> usize {
        match self {
            Field::R => 1,
            Field::C => 2,
            Field::H => 4,
        }
    }

    /// Size multiplier of the complex model (1 for R and C, 2 for H).
    pub fn complex_blow(self) -> usize {
        match self {
            Field::R | Field::C => 1,
            Field::H => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Field::R => "R",
            Field::C => "C",
            Field::H => "H",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quat {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quat {
    pub const ZERO: Quat = Quat { w: 0.0, x: 0.0, y: 0.0, z: 0.0 };
    pub const ONE: Quat = Quat { w: 1.0, x: 0.0, y: 0.0, z: 0.0 };
    pub const I: Quat = Quat { w: 0.0, x: 1.0, y: 0.0, z: 0.0 };
    pub const J: Quat = Quat { w: 0.0, x: 0.0, y: 1.0, z: 0.0 };
    pub const K: Quat = Quat { w: 0.0, x: 0.0, y: 0.0, z: 1.0 };

    pub fn real(w: f64) -> Quat {
        Quat { w, x: 0.0, y: 0.0, z: 0.0 }
    }

    pub fn complex(w: f64, x: f64) -> Quat {
        Quat { w, x, y: 0.0, z: 0.0 }
    }

    pub fn conj(self) -> Quat {
        Quat { w: self.w, x: -self.x, y: -self.y, z: -self.z }
    }

    pub fn scale(self, s: f64) -> Quat {
        Quat { w: s * self.w, x: s * self.x, y: s * self.y, z: s * self.z }
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Left-multiplication matrix on the basis (1, i, j, k), truncated to
    /// the real dimension of `field`.
    pub fn real_block(self, field: Field) -> DMatrix<f64> {
        let q = self;
        match field {
            Field::R => DMatrix::from_row_slice(1, 1, &[q.w]),
            Field::C => DMatrix::from_row_slice(2, 2, &[q.w, -q.x, q.x, q.w]),
            Field::H => DMatrix::from_row_slice(
                4,
                4,
                &[
                    q.w, -q.x, -q.y, -q.z, //
                    q.x, q.w, -q.z, q.y, //
                    q.y, q.z, q.w, -q.x, //
                    q.z, -q.y, q.x, q.w,
                ],
            ),
        }
    }

    /// Right-multiplication matrix on the basis (1, i, j, k).
    pub fn right_block(self, field: Field) -> DMatrix<f64> {
        let q = self;
        match field {
            Field::R => DMatrix::from_row_slice(1, 1, &[q.w]),
            Field::C => DMatrix::from_row_slice(2, 2, &[q.w, -q.x, q.x, q.w]),
            Field::H => DMatrix::from_row_slice(
                4,
                4,
                &[
                    q.w, -q.x, -q.y, -q.z, //
                    q.x, q.w, q.z, -q.y, //
                    q.y, -q.z, q.w, q.x, //
                    q.z, q.y, -q.x, q.w,
                ],
            ),
        }
    }
}

impl Add for Quat {
    type Output = Quat;
    fn add(self, o: Quat) -> Quat {
        Quat { w: self.w + o.w, x: self.x + o.x, y: self.y + o.y, z: self.z + o.z }
    }
}

impl Sub for Quat {
    type Output = Quat;
    fn sub(self, o: Quat) -> Quat {
        Quat { w: self.w - o.w, x: self.x - o.x, y: self.y - o.y, z: self.z - o.z }
    }
}

impl Neg for Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        Quat { w: -self.w, x: -self.x, y: -self.y, z: -self.z }
    }
}

impl Mul for Quat {
    type Output = Quat;
    fn mul(self, o: Quat) -> Quat {
        let (a, b, c, d) = (self.w, self.x, self.y, self.z);
        let (e, f, g, h) = (o.w, o.x, o.y, o.z);
        Quat {
            w: a * e - b * f - c * g - d * h,
            x: a * f + b * e + c * h - d * g,
            y: a * g - b * h + c * e + d * f,
            z: a * h + b * g - c * f + d * e,
        }
    }
}

/// Dense matrix over R, C or H, stored row-major as quaternions.
#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Quat>,
}

impl QMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> QMatrix {
        QMatrix { field, rows, cols, data: vec![Quat::ZERO; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> QMatrix {
        let mut m = QMatrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = Quat::ONE;
        }
        m
    }

    /// Scalar matrix q * 1_n.
    pub fn scalar(field: Field, n: usize, q: Quat) -> QMatrix {
        let mut m = QMatrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = q;
        }
        m
    }

    pub fn matmul(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = QMatrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut s = Quat::ZERO;
                for k in 0..self.cols {
                    s = s + self[(i, k)] * rhs[(k, j)];
                }
                out[(i, j)] = s;
            }
        }
        out
    }

    pub fn add(&self, rhs: &QMatrix) -> QMatrix {
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a = *a + *b;
        }
        out
    }

    pub fn scale(&self, s: f64) -> QMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.scale(s);
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> QMatrix {
        let mut out = QMatrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Symmetrised product (A B + B A) / 2.
    pub fn jordan(&self, rhs: &QMatrix) -> QMatrix {
        self.matmul(rhs).add(&rhs.matmul(self)).scale(0.5)
    }

    /// Real part of the trace; equals the Jordan trace for hermitian
    /// matrices over any of the three fields.
    pub fn re_trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].w).sum()
    }

    /// Entrywise realification by left-multiplication blocks.
    pub fn realify(&self) -> DMatrix<f64> {
        let d = self.field.dim();
        let mut out = DMatrix::zeros(self.rows * d, self.cols * d);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let blk = self[(i, j)].real_block(self.field);
                out.view_mut((i * d, j * d), (d, d)).copy_from(&blk);
            }
        }
        out
    }

    /// Inverse of `realify` (residual-checked by the caller where needed):
    /// reads the first column of each block.
    pub fn from_real(field: Field, m: &DMatrix<f64>) -> QMatrix {
        let d = field.dim();
        assert!(m.nrows() % d == 0 && m.ncols() % d == 0);
        let rows = m.nrows() / d;
        let cols = m.ncols() / d;
        let mut out = QMatrix::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let q = Quat {
                    w: m[(i * d, j * d)],
                    x: if d > 1 { m[(i * d + 1, j * d)] } else { 0.0 },
                    y: if d > 2 { m[(i * d + 2, j * d)] } else { 0.0 },
                    z: if d > 3 { m[(i * d + 3, j * d)] } else { 0.0 },
                };
                out[(i, j)] = q;
            }
        }
        out
    }

    /// Complex model: identity on R and C entries, 2x2 blocks
    /// [[a, b], [-conj(b), conj(a)]] for quaternions a + b j.
    pub fn complexify(&self) -> DMatrix<C64> {
        let s = self.field.complex_blow();
        let mut out = DMatrix::zeros(self.rows * s, self.cols * s);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let q = self[(i, j)];
                match self.field {
                    Field::R | Field::C => {
                        out[(i, j)] = C64::new(q.w, q.x);
                    }
                    Field::H => {
                        let a = C64::new(q.w, q.x);
                        let b = C64::new(q.y, q.z);
                        out[(2 * i, 2 * j)] = a;
                        out[(2 * i, 2 * j + 1)] = b;
                        out[(2 * i + 1, 2 * j)] = -b.conj();
                        out[(2 * i + 1, 2 * j + 1)] = a.conj();
                    }
                }
            }
        }
        out
    }

    /// Maximal deviation of `realify(self)` from a given real matrix.
    pub fn real_residual(&self, m: &DMatrix<f64>) -> f64 {
        (self.realify() - m).abs().max()
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Quat;
    fn index(&self, (i, j): (usize, usize)) -> &Quat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quat {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternion_units_multiply() {
        assert_eq!(Quat::I * Quat::J, Quat::K);
        assert_eq!(Quat::J * Quat::K, Quat::I);
        assert_eq!(Quat::K * Quat::I, Quat::J);
        assert_eq!(Quat::J * Quat::I, -Quat::K);
        assert_eq!(Quat::I * Quat::I, -Quat::ONE);
    }

    #[test]
    fn realify_is_multiplicative_and_adjoint_is_transpose() {
        for field in [Field::R, Field::C, Field::H] {
            let mut a = QMatrix::zeros(field, 2, 2);
            let mut b = QMatrix::zeros(field, 2, 2);
            let vals = [0.3, -1.2, 0.7, 2.0, -0.5, 0.9, 1.1, -0.4];
            for (k, q) in a.data.iter_mut().enumerate() {
                *q = match field {
                    Field::R => Quat::real(vals[k]),
                    Field::C => Quat::complex(vals[k], vals[7 - k]),
                    Field::H => Quat { w: vals[k], x: vals[7 - k], y: 0.5 * vals[k], z: -vals[k] },
                };
            }
            for (k, q) in b.data.iter_mut().enumerate() {
                *q = match field {
                    Field::R => Quat::real(vals[7 - k]),
                    Field::C => Quat::complex(vals[7 - k], 0.25),
                    Field::H => Quat { w: vals[7 - k], x: 0.1, y: vals[k], z: 0.2 },
                };
            }
            let prod = a.matmul(&b).realify();
            let rprod = a.realify() * b.realify();
            assert!((prod - rprod).abs().max() < 1e-12);
            let adj = a.adjoint().realify();
            assert!((adj - a.realify().transpose()).abs().max() < 1e-12);
        }
    }

    #[test]
    fn complexify_respects_products_for_quaternions() {
        let mut a = QMatrix::zeros(Field::H, 2, 2);
        a[(0, 0)] = Quat { w: 1.0, x: 2.0, y: -1.0, z: 0.5 };
        a[(0, 1)] = Quat::J;
        a[(1, 0)] = Quat::K;
        a[(1, 1)] = Quat::complex(0.0, 1.0);
        let sq = a.matmul(&a).complexify();
        let csq = a.complexify() * a.complexify();
        assert!((sq - csq).map(|c| c.norm()).max() < 1e-12);
    }

    #[test]
    fn right_block_commutes_with_left_block() {
        let p = Quat { w: 0.3, x: -0.7, y: 1.1, z: 0.2 };
        let q = Quat { w: -1.0, x: 0.4, y: 0.9, z: -0.6 };
        let l = p.real_block(Field::H);
        let r = q.right_block(Field::H);
        assert!((l.clone() * r.clone() - r * l).abs().max() < 1e-12);
    }
}
