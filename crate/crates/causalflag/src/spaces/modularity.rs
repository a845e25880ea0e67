//! Modularity of the compactly causal spaces M^{(alpha)}: does the
//! h-part of the fixed algebra contain an Euler element of g?
//!
//! The search is a finite lattice enumeration. Every hyperbolic element
//! of h^{(alpha)} is conjugate, under inner automorphisms of the fixed
//! algebra, into a fixed maximal abelian subspace a of
//! h^{(alpha)} cap p (standard Cartan-subspace conjugacy, not reproved
//! here). On a, the ad_g-eigenvalues are given by finitely many weights;
//! an Euler element evaluates every weight in {-1, 0, 1}, so candidates
//! are cut out by assigning those values to a basis of weights and
//! solving the resulting linear systems. The enumeration is exhaustive
//! over that finite candidate lattice.

use super::{fixed::theta_coords_matrix, InvolutionSpec};
use crate::error::{Error, Result};
use crate::lie::LieMatrix;
use crate::linalg;
use crate::tol;
use nalgebra::{DMatrix, DVector};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct ModularityReport {
    pub modular: bool,
    /// Model coordinates of an Euler element of g inside h^{(alpha)}.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_coords: Option<Vec<f64>>,
    /// Search method tag (the verdict is a semi-decision of this kind).
    pub method: &'static str,
}

impl ModularityReport {
    pub fn witness(&self, spec: &InvolutionSpec) -> Option<LieMatrix> {
        let coords = self.witness_coords.as_ref()?;
        let c = DVector::from_column_slice(coords);
        let model = spec.model();
        Some(model.matrix(model.from_coords(&c)).unwrap())
    }
}

/// Decide whether h^{(alpha)} contains an Euler element of g.
pub fn modularity_check(spec: &InvolutionSpec) -> Result<ModularityReport> {
    let model = spec.model().clone();
    let n = model.dim();
    let id = DMatrix::identity(n, n);

    // h^{(alpha)} cap p in coordinates: fixed by theta_alpha and tau_h,
    // anti-fixed by the Cartan involution
    let t_alpha = theta_coords_matrix(spec, 1)?;
    let mut tau = DMatrix::zeros(n, n);
    let mut theta = DMatrix::zeros(n, n);
    for (k, b) in model.basis().enumerate() {
        tau.set_column(k, &model.coords(&model.tau_h(&b.mat))?);
        theta.set_column(k, &model.coords(&model.cartan_theta(&b.mat))?);
    }
    let mut stack = DMatrix::zeros(3 * n, n);
    stack.view_mut((0, 0), (n, n)).copy_from(&(&t_alpha - &id));
    stack.view_mut((n, 0), (n, n)).copy_from(&(&tau - &id));
    stack.view_mut((2 * n, 0), (n, n)).copy_from(&(&theta + &id));
    let hp = linalg::nullspace(&stack, 1e-8);
    if hp.ncols() == 0 {
        return Ok(not_modular());
    }

    // maximal abelian subspace of h^{(alpha)} cap p, grown greedily;
    // all such subspaces are conjugate under the fixed group
    let basis_mats: Vec<DMatrix<f64>> = (0..hp.ncols())
        .map(|k| model.from_coords(&DVector::from(hp.column(k).clone_owned())))
        .collect();
    let a_basis = maximal_abelian(&basis_mats);
    let m = a_basis.len();
    if m == 0 {
        return Ok(not_modular());
    }

    // weights of a on g: joint eigenvectors of the commuting symmetric
    // family ad(a_k), read from a generic combination
    let gram = basis_gram(&model);
    let chol = gram.clone().cholesky().ok_or_else(|| {
        Error::NumericalFailure("model basis Gram matrix is singular".into())
    })?;
    let l = chol.l();
    let linv = l
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::NumericalFailure("Gram Cholesky inversion failed".into()))?;
    // S_k = L^T M_k L^{-T} are symmetric since a_k is in p
    let sym_ads: Vec<DMatrix<f64>> = a_basis
        .iter()
        .map(|a| {
            let ad = model.ad_matrix(a)?;
            Ok(l.transpose() * ad * linv.transpose())
        })
        .collect::<Result<_>>()?;
    let mut generic = DMatrix::zeros(n, n);
    for (k, s) in sym_ads.iter().enumerate() {
        // fixed irrational-ish mixing weights keep distinct weights apart
        generic += (1.0 + 0.318_309 * (k as f64 + 1.0).sqrt()) * s;
    }
    generic = 0.5 * (&generic + generic.transpose());
    let (_vals, vecs) = linalg::sym_eigen_desc(&generic);
    // weight vectors lambda_i in a*, one per eigenvector
    let mut weights: Vec<DVector<f64>> = Vec::new();
    for i in 0..n {
        let v = vecs.column(i).clone_owned();
        let mut w = DVector::zeros(m);
        for (k, s) in sym_ads.iter().enumerate() {
            let sv = s * &v;
            let lam = v.dot(&sv);
            if (sv - lam * &v).norm() > 1e-6 * (1.0 + lam.abs()) {
                return Err(Error::NumericalFailure(
                    "joint diagonalisation failed; weights not separated".into(),
                ));
            }
            w[k] = lam;
        }
        if !weights.iter().any(|u| (u - &w).norm() <= tol::CLUSTER * 10.0) {
            weights.push(w);
        }
    }

    // pick m linearly independent weights as coordinates on a
    let mut wm = DMatrix::zeros(weights.len(), m);
    for (i, w) in weights.iter().enumerate() {
        wm.row_mut(i).copy_from(&w.transpose());
    }
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..weights.len() {
        let mut trial: Vec<usize> = chosen.clone();
        trial.push(i);
        let sub = DMatrix::from_fn(trial.len(), m, |a, b| wm[(trial[a], b)]);
        if linalg::rank(&sub, 1e-8) == trial.len() {
            chosen = trial;
            if chosen.len() == m {
                break;
            }
        }
    }
    if chosen.len() < m {
        // weights do not span a*: some direction acts trivially; no
        // nonzero Euler candidates along it can be pinned, but any Euler
        // element must still evaluate spanned weights in {-1,0,1}. A
        // trivial direction means ad has a kernel on a, which cannot
        // happen in a semisimple g unless a = 0.
        return Ok(not_modular());
    }
    let wsel = DMatrix::from_fn(m, m, |a, b| wm[(chosen[a], b)]);
    let wsel_inv = wsel
        .try_inverse()
        .ok_or_else(|| Error::NumericalFailure("weight basis inversion failed".into()))?;

    // enumerate assignments of {-1,0,1} to the chosen weights
    let total = 3usize.pow(m as u32);
    for code in 0..total {
        let mut target = DVector::zeros(m);
        let mut c = code;
        for k in 0..m {
            target[k] = (c % 3) as f64 - 1.0;
            c /= 3;
        }
        if target.iter().all(|v| *v == 0.0) {
            continue;
        }
        let coeffs = &wsel_inv * &target;
        // candidate x = sum coeffs_k a_k; verify all weights hit {-1,0,1}
        let ok = weights.iter().all(|w| {
            let val = w.dot(&coeffs);
            let frac = (val + 1.0).abs().min(val.abs()).min((val - 1.0).abs());
            frac < 1e-6
        });
        if !ok {
            continue;
        }
        let mut x = DMatrix::zeros(model.size(), model.size());
        for (k, a) in a_basis.iter().enumerate() {
            x += coeffs[k] * a;
        }
        // final verification: Euler in g, fixed by theta_alpha and tau_h
        if verify_witness(spec, &x)? {
            let coords = model.coords(&x)?;
            return Ok(ModularityReport {
                modular: true,
                witness_coords: Some(coords.iter().copied().collect()),
                method: "lattice-enumeration",
            });
        }
    }
    Ok(not_modular())
}

fn not_modular() -> ModularityReport {
    ModularityReport { modular: false, witness_coords: None, method: "lattice-enumeration" }
}

/// Greedy maximal abelian subspace: restrict to the joint centraliser at
/// each step.
fn maximal_abelian(space: &[DMatrix<f64>]) -> Vec<DMatrix<f64>> {
    let mut picked: Vec<DMatrix<f64>> = Vec::new();
    let mut current: Vec<DMatrix<f64>> = space.to_vec();
    while let Some(first) = current.first().cloned() {
        picked.push(first.clone());
        // centraliser of `first` within the remaining space
        let k = current.len();
        let s2 = first.nrows() * first.ncols();
        let mut cons = DMatrix::zeros(s2, k);
        for (i, b) in current.iter().enumerate() {
            let br = &first * b - b * &first;
            cons.set_column(i, &linalg::vectorize(&br));
        }
        let ns = linalg::nullspace(&cons, 1e-8);
        let mut next: Vec<DMatrix<f64>> = Vec::new();
        for c in 0..ns.ncols() {
            let mut mat = DMatrix::zeros(first.nrows(), first.ncols());
            for (i, b) in current.iter().enumerate() {
                mat += ns[(i, c)] * b;
            }
            // drop the direction of `first` itself
            let overlap = linalg::vectorize(&mat).dot(&linalg::vectorize(&first))
                / linalg::vectorize(&first).norm_squared();
            mat -= overlap * &first;
            if mat.abs().max() > 1e-8 {
                next.push(mat);
            }
        }
        // re-orthogonalise to keep the set independent
        let mut ortho: Vec<DMatrix<f64>> = Vec::new();
        for mut mat in next {
            for o in &ortho {
                let ov = linalg::vectorize(o);
                let overlap = linalg::vectorize(&mat).dot(&ov) / ov.norm_squared();
                mat -= overlap * o;
            }
            if mat.abs().max() > 1e-7 {
                ortho.push(mat);
            }
        }
        current = ortho;
    }
    picked
}

fn basis_gram(model: &crate::lie::LieModel) -> DMatrix<f64> {
    let n = model.dim();
    let vecs: Vec<DVector<f64>> = model.basis().map(|b| linalg::vectorize(&b.mat)).collect();
    DMatrix::from_fn(n, n, |i, j| vecs[i].dot(&vecs[j]))
}

/// The witness needs ad-spectrum {-1,0,1} in g (it is automatically
/// semisimple as a p-element), invariance under theta_alpha and tau_h,
/// and a nonzero adjoint.
fn verify_witness(spec: &InvolutionSpec, x: &DMatrix<f64>) -> Result<bool> {
    let model = spec.model();
    if (spec.theta_alpha(x) - x).abs().max() > 1e-6 {
        return Ok(false);
    }
    if (model.tau_h(x) - x).abs().max() > 1e-6 {
        return Ok(false);
    }
    let ad = model.ad_matrix(x)?;
    let eig = linalg::complex_eigenvalues(&ad);
    let mut nonzero = false;
    for l in eig {
        if l.im.abs() > 1e-6 {
            return Ok(false);
        }
        let near = (l.re + 1.0).abs().min(l.re.abs()).min((l.re - 1.0).abs());
        if near > 1e-6 {
            return Ok(false);
        }
        if l.re.abs() > 0.5 {
            nonzero = true;
        }
    }
    Ok(nonzero)
}
