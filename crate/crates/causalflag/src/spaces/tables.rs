//! Embedded expected values for the classification tables: dimensions of
//! the fixed algebras g^{(+-alpha)}, their tau_h-split, the fixed
//! subalgebra V^alpha, and modularity of the compactly causal side.
//!
//! Dimensions are stated in the models used here, i.e. u(Omega, K^{2r})
//! including its one-dimensional center for K = C (the table rows of the
//! literature quotient that center away; entries here add it back
//! whenever it is fixed by theta_{+-alpha}, which happens exactly for the
//! Pierce and identity rows), and so_{2,d} for the spin factor.

use super::{catalog, cone_classification, fixed_algebra, make_involution, modularity_check};
use super::{InvolutionKind, InvolutionSpec};
use crate::error::Result;
use crate::jordan::{Algebra, Family};
use crate::lie::SpectrumClass;
use serde::Serialize;

pub const TABLE_VERSION: &str = "v1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpectedRow {
    pub family: String,
    pub size: usize,
    pub involution: String,
    /// dim g^{(alpha)} = dim g^{(-alpha)}.
    pub dim_fixed: usize,
    /// dim h^{(alpha)}, the tau_h-fixed part.
    pub h_dim: usize,
    /// dim V^alpha.
    pub v_fixed_dim: usize,
    /// Whether M^{(alpha)} carries a modular flow (an Euler element of g
    /// inside h^{(alpha)}).
    pub modular: bool,
}

fn sym_dim(m: usize) -> usize {
    m * (m + 1) / 2
}

fn so_dim(m: usize) -> usize {
    if m < 2 {
        0
    } else {
        m * (m - 1) / 2
    }
}

/// Expected row for one (algebra, kind) pair.
pub fn expected_row(algebra: &Algebra, kind: InvolutionKind) -> Option<ExpectedRow> {
    let r = algebra.rank();
    let n = algebra.dim();
    let row = |dim_fixed, h_dim, v_fixed_dim, modular| {
        Some(ExpectedRow {
            family: algebra.family().to_string(),
            size: algebra.size(),
            involution: kind.to_string(),
            dim_fixed,
            h_dim,
            v_fixed_dim,
            modular,
        })
    };
    match (algebra.family(), kind) {
        (Family::SymR, InvolutionKind::Identity) => {
            // g^(alpha) = u(r) inside sp_2r(R)
            row(r * r, so_dim(r), n, false)
        }
        (Family::SymR, InvolutionKind::Pierce(j)) if j >= 1 && j < r => {
            // u_{r-j,j}(C) / gl_r(R); h = o_{r-j,j}
            row(r * r, so_dim(r), sym_dim(r - j) + sym_dim(j), r == 2 * j)
        }
        (Family::SymR, InvolutionKind::NonSplitNS1) if r % 2 == 0 => {
            let s = r / 2;
            // sp_2s(R)^2 / sp_2s(C); h = sp_2s(R); V^alpha = Herm_s(C)
            row(2 * s * (2 * s + 1), s * (2 * s + 1), s * s, true)
        }
        (Family::HermC, InvolutionKind::Identity) => {
            // k(u(Omega, C^2r)) = u(r) + u(r)
            row(2 * r * r, r * r, n, false)
        }
        (Family::HermC, InvolutionKind::Pierce(j)) if j >= 1 && j < r => {
            // (u_{p,q} + u_{p,q})/R + center; h = u_{p,q}(C) in the u-model
            row(2 * r * r, r * r, (r - j) * (r - j) + j * j, r == 2 * j)
        }
        (Family::HermC, InvolutionKind::SplitS1) => {
            // so*(2r) / so_{r,r}(R); h = so_r(C)
            row(r * (2 * r - 1), r * (r - 1), sym_dim(r), r % 2 == 0)
        }
        (Family::HermC, InvolutionKind::NonSplitNS2) if r % 2 == 0 => {
            let s = r / 2;
            // sp_2r(R) / u_{s,s}(H); h = sp_s(C); V^alpha = Herm_s(H)
            row(r * (2 * r + 1), r * (r + 1), s * (2 * s - 1), true)
        }
        (Family::HermH, InvolutionKind::Identity) => {
            // k(so*(4r)) = u(2r)(C)
            row(4 * r * r, r * (2 * r + 1), n, false)
        }
        (Family::HermH, InvolutionKind::Pierce(j)) if j >= 1 && j < r => {
            // u_{2(r-j),2j}(C) / gl_r(H); h = sp(r-j, j)
            row(
                4 * r * r,
                r * (2 * r + 1),
                (r - j) * (2 * (r - j) - 1) + j * (2 * j - 1),
                r == 2 * j,
            )
        }
        (Family::HermH, InvolutionKind::SplitS2) => {
            // so*(2r)^2 / so_2r(C); h = so*(2r); V^alpha = Herm_r(C)
            row(2 * r * (2 * r - 1), r * (2 * r - 1), r * r, r % 2 == 0)
        }
        (Family::SpinFactor, InvolutionKind::Identity) => {
            let d = algebra.size();
            // so_2 + so_d
            row(1 + so_dim(d), so_dim(d - 1), d, false)
        }
        (Family::SpinFactor, InvolutionKind::MinkowskiReflection(j))
            if j >= 1 && j < algebra.size() =>
        {
            let d = algebra.size();
            // so_{2,j} + so_{d-j} / so_{1,j+1} + so_{1,d-1-j};
            // h = so_{1,j} + so_{d-1-j}
            row(
                (j + 2) * (j + 1) / 2 + so_dim(d - j),
                so_dim(j + 1) + so_dim(d - 1 - j),
                d - j,
                true,
            )
        }
        (Family::DirectSum(_), InvolutionKind::Flip) => {
            let inner = algebra.inner().unwrap();
            let model = crate::lie::matrix_model(inner).ok()?;
            // g^(alpha) = g; h = g_0(h) = dim g - 2 dim V
            row(model.dim(), model.dim() - 2 * inner.dim(), inner.dim(), true)
        }
        _ => None,
    }
}

/// All expected rows for every family at rank <= max_rank (and spin
/// factors with 3 <= d <= max_spin_d), including the flip rows of the
/// doubled algebras.
pub fn expected_rows(max_rank: usize, max_spin_d: usize) -> Vec<(Algebra, InvolutionKind)> {
    let mut out = Vec::new();
    for r in 1..=max_rank {
        for fam in [Family::SymR, Family::HermC, Family::HermH] {
            let alg = Algebra::new(fam, r).unwrap();
            for kind in catalog(&alg) {
                out.push((alg.clone(), kind));
            }
            let dbl = Algebra::direct_sum(&alg).unwrap();
            out.push((dbl, InvolutionKind::Flip));
        }
    }
    for d in 3..=max_spin_d {
        let alg = Algebra::new(Family::SpinFactor, d).unwrap();
        for kind in catalog(&alg) {
            out.push((alg.clone(), kind));
        }
        let dbl = Algebra::direct_sum(&alg).unwrap();
        out.push((dbl, InvolutionKind::Flip));
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct RowDiff {
    pub family: String,
    pub size: usize,
    pub involution: String,
    pub field: String,
    pub computed: String,
    pub expected: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub version: &'static str,
    pub rows: usize,
    pub diffs: Vec<RowDiff>,
    /// Cone verdicts: every + row elliptic, every - row hyperbolic.
    pub cone_failures: Vec<RowDiff>,
}

/// Recompute the dimension and modularity columns and diff them against
/// the embedded expected table. `cone_samples` > 0 additionally runs the
/// sampled cone classification per row.
pub fn verify_tables(
    max_rank: usize,
    max_spin_d: usize,
    cone_samples: usize,
    seed: u64,
) -> Result<TableReport> {
    let mut diffs = Vec::new();
    let mut cone_failures = Vec::new();
    let rows = expected_rows(max_rank, max_spin_d);
    let nrows = rows.len();
    for (alg, kind) in rows {
        let spec = make_involution(&alg, kind)?;
        let expect = expected_row(&alg, kind).expect("catalog row has an expected entry");
        let diff = |field: &str, computed: String, expected: String| RowDiff {
            family: alg.family().to_string(),
            size: alg.size(),
            involution: kind.to_string(),
            field: field.to_string(),
            computed,
            expected,
        };

        let plus = fixed_algebra(&spec, 1)?;
        let minus = fixed_algebra(&spec, -1)?;
        if plus.dim != minus.dim {
            diffs.push(diff("c-duality", format!("{} vs {}", plus.dim, minus.dim), "equal".into()));
        }
        if plus.dim != expect.dim_fixed {
            diffs.push(diff("dim_fixed", plus.dim.to_string(), expect.dim_fixed.to_string()));
        }
        if plus.h_part_dim != expect.h_dim {
            diffs.push(diff("h_dim", plus.h_part_dim.to_string(), expect.h_dim.to_string()));
        }
        if plus.q_part_dim != alg.dim() {
            diffs.push(diff("q_dim", plus.q_part_dim.to_string(), alg.dim().to_string()));
        }
        if spec.v_fixed_dim() != expect.v_fixed_dim {
            diffs.push(diff(
                "v_fixed_dim",
                spec.v_fixed_dim().to_string(),
                expect.v_fixed_dim.to_string(),
            ));
        }
        let modular = modularity_check(&spec)?;
        if modular.modular != expect.modular {
            diffs.push(diff("modular", modular.modular.to_string(), expect.modular.to_string()));
        }
        if cone_samples > 0 {
            for sign in [1, -1] {
                let c = cone_classification(&spec, sign, cone_samples, seed)?;
                let want =
                    if sign > 0 { SpectrumClass::Elliptic } else { SpectrumClass::Hyperbolic };
                if c.verdict != want {
                    cone_failures.push(diff(
                        if sign > 0 { "cone_plus" } else { "cone_minus" },
                        c.verdict.to_string(),
                        want.to_string(),
                    ));
                }
            }
        }
    }
    Ok(TableReport { version: TABLE_VERSION, rows: nrows, diffs, cone_failures })
}

/// One-row verdict bundle for the CLI.
#[derive(Debug, Clone, Serialize)]
pub struct ClassifyRow {
    pub kind: String,
    pub dim_fixed_plus: usize,
    pub dim_fixed_minus: usize,
    pub h_dim: usize,
    pub v_fixed_dim: usize,
    pub cone_class_plus: String,
    pub cone_class_minus: String,
    pub modular: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<f64>>,
}

pub fn classify_involution(
    spec: &InvolutionSpec,
    samples: usize,
    seed: u64,
) -> Result<ClassifyRow> {
    let plus = fixed_algebra(spec, 1)?;
    let minus = fixed_algebra(spec, -1)?;
    let cp = cone_classification(spec, 1, samples, seed)?;
    let cm = cone_classification(spec, -1, samples, seed)?;
    let m = modularity_check(spec)?;
    Ok(ClassifyRow {
        kind: spec.kind.to_string(),
        dim_fixed_plus: plus.dim,
        dim_fixed_minus: minus.dim,
        h_dim: plus.h_part_dim,
        v_fixed_dim: spec.v_fixed_dim(),
        cone_class_plus: cp.verdict.to_string(),
        cone_class_minus: cm.verdict.to_string(),
        modular: m.modular,
        witness: m.witness_coords,
    })
}
