//! Global numerical tolerances.
//!
//! Two knobs are configurable at runtime (and exposed as CLI flags):
//! the pure-algebra tolerance and the tolerance for anything that goes
//! through matrix exponentials or finite differences. The remaining
//! constants are fixed thresholds used by specific checks.

use std::sync::atomic::{AtomicU64, Ordering};

static TOL_ALGEBRA: AtomicU64 = AtomicU64::new(0);
static TOL_EXP: AtomicU64 = AtomicU64::new(0);

const DEFAULT_ALGEBRA: f64 = 1e-9;
const DEFAULT_EXP: f64 = 1e-6;

fn load(cell: &AtomicU64, default: f64) -> f64 {
    let bits = cell.load(Ordering::Relaxed);
    if bits == 0 {
        default
    } else {
        f64::from_bits(bits)
    }
}

/// Tolerance for identities of pure Jordan algebra (products, spectra).
pub fn algebra() -> f64 {
    load(&TOL_ALGEBRA, DEFAULT_ALGEBRA)
}

/// Tolerance for quantities that involve matrix exponentials or
/// finite differences.
pub fn exp() -> f64 {
    load(&TOL_EXP, DEFAULT_EXP)
}

pub fn set_algebra(t: f64) {
    TOL_ALGEBRA.store(t.to_bits(), Ordering::Relaxed);
}

pub fn set_exp(t: f64) {
    TOL_EXP.store(t.to_bits(), Ordering::Relaxed);
}

/// ad-spectrum of Euler elements must match {-1,0,1} this tightly.
pub const GRADING: f64 = 1e-7;
/// Bracket formula vs. Jordan product.
pub const BRACKET: f64 = 1e-8;
/// Group-condition residual for conformal generators.
pub const GROUP: f64 = 1e-7;
/// Eigenvalue clustering radius for semisimplicity tests.
pub const CLUSTER: f64 = 1e-6;
/// Finite-difference Bergman cross-check.
pub const FD_BERGMAN: f64 = 1e-5;
/// Boundary-clustering threshold of the global-hyperbolicity probe.
pub const GH_ESCAPE: f64 = 1e-3;
/// Near-singularity threshold of the Bergman path probe.
pub const PATH_SINGULAR: f64 = 1e-8;
