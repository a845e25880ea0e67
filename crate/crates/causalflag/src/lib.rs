//! Numerical models of euclidean Jordan algebras, their conformal
//! completions, and the causal symmetric spaces sitting inside them.
//!
//! The crate covers, at desk scale (ranks up to 4, Minkowski dimension up
//! to 6):
//!
//! * the four families of euclidean Jordan algebras with spectral theory,
//!   cones and Bergman operators ([`jordan`]);
//! * the conformal completion with translations, dilations, inversion and
//!   Cayley transforms ([`conformal`]);
//! * matrix models of the conformal Lie algebras, Euler elements,
//!   3-gradings and wedge regions ([`lie`]);
//! * the catalog of Jordan involutions with the induced causal symmetric
//!   spaces, cone classification and modularity verdicts ([`spaces`]);
//! * the Lorentzian quadric with de Sitter / anti-de Sitter charts, wedge
//!   regions and global-hyperbolicity probes ([`lorentz`]);
//! * unitary groups of skew-hermitian forms realised inside isotropic
//!   Grassmannians ([`grassmann`]).
//!
//! Sampling loops run on rayon by default; disable the `parallel` feature
//! for a sequential build. Fixed seeds give identical results either way.

pub mod error;
pub mod linalg;
pub mod par;
pub mod quat;
pub mod tol;

pub mod jordan;

pub mod conformal;
pub mod grassmann;
pub mod lie;
pub mod lorentz;
pub mod spaces;

pub use error::{Error, Result};
