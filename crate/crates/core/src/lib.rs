//! Exact computational machinery for stable exterior forms.
//!
//! The crate provides, over exact rational (optionally real-quadratic)
//! scalars:
//!
//! - a sparse exterior algebra on `R^n` (wedge, interior product, pullback,
//!   duality against a volume form, Hodge star for pseudo-metrics);
//! - stability tests and orbit classification for the stable-form families
//!   in dimensions up to 8, with their geometric certificates;
//! - restriction of forms to oriented hyperplanes, causal typing and
//!   sampling surveys;
//! - membership oracles for extension problems, exact signature
//!   characterizations, convex-hull certificates from an exact simplex
//!   solver, and the bundled witness verifications;
//! - Hitchin volumes, their scaling law and a finite-difference dual form;
//! - simplicial cochain complexes with exact cohomology, a cochain-level
//!   Hodge-type splitting and Whitney forms with exact integration.
//!
//! The `stform` binary exposes the same functionality on the command line;
//! [`selftest`] runs the full acceptance suite.

pub mod ample;
pub mod builtins;
pub mod error;
pub mod exterior;
pub mod hitchin;
pub mod io;
pub mod matrix;
pub mod metric;
pub mod multiindex;
pub mod orbit;
pub mod restrict;
pub mod scalar;
pub mod selftest;
pub mod simplicial;
pub mod whitney;

pub use error::Error;
pub use exterior::{PForm, PVector};
pub use matrix::Matrix;
pub use multiindex::MultiIndex;
pub use scalar::Scalar;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
