//! Locate and classify spectral singularities, bound states, and their
//! coalescences for complex point interactions on the line, and for the
//! complex spherical barrier realized by a spherical gain medium.
//!
//! The crate splits into:
//!
//! - [`point`] — matching matrix, transfer matrix, and the classified roots
//!   of the `M22` quadratic (spectral singularities, bound states, growing
//!   solutions).
//! - [`symmetry`] — P / T / PT invariance tests and the explicit
//!   PT-symmetric parametrization with its spectral case analysis.
//! - [`coalescence`] — the one-parameter family along which pairs of roots
//!   merge at an exceptional point, with branch sweeps for plotting.
//! - [`bessel`] — spherical Bessel/Hankel functions of real order and
//!   complex argument (series and asymptotic regimes).
//! - [`sphere`] — the spherical gain medium: dispersion model, reflection
//!   amplitude, threshold-gain design formulas, and the exact mode solver.
//! - [`report`] — analysis reports and the deterministic JSON/CSV formats
//!   used by the CLI and the browser demo.

pub mod bessel;
pub mod coalescence;
pub mod error;
pub mod point;
pub mod report;
pub mod sphere;
pub mod symmetry;
pub mod tolerance;

pub use error::{Error, Result};
pub use point::{
    classify_wavenumber, AmplitudePair, CaseLabel, MatchingMatrix, SpectralKind, SpectralPoint,
    TransferMatrix,
};
pub use tolerance::Tolerances;

pub use num_complex::Complex64;
