use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A wavenumber too close to zero was passed where k != 0 is required.
    #[error("degenerate wavenumber: |k| = {0:.3e} is too close to zero")]
    DegenerateWavenumber(f64),

    /// Parameters violate a documented invariant.
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// Input lies outside the domain a formula is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// Bessel functions are singular at the origin.
    #[error("evaluation at z = 0 is singular")]
    Origin,

    /// The ascending series did not reach the target relative tolerance.
    #[error("series did not converge within {terms} terms at |z| = {z_abs:.3e}")]
    NonConvergence { terms: usize, z_abs: f64 },

    /// The order is too close to a pole of the reflection formula.
    #[error("unsupported order: nu + 1/2 = {0} is too close to an integer")]
    UnsupportedOrder(f64),

    /// A gain-medium parameter violates its physical range.
    #[error("invalid medium: {0}")]
    InvalidMedium(String),

    /// Newton iteration failed to converge.
    #[error("no convergence after {0} Newton steps")]
    NoConvergence(usize),

    /// The perturbative seed of the exact mode solver lies outside the
    /// large-argument regime the expansions are valid in.
    #[error("seed outside the asymptotic regime: x = {0:.3} <= 100")]
    SeedOutOfRegime(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
