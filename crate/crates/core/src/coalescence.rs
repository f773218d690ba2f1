//! The one-parameter family `nu = (1 + eps/4) mu^2` along which pairs of
//! bound states or spectral singularities coalesce.
//!
//! For `Re(mu) <= 0` and `eps` in `[-1, 1]` the two roots are
//! `k = -i (1 +- sqrt(-eps)/2) mu`; they merge into a double root at
//! `eps = 0` (an exceptional point when the pair is bound) and, for
//! `Re(mu) < 0`, one branch crosses the real axis at `eps = 4 mu_r^2 / mu_i^2`
//! where a bound state turns into a spectral singularity.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::{classify_wavenumber, MatchingMatrix, SpectralPoint};
use crate::tolerance::Tolerances;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn check_domain(mu: Complex64, eps: f64) -> Result<()> {
    if mu.re > 0.0 {
        return Err(Error::Domain(format!(
            "Re(mu) must be <= 0, got {}",
            mu.re
        )));
    }
    if !(-1.0..=1.0).contains(&eps) {
        return Err(Error::Domain(format!("eps must lie in [-1, 1], got {eps}")));
    }
    Ok(())
}

/// Both branch values `k = -i (1 +- sqrt(-eps)/2) mu`.
///
/// `sqrt(-eps)` is taken on the principal branch: real for `eps <= 0` and
/// `i sqrt(eps)` for `eps > 0`.
pub fn k_pair(mu: Complex64, eps: f64) -> Result<(Complex64, Complex64)> {
    check_domain(mu, eps)?;
    let s = Complex64::new(-eps, 0.0).sqrt() / 2.0;
    Ok((-I * (1.0 + s) * mu, -I * (1.0 - s) * mu))
}

/// The same branches assembled from the piecewise real/imaginary closed
/// forms (split at `eps = 0`). Kept as an independent route for
/// cross-checking [`k_pair`].
pub fn k_pair_piecewise(mu: Complex64, eps: f64) -> Result<(Complex64, Complex64)> {
    check_domain(mu, eps)?;
    let (mu_r, mu_i) = (mu.re, mu.im);
    let h = eps.abs().sqrt() / 2.0;
    let (plus, minus) = if eps < 0.0 {
        (
            Complex64::new((1.0 + h) * mu_i, -(1.0 + h) * mu_r),
            Complex64::new((1.0 - h) * mu_i, -(1.0 - h) * mu_r),
        )
    } else if eps == 0.0 {
        let k = Complex64::new(mu_i, -mu_r);
        (k, k)
    } else {
        (
            Complex64::new(mu_i + h * mu_r, -mu_r + h * mu_i),
            Complex64::new(mu_i - h * mu_r, -mu_r - h * mu_i),
        )
    };
    Ok((plus, minus))
}

/// What happens at a critical value of `eps`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriticalEvent {
    /// The two branches merge into a double root (`eps = 0`).
    Coalescence,
    /// A bound-state branch crosses the real axis and becomes a spectral
    /// singularity (`|mu_i| sqrt(eps) = -2 mu_r`).
    BoundStateBecomesSs,
}

/// Critical `eps` values inside `[-1, 1]`, in ascending order of `eps`.
pub fn critical_epsilons(mu: Complex64) -> Result<Vec<(f64, CriticalEvent)>> {
    check_domain(mu, 0.0)?;
    let mut out = vec![(0.0, CriticalEvent::Coalescence)];
    if mu.re < 0.0 && mu.im != 0.0 {
        let eps = 4.0 * mu.re * mu.re / (mu.im * mu.im);
        if eps <= 1.0 {
            out.push((eps, CriticalEvent::BoundStateBecomesSs));
        }
    }
    Ok(out)
}

/// One grid point of a coalescence sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub eps: f64,
    pub plus: SpectralPoint,
    pub minus: SpectralPoint,
}

/// Branch data tabulated over an `eps` grid, in grid order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoalescenceScan {
    pub mu: Complex64,
    pub rows: Vec<ScanRow>,
}

/// Uniform grid of `steps` points covering `[lo, hi]` (inclusive).
pub fn epsilon_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if steps <= 1 {
        return vec![lo];
    }
    let h = (hi - lo) / (steps - 1) as f64;
    (0..steps)
        .map(|i| if i + 1 == steps { hi } else { lo + h * i as f64 })
        .collect()
}

/// Tabulate both branches with classifications over an `eps` grid.
pub fn sweep(mu: Complex64, grid: &[f64], tol: &Tolerances) -> Result<CoalescenceScan> {
    let rows = grid
        .iter()
        .map(|&eps| {
            let (kp, km) = k_pair(mu, eps)?;
            let order = if (kp - km).norm() <= tol.class_at(kp.norm()) { 2 } else { 1 };
            Ok(ScanRow {
                eps,
                plus: SpectralPoint::new(kp, classify_wavenumber(kp, tol), order),
                minus: SpectralPoint::new(km, classify_wavenumber(km, tol), order),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CoalescenceScan { mu, rows })
}

/// Embed `(mu, eps)` into a matching matrix with `b = 1`, `a = d = mu`,
/// `c = nu = (1 + eps/4) mu^2`, so sweeps can be cross-checked against the
/// quadratic spectrum.
pub fn matching_matrix(mu: Complex64, eps: f64) -> MatchingMatrix {
    let nu = (1.0 + eps / 4.0) * mu * mu;
    MatchingMatrix::new(mu, Complex64::new(1.0, 0.0), nu, mu)
}
