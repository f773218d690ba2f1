//! Spherical complex-barrier (gain medium) model: reflection amplitude,
//! the spectral-singularity condition, the Lorentz dispersion model, and the
//! perturbative and exact mode solvers.
//!
//! Transverse spherical waves reduce the vector wave equation to a radial
//! Bessel problem of fixed order `sqrt(5)/2`. A spectral singularity occurs
//! where the logarithmic derivatives of the outgoing exterior solution
//! `h1(kr)` and the regular interior solution `j(n k r)` match at `r = a`,
//! which is where the reflection amplitude's denominator vanishes.
//!
//! All lengths are SI meters and gains 1/meters; unit conversion (nm,
//! cm^-1) happens at the CLI boundary.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::bessel::sph_bessel;
use crate::error::{Error, Result};

/// Fixed order of the radial problem for transverse spherical waves.
pub const WAVE_ORDER: f64 = 1.1180339887498948482;

/// Newton iteration cap for the exact mode solver.
pub const MAX_NEWTON_ITER: usize = 50;

/// A two-level gain medium in a host of index `n0`.
///
/// `kappa0` is the imaginary part of the refractive index at the resonance
/// wavelength; it is nonpositive (gain) and interconvertible with the gain
/// coefficient via `g0 = -4 pi kappa0 / lambda0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GainMedium {
    pub n0: f64,
    /// Resonance wavelength in meters.
    pub lambda0: f64,
    pub gamma_hat: f64,
    pub kappa0: f64,
}

impl GainMedium {
    /// A medium with zero gain; set the gain with [`GainMedium::with_gain`].
    pub fn new(n0: f64, lambda0: f64, gamma_hat: f64) -> Result<Self> {
        if !(n0.is_finite() && n0 > 1.0) {
            return Err(Error::InvalidMedium(format!(
                "n0 must exceed 1 (the design formulas use ln((n0+1)/(n0-1))), got {n0}"
            )));
        }
        if !(lambda0.is_finite() && lambda0 > 0.0) {
            return Err(Error::InvalidMedium(format!(
                "resonance wavelength must be positive, got {lambda0}"
            )));
        }
        if !(gamma_hat.is_finite() && gamma_hat > 0.0) {
            return Err(Error::InvalidMedium(format!(
                "damping must be positive, got {gamma_hat}"
            )));
        }
        Ok(Self { n0, lambda0, gamma_hat, kappa0: 0.0 })
    }

    /// Same medium pumped to gain coefficient `g0` (1/meters, nonnegative).
    pub fn with_gain(mut self, g0: f64) -> Result<Self> {
        if !(g0.is_finite() && g0 >= 0.0) {
            return Err(Error::InvalidMedium(format!(
                "gain coefficient must be nonnegative, got {g0}"
            )));
        }
        self.kappa0 = -g0 * self.lambda0 / (4.0 * PI);
        Ok(self)
    }

    /// `g0 = -4 pi kappa0 / lambda0` in 1/meters.
    pub fn gain_coefficient(&self) -> f64 {
        -4.0 * PI * self.kappa0 / self.lambda0
    }

    /// `ln((n0+1)/(n0-1))`, the geometry-free part of the threshold gain.
    pub fn log_contrast(&self) -> f64 {
        ((self.n0 + 1.0) / (self.n0 - 1.0)).ln()
    }
}

/// The spherical barrier: a dielectric ball of radius `a` (meters).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphericalResonator {
    pub radius: f64,
}

impl SphericalResonator {
    pub fn new(radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidMedium(format!(
                "radius must be positive, got {radius}"
            )));
        }
        Ok(Self { radius })
    }
}

/// Lorentz line-shape factors `f1`, `f2` at normalized frequency
/// `omega_hat = lambda0 / lambda`.
pub fn lorentz_factors(gamma_hat: f64, omega_hat: f64) -> (f64, f64) {
    let one_minus = 1.0 - omega_hat * omega_hat;
    let den = one_minus * one_minus + gamma_hat * gamma_hat * omega_hat * omega_hat;
    (
        gamma_hat * one_minus / den,
        gamma_hat * gamma_hat * omega_hat / den,
    )
}

/// Full dispersion relation:
/// `n^2 = n0^2 - omega_p^2 / (omega_hat^2 - 1 + i gamma_hat omega_hat)` with
/// `omega_p^2 = 2 n0 gamma_hat kappa0`.
pub fn refractive_index(lambda: f64, medium: &GainMedium) -> Complex64 {
    let w = medium.lambda0 / lambda;
    let wp2 = 2.0 * medium.n0 * medium.gamma_hat * medium.kappa0;
    let den = Complex64::new(w * w - 1.0, medium.gamma_hat * w);
    (Complex64::new(medium.n0 * medium.n0, 0.0) - wp2 / den).sqrt()
}

/// Linearized dispersion `(eta, kappa) = (n0 + kappa0 f1, kappa0 f2)`,
/// accurate to first order in `kappa0`.
pub fn refractive_index_linearized(lambda: f64, medium: &GainMedium) -> (f64, f64) {
    let (f1, f2) = lorentz_factors(medium.gamma_hat, medium.lambda0 / lambda);
    (medium.n0 + medium.kappa0 * f1, medium.kappa0 * f2)
}

/// Reflection amplitude `A1/A2` with a proximity flag for the pole.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReflectionAmplitude {
    pub value: Complex64,
    /// Set when the denominator is within 1e-13 of the term scale, i.e. the
    /// evaluation sits almost on top of a spectral singularity.
    pub pole_proximity: bool,
}

fn check_geometry(k: f64, a: f64) -> Result<()> {
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::Domain(format!("wavenumber must be positive, got {k}")));
    }
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::Domain(format!("radius must be positive, got {a}")));
    }
    Ok(())
}

/// Ratio of reflected to incident spherical-wave coefficients, `A1/A2`,
/// from matching the fields at `r = a`. `R = |A1/A2|^2` is the reflection
/// coefficient.
pub fn reflection_amplitude(n: Complex64, k: f64, a: f64) -> Result<ReflectionAmplitude> {
    check_geometry(k, a)?;
    let x = Complex64::new(k * a, 0.0);
    let w = n * x;
    let ex = sph_bessel(WAVE_ORDER, x)?;
    let ew = sph_bessel(WAVE_ORDER, w)?;
    let num = w * ew.j_prime * ex.h2 - x * ex.h2_prime * ew.j;
    let den = x * ex.h1_prime * ew.j - w * ew.j_prime * ex.h1;
    let scale = (x * ex.h1_prime * ew.j).norm() + (w * ew.j_prime * ex.h1).norm();
    Ok(ReflectionAmplitude {
        value: num / den,
        pole_proximity: den.norm() < 1e-13 * scale,
    })
}

/// Reflection coefficient `R = |A1/A2|^2`.
pub fn reflection_coefficient(n: Complex64, k: f64, a: f64) -> Result<f64> {
    Ok(reflection_amplitude(n, k, a)?.value.norm_sqr())
}

/// Spectral-singularity defect: the mismatch of interior and exterior
/// logarithmic derivatives at the surface, in the dimensionless form
/// `x h1'(x)/h1(x) - w j'(w)/j(w)` with `x = ka`, `w = n k a`.
///
/// Zero exactly where the reflection amplitude's denominator vanishes, and
/// invariant under `(k, a) -> (c k, a/c)`.
pub fn ss_residual(n: Complex64, k: f64, a: f64) -> Result<Complex64> {
    Ok(ss_residual_scaled(n, k, a)?.0)
}

/// Residual together with the scale `|t1| + |t2|` of its two terms, for
/// relative convergence tests.
pub fn ss_residual_scaled(n: Complex64, k: f64, a: f64) -> Result<(Complex64, f64)> {
    check_geometry(k, a)?;
    let x = Complex64::new(k * a, 0.0);
    let w = n * x;
    let ex = sph_bessel(WAVE_ORDER, x)?;
    let ew = sph_bessel(WAVE_ORDER, w)?;
    let t1 = x * ex.h1_prime / ex.h1;
    let t2 = w * ew.j_prime / ew.j;
    Ok((t1 - t2, t1.norm() + t2.norm()))
}

/// One optical spectral singularity of the resonator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeSolution {
    /// Mode number.
    pub m: u32,
    /// Perturbative wavelength `4 n0 a / (2m + nu + 1)` (meters).
    pub lambda_pert: f64,
    /// Wavelength refined by the exact solver, when run.
    pub lambda_exact: Option<f64>,
    /// Threshold gain coefficient (1/meters).
    pub g0: f64,
    /// Size parameter `k a` at the mode wavelength.
    pub x: f64,
    /// Real part of the refractive index at the mode.
    pub eta: f64,
    /// Imaginary part of the refractive index at the mode (negative: gain).
    pub kappa: f64,
}

impl ModeSolution {
    /// Mode wavelength: the exact one when available.
    pub fn lambda(&self) -> f64 {
        self.lambda_exact.unwrap_or(self.lambda_pert)
    }

    /// True in the large-argument regime the expansions assume.
    pub fn asymptotic_regime(&self) -> bool {
        self.x > 100.0
    }
}

/// Perturbative mode wavelength `lambda = 4 n0 a / (2m + nu + 1)`.
pub fn mode_wavelength_pert(m: u32, medium: &GainMedium, res: &SphericalResonator) -> f64 {
    4.0 * medium.n0 * res.radius / (2.0 * m as f64 + WAVE_ORDER + 1.0)
}

/// Perturbative threshold gain from the Lorentz line shape:
/// `g0 = 4 n0 ln((n0+1)/(n0-1)) / (lambda0 (2m + nu + 1) f2)`.
pub fn mode_gain_pert(m: u32, medium: &GainMedium, res: &SphericalResonator) -> f64 {
    let lambda = mode_wavelength_pert(m, medium, res);
    let (_, f2) = lorentz_factors(medium.gamma_hat, medium.lambda0 / lambda);
    4.0 * medium.n0 * medium.log_contrast()
        / (medium.lambda0 * (2.0 * m as f64 + WAVE_ORDER + 1.0) * f2)
}

/// Design form of the threshold gain at a given wavelength:
/// `g0 = (1/a) ln((n0+1)/(n0-1)) [1 + f(lambda)/gamma_hat^2]` with
/// `f = ((lambda^2 - lambda0^2)/(lambda0 lambda))^2`. Agrees with
/// [`mode_gain_pert`] at the perturbative mode wavelengths.
pub fn design_gain(lambda: f64, medium: &GainMedium, res: &SphericalResonator) -> f64 {
    let f = ((lambda * lambda - medium.lambda0 * medium.lambda0) / (medium.lambda0 * lambda))
        .powi(2);
    medium.log_contrast() / res.radius * (1.0 + f / (medium.gamma_hat * medium.gamma_hat))
}

/// Smallest radius that supports a spectral singularity at gain `g0_max`:
/// the design gain at resonance, inverted for the radius.
pub fn min_radius(medium: &GainMedium, g0_max: f64) -> Result<f64> {
    if !(g0_max.is_finite() && g0_max > 0.0) {
        return Err(Error::Domain(format!(
            "maximum gain must be positive, got {g0_max}"
        )));
    }
    Ok(medium.log_contrast() / g0_max)
}

fn pert_solution(m: u32, medium: &GainMedium, res: &SphericalResonator) -> ModeSolution {
    let lambda = mode_wavelength_pert(m, medium, res);
    let g0 = mode_gain_pert(m, medium, res);
    let pumped = GainMedium { kappa0: -g0 * medium.lambda0 / (4.0 * PI), ..*medium };
    let n = refractive_index(lambda, &pumped);
    ModeSolution {
        m,
        lambda_pert: lambda,
        lambda_exact: None,
        g0,
        x: 2.0 * PI * res.radius / lambda,
        eta: n.re,
        kappa: n.im,
    }
}

/// All modes whose perturbative threshold gain does not exceed `g0_max`,
/// sorted by gain ascending (ties broken by mode number).
///
/// Each entry may be refined afterwards with [`solve_mode_exact`].
pub fn enumerate_modes(
    medium: &GainMedium,
    res: &SphericalResonator,
    g0_max: f64,
) -> Vec<ModeSolution> {
    let gain = |m: u32| mode_gain_pert(m, medium, res);
    // The gain is unimodal in m with its minimum where the mode wavelength
    // crosses the resonance wavelength.
    let center_f =
        (4.0 * medium.n0 * res.radius / medium.lambda0 - WAVE_ORDER - 1.0) / 2.0;
    let center = center_f.round().max(1.0) as u32;
    let mut best = center;
    for m in center.saturating_sub(2).max(1)..=center + 2 {
        if gain(m) < gain(best) {
            best = m;
        }
    }
    if gain(best) > g0_max {
        return Vec::new();
    }
    let mut lo = best;
    while lo > 1 && gain(lo - 1) <= g0_max {
        lo -= 1;
    }
    let mut hi = best;
    while gain(hi + 1) <= g0_max {
        hi += 1;
    }
    let mut modes: Vec<ModeSolution> =
        (lo..=hi).map(|m| pert_solution(m, medium, res)).collect();
    modes.sort_by(|p, q| p.g0.total_cmp(&q.g0).then(p.m.cmp(&q.m)));
    modes
}

/// Refine one mode by Newton iteration on `(lambda, kappa0)`, zeroing the
/// complex [`ss_residual`] with the index tied to the unknowns through the
/// full dispersion relation.
///
/// The seed defaults to the perturbative `(lambda, g0)`; convergence is
/// declared at `|residual| <= 1e-12` relative to the term scale, and the
/// solution must stay within 0.1 nm of the perturbative wavelength.
pub fn solve_mode_exact(
    m: u32,
    medium: &GainMedium,
    res: &SphericalResonator,
    seed: Option<(f64, f64)>,
) -> Result<ModeSolution> {
    let lambda_pert = mode_wavelength_pert(m, medium, res);
    let (lambda_seed, g0_seed) = seed.unwrap_or_else(|| (lambda_pert, mode_gain_pert(m, medium, res)));
    if !(g0_seed > 0.0) {
        return Err(Error::InvalidParameters(format!(
            "seed gain must be positive, got {g0_seed}"
        )));
    }
    let x_seed = 2.0 * PI * res.radius / lambda_seed;
    if x_seed <= 100.0 {
        return Err(Error::SeedOutOfRegime(x_seed));
    }

    let a = res.radius;
    let residual = |lambda: f64, kappa0: f64| -> Result<(Complex64, f64)> {
        let med = GainMedium { kappa0, ..*medium };
        let n = refractive_index(lambda, &med);
        ss_residual_scaled(n, 2.0 * PI / lambda, a)
    };

    let mut lambda = lambda_seed;
    let mut kappa0 = -g0_seed * medium.lambda0 / (4.0 * PI);
    let (mut r, mut scale) = residual(lambda, kappa0)?;
    for iter in 0..MAX_NEWTON_ITER {
        if r.norm() <= 1e-12 * scale {
            let med = GainMedium { kappa0, ..*medium };
            let n = refractive_index(lambda, &med);
            if (lambda - lambda_pert).abs() > 0.1e-9 {
                return Err(Error::NoConvergence(iter));
            }
            return Ok(ModeSolution {
                m,
                lambda_pert,
                lambda_exact: Some(lambda),
                g0: -4.0 * PI * kappa0 / medium.lambda0,
                x: 2.0 * PI * a / lambda,
                eta: n.re,
                kappa: n.im,
            });
        }
        // Central-difference Jacobian, relative step 1e-7.
        let hl = 1e-7 * lambda;
        let hk = 1e-7 * kappa0.abs();
        let (rl_p, _) = residual(lambda + hl, kappa0)?;
        let (rl_m, _) = residual(lambda - hl, kappa0)?;
        let (rk_p, _) = residual(lambda, kappa0 + hk)?;
        let (rk_m, _) = residual(lambda, kappa0 - hk)?;
        let dl = (rl_p - rl_m) / (2.0 * hl);
        let dk = (rk_p - rk_m) / (2.0 * hk);
        let det = dl.re * dk.im - dl.im * dk.re;
        if det.abs() < f64::MIN_POSITIVE.sqrt() {
            return Err(Error::NoConvergence(iter));
        }
        let step_l = (-r.re * dk.im + r.im * dk.re) / det;
        let step_k = (-dl.re * r.im + dl.im * r.re) / det;
        // Damping: halve until the residual does not grow.
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..8 {
            let (r_new, s_new) = residual(lambda + t * step_l, kappa0 + t * step_k)?;
            if r_new.norm() <= r.norm() || r_new.norm() <= 1e-12 * s_new {
                lambda += t * step_l;
                kappa0 += t * step_k;
                r = r_new;
                scale = s_new;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            return Err(Error::NoConvergence(iter));
        }
    }
    Err(Error::NoConvergence(MAX_NEWTON_ITER))
}

/// Tabulate the reflection coefficient over a wavelength range at the
/// medium's fixed gain.
pub fn scan_reflection(
    medium: &GainMedium,
    res: &SphericalResonator,
    lambda_range: (f64, f64),
    points: usize,
) -> Result<Vec<(f64, f64)>> {
    let (lo, hi) = lambda_range;
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::Domain(format!(
            "wavelength range must be positive and increasing, got ({lo}, {hi})"
        )));
    }
    if points < 2 {
        return Err(Error::Domain(format!("need at least 2 points, got {points}")));
    }
    let h = (hi - lo) / (points - 1) as f64;
    (0..points)
        .map(|i| {
            let lambda = if i + 1 == points { hi } else { lo + h * i as f64 };
            let n = refractive_index(lambda, medium);
            let r = reflection_coefficient(n, 2.0 * PI / lambda, res.radius)?;
            Ok((lambda, r))
        })
        .collect()
}

/// Local maxima of a scan, tallest first.
pub fn peaks(series: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = series
        .windows(3)
        .filter(|w| w[1].1 > w[0].1 && w[1].1 > w[2].1)
        .map(|w| w[1])
        .collect();
    out.sort_by(|p, q| q.1.total_cmp(&p.1));
    out
}

/// A named medium with its experimental gain bound, as stored in the
/// presets file. Wavelength in nm and gain in cm^-1, converted to SI by
/// [`MediumPreset::medium`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MediumPreset {
    pub name: String,
    pub n0: f64,
    pub lambda0_nm: f64,
    pub gamma_hat: f64,
    pub g0_max_cm1: f64,
}

impl MediumPreset {
    pub fn medium(&self) -> Result<GainMedium> {
        GainMedium::new(self.n0, self.lambda0_nm * 1e-9, self.gamma_hat)
    }

    /// Experimental gain bound in 1/meters.
    pub fn g0_max(&self) -> f64 {
        self.g0_max_cm1 * 100.0
    }
}

/// The two case studies shipped with the tool.
pub fn builtin_presets() -> Vec<MediumPreset> {
    vec![
        MediumPreset {
            name: "diode".into(),
            n0: 3.4,
            lambda0_nm: 1500.0,
            gamma_hat: 0.02,
            g0_max_cm1: 1000.0,
        },
        MediumPreset {
            name: "rose_bengal_dmso".into(),
            n0: 1.479,
            lambda0_nm: 549.0,
            gamma_hat: 0.062,
            g0_max_cm1: 5.0,
        },
    ]
}
