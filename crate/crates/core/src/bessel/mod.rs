//! Spherical Bessel `j_nu` and Hankel `h_nu^(1,2)` functions of real
//! (generally non-integer) order with complex argument, plus the asymptotic
//! coefficients `A_k(nu)`.
//!
//! Two evaluation regimes:
//!
//! * `|z| <= Z_SWITCH`: ascending power series of the cylinder function of
//!   order `nu + 1/2`, scaled by `sqrt(pi/2z)`. The series is accumulated in
//!   double-double arithmetic (see [`dd`]) because the plain-f64 series loses
//!   ~0.4 |z| bits to cancellation.
//! * `|z| > Z_SWITCH`: large-argument expansions truncated at the term of
//!   smallest magnitude (optimal truncation of the divergent series).
//!
//! The second kind is obtained from the reflection formula
//! `Y_l = (J_l cos(l pi) - J_{-l}) / sin(l pi)`, so orders with `nu + 1/2`
//! within 1e-8 of an integer are rejected. Derivatives use the three-term
//! recursion `u' = [nu u_{nu-1} - (nu+1) u_{nu+1}] / (2 nu + 1)`.

mod dd;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use dd::{Dd, DdComplex};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Crossover between the series and asymptotic regimes.
pub const Z_SWITCH: f64 = 30.0;

const SERIES_TERM_BUDGET: usize = 500;
const ASYMPTOTIC_TERM_CAP: usize = 120;

/// Which evaluation path produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Series,
    Asymptotic,
}

/// Values and derivatives of `j`, `h1`, `h2` at one order and argument.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesselEval {
    pub nu: f64,
    pub z: Complex64,
    pub j: Complex64,
    pub j_prime: Complex64,
    pub h1: Complex64,
    pub h1_prime: Complex64,
    pub h2: Complex64,
    pub h2_prime: Complex64,
    pub regime: Regime,
}

/// Asymptotic coefficient `A_k(nu) = Gamma(nu+k+1) / (2^k k! Gamma(nu-k+1))`,
/// computed via the finite product so Gamma poles cancel exactly.
pub fn coeff_a(k: u32, nu: f64) -> f64 {
    let kk = k as f64;
    let mut num = 1.0;
    for l in 0..2 * k {
        num *= nu + kk - l as f64;
    }
    let mut den = 1.0;
    for j in 1..=k {
        den *= 2.0 * j as f64;
    }
    num / den
}

/// Cylinder Bessel `J_lambda(z)` by the ascending series, with the sum taken
/// in double-double arithmetic. `lambda + 1` must stay away from the
/// nonpositive integers (callers guard the order).
fn cylinder_j_series(lambda: f64, z: Complex64) -> Result<Complex64> {
    // w = -z^2/4, exactly.
    let z2_re = Dd::from_prod(z.re, z.re).sub(Dd::from_prod(z.im, z.im));
    let z2_im = Dd::from_prod(z.re, z.im).mul_f64(2.0);
    let w = DdComplex { re: z2_re.mul_f64(-0.25), im: z2_im.mul_f64(-0.25) };

    let t0 = 1.0 / libm::tgamma(lambda + 1.0);
    let mut term = DdComplex::from_f64(t0, 0.0);
    let mut sum = term;
    let mut converged = false;
    for m in 0..SERIES_TERM_BUDGET {
        let div = Dd::from_f64((m + 1) as f64).mul(Dd::from_sum(lambda, (m + 1) as f64));
        term = term.mul(w).div_dd(div);
        sum = sum.add(term);
        if term.abs_hi() <= 1e-17 * sum.abs_hi() {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence { terms: SERIES_TERM_BUDGET, z_abs: z.norm() });
    }
    let s = Complex64::new(sum.re.to_f64(), sum.im.to_f64());
    Ok((z / 2.0).powf(lambda) * s)
}

/// (j, h1, h2) at a single order via the series regime.
fn series_triplet(order: f64, z: Complex64) -> Result<(Complex64, Complex64, Complex64)> {
    let lambda = order + 0.5;
    let jl = cylinder_j_series(lambda, z)?;
    let jr = cylinder_j_series(-lambda, z)?;
    let (s, c) = (PI * lambda).sin_cos();
    let yl = (jl * c - jr) / s;
    let pref = (PI / (2.0 * z)).sqrt();
    let j = pref * jl;
    let y = pref * yl;
    Ok((j, j + I * y, j - I * y))
}

/// `sum_k rot^k A_k(order) / z^k` with optimal truncation. `rot` is `+-i`.
fn asymptotic_sum(order: f64, z: Complex64, rot: Complex64) -> Complex64 {
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = sum;
    let mut prev_mag = f64::INFINITY;
    for k in 1..ASYMPTOTIC_TERM_CAP {
        let kk = k as f64;
        // A_k / A_{k-1} = (order+k)(order-k+1) / (2k).
        let ratio = (order + kk) * (order - kk + 1.0) / (2.0 * kk);
        term = term * rot * ratio / z;
        let mag = term.norm();
        if mag >= prev_mag {
            break; // terms started growing: stop before the smallest one
        }
        sum += term;
        if mag <= 1e-18 * sum.norm() || mag == 0.0 {
            break;
        }
        prev_mag = mag;
    }
    sum
}

/// (j, h1, h2) at a single order via the large-argument expansions.
fn asymptotic_triplet(order: f64, z: Complex64) -> (Complex64, Complex64, Complex64) {
    let phi = z - PI * order / 2.0;
    let u_plus = asymptotic_sum(order, z, I);
    let u_minus = asymptotic_sum(order, z, -I);
    let h1 = -I * (I * phi).exp() / z * u_plus;
    let h2 = I * (-I * phi).exp() / z * u_minus;
    // Even/odd split: u+- = P +- iQ.
    let p = (u_plus + u_minus) / 2.0;
    let q = (u_plus - u_minus) / (2.0 * I);
    let j = (phi.sin() * p + phi.cos() * q) / z;
    (j, h1, h2)
}

fn triplet(order: f64, z: Complex64, regime: Regime) -> Result<(Complex64, Complex64, Complex64)> {
    match regime {
        Regime::Series => series_triplet(order, z),
        Regime::Asymptotic => Ok(asymptotic_triplet(order, z)),
    }
}

/// Evaluate `j`, `h1`, `h2` and their derivatives at order `nu`, choosing the
/// regime by `|z|` against [`Z_SWITCH`].
pub fn sph_bessel(nu: f64, z: Complex64) -> Result<BesselEval> {
    let regime = if z.norm() <= Z_SWITCH { Regime::Series } else { Regime::Asymptotic };
    sph_bessel_in(nu, z, regime)
}

/// Same as [`sph_bessel`] but with the regime forced, so the two evaluation
/// routes can be cross-checked against each other in the overlap.
pub fn sph_bessel_in(nu: f64, z: Complex64, regime: Regime) -> Result<BesselEval> {
    if !nu.is_finite() || nu < 0.0 {
        return Err(Error::InvalidParameters(format!(
            "order must be real and nonnegative, got {nu}"
        )));
    }
    if z.norm() == 0.0 {
        return Err(Error::Origin);
    }
    if regime == Regime::Series {
        let lambda = nu + 0.5;
        if (lambda - lambda.round()).abs() < 1e-8 {
            return Err(Error::UnsupportedOrder(lambda));
        }
    }

    let (jm, h1m, h2m) = triplet(nu - 1.0, z, regime)?;
    let (j0, h10, h20) = triplet(nu, z, regime)?;
    let (jp, h1p, h2p) = triplet(nu + 1.0, z, regime)?;

    let w = 2.0 * nu + 1.0;
    let deriv = |um: Complex64, up: Complex64| (nu * um - (nu + 1.0) * up) / w;

    Ok(BesselEval {
        nu,
        z,
        j: j0,
        j_prime: deriv(jm, jp),
        h1: h10,
        h1_prime: deriv(h1m, h1p),
        h2: h20,
        h2_prime: deriv(h2m, h2p),
        regime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    /// nu = sqrt(5)/2, the order of the transverse spherical wave problem.
    fn nu() -> f64 {
        5.0_f64.sqrt() / 2.0
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn coeff_a_values() {
        for v in [0.0, 0.3, nu(), 2.5, 7.1] {
            assert_eq!(coeff_a(0, v), 1.0);
        }
        assert_abs_diff_eq!(coeff_a(1, nu()), 1.1840169943749474, epsilon = 1e-15);
        assert_abs_diff_eq!(coeff_a(1, nu()), nu() * (nu() + 1.0) / 2.0, epsilon = 1e-15);
        // Product contains the factor (nu - 1) = 0.
        assert_eq!(coeff_a(2, 1.0), 0.0);
        assert_abs_diff_eq!(coeff_a(2, nu()), 0.10893962429686843, epsilon = 1e-15);
        assert_abs_diff_eq!(coeff_a(3, nu()), -0.06594416878743038, epsilon = 1e-15);
        assert_abs_diff_eq!(coeff_a(3, 2.5), 3.3837890625, epsilon = 1e-12);
    }

    #[test]
    fn series_values_at_one() {
        // Frozen from a 40-digit independent series evaluation.
        let ev = sph_bessel(nu(), c(1.0, 0.0)).unwrap();
        assert_eq!(ev.regime, Regime::Series);
        assert!(rel(ev.j, c(0.25574764720782525653, 0.0)) < 1e-13);
        assert!(rel(ev.j_prime, c(0.23574615365375819651, 0.0)) < 1e-13);
        assert!(rel(ev.h1, c(0.25574764720782525653, -1.5032662297446855555)) < 1e-13);
        assert!(rel(ev.h1_prime, c(0.23574615365375819651, 2.5244055046788695079)) < 1e-13);
        assert!(rel(ev.h2, c(0.25574764720782525653, 1.5032662297446855555)) < 1e-13);
    }

    #[test]
    fn series_values_at_two() {
        let ev = sph_bessel(nu(), c(2.0, 0.0)).unwrap();
        assert!(rel(ev.j, c(0.40798796866567630343, 0.0)) < 1e-13);
        assert!(rel(ev.h1, c(0.40798796866567630343, -0.40126223830087839705)) < 1e-13);
        // Wronskian identity at z = 2: j h1' - j' h1 = i/4.
        let w = ev.j * ev.h1_prime - ev.j_prime * ev.h1;
        assert!(rel(w, c(0.0, 0.25)) < 1e-12);
    }

    #[test]
    fn series_values_complex_argument() {
        let ev = sph_bessel(nu(), c(2.0, 1.0)).unwrap();
        assert!(rel(ev.j, c(0.52434698526834329432, 0.055353015823955919252)) < 1e-13);
        assert!(rel(ev.h1, c(0.034683058694247297214, -0.21479259752415003692)) < 1e-13);
        assert!(rel(ev.h2, c(1.0140109118424392914, 0.32549862917206187542)) < 1e-13);

        let ev = sph_bessel(nu(), c(25.0, -4.0)).unwrap();
        assert_eq!(ev.regime, Regime::Series);
        assert!(rel(ev.j, c(-1.0647548561905768238, 0.12069227136157666822)) < 1e-12);
        assert!(rel(ev.h1, c(-2.1288469774236755521, 0.2416892355031044724)) < 1e-12);
        assert!(rel(ev.h2, c(-0.00066273495747809550865, -0.0003046927799511359559)) < 1e-10);
    }

    #[test]
    fn asymptotic_values_at_forty() {
        let ev = sph_bessel(nu(), c(40.0, 0.0)).unwrap();
        assert_eq!(ev.regime, Regime::Asymptotic);
        assert!(rel(ev.j, c(0.013585770962828074853, 0.0)) < 1e-13);
        assert!(rel(ev.j_prime, c(0.020641941854899861009, 0.0)) < 1e-13);
        assert!(rel(ev.h1, c(0.013585770962828074853, -0.020997366825952776666)) < 1e-13);
        assert!(rel(ev.h1_prime, c(0.020641941854899861009, 0.014101045527474483639)) < 1e-13);
    }

    #[test]
    fn regimes_agree_at_forty() {
        let a = sph_bessel_in(nu(), c(40.0, 0.0), Regime::Asymptotic).unwrap();
        let s = sph_bessel_in(nu(), c(40.0, 0.0), Regime::Series).unwrap();
        assert!(rel(s.j, a.j) < 1e-10);
        assert!(rel(s.h1, a.h1) < 1e-10);
        assert!(rel(s.h2, a.h2) < 1e-10);
        assert!(rel(s.j_prime, a.j_prime) < 1e-10);
        assert!(rel(s.h1_prime, a.h1_prime) < 1e-10);
    }

    #[test]
    fn regime_continuity_at_the_switch() {
        let lo = sph_bessel(nu(), c(Z_SWITCH - 1e-6, 0.0)).unwrap();
        let hi = sph_bessel(nu(), c(Z_SWITCH + 1e-6, 0.0)).unwrap();
        assert_eq!(lo.regime, Regime::Series);
        assert_eq!(hi.regime, Regime::Asymptotic);
        // Values 2e-6 apart in z differ by ~|j'| * 2e-6; compare each regime
        // against the frozen series value at exactly 30 instead.
        let at = sph_bessel(nu(), c(30.0, 0.0)).unwrap();
        assert!(rel(at.j, c(-0.00029740471546859225589, 0.0)) < 1e-11);
        assert!(rel(at.h1, c(-0.00029740471546859225589, 0.033353933167462377534)) < 1e-12);
        // And continuity: the two-sided values bracket the frozen midpoint
        // to first order in 1e-6.
        assert!((lo.j - hi.j).norm() < 1e-6);
    }

    #[test]
    fn wronskian_on_a_grid() {
        for &r in &[0.5, 1.0, 3.7, 11.0, 29.0, 31.0, 100.0, 1e3, 1e5] {
            for &im in &[0.0, 1.0, -5.0] {
                let z = c(r, im);
                let ev = sph_bessel(nu(), z).unwrap();
                let w = ev.j * ev.h1_prime - ev.j_prime * ev.h1;
                let expect = I / (z * z);
                assert!(
                    rel(w, expect) < 1e-10,
                    "wronskian off at z = {z}: rel {:.2e}",
                    rel(w, expect)
                );
            }
        }
    }

    #[test]
    fn hankel_sum_identity() {
        for &r in &[0.7, 5.0, 20.0, 50.0] {
            let ev = sph_bessel(nu(), c(r, 0.4)).unwrap();
            assert!(rel(ev.h1 + ev.h2, 2.0 * ev.j) < 1e-10);
        }
    }

    #[test]
    fn leading_asymptotic_behavior() {
        // |h1(z) z e^{-i(z - pi nu/2)} - (-i)| <= 2 A_1 / |z| for |z| >= 1e3.
        for &r in &[1e3, 1e4, 1e5] {
            let z = c(r, 0.0);
            let ev = sph_bessel(nu(), z).unwrap();
            let lead = ev.h1 * z * (-I * (z - PI * nu() / 2.0)).exp();
            assert!((lead + I).norm() <= 2.0 * coeff_a(1, nu()) / r);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(sph_bessel(nu(), c(0.0, 0.0)), Err(Error::Origin)));
        assert!(matches!(
            sph_bessel(-1.0, c(1.0, 0.0)),
            Err(Error::InvalidParameters(_))
        ));
        // nu = 0.5 makes the cylinder order integral in the series regime.
        assert!(matches!(
            sph_bessel(0.5, c(1.0, 0.0)),
            Err(Error::UnsupportedOrder(_))
        ));
        // Far outside the series' workable range the term budget trips.
        assert!(matches!(
            sph_bessel_in(nu(), c(500.0, 0.0), Regime::Series),
            Err(Error::NonConvergence { .. })
        ));
    }

    #[test]
    fn integer_order_asymptotics_are_exact() {
        // h1_0(z) = -i e^{iz}/z and j_0 = sin z / z; the expansion terminates.
        let z = c(50.0, 0.0);
        let ev = sph_bessel(0.0, z).unwrap();
        assert!(rel(ev.h1, -I * (I * z).exp() / z) < 1e-14);
        assert!(rel(ev.j, z.sin() / z) < 1e-13);
    }
}
