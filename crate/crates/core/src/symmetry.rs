//! Parity, time-reversal, and combined PT invariance of a matching matrix,
//! and the explicit construction of the PT-symmetric family.
//!
//! The operator conditions are `B s3 B = s3` (parity), `B` real
//! (time reversal), and `B* s3 B = s3` (PT), with `s3 = diag(1, -1)` and
//! `B*` the entrywise conjugate.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::point::{CaseLabel, MatchingMatrix, SpectralPoint};
use crate::tolerance::Tolerances;

/// Angular tolerance for the `delta = alpha + pi (mod 2 pi)` test.
const ANGLE_TOL: f64 = 1e-10;

/// A sign parameter, +1 or -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Parameters generating a PT-symmetric matching matrix:
///
/// `a = sqrt(1 + e1 b c) e^{i alpha}`, `b = e1 e2 b e^{i(alpha+delta)/2}`,
/// `c = e2 c e^{i(alpha+delta)/2}`, `d = sqrt(1 + e1 b c) e^{i delta}`.
///
/// Constraints: `b, c >= 0`, and `e1 = +1` whenever `b c >= 1` (so the square
/// root argument stays nonnegative).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PtParameters {
    pub alpha: f64,
    pub delta: f64,
    pub b: f64,
    pub c: f64,
    pub eps1: Sign,
    pub eps2: Sign,
}

impl PtParameters {
    /// Validates the constraints; angles are reduced into `[0, 2 pi)`.
    pub fn new(alpha: f64, delta: f64, b: f64, c: f64, eps1: Sign, eps2: Sign) -> Result<Self> {
        if !(alpha.is_finite() && delta.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::InvalidParameters("non-finite parameter".into()));
        }
        if b < 0.0 || c < 0.0 {
            return Err(Error::InvalidParameters(format!(
                "b and c must be nonnegative, got b = {b}, c = {c}"
            )));
        }
        if b * c >= 1.0 && eps1 == Sign::Minus {
            return Err(Error::InvalidParameters(format!(
                "eps1 must be +1 when b*c >= 1 (b*c = {})",
                b * c
            )));
        }
        Ok(Self {
            alpha: alpha.rem_euclid(TAU),
            delta: delta.rem_euclid(TAU),
            b,
            c,
            eps1,
            eps2,
        })
    }
}

/// Outcome of the three symmetry tests on one matrix.
///
/// Each flag is true exactly when the corresponding operator-condition
/// residual is below the scaled tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub p_symmetric: bool,
    pub t_symmetric: bool,
    pub pt_symmetric: bool,
    /// Max-norm defects of the P, T, PT conditions, in that order.
    pub residuals: [f64; 3],
}

fn max4(a: f64, b: f64, c: f64, d: f64) -> f64 {
    a.max(b).max(c).max(d)
}

/// Residual of `B s3 B = s3` in the max norm.
pub fn p_residual(m: &MatchingMatrix) -> f64 {
    let (a, b, c, d) = (m.a, m.b, m.c, m.d);
    max4(
        (a * a - b * c - 1.0).norm(),
        (b * (a - d)).norm(),
        (c * (a - d)).norm(),
        (c * b - d * d + 1.0).norm(),
    )
}

/// Residual of the entrywise parity conditions
/// `a^2 - bc = 1`, `d = +-a`, `b(a-d) = c(a-d) = 0`.
///
/// Equivalent to [`p_residual`] as a condition; kept as an independent
/// formulation so the two can be checked against each other.
pub fn p_residual_entrywise(m: &MatchingMatrix) -> f64 {
    let (a, b, c, d) = (m.a, m.b, m.c, m.d);
    max4(
        (a * a - b * c - 1.0).norm(),
        (d - a).norm().min((d + a).norm()),
        (b * (a - d)).norm(),
        (c * (a - d)).norm(),
    )
}

/// Residual of the time-reversal condition (`B` real).
pub fn t_residual(m: &MatchingMatrix) -> f64 {
    max4(m.a.im.abs(), m.b.im.abs(), m.c.im.abs(), m.d.im.abs())
}

/// Residual of `B* s3 B = s3` in the max norm.
pub fn pt_residual(m: &MatchingMatrix) -> f64 {
    let (a, b, c, d) = (m.a, m.b, m.c, m.d);
    let (ac, bc_, cc, dc) = (a.conj(), b.conj(), c.conj(), d.conj());
    max4(
        (ac * a - bc_ * c - 1.0).norm(),
        (ac * b - bc_ * d).norm(),
        (cc * a - dc * c).norm(),
        (cc * b - dc * d + 1.0).norm(),
    )
}

/// Parity test: flag plus the operator-condition residual.
pub fn check_p(m: &MatchingMatrix, tol: &Tolerances) -> (bool, f64) {
    let r = p_residual(m);
    (r <= tol.sym_at(m.max_norm()), r)
}

/// Time-reversal test.
pub fn check_t(m: &MatchingMatrix, tol: &Tolerances) -> (bool, f64) {
    let r = t_residual(m);
    (r <= tol.sym_at(m.max_norm()), r)
}

/// PT test.
pub fn check_pt(m: &MatchingMatrix, tol: &Tolerances) -> (bool, f64) {
    let r = pt_residual(m);
    (r <= tol.sym_at(m.max_norm()), r)
}

/// Run all three symmetry tests.
pub fn symmetry_report(m: &MatchingMatrix, tol: &Tolerances) -> SymmetryReport {
    let (p, rp) = check_p(m, tol);
    let (t, rt) = check_t(m, tol);
    let (pt, rpt) = check_pt(m, tol);
    SymmetryReport {
        p_symmetric: p,
        t_symmetric: t,
        pt_symmetric: pt,
        residuals: [rp, rt, rpt],
    }
}

/// Construct the PT-symmetric matching matrix for the given parameters.
///
/// The result satisfies `B* s3 B = s3` exactly (up to rounding) and has
/// `det B = e^{i(alpha+delta)}`, so the interaction is anomalous unless
/// `alpha + delta` is an integer multiple of `2 pi`.
pub fn build_pt(p: &PtParameters) -> MatchingMatrix {
    let root = (1.0 + p.eps1.value() * p.b * p.c).sqrt();
    let half = Complex64::from_polar(1.0, (p.alpha + p.delta) / 2.0);
    MatchingMatrix::new(
        root * Complex64::from_polar(1.0, p.alpha),
        p.eps1.value() * p.eps2.value() * p.b * half,
        p.eps2.value() * p.c * half,
        root * Complex64::from_polar(1.0, p.delta),
    )
}

/// The closed-form spectral family a PT-symmetric interaction belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum PtFamily {
    /// `eps1 = +1`, `delta = alpha + pi (mod 2 pi)`, `c > 0`:
    /// a spectral singularity at `k = sqrt(c/b)`. `sign` is the sign
    /// `(-1)^l eps2` appearing in front of the off-diagonal entries.
    SpectralSingularity { k: f64, sign: i8 },
    /// `mu < 0`, `mu^2 - nu > 0`: the quadratic has two roots on the
    /// imaginary axis with real energies `-(mu +- sqrt(mu^2-nu))^2`.
    /// Both are bound states when `nu > 0`; for `nu <= 0` one of them is a
    /// growing solution (see the classified `points`).
    RealEnergyPair { energies: [f64; 2] },
    /// `mu < 0`, `mu^2 = nu`: exceptional point, a single order-2 bound
    /// state with real negative energy `-mu^2`.
    ExceptionalPoint { energy: f64 },
    /// `mu < 0`, `mu^2 - nu < 0`: a pair of bound states with
    /// complex-conjugate energies.
    ConjugatePair { energies: [Complex64; 2] },
    /// Case II.a with `eps2 cos((alpha-delta)/2) < 0`: one bound state with
    /// real negative energy `-c^2 sec^2((alpha-delta)/2) / 4`.
    BoundState { energy: f64 },
    /// Case II.b with `c = 0`: `M22` vanishes identically; a spectral
    /// singularity for every real k (the paper states `k` real positive in
    /// one place and all real `k` in another) and a bound state for every
    /// `Im k > 0`.
    AllRealK,
    /// No spectral singularity or bound state.
    Empty,
}

/// Spectral classification of a PT-symmetric point interaction.
///
/// `points` always coincides with `spectrum()` of the constructed matrix;
/// `family` carries the closed-form case analysis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PtClassification {
    pub matrix: MatchingMatrix,
    pub case: CaseLabel,
    /// Real quadratic parameters `mu`, `nu` (Case I only).
    pub mu: Option<f64>,
    pub nu: Option<f64>,
    pub family: PtFamily,
    pub points: Vec<SpectralPoint>,
}

/// True when `delta = alpha + pi (mod 2 pi)` within the angular tolerance.
fn is_antiperiodic(alpha: f64, delta: f64) -> bool {
    let r = (delta - alpha - PI).rem_euclid(TAU);
    r.min(TAU - r) <= ANGLE_TOL
}

/// Classify the spectrum of the PT-symmetric interaction built from `p`.
pub fn pt_classify(p: &PtParameters, tol: &Tolerances) -> PtClassification {
    let m = build_pt(p);
    let points = m.spectrum_with(tol);
    let case = CaseLabel::of(&m, tol);
    let half = (p.alpha - p.delta) / 2.0;

    if p.b > 0.0 {
        // Case I: mu and nu are real by construction.
        let mu_c = (m.a + m.d) / (2.0 * m.b);
        let nu_c = m.c / m.b;
        debug_assert!(mu_c.im.abs() <= 1e-10 * (1.0 + mu_c.norm()));
        debug_assert!(nu_c.im.abs() <= 1e-10 * (1.0 + nu_c.norm()));
        let (mu, nu) = (mu_c.re, nu_c.re);

        let family = if p.eps1 == Sign::Plus && is_antiperiodic(p.alpha, p.delta) && p.c > 0.0 {
            let sign = if ((p.delta - p.alpha) / 2.0).sin() >= 0.0 {
                p.eps2.value()
            } else {
                -p.eps2.value()
            };
            PtFamily::SpectralSingularity {
                k: (p.c / p.b).sqrt(),
                sign: sign as i8,
            }
        } else if mu < 0.0 {
            let disc = mu * mu - nu;
            if disc.abs() <= tol.disc_at(mu.abs()) {
                PtFamily::ExceptionalPoint { energy: -mu * mu }
            } else if disc > 0.0 {
                let s = disc.sqrt();
                // Energies are the squares of the roots -i(mu +- s); the
                // cross term carries a factor 2.
                PtFamily::RealEnergyPair {
                    energies: [-(mu + s) * (mu + s), -(mu - s) * (mu - s)],
                }
            } else {
                let s = (-disc).sqrt();
                let e = Complex64::new(nu - 2.0 * mu * mu, -2.0 * mu * s);
                PtFamily::ConjugatePair {
                    energies: [e, e.conj()],
                }
            }
        } else {
            PtFamily::Empty
        };
        return PtClassification {
            matrix: m,
            case,
            mu: Some(mu),
            nu: Some(nu),
            family,
            points,
        };
    }

    // Case II: b = 0 so the trace is 2 cos((alpha-delta)/2) e^{i(alpha+delta)/2}.
    let cos_half = half.cos();
    let family = if cos_half.abs() <= ANGLE_TOL {
        // II.b
        if p.c == 0.0 {
            PtFamily::AllRealK
        } else {
            PtFamily::Empty
        }
    } else if p.c == 0.0 {
        // M22 is a nonzero constant.
        PtFamily::Empty
    } else if p.eps2.value() * cos_half < 0.0 {
        let half_k = p.c / (2.0 * cos_half);
        PtFamily::BoundState {
            energy: -half_k * half_k,
        }
    } else {
        PtFamily::Empty
    };
    PtClassification {
        matrix: m,
        case,
        mu: None,
        nu: None,
        family,
        points,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::SpectralKind;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn parity_of_delta_interaction() {
        // Any complex coupling: a^2 - bc = 1, d = a, b = 0.
        for z in [c(2.0, 0.0), c(0.0, 2.0), c(-1.3, 0.7)] {
            let (ok, r) = check_p(&MatchingMatrix::delta(z), &tol());
            assert!(ok, "residual {r:.3e}");
            assert!(p_residual_entrywise(&MatchingMatrix::delta(z)) <= 1e-12);
        }
        let (ok, _) = check_p(&MatchingMatrix::identity(), &tol());
        assert!(ok);
    }

    #[test]
    fn parity_fails_for_all_ones() {
        let m = MatchingMatrix::new(c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0));
        let (ok, r) = check_p(&m, &tol());
        assert!(!ok);
        // B s3 B = 0, so the defect is exactly 1.
        assert_abs_diff_eq!(r, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn time_reversal_examples() {
        let real = MatchingMatrix::new(c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0));
        assert!(check_t(&real, &tol()).0);

        let imag = MatchingMatrix::delta(c(0.0, 2.0));
        assert!(!check_t(&imag, &tol()).0);

        let nearly = MatchingMatrix::new(c(1.0, 1e-15), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0));
        assert!(check_t(&nearly, &tol()).0);
    }

    #[test]
    fn pt_examples() {
        assert!(check_pt(&MatchingMatrix::identity(), &tol()).0);

        let r2 = 2.0_f64.sqrt();
        let m = MatchingMatrix::new(c(r2, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(-r2, 0.0));
        let (ok, r) = check_pt(&m, &tol());
        assert!(ok, "residual {r:.3e}");

        let ones = MatchingMatrix::new(c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0));
        assert!(!check_pt(&ones, &tol()).0);
    }

    #[test]
    fn build_pt_identity() {
        let p = PtParameters::new(0.0, 0.0, 0.0, 0.0, Sign::Plus, Sign::Plus).unwrap();
        let m = build_pt(&p);
        assert_abs_diff_eq!((m.a - 1.0).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.b.norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.c.norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((m.d - 1.0).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn build_pt_spectral_singularity_family() {
        let p = PtParameters::new(0.0, PI, 1.0, 1.0, Sign::Plus, Sign::Plus).unwrap();
        let m = build_pt(&p);
        let r2 = 2.0_f64.sqrt();
        assert_abs_diff_eq!((m.a - r2).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((m.b - c(0.0, 1.0)).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((m.c - c(0.0, 1.0)).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((m.d + r2).norm(), 0.0, epsilon = 1e-15);
        assert!(check_pt(&m, &tol()).0);
    }

    #[test]
    fn build_pt_negative_eps1() {
        let p = PtParameters::new(0.0, 0.0, 1.0, 0.5, Sign::Minus, Sign::Plus).unwrap();
        let m = build_pt(&p);
        let r = 0.5_f64.sqrt();
        assert_abs_diff_eq!((m.a - r).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((m.b + 1.0).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((m.c - 0.5).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((m.d - r).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((m.det() - 1.0).norm(), 0.0, epsilon = 1e-15);
        assert!(check_pt(&m, &tol()).0);
    }

    #[test]
    fn pt_parameters_validation() {
        assert!(PtParameters::new(0.0, 0.0, -1.0, 0.0, Sign::Plus, Sign::Plus).is_err());
        assert!(PtParameters::new(0.0, 0.0, 2.0, 1.0, Sign::Minus, Sign::Plus).is_err());
        assert!(PtParameters::new(0.0, 0.0, 2.0, 1.0, Sign::Plus, Sign::Plus).is_ok());
    }

    #[test]
    fn classify_spectral_singularity() {
        let p = PtParameters::new(0.0, PI, 1.0, 1.0, Sign::Plus, Sign::Plus).unwrap();
        let cl = pt_classify(&p, &tol());
        match cl.family {
            PtFamily::SpectralSingularity { k, sign } => {
                assert_abs_diff_eq!(k, 1.0, epsilon = 1e-14);
                assert_eq!(sign, 1);
            }
            other => panic!("expected SS family, got {other:?}"),
        }
        assert_eq!(cl.points.len(), 2);
        assert!(cl
            .points
            .iter()
            .any(|pt| pt.kind == SpectralKind::SpectralSingularity
                && (pt.k - 1.0).norm() <= 1e-12));
    }

    #[test]
    fn classify_real_energy_pair() {
        // mu = -sqrt(0.5), nu = -0.5, mu^2 - nu = 1 > 0. Energies are the
        // squared roots of the quadratic (oracle: direct root computation),
        // and one root is a growing solution since nu < 0.
        let p = PtParameters::new(0.0, 0.0, 1.0, 0.5, Sign::Minus, Sign::Plus).unwrap();
        let cl = pt_classify(&p, &tol());
        assert_abs_diff_eq!(cl.mu.unwrap(), -0.5_f64.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(cl.nu.unwrap(), -0.5, epsilon = 1e-14);
        match cl.family {
            PtFamily::RealEnergyPair { mut energies } => {
                energies.sort_by(f64::total_cmp);
                assert_abs_diff_eq!(energies[0], -2.914213562373095, epsilon = 1e-12);
                assert_abs_diff_eq!(energies[1], -0.085786437626905, epsilon = 1e-12);
            }
            other => panic!("expected real pair, got {other:?}"),
        }
        let kinds: Vec<_> = cl.points.iter().map(|pt| pt.kind).collect();
        assert!(kinds.contains(&SpectralKind::BoundState));
        assert!(kinds.contains(&SpectralKind::GrowingSolution));
    }

    #[test]
    fn classify_exceptional_point() {
        let p = PtParameters::new(1.5 * PI, 0.0, 1.0, 1.0, Sign::Plus, Sign::Plus).unwrap();
        let cl = pt_classify(&p, &tol());
        assert_abs_diff_eq!(cl.mu.unwrap(), -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(cl.nu.unwrap(), 1.0, epsilon = 1e-12);
        match cl.family {
            PtFamily::ExceptionalPoint { energy } => {
                assert_abs_diff_eq!(energy, -1.0, epsilon = 1e-12);
            }
            other => panic!("expected exceptional point, got {other:?}"),
        }
        assert_eq!(cl.points.len(), 1);
        assert_eq!(cl.points[0].order, 2);
        assert_eq!(cl.points[0].kind, SpectralKind::BoundState);
    }

    #[test]
    fn classify_case_iia_bound_state() {
        // b = 0, alpha - delta = 0: bound state iff eps2 < 0, energy -c^2/4.
        let p = PtParameters::new(0.0, 0.0, 0.0, 2.0, Sign::Plus, Sign::Minus).unwrap();
        let cl = pt_classify(&p, &tol());
        assert_eq!(cl.case, CaseLabel::IIa);
        match cl.family {
            PtFamily::BoundState { energy } => {
                assert_abs_diff_eq!(energy, -1.0, epsilon = 1e-14);
            }
            other => panic!("expected bound state, got {other:?}"),
        }
        assert_eq!(cl.points.len(), 1);
        assert_eq!(cl.points[0].kind, SpectralKind::BoundState);

        let p = PtParameters::new(0.0, 0.0, 0.0, 2.0, Sign::Plus, Sign::Plus).unwrap();
        let cl = pt_classify(&p, &tol());
        assert_eq!(cl.family, PtFamily::Empty);
        assert_eq!(cl.points[0].kind, SpectralKind::GrowingSolution);
    }

    #[test]
    fn classify_case_iib() {
        // b = 0, delta = alpha + pi, c = 0: M22 vanishes identically.
        let p = PtParameters::new(PI / 2.0, 1.5 * PI, 0.0, 0.0, Sign::Plus, Sign::Plus).unwrap();
        let cl = pt_classify(&p, &tol());
        assert_eq!(cl.case, CaseLabel::IIb);
        assert_eq!(cl.family, PtFamily::AllRealK);
        // alpha = pi/2 makes det = e^{i(alpha+delta)} = 1: not anomalous.
        let (_, anomalous) = cl.matrix.classify_anomalous();
        assert!(!anomalous);
    }

    #[test]
    fn family_energies_match_spectrum_roots() {
        let p = PtParameters::new(0.3, 5.1, 0.8, 0.2, Sign::Minus, Sign::Minus).unwrap();
        let cl = pt_classify(&p, &tol());
        if let PtFamily::RealEnergyPair { energies } = cl.family {
            let mut from_points: Vec<f64> = cl.points.iter().map(|pt| (pt.k * pt.k).re).collect();
            from_points.sort_by(f64::total_cmp);
            let mut expect = energies.to_vec();
            expect.sort_by(f64::total_cmp);
            for (e, f) in expect.iter().zip(&from_points) {
                assert_abs_diff_eq!(e, f, epsilon = 1e-10);
            }
        }
    }
}
