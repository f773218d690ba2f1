//! Point interactions on the line and the spectrum of their transfer matrix.
//!
//! A point interaction is defined by the matching condition
//! `Psi_+(0) = B Psi_-(0)` on the two-component wave function
//! `(psi, psi')`. Spectral singularities and bound states are the zeros of
//! the `M22` entry of the transfer matrix, which for this interaction reduce
//! to the roots of the quadratic `b k^2 + i(a+d) k - c = 0`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// The 2x2 complex matrix of couplings defining a point interaction.
///
/// Entries are dimensionless here; in the physical reading `b` carries units
/// of length and `c` of inverse length. Any complex entries are allowed,
/// including `det = 0` (flagged as singular in reports, all formulas still
/// evaluate).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchingMatrix {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl MatchingMatrix {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self { a, b, c, d }
    }

    /// Trivial junction: free propagation, empty spectrum.
    pub fn identity() -> Self {
        Self::new(1.0.into(), 0.0.into(), 0.0.into(), 1.0.into())
    }

    /// Delta-function potential with (possibly complex) coupling `z`:
    /// `a = d = 1`, `b = 0`, `c = z`.
    pub fn delta(z: Complex64) -> Self {
        Self::new(1.0.into(), 0.0.into(), z, 1.0.into())
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    /// Largest entry magnitude; the scale used by symmetry tolerances.
    pub fn max_norm(&self) -> f64 {
        self.a
            .norm()
            .max(self.b.norm())
            .max(self.c.norm())
            .max(self.d.norm())
    }

    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det.norm() == 0.0 {
            return None;
        }
        Some(Self::new(self.d / det, -self.b / det, -self.c / det, self.a / det))
    }

    /// Determinant together with the anomaly flag.
    ///
    /// Interactions with `det B != 1` cannot arise as limits of piecewise
    /// continuous potentials and are called anomalous.
    pub fn classify_anomalous(&self) -> (Complex64, bool) {
        self.classify_anomalous_with(&Tolerances::default())
    }

    pub fn classify_anomalous_with(&self, tol: &Tolerances) -> (Complex64, bool) {
        let det = self.det();
        (det, (det - 1.0).norm() > tol.det)
    }

    /// Transfer matrix `M = N^-1 B N` at wavenumber `k`.
    pub fn transfer_matrix(&self, k: Complex64) -> Result<TransferMatrix> {
        let tol = Tolerances::default();
        if k.norm() <= tol.class_at(k.norm()) {
            return Err(Error::DegenerateWavenumber(k.norm()));
        }
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let pref = -I / (2.0 * k);
        let bk2 = b * k * k;
        let sum = I * (a + d) * k;
        let dif = I * (a - d) * k;
        Ok(TransferMatrix {
            m11: pref * (-bk2 + sum + c),
            m12: pref * (bk2 + dif + c),
            m21: pref * (-bk2 + dif - c),
            m22: pref * (bk2 + sum - c),
            k,
        })
    }

    /// The `M22` entry alone: `(-i/2k) (b k^2 + i(a+d) k - c)`.
    pub fn m22(&self, k: Complex64) -> Result<Complex64> {
        let tol = Tolerances::default();
        if k.norm() <= tol.class_at(k.norm()) {
            return Err(Error::DegenerateWavenumber(k.norm()));
        }
        Ok(-I / (2.0 * k) * (self.b * k * k + I * (self.a + self.d) * k - self.c))
    }

    /// Map left plane-wave amplitudes through the junction.
    pub fn propagate(&self, k: Complex64, left: &AmplitudePair) -> Result<AmplitudePair> {
        Ok(self.transfer_matrix(k)?.apply(left))
    }

    /// All roots of `b k^2 + i(a+d) k - c = 0`, classified.
    pub fn spectrum(&self) -> Vec<SpectralPoint> {
        self.spectrum_with(&Tolerances::default())
    }

    /// See [`MatchingMatrix::spectrum`]; tolerances control the double-root
    /// detection and the kind classification.
    ///
    /// Case split follows the structure of the couplings exactly:
    /// `b != 0` gives the full quadratic (both branches always returned),
    /// `b = 0, a+d != 0` the single root `-ic/(a+d)`, and `b = 0, a+d = 0`
    /// either an empty spectrum (`c != 0`) or the degenerate interaction
    /// whose `M22` vanishes identically (`c = 0`), reported as
    /// [`SpectralKind::AllRealK`].
    pub fn spectrum_with(&self, tol: &Tolerances) -> Vec<SpectralPoint> {
        let zero = Complex64::new(0.0, 0.0);
        if self.b != zero {
            let mu = (self.a + self.d) / (2.0 * self.b);
            let nu = self.c / self.b;
            let disc = mu * mu - nu;
            if disc.norm() <= tol.disc_at(mu.norm()) {
                // Double root k = -i mu (Case I.c).
                let k = -I * mu;
                return vec![SpectralPoint::new(k, classify_wavenumber(k, tol), 2)];
            }
            // Numerically stable quadratic: pick the larger root first and
            // recover the companion from the product k1 k2 = -nu.
            let s = disc.sqrt();
            let big = if (mu.conj() * s).re >= 0.0 { mu + s } else { mu - s };
            let k1 = -I * big;
            let k2 = if k1 == zero { zero } else { -nu / k1 };
            let mut out: Vec<SpectralPoint> = [k1, k2]
                .into_iter()
                .map(|k| SpectralPoint::new(k, classify_wavenumber(k, tol), 1))
                .collect();
            // Deterministic ordering: by (re, im).
            out.sort_by(|p, q| {
                (p.k.re, p.k.im)
                    .partial_cmp(&(q.k.re, q.k.im))
                    .expect("finite roots")
            });
            return out;
        }
        if self.trace() != zero {
            // Case II.a: linear equation i(a+d)k = c.
            if self.c == zero {
                // M22 = (a+d)/2 never vanishes; the k = 0 root is cancelled
                // by the 1/k prefactor.
                return Vec::new();
            }
            let k = -I * self.c / self.trace();
            return vec![SpectralPoint::new(k, classify_wavenumber(k, tol), 1)];
        }
        // Case II.b: b = 0, a + d = 0.
        if self.c == zero {
            // B = a sigma_3, M = a sigma_1: M22 vanishes identically.
            return vec![SpectralPoint::new(zero, SpectralKind::AllRealK, 1)];
        }
        Vec::new()
    }
}

/// The 2x2 matrix mapping left plane-wave amplitudes `(A-, B-)` to right
/// amplitudes `(A+, B+)` across the junction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransferMatrix {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
    pub k: Complex64,
}

impl TransferMatrix {
    /// Equals `det B`; unimodular only for non-anomalous interactions.
    pub fn det(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn apply(&self, amp: &AmplitudePair) -> AmplitudePair {
        AmplitudePair {
            a: self.m11 * amp.a + self.m12 * amp.b,
            b: self.m21 * amp.a + self.m22 * amp.b,
        }
    }
}

/// Plane-wave coefficients: `a` multiplies `e^{ikx}`, `b` multiplies `e^{-ikx}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmplitudePair {
    pub a: Complex64,
    pub b: Complex64,
}

impl AmplitudePair {
    pub fn new(a: Complex64, b: Complex64) -> Self {
        Self { a, b }
    }
}

/// What a root of the quadratic means for the spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralKind {
    /// Real nonzero k: reflection and transmission diverge (zero-width
    /// resonance, lasing threshold).
    SpectralSingularity,
    /// Im k > 0: square-integrable eigenfunction.
    BoundState,
    /// Im k < 0: solution growing exponentially as x -> +-infinity.
    GrowingSolution,
    /// Root of the quadratic at k ~ 0 where `M22` itself does not vanish
    /// (the 1/k prefactor cancels only one factor); never a spectral point.
    ThresholdArtifact,
    /// `M22` vanishes identically (b = 0, a+d = 0, c = 0): a spectral
    /// singularity for every real k and a bound state for every Im k > 0.
    AllRealK,
}

impl std::fmt::Display for SpectralKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Self::SpectralSingularity => "spectral_singularity",
            Self::BoundState => "bound_state",
            Self::GrowingSolution => "growing_solution",
            Self::ThresholdArtifact => "threshold_artifact",
            Self::AllRealK => "all_real_k",
        };
        f.write_str(s)
    }
}

/// One classified root. `order` is 2 exactly when the quadratic's
/// discriminant vanishes within tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralPoint {
    pub k: Complex64,
    pub kind: SpectralKind,
    pub order: u8,
}

impl SpectralPoint {
    pub fn new(k: Complex64, kind: SpectralKind, order: u8) -> Self {
        Self { k, kind, order }
    }
}

/// Which branch of the case analysis a matching matrix falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseLabel {
    /// `b != 0`, generic quadratic.
    I,
    /// `b != 0`, trace zero: `k = +-sqrt(nu)`.
    Ia,
    /// `b != 0`, `c = 0`: roots `0` and `-2i mu`.
    Ib,
    /// `b != 0`, double root (`mu^2 = nu`).
    Ic,
    /// `b = 0`, trace nonzero: single root.
    IIa,
    /// `b = 0`, trace zero: `M22` constant or identically zero.
    IIb,
}

impl CaseLabel {
    /// The double-root test uses `tol.disc`; the zero tests on `b`, the
    /// trace, and `c` are structural (exact).
    pub fn of(m: &MatchingMatrix, tol: &Tolerances) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        if m.b == zero {
            return if m.trace() == zero { Self::IIb } else { Self::IIa };
        }
        let mu = m.trace() / (2.0 * m.b);
        let nu = m.c / m.b;
        if (mu * mu - nu).norm() <= tol.disc_at(mu.norm()) {
            Self::Ic
        } else if m.trace() == zero {
            Self::Ia
        } else if m.c == zero {
            Self::Ib
        } else {
            Self::I
        }
    }
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::I => "I",
            Self::Ia => "Ia",
            Self::Ib => "Ib",
            Self::Ic => "Ic",
            Self::IIa => "IIa",
            Self::IIb => "IIb",
        })
    }
}

/// Classify a wavenumber by its position relative to the real axis.
///
/// Both signs of real k are classified as spectral singularities; physical
/// filtering to k > 0 is left to the caller.
pub fn classify_wavenumber(k: Complex64, tol: &Tolerances) -> SpectralKind {
    let t = tol.class_at(k.norm());
    if k.norm() <= t {
        SpectralKind::ThresholdArtifact
    } else if k.im.abs() <= t && k.re.abs() > t {
        SpectralKind::SpectralSingularity
    } else if k.im > t {
        SpectralKind::BoundState
    } else if k.im < -t {
        SpectralKind::GrowingSolution
    } else {
        // |re| <= t and |im| <= t but |k| > t: still a near-zero root.
        SpectralKind::ThresholdArtifact
    }
}
