use serde::{Deserialize, Serialize};

/// Base factors for the classification tolerances.
///
/// All closed forms in this crate are evaluated to machine precision, so the
/// tolerances only absorb rounding:
///
/// * real-axis / zero classification of a root k uses `class * (1 + |k|)`,
/// * the anomaly test compares `|det B - 1|` against `det`,
/// * the double-root test compares `|mu^2 - nu|` against `disc * (1 + |mu|^2)`,
/// * symmetry residuals are compared against `sym * (1 + max|B_ij|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub class: f64,
    pub det: f64,
    pub disc: f64,
    pub sym: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            class: 1e-9,
            det: 1e-9,
            disc: 1e-9,
            sym: 1e-10,
        }
    }
}

impl Tolerances {
    /// Scaled classification tolerance for a wavenumber of magnitude `k_abs`.
    pub fn class_at(&self, k_abs: f64) -> f64 {
        self.class * (1.0 + k_abs)
    }

    /// Scaled double-root tolerance for a quadratic with parameter `mu`.
    pub fn disc_at(&self, mu_abs: f64) -> f64 {
        self.disc * (1.0 + mu_abs * mu_abs)
    }

    /// Scaled symmetry tolerance for a matrix with max-norm `b_max`.
    pub fn sym_at(&self, b_max: f64) -> f64 {
        self.sym * (1.0 + b_max)
    }
}
