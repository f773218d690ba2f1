//! Assembled analysis reports and the deterministic text formats
//! (JSON reports, CSV tables) shared by the CLI and the browser demo.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coalescence::CoalescenceScan;
use crate::point::{CaseLabel, MatchingMatrix, SpectralPoint};
use crate::sphere::ModeSolution;
use crate::symmetry::{symmetry_report, SymmetryReport};
use crate::tolerance::Tolerances;

/// Everything the point-interaction analysis produces for one matrix.
/// Field order is fixed; serialization round-trips losslessly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input: MatchingMatrix,
    pub case: CaseLabel,
    pub det: Complex64,
    pub anomalous: bool,
    /// det B = 0: all formulas still evaluate, but the junction is singular.
    pub singular: bool,
    pub symmetries: SymmetryReport,
    pub spectrum: Vec<SpectralPoint>,
    pub version: String,
    pub tolerances: Tolerances,
}

/// Run the full analysis: case, determinant, symmetries, spectrum.
pub fn analyze(m: &MatchingMatrix, tol: &Tolerances) -> AnalysisReport {
    let (det, anomalous) = m.classify_anomalous_with(tol);
    AnalysisReport {
        input: *m,
        case: CaseLabel::of(m, tol),
        det,
        anomalous,
        singular: det.norm() <= tol.det,
        symmetries: symmetry_report(m, tol),
        spectrum: m.spectrum_with(tol),
        version: env!("CARGO_PKG_VERSION").to_string(),
        tolerances: *tol,
    }
}

/// One float with 12 significant digits, scientific notation.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Parse a complex literal: optional real part, optional imaginary part
/// suffixed `i`, e.g. `"3"`, `"2i"`, `"-1+4i"`, `"1.5e-3-2i"`, `"i"`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty complex literal".into());
    }
    let bad = |what: &str| format!("invalid complex literal {s:?}: {what}");

    if !s.ends_with('i') && !s.ends_with('I') {
        return s.parse::<f64>().map(Complex64::from).map_err(|_| bad("not a number"));
    }

    let body = &s[..s.len() - 1];
    // Find a +/- separating real and imaginary parts: not the leading sign
    // and not an exponent sign.
    let split = body
        .char_indices()
        .skip(1)
        .find(|&(idx, ch)| {
            (ch == '+' || ch == '-')
                && !matches!(body.as_bytes()[idx - 1], b'e' | b'E')
        })
        .map(|(idx, _)| idx);

    let (real_str, imag_str) = match split {
        Some(idx) => (&body[..idx], &body[idx..]),
        None => ("", body),
    };
    let re = if real_str.is_empty() {
        0.0
    } else {
        real_str.parse::<f64>().map_err(|_| bad("bad real part"))?
    };
    let im = match imag_str {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| bad("bad imaginary part"))?,
    };
    Ok(Complex64::new(re, im))
}

/// Parse a matrix spec of the form `"a=..,b=..,c=..,d=.."` with complex
/// literals as in [`parse_complex`]. All four entries are required.
pub fn parse_matrix_spec(spec: &str) -> Result<MatchingMatrix, String> {
    let mut entries: [Option<Complex64>; 4] = [None; 4];
    for field in spec.split(',') {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got {field:?}"))?;
        let slot = match key.trim() {
            "a" => 0,
            "b" => 1,
            "c" => 2,
            "d" => 3,
            other => return Err(format!("unknown coupling {other:?} (want a, b, c, d)")),
        };
        if entries[slot].is_some() {
            return Err(format!("duplicate coupling {:?}", key.trim()));
        }
        entries[slot] = Some(parse_complex(value)?);
    }
    match entries {
        [Some(a), Some(b), Some(c), Some(d)] => Ok(MatchingMatrix::new(a, b, c, d)),
        _ => Err("matrix spec must set all of a, b, c, d".into()),
    }
}

/// CSV for a coalescence sweep. Columns:
/// `eps,re_k_plus,im_k_plus,kind_plus,re_k_minus,im_k_minus,kind_minus`.
pub fn coalescence_csv(scan: &CoalescenceScan) -> String {
    let mut out =
        String::from("eps,re_k_plus,im_k_plus,kind_plus,re_k_minus,im_k_minus,kind_minus\n");
    for row in &scan.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            sig12(row.eps),
            sig12(row.plus.k.re),
            sig12(row.plus.k.im),
            row.plus.kind,
            sig12(row.minus.k.re),
            sig12(row.minus.k.im),
            row.minus.kind,
        ));
    }
    out
}

/// CSV for a mode table, in the CLI's boundary units (nm, cm^-1).
/// The `lambda_exact_nm` field is empty for unrefined rows.
pub fn modes_csv(modes: &[ModeSolution]) -> String {
    let mut out = String::from("m,lambda_pert_nm,lambda_exact_nm,g0_cm1,x,eta,kappa\n");
    for s in modes {
        let exact = s
            .lambda_exact
            .map(|l| sig12(l * 1e9))
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            s.m,
            sig12(s.lambda_pert * 1e9),
            exact,
            sig12(s.g0 / 100.0),
            sig12(s.x),
            sig12(s.eta),
            sig12(s.kappa),
        ));
    }
    out
}

/// CSV for a reflection scan: `lambda_nm,R`.
pub fn reflection_csv(series: &[(f64, f64)]) -> String {
    let mut out = String::from("lambda_nm,R\n");
    for (lambda, r) in series {
        out.push_str(&format!("{},{}\n", sig12(lambda * 1e9), sig12(*r)));
    }
    out
}
