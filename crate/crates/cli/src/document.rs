use pdem_core::spectra::{ComparisonReport, Method, Spectrum};
use pdem_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::{Command, RunConfig};

/// Conventions every document records.
pub const NOTES: [&str; 5] = [
    "pseudo convention: V = -F^2 - i dF/dq + alpha0, with the imaginary unit on the derivative term",
    "adjoints are weighted: A^# = W^-1 A^* W with W = diag(M)",
    "the reduced Dirac operator has a plain -d^2/dx^2 leading term; eigenvalue target eps^2",
    "cosech-family bound levels are negative, E_n = -(|V2| - n - 1/2)^2, fixed by dense and shooting cross-checks",
    "Eckart levels use the standard superpotential formula; the literal variant is reported for comparison only",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelClass {
    Real,
    Pair,
    Unpaired,
    /// At or above the threshold.
    Continuum,
}

impl LevelClass {
    pub fn as_str(self) -> &'static str {
        match self {
            LevelClass::Real => "real",
            LevelClass::Pair => "pair",
            LevelClass::Unpaired => "unpaired",
            LevelClass::Continuum => "continuum",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenRow {
    pub index: usize,
    pub re: f64,
    pub im: f64,
    /// Backward error; absent above the threshold.
    pub residual: Option<f64>,
    pub class: LevelClass,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub method: Method,
    pub threshold: f64,
    pub im_tol: f64,
    pub real_levels: Vec<f64>,
    pub complex_pairs: Vec<(Complex64, Complex64)>,
    pub unpaired: Vec<Complex64>,
    pub max_residual: Option<f64>,
    pub eigenvalues: Vec<EigenRow>,
}

impl SpectrumReport {
    pub fn new(s: &Spectrum, method: Method) -> Self {
        let threshold = s.threshold.unwrap_or(f64::INFINITY);
        let tol = s.im_tol.unwrap_or(0.0);
        let paired = |z: &Complex64| s.complex_pairs.iter().any(|(a, b)| a == z || b == z);
        let rows: Vec<EigenRow> = s
            .eigenvalues
            .iter()
            .zip(&s.residual_norms)
            .enumerate()
            .map(|(index, (z, r))| {
                let class = if !(z.re < threshold) {
                    LevelClass::Continuum
                } else if z.im.abs() <= tol {
                    LevelClass::Real
                } else if paired(z) {
                    LevelClass::Pair
                } else {
                    LevelClass::Unpaired
                };
                EigenRow {
                    index,
                    re: z.re,
                    im: z.im,
                    residual: r.is_finite().then_some(*r),
                    class,
                }
            })
            .collect();
        let max_residual = rows.iter().filter_map(|r| r.residual).reduce(f64::max);
        Self {
            method,
            threshold,
            im_tol: tol,
            real_levels: s.real_levels.clone(),
            complex_pairs: s.complex_pairs.clone(),
            unpaired: s.unpaired.clone(),
            max_residual,
            eigenvalues: rows,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Gate {
    pub fn at_most(name: &str, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            value,
            tolerance,
            pass: value <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub h: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub frame: String,
    pub intertwining: Vec<ConvergenceRow>,
    /// Residual ratio between consecutive refinements.
    pub ratio: Option<f64>,
    pub observed_order: Option<f64>,
    /// Absent on grids that are not symmetric about 0.
    pub pt_residual: Option<f64>,
    /// Constraint residuals on the real axis; absent when `F` is singular there.
    pub constraint_w_identity: Option<f64>,
    pub constraint_w_slope: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRowReport {
    pub param: f64,
    pub count: usize,
    pub energies: Vec<f64>,
    pub complex_pairs: usize,
    pub analytic: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiracLevel {
    pub level: usize,
    pub eps: Option<f64>,
    pub lambda: Option<Complex64>,
    pub mismatch: Option<f64>,
    pub iterations: Option<usize>,
    pub residual_upper: Option<f64>,
    pub residual_lower: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<u64>,
    pub config: RunConfig,
    pub pass: bool,
    pub gates: Vec<Gate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comparison: Option<ComparisonReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comparison_as_printed: Option<ComparisonReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scan: Option<Vec<ScanRowReport>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dirac: Option<Vec<DiracLevel>>,
    pub notes: Vec<String>,
}

impl ResultDocument {
    pub fn new(config: RunConfig) -> Self {
        Self {
            command: config.command(),
            generated_at: None,
            config,
            pass: true,
            gates: Vec::new(),
            spectrum: None,
            comparison: None,
            comparison_as_printed: None,
            verification: None,
            scan: None,
            dirac: None,
            notes: NOTES.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn add_gate(&mut self, gate: Gate) {
        self.pass &= gate.pass;
        self.gates.push(gate);
    }
}
