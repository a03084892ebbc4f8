use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// One closed-form level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalyticLevel {
    pub n: usize,
    /// Quasi-parity `±1` for the two-tower families.
    pub epsilon: Option<i8>,
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticSpectrum {
    /// Real levels, ascending in energy.
    pub levels: Vec<AnalyticLevel>,
    /// Largest admissible `n` of the principal tower, if any level exists.
    pub n_max: Option<usize>,
    pub threshold: f64,
    /// Complex levels in the broken phase.
    pub complex_levels: Vec<Complex64>,
}

impl AnalyticSpectrum {
    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }

    fn sorted(mut self) -> Self {
        self.levels.sort_by(|a, b| a.energy.total_cmp(&b.energy));
        self
    }
}

/// Number of integers `n ≥ 0` with `n < bound`.
fn count_below(bound: f64) -> usize {
    if bound <= 0.0 {
        0
    } else {
        bound.ceil() as usize
    }
}

/// `E_n = -(|V₂| - n - 1/2)²` for `0 ≤ n < |V₂| - 1/2`; empty when `|V₂| ≤ 1/2`.
pub fn analytic_spectrum_ptpt(v2: f64) -> AnalyticSpectrum {
    let top = v2.abs() - 0.5;
    let count = count_below(top);
    let levels = (0..count)
        .map(|n| AnalyticLevel {
            n,
            epsilon: None,
            energy: -(top - n as f64).powi(2),
        })
        .collect();
    AnalyticSpectrum {
        levels,
        n_max: count.checked_sub(1),
        threshold: 0.0,
        complex_levels: Vec::new(),
    }
    .sorted()
}

/// The two quasi-parity towers of `V₁ cosech²(αT) - V₂ cosech(αT)coth(αT)`
/// for `H = -d² + V`:
///
/// `E_{n,ε} = -α² (A_ε - n)²`,
/// `A_ε + 1/2 = ½ [√(v₁ + 1/4 + |v₂|) + ε √(v₁ + 1/4 - |v₂|)]`, `vᵢ = Vᵢ/α²`,
///
/// with `0 ≤ n < Re A_ε`. When `v₁ + 1/4 < |v₂|` the second root is
/// imaginary and the levels come in conjugate pairs.
pub fn analytic_spectrum_pt_towers(v1: f64, v2: f64, alpha: f64) -> AnalyticSpectrum {
    let a2 = alpha * alpha;
    let base = v1 / a2 + 0.25;
    let plus = Complex64::new(base + v2.abs() / a2, 0.0).sqrt();
    let minus = Complex64::new(base - v2.abs() / a2, 0.0).sqrt();
    let mut levels = Vec::new();
    let mut complex_levels = Vec::new();
    let mut n_max = None;
    for eps in [1i8, -1] {
        let a = 0.5 * (plus + f64::from(eps) * minus) - 0.5;
        let count = count_below(a.re);
        for n in 0..count {
            let e = -a2 * (a - n as f64).powi(2);
            if a.im == 0.0 {
                levels.push(AnalyticLevel {
                    n,
                    epsilon: Some(eps),
                    energy: e.re,
                });
            } else {
                complex_levels.push(e);
            }
        }
        if eps == 1 && count > 0 {
            n_max = Some(count - 1);
        }
    }
    AnalyticSpectrum {
        levels,
        n_max,
        threshold: 0.0,
        complex_levels,
    }
    .sorted()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EckartVariant {
    /// `E_n = A² - (A+n)² + B²/A² - B²/(A+n)²`.
    Standard,
    /// `E_n = (A+n)² - A² + B²/A² - B²(A-n)²`, evaluated literally.
    AsPrinted,
}

/// Eckart levels for `0 ≤ n < √B - A`; threshold `A² + B²/A² - 2B`.
pub fn analytic_spectrum_eckart(a: f64, b: f64, variant: EckartVariant) -> AnalyticSpectrum {
    let count = count_below(b.sqrt() - a);
    let levels = (0..count)
        .map(|n| {
            let an = a + n as f64;
            let energy = match variant {
                EckartVariant::Standard => a * a - an * an + b * b / (a * a) - b * b / (an * an),
                EckartVariant::AsPrinted => {
                    an * an - a * a + b * b / (a * a) - b * b * (a - n as f64).powi(2)
                }
            };
            AnalyticLevel {
                n,
                epsilon: None,
                energy,
            }
        })
        .collect();
    AnalyticSpectrum {
        levels,
        n_max: count.checked_sub(1),
        threshold: a * a + b * b / (a * a) - 2.0 * b,
        complex_levels: Vec::new(),
    }
    .sorted()
}

/// One row of the level-crossing table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossingRow {
    pub v2: f64,
    pub count: usize,
    pub energies: Vec<f64>,
}

/// Bound-state counts of the single-tower family as `|V₂|` varies. The
/// count steps up each time `|V₂|` crosses `1/2, 3/2, 5/2, ...`.
pub fn level_crossing_report(v2_values: &[f64]) -> Vec<CrossingRow> {
    v2_values
        .iter()
        .map(|&v2| {
            let s = analytic_spectrum_ptpt(v2);
            CrossingRow {
                v2,
                count: s.levels.len(),
                energies: s.energies(),
            }
        })
        .collect()
}
