//! Parameter scans: one independent spectrum per parameter value.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::models::{evaluate_model, PotentialModel};
use crate::numerics::Grid;
use crate::operators::discretize_schrodinger_q;
use crate::parallel::{self, Execution};
use crate::spectra::{classify_spectrum, eig_auto, eig_dense, SolverOptions, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanOptions {
    pub grid: Grid,
    pub solver: SolverOptions,
    pub im_tol: Option<f64>,
    /// Skip the tridiagonal fast path.
    pub dense_only: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub param: f64,
    /// Numerically real levels below the threshold.
    pub count: usize,
    pub energies: Vec<f64>,
    pub complex_pairs: usize,
}

/// Classified spectrum of one model on the options' grid.
pub fn model_spectrum(model: &PotentialModel, opts: &ScanOptions) -> Result<Spectrum> {
    let v = evaluate_model(model, &opts.grid)?;
    let op = discretize_schrodinger_q(&v)?;
    let raw = if opts.dense_only {
        eig_dense(&op, &opts.solver)?
    } else {
        eig_auto(&op, &opts.solver)?.0
    };
    Ok(classify_spectrum(&raw, model.threshold(), opts.im_tol))
}

/// Spectra of `model` with `param` set to each of `values`, ordered by
/// parameter value whatever the completion order.
pub fn scan_levels(
    model: &PotentialModel,
    param: &str,
    values: &[f64],
    opts: &ScanOptions,
    exec: Execution,
) -> Result<Vec<ScanRow>> {
    let models = values
        .iter()
        .map(|&p| Ok((p, model.with_parameter(param, p)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = parallel::map(&models, exec, |(p, m)| {
        model_spectrum(m, opts).map(|s| ScanRow {
            param: *p,
            count: s.real_levels.len(),
            energies: s.real_levels,
            complex_pairs: s.complex_pairs.len(),
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| a.param.total_cmp(&b.param));
    Ok(rows)
}
