//! Non-hermitian eigensolution, classification and comparison with
//! closed-form spectra.
//!
//! [`eig_dense`] is the reference full-spectrum solver. [`eig_auto`] tries
//! the tridiagonal QL path first and falls back to it when the backward
//! errors of the fast path are not small. [`refine_shoot`] refines a single
//! level independently of both.

mod classify;
mod dense;
mod inverse;
mod shoot;
mod tridiag;

pub use classify::{classify_spectrum, default_im_tol, spectrum_compare, ComparisonReport, LevelMatch};
pub use inverse::{inverse_iteration, residual_norm};
pub use shoot::{refine_shoot, ShootOptions};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{BandMatrix, DiscreteOperator};

/// Eigenvalues with backward errors and, once classified, their partition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    /// Sorted by real part, then imaginary part.
    pub eigenvalues: Vec<Complex64>,
    /// `‖Aψ - λψ‖ / ‖ψ‖`; `NaN` where not evaluated.
    pub residual_norms: Vec<f64>,
    pub threshold: Option<f64>,
    pub im_tol: Option<f64>,
    pub real_levels: Vec<f64>,
    /// `(Im > 0, Im < 0)` conjugate pairs below the threshold.
    pub complex_pairs: Vec<(Complex64, Complex64)>,
    /// Complex values below the threshold without a conjugate partner.
    pub unpaired: Vec<Complex64>,
}

impl Spectrum {
    pub fn raw(mut eigenvalues: Vec<Complex64>, mut residual_norms: Vec<f64>) -> Self {
        let mut idx: Vec<usize> = (0..eigenvalues.len()).collect();
        idx.sort_by(|&i, &j| {
            let (a, b) = (eigenvalues[i], eigenvalues[j]);
            a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
        });
        eigenvalues = idx.iter().map(|&i| eigenvalues[i]).collect();
        if residual_norms.len() == idx.len() {
            residual_norms = idx.iter().map(|&i| residual_norms[i]).collect();
        }
        Self {
            eigenvalues,
            residual_norms,
            threshold: None,
            im_tol: None,
            real_levels: Vec::new(),
            complex_pairs: Vec::new(),
            unpaired: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Largest evaluated residual.
    pub fn max_residual(&self) -> f64 {
        self.residual_norms.iter().filter(|r| !r.is_nan()).fold(0.0, |a, &b| a.max(b))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Dense,
    Tridiagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Largest dimension handed to the dense solver.
    pub cap: usize,
    /// Evaluate residuals only for eigenvalues with `Re λ` below this.
    pub residual_below: Option<f64>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            cap: 2000,
            residual_below: None,
        }
    }
}

fn residuals(a: &BandMatrix, values: &[Complex64], below: Option<f64>) -> Vec<f64> {
    values
        .iter()
        .map(|&l| match below {
            Some(t) if l.re >= t => f64::NAN,
            _ => inverse_iteration(a, l).1,
        })
        .collect()
}

/// All eigenvalues of a dense square matrix.
pub fn eig_matrix(rows: &[Vec<Complex64>]) -> Result<Vec<Complex64>> {
    let mut e = dense::eigenvalues(dense::Dense::from_rows(rows)?)?;
    e.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(e)
}

/// Full spectrum of the active block by dense QR, with inverse-iteration
/// residuals.
pub fn eig_dense(op: &DiscreteOperator, opts: &SolverOptions) -> Result<Spectrum> {
    let a = op.interior();
    if a.n() > opts.cap {
        return Err(Error::Domain(format!(
            "dense eigensolution of dimension {} exceeds the cap {}",
            a.n(),
            opts.cap
        )));
    }
    let values = dense::eigenvalues(dense::Dense::from_rows(&a.to_dense())?)?;
    let res = residuals(&a, &values, opts.residual_below);
    Ok(Spectrum::raw(values, res))
}

/// Tridiagonal QL with residual check, else dense QR. Returns the method used.
pub fn eig_auto(op: &DiscreteOperator, opts: &SolverOptions) -> Result<(Spectrum, Method)> {
    let a = op.interior();
    let n = a.n();
    if a.effective_bandwidth().0 <= 1 && a.effective_bandwidth().1 <= 1 && n > 0 {
        let d: Vec<_> = (0..n).map(|i| a.get(i, i)).collect();
        let sub: Vec<_> = (0..n - 1).map(|i| a.get(i + 1, i)).collect();
        let sup: Vec<_> = (0..n - 1).map(|i| a.get(i, i + 1)).collect();
        if sub.iter().zip(&sup).all(|(l, u)| (l * u).norm() > 0.0) {
            if let Ok(values) = tridiag::eigenvalues(&d, &sub, &sup) {
                let res = residuals(&a, &values, opts.residual_below);
                let bound = 1e-8 * a.norm_inf().max(1.0);
                if res.iter().all(|r| r.is_nan() || *r <= bound) {
                    return Ok((Spectrum::raw(values, res), Method::Tridiagonal));
                }
            }
        }
    }
    Ok((eig_dense(op, opts)?, Method::Dense))
}
