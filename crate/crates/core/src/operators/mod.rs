//! Discretized operators on uniform grids and the residual diagnostics built
//! on them.
//!
//! All Hamiltonians use second-order central stencils and Dirichlet
//! conditions: rows `0` and `n-1` are identity rows encoding `ψ = 0`, and the
//! eigensolvers drop them. The generators `η` have no boundary rows; their
//! end rows use one-sided three-point stencils.
//!
//! Adjoints are taken in the weighted inner product
//! `⟨φ, ψ⟩ = Σ wᵢ conj(φᵢ) ψᵢ h`. Variable-mass operators carry `w = M(x)`,
//! the discrete form of the measure `dq = M dx`, which is the measure under
//! which the `x`-frame Hamiltonian is the plain pullback of the `q`-frame one.

mod band;

pub use band::BandMatrix;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::massmap::MassProfile;
use crate::numerics::{central_derivative, ComplexField, Grid};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    /// Identity rows at both ends; excluded from spectra.
    Dirichlet,
    /// No boundary rows (first-order generators).
    None,
}

/// A banded operator on a grid, with the weights of its inner product.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteOperator {
    pub matrix: BandMatrix,
    pub grid: Grid,
    pub weight: Vec<f64>,
    pub bc: Boundary,
}

impl DiscreteOperator {
    fn new(matrix: BandMatrix, grid: Grid, weight: Vec<f64>, bc: Boundary) -> Result<Self> {
        if matrix.n() != grid.n() || weight.len() != grid.n() {
            return Err(Error::Dimension(format!(
                "operator of dimension {} on a grid of {} points",
                matrix.n(),
                grid.n()
            )));
        }
        if !matrix.is_finite() {
            return domain("operator has non-finite entries");
        }
        if weight.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return domain("operator weights must be positive");
        }
        Ok(Self {
            matrix,
            grid,
            weight,
            bc,
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.n()
    }

    /// Index range of the rows that carry the eigenproblem.
    pub fn active_range(&self) -> std::ops::Range<usize> {
        match self.bc {
            Boundary::Dirichlet => 1..self.dim() - 1,
            Boundary::None => 0..self.dim(),
        }
    }

    /// The matrix restricted to the active rows and columns.
    pub fn interior(&self) -> BandMatrix {
        let r = self.active_range();
        self.matrix.block(r.start, r.end)
    }

    /// `A + cI` on the active block; boundary rows are left as they are.
    pub fn shifted(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        for i in self.active_range() {
            let v = out.matrix.get(i, i);
            out.matrix.set(i, i, v + c);
        }
        out
    }
}

/// Writes identity rows at both ends.
fn dirichlet_rows(m: &mut BandMatrix) {
    let n = m.n();
    let one = Complex64::new(1.0, 0.0);
    m.set(0, 0, one);
    m.set(n - 1, n - 1, one);
}

/// `-d²/dq² + V` with weight 1.
pub fn discretize_schrodinger_q(v: &ComplexField) -> Result<DiscreteOperator> {
    let grid = *v.grid();
    let n = grid.n();
    let inv_h2 = 1.0 / (grid.h() * grid.h());
    let mut m = BandMatrix::zeros(n, 1, 1);
    for i in 1..n - 1 {
        m.set(i, i - 1, Complex64::new(-inv_h2, 0.0));
        m.set(i, i, 2.0 * inv_h2 + v.values()[i]);
        m.set(i, i + 1, Complex64::new(-inv_h2, 0.0));
    }
    dirichlet_rows(&mut m);
    DiscreteOperator::new(m, grid, vec![1.0; n], Boundary::Dirichlet)
}

/// `-μ² d²/dx² - μμ' d/dx + V` with weight `M`.
pub fn discretize_pdem_x(mass: &MassProfile, v: &ComplexField) -> Result<DiscreteOperator> {
    let grid = *v.grid();
    let n = grid.n();
    let ms = mass.sample(&grid)?;
    let mu = ms.mu();
    let dmu = ms.dmu();
    let inv_h2 = 1.0 / (grid.h() * grid.h());
    let inv_2h = 0.5 / grid.h();
    let mut m = BandMatrix::zeros(n, 1, 1);
    for i in 1..n - 1 {
        let mu2 = mu[i] * mu[i];
        let drift = mu[i] * dmu[i] * inv_2h;
        m.set(i, i - 1, Complex64::new(-mu2 * inv_h2 + drift, 0.0));
        m.set(i, i, 2.0 * mu2 * inv_h2 + v.values()[i]);
        m.set(i, i + 1, Complex64::new(-mu2 * inv_h2 - drift, 0.0));
    }
    dirichlet_rows(&mut m);
    DiscreteOperator::new(m, grid, ms.m, Boundary::Dirichlet)
}

/// Reduced equation for the upper spinor component:
///
/// `-φ'' + (M'/M) φ' + [2εv - v² - iv' - i(M'/M)(ε - v) + M²] φ = ε² φ`.
///
/// Derived by eliminating `θ = [iφ' + (ε - v)φ]/M` from the coupled
/// first-order system; the second-derivative term carries no factor `i`.
pub fn discretize_dirac_reduced(
    mass: &MassProfile,
    v: &ComplexField,
    eps: f64,
) -> Result<DiscreteOperator> {
    let grid = *v.grid();
    let n = grid.n();
    let ms = mass.sample(&grid)?;
    let logd = ms.log_derivative();
    let dv = central_derivative(v);
    let inv_h2 = 1.0 / (grid.h() * grid.h());
    let inv_2h = 0.5 / grid.h();
    let mut m = BandMatrix::zeros(n, 1, 1);
    for i in 1..n - 1 {
        let vi = v.values()[i];
        let pot = 2.0 * eps * vi - vi * vi - I * dv.values()[i] - I * logd[i] * (eps - vi)
            + ms.m[i] * ms.m[i];
        let drift = logd[i] * inv_2h;
        m.set(i, i - 1, Complex64::new(-inv_h2 - drift, 0.0));
        m.set(i, i, 2.0 * inv_h2 + pot);
        m.set(i, i + 1, Complex64::new(-inv_h2 + drift, 0.0));
    }
    dirichlet_rows(&mut m);
    DiscreteOperator::new(m, grid, vec![1.0; n], Boundary::Dirichlet)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Eta {
    /// `η₁ = -i μ d/dx + F`.
    One,
    /// `η₂ = μ d/dx + iF`.
    Two,
}

/// First derivative matrix: central inside, one-sided at the ends.
fn first_derivative(n: usize, h: f64) -> BandMatrix {
    let k = 0.5 / h;
    let c = |x: f64| Complex64::new(x, 0.0);
    let mut d = BandMatrix::zeros(n, 2, 2);
    d.set(0, 0, c(-3.0 * k));
    d.set(0, 1, c(4.0 * k));
    d.set(0, 2, c(-k));
    for i in 1..n - 1 {
        d.set(i, i - 1, c(-k));
        d.set(i, i + 1, c(k));
    }
    d.set(n - 1, n - 3, c(k));
    d.set(n - 1, n - 2, c(-4.0 * k));
    d.set(n - 1, n - 1, c(3.0 * k));
    d
}

/// The generator `η₂ = diag(μ) D₁ + i diag(F)`, or `η₁ = -i η₂`, weight `M`.
pub fn discretize_eta(f: &ComplexField, mass: &MassProfile, which: Eta) -> Result<DiscreteOperator> {
    let grid = *f.grid();
    let n = grid.n();
    let ms = mass.sample(&grid)?;
    let mu = ms.mu();
    let d = first_derivative(n, grid.h());
    let mut eta = BandMatrix::zeros(n, 2, 2);
    for i in 0..n {
        for j in d.row_range(i) {
            let mut e = mu[i] * d.get(i, j);
            if i == j {
                e += I * f.values()[i];
            }
            eta.set(i, j, e);
        }
    }
    if which == Eta::One {
        eta = eta.map(|e| -I * e);
    }
    DiscreteOperator::new(eta, grid, ms.m, Boundary::None)
}

/// `W⁻¹ A* W`, the adjoint in the operator's weighted inner product.
pub fn weighted_adjoint(op: &DiscreteOperator) -> DiscreteOperator {
    let w = &op.weight;
    let inv: Vec<f64> = w.iter().map(|x| 1.0 / x).collect();
    let matrix = if w.iter().all(|&x| x == w[0]) {
        op.matrix.conj_transpose()
    } else {
        op.matrix.conj_transpose().scale(&inv, w)
    };
    DiscreteOperator {
        matrix,
        ..op.clone()
    }
}

/// Relative size of `ηH - H⁺η` on the interior block with `trim` rows and
/// columns dropped at each end: `max|ηH - H⁺η| / max|ηH|`.
///
/// The adjoint uses the weights carried by `h`.
pub fn intertwining_residual(h: &DiscreteOperator, eta: &DiscreteOperator, trim: usize) -> Result<f64> {
    if h.grid != eta.grid || h.dim() != eta.dim() {
        return Err(Error::Dimension(
            "generator and Hamiltonian live on different grids".into(),
        ));
    }
    let n = h.dim();
    if trim < 2 || 2 * trim >= n {
        return domain(format!("trim must be at least 2 and leave an interior, got {trim}"));
    }
    let eh = eta.matrix.matmul(&h.matrix);
    let he = weighted_adjoint(h).matrix.matmul(&eta.matrix);
    let diff = eh.sub(&he);
    let num = diff.max_abs_in_block(trim, n - trim);
    if num == 0.0 {
        return Ok(0.0);
    }
    Ok(num / eh.max_abs_in_block(trim, n - trim))
}

/// `max_i |V(x_i) - conj(V(-x_i))|` on a mirror-symmetric grid.
pub fn pt_residual(v: &ComplexField) -> Result<f64> {
    let g = v.grid();
    if !g.is_symmetric() {
        return domain(format!(
            "PT check needs a symmetric grid, got [{}, {}]",
            g.a(),
            g.b()
        ));
    }
    let vals = v.values();
    let n = vals.len();
    Ok((0..n)
        .map(|i| (vals[i] - vals[n - 1 - i].conj()).norm())
        .fold(0.0, f64::max))
}
