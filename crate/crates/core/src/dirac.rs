//! The one-dimensional Dirac system with a scalar potential `v = eA₀` and a
//! position-dependent mass `M(x)`:
//!
//! ```text
//!  i φ' + (ε - v) φ - M θ = 0
//! -i θ' + (ε - v) θ - M φ = 0
//! ```
//!
//! Eliminating `θ` gives the reduced operator of
//! [`discretize_dirac_reduced`], whose eigenvalue must equal `ε²`. The
//! energies are found by root finding on `g(ε) = Re λ_k(A(ε)) - ε²`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::massmap::MassProfile;
use crate::numerics::{central_derivative, ComplexField, Grid};
use crate::operators::discretize_dirac_reduced;
use crate::spectra::{eig_auto, inverse_iteration, SolverOptions};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, PartialEq)]
pub struct DiracModel {
    v: ComplexField,
    mass: MassProfile,
    m: Vec<f64>,
}

impl DiracModel {
    pub fn new(v: ComplexField, mass: MassProfile) -> Result<Self> {
        let m = mass.sample(v.grid())?.m;
        Ok(Self { v, mass, m })
    }

    pub fn grid(&self) -> &Grid {
        self.v.grid()
    }

    pub fn potential(&self) -> &ComplexField {
        &self.v
    }

    pub fn mass(&self) -> &MassProfile {
        &self.mass
    }

    /// The same model with `v` shifted by a real constant.
    pub fn shifted(&self, c: f64) -> Result<Self> {
        Self::new(self.v.map(|z| z + c)?, self.mass.clone())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spinor {
    pub phi: ComplexField,
    pub theta: ComplexField,
    pub eps: f64,
}

fn same_grid(f: &ComplexField, model: &DiracModel) -> Result<()> {
    if f.grid() != model.grid() {
        return Err(Error::Dimension("spinor and model live on different grids".into()));
    }
    Ok(())
}

/// `θ = [iφ' + (ε - v)φ] / M`.
pub fn theta_from_phi(phi: &ComplexField, model: &DiracModel, eps: f64) -> Result<ComplexField> {
    same_grid(phi, model)?;
    let dphi = central_derivative(phi);
    let values = (0..phi.len())
        .map(|i| (I * dphi.values()[i] + (eps - model.v.values()[i]) * phi.values()[i]) / model.m[i])
        .collect();
    ComplexField::new(*phi.grid(), values)
}

fn interior_max(values: impl Iterator<Item = Complex64>, n: usize) -> f64 {
    values
        .enumerate()
        .filter(|(i, _)| *i >= 2 && *i + 2 < n)
        .map(|(_, z)| z.norm())
        .fold(0.0, f64::max)
}

fn spinor_scale(s: &Spinor) -> f64 {
    s.phi.max_abs().max(s.theta.max_abs())
}

/// `max |-iθ' + (ε - v)θ - Mφ|` over the interior, relative to the larger
/// sup-norm of the two components.
pub fn dirac_residual(s: &Spinor, model: &DiracModel) -> Result<f64> {
    same_grid(&s.phi, model)?;
    same_grid(&s.theta, model)?;
    let dtheta = central_derivative(&s.theta);
    let n = s.phi.len();
    let r = interior_max(
        (0..n).map(|i| {
            -I * dtheta.values()[i] + (s.eps - model.v.values()[i]) * s.theta.values()[i]
                - model.m[i] * s.phi.values()[i]
        }),
        n,
    );
    Ok(r / spinor_scale(s))
}

/// The companion residual `max |iφ' + (ε - v)φ - Mθ|`, same normalization.
pub fn dirac_residual_lower(s: &Spinor, model: &DiracModel) -> Result<f64> {
    same_grid(&s.phi, model)?;
    same_grid(&s.theta, model)?;
    let dphi = central_derivative(&s.phi);
    let n = s.phi.len();
    let r = interior_max(
        (0..n).map(|i| {
            I * dphi.values()[i] + (s.eps - model.v.values()[i]) * s.phi.values()[i]
                - model.m[i] * s.theta.values()[i]
        }),
        n,
    );
    Ok(r / spinor_scale(s))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiracOptions {
    pub max_iter: usize,
    pub solver: SolverOptions,
}

impl Default for DiracOptions {
    fn default() -> Self {
        Self {
            max_iter: 60,
            solver: SolverOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiracSolution {
    pub eps: f64,
    pub spinor: Spinor,
    /// `λ_k(A(ε))` at the returned energy.
    pub lambda: Complex64,
    pub g: f64,
    pub iterations: usize,
    pub residual_upper: f64,
    pub residual_lower: f64,
}

/// `λ_k` of the reduced operator at `eps`, ordered by real part.
pub fn reduced_eigenvalue(model: &DiracModel, level: usize, eps: f64, opts: &SolverOptions) -> Result<Complex64> {
    let op = discretize_dirac_reduced(&model.mass, &model.v, eps)?;
    let (s, _) = eig_auto(&op, opts)?;
    s.eigenvalues
        .get(level)
        .copied()
        .ok_or_else(|| Error::Domain(format!("level {level} exceeds the {} computed eigenvalues", s.len())))
}

/// `g(ε) = Re λ_k(A(ε)) - ε²`.
pub fn dirac_mismatch(model: &DiracModel, level: usize, eps: f64, opts: &SolverOptions) -> Result<f64> {
    Ok(reduced_eigenvalue(model, level, eps, opts)?.re - eps * eps)
}

/// Self-consistent energy of level `level` inside `bracket`, by secant steps
/// safeguarded with bisection.
pub fn solve_dirac_energy(
    model: &DiracModel,
    level: usize,
    bracket: (f64, f64),
    opts: &DiracOptions,
) -> Result<DiracSolution> {
    let (mut a, mut b) = bracket;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return domain(format!("energy bracket must satisfy lo < hi, got ({a}, {b})"));
    }
    let g = |e: f64| dirac_mismatch(model, level, e, &opts.solver);
    let (mut ga, mut gb) = (g(a)?, g(b)?);
    if ga * gb > 0.0 {
        return Err(Error::Bracket(format!(
            "g({a}) = {ga:.6e} and g({b}) = {gb:.6e} have the same sign"
        )));
    }
    let done = |e: f64, ge: f64| ge.abs() < 1e-8 * (e * e).max(1.0);
    let mut found = if done(a, ga) {
        Some((a, 0))
    } else if done(b, gb) {
        Some((b, 0))
    } else {
        None
    };
    // secant between the two most recent points, kept inside the bracket
    let (mut x0, mut g0, mut x1, mut g1) = (a, ga, b, gb);
    let mut it = 0;
    while found.is_none() {
        it += 1;
        if it > opts.max_iter {
            return Err(Error::Convergence(format!(
                "Dirac energy search did not converge in {} iterations",
                opts.max_iter
            )));
        }
        let mut x = x1 - g1 * (x1 - x0) / (g1 - g0);
        let width = b - a;
        if !(x.is_finite() && x > a + 1e-3 * width && x < b - 1e-3 * width) {
            x = 0.5 * (a + b);
        }
        let gx = g(x)?;
        if done(x, gx) || width < 1e-15 * x.abs().max(1.0) {
            found = Some((x, it));
            break;
        }
        if ga * gx < 0.0 {
            b = x;
            gb = gx;
        } else {
            a = x;
            ga = gx;
        }
        (x0, g0, x1, g1) = (x1, g1, x, gx);
        if (g1 - g0) == 0.0 {
            (x0, g0, x1, g1) = (a, ga, b, gb);
        }
    }
    let (eps, iterations) = found.expect("loop exits with a root");
    let op = discretize_dirac_reduced(&model.mass, &model.v, eps)?;
    let lambda = reduced_eigenvalue(model, level, eps, &opts.solver)?;
    let (inner, _) = inverse_iteration(&op.interior(), lambda);
    let n = model.grid().n();
    let mut phi = vec![Complex64::new(0.0, 0.0); n];
    phi[1..n - 1].copy_from_slice(&inner);
    let phi = ComplexField::new(*model.grid(), phi)?;
    let theta = theta_from_phi(&phi, model, eps)?;
    let spinor = Spinor { phi, theta, eps };
    Ok(DiracSolution {
        eps,
        lambda,
        g: lambda.re - eps * eps,
        iterations,
        residual_upper: dirac_residual(&spinor, model)?,
        residual_lower: dirac_residual_lower(&spinor, model)?,
        spinor,
    })
}
