use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::analytic::{
    analytic_spectrum_eckart, analytic_spectrum_pt_towers, analytic_spectrum_ptpt,
    AnalyticSpectrum, EckartVariant,
};
use super::closed_form::{ClosedForm, HyperbolicForm};
use super::generator::{v_from_generator, Convention, Generator};
use crate::error::{domain, Result};
use crate::numerics::{ComplexField, Grid};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Contour shift used when none is given.
pub const DEFAULT_GAMMA: f64 = 0.4;

/// Named potentials. The contour families are evaluated at `T = x - c - iγ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PotentialModel {
    /// `V₁ cosech²(αT) - V₂ cosech(αT) coth(αT)`.
    PtPoschlTeller {
        v1: f64,
        v2: f64,
        alpha: f64,
        c: f64,
        gamma: f64,
    },
    /// `-V₂² cosech²(T) + iV₂ cosech(T) coth(T)`: the cosech generator with
    /// the pseudo convention, `c = 0`.
    PseudoPt { v2: f64, gamma: f64 },
    /// `V₂² cosech²(T) + V₂ cosech(T) coth(T)`: the cosech generator with the
    /// hermitian convention, `c = 0`. A PT-symmetric member of the
    /// Pöschl–Teller family with `V₁ = V₂²`.
    PtCosech { v2: f64, gamma: f64 },
    /// `A² + B²/A² + A(A-1) cosech²(q) - 2B coth(q)` on `q > 0`.
    EckartHermitian { a: f64, b: f64 },
    /// `A² + B²/A² + A(A-i) cosech²(q) - 2B coth(q)` on `q > 0`.
    EckartComplex { a: f64, b: f64 },
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !(gamma > 0.0 && gamma < PI) {
        return domain(format!("contour shift gamma must lie in (0, π), got {gamma}"));
    }
    Ok(())
}

fn check_eckart(a: f64, b: f64) -> Result<()> {
    if !(a.is_finite() && a > 0.0) {
        return domain(format!("Eckart needs A > 0, got {a}"));
    }
    if !(b.is_finite() && b > a * a) {
        return domain(format!("Eckart needs B > A², got A = {a}, B = {b}"));
    }
    Ok(())
}

impl PotentialModel {
    /// Complexified Pöschl–Teller. `V₂ = 0` is accepted here as the
    /// degenerate single-term potential; configuration files reject it.
    pub fn pt_poschl_teller(v1: f64, v2: f64, alpha: f64, c: f64, gamma: f64) -> Result<Self> {
        if !(v1 > -0.25) {
            return domain(format!("Pöschl–Teller needs V1 > -1/4, got {v1}"));
        }
        if !(alpha.is_finite() && alpha > 0.0) || !v2.is_finite() || !c.is_finite() {
            return domain("Pöschl–Teller needs finite V2, c and alpha > 0");
        }
        check_gamma(gamma)?;
        Ok(Self::PtPoschlTeller {
            v1,
            v2,
            alpha,
            c,
            gamma,
        })
    }

    pub fn pseudo_pt(v2: f64, gamma: f64) -> Result<Self> {
        if v2 == 0.0 || !v2.is_finite() {
            return domain(format!("pseudo_pt needs V2 != 0, got {v2}"));
        }
        check_gamma(gamma)?;
        Ok(Self::PseudoPt { v2, gamma })
    }

    pub fn pt_cosech(v2: f64, gamma: f64) -> Result<Self> {
        if v2 == 0.0 || !v2.is_finite() {
            return domain(format!("pt_cosech needs V2 != 0, got {v2}"));
        }
        check_gamma(gamma)?;
        Ok(Self::PtCosech { v2, gamma })
    }

    pub fn eckart_hermitian(a: f64, b: f64) -> Result<Self> {
        check_eckart(a, b)?;
        Ok(Self::EckartHermitian { a, b })
    }

    pub fn eckart_complex(a: f64, b: f64) -> Result<Self> {
        check_eckart(a, b)?;
        Ok(Self::EckartComplex { a, b })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::PtPoschlTeller { .. } => "pt_poschl_teller",
            Self::PseudoPt { .. } => "pseudo_pt",
            Self::PtCosech { .. } => "pt_cosech",
            Self::EckartHermitian { .. } => "eckart_hermitian",
            Self::EckartComplex { .. } => "eckart_complex",
        }
    }

    /// Complex shift `c + iγ`; the potential is evaluated at `x - shift`.
    pub fn contour_shift(&self) -> Complex64 {
        match *self {
            Self::PtPoschlTeller { c, gamma, .. } => Complex64::new(c, gamma),
            Self::PseudoPt { gamma, .. } | Self::PtCosech { gamma, .. } => {
                Complex64::new(0.0, gamma)
            }
            Self::EckartHermitian { .. } | Self::EckartComplex { .. } => Complex64::new(0.0, 0.0),
        }
    }

    /// The generator this model is built from, when it has one.
    pub fn generator(&self) -> Option<(Generator, Convention)> {
        match *self {
            Self::PseudoPt { v2, .. } => Some((Generator::cosech(v2, 0.0).ok()?, Convention::Pseudo)),
            Self::PtCosech { v2, .. } => {
                Some((Generator::cosech(v2, 0.0).ok()?, Convention::Hermitian))
            }
            Self::EckartHermitian { a, b } => {
                Some((Generator::eckart_super(a, b, 0.0).ok()?, Convention::Hermitian))
            }
            _ => None,
        }
    }

    /// The potential as a closed form of the (unshifted) argument.
    pub fn closed_form(&self) -> ClosedForm {
        let c = |x: f64| Complex64::new(x, 0.0);
        match *self {
            Self::PtPoschlTeller { v1, v2, alpha, .. } => ClosedForm::Hyperbolic(HyperbolicForm {
                cosech2: c(v1),
                cosech_coth: c(-v2),
                scale: alpha,
                ..HyperbolicForm::zero()
            }),
            Self::PseudoPt { .. } | Self::PtCosech { .. } | Self::EckartHermitian { .. } => {
                let (gen, conv) = self.generator().expect("validated model has a generator");
                v_from_generator(&gen, conv)
            }
            Self::EckartComplex { a, b } => ClosedForm::Hyperbolic(HyperbolicForm {
                constant: c(a * a + b * b / (a * a)),
                cosech2: a * (c(a) - I),
                coth: c(-2.0 * b),
                ..HyperbolicForm::zero()
            }),
        }
    }

    /// `V(x)` at a real point.
    pub fn value(&self, x: f64) -> Complex64 {
        self.closed_form().eval(Complex64::new(x, 0.0) - self.contour_shift())
    }

    /// Limit of `Re V` at infinity, the edge of the continuum.
    pub fn threshold(&self) -> f64 {
        match *self {
            Self::PtPoschlTeller { .. } | Self::PseudoPt { .. } | Self::PtCosech { .. } => 0.0,
            Self::EckartHermitian { a, b } | Self::EckartComplex { a, b } => {
                a * a + b * b / (a * a) - 2.0 * b
            }
        }
    }

    /// The closed-form bound-state spectrum the model is expected to have.
    pub fn analytic_spectrum(&self) -> Option<AnalyticSpectrum> {
        match *self {
            Self::PtPoschlTeller { v1, v2, alpha, .. } => {
                Some(analytic_spectrum_pt_towers(v1, v2, alpha))
            }
            Self::PseudoPt { v2, .. } | Self::PtCosech { v2, .. } => {
                Some(analytic_spectrum_ptpt(v2))
            }
            Self::EckartHermitian { a, b } => {
                Some(analytic_spectrum_eckart(a, b, EckartVariant::Standard))
            }
            Self::EckartComplex { .. } => None,
        }
    }

    /// Same model with `V₂` (or `B` for Eckart) replaced; used by scans.
    pub fn with_parameter(&self, name: &str, value: f64) -> Result<Self> {
        match (*self, name) {
            (Self::PtPoschlTeller { v2, alpha, c, gamma, .. }, "v1") => {
                Self::pt_poschl_teller(value, v2, alpha, c, gamma)
            }
            (Self::PtPoschlTeller { v1, alpha, c, gamma, .. }, "v2") => {
                Self::pt_poschl_teller(v1, value, alpha, c, gamma)
            }
            (Self::PseudoPt { gamma, .. }, "v2") => Self::pseudo_pt(value, gamma),
            (Self::PtCosech { gamma, .. }, "v2") => Self::pt_cosech(value, gamma),
            (Self::PseudoPt { v2, .. }, "gamma") => Self::pseudo_pt(v2, value),
            (Self::PtCosech { v2, .. }, "gamma") => Self::pt_cosech(v2, value),
            (Self::EckartHermitian { b, .. }, "A") => Self::eckart_hermitian(value, b),
            (Self::EckartHermitian { a, .. }, "B") => Self::eckart_hermitian(a, value),
            (Self::EckartComplex { b, .. }, "A") => Self::eckart_complex(value, b),
            (Self::EckartComplex { a, .. }, "B") => Self::eckart_complex(a, value),
            (m, p) => domain(format!("model {} has no scannable parameter '{p}'", m.name())),
        }
    }
}

/// Samples the model on a real grid.
pub fn evaluate_model(model: &PotentialModel, grid: &Grid) -> Result<ComplexField> {
    if matches!(
        model,
        PotentialModel::EckartHermitian { .. } | PotentialModel::EckartComplex { .. }
    ) && grid.a() <= 0.0
    {
        return domain(format!(
            "Eckart potentials live on q > 0, grid starts at {}",
            grid.a()
        ));
    }
    let form = model.closed_form();
    let shift = model.contour_shift();
    ComplexField::from_fn(*grid, |x| form.eval(Complex64::new(x, 0.0) - shift))
}
