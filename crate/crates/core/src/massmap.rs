//! Mass profiles and the point canonical transformation.
//!
//! A mass `M(x) > 0` defines the chart `q(x) = ∫_{x0}^{x} M(z) dz`, so that
//! `dq/dx = M = 1/μ` and `μ d/dx = d/dq`. Under this change of variable the
//! variable-mass kinetic term `-μ² ∂x² - μμ' ∂x` becomes `-∂q²`. The auxiliary
//! map `f = e^q` turns hyperbolic functions of `q` into rational functions of
//! `f`, which is how closed-form potentials are pulled back to `x`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::models::ClosedForm;
use crate::numerics::{cumulative_integral, make_uniform_grid, ComplexField, Grid};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MassProfile {
    /// `M(x) = m0` everywhere.
    Constant { m0: f64 },
    /// `M(x) = 2x/(x² - 1)`, the derivative of `ln(x² - 1)`, on `x > 1`.
    RationalX2m1,
    /// Positive samples on a grid, linearly interpolated in between.
    Custom { grid: Grid, values: Vec<f64> },
}

/// Mass and its derivative sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct MassSamples {
    pub m: Vec<f64>,
    pub dm: Vec<f64>,
}

impl MassSamples {
    /// `μ = 1/M`.
    pub fn mu(&self) -> Vec<f64> {
        self.m.iter().map(|m| 1.0 / m).collect()
    }

    /// `μ' = -M'/M²`.
    pub fn dmu(&self) -> Vec<f64> {
        self.m.iter().zip(&self.dm).map(|(m, dm)| -dm / (m * m)).collect()
    }

    /// `M'/M`.
    pub fn log_derivative(&self) -> Vec<f64> {
        self.m.iter().zip(&self.dm).map(|(m, dm)| dm / m).collect()
    }
}

impl MassProfile {
    pub fn constant(m0: f64) -> Result<Self> {
        if !(m0.is_finite() && m0 > 0.0) {
            return domain(format!("constant mass must be positive, got {m0}"));
        }
        Ok(Self::Constant { m0 })
    }

    pub fn rational_x2m1() -> Self {
        Self::RationalX2m1
    }

    pub fn custom(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n() {
            return domain("custom mass needs one sample per grid point");
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return domain(format!("custom mass must be positive and finite, found {v}"));
        }
        Ok(Self::Custom { grid, values })
    }

    /// Open interval on which the profile is positive and finite.
    pub fn domain(&self) -> (f64, f64) {
        match self {
            Self::Constant { .. } => (f64::NEG_INFINITY, f64::INFINITY),
            Self::RationalX2m1 => (1.0, f64::INFINITY),
            Self::Custom { grid, .. } => (grid.a(), grid.b()),
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, Self::Constant { .. })
    }

    /// `M(x)`.
    pub fn value(&self, x: f64) -> Result<f64> {
        match self {
            Self::Constant { m0 } => Ok(*m0),
            Self::RationalX2m1 => {
                if x <= 1.0 {
                    return domain(format!("rational mass is only positive for x > 1, got {x}"));
                }
                Ok(2.0 * x / (x * x - 1.0))
            }
            Self::Custom { grid, values } => {
                let field = ComplexField::from_real(*grid, values)?;
                Ok(field.interpolate(x)?.re)
            }
        }
    }

    /// `M` and `M'` on every node of `grid`.
    pub fn sample(&self, grid: &Grid) -> Result<MassSamples> {
        let xs = grid.points();
        let (m, dm) = match self {
            Self::Constant { m0 } => (vec![*m0; grid.n()], vec![0.0; grid.n()]),
            Self::RationalX2m1 => {
                if grid.a() <= 1.0 {
                    return domain(format!(
                        "rational mass needs a grid inside x > 1, grid starts at {}",
                        grid.a()
                    ));
                }
                let m = xs.iter().map(|x| 2.0 * x / (x * x - 1.0)).collect();
                let dm = xs
                    .iter()
                    .map(|x| {
                        let d = x * x - 1.0;
                        -2.0 * (x * x + 1.0) / (d * d)
                    })
                    .collect();
                (m, dm)
            }
            Self::Custom { .. } => {
                let m = xs.iter().map(|&x| self.value(x)).collect::<Result<Vec<_>>>()?;
                let field = ComplexField::from_real(*grid, &m)?;
                let dm = crate::numerics::central_derivative(&field)
                    .values()
                    .iter()
                    .map(|v| v.re)
                    .collect();
                (m, dm)
            }
        };
        if let Some((i, v)) = m.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v > 0.0)) {
            return domain(format!("mass {v} is not positive at x = {}", grid.point(i)));
        }
        Ok(MassSamples { m, dm })
    }

    /// `∫_{from}^{to} M(z) dz` by composite Simpson on the closed form.
    fn integral(&self, from: f64, to: f64) -> Result<f64> {
        if let Self::Constant { m0 } = self {
            return Ok(m0 * (to - from));
        }
        let (lo, hi) = self.domain();
        if from.min(to) <= lo || from.max(to) >= hi {
            return domain(format!(
                "cannot integrate the mass over [{from}, {to}] outside its domain ({lo}, {hi})"
            ));
        }
        let panels = 4096;
        let h = (to - from) / panels as f64;
        let mut s = self.value(from)? + self.value(to)?;
        for k in 1..panels {
            let w = if k % 2 == 1 { 4.0 } else { 2.0 };
            s += w * self.value(from + k as f64 * h)?;
        }
        Ok(s * h / 3.0)
    }
}

/// The sampled chart `q(x)` together with `f = e^q`.
#[derive(Debug, Clone, PartialEq)]
pub struct Chart {
    pub grid_x: Grid,
    pub q_values: Vec<f64>,
    pub f_values: Vec<f64>,
    pub x0: f64,
}

impl Chart {
    /// `q(x)` by linear interpolation.
    pub fn q_at(&self, x: f64) -> Result<f64> {
        let field = ComplexField::from_real(self.grid_x, &self.q_values)?;
        Ok(field.interpolate(x)?.re)
    }

    /// Inverse chart `x(q)` by monotone linear interpolation.
    pub fn x_at(&self, q: f64) -> Result<f64> {
        let qs = &self.q_values;
        let (q_lo, q_hi) = (qs[0], qs[qs.len() - 1]);
        if !(q >= q_lo && q <= q_hi) {
            return domain(format!("q = {q} outside chart range [{q_lo}, {q_hi}]"));
        }
        let j = qs.partition_point(|&v| v <= q).clamp(1, qs.len() - 1) - 1;
        let t = (q - qs[j]) / (qs[j + 1] - qs[j]);
        Ok(self.grid_x.point(j) + t * self.grid_x.h())
    }

    pub fn q_range(&self) -> (f64, f64) {
        (self.q_values[0], self.q_values[self.q_values.len() - 1])
    }
}

/// Integrates `M` to the chart `q`, anchored so that `q(x0) = 0`.
///
/// The anchor may lie outside the grid for closed-form masses; the offset
/// between the anchor and the left end is then integrated separately.
pub fn chart_from_mass(mass: &MassProfile, grid_x: &Grid, x0: f64) -> Result<Chart> {
    let samples = mass.sample(grid_x)?;
    let field = ComplexField::from_real(*grid_x, &samples.m)?;
    let q: Vec<f64> = if grid_x.contains(x0) {
        cumulative_integral(&field, x0)?.values().iter().map(|v| v.re).collect()
    } else {
        if matches!(mass, MassProfile::Custom { .. }) {
            return domain(format!("anchor {x0} lies outside the sampled mass"));
        }
        let offset = mass.integral(x0, grid_x.a())?;
        cumulative_integral(&field, grid_x.a())?
            .values()
            .iter()
            .map(|v| v.re + offset)
            .collect()
    };
    if let Some(i) = q.windows(2).position(|w| !(w[1] > w[0])) {
        return Err(Error::Monotonicity(format!(
            "q({}) = {} is not below q({}) = {}",
            grid_x.point(i),
            q[i],
            grid_x.point(i + 1),
            q[i + 1]
        )));
    }
    let f = q.iter().map(|q| q.exp()).collect();
    Ok(Chart {
        grid_x: *grid_x,
        q_values: q,
        f_values: f,
        x0,
    })
}

/// Samples a `q`-frame potential along the chart: `V(x_i) = V_eff(q(x_i))`.
///
/// Hyperbolic closed forms are evaluated through `f = e^q`, using
/// `cosech q = 2f/(f² - 1)` and `coth q = (f² + 1)/(f² - 1)`.
pub fn pullback_potential(v_eff: &ClosedForm, chart: &Chart) -> Result<ComplexField> {
    let values: Vec<Complex64> = chart
        .q_values
        .iter()
        .zip(&chart.f_values)
        .map(|(&q, &f)| v_eff.eval_on_chart(q, f))
        .collect();
    if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return domain(format!(
            "potential is singular at q = {} (x = {})",
            chart.q_values[i],
            chart.grid_x.point(i)
        ));
    }
    ComplexField::new(chart.grid_x, values)
}

/// The uniform `q` grid matched to an `x` grid by the chart.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameData {
    pub chart: Chart,
    pub q_grid: Grid,
}

impl FrameData {
    /// Resamples an `x`-frame field onto the `q` grid through the inverse chart.
    pub fn resample(&self, field_x: &ComplexField) -> Result<ComplexField> {
        if field_x.grid() != &self.chart.grid_x {
            return Err(Error::Dimension("field is not on the chart's x grid".into()));
        }
        let (q_lo, q_hi) = self.chart.q_range();
        let values = self
            .q_grid
            .points()
            .into_iter()
            .map(|q| field_x.interpolate(self.chart.x_at(q.clamp(q_lo, q_hi))?))
            .collect::<Result<Vec<_>>>()?;
        ComplexField::new(self.q_grid, values)
    }

    /// Samples a closed-form potential directly on the `q` grid.
    pub fn sample_closed_form(&self, v_eff: &ClosedForm) -> Result<ComplexField> {
        ComplexField::from_fn(self.q_grid, |q| v_eff.eval(Complex64::new(q, 0.0)))
    }
}

/// Uniform `q` grid spanning `[q(a), q(b)]` with the same point count as `grid_x`.
pub fn frame_equivalence_data(mass: &MassProfile, grid_x: &Grid, x0: f64) -> Result<FrameData> {
    let chart = chart_from_mass(mass, grid_x, x0)?;
    let (q_lo, q_hi) = chart.q_range();
    let q_grid = make_uniform_grid(q_lo, q_hi, grid_x.n())?;
    Ok(FrameData { chart, q_grid })
}
