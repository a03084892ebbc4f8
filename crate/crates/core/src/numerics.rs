//! Uniform grids, sampled complex fields and second-order calculus on them.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// A uniform grid of `n` points on the closed interval `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    a: f64,
    b: f64,
    n: usize,
    h: f64,
}

impl Grid {
    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Spacing `(b - a) / (n - 1)`.
    pub fn h(&self) -> f64 {
        self.h
    }

    /// The `i`-th node. Nodes in the upper half are measured back from `b`,
    /// so symmetric grids are mirror-exact and the last node is exactly `b`.
    pub fn point(&self, i: usize) -> f64 {
        debug_assert!(i < self.n);
        if 2 * i < self.n {
            self.a + i as f64 * self.h
        } else {
            self.b - (self.n - 1 - i) as f64 * self.h
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.point(i)).collect()
    }

    /// True when the grid is mirror symmetric about the origin (`a = -b`).
    pub fn is_symmetric(&self) -> bool {
        self.a == -self.b
    }

    /// Same interval, `2(n - 1) + 1` points: the spacing is halved.
    pub fn refined(&self) -> Grid {
        make_uniform_grid(self.a, self.b, 2 * (self.n - 1) + 1).expect("refining a valid grid")
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.a && x <= self.b
    }

    /// Index `j` of the cell `[x_j, x_{j+1}]` holding `x`, clamped to the last cell.
    pub(crate) fn cell(&self, x: f64) -> usize {
        let j = ((x - self.a) / self.h).floor();
        (j.max(0.0) as usize).min(self.n - 2)
    }
}

/// Builds the uniform grid on `[a, b]` with `n` points.
pub fn make_uniform_grid(a: f64, b: f64, n: usize) -> Result<Grid> {
    if !(a.is_finite() && b.is_finite()) {
        return domain(format!("grid endpoints must be finite, got [{a}, {b}]"));
    }
    if a >= b {
        return domain(format!("grid needs a < b, got [{a}, {b}]"));
    }
    if n < 3 {
        return domain(format!("grid needs at least 3 points, got {n}"));
    }
    Ok(Grid {
        a,
        b,
        n,
        h: (b - a) / (n - 1) as f64,
    })
}

/// Complex values sampled on every node of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField {
    grid: Grid,
    values: Vec<Complex64>,
}

impl ComplexField {
    /// Wraps samples, rejecting wrong lengths and non-finite values.
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n() {
            return domain(format!(
                "field has {} samples for a grid of {} points",
                values.len(),
                grid.n()
            ));
        }
        if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return domain(format!(
                "non-finite sample at x = {} (singular point on the grid)",
                grid.point(i)
            ));
        }
        Ok(Self { grid, values })
    }

    /// Samples `f` at every node.
    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        Self::new(grid, grid.points().into_iter().map(f).collect())
    }

    pub fn from_real(grid: Grid, values: &[f64]) -> Result<Self> {
        Self::new(grid, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn constant(grid: Grid, value: Complex64) -> Result<Self> {
        Self::new(grid, vec![value; grid.n()])
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Pointwise map, keeping the grid.
    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Result<Self> {
        Self::new(self.grid, self.values.iter().map(|&v| f(v)).collect())
    }

    pub fn scale(&self, s: Complex64) -> Result<Self> {
        self.map(|v| v * s)
    }

    /// Pointwise sum of two fields on the same grid.
    pub fn add(&self, other: &ComplexField) -> Result<Self> {
        if self.grid != other.grid {
            return Err(crate::Error::Dimension("fields live on different grids".into()));
        }
        Self::new(
            self.grid,
            self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        )
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Linear interpolation at `x` inside the grid.
    pub fn interpolate(&self, x: f64) -> Result<Complex64> {
        if !self.grid.contains(x) {
            return domain(format!(
                "x = {x} outside [{}, {}]",
                self.grid.a(),
                self.grid.b()
            ));
        }
        let j = self.grid.cell(x);
        let t = (x - self.grid.point(j)) / self.grid.h();
        Ok(self.values[j] * (1.0 - t) + self.values[j + 1] * t)
    }
}

/// Second-order derivative: central differences inside, one-sided
/// three-point stencils at both ends.
pub fn central_derivative(f: &ComplexField) -> ComplexField {
    let g = f.grid();
    let v = f.values();
    let n = g.n();
    let inv2h = 1.0 / (2.0 * g.h());
    let mut d = Vec::with_capacity(n);
    d.push((-3.0 * v[0] + 4.0 * v[1] - v[2]) * inv2h);
    for i in 1..n - 1 {
        d.push((v[i + 1] - v[i - 1]) * inv2h);
    }
    d.push((3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) * inv2h);
    ComplexField::new(*g, d).expect("differences of finite samples are finite")
}

/// Trapezoid-rule antiderivative anchored so that the result vanishes at `x0`.
///
/// When `x0` falls between two nodes the partial cell is integrated with `f`
/// interpolated linearly, so the rule stays exact for linear integrands.
pub fn cumulative_integral(f: &ComplexField, x0: f64) -> Result<ComplexField> {
    let g = f.grid();
    if !g.contains(x0) {
        return domain(format!(
            "anchor x0 = {x0} outside [{}, {}]",
            g.a(),
            g.b()
        ));
    }
    let v = f.values();
    let h = g.h();
    let mut acc = Vec::with_capacity(g.n());
    let mut s = Complex64::new(0.0, 0.0);
    acc.push(s);
    for i in 1..g.n() {
        s += 0.5 * h * (v[i - 1] + v[i]);
        acc.push(s);
    }
    let j = g.cell(x0);
    let dx = x0 - g.point(j);
    let f0 = f.interpolate(x0)?;
    let at_anchor = acc[j] + 0.5 * dx * (v[j] + f0);
    ComplexField::new(*g, acc.into_iter().map(|c| c - at_anchor).collect())
}
