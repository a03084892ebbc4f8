//! Single-level refinement by two-sided shooting.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootOptions {
    /// RK4 steps across the whole domain.
    pub steps: usize,
    pub max_newton: usize,
    /// Tolerance on the normalized matching Wronskian.
    pub tol: f64,
}

impl Default for ShootOptions {
    fn default() -> Self {
        Self {
            steps: 20_000,
            max_newton: 50,
            tol: 1e-10,
        }
    }
}

struct Shooter {
    h: f64,
    steps: usize,
    /// `V` on the half-step lattice, `2·steps + 1` values.
    v: Vec<Complex64>,
    mid: usize,
}

impl Shooter {
    fn new(v: &dyn Fn(f64) -> Complex64, (a, b): (f64, f64), steps: usize) -> Result<Self> {
        if !(a < b) || steps < 4 {
            return domain(format!("shooting needs a < b and at least 4 steps, got [{a}, {b}], {steps}"));
        }
        let h = (b - a) / steps as f64;
        let v: Vec<Complex64> = (0..=2 * steps).map(|k| v(a + 0.5 * h * k as f64)).collect();
        if v.iter().any(|z| !z.is_finite()) {
            return domain("potential is not finite on the shooting interval");
        }
        let lo = steps / 10;
        let hi = steps - steps / 10;
        let mid = (lo..=hi)
            .min_by(|&i, &j| v[2 * i].re.total_cmp(&v[2 * j].re))
            .unwrap_or(steps / 2);
        Ok(Self { h, steps, v, mid })
    }

    /// `(ψ, ψ')` at the matching node, integrating inward from node `from`.
    fn integrate(&self, e: Complex64, from: usize) -> [Complex64; 2] {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let forward = from < self.mid;
        let mut y = [zero, if forward { one } else { -one }];
        let h = if forward { self.h } else { -self.h };
        let rhs = |k: usize, y: [Complex64; 2]| [y[1], (self.v[k] - e) * y[0]];
        let mut i = from;
        while i != self.mid {
            let (k0, k1, k2) = if forward { (2 * i, 2 * i + 1, 2 * i + 2) } else { (2 * i, 2 * i - 1, 2 * i - 2) };
            let s1 = rhs(k0, y);
            let s2 = rhs(k1, [y[0] + 0.5 * h * s1[0], y[1] + 0.5 * h * s1[1]]);
            let s3 = rhs(k1, [y[0] + 0.5 * h * s2[0], y[1] + 0.5 * h * s2[1]]);
            let s4 = rhs(k2, [y[0] + h * s3[0], y[1] + h * s3[1]]);
            for c in 0..2 {
                y[c] += h / 6.0 * (s1[c] + 2.0 * s2[c] + 2.0 * s3[c] + s4[c]);
            }
            i = if forward { i + 1 } else { i - 1 };
        }
        y
    }

    /// Matching Wronskian and the norms of both boundary solutions.
    fn miss(&self, e: Complex64) -> (Complex64, f64) {
        let l = self.integrate(e, 0);
        let r = self.integrate(e, self.steps);
        let w = l[0] * r[1] - l[1] * r[0];
        let nl = (l[0].norm_sqr() + l[1].norm_sqr()).sqrt();
        let nr = (r[0].norm_sqr() + r[1].norm_sqr()).sqrt();
        (w, nl * nr)
    }
}

/// Newton iteration in complex `E` on the matching Wronskian of the two
/// solutions that vanish at the ends of `domain`.
pub fn refine_shoot(
    v: &dyn Fn(f64) -> Complex64,
    e0: Complex64,
    domain: (f64, f64),
    opts: &ShootOptions,
) -> Result<Complex64> {
    let s = Shooter::new(v, domain, opts.steps)?;
    let radius = e0.norm().max(1.0);
    let size = |e: Complex64| -> Result<(Complex64, f64)> {
        let (w, norm) = s.miss(e);
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Basin(format!("solutions overflowed at E = {e}")));
        }
        Ok((w, norm))
    };
    let mut e = e0;
    let (mut w, mut norm) = size(e)?;
    for _ in 0..opts.max_newton {
        let m = w / norm;
        if m.norm() < opts.tol {
            return Ok(e);
        }
        let d = 1e-7 * e.norm().max(1.0);
        let (w2, _) = s.miss(e + d);
        let dm = (w2 / norm - m) / d;
        let step = -m / dm;
        if !step.is_finite() {
            return Err(Error::Basin(format!("flat matching function at E = {e}")));
        }
        e += step;
        (w, norm) = size(e)?;
        if (e - e0).norm() > radius {
            return Err(Error::Basin(format!("Newton left |E - {e0}| <= {radius}, now at {e}")));
        }
        if step.norm() <= 1e-13 * e.norm().max(1.0) {
            return Ok(e);
        }
    }
    Err(Error::Convergence(format!(
        "shooting did not converge in {} Newton steps",
        opts.max_newton
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn box_ground_state() {
        let e = refine_shoot(&|_| c(0.0), c(0.9), (0.0, PI), &ShootOptions::default()).unwrap();
        assert!((e - 1.0).norm() < 1e-8, "{e}");
    }

    #[test]
    fn box_second_level() {
        let e = refine_shoot(&|_| c(0.0), c(3.7), (0.0, PI), &ShootOptions::default()).unwrap();
        assert!((e - 4.0).norm() < 1e-8, "{e}");
    }

    #[test]
    fn harmonic_oscillator() {
        let e = refine_shoot(&|x| c(x * x), c(2.9), (-8.0, 8.0), &ShootOptions::default()).unwrap();
        assert!((e - 3.0).norm() < 1e-8, "{e}");
    }

    #[test]
    fn complex_shift_is_followed() {
        let i = Complex64::new(0.0, 1.0);
        let e = refine_shoot(&|x| c(x * x) + 0.5 * i, c(1.05) + 0.45 * i, (-8.0, 8.0), &ShootOptions::default()).unwrap();
        assert!((e - (1.0 + 0.5 * i)).norm() < 1e-8, "{e}");
    }

    #[test]
    fn bad_domain() {
        assert!(matches!(
            refine_shoot(&|_| c(0.0), c(1.0), (1.0, 0.0), &ShootOptions::default()),
            Err(Error::Domain(_))
        ));
        assert!(refine_shoot(&|x| c(1.0 / x), c(1.0), (-1.0, 1.0), &ShootOptions::default()).is_err());
    }

    #[test]
    fn far_start_leaves_basin_or_fails() {
        let opts = ShootOptions {
            max_newton: 3,
            ..ShootOptions::default()
        };
        assert!(refine_shoot(&|_| c(0.0), c(2.5), (0.0, PI), &opts).is_err());
    }

    #[test]
    fn matching_point_sits_in_the_well() {
        let s = Shooter::new(&|x| c((x - 1.0) * (x - 1.0)), (-5.0, 5.0), 1000).unwrap();
        assert!((-5.0 + s.mid as f64 * s.h - 1.0).abs() < 0.02);
    }
}
