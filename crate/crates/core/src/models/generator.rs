use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::closed_form::{ClosedForm, HyperbolicForm};
use crate::error::{domain, Result};
use crate::massmap::MassProfile;
use crate::numerics::{central_derivative, ComplexField, Grid};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `F`, `dF/dq` and `d²F/dq²` at a point.
pub type GeneratorFn = dyn Fn(Complex64) -> [Complex64; 3] + Send + Sync;

#[derive(Clone)]
pub enum GeneratorKind {
    /// `F ≡ 0`.
    Zero,
    /// `F(q) = V₂ cosech(q)`.
    Cosech { v2: f64 },
    /// `F(q) = A coth(q) + B/A`.
    CothShift { a: f64, b: f64 },
    /// `F(q) = -A coth(q) + B/A`, the Eckart superpotential.
    EckartSuper { a: f64, b: f64 },
    Custom(Arc<GeneratorFn>),
}

impl fmt::Debug for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Zero => f.write_str("Zero"),
            Self::Cosech { v2 } => f.debug_struct("Cosech").field("v2", v2).finish(),
            Self::CothShift { a, b } => {
                f.debug_struct("CothShift").field("a", a).field("b", b).finish()
            }
            Self::EckartSuper { a, b } => {
                f.debug_struct("EckartSuper").field("a", a).field("b", b).finish()
            }
            Self::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

fn check_coth_params(a: f64, b: f64) -> Result<()> {
    if !(a.is_finite() && a > 0.0 && b.is_finite()) {
        return domain(format!("coth generator needs finite A > 0, got {a}"));
    }
    if b <= a * a {
        return domain(format!("coth generator needs B > A², got A = {a}, B = {b}"));
    }
    Ok(())
}

/// Which generator-to-potential formula to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// `V = -F² - i dF/dq + α₀`: the potential intertwined by `η = d/dq + iF`.
    Pseudo,
    /// `V = F² - dF/dq + α₀`: the superpotential form.
    Hermitian,
}

/// A first-order generator `F` with its integration constant `α₀`.
#[derive(Debug, Clone)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub alpha0: f64,
}

impl Generator {
    pub fn zero(alpha0: f64) -> Self {
        Self {
            kind: GeneratorKind::Zero,
            alpha0,
        }
    }

    pub fn cosech(v2: f64, alpha0: f64) -> Result<Self> {
        if v2 == 0.0 || !v2.is_finite() {
            return domain(format!("cosech generator needs V2 != 0, got {v2}"));
        }
        Ok(Self {
            kind: GeneratorKind::Cosech { v2 },
            alpha0,
        })
    }

    /// `A coth q + B/A` with `A > 0`, `B > A²`.
    pub fn coth_shift(a: f64, b: f64, alpha0: f64) -> Result<Self> {
        check_coth_params(a, b)?;
        Ok(Self {
            kind: GeneratorKind::CothShift { a, b },
            alpha0,
        })
    }

    /// `-A coth q + B/A` with `A > 0`, `B > A²`.
    pub fn eckart_super(a: f64, b: f64, alpha0: f64) -> Result<Self> {
        check_coth_params(a, b)?;
        Ok(Self {
            kind: GeneratorKind::EckartSuper { a, b },
            alpha0,
        })
    }

    pub fn custom(f: Arc<GeneratorFn>, alpha0: f64) -> Self {
        Self {
            kind: GeneratorKind::Custom(f),
            alpha0,
        }
    }

    pub fn with_alpha0(&self, alpha0: f64) -> Self {
        Self {
            kind: self.kind.clone(),
            alpha0,
        }
    }

    /// `[F, F', F'']` at `z`.
    pub fn jet(&self, z: Complex64) -> [Complex64; 3] {
        let zero = Complex64::new(0.0, 0.0);
        match &self.kind {
            GeneratorKind::Zero => [zero; 3],
            GeneratorKind::Cosech { v2 } => {
                let cs = z.sinh().inv();
                let ct = z.cosh() * cs;
                // (cosech)' = -cosech coth, (cosech coth)' = -cosech coth² - cosech³
                [
                    *v2 * cs,
                    -*v2 * cs * ct,
                    *v2 * (cs * ct * ct + cs * cs * cs),
                ]
            }
            GeneratorKind::CothShift { a, b } => {
                let cs = z.sinh().inv();
                let ct = z.cosh() * cs;
                [
                    *a * ct + b / a,
                    -*a * cs * cs,
                    2.0 * *a * cs * cs * ct,
                ]
            }
            GeneratorKind::EckartSuper { a, b } => {
                let cs = z.sinh().inv();
                let ct = z.cosh() * cs;
                [
                    -*a * ct + b / a,
                    *a * cs * cs,
                    -2.0 * *a * cs * cs * ct,
                ]
            }
            GeneratorKind::Custom(f) => f(z),
        }
    }

    pub fn value(&self, z: Complex64) -> Complex64 {
        self.jet(z)[0]
    }

    pub fn derivative(&self, z: Complex64) -> Complex64 {
        self.jet(z)[1]
    }
}

/// The potential built from a generator, as a closed form in `q`.
pub fn v_from_generator(gen: &Generator, convention: Convention) -> ClosedForm {
    let c = |x: f64| Complex64::new(x, 0.0);
    let base = match (&gen.kind, convention) {
        (GeneratorKind::Zero, _) => HyperbolicForm::zero(),
        // F² = v² cosech², F' = -v cosech coth
        (GeneratorKind::Cosech { v2 }, Convention::Pseudo) => HyperbolicForm {
            cosech2: c(-v2 * v2),
            cosech_coth: I * *v2,
            ..HyperbolicForm::zero()
        },
        (GeneratorKind::Cosech { v2 }, Convention::Hermitian) => HyperbolicForm {
            cosech2: c(v2 * v2),
            cosech_coth: c(*v2),
            ..HyperbolicForm::zero()
        },
        // F² = a² + b²/a² + a² cosech² + 2b coth, F' = -a cosech²
        (GeneratorKind::CothShift { a, b }, Convention::Pseudo) => HyperbolicForm {
            constant: c(-(a * a) - b * b / (a * a)),
            cosech2: -*a * (c(*a) - I),
            coth: c(-2.0 * b),
            ..HyperbolicForm::zero()
        },
        (GeneratorKind::CothShift { a, b }, Convention::Hermitian) => HyperbolicForm {
            constant: c(a * a + b * b / (a * a)),
            cosech2: c(a * a + a),
            coth: c(2.0 * b),
            ..HyperbolicForm::zero()
        },
        // F² = a² + b²/a² + a² cosech² - 2b coth, F' = a cosech²
        (GeneratorKind::EckartSuper { a, b }, Convention::Pseudo) => HyperbolicForm {
            constant: c(-(a * a) - b * b / (a * a)),
            cosech2: -*a * (c(*a) + I),
            coth: c(2.0 * b),
            ..HyperbolicForm::zero()
        },
        (GeneratorKind::EckartSuper { a, b }, Convention::Hermitian) => HyperbolicForm {
            constant: c(a * a + b * b / (a * a)),
            cosech2: c(a * a - a),
            coth: c(-2.0 * b),
            ..HyperbolicForm::zero()
        },
        (GeneratorKind::Custom(f), conv) => {
            let f = f.clone();
            let alpha0 = gen.alpha0;
            return ClosedForm::Custom(Arc::new(move |z| {
                let [v, dv, _] = f(z);
                let base = match conv {
                    Convention::Pseudo => -v * v - I * dv,
                    Convention::Hermitian => v * v - dv,
                };
                base + alpha0
            }));
        }
    };
    ClosedForm::Hyperbolic(base.shifted(gen.alpha0))
}

/// Maximum residuals of the constraint equations linking `W`, `μ` and `F`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstraintResiduals {
    /// `max |2iWμ + 2iμ²F'|` with `W = -μF'`.
    pub w_identity: f64,
    /// `max |iμ (W'_fd - W'_exact)|` over the interior, `W'_exact = -μ'F' - μF''`.
    pub w_slope: f64,
}

/// Checks the constraint equations for `F(x)` sampled directly on `grid`.
pub fn constraint_residuals(
    gen: &Generator,
    mass: &MassProfile,
    grid: &Grid,
) -> Result<ConstraintResiduals> {
    let ms = mass.sample(grid)?;
    let mu = ms.mu();
    let dmu = ms.dmu();
    let jets: Vec<[Complex64; 3]> = grid
        .points()
        .into_iter()
        .map(|x| gen.jet(Complex64::new(x, 0.0)))
        .collect();
    let w = ComplexField::new(
        *grid,
        jets.iter().zip(&mu).map(|(j, m)| -*m * j[1]).collect(),
    )?;
    let w_identity = w
        .values()
        .iter()
        .zip(&jets)
        .zip(&mu)
        .map(|((w, j), m)| (2.0 * I * *m * (w + *m * j[1])).norm())
        .fold(0.0, f64::max);
    let dw = central_derivative(&w);
    let n = grid.n();
    let w_slope = (2..n - 2)
        .map(|i| {
            let exact = -dmu[i] * jets[i][1] - mu[i] * jets[i][2];
            (I * mu[i] * (dw.values()[i] - exact)).norm()
        })
        .fold(0.0, f64::max);
    Ok(ConstraintResiduals { w_identity, w_slope })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::make_uniform_grid;
    use approx::assert_abs_diff_eq;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    /// Finite-difference check of the generator jets.
    #[test]
    fn jets_match_finite_differences() {
        let gens = [
            Generator::cosech(1.3, 0.0).unwrap(),
            Generator::coth_shift(2.0, 25.0, 0.0).unwrap(),
            Generator::eckart_super(2.0, 25.0, 0.0).unwrap(),
        ];
        let d = 1e-5;
        for g in &gens {
            for z in [Complex64::new(0.7, -0.4), c(1.9)] {
                let [f, df, ddf] = g.jet(z);
                let fp = g.value(z + d);
                let fm = g.value(z - d);
                assert!(((fp - fm) / (2.0 * d) - df).norm() < 1e-7 * (1.0 + df.norm()));
                assert!(((fp - 2.0 * f + fm) / (d * d) - ddf).norm() < 1e-4 * (1.0 + ddf.norm()));
            }
        }
    }

    #[test]
    fn null_generator_is_constant() {
        let g = Generator::zero(3.0);
        for conv in [Convention::Pseudo, Convention::Hermitian] {
            let v = v_from_generator(&g, conv);
            assert_eq!(v.eval(Complex64::new(0.37, 0.2)), c(3.0));
        }
    }

    #[test]
    fn cosech_pseudo_structure() {
        let v2 = 2.5;
        let alpha0 = 0.75;
        let v = v_from_generator(&Generator::cosech(v2, alpha0).unwrap(), Convention::Pseudo);
        for z in [c(0.8), Complex64::new(-1.1, -0.4)] {
            let cs = z.sinh().inv();
            let ct = z.cosh() * cs;
            let expect = -v2 * v2 * cs * cs + I * v2 * cs * ct + alpha0;
            assert!((v.eval(z) - expect).norm() < 1e-12 * expect.norm());
        }
    }

    /// Direct expansion of F² - F' for F = -A coth + B/A against the Eckart
    /// form A² + B²/A² + A(A-1) cosech² - 2B coth.
    #[test]
    fn hermitian_coth_reproduces_eckart() {
        let (a, b) = (2.0, 25.0);
        let gen = Generator::eckart_super(a, b, 0.0).unwrap();
        let v = v_from_generator(&gen, Convention::Hermitian);
        for q in [0.3, 1.0, 4.0] {
            let z = c(q);
            let [f, df, _] = gen.jet(z);
            let direct = f * f - df;
            let eckart = a * a + b * b / (a * a) + a * (a - 1.0) / q.sinh().powi(2)
                - 2.0 * b / q.tanh();
            assert_abs_diff_eq!(v.eval(z).re, eckart, epsilon = 1e-10);
            assert_abs_diff_eq!(direct.re, eckart, epsilon = 1e-10);
            assert_eq!(v.eval(z).im, 0.0);
        }
    }

    #[test]
    fn pseudo_matches_direct_formula() {
        let gens = [
            Generator::cosech(-0.8, 1.5).unwrap(),
            Generator::coth_shift(1.5, 4.0, -2.0).unwrap(),
            Generator::eckart_super(1.5, 4.0, 0.5).unwrap(),
        ];
        for g in &gens {
            let v = v_from_generator(g, Convention::Hermitian);
            for z in [c(0.5), Complex64::new(2.0, 0.3)] {
                let [f, df, _] = g.jet(z);
                let direct = f * f - df + g.alpha0;
                assert!((v.eval(z) - direct).norm() < 1e-11 * (1.0 + direct.norm()));
            }
        }
        for g in &gens {
            let v = v_from_generator(g, Convention::Pseudo);
            for z in [c(0.5), Complex64::new(2.0, 0.3)] {
                let [f, df, _] = g.jet(z);
                let direct = -f * f - I * df + g.alpha0;
                assert!((v.eval(z) - direct).norm() < 1e-11 * (1.0 + direct.norm()));
            }
        }
    }

    #[test]
    fn custom_generator_follows_conventions() {
        let g = Generator::custom(Arc::new(|z| [z * z, 2.0 * z, c(2.0)]), 0.5);
        let z = Complex64::new(0.3, -1.0);
        let p = v_from_generator(&g, Convention::Pseudo).eval(z);
        assert!((p - (-z.powi(4) - I * 2.0 * z + 0.5)).norm() < 1e-14);
        let h = v_from_generator(&g, Convention::Hermitian).eval(z);
        assert!((h - (z.powi(4) - 2.0 * z + 0.5)).norm() < 1e-14);
    }

    #[test]
    fn generator_validation() {
        assert!(Generator::cosech(0.0, 0.0).is_err());
        assert!(Generator::coth_shift(2.0, 4.0, 0.0).is_err());
        assert!(Generator::coth_shift(0.0, 4.0, 0.0).is_err());
        assert!(Generator::eckart_super(-2.0, 25.0, 0.0).is_err());
    }

    #[test]
    fn constraints_vanish_for_constant_mass_and_constant_f() {
        let g = make_uniform_grid(0.5, 5.0, 91).unwrap();
        let m = MassProfile::constant(3.0).unwrap();
        let r = constraint_residuals(&Generator::cosech(1.0, 0.0).unwrap(), &m, &g).unwrap();
        assert_eq!(r.w_identity, 0.0);

        let konst = Generator::custom(Arc::new(|_| [c(2.0), c(0.0), c(0.0)]), 0.0);
        let r = constraint_residuals(&konst, &m, &g).unwrap();
        assert_eq!(r.w_identity, 0.0);
        assert_eq!(r.w_slope, 0.0);
    }

    #[test]
    fn w_slope_residual_is_second_order() {
        let m = MassProfile::constant(1.0).unwrap();
        let gen = Generator::cosech(1.0, 0.0).unwrap();
        let r = |n| {
            let g = make_uniform_grid(0.5, 5.0, n).unwrap();
            constraint_residuals(&gen, &m, &g).unwrap().w_slope
        };
        let (r1, r2) = (r(401), r(801));
        assert!(r1 < 2e-2, "{r1}");
        assert!((3.5..=4.5).contains(&(r1 / r2)), "{}", r1 / r2);
        // variable mass as well
        let m = MassProfile::RationalX2m1;
        let r = |n| {
            let g = make_uniform_grid(1.5, 5.0, n).unwrap();
            constraint_residuals(&gen, &m, &g).unwrap().w_slope
        };
        assert!((3.5..=4.5).contains(&(r(201) / r(401))));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn alpha0_is_additive(v2 in 0.1..4.0f64, a0 in -10.0..10.0f64, re in 0.1..5.0f64, im in -1.0..1.0f64) {
                let g0 = Generator::cosech(v2, 0.0).unwrap();
                let ga = g0.with_alpha0(a0);
                let z = Complex64::new(re, im);
                for conv in [Convention::Pseudo, Convention::Hermitian] {
                    let lhs = v_from_generator(&ga, conv).eval(z);
                    let rhs = v_from_generator(&g0, conv).eval(z) + a0;
                    prop_assert!((lhs - rhs).norm() <= 1e-13 * (1.0 + rhs.norm()));
                }
            }

            #[test]
            fn hermitian_with_real_f_is_real(a in 0.5..3.0f64, q in 0.05..6.0f64) {
                let g = Generator::eckart_super(a, a * a + 1.0, 0.3).unwrap();
                let v = v_from_generator(&g, Convention::Hermitian).eval(Complex64::new(q, 0.0));
                prop_assert_eq!(v.im, 0.0);
            }
        }
    }
}
