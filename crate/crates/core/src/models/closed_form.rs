use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// `c0 + c1 cosech²(sz) + c2 cosech(sz)coth(sz) + c3 coth(sz) + c4 cosech(sz)`.
///
/// Every named potential in the crate is of this shape, which makes pullback
/// through `f = e^q` exact.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperbolicForm {
    pub constant: Complex64,
    pub cosech2: Complex64,
    pub cosech_coth: Complex64,
    pub coth: Complex64,
    pub cosech: Complex64,
    /// Argument scale `s`.
    pub scale: f64,
}

impl HyperbolicForm {
    pub fn zero() -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self {
            constant: z,
            cosech2: z,
            cosech_coth: z,
            coth: z,
            cosech: z,
            scale: 1.0,
        }
    }

    fn combine(&self, cosech: Complex64, coth: Complex64) -> Complex64 {
        self.constant
            + self.cosech2 * cosech * cosech
            + self.cosech_coth * cosech * coth
            + self.coth * coth
            + self.cosech * cosech
    }

    fn has_hyperbolic_terms(&self) -> bool {
        let z = Complex64::new(0.0, 0.0);
        self.cosech2 != z || self.cosech_coth != z || self.coth != z || self.cosech != z
    }

    /// Evaluates at a (possibly complex) argument.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        if !self.has_hyperbolic_terms() {
            return self.constant;
        }
        let w = z * self.scale;
        let sh = w.sinh();
        if sh == Complex64::new(0.0, 0.0) {
            return Complex64::new(f64::NAN, f64::NAN);
        }
        let cosech = sh.inv();
        let coth = w.cosh() * cosech;
        self.combine(cosech, coth)
    }

    /// Evaluates at real `q` through `f = e^q`.
    pub fn eval_at_f(&self, f: f64) -> Complex64 {
        if !self.has_hyperbolic_terms() {
            return self.constant;
        }
        let d = f * f - 1.0;
        let cosech = Complex64::new(2.0 * f / d, 0.0);
        let coth = Complex64::new((f * f + 1.0) / d, 0.0);
        self.combine(cosech, coth)
    }

    /// Adds a constant to the form.
    pub fn shifted(mut self, by: f64) -> Self {
        self.constant += by;
        self
    }
}

/// A potential given in closed form as a function of its (complex) argument.
#[derive(Clone)]
pub enum ClosedForm {
    Hyperbolic(HyperbolicForm),
    Custom(Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>),
}

impl fmt::Debug for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Hyperbolic(h) => f.debug_tuple("Hyperbolic").field(h).finish(),
            Self::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl ClosedForm {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            Self::Hyperbolic(h) => h.eval(z),
            Self::Custom(f) => f(z),
        }
    }

    /// Value at chart coordinate `q` with `f = e^q` already computed.
    pub fn eval_on_chart(&self, q: f64, f: f64) -> Complex64 {
        match self {
            Self::Hyperbolic(h) if h.scale == 1.0 => h.eval_at_f(f),
            _ => self.eval(Complex64::new(q, 0.0)),
        }
    }

    pub fn as_hyperbolic(&self) -> Option<&HyperbolicForm> {
        match self {
            Self::Hyperbolic(h) => Some(h),
            Self::Custom(_) => None,
        }
    }
}
