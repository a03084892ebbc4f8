//! Run configuration: a TOML document with flat sections.
//!
//! ```toml
//! [model]
//! kind = "pseudo_pt"
//! v2 = 2.5
//!
//! [grid]
//! n = 801
//! ```
//!
//! Every omitted value is filled with its default before validation, and the
//! filled configuration is what result documents echo.

use std::f64::consts::PI;
use std::fmt;

use pdem_core::massmap::MassProfile;
use pdem_core::models::{Convention, Generator, PotentialModel, DEFAULT_GAMMA};
use pdem_core::numerics::{make_uniform_grid, Grid};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {message}")]
    Read { path: String, message: String },
    #[error("malformed config: {0}")]
    Parse(String),
    #[error("invalid `{field}`: {message}")]
    Invalid { field: String, message: String },
}

fn invalid<T>(field: &str, message: impl fmt::Display) -> Result<T, ConfigError> {
    Err(ConfigError::Invalid {
        field: field.to_string(),
        message: message.to_string(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Solve,
    Verify,
    Scan,
    Dirac,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Command::Solve => "solve",
            Command::Verify => "verify",
            Command::Scan => "scan",
            Command::Dirac => "dirac",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorName {
    Zero,
    Cosech,
    CothShift,
    EckartSuper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConventionName {
    Pseudo,
    Hermitian,
}

fn one() -> f64 {
    1.0
}

fn default_gamma() -> f64 {
    DEFAULT_GAMMA
}

fn sqrt2() -> f64 {
    2f64.sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelConfig {
    PtPoschlTeller {
        v1: f64,
        v2: f64,
        #[serde(default = "one")]
        alpha: f64,
        #[serde(default)]
        c: f64,
        #[serde(default = "default_gamma")]
        gamma: f64,
    },
    PseudoPt {
        v2: f64,
        #[serde(default = "default_gamma")]
        gamma: f64,
    },
    PtCosech {
        v2: f64,
        #[serde(default = "default_gamma")]
        gamma: f64,
    },
    EckartHermitian {
        a: f64,
        b: f64,
    },
    EckartComplex {
        a: f64,
        b: f64,
    },
    /// Potential built directly from a generator `F`.
    Generator {
        generator: GeneratorName,
        #[serde(default = "pseudo")]
        convention: ConventionName,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        v2: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        a: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        b: Option<f64>,
        #[serde(default)]
        alpha0: f64,
        #[serde(default = "default_gamma")]
        gamma: f64,
    },
}

fn pseudo() -> ConventionName {
    ConventionName::Pseudo
}

/// A model ready to sample: a closed form on a shifted contour, plus the
/// generator it came from when there is one.
#[derive(Clone)]
pub struct ResolvedModel {
    pub potential: Option<PotentialModel>,
    pub generator: Option<(Generator, Convention)>,
    pub form: pdem_core::models::ClosedForm,
    pub shift: pdem_core::Complex64,
}

impl ResolvedModel {
    pub fn is_eckart(&self) -> bool {
        matches!(
            self.potential,
            Some(PotentialModel::EckartHermitian { .. } | PotentialModel::EckartComplex { .. })
        )
    }
}

impl ModelConfig {
    pub fn resolve(&self) -> Result<ResolvedModel, ConfigError> {
        let core = |r: pdem_core::Result<PotentialModel>| r.or_else(|e| invalid("model", e));
        let potential = match *self {
            ModelConfig::PtPoschlTeller { v1, v2, alpha, c, gamma } => {
                if v2 == 0.0 {
                    return invalid("model.v2", "pt_poschl_teller needs V2 != 0");
                }
                core(PotentialModel::pt_poschl_teller(v1, v2, alpha, c, gamma))?
            }
            ModelConfig::PseudoPt { v2, gamma } => core(PotentialModel::pseudo_pt(v2, gamma))?,
            ModelConfig::PtCosech { v2, gamma } => core(PotentialModel::pt_cosech(v2, gamma))?,
            ModelConfig::EckartHermitian { a, b } => core(PotentialModel::eckart_hermitian(a, b))?,
            ModelConfig::EckartComplex { a, b } => core(PotentialModel::eckart_complex(a, b))?,
            ModelConfig::Generator {
                generator,
                convention,
                v2,
                a,
                b,
                alpha0,
                gamma,
            } => {
                let need = |v: Option<f64>, key: &str| {
                    v.ok_or_else(|| ConfigError::Invalid {
                        field: format!("model.{key}"),
                        message: format!("required by generator {generator:?}"),
                    })
                };
                let forbid = |v: Option<f64>, key: &str| match v {
                    Some(_) => invalid(&format!("model.{key}"), format!("not used by generator {generator:?}")),
                    None => Ok(()),
                };
                let gen = match generator {
                    GeneratorName::Zero => {
                        forbid(v2, "v2")?;
                        forbid(a, "a")?;
                        forbid(b, "b")?;
                        Ok(Generator::zero(alpha0))
                    }
                    GeneratorName::Cosech => {
                        forbid(a, "a")?;
                        forbid(b, "b")?;
                        Generator::cosech(need(v2, "v2")?, alpha0)
                    }
                    GeneratorName::CothShift => {
                        forbid(v2, "v2")?;
                        Generator::coth_shift(need(a, "a")?, need(b, "b")?, alpha0)
                    }
                    GeneratorName::EckartSuper => {
                        forbid(v2, "v2")?;
                        Generator::eckart_super(need(a, "a")?, need(b, "b")?, alpha0)
                    }
                }
                .or_else(|e| invalid("model", e))?;
                if !(gamma >= 0.0 && gamma < PI) {
                    return invalid("model.gamma", format!("must lie in [0, π), got {gamma}"));
                }
                let convention = match convention {
                    ConventionName::Pseudo => Convention::Pseudo,
                    ConventionName::Hermitian => Convention::Hermitian,
                };
                let form = pdem_core::models::v_from_generator(&gen, convention);
                return Ok(ResolvedModel {
                    potential: None,
                    generator: Some((gen, convention)),
                    form,
                    shift: pdem_core::c64(0.0, gamma),
                });
            }
        };
        Ok(ResolvedModel {
            potential: Some(potential),
            generator: potential.generator(),
            form: potential.closed_form(),
            shift: potential.contour_shift(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MassConfig {
    /// `M ≡ m0`; the chart is `q = m0 (x - x0)`.
    Constant {
        #[serde(default = "one")]
        m0: f64,
        #[serde(default)]
        x0: f64,
    },
    /// `M = 2x/(x² - 1)` on `x > 1`, chart anchored at `q(x0) = 0`.
    RationalX2m1 {
        #[serde(default = "sqrt2")]
        x0: f64,
    },
}

impl Default for MassConfig {
    fn default() -> Self {
        MassConfig::Constant { m0: 1.0, x0: 0.0 }
    }
}

impl MassConfig {
    pub fn profile(&self) -> Result<MassProfile, ConfigError> {
        match *self {
            MassConfig::Constant { m0, .. } => MassProfile::constant(m0).or_else(|e| invalid("mass.m0", e)),
            MassConfig::RationalX2m1 { .. } => Ok(MassProfile::rational_x2m1()),
        }
    }

    pub fn anchor(&self) -> f64 {
        match *self {
            MassConfig::Constant { x0, .. } | MassConfig::RationalX2m1 { x0 } => x0,
        }
    }

    /// Unit constant mass: `x` and `q` coincide and no chart is needed.
    pub fn is_unit(&self) -> bool {
        matches!(*self, MassConfig::Constant { m0, x0 } if m0 == 1.0 && x0 == 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub n: Option<usize>,
}

impl GridConfig {
    pub fn grid(&self) -> Result<Grid, ConfigError> {
        let (Some(a), Some(b), Some(n)) = (self.a, self.b, self.n) else {
            return invalid("grid", "grid was not filled");
        };
        make_uniform_grid(a, b, n).or_else(|e| invalid("grid", e))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    /// Imaginary-part tolerance for calling a level real.
    pub im_tol: Option<f64>,
    /// Rows and columns dropped at each end for residual diagnostics.
    pub trim: usize,
    /// Largest interior dimension the dense solver accepts.
    pub cap: usize,
    /// Continuum edge; levels at or above it are not classified.
    pub threshold: Option<f64>,
    /// Skip the tridiagonal fast path.
    pub dense_only: bool,
    pub rtol: f64,
    pub atol: Option<f64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            im_tol: None,
            trim: 2,
            cap: 2000,
            threshold: None,
            dense_only: false,
            rtol: 0.01,
            atol: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    /// Gate on the intertwining residual at the configured grid.
    pub intertwining_tol: f64,
    /// Gate on exact algebraic identities.
    pub identity_tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            intertwining_tol: 2e-3,
            identity_tol: 1e-12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanConfig {
    pub parameter: String,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl ScanConfig {
    /// `steps` values from `start` to `stop` inclusive.
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let d = (self.stop - self.start) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| if k + 1 == self.steps { self.stop } else { self.start + d * k as f64 })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiracPotential {
    /// `v(x) = -depth · sech²(x / width)`.
    Sech2,
    Free,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiracConfig {
    pub potential: DiracPotential,
    pub depth: f64,
    pub width: f64,
    /// Number of levels, counted from the lowest.
    pub levels: usize,
    pub eps_lo: f64,
    pub eps_hi: f64,
    pub max_iter: usize,
}

impl Default for DiracConfig {
    fn default() -> Self {
        Self {
            potential: DiracPotential::Sech2,
            depth: 0.5,
            width: 1.0,
            levels: 1,
            eps_lo: 0.0,
            eps_hi: 1.0,
            max_iter: 60,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub path: Option<String>,
    pub format: Format,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            path: None,
            format: Format::Json,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<Command>,
    pub model: Option<ModelConfig>,
    #[serde(default)]
    pub mass: MassConfig,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub verify: VerifyConfig,
    pub scan: Option<ScanConfig>,
    pub dirac: Option<DiracConfig>,
    #[serde(default)]
    pub output: OutputConfig,
}

/// Parses, fills defaults and validates a configuration for `command`.
pub fn parse_config(text: &str, command: Command) -> Result<RunConfig, ConfigError> {
    let mut cfg: RunConfig = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string().trim_end().to_string()))?;
    match cfg.command {
        Some(c) if c != command => {
            return invalid("command", format!("config is for `{c}` but `{command}` was requested"));
        }
        _ => cfg.command = Some(command),
    }
    cfg.fill_defaults();
    cfg.validate()?;
    Ok(cfg)
}

pub fn read_config(path: &std::path::Path, command: Command) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Read {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_config(&text, command)
}

impl RunConfig {
    pub fn command(&self) -> Command {
        self.command.unwrap_or(Command::Solve)
    }

    fn default_grid(&self) -> (f64, f64, usize) {
        if self.command() == Command::Dirac {
            return (-15.0, 15.0, 1201);
        }
        if matches!(self.mass, MassConfig::RationalX2m1 { .. }) {
            return (1.5, 5.0, 801);
        }
        match self.model {
            Some(ModelConfig::EckartHermitian { .. } | ModelConfig::EckartComplex { .. }) => (0.05, 10.0, 1500),
            _ => (-12.0, 12.0, 1201),
        }
    }

    fn fill_defaults(&mut self) {
        let (a, b, n) = self.default_grid();
        self.grid.a.get_or_insert(a);
        self.grid.b.get_or_insert(b);
        self.grid.n.get_or_insert(n);
        if self.solver.atol.is_none() {
            let eckart = matches!(
                self.model,
                Some(ModelConfig::EckartHermitian { .. } | ModelConfig::EckartComplex { .. })
            );
            self.solver.atol = Some(if eckart { 0.05 } else { 0.0 });
        }
        if self.command() == Command::Dirac && self.dirac.is_none() {
            self.dirac = Some(DiracConfig::default());
        }
    }

    fn validate(&self) -> Result<(), ConfigError> {
        let grid = self.grid.grid()?;
        let mass = self.mass.profile()?;
        if let MassConfig::RationalX2m1 { x0 } = self.mass {
            if !(grid.a() > 1.0) {
                return invalid("grid.a", format!("rational mass lives on x > 1, grid starts at {}", grid.a()));
            }
            if !(x0 > 1.0) {
                return invalid("mass.x0", format!("chart anchor must satisfy x0 > 1, got {x0}"));
            }
        }
        let s = &self.solver;
        if s.trim < 2 || 2 * s.trim + 3 > grid.n() {
            return invalid("solver.trim", format!("need 2 <= trim and 2·trim + 3 <= n, got trim = {}", s.trim));
        }
        if s.cap == 0 {
            return invalid("solver.cap", "must be positive");
        }
        if let Some(t) = s.im_tol {
            if !(t >= 0.0) {
                return invalid("solver.im_tol", format!("must be non-negative, got {t}"));
            }
        }
        if !(s.rtol >= 0.0) || !(s.atol.unwrap_or(0.0) >= 0.0) {
            return invalid("solver.rtol", "tolerances must be non-negative");
        }
        if !(self.verify.intertwining_tol > 0.0 && self.verify.identity_tol >= 0.0) {
            return invalid("verify", "gate tolerances must be positive");
        }

        let command = self.command();
        if command == Command::Dirac {
            let d = self.dirac.as_ref().expect("filled");
            if d.levels == 0 {
                return invalid("dirac.levels", "need at least one level");
            }
            if !(d.eps_lo.is_finite() && d.eps_hi.is_finite() && d.eps_lo < d.eps_hi) {
                return invalid("dirac.eps_lo", format!("need eps_lo < eps_hi, got ({}, {})", d.eps_lo, d.eps_hi));
            }
            if !(d.width > 0.0) || !d.depth.is_finite() {
                return invalid("dirac.width", "need a finite depth and width > 0");
            }
            if d.max_iter == 0 {
                return invalid("dirac.max_iter", "must be positive");
            }
            return Ok(());
        }

        let Some(model) = &self.model else {
            return invalid("model", format!("`{command}` needs a [model] section"));
        };
        let resolved = model.resolve()?;
        if resolved.is_eckart() && self.mass.is_unit() && !(grid.a() > 0.0) {
            return invalid("grid.a", format!("Eckart potentials live on q > 0, grid starts at {}", grid.a()));
        }
        if !self.mass.is_unit() {
            mass.sample(&grid).or_else(|e| invalid("mass", e))?;
        }
        match command {
            Command::Verify if resolved.generator.is_none() => {
                invalid("model.kind", "verify needs a model built from a generator")
            }
            Command::Scan => {
                let Some(scan) = &self.scan else {
                    return invalid("scan", "`scan` needs a [scan] section");
                };
                if scan.steps == 0 {
                    return invalid("scan.steps", "must be positive");
                }
                if !self.mass.is_unit() {
                    return invalid("mass", "scans run on the unit-mass frame");
                }
                let Some(potential) = resolved.potential else {
                    return invalid("model.kind", "scans need a named model");
                };
                for v in scan.values() {
                    potential
                        .with_parameter(&scan_parameter_name(&scan.parameter), v)
                        .or_else(|e| invalid("scan.parameter", e))?;
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn grid(&self) -> Grid {
        self.grid.grid().expect("validated")
    }
}

/// Eckart parameters are `A` and `B` in the model API.
pub fn scan_parameter_name(name: &str) -> String {
    match name {
        "a" => "A".into(),
        "b" => "B".into(),
        other => other.into(),
    }
}
