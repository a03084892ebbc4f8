//! Generators, named potentials and their closed-form spectra.

mod analytic;
mod closed_form;
mod generator;
mod potential;

pub use analytic::{
    analytic_spectrum_eckart, analytic_spectrum_pt_towers, analytic_spectrum_ptpt,
    level_crossing_report, AnalyticLevel, AnalyticSpectrum, CrossingRow, EckartVariant,
};
pub use closed_form::{ClosedForm, HyperbolicForm};
pub use generator::{
    constraint_residuals, v_from_generator, ConstraintResiduals, Convention, Generator,
    GeneratorFn, GeneratorKind,
};
pub use potential::{evaluate_model, PotentialModel, DEFAULT_GAMMA};
