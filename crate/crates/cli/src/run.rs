use pdem_core::dirac::{solve_dirac_energy, DiracModel, DiracOptions};
use pdem_core::massmap::chart_from_mass;
use pdem_core::models::{analytic_spectrum_eckart, constraint_residuals, EckartVariant, PotentialModel};
use pdem_core::numerics::{ComplexField, Grid};
use pdem_core::operators::{
    discretize_eta, discretize_pdem_x, discretize_schrodinger_q, intertwining_residual, pt_residual,
    weighted_adjoint, DiscreteOperator, Eta,
};
use pdem_core::parallel::Execution;
use pdem_core::spectra::{classify_spectrum, eig_auto, eig_dense, spectrum_compare, Method, SolverOptions};
use pdem_core::sweep::{scan_levels, ScanOptions};
use pdem_core::{c64, Complex64};

use crate::config::{scan_parameter_name, Command, DiracPotential, RunConfig};
use crate::document::{ConvergenceRow, DiracLevel, Gate, ResultDocument, ScanRowReport, SpectrumReport, VerificationReport};

pub fn run(cfg: &RunConfig) -> pdem_core::Result<ResultDocument> {
    match cfg.command() {
        Command::Solve => run_solve(cfg),
        Command::Verify => run_verify(cfg),
        Command::Scan => run_scan(cfg),
        Command::Dirac => run_dirac(cfg),
    }
}

/// `q` at each grid point: the grid itself for unit mass, else the chart.
fn q_values(cfg: &RunConfig, grid: &Grid) -> pdem_core::Result<Vec<f64>> {
    if cfg.mass.is_unit() {
        return Ok(grid.points());
    }
    let mass = cfg.mass.profile().expect("validated");
    Ok(chart_from_mass(&mass, grid, cfg.mass.anchor())?.q_values)
}

struct Sampled {
    h: DiscreteOperator,
    v: ComplexField,
    f: Option<ComplexField>,
}

fn sample(cfg: &RunConfig, grid: &Grid, alpha0_shift: f64) -> pdem_core::Result<Sampled> {
    let model = cfg.model.as_ref().expect("validated").resolve().expect("validated");
    let q = q_values(cfg, grid)?;
    let at = |q: f64| c64(q, 0.0) - model.shift;
    let form = match (&model.generator, alpha0_shift) {
        (Some((gen, conv)), s) if s != 0.0 => {
            pdem_core::models::v_from_generator(&gen.with_alpha0(gen.alpha0 + s), *conv)
        }
        _ => model.form.clone(),
    };
    let v = ComplexField::new(*grid, q.iter().map(|&q| form.eval(at(q))).collect())?;
    let f = match &model.generator {
        Some((gen, _)) => Some(ComplexField::new(*grid, q.iter().map(|&q| gen.value(at(q))).collect())?),
        None => None,
    };
    let h = if cfg.mass.is_unit() {
        discretize_schrodinger_q(&v)?
    } else {
        discretize_pdem_x(&cfg.mass.profile().expect("validated"), &v)?
    };
    Ok(Sampled { h, v, f })
}

fn threshold(cfg: &RunConfig, potential: Option<PotentialModel>, v: &ComplexField) -> f64 {
    if let Some(t) = cfg.solver.threshold {
        return t;
    }
    match potential {
        Some(p) => p.threshold(),
        None => {
            let vals = v.values();
            vals[0].re.min(vals[vals.len() - 1].re)
        }
    }
}

pub fn run_solve(cfg: &RunConfig) -> pdem_core::Result<ResultDocument> {
    let grid = cfg.grid();
    let model = cfg.model.as_ref().expect("validated").resolve().expect("validated");
    let s = sample(cfg, &grid, 0.0)?;
    let edge = threshold(cfg, model.potential, &s.v);
    let opts = SolverOptions {
        cap: cfg.solver.cap,
        residual_below: Some(edge),
    };
    let (raw, method) = if cfg.solver.dense_only {
        (eig_dense(&s.h, &opts)?, Method::Dense)
    } else {
        eig_auto(&s.h, &opts)?
    };
    let spectrum = classify_spectrum(&raw, edge, cfg.solver.im_tol);

    let mut doc = ResultDocument::new(cfg.clone());
    let atol = cfg.solver.atol.unwrap_or(0.0);
    if cfg.mass.is_unit() {
        if let Some(p) = model.potential {
            doc.comparison = p
                .analytic_spectrum()
                .map(|a| spectrum_compare(&spectrum, &a, cfg.solver.rtol, atol));
            if let PotentialModel::EckartHermitian { a, b } = p {
                let printed = analytic_spectrum_eckart(a, b, EckartVariant::AsPrinted);
                doc.comparison_as_printed = Some(spectrum_compare(&spectrum, &printed, cfg.solver.rtol, atol));
            }
        }
    }
    doc.spectrum = Some(SpectrumReport::new(&spectrum, method));
    Ok(doc)
}

fn relative(diff: f64, scale: f64) -> f64 {
    if diff == 0.0 {
        0.0
    } else {
        diff / scale
    }
}

pub fn run_verify(cfg: &RunConfig) -> pdem_core::Result<ResultDocument> {
    let grid = cfg.grid();
    let model = cfg.model.as_ref().expect("validated").resolve().expect("validated");
    let (gen, _) = model.generator.clone().expect("validated");
    let mass = cfg.mass.profile().expect("validated");
    let trim = cfg.solver.trim;

    let mut rows = Vec::new();
    let mut base = None;
    for g in [grid, grid.refined()] {
        let s = sample(cfg, &g, 0.0)?;
        let eta = discretize_eta(s.f.as_ref().expect("generator model"), &mass, Eta::Two)?;
        rows.push(ConvergenceRow {
            n: g.n(),
            h: g.h(),
            residual: intertwining_residual(&s.h, &eta, trim)?,
        });
        if base.is_none() {
            base = Some((s, eta));
        }
    }
    let (s, eta2) = base.expect("first grid");
    let ratio = (rows[1].residual > 0.0).then(|| rows[0].residual / rows[1].residual);
    let observed_order = ratio.map(|r| r.log2());

    let mut doc = ResultDocument::new(cfg.clone());
    let tol = cfg.verify.identity_tol;
    doc.add_gate(Gate::at_most("intertwining", rows[0].residual, cfg.verify.intertwining_tol));

    let eta1 = discretize_eta(s.f.as_ref().expect("generator model"), &mass, Eta::One)?;
    let rotated = eta2.matrix.map(|z| -Complex64::i() * z);
    doc.add_gate(Gate::at_most(
        "eta1_equals_minus_i_eta2",
        relative(eta1.matrix.sub(&rotated).max_abs(), eta1.matrix.max_abs()),
        tol,
    ));

    let back = weighted_adjoint(&weighted_adjoint(&s.h));
    doc.add_gate(Gate::at_most(
        "adjoint_involution",
        relative(back.matrix.sub(&s.h.matrix).max_abs(), s.h.matrix.max_abs()),
        tol,
    ));

    let raised = sample(cfg, &grid, 1.0)?;
    let expected = s.h.shifted(c64(1.0, 0.0));
    doc.add_gate(Gate::at_most(
        "alpha0_shift",
        relative(raised.h.matrix.sub(&expected.matrix).max_abs(), s.h.matrix.max_abs()),
        tol,
    ));

    let finite = |x: f64| x.is_finite().then_some(x);
    let (w_identity, w_slope) = match constraint_residuals(&gen, &mass, &grid) {
        Ok(c) => (finite(c.w_identity), finite(c.w_slope)),
        Err(_) => (None, None),
    };
    if let Some(r) = w_identity {
        doc.add_gate(Gate::at_most("constraint_w_identity", r, tol));
    }

    doc.verification = Some(VerificationReport {
        frame: if cfg.mass.is_unit() { "q" } else { "x" }.to_string(),
        intertwining: rows,
        ratio,
        observed_order,
        pt_residual: if grid.is_symmetric() { Some(pt_residual(&s.v)?) } else { None },
        constraint_w_identity: w_identity,
        constraint_w_slope: w_slope,
    });
    Ok(doc)
}

pub fn run_scan(cfg: &RunConfig) -> pdem_core::Result<ResultDocument> {
    let model = cfg.model.as_ref().expect("validated").resolve().expect("validated");
    let potential = model.potential.expect("validated");
    let scan = cfg.scan.as_ref().expect("validated");
    let name = scan_parameter_name(&scan.parameter);
    let opts = ScanOptions {
        grid: cfg.grid(),
        solver: SolverOptions {
            cap: cfg.solver.cap,
            residual_below: None,
        },
        im_tol: cfg.solver.im_tol,
        dense_only: cfg.solver.dense_only,
    };
    let rows = scan_levels(&potential, &name, &scan.values(), &opts, Execution::default())?;
    let mut doc = ResultDocument::new(cfg.clone());
    doc.scan = Some(
        rows.into_iter()
            .map(|r| {
                let analytic = potential
                    .with_parameter(&name, r.param)
                    .ok()
                    .and_then(|m| m.analytic_spectrum())
                    .map(|a| a.energies());
                ScanRowReport {
                    param: r.param,
                    count: r.count,
                    energies: r.energies,
                    complex_pairs: r.complex_pairs,
                    analytic,
                }
            })
            .collect(),
    );
    Ok(doc)
}

pub fn run_dirac(cfg: &RunConfig) -> pdem_core::Result<ResultDocument> {
    let d = cfg.dirac.as_ref().expect("filled");
    let grid = cfg.grid();
    let v = match d.potential {
        DiracPotential::Sech2 => ComplexField::from_fn(grid, |x| c64(-d.depth / (x / d.width).cosh().powi(2), 0.0))?,
        DiracPotential::Free => ComplexField::constant(grid, c64(0.0, 0.0))?,
    };
    let model = DiracModel::new(v, cfg.mass.profile().expect("validated"))?;
    let opts = DiracOptions {
        max_iter: d.max_iter,
        solver: SolverOptions {
            cap: cfg.solver.cap,
            residual_below: None,
        },
    };
    let mut doc = ResultDocument::new(cfg.clone());
    let mut levels = Vec::new();
    for level in 0..d.levels {
        let row = match solve_dirac_energy(&model, level, (d.eps_lo, d.eps_hi), &opts) {
            Ok(s) => DiracLevel {
                level,
                eps: Some(s.eps),
                lambda: Some(s.lambda),
                mismatch: Some(s.g),
                iterations: Some(s.iterations),
                residual_upper: Some(s.residual_upper),
                residual_lower: Some(s.residual_lower),
                error: None,
            },
            Err(e) => DiracLevel {
                level,
                eps: None,
                lambda: None,
                mismatch: None,
                iterations: None,
                residual_upper: None,
                residual_lower: None,
                error: Some(e.to_string()),
            },
        };
        doc.pass &= row.error.is_none();
        levels.push(row);
    }
    doc.dirac = Some(levels);
    Ok(doc)
}
