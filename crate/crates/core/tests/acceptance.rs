//! Acceptance suite. Prints one line per criterion and exits non-zero when
//! any of them fails. Supplementary checks (`S*`) are reported alongside.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use pdem_core::dirac::{solve_dirac_energy, DiracModel, DiracOptions};
use pdem_core::massmap::{frame_equivalence_data, pullback_potential, MassProfile};
use pdem_core::models::{
    analytic_spectrum_eckart, analytic_spectrum_ptpt, evaluate_model, v_from_generator, Convention,
    EckartVariant, Generator, PotentialModel,
};
use pdem_core::numerics::{make_uniform_grid, ComplexField, Grid};
use pdem_core::operators::{
    discretize_eta, discretize_pdem_x, discretize_schrodinger_q, intertwining_residual, pt_residual,
    weighted_adjoint, DiscreteOperator, Eta,
};
use pdem_core::parallel::Execution;
use pdem_core::spectra::{
    classify_spectrum, eig_auto, eig_dense, refine_shoot, spectrum_compare, ShootOptions, SolverOptions,
};
use pdem_core::sweep::{scan_levels, ScanOptions};
use pdem_core::{c64, Complex64};

type Check = Result<(bool, String), String>;

struct Outcome {
    id: &'static str,
    title: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
    budget: Duration,
}

fn run(id: &'static str, title: &'static str, budget_s: u64, f: fn() -> Check) -> Outcome {
    let t = Instant::now();
    let res = f();
    let elapsed = t.elapsed();
    let budget = Duration::from_secs(budget_s);
    let (ok, detail) = match res {
        Ok(x) => x,
        Err(e) => (false, format!("error: {e}")),
    };
    Outcome {
        id,
        title,
        pass: ok && elapsed <= budget,
        detail,
        elapsed,
        budget,
    }
}

fn e<T>(r: pdem_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn contour_pair(n: usize, v2: f64, gamma: f64) -> Result<(DiscreteOperator, DiscreteOperator), String> {
    let g = e(make_uniform_grid(-12.0, 12.0, n))?;
    let gen = e(Generator::cosech(v2, 0.0))?;
    let form = v_from_generator(&gen, Convention::Pseudo);
    let shift = c64(0.0, gamma);
    let v = e(ComplexField::from_fn(g, |x| form.eval(c64(x, 0.0) - shift)))?;
    let f = e(ComplexField::from_fn(g, |x| gen.value(c64(x, 0.0) - shift)))?;
    let h = e(discretize_schrodinger_q(&v))?;
    let eta = e(discretize_eta(&f, &e(MassProfile::constant(1.0))?, Eta::Two))?;
    Ok((h, eta))
}

fn c1_intertwining() -> Check {
    let (h, eta) = contour_pair(1201, 2.5, 0.4)?;
    let r1 = e(intertwining_residual(&h, &eta, 2))?;
    let (h, eta) = contour_pair(2401, 2.5, 0.4)?;
    let r2 = e(intertwining_residual(&h, &eta, 2))?;
    let ratio = r1 / r2;

    let g = e(make_uniform_grid(-12.0, 12.0, 1201))?;
    let zero = Generator::zero(0.7);
    let form = v_from_generator(&zero, Convention::Pseudo);
    let v = e(ComplexField::from_fn(g, |x| form.eval(c64(x, 0.0))))?;
    let f = e(ComplexField::constant(g, c64(0.0, 0.0)))?;
    let h0 = e(discretize_schrodinger_q(&v))?;
    let eta0 = e(discretize_eta(&f, &e(MassProfile::constant(1.0))?, Eta::Two))?;
    let r0 = e(intertwining_residual(&h0, &eta0, 2))?;

    let ok = r1 <= 2e-3 && (3.5..=4.5).contains(&ratio) && r0 == 0.0;
    Ok((
        ok,
        format!(
            "residual(n=1201) = {r1:.4e} (<= 2e-3: {}), ratio 1201/2401 = {ratio:.3} (in [3.5, 4.5]: {}), F=0 residual = {r0:e}",
            r1 <= 2e-3,
            (3.5..=4.5).contains(&ratio)
        ),
    ))
}

/// Dense spectrum below the threshold, and shooting refinements of every
/// real level.
fn dense_and_shoot(model: &PotentialModel, n: usize) -> Result<(pdem_core::spectra::Spectrum, Vec<(f64, f64)>), String> {
    let g = e(make_uniform_grid(-12.0, 12.0, n))?;
    let op = e(discretize_schrodinger_q(&e(evaluate_model(model, &g))?))?;
    let raw = e(eig_dense(&op, &SolverOptions::default()))?;
    let s = classify_spectrum(&raw, model.threshold(), None);
    let form = model.closed_form();
    let shift = model.contour_shift();
    let v = move |x: f64| form.eval(c64(x, 0.0) - shift);
    let mut refined = Vec::new();
    for &level in &s.real_levels {
        let r = e(refine_shoot(&v, c64(level, 0.0), (-12.0, 12.0), &ShootOptions::default()))?;
        refined.push((level, r.re));
    }
    Ok((s, refined))
}

fn c2_pseudo_pt_spectrum() -> Check {
    let model = e(PotentialModel::pseudo_pt(2.5, 0.4))?;
    let (s, refined) = dense_and_shoot(&model, 801)?;
    let below: Vec<Complex64> = s.eigenvalues.iter().copied().filter(|z| z.re < 0.0).collect();
    let max_im = below.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    let a_ok = max_im <= 1e-3;
    let cmp = spectrum_compare(&s, &analytic_spectrum_ptpt(2.5), 0.01, 0.0);
    let agree = refined.iter().all(|(d, r)| ((d - r) / r).abs() <= 1e-4);
    let lowest = s.eigenvalues.iter().take(2).map(|z| format!("{:.4}{:+.4}i", z.re, z.im)).collect::<Vec<_>>();
    Ok((
        a_ok && cmp.pass && agree,
        format!(
            "(a) {} eigenvalues below 0, max |Im| = {max_im:.2e} (pass: {a_ok}); (b) real levels {:?} vs [-4, -1] (pass: {}); \
             dense/shoot agreement on {} levels (pass: {agree}); lowest eigenvalues {lowest:?}",
            below.len(),
            s.real_levels,
            cmp.pass,
            refined.len()
        ),
    ))
}

fn crossing_scan(model: PotentialModel) -> Check {
    let opts = ScanOptions {
        grid: e(make_uniform_grid(-12.0, 12.0, 801))?,
        solver: SolverOptions::default(),
        im_tol: None,
        dense_only: true,
    };
    let rows = e(scan_levels(&model, "v2", &[1.0, 2.0, 3.0], &opts, Execution::Parallel))?;
    let mut ok = true;
    let mut parts = Vec::new();
    for (row, expect) in rows.iter().zip([1usize, 2, 3]) {
        let exact = analytic_spectrum_ptpt(row.param).energies();
        let values_ok = row.energies.len() == exact.len()
            && row
                .energies
                .iter()
                .zip(&exact)
                .all(|(a, b)| (a - b).abs() <= (0.02 * b.abs()).max(0.02));
        ok &= row.count == expect && values_ok;
        parts.push(format!("V2={}: count {} (want {expect}) {:?}", row.param, row.count, row.energies));
    }
    Ok((ok, parts.join("; ")))
}

fn c3_level_crossing() -> Check {
    crossing_scan(e(PotentialModel::pseudo_pt(1.0, 0.4))?)
}

fn eckart_levels(q0: f64, n: usize) -> Result<(pdem_core::spectra::Spectrum, &'static str), String> {
    let model = e(PotentialModel::eckart_hermitian(2.0, 25.0))?;
    let g = e(make_uniform_grid(q0, 10.0, n))?;
    let op = e(discretize_schrodinger_q(&e(evaluate_model(&model, &g))?))?;
    let opts = SolverOptions {
        cap: 2000,
        residual_below: Some(model.threshold()),
    };
    let (raw, method) = e(eig_auto(&op, &opts))?;
    let name = match method {
        pdem_core::spectra::Method::Dense => "dense",
        pdem_core::spectra::Method::Tridiagonal => "tridiagonal",
    };
    Ok((classify_spectrum(&raw, model.threshold(), None), name))
}

fn c4_eckart() -> Check {
    let (s, method) = eckart_levels(0.05, 1500)?;
    let std = analytic_spectrum_eckart(2.0, 25.0, EckartVariant::Standard);
    let printed = analytic_spectrum_eckart(2.0, 25.0, EckartVariant::AsPrinted);
    let cmp = spectrum_compare(&s, &std, 0.01, 0.05);
    Ok((
        cmp.pass,
        format!(
            "numeric ({method}) {:?} vs standard {:?}; literal variant {:?}, threshold {}",
            s.real_levels,
            std.energies(),
            printed.energies(),
            std.threshold
        ),
    ))
}

fn frame_spectra(n: usize) -> Result<(Vec<f64>, Vec<f64>), String> {
    let mass = MassProfile::RationalX2m1;
    let gx = e(make_uniform_grid(1.5, 5.0, n))?;
    let frames = e(frame_equivalence_data(&mass, &gx, 2f64.sqrt()))?;
    let form = e(PotentialModel::eckart_hermitian(2.0, 25.0))?.closed_form();
    let hx = e(discretize_pdem_x(&mass, &e(pullback_potential(&form, &frames.chart))?))?;
    let hq = e(discretize_schrodinger_q(&e(frames.sample_closed_form(&form))?))?;
    let lowest = |op: &DiscreteOperator| -> Result<Vec<f64>, String> {
        let (s, _) = e(eig_auto(op, &SolverOptions::default()))?;
        Ok(s.eigenvalues.iter().take(5).map(|z| z.re).collect())
    };
    Ok((lowest(&hx)?, lowest(&hq)?))
}

fn c5_frames() -> Check {
    let (x, q) = frame_spectra(801)?;
    let worst = x.iter().zip(&q).map(|(a, b)| ((a - b) / b).abs()).fold(0.0, f64::max);
    Ok((worst <= 5e-3 && x.len() == 5, format!("x-frame {x:.4?}, q-frame {q:.4?}, max rel diff {worst:.2e}")))
}

fn sech_well(n: usize, v0: f64) -> Result<DiracModel, String> {
    let g = e(make_uniform_grid(-15.0, 15.0, n))?;
    e(DiracModel::new(
        e(ComplexField::from_fn(g, |x| c64(-v0 / x.cosh().powi(2), 0.0)))?,
        e(MassProfile::constant(1.0))?,
    ))
}

fn c6_dirac() -> Check {
    // frozen from a dense scan of g(ε) with the same stencils
    let reference = [(1201usize, 0.810_982_054_237_499_7), (2401, 0.810_990_503_298_397_4)];
    let opts = DiracOptions {
        solver: SolverOptions { cap: 2400, residual_below: None },
        ..DiracOptions::default()
    };
    let mut res = Vec::new();
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, eps_ref) in reference {
        let sol = e(solve_dirac_energy(&sech_well(n, 0.5)?, 0, (0.0, 1.0), &opts))?;
        ok &= sol.eps > 0.0 && sol.eps < 1.0 && (sol.eps - eps_ref).abs() <= 1e-6;
        parts.push(format!("n={n}: eps = {:.10} (reference {eps_ref:.10}), residual {:.3e}", sol.eps, sol.residual_upper));
        res.push(sol.residual_upper);
    }
    let ratio = res[0] / res[1];
    ok &= res[0] <= 1e-3 && (3.5..=4.5).contains(&ratio);

    // free particle in a box: ε² = k² + m0²
    let err = |n: usize| -> Result<f64, String> {
        let g = e(make_uniform_grid(0.0, 4.0, n))?;
        let m = e(DiracModel::new(e(ComplexField::constant(g, c64(0.0, 0.0)))?, e(MassProfile::constant(1.0))?))?;
        let k = std::f64::consts::PI / 4.0;
        let sol = e(solve_dirac_energy(&m, 0, (1.0, 2.0), &DiracOptions::default()))?;
        Ok((sol.eps * sol.eps - k * k - 1.0).abs())
    };
    let (f1, f2) = (err(201)?, err(401)?);
    let free_ratio = f1 / f2;
    ok &= (3.5..=4.5).contains(&free_ratio);
    parts.push(format!("residual ratio {ratio:.3}; free dispersion error {f1:.2e} -> {f2:.2e} (ratio {free_ratio:.3})"));
    Ok((ok, parts.join("; ")))
}

fn c7_pt_dichotomy() -> Check {
    let g = e(make_uniform_grid(-12.0, 12.0, 1201))?;
    let pt = e(PotentialModel::pt_poschl_teller(3.0, 1.0, 1.0, 0.0, 0.4))?;
    let r_pt = e(pt_residual(&e(evaluate_model(&pt, &g))?))?;
    let pseudo = e(evaluate_model(&e(PotentialModel::pseudo_pt(2.5, 0.4))?, &g))?;
    let r_ps = e(pt_residual(&pseudo))?;
    let im_max = pseudo.values().iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    Ok((
        r_pt <= 1e-12 && r_ps > 0.1 * im_max,
        format!("Pöschl–Teller residual {r_pt:.2e}; pseudo family residual {r_ps:.3e} vs 0.1·max|Im V| = {:.3e}", 0.1 * im_max),
    ))
}

fn c8_invariants() -> Check {
    let g = e(make_uniform_grid(-6.0, 6.0, 301))?;
    let gen0 = e(Generator::cosech(1.5, 0.0))?;
    let alpha0 = 2.75;
    let shift = c64(0.0, 0.4);
    let sample = |gen: &Generator| -> Result<DiscreteOperator, String> {
        let form = v_from_generator(gen, Convention::Pseudo);
        e(discretize_schrodinger_q(&e(ComplexField::from_fn(g, |x| form.eval(c64(x, 0.0) - shift)))?))
    };
    let h0 = sample(&gen0)?;
    let h1 = sample(&gen0.with_alpha0(alpha0))?;
    let shifted = h0.shifted(c64(alpha0, 0.0));
    let alpha_err = h1.matrix.sub(&shifted.matrix).max_abs() / h0.matrix.max_abs();

    let f = e(ComplexField::from_fn(g, |x| gen0.value(c64(x, 0.0) - shift)))?;
    let mass = e(MassProfile::constant(1.3))?;
    let e1 = e(discretize_eta(&f, &mass, Eta::One))?;
    let e2 = e(discretize_eta(&f, &mass, Eta::Two))?;
    let eta_exact = e1.matrix == e2.matrix.map(|z| -Complex64::i() * z);

    let gx = e(make_uniform_grid(1.5, 5.0, 301))?;
    let hx = e(discretize_pdem_x(
        &MassProfile::RationalX2m1,
        &e(ComplexField::from_fn(gx, |x| c64(1.0 / x, x.sin())))?,
    ))?;
    let inv_err = weighted_adjoint(&weighted_adjoint(&hx)).matrix.sub(&hx.matrix).max_abs() / hx.matrix.max_abs();
    let unit_exact = weighted_adjoint(&weighted_adjoint(&h0)) == h0;

    let small = e(make_uniform_grid(-6.0, 6.0, 121))?;
    let form = v_from_generator(&gen0, Convention::Pseudo);
    let hs = e(discretize_schrodinger_q(&e(ComplexField::from_fn(small, |x| form.eval(c64(x, 0.0) - shift)))?))?;
    let a = e(eig_dense(&hs, &SolverOptions::default()))?;
    let b = e(eig_dense(&hs.shifted(c64(alpha0, 0.0)), &SolverOptions::default()))?;
    let norm = hs.interior().norm_inf();
    let shift_err = a
        .eigenvalues
        .iter()
        .zip(&b.eigenvalues)
        .map(|(x, y)| (y - x - alpha0).norm())
        .fold(0.0, f64::max)
        / norm;

    let ok = alpha_err <= 1e-12 && eta_exact && inv_err <= 1e-12 && unit_exact && shift_err <= 1e-12;
    Ok((
        ok,
        format!(
            "alpha0 law {alpha_err:.1e}; eta1 = -i eta2 exact: {eta_exact}; adjoint involution {inv_err:.1e} (unit weight exact: {unit_exact}); spectrum shift {shift_err:.1e}"
        ),
    ))
}

fn s1_real_generator() -> Check {
    let r = |n: usize| -> Result<f64, String> {
        let g = e(make_uniform_grid(0.5, 12.0, n))?;
        let gen = e(Generator::cosech(2.5, 0.0))?;
        let form = v_from_generator(&gen, Convention::Pseudo);
        let h = e(discretize_schrodinger_q(&e(ComplexField::from_fn(g, |x| form.eval(c64(x, 0.0))))?))?;
        let f = e(ComplexField::from_fn(g, |x| gen.value(c64(x, 0.0))))?;
        let eta = e(discretize_eta(&f, &e(MassProfile::constant(1.0))?, Eta::Two))?;
        e(intertwining_residual(&h, &eta, 2))
    };
    let (r1, r2) = (r(1201)?, r(2401)?);
    Ok((r1 <= 2e-3 && r1 / r2 >= 3.5, format!("real axis x in [0.5, 12]: residual {r1:.3e}, ratio {:.3}", r1 / r2)))
}

fn s2_pt_cosech_spectrum() -> Check {
    let model = e(PotentialModel::pt_cosech(2.5, 0.4))?;
    let (s, refined) = dense_and_shoot(&model, 2001)?;
    let cmp = spectrum_compare(&s, &analytic_spectrum_ptpt(2.5), 0.01, 0.0);
    let max_im = s.eigenvalues.iter().filter(|z| z.re < 0.0).map(|z| z.im.abs()).fold(0.0, f64::max);
    let agree = !refined.is_empty() && refined.iter().all(|(d, r)| ((d - r) / r).abs() <= 1e-4);
    Ok((
        cmp.pass && agree && max_im <= 1e-3,
        format!("dense n=2001 / shooting pairs {refined:.7?}; max |Im| below 0 = {max_im:.1e}"),
    ))
}

fn s3_pt_cosech_crossing() -> Check {
    crossing_scan(e(PotentialModel::pt_cosech(1.0, 0.4))?)
}

fn s4_eckart_converged() -> Check {
    let (s, method) = eckart_levels(0.002, 20_000)?;
    let cmp = spectrum_compare(&s, &analytic_spectrum_eckart(2.0, 25.0, EckartVariant::Standard), 0.01, 0.05);
    let model = e(PotentialModel::eckart_hermitian(2.0, 25.0))?;
    let form = model.closed_form();
    let opts = ShootOptions { steps: 400_000, ..ShootOptions::default() };
    let start = s.real_levels.first().copied().ok_or("no ground level")?;
    let shot = e(refine_shoot(&|q| form.eval(c64(q, 0.0)), c64(start + 0.05, 0.0), (0.002, 10.0), &opts))?;
    Ok((
        cmp.pass && (shot.re - start).abs() <= 1e-3,
        format!("q in [0.002, 10], n = 20000 ({method}): {:?}; ground level by shooting {:.5}", s.real_levels, shot.re),
    ))
}

fn s5_towers() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for (v1, v2) in [(10.0, 10.0), (6.0, 5.0), (2.0, -3.0)] {
        let model = e(PotentialModel::pt_poschl_teller(v1, v2, 1.0, 0.0, 0.4))?;
        let g: Grid = e(make_uniform_grid(-12.0, 12.0, 1201))?;
        let op = e(discretize_schrodinger_q(&e(evaluate_model(&model, &g))?))?;
        let (raw, _) = e(eig_auto(&op, &SolverOptions::default()))?;
        let s = classify_spectrum(&raw, 0.0, None);
        let cmp = spectrum_compare(&s, &model.analytic_spectrum().ok_or("no closed form")?, 0.01, 0.0);
        ok &= cmp.pass;
        parts.push(format!(
            "({v1}, {v2}): {} matched, {} unmatched, pass {}",
            cmp.matches.len(),
            cmp.unmatched_analytic.len() + cmp.unmatched_numeric.len(),
            cmp.pass
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn main() -> ExitCode {
    let checks: [(&str, &str, u64, fn() -> Check); 13] = [
        ("1", "intertwining on the contour", 5, c1_intertwining),
        ("2", "pseudo-PT spectrum", 60, c2_pseudo_pt_spectrum),
        ("3", "level crossing", 180, c3_level_crossing),
        ("4", "hermitian Eckart", 30, c4_eckart),
        ("5", "frame equivalence", 30, c5_frames),
        ("6", "Dirac round trip", 60, c6_dirac),
        ("7", "PT residual dichotomy", 1, c7_pt_dichotomy),
        ("8", "algebraic invariants", 1, c8_invariants),
        ("S1", "real-axis intertwining", 10, s1_real_generator),
        ("S2", "PT cosech spectrum, dense vs shooting", 120, s2_pt_cosech_spectrum),
        ("S3", "PT cosech level crossing", 180, s3_pt_cosech_crossing),
        ("S4", "Eckart with a converged cutoff", 60, s4_eckart_converged),
        ("S5", "two quasi-parity towers", 30, s5_towers),
    ];
    let mut failed = 0;
    for (id, title, budget, f) in checks {
        let o = run(id, title, budget, f);
        println!(
            "[{}] {:>2} {}: {} ({:.2}s of {}s)",
            if o.pass { "PASS" } else { "FAIL" },
            o.id,
            o.title,
            o.detail,
            o.elapsed.as_secs_f64(),
            o.budget.as_secs()
        );
        if !o.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} checks, {failed} failed", checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
