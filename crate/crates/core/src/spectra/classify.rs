use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Spectrum;
use crate::models::AnalyticSpectrum;

/// Default classification tolerance for a given continuum edge.
pub fn default_im_tol(threshold: f64) -> f64 {
    let edge = if threshold.is_finite() { threshold.abs() } else { 0.0 };
    1e-6 * edge.max(1.0)
}

/// Splits the eigenvalues below `threshold` into real levels, conjugate
/// pairs and unpaired complex values. `im_tol` defaults to
/// [`default_im_tol`].
pub fn classify_spectrum(raw: &Spectrum, threshold: f64, im_tol: Option<f64>) -> Spectrum {
    let tol = im_tol.unwrap_or_else(|| default_im_tol(threshold));
    let mut real = Vec::new();
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for z in raw.eigenvalues.iter().filter(|z| z.re < threshold) {
        if z.im.abs() <= tol {
            real.push(z.re);
        } else if z.im > 0.0 {
            upper.push(*z);
        } else {
            lower.push(*z);
        }
    }
    real.sort_by(f64::total_cmp);
    let key = |a: &Complex64, b: &Complex64| a.re.total_cmp(&b.re).then(a.im.abs().total_cmp(&b.im.abs()));
    upper.sort_by(key);
    lower.sort_by(key);

    let mut pairs = Vec::new();
    let mut unpaired = Vec::new();
    let mut taken = vec![false; lower.len()];
    for z in upper {
        let pair_tol = tol.max(1e-6 * z.norm().max(1.0));
        let best = lower
            .iter()
            .enumerate()
            .filter(|(k, _)| !taken[*k])
            .map(|(k, w)| (k, (w - z.conj()).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((k, d)) if d <= pair_tol => {
                taken[k] = true;
                pairs.push((z, lower[k]));
            }
            _ => unpaired.push(z),
        }
    }
    unpaired.extend(lower.iter().zip(&taken).filter(|(_, t)| !**t).map(|(w, _)| *w));
    unpaired.sort_by(key);

    Spectrum {
        eigenvalues: raw.eigenvalues.clone(),
        residual_norms: raw.residual_norms.clone(),
        threshold: Some(threshold),
        im_tol: Some(tol),
        real_levels: real,
        complex_pairs: pairs,
        unpaired,
    }
}

/// One matched level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelMatch {
    pub analytic: Complex64,
    pub numeric: Complex64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub within: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub pass: bool,
    pub rtol: f64,
    pub atol: f64,
    pub matches: Vec<LevelMatch>,
    pub unmatched_numeric: Vec<Complex64>,
    pub unmatched_analytic: Vec<Complex64>,
}

/// Greedy nearest matching of the classified levels (real levels and both
/// members of every complex pair) against the closed-form levels.
pub fn spectrum_compare(numeric: &Spectrum, analytic: &AnalyticSpectrum, rtol: f64, atol: f64) -> ComparisonReport {
    let mut num: Vec<Complex64> = numeric.real_levels.iter().map(|&e| Complex64::new(e, 0.0)).collect();
    for (a, b) in &numeric.complex_pairs {
        num.push(*a);
        num.push(*b);
    }
    num.extend(&numeric.unpaired);
    let mut ana: Vec<Complex64> = analytic.levels.iter().map(|l| Complex64::new(l.energy, 0.0)).collect();
    ana.extend(&analytic.complex_levels);
    compare_values(&num, &ana, rtol, atol)
}

pub(crate) fn compare_values(num: &[Complex64], ana: &[Complex64], rtol: f64, atol: f64) -> ComparisonReport {
    let mut candidates: Vec<(f64, usize, usize)> = Vec::with_capacity(num.len() * ana.len());
    for (i, n) in num.iter().enumerate() {
        for (j, a) in ana.iter().enumerate() {
            candidates.push(((n - a).norm(), i, j));
        }
    }
    candidates.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut used_n = vec![false; num.len()];
    let mut used_a = vec![false; ana.len()];
    let mut matches = Vec::new();
    for (d, i, j) in candidates {
        if used_n[i] || used_a[j] {
            continue;
        }
        used_n[i] = true;
        used_a[j] = true;
        let a = ana[j];
        let scale = a.norm();
        matches.push(LevelMatch {
            analytic: a,
            numeric: num[i],
            abs_err: d,
            rel_err: if scale > 0.0 { d / scale } else { f64::INFINITY },
            within: d <= (rtol * scale).max(atol),
        });
    }
    matches.sort_by(|x, y| x.analytic.re.total_cmp(&y.analytic.re).then(x.analytic.im.total_cmp(&y.analytic.im)));
    let unmatched_numeric: Vec<_> = num.iter().zip(&used_n).filter(|(_, u)| !**u).map(|(z, _)| *z).collect();
    let unmatched_analytic: Vec<_> = ana.iter().zip(&used_a).filter(|(_, u)| !**u).map(|(z, _)| *z).collect();
    ComparisonReport {
        pass: matches.iter().all(|m| m.within) && unmatched_numeric.is_empty() && unmatched_analytic.is_empty(),
        rtol,
        atol,
        matches,
        unmatched_numeric,
        unmatched_analytic,
    }
}
