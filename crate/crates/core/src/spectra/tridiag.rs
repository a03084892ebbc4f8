//! Eigenvalues of tridiagonal matrices by implicit QL.
//!
//! A diagonal similarity turns `(sub, diag, sup)` into a complex-symmetric
//! tridiagonal with off-diagonals `√(subᵢ supᵢ)`. For real symmetric input
//! this is the classical stable iteration; for complex input it is not
//! unitary, so callers check residuals and fall back to the dense solver.

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Picks `±r` so that `|g ± r|` is largest.
fn signed(r: Complex64, g: Complex64) -> Complex64 {
    if (g + r).norm() >= (g - r).norm() {
        r
    } else {
        -r
    }
}

/// Eigenvalues of the tridiagonal matrix with diagonal `d`, subdiagonal
/// `sub[i] = A[i+1][i]` and superdiagonal `sup[i] = A[i][i+1]`.
pub(crate) fn eigenvalues(d: &[Complex64], sub: &[Complex64], sup: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = d.len();
    if sub.len() + 1 != n.max(1) || sup.len() != sub.len() {
        return Err(Error::Dimension("tridiagonal bands have inconsistent lengths".into()));
    }
    let mut d = d.to_vec();
    let mut e: Vec<Complex64> = sub.iter().zip(sup).map(|(l, u)| (l * u).sqrt()).collect();
    e.push(ZERO);
    let one = Complex64::new(1.0, 0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].norm() + d[m + 1].norm();
                if e[m].norm() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::Convergence(format!("QL iteration stalled at index {l}")));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = (g * g + one).sqrt();
            g = d[m] - d[l] + e[l] / (g + signed(r, g));
            let (mut s, mut c, mut p) = (one, one, ZERO);
            let mut i = m;
            let mut early = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = (f * f + g * g).sqrt();
                e[i + 1] = r;
                if r.norm() < f64::MIN_POSITIVE {
                    d[i + 1] -= p;
                    e[m] = ZERO;
                    early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if early {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = ZERO;
            if d.iter().any(|z| !z.is_finite()) || e.iter().any(|z| !z.is_finite()) {
                return Err(Error::Convergence("QL iteration broke down".into()));
            }
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn laplacian_eigenvalues() {
        let n = 50;
        let d = vec![c(2.0); n];
        let off = vec![c(-1.0); n - 1];
        let mut e = eigenvalues(&d, &off, &off).unwrap();
        e.sort_by(|a, b| a.re.total_cmp(&b.re));
        for (k, l) in e.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((l - exact).norm() < 1e-12, "{k}: {l} vs {exact}");
        }
    }

    #[test]
    fn nonsymmetric_real_product() {
        // [[1, 4], [1, 1]] has eigenvalues 3 and -1
        let mut e = eigenvalues(&[c(1.0), c(1.0)], &[c(1.0)], &[c(4.0)]).unwrap();
        e.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((e[0] - c(-1.0)).norm() < 1e-14);
        assert!((e[1] - c(3.0)).norm() < 1e-14);
    }

    #[test]
    fn complex_two_by_two() {
        // [[ia, 1], [1, -ia]], λ² = 1 - a²
        let i = Complex64::new(0.0, 1.0);
        let e = eigenvalues(&[0.5 * i, -0.5 * i], &[c(1.0)], &[c(1.0)]).unwrap();
        for l in e {
            assert!((l * l - c(0.75)).norm() < 1e-14);
        }
    }

    #[test]
    fn single_entry() {
        assert_eq!(eigenvalues(&[c(3.0)], &[], &[]).unwrap(), vec![c(3.0)]);
    }
}
