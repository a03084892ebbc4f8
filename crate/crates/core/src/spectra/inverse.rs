//! Banded LU with partial pivoting and inverse iteration.

use num_complex::Complex64;

use crate::operators::BandMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// LU factors of `A - σI` in column-major band storage with room for the
/// fill-in produced by row interchanges.
struct BandLu {
    n: usize,
    kl: usize,
    ku: usize,
    ld: usize,
    ab: Vec<Complex64>,
    piv: Vec<usize>,
}

impl BandLu {
    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        j * self.ld + (self.kl + self.ku + i - j)
    }

    fn factor(a: &BandMatrix, sigma: Complex64) -> Self {
        let n = a.n();
        let kl = a.lower_bandwidth();
        let ku = a.upper_bandwidth();
        let ld = 2 * kl + ku + 1;
        let mut lu = Self {
            n,
            kl,
            ku,
            ld,
            ab: vec![ZERO; ld * n],
            piv: vec![0; n],
        };
        for i in 0..n {
            for j in a.row_range(i) {
                let mut v = a.get(i, j);
                if i == j {
                    v -= sigma;
                }
                let k = lu.idx(i, j);
                lu.ab[k] = v;
            }
        }
        let tiny = f64::EPSILON * a.norm_inf().max(f64::MIN_POSITIVE);
        let reach = ku + kl;
        for k in 0..n {
            let last = (k + kl).min(n - 1);
            let mut p = k;
            let mut best = lu.ab[lu.idx(k, k)].norm();
            for i in k + 1..=last {
                let v = lu.ab[lu.idx(i, k)].norm();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            lu.piv[k] = p;
            let right = (k + reach).min(n - 1);
            if p != k {
                for j in k..=right {
                    let (x, y) = (lu.idx(k, j), lu.idx(p, j));
                    lu.ab.swap(x, y);
                }
            }
            let kk = lu.idx(k, k);
            if lu.ab[kk].norm() < tiny {
                lu.ab[kk] = Complex64::new(tiny, 0.0);
            }
            let pivot = lu.ab[kk];
            for i in k + 1..=last {
                let ik = lu.idx(i, k);
                let l = lu.ab[ik] / pivot;
                lu.ab[ik] = l;
                if l == ZERO {
                    continue;
                }
                for j in k + 1..=right {
                    let kj = lu.ab[lu.idx(k, j)];
                    let ij = lu.idx(i, j);
                    lu.ab[ij] -= l * kj;
                }
            }
        }
        lu
    }

    fn solve(&self, b: &mut [Complex64]) {
        let n = self.n;
        for k in 0..n {
            let p = self.piv[k];
            if p != k {
                b.swap(k, p);
            }
            let bk = b[k];
            for i in k + 1..=(k + self.kl).min(n - 1) {
                b[i] -= self.ab[self.idx(i, k)] * bk;
            }
        }
        let reach = self.ku + self.kl;
        for k in (0..n).rev() {
            let mut s = b[k];
            for j in k + 1..=(k + reach).min(n - 1) {
                s -= self.ab[self.idx(k, j)] * b[j];
            }
            b[k] = s / self.ab[self.idx(k, k)];
        }
    }
}

fn norm2(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `‖Ax - λx‖₂ / ‖x‖₂`.
pub fn residual_norm(a: &BandMatrix, lambda: Complex64, x: &[Complex64]) -> f64 {
    let ax = a.mul_vec(x);
    let r: f64 = ax
        .iter()
        .zip(x)
        .map(|(y, x)| (y - lambda * x).norm_sqr())
        .sum::<f64>()
        .sqrt();
    r / norm2(x)
}

/// Eigenvector estimate for `λ` and its backward-error residual. The vector
/// is scaled so that its largest entry is `1`.
pub fn inverse_iteration(a: &BandMatrix, lambda: Complex64) -> (Vec<Complex64>, f64) {
    let n = a.n();
    let scale = a.norm_inf().max(1.0);
    let sigma = lambda + Complex64::new(1.0, 1.0) * (1e-13 * scale);
    let lu = BandLu::factor(a, sigma);
    let mut x: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new(1.0 + 0.25 * ((i as f64) * 0.7).sin(), 0.1 * ((i as f64) * 1.3).cos()))
        .collect();
    let mut best = (x.clone(), f64::INFINITY);
    for _ in 0..3 {
        lu.solve(&mut x);
        let big = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if !(big.is_finite() && big > 0.0) {
            break;
        }
        let k = x.iter().position(|z| z.norm() == big).unwrap_or(0);
        let phase = x[k];
        for z in x.iter_mut() {
            *z /= phase;
        }
        let r = residual_norm(a, lambda, &x);
        if r < best.1 {
            best = (x.clone(), r);
        }
    }
    best
}
