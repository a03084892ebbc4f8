//! Eigenvalues of a general complex matrix: balancing, Householder reduction
//! to Hessenberg form and single-shift QR with deflation.

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[inline]
fn cabs1(z: Complex64) -> f64 {
    z.re.abs() + z.im.abs()
}

/// Row-major square matrix.
pub(crate) struct Dense {
    n: usize,
    a: Vec<Complex64>,
}

impl Dense {
    pub(crate) fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("matrix is not square".into()));
        }
        Ok(Self {
            n,
            a: rows.concat(),
        })
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> Complex64 {
        self.a[i * self.n + j]
    }

    #[inline]
    fn at_mut(&mut self, i: usize, j: usize) -> &mut Complex64 {
        &mut self.a[i * self.n + j]
    }

    /// Diagonal scaling by powers of two that evens out row and column norms.
    fn balance(&mut self) {
        let n = self.n;
        let radix = 2.0;
        let b2 = radix * radix;
        loop {
            let mut changed = false;
            for i in 0..n {
                let mut c = 0.0;
                let mut r = 0.0;
                for j in 0..n {
                    if j != i {
                        c += cabs1(self.at(j, i));
                        r += cabs1(self.at(i, j));
                    }
                }
                if c == 0.0 || r == 0.0 {
                    continue;
                }
                let s = c + r;
                let mut f = 1.0;
                let mut g = r / radix;
                while c < g {
                    f *= radix;
                    c *= b2;
                }
                g = r * radix;
                while c >= g {
                    f /= radix;
                    c /= b2;
                }
                if (c + r) / f < 0.95 * s {
                    changed = true;
                    let inv = 1.0 / f;
                    for j in 0..n {
                        *self.at_mut(i, j) *= inv;
                        *self.at_mut(j, i) *= f;
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }

    /// Unitary similarity to upper Hessenberg form. Columns that are
    /// already reduced are skipped, so banded input with one subdiagonal
    /// costs nothing.
    fn hessenberg(&mut self) {
        let n = self.n;
        if n < 3 {
            return;
        }
        let mut v = vec![ZERO; n];
        for k in 0..n - 2 {
            let tail: f64 = (k + 2..n).map(|i| self.at(i, k).norm_sqr()).sum();
            if tail == 0.0 {
                continue;
            }
            let x0 = self.at(k + 1, k);
            let xnorm = (x0.norm_sqr() + tail).sqrt();
            let phase = if x0 == ZERO { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
            let m = n - k - 1;
            for (t, vi) in v.iter_mut().take(m).enumerate() {
                *vi = self.at(k + 1 + t, k);
            }
            v[0] = x0 + phase * xnorm;
            let vnorm2 = v[0].norm_sqr() + tail;
            let beta = 2.0 / vnorm2;
            // left: rows k+1.., columns k..
            for j in k..n {
                let mut s = ZERO;
                for t in 0..m {
                    s += v[t].conj() * self.at(k + 1 + t, j);
                }
                s *= beta;
                for t in 0..m {
                    let vt = v[t];
                    *self.at_mut(k + 1 + t, j) -= vt * s;
                }
            }
            // right: all rows, columns k+1..
            for i in 0..n {
                let mut s = ZERO;
                for t in 0..m {
                    s += self.at(i, k + 1 + t) * v[t];
                }
                s *= beta;
                for t in 0..m {
                    let vt = v[t].conj();
                    *self.at_mut(i, k + 1 + t) -= s * vt;
                }
            }
            *self.at_mut(k + 1, k) = -phase * xnorm;
            for i in k + 2..n {
                *self.at_mut(i, k) = ZERO;
            }
        }
    }

    fn wilkinson(&self, i: usize) -> Complex64 {
        let a = self.at(i - 1, i - 1);
        let b = self.at(i - 1, i);
        let c = self.at(i, i - 1);
        let d = self.at(i, i);
        let mid = 0.5 * (a + d);
        let disc = (0.25 * (a - d) * (a - d) + b * c).sqrt();
        let (l1, l2) = (mid + disc, mid - disc);
        if (l1 - d).norm() <= (l2 - d).norm() {
            l1
        } else {
            l2
        }
    }

    /// Eigenvalues of the Hessenberg matrix, destroying it.
    fn hqr(&mut self) -> Result<Vec<Complex64>> {
        let n = self.n;
        let mut eig = vec![ZERO; n];
        if n == 0 {
            return Ok(eig);
        }
        let ulp = f64::EPSILON;
        let norm = self.a.iter().map(|z| cabs1(*z)).fold(0.0, f64::max);
        let budget = 30 * n.max(1);
        let mut total = 0usize;
        let mut its = 0usize;
        let mut hi = n - 1;
        loop {
            // find the start of the active block
            let mut lo = 0;
            for k in (1..=hi).rev() {
                let sub = cabs1(self.at(k, k - 1));
                let mut scale = cabs1(self.at(k - 1, k - 1)) + cabs1(self.at(k, k));
                if scale == 0.0 {
                    scale = norm;
                }
                if sub <= ulp * scale {
                    *self.at_mut(k, k - 1) = ZERO;
                    lo = k;
                    break;
                }
            }
            if lo == hi {
                eig[hi] = self.at(hi, hi);
                if hi == 0 {
                    break;
                }
                hi -= 1;
                its = 0;
                continue;
            }
            total += 1;
            its += 1;
            if total > budget {
                return Err(Error::Convergence(format!(
                    "QR iteration exceeded {budget} sweeps with {} eigenvalues left",
                    hi + 1
                )));
            }
            let shift = if its % 10 == 0 {
                self.at(hi, hi) + 0.75 * self.at(hi, hi - 1).re.abs()
            } else {
                self.wilkinson(hi)
            };
            self.qr_sweep(lo, hi, shift);
        }
        Ok(eig)
    }

    /// One implicit single-shift sweep on rows and columns `lo..=hi`.
    fn qr_sweep(&mut self, lo: usize, hi: usize, shift: Complex64) {
        for k in lo..hi {
            let (x, y) = if k == lo {
                (self.at(lo, lo) - shift, self.at(lo + 1, lo))
            } else {
                (self.at(k, k - 1), self.at(k + 1, k - 1))
            };
            let (c, s) = givens(x, y);
            let first = if k == lo { lo } else { k - 1 };
            for j in first..=hi {
                let a = self.at(k, j);
                let b = self.at(k + 1, j);
                *self.at_mut(k, j) = c * a + s * b;
                *self.at_mut(k + 1, j) = -s.conj() * a + c * b;
            }
            if k > lo {
                *self.at_mut(k + 1, k - 1) = ZERO;
            }
            let last = (k + 2).min(hi);
            for i in lo..=last {
                let a = self.at(i, k);
                let b = self.at(i, k + 1);
                *self.at_mut(i, k) = c * a + s.conj() * b;
                *self.at_mut(i, k + 1) = -s * a + c * b;
            }
        }
    }
}

/// `(c, s)` with real `c` such that `[c s; -s̄ c]·[x; y] = [r; 0]`.
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64) {
    if y == ZERO {
        return (1.0, ZERO);
    }
    if x == ZERO {
        return (0.0, y.conj() / y.norm());
    }
    let ax = x.norm();
    let rho = ax.hypot(y.norm());
    (ax / rho, (x / ax) * y.conj() / rho)
}

/// All eigenvalues of a square matrix, in no particular order.
pub(crate) fn eigenvalues(mut m: Dense) -> Result<Vec<Complex64>> {
    if m.a.iter().any(|z| !z.is_finite()) {
        return Err(Error::Domain("matrix has non-finite entries".into()));
    }
    m.balance();
    m.hessenberg();
    m.hqr()
}
