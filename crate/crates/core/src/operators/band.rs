use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Square complex matrix with `kl` sub- and `ku` super-diagonals, stored by rows.
#[derive(Debug, Clone, PartialEq)]
pub struct BandMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    data: Vec<Complex64>,
}

impl BandMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        Self {
            n,
            kl,
            ku,
            data: vec![ZERO; n * (kl + ku + 1)],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, 0, 0);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lower_bandwidth(&self) -> usize {
        self.kl
    }

    pub fn upper_bandwidth(&self) -> usize {
        self.ku
    }

    #[inline]
    fn width(&self) -> usize {
        self.kl + self.ku + 1
    }

    /// Columns that may hold nonzeros in row `i`.
    #[inline]
    pub fn row_range(&self, i: usize) -> std::ops::Range<usize> {
        i.saturating_sub(self.kl)..(i + self.ku + 1).min(self.n)
    }

    #[inline]
    pub fn in_band(&self, i: usize, j: usize) -> bool {
        j + self.kl >= i && j <= i + self.ku
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        if i < self.n && j < self.n && self.in_band(i, j) {
            self.data[i * self.width() + j + self.kl - i]
        } else {
            ZERO
        }
    }

    /// Panics when `(i, j)` lies outside the stored band.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        assert!(
            i < self.n && j < self.n && self.in_band(i, j),
            "({i}, {j}) outside band"
        );
        let w = self.width();
        self.data[i * w + j + self.kl - i] = v;
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            data: self.data.iter().map(|&v| f(v)).collect(),
            ..self.clone()
        }
    }

    /// Adds `c` to every diagonal entry.
    pub fn add_diagonal(&mut self, c: Complex64) {
        for i in 0..self.n {
            let v = self.get(i, i);
            self.set(i, i, v + c);
        }
    }

    pub fn matmul(&self, other: &BandMatrix) -> BandMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch in band product");
        let mut out = BandMatrix::zeros(self.n, self.kl + other.kl, self.ku + other.ku);
        for i in 0..self.n {
            for k in self.row_range(i) {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                for j in other.row_range(k) {
                    let idx = i * out.width() + j + out.kl - i;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| self.row_range(i).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    pub fn conj_transpose(&self) -> BandMatrix {
        let mut out = BandMatrix::zeros(self.n, self.ku, self.kl);
        for i in 0..self.n {
            for j in self.row_range(i) {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// `B = D_left · A · D_right` for diagonal scalings.
    pub fn scale(&self, left: &[f64], right: &[f64]) -> BandMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in self.row_range(i) {
                out.set(i, j, self.get(i, j) * (left[i] * right[j]));
            }
        }
        out
    }

    pub fn sub(&self, other: &BandMatrix) -> BandMatrix {
        assert_eq!(self.n, other.n);
        let mut out = BandMatrix::zeros(self.n, self.kl.max(other.kl), self.ku.max(other.ku));
        for i in 0..self.n {
            for j in out.row_range(i) {
                out.set(i, j, self.get(i, j) - other.get(i, j));
            }
        }
        out
    }

    /// Principal block of rows and columns `lo..hi`.
    pub fn block(&self, lo: usize, hi: usize) -> BandMatrix {
        assert!(lo < hi && hi <= self.n);
        let mut out = BandMatrix::zeros(hi - lo, self.kl, self.ku);
        for i in lo..hi {
            for j in self.row_range(i) {
                if (lo..hi).contains(&j) {
                    out.set(i - lo, j - lo, self.get(i, j));
                }
            }
        }
        out
    }

    /// Largest entry magnitude over the block `lo..hi` × `lo..hi`.
    pub fn max_abs_in_block(&self, lo: usize, hi: usize) -> f64 {
        let mut m: f64 = 0.0;
        for i in lo..hi {
            for j in self.row_range(i) {
                if (lo..hi).contains(&j) {
                    m = m.max(self.get(i, j).norm());
                }
            }
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.max_abs_in_block(0, self.n)
    }

    /// Smallest bandwidths `(kl, ku)` that hold every nonzero entry.
    pub fn effective_bandwidth(&self) -> (usize, usize) {
        let (mut kl, mut ku) = (0, 0);
        for i in 0..self.n {
            for j in self.row_range(i) {
                if self.get(i, j) != ZERO {
                    if j < i {
                        kl = kl.max(i - j);
                    } else {
                        ku = ku.max(j - i);
                    }
                }
            }
        }
        (kl, ku)
    }

    /// Induced infinity norm (max absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row_range(i).map(|j| self.get(i, j).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample(n: usize, kl: usize, ku: usize, seed: f64) -> BandMatrix {
        let mut m = BandMatrix::zeros(n, kl, ku);
        for i in 0..n {
            for j in m.row_range(i) {
                let t = seed + (3 * i + 7 * j) as f64;
                m.set(i, j, c(t.sin(), (0.5 * t).cos()));
            }
        }
        m
    }

    fn dense_mul(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
        let n = a.len();
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
            .collect()
    }

    #[test]
    fn product_matches_dense() {
        let a = sample(9, 2, 1, 0.3);
        let b = sample(9, 1, 2, 1.1);
        let p = a.matmul(&b);
        assert_eq!((p.lower_bandwidth(), p.upper_bandwidth()), (3, 3));
        let d = dense_mul(&a.to_dense(), &b.to_dense());
        for i in 0..9 {
            for j in 0..9 {
                assert!((p.get(i, j) - d[i][j]).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn conj_transpose_is_involution() {
        let a = sample(7, 2, 1, 0.0);
        let t = a.conj_transpose();
        assert_eq!(t.get(3, 1), a.get(1, 3).conj());
        assert_eq!(t.conj_transpose(), a);
    }

    #[test]
    fn block_and_bandwidth() {
        let mut a = BandMatrix::zeros(5, 2, 2);
        a.set(1, 2, c(1.0, 0.0));
        a.set(3, 2, c(2.0, 0.0));
        assert_eq!(a.effective_bandwidth(), (1, 1));
        let b = a.block(1, 4);
        assert_eq!(b.get(0, 1), c(1.0, 0.0));
        assert_eq!(b.get(2, 1), c(2.0, 0.0));
        assert_eq!(a.get(0, 4), c(0.0, 0.0));
    }
}
