//! Banded LU factorization with partial pivoting.
//!
//! Compact row storage: `rows[i][c]` holds `A[i][i + c - m1]`, so the
//! diagonal sits at column `m1` and the full width is `m1 + m2 + 1`.
//! Factorization uses the classic left-shifting band elimination (row
//! representations advance one column per elimination step), which absorbs
//! pivoting fill without widening the storage.

use crate::error::{Error, Result};

pub struct BandedMatrix {
    pub n: usize,
    /// Lower bandwidth.
    pub m1: usize,
    /// Upper bandwidth.
    pub m2: usize,
    /// Compact rows, width m1 + m2 + 1.
    pub rows: Vec<Vec<f64>>,
}

impl BandedMatrix {
    pub fn zeros(n: usize, m1: usize, m2: usize) -> Self {
        BandedMatrix {
            n,
            m1,
            m2,
            rows: vec![vec![0.0; m1 + m2 + 1]; n],
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.rows[i][j + self.m1 - i] = v;
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        self.rows[i][j + self.m1 - i] += v;
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        for i in 0..self.n {
            let lo = i.saturating_sub(self.m1);
            let hi = (i + self.m2).min(self.n - 1);
            let mut acc = 0.0;
            for j in lo..=hi {
                acc += self.rows[i][j + self.m1 - i] * x[j];
            }
            y[i] = acc;
        }
        y
    }

    /// Solve `A x = b` by banded LU with partial pivoting. The matrix is
    /// copied; repeated solves against the same matrix should use
    /// [`BandedLu::factorize`] once.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        Ok(BandedLu::factorize(self)?.solve(b))
    }
}

/// LU factors of a banded matrix.
pub struct BandedLu {
    n: usize,
    m1: usize,
    mm: usize,
    /// Upper factor, rows left-shifted: `au[i][c]` is `U[i][i + c]`.
    au: Vec<Vec<f64>>,
    /// Multipliers applied below each pivot row.
    al: Vec<Vec<f64>>,
    /// Pivot row chosen at each step.
    index: Vec<usize>,
}

impl BandedLu {
    pub fn factorize(a: &BandedMatrix) -> Result<Self> {
        let n = a.n;
        let m1 = a.m1;
        let mm = a.m1 + a.m2 + 1;
        let mut au: Vec<Vec<f64>> = a.rows.clone();
        let mut al = vec![vec![0.0; m1]; n];
        let mut index = vec![0usize; n];

        // left-justify the first m1 rows so every row's active entries
        // start at column 0
        let mut l = m1;
        for i in 0..m1.min(n) {
            for j in (m1 - i)..mm {
                au[i][j - l] = au[i][j];
            }
            l -= 1;
            for j in (mm - l - 1)..mm {
                au[i][j] = 0.0;
            }
        }

        let mut l = m1;
        for k in 0..n {
            if l < n {
                l += 1;
            }
            let mut ip = k;
            let mut pivot = au[k][0].abs();
            for i in (k + 1)..l {
                if au[i][0].abs() > pivot {
                    pivot = au[i][0].abs();
                    ip = i;
                }
            }
            index[k] = ip;
            if pivot == 0.0 {
                return Err(Error::NonFinite(format!("singular banded matrix at column {k}")));
            }
            if ip != k {
                au.swap(k, ip);
            }
            for i in (k + 1)..l {
                let factor = au[i][0] / au[k][0];
                al[k][i - k - 1] = factor;
                for j in 1..mm {
                    au[i][j - 1] = au[i][j] - factor * au[k][j];
                }
                au[i][mm - 1] = 0.0;
            }
        }
        Ok(BandedLu { n, m1, mm, au, al, index })
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x = b.to_vec();
        let mut l = self.m1;
        for k in 0..n {
            let ip = self.index[k];
            if ip != k {
                x.swap(k, ip);
            }
            if l < n {
                l += 1;
            }
            for i in (k + 1)..l {
                x[i] -= self.al[k][i - k - 1] * x[k];
            }
        }
        let mut l = 1usize;
        for i in (0..n).rev() {
            let mut acc = x[i];
            for k in 1..l {
                acc -= self.au[i][k] * x[k + i];
            }
            x[i] = acc / self.au[i][0];
            if l < self.mm {
                l += 1;
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn dense_solve(a: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
        let n = b.len();
        let mut m: Vec<Vec<f64>> = a.to_vec();
        let mut x = b.to_vec();
        for k in 0..n {
            let mut ip = k;
            for i in (k + 1)..n {
                if m[i][k].abs() > m[ip][k].abs() {
                    ip = i;
                }
            }
            m.swap(k, ip);
            x.swap(k, ip);
            for i in (k + 1)..n {
                let f = m[i][k] / m[k][k];
                for j in k..n {
                    m[i][j] -= f * m[k][j];
                }
                x[i] -= f * x[k];
            }
        }
        for k in (0..n).rev() {
            for j in (k + 1)..n {
                x[k] -= m[k][j] * x[j];
            }
            x[k] /= m[k][k];
        }
        x
    }

    #[test]
    fn banded_solve_matches_dense_on_random_systems() {
        let mut seed = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for (n, m1, m2) in [(12usize, 2usize, 2usize), (30, 5, 5), (17, 3, 1), (9, 1, 4), (40, 2, 5)] {
            let mut banded = BandedMatrix::zeros(n, m1, m2);
            let mut dense = vec![vec![0.0; n]; n];
            for i in 0..n {
                for j in 0..n {
                    if j + m1 >= i && j <= i + m2 {
                        let v = next() + if i == j { 3.0 } else { 0.0 };
                        banded.set(i, j, v);
                        dense[i][j] = v;
                    }
                }
            }
            let b: Vec<f64> = (0..n).map(|_| next()).collect();
            let x_band = banded.solve(&b).unwrap();
            let x_dense = dense_solve(&dense, &b);
            for (a, c) in x_band.iter().zip(x_dense.iter()) {
                assert_relative_eq!(a, c, max_relative = 1e-9, epsilon = 1e-12);
            }
            let ax = banded.matvec(&x_band);
            for (ai, bi) in ax.iter().zip(b.iter()) {
                assert_relative_eq!(ai, bi, max_relative = 1e-9, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn needs_pivoting_case() {
        // zero on the diagonal forces a row swap
        let mut a = BandedMatrix::zeros(3, 1, 1);
        a.set(0, 0, 0.0);
        a.set(0, 1, 2.0);
        a.set(1, 0, 1.0);
        a.set(1, 1, 1.0);
        a.set(1, 2, 1.0);
        a.set(2, 1, 4.0);
        a.set(2, 2, 1.0);
        let x = a.solve(&[2.0, 3.0, 5.0]).unwrap();
        let ax = a.matvec(&x);
        for (ai, bi) in ax.iter().zip([2.0, 3.0, 5.0].iter()) {
            assert_relative_eq!(ai, bi, epsilon = 1e-12);
        }
    }

    #[test]
    fn reusing_factors_matches_fresh_solves() {
        let mut a = BandedMatrix::zeros(8, 2, 2);
        for i in 0..8usize {
            for j in i.saturating_sub(2)..(i + 3).min(8) {
                a.set(i, j, 1.0 / (1.0 + (i as f64 - j as f64).abs()) + if i == j { 2.0 } else { 0.0 });
            }
        }
        let lu = BandedLu::factorize(&a).unwrap();
        for s in 0..3 {
            let b: Vec<f64> = (0..8).map(|i| (i + s) as f64).collect();
            let x1 = lu.solve(&b);
            let x2 = a.solve(&b).unwrap();
            for (p, q) in x1.iter().zip(x2.iter()) {
                assert_relative_eq!(p, q, epsilon = 1e-13);
            }
        }
    }
}
