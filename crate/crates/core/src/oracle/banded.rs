//! Banded LU with partial pivoting.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Square matrix with `kl` sub- and `ku` super-diagonals. Storage leaves room
/// for the `kl` extra super-diagonals created by row interchanges.
#[derive(Clone, Debug)]
pub struct BandMatrix<T> {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    data: Vec<T>,
}

impl<T: Real> BandMatrix<T> {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let width = 2 * kl + ku + 1;
        Self { n, kl, ku, width, data: vec![T::zero(); n * width] }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(j + self.kl >= i && j <= i + self.ku + self.kl, "({i}, {j}) outside band");
        i * self.width + (j + self.kl - i)
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        if j + self.kl < i || j > i + self.ku + self.kl {
            T::zero()
        } else {
            self.data[self.slot(i, j)]
        }
    }

    /// Adds `v` to entry `(i, j)`, which must lie inside the declared band.
    pub fn add(&mut self, i: usize, j: usize, v: T) {
        assert!(j + self.kl >= i && j <= i + self.ku, "({i}, {j}) outside band");
        let s = self.slot(i, j);
        self.data[s] += v;
    }

    /// `y = A x` (on the original, unfactored matrix).
    pub fn mul(&self, x: &[T]) -> Vec<T> {
        (0..self.n)
            .map(|i| {
                let lo = i.saturating_sub(self.kl);
                let hi = (i + self.ku + self.kl).min(self.n - 1);
                (lo..=hi).map(|j| self.get(i, j) * x[j]).sum()
            })
            .collect()
    }

    /// Factors in place and overwrites each right-hand side with the solution.
    pub fn solve_in_place(mut self, rhs: &mut [Vec<T>]) -> Result<()> {
        let n = self.n;
        let reach = self.ku + self.kl;
        let norm = self.data.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        let tiny = norm * T::epsilon();
        for k in 0..n {
            let last = (k + self.kl).min(n - 1);
            let mut p = k;
            let mut best = self.get(k, k).abs();
            for i in (k + 1)..=last {
                let v = self.get(i, k).abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if !(best > tiny) {
                return Err(Error::SingularSystem { row: k, pivot: best.to_f64_lossy() });
            }
            let end = (k + reach).min(n - 1);
            if p != k {
                for j in k..=end {
                    let (a, b) = (self.slot(k, j), self.slot(p, j));
                    self.data.swap(a, b);
                }
                for r in rhs.iter_mut() {
                    r.swap(k, p);
                }
            }
            let pivot = self.data[self.slot(k, k)];
            for i in (k + 1)..=last {
                let si = self.slot(i, k);
                let f = self.data[si] / pivot;
                if f == T::zero() {
                    continue;
                }
                self.data[si] = T::zero();
                for j in (k + 1)..=end {
                    let (a, b) = (self.slot(i, j), self.slot(k, j));
                    let v = self.data[b];
                    self.data[a] -= f * v;
                }
                for r in rhs.iter_mut() {
                    let v = r[k];
                    r[i] -= f * v;
                }
            }
        }
        for r in rhs.iter_mut() {
            for i in (0..n).rev() {
                let end = (i + reach).min(n - 1);
                let mut s = r[i];
                for j in (i + 1)..=end {
                    s -= self.data[self.slot(i, j)] * r[j];
                }
                r[i] = s / self.data[self.slot(i, i)];
            }
        }
        Ok(())
    }
}
