//! Transient rational matrices. Results are always cleared back to integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn from_int(m: &IntMatrix) -> Self {
        RatMatrix {
            rows: m.rows(),
            cols: m.cols(),
            data: m
                .row_vecs()
                .into_iter()
                .flatten()
                .map(BigRational::from_integer)
                .collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut data = vec![BigRational::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        RatMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        RatMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Gauss–Jordan inverse; `None` if singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.data.clone();
        let mut inv: Vec<BigRational> = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r * n + c].is_zero())?;
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                    inv.swap(p * n + j, c * n + j);
                }
            }
            let piv = a[c * n + c].clone();
            for j in 0..n {
                a[c * n + j] /= &piv;
                inv[c * n + j] /= &piv;
            }
            for r in 0..n {
                if r == c || a[r * n + c].is_zero() {
                    continue;
                }
                let f = a[r * n + c].clone();
                for j in 0..n {
                    let t = &f * &a[c * n + j];
                    a[r * n + j] -= t;
                    let t = &f * &inv[c * n + j];
                    inv[r * n + j] -= t;
                }
            }
        }
        Some(RatMatrix {
            rows: n,
            cols: n,
            data: inv,
        })
    }

    /// Exact integer matrix, if every entry is integral.
    pub fn to_int(&self) -> Option<IntMatrix> {
        if self.data.iter().any(|x| !x.is_integer()) {
            return None;
        }
        Some(IntMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).to_integer()
        }))
    }

    /// `(numerators, denominator)` with the smallest common denominator.
    pub fn clear_denominators(&self) -> (IntMatrix, BigInt) {
        let den = self
            .data
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let num = IntMatrix::from_fn(self.rows, self.cols, |i, j| {
            (self.get(i, j) * BigRational::from_integer(den.clone())).to_integer()
        });
        (num, den)
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Representative of `x mod 1` in `[0, 1)`.
pub fn frac_part(x: &BigRational) -> BigRational {
    x - x.floor()
}
