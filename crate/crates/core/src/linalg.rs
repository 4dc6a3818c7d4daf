//! Exact rank and kernel computations for the support search.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::function::Rational;

/// A dense integer matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Self { rows, cols, data }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let cols = columns.len();
        let mut data = vec![BigInt::zero(); rows * cols];
        for (c, column) in columns.iter().enumerate() {
            assert_eq!(column.len(), rows);
            for (r, v) in column.iter().enumerate() {
                data[r * cols + c] = v.clone();
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    /// Rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let cols = self.cols;
        let mut prev = BigInt::one();
        let mut rank = 0;
        for c in 0..cols {
            if rank == self.rows {
                break;
            }
            let Some(pivot) = (rank..self.rows).find(|&r| !m[r * cols + c].is_zero()) else {
                continue;
            };
            if pivot != rank {
                for k in 0..cols {
                    m.swap(pivot * cols + k, rank * cols + k);
                }
            }
            let p = m[rank * cols + c].clone();
            for r in rank + 1..self.rows {
                let factor = m[r * cols + c].clone();
                for k in c..cols {
                    let v = (&p * &m[r * cols + k] - &factor * &m[rank * cols + k]) / &prev;
                    m[r * cols + k] = v;
                }
            }
            prev = p;
            rank += 1;
        }
        rank
    }

    /// A basis of `{ x : Mx = 0 }` over the rationals, from the reduced row
    /// echelon form; one vector per free column, ascending.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let cols = self.cols;
        let mut m: Vec<Rational> = self
            .data
            .iter()
            .map(|v| Rational::from_integer(v.clone()))
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for c in 0..cols {
            if row == self.rows {
                break;
            }
            let Some(pivot) = (row..self.rows).find(|&r| !m[r * cols + c].is_zero()) else {
                continue;
            };
            for k in 0..cols {
                m.swap(pivot * cols + k, row * cols + k);
            }
            let inv = m[row * cols + c].recip();
            for k in c..cols {
                m[row * cols + k] *= &inv;
            }
            for r in 0..self.rows {
                if r == row || m[r * cols + c].is_zero() {
                    continue;
                }
                let factor = m[r * cols + c].clone();
                for k in c..cols {
                    let delta = &factor * &m[row * cols + k];
                    m[r * cols + k] -= delta;
                }
            }
            pivots.push(c);
            row += 1;
        }
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); cols];
                x[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    x[p] = -m[r * cols + f].clone();
                }
                x
            })
            .collect()
    }
}

/// Prime modulus for the fast independence filter: `2^61 - 1`.
pub const MODULUS: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

pub fn to_mod(v: i128) -> u64 {
    v.rem_euclid(MODULUS as i128) as u64
}

/// Incremental column echelon form over `GF(2^61 - 1)`.
///
/// Independence mod `p` implies independence over `ℚ`; a dependency mod `p`
/// must be confirmed exactly.
#[derive(Debug, Clone, Default)]
pub struct ModEchelon {
    basis: Vec<(usize, Vec<u64>)>,
}

impl ModEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Reduces `v` against the basis; on independence, pushes it and returns
    /// `true`.
    pub fn push(&mut self, mut v: Vec<u64>) -> bool {
        for (pivot, b) in &self.basis {
            let coef = v[*pivot];
            if coef == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(b) {
                if y != 0 {
                    *x = (*x + MODULUS - mul_mod(coef, y)) % MODULUS;
                }
            }
        }
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = pow_mod(v[pivot], MODULUS - 2);
        for x in v.iter_mut() {
            *x = mul_mod(*x, inv);
        }
        self.basis.push((pivot, v));
        true
    }

    pub fn pop(&mut self) {
        self.basis.pop();
    }
}
