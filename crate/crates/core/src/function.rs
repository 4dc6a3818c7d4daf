//! Exact rational-valued functions on `Σ_q^n`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::word::{check_alphabet, decode_index, encode_index, vertex_count, Word};

/// Exact scalar type: always in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// A function `Σ_q^n → ℚ`, stored densely in index order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridFunction {
    n: usize,
    q: u32,
    values: Vec<Rational>,
}

impl GridFunction {
    pub fn zeros(n: usize, q: u32) -> Result<Self> {
        Self::constant(n, q, Rational::zero())
    }

    pub fn constant(n: usize, q: u32, c: Rational) -> Result<Self> {
        check_alphabet(q)?;
        let size = vertex_count(n, q)?;
        Ok(Self {
            n,
            q,
            values: vec![c; size],
        })
    }

    /// The `n = 0` function holding a single value.
    pub fn scalar(q: u32, c: Rational) -> Result<Self> {
        Self::constant(0, q, c)
    }

    pub fn from_values(n: usize, q: u32, values: Vec<Rational>) -> Result<Self> {
        check_alphabet(q)?;
        let expected = vertex_count(n, q)?;
        if values.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                got: values.len(),
            });
        }
        Ok(Self { n, q, values })
    }

    pub fn from_integers(n: usize, q: u32, values: &[i64]) -> Result<Self> {
        Self::from_values(n, q, values.iter().map(|&v| integer(v)).collect())
    }

    /// Evaluates `rule` on every word (given as its symbol slice).
    pub fn from_fn(n: usize, q: u32, mut rule: impl FnMut(&[u32]) -> Rational) -> Result<Self> {
        check_alphabet(q)?;
        let size = vertex_count(n, q)?;
        let mut symbols = vec![0; n];
        let values = (0..size)
            .map(|idx| {
                decode_index(idx, q, &mut symbols);
                rule(&symbols)
            })
            .collect();
        Ok(Self { n, q, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value_at(&self, index: usize) -> &Rational {
        &self.values[index]
    }

    pub fn value(&self, word: &Word) -> Result<&Rational> {
        if word.q() != self.q || word.len() != self.n {
            return Err(Error::ShapeMismatch {
                n1: self.n,
                q1: self.q,
                n2: word.len(),
                q2: word.q(),
            });
        }
        Ok(&self.values[word.index()])
    }

    /// Value at a raw symbol tuple; symbols must already be in range.
    pub fn get(&self, symbols: &[u32]) -> &Rational {
        debug_assert_eq!(symbols.len(), self.n);
        &self.values[encode_index(symbols, self.q)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// `|f|`, the number of nonzero values.
    pub fn support_size(&self) -> usize {
        self.values.iter().filter(|v| !v.is_zero()).count()
    }

    /// Indices of nonzero values, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(idx, _)| idx)
            .collect()
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.q != other.q {
            return Err(Error::ShapeMismatch {
                n1: self.n,
                q1: self.q,
                n2: other.n,
                q2: other.q,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        Self {
            n: self.n,
            q: self.q,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| op(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            n: self.n,
            q: self.q,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// `(f·g)(x,y) = f(x) g(y)` with `x` the first `f.n()` coordinates.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.q != other.q {
            return Err(Error::AlphabetMismatch(self.q, other.q));
        }
        vertex_count(self.n + other.n, self.q)?;
        let mut values = Vec::with_capacity(self.len() * other.len());
        for a in &self.values {
            if a.is_zero() {
                values.extend(std::iter::repeat_n(Rational::zero(), other.len()));
            } else {
                values.extend(other.values.iter().map(|b| a * b));
            }
        }
        Ok(Self {
            n: self.n + other.n,
            q: self.q,
            values,
        })
    }

    /// `f_σ(x) = f(x_{σ(0)},..,x_{σ(n-1)})`.
    ///
    /// This is a right action: `(f_σ)_τ = f_{τ∘σ}`.
    pub fn permute_coordinates(&self, sigma: &Permutation) -> Result<Self> {
        if sigma.len() != self.n {
            return Err(Error::InvalidPermutation(format!(
                "length {} for n={}",
                sigma.len(),
                self.n
            )));
        }
        let mut permuted = vec![0; self.n];
        Self::from_fn(self.n, self.q, |x| {
            for (p, slot) in permuted.iter_mut().enumerate() {
                *slot = x[sigma.apply(p)];
            }
            self.get(&permuted).clone()
        })
    }

    /// Restriction `f|_{x_r = k}` as a function of the remaining `n-1`
    /// coordinates (0-based `r`).
    pub fn restrict(&self, r: usize, k: u32) -> Result<Self> {
        if r >= self.n {
            return Err(Error::CoordinateOutOfRange {
                coordinate: r,
                n: self.n,
            });
        }
        if k >= self.q {
            return Err(Error::SymbolOutOfRange {
                symbol: k,
                q: self.q,
            });
        }
        let q = self.q as usize;
        let inner = q.pow((self.n - 1 - r) as u32);
        let outer = self.len() / (inner * q);
        let mut values = Vec::with_capacity(outer * inner);
        for hi in 0..outer {
            let base = hi * inner * q + k as usize * inner;
            values.extend_from_slice(&self.values[base..base + inner]);
        }
        Ok(Self {
            n: self.n - 1,
            q: self.q,
            values,
        })
    }

    /// Smallest positive multiple with coprime integer values and a positive
    /// first nonzero value. The zero function is returned unchanged.
    pub fn normalized(&self) -> Self {
        let Some(first) = self.values.iter().find(|v| !v.is_zero()) else {
            return self.clone();
        };
        let lcm = self.values.iter().fold(BigInt::one(), |acc, v| {
            num_integer::lcm(acc, v.denom().clone())
        });
        let ints: Vec<BigInt> = self
            .values
            .iter()
            .map(|v| (v * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let gcd = ints
            .iter()
            .fold(BigInt::zero(), |acc, v| num_integer::gcd(acc, v.clone()));
        let sign = if first.is_negative_value() { -1 } else { 1 };
        let divisor = gcd * sign;
        Self {
            n: self.n,
            q: self.q,
            values: ints
                .into_iter()
                .map(|v| Rational::from_integer(v / &divisor))
                .collect(),
        }
    }
}

trait NegativeValue {
    fn is_negative_value(&self) -> bool;
}

impl NegativeValue for Rational {
    fn is_negative_value(&self) -> bool {
        self < &Rational::zero()
    }
}

impl Add for &GridFunction {
    type Output = GridFunction;

    /// Panics on shape mismatch; use [`GridFunction::try_add`] otherwise.
    fn add(self, rhs: &GridFunction) -> GridFunction {
        self.try_add(rhs)
            .expect("shape mismatch in GridFunction addition")
    }
}

impl Sub for &GridFunction {
    type Output = GridFunction;

    fn sub(self, rhs: &GridFunction) -> GridFunction {
        self.try_sub(rhs)
            .expect("shape mismatch in GridFunction subtraction")
    }
}

impl Neg for &GridFunction {
    type Output = GridFunction;

    fn neg(self) -> GridFunction {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for GridFunction {
    /// One `word: value` line per nonzero entry.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut symbols = vec![0; self.n];
        for idx in self.support() {
            decode_index(idx, self.q, &mut symbols);
            let word: Vec<String> = symbols.iter().map(u32::to_string).collect();
            writeln!(f, "({}) {}", word.join(","), self.values[idx])?;
        }
        Ok(())
    }
}
