//! Elementary eigenfunctions, the product families `F1`/`F2`, the
//! minimum-support formulas, and the three counterexamples that mark where
//! those formulas stop characterizing the minimizers.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::{integer, GridFunction, Rational};
use crate::perm::Permutation;
use crate::spectra::EigenRange;

/// Tensor-product building block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ElementaryFactor {
    /// Two coordinates: `+1` on `x=k, y≠m`, `-1` on `y=m, x≠k`.
    A1 { k: u32, m: u32 },
    /// One coordinate: `+1` at `k`, `-1` at `m`, `k ≠ m`.
    A2 { k: u32, m: u32 },
    /// One coordinate, constant `1`.
    A3,
    /// One coordinate, indicator of `m`.
    A4 { m: u32 },
}

impl ElementaryFactor {
    /// Number of coordinates the factor occupies.
    pub fn span(&self) -> usize {
        match self {
            ElementaryFactor::A1 { .. } => 2,
            _ => 1,
        }
    }

    pub fn validate(&self, q: u32) -> Result<()> {
        let check = |s: u32| {
            if s < q {
                Ok(())
            } else {
                Err(Error::SymbolOutOfRange { symbol: s, q })
            }
        };
        match *self {
            ElementaryFactor::A1 { k, m } => {
                check(k)?;
                check(m)
            }
            ElementaryFactor::A2 { k, m } => {
                check(k)?;
                check(m)?;
                if k == m {
                    Err(Error::InvalidFactor(format!("a2({k},{m}) needs k != m")))
                } else {
                    Ok(())
                }
            }
            ElementaryFactor::A3 => Ok(()),
            ElementaryFactor::A4 { m } => check(m),
        }
    }

    /// Support size `|a|` for alphabet `q`.
    pub fn support_size(&self, q: u32) -> usize {
        match self {
            ElementaryFactor::A1 { .. } => 2 * (q as usize - 1),
            ElementaryFactor::A2 { .. } => 2,
            ElementaryFactor::A3 => q as usize,
            ElementaryFactor::A4 { .. } => 1,
        }
    }
}

impl fmt::Display for ElementaryFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementaryFactor::A1 { k, m } => write!(f, "a1({k},{m})"),
            ElementaryFactor::A2 { k, m } => write!(f, "a2({k},{m})"),
            ElementaryFactor::A3 => write!(f, "a3"),
            ElementaryFactor::A4 { m } => write!(f, "a4({m})"),
        }
    }
}

/// The function of a single elementary factor over `Σ_q^{span}`.
pub fn elementary(factor: ElementaryFactor, q: u32) -> Result<GridFunction> {
    factor.validate(q)?;
    let one = |b: bool| integer(b as i64);
    match factor {
        ElementaryFactor::A1 { k, m } => GridFunction::from_fn(2, q, |x| {
            if x[0] == k && x[1] != m {
                integer(1)
            } else if x[1] == m && x[0] != k {
                integer(-1)
            } else {
                Rational::zero()
            }
        }),
        ElementaryFactor::A2 { k, m } => GridFunction::from_fn(1, q, |x| {
            if x[0] == k {
                integer(1)
            } else if x[0] == m {
                integer(-1)
            } else {
                Rational::zero()
            }
        }),
        ElementaryFactor::A3 => GridFunction::constant(1, q, Rational::one()),
        ElementaryFactor::A4 { m } => GridFunction::from_fn(1, q, |x| one(x[0] == m)),
    }
}

/// `c · factors[0] · factors[1] · …` in the given coordinate order.
pub fn product(q: u32, factors: &[ElementaryFactor], c: &Rational) -> Result<GridFunction> {
    let mut acc = GridFunction::scalar(q, c.clone())?;
    for &factor in factors {
        acc = acc.tensor(&elementary(factor, q)?)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    F1,
    F2,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::F1 => write!(f, "F1"),
            Family::F2 => write!(f, "F2"),
        }
    }
}

/// How many factors of each kind a family member has.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FactorCounts {
    pub a1: usize,
    pub a2: usize,
    pub a3: usize,
    pub a4: usize,
}

impl FactorCounts {
    pub fn of(factors: &[ElementaryFactor]) -> Self {
        let mut counts = Self::default();
        for factor in factors {
            match factor {
                ElementaryFactor::A1 { .. } => counts.a1 += 1,
                ElementaryFactor::A2 { .. } => counts.a2 += 1,
                ElementaryFactor::A3 => counts.a3 += 1,
                ElementaryFactor::A4 { .. } => counts.a4 += 1,
            }
        }
        counts
    }
}

fn check_indices(n: usize, i: usize, j: usize) -> Result<()> {
    if i > j {
        return Err(Error::InvalidRange { lo: i, hi: j });
    }
    if j > n {
        return Err(Error::IndexOutOfRange { index: j, n });
    }
    Ok(())
}

/// Factor multiset of `F1(n,q,i,j)` (needs `n ≥ i+j`) or `F2(n,q,i,j)`
/// (needs `i+j > n`).
pub fn family_template(family: Family, n: usize, i: usize, j: usize) -> Result<FactorCounts> {
    check_indices(n, i, j)?;
    match family {
        Family::F1 if n >= i + j => Ok(FactorCounts {
            a1: i,
            a2: 0,
            a3: n - i - j,
            a4: j - i,
        }),
        Family::F1 => Err(Error::Regime(format!(
            "F1 needs n >= i+j, got n={n}, i={i}, j={j}"
        ))),
        Family::F2 if i + j > n => Ok(FactorCounts {
            a1: n - j,
            a2: i + j - n,
            a3: 0,
            a4: j - i,
        }),
        Family::F2 => Err(Error::Regime(format!(
            "F2 needs i+j > n, got n={n}, i={i}, j={j}"
        ))),
    }
}

/// Parameter choices for the factors of a family member, in canonical order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorParams {
    pub a1: Vec<(u32, u32)>,
    pub a2: Vec<(u32, u32)>,
    pub a4: Vec<u32>,
}

impl FactorParams {
    /// `a1(q-1,q-1)`, `a2(0,q-1)`, `a4(q-1)` everywhere.
    pub fn defaults(q: u32, counts: FactorCounts) -> Self {
        Self {
            a1: vec![(q - 1, q - 1); counts.a1],
            a2: vec![(0, q - 1); counts.a2],
            a4: vec![q - 1; counts.a4],
        }
    }
}

/// Canonical factor list: all `A1` pairs, then `A3`s and `A2`s, then `A4`s.
pub fn canonical_factors(
    counts: FactorCounts,
    params: &FactorParams,
) -> Result<Vec<ElementaryFactor>> {
    if params.a1.len() != counts.a1 || params.a2.len() != counts.a2 || params.a4.len() != counts.a4
    {
        return Err(Error::InvalidFactor(format!(
            "parameter counts (a1={}, a2={}, a4={}) do not match template {:?}",
            params.a1.len(),
            params.a2.len(),
            params.a4.len(),
            counts
        )));
    }
    let mut factors = Vec::with_capacity(counts.a1 + counts.a2 + counts.a3 + counts.a4);
    factors.extend(
        params
            .a1
            .iter()
            .map(|&(k, m)| ElementaryFactor::A1 { k, m }),
    );
    factors.extend(std::iter::repeat_n(ElementaryFactor::A3, counts.a3));
    factors.extend(
        params
            .a2
            .iter()
            .map(|&(k, m)| ElementaryFactor::A2 { k, m }),
    );
    factors.extend(params.a4.iter().map(|&m| ElementaryFactor::A4 { m }));
    Ok(factors)
}

fn build_family(
    family: Family,
    n: usize,
    q: u32,
    i: usize,
    j: usize,
    params: Option<&FactorParams>,
    c: &Rational,
) -> Result<GridFunction> {
    if c.is_zero() {
        return Err(Error::ZeroScalar);
    }
    let counts = family_template(family, n, i, j)?;
    let defaults;
    let params = match params {
        Some(p) => p,
        None => {
            defaults = FactorParams::defaults(q, counts);
            &defaults
        }
    };
    product(q, &canonical_factors(counts, params)?, c)
}

/// A member of `F1(n,q,i,j)`, regime `n ≥ i+j`.
pub fn build_f1(
    n: usize,
    q: u32,
    i: usize,
    j: usize,
    params: Option<&FactorParams>,
    c: &Rational,
) -> Result<GridFunction> {
    build_family(Family::F1, n, q, i, j, params, c)
}

/// A member of `F2(n,q,i,j)`, regime `i+j > n`.
pub fn build_f2(
    n: usize,
    q: u32,
    i: usize,
    j: usize,
    params: Option<&FactorParams>,
    c: &Rational,
) -> Result<GridFunction> {
    build_family(Family::F2, n, q, i, j, params, c)
}

/// The family whose support formula applies to `(n, i, j)`.
pub fn family_for(n: usize, i: usize, j: usize) -> Family {
    if n >= i + j {
        Family::F1
    } else {
        Family::F2
    }
}

/// A witness `(σ, factors, c)` that `f_σ = c · ∏ factors` lies in a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationCertificate {
    pub n: usize,
    pub q: u32,
    pub range: EigenRange,
    pub family: Family,
    pub sigma: Permutation,
    pub factors: Vec<ElementaryFactor>,
    pub c: Rational,
}

impl FactorizationCertificate {
    /// The canonical product `c · ∏ factors`, equal to `f_σ`.
    pub fn canonical_function(&self) -> Result<GridFunction> {
        product(self.q, &self.factors, &self.c)
    }

    /// Reconstructs `f` itself.
    pub fn rebuild(&self) -> Result<GridFunction> {
        self.canonical_function()?
            .permute_coordinates(&self.sigma.inverse())
    }

    /// Factor spans cover `n` coordinates and the multiset matches the
    /// family template.
    pub fn check_template(&self) -> Result<()> {
        let span: usize = self.factors.iter().map(ElementaryFactor::span).sum();
        if span != self.n || self.sigma.len() != self.n {
            return Err(Error::Precondition(format!(
                "factors span {span} coordinates, n={}",
                self.n
            )));
        }
        let expected = family_template(self.family, self.n, self.range.lo, self.range.hi)?;
        if FactorCounts::of(&self.factors) != expected {
            return Err(Error::Precondition(
                "factor multiset does not match family".into(),
            ));
        }
        if self.c.is_zero() {
            return Err(Error::ZeroScalar);
        }
        Ok(())
    }
}

/// Which side of `n = i+j` an index range lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `n ≥ i+j`; bound `2^i (q-1)^i q^{n-i-j}` proven for `q ≥ 3`.
    Balanced,
    /// `i+j > n`; bound `2^i (q-1)^{n-j}` proven for `q ≥ 4`.
    Overloaded,
}

/// Minimum-support formula for `U_{[i,j]}(n,q)` with its validity metadata.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportBound {
    pub value: u128,
    pub regime: Regime,
    /// Smallest alphabet for which `value` is a proven lower bound.
    pub min_q: u32,
    pub q_valid: bool,
    /// Equality is proven to force membership in a family (up to σ).
    pub characterized: bool,
    /// Bound restricted to uniform functions, `2^{n-j}(q-1)^{n-j}q^{i+j-n}`,
    /// when `i+j ≥ n` and `q ≥ 3`.
    pub uniform_bound: Option<u128>,
}

fn pow(base: u128, exp: usize) -> u128 {
    base.pow(exp as u32)
}

pub fn min_support_bound(n: usize, q: u32, i: usize, j: usize) -> Result<SupportBound> {
    check_indices(n, i, j)?;
    let q128 = q as u128;
    let uniform_bound =
        (i + j >= n && q >= 3).then(|| pow(2, n - j) * pow(q128 - 1, n - j) * pow(q128, i + j - n));
    if n >= i + j {
        let q_valid = q >= 3;
        Ok(SupportBound {
            value: pow(2, i) * pow(q128 - 1, i) * pow(q128, n - i - j),
            regime: Regime::Balanced,
            min_q: 3,
            q_valid,
            characterized: q_valid,
            uniform_bound,
        })
    } else {
        let q_valid = q >= 4;
        Ok(SupportBound {
            value: pow(2, i) * pow(q128 - 1, n - j),
            regime: Regime::Overloaded,
            min_q: 4,
            q_valid,
            characterized: i == j && q >= 5,
            uniform_bound,
        })
    }
}

/// `g` on `Σ_q^2`: `+1` at `(0,0)`, `-1` at `(q-1,q-1)`.
///
/// Lies in `U_{[1,2]}(2,q)` with support 2 but is not a product of
/// elementary factors.
pub fn counterexample_g(q: u32) -> Result<GridFunction> {
    GridFunction::from_fn(2, q, |x| {
        if x[0] == 0 && x[1] == 0 {
            integer(1)
        } else if x[0] == q - 1 && x[1] == q - 1 {
            integer(-1)
        } else {
            Rational::zero()
        }
    })
}

/// `h` on `Σ_4^3`, an element of `U_2(3,4)` with support 12 that is not in
/// `F2(3,4,2,2)` under any coordinate permutation.
pub fn counterexample_h() -> GridFunction {
    let h1 = |x: u32, y: u32| -> i64 {
        match (x, y) {
            (0, 0) => -1,
            (2, 2) => 1,
            _ => 0,
        }
    };
    let h2 = |x: u32, y: u32| -> i64 {
        if x == 0 && (y == 1 || y == 3) {
            1
        } else if y == 2 && (x == 1 || x == 3) {
            -1
        } else {
            0
        }
    };
    GridFunction::from_fn(3, 4, |w| {
        let (x, y, z) = (w[0], w[1], w[2]);
        integer(match z {
            0 | 1 => h1(x, y),
            2 => h2(x, y),
            _ => h2(y, x),
        })
    })
    .expect("q=4 is valid")
}

/// `v` on `Σ_3^3`, an element of `U_2(3,3)` with support 6, below the
/// overloaded formula value 8. Shifts are taken mod 3.
pub fn counterexample_v() -> GridFunction {
    let v1 = |x: u32, y: u32| -> i64 {
        match (x, y) {
            (0, 0) => 1,
            (1, 2) => -1,
            _ => 0,
        }
    };
    GridFunction::from_fn(3, 3, |w| {
        let (x, y, z) = (w[0], w[1], w[2]);
        integer(v1((x + z) % 3, (y + z) % 3))
    })
    .expect("q=3 is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{in_direct_sum, is_eigenfunction};

    #[test]
    fn elementary_factor_values() {
        let a1 = elementary(ElementaryFactor::A1 { k: 1, m: 1 }, 3).unwrap();
        assert_eq!(a1.support_size(), 4);
        assert_eq!(a1.get(&[1, 0]), &integer(1));
        assert_eq!(a1.get(&[1, 2]), &integer(1));
        assert_eq!(a1.get(&[0, 1]), &integer(-1));
        assert_eq!(a1.get(&[2, 1]), &integer(-1));
        assert_eq!(a1.get(&[1, 1]), &integer(0));

        let a2 = elementary(ElementaryFactor::A2 { k: 0, m: 2 }, 4).unwrap();
        assert_eq!(
            a2,
            GridFunction::from_integers(1, 4, &[1, 0, -1, 0]).unwrap()
        );

        let a4 = elementary(ElementaryFactor::A4 { m: 2 }, 4).unwrap();
        assert_eq!(
            a4,
            GridFunction::from_integers(1, 4, &[0, 0, 1, 0]).unwrap()
        );

        assert!(elementary(ElementaryFactor::A2 { k: 1, m: 1 }, 3).is_err());
        assert!(elementary(ElementaryFactor::A4 { m: 3 }, 3).is_err());
    }

    #[test]
    fn support_of_a1_times_a2() {
        for q in 3..6 {
            let f = elementary(ElementaryFactor::A1 { k: 0, m: 1 }, q)
                .unwrap()
                .tensor(&elementary(ElementaryFactor::A2 { k: 0, m: 1 }, q).unwrap())
                .unwrap();
            assert_eq!(f.support_size(), 2 * (q as usize - 1) * 2);
        }
    }

    #[test]
    fn f1_examples() {
        let one = Rational::one();
        let f = build_f1(3, 3, 1, 1, None, &one).unwrap();
        assert_eq!(f.support_size(), 12);
        assert!(in_direct_sum(&f, EigenRange::single(1)).unwrap());

        let c = integer(5);
        let f = build_f1(1, 3, 0, 0, None, &c).unwrap();
        assert_eq!(f, GridFunction::constant(1, 3, c).unwrap());

        let f = build_f1(2, 4, 0, 2, None, &one).unwrap();
        assert_eq!(f.support_size(), 1);
        assert!(in_direct_sum(&f, EigenRange::new(0, 2).unwrap()).unwrap());

        assert!(matches!(
            build_f1(2, 3, 1, 2, None, &one),
            Err(Error::Regime(_))
        ));
        assert_eq!(
            build_f1(2, 3, 1, 1, None, &Rational::zero()),
            Err(Error::ZeroScalar)
        );
    }

    #[test]
    fn f2_examples() {
        let one = Rational::one();
        let f = build_f2(1, 4, 1, 1, None, &one).unwrap();
        assert_eq!(f.support_size(), 2);
        assert!(in_direct_sum(&f, EigenRange::single(1)).unwrap());

        let f = build_f2(3, 5, 2, 2, None, &one).unwrap();
        assert_eq!(f.support_size(), 16);
        assert!(in_direct_sum(&f, EigenRange::single(2)).unwrap());

        let f = build_f2(2, 4, 1, 2, None, &one).unwrap();
        assert_eq!(f.support_size(), 2);
        assert!(in_direct_sum(&f, EigenRange::new(1, 2).unwrap()).unwrap());

        assert!(matches!(
            build_f2(2, 4, 1, 1, None, &one),
            Err(Error::Regime(_))
        ));
    }

    #[test]
    fn explicit_params_must_match_template() {
        let params = FactorParams {
            a1: vec![(0, 1)],
            a2: vec![],
            a4: vec![],
        };
        assert!(build_f1(3, 3, 1, 1, Some(&params), &Rational::one()).is_ok());
        let wrong = FactorParams {
            a1: vec![],
            ..params
        };
        assert!(build_f1(3, 3, 1, 1, Some(&wrong), &Rational::one()).is_err());
    }

    #[test]
    fn bound_examples() {
        let b = min_support_bound(3, 3, 1, 1).unwrap();
        assert_eq!(
            (b.value, b.regime, b.q_valid, b.characterized),
            (12, Regime::Balanced, true, true)
        );

        let b = min_support_bound(3, 4, 2, 2).unwrap();
        assert_eq!(
            (b.value, b.regime, b.q_valid, b.characterized),
            (12, Regime::Overloaded, true, false)
        );

        let b = min_support_bound(3, 3, 2, 2).unwrap();
        assert_eq!(b.value, 8);
        assert!(!b.q_valid);
        assert_eq!(b.min_q, 4);
        assert_eq!(b.uniform_bound, Some(12));

        assert!(min_support_bound(3, 5, 2, 2).unwrap().characterized);
        assert!(!min_support_bound(3, 5, 2, 3).unwrap().characterized);
        assert!(min_support_bound(2, 3, 2, 1).is_err());
        assert!(min_support_bound(2, 3, 1, 3).is_err());
    }

    #[test]
    fn counterexample_g_properties() {
        for q in 2..7 {
            let g = counterexample_g(q).unwrap();
            assert_eq!(g.support_size(), 2);
            assert!(in_direct_sum(&g, EigenRange::new(1, 2).unwrap()).unwrap());
            let a2 = elementary(ElementaryFactor::A2 { k: 0, m: q - 1 }, q).unwrap();
            let a4_0 = elementary(ElementaryFactor::A4 { m: 0 }, q).unwrap();
            let a4_last = elementary(ElementaryFactor::A4 { m: q - 1 }, q).unwrap();
            let sum = &a2.tensor(&a4_0).unwrap() + &a4_last.tensor(&a2).unwrap();
            assert_eq!(sum, g);
        }
    }

    #[test]
    fn counterexample_h_properties() {
        let h = counterexample_h();
        assert_eq!(h.support_size(), 12);
        assert!(is_eigenfunction(&h, 2).unwrap());
        assert_eq!(min_support_bound(3, 4, 2, 2).unwrap().value, 12);
    }

    #[test]
    fn counterexample_v_properties() {
        let v = counterexample_v();
        assert_eq!(v.support_size(), 6);
        assert!(is_eigenfunction(&v, 2).unwrap());
        assert!((v.support_size() as u128) < min_support_bound(3, 3, 2, 2).unwrap().value);
    }
}
