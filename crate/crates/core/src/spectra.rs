//! Eigenvalues and eigenspaces of `H(n,q)`.
//!
//! The orthogonal projector `E_t` onto `U_t(n,q)` factors over coordinates:
//! with `M` the averaging operator `J/q` on one coordinate,
//! `E_t = Σ_{|T|=t} ⊗_{r∈T} (I - M) ⊗_{r∉T} M`. [`decompose`] applies all
//! `n+1` projectors at once in `O(n² q^n)` by sweeping coordinates and
//! splitting each graded component into its averaged and centered parts.
//! [`project_eigenspace_direct`] is the distance-kernel form
//! `(E_t f)(x) = q^{-n} Σ_y K_t(d(x,y)) f(y)`, kept as an independent route.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::{GridFunction, Rational};
use crate::word::{decode_index, distance};

/// The index interval `[lo, hi]` selecting `U_lo ⊕ … ⊕ U_hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EigenRange {
    pub lo: usize,
    pub hi: usize,
}

impl EigenRange {
    pub fn new(lo: usize, hi: usize) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidRange { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn single(i: usize) -> Self {
        Self { lo: i, hi: i }
    }

    pub fn contains(&self, t: usize) -> bool {
        self.lo <= t && t <= self.hi
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if self.hi > n {
            return Err(Error::IndexOutOfRange { index: self.hi, n });
        }
        Ok(())
    }
}

impl std::fmt::Display for EigenRange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

fn check_index(n: usize, i: usize) -> Result<()> {
    if i > n {
        Err(Error::IndexOutOfRange { index: i, n })
    } else {
        Ok(())
    }
}

/// `λ_i(n,q) = n(q-1) - q·i`.
pub fn eigenvalue(n: usize, q: u32, i: usize) -> Result<i64> {
    check_index(n, i)?;
    Ok(n as i64 * (q as i64 - 1) - q as i64 * i as i64)
}

/// Sums of `f` along each fiber of coordinate `r`, replicated over the fiber.
fn fiber_sums<T: Clone>(
    values: &[T],
    q: usize,
    inner: usize,
    zero: &T,
    mut add: impl FnMut(&T, &T) -> T,
) -> Vec<T> {
    let mut out = vec![zero.clone(); values.len()];
    for block in (0..values.len()).step_by(inner * q) {
        for offset in 0..inner {
            let mut sum = zero.clone();
            for k in 0..q {
                sum = add(&sum, &values[block + k * inner + offset]);
            }
            for k in 0..q {
                out[block + k * inner + offset] = sum.clone();
            }
        }
    }
    out
}

fn stride(n: usize, q: u32, r: usize) -> usize {
    (q as usize).pow((n - 1 - r) as u32)
}

/// `(Af)(x) = Σ_{y ∈ N(x)} f(y)`.
pub fn apply_adjacency(f: &GridFunction) -> GridFunction {
    let (n, q) = (f.n(), f.q());
    let mut acc: Vec<Rational> = f
        .values()
        .iter()
        .map(|v| v * Rational::from_integer(BigInt::from(-(n as i64))))
        .collect();
    for r in 0..n {
        let sums = fiber_sums(
            f.values(),
            q as usize,
            stride(n, q, r),
            &Rational::zero(),
            |a, b| a + b,
        );
        for (a, s) in acc.iter_mut().zip(sums) {
            *a += s;
        }
    }
    GridFunction::from_values(n, q, acc).expect("shape preserved")
}

/// True iff `Af = λ_i f` exactly. The zero function passes for every `i`.
pub fn is_eigenfunction(f: &GridFunction, i: usize) -> Result<bool> {
    let lambda = Rational::from_integer(BigInt::from(eigenvalue(f.n(), f.q(), i)?));
    let af = apply_adjacency(f);
    Ok(af
        .values()
        .iter()
        .zip(f.values())
        .all(|(a, v)| *a == v * &lambda))
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for t in 0..k {
        acc = acc * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    acc
}

/// Krawtchouk value `K_i(d) = Σ_j (-1)^j (q-1)^{i-j} C(d,j) C(n-d,i-j)`.
pub fn krawtchouk(n: usize, q: u32, i: usize, d: usize) -> Result<BigInt> {
    check_index(n, i)?;
    check_index(n, d)?;
    let base = BigInt::from(q - 1);
    let mut acc = BigInt::zero();
    for j in 0..=i {
        let term = num_traits::pow(base.clone(), i - j) * binomial(d, j) * binomial(n - d, i - j);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// `dim U_i(n,q) = C(n,i)(q-1)^i`, checked against `tr E_i = K_i(0)`.
pub fn eigenspace_dimension(n: usize, q: u32, i: usize) -> Result<BigInt> {
    let dim = binomial(n, i) * num_traits::pow(BigInt::from(q - 1), i);
    let trace = krawtchouk(n, q, i, 0)?;
    assert_eq!(
        dim, trace,
        "eigenspace dimension disagrees with projector trace"
    );
    Ok(dim)
}

/// Integer arithmetic used by the graded decomposition. `None` means
/// overflow; the caller retries with big integers.
trait ExactInt: Clone + Sized {
    fn ex_zero() -> Self;
    fn add(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn div_exact(&self, d: u32) -> Self;
    fn ex_is_zero(&self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl ExactInt for i128 {
    fn ex_zero() -> Self {
        0
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn div_exact(&self, d: u32) -> Self {
        debug_assert_eq!(self % d as i128, 0);
        self / d as i128
    }
    fn ex_is_zero(&self) -> bool {
        *self == 0
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactInt for BigInt {
    fn ex_zero() -> Self {
        num_traits::Zero::zero()
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn div_exact(&self, d: u32) -> Self {
        debug_assert!(self.is_multiple_of(&BigInt::from(d)));
        self / BigInt::from(d)
    }
    fn ex_is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// `f` scaled to integers: `values = f · scale` with `scale = lcm(denoms)·q^n`.
struct ScaledInts {
    values: Vec<BigInt>,
    scale: BigInt,
}

fn scaled_integers(f: &GridFunction) -> ScaledInts {
    let lcm = f
        .values()
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scale = &lcm * num_traits::pow(BigInt::from(f.q()), f.n());
    let values = f
        .values()
        .iter()
        .map(|v| v.numer() * (&scale / v.denom()))
        .collect();
    ScaledInts { values, scale }
}

fn graded_components<T: ExactInt>(values: Vec<T>, n: usize, q: u32) -> Option<Vec<Vec<T>>> {
    let len = values.len();
    let mut comps: Vec<Vec<T>> = vec![values];
    for r in 0..n {
        let inner = stride(n, q, r);
        let mut next: Vec<Vec<T>> = vec![vec![T::ex_zero(); len]; comps.len() + 1];
        for (d, comp) in comps.iter().enumerate() {
            if comp.iter().all(T::ex_is_zero) {
                continue;
            }
            let mut overflow = false;
            let sums = fiber_sums(comp, q as usize, inner, &T::ex_zero(), |a, b| {
                a.add(b).unwrap_or_else(|| {
                    overflow = true;
                    T::ex_zero()
                })
            });
            if overflow {
                return None;
            }
            for idx in 0..len {
                let mean = sums[idx].div_exact(q);
                let centered = comp[idx].sub(&mean)?;
                next[d][idx] = next[d][idx].add(&mean)?;
                next[d + 1][idx] = next[d + 1][idx].add(&centered)?;
            }
        }
        comps = next;
    }
    Some(comps)
}

/// Integer components `scale · E_t f` for `t = 0..=n`.
fn integer_components(f: &GridFunction) -> (Vec<Vec<BigInt>>, BigInt) {
    let ScaledInts { values, scale } = scaled_integers(f);
    let small: Option<Vec<i128>> = values.iter().map(|v| v.to_i128()).collect();
    if let Some(small) = small {
        if let Some(comps) = graded_components(small, f.n(), f.q()) {
            let big = comps
                .into_iter()
                .map(|c| c.iter().map(ExactInt::to_big).collect())
                .collect();
            return (big, scale);
        }
    }
    let comps = graded_components(values, f.n(), f.q()).expect("big integers never overflow");
    (comps, scale)
}

/// All projections `[E_0 f, …, E_n f]`; they sum to `f`.
pub fn decompose(f: &GridFunction) -> Vec<GridFunction> {
    let (comps, scale) = integer_components(f);
    comps
        .into_iter()
        .map(|c| {
            let values = c
                .into_iter()
                .map(|v| Rational::new(v, scale.clone()))
                .collect();
            GridFunction::from_values(f.n(), f.q(), values).expect("shape preserved")
        })
        .collect()
}

/// Which `E_t f` are nonzero, for `t = 0..=n`.
pub fn projection_profile(f: &GridFunction) -> Vec<bool> {
    let (comps, _) = integer_components(f);
    comps
        .iter()
        .map(|c| c.iter().any(|v| !v.is_zero()))
        .collect()
}

/// `E_i f`, the orthogonal projection onto `U_i(n,q)`.
pub fn project_eigenspace(f: &GridFunction, i: usize) -> Result<GridFunction> {
    check_index(f.n(), i)?;
    Ok(decompose(f).swap_remove(i))
}

/// `Σ_{t ∈ range} E_t f`.
pub fn project_range(f: &GridFunction, range: EigenRange) -> Result<GridFunction> {
    range.check(f.n())?;
    let comps = decompose(f);
    let mut acc = comps[range.lo].clone();
    for comp in &comps[range.lo + 1..=range.hi] {
        acc = &acc + comp;
    }
    Ok(acc)
}

/// `E_i f` by direct summation against the Krawtchouk kernel, `O(q^{2n})`.
pub fn project_eigenspace_direct(f: &GridFunction, i: usize) -> Result<GridFunction> {
    let (n, q) = (f.n(), f.q());
    let kernel: Vec<BigInt> = (0..=n)
        .map(|d| krawtchouk(n, q, i, d))
        .collect::<Result<_>>()?;
    let denom = num_traits::pow(BigInt::from(q), n);
    let mut x = vec![0; n];
    let mut y = vec![0; n];
    let values = (0..f.len())
        .map(|xi| {
            decode_index(xi, q, &mut x);
            let mut acc = Rational::zero();
            for (yi, v) in f.values().iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                decode_index(yi, q, &mut y);
                acc += v * Rational::from_integer(kernel[distance(&x, &y)].clone());
            }
            acc / Rational::from_integer(denom.clone())
        })
        .collect();
    GridFunction::from_values(n, q, values)
}

/// True iff `f ∈ U_{[lo,hi]}(n,q)`, i.e. `E_t f = 0` for every `t` outside
/// the range. The zero function is a member of every range.
pub fn in_direct_sum(f: &GridFunction, range: EigenRange) -> Result<bool> {
    range.check(f.n())?;
    Ok(projection_profile(f)
        .iter()
        .enumerate()
        .all(|(t, &nonzero)| !nonzero || range.contains(t)))
}

/// Membership in a range given by possibly out-of-bounds signed endpoints.
///
/// Endpoints are clamped to `[0, n]`; an empty range admits only zero.
pub fn in_clamped_range(f: &GridFunction, lo: i64, hi: i64) -> bool {
    let lo = lo.max(0);
    let hi = hi.min(f.n() as i64);
    if lo > hi {
        return f.is_zero();
    }
    in_direct_sum(
        f,
        EigenRange::new(lo as usize, hi as usize).expect("lo <= hi"),
    )
    .expect("clamped range fits")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{counterexample_g, counterexample_h, elementary, ElementaryFactor};
    use crate::function::integer;

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(eigenvalue(2, 3, 0), Ok(4));
        assert_eq!(eigenvalue(2, 3, 1), Ok(1));
        assert_eq!(eigenvalue(3, 4, 2), Ok(1));
        assert!(eigenvalue(2, 3, 3).is_err());
    }

    #[test]
    fn eigenvalues_add_over_products() {
        for q in 2..6 {
            for m in 0..4 {
                for n in 0..4 {
                    for i in 0..=m {
                        for j in 0..=n {
                            assert_eq!(
                                eigenvalue(m, q, i).unwrap() + eigenvalue(n, q, j).unwrap(),
                                eigenvalue(m + n, q, i + j).unwrap()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn adjacency_examples() {
        let one = GridFunction::constant(3, 4, integer(1)).unwrap();
        assert_eq!(
            apply_adjacency(&one),
            GridFunction::constant(3, 4, integer(9)).unwrap()
        );
        for q in 2..6 {
            let a2 = elementary(ElementaryFactor::A2 { k: 0, m: 1 }, q).unwrap();
            assert_eq!(apply_adjacency(&a2), -&a2);
        }
        let zero = GridFunction::zeros(2, 3).unwrap();
        assert_eq!(apply_adjacency(&zero), zero);
    }

    #[test]
    fn adjacency_matches_neighbor_sum() {
        let f =
            GridFunction::from_fn(3, 3, |x| integer((x[0] * 7 + x[1] * x[2] + 1) as i64)).unwrap();
        let af = apply_adjacency(&f);
        for idx in 0..f.len() {
            let w = crate::word::Word::from_index(idx, 3, 3).unwrap();
            let sum: Rational = w
                .neighbors()
                .iter()
                .map(|y| f.value(y).unwrap().clone())
                .sum();
            assert_eq!(af.value_at(idx), &sum);
        }
    }

    #[test]
    fn eigenfunction_examples() {
        let a1 = elementary(ElementaryFactor::A1 { k: 1, m: 1 }, 3).unwrap();
        assert!(is_eigenfunction(&a1, 1).unwrap());
        assert!(!is_eigenfunction(&a1, 0).unwrap());
        let one = GridFunction::constant(2, 5, integer(1)).unwrap();
        assert!(is_eigenfunction(&one, 0).unwrap());
        assert!(is_eigenfunction(&counterexample_h(), 2).unwrap());
        let zero = GridFunction::zeros(2, 3).unwrap();
        assert!((0..=2).all(|i| is_eigenfunction(&zero, i).unwrap()));
    }

    #[test]
    fn krawtchouk_examples() {
        for (n, q) in [(3, 3), (4, 5), (2, 2)] {
            for d in 0..=n {
                assert_eq!(krawtchouk(n, q, 0, d).unwrap(), BigInt::one());
                assert_eq!(
                    krawtchouk(n, q, 1, d).unwrap(),
                    BigInt::from(n as i64 * (q as i64 - 1) - q as i64 * d as i64)
                );
            }
            for i in 0..=n {
                assert_eq!(
                    krawtchouk(n, q, i, 0).unwrap(),
                    binomial(n, i) * num_traits::pow(BigInt::from(q - 1), i)
                );
            }
        }
        assert!(krawtchouk(2, 3, 3, 0).is_err());
    }

    #[test]
    fn projection_examples() {
        let c = GridFunction::constant(2, 3, integer(7)).unwrap();
        assert_eq!(project_eigenspace(&c, 0).unwrap(), c);
        let a2 = elementary(ElementaryFactor::A2 { k: 0, m: 1 }, 4).unwrap();
        assert_eq!(project_eigenspace(&a2, 1).unwrap(), a2);
        assert!(project_eigenspace(&a2, 0).unwrap().is_zero());
        // direct summation: Σ_y K_0(d) a2(y) / q = (1 - 1)/4
        assert!(project_eigenspace_direct(&a2, 0).unwrap().is_zero());
    }

    #[test]
    fn graded_and_kernel_routes_agree() {
        for (n, q) in [(1, 3), (2, 3), (2, 4), (3, 2), (3, 3)] {
            let f = GridFunction::from_fn(n, q, |x| {
                let s: u32 = x
                    .iter()
                    .enumerate()
                    .map(|(p, &v)| (p as u32 + 2) * v * v)
                    .sum();
                integer((s % 7) as i64 - 3)
            })
            .unwrap();
            let comps = decompose(&f);
            let mut total = GridFunction::zeros(n, q).unwrap();
            for (i, comp) in comps.iter().enumerate() {
                assert_eq!(
                    comp,
                    &project_eigenspace_direct(&f, i).unwrap(),
                    "n={n} q={q} i={i}"
                );
                assert!(is_eigenfunction(comp, i).unwrap());
                total = &total + comp;
            }
            assert_eq!(total, f);
        }
    }

    #[test]
    fn direct_sum_examples() {
        let g = counterexample_g(5).unwrap();
        assert!(in_direct_sum(&g, EigenRange::new(1, 2).unwrap()).unwrap());
        assert!(!in_direct_sum(&g, EigenRange::single(2)).unwrap());
        for q in 2..6 {
            for m in 0..q {
                let a4 = elementary(ElementaryFactor::A4 { m }, q).unwrap();
                assert!(in_direct_sum(&a4, EigenRange::new(0, 1).unwrap()).unwrap());
            }
        }
        let a1 = elementary(ElementaryFactor::A1 { k: 0, m: 0 }, 3).unwrap();
        assert!(!in_direct_sum(&a1, EigenRange::single(0)).unwrap());
        assert_eq!(projection_profile(&a1), vec![false, true, false]);
        assert!(in_direct_sum(&a1, EigenRange::new(0, 3).unwrap()).is_err());
    }

    #[test]
    fn clamped_ranges() {
        let a1 = elementary(ElementaryFactor::A1 { k: 0, m: 0 }, 3).unwrap();
        assert!(in_clamped_range(&a1, 0, 5));
        assert!(!in_clamped_range(&a1, 0, -1));
        assert!(in_clamped_range(&GridFunction::zeros(2, 3).unwrap(), 0, -1));
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(eigenspace_dimension(2, 3, 0).unwrap(), BigInt::from(1));
        assert_eq!(eigenspace_dimension(2, 3, 1).unwrap(), BigInt::from(4));
        let total: BigInt = (0..=3)
            .map(|i| eigenspace_dimension(3, 4, i).unwrap())
            .sum();
        assert_eq!(total, BigInt::from(64));
    }

    #[test]
    fn dimension_two_three_one_is_trace_of_projector() {
        // trace of E_1 on H(2,3) from its matrix columns
        let mut trace = Rational::zero();
        for y in 0..9 {
            let delta = GridFunction::from_fn(2, 3, |x| {
                integer((crate::word::encode_index(x, 3) == y) as i64)
            })
            .unwrap();
            trace += project_eigenspace(&delta, 1).unwrap().value_at(y).clone();
        }
        assert_eq!(trace, integer(4));
    }

    #[test]
    fn wide_values_fall_back_to_big_integers() {
        let huge = Rational::from_integer(BigInt::from(i128::MAX) * 3);
        let f =
            GridFunction::from_values(1, 3, vec![huge.clone(), Rational::zero(), -huge]).unwrap();
        let comps = decompose(&f);
        assert!(comps[0].is_zero());
        assert_eq!(comps[1], f);
    }
}
