//! Restrictions `f|_{x_r = k}`, uniformity, and executable checks of the
//! reduction identities relating `U_{[i,j]}(n,q)` to `U_{[·,·]}(n-1,q)`.
//!
//! Eigenspace indices below zero or above `n-1` are clamped; an empty
//! clamped range contains only the zero function.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::GridFunction;
use crate::spectra::{in_clamped_range, in_direct_sum, EigenRange};

/// Coordinate `r` (0-based) fixed to symbol `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionSpec {
    pub r: usize,
    pub k: u32,
}

pub fn restrict(f: &GridFunction, r: usize, k: u32) -> Result<GridFunction> {
    f.restrict(r, k)
}

/// All `q` slices of `f` along coordinate `r`.
pub fn slices(f: &GridFunction, r: usize) -> Result<Vec<GridFunction>> {
    (0..f.q()).map(|k| f.restrict(r, k)).collect()
}

/// `Some(l)` with one exceptional symbol `l(r)` per coordinate when `f` is
/// uniform (smallest valid `l` chosen), `None` otherwise.
pub fn uniformity_witness(f: &GridFunction) -> Result<Option<Vec<u32>>> {
    if f.n() == 0 {
        return Err(Error::Precondition("uniformity needs n >= 1".into()));
    }
    let mut witness = Vec::with_capacity(f.n());
    for r in 0..f.n() {
        let s = slices(f, r)?;
        let found = (0..f.q()).find(|&l| {
            let mut rest = (0..f.q()).filter(|&k| k != l).map(|k| &s[k as usize]);
            let first = rest.next().expect("q >= 2");
            rest.all(|g| g == first)
        });
        match found {
            Some(l) => witness.push(l),
            None => return Ok(None),
        }
    }
    Ok(Some(witness))
}

pub fn is_uniform(f: &GridFunction) -> Result<bool> {
    Ok(uniformity_witness(f)?.is_some())
}

/// Pass/fail for one reduction identity, with the first failing slice pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub passed: bool,
    /// Target range `[lo, hi]` after clamping, `None` when empty.
    pub target: Option<(usize, usize)>,
    /// Slice symbols `(k, m)` of the first failure; `m` unused for single
    /// slices and `(0, 0)` for the slice sum.
    pub counterexample: Option<(u32, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub coordinate: usize,
    /// `f_k - f_m ∈ U_{[i-1,j-1]}(n-1,q)` for all `k, m`.
    pub differences: CaseReport,
    /// `Σ_k f_k ∈ U_{[i,j]}(n-1,q)`.
    pub slice_sum: CaseReport,
    /// `f_k ∈ U_{[i-1,j]}(n-1,q)` for all `k`.
    pub slices: CaseReport,
}

impl ReductionReport {
    pub fn all_passed(&self) -> bool {
        self.differences.passed && self.slice_sum.passed && self.slices.passed
    }
}

fn clamped(lo: i64, hi: i64, n: usize) -> Option<(usize, usize)> {
    let lo = lo.max(0);
    let hi = hi.min(n as i64);
    (lo <= hi).then_some((lo as usize, hi as usize))
}

fn require_member(f: &GridFunction, range: EigenRange) -> Result<()> {
    if !in_direct_sum(f, range)? {
        return Err(Error::Precondition(format!(
            "function is not in U_{range}({},{})",
            f.n(),
            f.q()
        )));
    }
    Ok(())
}

/// Checks the three slice identities for `f ∈ U_{[i,j]}(n,q)` along
/// coordinate `r`.
pub fn check_lemma_reduction(
    f: &GridFunction,
    range: EigenRange,
    r: usize,
) -> Result<ReductionReport> {
    if f.n() < 2 {
        return Err(Error::Precondition("reduction checks need n >= 2".into()));
    }
    require_member(f, range)?;
    let s = slices(f, r)?;
    let (i, j) = (range.lo as i64, range.hi as i64);
    let m = f.n() - 1;

    let mut differences = CaseReport {
        passed: true,
        target: clamped(i - 1, j - 1, m),
        counterexample: None,
    };
    'pairs: for k in 0..f.q() {
        for l in k + 1..f.q() {
            let diff = &s[k as usize] - &s[l as usize];
            if !in_clamped_range(&diff, i - 1, j - 1) {
                differences.passed = false;
                differences.counterexample = Some((k, l));
                break 'pairs;
            }
        }
    }

    let sum = s.iter().skip(1).fold(s[0].clone(), |acc, g| &acc + g);
    let sum_ok = in_clamped_range(&sum, i, j);
    let slice_sum = CaseReport {
        passed: sum_ok,
        target: clamped(i, j, m),
        counterexample: (!sum_ok).then_some((0, 0)),
    };

    let bad = (0..f.q()).find(|&k| !in_clamped_range(&s[k as usize], i - 1, j));
    let slices = CaseReport {
        passed: bad.is_none(),
        target: clamped(i - 1, j, m),
        counterexample: bad.map(|k| (k, k)),
    };

    Ok(ReductionReport {
        coordinate: r,
        differences,
        slice_sum,
        slices,
    })
}

/// When every slice but `f_m` vanishes along `r`, checks
/// `f_m ∈ U_{[i,j-1]}(n-1,q)`.
pub fn check_lemma_vanishing_slices(
    f: &GridFunction,
    range: EigenRange,
    r: usize,
    m: u32,
) -> Result<CaseReport> {
    if f.n() == 0 {
        return Err(Error::Precondition(
            "vanishing-slice check needs n >= 1".into(),
        ));
    }
    require_member(f, range)?;
    if m >= f.q() {
        return Err(Error::SymbolOutOfRange {
            symbol: m,
            q: f.q(),
        });
    }
    let s = slices(f, r)?;
    if let Some(k) = (0..f.q()).find(|&k| k != m && !s[k as usize].is_zero()) {
        return Err(Error::Precondition(format!(
            "slice {k} along coordinate {r} does not vanish"
        )));
    }
    let (i, j) = (range.lo as i64, range.hi as i64);
    let passed = in_clamped_range(&s[m as usize], i, j - 1);
    Ok(CaseReport {
        passed,
        target: clamped(i, j - 1, f.n() - 1),
        counterexample: (!passed).then_some((m, m)),
    })
}

/// `|f|` against `(q-2)|f_0| + |f_{q-2} - f_{q-1}|` along `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportInequality {
    pub lhs: usize,
    pub rhs: usize,
}

impl SupportInequality {
    pub fn holds(&self) -> bool {
        self.lhs >= self.rhs
    }

    pub fn slack(&self) -> isize {
        self.lhs as isize - self.rhs as isize
    }
}

/// Requires `f_0 = f_1 = … = f_{q-2}` along coordinate `r`.
pub fn support_lower_bound_inequality(f: &GridFunction, r: usize) -> Result<SupportInequality> {
    let s = slices(f, r)?;
    let q = f.q() as usize;
    if s[..q - 1].iter().any(|g| g != &s[0]) {
        return Err(Error::Precondition(format!(
            "slices 0..{} along coordinate {r} are not all equal",
            q - 2
        )));
    }
    let diff = &s[q - 2] - &s[q - 1];
    Ok(SupportInequality {
        lhs: f.support_size(),
        rhs: (q - 2) * s[0].support_size() + diff.support_size(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        build_f1, build_f2, counterexample_g, counterexample_v, elementary, ElementaryFactor,
    };
    use crate::function::{integer, Rational};
    use crate::spectra::project_range;
    use num_traits::One;

    fn one() -> Rational {
        Rational::one()
    }

    #[test]
    fn restrict_examples() {
        let c = GridFunction::constant(3, 4, integer(1)).unwrap();
        for r in 0..3 {
            for k in 0..4 {
                assert_eq!(
                    restrict(&c, r, k).unwrap(),
                    GridFunction::constant(2, 4, integer(1)).unwrap()
                );
            }
        }
        let q = 4;
        let a1 = elementary(ElementaryFactor::A1 { k: 2, m: 1 }, q).unwrap();
        let s = restrict(&a1, 0, 2).unwrap();
        assert_eq!(s, GridFunction::from_integers(1, q, &[1, 0, 1, 1]).unwrap());
        assert_eq!(s.support_size(), q as usize - 1);

        let f = build_f1(2, 3, 1, 1, None, &one()).unwrap();
        let a4 = elementary(ElementaryFactor::A4 { m: 2 }, 3).unwrap();
        let fa = f.tensor(&a4).unwrap();
        assert_eq!(restrict(&fa, 2, 2).unwrap(), f);
        assert!(restrict(&fa, 2, 0).unwrap().is_zero());
    }

    #[test]
    fn slice_supports_partition_support() {
        let v = counterexample_v();
        for r in 0..3 {
            let total: usize = slices(&v, r)
                .unwrap()
                .iter()
                .map(GridFunction::support_size)
                .sum();
            assert_eq!(total, v.support_size());
        }
    }

    #[test]
    fn uniformity_examples() {
        let c = GridFunction::constant(2, 3, integer(4)).unwrap();
        assert_eq!(uniformity_witness(&c).unwrap(), Some(vec![0, 0]));
        let f = build_f1(4, 3, 1, 2, None, &one()).unwrap();
        assert!(is_uniform(&f).unwrap());
        // every F2 instance carries an a2 factor, which has two exceptional slices once q >= 3
        let f = build_f2(3, 4, 2, 2, None, &one()).unwrap();
        assert!(!is_uniform(&f).unwrap());
        let f = build_f2(3, 2, 2, 2, None, &one()).unwrap();
        assert!(is_uniform(&f).unwrap());
        assert!(!is_uniform(&counterexample_v()).unwrap());
        let z = GridFunction::scalar(3, integer(1)).unwrap();
        assert!(is_uniform(&z).is_err());
    }

    #[test]
    fn v_has_three_distinct_slices_in_last_coordinate() {
        let s = slices(&counterexample_v(), 2).unwrap();
        assert!(s[0] != s[1] && s[1] != s[2] && s[0] != s[2]);
    }

    #[test]
    fn reduction_on_a1() {
        let a1 = elementary(ElementaryFactor::A1 { k: 0, m: 0 }, 3).unwrap();
        for r in 0..2 {
            let report = check_lemma_reduction(&a1, EigenRange::single(1), r).unwrap();
            assert!(report.all_passed(), "{report:?}");
            assert_eq!(report.differences.target, Some((0, 0)));
        }
    }

    #[test]
    fn reduction_on_constant() {
        let c = GridFunction::constant(3, 3, integer(2)).unwrap();
        let report = check_lemma_reduction(&c, EigenRange::single(0), 1).unwrap();
        assert!(report.all_passed());
        assert_eq!(report.differences.target, None);
    }

    #[test]
    fn reduction_on_random_projection() {
        let raw = GridFunction::from_fn(3, 4, |x| {
            integer(((x[0] * 5 + x[1] * 3 + x[2] * x[0]) % 7) as i64 - 3)
        })
        .unwrap();
        let f = project_range(&raw, EigenRange::single(2)).unwrap();
        assert!(!f.is_zero());
        for r in 0..3 {
            assert!(check_lemma_reduction(&f, EigenRange::single(2), r)
                .unwrap()
                .all_passed());
        }
    }

    #[test]
    fn reduction_requires_membership() {
        let a1 = elementary(ElementaryFactor::A1 { k: 0, m: 0 }, 3).unwrap();
        assert!(matches!(
            check_lemma_reduction(&a1, EigenRange::single(0), 0),
            Err(Error::Precondition(_))
        ));
        let a2 = elementary(ElementaryFactor::A2 { k: 0, m: 1 }, 3).unwrap();
        assert!(check_lemma_reduction(&a2, EigenRange::single(1), 0).is_err());
    }

    #[test]
    fn vanishing_slices_examples() {
        // g' ∈ F1(2,3,1,1), f = g'·a4(2) ∈ F1(3,3,1,2)
        let g = build_f1(2, 3, 1, 1, None, &one()).unwrap();
        let f = g
            .tensor(&elementary(ElementaryFactor::A4 { m: 2 }, 3).unwrap())
            .unwrap();
        let range = EigenRange::new(1, 2).unwrap();
        let report = check_lemma_vanishing_slices(&f, range, 2, 2).unwrap();
        assert!(report.passed);
        assert_eq!(report.target, Some((1, 1)));

        let zero = GridFunction::zeros(2, 3).unwrap();
        assert!(
            check_lemma_vanishing_slices(&zero, range, 0, 1)
                .unwrap()
                .passed
        );

        let g4 = counterexample_g(4).unwrap();
        for m in 0..4 {
            assert!(matches!(
                check_lemma_vanishing_slices(&g4, range, 0, m),
                Err(Error::Precondition(_))
            ));
        }
    }

    #[test]
    fn support_inequality_examples() {
        // F1(2,3,1,1) = a1(2,2): slices along the first coordinate are
        // f_0 = f_1 = -e_2 and f_2 = 1 - e_2, so f_1 - f_2 = -1.
        let f = build_f1(2, 3, 1, 1, None, &one()).unwrap();
        let ineq = support_lower_bound_inequality(&f, 0).unwrap();
        assert_eq!((ineq.lhs, ineq.rhs), (4, 4));
        assert!(ineq.holds());

        let c = GridFunction::constant(2, 4, integer(1)).unwrap();
        let ineq = support_lower_bound_inequality(&c, 1).unwrap();
        assert_eq!((ineq.lhs, ineq.rhs), (16, 8));

        // tight: f = h·a4(q-1)
        let h = build_f1(2, 4, 1, 1, None, &one()).unwrap();
        let f = h
            .tensor(&elementary(ElementaryFactor::A4 { m: 3 }, 4).unwrap())
            .unwrap();
        let ineq = support_lower_bound_inequality(&f, 2).unwrap();
        assert_eq!(ineq.lhs, ineq.rhs);

        // q = 2 with an a2 factor: f_0 = h, f_1 = -h, so the slack is |h|
        let h = build_f1(2, 2, 1, 1, None, &one()).unwrap();
        let f = h
            .tensor(&elementary(ElementaryFactor::A2 { k: 0, m: 1 }, 2).unwrap())
            .unwrap();
        let ineq = support_lower_bound_inequality(&f, 2).unwrap();
        assert_eq!(ineq.slack(), h.support_size() as isize);

        let a2 = elementary(ElementaryFactor::A2 { k: 0, m: 1 }, 3).unwrap();
        assert!(support_lower_bound_inequality(&a2, 0).is_err());
    }
}
