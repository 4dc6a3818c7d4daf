//! Reproducible checks of the library's headline statements, shared by the
//! `paper-check` command and the acceptance suite.
//!
//! Each claim runs a fixed instance list (quick) or the full parameter grid
//! (full) with a fixed RNG seed, so outcomes are deterministic.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::characterize::{factorize, Factorization};
use crate::constructions::{
    build_f1, build_f2, counterexample_g, counterexample_h, counterexample_v, elementary,
    family_for, family_template, min_support_bound, ElementaryFactor, FactorCounts, FactorParams,
    Family,
};
use crate::function::{integer, GridFunction, Rational};
use crate::perm::Permutation;
use crate::reduction::{
    check_lemma_reduction, check_lemma_vanishing_slices, support_lower_bound_inequality,
    uniformity_witness,
};
use crate::search::{find_minimum, verify_lower_bound, BoundVerdict, MinimumReport, SearchBudget};
use crate::spectra::{
    apply_adjacency, binomial, decompose, eigenvalue, in_direct_sum, is_eigenfunction,
    project_eigenspace_direct, project_range, EigenRange,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scale {
    Quick,
    Full,
}

impl Scale {
    fn pick<T>(self, quick: T, full: T) -> T {
        match self {
            Scale::Quick => quick,
            Scale::Full => full,
        }
    }
}

/// Outcome of one claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimRow {
    pub name: String,
    pub statement: String,
    pub passed: bool,
    /// What was checked on success, the first failure otherwise.
    pub detail: String,
    pub elapsed: Duration,
}

type Outcome = std::result::Result<String, String>;

/// A named, self-contained check.
pub struct Claim {
    pub name: &'static str,
    pub statement: &'static str,
    run: fn(Scale, &mut ChaCha8Rng) -> Outcome,
}

impl Claim {
    pub fn run(&self, scale: Scale) -> ClaimRow {
        let mut rng = ChaCha8Rng::seed_from_u64(seed(self.name));
        let start = Instant::now();
        let outcome = (self.run)(scale, &mut rng);
        let elapsed = start.elapsed();
        let (passed, detail) = match outcome {
            Ok(detail) => (true, detail),
            Err(detail) => (false, detail),
        };
        ClaimRow {
            name: self.name.to_string(),
            statement: self.statement.to_string(),
            passed,
            detail,
            elapsed,
        }
    }
}

/// Stable per-claim seed (FNV-1a of the name).
fn seed(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

pub const CLAIMS: &[Claim] = &[
    Claim {
        name: "construction-membership",
        statement:
            "F1/F2 members lie in U_[i,j] with support 2^i(q-1)^i q^(n-i-j) resp. 2^i(q-1)^(n-j)",
        run: construction_membership,
    },
    Claim {
        name: "elementary-membership",
        statement: "a1 in U_1(2,q), a2 in U_1(1,q), a3 in U_0(1,q), a4 in U_[0,1](1,q)",
        run: elementary_membership,
    },
    Claim {
        name: "projector-algebra",
        statement: "E_t are idempotent, mutually annihilating, sum to I, trace C(n,t)(q-1)^t",
        run: projector_algebra,
    },
    Claim {
        name: "reduction-identities",
        statement: "slice differences, slice sums and single slices fall in the shifted ranges",
        run: reduction_identities,
    },
    Claim {
        name: "exhaustive-minimality",
        statement: "no sparser member exists below the support formula on small instances",
        run: exhaustive_minimality,
    },
    Claim {
        name: "q3-overloaded-below-formula",
        statement: "min support of U_2(3,3) is 6 < 8, attained by v",
        run: q3_overloaded,
    },
    Claim {
        name: "q4-minimum-outside-family",
        statement: "h in U_2(3,4) has support 12 = bound but is not in F2(3,4,2,2)",
        run: q4_minimum_outside_family,
    },
    Claim {
        name: "overloaded-unequal-range",
        statement: "g in U_[1,2](2,q) has support 2 = bound but is not a product",
        run: overloaded_unequal_range,
    },
    Claim {
        name: "characterizer-round-trip",
        statement: "permuted, scaled family members are recognized and rebuilt exactly",
        run: characterizer_round_trip,
    },
    Claim {
        name: "tensor-additivity",
        statement: "f in U_i(m,q), g in U_j(n,q) implies f.g in U_(i+j)(m+n,q)",
        run: tensor_additivity,
    },
    Claim {
        name: "uniform-bound",
        statement:
            "uniform members have support >= 2^(n-j)(q-1)^(n-j)q^(i+j-n), tight for F1 at n=i+j",
        run: uniform_bound,
    },
];

pub fn run_all(scale: Scale) -> Vec<ClaimRow> {
    CLAIMS.iter().map(|claim| claim.run(scale)).collect()
}

pub fn find_claim(name: &str) -> Option<&'static Claim> {
    CLAIMS.iter().find(|claim| claim.name == name)
}

fn ensure(condition: bool, message: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if condition {
        Ok(())
    } else {
        Err(message())
    }
}

fn lib<T>(result: crate::Result<T>) -> std::result::Result<T, String> {
    result.map_err(|e| e.to_string())
}

fn range(lo: usize, hi: usize) -> EigenRange {
    EigenRange::new(lo, hi).expect("lo <= hi")
}

fn random_scalar(rng: &mut ChaCha8Rng) -> Rational {
    let numer: i64 = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
    Rational::new(numer.into(), rng.gen_range(1..=5i64).into())
}

fn random_integer_function(rng: &mut ChaCha8Rng, n: usize, q: u32) -> GridFunction {
    GridFunction::from_fn(n, q, |_| integer(rng.gen_range(-3..=3))).expect("valid shape")
}

/// A nonzero projection of a random integer function onto `U_range`.
fn random_member(rng: &mut ChaCha8Rng, n: usize, q: u32, range: EigenRange) -> GridFunction {
    loop {
        let f = project_range(&random_integer_function(rng, n, q), range).expect("valid range");
        if !f.is_zero() {
            return f;
        }
    }
}

fn random_params(rng: &mut ChaCha8Rng, q: u32, counts: FactorCounts) -> FactorParams {
    let a2 = |rng: &mut ChaCha8Rng| {
        let k = rng.gen_range(0..q);
        let m = (k + rng.gen_range(1..q)) % q;
        (k, m)
    };
    FactorParams {
        a1: (0..counts.a1)
            .map(|_| (rng.gen_range(0..q), rng.gen_range(0..q)))
            .collect(),
        a2: (0..counts.a2).map(|_| a2(rng)).collect(),
        a4: (0..counts.a4).map(|_| rng.gen_range(0..q)).collect(),
    }
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::new(images).expect("shuffled identity")
}

/// A random member of the family for `(n,q,i,j)`.
fn random_family_member(
    rng: &mut ChaCha8Rng,
    n: usize,
    q: u32,
    i: usize,
    j: usize,
) -> (Family, GridFunction) {
    let family = family_for(n, i, j);
    let params = random_params(
        rng,
        q,
        family_template(family, n, i, j).expect("valid template"),
    );
    let c = random_scalar(rng);
    let f = match family {
        Family::F1 => build_f1(n, q, i, j, Some(&params), &c),
        Family::F2 => build_f2(n, q, i, j, Some(&params), &c),
    };
    (family, f.expect("valid parameters"))
}

fn pow(base: u128, exp: usize) -> u128 {
    base.pow(exp as u32)
}

fn construction_membership(scale: Scale, rng: &mut ChaCha8Rng) -> Outcome {
    let draws = scale.pick(3, 25);
    let mut checked = 0;
    for q in 3..=5u32 {
        for n in 0..=4 {
            for i in 0..=n {
                for j in i..=n {
                    let expected = if n >= i + j {
                        pow(2, i) * pow(q as u128 - 1, i) * pow(q as u128, n - i - j)
                    } else {
                        pow(2, i) * pow(q as u128 - 1, n - j)
                    };
                    for _ in 0..draws {
                        let (family, f) = random_family_member(rng, n, q, i, j);
                        ensure(lib(in_direct_sum(&f, range(i, j)))?, || {
                            format!("{family}({n},{q},{i},{j}) member outside U_[{i},{j}]")
                        })?;
                        ensure(f.support_size() as u128 == expected, || {
                            format!(
                                "{family}({n},{q},{i},{j}) support {} != {expected}",
                                f.support_size()
                            )
                        })?;
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} members, n<=4, q in 3..=5"))
}

fn elementary_membership(scale: Scale, _: &mut ChaCha8Rng) -> Outcome {
    let max_q = scale.pick(4, 7);
    let mut checked = 0;
    for q in 2..=max_q {
        for k in 0..q {
            for m in 0..q {
                let a1 = lib(elementary(ElementaryFactor::A1 { k, m }, q))?;
                ensure(lib(is_eigenfunction(&a1, 1))?, || {
                    format!("a1({k},{m}) q={q}")
                })?;
                if k != m {
                    let a2 = lib(elementary(ElementaryFactor::A2 { k, m }, q))?;
                    ensure(lib(is_eigenfunction(&a2, 1))?, || {
                        format!("a2({k},{m}) q={q}")
                    })?;
                }
                checked += 2;
            }
            let a4 = lib(elementary(ElementaryFactor::A4 { m: k }, q))?;
            ensure(lib(in_direct_sum(&a4, range(0, 1)))?, || {
                format!("a4({k}) q={q}")
            })?;
        }
        let a3 = lib(elementary(ElementaryFactor::A3, q))?;
        ensure(lib(is_eigenfunction(&a3, 0))?, || format!("a3 q={q}"))?;
    }
    Ok(format!("{checked} factor instances, q<={max_q}"))
}

/// The operators `E_t` commute with translations, which act transitively,
/// so products and sums are determined by their columns at vertex 0.
/// Columns are built with Krawtchouk sums and cross-checked against the
/// graded decomposition.
fn projector_algebra(scale: Scale, _: &mut ChaCha8Rng) -> Outcome {
    let max_n = scale.pick(3, 4);
    for q in 2..=5u32 {
        for n in 0..=max_n {
            let delta = GridFunction::from_fn(n, q, |x| integer(x.iter().all(|&s| s == 0) as i64))
                .expect("valid shape");

            let columns: Vec<GridFunction> = (0..=n)
                .map(|t| lib(project_eigenspace_direct(&delta, t)))
                .collect::<std::result::Result<_, _>>()?;
            let graded = decompose(&delta);
            ensure(graded == columns, || {
                format!("graded and Krawtchouk columns differ, n={n} q={q}")
            })?;

            let total = columns
                .iter()
                .skip(1)
                .fold(columns[0].clone(), |acc, c| &acc + c);
            ensure(total == delta, || {
                format!("sum of E_t is not I, n={n} q={q}")
            })?;

            for (s, column) in columns.iter().enumerate() {
                for t in 0..=n {
                    let product = lib(project_eigenspace_direct(column, t))?;
                    let expected = if s == t {
                        column.clone()
                    } else {
                        GridFunction::zeros(n, q).expect("valid")
                    };
                    ensure(product == expected, || {
                        format!("E_{t} E_{s} wrong, n={n} q={q}")
                    })?;
                }
                // trace = q^n · E_s[0][0]
                let trace =
                    column.value_at(0) * Rational::from_integer(BigInt::from(q).pow(n as u32));
                let expected =
                    Rational::from_integer(binomial(n, s) * BigInt::from(q - 1).pow(s as u32));
                ensure(trace == expected, || {
                    format!("trace of E_{s} is {trace}, n={n} q={q}")
                })?;
            }
        }
    }
    Ok(format!("n<={max_n}, q<=5"))
}

fn reduction_identities(scale: Scale, rng: &mut ChaCha8Rng) -> Outcome {
    let samples = scale.pick(10, 200);
    let mut checked = 0;
    for n in 2..=4usize {
        for q in 2..=5u32 {
            for _ in 0..samples {
                let i = rng.gen_range(0..=n);
                let j = rng.gen_range(i..=n);
                let f = random_member(rng, n, q, range(i, j));
                for r in 0..n {
                    let report = lib(check_lemma_reduction(&f, range(i, j), r))?;
                    ensure(report.all_passed(), || {
                        format!("n={n} q={q} [{i},{j}] r={r}: {report:?}")
                    })?;
                }

                // f' in U_[i,j-1](n-1) times a4(m) lies in U_[i,j]
                if j > i {
                    let g = random_member(rng, n - 1, q, range(i.min(n - 1), (j - 1).min(n - 1)));
                    let m = rng.gen_range(0..q);
                    let a4 = lib(elementary(ElementaryFactor::A4 { m }, q))?;
                    let lifted = lib(g.tensor(&a4))?;
                    if lib(in_direct_sum(&lifted, range(i, j)))? {
                        let report =
                            lib(check_lemma_vanishing_slices(&lifted, range(i, j), n - 1, m))?;
                        ensure(report.passed, || {
                            format!("vanishing slices n={n} q={q} [{i},{j}]")
                        })?;
                    }
                }

                // first q-1 slices equal: u·a3 + w·a4(q-1)
                let u = random_member(rng, n - 1, q, range(i.min(n - 1), j.min(n - 1)));
                let w = random_member(rng, n - 1, q, range(i.min(n - 1), j.min(n - 1)));
                let a3 = lib(elementary(ElementaryFactor::A3, q))?;
                let a4 = lib(elementary(ElementaryFactor::A4 { m: q - 1 }, q))?;
                let h = &lib(u.tensor(&a3))? + &lib(w.tensor(&a4))?;
                let ineq = lib(support_lower_bound_inequality(&h, n - 1))?;
                ensure(ineq.holds(), || {
                    format!("support inequality fails n={n} q={q}: {ineq:?}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} random members, 2<=n<=4, q<=5"))
}

/// `(n, q, lo, hi, minimum)`; minima frozen from the rank-test search.
const MINIMA_QUICK: &[(usize, u32, usize, usize, u128)] = &[
    (2, 3, 1, 1, 4),
    (2, 3, 0, 1, 3),
    (2, 4, 1, 1, 6),
    (1, 2, 1, 1, 2),
    (1, 3, 1, 1, 2),
    (1, 4, 1, 1, 2),
    (1, 5, 1, 1, 2),
    (1, 6, 1, 1, 2),
    (1, 7, 1, 1, 2),
    (2, 3, 1, 2, 2),
    (3, 3, 0, 1, 9),
];

const MINIMA_FULL_EXTRA: &[(usize, u32, usize, usize, u128)] = &[(2, 5, 1, 1, 8)];

fn exhaustive_minimality(scale: Scale, _: &mut ChaCha8Rng) -> Outcome {
    let extra = scale.pick(&[][..], MINIMA_FULL_EXTRA);
    let mut examined = 0;
    for &(n, q, lo, hi, minimum) in MINIMA_QUICK.iter().chain(extra) {
        let report = lib(verify_lower_bound(
            n,
            q,
            range(lo, hi),
            &SearchBudget::new(minimum as usize),
        ))?;
        ensure(report.bound.value == minimum, || {
            format!(
                "({n},{q},[{lo},{hi}]) formula {} != {minimum}",
                report.bound.value
            )
        })?;
        ensure(report.verdict == BoundVerdict::Verified, || {
            format!("({n},{q},[{lo},{hi}]) verdict {:?}", report.verdict)
        })?;
        examined += report.below.subsets_examined;
    }
    Ok(format!(
        "{} instances, {examined} candidate sets",
        MINIMA_QUICK.len() + extra.len()
    ))
}

fn q3_overloaded(_: Scale, _: &mut ChaCha8Rng) -> Outcome {
    let v = counterexample_v();
    ensure(lib(is_eigenfunction(&v, 2))?, || {
        "v is not in U_2(3,3)".into()
    })?;
    ensure(v.support_size() == 6, || {
        format!("|v| = {}", v.support_size())
    })?;
    let report = lib(find_minimum(
        3,
        3,
        EigenRange::single(2),
        &SearchBudget::new(6),
    ))?;
    let MinimumReport::Conclusive {
        minimum,
        witness,
        subsets_examined,
    } = report
    else {
        return Err(format!("search inconclusive: {report:?}"));
    };
    ensure(minimum == 6, || format!("minimum {minimum}"))?;
    ensure(
        lib(is_eigenfunction(&witness, 2))? && witness.support_size() == 6,
        || "bad witness".into(),
    )?;
    let bound = lib(min_support_bound(3, 3, 2, 2))?;
    ensure(bound.value == 8 && !bound.q_valid, || format!("{bound:?}"))?;
    Ok(format!("minimum 6 < 8, {subsets_examined} candidate sets"))
}

fn q4_minimum_outside_family(_: Scale, _: &mut ChaCha8Rng) -> Outcome {
    let h = counterexample_h();
    ensure(h.support_size() == 12, || {
        format!("|h| = {}", h.support_size())
    })?;
    ensure(lib(is_eigenfunction(&h, 2))?, || {
        "h is not in U_2(3,4)".into()
    })?;
    let bound = lib(min_support_bound(3, 4, 2, 2))?;
    ensure(bound.value == 12, || format!("bound {}", bound.value))?;
    let result = lib(factorize(&h, EigenRange::single(2)))?;
    ensure(result == Factorization::NotMember, || {
        format!("factorize gave {result:?}")
    })?;
    Ok("support 12, no certificate".into())
}

fn overloaded_unequal_range(_: Scale, _: &mut ChaCha8Rng) -> Outcome {
    for q in 4..=6u32 {
        let g = lib(counterexample_g(q))?;
        ensure(g.support_size() == 2, || {
            format!("q={q}: |g| = {}", g.support_size())
        })?;
        ensure(lib(in_direct_sum(&g, range(1, 2)))?, || {
            format!("q={q}: g outside U_[1,2]")
        })?;
        let a2 = lib(elementary(ElementaryFactor::A2 { k: 0, m: q - 1 }, q))?;
        let first = lib(elementary(ElementaryFactor::A4 { m: 0 }, q))?;
        let last = lib(elementary(ElementaryFactor::A4 { m: q - 1 }, q))?;
        let identity = &lib(a2.tensor(&first))? + &lib(last.tensor(&a2))?;
        ensure(identity == g, || {
            format!("q={q}: decomposition identity fails")
        })?;
        let bound = lib(min_support_bound(2, q, 1, 2))?;
        ensure(bound.value == 2, || format!("q={q}: bound {}", bound.value))?;
        let result = lib(factorize(&g, range(1, 2)))?;
        ensure(result == Factorization::UncharacterizedRegime, || {
            format!("q={q}: {result:?}")
        })?;
    }
    Ok("q in 4..=6".into())
}

fn characterizer_round_trip(scale: Scale, rng: &mut ChaCha8Rng) -> Outcome {
    let instances = scale.pick(20, 100);
    for _ in 0..instances {
        let n = rng.gen_range(1..=4usize);
        let q = rng.gen_range(2..=5u32);
        let i = rng.gen_range(0..=n);
        let j = rng.gen_range(i..=n);
        let (_, f) = random_family_member(rng, n, q, i, j);
        let g = lib(f.permute_coordinates(&random_permutation(rng, n)))?;
        let cert = match lib(factorize(&g, range(i, j)))? {
            Factorization::Member(cert) => cert,
            other => return Err(format!("({n},{q},[{i},{j}]): {other:?}")),
        };
        ensure(lib(cert.rebuild())? == g, || {
            format!("({n},{q},[{i},{j}]): rebuild differs")
        })?;
        let tau = random_permutation(rng, n);
        let moved = lib(g.permute_coordinates(&tau))?;
        ensure(
            lib(factorize(&moved, range(i, j)))?.certificate().is_some(),
            || format!("({n},{q},[{i},{j}]): not equivariant under {tau}"),
        )?;
    }
    Ok(format!("{instances} instances"))
}

fn tensor_additivity(scale: Scale, rng: &mut ChaCha8Rng) -> Outcome {
    let samples = scale.pick(10, 60);
    for _ in 0..samples {
        let q = rng.gen_range(2..=5u32);
        let m = rng.gen_range(0..=3usize);
        let n = rng.gen_range(0..=4 - m);
        let i = rng.gen_range(0..=m);
        let j = rng.gen_range(0..=n);
        let f = random_member(rng, m, q, EigenRange::single(i));
        let g = random_member(rng, n, q, EigenRange::single(j));
        let fg = lib(f.tensor(&g))?;
        ensure(lib(is_eigenfunction(&fg, i + j))?, || {
            format!("m={m} n={n} q={q} i={i} j={j}")
        })?;
        let lambda = lib(eigenvalue(m, q, i))? + lib(eigenvalue(n, q, j))?;
        ensure(apply_adjacency(&fg) == fg.scale(&integer(lambda)), || {
            "eigenvalues do not add".into()
        })?;
    }
    Ok(format!("{samples} products, m+n<=4"))
}

fn uniform_bound(scale: Scale, rng: &mut ChaCha8Rng) -> Outcome {
    let mut witnesses = 0;
    for &(n, q) in &[(2usize, 3u32), (2, 4), (3, 3)] {
        for i in 0..=n {
            for j in i..=n {
                if i + j < n {
                    continue;
                }
                let bound = lib(min_support_bound(n, q, i, j))?
                    .uniform_bound
                    .ok_or_else(|| format!("no uniform bound for ({n},{q},[{i},{j}])"))?;
                let (_, construction) =
                    lib(crate::search::construction_support(n, q, range(i, j)))?;
                let budget = SearchBudget::new(construction.support_size());
                match lib(find_minimum(n, q, range(i, j), &budget))? {
                    MinimumReport::Conclusive { witness, .. } => {
                        if lib(uniformity_witness(&witness))?.is_some() {
                            ensure(witness.support_size() as u128 >= bound, || {
                                format!(
                                    "({n},{q},[{i},{j}]) uniform witness of support {}",
                                    witness.support_size()
                                )
                            })?;
                            witnesses += 1;
                        }
                    }
                    other => return Err(format!("({n},{q},[{i},{j}]) {other:?}")),
                }
            }
        }
    }
    let draws = scale.pick(2, 10);
    for n in 1..=4usize {
        for q in 3..=5u32 {
            for i in 0..=n / 2 {
                let j = n - i;
                let bound = lib(min_support_bound(n, q, i, j))?
                    .uniform_bound
                    .expect("i+j = n");
                for _ in 0..draws {
                    let (_, f) = random_family_member(rng, n, q, i, j);
                    ensure(lib(uniformity_witness(&f))?.is_some(), || {
                        format!("F1({n},{q},{i},{j}) not uniform")
                    })?;
                    ensure(f.support_size() as u128 == bound, || {
                        format!(
                            "F1({n},{q},{i},{j}) support {} != {bound}",
                            f.support_size()
                        )
                    })?;
                }
            }
        }
    }
    Ok(format!(
        "{witnesses} uniform search witnesses, F1 equality for n<=4"
    ))
}
