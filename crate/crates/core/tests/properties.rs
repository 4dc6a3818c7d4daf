use minsupp_core::constructions::{family_for, family_template, FactorCounts};
use minsupp_core::hgf::{parse_hgf, to_hgf};
use minsupp_core::reduction::{check_lemma_reduction, slices, support_lower_bound_inequality};
use minsupp_core::search::exists_with_support_at_most;
use minsupp_core::spectra::{decompose, in_direct_sum, project_eigenspace_direct, project_range};
use minsupp_core::{
    build_f1, build_f2, factorize, integer, rational, EigenRange, FactorParams, Family,
    GridFunction, Permutation, SearchBudget, SearchStatus, Word,
};
use proptest::prelude::*;

/// `(n, q)` with `q^n` small enough for exact projections.
fn shape(max_n: usize, max_q: u32) -> impl Strategy<Value = (usize, u32)> {
    (0..=max_n, 2..=max_q)
}

fn function(max_n: usize, max_q: u32) -> impl Strategy<Value = GridFunction> {
    shape(max_n, max_q).prop_flat_map(|(n, q)| {
        let size = (q as usize).pow(n as u32);
        prop::collection::vec(-4i64..=4, size)
            .prop_map(move |values| GridFunction::from_integers(n, q, &values).unwrap())
    })
}

fn rational_function(max_n: usize, max_q: u32) -> impl Strategy<Value = GridFunction> {
    shape(max_n, max_q).prop_flat_map(|(n, q)| {
        let size = (q as usize).pow(n as u32);
        prop::collection::vec((-6i64..=6, 1i64..=4), size).prop_map(move |values| {
            let values = values.into_iter().map(|(a, b)| rational(a, b)).collect();
            GridFunction::from_values(n, q, values).unwrap()
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::new(images).unwrap())
}

fn range(n: usize) -> impl Strategy<Value = EigenRange> {
    (0..=n)
        .prop_flat_map(move |i| (Just(i), i..=n))
        .prop_map(|(i, j)| EigenRange::new(i, j).unwrap())
}

fn nonzero_scalar() -> impl Strategy<Value = minsupp_core::Rational> {
    (prop_oneof![-9i64..=-1, 1i64..=9], 1i64..=5).prop_map(|(a, b)| rational(a, b))
}

/// A random family member with random factor parameters.
fn family_member() -> impl Strategy<Value = (GridFunction, EigenRange)> {
    (1usize..=4, 2u32..=5)
        .prop_flat_map(|(n, q)| (Just(n), Just(q), range(n)))
        .prop_flat_map(|(n, q, r)| {
            let family = family_for(n, r.lo, r.hi);
            let counts = family_template(family, n, r.lo, r.hi).unwrap();
            let a1 = prop::collection::vec((0..q, 0..q), counts.a1);
            let a2 = prop::collection::vec(
                (0..q, 1..q).prop_map(move |(k, d)| (k, (k + d) % q)),
                counts.a2,
            );
            let a4 = prop::collection::vec(0..q, counts.a4);
            (Just((n, q, r, family)), a1, a2, a4, nonzero_scalar())
        })
        .prop_map(|((n, q, r, family), a1, a2, a4, c)| {
            let params = FactorParams { a1, a2, a4 };
            let f = match family {
                Family::F1 => build_f1(n, q, r.lo, r.hi, Some(&params), &c),
                Family::F2 => build_f2(n, q, r.lo, r.hi, Some(&params), &c),
            };
            (f.unwrap(), r)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn word_index_round_trip((n, q) in shape(6, 7), seed in any::<u64>()) {
        let count = (q as u64).pow(n as u32);
        let index = (seed % count) as usize;
        let word = Word::from_index(index, n, q).unwrap();
        prop_assert_eq!(word.index(), index);
        prop_assert_eq!(word.len(), n);
    }

    #[test]
    fn neighbors_are_at_distance_one((n, q) in shape(4, 5), seed in any::<u64>()) {
        let count = (q as u64).pow(n as u32);
        let word = Word::from_index((seed % count) as usize, n, q).unwrap();
        let neighbors = word.neighbors();
        prop_assert_eq!(neighbors.len(), n * (q as usize - 1));
        for y in &neighbors {
            prop_assert_eq!(word.hamming_distance(y).unwrap(), 1);
        }
    }

    #[test]
    fn hgf_round_trip(f in rational_function(3, 4)) {
        prop_assert_eq!(parse_hgf(&to_hgf(&f)).unwrap(), f);
    }

    #[test]
    fn tensor_support_is_multiplicative(f in function(2, 4), g in function(2, 4)) {
        prop_assume!(f.q() == g.q());
        let fg = f.tensor(&g).unwrap();
        prop_assert_eq!(fg.support_size(), f.support_size() * g.support_size());
        prop_assert_eq!(fg.n(), f.n() + g.n());
    }

    #[test]
    fn graded_decomposition_matches_krawtchouk(f in rational_function(3, 4)) {
        let parts = decompose(&f);
        prop_assert_eq!(parts.len(), f.n() + 1);
        for (t, part) in parts.iter().enumerate() {
            prop_assert_eq!(part, &project_eigenspace_direct(&f, t).unwrap());
        }
        let total = parts.iter().fold(GridFunction::zeros(f.n(), f.q()).unwrap(), |acc, p| &acc + p);
        prop_assert_eq!(total, f);
    }

    #[test]
    fn projection_is_idempotent_and_lands_in_range(f in function(4, 4), seed in any::<u8>()) {
        let n = f.n();
        let lo = seed as usize % (n + 1);
        let hi = lo + (seed as usize / 7) % (n + 1 - lo);
        let r = EigenRange::new(lo, hi).unwrap();
        let p = project_range(&f, r).unwrap();
        prop_assert!(in_direct_sum(&p, r).unwrap());
        prop_assert_eq!(project_range(&p, r).unwrap(), p);
    }

    #[test]
    fn permutation_is_a_right_action(
        (f, sigma, tau) in function(4, 3).prop_flat_map(|f| {
            let n = f.n();
            (Just(f), permutation(n), permutation(n))
        })
    ) {
        let lhs = f.permute_coordinates(&sigma).unwrap().permute_coordinates(&tau).unwrap();
        let rhs = f.permute_coordinates(&tau.compose(&sigma).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(lhs.support_size(), f.support_size());
    }

    #[test]
    fn permutation_preserves_membership(
        (f, r, sigma) in function(3, 4).prop_flat_map(|f| {
            let n = f.n();
            (Just(f), range(n), permutation(n))
        })
    ) {
        let p = project_range(&f, r).unwrap();
        prop_assert!(in_direct_sum(&p.permute_coordinates(&sigma).unwrap(), r).unwrap());
    }

    #[test]
    fn slice_supports_partition_support(f in function(4, 4).prop_filter("n >= 1", |f| f.n() >= 1), r in 0usize..4) {
        let r = r % f.n();
        let total: usize = slices(&f, r).unwrap().iter().map(GridFunction::support_size).sum();
        prop_assert_eq!(total, f.support_size());
    }

    #[test]
    fn reduction_identities_hold(
        (f, r) in function(3, 4)
            .prop_filter("n >= 2", |f| f.n() >= 2)
            .prop_flat_map(|f| { let n = f.n(); (Just(f), range(n)) })
    ) {
        let p = project_range(&f, r).unwrap();
        prop_assume!(!p.is_zero());
        for coordinate in 0..p.n() {
            let report = check_lemma_reduction(&p, r, coordinate).unwrap();
            prop_assert!(report.all_passed(), "{:?}", report);
        }
    }

    #[test]
    fn support_inequality_holds_when_applicable(u in function(2, 4), w in function(2, 4)) {
        prop_assume!(u.n() == w.n() && u.q() == w.q());
        let q = u.q();
        // first q-1 slices along the last coordinate all equal u
        let f = GridFunction::from_fn(u.n() + 1, q, |x| {
            let (head, last) = x.split_at(u.n());
            if last[0] + 1 < q { u.get(head).clone() } else { w.get(head).clone() }
        }).unwrap();
        let ineq = support_lower_bound_inequality(&f, u.n()).unwrap();
        prop_assert!(ineq.holds(), "{:?}", ineq);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn family_members_have_formula_support((f, r) in family_member()) {
        prop_assert!(in_direct_sum(&f, r).unwrap());
        let (n, q) = (f.n() as u32, f.q() as usize);
        let (i, j) = (r.lo as u32, r.hi as u32);
        let expected = if n >= i + j {
            2usize.pow(i) * (q - 1).pow(i) * q.pow(n - i - j)
        } else {
            2usize.pow(i) * (q - 1).pow(n - j)
        };
        prop_assert_eq!(f.support_size(), expected);
    }

    #[test]
    fn factorize_round_trips_and_is_equivariant(
        (f, r, sigma, tau) in family_member().prop_flat_map(|(f, r)| {
            let n = f.n();
            (Just(f), Just(r), permutation(n), permutation(n))
        })
    ) {
        let g = f.permute_coordinates(&sigma).unwrap();
        let cert = factorize(&g, r).unwrap().certificate().cloned();
        prop_assert!(cert.is_some());
        let cert = cert.unwrap();
        prop_assert_eq!(cert.rebuild().unwrap(), g.clone());
        prop_assert_eq!(cert.canonical_function().unwrap(), g.permute_coordinates(&cert.sigma).unwrap());
        prop_assert_eq!(
            FactorCounts::of(&cert.factors),
            family_template(cert.family, g.n(), r.lo, r.hi).unwrap()
        );
        let moved = g.permute_coordinates(&tau).unwrap();
        prop_assert!(factorize(&moved, r).unwrap().certificate().is_some());
    }

    #[test]
    fn perturbed_members_are_not_certified((f, r) in family_member(), index in any::<prop::sample::Index>()) {
        let mut values = f.clone().into_values();
        let k = index.index(values.len());
        values[k] += integer(1);
        let g = GridFunction::from_values(f.n(), f.q(), values).unwrap();
        // any certificate issued for a perturbed function must rebuild it
        if !g.is_zero() && in_direct_sum(&g, r).unwrap() {
            if let Some(cert) = factorize(&g, r).unwrap().certificate() {
                prop_assert_eq!(cert.rebuild().unwrap(), g);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn symmetry_pruning_agrees_with_plain_search(
        (n, q, r, s) in prop_oneof![Just((1usize, 4u32)), Just((2, 2)), Just((2, 3)), Just((3, 2))]
            .prop_flat_map(|(n, q)| (Just(n), Just(q), range(n), 1usize..=5))
    ) {
        let pruned = exists_with_support_at_most(n, q, r, s, &SearchBudget::new(s)).unwrap();
        let plain_budget = SearchBudget { symmetry_pruning: false, ..SearchBudget::new(s) };
        let plain = exists_with_support_at_most(n, q, r, s, &plain_budget).unwrap();
        prop_assert_eq!(pruned.status, plain.status);
        if let Some(w) = &pruned.witness {
            prop_assert!(in_direct_sum(w, r).unwrap());
            prop_assert!(w.support_size() <= s);
        }
        prop_assert!(pruned.status != SearchStatus::BudgetExceeded);
    }
}
