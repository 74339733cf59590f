mod common;

use common::strategies::mixture;
use common::*;
use posimod::horn::eval_cnf;
use posimod::minimize::*;
use posimod::oracle::int;
use posimod::subset::is_laminar;
use posimod::SubsetMask;
use proptest::prelude::*;

/// Runs every minimization routine on `truth` (declared with its tight
/// range bound) and compares against the definitions.
fn check_all(truth: &Truth) -> Result<(), TestCaseError> {
    let want = truth.min();
    let d = truth.max_all().to_integer() as u64;

    let r = min_posimodular(&truth.tight_oracle()).unwrap();
    prop_assert_eq!(r.value, want);
    prop_assert_eq!(truth.at(r.witness), want);
    prop_assert!(!r.witness.is_empty());
    let minimizers = truth.minimizers();
    let smallest = *minimizers.iter().min_by_key(|x| x.order_key()).unwrap();
    prop_assert_eq!(r.witness, smallest);

    if d <= 3 {
        let r = min_d_le_3(&truth.tight_oracle()).unwrap();
        prop_assert_eq!(r.value, want);
        prop_assert_eq!(truth.at(r.witness), want);
    }

    let mut got: Vec<SubsetMask> = enumerate_all_minimizers(&truth.tight_oracle()).unwrap().collect();
    got.sort();
    prop_assert_eq!(&got, &minimizers);

    let ext = compute_extreme_sets(&truth.tight_oracle()).unwrap();
    prop_assert_eq!(&ext, &truth.extreme_sets());
    prop_assert!(is_laminar(&ext));

    let pool = candidate_pool(&truth.tight_oracle()).unwrap();
    for &x in &minimizers {
        if truth.locally_minimal(x) {
            prop_assert!(eval_cnf(&pool.phi, x), "locally minimal minimizer {} violates phi", x);
            prop_assert!(x.len() < 2 || pool.candidates.contains(&x));
        }
    }
    for x in truth.semi_extreme_sets() {
        prop_assert!(is_semi_extreme(&truth.tight_oracle(), x).unwrap());
    }
    Ok(())
}

#[test]
fn every_posimodular_table_on_three_elements() {
    let mut count = 0;
    for f in all_tables_n3() {
        let truth = Truth::from_values(3, f);
        if !truth.posimodular() {
            continue;
        }
        count += 1;
        check_all(&truth).unwrap_or_else(|e| panic!("table {:?}: {e}", truth.f));
    }
    // sanity: the filter keeps a nontrivial share of the 16384 tables
    assert!(count > 1000, "{count}");
}

#[test]
fn brute_force_tie_break() {
    let f = posimod::instances::make_capped_cardinality(4, 1).unwrap();
    let r = brute_force_min(&f).unwrap();
    assert_eq!((r.value, r.witness), (int(1), set(&[0])));
    let z = zero_table(3);
    assert_eq!(brute_force_minimizers(&z).unwrap().len(), 7);
}

#[test]
fn contraction_on_triangle_with_pendant() {
    let g = posimod::instances::WeightedGraph::unit(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
    let f = posimod::instances::make_cut_function(&g).unwrap();
    assert_eq!(f.range_bound(), Some(4));
    let truth = Truth::from_values(4, f.table());
    let f = truth.tight_oracle();
    assert_eq!(f.range_bound(), Some(3));
    let r = min_d_le_3(&f).unwrap();
    assert_eq!((r.value, r.witness), (int(0), SubsetMask::full(4)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn mixtures_agree_with_definitions(m in mixture(6)) {
        let truth = m.truth();
        prop_assume!(truth.posimodular());
        check_all(&truth)?;
    }

    #[test]
    fn random_monotone_general_and_d3(n in 2usize..=9, d in 0u64..=4, seed in any::<u64>()) {
        let f = posimod::instances::make_random_monotone(n, d, seed).unwrap();
        let truth = Truth::from_values(n, f.table());
        let r = min_posimodular(&f).unwrap();
        prop_assert_eq!(r.value, truth.min());
        if d <= 3 {
            let f = posimod::instances::make_random_monotone(n, d, seed).unwrap();
            prop_assert_eq!(min_d_le_3(&f).unwrap().value, truth.min());
        }
    }

    #[test]
    fn semi_extreme_sets_keep_a_minimizer(m in mixture(6)) {
        let truth = m.truth();
        prop_assume!(truth.posimodular());
        let minimizers = truth.minimizers();
        for x in truth.semi_extreme_sets() {
            prop_assert!(minimizers.iter().any(|&y| x.is_subset_of(y) || x.is_disjoint(y)));
        }
    }

    #[test]
    fn reachability_only_queries_small_sets(m in mixture(6)) {
        let truth = m.truth();
        prop_assume!(truth.posimodular());
        let d = truth.max_all().to_integer() as u64;
        let f = posimod::SetFunctionOracle::builder(posimod::GroundSet::new(m.n).unwrap(), {
            let t = truth.f.clone();
            move |x: SubsetMask| t[x.bits() as usize]
        })
        .range_bound(Some(d))
        .record_queries(true)
        .build();
        let table = reachability(&f, d).unwrap();
        prop_assert!(f.transcript().unwrap().iter().all(|x| x.len() as u64 <= d));
        let fam = minimal_unreachable(&table, m.n);
        for &u in &fam.members {
            prop_assert!(u.len() >= 1 && u.len() as u64 <= d + 1);
            if u.len() == 1 {
                prop_assert_eq!(truth.at(u), int(0));
            }
            if u.len() as u64 <= d {
                prop_assert!(u.elements().all(|v| truth.at(u) <= truth.at(u.without(v))));
            }
        }
    }
}
