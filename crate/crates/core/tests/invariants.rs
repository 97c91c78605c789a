mod common;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use deltasg::congruence::{congruence_generated_by, join, principal_congruence, quotient_by_congruence, Partition};
use deltasg::enumerate::{are_isomorphic, canonical_form};
use deltasg::io::{parse_table, to_json, to_text};
use deltasg::properties::IdentitySpec;
use deltasg::structure::{recognize_t2, T2Kind};
use deltasg::table::validate_table;
use deltasg::CayleyTable;
use proptest::prelude::*;
use proptest::sample::{select, subsequence};

fn corpus() -> &'static [CayleyTable] {
    static CORPUS: OnceLock<Vec<CayleyTable>> = OnceLock::new();
    CORPUS.get_or_init(|| common::corpus(5))
}

fn table_with_perm(min: usize) -> impl Strategy<Value = (CayleyTable, Vec<usize>)> {
    let tables: Vec<CayleyTable> = corpus().iter().filter(|t| t.order() >= min).cloned().collect();
    select(tables).prop_flat_map(|t| {
        let n = t.order();
        (Just(t), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn is_hom(map: &[usize], from: &CayleyTable, to: &CayleyTable) -> bool {
    from.elements()
        .all(|x| from.elements().all(|y| map[from.mul(x, y)] == to.mul(map[x], map[y])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_form_is_relabeling_invariant((t, perm) in table_with_perm(2)) {
        let c = canonical_form(&t);
        let shuffled = t.relabel(&perm);
        prop_assert_eq!(&canonical_form(&shuffled).table, &c.table);
        prop_assert_eq!(&canonical_form(&c.table).table, &c.table);
        prop_assert_eq!(t.relabel(&c.relabeling), c.table);
        let phi = are_isomorphic(&t, &shuffled).unwrap();
        prop_assert!(is_hom(&phi, &t, &shuffled));
    }

    #[test]
    fn rees_quotient_is_a_homomorphism(
        (t, seed) in select(corpus().to_vec()).prop_flat_map(|t| {
            let n = t.order();
            (Just(t), subsequence((0..n).collect::<Vec<_>>(), 1..=n))
        })
    ) {
        let mut ideal: BTreeSet<usize> = BTreeSet::new();
        for &a in &seed {
            ideal.extend(common::brute_principal_ideal(&t, a));
        }
        let (q, map) = t.rees_quotient(&ideal).unwrap();
        prop_assert_eq!(q.order(), t.order() - ideal.len() + 1);
        prop_assert!(validate_table(q.order(), &common::flat(&q)).is_ok());
        prop_assert!(is_hom(&map, &t, &q));
        prop_assert!(ideal.iter().all(|&i| map[i] == 0));
        let outside: BTreeSet<usize> = t.elements().filter(|x| !ideal.contains(x)).map(|x| map[x]).collect();
        prop_assert_eq!(outside.len(), t.order() - ideal.len());
        prop_assert!(!outside.contains(&0));
    }

    #[test]
    fn power_profile_matches_naive_powers(t in select(corpus().to_vec()), a in 0usize..5, k in 1usize..40) {
        let a = a % t.order();
        let p = t.power_profile(a);
        prop_assert!(p.index >= 1 && p.period >= 1);
        prop_assert_eq!(Some(t.power(a, k)), common::naive_power(&t, a, k));
        prop_assert_eq!(t.power(a, k), t.power(a, p.reduce(k)));
        prop_assert_eq!(t.power(a, p.index), t.power(a, p.index + p.period));
    }

    #[test]
    fn generated_congruence_is_join_of_principals(
        (t, pairs) in select(corpus().to_vec()).prop_flat_map(|t| {
            let n = t.order();
            (Just(t), proptest::collection::vec((0..n, 0..n), 0..4))
        })
    ) {
        let n = t.order();
        let generated = congruence_generated_by(&t, &pairs).unwrap();
        let joined = pairs.iter().fold(Partition::identity(n), |acc, &(a, b)| {
            join(&t, &acc, &principal_congruence(&t, a, b).unwrap())
        });
        prop_assert_eq!(&generated, &joined);
        prop_assert!(generated.is_congruence(&t));
        let (q, map) = quotient_by_congruence(&t, &generated).unwrap();
        prop_assert_eq!(q.order(), generated.num_classes());
        prop_assert!(is_hom(&map, &t, &q));
    }

    #[test]
    fn left_recognition_is_dual_of_right((t, _perm) in table_with_perm(1)) {
        let tt = t.transpose();
        prop_assert_eq!(tt.transpose(), t.clone());
        let l = recognize_t2(&t, T2Kind::T2L).map(|d| (d.s0, d.s1));
        let r = recognize_t2(&tt, T2Kind::T2R).map(|d| (d.s0, d.s1));
        prop_assert_eq!(l, r);
    }

    #[test]
    fn table_formats_round_trip((t, perm) in table_with_perm(1)) {
        let t = t.relabel(&perm);
        prop_assert_eq!(&parse_table(&to_text(&t)).unwrap().table, &t);
        prop_assert_eq!(&parse_table(&to_json(&t, None)).unwrap().table, &t);
    }

    #[test]
    fn identity_spec_round_trips(left in "[abcd]{1,5}", right in "[abcd]{1,5}") {
        let text = format!("{left}={right}");
        if let Ok(spec) = text.parse::<IdentitySpec>() {
            prop_assert_eq!(spec.to_string().parse::<IdentitySpec>().unwrap(), spec);
        }
    }
}
