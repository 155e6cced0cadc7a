//! Property tests for the structural invariants, over random small inputs and corpus entries.

use std::sync::Arc;

use galois_lab::cli::{emit_report, run_suite, Format, InstanceSpec, Suite};
use galois_lab::entwining::{canonical_entwining, check_entwining};
use galois_lab::fincat::{brute_force_limit, is_limit, split_analysis, Category, Cone, LimitShape};
use galois_lab::finset::{
    corpus, equaliser, pairing, projection_left, projection_right, ActionTable, FinSet, FnEnc, MonoidTable,
};
use galois_lab::grouplike::{check_grouplike, equaliser_monad, point_grouplike};
use galois_lab::hopf::{antipode_search, gamma_and_galois_object, monoid_bimonad};
use galois_lab::monadics::{check_comonad, check_monad, product_comonad, product_monad};
use proptest::prelude::*;

fn map(dom: usize, cod: usize) -> impl Strategy<Value = FnEnc> {
    proptest::collection::vec(0..cod.max(1) as u32, dom).prop_map(move |v| FnEnc::new(v, cod).expect("in range"))
}

/// A parallel pair `a ⇉ b` with `b > 0` whenever `a > 0`.
fn parallel_pair(max: usize) -> impl Strategy<Value = (FnEnc, FnEnc)> {
    (0..=max, 1..=max).prop_flat_map(|(a, b)| (map(a, b), map(a, b)))
}

fn corpus_action() -> impl Strategy<Value = ActionTable> {
    let actions: Vec<ActionTable> = corpus().actions.into_iter().map(|a| a.action).collect();
    proptest::sample::select(actions)
}

fn corpus_monoid() -> impl Strategy<Value = MonoidTable> {
    let monoids: Vec<MonoidTable> = corpus().monoids.into_iter().map(|m| m.table).collect();
    proptest::sample::select(monoids)
}

/// Binary operations on `{0, .., k-1}` with `0` as two-sided identity; not necessarily associative.
fn unital_operation() -> impl Strategy<Value = Vec<Vec<u32>>> {
    (1usize..=3).prop_flat_map(|k| {
        proptest::collection::vec(0..k as u32, (k - 1) * (k - 1)).prop_map(move |inner| {
            (0..k)
                .map(|a| {
                    (0..k)
                        .map(|b| match (a, b) {
                            (0, _) => b as u32,
                            (_, 0) => a as u32,
                            _ => inner[(a - 1) * (k - 1) + b - 1],
                        })
                        .collect()
                })
                .collect()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_equaliser_is_a_limit((f, g) in parallel_pair(3)) {
        let cat = FinSet::up_to(3);
        let shape = LimitShape::Equaliser { src: f.dom(), tgt: f.cod(), f: f.clone(), g: g.clone() };
        let (apex, inclusion) = equaliser(&f, &g);
        let cone = Cone { apex, legs: vec![inclusion] };
        prop_assert!(is_limit(&cat, &shape, &cone));
        let brute = brute_force_limit(&cat, &shape).expect("finite sets have equalisers");
        prop_assert_eq!(brute.apex, apex);
    }

    #[test]
    fn split_analysis_iso_iff_splittings_coincide(a in 0usize..=3, b in 0usize..=3, seed in any::<u64>()) {
        let cat = FinSet::up_to(3);
        let homs = cat.hom(&a, &b);
        prop_assume!(!homs.is_empty());
        let f = &homs[(seed % homs.len() as u64) as usize];
        let split = split_analysis(&cat, &a, &b, f);
        let coincide = match (&split.section, &split.retraction) {
            (Some(s), Some(r)) => s == r,
            _ => false,
        };
        prop_assert_eq!(split.is_iso, coincide);
        prop_assert_eq!(split.is_iso, f.is_bijective());
    }

    #[test]
    fn pairing_is_inverted_by_projections(n in 0usize..=4, m in 1usize..=4) {
        let left = projection_left(n, m);
        let right = projection_right(n, m);
        prop_assert_eq!(pairing(&left, &right), FnEnc::identity(n * m));
    }

    #[test]
    fn group_iff_inverse_table(rows in unital_operation()) {
        let table = MonoidTable::from_rows(&rows);
        prop_assume!(table.as_ref().is_ok_and(|t| t.check().is_pass()));
        let table = table.unwrap();
        prop_assert_eq!(table.is_group(), table.inverse_table().is_some());
    }

    #[test]
    fn product_monad_and_comonad_are_lawful(m in corpus_monoid(), c in 0usize..=3) {
        let base = Arc::new(FinSet::up_to(2));
        prop_assert!(check_monad(&product_monad(&m, base.clone())).unwrap().is_pass());
        prop_assert!(check_comonad(&product_comonad(c, base)).unwrap().is_pass());
    }

    #[test]
    fn point_grouplikes_cut_out_lawful_monads(action in corpus_action(), seed in any::<usize>()) {
        prop_assume!(action.size() > 0);
        let base = Arc::new(FinSet::up_to(2));
        let e = canonical_entwining(&action, base.clone());
        prop_assert!(check_entwining(&e).unwrap().is_pass());
        let g = point_grouplike(action.size(), seed % action.size(), base);
        prop_assert!(check_grouplike(&g).unwrap().is_pass());
        let eq = equaliser_monad(&g, &e).unwrap();
        prop_assert!(eq.equalises.is_pass() && eq.laws.is_pass() && eq.morphism.is_pass());
    }

    #[test]
    fn antipodes_are_unique(m in corpus_monoid()) {
        let search = antipode_search(&monoid_bimonad(&m, Arc::new(FinSet::up_to(1)))).unwrap();
        prop_assert_eq!(search.found(), m.is_group());
        prop_assert!(search.solutions.len() <= 1);
    }

    #[test]
    fn regular_actions_of_groups_are_galois(m in corpus_monoid()) {
        prop_assume!(m.is_group());
        prop_assert!(gamma_and_galois_object(&ActionTable::regular(&m), 2).pass);
        if m.order() >= 2 {
            prop_assert!(!gamma_and_galois_object(&ActionTable::trivial(&m, 2), 2).iso);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn reports_are_deterministic(action in corpus_action()) {
        prop_assume!(action.size() > 0);
        let mut spec = InstanceSpec::new("sample", action, 2);
        spec.suites = Some(vec![Suite::Laws, Suite::Antipode, Suite::Injectives]);
        let first = emit_report(&[run_suite(&spec, false)], Format::Json);
        let second = emit_report(&[run_suite(&spec, false)], Format::Json);
        prop_assert_eq!(first, second);
    }
}
