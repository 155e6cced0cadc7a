use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::fincat::{split_analysis, Category, Verdict, Witness};
use crate::finset::{ActionTable, FinSet, FnEnc};
use crate::monadics::product_comonad;

/// `γ_c: b × c -> c × c`, `(m, y) ↦ (m·y, y)`, built as `(α_c × 1_c) ∘ (b × Δ_c)`.
pub fn gamma(action: &ActionTable) -> FnEnc {
    let (k, c) = (action.monoid().order(), action.size());
    let diagonal = FnEnc::from_fn(c, c * c, |y| y * c + y);
    let widen = crate::finset::product_map(&FnEnc::identity(k), &diagonal);
    let act = FnEnc::from_fn(k * c, c, |p| action.act(p / c, p % c));
    let acting = crate::finset::product_map(&act, &FnEnc::identity(c));
    acting.after(&widen)
}

/// Whether `c × −` is faithful on finite sets up to `up_to`.
pub fn is_faithful_object(c: usize, up_to: usize) -> bool {
    let base = Arc::new(FinSet::up_to(up_to));
    let functor = product_comonad(c, base.clone()).functor;
    base.objects().iter().all(|a| {
        base.objects().iter().all(|b| {
            let homs = base.hom(a, b);
            let images: HashSet<FnEnc> = homs.iter().map(|f| functor.map(a, b, f)).collect();
            images.len() == homs.len()
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisObjectVerdict {
    pub gamma: Vec<u32>,
    pub faithful: bool,
    pub iso: bool,
    pub pass: bool,
}

impl GaloisObjectVerdict {
    pub fn verdict(&self) -> Verdict {
        Verdict::all([
            Verdict::check(self.faithful, || Witness::new("c × − faithful", "")),
            Verdict::check(self.iso, || Witness::new("γ_c invertible", "").with_data(self.gamma.clone())),
        ])
    }
}

/// Galois object test for a `b`-set `c`; faithfulness is decided on sets up to `up_to`.
pub fn gamma_and_galois_object(action: &ActionTable, up_to: usize) -> GaloisObjectVerdict {
    let g = gamma(action);
    let (k, c) = (action.monoid().order(), action.size());
    let cat = FinSet::up_to((k * c).max(c * c).max(1));
    let iso = split_analysis(&cat, &(k * c), &(c * c), &g).is_iso;
    let faithful = is_faithful_object(c, up_to);
    GaloisObjectVerdict { gamma: g.values().to_vec(), faithful, iso, pass: faithful && iso }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::{corpus, MonoidTable};

    #[test]
    fn z2_regular_is_galois() {
        let v = gamma_and_galois_object(&ActionTable::regular(&MonoidTable::cyclic(2)), 3);
        assert_eq!(v.gamma, vec![0, 3, 2, 1]);
        assert!(v.faithful && v.iso && v.pass);
    }

    #[test]
    fn trivial_action_is_not() {
        let v = gamma_and_galois_object(&ActionTable::trivial(&MonoidTable::cyclic(2), 2), 3);
        // (m, y) ↦ (y, y): two of four values hit.
        assert_eq!(v.gamma, vec![0, 3, 0, 3]);
        assert!(v.faithful && !v.iso && !v.pass);
    }

    #[test]
    fn trivial_monoid_on_a_point() {
        let v = gamma_and_galois_object(&ActionTable::regular(&MonoidTable::trivial()), 3);
        assert_eq!(v.gamma, vec![0]);
        assert!(v.pass);
    }

    #[test]
    fn faithfulness_matches_functor_properties() {
        use crate::fincat::functor_properties;
        for c in 0..=2 {
            let f = product_comonad(c, Arc::new(FinSet::up_to(2))).functor;
            assert_eq!(functor_properties(&f).faithful, is_faithful_object(c, 2));
        }
    }

    #[test]
    fn empty_object_is_not_faithful() {
        assert!(!is_faithful_object(0, 3));
        assert!(is_faithful_object(1, 3) && is_faithful_object(2, 3));
    }

    #[test]
    fn torsors_over_corpus_groups() {
        let c = corpus();
        for m in c.monoids.iter().filter(|m| m.table.is_group()) {
            for a in c.actions_of(&m.name) {
                let v = gamma_and_galois_object(&a.action, 2);
                if a.action.is_free_transitive() {
                    assert!(v.pass, "{}", a.name);
                }
                if a.action.is_trivial() && m.table.order() >= 2 && a.action.size() >= 2 {
                    assert!(!v.pass, "{}", a.name);
                }
            }
        }
    }

    #[test]
    fn gamma_agrees_with_pointwise_formula() {
        for a in corpus().actions {
            let (k, c) = (a.action.monoid().order(), a.action.size());
            let expected: Vec<u32> = (0..k * c).map(|p| (a.action.act(p / c, p % c) * c + p % c) as u32).collect();
            assert_eq!(gamma(&a.action).values(), &expected[..], "{}", a.name);
        }
    }
}
