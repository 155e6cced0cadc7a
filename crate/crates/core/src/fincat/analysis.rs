use std::collections::HashSet;

use rayon::prelude::*;

use super::category::Category;
use super::functor::{check_functor, functors_agree, Adjunction, Functor};
use super::verdict::{CheckResult, StructuralError, Verdict, Witness};

/// Splittings of a single morphism found by exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitAnalysis<M> {
    pub is_iso: bool,
    /// `s` with `f ∘ s = id`: `f` is split epi.
    pub section: Option<M>,
    /// `r` with `r ∘ f = id`: `f` is split mono.
    pub retraction: Option<M>,
}

pub fn split_analysis<C: Category>(cat: &C, a: &C::Obj, b: &C::Obj, f: &C::Mor) -> SplitAnalysis<C::Mor> {
    let section = cat.section(a, b, f);
    let retraction = cat.retraction(a, b, f);
    let is_iso = match (&section, &retraction) {
        (Some(_), Some(_)) => cat.inverse(a, b, f).is_some(),
        _ => false,
    };
    SplitAnalysis { is_iso, section, retraction }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FunctorProperties {
    pub faithful: bool,
    pub full: bool,
    pub conservative: bool,
}

/// Faithfulness, fullness and conservativity over every pair of enumerated source objects.
pub fn functor_properties<A: Category, B: Category>(f: &Functor<A, B>) -> FunctorProperties {
    let (src, tgt) = (&f.src, &f.tgt);
    let objs = src.objects();
    let images: Vec<B::Obj> = objs.iter().map(|a| f.ob(a)).collect();
    let n = objs.len();
    let per_pair: Vec<(bool, bool, bool)> = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            let homs = src.hom(&objs[i], &objs[j]);
            let imgs: Vec<B::Mor> = homs.iter().map(|m| f.map(&objs[i], &objs[j], m)).collect();
            let distinct: HashSet<&B::Mor> = imgs.iter().collect();
            let faithful = distinct.len() == imgs.len();
            let full = distinct.len() == tgt.hom(&images[i], &images[j]).len();
            let conservative = homs
                .iter()
                .zip(&imgs)
                .all(|(m, im)| !tgt.is_iso(&images[i], &images[j], im) || src.is_iso(&objs[i], &objs[j], m));
            (faithful, full, conservative)
        })
        .collect();
    FunctorProperties {
        faithful: per_pair.iter().all(|p| p.0),
        full: per_pair.iter().all(|p| p.1),
        conservative: per_pair.iter().all(|p| p.2),
    }
}

pub enum EquivalenceMode<'a, A: Category, B: Category> {
    /// Fully faithful on sources whose image has size at most `budget`, and every
    /// target object of size at most `budget` is isomorphic to such an image.
    Direct { budget: usize },
    /// Every unit and counit component over the enumerated objects is invertible.
    ViaAdjoint(&'a Adjunction<A, B>),
}

/// Full faithfulness on the given source objects: each `hom(a,b) -> hom(Fa,Fb)` is a bijection.
pub fn fully_faithful_on<A: Category, B: Category>(f: &Functor<A, B>, objs: &[A::Obj]) -> Verdict {
    let images: Vec<B::Obj> = objs.iter().map(|a| f.ob(a)).collect();
    let n = objs.len();
    let failure = (0..n * n).into_par_iter().find_map_first(|idx| {
        let (i, j) = (idx / n, idx % n);
        let homs = f.src.hom(&objs[i], &objs[j]);
        let distinct: HashSet<B::Mor> = homs.iter().map(|m| f.map(&objs[i], &objs[j], m)).collect();
        let at = || format!("{} -> {}", f.src.describe(&objs[i]), f.src.describe(&objs[j]));
        if distinct.len() != homs.len() {
            return Some(Witness::unequal("faithful", at(), vec![distinct.len() as u32], vec![homs.len() as u32]));
        }
        let target = f.tgt.hom(&images[i], &images[j]).len();
        (target != distinct.len())
            .then(|| Witness::unequal("full", at(), vec![distinct.len() as u32], vec![target as u32]))
    });
    failure.map_or_else(Verdict::pass, Verdict::fail)
}

pub fn equivalence_verdict<A: Category, B: Category>(f: &Functor<A, B>, mode: EquivalenceMode<'_, A, B>) -> Verdict {
    match mode {
        EquivalenceMode::Direct { budget } => direct_equivalence(f, budget),
        EquivalenceMode::ViaAdjoint(adj) => unit_counit_invertible(adj),
    }
}

fn direct_equivalence<A: Category, B: Category>(f: &Functor<A, B>, budget: usize) -> Verdict {
    let (src, tgt) = (&f.src, &f.tgt);
    let sources: Vec<(A::Obj, B::Obj)> = src
        .objects()
        .into_iter()
        .map(|a| {
            let fa = f.ob(&a);
            (a, fa)
        })
        .filter(|(_, fa)| tgt.size(fa) <= budget)
        .collect();
    let objs: Vec<A::Obj> = sources.iter().map(|(a, _)| a.clone()).collect();
    let ff = fully_faithful_on(f, &objs);
    if !ff.is_pass() {
        return ff;
    }
    if tgt.complete_up_to().is_none_or(|n| n < budget) {
        return Verdict::inconclusive(Witness::new(
            "essential surjectivity undecided",
            format!("{} enumerates fewer objects than budget {budget}", tgt.name()),
        ));
    }
    // A missed target is definitive only if no unenumerated source could reach it.
    let sources_cover =
        src.complete_up_to().is_some_and(|n| n >= budget) && sources.iter().all(|(a, fa)| tgt.size(fa) >= src.size(a));
    let targets: Vec<B::Obj> = tgt.objects().into_iter().filter(|b| tgt.size(b) <= budget).collect();
    let missing = targets
        .par_iter()
        .find_first(|b| !sources.iter().any(|(_, fa)| tgt.size(fa) == tgt.size(b) && tgt.find_iso(fa, b).is_some()));
    match missing {
        None => Verdict::pass(),
        Some(b) if sources_cover => Verdict::fail(Witness::new("essentially surjective", tgt.describe(b))),
        Some(b) => Verdict::inconclusive(Witness::new("no enumerated preimage", tgt.describe(b))),
    }
}

/// Unit and counit components are isomorphisms on every enumerated object.
pub fn unit_counit_invertible<A: Category, B: Category>(adj: &Adjunction<A, B>) -> Verdict {
    let a_cat = adj.left.src.clone();
    let b_cat = adj.left.tgt.clone();
    let unit_bad = a_cat.objects().into_par_iter().find_map_first(|a| {
        let rfa = adj.right.ob(&adj.left.ob(&a));
        (!a_cat.is_iso(&a, &rfa, &adj.unit.at(&a)))
            .then(|| Witness::new("unit invertible", a_cat.describe(&a)).with_data(a_cat.encode(&adj.unit.at(&a))))
    });
    if let Some(w) = unit_bad {
        return Verdict::fail(w);
    }
    let counit_bad = b_cat.objects().into_par_iter().find_map_first(|b| {
        let frb = adj.left.ob(&adj.right.ob(&b));
        (!b_cat.is_iso(&frb, &b, &adj.counit.at(&b)))
            .then(|| Witness::new("counit invertible", b_cat.describe(&b)).with_data(b_cat.encode(&adj.counit.at(&b))))
    });
    counit_bad.map_or_else(Verdict::pass, Verdict::fail)
}

/// `f` and `g` are mutually inverse functors on every enumerated object and morphism,
/// and the enumerations have equal size.
pub fn check_category_isomorphism<A: Category, B: Category>(f: &Functor<A, B>, g: &Functor<B, A>) -> CheckResult {
    let (a_cat, b_cat) = (f.src.clone(), f.tgt.clone());
    let (a_objs, b_objs) = (a_cat.objects(), b_cat.objects());
    if a_objs.len() != b_objs.len() {
        return Ok(Verdict::fail(Witness::unequal(
            "object counts agree",
            format!("{} vs {}", a_cat.name(), b_cat.name()),
            vec![a_objs.len() as u32],
            vec![b_objs.len() as u32],
        )));
    }
    check_functor(f)?
        .and_then_try(|| check_functor(g))?
        .and_then(|| functors_agree("GF = 1", &f.then(g), &Functor::identity(a_cat.clone())))
        .and_then(|| functors_agree("FG = 1", &g.then(f), &Functor::identity(b_cat.clone())))
        .and_then_try(|| {
            let images: HashSet<B::Obj> = a_objs.iter().map(|a| f.ob(a)).collect();
            Ok(b_objs.iter().find(|b| !images.contains(*b)).map_or_else(Verdict::pass, |b| {
                Verdict::fail(Witness::new("F surjective on enumerated objects", b_cat.describe(b)))
            }))
        })
}

/// A fork `e: x -> a`, `f, g: a -> b` with `f ∘ e = g ∘ e`.
pub struct Fork<C: Category> {
    pub x: C::Obj,
    pub a: C::Obj,
    pub b: C::Obj,
    pub e: C::Mor,
    pub f: C::Mor,
    pub g: C::Mor,
}

/// Searches `s: a -> x`, `t: b -> a` with `s∘e = 1`, `t∘g = 1`, `e∘s = t∘f`.
/// A pass carries `s` followed by `t` as its witness data.
pub fn is_split_fork<C: Category>(cat: &C, fork: &Fork<C>) -> CheckResult {
    let Fork { x, a, b, e, f, g } = fork;
    if cat.compose(f, e) != cat.compose(g, e) {
        return Err(StructuralError::Precondition("the fork does not commute".into()));
    }
    let ts = cat.retractions(a, b, g);
    let found = cat.retractions(x, a, e).into_iter().find_map(|s| {
        let es = cat.compose(e, &s);
        ts.iter().find(|t| cat.compose(t, f) == es).map(|t| (s.clone(), t.clone()))
    });
    Ok(match found {
        Some((s, t)) => {
            let mut data = cat.encode(&s);
            data.extend(cat.encode(&t));
            Verdict::pass_with(Witness::new("split fork", cat.describe(a)).with_data(data))
        }
        None => Verdict::fail(Witness::new("split fork", format!("no splitting through {}", cat.describe(a)))),
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::FinCategory;
    use crate::finset::{FinSet, FnEnc};

    #[test]
    fn inclusion_of_a_point_splits_one_way() {
        let s = FinSet::up_to(2);
        let incl = FnEnc::new(vec![0], 2).unwrap();
        let sa = split_analysis(&s, &1, &2, &incl);
        assert!(!sa.is_iso);
        assert!(sa.section.is_none());
        assert_eq!(sa.retraction, Some(FnEnc::new(vec![0, 0], 1).unwrap()));
    }

    #[test]
    fn identity_is_iso() {
        let s = FinSet::up_to(3);
        let sa = split_analysis(&s, &3, &3, &FnEnc::identity(3));
        assert!(sa.is_iso);
        assert_eq!(sa.section, Some(FnEnc::identity(3)));
    }

    #[test]
    fn identity_functor_is_an_equivalence() {
        let s = Arc::new(FinSet::up_to(3));
        let id = Functor::identity(s.clone());
        assert!(equivalence_verdict(&id, EquivalenceMode::Direct { budget: 3 }).is_pass());
        let p = functor_properties(&id);
        assert!(p.faithful && p.full && p.conservative);
    }

    #[test]
    fn trivial_fork_splits() {
        let s = FinSet::up_to(2);
        let f = FnEnc::new(vec![1, 0], 2).unwrap();
        let fork = Fork { x: 2, a: 2, b: 2, e: FnEnc::identity(2), f: f.clone(), g: f };
        assert!(is_split_fork(&s, &fork).unwrap().is_pass());
    }

    #[test]
    fn poset_inclusion_fork_does_not_split() {
        let c = FinCategory::chain(2);
        let e = c.hom(&0, &1)[0];
        let id = c.identity(&1);
        let fork = Fork { x: 0, a: 1, b: 1, e, f: id, g: id };
        assert!(is_split_fork(&c, &fork).unwrap().is_fail());
    }

    #[test]
    fn non_commuting_fork_is_rejected() {
        let s = FinSet::up_to(2);
        let fork = Fork {
            x: 1,
            a: 2,
            b: 2,
            e: FnEnc::new(vec![0], 2).unwrap(),
            f: FnEnc::identity(2),
            g: FnEnc::new(vec![1, 1], 2).unwrap(),
        };
        assert!(matches!(is_split_fork(&s, &fork), Err(StructuralError::Precondition(_))));
    }
}
