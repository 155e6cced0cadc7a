use std::sync::Arc;

use rayon::prelude::*;

use crate::entwining::{check_coaction_on_monad, Entwining};
use crate::fincat::{check_natural, Category, CheckResult, Functor, Nat, StructuralError, Verdict, Witness};
use crate::finset::{all_functions, product_map, FinSet, FnEnc};
use crate::monadics::{product_comonad, ComoduleFunctor, Comonad};

/// A natural `g: Id => G` with `ε·g = 1` and `δ·g = gg`.
pub struct Grouplike<C: Category> {
    pub comonad: Comonad<C>,
    pub carrier: Nat<C, C>,
}

impl<C: Category> Clone for Grouplike<C> {
    fn clone(&self) -> Self {
        Grouplike { comonad: self.comonad.clone(), carrier: self.carrier.clone() }
    }
}

impl<C: Category> Grouplike<C> {
    pub fn category(&self) -> Arc<C> {
        self.comonad.category()
    }

    pub fn with_carrier(&self, carrier: Nat<C, C>) -> Self {
        Grouplike { comonad: self.comonad.clone(), carrier }
    }
}

pub fn check_grouplike<C: Category>(g: &Grouplike<C>) -> CheckResult {
    let cat = g.category();
    let comonad = &g.comonad;
    check_natural(&g.carrier)?.and_then_try(|| {
        let failure = cat.objects().into_par_iter().find_map_first(|a| {
            let ga = comonad.ob(&a);
            let at = g.carrier.at(&a);
            let laws = [
                ("ε·g = 1", cat.compose(&comonad.counit.at(&a), &at), cat.identity(&a)),
                (
                    "δ·g = gg",
                    cat.compose(&comonad.comult.at(&a), &at),
                    cat.compose(&comonad.functor.map(&a, &ga, &at), &at),
                ),
            ];
            laws.into_iter()
                .find(|(_, l, r)| l != r)
                .map(|(law, l, r)| Witness::unequal(law, cat.describe(&a), cat.encode(&l), cat.encode(&r)))
        });
        Ok(failure.map_or_else(Verdict::pass, Verdict::fail))
    })
}

/// `x ↦ (c₀, x)` into `C × −` for `|C| = labels`.
pub fn point_grouplike(labels: usize, point: usize, cat: Arc<FinSet>) -> Grouplike<FinSet> {
    let comonad = product_comonad(labels, cat.clone());
    let carrier = Nat::new(format!("g_{point}"), Functor::identity(cat), comonad.functor.clone(), move |&n| {
        FnEnc::from_fn(n, labels * n, |x| point * n + x)
    });
    Grouplike { comonad, carrier }
}

/// Every natural family `Id => C × −` on sets of size at most `up_to`, found by exhaustive search.
pub fn natural_families(labels: usize, up_to: usize) -> Vec<Vec<FnEnc>> {
    let cat = FinSet::up_to(up_to);
    let natural_against_earlier = |family: &[FnEnc], candidate: &FnEnc| {
        let b = family.len();
        (0..=b).all(|a| {
            let at_a = if a == b { candidate } else { &family[a] };
            let forward = cat
                .hom(&a, &b)
                .into_iter()
                .all(|f| candidate.after(&f) == product_map(&FnEnc::identity(labels), &f).after(at_a));
            let backward = cat
                .hom(&b, &a)
                .into_iter()
                .all(|f| at_a.after(&f) == product_map(&FnEnc::identity(labels), &f).after(candidate));
            forward && backward
        })
    };
    let mut families: Vec<Vec<FnEnc>> = vec![Vec::new()];
    for n in 0..=up_to {
        families = families
            .into_par_iter()
            .flat_map_iter(|family| {
                all_functions(n, labels * n)
                    .filter(|c| natural_against_earlier(&family, c))
                    .map(|c| {
                        let mut next = family.clone();
                        next.push(c);
                        next
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    families
}

/// The label a natural family is constant at, if it is of the form `x ↦ (c₀, x)`.
pub fn family_point(labels: usize, family: &[FnEnc]) -> Option<usize> {
    (0..labels).find(|&c0| family.iter().enumerate().all(|(n, f)| *f == FnEnc::from_fn(n, labels * n, |x| c0 * n + x)))
}

/// The two coactions of `G` on the monad functor `F`.
pub struct InducedCoactions<C: Category> {
    /// `g̃ = λ·Fg`.
    pub twisted: Nat<C, C>,
    /// `gF`.
    pub plain: Nat<C, C>,
    pub twisted_laws: Verdict,
    pub plain_laws: Verdict,
    /// `(F, m, g̃)` is a mixed bimodule: `g̃·m = Gm·λF·Fg̃`.
    pub bimodule: Verdict,
}

pub fn induced_comodules<C: Category>(
    g: &Grouplike<C>,
    e: &Entwining<C>,
) -> Result<InducedCoactions<C>, StructuralError> {
    let f = e.monad.clone();
    let twisted = {
        let (f, g, lam) = (f.clone(), g.clone(), e.law.clone());
        let cat = e.category();
        Nat::new("g̃", f.functor.clone(), e.gt(), move |a| {
            let ga = g.comonad.ob(a);
            cat.compose(&lam.at(a), &f.functor.map(a, &ga, &g.carrier.at(a)))
        })
    };
    let plain = g.carrier.right(&f.functor).retyped(f.functor.clone(), e.gt()).renamed("gF");
    let laws = |coaction: &Nat<C, C>| {
        ComoduleFunctor { functor: f.functor.clone(), comonad: e.comonad.clone(), coaction: coaction.clone() }.check()
    };
    Ok(InducedCoactions {
        twisted_laws: laws(&twisted)?,
        plain_laws: laws(&plain)?,
        bimodule: check_coaction_on_monad(e, &twisted),
        twisted,
        plain,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entwining::canonical_entwining;
    use crate::finset::{ActionTable, MonoidTable};

    #[test]
    fn points_are_grouplike_and_nothing_else_is_natural() {
        let s = Arc::new(FinSet::up_to(3));
        for labels in 1..=3 {
            for point in 0..labels {
                assert!(check_grouplike(&point_grouplike(labels, point, s.clone())).unwrap().is_pass());
            }
            let families = natural_families(labels, 2);
            assert_eq!(families.len(), labels);
            let mut points: Vec<_> = families.iter().map(|f| family_point(labels, f).unwrap()).collect();
            points.sort_unstable();
            assert_eq!(points, (0..labels).collect::<Vec<_>>());
        }
    }

    #[test]
    fn unnatural_family_is_rejected() {
        let s = Arc::new(FinSet::up_to(2));
        let g = point_grouplike(2, 0, s);
        // Send the second point of 2 to the other label.
        let bad = g.with_carrier(g.carrier.with_mutated_component(2, FnEnc::from_fn(2, 4, |x| [0, 3][x])));
        assert!(check_grouplike(&bad).unwrap().is_fail());
    }

    #[test]
    fn z2_twisted_coaction() {
        let s = Arc::new(FinSet::up_to(2));
        let m = MonoidTable::cyclic(2);
        let e = canonical_entwining(&ActionTable::regular(&m), s.clone());
        let induced = induced_comodules(&point_grouplike(2, 0, s), &e).unwrap();
        // (m, x) ↦ (m·0, m, x) on F 1 = 2.
        assert_eq!(induced.twisted.at(&1).values(), &[0, 3]);
        assert_eq!(induced.plain.at(&1).values(), &[0, 1]);
        assert!(induced.twisted_laws.is_pass() && induced.plain_laws.is_pass() && induced.bimodule.is_pass());
    }

    #[test]
    fn idem2_coactions_are_lawful() {
        let s = Arc::new(FinSet::up_to(2));
        let m = MonoidTable::idem2();
        let e = canonical_entwining(&ActionTable::regular(&m), s.clone());
        let induced = induced_comodules(&point_grouplike(2, 0, s), &e).unwrap();
        assert!(induced.twisted_laws.is_pass() && induced.plain_laws.is_pass() && induced.bimodule.is_pass());
    }

    #[test]
    fn trivial_entwining_coactions_are_identities() {
        let s = Arc::new(FinSet::up_to(3));
        let e = Entwining::trivial(s.clone());
        let g = Grouplike { comonad: e.comonad.clone(), carrier: Nat::identity(&Functor::identity(s)) };
        let induced = induced_comodules(&g, &e).unwrap();
        for n in 0..=3 {
            assert_eq!(induced.twisted.at(&n), FnEnc::identity(n));
            assert_eq!(induced.plain.at(&n), FnEnc::identity(n));
        }
    }
}
