use std::sync::Arc;

use super::equaliser::{equaliser_monad, identity_monad_iso};
use super::morphism::{induced_comodules, Grouplike};
use crate::entwining::{comparison_and_tk, Entwining, ModuleComparison};
use crate::fincat::{fully_faithful_on, nat_equal, Category, Equalisers, Nat, StructuralError, Verdict};
use crate::monadics::{
    check_comonad_morphism, components_invertible, precomonadic_verdict, t311_crosscheck, ComoduleFunctor,
    ComonadMorphism, GaloisConditions, Modules, Structured,
};

type Sobj<C> = Structured<<C as Category>::Obj, <C as Category>::Mor>;

/// `t: φ_F U_F => Ĝ` with components `G(h)·λ_a·F(g_a)`, next to the comparison `K_g` it belongs to.
pub struct GrouplikeComparison<C: Category> {
    /// `K_g(a) = ((F a, m_a), g̃_a)` with its own `t`.
    pub comparison: ModuleComparison<C>,
    pub t: ComonadMorphism<Modules<C>>,
    /// Agreement with the `t` of `K_g`.
    pub formula: Verdict,
    pub laws: Verdict,
    pub galois: Verdict,
}

pub fn t_composite<C: Category>(
    g: &Grouplike<C>,
    e: &Entwining<C>,
    budget: usize,
) -> Result<GrouplikeComparison<C>, StructuralError> {
    let induced = induced_comodules(g, e)?;
    let comparison = comparison_and_tk(e, &induced.twisted, budget)?;
    let reference = &comparison.t;
    let carrier = {
        let (e, g) = (e.clone(), g.clone());
        Nat::new("t_g", reference.carrier.src.clone(), reference.carrier.tgt.clone(), move |x: &Sobj<C>| {
            let cat = e.category();
            let a = &x.carrier;
            let (fa, ga) = (e.monad.ob(a), e.comonad.ob(a));
            let g_h = e.comonad.functor.map(&fa, a, &x.structure);
            let f_g = e.monad.functor.map(a, &ga, &g.carrier.at(a));
            cat.compose(&g_h, &cat.compose(&e.law.at(a), &f_g))
        })
    };
    let t = ComonadMorphism { src: reference.src.clone(), tgt: reference.tgt.clone(), carrier };
    Ok(GrouplikeComparison {
        formula: nat_equal("G(h)·λ·F(g) = t_K", &t.carrier, &reference.carrier),
        laws: check_comonad_morphism(&t)?,
        galois: components_invertible(&t.carrier),
        comparison,
        t,
    })
}

/// The three equivalent Galois conditions for `φ_F` with the coaction `g̃`, each decided on its own.
pub fn galois_conditions<C: Equalisers>(
    g: &Grouplike<C>,
    e: &Entwining<C>,
    budget: usize,
) -> Result<GaloisConditions, StructuralError> {
    let induced = induced_comodules(g, e)?;
    let comparison = comparison_and_tk(e, &induced.twisted, budget)?;
    let modules = comparison.modules.clone();
    let free = modules.free();
    let ghat = comparison.comodules.comonad.clone();
    let coaction = {
        let twisted = induced.twisted.clone();
        Nat::new("g̃", free.clone(), free.then(&ghat.functor), move |a| twisted.at(a))
    };
    let cf = ComoduleFunctor { functor: free, comonad: ghat, coaction };
    Ok(t311_crosscheck(&cf, &modules.adjunction(), comparison.comodules.clone()))
}

/// `K_g` fully faithful against `F^g ≅ Id`, decided independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KgCrosscheck {
    pub fully_faithful: Verdict,
    pub identity_monad: Verdict,
    pub agreement: Verdict,
    /// `φ_F` precomonadic and `t` Galois ⟹ `F^g ≅ Id`.
    pub descent: Verdict,
}

/// Full faithfulness is tested on the objects `a` whose free module `F a` has size at most `budget`.
pub fn kg_ff_crosscheck<C: Equalisers>(
    g: &Grouplike<C>,
    e: &Entwining<C>,
    budget: usize,
) -> Result<KgCrosscheck, StructuralError> {
    let cat = e.category();
    let comparison = t_composite(g, e, budget)?;
    let objs: Vec<C::Obj> = cat.objects().into_iter().filter(|a| cat.size(&e.monad.ob(a)) <= budget).collect();
    let base_budget = objs.iter().map(|a| cat.size(a)).max().unwrap_or(0);
    let fully_faithful = fully_faithful_on(&comparison.comparison.functor, &objs);
    let identity_monad = identity_monad_iso(&equaliser_monad(g, e)?);
    let agreement =
        Verdict::agreement("K_g fully faithful ⟺ F^g ≅ Id", "", fully_faithful.clone(), identity_monad.clone());
    let modules: &Arc<Modules<C>> = &comparison.comparison.modules;
    let precomonadic = precomonadic_verdict(&modules.adjunction(), base_budget);
    let premise = Verdict::all([precomonadic, comparison.galois.clone()]);
    let descent = Verdict::implies("precomonadic ∧ Galois ⟹ F^g ≅ Id", &premise, &identity_monad);
    Ok(KgCrosscheck { fully_faithful, identity_monad, agreement, descent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entwining::canonical_entwining;
    use crate::fincat::Functor;
    use crate::finset::{ActionTable, FinSet, MonoidTable};
    use crate::grouplike::point_grouplike;

    fn setting(action: &ActionTable, n: usize) -> (Grouplike<FinSet>, Entwining<FinSet>) {
        let s = Arc::new(FinSet::up_to(n));
        (point_grouplike(action.size(), 0, s.clone()), canonical_entwining(action, s))
    }

    #[test]
    fn galois_conditions_agree() {
        for action in [
            ActionTable::regular(&MonoidTable::cyclic(2)),
            ActionTable::regular(&MonoidTable::idem2()),
            ActionTable::trivial(&MonoidTable::cyclic(2), 2),
        ] {
            let (g, e) = setting(&action, 2);
            let c = galois_conditions(&g, &e, 4).unwrap();
            assert!(c.agreement().is_pass(), "{c:?}");
            assert_eq!(c.t_iso.is_pass(), t_composite(&g, &e, 4).unwrap().galois.is_pass());
        }
    }

    #[test]
    fn z2_t_is_invertible() {
        let (g, e) = setting(&ActionTable::regular(&MonoidTable::cyclic(2)), 2);
        let c = t_composite(&g, &e, 4).unwrap();
        assert!(c.formula.is_pass() && c.laws.is_pass() && c.galois.is_pass());
        // Free module on 1, carrier Z2: (m, x) ↦ (m, m·x) on Z2 × Z2.
        let free = c.comparison.modules.free().ob(&1);
        assert_eq!(c.t.carrier.at(&free).values(), &[0, 1, 3, 2]);
    }

    #[test]
    fn idem2_t_fails_at_the_free_module_on_one() {
        let (g, e) = setting(&ActionTable::regular(&MonoidTable::idem2()), 2);
        let c = t_composite(&g, &e, 4).unwrap();
        assert!(c.formula.is_pass() && c.laws.is_pass() && c.galois.is_fail());
        let free = c.comparison.modules.free().ob(&1);
        assert!(!c.t.carrier.at(&free).is_bijective());
    }

    #[test]
    fn kg_crosschecks() {
        let z2 = MonoidTable::cyclic(2);
        for (action, expected) in [
            (ActionTable::regular(&z2), true),
            (ActionTable::regular(&MonoidTable::idem2()), true),
            (ActionTable::trivial(&z2, 2), false),
        ] {
            let (g, e) = setting(&action, 2);
            let k = kg_ff_crosscheck(&g, &e, 4).unwrap();
            assert_eq!(k.fully_faithful.is_pass(), expected, "{action:?}");
            assert!(k.agreement.is_pass() && k.descent.is_pass(), "{k:?}");
        }
    }

    #[test]
    fn identity_setting() {
        let s = Arc::new(FinSet::up_to(3));
        let e = Entwining::trivial(s.clone());
        let g = Grouplike { comonad: e.comonad.clone(), carrier: Nat::identity(&Functor::identity(s)) };
        let c = t_composite(&g, &e, 3).unwrap();
        assert!(c.galois.is_pass());
        let k = kg_ff_crosscheck(&g, &e, 3).unwrap();
        assert!(k.fully_faithful.is_pass() && k.identity_monad.is_pass());
    }
}
