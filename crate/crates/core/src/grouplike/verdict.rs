use std::sync::Arc;

use rayon::prelude::*;

use super::comparison::t_composite;
use super::equaliser::{equaliser_monad, require};
use super::morphism::{induced_comodules, Grouplike};
use super::shriek::shriek_adjoint;
use crate::entwining::{lift_comonad, Entwining};
use crate::fincat::{
    equivalence_verdict, nat_equal, Category, Coequalisers, Equalisers, EquivalenceMode, Nat, StructuralError, Verdict,
    Witness,
};
use crate::monadics::{
    comonadic_verdict, components_invertible, s_compose_check, t_from_comodule, ComoduleFunctor, Comodules, Comonad,
    ComonadMorphism, Modules, Structured, Triangle,
};

type Sobj<C> = Structured<<C as Category>::Obj, <C as Category>::Mor>;

/// The Galois-entwining decision for `(F, G, λ, g)` with its crosschecks.
pub struct GaloisEntwiningVerdict<C: Category> {
    /// `G̃ = (i_F)_!(i_F)^*`.
    pub tilde: Comonad<Modules<C>>,
    /// `t_g: G̃ => Ĝ`.
    pub t: ComonadMorphism<Modules<C>>,
    /// Every component of `t_g` is invertible.
    pub pass: Verdict,
    /// `(i_F)_!` with the induced `Ĝ`-coaction is a comodule functor.
    pub coaction: Verdict,
    /// `S_{φ_{F^g}}` at `(a, h)` is the quotient map `q_a`.
    pub quotient_map: Verdict,
    /// `t = S_{ī_F}·S_{φ_{F^g}}`, `S_{ī_F} = t_g` and the composite triangle agrees.
    pub factorisation: Verdict,
    /// `t` monic ⟹ `S_{φ_{F^g}}` invertible.
    pub mono_implies_iso: Verdict,
    /// `ī_F` is an equivalence.
    pub equivalence: Verdict,
    /// `(i_F)_!` is comonadic.
    pub comonadic: Verdict,
    /// Equivalence ⟺ Galois ∧ comonadic.
    pub theorem: Verdict,
}

impl<C: Category> GaloisEntwiningVerdict<C> {
    /// All crosschecks pass; `pass` itself may go either way.
    pub fn consistent(&self) -> Verdict {
        Verdict::all([
            self.coaction.clone(),
            self.quotient_map.clone(),
            self.factorisation.clone(),
            self.mono_implies_iso.clone(),
            self.theorem.clone(),
        ])
    }
}

pub fn galois_entwining_verdict<C: Equalisers + Coequalisers>(
    g: &Grouplike<C>,
    e: &Entwining<C>,
    budget: usize,
) -> Result<GaloisEntwiningVerdict<C>, StructuralError> {
    let cat = e.category();
    let eq = equaliser_monad(g, e)?;
    require(Verdict::all([eq.equalises.clone(), eq.laws.clone(), eq.morphism.clone()]), "F^g is not a submonad")?;
    let shriek = Arc::new(shriek_adjoint(&eq)?);
    require(shriek.laws.clone(), "(i_F)_! ⊣ (i_F)^* fails")?;
    require(shriek.split.clone(), "κ is not a natural isomorphism")?;
    let large = shriek.large.clone();
    let ghat = lift_comonad(e, large.clone());
    let twisted = induced_comodules(g, e)?.twisted;

    let left = shriek.shriek();
    let coaction = {
        let (shriek, cat, monad, comonad) = (shriek.clone(), cat.clone(), e.monad.clone(), e.comonad.clone());
        Nat::new("ī_F", left.clone(), left.then(&ghat.functor), move |x: &Sobj<C>| {
            let p = shriek.present(x);
            let a = &x.carrier;
            let fa = monad.ob(a);
            let g_q = comonad.functor.map(&fa, &p.apex, &p.quotient);
            cat.factor_through_coequaliser(&p.quotient, &cat.compose(&g_q, &twisted.at(a)))
        })
    };
    let ibar = ComoduleFunctor { functor: left, comonad: ghat.clone(), coaction };
    let coaction_laws = ibar.check()?;
    require(coaction_laws.clone(), "ī_F coaction")?;

    let tilde = Comonad::from_adjunction(&shriek.adjunction);
    let t = t_from_comodule(&ibar, &shriek.adjunction);
    let pass = components_invertible(&t.carrier);

    let composite = t_composite(g, e, budget)?;
    let phi_triangle = Arc::new(Triangle {
        x: shriek.small.free(),
        lower: large.adjunction(),
        upper: shriek.adjunction.clone(),
        kappa: Some(shriek.kappa.clone()),
    });
    let s_phi = phi_triangle.s_map();
    let comodules = Arc::new(Comodules::new(ghat));
    let lifted = ibar.lift(comodules.clone());
    let ibar_triangle = Arc::new(Triangle {
        x: lifted.clone(),
        lower: shriek.adjunction.clone(),
        upper: comodules.adjunction(),
        kappa: None,
    });
    let s_ibar = ibar_triangle.s_map();

    let quotient_map = large
        .objects()
        .par_iter()
        .find_map_first(|x| {
            let q = shriek.present(&shriek.restriction().ob(x)).quotient;
            let s = s_phi.at(x);
            (s != q).then(|| Witness::unequal("S_φ = q", large.describe(x), cat.encode(&s), cat.encode(&q)))
        })
        .map_or_else(Verdict::pass, Verdict::fail);
    let factorisation = Verdict::all([
        nat_equal("t = S_ī·S_φ", &composite.t.carrier, &s_ibar.after(&s_phi)),
        nat_equal("S_ī = t_g", &s_ibar, &t.carrier),
        s_compose_check(phi_triangle, ibar_triangle)?,
    ]);
    let monic = large
        .objects()
        .par_iter()
        .find_map_first(|x| {
            let c = composite.t.carrier.at(x);
            let (s, tg) = (composite.t.carrier.src.ob(x), composite.t.carrier.tgt.ob(x));
            // Monos of modules are exactly the underlying monos.
            (!cat.is_mono(&s.carrier, &tg.carrier, &c))
                .then(|| Witness::new("t monic", large.describe(x)).with_data(cat.encode(&c)))
        })
        .map_or_else(Verdict::pass, Verdict::fail);
    let mono_implies_iso = Verdict::implies("t monic ⟹ S_φ invertible", &monic, &components_invertible(&s_phi));

    let equivalence = equivalence_verdict(&lifted, EquivalenceMode::Direct { budget });
    let comonadic = comonadic_verdict(&shriek.adjunction, budget);
    let theorem = Verdict::agreement(
        "ī_F equivalence ⟺ Galois ∧ comonadic",
        "",
        equivalence.clone(),
        Verdict::all([pass.clone(), comonadic.clone()]),
    );
    Ok(GaloisEntwiningVerdict {
        tilde,
        t,
        pass,
        coaction: coaction_laws,
        quotient_map,
        factorisation,
        mono_implies_iso,
        equivalence,
        comonadic,
        theorem,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entwining::canonical_entwining;
    use crate::fincat::Functor;
    use crate::finset::{klein_on_cosets, ActionTable, FinSet, MonoidTable};
    use crate::grouplike::point_grouplike;

    fn verdict(action: &ActionTable, n: usize) -> GaloisEntwiningVerdict<FinSet> {
        let s = Arc::new(FinSet::up_to(n));
        let g = point_grouplike(action.size(), 0, s.clone());
        galois_entwining_verdict(&g, &canonical_entwining(action, s), n).unwrap()
    }

    #[test]
    fn z2_is_a_galois_entwining() {
        let v = verdict(&ActionTable::regular(&MonoidTable::cyclic(2)), 2);
        assert!(v.pass.is_pass() && v.equivalence.is_pass() && v.comonadic.is_pass());
        assert!(v.consistent().is_pass(), "{:?}", v.consistent());
    }

    #[test]
    fn idem2_is_not() {
        let v = verdict(&ActionTable::regular(&MonoidTable::idem2()), 2);
        assert!(v.pass.is_fail() && !v.equivalence.is_pass());
        assert!(v.consistent().is_pass(), "{:?}", v.consistent());
    }

    #[test]
    fn larger_stabilisers_stay_consistent() {
        for action in [ActionTable::trivial(&MonoidTable::cyclic(2), 2), klein_on_cosets()] {
            let v = verdict(&action, 2);
            assert!(v.consistent().is_pass(), "{action:?}: {:?}", v.consistent());
        }
    }

    #[test]
    fn identity_setting_is_trivially_galois() {
        let s = Arc::new(FinSet::up_to(3));
        let e = Entwining::trivial(s.clone());
        let g = Grouplike { comonad: e.comonad.clone(), carrier: Nat::identity(&Functor::identity(s)) };
        let v = galois_entwining_verdict(&g, &e, 3).unwrap();
        assert!(v.pass.is_pass() && v.equivalence.is_pass() && v.consistent().is_pass());
    }
}
