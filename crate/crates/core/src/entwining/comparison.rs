use std::sync::Arc;

use rayon::prelude::*;

use super::law::{lift_comonad, lift_monad, Entwining};
use crate::fincat::{
    equivalence_verdict, nat_equal, Category, EquivalenceMode, Functor, Nat, StructuralError, Verdict, Witness,
};
use crate::monadics::{
    comonadic_verdict, components_invertible, monadic_verdict, t_from_comodule, t_from_module, ComoduleFunctor,
    Comodules, Comonad, ComonadMorphism, ModuleFunctor, Modules, Monad, MonadMorphism, Structured,
};

type Sobj<C> = Structured<<C as Category>::Obj, <C as Category>::Mor>;

/// The comparison into comodules over modules, its comonad morphism and the verdicts around it.
pub struct ModuleComparison<C: Category> {
    pub modules: Arc<Modules<C>>,
    pub comodules: Arc<Comodules<Modules<C>>>,
    /// `a ↦ ((T a, m_a), β_a)`.
    pub functor: Functor<C, Comodules<Modules<C>>>,
    /// Components `G(h)·λ_a·T(α_{(a,h)})` with `α_{(a,h)} = G(h)·β_a·e_a`.
    pub t: ComonadMorphism<Modules<C>>,
    /// `t` agrees with `Ĝσ·βU` computed from the adjunction.
    pub formula: Verdict,
    pub galois: Verdict,
    pub equivalence: Verdict,
    pub comonadic: Verdict,
    /// Equivalence ⟺ (Galois ∧ comonadic).
    pub theorem: Verdict,
}

/// The dual comparison into modules over comodules.
pub struct ComoduleComparison<C: Category> {
    pub comodules: Arc<Comodules<C>>,
    pub modules: Arc<Modules<Comodules<C>>>,
    /// `a ↦ ((G a, δ_a), α_a)`.
    pub functor: Functor<C, Modules<Comodules<C>>>,
    /// Components `G(α'_{(a,θ)})·λ_a·T(θ)` with `α'_{(a,θ)} = ε_a·α_a·T(θ)`.
    pub t: MonadMorphism<Comodules<C>>,
    pub formula: Verdict,
    pub galois: Verdict,
    pub equivalence: Verdict,
    pub monadic: Verdict,
    pub theorem: Verdict,
}

fn precondition(v: Verdict, what: &str) -> Result<(), StructuralError> {
    if v.is_pass() {
        Ok(())
    } else {
        Err(StructuralError::Precondition(format!("{what}: {:?}", v.witness)))
    }
}

fn galois_and(galois: &Verdict, other: &Verdict) -> Verdict {
    Verdict::all([galois.clone(), other.clone()])
}

/// `β·m = Gm·λT·Tβ` at every enumerated object.
pub fn check_coaction_on_monad<C: Category>(e: &Entwining<C>, beta: &Nat<C, C>) -> Verdict {
    let cat = e.category();
    let (t, g, lam) = (&e.monad, &e.comonad, &e.law);
    let failure = cat.objects().into_par_iter().find_map_first(|a| {
        let ta = t.ob(&a);
        let tta = t.ob(&ta);
        let gta = g.ob(&ta);
        let lhs = cat.compose(&beta.at(&a), &t.mult.at(&a));
        let t_beta = t.functor.map(&ta, &gta, &beta.at(&a));
        let rhs = cat.compose(&g.functor.map(&tta, &ta, &t.mult.at(&a)), &cat.compose(&lam.at(&ta), &t_beta));
        (lhs != rhs).then(|| Witness::unequal("β·m = Gm·λT·Tβ", cat.describe(&a), cat.encode(&lhs), cat.encode(&rhs)))
    });
    failure.map_or_else(Verdict::pass, Verdict::fail)
}

/// `δ·α = Gα·λG·Tδ` at every enumerated object.
pub fn check_action_on_comonad<C: Category>(e: &Entwining<C>, alpha: &Nat<C, C>) -> Verdict {
    let cat = e.category();
    let (t, g, lam) = (&e.monad, &e.comonad, &e.law);
    let failure = cat.objects().into_par_iter().find_map_first(|a| {
        let ga = g.ob(&a);
        let gga = g.ob(&ga);
        let tga = t.ob(&ga);
        let lhs = cat.compose(&g.comult.at(&a), &alpha.at(&a));
        let t_delta = t.functor.map(&ga, &gga, &g.comult.at(&a));
        let rhs = cat.compose(&g.functor.map(&tga, &ga, &alpha.at(&a)), &cat.compose(&lam.at(&ga), &t_delta));
        (lhs != rhs).then(|| Witness::unequal("δ·α = Gα·λG·Tδ", cat.describe(&a), cat.encode(&lhs), cat.encode(&rhs)))
    });
    failure.map_or_else(Verdict::pass, Verdict::fail)
}

/// Builds `K'` from a coaction `β: T => GT` and decides it against the Galois and comonadicity conditions.
pub fn comparison_and_tk<C: Category>(
    e: &Entwining<C>,
    beta: &Nat<C, C>,
    budget: usize,
) -> Result<ModuleComparison<C>, StructuralError> {
    let cat = e.category();
    let coaction =
        ComoduleFunctor { functor: e.monad.functor.clone(), comonad: e.comonad.clone(), coaction: beta.clone() };
    precondition(coaction.check()?, "β is not a coaction")?;
    precondition(check_coaction_on_monad(e, beta), "β does not commute with m")?;

    let modules = Arc::new(Modules::new(e.monad.clone()));
    let ghat = lift_comonad(e, modules.clone());
    let comodules = Arc::new(Comodules::new(ghat.clone()));
    let free = modules.free();
    let adj = modules.adjunction();

    let (t, b) = (e.monad.clone(), beta.clone());
    let t2 = e.monad.clone();
    let functor = Functor::new(
        "K'",
        cat.clone(),
        comodules.clone(),
        move |a| Structured::new(Structured::new(t.ob(a), t.mult.at(a)), b.at(a)),
        move |a, c, f| t2.functor.map(a, c, f),
    );

    let lifted_beta = {
        let b = beta.clone();
        Nat::new("β", free.clone(), free.then(&ghat.functor), move |a| b.at(a))
    };
    let generic =
        t_from_comodule(&ComoduleFunctor { functor: free, comonad: ghat.clone(), coaction: lifted_beta }, &adj);

    let carrier = {
        let (e, b) = (e.clone(), beta.clone());
        Nat::new("t_K", generic.carrier.src.clone(), ghat.functor.clone(), move |x: &Sobj<C>| {
            let cat = e.category();
            let (t, g) = (&e.monad, &e.comonad);
            let a = &x.carrier;
            let (ta, ga) = (t.ob(a), g.ob(a));
            let g_h = g.functor.map(&ta, a, &x.structure);
            let alpha = cat.compose(&g_h, &cat.compose(&b.at(a), &t.unit.at(a)));
            cat.compose(&g_h, &cat.compose(&e.law.at(a), &t.functor.map(a, &ga, &alpha)))
        })
    };
    let t_k = ComonadMorphism { src: Comonad::from_adjunction(&adj), tgt: ghat, carrier };
    let formula = nat_equal("t_K = Ĝσ·βU", &t_k.carrier, &generic.carrier);
    let galois = components_invertible(&t_k.carrier);
    let equivalence = equivalence_verdict(&functor, EquivalenceMode::Direct { budget });
    let comonadic = comonadic_verdict(&adj, budget);
    let theorem = Verdict::agreement(
        "K' equivalence ⟺ Galois ∧ comonadic",
        "",
        equivalence.clone(),
        galois_and(&galois, &comonadic),
    );
    Ok(ModuleComparison { modules, comodules, functor, t: t_k, formula, galois, equivalence, comonadic, theorem })
}

/// Builds `K` from an action `α: TG => G` and decides it against the Galois and monadicity conditions.
pub fn comparison_and_tk_dual<C: Category>(
    e: &Entwining<C>,
    alpha: &Nat<C, C>,
    budget: usize,
) -> Result<ComoduleComparison<C>, StructuralError> {
    let cat = e.category();
    let action = ModuleFunctor { functor: e.comonad.functor.clone(), monad: e.monad.clone(), action: alpha.clone() };
    precondition(action.check()?, "α is not an action")?;
    precondition(check_action_on_comonad(e, alpha), "α does not commute with δ")?;

    let comodules = Arc::new(Comodules::new(e.comonad.clone()));
    let that = lift_monad(e, comodules.clone());
    let modules = Arc::new(Modules::new(that.clone()));
    let cofree = comodules.cofree();
    let adj = comodules.adjunction();

    let (g, al) = (e.comonad.clone(), alpha.clone());
    let g2 = e.comonad.clone();
    let functor = Functor::new(
        "K",
        cat.clone(),
        modules.clone(),
        move |a| Structured::new(Structured::new(g.ob(a), g.comult.at(a)), al.at(a)),
        move |a, c, f| g2.functor.map(a, c, f),
    );

    let lifted_alpha = {
        let al = alpha.clone();
        Nat::new("α", cofree.then(&that.functor), cofree.clone(), move |a| al.at(a))
    };
    let generic = t_from_module(&ModuleFunctor { functor: cofree, monad: that.clone(), action: lifted_alpha }, &adj);

    let carrier = {
        let (e, al) = (e.clone(), alpha.clone());
        Nat::new("t_K", that.functor.clone(), generic.carrier.tgt.clone(), move |x: &Sobj<C>| {
            let cat = e.category();
            let (t, g) = (&e.monad, &e.comonad);
            let a = &x.carrier;
            let (ta, ga) = (t.ob(a), g.ob(a));
            let t_theta = t.functor.map(a, &ga, &x.structure);
            let alpha_x = cat.compose(&g.counit.at(a), &cat.compose(&al.at(a), &t_theta));
            let g_alpha = g.functor.map(&ta, a, &alpha_x);
            cat.compose(&g_alpha, &cat.compose(&e.law.at(a), &t_theta))
        })
    };
    let t_k = MonadMorphism { src: that, tgt: Monad::from_adjunction(&adj), carrier };
    let formula = nat_equal("t_K = αU·T̂η", &t_k.carrier, &generic.carrier);
    let galois = components_invertible(&t_k.carrier);
    let equivalence = equivalence_verdict(&functor, EquivalenceMode::Direct { budget });
    let monadic = monadic_verdict(&adj, budget);
    let theorem =
        Verdict::agreement("K equivalence ⟺ Galois ∧ monadic", "", equivalence.clone(), galois_and(&galois, &monadic));
    Ok(ComoduleComparison { comodules, modules, functor, t: t_k, formula, galois, equivalence, monadic, theorem })
}

/// Invertibility of `t` on every module against invertibility on free modules only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeRestriction {
    pub everywhere: Verdict,
    pub on_free: Verdict,
    /// On free modules `t` is `Gm·βT`.
    pub free_formula: Verdict,
    pub agreement: Verdict,
}

pub fn free_restriction_check<C: Category>(
    e: &Entwining<C>,
    comparison: &ModuleComparison<C>,
    beta: &Nat<C, C>,
) -> FreeRestriction {
    let cat = e.category();
    let modules = &comparison.modules;
    let t = &comparison.t.carrier;
    let everywhere = components_invertible(t);
    let frees: Vec<Sobj<C>> = cat.objects().iter().map(|a| modules.free().ob(a)).collect();
    let on_free = frees
        .par_iter()
        .find_map_first(|x| {
            let c = t.at(x);
            (!modules.is_iso(&t.src.ob(x), &t.tgt.ob(x), &c))
                .then(|| Witness::new("t invertible on free", modules.describe(x)).with_data(cat.encode(&c)))
        })
        .map_or_else(Verdict::pass, Verdict::fail);
    let free_formula = cat
        .objects()
        .par_iter()
        .find_map_first(|a| {
            let (ta, tta) = (e.monad.ob(a), e.monad.ob(&e.monad.ob(a)));
            let expected = cat.compose(&e.comonad.functor.map(&tta, &ta, &e.monad.mult.at(a)), &beta.at(&ta));
            let actual = t.at(&modules.free().ob(a));
            (actual != expected)
                .then(|| Witness::unequal("t·φ = Gm·βT", cat.describe(a), cat.encode(&actual), cat.encode(&expected)))
        })
        .map_or_else(Verdict::pass, Verdict::fail);
    let agreement = Verdict::agreement("iso everywhere ⟺ iso on free", "", everywhere.clone(), on_free.clone());
    FreeRestriction { everywhere, on_free, free_formula, agreement }
}
