use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;

use super::em::{Comodules, Modules, Structured};
use super::monad::{Comonad, ComonadMorphism, Monad, MonadMorphism};
use crate::fincat::{
    check_natural, equivalence_verdict, fully_faithful_on, functors_agree, nat_equal, Adjunction, Category,
    CheckResult, Coequalisers, Equalisers, EquivalenceMode, Functor, Nat, StructuralError, Verdict, Witness,
};

type Obj<C> = <C as Category>::Obj;
type Mor<C> = <C as Category>::Mor;

/// A functor `F: B -> A` with a coaction `β: F => GF` of a comonad on `A`.
pub struct ComoduleFunctor<B: Category, A: Category> {
    pub functor: Functor<B, A>,
    pub comonad: Comonad<A>,
    pub coaction: Nat<B, A>,
}

/// A functor `R: B -> A` with an action `α: TR => R` of a monad on `A`.
pub struct ModuleFunctor<B: Category, A: Category> {
    pub functor: Functor<B, A>,
    pub monad: Monad<A>,
    pub action: Nat<B, A>,
}

impl<B: Category, A: Category> Clone for ComoduleFunctor<B, A> {
    fn clone(&self) -> Self {
        ComoduleFunctor {
            functor: self.functor.clone(),
            comonad: self.comonad.clone(),
            coaction: self.coaction.clone(),
        }
    }
}

impl<B: Category, A: Category> Clone for ModuleFunctor<B, A> {
    fn clone(&self) -> Self {
        ModuleFunctor { functor: self.functor.clone(), monad: self.monad.clone(), action: self.action.clone() }
    }
}

fn first_law_failure<B: Category, A: Category>(
    src: &B,
    tgt: &A,
    laws: impl Fn(&B::Obj) -> Vec<(&'static str, A::Mor, A::Mor)> + Sync,
) -> Verdict {
    let failure = src.objects().par_iter().find_map_first(|b| {
        laws(b)
            .into_iter()
            .find(|(_, l, r)| l != r)
            .map(|(law, l, r)| Witness::unequal(law, src.describe(b), tgt.encode(&l), tgt.encode(&r)))
    });
    failure.map_or_else(Verdict::pass, Verdict::fail)
}

impl<B: Category, A: Category> ComoduleFunctor<B, A> {
    /// Naturality of `β`, `εF·β = 1` and `δF·β = Gβ·β`.
    pub fn check(&self) -> CheckResult {
        let a_cat = self.comonad.category();
        let g = &self.comonad;
        check_natural(&self.coaction)?.and_then_try(|| {
            Ok(first_law_failure(self.functor.src.as_ref(), a_cat.as_ref(), |b| {
                let fb = self.functor.ob(b);
                let gfb = g.ob(&fb);
                let beta = self.coaction.at(b);
                vec![
                    ("εF·β = 1", a_cat.compose(&g.counit.at(&fb), &beta), a_cat.identity(&fb)),
                    (
                        "δF·β = Gβ·β",
                        a_cat.compose(&g.comult.at(&fb), &beta),
                        a_cat.compose(&g.functor.map(&fb, &gfb, &beta), &beta),
                    ),
                ]
            }))
        })
    }

    /// `F̄: B -> A^G`, `b ↦ (F b, β_b)`.
    pub fn lift(&self, comodules: Arc<Comodules<A>>) -> Functor<B, Comodules<A>> {
        let (f, f2, beta) = (self.functor.clone(), self.functor.clone(), self.coaction.clone());
        Functor::new(
            format!("{}̄", self.functor.name),
            self.functor.src.clone(),
            comodules,
            move |b| Structured::new(f.ob(b), beta.at(b)),
            move |x, y, m| f2.map(x, y, m),
        )
    }
}

impl<B: Category, A: Category> ModuleFunctor<B, A> {
    /// Naturality of `α`, `α·eR = 1` and `α·mR = α·Tα`.
    pub fn check(&self) -> CheckResult {
        let a_cat = self.monad.category();
        let t = &self.monad;
        check_natural(&self.action)?.and_then_try(|| {
            Ok(first_law_failure(self.functor.src.as_ref(), a_cat.as_ref(), |b| {
                let rb = self.functor.ob(b);
                let trb = t.ob(&rb);
                let alpha = self.action.at(b);
                vec![
                    ("α·eR = 1", a_cat.compose(&alpha, &t.unit.at(&rb)), a_cat.identity(&rb)),
                    (
                        "α·mR = α·Tα",
                        a_cat.compose(&alpha, &t.mult.at(&rb)),
                        a_cat.compose(&alpha, &t.functor.map(&trb, &rb, &alpha)),
                    ),
                ]
            }))
        })
    }

    /// `R̄: B -> A_T`, `b ↦ (R b, α_b)`.
    pub fn lift(&self, modules: Arc<Modules<A>>) -> Functor<B, Modules<A>> {
        let (r, r2, alpha) = (self.functor.clone(), self.functor.clone(), self.action.clone());
        Functor::new(
            format!("{}̄", self.functor.name),
            self.functor.src.clone(),
            modules,
            move |b| Structured::new(r.ob(b), alpha.at(b)),
            move |x, y, m| r2.map(x, y, m),
        )
    }
}

/// `t = Gσ·βR: FR => G` for a comodule functor `F` with right adjoint `R` and counit `σ`.
pub fn t_from_comodule<B: Category, A: Category>(
    cf: &ComoduleFunctor<B, A>,
    adj: &Adjunction<B, A>,
) -> ComonadMorphism<A> {
    let source = Comonad::from_adjunction(adj);
    let g = cf.comonad.clone();
    let (beta, right, counit) = (cf.coaction.clone(), adj.right.clone(), adj.counit.clone());
    let fr = source.functor.clone();
    let carrier = Nat::new("t", fr.clone(), g.functor.clone(), move |a| {
        let fra = fr.ob(a);
        let cat = g.category();
        let sigma = g.functor.map(&fra, a, &counit.at(a));
        cat.compose(&sigma, &beta.at(&right.ob(a)))
    });
    ComonadMorphism { src: source, tgt: cf.comonad.clone(), carrier }
}

/// `t = αF·Tη: T => RF` for a module functor `R` with left adjoint `F` and unit `η`.
pub fn t_from_module<A: Category, B: Category>(mf: &ModuleFunctor<B, A>, adj: &Adjunction<A, B>) -> MonadMorphism<A> {
    let target = Monad::from_adjunction(adj);
    let t = mf.monad.clone();
    let (alpha, left, unit) = (mf.action.clone(), adj.left.clone(), adj.unit.clone());
    let rf = target.functor.clone();
    let carrier = Nat::new("t", t.functor.clone(), rf.clone(), move |a| {
        let cat = t.category();
        let t_eta = t.functor.map(a, &rf.ob(a), &unit.at(a));
        cat.compose(&alpha.at(&left.ob(a)), &t_eta)
    });
    MonadMorphism { src: mf.monad.clone(), tgt: target, carrier }
}

/// Every component of `t` is an isomorphism.
pub fn components_invertible<C: Category>(carrier: &Nat<C, C>) -> Verdict {
    let cat = carrier.src.src.clone();
    let failure = cat.objects().into_par_iter().find_map_first(|a| {
        let c = carrier.at(&a);
        (!cat.is_iso(&carrier.src.ob(&a), &carrier.tgt.ob(&a), &c))
            .then(|| Witness::new("component invertible", cat.describe(&a)).with_data(cat.encode(&c)))
    });
    failure.map_or_else(Verdict::pass, Verdict::fail)
}

/// Either kind of comparison morphism, for a uniform Galois verdict.
pub enum GaloisMorphism<'a, C: Category> {
    Comonad(&'a ComonadMorphism<C>),
    Monad(&'a MonadMorphism<C>),
}

pub fn galois_verdict<C: Category>(t: GaloisMorphism<'_, C>) -> Verdict {
    match t {
        GaloisMorphism::Comonad(t) => components_invertible(&t.carrier),
        GaloisMorphism::Monad(t) => components_invertible(&t.carrier),
    }
}

/// `F̄ ⊣ R̄` with `R̄(a, θ)` the equaliser of `R θ` and `γ_a = R t_a · η_{Ra}`.
pub fn rbar_via_equaliser<B: Equalisers, A: Category>(
    cf: &ComoduleFunctor<B, A>,
    adj: &Adjunction<B, A>,
    comodules: Arc<Comodules<A>>,
) -> Adjunction<B, Comodules<A>> {
    let b_cat = adj.left.src.clone();
    let t = t_from_comodule(cf, adj).carrier;
    let (right, unit) = (adj.right.clone(), adj.unit.clone());
    let g = cf.comonad.functor.clone();

    // (R̄(a, θ), its inclusion, R a).
    let equalise = {
        let b_cat = b_cat.clone();
        Arc::new(move |x: &Structured<Obj<A>, Mor<A>>| {
            let a = &x.carrier;
            let (ra, ga) = (right.ob(a), g.ob(a));
            let r_theta = right.map(a, &ga, &x.structure);
            let gamma = b_cat.compose(&right.map(&t.src.ob(a), &ga, &t.at(a)), &unit.at(&ra));
            let (apex, e) = b_cat.equaliser(&ra, &right.ob(&ga), &r_theta, &gamma);
            (apex, e, ra)
        })
    };

    let lift = cf.lift(comodules.clone());
    let rbar = {
        let (equalise, b_cat, right) = (equalise.clone(), b_cat.clone(), adj.right.clone());
        let on_obj = equalise.clone();
        Functor::new(
            format!("{}̄", adj.right.name),
            comodules.clone(),
            b_cat.clone(),
            move |x| on_obj(x).0,
            move |x, y, f| {
                let (e_x, e_y) = (equalise(x).1, equalise(y).1);
                let rf = right.map(&x.carrier, &y.carrier, f);
                b_cat.factor_through_equaliser(&e_y, &b_cat.compose(&rf, &e_x))
            },
        )
    };

    let bar_unit = {
        let (lift, equalise, unit, b_cat) = (lift.clone(), equalise.clone(), adj.unit.clone(), b_cat.clone());
        Nat::new("η̄", Functor::identity(b_cat.clone()), lift.then(&rbar), move |b| {
            let e = equalise(&lift.ob(b)).1;
            b_cat.factor_through_equaliser(&e, &unit.at(b))
        })
    };

    let bar_counit = {
        let (left, counit) = (adj.left.clone(), adj.counit.clone());
        let a_cat = adj.left.tgt.clone();
        Nat::new("ε̄", rbar.then(&lift), Functor::identity(comodules), move |x| {
            let (apex, e, ra) = equalise(x);
            a_cat.compose(&counit.at(&x.carrier), &left.map(&apex, &ra, &e))
        })
    };
    Adjunction::new(lift, rbar, bar_unit, bar_counit)
}

/// `L̄ ⊣ R̄` with `L̄(a, h)` the coequaliser of `F h` and `β_a = ε_{Fa} · F t_a`.
pub fn lbar_via_coequaliser<A: Category, B: Coequalisers>(
    mf: &ModuleFunctor<B, A>,
    adj: &Adjunction<A, B>,
    modules: Arc<Modules<A>>,
) -> Adjunction<Modules<A>, B> {
    let b_cat = adj.right.src.clone();
    let t = t_from_module(mf, adj).carrier;
    let (left, counit) = (adj.left.clone(), adj.counit.clone());

    // (L̄(a, h), its quotient map out of F a, F a).
    let coequalise = {
        let b_cat = b_cat.clone();
        Arc::new(move |x: &Structured<Obj<A>, Mor<A>>| {
            let a = &x.carrier;
            let ta = t.src.ob(a);
            let (fa, fta) = (left.ob(a), left.ob(&ta));
            let f_h = left.map(&ta, a, &x.structure);
            let beta = b_cat.compose(&counit.at(&fa), &left.map(&ta, &t.tgt.ob(a), &t.at(a)));
            let (apex, q) = b_cat.coequaliser(&fta, &fa, &f_h, &beta);
            (apex, q, fa)
        })
    };

    let lift = mf.lift(modules.clone());
    let lbar = {
        let (coequalise, b_cat, left) = (coequalise.clone(), b_cat.clone(), adj.left.clone());
        let on_obj = coequalise.clone();
        Functor::new(
            format!("{}̄", adj.left.name),
            modules.clone(),
            b_cat.clone(),
            move |x| on_obj(x).0,
            move |x, y, f| {
                let (q_x, q_y) = (coequalise(x).1, coequalise(y).1);
                let ff = left.map(&x.carrier, &y.carrier, f);
                b_cat.factor_through_coequaliser(&q_x, &b_cat.compose(&q_y, &ff))
            },
        )
    };

    let bar_unit = {
        let (coequalise, right, unit) = (coequalise.clone(), adj.right.clone(), adj.unit.clone());
        let a_cat = adj.left.src.clone();
        Nat::new("η̄", Functor::identity(modules), lbar.then(&lift), move |x| {
            let (apex, q, fa) = coequalise(x);
            a_cat.compose(&right.map(&fa, &apex, &q), &unit.at(&x.carrier))
        })
    };

    let bar_counit = {
        let (lift, counit) = (lift.clone(), adj.counit.clone());
        Nat::new("ε̄", lift.then(&lbar), Functor::identity(b_cat.clone()), move |b| {
            let q = coequalise(&lift.ob(b)).1;
            b_cat.factor_through_coequaliser(&q, &counit.at(b))
        })
    };
    Adjunction::new(lbar, lift, bar_unit, bar_counit)
}

/// `b` is injective relative to `F ⊣ R` when the unit `η_b` is split mono.
pub fn relative_injective<B: Category, A: Category>(b: &B::Obj, adj: &Adjunction<B, A>) -> bool {
    let rfb = adj.right.ob(&adj.left.ob(b));
    adj.left.src.retraction(b, &rfb, &adj.unit.at(b)).is_some()
}

/// `a` is projective relative to `F ⊣ R` when the counit `ε_a` is split epi.
pub fn relative_projective<B: Category, A: Category>(a: &A::Obj, adj: &Adjunction<B, A>) -> bool {
    let fra = adj.left.ob(&adj.right.ob(a));
    adj.left.tgt.section(&fra, a, &adj.counit.at(a)).is_some()
}

/// `R a` is relatively injective, witnessed by the candidate retraction `R(ε_a)` of `η_{R a}`.
///
/// Avoids a blind retraction search, which is exponential in the size of `R F R a`.
pub fn right_image_injective<B: Category, A: Category>(a: &A::Obj, adj: &Adjunction<B, A>) -> bool {
    let b_cat = &adj.left.src;
    let x = adj.right.ob(a);
    let fx = adj.left.ob(&x);
    let rfx = adj.right.ob(&fx);
    let retraction = adj.right.map(&fx, a, &adj.counit.at(a));
    b_cat.contains(&rfx, &x, &retraction) && b_cat.compose(&retraction, &adj.unit.at(&x)) == b_cat.identity(&x)
}

/// `F b` is relatively projective, witnessed by the candidate section `F(η_b)` of `ε_{F b}`.
pub fn left_image_projective<B: Category, A: Category>(b: &B::Obj, adj: &Adjunction<B, A>) -> bool {
    let a_cat = &adj.left.tgt;
    let x = adj.left.ob(b);
    let rx = adj.right.ob(&x);
    let frx = adj.left.ob(&rx);
    let section = adj.left.map(b, &rx, &adj.unit.at(b));
    a_cat.contains(&x, &frx, &section) && a_cat.compose(&adj.counit.at(&x), &section) == a_cat.identity(&x)
}

/// Enumerated relatively injective objects of size at most `budget`.
pub fn inj_subcategory<B: Category, A: Category>(adj: &Adjunction<B, A>, budget: usize) -> Vec<B::Obj> {
    let b_cat = adj.left.src.clone();
    b_cat.objects().into_par_iter().filter(|b| b_cat.size(b) <= budget && relative_injective(b, adj)).collect()
}

/// Outcome of the three Galois conditions evaluated independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisConditions {
    /// `t` is an isomorphism.
    pub t_iso: Verdict,
    /// The adjoint's (co)unit is invertible at every relatively injective (projective) object.
    pub at_relative: Verdict,
    /// The same at every cofree (free) object.
    pub at_free: Verdict,
}

impl GaloisConditions {
    /// Pass iff the three conditions are all true or all false.
    pub fn agreement(&self) -> Verdict {
        let all = [&self.t_iso, &self.at_relative, &self.at_free];
        if let Some(v) = all.iter().find(|v| v.is_inconclusive()) {
            return (*v).clone();
        }
        let codes: Vec<u32> = all.iter().map(|v| u32::from(v.is_pass())).collect();
        Verdict::check(codes.iter().all(|&c| c == codes[0]), || {
            Witness::unequal("Galois conditions agree", "t / relative / free", codes.clone(), vec![codes[0]; 3])
        })
    }
}

fn invertible_at<C: Category>(
    law: &str,
    cat: &C,
    objs: &[C::Obj],
    comp: impl Fn(&C::Obj) -> (C::Obj, C::Obj, C::Mor) + Sync,
) -> Verdict {
    let failure = objs.par_iter().find_map_first(|x| {
        let (s, t, m) = comp(x);
        (!cat.is_iso(&s, &t, &m)).then(|| Witness::new(law, cat.describe(x)).with_data(cat.encode(&m)))
    });
    failure.map_or_else(Verdict::pass, Verdict::fail)
}

/// Comodule side: `t` iso, `ε̄` iso at `U^G`-injective comodules, `ε̄` iso at cofree comodules.
pub fn t311_crosscheck<B: Equalisers, A: Category>(
    cf: &ComoduleFunctor<B, A>,
    adj: &Adjunction<B, A>,
    comodules: Arc<Comodules<A>>,
) -> GaloisConditions {
    let t = t_from_comodule(cf, adj);
    let bar = rbar_via_equaliser(cf, adj, comodules.clone());
    let em = comodules.adjunction();
    let cofree = comodules.cofree();
    let counit_at = |x: &Structured<Obj<A>, Mor<A>>| (bar.left.ob(&bar.right.ob(x)), x.clone(), bar.counit.at(x));

    let bases = comodules.base().objects();
    let cofrees: Vec<_> = bases.iter().map(|a| cofree.ob(a)).collect();
    // Cofree comodules may outgrow the enumeration; they are candidates too, but still tested.
    let mut injectives: Vec<_> = inj_subcategory(&em, usize::MAX);
    let known: HashSet<_> = injectives.iter().cloned().collect();
    injectives.extend(
        bases
            .iter()
            .zip(&cofrees)
            .filter(|(a, x)| !known.contains(*x) && right_image_injective(*a, &em))
            .map(|(_, x)| x.clone()),
    );
    GaloisConditions {
        t_iso: components_invertible(&t.carrier),
        at_relative: invertible_at("ε̄ at relatively injective", comodules.as_ref(), &injectives, counit_at),
        at_free: invertible_at("ε̄ at cofree", comodules.as_ref(), &cofrees, counit_at),
    }
}

/// Module side: `t` iso, `η̄` iso at `U_T`-projective modules, `η̄` iso at free modules.
pub fn t311_module_crosscheck<A: Category, B: Coequalisers>(
    mf: &ModuleFunctor<B, A>,
    adj: &Adjunction<A, B>,
    modules: Arc<Modules<A>>,
) -> GaloisConditions {
    let t = t_from_module(mf, adj);
    let bar = lbar_via_coequaliser(mf, adj, modules.clone());
    let em = modules.adjunction();
    let free = modules.free();
    let unit_at = |x: &Structured<Obj<A>, Mor<A>>| (x.clone(), bar.right.ob(&bar.left.ob(x)), bar.unit.at(x));

    let bases = modules.base().objects();
    let frees: Vec<_> = bases.iter().map(|a| free.ob(a)).collect();
    let mut projectives: Vec<_> = modules.objects().into_par_iter().filter(|x| relative_projective(x, &em)).collect();
    let known: HashSet<_> = projectives.iter().cloned().collect();
    projectives.extend(
        bases
            .iter()
            .zip(&frees)
            .filter(|(a, x)| !known.contains(*x) && left_image_projective(*a, &em))
            .map(|(_, x)| x.clone()),
    );
    GaloisConditions {
        t_iso: components_invertible(&t.carrier),
        at_relative: invertible_at("η̄ at relatively projective", modules.as_ref(), &projectives, unit_at),
        at_free: invertible_at("η̄ at free", modules.as_ref(), &frees, unit_at),
    }
}

/// The comparison `B -> A^{FR}`, `b ↦ (F b, F η_b)`.
pub fn comonadic_comparison<B: Category, A: Category>(
    adj: &Adjunction<B, A>,
) -> (Arc<Comodules<A>>, Functor<B, Comodules<A>>) {
    let comodules = Arc::new(Comodules::new(Comonad::from_adjunction(adj)));
    let (left, left2, right, unit) = (adj.left.clone(), adj.left.clone(), adj.right.clone(), adj.unit.clone());
    let k = Functor::new(
        format!("K_{}", adj.left.name),
        adj.left.src.clone(),
        comodules.clone(),
        move |b| {
            let fb = left.ob(b);
            let rfb = right.ob(&fb);
            Structured::new(fb, left.map(b, &rfb, &unit.at(b)))
        },
        move |x, y, f| left2.map(x, y, f),
    );
    (comodules, k)
}

/// The comparison `A -> B_{RF}`, `a ↦ (R a, R ε_a)`.
pub fn monadic_comparison<B: Category, A: Category>(
    adj: &Adjunction<B, A>,
) -> (Arc<Modules<B>>, Functor<A, Modules<B>>) {
    let modules = Arc::new(Modules::new(Monad::from_adjunction(adj)));
    let (right, right2, left, counit) = (adj.right.clone(), adj.right.clone(), adj.left.clone(), adj.counit.clone());
    let k = Functor::new(
        format!("K^{}", adj.right.name),
        adj.left.tgt.clone(),
        modules.clone(),
        move |a| {
            let fra = left.ob(&right.ob(a));
            Structured::new(right.ob(a), right.map(&fra, a, &counit.at(a)))
        },
        move |x, y, f| right2.map(x, y, f),
    );
    (modules, k)
}

/// The left adjoint is comonadic: its comparison functor is a budgeted equivalence.
pub fn comonadic_verdict<B: Category, A: Category>(adj: &Adjunction<B, A>, budget: usize) -> Verdict {
    let (_, k) = comonadic_comparison(adj);
    equivalence_verdict(&k, EquivalenceMode::Direct { budget })
}

/// The right adjoint is monadic: its comparison functor is a budgeted equivalence.
pub fn monadic_verdict<B: Category, A: Category>(adj: &Adjunction<B, A>, budget: usize) -> Verdict {
    let (_, k) = monadic_comparison(adj);
    equivalence_verdict(&k, EquivalenceMode::Direct { budget })
}

/// The left adjoint is precomonadic: its comparison functor is fully faithful on objects up to `budget`.
pub fn precomonadic_verdict<B: Category, A: Category>(adj: &Adjunction<B, A>, budget: usize) -> Verdict {
    let (_, k) = comonadic_comparison(adj);
    let src = adj.left.src.clone();
    let objs: Vec<_> = src.objects().into_iter().filter(|b| src.size(b) <= budget).collect();
    fully_faithful_on(&k, &objs)
}

/// A functor `X: B -> B'` over `A`: `F ⊣ R` on `B`, `F' ⊣ R'` on `B'`, and an
/// isomorphism `κ: F'X => F` (`None` when `F'X = F` on the nose).
pub struct Triangle<B: Category, B2: Category, A: Category> {
    pub x: Functor<B, B2>,
    pub lower: Adjunction<B, A>,
    pub upper: Adjunction<B2, A>,
    pub kappa: Option<Nat<B, A>>,
}

impl<B: Category, B2: Category, A: Category> Triangle<B, B2, A> {
    /// Commutativity up to the declared `κ`.
    pub fn check(&self) -> CheckResult {
        let fx = self.x.then(&self.upper.left);
        match &self.kappa {
            None => Ok(functors_agree("F'X = F", &fx, &self.lower.left)),
            Some(kappa) => check_natural(kappa)?.and_then_try(|| Ok(components_invertible_between(kappa))),
        }
    }

    fn kappa_inverse_at(&self, b: &B::Obj) -> A::Mor {
        let a_cat = self.lower.left.tgt.clone();
        match &self.kappa {
            None => a_cat.identity(&self.lower.left.ob(b)),
            Some(kappa) => {
                let (src, tgt) = (kappa.src.ob(b), kappa.tgt.ob(b));
                a_cat.inverse(&src, &tgt, &kappa.at(b)).expect("κ is invertible")
            }
        }
    }

    /// `S_X = F'α · κ⁻¹R: FR => F'R'` with `α = R'(ε·κR) · η'XR: XR => R'`.
    pub fn s_map(self: &Arc<Self>) -> Nat<A, A> {
        let this = self.clone();
        let src = self.lower.right.then(&self.lower.left);
        let tgt = self.upper.right.then(&self.upper.left);
        Nat::new(format!("S_{}", self.x.name), src, tgt, move |a| {
            let a_cat = this.lower.left.tgt.clone();
            let b2_cat = this.upper.left.src.clone();
            let ra = this.lower.right.ob(a);
            let xra = this.x.ob(&ra);
            let f2xra = this.upper.left.ob(&xra);
            let r2a = this.upper.right.ob(a);
            let fra = this.lower.left.ob(&ra);
            let kappa = match &this.kappa {
                None => a_cat.identity(&fra),
                Some(k) => k.at(&ra),
            };
            let eps_kappa = a_cat.compose(&this.lower.counit.at(a), &kappa);
            let alpha = b2_cat.compose(&this.upper.right.map(&f2xra, a, &eps_kappa), &this.upper.unit.at(&xra));
            a_cat.compose(&this.upper.left.map(&xra, &r2a, &alpha), &this.kappa_inverse_at(&ra))
        })
    }
}

fn components_invertible_between<B: Category, A: Category>(kappa: &Nat<B, A>) -> Verdict {
    let (b_cat, a_cat) = (kappa.src.src.clone(), kappa.src.tgt.clone());
    let failure = b_cat.objects().into_par_iter().find_map_first(|b| {
        let c = kappa.at(&b);
        (!a_cat.is_iso(&kappa.src.ob(&b), &kappa.tgt.ob(&b), &c))
            .then(|| Witness::new("κ invertible", b_cat.describe(&b)).with_data(a_cat.encode(&c)))
    });
    failure.map_or_else(Verdict::pass, Verdict::fail)
}

/// `S_{YX} = S_Y · S_X`, with the composite triangle built from the two given ones.
pub fn s_compose_check<B: Category, B2: Category, B3: Category, A: Category>(
    first: Arc<Triangle<B, B2, A>>,
    second: Arc<Triangle<B2, B3, A>>,
) -> CheckResult {
    for v in [first.check()?, second.check()?] {
        if !v.is_pass() {
            return Err(StructuralError::Precondition(format!("triangle does not commute: {:?}", v.witness)));
        }
    }
    let kappa = match (&first.kappa, &second.kappa) {
        (None, None) => None,
        _ => {
            let (f1, s1) = (first.clone(), second.clone());
            let a_cat = first.lower.left.tgt.clone();
            let composite_left = first.x.then(&second.x).then(&second.upper.left);
            Some(Nat::new("κ", composite_left, first.lower.left.clone(), move |b| {
                let xb = f1.x.ob(b);
                let k2 = match &s1.kappa {
                    None => a_cat.identity(&s1.upper.left.ob(&s1.x.ob(&xb))),
                    Some(k) => k.at(&xb),
                };
                let k1 = match &f1.kappa {
                    None => a_cat.identity(&f1.upper.left.ob(&xb)),
                    Some(k) => k.at(b),
                };
                a_cat.compose(&k1, &k2)
            }))
        }
    };
    let composite = Arc::new(Triangle {
        x: first.x.then(&second.x),
        lower: first.lower.clone(),
        upper: second.upper.clone(),
        kappa,
    });
    let (sx, sy, syx) = (first.s_map(), second.s_map(), composite.s_map());
    Ok(nat_equal("S_YX = S_Y·S_X", &syx, &sy.after(&sx)))
}
