use std::sync::Arc;

use rayon::prelude::*;

use crate::fincat::{check_natural, Category, CheckResult, Functor, Nat, Verdict, Witness};
use crate::finset::{ActionTable, FinSet, FnEnc};
use crate::monadics::{product_comonad, product_monad, Comodules, Comonad, Modules, Monad, Structured};

/// A mixed distributive law `λ: TG => GT` from a monad to a comonad.
pub struct Entwining<C: Category> {
    pub monad: Monad<C>,
    pub comonad: Comonad<C>,
    pub law: Nat<C, C>,
}

impl<C: Category> Clone for Entwining<C> {
    fn clone(&self) -> Self {
        Entwining { monad: self.monad.clone(), comonad: self.comonad.clone(), law: self.law.clone() }
    }
}

impl<C: Category> Entwining<C> {
    pub fn category(&self) -> Arc<C> {
        self.monad.category()
    }

    pub fn with_law(&self, law: Nat<C, C>) -> Self {
        Entwining { law, ..self.clone() }
    }

    /// `T ∘ G`, the source of `λ`.
    pub fn tg(&self) -> Functor<C, C> {
        self.comonad.functor.then(&self.monad.functor)
    }

    /// `G ∘ T`, the target of `λ`.
    pub fn gt(&self) -> Functor<C, C> {
        self.monad.functor.then(&self.comonad.functor)
    }

    /// `λ = id` between `Id` and `Id`.
    pub fn trivial(cat: Arc<C>) -> Self {
        let monad = Monad::identity(cat.clone());
        let comonad = Comonad::identity(cat);
        let law = Nat::identity(&monad.functor).renamed("λ");
        Entwining { monad, comonad, law }
    }
}

/// Naturality of `λ`, then the four axioms at every enumerated object:
/// `λ·mG = Gm·λT·Tλ`, `λ·eG = Ge`, `δT·λ = Gλ·λG·Tδ`, `εT·λ = Tε`.
pub fn check_entwining<C: Category>(e: &Entwining<C>) -> CheckResult {
    let cat = e.category();
    let (t, g, lam) = (&e.monad, &e.comonad, &e.law);
    let v = check_natural(lam)?;
    if !v.is_pass() {
        return Ok(v);
    }
    let failure = cat.objects().par_iter().find_map_first(|a| {
        let (ta, ga) = (t.ob(a), g.ob(a));
        let (tga, gta) = (t.ob(&ga), g.ob(&ta));
        let (tta, gga) = (t.ob(&ta), g.ob(&ga));
        let lam_a = lam.at(a);
        let laws = [
            (
                "λ·mG = Gm·λT·Tλ",
                cat.compose(&lam_a, &t.mult.at(&ga)),
                cat.compose(
                    &g.functor.map(&tta, &ta, &t.mult.at(a)),
                    &cat.compose(&lam.at(&ta), &t.functor.map(&tga, &gta, &lam_a)),
                ),
            ),
            ("λ·eG = Ge", cat.compose(&lam_a, &t.unit.at(&ga)), g.functor.map(a, &ta, &t.unit.at(a))),
            (
                "δT·λ = Gλ·λG·Tδ",
                cat.compose(&g.comult.at(&ta), &lam_a),
                cat.compose(
                    &g.functor.map(&tga, &gta, &lam_a),
                    &cat.compose(&lam.at(&ga), &t.functor.map(&ga, &gga, &g.comult.at(a))),
                ),
            ),
            ("εT·λ = Tε", cat.compose(&g.counit.at(&ta), &lam_a), t.functor.map(&ga, a, &g.counit.at(a))),
        ];
        laws.into_iter()
            .find(|(_, l, r)| l != r)
            .map(|(law, l, r)| Witness::unequal(law, cat.describe(a), cat.encode(&l), cat.encode(&r)))
    });
    Ok(failure.map_or_else(Verdict::pass, Verdict::fail))
}

/// `Ĝ(a, h) = (G a, G(h)·λ_a)` on modules, with `δ` and `ε` unchanged.
pub fn lift_comonad<C: Category>(e: &Entwining<C>, modules: Arc<Modules<C>>) -> Comonad<Modules<C>> {
    let (t, g, lam) = (e.monad.clone(), e.comonad.clone(), e.law.clone());
    let g_mor = e.comonad.clone();
    let cat = e.category();
    let functor = Functor::new(
        format!("{}̂", e.comonad.name),
        modules.clone(),
        modules.clone(),
        move |x: &Structured<C::Obj, C::Mor>| {
            let a = &x.carrier;
            let gh = g.functor.map(&t.ob(a), a, &x.structure);
            Structured::new(g.ob(a), cat.compose(&gh, &lam.at(a)))
        },
        move |x, y, f| g_mor.functor.map(&x.carrier, &y.carrier, f),
    );
    let (d, c) = (e.comonad.comult.clone(), e.comonad.counit.clone());
    let comult = Nat::new("δ̂", functor.clone(), functor.then(&functor), move |x| d.at(&x.carrier));
    let counit = Nat::new("ε̂", functor.clone(), Functor::identity(modules), move |x| c.at(&x.carrier));
    Comonad { name: functor.name.clone(), functor, comult, counit }
}

/// `T̂(a, θ) = (T a, λ_a·T(θ))` on comodules, with `m` and `e` unchanged.
pub fn lift_monad<C: Category>(e: &Entwining<C>, comodules: Arc<Comodules<C>>) -> Monad<Comodules<C>> {
    let (t, g, lam) = (e.monad.clone(), e.comonad.clone(), e.law.clone());
    let t_mor = e.monad.clone();
    let cat = e.category();
    let functor = Functor::new(
        format!("{}̂", e.monad.name),
        comodules.clone(),
        comodules.clone(),
        move |x: &Structured<C::Obj, C::Mor>| {
            let a = &x.carrier;
            let t_theta = t.functor.map(a, &g.ob(a), &x.structure);
            Structured::new(t.ob(a), cat.compose(&lam.at(a), &t_theta))
        },
        move |x, y, f| t_mor.functor.map(&x.carrier, &y.carrier, f),
    );
    let (m, u) = (e.monad.mult.clone(), e.monad.unit.clone());
    let mult = Nat::new("m̂", functor.then(&functor), functor.clone(), move |x| m.at(&x.carrier));
    let unit = Nat::new("ê", Functor::identity(comodules), functor.clone(), move |x| u.at(&x.carrier));
    Monad { name: functor.name.clone(), functor, mult, unit }
}

/// `T = M × −`, `G = C × −` for an `M`-set `C`, and `λ(m, c, x) = (m·c, m, x)`.
pub fn canonical_entwining(action: &ActionTable, cat: Arc<FinSet>) -> Entwining<FinSet> {
    let monad = product_monad(action.monoid(), cat.clone());
    let comonad = product_comonad(action.size(), cat);
    let (k, c) = (action.monoid().order(), action.size());
    let act = action.clone();
    let law = Nat::new("λ", comonad.functor.then(&monad.functor), monad.functor.then(&comonad.functor), move |&n| {
        FnEnc::from_fn(k * c * n, c * k * n, |p| {
            let (m, rest) = (p / (c * n), p % (c * n));
            let (ci, x) = (rest / n, rest % n);
            (act.act(m, ci) * k + m) * n + x
        })
    });
    Entwining { monad, comonad, law }
}
