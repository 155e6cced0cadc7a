use std::sync::Arc;

use rayon::prelude::*;

use crate::fincat::{check_natural, Adjunction, Category, CheckResult, Functor, Nat, Verdict, Witness};
use crate::finset::{FinSet, FnEnc, MonoidTable};

/// `(T, m, e)` with `m: TT => T` and `e: Id => T`.
pub struct Monad<C: Category> {
    pub name: String,
    pub functor: Functor<C, C>,
    pub mult: Nat<C, C>,
    pub unit: Nat<C, C>,
}

/// `(G, δ, ε)` with `δ: G => GG` and `ε: G => Id`.
pub struct Comonad<C: Category> {
    pub name: String,
    pub functor: Functor<C, C>,
    pub comult: Nat<C, C>,
    pub counit: Nat<C, C>,
}

impl<C: Category> Clone for Monad<C> {
    fn clone(&self) -> Self {
        Monad {
            name: self.name.clone(),
            functor: self.functor.clone(),
            mult: self.mult.clone(),
            unit: self.unit.clone(),
        }
    }
}

impl<C: Category> Clone for Comonad<C> {
    fn clone(&self) -> Self {
        Comonad {
            name: self.name.clone(),
            functor: self.functor.clone(),
            comult: self.comult.clone(),
            counit: self.counit.clone(),
        }
    }
}

impl<C: Category> Monad<C> {
    pub fn category(&self) -> Arc<C> {
        self.functor.src.clone()
    }

    pub fn ob(&self, a: &C::Obj) -> C::Obj {
        self.functor.ob(a)
    }

    pub fn identity(cat: Arc<C>) -> Self {
        let id = Functor::identity(cat);
        let one = Nat::identity(&id);
        Monad { name: "Id".into(), functor: id, mult: one.clone(), unit: one }
    }

    /// The monad `RF` of an adjunction `F ⊣ R`, with `m = RεF` and `e = η`.
    pub fn from_adjunction<B: Category>(adj: &Adjunction<C, B>) -> Self {
        let functor = adj.left.then(&adj.right);
        let mult = adj.counit.right(&adj.left).left(&adj.right).retyped(functor.then(&functor), functor.clone());
        let unit = adj.unit.retyped(Functor::identity(adj.left.src.clone()), functor.clone());
        Monad { name: functor.name.clone(), functor, mult, unit }
    }

    pub fn with_mult(&self, mult: Nat<C, C>) -> Self {
        Monad { mult, ..self.clone() }
    }

    pub fn with_unit(&self, unit: Nat<C, C>) -> Self {
        Monad { unit, ..self.clone() }
    }
}

impl<C: Category> Comonad<C> {
    pub fn category(&self) -> Arc<C> {
        self.functor.src.clone()
    }

    pub fn ob(&self, a: &C::Obj) -> C::Obj {
        self.functor.ob(a)
    }

    pub fn identity(cat: Arc<C>) -> Self {
        let id = Functor::identity(cat);
        let one = Nat::identity(&id);
        Comonad { name: "Id".into(), functor: id, comult: one.clone(), counit: one }
    }

    /// The comonad `FR` of an adjunction `F ⊣ R`, with `δ = FηR` and counit `ε`.
    pub fn from_adjunction<A: Category>(adj: &Adjunction<A, C>) -> Self {
        let functor = adj.right.then(&adj.left);
        let comult = adj.unit.right(&adj.right).left(&adj.left).retyped(functor.clone(), functor.then(&functor));
        let counit = adj.counit.retyped(functor.clone(), Functor::identity(adj.left.tgt.clone()));
        Comonad { name: functor.name.clone(), functor, comult, counit }
    }

    pub fn with_comult(&self, comult: Nat<C, C>) -> Self {
        Comonad { comult, ..self.clone() }
    }

    pub fn with_counit(&self, counit: Nat<C, C>) -> Self {
        Comonad { counit, ..self.clone() }
    }
}

fn first_failure<C: Category>(
    cat: &C,
    objs: &[C::Obj],
    laws: impl Fn(&C::Obj) -> Vec<(&'static str, C::Mor, C::Mor)> + Sync,
) -> Verdict {
    let failure = objs.par_iter().find_map_first(|a| {
        laws(a)
            .into_iter()
            .find(|(_, l, r)| l != r)
            .map(|(law, l, r)| Witness::unequal(law, cat.describe(a), cat.encode(&l), cat.encode(&r)))
    });
    failure.map_or_else(Verdict::pass, Verdict::fail)
}

/// Naturality of `m` and `e`, then associativity and both unit laws at every enumerated object.
/// The functor itself is assumed to have been checked.
pub fn check_monad<C: Category>(monad: &Monad<C>) -> CheckResult {
    let cat = monad.category();
    let t = &monad.functor;
    check_natural(&monad.mult)?.and_then_try(|| check_natural(&monad.unit))?.and_then_try(|| {
        Ok(first_failure(cat.as_ref(), &cat.objects(), |a| {
            let ta = t.ob(a);
            let tta = t.ob(&ta);
            let m_a = monad.mult.at(a);
            let id = cat.identity(&ta);
            vec![
                ("m·Tm = m·mT", cat.compose(&m_a, &t.map(&tta, &ta, &m_a)), cat.compose(&m_a, &monad.mult.at(&ta))),
                ("m·eT = 1", cat.compose(&m_a, &monad.unit.at(&ta)), id.clone()),
                ("m·Te = 1", cat.compose(&m_a, &t.map(a, &ta, &monad.unit.at(a))), id),
            ]
        }))
    })
}

/// Naturality of `δ` and `ε`, then coassociativity and both counit laws.
pub fn check_comonad<C: Category>(comonad: &Comonad<C>) -> CheckResult {
    let cat = comonad.category();
    let g = &comonad.functor;
    check_natural(&comonad.comult)?.and_then_try(|| check_natural(&comonad.counit))?.and_then_try(|| {
        Ok(first_failure(cat.as_ref(), &cat.objects(), |a| {
            let ga = g.ob(a);
            let gga = g.ob(&ga);
            let d_a = comonad.comult.at(a);
            let id = cat.identity(&ga);
            vec![
                ("δG·δ = Gδ·δ", cat.compose(&comonad.comult.at(&ga), &d_a), cat.compose(&g.map(&ga, &gga, &d_a), &d_a)),
                ("εG·δ = 1", cat.compose(&comonad.counit.at(&ga), &d_a), id.clone()),
                ("Gε·δ = 1", cat.compose(&g.map(&ga, a, &comonad.counit.at(a)), &d_a), id),
            ]
        }))
    })
}

/// A natural `t: S => T` between monads.
pub struct MonadMorphism<C: Category> {
    pub src: Monad<C>,
    pub tgt: Monad<C>,
    pub carrier: Nat<C, C>,
}

/// A natural `t: G => G'` between comonads.
pub struct ComonadMorphism<C: Category> {
    pub src: Comonad<C>,
    pub tgt: Comonad<C>,
    pub carrier: Nat<C, C>,
}

impl<C: Category> Clone for MonadMorphism<C> {
    fn clone(&self) -> Self {
        MonadMorphism { src: self.src.clone(), tgt: self.tgt.clone(), carrier: self.carrier.clone() }
    }
}

impl<C: Category> Clone for ComonadMorphism<C> {
    fn clone(&self) -> Self {
        ComonadMorphism { src: self.src.clone(), tgt: self.tgt.clone(), carrier: self.carrier.clone() }
    }
}

/// `t·m = m'·(t∗t)` and `t·e = e'`, with `(t∗t)_a = t_{Ta}·S(t_a)`.
pub fn check_monad_morphism<C: Category>(mm: &MonadMorphism<C>) -> CheckResult {
    let cat = mm.src.category();
    let (s, t) = (&mm.src, &mm.tgt);
    check_natural(&mm.carrier)?.and_then_try(|| {
        Ok(first_failure(cat.as_ref(), &cat.objects(), |a| {
            let (sa, ta) = (s.ob(a), t.ob(a));
            let t_a = mm.carrier.at(a);
            let tt = cat.compose(&mm.carrier.at(&ta), &s.functor.map(&sa, &ta, &t_a));
            vec![
                ("t·m = m'·(t∗t)", cat.compose(&t_a, &s.mult.at(a)), cat.compose(&t.mult.at(a), &tt)),
                ("t·e = e'", cat.compose(&t_a, &s.unit.at(a)), t.unit.at(a)),
            ]
        }))
    })
}

/// `δ'·t = (t∗t)·δ` and `ε'·t = ε`, with `(t∗t)_a = t_{G'a}·G(t_a)`.
pub fn check_comonad_morphism<C: Category>(cm: &ComonadMorphism<C>) -> CheckResult {
    let cat = cm.src.category();
    let (g, h) = (&cm.src, &cm.tgt);
    check_natural(&cm.carrier)?.and_then_try(|| {
        Ok(first_failure(cat.as_ref(), &cat.objects(), |a| {
            let (ga, ha) = (g.ob(a), h.ob(a));
            let t_a = cm.carrier.at(a);
            let tt = cat.compose(&cm.carrier.at(&ha), &g.functor.map(&ga, &ha, &t_a));
            vec![
                ("δ'·t = (t∗t)·δ", cat.compose(&h.comult.at(a), &t_a), cat.compose(&tt, &g.comult.at(a))),
                ("ε'·t = ε", cat.compose(&h.counit.at(a), &t_a), g.counit.at(a)),
            ]
        }))
    })
}

/// `M × −` on finite sets: `(a, b, x) ↦ (ab, x)` and `x ↦ (1, x)`.
pub fn product_monad(monoid: &MonoidTable, cat: Arc<FinSet>) -> Monad<FinSet> {
    let k = monoid.order();
    let functor = left_factor(format!("M{k}×−"), k, cat);
    let table = monoid.clone();
    let mult = Nat::new("m", functor.then(&functor), functor.clone(), move |&n| {
        FnEnc::from_fn(k * k * n, k * n, |p| {
            let (ab, x) = (p / n, p % n);
            table.mul(ab / k, ab % k) * n + x
        })
    });
    let unit = Nat::new("e", Functor::identity(functor.src.clone()), functor.clone(), move |&n| {
        FnEnc::from_fn(n, k * n, |x| x)
    });
    Monad { name: functor.name.clone(), functor, mult, unit }
}

/// `C × −` on finite sets with the diagonal and the projection.
pub fn product_comonad(c: usize, cat: Arc<FinSet>) -> Comonad<FinSet> {
    let functor = left_factor(format!("{c}×−"), c, cat);
    let comult = Nat::new("δ", functor.clone(), functor.then(&functor), move |&n| {
        FnEnc::from_fn(c * n, c * c * n, |p| (p / n * c + p / n) * n + p % n)
    });
    let counit = Nat::new("ε", functor.clone(), Functor::identity(functor.src.clone()), move |&n| {
        FnEnc::from_fn(c * n, n, |p| p % n)
    });
    Comonad { name: functor.name.clone(), functor, comult, counit }
}

/// `k × −` with `k × f` acting on the right factor.
pub(crate) fn left_factor(name: String, k: usize, cat: Arc<FinSet>) -> Functor<FinSet, FinSet> {
    Functor::new(
        name,
        cat.clone(),
        cat,
        move |&n| k * n,
        move |&a, &b, f: &FnEnc| FnEnc::from_fn(k * a, k * b, |p| p / a * b + f.at(p % a)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{check_adjunction, check_functor};

    fn sets(n: usize) -> Arc<FinSet> {
        Arc::new(FinSet::up_to(n))
    }

    #[test]
    fn group_product_monad_is_lawful() {
        let t = product_monad(&MonoidTable::cyclic(2), sets(3));
        assert!(check_functor(&t.functor).unwrap().is_pass());
        assert!(check_monad(&t).unwrap().is_pass());
        assert!(check_monad(&product_monad(&MonoidTable::idem2(), sets(2))).unwrap().is_pass());
    }

    #[test]
    fn diagonal_comonad_is_lawful() {
        for c in 0..=3 {
            assert!(check_comonad(&product_comonad(c, sets(2))).unwrap().is_pass(), "c = {c}");
        }
    }

    #[test]
    fn mutated_multiplication_fails() {
        let t = product_monad(&MonoidTable::cyclic(2), sets(2));
        // m_1 sending (1,1) to 1 instead of 0.
        let bad = t.with_mult(t.mult.with_mutated_component(1, FnEnc::new(vec![0, 1, 1, 1], 2).unwrap()));
        assert!(check_monad(&bad).unwrap().is_fail());
    }

    #[test]
    fn identity_monad_and_comonad() {
        assert!(check_monad(&Monad::identity(sets(2))).unwrap().is_pass());
        assert!(check_comonad(&Comonad::identity(sets(2))).unwrap().is_pass());
    }

    #[test]
    fn identity_adjunction_generates_identities() {
        let s = sets(2);
        let id = Functor::identity(s.clone());
        let one = Nat::identity(&id);
        let adj = Adjunction::new(id.clone(), id, one.clone(), one);
        assert!(check_adjunction(&adj).unwrap().is_pass());
        assert!(check_monad(&Monad::from_adjunction(&adj)).unwrap().is_pass());
        assert!(check_comonad(&Comonad::from_adjunction(&adj)).unwrap().is_pass());
    }
}
