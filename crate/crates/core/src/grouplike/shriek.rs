use std::sync::Arc;

use rayon::prelude::*;

use super::equaliser::EqualiserMonad;
use crate::fincat::{
    check_adjunction, check_natural, functors_agree, Adjunction, Category, Coequalisers, Functor, Nat, StructuralError,
    Verdict, Witness,
};
use crate::monadics::{Modules, Monad, Structured};

type Sobj<C> = Structured<<C as Category>::Obj, <C as Category>::Mor>;

/// `(i_F)_!(a, h)` as the coequaliser `q: F a -> L` of `F h` and `m_a·F(i_a)`, with its action on `L`.
pub struct Presentation<C: Category> {
    pub apex: C::Obj,
    pub quotient: C::Mor,
    pub action: C::Mor,
}

struct Presenter<C: Category> {
    cat: Arc<C>,
    monad: Monad<C>,
    inclusion: Nat<C, C>,
    large: Arc<Modules<C>>,
}

impl<C: Coequalisers> Presenter<C> {
    fn present(&self, x: &Sobj<C>) -> Result<Presentation<C>, StructuralError> {
        let (cat, f) = (&self.cat, &self.monad);
        let a = &x.carrier;
        let fga = self.inclusion.src.ob(a);
        let (fa, ffga) = (f.ob(a), f.ob(&fga));
        let f_h = f.functor.map(&fga, a, &x.structure);
        let mult = f.mult.at(a);
        let other = cat.compose(&mult, &f.functor.map(&fga, &fa, &self.inclusion.at(a)));
        let (apex, quotient) = cat.coequaliser(&ffga, &fa, &f_h, &other);
        let section = cat
            .section(&fa, &apex, &quotient)
            .ok_or_else(|| StructuralError::Precondition(format!("quotient at {} does not split", cat.describe(a))))?;
        // The action is the unique ρ with ρ·F(q) = q·m, when F(q) is epi.
        let action = cat.compose(&quotient, &cat.compose(&mult, &f.functor.map(&apex, &fa, &section)));
        let f_q = f.functor.map(&fa, &apex, &quotient);
        if cat.compose(&action, &f_q) != cat.compose(&quotient, &mult) {
            return Err(StructuralError::Precondition(format!(
                "F does not preserve the coequaliser at {}",
                cat.describe(a)
            )));
        }
        if !self.large.is_action(&apex, &action) {
            return Err(StructuralError::Precondition(format!("induced action at {} is unlawful", cat.describe(a))));
        }
        Ok(Presentation { apex, quotient, action })
    }
}

/// `(i_F)_! ⊣ (i_F)^*` between modules over `F^g` and over `F`.
pub struct ShriekAdjoint<C: Category> {
    pub small: Arc<Modules<C>>,
    pub large: Arc<Modules<C>>,
    pub adjunction: Adjunction<Modules<C>, Modules<C>>,
    pub laws: Verdict,
    /// `κ: (i_F)_!φ_{F^g} => φ_F`, induced by `m_a·F(i_a)`.
    pub kappa: Nat<C, Modules<C>>,
    /// `κ` is natural and invertible.
    pub split: Verdict,
    /// `(i_F)_!φ_{F^g} = φ_F` on the nose.
    pub split_exact: Verdict,
    presenter: Arc<Presenter<C>>,
}

impl<C: Coequalisers> ShriekAdjoint<C> {
    pub fn present(&self, x: &Sobj<C>) -> Presentation<C> {
        self.presenter.present(x).expect("presentable module")
    }

    pub fn restriction(&self) -> Functor<Modules<C>, Modules<C>> {
        self.adjunction.right.clone()
    }

    pub fn shriek(&self) -> Functor<Modules<C>, Modules<C>> {
        self.adjunction.left.clone()
    }
}

pub fn shriek_adjoint<C: Coequalisers>(eq: &EqualiserMonad<C>) -> Result<ShriekAdjoint<C>, StructuralError> {
    let f = eq.inclusion.tgt.clone();
    let cat = f.category();
    let small = Arc::new(Modules::new(eq.monad.clone()));
    let large = Arc::new(Modules::new(f.clone()));
    let presenter = Arc::new(Presenter {
        cat: cat.clone(),
        monad: f.clone(),
        inclusion: eq.inclusion.carrier.clone(),
        large: large.clone(),
    });
    let free_small = small.free();
    let mut probes = small.objects();
    probes.extend(cat.objects().iter().map(|a| free_small.ob(a)));
    probes.par_iter().try_for_each(|x| presenter.present(x).map(|_| ()))?;

    let present = {
        let p = presenter.clone();
        move |x: &Sobj<C>| p.present(x).expect("presentable module")
    };
    let shriek = {
        let (on_obj, on_mor, cat, f) = (present.clone(), present.clone(), cat.clone(), f.clone());
        Functor::new(
            "(i_F)_!",
            small.clone(),
            large.clone(),
            move |x| {
                let p = on_obj(x);
                Structured::new(p.apex, p.action)
            },
            move |x, y, m| {
                let (qx, qy) = (on_mor(x).quotient, on_mor(y).quotient);
                cat.factor_through_coequaliser(&qx, &cat.compose(&qy, &f.functor.map(&x.carrier, &y.carrier, m)))
            },
        )
    };
    let restriction = {
        let (cat, i) = (cat.clone(), eq.inclusion.carrier.clone());
        Functor::new(
            "(i_F)^*",
            large.clone(),
            small.clone(),
            move |y: &Sobj<C>| Structured::new(y.carrier.clone(), cat.compose(&y.structure, &i.at(&y.carrier))),
            |_, _, m: &C::Mor| m.clone(),
        )
    };
    let unit = {
        let (present, cat, f) = (present.clone(), cat.clone(), f.clone());
        Nat::new("η", Functor::identity(small.clone()), shriek.then(&restriction), move |x| {
            cat.compose(&present(x).quotient, &f.unit.at(&x.carrier))
        })
    };
    let counit = {
        let (present, cat, restriction) = (present.clone(), cat.clone(), restriction.clone());
        Nat::new("ε", restriction.then(&shriek), Functor::identity(large.clone()), move |y| {
            let q = present(&restriction.ob(y)).quotient;
            cat.factor_through_coequaliser(&q, &y.structure)
        })
    };
    let adjunction = Adjunction::new(shriek.clone(), restriction, unit, counit);
    let laws = check_adjunction(&adjunction)?;

    let via_small = free_small.then(&shriek);
    let kappa = {
        let (present, cat, f, i, free_small) =
            (present.clone(), cat.clone(), f.clone(), eq.inclusion.carrier.clone(), free_small.clone());
        Nat::new("κ", via_small.clone(), large.free(), move |a| {
            let q = present(&free_small.ob(a)).quotient;
            let fga = i.src.ob(a);
            let through = cat.compose(&f.mult.at(a), &f.functor.map(&fga, &f.ob(a), &i.at(a)));
            cat.factor_through_coequaliser(&q, &through)
        })
    };
    let invertible = cat
        .objects()
        .into_par_iter()
        .find_map_first(|a| {
            let k = kappa.at(&a);
            let (s, t) = (kappa.src.ob(&a), kappa.tgt.ob(&a));
            (!large.is_iso(&s, &t, &k))
                .then(|| Witness::new("κ invertible", cat.describe(&a)).with_data(cat.encode(&k)))
        })
        .map_or_else(Verdict::pass, Verdict::fail);
    let split = check_natural(&kappa)?.and_then(|| invertible);
    let split_exact = functors_agree("(i_F)_!φ_{F^g} = φ_F", &via_small, &large.free());
    Ok(ShriekAdjoint { small, large, adjunction, laws, kappa, split, split_exact, presenter })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entwining::{canonical_entwining, Entwining};
    use crate::finset::{ActionTable, FinSet, MonoidTable};
    use crate::grouplike::{equaliser_monad, point_grouplike, Grouplike};

    fn shriek_for(action: &ActionTable, n: usize) -> ShriekAdjoint<FinSet> {
        let s = Arc::new(FinSet::up_to(n));
        let eq =
            equaliser_monad(&point_grouplike(action.size(), 0, s.clone()), &canonical_entwining(action, s)).unwrap();
        shriek_adjoint(&eq).unwrap()
    }

    #[test]
    fn adjunction_and_split_identity() {
        let z2 = MonoidTable::cyclic(2);
        for action in
            [ActionTable::regular(&z2), ActionTable::regular(&MonoidTable::idem2()), ActionTable::trivial(&z2, 2)]
        {
            let sh = shriek_for(&action, 2);
            assert!(sh.laws.is_pass() && sh.split.is_pass(), "{action:?}");
        }
    }

    #[test]
    fn trivial_stabiliser_gives_free_functor() {
        let sh = shriek_for(&ActionTable::regular(&MonoidTable::cyclic(2)), 2);
        assert!(sh.split_exact.is_pass());
        // F^g = Id: every F^g-module is trivial and (i_F)_! is the free functor.
        for x in sh.small.objects() {
            assert_eq!(sh.shriek().ob(&x), sh.large.free().ob(&x.carrier));
        }
    }

    #[test]
    fn full_stabiliser_gives_identity_like_base_change() {
        let sh = shriek_for(&ActionTable::trivial(&MonoidTable::cyclic(2), 2), 2);
        // F^g = F: (i_F)_! and (i_F)^* are mutually inverse up to the unit.
        for x in sh.small.objects() {
            let y = sh.shriek().ob(&x);
            assert_eq!(y.carrier, x.carrier);
            assert!(sh.small.is_iso(&x, &sh.restriction().ob(&y), &sh.adjunction.unit.at(&x)));
        }
    }

    #[test]
    fn mutated_quotient_breaks_the_triangles() {
        let sh = shriek_for(&ActionTable::regular(&MonoidTable::cyclic(2)), 2);
        let x = sh.small.objects().into_iter().find(|x| x.carrier == 2).unwrap();
        let q = sh.adjunction.unit.at(&x);
        let swapped = crate::finset::FnEnc::from_fn(2, q.cod(), |i| q.at(1 - i));
        let bad = sh.adjunction.with_unit(sh.adjunction.unit.with_mutated_component(x, swapped));
        assert!(!check_adjunction(&bad).unwrap().is_pass());
    }

    #[test]
    fn identity_setting() {
        let s = Arc::new(FinSet::up_to(3));
        let e = Entwining::trivial(s.clone());
        let g = Grouplike { comonad: e.comonad.clone(), carrier: Nat::identity(&Functor::identity(s)) };
        let sh = shriek_adjoint(&equaliser_monad(&g, &e).unwrap()).unwrap();
        assert!(sh.laws.is_pass() && sh.split_exact.is_pass());
    }
}
