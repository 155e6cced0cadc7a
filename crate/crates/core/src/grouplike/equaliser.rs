use std::sync::Arc;

use rayon::prelude::*;

use super::morphism::{induced_comodules, Grouplike};
use crate::entwining::{check_entwining, Entwining};
use crate::fincat::{nat_equal, Category, Equalisers, Functor, Nat, StructuralError, Verdict, Witness};
use crate::monadics::{check_comonad, check_monad, check_monad_morphism, Monad, MonadMorphism};

/// `F^g`, the pointwise equaliser of `gF` and `λ·Fg`, as a submonad of `F`.
pub struct EqualiserMonad<C: Category> {
    pub monad: Monad<C>,
    /// `i_F: F^g => F`.
    pub inclusion: MonadMorphism<C>,
    /// `gF·i = λ·Fg·i` and `i` is monic at every object.
    pub equalises: Verdict,
    pub laws: Verdict,
    pub morphism: Verdict,
}

impl<C: Category> Clone for EqualiserMonad<C> {
    fn clone(&self) -> Self {
        EqualiserMonad {
            monad: self.monad.clone(),
            inclusion: self.inclusion.clone(),
            equalises: self.equalises.clone(),
            laws: self.laws.clone(),
            morphism: self.morphism.clone(),
        }
    }
}

pub(crate) fn require(v: Verdict, what: &str) -> Result<(), StructuralError> {
    if v.is_pass() {
        Ok(())
    } else {
        Err(StructuralError::Precondition(format!("{what}: {:?}", v.witness)))
    }
}

pub fn equaliser_monad<C: Equalisers>(
    g: &Grouplike<C>,
    e: &Entwining<C>,
) -> Result<EqualiserMonad<C>, StructuralError> {
    require(check_comonad(&g.comonad)?, "G is not a comonad")?;
    require(check_monad(&e.monad)?, "F is not a monad")?;
    require(check_entwining(e)?, "λ is not an entwining")?;
    require(super::check_grouplike(g)?, "g is not grouplike")?;
    let cat = e.category();
    let induced = induced_comodules(g, e)?;

    // (F^g a, i_a)
    let equalise = {
        let (cat, f, plain, twisted) = (cat.clone(), e.monad.clone(), induced.plain.clone(), induced.twisted.clone());
        let gf = e.gt();
        Arc::new(move |a: &C::Obj| {
            let fa = f.ob(a);
            cat.equaliser(&fa, &gf.ob(a), &plain.at(a), &twisted.at(a))
        })
    };

    let functor = {
        let (eq_ob, eq_map, cat, f) = (equalise.clone(), equalise.clone(), cat.clone(), e.monad.clone());
        Functor::new(
            format!("{}^g", e.monad.name),
            cat.clone(),
            cat.clone(),
            move |a| eq_ob(a).0,
            move |a, b, m| {
                let (i_a, i_b) = (eq_map(a).1, eq_map(b).1);
                cat.factor_through_equaliser(&i_b, &cat.compose(&f.functor.map(a, b, m), &i_a))
            },
        )
    };
    let inclusion_nat = {
        let equalise = equalise.clone();
        Nat::new("i_F", functor.clone(), e.monad.functor.clone(), move |a| equalise(a).1)
    };
    let unit = {
        let (equalise, cat, f) = (equalise.clone(), cat.clone(), e.monad.clone());
        Nat::new("e'", Functor::identity(cat.clone()), functor.clone(), move |a| {
            cat.factor_through_equaliser(&equalise(a).1, &f.unit.at(a))
        })
    };
    let mult = {
        let (equalise, cat, f) = (equalise.clone(), cat.clone(), e.monad.clone());
        let ff = functor.then(&functor);
        Nat::new("m'", ff, functor.clone(), move |a| {
            let (fga, i_a) = equalise(a);
            let i_fga = equalise(&fga).1;
            let fa = f.ob(a);
            let through = cat.compose(&f.mult.at(a), &cat.compose(&f.functor.map(&fga, &fa, &i_a), &i_fga));
            cat.factor_through_equaliser(&i_a, &through)
        })
    };
    let monad = Monad { name: functor.name.clone(), functor, mult, unit };
    let inclusion = MonadMorphism { src: monad.clone(), tgt: e.monad.clone(), carrier: inclusion_nat };

    let equalises = {
        let parallel = nat_equal(
            "gF·i = g̃·i",
            &induced.plain.after(&inclusion.carrier),
            &induced.twisted.after(&inclusion.carrier),
        );
        let monic = cat.objects().into_par_iter().find_map_first(|a| {
            let i = inclusion.carrier.at(&a);
            (!cat.is_mono(&monad.ob(&a), &e.monad.ob(&a), &i))
                .then(|| Witness::new("i monic", cat.describe(&a)).with_data(cat.encode(&i)))
        });
        Verdict::all([parallel, monic.map_or_else(Verdict::pass, Verdict::fail)])
    };
    Ok(EqualiserMonad {
        laws: check_monad(&monad)?,
        morphism: check_monad_morphism(&inclusion)?,
        monad,
        inclusion,
        equalises,
    })
}

/// A candidate component `(a, Id a -> F^g a)`, or why none exists at `a`.
type ComponentSearch<C> = Result<(<C as Category>::Obj, <C as Category>::Mor), Witness>;

/// Searches for an isomorphism of monads `Id ≅ F^g`: componentwise isomorphisms
/// compatible with the units, then naturality and the multiplications.
pub fn identity_monad_iso<C: Category>(eq: &EqualiserMonad<C>) -> Verdict {
    let cat = eq.monad.category();
    let fg = &eq.monad;
    let candidates: Vec<ComponentSearch<C>> = cat
        .objects()
        .into_par_iter()
        .map(|a| {
            let fga = fg.ob(&a);
            let unit = fg.unit.at(&a);
            cat.hom(&a, &fga)
                .into_iter()
                .find(|phi| *phi == unit && cat.is_iso(&a, &fga, phi))
                .map(|phi| (a.clone(), phi))
                .ok_or_else(|| Witness::new("unit-preserving iso a ≅ F^g a", cat.describe(&a)))
        })
        .collect();
    let mut components = std::collections::HashMap::new();
    for c in candidates {
        match c {
            Ok((a, phi)) => {
                components.insert(a, phi);
            }
            Err(w) => return Verdict::fail(w),
        }
    }
    let components = Arc::new(components);
    let phi = {
        let (components, fallback) = (components.clone(), fg.unit.clone());
        Nat::new("φ", Functor::identity(cat.clone()), fg.functor.clone(), move |a| {
            components.get(a).cloned().unwrap_or_else(|| fallback.at(a))
        })
    };
    let natural = match crate::fincat::check_natural(&phi) {
        Ok(v) => v,
        Err(err) => return Verdict::fail(Witness::new("φ natural", err.to_string())),
    };
    natural.and_then(|| {
        // m'·(φ ∘ φ) = φ, with φ ∘ φ = F^g(φ)·φ.
        let failure = cat.objects().into_par_iter().find_map_first(|a| {
            let p = phi.at(&a);
            let fga = fg.ob(&a);
            let pp = cat.compose(&fg.functor.map(&a, &fga, &p), &p);
            let lhs = cat.compose(&fg.mult.at(&a), &pp);
            (lhs != p).then(|| Witness::unequal("m'·φφ = φ", cat.describe(&a), cat.encode(&lhs), cat.encode(&p)))
        });
        failure.map_or_else(Verdict::pass, Verdict::fail)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entwining::canonical_entwining;
    use crate::finset::{klein_on_cosets, ActionTable, FinSet, MonoidTable};
    use crate::grouplike::point_grouplike;

    fn setting(action: &ActionTable, point: usize, n: usize) -> (Grouplike<FinSet>, Entwining<FinSet>) {
        let s = Arc::new(FinSet::up_to(n));
        (point_grouplike(action.size(), point, s.clone()), canonical_entwining(action, s))
    }

    #[test]
    fn carrier_is_stabiliser_times_x() {
        let actions = [
            (ActionTable::regular(&MonoidTable::cyclic(2)), 0),
            (ActionTable::regular(&MonoidTable::idem2()), 0),
            (ActionTable::regular(&MonoidTable::idem2()), 1),
            (ActionTable::trivial(&MonoidTable::cyclic(2), 2), 0),
            (klein_on_cosets(), 0),
        ];
        for (action, c0) in actions {
            let (g, e) = setting(&action, c0, 2);
            let eq = equaliser_monad(&g, &e).unwrap();
            assert!(eq.equalises.is_pass() && eq.laws.is_pass() && eq.morphism.is_pass());
            let stab = action.stabilizer(c0);
            for n in 0..=2 {
                assert_eq!(eq.monad.ob(&n), stab.len() * n, "{action:?} at {c0}");
                // Oracle: pairs (m, x) with m·c₀ = c₀, in row-major order.
                let expected: Vec<u32> = stab.iter().flat_map(|&m| (0..n).map(move |x| (m * n + x) as u32)).collect();
                assert_eq!(eq.inclusion.carrier.at(&n).values(), expected.as_slice());
            }
        }
    }

    #[test]
    fn identity_iso_iff_trivial_stabiliser() {
        let z2 = MonoidTable::cyclic(2);
        for (action, expected) in [
            (ActionTable::regular(&z2), true),
            (ActionTable::regular(&MonoidTable::idem2()), true),
            (ActionTable::trivial(&z2, 2), false),
        ] {
            let (g, e) = setting(&action, 0, 2);
            let eq = equaliser_monad(&g, &e).unwrap();
            assert_eq!(identity_monad_iso(&eq).is_pass(), expected, "{action:?}");
        }
    }

    #[test]
    fn trivial_entwining_gives_identity() {
        let s = Arc::new(FinSet::up_to(3));
        let e = Entwining::trivial(s.clone());
        let g = Grouplike { comonad: e.comonad.clone(), carrier: Nat::identity(&Functor::identity(s)) };
        let eq = equaliser_monad(&g, &e).unwrap();
        assert!(identity_monad_iso(&eq).is_pass());
    }
}
