use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use super::monad::{Comonad, Monad};
use crate::fincat::{Adjunction, Category, Functor, Nat, StructuralError};

/// A carrier with a structure map: an action `T a -> a` or a coaction `a -> G a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Structured<O, M> {
    pub carrier: O,
    pub structure: M,
}

impl<O, M> Structured<O, M> {
    pub fn new(carrier: O, structure: M) -> Self {
        Structured { carrier, structure }
    }
}

/// Eilenberg–Moore category of modules over a monad. Every action on an
/// enumerated carrier is listed, so objects are not deduplicated up to iso.
pub struct Modules<C: Category> {
    pub monad: Monad<C>,
    objects: OnceLock<Vec<Structured<C::Obj, C::Mor>>>,
}

/// Eilenberg–Moore category of comodules over a comonad.
pub struct Comodules<C: Category> {
    pub comonad: Comonad<C>,
    objects: OnceLock<Vec<Structured<C::Obj, C::Mor>>>,
}

impl<C: Category> Modules<C> {
    pub fn new(monad: Monad<C>) -> Self {
        Modules { monad, objects: OnceLock::new() }
    }

    pub fn base(&self) -> Arc<C> {
        self.monad.category()
    }

    /// Unit and associativity of `h: T a -> a`.
    pub fn is_action(&self, a: &C::Obj, h: &C::Mor) -> bool {
        let base = self.base();
        let t = &self.monad.functor;
        let ta = t.ob(a);
        if !base.contains(&ta, a, h) || base.compose(h, &self.monad.unit.at(a)) != base.identity(a) {
            return false;
        }
        base.compose(h, &t.map(&ta, a, h)) == base.compose(h, &self.monad.mult.at(a))
    }

    /// All actions on `a`: retractions of the unit filtered by associativity.
    pub fn actions_on(&self, a: &C::Obj) -> Vec<C::Mor> {
        let base = self.base();
        let ta = self.monad.ob(a);
        let t = &self.monad.functor;
        let m_a = self.monad.mult.at(a);
        base.retractions(a, &ta, &self.monad.unit.at(a))
            .into_iter()
            .filter(|h| base.compose(h, &t.map(&ta, a, h)) == base.compose(h, &m_a))
            .collect()
    }

    pub fn is_hom(&self, x: &Structured<C::Obj, C::Mor>, y: &Structured<C::Obj, C::Mor>, f: &C::Mor) -> bool {
        let base = self.base();
        let tf = self.monad.functor.map(&x.carrier, &y.carrier, f);
        base.contains(&x.carrier, &y.carrier, f) && base.compose(f, &x.structure) == base.compose(&y.structure, &tf)
    }

    /// `φ_T`: `a ↦ (T a, m_a)`.
    pub fn free(self: &Arc<Self>) -> Functor<C, Modules<C>> {
        let (t, t2) = (self.monad.clone(), self.monad.clone());
        Functor::new(
            format!("φ_{}", self.monad.name),
            self.base(),
            self.clone(),
            move |a| Structured::new(t.ob(a), t.mult.at(a)),
            move |a, b, f| t2.functor.map(a, b, f),
        )
    }

    pub fn forgetful(self: &Arc<Self>) -> Functor<Modules<C>, C> {
        Functor::new(
            format!("U_{}", self.monad.name),
            self.clone(),
            self.base(),
            |x: &Structured<C::Obj, C::Mor>| x.carrier.clone(),
            |_, _, f| f.clone(),
        )
    }

    /// `φ_T ⊣ U_T` with unit `e` and counit the action.
    pub fn adjunction(self: &Arc<Self>) -> Adjunction<C, Modules<C>> {
        let (free, forget) = (self.free(), self.forgetful());
        let monad = self.monad.clone();
        let unit = Nat::new("e", Functor::identity(self.base()), free.then(&forget), move |a| monad.unit.at(a));
        let counit =
            Nat::new("ε_T", forget.then(&free), Functor::identity(self.clone()), |x: &Structured<C::Obj, C::Mor>| {
                x.structure.clone()
            });
        Adjunction::new(free, forget, unit, counit)
    }
}

impl<C: Category> Comodules<C> {
    pub fn new(comonad: Comonad<C>) -> Self {
        Comodules { comonad, objects: OnceLock::new() }
    }

    pub fn base(&self) -> Arc<C> {
        self.comonad.category()
    }

    pub fn is_coaction(&self, a: &C::Obj, theta: &C::Mor) -> bool {
        let base = self.base();
        let g = &self.comonad.functor;
        let ga = g.ob(a);
        base.contains(a, &ga, theta)
            && base.compose(&self.comonad.counit.at(a), theta) == base.identity(a)
            && base.compose(&g.map(a, &ga, theta), theta) == base.compose(&self.comonad.comult.at(a), theta)
    }

    /// All coactions on `a`: sections of the counit filtered by coassociativity.
    pub fn coactions_on(&self, a: &C::Obj) -> Vec<C::Mor> {
        let base = self.base();
        let g = &self.comonad.functor;
        let ga = g.ob(a);
        let d_a = self.comonad.comult.at(a);
        base.sections(&ga, a, &self.comonad.counit.at(a))
            .into_iter()
            .filter(|th| base.compose(&g.map(a, &ga, th), th) == base.compose(&d_a, th))
            .collect()
    }

    pub fn is_hom(&self, x: &Structured<C::Obj, C::Mor>, y: &Structured<C::Obj, C::Mor>, f: &C::Mor) -> bool {
        let base = self.base();
        let gf = self.comonad.functor.map(&x.carrier, &y.carrier, f);
        base.contains(&x.carrier, &y.carrier, f) && base.compose(&y.structure, f) == base.compose(&gf, &x.structure)
    }

    /// `φ^G`: `a ↦ (G a, δ_a)`.
    pub fn cofree(self: &Arc<Self>) -> Functor<C, Comodules<C>> {
        let (g, g2) = (self.comonad.clone(), self.comonad.clone());
        Functor::new(
            format!("φ^{}", self.comonad.name),
            self.base(),
            self.clone(),
            move |a| Structured::new(g.ob(a), g.comult.at(a)),
            move |a, b, f| g2.functor.map(a, b, f),
        )
    }

    pub fn forgetful(self: &Arc<Self>) -> Functor<Comodules<C>, C> {
        Functor::new(
            format!("U^{}", self.comonad.name),
            self.clone(),
            self.base(),
            |x: &Structured<C::Obj, C::Mor>| x.carrier.clone(),
            |_, _, f| f.clone(),
        )
    }

    /// `U^G ⊣ φ^G` with unit the coaction and counit `ε`.
    pub fn adjunction(self: &Arc<Self>) -> Adjunction<Comodules<C>, C> {
        let (cofree, forget) = (self.cofree(), self.forgetful());
        let comonad = self.comonad.clone();
        let unit = Nat::new(
            "η^G",
            Functor::identity(self.clone()),
            forget.then(&cofree),
            |x: &Structured<C::Obj, C::Mor>| x.structure.clone(),
        );
        let counit =
            Nat::new("ε", cofree.then(&forget), Functor::identity(self.base()), move |a| comonad.counit.at(a));
        Adjunction::new(forget, cofree, unit, counit)
    }
}

macro_rules! em_category {
    ($ty:ident, $structures:ident, $label:literal, $field:ident) => {
        impl<C: Category> Category for $ty<C> {
            type Obj = Structured<C::Obj, C::Mor>;
            type Mor = C::Mor;

            fn name(&self) -> String {
                format!("{}({})", $label, self.$field.name)
            }

            fn objects(&self) -> Vec<Self::Obj> {
                self.objects
                    .get_or_init(|| {
                        let base = self.base();
                        let per_carrier: Vec<Vec<Self::Obj>> = base
                            .objects()
                            .par_iter()
                            .map(|a| self.$structures(a).into_iter().map(|h| Structured::new(a.clone(), h)).collect())
                            .collect();
                        per_carrier.into_iter().flatten().collect()
                    })
                    .clone()
            }

            fn hom(&self, x: &Self::Obj, y: &Self::Obj) -> Vec<C::Mor> {
                self.base().hom(&x.carrier, &y.carrier).into_iter().filter(|f| self.is_hom(x, y, f)).collect()
            }

            fn compose(&self, g: &C::Mor, f: &C::Mor) -> C::Mor {
                self.base().compose(g, f)
            }

            fn identity(&self, x: &Self::Obj) -> C::Mor {
                self.base().identity(&x.carrier)
            }

            fn contains(&self, x: &Self::Obj, y: &Self::Obj, f: &C::Mor) -> bool {
                self.is_hom(x, y, f)
            }

            fn size(&self, x: &Self::Obj) -> usize {
                self.base().size(&x.carrier)
            }

            /// Structures transport along isomorphisms of carriers.
            fn complete_up_to(&self) -> Option<usize> {
                self.base().complete_up_to()
            }

            fn encode(&self, f: &C::Mor) -> Vec<u32> {
                self.base().encode(f)
            }

            fn describe(&self, x: &Self::Obj) -> String {
                let base = self.base();
                format!("({}, {:?})", base.describe(&x.carrier), base.encode(&x.structure))
            }

            fn retractions(&self, x: &Self::Obj, y: &Self::Obj, f: &C::Mor) -> Vec<C::Mor> {
                self.base()
                    .retractions(&x.carrier, &y.carrier, f)
                    .into_iter()
                    .filter(|r| self.is_hom(y, x, r))
                    .collect()
            }

            fn sections(&self, x: &Self::Obj, y: &Self::Obj, f: &C::Mor) -> Vec<C::Mor> {
                self.base().sections(&x.carrier, &y.carrier, f).into_iter().filter(|s| self.is_hom(y, x, s)).collect()
            }

            /// The inverse of a structure-preserving bijection is structure-preserving.
            fn inverse(&self, x: &Self::Obj, y: &Self::Obj, f: &C::Mor) -> Option<C::Mor> {
                self.base().inverse(&x.carrier, &y.carrier, f)
            }

            fn is_iso(&self, x: &Self::Obj, y: &Self::Obj, f: &C::Mor) -> bool {
                self.base().is_iso(&x.carrier, &y.carrier, f)
            }
        }
    };
}

em_category!(Modules, actions_on, "Mod", monad);
em_category!(Comodules, coactions_on, "Comod", comonad);

/// Builds the category of modules, refusing monads whose free objects outgrow `extended_budget`.
pub fn build_modules<C: Category>(monad: Monad<C>, extended_budget: usize) -> Result<Arc<Modules<C>>, StructuralError> {
    check_free_sizes(monad.category().as_ref(), |a| monad.ob(a), extended_budget)?;
    Ok(Arc::new(Modules::new(monad)))
}

pub fn build_comodules<C: Category>(
    comonad: Comonad<C>,
    extended_budget: usize,
) -> Result<Arc<Comodules<C>>, StructuralError> {
    check_free_sizes(comonad.category().as_ref(), |a| comonad.ob(a), extended_budget)?;
    Ok(Arc::new(Comodules::new(comonad)))
}

fn check_free_sizes<C: Category>(
    base: &C,
    image: impl Fn(&C::Obj) -> C::Obj,
    budget: usize,
) -> Result<(), StructuralError> {
    match base.objects().iter().map(|a| base.size(&image(a))).max() {
        Some(needed) if needed > budget => Err(StructuralError::OutOfBudget { needed, budget }),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{
        check_adjunction, check_category, equivalence_verdict, functor_properties, tabulate, EquivalenceMode,
    };
    use crate::finset::{FinSet, MonoidTable};
    use crate::monadics::monad::{product_comonad, product_monad};

    #[test]
    fn involutions_count_group_actions() {
        let m = Modules::new(product_monad(&MonoidTable::cyclic(2), Arc::new(FinSet::up_to(4))));
        let counts: Vec<usize> = (0..=4).map(|n| m.actions_on(&n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 10]);
    }

    #[test]
    fn free_forgetful_adjunction() {
        let m = Arc::new(Modules::new(product_monad(&MonoidTable::cyclic(2), Arc::new(FinSet::up_to(2)))));
        let adj = m.adjunction();
        assert!(check_adjunction(&adj).unwrap().is_pass());
        assert!(functor_properties(&m.forgetful()).faithful);
        let table = tabulate(m.as_ref());
        assert!(check_category(&table.table).unwrap().is_pass());
    }

    #[test]
    fn cofree_adjunction() {
        let c = Arc::new(Comodules::new(product_comonad(2, Arc::new(FinSet::up_to(2)))));
        // Coactions on n are the maps n -> 2.
        assert_eq!(c.coactions_on(&2).len(), 4);
        assert!(check_adjunction(&c.adjunction()).unwrap().is_pass());
    }

    #[test]
    fn trivial_monads_give_the_base() {
        let base = Arc::new(FinSet::up_to(3));
        let m = Arc::new(Modules::new(Monad::identity(base.clone())));
        let embed = Functor::new(
            "J",
            base.clone(),
            m.clone(),
            |&a| Structured::new(a, crate::finset::FnEnc::identity(a)),
            |_, _, f| f.clone(),
        );
        assert!(equivalence_verdict(&embed, EquivalenceMode::Direct { budget: 3 }).is_pass());
        let c = Arc::new(Comodules::new(product_comonad(1, base.clone())));
        assert!(equivalence_verdict(&c.cofree(), EquivalenceMode::Direct { budget: 3 }).is_pass());
    }

    #[test]
    fn oversized_free_objects_are_refused() {
        let t = product_monad(&MonoidTable::cyclic(3), Arc::new(FinSet::up_to(3)));
        assert!(matches!(build_modules(t.clone(), 8), Err(StructuralError::OutOfBudget { needed: 9, budget: 8 })));
        assert!(build_modules(t, 9).is_ok());
    }
}
