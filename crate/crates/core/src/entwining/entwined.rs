use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use super::law::{lift_comonad, lift_monad, Entwining};
use crate::fincat::{check_category_isomorphism, Category, CheckResult, Functor};
use crate::monadics::{Comodules, Modules, Structured};

/// An object carrying an action and a coaction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Entwined<O, M> {
    pub carrier: O,
    pub action: M,
    pub coaction: M,
}

type Obj<C> = Entwined<<C as Category>::Obj, <C as Category>::Mor>;

/// Triples `(a, h, θ)` with `θ·h = G(h)·λ_a·T(θ)`.
pub struct EntwinedCategory<C: Category> {
    pub entwining: Entwining<C>,
    modules: Arc<Modules<C>>,
    comodules: Arc<Comodules<C>>,
    objects: OnceLock<Vec<Obj<C>>>,
}

impl<C: Category> EntwinedCategory<C> {
    pub fn new(entwining: Entwining<C>) -> Self {
        let modules = Arc::new(Modules::new(entwining.monad.clone()));
        let comodules = Arc::new(Comodules::new(entwining.comonad.clone()));
        EntwinedCategory { entwining, modules, comodules, objects: OnceLock::new() }
    }

    pub fn modules(&self) -> Arc<Modules<C>> {
        self.modules.clone()
    }

    pub fn comodules(&self) -> Arc<Comodules<C>> {
        self.comodules.clone()
    }

    /// The compatibility square between the action and the coaction.
    pub fn compatible(&self, a: &C::Obj, h: &C::Mor, theta: &C::Mor) -> bool {
        let e = &self.entwining;
        let cat = e.category();
        let (ta, ga) = (e.monad.ob(a), e.comonad.ob(a));
        let lhs = cat.compose(theta, h);
        let t_theta = e.monad.functor.map(a, &ga, theta);
        let g_h = e.comonad.functor.map(&ta, a, h);
        lhs == cat.compose(&g_h, &cat.compose(&e.law.at(a), &t_theta))
    }

    pub fn is_object(&self, x: &Obj<C>) -> bool {
        self.modules.is_action(&x.carrier, &x.action)
            && self.comodules.is_coaction(&x.carrier, &x.coaction)
            && self.compatible(&x.carrier, &x.action, &x.coaction)
    }

    fn is_hom(&self, x: &Obj<C>, y: &Obj<C>, f: &C::Mor) -> bool {
        self.modules.is_hom(&module_part(x), &module_part(y), f)
            && self.comodules.is_hom(&comodule_part(x), &comodule_part(y), f)
    }

    pub fn to_modules(self: &Arc<Self>) -> Functor<EntwinedCategory<C>, Modules<C>> {
        Functor::new("U^G", self.clone(), self.modules(), module_part, |_, _, f| f.clone())
    }

    pub fn to_comodules(self: &Arc<Self>) -> Functor<EntwinedCategory<C>, Comodules<C>> {
        Functor::new("U_T", self.clone(), self.comodules(), comodule_part, |_, _, f| f.clone())
    }
}

fn module_part<O: Clone, M: Clone>(x: &Entwined<O, M>) -> Structured<O, M> {
    Structured::new(x.carrier.clone(), x.action.clone())
}

fn comodule_part<O: Clone, M: Clone>(x: &Entwined<O, M>) -> Structured<O, M> {
    Structured::new(x.carrier.clone(), x.coaction.clone())
}

impl<C: Category> Category for EntwinedCategory<C> {
    type Obj = Obj<C>;
    type Mor = C::Mor;

    fn name(&self) -> String {
        format!("Entwined({})", self.entwining.law.name)
    }

    fn objects(&self) -> Vec<Obj<C>> {
        self.objects
            .get_or_init(|| {
                let base = self.entwining.category();
                let per_carrier: Vec<Vec<Obj<C>>> = base
                    .objects()
                    .par_iter()
                    .map(|a| {
                        let coactions = self.comodules.coactions_on(a);
                        self.modules
                            .actions_on(a)
                            .into_iter()
                            .flat_map(|h| {
                                coactions
                                    .iter()
                                    .filter(|th| self.compatible(a, &h, th))
                                    .map(|th| Entwined { carrier: a.clone(), action: h.clone(), coaction: th.clone() })
                                    .collect::<Vec<_>>()
                            })
                            .collect()
                    })
                    .collect();
                per_carrier.into_iter().flatten().collect()
            })
            .clone()
    }

    fn hom(&self, x: &Obj<C>, y: &Obj<C>) -> Vec<C::Mor> {
        self.modules.hom(&module_part(x), &module_part(y)).into_iter().filter(|f| self.is_hom(x, y, f)).collect()
    }

    fn compose(&self, g: &C::Mor, f: &C::Mor) -> C::Mor {
        self.entwining.category().compose(g, f)
    }

    fn identity(&self, x: &Obj<C>) -> C::Mor {
        self.entwining.category().identity(&x.carrier)
    }

    fn contains(&self, x: &Obj<C>, y: &Obj<C>, f: &C::Mor) -> bool {
        self.is_hom(x, y, f)
    }

    fn size(&self, x: &Obj<C>) -> usize {
        self.entwining.category().size(&x.carrier)
    }

    fn complete_up_to(&self) -> Option<usize> {
        self.entwining.category().complete_up_to()
    }

    fn encode(&self, f: &C::Mor) -> Vec<u32> {
        self.entwining.category().encode(f)
    }

    fn describe(&self, x: &Obj<C>) -> String {
        let base = self.entwining.category();
        format!("({}, {:?}, {:?})", base.describe(&x.carrier), base.encode(&x.action), base.encode(&x.coaction))
    }

    fn inverse(&self, x: &Obj<C>, y: &Obj<C>, f: &C::Mor) -> Option<C::Mor> {
        self.entwining.category().inverse(&x.carrier, &y.carrier, f)
    }

    fn is_iso(&self, x: &Obj<C>, y: &Obj<C>, f: &C::Mor) -> bool {
        self.entwining.category().is_iso(&x.carrier, &y.carrier, f)
    }
}

/// Comodules over the lifted comonad on modules.
pub type ComodulesOfModules<C> = Comodules<Modules<C>>;
/// Modules over the lifted monad on comodules.
pub type ModulesOfComodules<C> = Modules<Comodules<C>>;

/// A pair of mutually inverse functors between the entwined category and another presentation.
pub type Translation<C, P> = (Functor<EntwinedCategory<C>, P>, Functor<P, EntwinedCategory<C>>);

/// The three presentations of entwined modules with explicit isomorphisms between them.
pub struct EntwinedPresentations<C: Category> {
    pub entwined: Arc<EntwinedCategory<C>>,
    pub comodules_of_modules: Arc<ComodulesOfModules<C>>,
    pub modules_of_comodules: Arc<ModulesOfComodules<C>>,
}

impl<C: Category> EntwinedPresentations<C> {
    pub fn new(entwining: &Entwining<C>) -> Self {
        let entwined = Arc::new(EntwinedCategory::new(entwining.clone()));
        let ghat = lift_comonad(entwining, entwined.modules());
        let that = lift_monad(entwining, entwined.comodules());
        EntwinedPresentations {
            comodules_of_modules: Arc::new(Comodules::new(ghat)),
            modules_of_comodules: Arc::new(Modules::new(that)),
            entwined,
        }
    }

    /// `(a, h, θ) ↦ ((a, h), θ)` and back.
    pub fn via_modules(&self) -> Translation<C, ComodulesOfModules<C>> {
        let there = Functor::new(
            "((a,h),θ)",
            self.entwined.clone(),
            self.comodules_of_modules.clone(),
            |x: &Obj<C>| Structured::new(module_part(x), x.coaction.clone()),
            |_, _, f| f.clone(),
        );
        let back = Functor::new(
            "(a,h,θ)",
            self.comodules_of_modules.clone(),
            self.entwined.clone(),
            |x: &Structured<Structured<C::Obj, C::Mor>, C::Mor>| Entwined {
                carrier: x.carrier.carrier.clone(),
                action: x.carrier.structure.clone(),
                coaction: x.structure.clone(),
            },
            |_, _, f| f.clone(),
        );
        (there, back)
    }

    /// `(a, h, θ) ↦ ((a, θ), h)` and back.
    pub fn via_comodules(&self) -> Translation<C, ModulesOfComodules<C>> {
        let there = Functor::new(
            "((a,θ),h)",
            self.entwined.clone(),
            self.modules_of_comodules.clone(),
            |x: &Obj<C>| Structured::new(comodule_part(x), x.action.clone()),
            |_, _, f| f.clone(),
        );
        let back = Functor::new(
            "(a,h,θ)",
            self.modules_of_comodules.clone(),
            self.entwined.clone(),
            |x: &Structured<Structured<C::Obj, C::Mor>, C::Mor>| Entwined {
                carrier: x.carrier.carrier.clone(),
                action: x.structure.clone(),
                coaction: x.carrier.structure.clone(),
            },
            |_, _, f| f.clone(),
        );
        (there, back)
    }

    /// Both pairs of functors are mutually inverse isomorphisms of categories.
    pub fn check(&self) -> CheckResult {
        let (f, g) = self.via_modules();
        let (h, k) = self.via_comodules();
        check_category_isomorphism(&f, &g)?.and_then_try(|| check_category_isomorphism(&h, &k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entwining::canonical_entwining;
    use crate::finset::{ActionTable, FinSet, MonoidTable};

    #[test]
    fn group_graded_sets_are_entwined_modules() {
        let s = Arc::new(FinSet::up_to(2));
        let e = canonical_entwining(&ActionTable::regular(&MonoidTable::cyclic(2)), s);
        let p = EntwinedPresentations::new(&e);
        // Carrier 2: the free orbit with either labelling of its points.
        let on_two = p.entwined.objects().into_iter().filter(|x| x.carrier == 2).count();
        assert_eq!(on_two, 2);
        // Carrier 1 admits no equivariant label into the free orbit.
        assert!(p.entwined.objects().iter().all(|x| x.carrier != 1));
        assert!(p.check().unwrap().is_pass());
    }

    #[test]
    fn three_presentations_agree_for_a_non_group() {
        let s = Arc::new(FinSet::up_to(2));
        let e = canonical_entwining(&ActionTable::regular(&MonoidTable::idem2()), s);
        assert!(EntwinedPresentations::new(&e).check().unwrap().is_pass());
    }

    #[test]
    fn trivial_entwining_gives_the_base() {
        let s = Arc::new(FinSet::up_to(3));
        let p = EntwinedPresentations::new(&Entwining::trivial(s));
        assert_eq!(p.entwined.objects().len(), 4);
        assert!(p.check().unwrap().is_pass());
    }
}
