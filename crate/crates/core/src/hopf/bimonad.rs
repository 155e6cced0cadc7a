use std::sync::Arc;

use rayon::prelude::*;

use crate::entwining::{canonical_entwining, check_entwining, Entwining};
use crate::fincat::{functors_agree, Category, CheckResult, Functor, StructuralError, Verdict, Witness};
use crate::finset::{ActionTable, FinSet, MonoidTable};
use crate::monadics::{check_comonad, check_monad, product_comonad, product_monad};

/// A functor `H` carrying a monad `(m, e)`, a comonad `(δ, ε)` and an entwining `λ: HH => HH`.
pub struct Bimonad<C: Category> {
    pub entwining: Entwining<C>,
}

impl<C: Category> Clone for Bimonad<C> {
    fn clone(&self) -> Self {
        Bimonad { entwining: self.entwining.clone() }
    }
}

impl<C: Category> Bimonad<C> {
    pub fn functor(&self) -> &Functor<C, C> {
        &self.entwining.monad.functor
    }

    pub fn category(&self) -> Arc<C> {
        self.entwining.category()
    }
}

/// `M × −` with the diagonal comonad and `λ(m, n, x) = (mn, m, x)`.
pub fn monoid_bimonad(monoid: &MonoidTable, cat: Arc<FinSet>) -> Bimonad<FinSet> {
    let mut entwining = canonical_entwining(&ActionTable::regular(monoid), cat.clone());
    entwining.monad = product_monad(monoid, cat.clone());
    entwining.comonad = product_comonad(monoid.order(), cat);
    Bimonad { entwining }
}

/// Outcome of the bimonad compatibility checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimonadCheck {
    /// Monad, comonad and entwining laws, and that both structures live on one functor.
    pub components: Verdict,
    /// `ε·m = ε·εH`, `δ·e = He·e`, `ε·e = 1`.
    pub unit_counit: Verdict,
    /// `δ·m = Hm·λH·Hδ`.
    pub comult_mult: Verdict,
    /// `λ·He = δ`, a consequence of the others.
    pub derived: Verdict,
}

impl BimonadCheck {
    pub fn primary(&self) -> Verdict {
        Verdict::all([self.components.clone(), self.unit_counit.clone(), self.comult_mult.clone()])
    }

    /// Primary laws, then the derived identity.
    pub fn verdict(&self) -> Verdict {
        self.primary().and_then(|| self.derived.clone())
    }
}

fn first_failure<C: Category>(
    cat: &C,
    laws: impl Fn(&C::Obj) -> Vec<(&'static str, C::Mor, C::Mor)> + Sync,
) -> Verdict {
    cat.objects()
        .into_par_iter()
        .find_map_first(|a| {
            laws(&a)
                .into_iter()
                .find(|(_, l, r)| l != r)
                .map(|(law, l, r)| Witness::unequal(law, cat.describe(&a), cat.encode(&l), cat.encode(&r)))
        })
        .map_or_else(Verdict::pass, Verdict::fail)
}

pub fn check_bimonad<C: Category>(b: &Bimonad<C>) -> CheckResult {
    Ok(bimonad_report(b)?.verdict())
}

/// Each group of bimonad laws separately; the later groups are skipped when a component fails.
pub fn bimonad_report<C: Category>(b: &Bimonad<C>) -> Result<BimonadCheck, StructuralError> {
    let e = &b.entwining;
    let (t, g, lam) = (&e.monad, &e.comonad, &e.law);
    let cat = e.category();
    let components = Verdict::all([
        functors_agree("monad and comonad share H", &t.functor, &g.functor),
        check_monad(t)?,
        check_comonad(g)?,
        check_entwining(e)?,
    ]);
    if !components.is_pass() {
        let skipped = || Verdict::inconclusive(Witness::new("bimonad", "components failed"));
        return Ok(BimonadCheck { components, unit_counit: skipped(), comult_mult: skipped(), derived: skipped() });
    }
    let h = &t.functor;
    let unit_counit = first_failure(cat.as_ref(), |a| {
        let ha = h.ob(a);
        let eps = g.counit.at(a);
        let unit = t.unit.at(a);
        vec![
            ("ε·m = ε·εH", cat.compose(&eps, &t.mult.at(a)), cat.compose(&eps, &g.counit.at(&ha))),
            ("δ·e = He·e", cat.compose(&g.comult.at(a), &unit), cat.compose(&h.map(a, &ha, &unit), &unit)),
            ("ε·e = 1", cat.compose(&eps, &unit), cat.identity(a)),
        ]
    });
    let comult_mult = first_failure(cat.as_ref(), |a| {
        let (ha, hha) = (h.ob(a), h.ob(&h.ob(a)));
        let h_delta = h.map(&ha, &hha, &g.comult.at(a));
        let lam_h = lam.at(&ha);
        let h_m = h.map(&hha, &ha, &t.mult.at(a));
        vec![(
            "δ·m = Hm·λH·Hδ",
            cat.compose(&g.comult.at(a), &t.mult.at(a)),
            cat.compose(&h_m, &cat.compose(&lam_h, &h_delta)),
        )]
    });
    let derived = first_failure(cat.as_ref(), |a| {
        let ha = h.ob(a);
        vec![("λ·He = δ", cat.compose(&lam.at(a), &h.map(a, &ha, &t.unit.at(a))), g.comult.at(a))]
    });
    Ok(BimonadCheck { components, unit_counit, comult_mult, derived })
}
