use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;

use super::antipode::antipode_search;
use super::bimonad::{monoid_bimonad, Bimonad};
use crate::entwining::{Entwined, EntwinedCategory};
use crate::fincat::{
    check_adjunction, check_functor, equivalence_verdict, functors_agree, Adjunction, Category, EquivalenceMode,
    Functor, Nat, StructuralError, Verdict, Witness,
};
use crate::finset::{product_map, ActionTable, FinSet, FnEnc, MSet, MSetsOver, MonoidTable};
use crate::grouplike::{check_grouplike, equaliser_monad, identity_monad_iso, point_grouplike};

/// Hopf modules over `M × −`: `M`-sets with an equivariant map to `M`.
pub fn hopf_modules(monoid: &MonoidTable, budget: usize) -> Arc<MSetsOver> {
    Arc::new(MSetsOver::new(ActionTable::regular(monoid), budget))
}

/// `K_H: a ↦ (M × a, m_a, δ_a)`.
pub fn comparison_kh(monoid: &MonoidTable, base: Arc<FinSet>, hopf: Arc<MSetsOver>) -> Functor<FinSet, MSetsOver> {
    let (k, table) = (monoid.order(), monoid.clone());
    Functor::new(
        "K_H",
        base,
        hopf,
        move |&a| MSet::from_fn(k, k * a, |g, p| table.mul(g, p / a) * a + p % a, |p| p / a.max(1)),
        move |_, _, f| product_map(&FnEnc::identity(k), f),
    )
}

fn coinvariant_points(x: &MSet) -> Vec<usize> {
    (0..x.size()).filter(|&p| x.label(p) == 0).collect()
}

/// `K_H ⊣ (−)^{co H}` with the coinvariants as right adjoint.
pub fn coinvariants_adjunction(
    monoid: &MonoidTable,
    base: Arc<FinSet>,
    hopf: Arc<MSetsOver>,
) -> Adjunction<FinSet, MSetsOver> {
    let k = monoid.order();
    let kh = comparison_kh(monoid, base.clone(), hopf.clone());
    let right = Functor::new(
        "(−)^coH",
        hopf.clone(),
        base.clone(),
        |x: &MSet| coinvariant_points(x).len(),
        |x, y, f: &FnEnc| {
            let (from, to) = (coinvariant_points(x), coinvariant_points(y));
            FnEnc::from_fn(from.len(), to.len(), |i| {
                to.iter().position(|&q| q == f.at(from[i])).expect("label preserved")
            })
        },
    );
    let unit = {
        let kh = kh.clone();
        Nat::new("η", Functor::identity(base.clone()), kh.then(&right), move |&a| {
            let points = coinvariant_points(&kh.ob(&a));
            FnEnc::from_fn(a, points.len(), |x| points.iter().position(|&q| q == x).expect("e lands in coinvariants"))
        })
    };
    let counit = Nat::new("ε", right.then(&kh), Functor::identity(hopf), move |x: &MSet| {
        let points = coinvariant_points(x);
        let n = points.len();
        FnEnc::from_fn(k * n, x.size(), |p| x.act(p / n, points[p % n]))
    });
    Adjunction::new(kh, right, unit, counit)
}

/// `f ↦ ε_b ∘ f ∘ e_a` is a bijection `hom(K_H a, K_H b) -> hom(a, b)` inverse to `K_H`.
pub fn kh_bijection(kh: &Functor<FinSet, MSetsOver>, objs: &[usize]) -> Verdict {
    let k = kh.ob(&1).size();
    let pairs: Vec<(usize, usize)> = objs.iter().flat_map(|&a| objs.iter().map(move |&b| (a, b))).collect();
    pairs
        .into_par_iter()
        .find_map_first(|(a, b)| {
            let homs = kh.tgt.hom(&kh.ob(&a), &kh.ob(&b));
            let unit = FnEnc::from_fn(a, k * a, |x| x);
            let counit = FnEnc::from_fn(k * b, b, |p| p % b.max(1));
            let images: HashSet<FnEnc> = homs.iter().map(|f| counit.after(&f.after(&unit))).collect();
            let at = format!("{a} -> {b}");
            let expected = crate::finset::count_functions(a, b).unwrap_or(usize::MAX);
            if images.len() != homs.len() || images.len() != expected {
                return Some(Witness::unequal(
                    "f ↦ ε·f·e bijective",
                    at,
                    vec![homs.len() as u32, images.len() as u32],
                    vec![expected as u32],
                ));
            }
            homs.iter()
                .find(|f| kh.map(&a, &b, &counit.after(&f.after(&unit))) != **f)
                .map(|f| Witness::new("K_H(ε·f·e) = f", at).with_data(f.values().to_vec()))
        })
        .map_or_else(Verdict::pass, Verdict::fail)
}

/// Most Hopf-module classes over which the adjunction's naturality squares are enumerated.
const NATURALITY_OBJECTS: usize = 200;

/// Largest carrier `n ≤ budget` whose Hopf modules fit [`NATURALITY_OBJECTS`]. Counit naturality is
/// quadratic in the number of classes, which grows quickly for monoids that are not groups.
fn naturality_size(monoid: &MonoidTable, budget: usize) -> usize {
    (1..=budget).take_while(|&n| hopf_modules(monoid, n).objects().len() <= NATURALITY_OBJECTS).last().unwrap_or(1)
}

/// The equivalence question for `K_H`, decided twice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfEquivalence {
    pub fully_faithful: Verdict,
    pub adjunction: Verdict,
    /// Full faithfulness plus essential surjectivity over Hopf modules within the budget.
    pub direct: Verdict,
    /// Unit and counit of `K_H ⊣ (−)^{co H}` invertible, over Hopf modules of the naturality size.
    pub via_adjoint: Verdict,
    pub agreement: Verdict,
}

pub fn kh_equivalence(monoid: &MonoidTable, budget: usize) -> Result<HopfEquivalence, StructuralError> {
    let k = monoid.order();
    // Naturality checks enumerate base hom-sets, so the adjunction lives on sets `a` with `k·a` in budget.
    let base = Arc::new(FinSet::up_to((budget / k).max(1)));
    let hopf = hopf_modules(monoid, naturality_size(monoid, budget));
    let adj = coinvariants_adjunction(monoid, base.clone(), hopf);
    let kh = adj.left.clone();
    let objs: Vec<usize> = (0..=(budget / k).max(1)).collect();
    let fully_faithful = kh_bijection(&kh, &objs);
    let adjunction = check_adjunction(&adj)?;
    let wide = comparison_kh(monoid, Arc::new(FinSet::up_to(budget)), hopf_modules(monoid, budget));
    let direct = equivalence_verdict(&wide, EquivalenceMode::Direct { budget });
    let via_adjoint = equivalence_verdict(&kh, EquivalenceMode::ViaAdjoint(&adj));
    let agreement =
        Verdict::agreement("K_H equivalence: direct ⟺ via adjoint", "", direct.clone(), via_adjoint.clone());
    Ok(HopfEquivalence { fully_faithful, adjunction, direct, via_adjoint, agreement })
}

/// `K_H` is an equivalence ⟺ `H` has an antipode.
pub fn tbim_crosscheck(monoid: &MonoidTable, budget: usize) -> Result<Verdict, StructuralError> {
    let equivalence = kh_equivalence(monoid, budget)?;
    let search = antipode_search(&monoid_bimonad(monoid, Arc::new(FinSet::up_to(1))))?;
    let antipode = Verdict::check(search.found(), || Witness::new("antipode", "none found"));
    Ok(Verdict::all([
        equivalence.agreement.clone(),
        Verdict::agreement("K_H equivalence ⟺ antipode", "", equivalence.direct, antipode),
    ]))
}

/// The entwined category of `M × −` against the `M`-set presentation: the translation is a
/// functor and an equivalence, and it carries the generic `K_H` onto [`comparison_kh`].
pub fn entwined_presentation_check(monoid: &MonoidTable, budget: usize) -> Result<Verdict, StructuralError> {
    let base = Arc::new(FinSet::up_to(budget));
    let bimonad: Bimonad<FinSet> = monoid_bimonad(monoid, base.clone());
    let entwined = Arc::new(EntwinedCategory::new(bimonad.entwining.clone()));
    let hopf = hopf_modules(monoid, budget);
    let k = monoid.order();
    let translate = Functor::new(
        "as M-set",
        entwined.clone(),
        hopf.clone(),
        move |x: &Entwined<usize, FnEnc>| {
            let n = x.carrier;
            MSet::from_fn(k, n, |g, p| x.action.at(g * n + p), |p| x.coaction.at(p) / n.max(1))
        },
        |_, _, f: &FnEnc| f.clone(),
    );
    let generic_kh = {
        let b = bimonad.clone();
        Functor::new(
            "K_H",
            base.clone(),
            entwined.clone(),
            move |a| Entwined {
                carrier: b.functor().ob(a),
                action: b.entwining.monad.mult.at(a),
                coaction: b.entwining.comonad.comult.at(a),
            },
            {
                let h = bimonad.functor().clone();
                move |a, c, f| h.map(a, c, f)
            },
        )
    };
    let valid = entwined
        .objects()
        .par_iter()
        .find_map_first(|x| {
            (!hopf.is_object(&translate.ob(x)))
                .then(|| Witness::new("translates to an M-set over M", entwined.describe(x)))
        })
        .map_or_else(Verdict::pass, Verdict::fail);
    Ok(Verdict::all([
        check_functor(&translate)?,
        valid,
        equivalence_verdict(&translate, EquivalenceMode::Direct { budget }),
        functors_agree("translation ∘ K_H = K_H", &generic_kh.then(&translate), &comparison_kh(monoid, base, hopf)),
    ]))
}

/// The unit `e` of `M × −` is grouplike, and `F^e ≅ Id` whenever `K_H` is fully faithful;
/// `budget` bounds the Hopf modules.
pub fn unit_descent_check(monoid: &MonoidTable, budget: usize) -> Result<Verdict, StructuralError> {
    let base = Arc::new(FinSet::up_to((budget / monoid.order()).max(1)));
    let bimonad = monoid_bimonad(monoid, base.clone());
    let g = point_grouplike(monoid.order(), 0, base.clone());
    let is_unit = crate::fincat::nat_equal("g = e", &g.carrier, &bimonad.entwining.monad.unit);
    let kh = comparison_kh(monoid, base.clone(), hopf_modules(monoid, budget));
    let fully_faithful = kh_bijection(&kh, &(0..=base.budget()).collect::<Vec<_>>());
    let identity = identity_monad_iso(&equaliser_monad(&g, &bimonad.entwining)?);
    Ok(Verdict::all([
        is_unit,
        check_grouplike(&g)?,
        Verdict::implies("K_H fully faithful ⟹ F^e ≅ Id", &fully_faithful, &identity),
    ]))
}
