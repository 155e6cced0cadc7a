use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::galois_object::{gamma_and_galois_object, GaloisObjectVerdict};
use crate::fincat::{
    check_adjunction, check_functor, equivalence_verdict, Adjunction, Category, EquivalenceMode, Functor, Nat,
    StructuralError, Verdict, Witness,
};
use crate::finset::{product_map, ActionTable, FinSet, FnEnc, MSet, MSetsOver};
use crate::grouplike::{check_grouplike, point_grouplike};
use crate::monadics::{check_monad, monadic_verdict, product_comonad, Comodules, Modules, Monad};

/// The largest base set whose image `c × a` stays within `budget`; naturality checks enumerate its hom-sets.
fn base_cut(c: usize, budget: usize) -> usize {
    budget.checked_div(c).unwrap_or(budget.min(3))
}

/// Sets over `c` as comodules of `c × −`, translated along `θ ↦ p₂ ∘ θ`, form an isomorphic category.
pub fn comma_comodule_iso(c: usize, budget: usize) -> Result<Verdict, StructuralError> {
    let base = Arc::new(FinSet::up_to(budget));
    let comodules = Arc::new(Comodules::new(product_comonad(c, base.clone())));
    let comma = Arc::new(MSetsOver::over(c, budget));
    let translate = Functor::new(
        "p₂∘θ",
        comodules.clone(),
        comma.clone(),
        |x| {
            let n = x.carrier;
            MSet::from_fn(1, n, |_, p| p, |p| x.structure.at(p) / n.max(1))
        },
        |_, _, f: &FnEnc| f.clone(),
    );
    let per_size = (0..=budget)
        .find_map(|n| {
            let structures = comodules.coactions_on(&n).len();
            let labellings = c.checked_pow(n as u32).unwrap_or(usize::MAX);
            (structures != labellings).then(|| {
                Witness::unequal(
                    "bijective on objects",
                    n.to_string(),
                    vec![structures as u32],
                    vec![labellings as u32],
                )
            })
        })
        .map_or_else(Verdict::pass, Verdict::fail);
    let lands = comodules
        .objects()
        .par_iter()
        .find_map_first(|x| {
            (!comma.is_object(&translate.ob(x))).then(|| Witness::new("lands over c", comodules.describe(x)))
        })
        .map_or_else(Verdict::pass, Verdict::fail);
    Ok(Verdict::all([
        check_functor(&translate)?,
        per_size,
        lands,
        equivalence_verdict(&translate, EquivalenceMode::Direct { budget }),
    ]))
}

/// `T̃(x, f) = (b × x, α_c ∘ (b × f))` on sets over `c`.
pub fn lifted_monad(action: &ActionTable, comma: Arc<MSetsOver>) -> Monad<MSetsOver> {
    let k = action.monoid().order();
    let (act, table) = (action.clone(), action.monoid().clone());
    let functor = Functor::new(
        format!("{}×−", k),
        comma.clone(),
        comma.clone(),
        move |x: &MSet| {
            let n = x.size();
            MSet::from_fn(1, k * n, |_, p| p, |p| act.act(p / n.max(1), x.label(p % n.max(1))))
        },
        move |_, _, f| product_map(&FnEnc::identity(k), f),
    );
    let mult = Nat::new("m", functor.then(&functor), functor.clone(), move |x: &MSet| {
        let n = x.size();
        FnEnc::from_fn(k * k * n, k * n, |p| table.mul(p / n / k, p / n % k) * n + p % n)
    });
    let unit = Nat::new("e", Functor::identity(comma), functor.clone(), move |x: &MSet| {
        FnEnc::from_fn(x.size(), k * x.size(), |p| p)
    });
    Monad { name: functor.name.clone(), functor, mult, unit }
}

/// The modules of the lifted monad against the `b`-sets over `c` used by [`comma_k`].
pub fn lifted_modules_check(action: &ActionTable, budget: usize) -> Result<Verdict, StructuralError> {
    let comma = Arc::new(MSetsOver::over(action.size(), budget));
    let monad = lifted_monad(action, comma);
    let laws = check_monad(&monad)?;
    let modules = Arc::new(Modules::new(monad));
    let target = Arc::new(MSetsOver::new(action.clone(), budget));
    let k = action.monoid().order();
    let translate = Functor::new(
        "as b-set over c",
        modules.clone(),
        target.clone(),
        move |x| {
            let n = x.carrier.size();
            MSet::from_fn(k, n, |m, p| x.structure.at(m * n + p), |p| x.carrier.label(p))
        },
        |_, _, f: &FnEnc| f.clone(),
    );
    let lands = modules
        .objects()
        .par_iter()
        .find_map_first(|x| {
            (!target.is_object(&translate.ob(x))).then(|| Witness::new("equivariant over c", modules.describe(x)))
        })
        .map_or_else(Verdict::pass, Verdict::fail);
    Ok(Verdict::all([
        laws,
        check_functor(&translate)?,
        lands,
        equivalence_verdict(&translate, EquivalenceMode::Direct { budget }),
    ]))
}

/// `K: a ↦ (c × a, α_c × a)` into `b`-sets over `c`.
pub fn comma_k(action: &ActionTable, base: Arc<FinSet>, target: Arc<MSetsOver>) -> Functor<FinSet, MSetsOver> {
    let (k, c, act) = (action.monoid().order(), action.size(), action.clone());
    Functor::new(
        "K",
        base,
        target,
        move |&a| MSet::from_fn(k, c * a, |m, p| act.act(m, p / a) * a + p % a, |p| p / a.max(1)),
        move |_, _, f| product_map(&FnEnc::identity(c), f),
    )
}

/// `U_c ⊣ P_c` between sets over `c` and sets, `P_c a = (c × a, p₁)`.
pub fn pullback_adjunction(c: usize, base: Arc<FinSet>, comma: Arc<MSetsOver>) -> Adjunction<MSetsOver, FinSet> {
    let forget = Functor::new("U_c", comma.clone(), base.clone(), |x: &MSet| x.size(), |_, _, f: &FnEnc| f.clone());
    let pullback = Functor::new(
        "P_c",
        base.clone(),
        comma.clone(),
        move |&a| MSet::from_fn(1, c * a, |_, p| p, |p| p / a.max(1)),
        move |_, _, f| product_map(&FnEnc::identity(c), f),
    );
    let unit = Nat::new("⟨f, 1⟩", Functor::identity(comma), forget.then(&pullback), move |x: &MSet| {
        let n = x.size();
        FnEnc::from_fn(n, c * n, |p| x.label(p) * n + p)
    });
    let counit = Nat::new("p₂", pullback.then(&forget), Functor::identity(base), move |&a| {
        FnEnc::from_fn(c * a, a, |p| p % a.max(1))
    });
    Adjunction::new(forget, pullback, unit, counit)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommaEquivalence {
    pub galois_object: GaloisObjectVerdict,
    pub equivalence: Verdict,
    /// `P_c` monadic, i.e. `!_c` of effective descent.
    pub effective_descent: Verdict,
    pub descent_shortcut: Verdict,
    pub theorem: Verdict,
    /// Present when `c` is `b` acting on itself.
    pub group_case: Option<Verdict>,
    pub grouplike_case: Verdict,
}

impl CommaEquivalence {
    pub fn consistent(&self) -> Verdict {
        let mut parts = vec![self.descent_shortcut.clone(), self.theorem.clone(), self.grouplike_case.clone()];
        parts.extend(self.group_case.clone());
        Verdict::all(parts)
    }
}

pub fn comma_k_equivalence(action: &ActionTable, budget: usize) -> Result<CommaEquivalence, StructuralError> {
    let (monoid, c) = (action.monoid(), action.size());
    let target = Arc::new(MSetsOver::new(action.clone(), budget));
    let k = comma_k(action, Arc::new(FinSet::up_to(if c == 0 { budget.min(3) } else { budget })), target);
    let equivalence = equivalence_verdict(&k, EquivalenceMode::Direct { budget });

    let base = Arc::new(FinSet::up_to(base_cut(c, budget)));
    let comma = Arc::new(MSetsOver::over(c, budget));
    let adj = pullback_adjunction(c, base, comma);
    let adjunction = check_adjunction(&adj)?;
    let effective_descent = Verdict::all([adjunction, monadic_verdict(&adj, budget)]);
    let nonempty = Verdict::check(c > 0, || Witness::new("c nonempty", "c = 0"));
    let descent_shortcut =
        Verdict::agreement("effective descent ⟺ c nonempty", "", effective_descent.clone(), nonempty);

    let galois_object = gamma_and_galois_object(action, 3);
    let gamma_iso = Verdict::check(galois_object.iso, || Witness::new("γ_c invertible", ""));
    let theorem = Verdict::agreement(
        "K equivalence ⟺ γ_c iso and effective descent",
        "",
        equivalence.clone(),
        Verdict::all([gamma_iso, effective_descent.clone()]),
    );
    let group_case = (*action == ActionTable::regular(monoid)).then(|| {
        let group = Verdict::check(monoid.is_group(), || Witness::new("b is a group", ""));
        Verdict::agreement("K equivalence ⟺ b group", "", equivalence.clone(), group)
    });
    let has_grouplike = if c == 0 {
        Verdict::fail(Witness::new("grouplike for c × −", "c = 0"))
    } else {
        check_grouplike(&point_grouplike(c, 0, Arc::new(FinSet::up_to(2))))?
    };
    let galois = galois_object.verdict();
    let grouplike_case = Verdict::implies(
        "grouplike ⟹ (K equivalence ⟺ Galois object)",
        &has_grouplike,
        &Verdict::agreement("K equivalence ⟺ Galois object", "", equivalence.clone(), galois),
    );
    Ok(CommaEquivalence {
        galois_object,
        equivalence,
        effective_descent,
        descent_shortcut,
        theorem,
        group_case,
        grouplike_case,
    })
}
