use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::instance::InstanceSpec;
use super::report::{CheckReport, Report, SuiteReport};
use crate::entwining::{
    canonical_entwining, cartesian_comonoidal, check_entwining, free_restriction_check, matches_canonical,
    EntwinedPresentations, Entwining,
};
use crate::fincat::{Category, StructuralError, Verdict, Witness};
use crate::finset::{ActionTable, FinSet};
use crate::grouplike::{
    check_grouplike, equaliser_monad, galois_conditions, galois_entwining_verdict, induced_comodules, kg_ff_crosscheck,
    point_grouplike, t_composite, Grouplike,
};
use crate::hopf::{
    antipode_search, check_bimonad, coflat_galois_crosscheck, comma_comodule_iso, comma_k_equivalence,
    entwined_presentation_check, gamma_and_galois_object, kh_equivalence, lifted_modules_check, monoid_bimonad,
    tbim_crosscheck, unit_descent_check,
};
use crate::monadics::{
    check_comonad, check_monad, left_image_projective, product_comonad, product_monad, relative_injective,
    right_image_injective, Comodules, Modules,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Antipode,
    Crosschecks,
    GaloisEntwining,
    GaloisGrouplike,
    GaloisObject,
    HopfEquivalence,
    Injectives,
    Laws,
}

impl Suite {
    const ALL: [Suite; 8] = [
        Suite::Antipode,
        Suite::Crosschecks,
        Suite::GaloisEntwining,
        Suite::GaloisGrouplike,
        Suite::GaloisObject,
        Suite::HopfEquivalence,
        Suite::Injectives,
        Suite::Laws,
    ];

    pub fn all() -> Vec<Suite> {
        Suite::ALL.to_vec()
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Antipode => "antipode",
            Suite::Crosschecks => "crosschecks",
            Suite::GaloisEntwining => "galois-entwining",
            Suite::GaloisGrouplike => "galois-grouplike",
            Suite::GaloisObject => "galois-object",
            Suite::HopfEquivalence => "hopf-equivalence",
            Suite::Injectives => "injectives",
            Suite::Laws => "laws",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let known: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            format!("unknown suite {s:?}; known: {}", known.join(", "))
        })
    }
}

type Checks = Vec<(&'static str, Verdict)>;

/// Everything a suite needs, built once per instance.
struct Setting<'a> {
    spec: &'a InstanceSpec,
    base: Arc<FinSet>,
    entwining: Entwining<FinSet>,
    grouplike: Grouplike<FinSet>,
}

impl<'a> Setting<'a> {
    fn new(spec: &'a InstanceSpec) -> Self {
        let base = Arc::new(FinSet::up_to(spec.budgets.base));
        Setting {
            entwining: canonical_entwining(&spec.action, base.clone()),
            grouplike: point_grouplike(spec.action.size(), spec.point, base.clone()),
            base,
            spec,
        }
    }
}

fn laws(s: &Setting) -> Result<Checks, StructuralError> {
    let (spec, base) = (s.spec, &s.base);
    let monad = product_monad(&spec.monoid, base.clone());
    Ok(vec![
        ("monoid table", spec.monoid.check()),
        ("action table", spec.action.check()),
        ("monad M×−", check_monad(&monad)?),
        ("comonad C×−", check_comonad(&product_comonad(spec.action.size(), base.clone()))?),
        ("entwining", check_entwining(&s.entwining)?),
        ("bimonad M×−", check_bimonad(&monoid_bimonad(&spec.monoid, base.clone()))?),
        ("grouplike at the point", check_grouplike(&s.grouplike)?),
        (
            "cartesian comonoidal structure",
            matches_canonical(&cartesian_comonoidal(&monad), &ActionTable::regular(&spec.monoid)),
        ),
    ])
}

/// `F^g` computed as an equaliser against `Stab(c₀) × −` computed from the action.
fn stabiliser_oracle(s: &Setting) -> Result<Verdict, StructuralError> {
    let eq = equaliser_monad(&s.grouplike, &s.entwining)?;
    let stab = s.spec.action.stabilizer(s.spec.point);
    let failure = s.base.objects().into_iter().find_map(|n| {
        let carrier = eq.monad.ob(&n);
        let inclusion = eq.inclusion.carrier.at(&n);
        let expected: Vec<u32> = stab.iter().flat_map(|&m| (0..n).map(move |x| (m * n + x) as u32)).collect();
        (carrier != stab.len() * n || inclusion.values() != &expected[..])
            .then(|| Witness::unequal("F^g ≅ Stab × −", n.to_string(), inclusion.values().to_vec(), expected))
    });
    Ok(failure.map_or_else(Verdict::pass, Verdict::fail))
}

fn galois_grouplike(s: &Setting) -> Result<Checks, StructuralError> {
    let eq = equaliser_monad(&s.grouplike, &s.entwining)?;
    let t = t_composite(&s.grouplike, &s.entwining, s.spec.budgets.em)?;
    Ok(vec![
        ("F^g equalises", eq.equalises),
        ("F^g monad laws", eq.laws),
        ("F^g -> F monad morphism", eq.morphism),
        ("F^g is Stab × −", stabiliser_oracle(s)?),
        ("t_g agrees with t_K", t.formula),
        ("t_g comonad morphism", t.laws),
        ("t_g invertible", t.galois),
    ])
}

fn galois_entwining(s: &Setting) -> Result<Checks, StructuralError> {
    let v = galois_entwining_verdict(&s.grouplike, &s.entwining, s.spec.budgets.base)?;
    Ok(vec![
        ("t_g invertible", v.pass),
        ("ī_F equivalence", v.equivalence),
        ("ī_F coaction", v.coaction),
        ("S_φ is the quotient map", v.quotient_map),
        ("t factorises through S", v.factorisation),
        ("t monic ⟹ S_φ invertible", v.mono_implies_iso),
        ("equivalence ⟺ Galois ∧ comonadic", v.theorem),
    ])
}

fn antipode(s: &Setting) -> Result<Checks, StructuralError> {
    let k = s.spec.monoid.order();
    let search = antipode_search(&monoid_bimonad(&s.spec.monoid, Arc::new(FinSet::up_to(1))))?;
    let expected = k.pow(k as u32);
    Ok(vec![
        (
            "natural endomorphisms are maps M -> M",
            Verdict::check(search.candidates == expected, || {
                Witness::unequal("candidates", "", vec![search.candidates as u32], vec![expected as u32])
            }),
        ),
        (
            "antipode exists",
            Verdict::check(search.found(), || Witness::new("antipode", "no candidate satisfies the axioms")),
        ),
        ("antipode unique", search.unique()),
    ])
}

fn hopf_equivalence(s: &Setting) -> Result<Checks, StructuralError> {
    let v = kh_equivalence(&s.spec.monoid, s.spec.budgets.em)?;
    Ok(vec![
        ("K_H fully faithful", v.fully_faithful),
        ("K_H ⊣ coinvariants", v.adjunction),
        ("K_H equivalence (direct)", v.direct),
        ("K_H equivalence (unit and counit)", v.via_adjoint),
        ("both modes agree", v.agreement),
    ])
}

fn galois_object(s: &Setting) -> Result<Checks, StructuralError> {
    let g = gamma_and_galois_object(&s.spec.action, s.spec.budgets.base.max(2));
    let comma = comma_k_equivalence(&s.spec.action, s.spec.budgets.comma)?;
    Ok(vec![
        ("c faithful", Verdict::check(g.faithful, || Witness::new("c × − faithful", ""))),
        ("γ_c invertible", Verdict::check(g.iso, || Witness::new("γ_c invertible", "").with_data(g.gamma.clone()))),
        ("K equivalence", comma.equivalence),
        ("!_c effective descent", comma.effective_descent),
    ])
}

fn injectives(s: &Setting) -> Result<Checks, StructuralError> {
    let modules = Arc::new(Modules::new(product_monad(&s.spec.monoid, s.base.clone())));
    let adj = modules.adjunction();
    let comodules = Arc::new(Comodules::new(product_comonad(s.spec.action.size(), s.base.clone())));
    let coadj = comodules.adjunction();
    let every = |law: &'static str, objects: Vec<String>, ok: Vec<bool>| {
        objects
            .into_iter()
            .zip(ok)
            .find(|(_, ok)| !ok)
            .map_or_else(Verdict::pass, |(at, _)| Verdict::fail(Witness::new(law, at)))
    };
    let objs = s.base.objects();
    let names: Vec<String> = objs.iter().map(|a| a.to_string()).collect();
    let module_objs = modules.objects();
    Ok(vec![
        (
            "base objects φ_T-injective",
            every("η split mono", names.clone(), objs.iter().map(|a| relative_injective(a, &adj)).collect()),
        ),
        (
            "underlying sets φ_T-injective",
            every(
                "R(a) injective",
                module_objs.iter().map(|x| modules.describe(x)).collect(),
                module_objs.iter().map(|x| right_image_injective(x, &adj)).collect(),
            ),
        ),
        (
            "free modules U_T-projective",
            every("ε split epi", names.clone(), objs.iter().map(|a| left_image_projective(a, &adj)).collect()),
        ),
        (
            "cofree comodules U^G-injective",
            every("η split mono", names, objs.iter().map(|a| right_image_injective(a, &coadj)).collect()),
        ),
    ])
}

fn crosschecks(s: &Setting) -> Result<Checks, StructuralError> {
    let (spec, budgets) = (s.spec, s.spec.budgets);
    let (g, e) = (&s.grouplike, &s.entwining);
    let kg = kg_ff_crosscheck(g, e, budgets.em)?;
    let comparison = t_composite(g, e, budgets.em)?;
    let twisted = induced_comodules(g, e)?.twisted;
    let restriction = free_restriction_check(e, &comparison.comparison, &twisted);
    Ok(vec![
        ("three Galois conditions agree", galois_conditions(g, e, budgets.em)?.agreement()),
        ("K_g fully faithful ⟺ F^g ≅ Id", kg.agreement),
        ("precomonadic ∧ Galois ⟹ F^g ≅ Id", kg.descent),
        ("t invertible ⟺ invertible on free modules", restriction.agreement),
        ("entwined presentations isomorphic", EntwinedPresentations::new(e).check()?),
        ("antipode ⟺ K_H equivalence", tbim_crosscheck(&spec.monoid, budgets.em)?),
        ("Hopf modules as M-sets over M", entwined_presentation_check(&spec.monoid, budgets.base.min(2))?),
        ("unit of H is an equaliser", unit_descent_check(&spec.monoid, budgets.em)?),
        ("sets over c are comodules of c × −", comma_comodule_iso(spec.action.size(), budgets.base)?),
        ("lifted monad modules are b-sets over c", lifted_modules_check(&spec.action, budgets.base)?),
        ("comma K agrees with γ_c and descent", comma_k_equivalence(&spec.action, budgets.comma)?.consistent()),
        ("Galois objects are faithfully coflat", coflat_galois_crosscheck(&spec.action, 2)),
    ])
}

fn run_one(suite: Suite, setting: &Setting, timings: bool) -> SuiteReport {
    let start = Instant::now();
    let checks = match suite {
        Suite::Antipode => antipode(setting),
        Suite::Crosschecks => crosschecks(setting),
        Suite::GaloisEntwining => galois_entwining(setting),
        Suite::GaloisGrouplike => galois_grouplike(setting),
        Suite::GaloisObject => galois_object(setting),
        Suite::HopfEquivalence => hopf_equivalence(setting),
        Suite::Injectives => injectives(setting),
        Suite::Laws => laws(setting),
    };
    let checks =
        checks.unwrap_or_else(|err| vec![("setup", Verdict::fail(Witness::new("structural error", err.to_string())))]);
    let millis = timings.then(|| start.elapsed().as_millis() as u64);
    SuiteReport::new(checks.into_iter().map(|(name, v)| CheckReport::new(name, v)).collect(), millis)
}

/// Runs the selected suites of one instance; suites run in parallel, the report is ordered by suite name.
pub fn run_suite(spec: &InstanceSpec, timings: bool) -> Report {
    let setting = Setting::new(spec);
    let suites: Vec<(Suite, SuiteReport)> =
        spec.selected().into_par_iter().map(|suite| (suite, run_one(suite, &setting, timings))).collect();
    Report::new(spec, suites.into_iter().map(|(s, r)| (s.name().to_string(), r)).collect())
}

/// One instance per non-empty corpus action, at point `0` with the given base budget.
pub fn corpus_instances(base: usize, suites: Option<Vec<Suite>>) -> Vec<InstanceSpec> {
    crate::finset::corpus()
        .actions
        .into_iter()
        .filter(|a| a.action.size() > 0)
        .map(|a| InstanceSpec { suites: suites.clone(), ..InstanceSpec::new(a.name, a.action, base) })
        .collect()
}

pub fn run_corpus(instances: &[InstanceSpec], timings: bool) -> Vec<Report> {
    instances.par_iter().map(|spec| run_suite(spec, timings)).collect()
}
