//! Acceptance criteria: one PASS/FAIL line each, non-zero exit if any fails.

use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use galois_lab::entwining::{canonical_entwining, check_entwining, free_restriction_check, EntwinedPresentations};
use galois_lab::fincat::{
    check_category, check_fun, check_functor, check_nat, tabulate, tabulate_functor, tabulate_nat, Category,
    CheckResult, MorRef, Nat, Verdict,
};
use galois_lab::finset::{corpus, monoids_of_order, ActionTable, FinSet, FnEnc, MSetsOver, MonoidTable};
use galois_lab::grouplike::{
    equaliser_monad, galois_conditions, galois_entwining_verdict, induced_comodules, kg_ff_crosscheck, point_grouplike,
    t_composite,
};
use galois_lab::hopf::{
    antipode_search, check_bimonad, comma_k_equivalence, gamma_and_galois_object, kh_equivalence, monoid_bimonad,
};
use galois_lab::monadics::{check_comonad, check_monad, product_comonad, product_monad};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
/// Draws one mutant and checks it; `None` when the draw has nothing to mutate.
type Mutant<'a> = Box<dyn FnMut(&mut ChaCha8Rng) -> Option<CheckResult> + 'a>;

struct Criterion {
    id: u8,
    title: &'static str,
    expected: Duration,
    run: fn() -> Outcome,
}

/// Base budget shared by the per-setting criteria.
const BASE: usize = 2;
/// Mutations drawn per law checker.
const MUTATIONS: usize = 120;
const SEED: u64 = 0x6a1015;

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn passes(v: &Verdict, what: impl FnOnce() -> String) -> Result<(), String> {
    ensure(v.is_pass(), || format!("{}: {:?}", what(), v))
}

fn setup<T>(r: Result<T, impl std::fmt::Debug>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e:?}"))
}

fn em_budget(monoid: &MonoidTable) -> usize {
    (BASE * monoid.order()).min(6)
}

fn group_oracle(m: &MonoidTable) -> bool {
    let k = m.order();
    let unit = (0..k).find(|&e| (0..k).all(|x| m.mul(e, x) == x && m.mul(x, e) == x));
    unit.is_some_and(|e| (0..k).all(|x| (0..k).any(|y| m.mul(x, y) == e && m.mul(y, x) == e)))
}

fn antipode_iff_group() -> Outcome {
    let mut counts = Vec::new();
    let mut disagreements = Vec::new();
    for order in 1..=3 {
        let monoids = monoids_of_order(order);
        counts.push(monoids.len());
        for m in monoids {
            let search = setup(antipode_search(&monoid_bimonad(&m, Arc::new(FinSet::up_to(1)))), "antipode search")?;
            if search.found() != group_oracle(&m) || m.is_group() != group_oracle(&m) {
                disagreements.push(m.rows());
            }
        }
    }
    ensure(counts == [1, 2, 7], || format!("monoid counts by order {counts:?}, expected [1, 2, 7]"))?;
    ensure(disagreements.is_empty(), || format!("disagreements at {disagreements:?}"))?;
    Ok(format!("{} monoids, counts {counts:?}, 0 disagreements", counts.iter().sum::<usize>()))
}

fn hopf_modules_theorem() -> Outcome {
    for (name, m, budget) in [("Z2", MonoidTable::cyclic(2), 4), ("Z3", MonoidTable::cyclic(3), 9)] {
        let v = setup(kh_equivalence(&m, budget), name)?;
        passes(&v.via_adjoint, || format!("{name} N={budget} unit/counit"))?;
        passes(&v.direct, || format!("{name} N={budget} direct"))?;
        passes(&v.agreement, || format!("{name} agreement"))?;
    }
    let v = setup(kh_equivalence(&MonoidTable::idem2(), 4), "Idem2")?;
    ensure(v.via_adjoint.is_fail() && v.direct.is_fail(), || format!("Idem2 should fail both modes: {v:?}"))?;
    passes(&v.agreement, || "Idem2 agreement".into())?;
    Ok("Z2 N=4, Z3 N=9 pass both modes; Idem2 N=4 fails both".into())
}

fn galois_condition_settings() -> Vec<(&'static str, ActionTable, usize)> {
    vec![
        ("Z1", ActionTable::regular(&MonoidTable::trivial()), 0),
        ("Z2", ActionTable::regular(&MonoidTable::cyclic(2)), 0),
        ("Z3", ActionTable::regular(&MonoidTable::cyclic(3)), 0),
        ("Idem2", ActionTable::regular(&MonoidTable::idem2()), 0),
        ("Z2 trivial on 2", ActionTable::trivial(&MonoidTable::cyclic(2), 2), 0),
        ("V4 on cosets", galois_lab::finset::klein_on_cosets(), 0),
    ]
}

fn three_galois_conditions() -> Outcome {
    let settings = galois_condition_settings();
    let mut galois = 0;
    for (name, action, point) in &settings {
        let base = Arc::new(FinSet::up_to(BASE));
        let e = canonical_entwining(action, base.clone());
        let g = point_grouplike(action.size(), *point, base);
        let c = setup(galois_conditions(&g, &e, em_budget(action.monoid())), name)?;
        passes(&c.agreement(), || format!("{name}: {c:?}"))?;
        galois += usize::from(c.t_iso.is_pass());
    }
    let stabilised =
        settings.iter().any(|(_, a, p)| (0..a.monoid().order()).filter(|&m| a.act(m, *p) == *p).count() > 1);
    ensure(stabilised, || "no setting with a non-trivial stabiliser".into())?;
    Ok(format!("{} settings agree ({galois} Galois)", settings.len()))
}

fn equaliser_monad_is_stabiliser() -> Outcome {
    let mut settings = 0;
    for named in corpus().actions {
        let action = &named.action;
        let k = action.monoid().order();
        for point in 0..action.size() {
            let at = format!("{} at {point}", named.name);
            let base = Arc::new(FinSet::up_to(BASE));
            let e = canonical_entwining(action, base.clone());
            let g = point_grouplike(action.size(), point, base.clone());
            let eq = setup(equaliser_monad(&g, &e), &at)?;
            passes(&Verdict::all([eq.equalises.clone(), eq.laws.clone(), eq.morphism.clone()]), || at.clone())?;
            let stab: Vec<usize> = (0..k).filter(|&m| action.act(m, point) == point).collect();
            for n in base.objects() {
                let expected: Vec<u32> = stab.iter().flat_map(|&m| (0..n).map(move |x| (m * n + x) as u32)).collect();
                let inclusion = eq.inclusion.carrier.at(&n);
                ensure(eq.monad.ob(&n) == stab.len() * n && inclusion.values() == &expected[..], || {
                    format!("{at}: F^g({n}) includes as {:?}, stabiliser gives {expected:?}", inclusion.values())
                })?;
            }
            let kg = setup(kg_ff_crosscheck(&g, &e, em_budget(action.monoid())), &at)?;
            passes(&kg.agreement, || format!("{at}: K_g fully faithful ⟺ F^g ≅ Id"))?;
            settings += 1;
        }
    }
    Ok(format!("{settings} (action, point) settings"))
}

fn galois_entwining_factorisation() -> Outcome {
    let settings = [
        ("Z2", ActionTable::regular(&MonoidTable::cyclic(2))),
        ("Idem2", ActionTable::regular(&MonoidTable::idem2())),
        ("Z2 trivial on 2", ActionTable::trivial(&MonoidTable::cyclic(2), 2)),
    ];
    for (name, action) in &settings {
        let base = Arc::new(FinSet::up_to(BASE));
        let e = canonical_entwining(action, base.clone());
        let g = point_grouplike(action.size(), 0, base);
        let v = setup(galois_entwining_verdict(&g, &e, BASE), name)?;
        passes(&v.factorisation, || format!("{name} factorisation"))?;
        passes(&v.quotient_map, || format!("{name} S component is q_a"))?;
        passes(&v.mono_implies_iso, || format!("{name} mono ⟹ iso"))?;
    }
    Ok(format!("{} settings", settings.len()))
}

/// `(m, y) ↦ (m·y, y)` tabulated on `b × c`.
fn gamma_oracle(action: &ActionTable) -> Vec<u32> {
    let c = action.size();
    (0..action.monoid().order()).flat_map(|m| (0..c).map(move |y| (action.act(m, y) * c + y) as u32)).collect()
}

fn is_free_transitive(action: &ActionTable) -> bool {
    let (k, c) = (action.monoid().order(), action.size());
    let transitive = (0..c).all(|y| (0..k).any(|m| action.act(m, 0) == y));
    let free = (0..c).all(|y| (0..k).filter(|&m| action.act(m, y) == y).count() == 1);
    c > 0 && transitive && free
}

fn galois_objects() -> Outcome {
    let mut battery = Vec::new();
    for group in [MonoidTable::cyclic(2), MonoidTable::cyclic(3), MonoidTable::klein_four()] {
        let k = group.order();
        let plain = MSetsOver::plain(&group, k);
        let free: Vec<ActionTable> = (1..=k)
            .flat_map(|n| plain.classes_on(n))
            .map(|x| x.action_table(&group))
            .filter(is_free_transitive)
            .collect();
        ensure(free.len() == 1, || format!("{} free transitive classes of a group of order {k}", free.len()))?;
        battery.extend(free.into_iter().map(|a| (a, true)));
    }
    for m in corpus().monoids.iter().filter(|m| m.table.order() >= 2) {
        battery.extend((2..=3).map(|c| (ActionTable::trivial(&m.table, c), false)));
    }
    for (action, expect_iso) in &battery {
        let g = gamma_and_galois_object(action, BASE);
        let oracle = gamma_oracle(action);
        let bijective = FnEnc::new(oracle.clone(), action.size() * action.size()).is_ok_and(|f| f.is_bijective());
        ensure(g.gamma == oracle, || format!("γ_c {:?} against {oracle:?}", g.gamma))?;
        ensure(g.iso == *expect_iso && bijective == *expect_iso, || {
            format!("γ_c iso {} for {:?}", g.iso, action.rows())
        })?;
        let budget = (BASE * action.size()).min(6);
        let comma = setup(comma_k_equivalence(action, budget), "comma K")?;
        passes(&comma.theorem, || format!("K equivalence ⟺ γ_c iso ∧ descent at {:?}", action.rows()))?;
    }
    let isos = battery.iter().filter(|(_, iso)| *iso).count();
    Ok(format!("{isos} free transitive, {} trivial, theorem agrees on all", battery.len() - isos))
}

fn lifting_coherence() -> Outcome {
    let actions = corpus().actions;
    for named in &actions {
        let base = Arc::new(FinSet::up_to(BASE));
        let e = canonical_entwining(&named.action, base.clone());
        let presentations = setup(EntwinedPresentations::new(&e).check(), &named.name)?;
        passes(&presentations, || format!("{} presentations", named.name))?;
        let g = point_grouplike(named.action.size(), 0, base);
        let comparison = setup(t_composite(&g, &e, em_budget(named.action.monoid())), &named.name)?.comparison;
        let twisted = setup(induced_comodules(&g, &e), &named.name)?.twisted;
        let restriction = free_restriction_check(&e, &comparison, &twisted);
        passes(&restriction.agreement, || format!("{} free restriction", named.name))?;
    }
    Ok(format!("{} corpus entwinings", actions.len()))
}

/// A copy of `f` with one entry moved to a different value, if `f` has a movable entry.
fn mutate_entry(f: &FnEnc, rng: &mut ChaCha8Rng) -> Option<FnEnc> {
    if f.dom() == 0 || f.cod() < 2 {
        return None;
    }
    let mut values = f.values().to_vec();
    let i = rng.gen_range(0..values.len());
    let shift = rng.gen_range(1..f.cod() as u32);
    values[i] = (values[i] + shift) % f.cod() as u32;
    FnEnc::new(values, f.cod()).ok()
}

/// Draws `MUTATIONS` mutants; returns how many passed and how many were rejected as malformed
/// rather than failing a law.
fn undetected(mut mutant: impl FnMut(&mut ChaCha8Rng) -> Option<CheckResult>, salt: u64) -> (usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ salt);
    let (mut drawn, mut missed, mut malformed) = (0, 0, 0);
    while drawn < MUTATIONS {
        match mutant(&mut rng) {
            None => continue,
            Some(Ok(v)) => missed += usize::from(!v.is_fail()),
            Some(Err(_)) => malformed += 1,
        }
        drawn += 1;
    }
    (missed, malformed)
}

fn mutate_nat(nat: &Nat<FinSet, FinSet>, rng: &mut ChaCha8Rng) -> Option<Nat<FinSet, FinSet>> {
    let objects = nat.src.src.objects();
    let a = objects[rng.gen_range(0..objects.len())];
    mutate_entry(&nat.at(&a), rng).map(|c| nat.with_mutated_component(a, c))
}

fn mutation_soundness() -> Outcome {
    let z2 = MonoidTable::cyclic(2);
    let base = Arc::new(FinSet::up_to(BASE));
    let small = tabulate(base.as_ref());
    let wide = tabulate(&FinSet::up_to(2 * BASE));
    let monad = product_monad(&z2, base.clone());
    let comonad = product_comonad(2, base.clone());
    let entwining = canonical_entwining(&ActionTable::regular(&z2), base.clone());
    let bimonad = monoid_bimonad(&z2, base.clone());

    let category = small.table.clone();
    let cells: Vec<_> = category.compose_cells().into_iter().filter(|c| category.hom_count(c.a, c.c) >= 2).collect();
    let fun = setup(tabulate_functor(&monad.functor, &small, &wide), "tabulate M×−")?;
    let entries: Vec<MorRef> =
        fun.entries().into_iter().filter(|f| fun.tgt.hom_count(fun.obj[f.src], fun.obj[f.tgt]) >= 2).collect();
    let nat = setup(tabulate_nat(&monad.unit, &small, &wide), "tabulate e")?;

    let checkers: Vec<(&str, Mutant)> = vec![
        (
            "category",
            Box::new(|rng| {
                let cell = cells[rng.gen_range(0..cells.len())];
                let homs = category.hom_count(cell.a, cell.c) as u32;
                let value = (category.compose_entry(cell) + rng.gen_range(1..homs)) % homs;
                Some(check_category(&category.with_compose_entry(cell, value)))
            }),
        ),
        (
            "functor",
            Box::new(|rng| {
                let at = entries[rng.gen_range(0..entries.len())];
                let homs = fun.tgt.hom_count(fun.obj[at.src], fun.obj[at.tgt]) as u32;
                let value = (fun.mor[at.src][at.tgt][at.idx as usize] + rng.gen_range(1..homs)) % homs;
                Some(check_fun(&fun.with_entry(at, value)))
            }),
        ),
        (
            "naturality",
            Box::new(|rng| {
                let a = rng.gen_range(1..nat.comp.len());
                let homs = wide.table.hom_count(nat.src.obj[a], nat.tgt.obj[a]) as u32;
                let value = (nat.comp[a]? + rng.gen_range(1..homs)) % homs;
                Some(check_nat(&nat.with_component(a, Some(value))))
            }),
        ),
        (
            "monad",
            Box::new(|rng| {
                let mutant = if rng.gen_bool(0.5) {
                    monad.with_mult(mutate_nat(&monad.mult, rng)?)
                } else {
                    monad.with_unit(mutate_nat(&monad.unit, rng)?)
                };
                Some(check_monad(&mutant))
            }),
        ),
        (
            "comonad",
            Box::new(|rng| {
                let mutant = if rng.gen_bool(0.5) {
                    comonad.with_comult(mutate_nat(&comonad.comult, rng)?)
                } else {
                    comonad.with_counit(mutate_nat(&comonad.counit, rng)?)
                };
                Some(check_comonad(&mutant))
            }),
        ),
        ("entwining", Box::new(|rng| Some(check_entwining(&entwining.with_law(mutate_nat(&entwining.law, rng)?))))),
        (
            "bimonad",
            Box::new(|rng| {
                let mut mutant = bimonad.clone();
                let e = &bimonad.entwining;
                match rng.gen_range(0..3) {
                    0 => mutant.entwining = e.with_law(mutate_nat(&e.law, rng)?),
                    1 => mutant.entwining.monad = e.monad.with_mult(mutate_nat(&e.monad.mult, rng)?),
                    _ => mutant.entwining.comonad = e.comonad.with_comult(mutate_nat(&e.comonad.comult, rng)?),
                }
                Some(check_bimonad(&mutant))
            }),
        ),
    ];
    let unmutated = [
        check_category(&category),
        check_fun(&fun),
        check_nat(&nat),
        check_monad(&monad),
        check_comonad(&comonad),
        check_entwining(&entwining),
        check_bimonad(&bimonad),
        check_functor(&monad.functor),
    ];
    ensure(unmutated.iter().all(|r| matches!(r, Ok(v) if v.is_pass())), || {
        "an unmutated structure fails its checker".into()
    })?;
    let mut report = Vec::new();
    for (salt, (name, mutant)) in checkers.into_iter().enumerate() {
        let (missed, malformed) = undetected(mutant, salt as u64);
        ensure(missed == 0, || format!("{name}: {missed} of {MUTATIONS} mutations passed"))?;
        report.push(format!("{name} {}/{MUTATIONS}", MUTATIONS - malformed));
    }
    Ok(format!("law failures out of {MUTATIONS} mutations: {}; 0 false passes", report.join(", ")))
}

fn corpus_json(jobs: usize) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_galois-lab"))
        .args(["corpus", "check", "--format", "json", "--jobs", &jobs.to_string()])
        .output()
        .map_err(|e| format!("spawn: {e}"))?;
    ensure(matches!(out.status.code(), Some(0 | 1)), || format!("exit status {:?}", out.status))?;
    ensure(out.stdout.starts_with(b"["), || "corpus report is not a JSON array".into())?;
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let first = corpus_json(1)?;
    let second = corpus_json(1)?;
    let parallel = corpus_json(8)?;
    ensure(first == second, || "two --jobs 1 runs differ".into())?;
    ensure(first == parallel, || "--jobs 1 and --jobs 8 differ".into())?;
    Ok(format!("3 full-corpus runs byte-identical ({} bytes)", first.len()))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            title: "antipode exists iff group",
            expected: Duration::from_secs(5),
            run: antipode_iff_group,
        },
        Criterion {
            id: 2,
            title: "Hopf modules are free",
            expected: Duration::from_secs(60),
            run: hopf_modules_theorem,
        },
        Criterion {
            id: 3,
            title: "three Galois conditions agree",
            expected: Duration::from_secs(120),
            run: three_galois_conditions,
        },
        Criterion {
            id: 4,
            title: "equaliser monad is Stab × −",
            expected: Duration::from_secs(30),
            run: equaliser_monad_is_stabiliser,
        },
        Criterion {
            id: 5,
            title: "Galois-entwining factorisation",
            expected: Duration::from_secs(60),
            run: galois_entwining_factorisation,
        },
        Criterion {
            id: 6,
            title: "Galois objects and comma descent",
            expected: Duration::from_secs(60),
            run: galois_objects,
        },
        Criterion {
            id: 7,
            title: "lifting and entwining coherence",
            expected: Duration::from_secs(60),
            run: lifting_coherence,
        },
        Criterion { id: 8, title: "mutation soundness", expected: Duration::from_secs(60), run: mutation_soundness },
        Criterion { id: 9, title: "determinism", expected: Duration::from_secs(180), run: determinism },
    ];
    let mut failed = 0;
    for c in criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let timing = format!("{:.1} s, expected < {} s", elapsed.as_secs_f64(), c.expected.as_secs());
        match outcome {
            Ok(detail) => println!("PASS {} {}: {detail} ({timing})", c.id, c.title),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {}: {detail} ({timing})", c.id, c.title);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
