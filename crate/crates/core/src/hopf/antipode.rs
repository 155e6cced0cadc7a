use std::sync::Arc;

use rayon::prelude::*;

use super::bimonad::Bimonad;
use crate::fincat::{check_natural, Category, Functor, Nat, StructuralError, Verdict, Witness};
use crate::finset::{all_functions, FinSet, FnEnc};

/// Natural endomorphisms of `H`, each determined by its component at `1`.
///
/// Every element of `H n` must lie in the image of `H x` for a point `x: 1 -> n`;
/// a component at `1` then extends in at most one way, and the extension is kept
/// when it is natural.
pub fn natural_endomorphisms(h: &Functor<FinSet, FinSet>) -> Result<Vec<Nat<FinSet, FinSet>>, StructuralError> {
    let cat = h.src.clone();
    let h1 = h.ob(&1);
    for n in cat.objects() {
        let hn = h.ob(&n);
        let mut covered = vec![false; hn];
        for p in points(n) {
            for v in h.map(&1, &n, &p).values() {
                covered[*v as usize] = true;
            }
        }
        if let Some(missing) = covered.iter().position(|c| !c) {
            return Err(StructuralError::Precondition(format!("H {n} element {missing} is not reached from a point")));
        }
    }
    let candidates: Vec<FnEnc> = all_functions(h1, h1).collect();
    let natural: Vec<Nat<FinSet, FinSet>> = candidates
        .into_par_iter()
        .filter_map(|at_one| {
            let components: Vec<FnEnc> =
                cat.objects().into_iter().map(|n| extend(h, &at_one, n)).collect::<Option<_>>()?;
            let (components, h2) = (Arc::new(components), h.clone());
            let nat = Nat::new("S", h.clone(), h.clone(), move |&n| match components.get(n) {
                Some(c) => c.clone(),
                None => extend(&h2, &at_one, n).expect("extension past the enumerated objects"),
            });
            check_natural(&nat).ok()?.is_pass().then_some(nat)
        })
        .collect();
    Ok(natural)
}

fn points(n: usize) -> impl Iterator<Item = FnEnc> {
    (0..n).map(move |x| FnEnc::constant(1, n, x))
}

/// The unique candidate component at `n` compatible with `at_one` along every point of `n`.
fn extend(h: &Functor<FinSet, FinSet>, at_one: &FnEnc, n: usize) -> Option<FnEnc> {
    let hn = h.ob(&n);
    let mut values = vec![u32::MAX; hn];
    for p in points(n) {
        let hp = h.map(&1, &n, &p);
        let image = hp.after(at_one);
        for (i, v) in hp.values().iter().enumerate() {
            let slot = &mut values[*v as usize];
            let want = image.values()[i];
            if *slot != u32::MAX && *slot != want {
                return None;
            }
            *slot = want;
        }
    }
    FnEnc::new(values, hn).ok()
}

/// `m·SH·δ = e·ε = m·HS·δ` at every object.
pub fn antipode_axioms<C: Category>(b: &Bimonad<C>, s: &Nat<C, C>) -> Verdict {
    let e = &b.entwining;
    let (t, g) = (&e.monad, &e.comonad);
    let cat = e.category();
    let h = b.functor();
    cat.objects()
        .into_par_iter()
        .find_map_first(|a| {
            let ha = h.ob(&a);
            let delta = g.comult.at(&a);
            let middle = cat.compose(&t.unit.at(&a), &g.counit.at(&a));
            let left = cat.compose(&t.mult.at(&a), &cat.compose(&s.at(&ha), &delta));
            let right = cat.compose(&t.mult.at(&a), &cat.compose(&h.map(&ha, &ha, &s.at(&a)), &delta));
            [("m·SH·δ = e·ε", left), ("m·HS·δ = e·ε", right)]
                .into_iter()
                .find(|(_, f)| *f != middle)
                .map(|(law, f)| Witness::unequal(law, cat.describe(&a), cat.encode(&f), cat.encode(&middle)))
        })
        .map_or_else(Verdict::pass, Verdict::fail)
}

/// Exhaustive antipode search over the natural endomorphisms of `H`.
pub struct AntipodeSearch {
    /// Number of natural endomorphisms examined.
    pub candidates: usize,
    /// Components at `1` of every candidate satisfying the axioms, in enumeration order.
    pub solutions: Vec<FnEnc>,
    pub antipode: Option<Nat<FinSet, FinSet>>,
}

impl AntipodeSearch {
    pub fn found(&self) -> bool {
        self.antipode.is_some()
    }

    /// At most one solution.
    pub fn unique(&self) -> Verdict {
        Verdict::check(self.solutions.len() <= 1, || {
            Witness::new("antipode unique", format!("{} solutions", self.solutions.len()))
        })
    }
}

pub fn antipode_search(b: &Bimonad<FinSet>) -> Result<AntipodeSearch, StructuralError> {
    let candidates = natural_endomorphisms(b.functor())?;
    let count = candidates.len();
    let solutions: Vec<Nat<FinSet, FinSet>> =
        candidates.into_par_iter().filter(|s| antipode_axioms(b, s).is_pass()).collect();
    Ok(AntipodeSearch {
        candidates: count,
        solutions: solutions.iter().map(|s| s.at(&1)).collect(),
        antipode: solutions.into_iter().next(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::{monoids_of_order, MonoidTable};
    use crate::hopf::monoid_bimonad;

    #[test]
    fn natural_endomorphisms_of_m_times_are_maps_of_m() {
        let s = Arc::new(FinSet::up_to(2));
        for m in [MonoidTable::trivial(), MonoidTable::cyclic(2), MonoidTable::cyclic(3)] {
            let k = m.order();
            let found = natural_endomorphisms(monoid_bimonad(&m, s.clone()).functor()).unwrap();
            assert_eq!(found.len(), k.pow(k as u32));
            // Each is σ × − for its component at 1.
            for nat in &found {
                let sigma = nat.at(&1);
                assert_eq!(nat.at(&2), FnEnc::from_fn(2 * k, 2 * k, |p| sigma.at(p / 2) * 2 + p % 2));
            }
        }
    }

    #[test]
    fn z3_antipode_is_inversion() {
        let s = Arc::new(FinSet::up_to(2));
        let search = antipode_search(&monoid_bimonad(&MonoidTable::cyclic(3), s)).unwrap();
        assert_eq!(search.candidates, 27);
        assert_eq!(search.solutions, vec![FnEnc::new(vec![0, 2, 1], 3).unwrap()]);
    }

    #[test]
    fn idem2_has_none() {
        let s = Arc::new(FinSet::up_to(2));
        let search = antipode_search(&monoid_bimonad(&MonoidTable::idem2(), s)).unwrap();
        assert_eq!(search.candidates, 4);
        assert!(!search.found());
    }

    #[test]
    fn trivial_monoid_antipode_is_identity() {
        let s = Arc::new(FinSet::up_to(2));
        let search = antipode_search(&monoid_bimonad(&MonoidTable::trivial(), s)).unwrap();
        assert_eq!(search.solutions, vec![FnEnc::identity(1)]);
    }

    #[test]
    fn antipode_iff_group_for_small_monoids() {
        let s = Arc::new(FinSet::up_to(1));
        for m in (1..=3).flat_map(monoids_of_order) {
            let search = antipode_search(&monoid_bimonad(&m, s.clone())).unwrap();
            assert_eq!(search.found(), m.is_group(), "{m:?}");
            assert!(search.unique().is_pass());
        }
    }
}
