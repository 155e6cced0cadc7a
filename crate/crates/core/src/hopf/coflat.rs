use rayon::prelude::*;
use serde::Serialize;

use super::galois_object::gamma_and_galois_object;
use crate::fincat::{Verdict, Witness};
use crate::finset::{all_functions, coequaliser, product_map, ActionTable, FnEnc};

/// Whether `e: b -> q` is a coequaliser of `f, g: a -> b`: it coequalises, is onto,
/// and identifies exactly what the computed coequaliser identifies.
fn is_coequaliser(f: &FnEnc, g: &FnEnc, e: &FnEnc) -> bool {
    if e.after(f) != e.after(g) || (0..e.cod()).any(|z| !e.values().contains(&(z as u32))) {
        return false;
    }
    let (_, q) = coequaliser(f, g);
    let b = f.cod();
    (0..b).all(|y| (0..b).all(|z| (e.at(y) == e.at(z)) == (q.at(y) == q.at(z))))
}

/// Every parallel pair `a ⇉ b` with `a, b ≤ sub_budget`.
fn parallel_pairs(sub_budget: usize) -> Vec<(FnEnc, FnEnc)> {
    let mut out = Vec::new();
    for a in 0..=sub_budget {
        for b in 0..=sub_budget {
            let maps: Vec<FnEnc> = all_functions(a, b).collect();
            for f in &maps {
                out.extend(maps.iter().map(|g| (f.clone(), g.clone())));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoflatVerdict {
    pub preserves: Verdict,
    pub reflects: Verdict,
}

impl CoflatVerdict {
    pub fn coflat(&self) -> &Verdict {
        &self.preserves
    }

    pub fn faithfully_coflat(&self) -> Verdict {
        Verdict::all([self.preserves.clone(), self.reflects.clone()])
    }
}

/// `c × −` against every coequaliser diagram of sets up to `sub_budget`.
pub fn coflat_check(c: usize, sub_budget: usize) -> CoflatVerdict {
    let pairs = parallel_pairs(sub_budget);
    let times = |h: &FnEnc| product_map(&FnEnc::identity(c), h);
    let describe = |f: &FnEnc, g: &FnEnc| format!("{:?} ⇉ {:?}", f.values(), g.values());
    let preserves = pairs
        .par_iter()
        .find_map_first(|(f, g)| {
            let (_, q) = coequaliser(f, g);
            (!is_coequaliser(&times(f), &times(g), &times(&q)))
                .then(|| Witness::new("c × − preserves the coequaliser", describe(f, g)))
        })
        .map_or_else(Verdict::pass, Verdict::fail);
    let reflects = pairs
        .par_iter()
        .find_map_first(|(f, g)| {
            (0..=sub_budget).find_map(|q| {
                all_functions(f.cod(), q)
                    .filter(|e| e.after(f) == e.after(g))
                    .find(|e| is_coequaliser(&times(f), &times(g), &times(e)) && !is_coequaliser(f, g, e))
                    .map(|e| Witness::new("c × − reflects coequalisers", describe(f, g)).with_data(e.values().to_vec()))
            })
        })
        .map_or_else(Verdict::pass, Verdict::fail);
    CoflatVerdict { preserves, reflects }
}

/// A Galois object over a coflat monoid is faithfully coflat.
pub fn coflat_galois_crosscheck(action: &ActionTable, sub_budget: usize) -> Verdict {
    let b = action.monoid().order();
    let premise =
        Verdict::all([coflat_check(b, sub_budget).preserves, gamma_and_galois_object(action, sub_budget).verdict()]);
    let conclusion = coflat_check(action.size(), sub_budget).faithfully_coflat();
    Verdict::implies("coflat b and Galois c ⟹ c faithfully coflat", &premise, &conclusion)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::corpus;

    #[test]
    fn unit_object() {
        let v = coflat_check(1, 3);
        assert!(v.faithfully_coflat().is_pass());
    }

    #[test]
    fn two_is_faithfully_coflat() {
        assert!(coflat_check(2, 3).faithfully_coflat().is_pass());
    }

    #[test]
    fn empty_is_coflat_but_not_faithfully() {
        let v = coflat_check(0, 2);
        assert!(v.coflat().is_pass());
        assert!(v.reflects.is_fail());
    }

    #[test]
    fn recognises_non_coequalisers() {
        let f = FnEnc::from_fn(1, 2, |_| 0);
        let g = FnEnc::from_fn(1, 2, |_| 1);
        assert!(is_coequaliser(&f, &g, &FnEnc::constant(2, 1, 0)));
        assert!(!is_coequaliser(&f, &g, &FnEnc::identity(2)));
        assert!(!is_coequaliser(&f, &g, &FnEnc::constant(2, 2, 0)));
    }

    #[test]
    fn galois_objects_in_corpus() {
        for a in corpus().actions.iter().filter(|a| a.action.size() <= 3) {
            assert!(coflat_galois_crosscheck(&a.action, 2).is_pass(), "{}", a.name);
        }
    }
}
