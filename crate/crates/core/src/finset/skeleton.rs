use serde::Serialize;
use thiserror::Error;

use super::fnenc::{all_functions, FnEnc};
use crate::fincat::{Category, Coequalisers, Equalisers, StructuralError};

/// Largest carrier size considered; object `n` stands for `{0,…,n-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SkeletonBudget(usize);

#[derive(Debug, Error, PartialEq, Eq)]
#[error("skeleton budget must be at least 1")]
pub struct ZeroBudget;

impl SkeletonBudget {
    pub fn new(n: usize) -> Result<Self, ZeroBudget> {
        if n == 0 {
            Err(ZeroBudget)
        } else {
            Ok(SkeletonBudget(n))
        }
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// The skeleton of finite sets. Objects up to the budget are enumerated;
/// morphisms between larger carriers are still valid arrows of the category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinSet {
    budget: usize,
}

impl FinSet {
    pub fn new(budget: SkeletonBudget) -> Self {
        FinSet { budget: budget.get() }
    }

    /// Convenience for tests and internal builders; panics on zero.
    pub fn up_to(n: usize) -> Self {
        FinSet::new(SkeletonBudget::new(n).expect("budget must be positive"))
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn structure(&self) -> CanonicalStructure {
        CanonicalStructure { budget: self.budget }
    }
}

impl Category for FinSet {
    type Obj = usize;
    type Mor = FnEnc;

    fn name(&self) -> String {
        format!("FinSet<={}", self.budget)
    }

    fn objects(&self) -> Vec<usize> {
        (0..=self.budget).collect()
    }

    fn hom(&self, a: &usize, b: &usize) -> Vec<FnEnc> {
        all_functions(*a, *b).collect()
    }

    fn compose(&self, g: &FnEnc, f: &FnEnc) -> FnEnc {
        g.after(f)
    }

    fn identity(&self, a: &usize) -> FnEnc {
        FnEnc::identity(*a)
    }

    fn contains(&self, a: &usize, b: &usize, f: &FnEnc) -> bool {
        f.dom() == *a && f.cod() == *b
    }

    fn size(&self, a: &usize) -> usize {
        *a
    }

    fn complete_up_to(&self) -> Option<usize> {
        Some(self.budget)
    }

    fn encode(&self, f: &FnEnc) -> Vec<u32> {
        f.values().to_vec()
    }

    fn describe(&self, a: &usize) -> String {
        a.to_string()
    }

    fn retractions(&self, a: &usize, b: &usize, f: &FnEnc) -> Vec<FnEnc> {
        if !f.is_injective() {
            return Vec::new();
        }
        let mut choices: Vec<Vec<u32>> = vec![(0..*a as u32).collect(); *b];
        for (x, &y) in f.values().iter().enumerate() {
            choices[y as usize] = vec![x as u32];
        }
        product_of_choices(&choices, *a)
    }

    fn sections(&self, a: &usize, b: &usize, f: &FnEnc) -> Vec<FnEnc> {
        let mut choices: Vec<Vec<u32>> = vec![Vec::new(); *b];
        for (x, &y) in f.values().iter().enumerate() {
            choices[y as usize].push(x as u32);
        }
        product_of_choices(&choices, *a)
    }

    fn inverse(&self, _a: &usize, _b: &usize, f: &FnEnc) -> Option<FnEnc> {
        f.inverse()
    }

    fn find_iso(&self, a: &usize, b: &usize) -> Option<FnEnc> {
        (a == b).then(|| FnEnc::identity(*a))
    }

    fn is_iso(&self, _a: &usize, _b: &usize, f: &FnEnc) -> bool {
        f.is_bijective()
    }

    fn is_mono(&self, _a: &usize, _b: &usize, f: &FnEnc) -> bool {
        f.is_injective()
    }
}

/// All maps choosing `choices[i]` at position `i`, in lexicographic order.
pub(crate) fn product_of_choices(choices: &[Vec<u32>], cod: usize) -> Vec<FnEnc> {
    if choices.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; choices.len()];
    loop {
        out.push(FnEnc::raw(idx.iter().zip(choices).map(|(&i, c)| c[i]).collect(), cod));
        let mut pos = choices.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Row-major pairing `(i, j) ↦ i·m + j` into `n × m`.
pub fn pair_index(i: usize, j: usize, m: usize) -> usize {
    i * m + j
}

/// `⟨f, g⟩: x -> n × m` for `f: x -> n`, `g: x -> m`.
pub fn pairing(f: &FnEnc, g: &FnEnc) -> FnEnc {
    assert_eq!(f.dom(), g.dom());
    let m = g.cod();
    FnEnc::from_fn(f.dom(), f.cod() * m, |x| pair_index(f.at(x), g.at(x), m))
}

/// `f × g: a × c -> b × d`.
pub fn product_map(f: &FnEnc, g: &FnEnc) -> FnEnc {
    let (c, d) = (g.dom(), g.cod());
    FnEnc::from_fn(f.dom() * c, f.cod() * d, |p| pair_index(f.at(p / c), g.at(p % c), d))
}

pub fn projection_left(n: usize, m: usize) -> FnEnc {
    FnEnc::from_fn(n * m, n, |p| p / m)
}

pub fn projection_right(n: usize, m: usize) -> FnEnc {
    FnEnc::from_fn(n * m, m, |p| p % m)
}

/// `τ: n × m -> m × n`.
pub fn symmetry(n: usize, m: usize) -> FnEnc {
    FnEnc::from_fn(n * m, m * n, |p| pair_index(p % m, p / m, n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Product {
    pub apex: usize,
    pub left: FnEnc,
    pub right: FnEnc,
}

/// Chosen limits and colimits in the skeleton, refusing products beyond the budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CanonicalStructure {
    budget: usize,
}

impl CanonicalStructure {
    pub fn terminal(&self) -> usize {
        1
    }

    pub fn terminal_map(&self, a: usize) -> FnEnc {
        FnEnc::constant(a, 1, 0)
    }

    pub fn product(&self, n: usize, m: usize) -> Result<Product, StructuralError> {
        let apex = n * m;
        if apex > self.budget {
            return Err(StructuralError::OutOfBudget { needed: apex, budget: self.budget });
        }
        Ok(Product { apex, left: projection_left(n, m), right: projection_right(n, m) })
    }

    pub fn equaliser(&self, f: &FnEnc, g: &FnEnc) -> (usize, FnEnc) {
        equaliser(f, g)
    }

    pub fn coequaliser(&self, f: &FnEnc, g: &FnEnc) -> (usize, FnEnc) {
        coequaliser(f, g)
    }

    pub fn symmetry(&self, n: usize, m: usize) -> Result<FnEnc, StructuralError> {
        self.product(n, m)?;
        Ok(symmetry(n, m))
    }
}

/// `{i : f(i) = g(i)}` with its order-preserving inclusion.
pub fn equaliser(f: &FnEnc, g: &FnEnc) -> (usize, FnEnc) {
    let agree: Vec<u32> = (0..f.dom()).filter(|&i| f.at(i) == g.at(i)).map(|i| i as u32).collect();
    (agree.len(), FnEnc::raw(agree, f.dom()))
}

/// Quotient by the equivalence generated by `f(i) ~ g(i)`, classes numbered by least member.
pub fn coequaliser(f: &FnEnc, g: &FnEnc) -> (usize, FnEnc) {
    quotient(f.cod(), (0..f.dom()).map(|i| (f.at(i), g.at(i))))
}

/// Quotient of `{0..n-1}` by the equivalence generated by `pairs`.
pub fn quotient(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> (usize, FnEnc) {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (a, b) in pairs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut label = vec![u32::MAX; n];
    let mut classes = 0u32;
    let mut map = Vec::with_capacity(n);
    for y in 0..n {
        let r = find(&mut parent, y);
        if label[r] == u32::MAX {
            label[r] = classes;
            classes += 1;
        }
        map.push(label[r]);
    }
    (classes as usize, FnEnc::raw(map, classes as usize))
}

impl Equalisers for FinSet {
    fn equaliser(&self, _a: &usize, _b: &usize, f: &FnEnc, g: &FnEnc) -> (usize, FnEnc) {
        equaliser(f, g)
    }

    fn factor_through_equaliser(&self, e: &FnEnc, h: &FnEnc) -> FnEnc {
        let mut position = vec![u32::MAX; e.cod()];
        for (i, &v) in e.values().iter().enumerate() {
            position[v as usize] = i as u32;
        }
        let map = h.values().iter().map(|&v| position[v as usize]).collect::<Vec<_>>();
        assert!(map.iter().all(|&p| p != u32::MAX), "map does not factor through the equaliser");
        FnEnc::raw(map, e.dom())
    }
}

impl Coequalisers for FinSet {
    fn coequaliser(&self, _a: &usize, _b: &usize, f: &FnEnc, g: &FnEnc) -> (usize, FnEnc) {
        coequaliser(f, g)
    }

    fn factor_through_coequaliser(&self, q: &FnEnc, h: &FnEnc) -> FnEnc {
        let mut map = vec![u32::MAX; q.cod()];
        for (y, &class) in q.values().iter().enumerate() {
            let v = h.values()[y];
            let slot = &mut map[class as usize];
            assert!(*slot == u32::MAX || *slot == v, "map does not factor through the coequaliser");
            *slot = v;
        }
        FnEnc::raw(map, h.cod())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_counts() {
        let s = FinSet::up_to(3);
        assert_eq!(s.hom(&2, &2).len(), 4);
        assert_eq!(s.hom(&3, &2).len(), 8);
        assert_eq!(s.hom(&0, &0).len(), 1);
        assert_eq!(s.hom(&1, &0).len(), 0);
    }

    #[test]
    fn products_are_row_major() {
        let p = FinSet::up_to(6).structure().product(2, 3).unwrap();
        assert_eq!(p.left.values(), &[0, 0, 0, 1, 1, 1]);
        assert_eq!(p.right.values(), &[0, 1, 2, 0, 1, 2]);
        assert_eq!(
            FinSet::up_to(4).structure().product(2, 3),
            Err(StructuralError::OutOfBudget { needed: 6, budget: 4 })
        );
    }

    #[test]
    fn equaliser_and_coequaliser_examples() {
        let f = FnEnc::new(vec![0, 1, 1], 2).unwrap();
        let g = FnEnc::new(vec![0, 0, 1], 2).unwrap();
        let (apex, incl) = equaliser(&f, &g);
        assert_eq!((apex, incl.values()), (2, &[0, 2][..]));

        let f = FnEnc::new(vec![0], 2).unwrap();
        let g = FnEnc::new(vec![1], 2).unwrap();
        let (apex, q) = coequaliser(&f, &g);
        assert_eq!((apex, q.values()), (1, &[0, 0][..]));
    }

    #[test]
    fn coequaliser_numbers_classes_by_least_member() {
        let (n, q) = quotient(4, [(3, 1)]);
        assert_eq!((n, q.values()), (3, &[0, 1, 2, 1][..]));
    }

    #[test]
    fn constructive_splittings_match_exhaustive_search() {
        let s = FinSet::up_to(3);
        for a in 0..=3usize {
            for b in 0..=3usize {
                for f in s.hom(&a, &b) {
                    let id_a = s.identity(&a);
                    let id_b = s.identity(&b);
                    let r: Vec<_> = s.hom(&b, &a).into_iter().filter(|r| s.compose(r, &f) == id_a).collect();
                    let sec: Vec<_> = s.hom(&b, &a).into_iter().filter(|x| s.compose(&f, x) == id_b).collect();
                    assert_eq!(s.retractions(&a, &b, &f), r);
                    assert_eq!(s.sections(&a, &b, &f), sec);
                }
            }
        }
    }

    #[test]
    fn symmetry_swaps_coordinates() {
        let t = symmetry(2, 3);
        for i in 0..2 {
            for j in 0..3 {
                assert_eq!(t.at(pair_index(i, j, 3)), pair_index(j, i, 2));
            }
        }
        assert_eq!(symmetry(3, 2).after(&t), FnEnc::identity(6));
    }
}
