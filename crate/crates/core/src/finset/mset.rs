use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;

use super::fnenc::FnEnc;
use super::monoid::{ActionTable, MonoidTable};
use crate::fincat::Category;

const UNSET: u32 = u32::MAX;

/// A finite `M`-set `X` together with an equivariant label `ω: X -> C`.
///
/// `act[m·size + x] = m·x`. With `C` a point this is a plain `M`-set; with `M`
/// trivial it is a set over `C`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MSet {
    size: usize,
    act: Vec<u32>,
    label: Vec<u32>,
}

impl fmt::Debug for MSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[u32]> = if self.size == 0 { Vec::new() } else { self.act.chunks(self.size).skip(1).collect() };
        write!(f, "MSet{}{:?}/{:?}", self.size, rows, self.label)
    }
}

impl MSet {
    /// Raw constructor; validity is checked by [`MSetsOver::is_object`].
    pub fn new(size: usize, act: Vec<u32>, label: Vec<u32>) -> Self {
        MSet { size, act, label }
    }

    /// Builds from closures for the action and the label.
    pub fn from_fn(
        order: usize,
        size: usize,
        act: impl Fn(usize, usize) -> usize,
        label: impl Fn(usize) -> usize,
    ) -> Self {
        let act = (0..order * size).map(|i| act(i / size.max(1), i % size.max(1)) as u32).collect();
        MSet { size, act, label: (0..size).map(|x| label(x) as u32).collect() }
    }

    pub fn from_action(action: &ActionTable, label: Vec<u32>) -> Self {
        MSet { size: action.size(), act: action.flat().to_vec(), label }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn act(&self, m: usize, x: usize) -> usize {
        self.act[m * self.size + x] as usize
    }

    pub fn label(&self, x: usize) -> usize {
        self.label[x] as usize
    }

    pub fn labels(&self) -> &[u32] {
        &self.label
    }

    pub fn action_table(&self, monoid: &MonoidTable) -> ActionTable {
        ActionTable::from_flat(monoid.clone(), self.size, self.act.clone())
    }

    pub fn action_flat(&self) -> &[u32] {
        &self.act
    }

    /// The same structure transported along a bijection `perm: X -> X'`.
    pub fn transport(&self, perm: &FnEnc) -> MSet {
        let n = self.size;
        let order = self.act.len().checked_div(n).unwrap_or(0);
        let inv = perm.inverse().expect("transport along a bijection");
        MSet::from_fn(order, n, |m, y| perm.at(self.act(m, inv.at(y))), |y| self.label(inv.at(y)))
    }

    fn invariant(&self, order: usize) -> Vec<Vec<u32>> {
        let mut sig: Vec<Vec<u32>> = (0..self.size)
            .map(|x| {
                let mut s = vec![self.label[x]];
                let mut orbit: Vec<usize> = (0..order).map(|m| self.act(m, x)).collect();
                orbit.sort_unstable();
                orbit.dedup();
                s.push(orbit.len() as u32);
                for m in 0..order {
                    let y = self.act(m, x);
                    s.push(self.label[y]);
                    s.push(u32::from(y == x));
                }
                s.push(
                    (0..order)
                        .flat_map(|m| (0..self.size).map(move |z| (m, z)))
                        .filter(|&(m, z)| self.act(m, z) == x)
                        .count() as u32,
                );
                s
            })
            .collect();
        sig.sort_unstable();
        sig
    }
}

/// `M`-sets over a fixed `M`-set `C`, with equivariant label-preserving maps.
///
/// Objects are enumerated up to isomorphism, one representative per class, for
/// carriers up to the budget.
pub struct MSetsOver {
    base: ActionTable,
    budget: usize,
    reps: OnceLock<Vec<MSet>>,
}

impl fmt::Debug for MSetsOver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MSetsOver({:?} over {:?}, <= {})", self.base.monoid(), self.base, self.budget)
    }
}

impl MSetsOver {
    pub fn new(base: ActionTable, budget: usize) -> Self {
        MSetsOver { base, budget, reps: OnceLock::new() }
    }

    /// Plain `M`-sets.
    pub fn plain(monoid: &MonoidTable, budget: usize) -> Self {
        MSetsOver::new(ActionTable::trivial(monoid, 1), budget)
    }

    /// Sets over `c`, the comma category of the skeleton over `c`.
    pub fn over(c: usize, budget: usize) -> Self {
        MSetsOver::new(ActionTable::trivial(&MonoidTable::trivial(), c), budget)
    }

    pub fn monoid(&self) -> &MonoidTable {
        self.base.monoid()
    }

    pub fn base(&self) -> &ActionTable {
        &self.base
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    fn order(&self) -> usize {
        self.monoid().order()
    }

    pub fn is_object(&self, x: &MSet) -> bool {
        let k = self.order();
        if x.act.len() != k * x.size || x.label.len() != x.size {
            return false;
        }
        if x.act.iter().any(|&v| v as usize >= x.size) || x.label.iter().any(|&c| c as usize >= self.base.size()) {
            return false;
        }
        let m = self.monoid();
        (0..x.size).all(|p| {
            x.act(0, p) == p
                && (0..k).all(|a| {
                    x.label(x.act(a, p)) == self.base.act(a, x.label(p))
                        && (0..k).all(|b| x.act(m.mul(a, b), p) == x.act(a, x.act(b, p)))
                })
        })
    }

    /// Whether `f: X -> Y` is equivariant and label preserving.
    pub fn is_hom(&self, x: &MSet, y: &MSet, f: &FnEnc) -> bool {
        f.dom() == x.size
            && f.cod() == y.size
            && (0..x.size).all(|p| {
                y.label(f.at(p)) == x.label(p) && (0..self.order()).all(|m| f.at(x.act(m, p)) == y.act(m, f.at(p)))
            })
    }

    /// Every structure on `{0..n-1}`; with `sorted_labels` only non-decreasing labellings.
    pub fn structures_on(&self, n: usize, sorted_labels: bool) -> Vec<MSet> {
        let c = self.base.size();
        let labellings = labellings(n, c, sorted_labels);
        labellings.into_par_iter().flat_map_iter(|label| ActionSearch::new(self, n, label).run()).collect()
    }

    /// One representative per isomorphism class on exactly `n` points.
    pub fn classes_on(&self, n: usize) -> Vec<MSet> {
        let mut reps: Vec<MSet> = Vec::new();
        let mut buckets: HashMap<Vec<Vec<u32>>, Vec<usize>> = HashMap::new();
        for s in self.structures_on(n, true) {
            let inv = s.invariant(self.order());
            let bucket = buckets.entry(inv).or_default();
            if bucket.iter().all(|&i| self.find_iso(&reps[i], &s).is_none()) {
                bucket.push(reps.len());
                reps.push(s);
            }
        }
        reps
    }

    fn search(&self, x: &MSet, y: &MSet, injective: bool, first_only: bool) -> Vec<FnEnc> {
        if injective && x.size != y.size {
            return Vec::new();
        }
        let mut s = HomSearch {
            cat: self,
            x,
            y,
            injective,
            first_only,
            assign: vec![UNSET; x.size],
            used: vec![false; y.size],
            trail: Vec::new(),
            out: Vec::new(),
        };
        s.go(0);
        s.out
    }
}

fn labellings(n: usize, c: usize, sorted: bool) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn go(n: usize, c: usize, sorted: bool, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let start = if sorted { cur.last().copied().unwrap_or(0) } else { 0 };
        for v in start..c as u32 {
            cur.push(v);
            go(n, c, sorted, cur, out);
            cur.pop();
        }
    }
    go(n, c, sorted, &mut cur, &mut out);
    out
}

struct HomSearch<'a> {
    cat: &'a MSetsOver,
    x: &'a MSet,
    y: &'a MSet,
    injective: bool,
    first_only: bool,
    assign: Vec<u32>,
    used: Vec<bool>,
    trail: Vec<usize>,
    out: Vec<FnEnc>,
}

impl HomSearch<'_> {
    fn go(&mut self, from: usize) {
        if self.first_only && !self.out.is_empty() {
            return;
        }
        let Some(p) = (from..self.x.size).find(|&p| self.assign[p] == UNSET) else {
            self.out.push(FnEnc::raw(self.assign.clone(), self.y.size));
            return;
        };
        for t in 0..self.y.size {
            if self.y.label[t] != self.x.label[p] || (self.injective && self.used[t]) {
                continue;
            }
            let mark = self.trail.len();
            if self.propagate(p, t) {
                self.go(p + 1);
            }
            self.undo(mark);
            if self.first_only && !self.out.is_empty() {
                return;
            }
        }
    }

    fn set(&mut self, p: usize, t: usize) -> bool {
        if self.injective && self.used[t] {
            return false;
        }
        if self.x.label[p] != self.y.label[t] {
            return false;
        }
        self.assign[p] = t as u32;
        if self.injective {
            self.used[t] = true;
        }
        self.trail.push(p);
        true
    }

    fn propagate(&mut self, p: usize, t: usize) -> bool {
        if !self.set(p, t) {
            return false;
        }
        let mut stack = vec![p];
        let k = self.cat.order();
        while let Some(a) = stack.pop() {
            let b = self.assign[a] as usize;
            for m in 1..k {
                let (a2, b2) = (self.x.act(m, a), self.y.act(m, b));
                match self.assign[a2] {
                    UNSET => {
                        if !self.set(a2, b2) {
                            return false;
                        }
                        stack.push(a2);
                    }
                    v if v as usize != b2 => return false,
                    _ => {}
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let p = self.trail.pop().expect("trail entry");
            let t = self.assign[p] as usize;
            self.assign[p] = UNSET;
            if self.injective {
                self.used[t] = false;
            }
        }
    }
}

/// Backtracking over action tables for a fixed labelling.
struct ActionSearch<'a> {
    monoid: &'a MonoidTable,
    n: usize,
    label: Vec<u32>,
    act: Vec<u32>,
    /// Points carrying each label.
    by_label: Vec<Vec<u32>>,
    base: &'a ActionTable,
    out: Vec<MSet>,
}

impl<'a> ActionSearch<'a> {
    fn new(cat: &'a MSetsOver, n: usize, label: Vec<u32>) -> Self {
        let k = cat.order();
        let mut act = vec![UNSET; k * n];
        for (x, slot) in act.iter_mut().take(n).enumerate() {
            *slot = x as u32;
        }
        let mut by_label = vec![Vec::new(); cat.base.size()];
        for (x, &c) in label.iter().enumerate() {
            by_label[c as usize].push(x as u32);
        }
        ActionSearch { monoid: cat.monoid(), n, label, act, by_label, base: &cat.base, out: Vec::new() }
    }

    fn run(mut self) -> Vec<MSet> {
        self.go(0);
        self.out
    }

    fn get(&self, m: usize, x: usize) -> u32 {
        self.act[m * self.n + x]
    }

    fn go(&mut self, var: usize) {
        let k = self.monoid.order();
        let per_point = k - 1;
        if var == self.n * per_point {
            self.out.push(MSet { size: self.n, act: self.act.clone(), label: self.label.clone() });
            return;
        }
        let (x, m) = (var / per_point, 1 + var % per_point);
        let target_label = self.base.act(m, self.label[x] as usize);
        for i in 0..self.by_label[target_label].len() {
            let y = self.by_label[target_label][i];
            self.act[m * self.n + x] = y;
            if self.consistent(m, x, y as usize) {
                self.go(var + 1);
            }
        }
        self.act[m * self.n + x] = UNSET;
    }

    /// Every associativity instance that mentions the entry `m·x = y`.
    fn consistent(&self, m: usize, x: usize, y: usize) -> bool {
        let k = self.monoid.order();
        let mul = |a, b| self.monoid.mul(a, b);
        for p in 0..k {
            let (lhs, rhs) = (self.get(p, y), self.get(mul(p, m), x));
            if lhs != UNSET && rhs != UNSET && lhs != rhs {
                return false;
            }
        }
        for q in 0..k {
            for z in 0..self.n {
                if self.get(q, z) as usize == x {
                    let rhs = self.get(mul(m, q), z);
                    if rhs != UNSET && rhs as usize != y {
                        return false;
                    }
                }
            }
        }
        for p in 0..k {
            for q in 0..k {
                if mul(p, q) == m {
                    let w = self.get(q, x);
                    if w != UNSET {
                        let v = self.get(p, w as usize);
                        if v != UNSET && v as usize != y {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

impl Category for MSetsOver {
    type Obj = MSet;
    type Mor = FnEnc;

    fn name(&self) -> String {
        format!("MSets[{:?} over {:?}]<={}", self.monoid(), self.base, self.budget)
    }

    fn objects(&self) -> Vec<MSet> {
        self.reps.get_or_init(|| (0..=self.budget).flat_map(|n| self.classes_on(n)).collect()).clone()
    }

    fn hom(&self, a: &MSet, b: &MSet) -> Vec<FnEnc> {
        self.search(a, b, false, false)
    }

    fn compose(&self, g: &FnEnc, f: &FnEnc) -> FnEnc {
        g.after(f)
    }

    fn identity(&self, a: &MSet) -> FnEnc {
        FnEnc::identity(a.size)
    }

    fn contains(&self, a: &MSet, b: &MSet, f: &FnEnc) -> bool {
        self.is_hom(a, b, f)
    }

    fn size(&self, a: &MSet) -> usize {
        a.size
    }

    fn complete_up_to(&self) -> Option<usize> {
        Some(self.budget)
    }

    fn encode(&self, f: &FnEnc) -> Vec<u32> {
        f.values().to_vec()
    }

    fn inverse(&self, a: &MSet, b: &MSet, f: &FnEnc) -> Option<FnEnc> {
        f.inverse().filter(|g| self.is_hom(b, a, g))
    }

    fn is_iso(&self, a: &MSet, b: &MSet, f: &FnEnc) -> bool {
        self.inverse(a, b, f).is_some()
    }

    fn find_iso(&self, a: &MSet, b: &MSet) -> Option<FnEnc> {
        if a.size != b.size {
            return None;
        }
        self.search(a, b, true, true).into_iter().next()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::FinSet;

    #[test]
    fn involution_count_on_four_points() {
        let z2 = MSetsOver::plain(&MonoidTable::cyclic(2), 4);
        assert_eq!(z2.structures_on(4, false).len(), 10);
    }

    #[test]
    fn enumerated_structures_are_valid() {
        let cat = MSetsOver::new(ActionTable::regular(&MonoidTable::idem2()), 3);
        for n in 0..=3 {
            for s in cat.structures_on(n, false) {
                assert!(cat.is_object(&s), "{s:?}");
            }
        }
    }

    #[test]
    fn z3_sets_up_to_iso() {
        // Partitions into fixed points and 3-cycles.
        let cat = MSetsOver::plain(&MonoidTable::cyclic(3), 6);
        let counts: Vec<usize> = (0..=6).map(|n| cat.classes_on(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 2, 2, 3]);
    }

    #[test]
    fn homs_agree_with_filtering_all_maps() {
        let cat = MSetsOver::new(ActionTable::regular(&MonoidTable::cyclic(2)), 4);
        let sets = FinSet::up_to(4);
        let objs = cat.objects();
        for a in &objs {
            for b in &objs {
                let brute: Vec<FnEnc> =
                    sets.hom(&a.size(), &b.size()).into_iter().filter(|f| cat.is_hom(a, b, f)).collect();
                assert_eq!(cat.hom(a, b), brute);
            }
        }
    }

    #[test]
    fn sets_over_c_are_label_counts() {
        let cat = MSetsOver::over(2, 3);
        assert_eq!(cat.classes_on(3).len(), 4);
    }

    #[test]
    fn transport_gives_isomorphic_copy() {
        let cat = MSetsOver::plain(&MonoidTable::cyclic(3), 4);
        let s = &cat.classes_on(4)[1];
        let moved = s.transport(&FnEnc::new(vec![3, 1, 0, 2], 4).unwrap());
        assert!(cat.is_object(&moved));
        assert!(cat.find_iso(s, &moved).is_some());
    }
}
