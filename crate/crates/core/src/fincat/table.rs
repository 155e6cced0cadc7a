use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::category::Category;
use super::functor::{Functor, Nat};
use super::verdict::{CheckResult, StructuralError, Verdict, Witness};

/// A morphism of a [`FinCategory`]: position `idx` in the list `hom(src, tgt)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MorRef {
    pub src: usize,
    pub tgt: usize,
    pub idx: u32,
}

impl MorRef {
    pub fn new(src: usize, tgt: usize, idx: u32) -> Self {
        MorRef { src, tgt, idx }
    }

    fn code(self) -> Vec<u32> {
        vec![self.src as u32, self.tgt as u32, self.idx]
    }
}

/// A finite category as explicit tables.
///
/// `blocks[(a·n + b)·n + c]` holds `g ∘ f` for `f ∈ hom(a,b)`, `g ∈ hom(b,c)` at
/// position `g·|hom(a,b)| + f`, as an index into `hom(a,c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    name: String,
    labels: Vec<String>,
    sizes: Vec<usize>,
    hom_counts: Vec<usize>,
    identities: Vec<u32>,
    blocks: Vec<Vec<u32>>,
}

/// One cell of a composition table: `g ∘ f` with `f: a -> b`, `g: b -> c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ComposeCell {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub g: u32,
    pub f: u32,
}

impl FinCategory {
    /// Assembles raw tables. Nothing is validated here; see [`check_category`].
    pub fn from_tables(
        name: impl Into<String>,
        labels: Vec<String>,
        sizes: Vec<usize>,
        hom_counts: Vec<usize>,
        identities: Vec<u32>,
        blocks: Vec<Vec<u32>>,
    ) -> Self {
        FinCategory { name: name.into(), labels, sizes, hom_counts, identities, blocks }
    }

    /// The category with one object and one morphism.
    pub fn terminal() -> Self {
        FinCategory::from_tables("1", vec!["*".into()], vec![1], vec![1], vec![0], vec![vec![0]])
    }

    /// The poset `{0 < 1 < … < n-1}` as a category.
    pub fn chain(n: usize) -> Self {
        let counts = (0..n * n).map(|i| usize::from(i / n <= i % n)).collect::<Vec<_>>();
        let blocks = (0..n * n * n)
            .map(|i| {
                let (a, b, c) = (i / (n * n), (i / n) % n, i % n);
                if a <= b && b <= c {
                    vec![0]
                } else {
                    Vec::new()
                }
            })
            .collect();
        FinCategory::from_tables(
            format!("chain{n}"),
            (0..n).map(|i| i.to_string()).collect(),
            vec![1; n],
            counts,
            vec![0; n],
            blocks,
        )
    }

    pub fn object_count(&self) -> usize {
        self.labels.len()
    }

    pub fn hom_count(&self, a: usize, b: usize) -> usize {
        self.hom_counts[a * self.object_count() + b]
    }

    pub fn morphism_count(&self) -> usize {
        self.hom_counts.iter().sum()
    }

    fn block(&self, a: usize, b: usize, c: usize) -> &[u32] {
        let n = self.object_count();
        &self.blocks[(a * n + b) * n + c]
    }

    pub fn identity_of(&self, a: usize) -> MorRef {
        MorRef::new(a, a, self.identities[a])
    }

    pub fn compose_refs(&self, g: MorRef, f: MorRef) -> MorRef {
        assert_eq!(f.tgt, g.src, "not composable");
        let cols = self.hom_count(f.src, f.tgt);
        let idx = self.block(f.src, f.tgt, g.tgt)[g.idx as usize * cols + f.idx as usize];
        MorRef::new(f.src, g.tgt, idx)
    }

    /// Every cell of the composition table, in table order.
    pub fn compose_cells(&self) -> Vec<ComposeCell> {
        let n = self.object_count();
        let mut cells = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for g in 0..self.hom_count(b, c) as u32 {
                        for f in 0..self.hom_count(a, b) as u32 {
                            cells.push(ComposeCell { a, b, c, g, f });
                        }
                    }
                }
            }
        }
        cells
    }

    /// Copy with one composition entry overwritten.
    pub fn with_compose_entry(&self, cell: ComposeCell, value: u32) -> Self {
        let mut out = self.clone();
        let n = out.object_count();
        let cols = out.hom_count(cell.a, cell.b);
        out.blocks[(cell.a * n + cell.b) * n + cell.c][cell.g as usize * cols + cell.f as usize] = value;
        out
    }

    pub fn compose_entry(&self, cell: ComposeCell) -> u32 {
        let cols = self.hom_count(cell.a, cell.b);
        self.block(cell.a, cell.b, cell.c)[cell.g as usize * cols + cell.f as usize]
    }
}

impl Category for FinCategory {
    type Obj = usize;
    type Mor = MorRef;

    fn name(&self) -> String {
        self.name.clone()
    }

    fn objects(&self) -> Vec<usize> {
        (0..self.object_count()).collect()
    }

    fn hom(&self, a: &usize, b: &usize) -> Vec<MorRef> {
        (0..self.hom_count(*a, *b) as u32).map(|i| MorRef::new(*a, *b, i)).collect()
    }

    fn compose(&self, g: &MorRef, f: &MorRef) -> MorRef {
        self.compose_refs(*g, *f)
    }

    fn identity(&self, a: &usize) -> MorRef {
        self.identity_of(*a)
    }

    fn contains(&self, a: &usize, b: &usize, f: &MorRef) -> bool {
        f.src == *a && f.tgt == *b && (f.idx as usize) < self.hom_count(*a, *b)
    }

    fn size(&self, a: &usize) -> usize {
        self.sizes[*a]
    }

    fn encode(&self, f: &MorRef) -> Vec<u32> {
        f.code()
    }

    fn describe(&self, a: &usize) -> String {
        self.labels[*a].clone()
    }
}

fn structure_of(cat: &FinCategory) -> Result<(), StructuralError> {
    let n = cat.object_count();
    if cat.sizes.len() != n
        || cat.hom_counts.len() != n * n
        || cat.identities.len() != n
        || cat.blocks.len() != n * n * n
    {
        return Err(StructuralError::ShapeMismatch(format!("tables of {} do not match {n} objects", cat.name)));
    }
    for a in 0..n {
        if cat.identities[a] as usize >= cat.hom_count(a, a) {
            return Err(StructuralError::Dangling(format!("identity of object {a}")));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let block = cat.block(a, b, c);
                if block.len() != cat.hom_count(a, b) * cat.hom_count(b, c) {
                    return Err(StructuralError::ShapeMismatch(format!("composition block ({a},{b},{c})")));
                }
                if let Some(pos) = block.iter().position(|&v| v as usize >= cat.hom_count(a, c)) {
                    return Err(StructuralError::Dangling(format!("composition entry {pos} of block ({a},{b},{c})")));
                }
            }
        }
    }
    Ok(())
}

/// Identity and associativity laws over every entry; the witness is the first bad triple.
pub fn check_category(cat: &FinCategory) -> CheckResult {
    structure_of(cat)?;
    let n = cat.object_count();
    for a in 0..n {
        for b in 0..n {
            for f in cat.hom(&a, &b) {
                let left = cat.compose_refs(cat.identity_of(b), f);
                let right = cat.compose_refs(f, cat.identity_of(a));
                if left != f || right != f {
                    let bad = if left != f { left } else { right };
                    return Ok(Verdict::fail(Witness::unequal("identity law", format!("{f:?}"), bad.code(), f.code())));
                }
            }
        }
    }
    let failure = (0..n.pow(4)).into_par_iter().find_map_first(|idx| {
        let (a, b, c, d) = (idx / (n * n * n), (idx / (n * n)) % n, (idx / n) % n, idx % n);
        for f in cat.hom(&a, &b) {
            for g in cat.hom(&b, &c) {
                let gf = cat.compose_refs(g, f);
                for h in cat.hom(&c, &d) {
                    let lhs = cat.compose_refs(cat.compose_refs(h, g), f);
                    let rhs = cat.compose_refs(h, gf);
                    if lhs != rhs {
                        return Some(Witness::unequal(
                            "associativity",
                            format!("h={h:?} g={g:?} f={f:?}"),
                            lhs.code(),
                            rhs.code(),
                        ));
                    }
                }
            }
        }
        None
    });
    Ok(failure.map_or_else(Verdict::pass, Verdict::fail))
}

/// A concrete category together with its tabulated copy and the translation between them.
pub struct Tabulation<C: Category> {
    pub table: Arc<FinCategory>,
    pub objects: Vec<C::Obj>,
    homs: Vec<Vec<Vec<C::Mor>>>,
    index: HashMap<C::Obj, usize>,
    positions: Vec<Vec<HashMap<C::Mor, u32>>>,
}

impl<C: Category> Tabulation<C> {
    pub fn object_index(&self, a: &C::Obj) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn morphism_ref(&self, a: &C::Obj, b: &C::Obj, f: &C::Mor) -> Option<MorRef> {
        let (i, j) = (self.object_index(a)?, self.object_index(b)?);
        self.positions[i][j].get(f).map(|&k| MorRef::new(i, j, k))
    }

    pub fn morphism(&self, r: MorRef) -> &C::Mor {
        &self.homs[r.src][r.tgt][r.idx as usize]
    }
}

/// Tabulates the enumerated objects of `cat` and every morphism between them.
pub fn tabulate<C: Category>(cat: &C) -> Tabulation<C> {
    let objects = cat.objects();
    let n = objects.len();
    let homs: Vec<Vec<Vec<C::Mor>>> =
        objects.par_iter().map(|a| objects.iter().map(|b| cat.hom(a, b)).collect()).collect();
    let positions: Vec<Vec<HashMap<C::Mor, u32>>> = homs
        .iter()
        .map(|row| row.iter().map(|h| h.iter().enumerate().map(|(i, f)| (f.clone(), i as u32)).collect()).collect())
        .collect();
    let identities = objects.iter().enumerate().map(|(i, a)| positions[i][i][&cat.identity(a)]).collect();
    let blocks = (0..n * n * n)
        .into_par_iter()
        .map(|idx| {
            let (a, b, c) = (idx / (n * n), (idx / n) % n, idx % n);
            let mut block = Vec::with_capacity(homs[b][c].len() * homs[a][b].len());
            for g in &homs[b][c] {
                for f in &homs[a][b] {
                    block.push(positions[a][c][&cat.compose(g, f)]);
                }
            }
            block
        })
        .collect();
    let table = FinCategory::from_tables(
        cat.name(),
        objects.iter().map(|a| cat.describe(a)).collect(),
        objects.iter().map(|a| cat.size(a)).collect(),
        homs.iter().flat_map(|row| row.iter().map(Vec::len)).collect(),
        identities,
        blocks,
    );
    let index = objects.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();
    Tabulation { table: Arc::new(table), objects, homs, index, positions }
}

/// A tabulated functor: `mor[a][b][f]` is the index of `F f` in `hom(F a, F b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fun {
    pub src: Arc<FinCategory>,
    pub tgt: Arc<FinCategory>,
    pub obj: Vec<usize>,
    pub mor: Vec<Vec<Vec<u32>>>,
}

impl Fun {
    pub fn identity(cat: Arc<FinCategory>) -> Self {
        let n = cat.object_count();
        let mor = (0..n).map(|a| (0..n).map(|b| (0..cat.hom_count(a, b) as u32).collect()).collect()).collect();
        Fun { src: cat.clone(), tgt: cat, obj: (0..n).collect(), mor }
    }

    pub fn apply(&self, f: MorRef) -> MorRef {
        MorRef::new(self.obj[f.src], self.obj[f.tgt], self.mor[f.src][f.tgt][f.idx as usize])
    }

    /// All `(a, b, f)` positions of the morphism map.
    pub fn entries(&self) -> Vec<MorRef> {
        let n = self.src.object_count();
        (0..n).flat_map(|a| (0..n).flat_map(move |b| self.src.hom(&a, &b))).collect()
    }

    pub fn with_entry(&self, at: MorRef, value: u32) -> Self {
        let mut out = self.clone();
        out.mor[at.src][at.tgt][at.idx as usize] = value;
        out
    }
}

/// Tabulates `functor` between two tabulations. Fails if an image leaves the tabulated target.
pub fn tabulate_functor<A: Category, B: Category>(
    functor: &Functor<A, B>,
    src: &Tabulation<A>,
    tgt: &Tabulation<B>,
) -> Result<Fun, StructuralError> {
    let image_index = |a: &A::Obj| {
        tgt.object_index(&functor.ob(a))
            .ok_or_else(|| StructuralError::MissingComponent(format!("{}({a:?}) is not tabulated", functor.name)))
    };
    let obj = src.objects.iter().map(image_index).collect::<Result<Vec<_>, _>>()?;
    let n = src.objects.len();
    let mut mor = vec![vec![Vec::new(); n]; n];
    for (i, a) in src.objects.iter().enumerate() {
        for (j, b) in src.objects.iter().enumerate() {
            for f in &src.homs[i][j] {
                let img = functor.map(a, b, f);
                let r = tgt.morphism_ref(&functor.ob(a), &functor.ob(b), &img).ok_or_else(|| {
                    StructuralError::IllTyped {
                        what: format!("{}({f:?})", functor.name),
                        expected: "a tabulated morphism".into(),
                    }
                })?;
                mor[i][j].push(r.idx);
            }
        }
    }
    Ok(Fun { src: src.table.clone(), tgt: tgt.table.clone(), obj, mor })
}

fn fun_structure(fun: &Fun) -> Result<(), StructuralError> {
    let n = fun.src.object_count();
    if fun.obj.len() != n {
        return Err(StructuralError::MissingComponent("object map is not total".into()));
    }
    if let Some(a) = fun.obj.iter().position(|&x| x >= fun.tgt.object_count()) {
        return Err(StructuralError::Dangling(format!("image of object {a}")));
    }
    if fun.mor.len() != n || fun.mor.iter().any(|row| row.len() != n) {
        return Err(StructuralError::MissingComponent("morphism map is not total".into()));
    }
    for a in 0..n {
        for b in 0..n {
            if fun.mor[a][b].len() != fun.src.hom_count(a, b) {
                return Err(StructuralError::MissingComponent(format!("morphism map on hom({a},{b})")));
            }
            let bound = fun.tgt.hom_count(fun.obj[a], fun.obj[b]);
            if fun.mor[a][b].iter().any(|&v| v as usize >= bound) {
                return Err(StructuralError::Dangling(format!("morphism image in hom({a},{b})")));
            }
        }
    }
    Ok(())
}

/// Preservation of identities and of every composite.
pub fn check_fun(fun: &Fun) -> CheckResult {
    fun_structure(fun)?;
    let (src, tgt) = (&fun.src, &fun.tgt);
    let n = src.object_count();
    for a in 0..n {
        let img = fun.apply(src.identity_of(a));
        if img != tgt.identity_of(fun.obj[a]) {
            return Ok(Verdict::fail(Witness::unequal(
                "functor preserves identities",
                src.describe(&a),
                img.code(),
                tgt.identity_of(fun.obj[a]).code(),
            )));
        }
    }
    let failure = (0..n * n * n).into_par_iter().find_map_first(|idx| {
        let (a, b, c) = (idx / (n * n), (idx / n) % n, idx % n);
        for g in src.hom(&b, &c) {
            for f in src.hom(&a, &b) {
                let lhs = fun.apply(src.compose_refs(g, f));
                let rhs = tgt.compose_refs(fun.apply(g), fun.apply(f));
                if lhs != rhs {
                    return Some(Witness::unequal(
                        "functor preserves composition",
                        format!("g={g:?} f={f:?}"),
                        lhs.code(),
                        rhs.code(),
                    ));
                }
            }
        }
        None
    });
    Ok(failure.map_or_else(Verdict::pass, Verdict::fail))
}

/// A tabulated natural transformation; `comp[a]` indexes `hom(F a, G a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatT {
    pub src: Fun,
    pub tgt: Fun,
    pub comp: Vec<Option<u32>>,
}

impl NatT {
    pub fn component(&self, a: usize) -> Option<MorRef> {
        self.comp.get(a).copied().flatten().map(|i| MorRef::new(self.src.obj[a], self.tgt.obj[a], i))
    }

    pub fn with_component(&self, a: usize, value: Option<u32>) -> Self {
        let mut out = self.clone();
        out.comp[a] = value;
        out
    }
}

pub fn tabulate_nat<A: Category, B: Category>(
    nat: &Nat<A, B>,
    src: &Tabulation<A>,
    tgt: &Tabulation<B>,
) -> Result<NatT, StructuralError> {
    let f = tabulate_functor(&nat.src, src, tgt)?;
    let g = tabulate_functor(&nat.tgt, src, tgt)?;
    let comp = src
        .objects
        .iter()
        .map(|a| tgt.morphism_ref(&nat.src.ob(a), &nat.tgt.ob(a), &nat.at(a)).map(|r| r.idx))
        .collect::<Vec<_>>();
    if let Some(a) = comp.iter().position(Option::is_none) {
        return Err(StructuralError::IllTyped {
            what: format!("{} at object {a}", nat.name),
            expected: "a tabulated morphism".into(),
        });
    }
    Ok(NatT { src: f, tgt: g, comp })
}

/// Every naturality square; the witness is the first failing morphism.
pub fn check_nat(nat: &NatT) -> CheckResult {
    fun_structure(&nat.src)?;
    fun_structure(&nat.tgt)?;
    let cat = &nat.src.src;
    let tgt = &nat.src.tgt;
    let n = cat.object_count();
    if nat.comp.len() != n {
        return Err(StructuralError::MissingComponent("component list is not total".into()));
    }
    let mut comps = Vec::with_capacity(n);
    for a in 0..n {
        let c = nat.component(a).ok_or_else(|| StructuralError::MissingComponent(format!("object {a}")))?;
        if c.idx as usize >= tgt.hom_count(c.src, c.tgt) {
            return Err(StructuralError::Dangling(format!("component at object {a}")));
        }
        comps.push(c);
    }
    for a in 0..n {
        for b in 0..n {
            for f in cat.hom(&a, &b) {
                let lhs = tgt.compose_refs(nat.tgt.apply(f), comps[a]);
                let rhs = tgt.compose_refs(comps[b], nat.src.apply(f));
                if lhs != rhs {
                    return Ok(Verdict::fail(Witness::unequal("naturality", format!("{f:?}"), lhs.code(), rhs.code())));
                }
            }
        }
    }
    Ok(Verdict::pass())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::FinSet;

    #[test]
    fn terminal_category_passes() {
        assert!(check_category(&FinCategory::terminal()).unwrap().is_pass());
    }

    #[test]
    fn chain_is_a_category() {
        assert!(check_category(&FinCategory::chain(4)).unwrap().is_pass());
    }

    #[test]
    fn tabulated_skeleton_passes_and_counts() {
        let tab = tabulate(&FinSet::up_to(2));
        assert!(check_category(&tab.table).unwrap().is_pass());
        assert_eq!(tab.table.hom_count(2, 2), 4);
    }

    #[test]
    fn dangling_identity_is_structural() {
        let bad = FinCategory::from_tables("bad", vec!["*".into()], vec![1], vec![1], vec![3], vec![vec![0]]);
        assert!(matches!(check_category(&bad), Err(StructuralError::Dangling(_))));
    }

    #[test]
    fn missing_component_is_structural() {
        let cat = Arc::new(FinCategory::chain(2));
        let id = Fun::identity(cat);
        let nat = NatT { src: id.clone(), tgt: id, comp: vec![Some(0), None] };
        assert!(matches!(check_nat(&nat), Err(StructuralError::MissingComponent(_))));
    }
}
