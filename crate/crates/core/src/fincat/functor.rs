use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use super::category::Category;
use super::verdict::{CheckResult, StructuralError, Verdict, Witness};

type ObjFn<A, B> = Arc<dyn Fn(&<A as Category>::Obj) -> <B as Category>::Obj + Send + Sync>;
type MorFn<A, B> = Arc<
    dyn Fn(&<A as Category>::Obj, &<A as Category>::Obj, &<A as Category>::Mor) -> <B as Category>::Mor + Send + Sync,
>;
type CompFn<A, B> = Arc<dyn Fn(&<A as Category>::Obj) -> <B as Category>::Mor + Send + Sync>;

/// A functor given by its action on objects and on morphisms `f: a -> b`.
pub struct Functor<A: Category, B: Category> {
    pub name: String,
    pub src: Arc<A>,
    pub tgt: Arc<B>,
    obj: ObjFn<A, B>,
    mor: MorFn<A, B>,
}

impl<A: Category, B: Category> Clone for Functor<A, B> {
    fn clone(&self) -> Self {
        Functor {
            name: self.name.clone(),
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            obj: self.obj.clone(),
            mor: self.mor.clone(),
        }
    }
}

impl<A: Category, B: Category> fmt::Debug for Functor<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Functor({}: {} -> {})", self.name, self.src.name(), self.tgt.name())
    }
}

impl<A: Category, B: Category> Functor<A, B> {
    pub fn new(
        name: impl Into<String>,
        src: Arc<A>,
        tgt: Arc<B>,
        obj: impl Fn(&A::Obj) -> B::Obj + Send + Sync + 'static,
        mor: impl Fn(&A::Obj, &A::Obj, &A::Mor) -> B::Mor + Send + Sync + 'static,
    ) -> Self {
        Functor { name: name.into(), src, tgt, obj: Arc::new(obj), mor: Arc::new(mor) }
    }

    pub fn ob(&self, a: &A::Obj) -> B::Obj {
        (self.obj)(a)
    }

    pub fn map(&self, a: &A::Obj, b: &A::Obj, f: &A::Mor) -> B::Mor {
        (self.mor)(a, b, f)
    }

    /// `next ∘ self`.
    pub fn then<C: Category>(&self, next: &Functor<B, C>) -> Functor<A, C> {
        let (first, second) = (self.clone(), next.clone());
        let (f2, s2) = (self.clone(), next.clone());
        Functor::new(
            format!("{}{}", next.name, self.name),
            self.src.clone(),
            next.tgt.clone(),
            move |a| second.ob(&first.ob(a)),
            move |a, b, f| s2.map(&f2.ob(a), &f2.ob(b), &f2.map(a, b, f)),
        )
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Same object map, with the image of one morphism replaced.
    pub fn with_mutated_morphism(&self, at: (A::Obj, A::Obj, A::Mor), image: B::Mor) -> Self {
        let inner = self.clone();
        Functor::new(
            format!("{}*", self.name),
            self.src.clone(),
            self.tgt.clone(),
            {
                let inner = self.clone();
                move |a| inner.ob(a)
            },
            move |a, b, f| {
                if (a, b, f) == (&at.0, &at.1, &at.2) {
                    image.clone()
                } else {
                    inner.map(a, b, f)
                }
            },
        )
    }
}

impl<C: Category> Functor<C, C> {
    pub fn identity(cat: Arc<C>) -> Self {
        Functor::new("Id", cat.clone(), cat, |a| a.clone(), |_, _, f| f.clone())
    }
}

/// A natural transformation `src => tgt`, given by its components.
pub struct Nat<A: Category, B: Category> {
    pub name: String,
    pub src: Functor<A, B>,
    pub tgt: Functor<A, B>,
    comp: CompFn<A, B>,
}

impl<A: Category, B: Category> Clone for Nat<A, B> {
    fn clone(&self) -> Self {
        Nat { name: self.name.clone(), src: self.src.clone(), tgt: self.tgt.clone(), comp: self.comp.clone() }
    }
}

impl<A: Category, B: Category> fmt::Debug for Nat<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Nat({}: {} => {})", self.name, self.src.name, self.tgt.name)
    }
}

impl<A: Category, B: Category> Nat<A, B> {
    pub fn new(
        name: impl Into<String>,
        src: Functor<A, B>,
        tgt: Functor<A, B>,
        comp: impl Fn(&A::Obj) -> B::Mor + Send + Sync + 'static,
    ) -> Self {
        Nat { name: name.into(), src, tgt, comp: Arc::new(comp) }
    }

    pub fn at(&self, a: &A::Obj) -> B::Mor {
        (self.comp)(a)
    }

    pub fn identity(functor: &Functor<A, B>) -> Self {
        let f = functor.clone();
        let cat = functor.tgt.clone();
        Nat::new(format!("1_{}", functor.name), functor.clone(), functor.clone(), move |a| cat.identity(&f.ob(a)))
    }

    /// Vertical composite `self · first`.
    pub fn after(&self, first: &Nat<A, B>) -> Nat<A, B> {
        let (outer, inner) = (self.clone(), first.clone());
        let cat = self.src.tgt.clone();
        Nat::new(format!("{}·{}", self.name, first.name), first.src.clone(), self.tgt.clone(), move |a| {
            cat.compose(&outer.at(a), &inner.at(a))
        })
    }

    /// Whiskering on the left: `H self`, components `H(self_a)`.
    pub fn left<C: Category>(&self, h: &Functor<B, C>) -> Nat<A, C> {
        let (nat, hh) = (self.clone(), h.clone());
        Nat::new(format!("{}{}", h.name, self.name), self.src.then(h), self.tgt.then(h), move |a| {
            hh.map(&nat.src.ob(a), &nat.tgt.ob(a), &nat.at(a))
        })
    }

    /// Whiskering on the right: `self K`, components `self_{K z}`.
    pub fn right<Z: Category>(&self, k: &Functor<Z, A>) -> Nat<Z, B> {
        let (nat, kk) = (self.clone(), k.clone());
        Nat::new(format!("{}{}", self.name, k.name), k.then(&self.src), k.then(&self.tgt), move |z| nat.at(&kk.ob(z)))
    }

    /// Reinterprets the components between functors known to agree with the originals.
    pub fn retyped(&self, src: Functor<A, B>, tgt: Functor<A, B>) -> Self {
        Nat { name: self.name.clone(), src, tgt, comp: self.comp.clone() }
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Same transformation with one component replaced.
    pub fn with_mutated_component(&self, at: A::Obj, component: B::Mor) -> Self {
        let inner = self.clone();
        Nat::new(format!("{}*", self.name), self.src.clone(), self.tgt.clone(), move |a| {
            if *a == at {
                component.clone()
            } else {
                inner.at(a)
            }
        })
    }
}

struct HomTable<C: Category> {
    objects: Vec<C::Obj>,
    homs: Vec<Vec<Vec<C::Mor>>>,
}

impl<C: Category> HomTable<C> {
    fn build(cat: &C, objects: Vec<C::Obj>) -> Self {
        let homs = objects.par_iter().map(|a| objects.iter().map(|b| cat.hom(a, b)).collect()).collect();
        HomTable { objects, homs }
    }
}

/// Functor laws over the enumerated part of the source, plus typing of every image.
pub fn check_functor<A: Category, B: Category>(f: &Functor<A, B>) -> CheckResult {
    let (src, tgt) = (&f.src, &f.tgt);
    let table = HomTable::build(src.as_ref(), src.objects());
    let objs = &table.objects;
    let images: Vec<B::Obj> = objs.iter().map(|a| f.ob(a)).collect();

    let typing = (0..objs.len()).into_par_iter().find_map_first(|i| {
        (0..objs.len()).find_map(|j| {
            table.homs[i][j].iter().find_map(|m| {
                let img = f.map(&objs[i], &objs[j], m);
                (!tgt.contains(&images[i], &images[j], &img)).then(|| StructuralError::IllTyped {
                    what: format!("{}({m:?})", f.name),
                    expected: format!("{} -> {}", tgt.describe(&images[i]), tgt.describe(&images[j])),
                })
            })
        })
    });
    if let Some(err) = typing {
        return Err(err);
    }

    for (i, a) in objs.iter().enumerate() {
        let lhs = f.map(a, a, &src.identity(a));
        let rhs = tgt.identity(&images[i]);
        if lhs != rhs {
            return Ok(Verdict::fail(Witness::unequal(
                "functor preserves identities",
                src.describe(a),
                tgt.encode(&lhs),
                tgt.encode(&rhs),
            )));
        }
    }

    let n = objs.len();
    let failure = (0..n * n * n).into_par_iter().find_map_first(|idx| {
        let (i, j, k) = (idx / (n * n), (idx / n) % n, idx % n);
        for g in &table.homs[j][k] {
            let fg = f.map(&objs[j], &objs[k], g);
            for h in &table.homs[i][j] {
                let lhs = f.map(&objs[i], &objs[k], &src.compose(g, h));
                let rhs = tgt.compose(&fg, &f.map(&objs[i], &objs[j], h));
                if lhs != rhs {
                    return Some(Witness::unequal(
                        "functor preserves composition",
                        format!(
                            "{:?} then {:?} through {} -> {} -> {}",
                            h,
                            g,
                            src.describe(&objs[i]),
                            src.describe(&objs[j]),
                            src.describe(&objs[k])
                        ),
                        tgt.encode(&lhs),
                        tgt.encode(&rhs),
                    ));
                }
            }
        }
        None
    });
    Ok(failure.map_or_else(Verdict::pass, Verdict::fail))
}

/// Naturality squares over the enumerated part of the source, plus typing of components.
pub fn check_natural<A: Category, B: Category>(nat: &Nat<A, B>) -> CheckResult {
    let src = nat.src.src.clone();
    let tgt = nat.src.tgt.clone();
    let objs = src.objects();
    let comps: Vec<B::Mor> = objs.par_iter().map(|a| nat.at(a)).collect();
    for (a, c) in objs.iter().zip(&comps) {
        let (fa, ga) = (nat.src.ob(a), nat.tgt.ob(a));
        if !tgt.contains(&fa, &ga, c) {
            return Err(StructuralError::IllTyped {
                what: format!("{} at {}", nat.name, src.describe(a)),
                expected: format!("{} -> {}", tgt.describe(&fa), tgt.describe(&ga)),
            });
        }
    }
    let n = objs.len();
    let failure = (0..n * n).into_par_iter().find_map_first(|idx| {
        let (i, j) = (idx / n, idx % n);
        let (a, b) = (&objs[i], &objs[j]);
        src.hom(a, b).into_iter().find_map(|f| {
            let lhs = tgt.compose(&nat.tgt.map(a, b, &f), &comps[i]);
            let rhs = tgt.compose(&comps[j], &nat.src.map(a, b, &f));
            (lhs != rhs).then(|| {
                Witness::unequal(
                    format!("naturality of {}", nat.name),
                    format!("{:?}: {} -> {}", f, src.describe(a), src.describe(b)),
                    tgt.encode(&lhs),
                    tgt.encode(&rhs),
                )
            })
        })
    });
    Ok(failure.map_or_else(Verdict::pass, Verdict::fail))
}

/// Componentwise equality of two transformations on the enumerated objects.
pub fn nat_equal<A: Category, B: Category>(law: &str, left: &Nat<A, B>, right: &Nat<A, B>) -> Verdict {
    let src = left.src.src.clone();
    let tgt = left.src.tgt.clone();
    let objs = src.objects();
    let failure = objs.par_iter().find_map_first(|a| {
        let (l, r) = (left.at(a), right.at(a));
        (l != r).then(|| Witness::unequal(law, src.describe(a), tgt.encode(&l), tgt.encode(&r)))
    });
    failure.map_or_else(Verdict::pass, Verdict::fail)
}

/// Whether two functors agree on every enumerated object and morphism.
pub fn functors_agree<A: Category, B: Category>(law: &str, f: &Functor<A, B>, g: &Functor<A, B>) -> Verdict {
    let src = f.src.clone();
    let tgt = f.tgt.clone();
    let objs = src.objects();
    for a in &objs {
        if f.ob(a) != g.ob(a) {
            return Verdict::fail(Witness::new(law, format!("object {}", src.describe(a))));
        }
    }
    let n = objs.len();
    let failure = (0..n * n).into_par_iter().find_map_first(|idx| {
        let (a, b) = (&objs[idx / n], &objs[idx % n]);
        src.hom(a, b).into_iter().find_map(|m| {
            let (l, r) = (f.map(a, b, &m), g.map(a, b, &m));
            (l != r).then(|| Witness::unequal(law, format!("{m:?}"), tgt.encode(&l), tgt.encode(&r)))
        })
    });
    failure.map_or_else(Verdict::pass, Verdict::fail)
}

/// `left ⊣ right` with unit `Id => right∘left` and counit `left∘right => Id`.
pub struct Adjunction<A: Category, B: Category> {
    pub left: Functor<A, B>,
    pub right: Functor<B, A>,
    pub unit: Nat<A, A>,
    pub counit: Nat<B, B>,
}

impl<A: Category, B: Category> Clone for Adjunction<A, B> {
    fn clone(&self) -> Self {
        Adjunction {
            left: self.left.clone(),
            right: self.right.clone(),
            unit: self.unit.clone(),
            counit: self.counit.clone(),
        }
    }
}

impl<A: Category, B: Category> Adjunction<A, B> {
    pub fn new(left: Functor<A, B>, right: Functor<B, A>, unit: Nat<A, A>, counit: Nat<B, B>) -> Self {
        Adjunction { left, right, unit, counit }
    }

    pub fn with_counit(&self, counit: Nat<B, B>) -> Self {
        Adjunction { counit, ..self.clone() }
    }

    pub fn with_unit(&self, unit: Nat<A, A>) -> Self {
        Adjunction { unit, ..self.clone() }
    }
}

/// Naturality of unit and counit, then both triangle identities componentwise.
pub fn check_adjunction<A: Category, B: Category>(adj: &Adjunction<A, B>) -> CheckResult {
    let a_cat = adj.left.src.clone();
    let b_cat = adj.left.tgt.clone();
    let v = check_natural(&adj.unit)?;
    if !v.is_pass() {
        return Ok(v);
    }
    let v = check_natural(&adj.counit)?;
    if !v.is_pass() {
        return Ok(v);
    }
    let left_triangle = a_cat.objects().par_iter().find_map_first(|a| {
        let fa = adj.left.ob(a);
        let rfa = adj.right.ob(&fa);
        let f_eta = adj.left.map(a, &rfa, &adj.unit.at(a));
        let lhs = b_cat.compose(&adj.counit.at(&fa), &f_eta);
        let rhs = b_cat.identity(&fa);
        (lhs != rhs).then(|| Witness::unequal("εF·Fη = 1", a_cat.describe(a), b_cat.encode(&lhs), b_cat.encode(&rhs)))
    });
    if let Some(w) = left_triangle {
        return Ok(Verdict::fail(w));
    }
    let right_triangle = b_cat.objects().par_iter().find_map_first(|b| {
        let rb = adj.right.ob(b);
        let frb = adj.left.ob(&rb);
        let r_eps = adj.right.map(&frb, b, &adj.counit.at(b));
        let lhs = a_cat.compose(&r_eps, &adj.unit.at(&rb));
        let rhs = a_cat.identity(&rb);
        (lhs != rhs).then(|| Witness::unequal("Rε·ηR = 1", b_cat.describe(b), a_cat.encode(&lhs), a_cat.encode(&rhs)))
    });
    Ok(right_triangle.map_or_else(Verdict::pass, Verdict::fail))
}
