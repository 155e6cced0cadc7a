use std::fmt::Debug;
use std::hash::Hash;

/// A category presented by enumeration.
///
/// `objects()` lists representatives: every object of size at most
/// [`Category::complete_up_to`] is isomorphic to one of them. Hom-sets are
/// listed in full, so callers are responsible for only asking for small ones.
pub trait Category: Send + Sync + 'static {
    type Obj: Clone + Eq + Hash + Debug + Send + Sync + 'static;
    type Mor: Clone + Eq + Hash + Debug + Send + Sync + 'static;

    fn name(&self) -> String;

    fn objects(&self) -> Vec<Self::Obj>;

    fn hom(&self, a: &Self::Obj, b: &Self::Obj) -> Vec<Self::Mor>;

    /// `g ∘ f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;

    fn identity(&self, a: &Self::Obj) -> Self::Mor;

    /// Whether `f` is a morphism `a -> b`.
    fn contains(&self, a: &Self::Obj, b: &Self::Obj, f: &Self::Mor) -> bool {
        self.hom(a, b).contains(f)
    }

    /// Carrier size used for budgets.
    fn size(&self, a: &Self::Obj) -> usize;

    /// Largest size up to which `objects()` meets every isomorphism class.
    fn complete_up_to(&self) -> Option<usize> {
        None
    }

    fn encode(&self, f: &Self::Mor) -> Vec<u32>;

    fn describe(&self, a: &Self::Obj) -> String {
        format!("{a:?}")
    }

    /// All `r: b -> a` with `r ∘ f = id_a`.
    fn retractions(&self, a: &Self::Obj, b: &Self::Obj, f: &Self::Mor) -> Vec<Self::Mor> {
        let id = self.identity(a);
        self.hom(b, a).into_iter().filter(|r| self.compose(r, f) == id).collect()
    }

    /// All `s: b -> a` with `f ∘ s = id_b`.
    fn sections(&self, a: &Self::Obj, b: &Self::Obj, f: &Self::Mor) -> Vec<Self::Mor> {
        let id = self.identity(b);
        self.hom(b, a).into_iter().filter(|s| self.compose(f, s) == id).collect()
    }

    fn retraction(&self, a: &Self::Obj, b: &Self::Obj, f: &Self::Mor) -> Option<Self::Mor> {
        self.retractions(a, b, f).into_iter().next()
    }

    fn section(&self, a: &Self::Obj, b: &Self::Obj, f: &Self::Mor) -> Option<Self::Mor> {
        self.sections(a, b, f).into_iter().next()
    }

    /// A two-sided inverse of `f: a -> b`, if one exists.
    fn inverse(&self, a: &Self::Obj, b: &Self::Obj, f: &Self::Mor) -> Option<Self::Mor> {
        let id_b = self.identity(b);
        self.retractions(a, b, f).into_iter().find(|r| self.compose(f, r) == id_b)
    }

    fn find_iso(&self, a: &Self::Obj, b: &Self::Obj) -> Option<Self::Mor> {
        if self.size(a) != self.size(b) {
            return None;
        }
        self.hom(a, b).into_iter().find(|f| self.inverse(a, b, f).is_some())
    }

    fn is_iso(&self, a: &Self::Obj, b: &Self::Obj, f: &Self::Mor) -> bool {
        self.inverse(a, b, f).is_some()
    }

    /// Left-cancellable against every enumerated object.
    fn is_mono(&self, a: &Self::Obj, _b: &Self::Obj, f: &Self::Mor) -> bool {
        self.objects().iter().all(|x| {
            let homs = self.hom(x, a);
            let images: std::collections::HashSet<Self::Mor> = homs.iter().map(|h| self.compose(f, h)).collect();
            images.len() == homs.len()
        })
    }
}

/// Objects of a category at or below a size.
pub fn objects_up_to<C: Category>(cat: &C, size: usize) -> Vec<C::Obj> {
    cat.objects().into_iter().filter(|a| cat.size(a) <= size).collect()
}
