use super::category::Category;

/// Chosen equalisers.
pub trait Equalisers: Category {
    fn equaliser(&self, a: &Self::Obj, b: &Self::Obj, f: &Self::Mor, g: &Self::Mor) -> (Self::Obj, Self::Mor);

    /// The unique `u` with `e ∘ u = h`, for `h` equalising the pair `e` was built from.
    fn factor_through_equaliser(&self, e: &Self::Mor, h: &Self::Mor) -> Self::Mor;
}

/// Chosen coequalisers.
pub trait Coequalisers: Category {
    /// Returns the apex and the quotient map out of `b`.
    fn coequaliser(&self, a: &Self::Obj, b: &Self::Obj, f: &Self::Mor, g: &Self::Mor) -> (Self::Obj, Self::Mor);

    /// The unique `u` with `u ∘ q = h`, for `h` coequalising the pair `q` was built from.
    fn factor_through_coequaliser(&self, q: &Self::Mor, h: &Self::Mor) -> Self::Mor;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LimitShape<O, M> {
    Terminal,
    Product(O, O),
    /// A parallel pair `f, g: src -> tgt`.
    Equaliser {
        src: O,
        tgt: O,
        f: M,
        g: M,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColimitShape<O, M> {
    Initial,
    Coproduct(O, O),
    Coequaliser { src: O, tgt: O, f: M, g: M },
}

/// An apex with its structure morphisms, in the order of the diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone<O, M> {
    pub apex: O,
    pub legs: Vec<M>,
}

fn cones_at<C: Category>(cat: &C, shape: &LimitShape<C::Obj, C::Mor>, x: &C::Obj) -> Vec<Vec<C::Mor>> {
    match shape {
        LimitShape::Terminal => vec![Vec::new()],
        LimitShape::Product(a, b) => {
            let right = cat.hom(x, b);
            cat.hom(x, a).into_iter().flat_map(|p| right.iter().map(move |q| vec![p.clone(), q.clone()])).collect()
        }
        LimitShape::Equaliser { src, f, g, .. } => {
            cat.hom(x, src).into_iter().filter(|e| cat.compose(f, e) == cat.compose(g, e)).map(|e| vec![e]).collect()
        }
    }
}

fn cocones_at<C: Category>(cat: &C, shape: &ColimitShape<C::Obj, C::Mor>, x: &C::Obj) -> Vec<Vec<C::Mor>> {
    match shape {
        ColimitShape::Initial => vec![Vec::new()],
        ColimitShape::Coproduct(a, b) => {
            let right = cat.hom(b, x);
            cat.hom(a, x).into_iter().flat_map(|p| right.iter().map(move |q| vec![p.clone(), q.clone()])).collect()
        }
        ColimitShape::Coequaliser { tgt, f, g, .. } => {
            cat.hom(tgt, x).into_iter().filter(|q| cat.compose(q, f) == cat.compose(q, g)).map(|q| vec![q]).collect()
        }
    }
}

/// Whether `legs` at `apex` is a limiting cone, tested against every cone over enumerated objects.
pub fn is_limit<C: Category>(cat: &C, shape: &LimitShape<C::Obj, C::Mor>, cone: &Cone<C::Obj, C::Mor>) -> bool {
    cat.objects().iter().all(|y| {
        let mediators = cat.hom(y, &cone.apex);
        cones_at(cat, shape, y).iter().all(|other| {
            let factoring = mediators
                .iter()
                .filter(|u| cone.legs.iter().zip(other).all(|(leg, o)| cat.compose(leg, u) == *o))
                .take(2)
                .count();
            factoring == 1
        })
    })
}

/// Whether `legs` out of `apex` is a colimiting cocone.
pub fn is_colimit<C: Category>(cat: &C, shape: &ColimitShape<C::Obj, C::Mor>, cocone: &Cone<C::Obj, C::Mor>) -> bool {
    cat.objects().iter().all(|y| {
        let mediators = cat.hom(&cocone.apex, y);
        cocones_at(cat, shape, y).iter().all(|other| {
            let factoring = mediators
                .iter()
                .filter(|u| cocone.legs.iter().zip(other).all(|(leg, o)| cat.compose(u, leg) == *o))
                .take(2)
                .count();
            factoring == 1
        })
    })
}

/// The first apex in object order carrying a limiting cone, or `None` when no enumerated object does.
pub fn brute_force_limit<C: Category>(cat: &C, shape: &LimitShape<C::Obj, C::Mor>) -> Option<Cone<C::Obj, C::Mor>> {
    cat.objects().into_iter().find_map(|x| {
        cones_at(cat, shape, &x).into_iter().find_map(|legs| {
            let cone = Cone { apex: x.clone(), legs };
            is_limit(cat, shape, &cone).then_some(cone)
        })
    })
}

/// Dual of [`brute_force_limit`].
pub fn brute_force_colimit<C: Category>(cat: &C, shape: &ColimitShape<C::Obj, C::Mor>) -> Option<Cone<C::Obj, C::Mor>> {
    cat.objects().into_iter().find_map(|x| {
        cocones_at(cat, shape, &x).into_iter().find_map(|legs| {
            let cocone = Cone { apex: x.clone(), legs };
            is_colimit(cat, shape, &cocone).then_some(cocone)
        })
    })
}
