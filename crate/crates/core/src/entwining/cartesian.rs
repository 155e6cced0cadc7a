use rayon::prelude::*;

use super::law::{canonical_entwining, Entwining};
use crate::fincat::{Category, Functor, Nat, Verdict, Witness};
use crate::finset::{pairing, product_map, projection_left, projection_right, symmetry, ActionTable, FinSet, FnEnc};
use crate::monadics::{Comonad, Monad};

/// The comonoidal structure every functor on finite sets carries for the cartesian product.
#[derive(Clone)]
pub struct ComonoidalStructure {
    pub monad: Monad<FinSet>,
}

impl ComonoidalStructure {
    /// `χ_{x,y} = ⟨T p₁, T p₂⟩: T(x×y) -> Tx × Ty`.
    pub fn chi(&self, x: usize, y: usize) -> FnEnc {
        let t = &self.monad.functor;
        let xy = x * y;
        pairing(&t.map(&xy, &x, &projection_left(x, y)), &t.map(&xy, &y, &projection_right(x, y)))
    }

    /// The unique map `T 1 -> 1`.
    pub fn theta_unit(&self) -> FnEnc {
        FnEnc::constant(self.monad.ob(&1), 1, 0)
    }

    /// Coassociativity and counitality of `χ`, on all triples of carriers up to `budget`.
    pub fn check(&self, budget: usize) -> Verdict {
        let t = &self.monad;
        let triples: Vec<(usize, usize, usize)> =
            (0..=budget).flat_map(|x| (0..=budget).flat_map(move |y| (0..=budget).map(move |z| (x, y, z)))).collect();
        let coassoc = triples.par_iter().find_map_first(|&(x, y, z)| {
            let (tx, tz) = (t.ob(&x), t.ob(&z));
            let lhs = product_map(&self.chi(x, y), &FnEnc::identity(tz)).after(&self.chi(x * y, z));
            let rhs = product_map(&FnEnc::identity(tx), &self.chi(y, z)).after(&self.chi(x, y * z));
            (lhs != rhs).then(|| {
                Witness::unequal("χ coassociative", format!("{x},{y},{z}"), lhs.into_values(), rhs.into_values())
            })
        });
        if let Some(w) = coassoc {
            return Verdict::fail(w);
        }
        let counit = (0..=budget).find_map(|x| {
            let tx = t.ob(&x);
            let left = product_map(&self.theta_unit(), &FnEnc::identity(tx)).after(&self.chi(1, x));
            let right = product_map(&FnEnc::identity(tx), &self.theta_unit()).after(&self.chi(x, 1));
            let id = FnEnc::identity(tx);
            [("θχ = 1", left), ("χθ = 1", right)]
                .into_iter()
                .find(|(_, f)| *f != id)
                .map(|(law, f)| Witness::unequal(law, x.to_string(), f.into_values(), id.values().to_vec()))
        });
        counit.map_or_else(Verdict::pass, Verdict::fail)
    }
}

/// `G = − × T1` with `δ` from `χ_{1,1}` and `ε` from `θ_1`, and
/// `λ = (T × m_1)·χ_{−,T1}: T(− × T1) => T(−) × T1`.
pub struct CartesianComonoidal {
    pub structure: ComonoidalStructure,
    pub comonad: Comonad<FinSet>,
    pub entwining: Entwining<FinSet>,
}

pub fn cartesian_comonoidal(monad: &Monad<FinSet>) -> CartesianComonoidal {
    let structure = ComonoidalStructure { monad: monad.clone() };
    let cat = monad.category();
    let t1 = monad.ob(&1);
    let functor = Functor::new(
        format!("−×{t1}"),
        cat.clone(),
        cat.clone(),
        move |&n| n * t1,
        move |_, _, f: &FnEnc| product_map(f, &FnEnc::identity(t1)),
    );
    let chi11 = structure.chi(1, 1);
    let theta = structure.theta_unit();
    let comult =
        Nat::new("δ", functor.clone(), functor.then(&functor), move |&n| product_map(&FnEnc::identity(n), &chi11));
    let counit =
        Nat::new("ε", functor.clone(), Functor::identity(cat), move |&n| product_map(&FnEnc::identity(n), &theta));
    let comonad = Comonad { name: functor.name.clone(), functor, comult, counit };

    let law = {
        let (st, m1) = (structure.clone(), monad.mult.at(&1));
        let t = monad.clone();
        Nat::new("λ", comonad.functor.then(&monad.functor), monad.functor.then(&comonad.functor), move |&n| {
            product_map(&FnEnc::identity(t.ob(&n)), &m1).after(&st.chi(n, t1))
        })
    };
    let entwining = Entwining { monad: monad.clone(), comonad: comonad.clone(), law };
    CartesianComonoidal { structure, comonad, entwining }
}

/// The symmetry `x × T1 ≅ T1 × x` carries the cartesian entwining of `M × −` onto the canonical
/// entwining of the regular action: both comonad structures and `λ` correspond.
pub fn matches_canonical(cart: &CartesianComonoidal, regular: &ActionTable) -> Verdict {
    let canonical = canonical_entwining(regular, cart.entwining.category());
    let (k, t) = (regular.monoid().order(), &cart.entwining.monad);
    let cat = cart.entwining.category();
    let failure = cat.objects().into_par_iter().find_map_first(|n| {
        let sigma = |x: usize| symmetry(x, k);
        let g = &canonical.comonad;
        let tn = t.ob(&n);
        let checks = [
            ("σ·δ = δ·σ", sigma(k * n).after(&cart.comonad.comult.at(&n)), {
                let g_sigma = g.functor.map(&(k * n), &(n * k), &symmetry(k, n));
                g_sigma.after(&g.comult.at(&n)).after(&sigma(n))
            }),
            ("ε = ε·σ", cart.comonad.counit.at(&n), g.counit.at(&n).after(&sigma(n))),
            ("σ·λ = λ·Tσ", sigma(tn).after(&cart.entwining.law.at(&n)), {
                canonical.law.at(&n).after(&t.functor.map(&(n * k), &(k * n), &sigma(n)))
            }),
        ];
        checks
            .into_iter()
            .find(|(_, l, r)| l != r)
            .map(|(law, l, r)| Witness::unequal(law, n.to_string(), l.into_values(), r.into_values()))
    });
    failure.map_or_else(Verdict::pass, Verdict::fail)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::entwining::check_entwining;
    use crate::finset::MonoidTable;
    use crate::monadics::{check_comonad, product_monad};

    #[test]
    fn cartesian_construction_for_product_monads() {
        let s = Arc::new(FinSet::up_to(2));
        for m in [
            MonoidTable::cyclic(2),
            MonoidTable::idem2(),
            MonoidTable::trivial(),
            MonoidTable::cyclic(3),
            MonoidTable::klein_four(),
        ] {
            let c = cartesian_comonoidal(&product_monad(&m, s.clone()));
            assert!(c.structure.check(2).is_pass());
            assert!(check_comonad(&c.comonad).unwrap().is_pass());
            assert!(check_entwining(&c.entwining).unwrap().is_pass());
            assert!(matches_canonical(&c, &ActionTable::regular(&m)).is_pass());
        }
    }

    #[test]
    fn z2_law_is_the_canonical_one() {
        let s = Arc::new(FinSet::up_to(1));
        let c = cartesian_comonoidal(&product_monad(&MonoidTable::cyclic(2), s));
        // λ_1: (m, (•, c)) ↦ ((m, •), m·c), with T1 = 2.
        assert_eq!(c.entwining.law.at(&1).values(), &[0, 1, 3, 2]);
    }

    #[test]
    fn identity_monad_gives_identity_comonad() {
        let s = Arc::new(FinSet::up_to(3));
        let c = cartesian_comonoidal(&Monad::identity(s.clone()));
        for n in 0..=3 {
            assert_eq!(c.comonad.ob(&n), n);
            assert_eq!(c.entwining.law.at(&n), FnEnc::identity(n));
        }
    }
}
