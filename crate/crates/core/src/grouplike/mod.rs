//! Grouplike morphisms, the equaliser monad they cut out and Galois entwinings.

mod comparison;
mod equaliser;
mod morphism;
mod shriek;
mod verdict;

pub use comparison::{galois_conditions, kg_ff_crosscheck, t_composite, GrouplikeComparison, KgCrosscheck};
pub use equaliser::{equaliser_monad, identity_monad_iso, EqualiserMonad};
pub use morphism::{
    check_grouplike, family_point, induced_comodules, natural_families, point_grouplike, Grouplike, InducedCoactions,
};
pub use shriek::{shriek_adjoint, Presentation, ShriekAdjoint};
pub use verdict::{galois_entwining_verdict, GaloisEntwiningVerdict};
