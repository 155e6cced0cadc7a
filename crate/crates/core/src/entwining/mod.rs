//! Mixed distributive laws, liftings and entwined modules.

mod cartesian;
mod comparison;
mod entwined;
mod law;

pub use cartesian::{cartesian_comonoidal, matches_canonical, CartesianComonoidal, ComonoidalStructure};
pub use comparison::{
    check_action_on_comonad, check_coaction_on_monad, comparison_and_tk, comparison_and_tk_dual,
    free_restriction_check, ComoduleComparison, FreeRestriction, ModuleComparison,
};
pub use entwined::{
    ComodulesOfModules, Entwined, EntwinedCategory, EntwinedPresentations, ModulesOfComodules, Translation,
};
pub use law::{canonical_entwining, check_entwining, lift_comonad, lift_monad, Entwining};
