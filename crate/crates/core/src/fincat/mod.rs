//! Finite categories, functors and natural transformations, as enumerations and as tables.

mod analysis;
mod category;
mod functor;
mod limits;
mod table;
mod verdict;

pub use analysis::{
    check_category_isomorphism, equivalence_verdict, fully_faithful_on, functor_properties, is_split_fork,
    split_analysis, unit_counit_invertible, EquivalenceMode, Fork, FunctorProperties, SplitAnalysis,
};
pub use category::{objects_up_to, Category};
pub use functor::{
    check_adjunction, check_functor, check_natural, functors_agree, nat_equal, Adjunction, Functor, Nat,
};
pub use limits::{
    brute_force_colimit, brute_force_limit, is_colimit, is_limit, Coequalisers, ColimitShape, Cone, Equalisers,
    LimitShape,
};
pub use table::{
    check_category, check_fun, check_nat, tabulate, tabulate_functor, tabulate_nat, ComposeCell, FinCategory, Fun,
    MorRef, NatT, Tabulation,
};
pub use verdict::{CheckResult, Outcome, StructuralError, Verdict, Witness};
