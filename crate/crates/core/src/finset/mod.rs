//! The skeleton of finite sets, finite monoids and their actions.

mod corpus;
mod fnenc;
mod monoid;
mod mset;
mod skeleton;

pub use corpus::{corpus, klein_on_cosets, monoid_name, Corpus, NamedAction, NamedMonoid};
pub use fnenc::{all_functions, count_functions, permutations, FnEnc, FnEncError};
pub use monoid::{monoids_of_order, ActionTable, MonoidTable, TableError};
pub use mset::{MSet, MSetsOver};
pub use skeleton::{
    coequaliser, equaliser, pair_index, pairing, product_map, projection_left, projection_right, quotient, symmetry,
    CanonicalStructure, FinSet, Product, SkeletonBudget, ZeroBudget,
};
