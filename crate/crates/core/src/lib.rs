pub mod cli;
pub mod entwining;
pub mod fincat;
pub mod finset;
pub mod grouplike;
pub mod hopf;
pub mod monadics;

/// The user guide, compiled so that its examples run as doctests.
pub mod book {
    #[doc = include_str!("../../../book/src/ch01-finite-sets.md")]
    pub mod chapter1 {}
    #[doc = include_str!("../../../book/src/ch02-categories.md")]
    pub mod chapter2 {}
    #[doc = include_str!("../../../book/src/ch03-entwinings.md")]
    pub mod chapter3 {}
    #[doc = include_str!("../../../book/src/ch04-grouplikes.md")]
    pub mod chapter4 {}
    #[doc = include_str!("../../../book/src/ch05-hopf-modules.md")]
    pub mod chapter5 {}
    #[doc = include_str!("../../../book/src/ch06-galois-objects.md")]
    pub mod chapter6 {}
    #[doc = include_str!("../../../book/src/ch07-cli.md")]
    pub mod chapter7 {}
}
