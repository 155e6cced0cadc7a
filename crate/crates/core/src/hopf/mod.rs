//! Bimonads and antipodes, Hopf modules, Galois objects and descent over a monoid.

mod antipode;
mod bimonad;
mod coflat;
mod comma;
mod galois_object;
mod modules;

pub use antipode::{antipode_axioms, antipode_search, natural_endomorphisms, AntipodeSearch};
pub use bimonad::{bimonad_report, check_bimonad, monoid_bimonad, Bimonad, BimonadCheck};
pub use coflat::{coflat_check, coflat_galois_crosscheck, CoflatVerdict};
pub use comma::{
    comma_comodule_iso, comma_k, comma_k_equivalence, lifted_modules_check, lifted_monad, pullback_adjunction,
    CommaEquivalence,
};
pub use galois_object::{gamma, gamma_and_galois_object, is_faithful_object, GaloisObjectVerdict};
pub use modules::{
    coinvariants_adjunction, comparison_kh, entwined_presentation_check, hopf_modules, kh_bijection, kh_equivalence,
    tbim_crosscheck, unit_descent_check, HopfEquivalence,
};
