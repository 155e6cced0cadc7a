//! Monads, comonads, their Eilenberg–Moore categories and the comparison morphisms between them.

mod em;
mod galois;
mod monad;

pub use em::{build_comodules, build_modules, Comodules, Modules, Structured};
pub use galois::{
    comonadic_comparison, comonadic_verdict, components_invertible, galois_verdict, inj_subcategory,
    lbar_via_coequaliser, left_image_projective, monadic_comparison, monadic_verdict, precomonadic_verdict,
    rbar_via_equaliser, relative_injective, relative_projective, right_image_injective, s_compose_check,
    t311_crosscheck, t311_module_crosscheck, t_from_comodule, t_from_module, ComoduleFunctor, GaloisConditions,
    GaloisMorphism, ModuleFunctor, Triangle,
};
pub use monad::{
    check_comonad, check_comonad_morphism, check_monad, check_monad_morphism, product_comonad, product_monad, Comonad,
    ComonadMorphism, Monad, MonadMorphism,
};
