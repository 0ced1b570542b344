//! B-signs, Krein types, stability and Floquet monodromies.

mod btype;
mod floquet;
mod krein;
mod perturb;
mod stability;

pub use btype::{b_signature, BType, Sign};
pub(crate) use btype::{left_eigenvector, quadratic_form};
pub use floquet::{
    floquet_monodromy, floquet_monodromy_tol, integrate_monodromy, FnHamiltonian,
    PeriodicHamiltonian, DEFAULT_STEPS, HALVING_LIMIT, MIN_STEPS,
};
pub use krein::{
    krein_form, krein_from_btype, krein_gram, krein_signature, KreinEntry, KreinSignature,
};
pub use perturb::{
    find_destabilizing_perturbation, random_symmetric, random_symplectic_perturbation,
    Destabilization,
};
pub use stability::{stability_check, StabilityVerdict};
