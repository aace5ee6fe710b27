//! Explicit modules: jet modules with `sp_{2m}` fibers, evaluation modules,
//! the realization `V(λ̄) ⊗ V_N ⊗ A`, truncated induced modules, and the
//! checks run on them.

pub mod evaluation;
pub mod induced;
pub mod jet;
pub mod module;
pub mod realization;
pub mod sp;

pub use evaluation::EvaluationModule;
pub use induced::{induced_module, simple_quotient_window, InducedModule, Monomial, Top, WindowQuotient};
pub use jet::{calibrate_jet_coefficients, sigma, verify_jet_module, verify_sp_identity, Calibration, JetModule, JetOp, Profile};
pub use module::{
    action_csv, associativize, highest_weight_space, module_manifest, verify_integrability, verify_representation,
    Associativization, GradedModule,
};
pub use realization::{realization_module, verify_center_trivial, verify_top_dimension, RealizationModule};
pub use sp::{sp_basis, Fiber, SpRep};

#[cfg(test)]
mod tests;
