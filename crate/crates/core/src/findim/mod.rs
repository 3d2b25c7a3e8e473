//! Exact finite-dimensional models: the function algebra of `S_mn`, its
//! cocycle deformations by Artin-Schelter-Tate matrices, the associated
//! R-matrices and `O_{q,p}(S_mn)` presentations, and the representation
//! checks that certify the presented algebras nonzero.

pub mod algebra;
pub mod ast;
pub mod cocycle;
pub mod function;
pub mod perm;
pub mod rmatrix;
pub mod system;

pub use algebra::{FinDimAlgebra, FinDimBialgebra, Vect};
pub use ast::{blockstar, ASTMatrix, GroupCocycle};
pub use cocycle::{
    deform_both, deform_left, deform_right, pullback_cocycle, sigma_closed_form, Cocycle2,
};
pub use function::{
    build_function_algebra, build_group_algebra_h, pi_morphism, resolve_convention, x_generator,
    HGroup, PiMorphism, XConvention,
};
pub use perm::PermGroup;
pub use rmatrix::{build_oqp, rmatrix, RMatrix};
pub use system::{
    build_smn_system, deformation_cross_check, findim_representation_check, smn_nonzero_evidence,
    tensor_representation_check, RepCheck, SmnNonzeroEvidence, TensorRepTarget,
};
