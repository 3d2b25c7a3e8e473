//! Exact verification of Hopf-Galois systems over finitely presented
//! noncommutative algebras.
//!
//! The crate is organized in layers:
//!
//! * [`scalar`] — exact coefficients: rationals and cyclotomic fields.
//! * [`ncalg`] — free algebras, presentations, tensor elements, algebra
//!   (anti)morphisms, and bounded-degree ideal membership.
//! * [`hg`] — the Hopf-Galois system data model and the axiom verifier.
//! * [`findim`] — finite-dimensional structure-constant (bi)algebras,
//!   2-cocycle machinery on symmetric groups, R-matrices and the
//!   `O_{q,p}` presentations.
//! * [`catalog`] — the bilinear-form, cosovereign and free-Hopf example
//!   families with their structure morphisms.

pub mod catalog;
pub mod findim;
pub mod hg;
pub mod ncalg;
pub mod scalar;
