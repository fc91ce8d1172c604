//! Numerical toolkit for the q-deformed oscillator that arises from
//! self-similar (geometrically scaled) shape-invariant systems, its coherent
//! states, and the completeness measure built on Ramanujan's extension of the
//! beta-function integral.
//!
//! Modules:
//! - [`qspecial`]: scalar q-series primitives — q-Pochhammer symbols,
//!   q-integers, generalized q-exponentials, the closed-form Ramanujan moment
//! - [`quad`]: adaptive quadrature for positive integrands on `[0, ∞)` with
//!   slower-than-exponential decay, and the numerical Ramanujan moments
//! - [`fockrep`]: truncated Fock-space matrices for the ladder operators,
//!   Hamiltonian, diagonal remainder operators, and commutator residual checks
//! - [`coherent`]: coherent-state amplitude construction in both ladder
//!   conventions, norms, eigenvalue/derivative conditions, the z ↔ ζ map
//! - [`identity`]: resolution-of-identity matrix elements by radial reduction
//!   to Ramanujan moments and by seeded Monte Carlo over the complex label
//! - [`dynamics`]: time evolution under the driven q-oscillator Hamiltonian
//!
//! The crate is deterministic by construction: all randomness flows from
//! caller-provided seeds, and the data-parallel paths (enabled by the default
//! `parallel` feature) produce bit-identical results to their sequential
//! counterparts.

pub mod coherent;
pub mod dynamics;
mod error;
mod exec;
pub mod fockrep;
pub mod identity;
pub mod qspecial;
pub mod quad;

pub use error::{Error, Result};
pub use fockrep::{FockVector, ModelParams, TruncatedOperator};
pub use qspecial::{QBase, SeriesTolerance};
pub use quad::QuadratureEstimate;
