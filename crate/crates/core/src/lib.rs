//! Two-state quantum systems worked entirely inside the geometric algebra of
//! Euclidean 3-space, Cl(3,0).
//!
//! Multivectors carry 8 real coefficients over the blade basis
//! `[1, e1, e2, e3, e23, e31, e12, e123]`. Quantum states live in the minimal
//! left ideal `G3 f` with `f = (1 + e3)/2`; the pseudoscalar `e123` plays the
//! role of the imaginary unit. Hermitian Hamiltonians are scalar-plus-vector
//! multivectors, diagonalized by rotating their vector part onto `e3`, and time
//! evolution is a rotor acting from the left.
//!
//! The [`oracle`] module is a separate conventional implementation over 2x2
//! complex matrices. It shares no arithmetic with the algebra side and is used
//! for differential testing.

pub mod cli;
pub mod conformance;
mod error;
pub mod multivector;
pub mod oracle;
pub mod quaternion;
pub mod rotor;
pub mod spinor;
pub mod tss;

pub use error::{Error, Result};
pub use multivector::Multivector;
pub use quaternion::{Polar, Quaternion};
pub use rotor::Rotor;
pub use spinor::{AlgebraicSpinor, CenterScalar};
pub use tss::{EigenSystem, FieldConfig, Hamiltonian};

/// A Euclidean 3-vector given by its `e1, e2, e3` components.
pub type Vec3 = [f64; 3];
