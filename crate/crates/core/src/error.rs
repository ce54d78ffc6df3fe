use thiserror::Error;

/// Errors raised when a caller hands an operation an argument outside its domain.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grade {0} is outside 0..=3")]
    InvalidGrade(usize),

    #[error("non-finite coefficient at blade index {index}")]
    NonFinite { index: usize },

    #[error("expected a pure bivector, found nonzero coefficient at blade index {index}")]
    NotBivector { index: usize },

    #[error("rotor must be even-graded, found nonzero coefficient at blade index {index}")]
    OddRotor { index: usize },

    #[error("rotor is not unit: |R~R - 1| = {deviation:e}")]
    NonUnitRotor { deviation: f64 },

    #[error("axis must be a unit vector, got norm {norm}")]
    NonUnitAxis { norm: f64 },

    #[error("zero quaternion has no polar form")]
    ZeroQuaternion,

    #[error("multivector is not in the left ideal G3 f (residual {residual:e})")]
    NotInIdeal { residual: f64 },

    #[error("state is not normalized: <psi|psi> = {re} + {ps} i")]
    NotNormalized { re: f64, ps: f64 },

    #[error(
        "Hamiltonian has scalar part h0 = {h0}; split it off with Hamiltonian::split_scalar \
         and apply center_phase separately"
    )]
    ScalarEnergyInEvolution { h0: f64 },

    #[error("field configuration: {0}")]
    InvalidField(String),

    #[error("magnetic field is zero")]
    ZeroField,

    #[error("field must be parallel to e3 for axial precession, got B = {0:?}")]
    NonAxialField([f64; 3]),

    #[error("Pauli index {0} is outside 0..=3")]
    InvalidPauliIndex(usize),

    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
