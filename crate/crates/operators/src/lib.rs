//! Dense and sparse operators on (C^d)^n: diagram tensors, special states, partial traces,
//! Choi matrices, spectral routines, Haar sampling and commutant checks.

pub mod channel;
pub mod commutant;
pub mod exact;
pub mod haar;
pub mod linalg;
pub mod space;
pub mod sparse;
pub mod states;
pub mod tensor;

pub use channel::{apply_choi, choi_of_map, cptp_check, fidelity_pure, CptpReport};
pub use commutant::{commutant_dimension, numerical_rank, CommutantReport};
pub use exact::RatOp;
pub use haar::{
    haar_diag_perm, haar_orthogonal, haar_orthogonal_rng, haar_pure_state, haar_pure_state_rng, haar_unitary,
    haar_unitary_rng, random_permutation_matrix, rng_from_seed,
};
pub use linalg::{
    coo_entries, eigh, embed, is_hermitian, lambda_max, min_eig, op_norm, partial_trace, partial_transpose, top_eigvec,
    PSD_TOL,
};
pub use space::{
    c, checked_dim, dense_cap, dense_dim, digits, index, kron_all, max_abs, trace, CMat, TensorSpace, C64,
    DEFAULT_DENSE_CAP, DENSE_CAP_ENV,
};
pub use sparse::{lanczos_lambda_max, LanczosOptions, SparseOp};
pub use states::{special_state, SpecialState};
pub use tensor::{tensor_rep, tensor_rep_entries, trace_rep};

use qclone_diagrams::DiagramError;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum OpError {
    #[error("dimension {dim} exceeds dense cap {cap}")]
    CapExceeded { dim: usize, cap: usize },
    #[error("bad dimension: {0}")]
    BadDimension(String),
    #[error("operator is not hermitian")]
    NonHermitian,
    #[error("parameter {value} outside [{lo}, {hi}]")]
    StateRange { value: f64, lo: f64, hi: f64 },
    #[error("factor subset {0:?} out of range")]
    BadSubset(Vec<usize>),
    #[error("not a state: {0}")]
    NotAState(String),
    #[error("iteration did not converge after {0} steps")]
    NoConvergence(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}
