//! Isotropic marginals on the complete graph K_N: the value p(N,d), matching states, the scalar
//! dual H(x) and its representation-theoretic affine family.

pub mod affine;
pub mod central;
pub mod closed;
pub mod dual;
pub mod matching;
pub mod state33;

pub use affine::{affine_family, AffineFamily, AffineFn};
pub use central::{central_element_check, CentralAlgebra, CentralReport};
pub use closed::{
    dual_closed, gamma_membership, p_closed, special_partitions, DualCertificate, Regime, SpecialPartitions,
};
pub use dual::{dual_numeric, h_operator, DualResult, HParts, DENSE_EIG_MAX};
pub use matching::{
    edges, isotropic_fit, isotropic_fit_exact, matching_state, pair_marginal, perfect_matchings, ExactFit, Fit,
    MAX_MATCHING_N,
};
pub use state33::{optimal_state_3_3, State33};

use qclone_diagrams::DiagramError;
use qclone_operators::OpError;
use qclone_young::YoungError;

#[derive(Debug, thiserror::Error)]
pub enum ExtError {
    #[error(transparent)]
    Op(#[from] OpError),
    #[error(transparent)]
    Young(#[from] YoungError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("invalid instance: {0}")]
    Domain(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("golden-section search did not converge after {0} evaluations")]
    NoConvergence(usize),
}

pub(crate) fn check_instance(n: usize, d: usize) -> Result<(), ExtError> {
    if n < 2 || d < 2 {
        return Err(ExtError::Domain(format!("need N >= 2 and d >= 2, got N={n}, d={d}")));
    }
    Ok(())
}
