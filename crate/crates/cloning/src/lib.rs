//! Universal quantum cloning: fidelity bounds, the Q-norm, optimal channels and the
//! achievable fidelity regions.

pub mod channels;
pub mod qnorm;
pub mod region;
pub mod sigma;
pub mod two_clone;

pub use channels::{
    marginal_report, necessary_condition_residual, optimal_asymmetric_channel, optimal_symmetric_channel, p_opt,
    random_channel_choi, twirl_estimate, AsymmetricChannel, FidelityPoint, TwirlGroup,
};
pub use qnorm::{
    b_from_direction, b_from_direction_reduced, q_norm, q_norm_reduced, q_norm_with_gradient, r_matrix, reduced_top,
    s_matrix, upper_bound, upper_bound_from_qnorm, BCoefficients, BoundMode, Direction,
};
pub use region::{
    ellipse_family, region_1to2, region_membership_n, restricted_region_check, EllipseParams, Membership,
    MembershipOptions, Region12,
};
pub use sigma::{sigma_partial_trace_check, sigma_subsets, SigmaReport};
pub use two_clone::{
    assemble_choi_1to2, assembled_spectrum, choi_1to2_blocks, coeffs_from_lambda, feasible_numeric, Blocks1to2,
    Choi1to2Coeffs,
};

use qclone_operators::OpError;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum CloneError {
    #[error(transparent)]
    Op(#[from] OpError),
    #[error("invalid direction vector: {0}")]
    InvalidDirection(String),
    #[error("outside domain: {0}")]
    Domain(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("index out of range: {0}")]
    IndexRange(String),
}

impl From<qclone_diagrams::DiagramError> for CloneError {
    fn from(e: qclone_diagrams::DiagramError) -> Self {
        CloneError::Op(OpError::Diagram(e))
    }
}
