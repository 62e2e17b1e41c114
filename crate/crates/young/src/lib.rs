//! Partitions, tableau counts and the rational group algebra of the symmetric group.

mod partition;
mod symmetric;
mod tableau;

pub use partition::Partition;
pub use symmetric::{
    all_perms, canonical_tableau, compose, cycle_count, identity, inverse, is_permutation, isotypic_projector,
    isotypic_projector_with_cap, quasi_idempotent_scalar, sign, young_symmetrizer, young_symmetrizer_with_cap, Perm,
    SymAlgebraElement, DEFAULT_ENUM_CAP,
};
pub use tableau::{
    irr_brauer, irr_symmetric, ssyt_count, standard_tableaux, syt_count, BrauerLabel, SSYT_MAX_BOXES, SSYT_MAX_D,
};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum YoungError {
    #[error("not a partition: {0:?}")]
    InvalidPartition(Vec<usize>),
    #[error("cannot parse partition from {0:?}")]
    Parse(String),
    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },
}
