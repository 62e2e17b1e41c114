//! Set-partition diagrams on 2k vertices, the diagram monoids and their algebras.

mod algebra;
mod diagram;
mod family;

pub use algebra::{int, Delta, DiagramAlgebraElement};
pub use diagram::{permutation_sign, Diagram};
pub use family::{bell, default_enum_cap, enumerate, enumerate_with_cap, uniform_block_order, Family};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("invalid blocks: {0}")]
    InvalidBlocks(String),
    #[error("diagram sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("loop parameters differ")]
    DeltaMismatch,
    #[error("not a permutation: {0:?}")]
    NotPermutation(Vec<usize>),
    #[error("row {0} outside 1..={1}")]
    BadRow(usize, usize),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("enumeration for k={k} exceeds cap {cap}")]
    CapExceeded { k: usize, cap: usize },
}
