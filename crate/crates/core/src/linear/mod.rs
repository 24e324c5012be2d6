//! Exact linear algebra for partition maps.

mod matrix;
mod space;
mod tmap;

use thiserror::Error;

use crate::partition::PartitionError;

pub use matrix::{Echelon, ExactMatrix, IntMatrix, RatMatrix, Scalar};
pub use space::{cp1_witness_check, intertwiner_dim, projective_projection, IntertwinerSpace, ProjectionReport};
pub use tmap::{
    check_composition, check_functoriality, check_involution, check_tensor, delta_p, max_entries, t_map,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinearError {
    #[error("index {index} outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("n^{exponent} with n = {n} exceeds the size cap {cap} (set EASYQG_MAX_ENTRIES to raise it)")]
    SizeOverflow { n: usize, exponent: usize, cap: u128 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("{0} is not projective")]
    NotProjective(String),
    #[error("missing subprojectives: {0}")]
    MissingSubprojectives(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}
