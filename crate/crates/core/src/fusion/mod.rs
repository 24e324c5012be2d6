//! Fusion rules of `O_n^+`, `S_n^+`, `H_n^{s+}` and `U_n^+`.

mod label;
mod ring;
mod word;

use thiserror::Error;

pub use label::{FusionVector, IrrepLabel};
pub use ring::{
    free_decompose, h_decompose, so3_decompose, su2_decompose, ChainGroup, Family, FusionRing, Reach,
};
pub use word::{word_fusion, word_involution, FreeWord, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FusionError {
    #[error("moduli {0} and {1} differ")]
    ModulusMismatch(u32, u32),
    #[error("wrong family: {0}")]
    WrongFamily(String),
    #[error("label u{0} is odd")]
    OddLabel(u64),
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("{label} does not occur in any power up to {level_cap}")]
    NotReachable { label: String, level_cap: usize },
    #[error("inconsistent dimension: {0}")]
    InconsistentDimension(String),
    #[error("dimensions need n ≥ {min}, got {n}")]
    DimensionPrecondition { n: usize, min: usize },
}
