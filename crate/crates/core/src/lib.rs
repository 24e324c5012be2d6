//! Exact combinatorics of the free easy quantum groups: categories of colored
//! partitions, their linear maps, fusion rings, and inductive limits of the
//! fusion modules.

pub mod conditions;
pub mod fusion;
pub mod ktheory;
pub mod linear;
pub mod partition;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/partitions.md")]
mod book_partitions {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/linear-maps.md")]
mod book_linear_maps {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/fusion.md")]
mod book_fusion {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/conditions.md")]
mod book_conditions {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/ktheory.md")]
mod book_ktheory {}
