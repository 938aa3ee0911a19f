//! Willmore flow with prescribed isoperimetric ratio for axisymmetric
//! surfaces of sphere type.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod flow;
pub mod geometry;
pub mod spheroid;
pub mod sturm;

#[cfg(feature = "cli")]
pub mod cli;
