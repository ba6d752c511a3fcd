//! Exact-arithmetic engine for Kac polynomials and refined Kac functions of
//! finite quivers, driven by generating-function identities over Q(q).
//!
//! The layers, bottom to top:
//! - [`qfield`]: integer polynomials in q and the rational function field Q(q)
//! - [`quiver`]: companion matrices, the Euler form, and the enlarged quiver
//! - [`partitions`]: partitions, partition tuples, multiplicity matrices
//! - [`series`]: truncated multivariate power series with plethystic Exp/Log
//! - [`hua`]: the generating series and the Kac / refined Kac tables
//! - [`verify`]: golden tables, identity checks, positivity certification

pub mod hua;
pub mod partitions;
pub mod qfield;
pub mod quiver;
pub mod series;
pub mod verify;

pub use hua::{KacTable, RefinedKacTable};
pub use partitions::{Partition, PartitionTuple};
pub use qfield::{IntPolynomial, RationalFunction};
pub use quiver::{DimVector, Quiver};
pub use series::TruncatedSeries;
