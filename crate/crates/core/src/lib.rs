//! Certified bounds on the Kobayashi distance of pseudoconvex Reinhardt domains.
//!
//! The crate is organised bottom-up:
//!
//! * [`geometry`]: exact invariant distances on planar model domains.
//! * [`domain`]: domains described by log-sum-exp constraints on their logarithmic
//!   image, with membership, boundary distances and supporting halfspaces.
//! * [`bounds`]: upper and lower bounds built from comparison domains.
//! * [`asymptotics`]: boundary-approach sweeps and slope diagnostics.

pub mod asymptotics;
pub mod bounds;
pub mod catalog;
pub mod domain;
pub mod error;
pub mod geometry;
mod search;

pub use error::{Error, Result};
