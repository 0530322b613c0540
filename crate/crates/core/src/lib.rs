//! Topological T-duality data for compact semisimple Lie groups fibred over
//! their flag manifolds, computed with exact integer arithmetic.

pub mod contcheck;
pub mod error;
pub mod flagcoh;
pub mod loopext;
pub mod rootdata;
pub mod tduality;
pub mod zlinalg;

pub use error::{Error, Result};
