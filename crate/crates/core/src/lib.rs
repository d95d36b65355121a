//! Exact tropical linear algebra, Shapley operators and ambitropical cones.
pub mod alcoved;
pub mod error;
pub mod fixtures;
pub mod games;
pub mod homog;
pub mod io;
pub mod minmax;
pub mod plot;
pub mod retract;
pub mod sample;
pub mod scalar;
pub mod selfcheck;
pub mod tropical;

pub use error::{Error, Result};
pub use scalar::{Ext, Rat};
