pub mod bounds;
pub mod circuits;
pub mod dynamics;
pub mod ensembles;
pub mod error;
pub mod experiments;
pub mod moments;
pub mod numerics;
pub mod report;

pub use error::{Error, Result};
