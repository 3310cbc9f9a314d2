pub mod dynamics;
pub mod error;
pub mod expcli;
pub mod riskdom;
pub mod tdgame;

pub use error::{Error, Result};
