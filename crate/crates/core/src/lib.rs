pub mod arith;
pub mod arrangement;
pub mod complex;
pub mod error;
pub mod exec;
pub mod fan;
pub mod fixtures;
pub mod io;
pub mod labeling;
pub mod pipeline;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};
