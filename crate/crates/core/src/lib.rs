pub mod bounds;
pub mod distributions;
pub mod entropy;
pub mod error;
pub mod families;
pub mod systems;
pub mod verify;

pub use error::{Error, Result};
