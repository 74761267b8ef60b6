pub mod a11;
pub mod error;
pub mod numerics;
pub mod mock;
pub mod qexp;
pub mod scft;
pub mod sl21;
pub mod theta;
pub mod verify;

pub use error::{Error, Result};
