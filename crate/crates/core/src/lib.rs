pub mod driver;
pub mod error;
pub mod hochschild;
pub mod homotopy;
pub mod linalg;
pub mod presentation;
pub mod quiver;

pub use error::{Error, Result};
