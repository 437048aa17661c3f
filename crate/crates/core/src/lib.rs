pub mod catalog;
pub mod complex;
pub mod cubical;
pub mod descent;
pub mod error;
pub mod filtered;
pub mod generate;
pub mod gysin;
pub mod io;
pub mod linalg;
pub mod spaces;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{Matrix, ModulePresentation, Ring, Scalar, Submodule};
