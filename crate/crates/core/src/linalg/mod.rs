//! Exact matrix and submodule arithmetic over ℤ, ℚ and ℤ/p.

pub mod hnf;
pub mod matrix;
pub mod presentation;
pub mod ring;
pub mod snf;
pub mod submodule;

pub use matrix::Matrix;
pub use presentation::{presented_cohomology, presented_map_is_iso, ModulePresentation, Presented, Quotient};
pub use ring::{Ring, Scalar};
pub use snf::{smith_normal_form, SmithForm};
pub use submodule::{image, kernel, Submodule};
