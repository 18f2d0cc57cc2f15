pub mod bott;
pub mod collection;
pub mod error;
mod linalg;
pub mod parabolic;
pub mod rep_theory;
pub mod root_system;
pub mod weight;

pub use error::{Error, Result};
pub use parabolic::ParabolicData;
pub use rep_theory::{Decomposition, WeightSystem};
pub use root_system::{CartanType, ChamberResult, Family, RootSystem};
pub use weight::Weight;
