pub mod catalog;
pub mod error;
pub mod harmonic;
pub mod jet;
pub mod limits;
pub mod linalg;
pub mod poly;
pub mod props;
pub mod suite;
pub mod tensor;

pub use error::{Error, Result};
pub use limits::Limits;
