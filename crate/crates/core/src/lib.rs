pub mod classify;
pub mod error;
pub mod finitegeo;
pub mod flexsolve;
pub mod hesse;
pub mod hessgroup;
pub mod linalg;
pub mod poly;
pub mod projective;
pub mod scalar;
pub mod upoly;

pub use error::{Error, Result};
