pub mod bundle;
pub mod error;
pub mod fan;
pub mod filtration;
pub mod fixtures;
pub mod linalg;
mod lp;
pub mod problem;
pub mod rees;
pub mod schema;
pub mod spherical;
