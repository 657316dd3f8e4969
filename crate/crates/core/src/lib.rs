//! Exact invariants of smooth projective toric varieties and a decision
//! toolkit for which complex cobordism classes they represent.

pub mod chern;
pub mod classifier;
pub mod constructions;
pub mod error;
pub mod face_vectors;
pub mod fan;
pub mod fourier_motzkin;
pub mod golden;
pub mod intersection;
pub mod ktheory;
pub mod linalg;
pub mod partition;
pub mod polytope;
pub mod symmetric;

pub use chern::{chern_numbers, ChernVector};
pub use error::{Error, Result};
pub use fan::{Cone, Fan, Ray};
pub use partition::Partition;
pub use polytope::PolytopeH;
