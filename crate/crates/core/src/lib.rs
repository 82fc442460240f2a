//! Exact computations with the Mumford-type relations ξ, the ρ-calculus,
//! the generator families I, K′ and J, and finite quotient models of the
//! resulting algebras.

pub mod error;
pub mod linalg;
pub mod poly;
pub mod quotient;
pub mod relations;
pub mod series;
pub mod floer;
pub mod verify;
