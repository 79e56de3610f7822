//! Exact computational machinery around octahedron-indexed matrices over
//! GF(2) on join powers `[n]^{*k+1}`: property checking, rank-bound
//! certification, van Kampen counting, and constraint-space search.

pub mod bounds;
pub mod completion;
pub mod complex;
pub mod gf2;
pub mod k1;
pub mod nkmatrix;
pub mod vankampen;

mod error;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
