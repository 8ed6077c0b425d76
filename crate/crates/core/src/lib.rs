//! Exact computation of local and global invariants of varieties over
//! finite fields: Hilbert-Samuel multiplicities of local rings, the index
//! of a variety from closed-point counts, resolution of plane curve germs,
//! and special fibers of plane models over `F_q[[t]]`.

pub mod arith;
pub mod bivariate;
pub mod census;
pub mod cone;
pub mod fermat;
pub mod field;
pub mod geometry;
pub mod invariants;
pub mod linalg;
pub mod local;
pub mod models;
pub mod poly;
pub mod resolution;
pub mod ring;
pub mod upoly;
pub mod variety;

pub use field::{make_extension, make_prime_field, FiniteField};
pub use geometry::{Point, Poly};
pub use poly::{MultiPoly, Vars};
