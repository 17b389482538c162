//! Exact counting of nonattacking rider placements on dilated rational polygons.
//!
//! The crate is `no_std` (it needs `alloc`). It provides
//!
//! - [`geometry`]: moves, boards, lattice points and the attack relation;
//! - [`enumerate`]: the brute-force counter and the configuration-type census;
//! - [`arrangement`]: the move hyperplane arrangement, its intersection
//!   semilattice with Möbius values, and the inclusion–exclusion reconstruction;
//! - [`quasipoly`]: exact quasipolynomial fitting, period detection and evaluation;
//! - [`bounds`]: vertex denominators and subdeterminant bounds on the period.
#![no_std]

extern crate alloc;

pub mod arrangement;
pub mod bounds;
pub mod combin;
pub mod enumerate;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod quasipoly;

pub use error::{Error, Result};
pub use geometry::{attacks, interior_lattice_points, BoardPolygon, Configuration, Inequality, Move, MoveSet, Point};
