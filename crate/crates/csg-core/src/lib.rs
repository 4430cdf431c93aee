//! Exact computations with crossed simplicial groups.
//!
//! The crate is `no_std` (with `alloc`). Modules follow the mathematics:
//!
//! * [`ordmap`]: the simplex category Δ.
//! * [`gpar`]: groups with parity and wreath products.
//! * [`csg`]: crossed simplicial group instances and their functors.
//! * [`envelope`]: the twisted associative operad, its envelope, and the
//!   isomorphism with the whiskered twisted symmetric category.
//! * [`field`]: exact scalars and sparse matrices.
//! * [`twalg`]: algebras with twisted group action.
//! * [`barhom`]: bar constructions and their homology.
#![no_std]

extern crate alloc;

pub mod barhom;
pub mod csg;
pub mod envelope;
pub mod error;
pub mod field;
pub mod gpar;
pub mod ordmap;
pub mod twalg;

pub use error::{Error, Result};
