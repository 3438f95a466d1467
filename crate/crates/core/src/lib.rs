#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod covers;
pub mod curve;
pub mod error;
pub mod lattice;
pub mod matrix;
pub mod realize;

pub use error::{Error, Result};
