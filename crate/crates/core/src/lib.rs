//! Hadamard products, Thorin measures, special functions and samplers for
//! van Dantzig pairs and Wald couples.
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod prelude;

pub mod couples;
pub mod densities;
pub mod error;
pub mod hadamard;
pub mod lseries_process;
pub mod numerics;
pub mod samplers;
pub mod specfun;
pub mod thorin;

pub use error::{Error, Result};
