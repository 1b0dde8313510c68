// `!(x > 0.0)` style guards are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod lengths;
pub mod psl2;
pub mod spectral;
pub mod transfer;

pub use error::{Error, Result};
