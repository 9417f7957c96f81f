//! Thermal entanglement in mixed-spin (S, 1/2) Heisenberg chains.
//!
//! * [`spin`]: spin operators and tensor-product embedding.
//! * [`pair`]: closed forms for one (S, 1/2) pair.
//! * [`chain`]: sector-blocked exact diagonalization of finite chains.
//! * [`witness`]: susceptibility witness, negativity bound, characteristic temperatures.
//! * [`fitdata`]: measured series, model susceptibilities and (J, g) fits.

// NaN must fail range checks, so `!(x > 0.0)` is used on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chain;
pub mod error;
pub mod fitdata;
pub mod fmt;
pub mod linalg;
pub mod negativity;
pub mod pair;
pub mod roots;
pub mod simplex;
pub mod spin;
pub mod units;
pub mod witness;

pub use error::{Error, Result};
pub use spin::SpinQuantum;
