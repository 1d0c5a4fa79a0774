//! Orlicz norms of Fourier coefficient sequences, fractional moduli of
//! smoothness, best trigonometric approximation and the K-functional, with
//! numerical checks of the direct, inverse and equivalence theorems.
//!
//! The numeric modules are generic over [`Real`]; `*64` and `*32` aliases
//! name the common instantiations. `verify` and `cli` work in `f64`.

// `!(x <= y)` is used on purpose so NaN lands on the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod approx;
pub mod cli;
pub mod error;
pub mod format;
pub mod fracdiff;
pub mod kfunc;
pub mod orlicz;
pub mod scalar;
pub mod search;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
pub use orlicz::{ExtendedReal, OrliczFunction, OrliczSpec};
pub use scalar::Real;
pub use spectrum::{CoeffSeq, PsiWeights};

pub type CoeffSeq64 = CoeffSeq<f64>;
pub type CoeffSeq32 = CoeffSeq<f32>;
pub type OrliczFunction64 = OrliczFunction<f64>;
pub type OrliczFunction32 = OrliczFunction<f32>;
