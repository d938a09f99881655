//! Entanglement of assistance and concurrence under local noise.
//!
//! The numerical core is generic over the real scalar (`f32` or `f64`);
//! the aliases below fix the common `f64` instantiation.

pub mod assist;
pub mod channels;
pub mod error;
pub mod laws;
pub mod linalg;
pub mod measures;
pub mod scalar;
pub mod states;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, Dims};
pub use scalar::Real;

pub type C64 = num_complex::Complex<f64>;
pub type Matrix = ComplexMatrix<f64>;
pub type Matrix32 = ComplexMatrix<f32>;
pub type StateF64 = states::State<f64>;
pub type Channel = channels::KrausChannel<f64>;
