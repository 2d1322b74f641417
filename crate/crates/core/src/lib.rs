//! Numerical toolkit for discrete monomial Carleson operators
//! `sup_lambda |sum_{m != 0} f(x - m) e(-lambda m^d) / m|`.
//!
//! The crate is generic over the floating point type through [`Real`];
//! the `*64` aliases at the root fix it to `f64`.

pub mod circle;
pub mod error;
pub mod farey;
pub mod osc;
pub mod scalar;
pub mod spectral;
pub mod stats;
pub mod weyl;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Signal64 = spectral::Signal<f64>;
pub type Signal32 = spectral::Signal<f32>;
pub type LambdaGrid64 = spectral::LambdaGrid<f64>;
pub type LambdaGrid32 = spectral::LambdaGrid<f32>;
pub type BumpFamily64 = osc::BumpFamily<f64>;
pub type BumpFamily32 = osc::BumpFamily<f32>;
pub type Oscillatory64 = osc::Oscillatory<f64>;
pub type Oscillatory32 = osc::Oscillatory<f32>;
pub type PhaseContext64 = osc::PhaseContext<f64>;
pub type Complex64 = num_complex::Complex<f64>;
