//! Bump functions and oscillatory integrals: `psi`, the continuous multiplier `H_j`,
//! the slab phase and its stationary phase decomposition.

mod bump;
mod phase;
mod quad;
mod square;

pub use bump::BumpFamily;
pub use phase::{
    critical_phase_constant, critical_point, displayed_phase_constant, frac_power, PhaseContext, SplitSymbol,
};
pub use quad::{oscillatory_quadrature, QuadConfig};
pub use square::{square_function_s_g, square_function_s_gprime, SquareFunctionSpec};

use crate::error::Result;
use crate::scalar::Real;

/// A bump family paired with quadrature settings; the entry point for every
/// oscillatory integral in the crate.
#[derive(Debug, Clone, PartialEq)]
pub struct Oscillatory<T: Real> {
    pub bumps: BumpFamily<T>,
    pub quad: QuadConfig,
}

impl<T: Real> Oscillatory<T> {
    pub fn new(order: u32, quad: QuadConfig) -> Result<Self> {
        Ok(Self { bumps: BumpFamily::new(order)?, quad })
    }
}

impl Default for Oscillatory<f64> {
    fn default() -> Self {
        Self { bumps: BumpFamily::default(), quad: QuadConfig::default() }
    }
}

impl Default for Oscillatory<f32> {
    fn default() -> Self {
        Self { bumps: BumpFamily::default(), quad: QuadConfig { tol: 1e-5, max_panels: 1 << 18 } }
    }
}
