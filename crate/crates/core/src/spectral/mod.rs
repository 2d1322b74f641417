//! Finite signals on the integers, Fourier multipliers applied through the DFT,
//! the maximal operator over a modulation grid, TT* kernels and variation functionals.

mod carleson;
mod dft;
mod multiplier;
mod signal;
mod ttstar;
mod variation;

pub use carleson::{carleson_apply, carleson_direct_oracle};
pub use dft::{dft, idft};
pub use multiplier::{
    apply_cyclic, apply_multiplier, kernel_m, kernel_mj, minimum_ring, multiplier_m, multiplier_mj,
    truncated_hilbert_weight, KernelMultiplier, Multiplier, SymbolFn,
};
pub use signal::{GridProvenance, LambdaGrid, Signal};
pub use ttstar::{
    ks_minimum_ring, phi_s_autocorrelation, ttstar_kernel_kj, ttstar_kernel_ks, KsCounting, TTStarContext,
    WeylLinearizers,
};
pub use variation::{
    check_intervals, dyadic_intervals, interval_grid, oscillation_sum, oscillation_sum_with, r_variation,
    LambdaInterval,
};
