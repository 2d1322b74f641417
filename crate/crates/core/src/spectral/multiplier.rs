use num_complex::Complex;

use super::dft::Ring;
use super::Signal;
use crate::error::{invalid, Error, Result};
use crate::osc::BumpFamily;
use crate::scalar::{int, monomial_phase, Real};

/// A Fourier multiplier that can be sampled on the frequencies `t/N` of a ring.
pub trait Multiplier<T: Real> {
    /// Symbol values at `beta = t/N`, `t = 0..N`.
    fn symbol(&self, ring: usize) -> Result<Vec<Complex<T>>>;

    /// Largest `|m|` in the convolution kernel, when known.
    fn kernel_radius(&self) -> Option<u64> {
        None
    }
}

/// A symbol given as a function of `beta`.
pub struct SymbolFn<F>(pub F);

impl<T: Real, F: Fn(T) -> Complex<T>> Multiplier<T> for SymbolFn<F> {
    fn symbol(&self, ring: usize) -> Result<Vec<Complex<T>>> {
        let n = int::<T>(ring as i128);
        Ok((0..ring).map(|t| (self.0)(int::<T>(t as i128) / n)).collect())
    }
}

/// A multiplier given by its finitely supported convolution kernel
/// `k(m)`, `m` in `[offset, offset + len)`; the symbol is `sum_m k(m) e(-beta m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelMultiplier<T: Real> {
    pub kernel: Signal<T>,
}

impl<T: Real> KernelMultiplier<T> {
    pub fn new(kernel: Signal<T>) -> Self {
        Self { kernel }
    }

    /// The kernel wrapped onto `Z/NZ`.
    pub fn wrapped(&self, ring: usize) -> Vec<Complex<T>> {
        let mut buf = vec![Complex::new(T::zero(), T::zero()); ring];
        for (i, v) in self.kernel.values().iter().enumerate() {
            let m = self.kernel.offset() + i as i64;
            buf[m.rem_euclid(ring as i64) as usize] += *v;
        }
        buf
    }
}

impl<T: Real> Multiplier<T> for KernelMultiplier<T> {
    fn symbol(&self, ring: usize) -> Result<Vec<Complex<T>>> {
        let mut buf = self.wrapped(ring);
        Ring::new(ring).forward(&mut buf);
        Ok(buf)
    }

    fn kernel_radius(&self) -> Option<u64> {
        let r = self.kernel.range();
        if r.is_empty() {
            return Some(0);
        }
        Some(r.start.unsigned_abs().max((r.end - 1).unsigned_abs()))
    }
}

/// Smallest ring accepted for a signal of support width `w`.
pub fn minimum_ring(width: usize, kernel_radius: Option<u64>) -> usize {
    let base = 4 * width.max(1);
    match kernel_radius {
        Some(r) => base.max(width + 2 * r as usize + 1),
        None => base,
    }
}

/// Places `f` on a ring of size `n`, with `f.offset()` at index 0.
pub(crate) fn to_ring<T: Real>(f: &Signal<T>, n: usize) -> Vec<Complex<T>> {
    let mut buf = vec![Complex::new(T::zero(), T::zero()); n];
    buf[..f.len()].copy_from_slice(f.values());
    buf
}

/// Reads a ring back as a signal on `n` consecutive integers centred on the support of `f`.
pub(crate) fn from_ring<T: Real>(f: &Signal<T>, buf: &[Complex<T>]) -> Signal<T> {
    let n = buf.len() as i64;
    let lead = (n - f.len() as i64) / 2;
    let start = f.offset() - lead;
    let vals = (0..n).map(|i| buf[(i - lead).rem_euclid(n) as usize]).collect();
    Signal::new(start, vals)
}

pub(crate) fn check_ring<T: Real>(f: &Signal<T>, ring: usize, kernel_radius: Option<u64>) -> Result<()> {
    let need = minimum_ring(f.len(), kernel_radius);
    if ring < need {
        return Err(Error::RingTooSmall { ring, required: need });
    }
    Ok(())
}

/// `(m(beta) f_hat(beta))^vee` evaluated on a ring of size `ring`.
///
/// The ring must hold at least four times the support of `f` (and, for kernel
/// multipliers, the full convolution) so that no output wraps around. The output
/// covers `ring` consecutive integers around the support of `f`.
pub fn apply_multiplier<T: Real, M: Multiplier<T> + ?Sized>(f: &Signal<T>, m: &M, ring: usize) -> Result<Signal<T>> {
    if f.is_empty() {
        return Ok(Signal::empty());
    }
    check_ring(f, ring, m.kernel_radius())?;
    let r = Ring::new(ring);
    let mut buf = to_ring(f, ring);
    r.forward(&mut buf);
    let sym = m.symbol(ring)?;
    for (b, s) in buf.iter_mut().zip(sym) {
        *b *= s;
    }
    r.inverse(&mut buf);
    Ok(from_ring(f, &buf))
}

/// `sum_m psi_j(m) e(-lambda m^d - beta m)` over the support `2^{j-1} < |m| < 2^{j+1}`.
pub fn multiplier_mj<T: Real>(lambda: T, beta: T, j: u32, d: u32, bumps: &BumpFamily<T>) -> Complex<T> {
    let mut acc = Complex::new(T::zero(), T::zero());
    let (lo, hi) = (1i64 << (j.max(1) - 1), 1i64 << (j + 1));
    for m in lo..=hi {
        let w = bumps.psi_j(int(m as i128), j as i32);
        if w == T::zero() {
            continue;
        }
        acc += (monomial_phase(lambda, beta, m, d) - monomial_phase(lambda, beta, -m, d)) * w;
    }
    acc
}

/// Coefficient of `e(-lambda m^d)` in the kernel of [`multiplier_m`]: `sum_{j=1}^{J} psi_j(m)`,
/// plus `1/m` at `|m| = 1` where the partition vanishes.
pub fn truncated_hilbert_weight<T: Real>(m: i64, big_j: u32, bumps: &BumpFamily<T>) -> T {
    if m == 0 {
        return T::zero();
    }
    if m.abs() == 1 {
        return int::<T>(m as i128).recip();
    }
    let mut acc = T::zero();
    let mf = int::<T>(m as i128);
    for j in 1..=big_j as i32 {
        acc += bumps.psi_j(mf, j);
    }
    acc
}

/// Convolution kernel `n -> psi_j(n) e(-lambda n^d)` of `M_j(lambda, .)`.
pub fn kernel_mj<T: Real>(lambda: T, j: u32, d: u32, bumps: &BumpFamily<T>) -> KernelMultiplier<T> {
    let hi = 1i64 << (j + 1);
    let vals = (-hi..=hi)
        .map(|m| monomial_phase(lambda, T::zero(), m, d) * bumps.psi_j(int(m as i128), j as i32))
        .collect();
    KernelMultiplier::new(Signal::new(-hi, vals))
}

/// Convolution kernel of `M(lambda, .)`: `n -> w_J(n) e(-lambda n^d)` with the weight of
/// [`truncated_hilbert_weight`], supported in `|n| < 2^{J+1}`.
pub fn kernel_m<T: Real>(lambda: T, d: u32, big_j: u32, bumps: &BumpFamily<T>) -> KernelMultiplier<T> {
    let hi = (1i64 << (big_j + 1)) - 1;
    let vals = (-hi..=hi)
        .map(|m| monomial_phase(lambda, T::zero(), m, d) * truncated_hilbert_weight(m, big_j, bumps))
        .collect();
    KernelMultiplier::new(Signal::new(-hi, vals))
}

/// `M(lambda, beta) = sum_{j=1}^{J} M_j(lambda, beta)` plus the exact `|m| = 1` terms.
///
/// The blocks sum to `e(-lambda m^d - beta m)/m` for `2 <= |m| <= 2^J` and taper off
/// smoothly up to `|m| < 2^{J+1}`.
pub fn multiplier_m<T: Real>(lambda: T, beta: T, d: u32, big_j: u32, bumps: &BumpFamily<T>) -> Result<Complex<T>> {
    if big_j == 0 {
        return invalid("J must be at least 1");
    }
    let mut acc = monomial_phase(lambda, beta, 1, d) - monomial_phase(lambda, beta, -1, d);
    for j in 1..=big_j {
        acc += multiplier_mj(lambda, beta, j, d, bumps);
    }
    Ok(acc)
}

/// Circular convolution on `Z/NZ` (`N = values.len()`) with the kernel wrapped modulo `N`.
pub fn apply_cyclic<T: Real, M: Multiplier<T> + ?Sized>(values: &[Complex<T>], m: &M) -> Result<Vec<Complex<T>>> {
    let n = values.len();
    if n == 0 {
        return invalid("empty ring");
    }
    let r = Ring::new(n);
    let mut buf = values.to_vec();
    r.forward(&mut buf);
    for (b, s) in buf.iter_mut().zip(m.symbol(n)?) {
        *b *= s;
    }
    r.inverse(&mut buf);
    Ok(buf)
}
