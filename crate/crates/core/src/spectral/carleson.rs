use num_complex::Complex;
use rayon::prelude::*;

use super::dft::Ring;
use super::multiplier::{check_ring, from_ring, kernel_m, to_ring, KernelMultiplier};
use super::{LambdaGrid, Signal};
use crate::error::{invalid, Result};
use crate::osc::BumpFamily;
use crate::scalar::{int, monomial_phase, Real};

/// Pointwise maximum over `grid` of `|(M(lambda, .) f_hat)^vee|`.
///
/// Each grid point costs two FFTs of size `ring`. The grid is processed in
/// parallel; the maximum does not depend on the evaluation order.
pub fn carleson_apply<T: Real>(
    f: &Signal<T>,
    grid: &LambdaGrid<T>,
    d: u32,
    big_j: u32,
    ring: usize,
    bumps: &BumpFamily<T>,
) -> Result<Signal<T>> {
    if grid.is_empty() {
        return invalid("empty lambda grid");
    }
    if big_j == 0 || big_j > 40 {
        return invalid("J must lie in 1..=40");
    }
    if f.is_empty() {
        return Ok(Signal::empty());
    }
    check_ring(f, ring, Some((1u64 << (big_j + 1)) - 1))?;
    let r = Ring::<T>::new(ring);
    let mut fh = to_ring(f, ring);
    r.forward(&mut fh);
    let maxes = grid
        .points()
        .par_iter()
        .map(|&lambda| {
            let k: KernelMultiplier<T> = kernel_m(lambda, d, big_j, bumps);
            let mut buf = k.wrapped(ring);
            r.forward(&mut buf);
            for (b, s) in buf.iter_mut().zip(&fh) {
                *b *= *s;
            }
            r.inverse(&mut buf);
            buf.iter().map(|v| v.norm()).collect::<Vec<T>>()
        })
        .reduce_with(|mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x = x.max(y);
            }
            a
        })
        .expect("nonempty grid");
    let buf: Vec<Complex<T>> = maxes.into_iter().map(|v| Complex::new(v, T::zero())).collect();
    Ok(from_ring(f, &buf))
}

/// Reference path: `max_lambda |sum_{0 < |m| <= M} f(x - m) e(-lambda m^d) / m|` by direct summation,
/// for `x` within `M` of the support of `f`.
pub fn carleson_direct_oracle<T: Real>(f: &Signal<T>, grid: &LambdaGrid<T>, d: u32, radius: u64) -> Result<Signal<T>> {
    if grid.is_empty() {
        return invalid("empty lambda grid");
    }
    if f.is_empty() {
        return Ok(Signal::empty());
    }
    let m_max = radius as i64;
    let lo = f.offset() - m_max;
    let hi = f.range().end + m_max;
    let mut out = vec![T::zero(); (hi - lo) as usize];
    for &lambda in grid.points() {
        let kern: Vec<Complex<T>> = (-m_max..=m_max)
            .map(|m| if m == 0 { Complex::new(T::zero(), T::zero()) } else { monomial_phase(lambda, T::zero(), m, d) / int::<T>(m as i128) })
            .collect();
        for (xi, slot) in out.iter_mut().enumerate() {
            let x = lo + xi as i64;
            let mut acc = Complex::new(T::zero(), T::zero());
            for n in f.range() {
                let m = x - n;
                if m != 0 && m.abs() <= m_max {
                    acc += f.get(n) * kern[(m + m_max) as usize];
                }
            }
            *slot = slot.max(acc.norm());
        }
    }
    Ok(Signal::new(lo, out.into_iter().map(|v| Complex::new(v, T::zero())).collect()))
}
