use num_complex::Complex;

use super::multiplier::{apply_multiplier, kernel_m};
use super::Signal;
use crate::error::{invalid, Result};
use crate::osc::BumpFamily;
use crate::scalar::{cst, pow2, Real};

/// `r`-variation `sup (sum_i |a_{n_{i+1}} - a_{n_i}|^r)^{1/r}` over increasing index
/// subsequences; `r = infinity` gives the diameter `max |a_i - a_j|`.
///
/// Dynamic programming over the last index: `best[i] = max_{j < i} best[j] + |a_i - a_j|^r`,
/// `O(n^2)`.
pub fn r_variation<T: Real>(seq: &[Complex<T>], r: T) -> Result<T> {
    if !(r >= T::one()) {
        return invalid("r must be at least 1");
    }
    if seq.is_empty() {
        return invalid("empty sequence");
    }
    if r.is_infinite() {
        let mut best = T::zero();
        for i in 0..seq.len() {
            for j in 0..i {
                best = best.max((seq[i] - seq[j]).norm());
            }
        }
        return Ok(best);
    }
    let mut best = vec![T::zero(); seq.len()];
    for i in 1..seq.len() {
        for j in 0..i {
            let v = best[j] + (seq[i] - seq[j]).norm().powf(r);
            if v > best[i] {
                best[i] = v;
            }
        }
    }
    let top = best.iter().fold(T::zero(), |a, &b| a.max(b));
    Ok(top.powf(r.recip()))
}

/// A half-open interval `(lo, hi]` of modulation parameters with anchor `hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaInterval<T: Real> {
    pub lo: T,
    pub hi: T,
}

/// `(2^{-d j_{i+1}}, 2^{-d j_i}]` for consecutive entries of an increasing schedule.
pub fn dyadic_intervals<T: Real>(schedule: &[u32], d: u32) -> Result<Vec<LambdaInterval<T>>> {
    if schedule.windows(2).any(|w| w[0] >= w[1]) {
        return invalid("schedule must be strictly increasing");
    }
    if schedule.last().is_some_and(|&j| (j * d) as i32 > 1000) {
        return invalid("schedule too deep: 2^{-dj} underflows");
    }
    let p = |j: u32| pow2::<T>(-((j * d) as i32));
    Ok(schedule.windows(2).map(|w| LambdaInterval { lo: p(w[1]), hi: p(w[0]) }).collect())
}

/// `grid` geometrically spaced points in `(lo, hi]`, ending at the anchor `hi`.
pub fn interval_grid<T: Real>(iv: &LambdaInterval<T>, grid: usize) -> Vec<T> {
    let ratio = iv.hi / iv.lo;
    (1..=grid).map(|k| if k == grid { iv.hi } else { iv.lo * ratio.powf(cst(k as f64 / grid as f64)) }).collect()
}

/// Checks that intervals are nonempty and move monotonically toward zero.
pub fn check_intervals<T: Real>(intervals: &[LambdaInterval<T>]) -> Result<()> {
    if intervals.iter().any(|iv| !(iv.lo > T::zero() && iv.lo < iv.hi)) {
        return invalid("each interval needs 0 < lo < hi");
    }
    if intervals.windows(2).any(|w| w[1].hi > w[0].lo) {
        return invalid("intervals must be ordered toward zero without overlap");
    }
    Ok(())
}

/// `sum_i || sup_{lambda in grid_i} |C_lambda f - C_{lambda_i} f| ||^2` for an arbitrary
/// evaluator `C_lambda f` returning values on a common index set.
pub fn oscillation_sum_with<T: Real>(
    intervals: &[LambdaInterval<T>],
    grid_per_interval: usize,
    mut eval: impl FnMut(T) -> Result<Vec<Complex<T>>>,
) -> Result<T> {
    check_intervals(intervals)?;
    if grid_per_interval == 0 {
        return invalid("grid_per_interval must be at least 1");
    }
    let mut total = T::zero();
    for iv in intervals {
        let anchor = eval(iv.hi)?;
        let mut sup = vec![T::zero(); anchor.len()];
        for lambda in interval_grid(iv, grid_per_interval) {
            if lambda == iv.hi {
                continue;
            }
            let v = eval(lambda)?;
            for (s, (a, b)) in sup.iter_mut().zip(v.iter().zip(&anchor)) {
                *s = s.max((a - b).norm());
            }
        }
        total += sup.iter().fold(T::zero(), |acc, s| acc + *s * *s);
    }
    Ok(total)
}

/// [`oscillation_sum_with`] for `C_lambda f = (M(lambda, .) f_hat)^vee` on the integers,
/// evaluated on a ring of size `ring`.
pub fn oscillation_sum<T: Real>(
    f: &Signal<T>,
    intervals: &[LambdaInterval<T>],
    grid_per_interval: usize,
    d: u32,
    big_j: u32,
    ring: usize,
    bumps: &BumpFamily<T>,
) -> Result<T> {
    oscillation_sum_with(intervals, grid_per_interval, |lambda| {
        Ok(apply_multiplier(f, &kernel_m(lambda, d, big_j, bumps), ring)?.values().to_vec())
    })
}
