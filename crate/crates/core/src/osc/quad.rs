use num_complex::Complex;

use crate::error::{invalid, Error, Result};
use crate::scalar::{cst, e, to_f64, Real};

/// Tolerance and panel budget for [`oscillatory_quadrature`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    /// Absolute accuracy target.
    pub tol: f64,
    pub max_panels: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self { tol: 1e-10, max_panels: 1 << 18 }
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Gauss-Kronrod 7/15 on `[u, v]`; returns the Kronrod value and `|K15 - G7|`.
fn gk15<T: Real>(f: &impl Fn(T) -> Complex<T>, u: T, v: T) -> (Complex<T>, T) {
    let half = (v - u) * cst(0.5);
    let mid = u + half;
    let fc = f(mid);
    let mut k = fc * cst::<T>(WGK[7]);
    let mut g = fc * cst::<T>(WG[3]);
    for i in 0..7 {
        let dx = half * cst(XGK[i]);
        let s = f(mid - dx) + f(mid + dx);
        k += s * cst::<T>(WGK[i]);
        if i % 2 == 1 {
            g += s * cst::<T>(WG[i / 2]);
        }
    }
    ((k * half), ((k - g) * half).norm())
}

/// Total variation of `phase` on `[u, v]` measured on four equal steps.
fn phase_variation<T: Real>(phase: &impl Fn(T) -> T, u: T, v: T) -> T {
    let h = (v - u) / cst(4.0);
    let mut prev = phase(u);
    let mut var = T::zero();
    for i in 1..=4 {
        let x = if i == 4 { v } else { u + h * cst(i as f64) };
        let p = phase(x);
        var += (p - prev).abs();
        prev = p;
    }
    var
}

/// `int e(phase(t)) amplitude(t) dt` over `[breaks[0], breaks[last]]`.
///
/// `breaks` must be increasing; the amplitude may lose smoothness only there.
/// Panels are bisected until the phase moves by at most a quarter cycle across
/// each of them, and then until the Gauss-Kronrod error estimate is below the
/// panel's share of `tol`.
pub fn oscillatory_quadrature<T, P, A>(phase: P, amplitude: A, breaks: &[T], cfg: &QuadConfig) -> Result<Complex<T>>
where
    T: Real,
    P: Fn(T) -> T,
    A: Fn(T) -> T,
{
    if breaks.len() < 2 {
        return invalid("need at least two breakpoints");
    }
    if breaks.windows(2).any(|w| !(w[0] < w[1])) || breaks.iter().any(|b| !b.is_finite()) {
        return invalid("breakpoints must be finite and strictly increasing");
    }
    let total = breaks[breaks.len() - 1] - breaks[0];
    let tol = cst::<T>(cfg.tol);
    let quarter = cst::<T>(0.25);
    let f = |t: T| e(phase(t)) * amplitude(t);
    let mut acc = Complex::new(T::zero(), T::zero());
    let mut err_acc = T::zero();
    let mut panels = 0usize;
    // (u, v, resolved) work stack; deterministic LIFO order.
    let mut stack: Vec<(T, T, bool)> = Vec::new();
    for w in breaks.windows(2).rev() {
        stack.push((w[0], w[1], false));
    }
    while let Some((u, v, resolved)) = stack.pop() {
        if panels >= cfg.max_panels {
            return Err(Error::QuadratureBudget { panels: cfg.max_panels, estimate: to_f64(err_acc) });
        }
        let width = v - u;
        let tiny = width <= total * cst(1e-12);
        if !resolved && !tiny && phase_variation(&phase, u, v) > quarter {
            let m = u + width * cst(0.5);
            stack.push((m, v, false));
            stack.push((u, m, false));
            continue;
        }
        let (val, err) = gk15(&f, u, v);
        panels += 1;
        if err <= tol * width / total || tiny {
            acc += val;
            err_acc += err;
        } else {
            let m = u + width * cst(0.5);
            stack.push((m, v, true));
            stack.push((u, m, true));
        }
    }
    Ok(acc)
}
