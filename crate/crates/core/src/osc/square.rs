use num_complex::Complex;

use super::Oscillatory;
use crate::error::{invalid, Result};
use crate::scalar::{cst, int, pow2, Real};
use crate::spectral::{apply_multiplier, Multiplier, Signal};

/// Discretisation of the square functions over the slabs `2^{l-dk} <= lambda < 2^{l-dk+1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquareFunctionSpec {
    pub l: i32,
    pub k_min: i32,
    pub k_max: i32,
    /// Number of lambda samples per slab; one sample uses the rectangle rule, more use trapezoids.
    pub grid_per_slab: usize,
    pub d: u32,
    pub ring: usize,
}

impl SquareFunctionSpec {
    fn validate(&self) -> Result<()> {
        if self.d < 2 || self.l < 0 || self.grid_per_slab == 0 {
            return invalid("need d >= 2, l >= 0 and a nonempty lambda grid");
        }
        if self.k_min > self.k_max {
            return invalid("empty k range");
        }
        // zeta(2^{k-l} beta) lives in |beta| <= 4 * 2^{l-k}, which must fit below 1/2.
        if self.k_min < self.l + 3 {
            return invalid("need k >= l + 3 so the symbol fits inside one period");
        }
        Ok(())
    }

    /// `(lambda_i, weight_i)` over the slab of scale `k`.
    fn slab_rule<T: Real>(&self, k: i32) -> Vec<(T, T)> {
        let lo = pow2::<T>(self.l - self.d as i32 * k);
        let n = self.grid_per_slab;
        if n == 1 {
            return vec![(lo, lo)];
        }
        let h = lo / cst((n - 1) as f64);
        (0..n)
            .map(|i| {
                let w = if i == 0 || i == n - 1 { h * cst(0.5) } else { h };
                (lo + h * cst(i as f64), w)
            })
            .collect()
    }
}

struct Sampled<T: Real>(Vec<Complex<T>>);

impl<T: Real> Multiplier<T> for Sampled<T> {
    fn symbol(&self, ring: usize) -> Result<Vec<Complex<T>>> {
        if ring != self.0.len() {
            return invalid("sampled symbol used on a ring of a different size");
        }
        Ok(self.0.clone())
    }
}

impl<T: Real> Oscillatory<T> {
    /// Symbol of `G_lambda` at scale `k`: `zeta(2^{k-l} beta) int e(-lambda 2^{kd} t^d - beta 2^k t) psi(t) dt`,
    /// sampled on the ring frequencies (centred in `[-1/2, 1/2)`).
    pub fn g_symbol_on_ring(&self, lambda: T, k: i32, l: i32, d: u32, ring: usize) -> Result<Vec<Complex<T>>> {
        let a = lambda * pow2::<T>(k * d as i32);
        let mut out = vec![Complex::new(T::zero(), T::zero()); ring];
        let n = ring as i64;
        for (t, slot) in out.iter_mut().enumerate() {
            let tc = if (t as i64) * 2 >= n { t as i64 - n } else { t as i64 };
            let beta = int::<T>(tc as i128) / int(n as i128);
            let z = self.bumps.zeta(beta * pow2::<T>(k - l));
            if z == T::zero() {
                continue;
            }
            *slot = self.psi_transform(a, beta * pow2::<T>(k), d)? * z;
        }
        Ok(out)
    }

    fn square_function_generic(
        &self,
        f: &Signal<T>,
        spec: &SquareFunctionSpec,
        derivative: bool,
    ) -> Result<Signal<T>> {
        spec.validate()?;
        if f.is_empty() {
            return Ok(Signal::empty());
        }
        let mut acc: Option<Vec<T>> = None;
        let mut template: Option<Signal<T>> = None;
        for k in spec.k_min..=spec.k_max {
            let dk = pow2::<T>(spec.d as i32 * k);
            let weight_k = if derivative { dk.recip() } else { dk };
            for (lambda, w) in spec.slab_rule::<T>(k) {
                let sym = if derivative {
                    let h = pow2::<T>(spec.l - spec.d as i32 * k) * cst(1e-4);
                    let p = self.g_symbol_on_ring(lambda + h, k, spec.l, spec.d, spec.ring)?;
                    let m = self.g_symbol_on_ring(lambda - h, k, spec.l, spec.d, spec.ring)?;
                    p.iter().zip(&m).map(|(a, b)| (a - b) / (h + h)).collect()
                } else {
                    self.g_symbol_on_ring(lambda, k, spec.l, spec.d, spec.ring)?
                };
                let g = apply_multiplier(f, &Sampled(sym), spec.ring)?;
                let a = acc.get_or_insert_with(|| vec![T::zero(); g.len()]);
                for (s, v) in a.iter_mut().zip(g.values()) {
                    *s += weight_k * w * v.norm_sqr();
                }
                template.get_or_insert(g);
            }
        }
        let t = template.expect("at least one slab");
        let vals = acc.unwrap().into_iter().map(|v| Complex::new(v.sqrt(), T::zero())).collect();
        Ok(Signal::new(t.offset(), vals))
    }

    /// `S_G f(x) = (sum_k 2^{dk} int_{slab k} |G_lambda * f(x)|^2 dlambda)^{1/2}`.
    pub fn square_function_s_g(&self, f: &Signal<T>, spec: &SquareFunctionSpec) -> Result<Signal<T>> {
        self.square_function_generic(f, spec, false)
    }

    /// The companion with `d/dlambda G_lambda` (centred differences) and weight `2^{-dk}`.
    pub fn square_function_s_gprime(&self, f: &Signal<T>, spec: &SquareFunctionSpec) -> Result<Signal<T>> {
        self.square_function_generic(f, spec, true)
    }
}

/// Free-function form of [`Oscillatory::square_function_s_g`].
pub fn square_function_s_g<T: Real>(osc: &Oscillatory<T>, f: &Signal<T>, spec: &SquareFunctionSpec) -> Result<Signal<T>> {
    osc.square_function_s_g(f, spec)
}

/// Free-function form of [`Oscillatory::square_function_s_gprime`].
pub fn square_function_s_gprime<T: Real>(
    osc: &Oscillatory<T>,
    f: &Signal<T>,
    spec: &SquareFunctionSpec,
) -> Result<Signal<T>> {
    osc.square_function_s_gprime(f, spec)
}
