//! Scalar abstraction and phase helpers shared by every module.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating point type the numerical core is generic over (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + rustfft::FftNum + Debug + Display + Default + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` constant into `T`.
#[inline]
pub fn cst<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("finite constant")
}

/// Converts an integer into `T`.
#[inline]
pub fn int<T: Real>(n: i128) -> T {
    T::from_i128(n).expect("integer in range")
}

/// Converts `T` to `f64`.
#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `2^k` in `T`.
#[inline]
pub fn pow2<T: Real>(k: i32) -> T {
    cst::<T>(2.0).powi(k)
}

/// Representative of `t` modulo one in `[-1/2, 1/2]`.
#[inline]
pub fn centered_frac<T: Real>(t: T) -> T {
    t - t.round()
}

/// Distance from `t` to the nearest integer.
#[inline]
pub fn torus_dist<T: Real>(t: T) -> T {
    centered_frac(t).abs()
}

/// `e(t) = exp(2 pi i t)`, reducing `t` modulo one first.
#[inline]
pub fn e<T: Real>(t: T) -> Complex<T> {
    let r = centered_frac(t) * T::TAU();
    Complex::new(r.cos(), r.sin())
}

/// Fractional part of `lambda * m` (centered), accurate even when the product is large.
///
/// The rounding error of the product is recovered with a fused multiply-add, so
/// the result is correct to about one ulp of the fractional part as long as `m`
/// itself is exactly representable.
#[inline]
pub fn frac_product<T: Real>(lambda: T, m: T) -> T {
    let p = lambda * m;
    let err = lambda.mul_add(m, -p);
    (p - p.round()) + err
}

/// `m^d` as an exact integer.
#[inline]
pub fn ipow(m: i64, d: u32) -> i128 {
    (m as i128).pow(d)
}

/// `e(-lambda m^d - beta m)`, with both products reduced modulo one before exponentiating.
#[inline]
pub fn monomial_phase<T: Real>(lambda: T, beta: T, m: i64, d: u32) -> Complex<T> {
    let md = int::<T>(ipow(m, d));
    let mm = int::<T>(m as i128);
    e(-(frac_product(lambda, md) + frac_product(beta, mm)))
}
