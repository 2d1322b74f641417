use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::scalar::{int, Real};

/// `F(t) = sum_n f(n) e(-t n / N)`.
pub fn dft<T: Real>(values: &[Complex<T>]) -> Vec<Complex<T>> {
    let mut buf = values.to_vec();
    if !buf.is_empty() {
        FftPlanner::new().plan_fft_forward(buf.len()).process(&mut buf);
    }
    buf
}

/// Inverse of [`dft`], including the `1/N` factor.
pub fn idft<T: Real>(values: &[Complex<T>]) -> Vec<Complex<T>> {
    let mut buf = values.to_vec();
    if !buf.is_empty() {
        FftPlanner::new().plan_fft_inverse(buf.len()).process(&mut buf);
        let inv = T::one() / int::<T>(buf.len() as i128);
        buf.iter_mut().for_each(|v| *v = *v * inv);
    }
    buf
}

/// Forward and inverse plans for a fixed ring size.
#[derive(Clone)]
pub(crate) struct Ring<T: Real> {
    pub n: usize,
    fwd: Arc<dyn Fft<T>>,
    inv: Arc<dyn Fft<T>>,
}

impl<T: Real> Ring<T> {
    pub fn new(n: usize) -> Self {
        let mut p = FftPlanner::new();
        Self { n, fwd: p.plan_fft_forward(n), inv: p.plan_fft_inverse(n) }
    }

    pub fn forward(&self, buf: &mut [Complex<T>]) {
        self.fwd.process(buf);
    }

    pub fn inverse(&self, buf: &mut [Complex<T>]) {
        self.inv.process(buf);
        let inv = T::one() / int::<T>(self.n as i128);
        buf.iter_mut().for_each(|v| *v = *v * inv);
    }
}
