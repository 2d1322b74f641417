use crate::error::{invalid, Result};
use crate::scalar::{cst, pow2, Real};

/// Smooth cutoffs built from a polynomial smoothstep.
///
/// `eta` is even, equal to one on `[-1, 1]` and zero outside `[-2, 2]`; in between
/// it is `1 - S(|x| - 1)` where `S` is the smoothstep of the configured order,
/// which makes `eta` of class `C^order`. Everything else is derived from it:
/// the annulus `w(x) = eta(x) - eta(2x)`, the odd kernel `psi(t) = w(t)/t`,
/// `Theta = w`, `chi(xi) = eta(xi / c)` and `zeta(xi) = eta(xi/2) - eta(4 xi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BumpFamily<T: Real> {
    order: u32,
    /// Coefficients of `x^{order+1+k}` in the smoothstep, `k = 0..=order`.
    coeffs: Vec<T>,
}

fn binom(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

impl<T: Real> BumpFamily<T> {
    pub fn new(order: u32) -> Result<Self> {
        if !(2..=12).contains(&order) {
            return invalid("smoothness order must lie in 2..=12");
        }
        let n = order as u64;
        let coeffs = (0..=n)
            .map(|k| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                cst(sign * binom(n + k, k) * binom(2 * n + 1, n - k))
            })
            .collect();
        Ok(Self { order, coeffs })
    }

    pub fn smoothness_order(&self) -> u32 {
        self.order
    }

    /// The smoothstep on `[0, 1]`, clamped outside.
    pub fn smoothstep(&self, x: T) -> T {
        if x <= T::zero() {
            return T::zero();
        }
        if x >= T::one() {
            return T::one();
        }
        let mut acc = T::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc * x.powi(self.order as i32 + 1)
    }

    pub fn eta(&self, x: T) -> T {
        let a = x.abs();
        let one = T::one();
        if a <= one {
            one
        } else if a >= cst(2.0) {
            T::zero()
        } else {
            // Symmetric form keeps full relative accuracy near both ends.
            let s = a - one;
            if s <= cst(0.5) {
                one - self.smoothstep(s)
            } else {
                self.smoothstep(one - s)
            }
        }
    }

    /// `w(x) = eta(x) - eta(2x)`, supported in `1/2 <= |x| <= 2`.
    pub fn annulus(&self, x: T) -> T {
        self.eta(x) - self.eta(x + x)
    }

    /// The odd kernel `psi(t) = w(t)/t`.
    pub fn psi(&self, t: T) -> T {
        if t == T::zero() {
            return T::zero();
        }
        self.annulus(t) / t
    }

    /// Points in `t > 0` where `psi` changes its polynomial piece.
    pub fn psi_breaks(&self) -> [T; 3] {
        [cst(0.5), T::one(), cst(2.0)]
    }

    /// `Theta(xi) = w(xi)`; the dilates `Theta(2^j xi)` sum to one for `xi != 0`.
    pub fn theta(&self, xi: T) -> T {
        self.annulus(xi)
    }

    /// One on the support of `Theta`.
    pub fn theta_bar(&self, xi: T) -> T {
        self.eta(xi / cst(2.0)) - self.eta(xi * cst(4.0))
    }

    /// `chi(xi) = eta(xi / c)`: one on `|xi| <= c`, zero beyond `2c`.
    pub fn chi(&self, xi: T, c: T) -> T {
        self.eta(xi / c)
    }

    /// One on the support of `chi`.
    pub fn chi_bar(&self, xi: T, c: T) -> T {
        self.eta(xi / (c + c))
    }

    /// Default `chi` constant `1/(8d)`.
    pub fn default_chi_constant(d: u32) -> T {
        cst(1.0 / (8.0 * d as f64))
    }

    /// Fat annulus: supported in `1/8 <= |xi| <= 4`, one on `1/4 <= |xi| <= 2`.
    pub fn zeta(&self, xi: T) -> T {
        self.eta(xi / cst(2.0)) - self.eta(xi * cst(4.0))
    }

    /// One on the support of `zeta`.
    pub fn zeta_bar(&self, xi: T) -> T {
        self.eta(xi / cst(8.0)) - self.eta(xi * cst(16.0))
    }

    /// `psi_j(t) = 2^{-j} psi(2^{-j} t)`, supported in `2^{j-1} <= |t| <= 2^{j+1}`.
    pub fn psi_j(&self, t: T, j: i32) -> T {
        let s = pow2::<T>(-j);
        s * self.psi(s * t)
    }
}

impl Default for BumpFamily<f64> {
    fn default() -> Self {
        Self::new(4).expect("order 4 is valid")
    }
}

impl Default for BumpFamily<f32> {
    fn default() -> Self {
        Self::new(4).expect("order 4 is valid")
    }
}
