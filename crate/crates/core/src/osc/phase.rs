use num_complex::Complex;

use super::{Oscillatory, QuadConfig};
use crate::error::{invalid, Result};
use crate::scalar::{cst, int, pow2, to_f64, Real};
use crate::stats::linear_fit;

/// A dyadic slab `2^{l-dk} <= lambda < 2^{l-dk+1}` together with its scale `k`.
///
/// After rescaling by `2^k` the phase of the slab's kernel is
/// `2^l phi^k(t, xi) = -(a t^d + b t)` with `a = lambda 2^{kd}` in `[2^l, 2^{l+1})`
/// and `b = xi 2^k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseContext<T: Real> {
    pub d: u32,
    pub k: i32,
    pub l: i32,
    pub lambda: T,
}

impl<T: Real> PhaseContext<T> {
    /// Validates the slab and the regime `k^C >= 2^l`.
    pub fn new(d: u32, k: i32, l: i32, lambda: T, regime_exponent: f64) -> Result<Self> {
        if d < 2 {
            return invalid("degree must be at least 2");
        }
        if k < 1 || l < 0 {
            return invalid("need k >= 1 and l >= 0");
        }
        let lo = pow2::<T>(l - d as i32 * k);
        if !(lambda >= lo && lambda < lo + lo) {
            return invalid(format!("lambda outside its slab [2^{}, 2^{})", l - d as i32 * k, l - d as i32 * k + 1));
        }
        if (k as f64).powf(regime_exponent) < 2f64.powi(l) {
            return invalid(format!("k^C < 2^l for k = {k}, l = {l}, C = {regime_exponent}"));
        }
        Ok(Self { d, k, l, lambda })
    }

    /// The smallest admissible `k` for a given `l` and regime exponent, with
    /// `lambda = theta 2^{l - dk}` for `theta` in `[1, 2)`.
    pub fn for_slab(d: u32, l: i32, theta: f64, regime_exponent: f64) -> Result<Self> {
        if !(1.0..2.0).contains(&theta) {
            return invalid("theta must lie in [1, 2)");
        }
        let k = (2f64.powf(l as f64 / regime_exponent)).ceil().max(1.0) as i32;
        let lambda = cst::<T>(theta) * pow2::<T>(l - d as i32 * k);
        Self::new(d, k, l, lambda, regime_exponent)
    }

    /// `a = lambda 2^{kd}`.
    pub fn a(&self) -> T {
        self.lambda * pow2::<T>(self.k * self.d as i32)
    }

    /// `b = xi 2^k`.
    pub fn b(&self, xi: T) -> T {
        xi * pow2::<T>(self.k)
    }

    /// `2^l phi^k(t, xi) = -(a t^d + b t)`.
    pub fn phase(&self, t: T, xi: T) -> T {
        -(self.a() * t.powi(self.d as i32) + self.b(xi) * t)
    }

    /// `2^{k-l} xi`, the argument of the `zeta` cutoff.
    pub fn zeta_arg(&self, xi: T) -> T {
        xi * pow2::<T>(self.k - self.l)
    }
}

/// `xi^{d/(d-1)}` with the sign convention of the slab phase: signed for even `d`,
/// absolute for odd `d`.
pub fn frac_power<T: Real>(xi: T, d: u32) -> T {
    let p = xi.abs().powf(cst(d as f64 / (d as f64 - 1.0)));
    if d % 2 == 0 {
        p * xi.signum()
    } else {
        p
    }
}

/// The phase constant as displayed alongside the stationary phase lemma,
/// `-((d+1)/d) d^{-1/(d-1)}`.
pub fn displayed_phase_constant(d: u32) -> f64 {
    let d = d as f64;
    -((d + 1.0) / d) * d.powf(-1.0 / (d - 1.0))
}

/// The constant `c` with `2^l phi^k(t(xi), xi) = c lambda^{-1/(d-1)} |xi|^{d/(d-1)}` at a
/// critical point (for odd `d`, at the positive root): `((d-1)/d) d^{-1/(d-1)}`.
pub fn critical_phase_constant(d: u32) -> f64 {
    let d = d as f64;
    ((d - 1.0) / d) * d.powf(-1.0 / (d - 1.0))
}

/// Real solutions of `d lambda 2^{k(d-1)} t^{d-1} = -xi`.
///
/// Even `d`: one root. Odd `d`: the pair `(+t, -t)` when `xi < 0`, none when `xi > 0`.
/// `xi = 0` is degenerate and rejected.
pub fn critical_point<T: Real>(xi: T, ctx: &PhaseContext<T>) -> Result<Vec<T>> {
    if xi == T::zero() {
        return invalid("xi = 0 makes the critical point degenerate");
    }
    let d = ctx.d;
    let rhs = -ctx.b(xi) / (int::<T>(d as i128) * ctx.a());
    let root = rhs.abs().powf(T::one() / int(d as i128 - 1));
    if d % 2 == 0 {
        Ok(vec![root * rhs.signum()])
    } else if rhs > T::zero() {
        Ok(vec![root, -root])
    } else {
        Ok(Vec::new())
    }
}

/// Result of [`Oscillatory::stationary_phase_split`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitSymbol<T: Real> {
    /// Contribution away from the critical points.
    pub a_hat: Complex<T>,
    /// Localised contribution around the (positive, for odd `d`) critical point.
    pub b_plus: Complex<T>,
    /// Second localised term, odd `d` only.
    pub b_minus: Option<Complex<T>>,
    /// Critical points used, in the order `b_plus`, `b_minus`.
    pub critical_points: [Option<T>; 2],
}

impl<T: Real> SplitSymbol<T> {
    pub fn total(&self) -> Complex<T> {
        self.a_hat + self.b_plus + self.b_minus.unwrap_or_default()
    }
}

fn binom(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

impl<T: Real> Oscillatory<T> {
    /// Breakpoints of `psi` inside `[lo, hi]` merged with `extra`, as separate
    /// increasing lists for each connected piece of `supp psi` they meet.
    fn segments(&self, extra: &[T], shift: T, lo: T, hi: T) -> Vec<Vec<T>> {
        let [h, o, t] = self.bumps.psi_breaks();
        let mut out = Vec::new();
        for piece in [[-t, -o, -h], [h, o, t]] {
            let a = (piece[0] - shift).max(lo);
            let b = (piece[2] - shift).min(hi);
            if !(a < b) {
                continue;
            }
            let mut pts: Vec<T> = vec![a, b];
            pts.extend(piece.iter().map(|&p| p - shift).chain(extra.iter().copied()).filter(|&p| p > a && p < b));
            pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
            pts.dedup();
            out.push(pts);
        }
        out
    }

    fn integrate(
        &self,
        phase: impl Fn(T) -> T,
        amp: impl Fn(T) -> T,
        extra: &[T],
        shift: T,
        lo: T,
        hi: T,
        cfg: &QuadConfig,
    ) -> Result<Complex<T>> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for seg in self.segments(extra, shift, lo, hi) {
            acc += super::oscillatory_quadrature(&phase, &amp, &seg, cfg)?;
        }
        Ok(acc)
    }

    /// `int e(-a t^d - b t) psi(t) dt`.
    pub fn psi_transform(&self, a: T, b: T, d: u32) -> Result<Complex<T>> {
        self.psi_transform_with(a, b, d, &self.quad)
    }

    pub fn psi_transform_with(&self, a: T, b: T, d: u32, cfg: &QuadConfig) -> Result<Complex<T>> {
        let big = cst::<T>(4.0);
        self.integrate(
            |t| -(a * t.powi(d as i32) + b * t),
            |t| self.bumps.psi(t),
            &[],
            T::zero(),
            -big,
            big,
            cfg,
        )
    }

    /// `H_j(x, y) = int e(-x t^d - y t) psi_j(t) dt`, computed in the rescaled variable.
    pub fn h_j(&self, x: T, y: T, j: i32, d: u32) -> Result<Complex<T>> {
        self.psi_transform(x * pow2::<T>(j * d as i32), y * pow2::<T>(j), d)
    }

    /// `mu = int e(-lambda 2^{kd} t^d) psi(t) dt`.
    pub fn mu(&self, ctx: &PhaseContext<T>) -> Result<Complex<T>> {
        self.psi_transform(ctx.a(), T::zero(), ctx.d)
    }

    /// `mu_bar = -2 pi i int e(-lambda 2^{kd} t^d) t psi(t) dt`.
    pub fn mu_bar(&self, ctx: &PhaseContext<T>) -> Result<Complex<T>> {
        self.mu_bar_at(ctx.a(), ctx.d)
    }

    /// `-2 pi i int e(-a t^d) t psi(t) dt` for any `a`, including `a = 0`.
    pub fn mu_bar_at(&self, a: T, d: u32) -> Result<Complex<T>> {
        let d = d as i32;
        let big = cst::<T>(4.0);
        let v = self.integrate(|t| -(a * t.powi(d)), |t| t * self.bumps.psi(t), &[], T::zero(), -big, big, &self.quad)?;
        Ok(v * Complex::new(T::zero(), -T::TAU()))
    }

    /// `G_hat(xi) = zeta(2^{k-l} xi) int e(2^l phi^k(t, xi)) psi(t) dt`.
    pub fn g_hat_direct(&self, xi: T, ctx: &PhaseContext<T>) -> Result<Complex<T>> {
        let z = self.bumps.zeta(ctx.zeta_arg(xi));
        if z == T::zero() {
            return Ok(Complex::new(T::zero(), T::zero()));
        }
        Ok(self.psi_transform(ctx.a(), ctx.b(xi), ctx.d)? * z)
    }

    /// Radius of the cutoff `Xi_0` isolating a critical point, `1/(4d)`.
    pub fn xi0_radius(d: u32) -> T {
        cst(1.0 / (4.0 * d as f64))
    }

    /// `Xi_0(s)`: one on `|s| <= r/2`, zero beyond `r`.
    pub fn xi0(&self, s: T, d: u32) -> T {
        let r = Self::xi0_radius(d);
        self.bumps.eta(s * cst(2.0) / r)
    }

    /// Splits `G_hat(xi)` into a part localised near each critical point and a remainder.
    ///
    /// Each local part is `zeta e(Phi(t_i)) int e(P_i(s)) psi(t_i + s) Xi_0(s) ds` where
    /// `P_i(s) = Phi(t_i + s) - Phi(t_i)` is expanded exactly around the critical point,
    /// and the remainder is `zeta int e(Phi(t)) psi(t) (1 - sum_i Xi_0(t - t_i)) dt`.
    /// Without a critical point everything is in `a_hat`.
    pub fn stationary_phase_split(&self, xi: T, ctx: &PhaseContext<T>) -> Result<SplitSymbol<T>> {
        let zero = Complex::new(T::zero(), T::zero());
        let d = ctx.d;
        let z = self.bumps.zeta(ctx.zeta_arg(xi));
        let roots = if xi == T::zero() { Vec::new() } else { critical_point(xi, ctx)? };
        let mut out = SplitSymbol { a_hat: zero, b_plus: zero, b_minus: None, critical_points: [None, None] };
        if d % 2 == 1 {
            out.b_minus = Some(zero);
        }
        if z == T::zero() {
            return Ok(out);
        }
        if roots.is_empty() {
            out.a_hat = self.g_hat_direct(xi, ctx)?;
            return Ok(out);
        }
        let a = ctx.a();
        let b = ctx.b(xi);
        let r = Self::xi0_radius(d);
        let half = r * cst(0.5);
        let big = cst::<T>(4.0);
        let phase = |t: T| -(a * t.powi(d as i32) + b * t);

        for (i, &t0) in roots.iter().enumerate() {
            out.critical_points[i] = Some(t0);
            // P(s) = -a sum_{m=2}^{d} C(d, m) t0^{d-m} s^m
            let coeffs: Vec<T> = (2..=d).map(|m| -a * cst::<T>(binom(d, m)) * t0.powi((d - m) as i32)).collect();
            let poly = |s: T| {
                let mut acc = T::zero();
                for &c in coeffs.iter().rev() {
                    acc = (acc + c) * s;
                }
                acc * s
            };
            let local = self.integrate(
                poly,
                |s| self.bumps.psi(t0 + s) * self.xi0(s, d),
                &[-half, half],
                t0,
                -r,
                r,
                &self.quad,
            )?;
            let val = local * crate::scalar::e(phase(t0)) * z;
            if i == 0 {
                out.b_plus = val;
            } else {
                out.b_minus = Some(val);
            }
        }
        let mut extra = Vec::new();
        for &t0 in &roots {
            extra.extend([t0 - r, t0 - half, t0 + half, t0 + r]);
        }
        let rem = self.integrate(
            phase,
            |t| {
                let cut: T = roots.iter().fold(T::zero(), |acc, &t0| acc + self.xi0(t - t0, d));
                self.bumps.psi(t) * (T::one() - cut)
            },
            &extra,
            T::zero(),
            -big,
            big,
            &self.quad,
        )?;
        out.a_hat = rem * z;
        Ok(out)
    }

    /// Largest `|G_hat(xi)|` over `samples` points `xi = +-2^{l-k} v`, `v` log-spaced over
    /// the support of `zeta`.
    pub fn g_hat_peak(&self, ctx: &PhaseContext<T>, samples: usize) -> Result<f64> {
        let mut best = 0f64;
        let n = samples.max(2);
        for i in 0..n {
            let v = (1.0f64 / 8.0) * 32f64.powf((i as f64 + 0.5) / n as f64);
            for sign in [-1.0, 1.0] {
                let xi = cst::<T>(sign * v) * pow2::<T>(ctx.l - ctx.k);
                best = best.max(to_f64(self.g_hat_direct(xi, ctx)?.norm()));
            }
        }
        Ok(best)
    }

    /// Fits `log2 max |G_hat|` against `l`; returns `(per-l peaks, slope)`.
    pub fn g_hat_peak_scan(
        &self,
        d: u32,
        ls: &[i32],
        theta: f64,
        regime_exponent: f64,
        samples: usize,
    ) -> Result<(Vec<(i32, f64)>, f64)> {
        let mut peaks = Vec::new();
        for &l in ls {
            let ctx = PhaseContext::<T>::for_slab(d, l, theta, regime_exponent)?;
            peaks.push((l, self.g_hat_peak(&ctx, samples)?));
        }
        let xs: Vec<f64> = peaks.iter().map(|p| p.0 as f64).collect();
        let ys: Vec<f64> = peaks.iter().map(|p| p.1.log2()).collect();
        let slope = linear_fit(&xs, &ys).map(|f| f.0).unwrap_or(f64::NAN);
        Ok((peaks, slope))
    }
}
