use num_complex::Complex;

use crate::error::{invalid, Result};
use crate::farey::{gcd, ReducedFraction};
use crate::osc::BumpFamily;
use crate::scalar::{e, frac_product, int, ipow, pow2, Real};
use crate::weyl::weyl_sum_raw;

/// Linearisation data for the single-scale kernel `K_j`.
pub struct TTStarContext<T: Real> {
    pub j: u32,
    pub d: u32,
    pub lambda: Box<dyn Fn(i64) -> T + Send + Sync>,
    pub mu: Box<dyn Fn(i64) -> T + Send + Sync>,
}

impl<T: Real> TTStarContext<T> {
    pub fn new(
        j: u32,
        d: u32,
        lambda: impl Fn(i64) -> T + Send + Sync + 'static,
        mu: impl Fn(i64) -> T + Send + Sync + 'static,
    ) -> Result<Self> {
        if j == 0 || j > 30 || d < 2 {
            return invalid("need 1 <= j <= 30 and d >= 2");
        }
        Ok(Self { j, d, lambda: Box::new(lambda), mu: Box::new(mu) })
    }
}

/// `K_j(x, n) = sum_m psi_j(x - m) psi_j(n - m) e(lambda(x)(x - m)^d - mu(n)(n - m)^d)`.
pub fn ttstar_kernel_kj<T: Real>(x: i64, n: i64, ctx: &TTStarContext<T>, bumps: &BumpFamily<T>) -> Result<Complex<T>> {
    let lx = (ctx.lambda)(x);
    let mn = (ctx.mu)(n);
    if !(lx >= T::zero() && lx <= T::one() && mn >= T::zero() && mn <= T::one()) {
        return invalid("linearizer values must lie in [0, 1]");
    }
    let reach = 1i64 << (ctx.j + 1);
    let lo = (x - reach).max(n - reach);
    let hi = (x + reach).min(n + reach);
    let j = ctx.j as i32;
    let mut acc = Complex::new(T::zero(), T::zero());
    for m in lo..=hi {
        let w = bumps.psi_j(int((x - m) as i128), j) * bumps.psi_j(int((n - m) as i128), j);
        if w == T::zero() {
            continue;
        }
        let ph = frac_product(lx, int(ipow(x - m, ctx.d))) - frac_product(mn, int(ipow(n - m, ctx.d)));
        acc += e(ph) * w;
    }
    Ok(acc)
}

/// How the arithmetic kernel `K_s` counts frequencies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KsCounting {
    /// Every pair `1 <= b <= r <= 2^s`, so a frequency with several representations
    /// `b/r` is counted once per representation.
    Literal,
    /// Each frequency `theta` in `Z/QZ` once.
    Distinct,
}

/// Linearisation data for the arithmetic kernel `K_s`: reduced fractions `a(x)/q(x)`
/// and `a'(u)/q'(u)` with denominators in `[2^{s-1}, 2^s)`.
pub struct WeylLinearizers {
    pub s: u32,
    pub d: u32,
    pub a: Box<dyn Fn(i64) -> ReducedFraction + Send + Sync>,
    pub a_prime: Box<dyn Fn(i64) -> ReducedFraction + Send + Sync>,
}

impl WeylLinearizers {
    pub fn new(
        s: u32,
        d: u32,
        a: impl Fn(i64) -> ReducedFraction + Send + Sync + 'static,
        a_prime: impl Fn(i64) -> ReducedFraction + Send + Sync + 'static,
    ) -> Result<Self> {
        if s == 0 || s > 8 || d < 2 {
            return invalid("need 1 <= s <= 8 and d >= 2");
        }
        Ok(Self { s, d, a: Box::new(a), a_prime: Box::new(a_prime) })
    }

    fn check(&self, f: ReducedFraction) -> Result<()> {
        let q = f.den();
        if q < 1 << (self.s - 1) || q >= 1 << self.s {
            return invalid(format!("denominator of {f} outside [2^{}, 2^{})", self.s - 1, self.s));
        }
        Ok(())
    }
}

/// Smallest ring on which `phi_s` is resolved by at least eight frequencies per side.
pub fn ks_minimum_ring(s: u32) -> u64 {
    1u64 << (5 * s + 3)
}

/// `phi_s * phi_s(n)` where `phi_hat_s(beta) = eta(2^{5s+1} beta)` is sampled on a ring of size `ring`.
pub fn phi_s_autocorrelation<T: Real>(n: i64, s: u32, ring: u64, bumps: &BumpFamily<T>) -> Result<T> {
    if ring < ks_minimum_ring(s) {
        return invalid(format!("ring {ring} too small for s = {s}, need {}", ks_minimum_ring(s)));
    }
    let tmax = (ring >> (5 * s)) as i64;
    let scale = pow2::<T>(5 * s as i32 + 1);
    let nn = int::<T>(ring as i128);
    let nm = n.rem_euclid(ring as i64) as i128;
    let mut acc = T::zero();
    for t in -tmax..=tmax {
        let beta = int::<T>(t as i128) / nn;
        let h = bumps.eta(beta * scale);
        if h == T::zero() {
            continue;
        }
        // e(t n / N) with t n reduced exactly modulo N
        let k = ((t as i128 * nm).rem_euclid(ring as i128)) as i128;
        acc += h * h * e(int::<T>(k) / nn).re;
    }
    Ok(acc / nn)
}

/// Number of `r` with `den(theta) | r | q`.
fn representations(theta_den: u64, q: u64) -> u64 {
    (1..=q).filter(|r| q % r == 0 && r % theta_den == 0).count() as u64
}

/// The arithmetic TT* kernel
/// `K_s(x, u) = sum_{b/r, b'/r'} R(a(x)/q(x), b/r) e(b x / r) I(x, u, b/r, b'/r') e(-b' u / r') conj(R(a'(u)/q'(u), b'/r'))`.
///
/// `R(a/q, b/r)` vanishes unless `r | q`, and `I` vanishes unless `b/r = b'/r'`, in which
/// case it equals `phi_s * phi_s(x - u)`; the evaluation keeps only those terms, so it
/// runs over `theta` in `Z/QZ` with `Q = gcd(q, q')`.
pub fn ttstar_kernel_ks<T: Real>(
    x: i64,
    u: i64,
    ctx: &WeylLinearizers,
    ring: u64,
    counting: KsCounting,
    bumps: &BumpFamily<T>,
) -> Result<Complex<T>> {
    let (fa, fb) = ((ctx.a)(x), (ctx.a_prime)(u));
    ctx.check(fa)?;
    ctx.check(fb)?;
    let phi = phi_s_autocorrelation(x - u, ctx.s, ring, bumps)?;
    let (q, qp) = (fa.den(), fb.den());
    let big_q = gcd(q, qp);
    let mut acc = Complex::new(T::zero(), T::zero());
    let diff = (x - u).rem_euclid(big_q as i64) as u64;
    for c in 0..big_q {
        let r1 = weyl_sum_raw::<T>(fa.num(), c * (q / big_q), q, ctx.d);
        let r2 = weyl_sum_raw::<T>(fb.num(), c * (qp / big_q), qp, ctx.d);
        let mut term = r1 * r2.conj() * e(int::<T>(((c * diff) % big_q) as i128) / int(big_q as i128));
        if counting == KsCounting::Literal {
            let den = big_q / gcd(c, big_q);
            let mult = representations(den, q) * representations(den, qp);
            term = term * int::<T>(mult as i128);
        }
        acc += term;
    }
    Ok(acc * phi)
}
