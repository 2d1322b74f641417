//! Complete and incomplete Weyl sums.

use num_complex::Complex;
use rand::Rng;

use crate::error::{invalid, Result};
use crate::farey::{gcd, gcd3};
use crate::scalar::{cst, e, frac_product, int, ipow, to_f64, Real};
use crate::stats::linear_fit;

/// `(a, b, q)` with `0 <= a, b < q`, `gcd(a, b, q) = 1`, for the degree-`d` sum
/// `S(a/q, b/q) = (1/q) sum_{r=1}^{q} e(-(a r^d + b r)/q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeylTriple {
    pub a: u64,
    pub b: u64,
    pub q: u64,
    pub d: u32,
}

impl WeylTriple {
    pub fn new(a: u64, b: u64, q: u64, d: u32) -> Result<Self> {
        if q == 0 || a >= q || b >= q {
            return invalid(format!("({a}, {b}, {q}) is not reduced modulo q"));
        }
        if d < 2 {
            return invalid("degree must be at least 2");
        }
        if gcd3(a, b, q) != 1 {
            return invalid(format!("gcd({a}, {b}, {q}) != 1"));
        }
        Ok(Self { a, b, q, d })
    }
}

fn mulmod(x: u64, y: u64, q: u64) -> u64 {
    ((x as u128 * y as u128) % q as u128) as u64
}

fn powmod(r: u64, d: u32, q: u64) -> u64 {
    let mut acc = 1 % q;
    for _ in 0..d {
        acc = mulmod(acc, r, q);
    }
    acc
}

/// `e(-k/q)`.
#[inline]
fn root<T: Real>(k: u64, q: u64) -> Complex<T> {
    e(-int::<T>(k as i128) / int(q as i128))
}

/// Table of `e(-k/q)` for `k = 0..q`.
fn root_table<T: Real>(q: u64) -> Vec<Complex<T>> {
    (0..q).map(|k| root(k, q)).collect()
}

/// `S(a/q, b/q)` for any `a, b` (no coprimality requirement).
pub fn weyl_sum_raw<T: Real>(a: u64, b: u64, q: u64, d: u32) -> Complex<T> {
    assert!(q > 0, "q must be positive");
    let (a, b) = (a % q, b % q);
    let mut acc = Complex::new(T::zero(), T::zero());
    for r in 1..=q {
        let k = (mulmod(a, powmod(r % q, d, q), q) + mulmod(b, r % q, q)) % q;
        acc += root::<T>(k, q);
    }
    acc / int::<T>(q as i128)
}

/// The complete Weyl sum of a validated triple.
pub fn complete_weyl_sum<T: Real>(t: &WeylTriple) -> Complex<T> {
    weyl_sum_raw(t.a, t.b, t.q, t.d)
}

/// Evaluates many sums with a common `q` from a shared table of roots of unity.
struct FixedModulus<T> {
    q: u64,
    rd: Vec<u64>,
    roots: Vec<Complex<T>>,
}

impl<T: Real> FixedModulus<T> {
    fn new(q: u64, d: u32) -> Self {
        let rd = (1..=q).map(|r| powmod(r % q, d, q)).collect();
        Self { q, rd, roots: root_table(q) }
    }

    /// `|S(a/q, b/q)|` for all `b` in `0..q`, written into `out`.
    fn abs_over_b(&self, a: u64, out: &mut Vec<T>) {
        let q = self.q;
        out.clear();
        let mut cur: Vec<u64> = self.rd.iter().map(|&x| mulmod(a, x, q)).collect();
        let inv_q = T::one() / int::<T>(q as i128);
        for _b in 0..q {
            let mut acc = Complex::new(T::zero(), T::zero());
            for &k in &cur {
                acc += self.roots[k as usize];
            }
            out.push(acc.norm() * inv_q);
            for (i, c) in cur.iter_mut().enumerate() {
                *c += (i as u64 + 1) % q;
                if *c >= q {
                    *c -= q;
                }
            }
        }
    }
}

/// Result of scanning `S(a/q, b/q)` over triples with `gcd(a, q) > 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalityReport {
    pub q_max: u64,
    pub d: u32,
    pub triples: usize,
    pub max_abs: f64,
    pub argmax: Option<WeylTriple>,
}

/// Scans every triple with `q <= q_max`, `gcd(a, b, q) = 1` and `gcd(a, q) > 1`.
/// Each such sum vanishes exactly; the report holds the largest computed magnitude.
pub fn weyl_orthogonality_scan<T: Real>(q_max: u64, d: u32) -> Result<OrthogonalityReport> {
    if d < 2 {
        return invalid("degree must be at least 2");
    }
    let mut rep = OrthogonalityReport { q_max, d, triples: 0, max_abs: 0.0, argmax: None };
    let mut buf = Vec::new();
    for q in 2..=q_max {
        let fm = FixedModulus::<T>::new(q, d);
        for a in 0..q {
            if gcd(a, q) == 1 {
                continue;
            }
            fm.abs_over_b(a, &mut buf);
            for (b, v) in buf.iter().enumerate() {
                if gcd3(a, b as u64, q) != 1 {
                    continue;
                }
                rep.triples += 1;
                let v = to_f64(*v);
                if v > rep.max_abs || rep.argmax.is_none() {
                    rep.max_abs = v.max(rep.max_abs);
                    rep.argmax = Some(WeylTriple { a, b: b as u64, q, d });
                }
            }
        }
    }
    Ok(rep)
}

/// Both sides of `sum_{b=1}^{q} S(a/q, b/q) e(b x/q) = e(-a r^d / q)` where `r = x mod q`.
pub fn weyl_kernel_identity<T: Real>(q: u64, a: u64, d: u32, x: i64) -> Result<(Complex<T>, Complex<T>)> {
    if q == 0 || a >= q || gcd(a, q) != 1 {
        return invalid("need 0 <= a < q with gcd(a, q) = 1");
    }
    let qq = int::<T>(q as i128);
    let mut lhs = Complex::new(T::zero(), T::zero());
    for b in 1..=q {
        let s = weyl_sum_raw::<T>(a, b, q, d);
        let bx = mulmod(b % q, x.rem_euclid(q as i64) as u64, q);
        lhs += s * e(int::<T>(bx as i128) / qq);
    }
    let r = x.rem_euclid(q as i64) as u64;
    let k = mulmod(a, powmod(r, d, q), q);
    Ok((lhs, root(k, q)))
}

/// Least-squares fit of `log max_{a,b} |S(a/q, b/q)|` against `log q`.
#[derive(Debug, Clone, PartialEq)]
pub struct HuaFit {
    pub d: u32,
    /// `(q, max |S|)` for each `q` in the range.
    pub maxima: Vec<(u64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    /// `max_q max |S| q^{1/d}`.
    pub max_constant: f64,
}

/// Fits the decay exponent of `max |S(a/q, b/q)|` over `q` in `q_lo..=q_hi`.
///
/// Only `gcd(a, q) = 1` contributes: the remaining triples vanish identically.
pub fn hua_exponent_fit<T: Real>(q_lo: u64, q_hi: u64, d: u32) -> Result<HuaFit> {
    if q_lo < 2 || q_hi < q_lo + 1 {
        return invalid("need 2 <= q_lo < q_hi");
    }
    if d < 2 {
        return invalid("degree must be at least 2");
    }
    let mut maxima = Vec::new();
    let mut buf = Vec::new();
    for q in q_lo..=q_hi {
        let fm = FixedModulus::<T>::new(q, d);
        let mut best = T::zero();
        for a in 1..q {
            if gcd(a, q) != 1 {
                continue;
            }
            fm.abs_over_b(a, &mut buf);
            for &v in &buf {
                if v > best {
                    best = v;
                }
            }
        }
        maxima.push((q, to_f64(best)));
    }
    let xs: Vec<f64> = maxima.iter().map(|&(q, _)| (q as f64).ln()).collect();
    let ys: Vec<f64> = maxima.iter().map(|&(_, m)| m.ln()).collect();
    let (slope, intercept) = linear_fit(&xs, &ys).expect("at least two q values");
    let max_constant = maxima.iter().map(|&(q, m)| m * (q as f64).powf(1.0 / d as f64)).fold(0.0, f64::max);
    Ok(HuaFit { d, maxima, slope, intercept, max_constant })
}

/// A real polynomial phase `P(n) = sum_i c_i n^i` summed over an integer interval with a weight.
pub struct PolynomialPhase<T: Real> {
    /// `coeffs[i]` multiplies `n^i`.
    pub coeffs: Vec<T>,
    pub start: i64,
    /// Inclusive.
    pub end: i64,
    pub weight: Option<Box<dyn Fn(i64) -> Complex<T> + Send + Sync>>,
}

impl<T: Real> PolynomialPhase<T> {
    pub fn new(coeffs: Vec<T>, start: i64, end: i64) -> Self {
        Self { coeffs, start, end, weight: None }
    }

    pub fn with_weight(mut self, w: impl Fn(i64) -> Complex<T> + Send + Sync + 'static) -> Self {
        self.weight = Some(Box::new(w));
        self
    }

    /// `P(n)` modulo one.
    pub fn phase(&self, n: i64) -> T {
        let mut acc = T::zero();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != T::zero() {
                acc += frac_product(c, int(ipow(n, i as u32)));
            }
        }
        acc
    }
}

/// `sum_{n in I} phi(n) e(P(n))`.
pub fn incomplete_weyl_sum<T: Real>(p: &PolynomialPhase<T>) -> Complex<T> {
    let mut acc = Complex::new(T::zero(), T::zero());
    for n in p.start..=p.end {
        let v = e(p.phase(n));
        acc += match &p.weight {
            Some(w) => w(n) * v,
            None => v,
        };
    }
    acc
}

/// Whether `(xi_d, xi_1)` lies in a logarithmic major box at scale `j`:
/// some `q <= floor(j^C)` and numerators with `|xi_d - a_d/q| <= j^C 2^{-jd}`
/// and `|xi_1 - a_1/q| <= j^C 2^{-j}`.
pub fn in_log_major_arcs(xi_d: f64, xi_1: f64, j: u32, d: u32, c: f64) -> bool {
    let jc = (j as f64).powf(c);
    let wd = jc * 2f64.powi(-((j * d) as i32));
    let w1 = jc * 2f64.powi(-(j as i32));
    for q in 1..=(jc.floor() as u64) {
        let qf = q as f64;
        let ad = (xi_d * qf).round();
        let a1 = (xi_1 * qf).round();
        if (xi_d - ad / qf).abs() <= wd && (xi_1 - a1 / qf).abs() <= w1 {
            return true;
        }
    }
    false
}

/// Outcome of sampling normalised Weyl sums off the logarithmic major arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct MinorArcReport {
    pub j: u32,
    pub d: u32,
    pub samples: usize,
    pub rejected: usize,
    /// `max |S_{2^j}(xi)| / 2^j` over the accepted samples.
    pub max_normalized: f64,
    /// `bound_constant * j^{-alpha}`.
    pub bound: f64,
    pub within_bound: bool,
}

/// Configuration of [`minor_arc_decay_scan`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinorArcScan {
    pub j: u32,
    pub d: u32,
    pub alpha: f64,
    /// Exponent `C` of the major box sizes.
    pub box_exponent: f64,
    pub bound_constant: f64,
    pub samples: usize,
}

/// Samples `(xi_d, xi_1)` uniformly off the logarithmic major arcs and records the
/// largest normalised sum `|sum_{n=1}^{2^j} e(xi_d n^d + xi_1 n)| / 2^j`.
pub fn minor_arc_decay_scan<R: Rng + ?Sized>(cfg: &MinorArcScan, rng: &mut R) -> Result<MinorArcReport> {
    if cfg.j == 0 || cfg.j > 24 || cfg.d < 2 || cfg.samples == 0 {
        return invalid("need 1 <= j <= 24, d >= 2 and at least one sample");
    }
    let n = 1i64 << cfg.j;
    let mut rejected = 0usize;
    let mut best = 0f64;
    let mut taken = 0usize;
    while taken < cfg.samples {
        let xd: f64 = rng.gen();
        let x1: f64 = rng.gen();
        if in_log_major_arcs(xd, x1, cfg.j, cfg.d, cfg.box_exponent) {
            rejected += 1;
            if rejected > 1000 * cfg.samples {
                return invalid("major arcs cover almost everything at this scale");
            }
            continue;
        }
        let mut coeffs = vec![0.0; cfg.d as usize + 1];
        coeffs[1] = x1;
        coeffs[cfg.d as usize] = xd;
        let s = incomplete_weyl_sum(&PolynomialPhase::new(coeffs, 1, n));
        best = best.max(s.norm() / n as f64);
        taken += 1;
    }
    let bound = cfg.bound_constant * (cfg.j as f64).powf(-cfg.alpha);
    Ok(MinorArcReport {
        j: cfg.j,
        d: cfg.d,
        samples: taken,
        rejected,
        max_normalized: best,
        bound,
        within_bound: best <= bound,
    })
}

/// `q^{-1/2}` in `T`, the magnitude of a quadratic Gauss sum modulo an odd prime.
pub fn gauss_magnitude<T: Real>(q: u64) -> T {
    cst::<T>(1.0) / int::<T>(q as i128).sqrt()
}
