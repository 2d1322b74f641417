//! Rational approximation, Farey sequences and major-arc membership.

use std::cmp::Ordering;

use crate::error::{invalid, Result};
use crate::scalar::{cst, int, pow2, torus_dist, Real};

/// Greatest common divisor.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `gcd(a, b, q)`.
pub fn gcd3(a: u64, b: u64, q: u64) -> u64 {
    gcd(gcd(a, b), q)
}

/// Least common multiple.
pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Moebius function.
pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1, "mobius is defined for n >= 1");
    let mut n = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1u64;
    while k * k <= n {
        if n % k == 0 {
            small.push(k);
            if k * k != n {
                large.push(n / k);
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Primes up to and including `n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| (2..).take_while(|k| k * k <= p).all(|k| p % k != 0)).collect()
}

/// A reduced fraction `num/den` in `[0, 1)`, viewed as a point of the torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedFraction {
    num: u64,
    den: u64,
}

impl ReducedFraction {
    /// Builds `num/den`, rejecting non-reduced input or values outside `[0, 1)`.
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num >= den || gcd(num, den) != 1 {
            return invalid(format!("{num}/{den} is not a reduced fraction in [0,1)"));
        }
        Ok(Self { num, den })
    }

    /// Reduces `a/q` modulo one.
    pub fn reduce(a: i64, q: u64) -> Result<Self> {
        if q == 0 {
            return invalid("zero denominator");
        }
        let r = a.rem_euclid(q as i64) as u64;
        let g = gcd(r, q);
        Ok(Self { num: r / g, den: q / g })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn value<T: Real>(&self) -> T {
        int::<T>(self.num as i128) / int::<T>(self.den as i128)
    }

    /// Distance on the torus from `x` to this fraction.
    pub fn torus_dist<T: Real>(&self, x: T) -> T {
        torus_dist(x - self.value::<T>())
    }
}

impl std::fmt::Display for ReducedFraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Sign of `x - p/q` computed without rounding the product `x q`.
fn cmp_frac<T: Real>(x: T, p: u64, q: u64) -> Ordering {
    let r = x.mul_add(int(q as i128), -int::<T>(p as i128));
    r.partial_cmp(&T::zero()).unwrap_or(Ordering::Equal)
}

/// `|x - p/q|` scaled by `q`, evaluated with a fused multiply-add.
fn scaled_dist<T: Real>(x: T, p: u64, q: u64) -> T {
    x.mul_add(int(q as i128), -int::<T>(p as i128)).abs()
}

/// Rational approximation in the sense of Dirichlet.
///
/// Returns a reduced `a/q` with `q <= q_max` and `|lambda - a/q| <= 1/(q q_max)`;
/// among all such fractions the closest one is returned, ties going to the
/// smaller denominator. `lambda` is read modulo one. The search walks the
/// Stern-Brocot tree in batched steps, so it costs `O(log q_max)` comparisons.
pub fn dirichlet_approx<T: Real>(lambda: T, q_max: u64) -> Result<ReducedFraction> {
    if q_max == 0 {
        return invalid("q_max must be at least 1");
    }
    if !lambda.is_finite() {
        return invalid("lambda must be finite");
    }
    let x = lambda - lambda.floor();
    let x = if x >= T::one() { T::zero() } else { x };
    let (mut pl, mut ql, mut pr, mut qr) = (0u64, 1u64, 1u64, 1u64);
    if x == T::zero() {
        return Ok(ReducedFraction { num: 0, den: 1 });
    }
    loop {
        let mq = ql + qr;
        if mq > q_max {
            break;
        }
        let mp = pl + pr;
        match cmp_frac(x, mp, mq) {
            Ordering::Equal => return ReducedFraction::new(mp, mq),
            Ordering::Less => {
                // Move the right end towards the left end: (pr + k pl)/(qr + k ql).
                let kmax = (q_max - qr) / ql;
                let denom = x * int(ql as i128) - int(pl as i128);
                let mut k = if denom > T::zero() {
                    let est = (int::<T>(pr as i128) - x * int(qr as i128)) / denom;
                    est.floor().to_u64().unwrap_or(kmax).clamp(1, kmax)
                } else {
                    kmax
                };
                while k > 1 && cmp_frac(x, pr + k * pl, qr + k * ql) != Ordering::Less {
                    k -= 1;
                }
                while k < kmax && cmp_frac(x, pr + (k + 1) * pl, qr + (k + 1) * ql) == Ordering::Less {
                    k += 1;
                }
                pr += k * pl;
                qr += k * ql;
            }
            Ordering::Greater => {
                let kmax = (q_max - ql) / qr;
                let denom = int::<T>(pr as i128) - x * int(qr as i128);
                let mut k = if denom > T::zero() {
                    let est = (x * int(ql as i128) - int(pl as i128)) / denom;
                    est.floor().to_u64().unwrap_or(kmax).clamp(1, kmax)
                } else {
                    kmax
                };
                while k > 1 && cmp_frac(x, pl + k * pr, ql + k * qr) == Ordering::Less {
                    k -= 1;
                }
                while k < kmax && cmp_frac(x, pl + (k + 1) * pr, ql + (k + 1) * qr) != Ordering::Less {
                    k += 1;
                }
                pl += k * pr;
                ql += k * qr;
                if cmp_frac(x, pl, ql) == Ordering::Equal {
                    return ReducedFraction::reduce(pl as i64, ql);
                }
            }
        }
    }
    // The two Farey neighbours of x at level q_max; any other fraction is farther away.
    let nmax = int::<T>(q_max as i128);
    let cands = [(pl, ql), (pr, qr)];
    let mut best: Option<(T, u64, u64, bool)> = None;
    for &(p, q) in &cands {
        let sd = scaled_dist(x, p, q);
        let dist = sd / int(q as i128);
        let valid = sd * nmax <= T::one();
        let better = match best {
            None => true,
            Some((bd, _, bq, bvalid)) => {
                (valid && !bvalid) || (valid == bvalid && (dist < bd || (dist == bd && q < bq)))
            }
        };
        if better {
            best = Some((dist, p, q, valid));
        }
    }
    let (_, p, q, _) = best.expect("two candidates");
    ReducedFraction::reduce(p as i64, q)
}

/// Farey sequence of order `q_max` on the torus: every reduced `a/q` in `[0, 1)`
/// with `q <= q_max`, in increasing order.
pub fn farey_level(q_max: u64) -> Vec<ReducedFraction> {
    let mut out = Vec::new();
    if q_max == 0 {
        return out;
    }
    let (mut a, mut b, mut c, mut d) = (0u64, 1u64, 1u64, q_max);
    out.push(ReducedFraction { num: 0, den: 1 });
    while c < d {
        let k = (q_max + b) / d;
        let (na, nb) = (c, d);
        c = k * c - a;
        d = k * d - b;
        a = na;
        b = nb;
        out.push(ReducedFraction { num: a, den: b });
    }
    out
}

/// Parameters of the polynomial-scale major arcs `|lambda - A/Q| <= 2^{(eps-d)j}`,
/// `|beta - B/Q| <= 2^{(eps-1)j}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MajorArcParams {
    pub d: u32,
    pub epsilon: f64,
}

impl MajorArcParams {
    pub fn new(d: u32, epsilon: f64) -> Result<Self> {
        if d < 2 {
            return invalid("degree must be at least 2");
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return invalid("epsilon must lie in (0, 1)");
        }
        Ok(Self { d, epsilon })
    }

    /// Half-widths `(lambda, beta)` of the boxes at scale `j`.
    pub fn widths<T: Real>(&self, j: u32) -> (T, T) {
        let j = j as f64;
        (
            cst(2f64.powf((self.epsilon - self.d as f64) * j)),
            cst(2f64.powf((self.epsilon - 1.0) * j)),
        )
    }

    /// Largest denominator allowed at scale `j`, namely `floor(2^{eps j})`.
    pub fn q_bound(&self, j: u32) -> u64 {
        2f64.powf(self.epsilon * j as f64).floor() as u64
    }
}

/// Whether `(lambda, beta)` lies in the major box centred at `(a/q, b/q)`.
pub fn in_major_box<T: Real>(lambda: T, beta: T, j: u32, a: u64, b: u64, q: u64, p: &MajorArcParams) -> bool {
    let (wl, wb) = p.widths::<T>(j);
    let qq = int::<T>(q as i128);
    torus_dist(lambda - int::<T>(a as i128) / qq) <= wl && torus_dist(beta - int::<T>(b as i128) / qq) <= wb
}

/// All boxes `(a, b, q)` with `gcd(a, b, q) = 1` and `q <= q_max` containing `(lambda, beta)`.
pub fn major_boxes_containing<T: Real>(
    lambda: T,
    beta: T,
    j: u32,
    q_max: u64,
    p: &MajorArcParams,
) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for q in 1..=q_max {
        let qq = int::<T>(q as i128);
        let a = ((lambda * qq).round().to_i64().unwrap_or(0)).rem_euclid(q as i64) as u64;
        let b = ((beta * qq).round().to_i64().unwrap_or(0)).rem_euclid(q as i64) as u64;
        if gcd3(a, b, q) == 1 && in_major_box(lambda, beta, j, a, b, q, p) {
            out.push((a, b, q));
        }
    }
    out
}

/// The set `X_j`: neighbourhoods of all `a/q` with `q <= floor(j^C)` of a common dyadic
/// half-width, the power of two nearest to `prefactor * j^C * 2^{-dj}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XSet {
    pub j: u32,
    pub d: u32,
    pub exponent: f64,
    pub prefactor: f64,
}

impl XSet {
    pub fn new(j: u32, exponent: f64, d: u32) -> Result<Self> {
        Self::with_prefactor(j, exponent, d, 1.0)
    }

    pub fn with_prefactor(j: u32, exponent: f64, d: u32, prefactor: f64) -> Result<Self> {
        if j == 0 || d < 2 {
            return invalid("X_j needs j >= 1 and d >= 2");
        }
        if !(exponent > 0.0) || !(prefactor > 0.0) {
            return invalid("exponent and prefactor must be positive");
        }
        Ok(Self { j, d, exponent, prefactor })
    }

    /// `floor(j^C)`.
    pub fn q_bound(&self) -> u64 {
        (self.j as f64).powf(self.exponent).floor() as u64
    }

    /// Exponent `c(j)` with half-width `2^{-c(j)}`.
    pub fn width_exponent(&self) -> i32 {
        let w = (self.d * self.j) as f64 - (self.prefactor * (self.j as f64).powf(self.exponent)).log2();
        w.round() as i32
    }

    pub fn width<T: Real>(&self) -> T {
        pow2(-self.width_exponent())
    }

    /// The centre `a/q` whose neighbourhood contains `lambda`, preferring the smallest `q`.
    pub fn center_of<T: Real>(&self, lambda: T) -> Option<ReducedFraction> {
        let w = self.width::<T>();
        for q in 1..=self.q_bound() {
            let qq = int::<T>(q as i128);
            let a = (lambda * qq).round().to_i64().unwrap_or(0);
            let f = ReducedFraction::reduce(a, q).ok()?;
            // Same offset arithmetic as the cutoffs of the circle-method approximants.
            let dist = lambda.mul_add(qq, -int::<T>(a as i128)).abs() / qq;
            if f.den() == q && dist <= w {
                return Some(f);
            }
        }
        None
    }

    pub fn contains<T: Real>(&self, lambda: T) -> bool {
        self.center_of(lambda).is_some()
    }
}

/// Membership in `X_j` with unit prefactor.
pub fn xset_contains<T: Real>(lambda: T, j: u32, exponent: f64, d: u32) -> Result<bool> {
    Ok(XSet::new(j, exponent, d)?.contains(lambda))
}
