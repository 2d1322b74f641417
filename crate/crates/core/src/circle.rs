//! Circle-method approximation of the multipliers `M_j`: the approximants `L_{j,s}`
//! and `L_j`, the error `E_j = M_j 1_{X_j} - L_j`, and the scans measuring how
//! these errors decay in `j`.

use num_complex::Complex;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::farey::{farey_level, gcd3, MajorArcParams, XSet};
use crate::osc::Oscillatory;
use crate::scalar::{cst, int, to_f64, Real};
use crate::spectral::{apply_multiplier, kernel_mj, LambdaGrid, Signal};
use crate::stats::{linear_fit, moving_average, strictly_decreasing};
use crate::weyl::weyl_sum_raw;

/// Parameters of the approximation: degree, major-arc exponent `epsilon`, the
/// double-exponential cutoff rate `kappa` and the exponent `C` of `X_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxParams {
    pub d: u32,
    pub epsilon: f64,
    pub kappa: f64,
    pub exponent_c: f64,
    /// Constant in `chi`, one on `|t| <= c`, zero beyond `2c`.
    pub chi_constant: f64,
    /// Prefactor in the half-width of `X_j`.
    pub xset_prefactor: f64,
}

impl ApproxParams {
    pub fn new(d: u32, epsilon: f64, kappa: f64, exponent_c: f64) -> Result<Self> {
        let p = Self { d, epsilon, kappa, exponent_c, chi_constant: 1.0 / (8.0 * d as f64), xset_prefactor: 1.0 };
        p.validate()?;
        Ok(p)
    }

    /// `epsilon = 0.1`, `kappa = 0.05`, `C = 2`.
    pub fn defaults(d: u32) -> Result<Self> {
        Self::new(d, 0.1, 0.05, 2.0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d < 2 {
            return invalid("degree must be at least 2");
        }
        if !(self.epsilon > 0.0 && self.epsilon <= 0.1) {
            return invalid("epsilon must lie in (0, 1/10]");
        }
        if !(self.kappa > 0.0 && self.kappa <= 0.25) {
            return invalid("kappa must lie in (0, 1/4]");
        }
        if !(self.exponent_c > 0.0 && self.exponent_c.is_finite()) {
            return invalid("C must be positive");
        }
        if !(self.chi_constant > 0.0 && self.xset_prefactor > 0.0) {
            return invalid("cutoff constants must be positive");
        }
        Ok(())
    }

    pub fn major_arcs(&self) -> MajorArcParams {
        MajorArcParams { d: self.d, epsilon: self.epsilon }
    }

    /// `X_j` with this parameter set.
    pub fn xset(&self, j: u32) -> Result<XSet> {
        XSet::with_prefactor(j, self.exponent_c, self.d, self.xset_prefactor)
    }

    /// `log2` of the `chi_s` dilation `2^{2^{s d kappa}}`.
    pub fn chi_scale_log2(&self, s: u32) -> Result<f64> {
        let e = 2f64.powf(s as f64 * self.d as f64 * self.kappa);
        if e > 1000.0 {
            return Err(Error::Inconsistent(format!("chi_s scale 2^{e} overflows for s = {s}")));
        }
        Ok(e)
    }

    /// Radius of the support of `chi_s`, `2c / 2^{2^{s d kappa}}`.
    pub fn chi_radius(&self, s: u32) -> Result<f64> {
        Ok(2.0 * self.chi_constant * 2f64.powf(-self.chi_scale_log2(s)?))
    }

    /// The values of `s` with `2^s <= j^C`.
    pub fn s_range(&self, j: u32) -> std::ops::RangeInclusive<u32> {
        let jc = (j as f64).powf(self.exponent_c);
        let mut s_max = 0;
        while 2f64.powi(s_max as i32 + 1) <= jc {
            s_max += 1;
        }
        1..=s_max
    }
}

/// Value of `L_{j,s}` with the number of centres whose cutoffs were nonzero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LjsValue<T: Real> {
    pub value: Complex<T>,
    pub centers: usize,
}

fn integer_window<T: Real>(x: T, r: T, q: u64) -> std::ops::RangeInclusive<i64> {
    let qq = int::<T>(q as i128);
    let lo = ((x - r) * qq).ceil().to_i64().unwrap_or(0);
    let hi = ((x + r) * qq).floor().to_i64().unwrap_or(-1);
    lo..=hi
}

impl<T: Real> Oscillatory<T> {
    /// `chi_s(t) = chi(2^{2^{s d kappa}} t)`.
    pub fn chi_s(&self, t: T, s: u32, p: &ApproxParams) -> Result<T> {
        let scale = cst::<T>(2f64.powf(p.chi_scale_log2(s)?));
        Ok(self.bumps.chi(t * scale, cst(p.chi_constant)))
    }

    /// `L_{j,s}(lambda, beta) = sum_{(A/Q, B/Q) in R_s} S(A/Q, B/Q) H_j(lambda - A/Q, beta - B/Q)
    ///  Xi_j(lambda - A/Q) chi_s(lambda - A/Q) chi_s(beta - B/Q)`,
    /// where `R_s` holds the reduced pairs with `2^{s-1} <= Q < 2^s` and `Xi_j` is the
    /// indicator of the `X_j` half-width.
    ///
    /// For each `Q` only the numerators inside the cutoff windows around `lambda`
    /// and `beta` are visited.
    pub fn l_js(&self, lambda: T, beta: T, j: u32, s: u32, p: &ApproxParams) -> Result<LjsValue<T>> {
        if j == 0 || s == 0 || s > 40 {
            return invalid("need j >= 1 and 1 <= s <= 40");
        }
        let xs = p.xset(j)?;
        let xi_w = xs.width::<T>();
        let rad = cst::<T>(p.chi_radius(s)?);
        let r_lambda = xi_w.min(rad);
        let mut out = LjsValue { value: Complex::new(T::zero(), T::zero()), centers: 0 };
        for q in (1u64 << (s - 1))..(1u64 << s) {
            let qq = int::<T>(q as i128);
            for a in integer_window(lambda, r_lambda, q) {
                let dl = lambda.mul_add(qq, -int::<T>(a as i128)) / qq;
                if dl.abs() > xi_w {
                    continue;
                }
                let cl = self.chi_s(dl, s, p)?;
                if cl == T::zero() {
                    continue;
                }
                let ar = a.rem_euclid(q as i64) as u64;
                for b in integer_window(beta, rad, q) {
                    let br = b.rem_euclid(q as i64) as u64;
                    if gcd3(ar, br, q) != 1 {
                        continue;
                    }
                    let db = beta.mul_add(qq, -int::<T>(b as i128)) / qq;
                    let cb = self.chi_s(db, s, p)?;
                    if cb == T::zero() {
                        continue;
                    }
                    let sum = weyl_sum_raw::<T>(ar, br, q, p.d);
                    let h = self.h_j(dl, db, j as i32, p.d)?;
                    out.value += sum * h * (cl * cb);
                    out.centers += 1;
                }
            }
        }
        Ok(out)
    }

    /// `L_j = sum_{s : 2^s <= j^C} L_{j,s}`.
    pub fn l_j(&self, lambda: T, beta: T, j: u32, p: &ApproxParams) -> Result<Complex<T>> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for s in p.s_range(j) {
            acc += self.l_js(lambda, beta, j, s, p)?.value;
        }
        Ok(acc)
    }

    /// `E_j(lambda, beta) = M_j(lambda, beta) 1_{X_j}(lambda) - L_j(lambda, beta)`.
    ///
    /// `L_j` must vanish off `X_j`; a nonzero value there is reported as an error.
    pub fn error_ej(&self, lambda: T, beta: T, j: u32, p: &ApproxParams) -> Result<Complex<T>> {
        let inside = p.xset(j)?.contains(lambda);
        let l = self.l_j(lambda, beta, j, p)?;
        if !inside {
            if l != Complex::new(T::zero(), T::zero()) {
                return Err(Error::Inconsistent(format!(
                    "L_j is nonzero at lambda = {lambda} outside X_{j} (|L_j| = {})",
                    l.norm()
                )));
            }
            return Ok(-l);
        }
        Ok(crate::spectral::multiplier_mj(lambda, beta, j, p.d, &self.bumps) - l)
    }
}

/// Errors `|M_j - S H_j|` over the major boxes at one scale.
#[derive(Debug, Clone, PartialEq)]
pub struct MajorBoxReport {
    pub j: u32,
    pub q_max: u64,
    /// Whether `q_max <= 2^{epsilon j}`, the range in which the approximation is asserted.
    pub within_lemma_range: bool,
    pub boxes: usize,
    pub points: usize,
    pub sup_error: f64,
    /// `(A, B, Q, |M_j(A/Q, B/Q)|)` at each box centre.
    pub center_errors: Vec<(u64, u64, u64, f64)>,
}

/// Sweep of [`MajorBoxReport`] over a range of scales.
#[derive(Debug, Clone, PartialEq)]
pub struct MajorBoxSweep {
    pub reports: Vec<MajorBoxReport>,
    /// Mean of `log2(sup_{j+1} / sup_j)` over consecutive scales.
    pub mean_step_log2_ratio: f64,
    /// Least-squares slope of `log2 sup_j` against `j`.
    pub fitted_slope: f64,
}

impl<T: Real> Oscillatory<T> {
    /// Samples every box `M_j(A/Q, B/Q)` with `Q <= q_max`: the centre plus
    /// `samples_per_box` uniform points.
    pub fn major_box_error_scan<R: Rng + ?Sized>(
        &self,
        j: u32,
        p: &ApproxParams,
        q_max: u64,
        samples_per_box: usize,
        rng: &mut R,
    ) -> Result<MajorBoxReport> {
        if j == 0 || q_max == 0 {
            return invalid("need j >= 1 and q_max >= 1");
        }
        let ma = p.major_arcs();
        let (wl, wb) = ma.widths::<T>(j);
        let mut pts: Vec<(u64, u64, u64, T, T, bool)> = Vec::new();
        let mut boxes = 0;
        for q in 1..=q_max {
            for a in 0..q {
                for b in 0..q {
                    if gcd3(a, b, q) != 1 {
                        continue;
                    }
                    boxes += 1;
                    pts.push((a, b, q, T::zero(), T::zero(), true));
                    for _ in 0..samples_per_box {
                        let u: f64 = rng.gen_range(-1.0..=1.0);
                        let v: f64 = rng.gen_range(-1.0..=1.0);
                        pts.push((a, b, q, wl * cst(u), wb * cst(v), false));
                    }
                }
            }
        }
        let errs: Vec<Result<(usize, f64)>> = pts
            .par_iter()
            .enumerate()
            .map(|(i, &(a, b, q, dl, db, _))| {
                let qq = int::<T>(q as i128);
                let lambda = int::<T>(a as i128) / qq + dl;
                let beta = int::<T>(b as i128) / qq + db;
                // Offsets of the rounded point from the exact centre, so that both sides
                // see the same (lambda, beta).
                let dl = lambda.mul_add(qq, -int::<T>(a as i128)) / qq;
                let db = beta.mul_add(qq, -int::<T>(b as i128)) / qq;
                let m = crate::spectral::multiplier_mj(lambda, beta, j, p.d, &self.bumps);
                let h = self.h_j(dl, db, j as i32, p.d)?;
                let s = weyl_sum_raw::<T>(a, b, q, p.d);
                Ok((i, to_f64((m - s * h).norm())))
            })
            .collect();
        let mut rep = MajorBoxReport {
            j,
            q_max,
            within_lemma_range: q_max <= ma.q_bound(j),
            boxes,
            points: pts.len(),
            sup_error: 0.0,
            center_errors: Vec::new(),
        };
        for r in errs {
            let (i, e) = r?;
            rep.sup_error = rep.sup_error.max(e);
            let (a, b, q, _, _, center) = pts[i];
            if center {
                rep.center_errors.push((a, b, q, e));
            }
        }
        Ok(rep)
    }

    /// [`Self::major_box_error_scan`] for each `j` in `js`.
    pub fn major_box_error_sweep<R: Rng + ?Sized>(
        &self,
        js: &[u32],
        p: &ApproxParams,
        q_max: u64,
        samples_per_box: usize,
        rng: &mut R,
    ) -> Result<MajorBoxSweep> {
        if js.len() < 2 {
            return invalid("a sweep needs at least two scales");
        }
        let mut reports = Vec::new();
        for &j in js {
            reports.push(self.major_box_error_scan(j, p, q_max, samples_per_box, rng)?);
        }
        let logs: Vec<f64> = reports.iter().map(|r| r.sup_error.log2()).collect();
        let steps: Vec<f64> = logs
            .windows(2)
            .zip(js.windows(2))
            .map(|(l, j)| (l[1] - l[0]) / (j[1] as f64 - j[0] as f64))
            .collect();
        let mean = steps.iter().sum::<f64>() / steps.len() as f64;
        let xs: Vec<f64> = js.iter().map(|&j| j as f64).collect();
        let slope = linear_fit(&xs, &logs).map(|f| f.0).unwrap_or(f64::NAN);
        Ok(MajorBoxSweep { reports, mean_step_log2_ratio: mean, fitted_slope: slope })
    }
}

/// Sampled `sup |E_j|` across scales.
#[derive(Debug, Clone, PartialEq)]
pub struct EjDecayReport {
    /// `(j, sup |E_j|)` over the samples.
    pub sups: Vec<(u32, f64)>,
    /// Three-point moving average of the sups.
    pub smoothed: Vec<f64>,
    pub strictly_decreasing: bool,
    /// Slope of `log sup` against `log j`.
    pub fitted_power: f64,
    /// `-1/(2 kappa)`.
    pub predicted_power: f64,
}

impl<T: Real> Oscillatory<T> {
    /// Samples `(lambda, beta)` with `lambda` in `X_j` (a uniformly chosen centre `a/q`,
    /// `q <= floor(j^C)`, plus a uniform offset within the half-width) and `beta`
    /// uniform in `[0, 1)`, recording `sup |E_j|` for each `j`.
    pub fn ej_decay_scan<R: Rng + ?Sized>(
        &self,
        js: &[u32],
        p: &ApproxParams,
        samples: usize,
        rng: &mut R,
    ) -> Result<EjDecayReport> {
        if js.is_empty() || samples == 0 {
            return invalid("need at least one scale and one sample");
        }
        let mut sups = Vec::new();
        for &j in js {
            let xs = p.xset(j)?;
            let centers = farey_level(xs.q_bound());
            let w = xs.width::<f64>();
            let pts: Vec<(T, T)> = (0..samples)
                .map(|_| {
                    let c = centers[rng.gen_range(0..centers.len())];
                    let off: f64 = rng.gen_range(-w..=w);
                    let lambda = (c.value::<f64>() + off).rem_euclid(1.0);
                    (cst(lambda), cst(rng.gen::<f64>()))
                })
                .collect();
            let vals: Vec<Result<f64>> =
                pts.par_iter().map(|&(l, b)| Ok(to_f64(self.error_ej(l, b, j, p)?.norm()))).collect();
            let mut sup = 0f64;
            for v in vals {
                sup = sup.max(v?);
            }
            sups.push((j, sup));
        }
        let raw: Vec<f64> = sups.iter().map(|s| s.1).collect();
        let smoothed = moving_average(&raw, 3.min(raw.len()));
        let xs: Vec<f64> = sups.iter().map(|s| (s.0 as f64).ln()).collect();
        let ys: Vec<f64> = raw.iter().map(|v| v.ln()).collect();
        Ok(EjDecayReport {
            strictly_decreasing: strictly_decreasing(&smoothed),
            smoothed,
            fitted_power: linear_fit(&xs, &ys).map(|f| f.0).unwrap_or(f64::NAN),
            predicted_power: -1.0 / (2.0 * p.kappa),
            sups,
        })
    }
}

/// Result of [`restricted_sup_outside_xj`].
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedSup {
    /// `|| max_{lambda} |M_j(lambda, .) f| ||_2 / ||f||_2` over grid points outside `X_j`.
    pub norm_l2: f64,
    pub grid_points_used: usize,
}

/// Normalised `l2` norm of `x -> max_{lambda in grid \ X_j} |(M_j(lambda, .) f_hat)^vee(x)|`.
///
/// An empty filtered grid gives zero with `grid_points_used = 0`.
pub fn restricted_sup_outside_xj<T: Real>(
    f: &Signal<T>,
    j: u32,
    grid: &LambdaGrid<T>,
    p: &ApproxParams,
    ring: usize,
    osc: &Oscillatory<T>,
) -> Result<RestrictedSup> {
    let xs = p.xset(j)?;
    let kept = grid.filter(|l| !xs.contains(l));
    let fnorm = to_f64(f.l2_norm());
    if kept.is_empty() || fnorm == 0.0 {
        return Ok(RestrictedSup { norm_l2: 0.0, grid_points_used: kept.len() });
    }
    let maxes = kept
        .points()
        .par_iter()
        .map(|&lambda| {
            let g = apply_multiplier(f, &kernel_mj(lambda, j, p.d, &osc.bumps), ring)?;
            Ok(g.values().iter().map(|v| v.norm()).collect::<Vec<T>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut sup = vec![T::zero(); maxes[0].len()];
    for m in &maxes {
        for (s, v) in sup.iter_mut().zip(m) {
            *s = s.max(*v);
        }
    }
    let norm = sup.iter().fold(0f64, |acc, v| acc + to_f64(*v).powi(2)).sqrt();
    Ok(RestrictedSup { norm_l2: norm / fnorm, grid_points_used: kept.len() })
}
