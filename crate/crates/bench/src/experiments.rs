//! The named experiments. Each reads its parameters from a [`Params`] map, runs
//! the corresponding core routines and returns rows, a summary and checks.

use std::str::FromStr;

use anyhow::{bail, Result};
use monocarleson_core::circle::{restricted_sup_outside_xj, ApproxParams};
use monocarleson_core::farey::{farey_level, gcd, gcd3, primes_up_to, ReducedFraction};
use monocarleson_core::osc::{Oscillatory, PhaseContext, QuadConfig, SquareFunctionSpec};
use monocarleson_core::spectral::*;
use monocarleson_core::stats::{linear_fit, strictly_decreasing};
use monocarleson_core::weyl::{gauss_magnitude, hua_exponent_fit, weyl_kernel_identity, weyl_orthogonality_scan, weyl_sum_raw};
use monocarleson_core::{BumpFamily64, Complex64, LambdaGrid64, Signal64};
use rand::Rng;
use rand_chacha::ChaCha20Rng;

use crate::config::{key, ExperimentConfig, Key, Params};
use crate::report::{Check, ExperimentReport};
use crate::row;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    WeylScan,
    HuaFit,
    KernelIdentity,
    MajorArcError,
    EjDecay,
    XjRestricted,
    Carleson,
    StationaryPhase,
    SquareFunction,
    Ttstar,
    Ergodic,
    Variation,
}

pub const ALL: [Experiment; 12] = [
    Experiment::WeylScan,
    Experiment::HuaFit,
    Experiment::KernelIdentity,
    Experiment::MajorArcError,
    Experiment::EjDecay,
    Experiment::XjRestricted,
    Experiment::Carleson,
    Experiment::StationaryPhase,
    Experiment::SquareFunction,
    Experiment::Ttstar,
    Experiment::Ergodic,
    Experiment::Variation,
];

const CIRCLE_KEYS: [Key; 4] = [
    key("d", "degree, default 2"),
    key("epsilon", "major-arc exponent, default 0.1"),
    key("kappa", "cutoff rate, default 0.05"),
    key("exponent_c", "exponent C of X_j, default 2"),
];

impl Experiment {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::WeylScan => "weyl-scan",
            Self::HuaFit => "hua-fit",
            Self::KernelIdentity => "kernel-identity",
            Self::MajorArcError => "major-arc-error",
            Self::EjDecay => "ej-decay",
            Self::XjRestricted => "xj-restricted",
            Self::Carleson => "carleson",
            Self::StationaryPhase => "stationary-phase",
            Self::SquareFunction => "square-function",
            Self::Ttstar => "ttstar",
            Self::Ergodic => "ergodic",
            Self::Variation => "variation",
        }
    }

    /// Parameters accepted besides the reserved keys.
    pub fn keys(self) -> Vec<Key> {
        let mut k = match self {
            Self::WeylScan => vec![
                key("q_max", "largest modulus in the orthogonality scan, default 60"),
                key("degrees", "degrees to scan, default [2, 3]"),
                key("gauss_q_max", "largest prime in the Gauss-sum check, default 101"),
                key("tol", "threshold on max |S|, default 1e-12"),
            ],
            Self::HuaFit => vec![
                key("q_lo", "default 2"),
                key("q_hi", "default 200"),
                key("d", "default 2"),
                key("slope_max", "largest accepted slope, default -0.4"),
            ],
            Self::KernelIdentity => vec![
                key("q_max", "default 40"),
                key("degrees", "default [2, 3]"),
                key("tol", "default 1e-10"),
            ],
            Self::MajorArcError => vec![
                key("q_max", "largest denominator, default 3"),
                key("j_min", "default 8"),
                key("j_max", "default 14"),
                key("samples_per_box", "default 8"),
                key("step_max", "largest accepted mean log2 step ratio, default -0.5"),
            ],
            Self::EjDecay => vec![key("j_min", "default 8"), key("j_max", "default 14"), key("samples", "default 50")],
            Self::XjRestricted => vec![
                key("js", "scales, default [6, 8, 10, 12]"),
                key("seeds", "independent signals, default 5"),
                key("width", "signal length, default 256"),
                key("grid", "uniform lambda grid size, default 512"),
                key("ring", "FFT size, default 32768"),
            ],
            Self::Carleson => vec![
                key("signal", "\"random\" or \"delta\", default \"random\""),
                key("n", "signal length, default 512"),
                key("grid", "lambda grid size, default 32"),
                key("big_j", "truncation J, default 9"),
                key("ring", "FFT size, default 4096"),
                key("d", "default 2"),
                key("oracle", "compare with direct summation, default true"),
                key("tol", "default 1e-9"),
            ],
            Self::StationaryPhase => vec![
                key("d", "default 2"),
                key("l_min", "default 8"),
                key("l_max", "default 14"),
                key("samples_per_l", "split reconstruction samples, default 50"),
                key("peak_samples", "default 25"),
                key("theta", "slab position of the peak scan, default 1.5"),
                key("regime_exponent", "default 2"),
                key("quad_tol", "default 1e-10"),
                key("max_panels", "default 4194304"),
                key("slope_target", "default -0.5"),
                key("slope_radius", "default 0.15"),
            ],
            Self::SquareFunction => vec![
                key("d", "default 2"),
                key("l", "default 1"),
                key("k_min", "default 4"),
                key("k_max", "default 7"),
                key("grid_per_slab", "default 4"),
                key("ring", "default 2048"),
            ],
            Self::Ttstar => vec![
                key("s_min", "default 3"),
                key("s_max", "default 5"),
                key("d", "default 2"),
                key("points", "x and u range over 0..points, default 64"),
                key("counting", "\"literal\" or \"distinct\", default \"literal\""),
            ],
            Self::Ergodic => vec![
                key("n", "cycle length N, default 4096"),
                key("big_js", "numbers of schedule intervals, default [4, 8, 16, 32]"),
                key("seeds", "default 5"),
                key("grid_per_interval", "default 8"),
                key("kernel_j", "Hilbert truncation J, default 10"),
                key("d", "default 2"),
                key("exponent_max", "default 0.9"),
            ],
            Self::Variation => vec![key("n_max", "default 8"), key("rs", "exponents, 0 for infinity, default [1, 2, 3, 0]")],
        };
        if matches!(self, Self::MajorArcError | Self::EjDecay | Self::XjRestricted) {
            k.extend(CIRCLE_KEYS);
        }
        k
    }

    pub fn is_randomized(self, p: &Params) -> Result<bool> {
        Ok(match self {
            Self::MajorArcError
            | Self::EjDecay
            | Self::XjRestricted
            | Self::StationaryPhase
            | Self::Ttstar
            | Self::Ergodic => true,
            Self::Carleson => p.str("signal", "random")? == "random",
            _ => false,
        })
    }
}

impl FromStr for Experiment {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match ALL.iter().find(|e| e.as_str() == s) {
            Some(e) => Ok(*e),
            None => bail!("unknown experiment {s:?}; expected one of {:?}", ALL.map(|e| e.as_str())),
        }
    }
}

/// Runs the configured experiment.
pub fn run(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    match cfg.experiment {
        Experiment::WeylScan => weyl_scan(cfg),
        Experiment::HuaFit => hua_fit(cfg),
        Experiment::KernelIdentity => kernel_identity(cfg),
        Experiment::MajorArcError => major_arc_error(cfg),
        Experiment::EjDecay => ej_decay(cfg),
        Experiment::XjRestricted => xj_restricted(cfg),
        Experiment::Carleson => carleson(cfg),
        Experiment::StationaryPhase => stationary_phase(cfg),
        Experiment::SquareFunction => square_function(cfg),
        Experiment::Ttstar => ttstar(cfg),
        Experiment::Ergodic => ergodic(cfg),
        Experiment::Variation => variation(cfg),
    }
}

fn report(cfg: &ExperimentConfig, columns: &[&'static str]) -> ExperimentReport {
    ExperimentReport::new(&cfg.name, cfg.to_value(), columns)
}

fn approx_params(p: &Params) -> Result<ApproxParams> {
    Ok(ApproxParams::new(p.u32("d", 2)?, p.f64("epsilon", 0.1)?, p.f64("kappa", 0.05)?, p.f64("exponent_c", 2.0)?)?)
}

fn random_signal(rng: &mut ChaCha20Rng, offset: i64, len: usize) -> Signal64 {
    Signal::new(offset, (0..len).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect())
}

fn weyl_scan(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let p = &cfg.params;
    let q_max = p.u64("q_max", 60)?;
    let degrees = p.u32_list("degrees", &[2, 3])?;
    let gauss_q = p.u64("gauss_q_max", 101)?;
    let tol = p.f64("tol", 1e-12)?;
    let mut r = report(cfg, &["kind", "d", "q", "value"]);
    // kind 0: max |S| over gcd(a, q) > 1 at this q; kind 1: max ||S(a/q, 0)| - q^{-1/2}| at prime q.
    let mut worst = 0f64;
    for &d in &degrees {
        for q in 1..=q_max {
            let mut m = 0f64;
            for a in 0..q {
                if gcd(a, q) == 1 {
                    continue;
                }
                for b in 0..q {
                    if gcd3(a, b, q) == 1 {
                        m = m.max(weyl_sum_raw::<f64>(a, b, q, d).norm());
                    }
                }
            }
            r.push(row![0u32, d, q, m]);
        }
        let scan = weyl_orthogonality_scan::<f64>(q_max, d)?;
        r.set(&format!("triples_d{d}"), scan.triples);
        worst = worst.max(scan.max_abs);
    }
    r.set_f64("orthogonality_max_abs", worst);
    r.check(Check::below("orthogonality max |S|", worst, tol));
    let mut gauss_worst = 0f64;
    let mut worst_q = 0;
    for q in primes_up_to(gauss_q) {
        let mut dev = 0f64;
        for a in 1..q {
            dev = dev.max((weyl_sum_raw::<f64>(a, 0, q, 2).norm() - gauss_magnitude::<f64>(q)).abs());
        }
        if dev > gauss_worst {
            worst_q = q;
        }
        gauss_worst = gauss_worst.max(dev);
        r.push(row![1u32, 2u32, q, dev]);
    }
    r.set_f64("gauss_max_deviation", gauss_worst);
    r.set("gauss_worst_q", worst_q);
    r.check(Check::below("gauss magnitude deviation", gauss_worst, 1e-12));
    Ok(r)
}

fn hua_fit(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let p = &cfg.params;
    let d = p.u32("d", 2)?;
    let fit = hua_exponent_fit::<f64>(p.u64("q_lo", 2)?, p.u64("q_hi", 200)?, d)?;
    let mut r = report(cfg, &["q", "max_abs", "scaled"]);
    for &(q, m) in &fit.maxima {
        r.push(row![q, m, m * (q as f64).powf(1.0 / d as f64)]);
    }
    r.set_f64("slope", fit.slope);
    r.set_f64("intercept", fit.intercept);
    r.set_f64("max_constant", fit.max_constant);
    r.check(Check::at_most("fitted slope", fit.slope, p.f64("slope_max", -0.4)?));
    Ok(r)
}

fn kernel_identity(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let p = &cfg.params;
    let q_max = p.u64("q_max", 40)?;
    let tol = p.f64("tol", 1e-10)?;
    let mut r = report(cfg, &["d", "q", "max_diff", "max_unit_dev"]);
    let (mut worst, mut unit) = (0f64, 0f64);
    for d in p.u32_list("degrees", &[2, 3])? {
        for q in 1..=q_max {
            let (mut md, mut mu) = (0f64, 0f64);
            for a in (0..q).filter(|&a| gcd(a, q) == 1) {
                for x in 0..q as i64 {
                    let (l, rhs) = weyl_kernel_identity::<f64>(q, a, d, x)?;
                    md = md.max((l - rhs).norm());
                    mu = mu.max((rhs.norm() - 1.0).abs());
                }
            }
            worst = worst.max(md);
            unit = unit.max(mu);
            r.push(row![d, q, md, mu]);
        }
    }
    r.set_f64("max_diff", worst);
    r.set_f64("max_unit_dev", unit);
    r.check(Check::below("lhs - rhs", worst, tol));
    r.check(Check::below("|rhs| - 1", unit, 1e-12));
    Ok(r)
}

fn major_arc_error(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let p = &cfg.params;
    let ap = approx_params(p)?;
    let js = p.range_u32("j", 8, 14)?;
    let osc = Oscillatory::<f64>::default();
    let mut rng = cfg.rng(0)?;
    let sw = osc.major_box_error_sweep(&js, &ap, p.u64("q_max", 3)?, p.usize("samples_per_box", 8)?, &mut rng)?;
    let mut r = report(cfg, &["j", "sup_error", "boxes", "points", "within_lemma_range", "max_center_error"]);
    for rep in &sw.reports {
        let ce = rep.center_errors.iter().map(|c| c.3).fold(0.0, f64::max);
        r.push(row![rep.j, rep.sup_error, rep.boxes, rep.points, rep.within_lemma_range, ce]);
    }
    r.set_f64("mean_step_log2_ratio", sw.mean_step_log2_ratio);
    r.set_f64("fitted_slope", sw.fitted_slope);
    r.set_f64("predicted_slope", -(1.0 - 2.0 * ap.epsilon));
    r.check(Check::at_most("mean log2 step ratio", sw.mean_step_log2_ratio, p.f64("step_max", -0.5)?));
    Ok(r)
}

fn ej_decay(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let p = &cfg.params;
    let ap = approx_params(p)?;
    let js = p.range_u32("j", 8, 14)?;
    let osc = Oscillatory::<f64>::default();
    let mut rng = cfg.rng(0)?;
    let rep = osc.ej_decay_scan(&js, &ap, p.usize("samples", 50)?, &mut rng)?;
    let mut r = report(cfg, &["j", "sup_error", "smoothed"]);
    // The three-point average is one shorter on each side.
    let off = (rep.sups.len() - rep.smoothed.len()) / 2;
    for (i, &(j, s)) in rep.sups.iter().enumerate() {
        let sm = i.checked_sub(off).and_then(|k| rep.smoothed.get(k)).copied().unwrap_or(f64::NAN);
        r.push(row![j, s, sm]);
    }
    r.set_f64s("smoothed", &rep.smoothed);
    r.set_f64("fitted_power", rep.fitted_power);
    r.set_f64("predicted_power", rep.predicted_power);
    r.check(Check::holds("smoothed sup strictly decreasing", rep.strictly_decreasing));
    Ok(r)
}

fn xj_restricted(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let p = &cfg.params;
    let ap = approx_params(p)?;
    let js = p.u32_list("js", &[6, 8, 10, 12])?;
    if js.len() < 2 {
        bail!("js needs at least two scales");
    }
    let seeds = p.u64("seeds", 5)?;
    let width = p.usize("width", 256)?;
    let grid = LambdaGrid64::uniform(p.usize("grid", 512)?)?;
    let ring = p.usize("ring", 1 << 15)?;
    let osc = Oscillatory::<f64>::default();
    let mut r = report(cfg, &["stream", "j", "norm_l2", "grid_points_used"]);
    let mut ok = true;
    for stream in 0..seeds {
        let f = random_signal(&mut cfg.rng(stream)?, 0, width);
        let mut norms = Vec::new();
        for &j in &js {
            let res = restricted_sup_outside_xj(&f, j, &grid, &ap, ring, &osc)?;
            r.push(row![stream, j, res.norm_l2, res.grid_points_used]);
            norms.push(res.norm_l2);
        }
        ok &= norms.last() < norms.first();
    }
    r.check(Check::holds("last scale below first scale for every signal", ok));
    Ok(r)
}

fn carleson(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let p = &cfg.params;
    let d = p.u32("d", 2)?;
    let n = p.usize("n", 512)?;
    let big_j = p.u32("big_j", 9)?;
    let ring = p.usize("ring", 4096)?;
    let g = p.usize("grid", 32)?;
    let b = BumpFamily64::default();
    let grid = LambdaGrid64::explicit((0..g).map(|i| i as f64 / g as f64 + 0.003).collect())?;
    let (f, delta) = match p.str("signal", "random")? {
        "random" => (random_signal(&mut cfg.rng(0)?, 0, n), false),
        "delta" => (Signal64::delta(0), true),
        s => bail!("signal must be \"random\" or \"delta\", got {s:?}"),
    };
    let fast = carleson_apply(&f, &grid, d, big_j, ring, &b)?;
    let radius = 1u64 << big_j;
    let slow = if p.bool("oracle", true)? { Some(carleson_direct_oracle(&f, &grid, d, radius)?) } else { None };
    let mut r = report(cfg, &["x", "fft", "oracle", "reciprocal"]);
    let mut recip_dev = 0f64;
    for x in fast.range() {
        let o = slow.as_ref().map_or(f64::NAN, |s| s.get(x).re);
        let rec = if x == 0 { 0.0 } else { 1.0 / x.unsigned_abs() as f64 };
        if delta && x.unsigned_abs() <= radius {
            recip_dev = recip_dev.max((fast.get(x).re - rec).abs());
        }
        r.push(row![x, fast.get(x).re, o, rec]);
    }
    if delta {
        r.set_f64("max_reciprocal_deviation", recip_dev);
        r.check(Check::below("delta response equals 1/|x|", recip_dev, 1e-12));
    }
    if let Some(s) = &slow {
        // Radius matching: on the support of f the kernel taper never reaches f when n <= 2^J.
        let (lo, hi) = (f.offset(), f.range().end);
        let diff = fast.window(lo, hi).max_abs_diff(&s.window(lo, hi));
        r.set_f64("max_oracle_diff", diff);
        let within = (hi - lo) as u64 <= radius;
        r.set("radius_matched", within);
        if within {
            r.check(Check::below("fft vs direct oracle", diff, p.f64("tol", 1e-9)?));
        }
    }
    Ok(r)
}

fn stationary_phase(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let p = &cfg.params;
    let d = p.u32("d", 2)?;
    let tol = p.f64("quad_tol", 1e-10)?;
    let quad = QuadConfig { tol, max_panels: p.usize("max_panels", 1 << 22)? };
    let osc = Oscillatory::<f64> { quad, ..Oscillatory::default() };
    let regime = p.f64("regime_exponent", 2.0)?;
    let ls: Vec<i32> = (p.i32("l_min", 8)?..=p.i32("l_max", 14)?).collect();
    let n = p.usize("samples_per_l", 50)?;
    let mut rng = cfg.rng(0)?;
    let mut r = report(cfg, &["l", "worst_split_error", "peak"]);
    let mut worst_all = 0f64;
    let mut errs = Vec::new();
    for &l in &ls {
        let mut worst = 0f64;
        for _ in 0..n {
            let th: f64 = rng.gen_range(1.0..2.0);
            let ctx = PhaseContext::<f64>::for_slab(d, l, th, regime)?;
            let v: f64 = rng.gen_range(0.125..4.0) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
            let xi = v * 2f64.powi(l - ctx.k);
            let sp = osc.stationary_phase_split(xi, &ctx)?;
            worst = worst.max((sp.total() - osc.g_hat_direct(xi, &ctx)?).norm());
        }
        worst_all = worst_all.max(worst);
        errs.push(worst);
    }
    let (peaks, slope) = osc.g_hat_peak_scan(d, &ls, p.f64("theta", 1.5)?, regime, p.usize("peak_samples", 25)?)?;
    for ((l, e), (_, pk)) in ls.iter().zip(&errs).zip(&peaks) {
        r.push(row![*l, *e, *pk]);
    }
    r.set_f64("worst_split_error", worst_all);
    r.set_f64("peak_slope", slope);
    r.check(Check::below("split reconstruction", worst_all, 10.0 * tol));
    r.check(Check::within("peak decay exponent", slope, p.f64("slope_target", -0.5)?, p.f64("slope_radius", 0.15)?));
    Ok(r)
}

fn square_function(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let p = &cfg.params;
    let spec = SquareFunctionSpec {
        l: p.i32("l", 1)?,
        k_min: p.i32("k_min", 4)?,
        k_max: p.i32("k_max", 7)?,
        grid_per_slab: p.usize("grid_per_slab", 4)?,
        d: p.u32("d", 2)?,
        ring: p.usize("ring", 2048)?,
    };
    let osc = Oscillatory::<f64>::default();
    let f = Signal64::delta(0);
    let sg = osc.square_function_s_g(&f, &spec)?;
    let sgp = osc.square_function_s_gprime(&f, &spec)?;
    let mut r = report(cfg, &["x", "s_g", "s_gprime"]);
    for x in sg.range() {
        r.push(row![x, sg.get(x).re, sgp.get(x).re]);
    }
    let (n1, n2) = (sg.l2_norm(), sgp.l2_norm());
    r.set_f64("s_g_l2", n1);
    r.set_f64("s_gprime_l2", n2);
    r.set_f64("product_l2", n1 * n2);
    r.check(Check::holds("square functions finite", n1.is_finite() && n2.is_finite()));
    Ok(r)
}

/// Max over `x, u` of `|K_s(x, u)| / |phi_s * phi_s(x - u)|` with random linearizers,
/// ignoring lags where the autocorrelation is below `1e-8`.
pub fn ttstar_ratio(s: u32, d: u32, points: i64, counting: KsCounting, rng: &mut ChaCha20Rng) -> Result<(f64, f64)> {
    let b = BumpFamily64::default();
    let fr: Vec<ReducedFraction> = farey_level((1 << s) - 1).into_iter().filter(|f| f.den() >= 1 << (s - 1)).collect();
    let table: Vec<ReducedFraction> = (0..points).map(|_| fr[rng.gen_range(0..fr.len())]).collect();
    let t2: Vec<ReducedFraction> = (0..points).map(|_| fr[rng.gen_range(0..fr.len())]).collect();
    let lin = WeylLinearizers::new(s, d, move |x| table[x.rem_euclid(points) as usize], move |u| {
        t2[u.rem_euclid(points) as usize]
    })?;
    let ring = ks_minimum_ring(s);
    let (mut all, mut off) = (0f64, 0f64);
    for x in 0..points {
        for u in 0..points {
            let ph = phi_s_autocorrelation::<f64>(x - u, s, ring, &b)?;
            if ph.abs() <= 1e-8 {
                continue;
            }
            let k = ttstar_kernel_ks::<f64>(x, u, &lin, ring, counting, &b)?;
            let q = k.norm() / ph.abs();
            all = all.max(q);
            if x != u {
                off = off.max(q);
            }
        }
    }
    Ok((all, off))
}

fn ttstar(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let p = &cfg.params;
    let counting = match p.str("counting", "literal")? {
        "literal" => KsCounting::Literal,
        "distinct" => KsCounting::Distinct,
        s => bail!("counting must be \"literal\" or \"distinct\", got {s:?}"),
    };
    let d = p.u32("d", 2)?;
    let points = p.u64("points", 64)? as i64;
    let mut r = report(cfg, &["s", "max_ratio", "max_offdiagonal_ratio"]);
    let mut ratios = Vec::new();
    for s in p.range_u32("s", 3, 5)? {
        let (all, off) = ttstar_ratio(s, d, points, counting, &mut cfg.rng(s as u64)?)?;
        r.push(row![s, all, off]);
        ratios.push(all);
    }
    r.set_f64s("max_ratios", &ratios);
    r.check(Check::holds("max ratio strictly decreasing in s", strictly_decreasing(&ratios)));
    Ok(r)
}

/// Result of [`ergodic_demo`].
#[derive(Debug, Clone, PartialEq)]
pub struct ErgodicRun {
    /// `|| C_{lambda_{i+1}} f - C_{lambda_i} f ||_2` between consecutive anchors.
    pub increments: Vec<f64>,
    pub oscillation_sum: f64,
}

/// `C_lambda f` on `Z/NZ` with the shift as the transformation: a circular
/// convolution with the truncated kernel `e(-lambda m^d) / m`, `0 < |m| < 2^{J+1}`.
///
/// Anchors are `lambda_i = 2^{-d j_i}` for the schedule entries `j_i`.
pub fn ergodic_demo(
    f: &[Complex64],
    schedule: &[u32],
    grid_per_interval: usize,
    d: u32,
    kernel_j: u32,
    bumps: &BumpFamily64,
) -> Result<ErgodicRun> {
    if f.is_empty() {
        bail!("empty signal");
    }
    let intervals = dyadic_intervals::<f64>(schedule, d)?;
    let eval = |lambda: f64| apply_cyclic(f, &kernel_m(lambda, d, kernel_j, bumps));
    let mut anchors = Vec::new();
    for &j in schedule {
        anchors.push(eval(2f64.powi(-((j * d) as i32)))?);
    }
    let increments = anchors
        .windows(2)
        .map(|w| w[0].iter().zip(&w[1]).map(|(a, b)| (b - a).norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let oscillation_sum = oscillation_sum_with(&intervals, grid_per_interval, eval)?;
    Ok(ErgodicRun { increments, oscillation_sum })
}

fn ergodic(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let p = &cfg.params;
    let n = p.usize("n", 4096)?;
    let big_js = p.u32_list("big_js", &[4, 8, 16, 32])?;
    if big_js.len() < 2 {
        bail!("big_js needs at least two entries");
    }
    let seeds = p.u64("seeds", 5)?;
    let grid = p.usize("grid_per_interval", 8)?;
    let kj = p.u32("kernel_j", 10)?;
    let d = p.u32("d", 2)?;
    let b = BumpFamily64::default();
    let mut r = report(cfg, &["stream", "intervals", "oscillation_sum", "last_increment"]);
    let mut exps = Vec::new();
    for stream in 0..seeds {
        let mut rng = cfg.rng(stream)?;
        let mut v: Vec<Complex64> = (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), 0.0)).collect();
        let mean = v.iter().sum::<Complex64>() / n as f64;
        v.iter_mut().for_each(|x| *x -= mean);
        let mut ys = Vec::new();
        for &big in &big_js {
            let sched: Vec<u32> = (1..=big + 1).collect();
            let run = ergodic_demo(&v, &sched, grid, d, kj, &b)?;
            r.push(row![stream, big, run.oscillation_sum, run.increments.last().copied().unwrap_or(f64::NAN)]);
            ys.push(run.oscillation_sum.ln());
        }
        let xs: Vec<f64> = big_js.iter().map(|&j| (j as f64).ln()).collect();
        exps.push(linear_fit(&xs, &ys).map(|f| f.0).unwrap_or(f64::NAN));
    }
    let worst = exps.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    r.set_f64s("growth_exponents", &exps);
    r.check(Check::below("oscillation growth exponent, worst stream", worst, p.f64("exponent_max", 0.9)?));
    Ok(r)
}

/// `r`-variation by enumerating every index subset.
pub fn variation_brute(seq: &[Complex64], r: f64) -> f64 {
    let n = seq.len();
    let mut best = 0f64;
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let v = if r.is_infinite() {
            idx.windows(2).map(|w| (seq[w[1]] - seq[w[0]]).norm()).fold(0.0, f64::max)
        } else {
            idx.windows(2).map(|w| (seq[w[1]] - seq[w[0]]).norm().powf(r)).sum::<f64>().powf(1.0 / r)
        };
        best = best.max(v);
    }
    best
}

fn variation(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let p = &cfg.params;
    let n_max = p.u32("n_max", 8)?;
    if n_max == 0 || n_max > 12 {
        bail!("n_max must lie in 1..=12");
    }
    let rs: Vec<f64> =
        p.f64_list("rs", &[1.0, 2.0, 3.0, 0.0])?.into_iter().map(|r| if r == 0.0 { f64::INFINITY } else { r }).collect();
    let mut rs = rs;
    rs.sort_by(f64::total_cmp);
    if rs.first().is_some_and(|&r| r < 1.0) {
        bail!("exponents must be at least 1");
    }
    let mut r = report(cfg, &["n", "sequences", "max_diff", "monotonicity_violations"]);
    let (mut worst, mut viol_total) = (0f64, 0usize);
    for n in 1..=n_max {
        let count = 3usize.pow(n);
        let (mut md, mut viol) = (0f64, 0usize);
        for code in 0..count {
            let mut c = code;
            let seq: Vec<Complex64> = (0..n)
                .map(|_| {
                    let v = (c % 3) as f64 - 1.0;
                    c /= 3;
                    Complex64::new(v, 0.0)
                })
                .collect();
            let mut prev = f64::INFINITY;
            for &e in &rs {
                let v = r_variation(&seq, e)?;
                md = md.max((v - variation_brute(&seq, e)).abs());
                if v > prev + 1e-12 {
                    viol += 1;
                }
                prev = v;
            }
        }
        worst = worst.max(md);
        viol_total += viol;
        r.push(row![n, count, md, viol]);
    }
    r.set_f64("max_diff", worst);
    r.check(Check::below("dp vs enumeration", worst, 1e-12));
    r.check(Check::holds("monotone in r", viol_total == 0));
    Ok(r)
}
