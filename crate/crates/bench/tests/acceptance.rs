//! Acceptance criteria 1-13. Prints one line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` do not hold as stated; they are run at the
//! stated thresholds and reported, but do not fail the target.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use monocarleson_bench::config::ExperimentConfig;
use monocarleson_bench::experiments::ttstar_ratio;
use monocarleson_bench::{ergodic_demo, run, ExperimentReport};
use monocarleson_core::circle::{restricted_sup_outside_xj, ApproxParams};
use monocarleson_core::farey::*;
use monocarleson_core::osc::{critical_point, oscillatory_quadrature, PhaseContext, SquareFunctionSpec};
use monocarleson_core::spectral::*;
use monocarleson_core::weyl::*;
use monocarleson_core::{BumpFamily64, Complex64, LambdaGrid64, Oscillatory64, Signal64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde_json::json;

const KNOWN_FAILURES: [(u32, &str); 2] = [
    (2, "S(1/2, 0) = 0 for d = 2, so |S| = 2^{-1/2} cannot hold at q = 2"),
    (9, "|K_s| / |phi_s * phi_s| equals the representation multiplicity on the diagonal and grows with s"),
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn random_signal(rng: &mut ChaCha20Rng, offset: i64, len: usize) -> Signal64 {
    Signal::new(offset, (0..len).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect())
}

fn experiment(v: serde_json::Value) -> ExperimentReport {
    let mut m = v.as_object().unwrap().clone();
    m.insert("schema_version".into(), 1.into());
    run(&ExperimentConfig::from_value(serde_json::Value::Object(m)).unwrap()).unwrap()
}

fn summary(r: &ExperimentReport) -> String {
    r.checks.iter().map(|c| format!("{} = {:.4e} ({})", c.name, c.value, c.condition)).collect::<Vec<_>>().join("; ")
}

fn c1() -> Outcome {
    let mut worst = 0f64;
    let mut triples = 0;
    for d in [2, 3] {
        let r = weyl_orthogonality_scan::<f64>(60, d).unwrap();
        worst = worst.max(r.max_abs);
        triples += r.triples;
    }
    outcome(worst < 1e-12, format!("max |S| = {worst:.3e} over {triples} triples"))
}

fn c2() -> Outcome {
    // Direct summation with the exponent reduced mod q before the exponential.
    let direct = |a: u64, q: u64| -> f64 {
        let s: Complex64 = (1..=q)
            .map(|r| Complex64::from_polar(1.0, -std::f64::consts::TAU * ((a * r * r) % q) as f64 / q as f64))
            .sum();
        s.norm() / q as f64
    };
    let mut worst = 0f64;
    let mut bad = Vec::new();
    for q in primes_up_to(101) {
        let mut dev = 0f64;
        for a in 1..q {
            let s = direct(a, q);
            assert!((s - complete_weyl_sum::<f64>(&WeylTriple::new(a, 0, q, 2).unwrap()).norm()).abs() < 1e-12);
            dev = dev.max((s - (q as f64).powf(-0.5)).abs());
        }
        if dev >= 1e-12 {
            bad.push(q);
        }
        worst = worst.max(dev);
    }
    outcome(bad.is_empty(), format!("max deviation {worst:.3e}; failing q = {bad:?}"))
}

fn c3() -> Outcome {
    let r = experiment(json!({"experiment": "kernel-identity", "q_max": 40}));
    outcome(r.pass(), summary(&r))
}

fn c4() -> Outcome {
    let r = experiment(json!({"experiment": "hua-fit", "q_hi": 200, "d": 2}));
    outcome(r.pass(), summary(&r))
}

fn c5() -> Outcome {
    let r = experiment(json!({"experiment": "major-arc-error", "seed": 1, "q_max": 3, "j_min": 8, "j_max": 14}));
    outcome(r.pass(), summary(&r))
}

fn c6() -> Outcome {
    let r = experiment(json!({"experiment": "ej-decay", "seed": 1, "j_min": 8, "j_max": 14}));
    outcome(r.pass(), format!("{}; smoothed {}", summary(&r), r.summary["smoothed"]))
}

fn c7() -> Outcome {
    let mut rng = ChaCha20Rng::seed_from_u64(4);
    let mut worst = 0f64;
    for case in 0..100 {
        let ring = [64usize, 257, 512][case % 3];
        let w = rng.gen_range(1..=ring / 4);
        let r = rng.gen_range(0..=((ring - w - 1) / 2).min(40)) as i64;
        let off = rng.gen_range(-50..50);
        let f = random_signal(&mut rng, off, w);
        let k = random_signal(&mut rng, -r, 2 * r as usize + 1);
        let g = apply_multiplier(&f, &KernelMultiplier::new(k.clone()), ring).unwrap();
        for x in g.range() {
            let direct: Complex64 = k.range().map(|m| k.get(m) * f.get(x - m)).sum();
            worst = worst.max((g.get(x) - direct).norm());
        }
    }
    let r = experiment(json!({"experiment": "carleson", "seed": 6, "n": 512, "grid": 32, "big_j": 9, "ring": 4096}));
    let carleson = r.summary["max_oracle_diff"].as_f64().unwrap();
    outcome(worst < 1e-9 && r.pass(), format!("multiplier max diff {worst:.3e}; carleson max diff {carleson:.3e}"))
}

fn c8() -> Outcome {
    let r = experiment(json!({"experiment": "stationary-phase", "seed": 1, "l_min": 8, "l_max": 14, "samples_per_l": 50}));
    outcome(r.pass(), summary(&r))
}

fn c9() -> Outcome {
    let r = experiment(json!({"experiment": "ttstar", "seed": 1, "s_min": 3, "s_max": 5, "counting": "literal"}));
    let mut distinct = Vec::new();
    for s in 3..=5 {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        rng.set_stream(s as u64);
        distinct.push(ttstar_ratio(s, 2, 64, KsCounting::Distinct, &mut rng).unwrap().0);
    }
    outcome(
        r.pass(),
        format!("literal max ratios {}; distinct-frequency ratios {distinct:.3?}", r.summary["max_ratios"]),
    )
}

fn c10() -> Outcome {
    let r = experiment(json!({"experiment": "xj-restricted", "seed": 1, "seeds": 5, "js": [6, 12]}));
    let norms: Vec<f64> = r
        .rows
        .iter()
        .map(|row| match row[2] {
            monocarleson_bench::report::Cell::Float(v) => v,
            _ => f64::NAN,
        })
        .collect();
    outcome(r.pass(), format!("(j6, j12) per seed: {norms:.4?}"))
}

fn c11() -> Outcome {
    let r = experiment(json!({"experiment": "variation", "n_max": 8, "rs": [1, 2, 3, 0]}));
    outcome(r.pass(), summary(&r))
}

fn c12() -> Outcome {
    let r = experiment(json!({"experiment": "ergodic", "seed": 1, "n": 4096, "big_js": [4, 8, 16, 32], "seeds": 5}));
    outcome(r.pass(), format!("{}; per-seed exponents {}", summary(&r), r.summary["growth_exponents"]))
}

/// Small worked examples with exact expected values.
fn trivial_examples() -> Vec<(&'static str, bool)> {
    let b = BumpFamily64::default();
    let osc = Oscillatory64::default();
    let ap = ApproxParams::defaults(2).unwrap();
    let zero = c(0.0);
    let frac = |a: i64, q: u64| {
        let f = ReducedFraction::reduce(a, q).unwrap();
        (f.num(), f.den())
    };
    let dir = |x: f64, q: u64| {
        let f = dirichlet_approx(x, q).unwrap();
        (f.num(), f.den())
    };
    let names = |q| farey_level(q).iter().map(|f| f.to_string()).collect::<Vec<_>>();
    let ma = MajorArcParams::new(2, 0.1).unwrap();
    let mut rng = ChaCha20Rng::seed_from_u64(99);
    let f = random_signal(&mut rng, 0, 24);
    let mut v = vec![
        ("reduce (2,4)", frac(2, 4) == (1, 2)),
        ("reduce (7,3)", frac(7, 3) == (1, 3)),
        ("reduce (0,5)", frac(0, 5) == (0, 1)),
        ("dirichlet (0.5,10)", dir(0.5, 10) == (1, 2)),
        ("dirichlet (0,7)", dir(0.0, 7) == (0, 1)),
        ("farey 1", names(1) == ["0/1"]),
        ("farey 3", names(3) == ["0/1", "1/3", "1/2", "2/3"]),
        ("major box centre", in_major_box(0.0f64, 0.0, 10, 0, 0, 1, &ma)),
        ("major box 2^-17", !in_major_box(2f64.powi(-17), 0.0, 10, 0, 0, 1, &ma)),
        ("major box wraparound", in_major_box(1.0 - 2f64.powi(-20), 0.0, 10, 0, 0, 1, &ma)),
        ("X_j contains 1/2", xset_contains(0.5f64, 2, 1.0, 2).unwrap()),
        ("X_j contains 0", xset_contains(0.0f64, 1, 0.5, 2).unwrap()),
        ("mobius", mobius(1) == 1 && mobius(4) == 0 && mobius(6) == 1),
        ("divisors", divisors(1) == [1] && divisors(12) == [1, 2, 3, 4, 6, 12]),
        ("weyl q=1", (complete_weyl_sum::<f64>(&WeylTriple::new(0, 0, 1, 2).unwrap()) - c(1.0)).norm() < 1e-15),
        ("incomplete counting", (incomplete_weyl_sum(&PolynomialPhase::new(vec![0.0, 0.0, 0.0], 1, 10)) - c(10.0)).norm() < 1e-13),
        ("incomplete alternating", incomplete_weyl_sum(&PolynomialPhase::new(vec![0.0, 0.5], 1, 10)).norm() < 1e-13),
        ("orthogonality q_max=1", {
            let r = weyl_orthogonality_scan::<f64>(1, 2).unwrap();
            r.triples == 0 && r.max_abs == 0.0
        }),
        ("kernel identity q=1", {
            let (l, r) = weyl_kernel_identity::<f64>(1, 0, 2, 0).unwrap();
            (l - c(1.0)).norm() < 1e-15 && (r - c(1.0)).norm() < 1e-15
        }),
        ("|S(1/2,1/2)| <= 1", complete_weyl_sum::<f64>(&WeylTriple::new(1, 1, 2, 2).unwrap()).norm() <= 1.0),
        ("major arcs excluded", in_log_major_arcs(0.5, 0.5, 10, 2, 2.0) && in_log_major_arcs(0.0, 0.0, 10, 2, 2.0)),
        ("psi_j(0) = 0", b.psi_j(0.0, 5) == 0.0),
        ("psi_j(2^j)", b.psi_j(32.0, 5) == b.psi(1.0) / 32.0),
        ("int psi_j = 0", {
            let v = oscillatory_quadrature(|_| 0.0, |t| b.psi_j(t, 6), &[-128.0, -64.0, -32.0, 32.0, 64.0, 128.0], &osc.quad);
            v.unwrap().norm() < 1e-10
        }),
        ("zero phase, odd amplitude", {
            let v = oscillatory_quadrature(|_| 0.0, |t| b.psi(t), &[-2.0, -1.0, -0.5, 0.5, 1.0, 2.0], &osc.quad);
            v.unwrap().norm() < 1e-10
        }),
        ("H_j(0,0) = 0", osc.h_j(0.0, 0.0, 8, 2).unwrap().norm() < 1e-12),
        ("H_j conjugation", (0..5).all(|i| {
            let (x, y) = (0.001 * i as f64 - 0.002, 0.01 * i as f64 + 0.003);
            (osc.h_j(x, y, 6, 2).unwrap().conj() + osc.h_j(-x, y, 6, 2).unwrap()).norm() < 1e-9
        })),
        ("mu at lambda 0", osc.psi_transform(0.0, 0.0, 2).unwrap().norm() < 1e-12),
        ("mu slab bound", {
            let ctx = PhaseContext::<f64>::for_slab(2, 3, 1.3, 2.0).unwrap();
            osc.mu(&ctx).unwrap().norm() <= 2f64.powi(5)
        }),
        ("critical point 1/2", {
            let ctx = PhaseContext::<f64>::new(2, 4, 3, 2f64.powi(3 - 8), 2.0).unwrap();
            let t = critical_point(-2f64.powi(-1), &ctx).unwrap();
            t.len() == 1 && (t[0] - 0.5).abs() < 1e-15
        }),
        ("critical point d=3, xi>0", {
            let ctx = PhaseContext::<f64>::new(3, 4, 3, 2f64.powi(3 - 12), 2.0).unwrap();
            critical_point(2f64.powi(-1), &ctx).unwrap().is_empty()
        }),
        ("G_hat outside zeta", {
            let ctx = PhaseContext::<f64>::for_slab(2, 4, 1.5, 2.0).unwrap();
            osc.g_hat_direct(10.0 * 2f64.powi(ctx.l - ctx.k), &ctx).unwrap() == zero
        }),
        ("square function of 0", {
            let spec = SquareFunctionSpec { l: 1, k_min: 4, k_max: 5, grid_per_slab: 4, d: 2, ring: 256 };
            let s = osc.square_function_s_g(&Signal::new(0, vec![zero; 16]), &spec).unwrap();
            s.values().iter().all(|v| v.norm() == 0.0)
        }),
        ("square function homogeneity", {
            let spec = SquareFunctionSpec { l: 1, k_min: 4, k_max: 5, grid_per_slab: 4, d: 2, ring: 256 };
            let s1 = osc.square_function_s_g(&f, &spec).unwrap();
            let s2 = osc.square_function_s_g(&f.scale(c(2.0)), &spec).unwrap();
            s1.values().iter().zip(s2.values()).all(|(a, b)| (b.re - 2.0 * a.re).abs() < 1e-12 * (1.0 + a.re))
        }),
        ("dft of delta", {
            let mut d = vec![zero; 16];
            d[0] = c(1.0);
            dft(&d).iter().all(|z| (z - c(1.0)).norm() < 1e-15)
        }),
        ("dft of ones", {
            let o = dft(&vec![c(1.0); 16]);
            (o[0] - c(16.0)).norm() < 1e-12 && o[1..].iter().all(|z| z.norm() < 1e-12)
        }),
        ("identity multiplier", apply_multiplier(&f, &SymbolFn(|_b: f64| c(1.0)), 128).unwrap().max_abs_diff(&f) < 1e-13),
        ("modulation is translation", {
            let g = apply_multiplier(&f, &SymbolFn(|t: f64| Complex64::from_polar(1.0, -std::f64::consts::TAU * 7.0 * t)), 128);
            g.unwrap().max_abs_diff(&f.translate(7)) < 1e-12
        }),
        ("M_j(0,0) = 0", multiplier_mj(0.0, 0.0, 6, 2, &b).norm() < 1e-15),
        ("M_j periodic", (multiplier_mj(0.3, 0.7, 6, 2, &b) - multiplier_mj(1.3, 0.7, 6, 2, &b)).norm() < 1e-9),
        ("M(0,0) = 0", multiplier_m(0.0, 0.0, 2, 8, &b).unwrap().norm() < 1e-13),
        ("M(0, beta) imaginary", multiplier_m(0.0, 0.37, 2, 7, &b).unwrap().re.abs() < 1e-13),
        ("carleson delta", {
            let out = carleson_apply(&Signal64::delta(0), &LambdaGrid64::uniform(8).unwrap(), 2, 6, 1024, &b).unwrap();
            out.get(0).norm() < 1e-12 && (1..=64i64).all(|x| (out.get(x).re - 1.0 / x as f64).abs() < 1e-12)
        }),
        ("carleson grid {0}", {
            let out = carleson_apply(&f, &LambdaGrid64::explicit(vec![0.0]).unwrap(), 2, 7, 1024, &b).unwrap();
            let h = apply_multiplier(&f, &kernel_m(0.0, 2, 7, &b), 1024).unwrap();
            out.range().all(|x| out.get(x).re == h.get(x).norm())
        }),
        ("carleson empty grid", carleson_apply(&f, &LambdaGrid64::explicit(vec![]).unwrap(), 2, 4, 256, &b).is_err()),
        ("K_j with zero linearizers", {
            let ctx = TTStarContext::new(5, 2, |_| 0.0, |_| 0.0).unwrap();
            let k = ttstar_kernel_kj(3, -4, &ctx, &b).unwrap();
            let auto: f64 = (-200..200).map(|m| b.psi_j((3 - m) as f64, 5) * b.psi_j((-4 - m) as f64, 5)).sum();
            (k - c(auto)).norm() < 1e-14
        }),
        ("K_j triangle bound", {
            let ctx = TTStarContext::new(5, 2, |x| (x.rem_euclid(7) as f64) / 7.0, |n| (n.rem_euclid(5) as f64) / 5.0).unwrap();
            let k = ttstar_kernel_kj(10, -13, &ctx, &b).unwrap();
            let bound: f64 = (-200..200).map(|m| (b.psi_j((10 - m) as f64, 5) * b.psi_j((-13 - m) as f64, 5)).abs()).sum();
            k.norm() <= bound + 1e-15
        }),
        ("K_s at s=1", {
            let u = ReducedFraction::new(0, 1).unwrap();
            let ctx = WeylLinearizers::new(1, 2, move |_| u, move |_| u).unwrap();
            let ring = ks_minimum_ring(1);
            let k = ttstar_kernel_ks::<f64>(5, 0, &ctx, ring, KsCounting::Literal, &b).unwrap();
            (k - c(phi_s_autocorrelation::<f64>(5, 1, ring, &b).unwrap())).norm() < 1e-15
        }),
        ("variation of a constant", r_variation(&vec![c(2.0); 6], 1.5).unwrap() == 0.0),
        ("variation [0,1,0,1], r=1", (r_variation(&[c(0.0), c(1.0), c(0.0), c(1.0)], 1.0).unwrap() - 3.0).abs() < 1e-15),
        ("oscillation, single anchor", {
            let iv = dyadic_intervals::<f64>(&[1, 2], 2).unwrap();
            oscillation_sum(&f, &iv, 1, 2, 5, 256, &b).unwrap() == 0.0
        }),
        ("oscillation of 0", {
            let iv = dyadic_intervals::<f64>(&[1, 2, 3], 2).unwrap();
            oscillation_sum(&Signal::new(0, vec![zero; 8]), &iv, 4, 2, 5, 256, &b).unwrap() == 0.0
        }),
        ("L_js off the cutoffs", osc.l_js(0.3819660113, 0.4, 10, 3, &ap).unwrap().value == zero),
        ("L_j1 single centre", {
            let w = ap.xset(10).unwrap().width::<f64>();
            let v = osc.l_js(0.5 * w, 0.01, 10, 1, &ap).unwrap().value;
            let want = osc.h_j(0.5 * w, 0.01, 10, 2).unwrap() * osc.chi_s(0.5 * w, 1, &ap).unwrap() * osc.chi_s(0.01, 1, &ap).unwrap();
            (v - want).norm() < 1e-15
        }),
        ("L_j at j=1", osc.l_j(1e-3, 0.2, 1, &ap).unwrap() == zero),
        ("L_j additivity", {
            let (l, be) = (1.0 / 3.0 + 2f64.powi(-22), 2.0 / 3.0 + 2f64.powi(-12));
            let parts: Complex64 = ap.s_range(10).map(|s| osc.l_js(l, be, 10, s, &ap).unwrap().value).sum();
            osc.l_j(l, be, 10, &ap).unwrap() == parts
        }),
        ("E_j off X_j", !ap.xset(10).unwrap().contains(0.00015) && osc.error_ej(0.00015, 0.2, 10, &ap).unwrap() == zero),
        ("E_j(0,0) = 0", osc.error_ej(0.0, 0.0, 10, &ap).unwrap().norm() < 1e-12),
        ("Q_max=1 box", {
            let r = osc.major_box_error_scan(10, &ap, 1, 0, &mut rng).unwrap();
            r.boxes == 1 && (r.center_errors[0].3 - multiplier_mj(0.0, 0.0, 10, 2, &b).norm()).abs() < 1e-15
        }),
        ("restricted sup, grid inside X_j", {
            let g = LambdaGrid64::explicit(vec![0.0, 0.25, 1.0 / 3.0, 0.5]).unwrap();
            restricted_sup_outside_xj(&f, 6, &g, &ap, 1 << 12, &osc).unwrap().norm_l2 == 0.0
        }),
        ("restricted sup, delta", {
            let r = restricted_sup_outside_xj(&Signal64::delta(0), 8, &LambdaGrid64::uniform(64).unwrap(), &ap, 1 << 12, &osc);
            r.unwrap().norm_l2 < 4.0
        }),
        ("ergodic constant", {
            let run = ergodic_demo(&vec![c(1.0); 128], &[1, 2, 3, 4], 4, 2, 5, &b).unwrap();
            run.increments.iter().all(|&v| v < 1e-12)
        }),
        ("ergodic single entry", ergodic_demo(&vec![c(1.0); 128], &[3], 4, 2, 5, &b).unwrap().increments.is_empty()),
    ];
    let delta = experiment(json!({"experiment": "carleson", "signal": "delta", "big_j": 6, "ring": 512}));
    v.push(("carleson experiment, delta", delta.pass()));
    v
}

/// Re-runs the 50-digit reference script and compares every value with the
/// current computation at the frozen tolerances.
fn oracle_fixtures() -> Result<usize, String> {
    let script = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/oracle/fixtures.py");
    let out = Command::new("python3").arg(script).output().map_err(|e| format!("python3 unavailable: {e}"))?;
    if !out.status.success() {
        return Err(format!("oracle script failed: {}", String::from_utf8_lossy(&out.stderr).lines().last().unwrap_or("")));
    }
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    let get = |name: &str| -> Result<Complex64, String> {
        let line = text.lines().find(|l| l.starts_with(&format!("{name}:"))).ok_or(format!("{name} missing"))?;
        let num = |tag: &str| -> f64 {
            let s = line.split(tag).nth(1).unwrap().split_whitespace().next().unwrap();
            s.parse().unwrap()
        };
        Ok(Complex64::new(num("re="), num("im=")))
    };
    let b = BumpFamily64::default();
    let osc = Oscillatory64::default();
    let ap = ApproxParams::defaults(2).unwrap();
    let (lam, beta) = (1.0 / 3.0 + 2f64.powi(-22), 2.0 / 3.0 + 2f64.powi(-12));
    let half = 0.5 + 2f64.powi(-25);
    let ctx = TTStarContext::new(6, 2, |x| x as f64 / 4096.0, |_| 0.0).unwrap();
    let cases: Vec<(&str, Complex64, f64)> = vec![
        ("incomplete_sqrt2", incomplete_weyl_sum(&PolynomialPhase::new(vec![0.0, 0.0, 2f64.sqrt() - 1.0], 1, 1000)), 1e-11),
        ("mj_5", multiplier_mj(0.25, 1.0 / 3.0, 5, 2, &b), 1e-14),
        ("m_8", multiplier_m(0.5, 0.5, 2, 8, &b).unwrap(), 1e-12),
        ("m_8_offsym", multiplier_m(0.3, 0.1, 2, 8, &b).unwrap(), 1e-12),
        ("kj_6", ttstar_kernel_kj(10, -10, &ctx, &b).unwrap(), 1e-16),
        ("ljs_10_2", osc.l_js(half, 0.5, 10, 2, &ap).unwrap().value, 1e-12),
        ("ljs_10_2_offsym", osc.l_js(half, 0.5 + 2f64.powi(-13), 10, 2, &ap).unwrap().value, 1e-9),
        ("lj_10", osc.l_j(lam, beta, 10, &ap).unwrap(), 1e-9),
    ];
    for (name, got, tol) in &cases {
        let want = get(name)?;
        if (got - want).norm() >= *tol {
            return Err(format!("{name}: got {got}, oracle {want}"));
        }
    }
    Ok(cases.len())
}

fn c13() -> Outcome {
    let ex = trivial_examples();
    let failed: Vec<&str> = ex.iter().filter(|e| !e.1).map(|e| e.0).collect();
    let (ok, oracle) = match oracle_fixtures() {
        Ok(n) => (true, format!("{n} oracle fixtures regenerated and matched")),
        Err(e) if e.starts_with("python3 unavailable") => (true, format!("oracle not rerun ({e})")),
        Err(e) => (false, e),
    };
    outcome(failed.is_empty() && ok, format!("{} trivial examples, failing {failed:?}; {oracle}", ex.len()))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, u64, fn() -> Outcome); 13] = [
        (1, "Weyl orthogonality", 30, c1),
        (2, "Gauss-sum magnitude", 5, c2),
        (3, "kernel identity", 60, c3),
        (4, "Hua exponent", 120, c4),
        (5, "major-box approximation decay", 600, c5),
        (6, "E_j decay", 600, c6),
        (7, "oracle equivalence", 60, c7),
        (8, "stationary phase", 600, c8),
        (9, "TT* kernel claim", 300, c9),
        (10, "outside-X_j decay", 300, c10),
        (11, "r-variation", 60, c11),
        (12, "ergodic oscillation", 600, c12),
        (13, "trivial examples and oracle fixtures", 600, c13),
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut unexpected = Vec::new();
    for (n, title, budget, f) in criteria {
        if !filter.is_empty() && !filter.contains(&n) {
            continue;
        }
        let t = Instant::now();
        let o = f();
        let dt = t.elapsed();
        let in_time = dt <= Duration::from_secs(budget);
        let pass = o.pass && in_time;
        let known = KNOWN_FAILURES.iter().find(|k| k.0 == n);
        let tag = match (pass, known) {
            (true, _) => "PASS",
            (false, Some(_)) => "FAIL (known)",
            (false, None) => "FAIL",
        };
        println!("criterion {n:>2} {tag:<12} {title}: {} [{:.1} s, budget {budget} s]", o.detail, dt.as_secs_f64());
        if let (false, Some(k)) = (pass, known) {
            println!("              reason: {}", k.1);
        }
        if !pass && known.is_none() {
            unexpected.push(n);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
