//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smilansky::asymptotics::{comparison_check, counting_law_ratio, predict_count_a};
use smilansky::jacobi::*;
use smilansky::pollaczek::PollaczekParams;
use smilansky::smilansky::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn pollaczek_oracle() -> Outcome {
    let p = PollaczekParams::new(1.0, 0.5).map_err(|e| e.to_string())?;
    let seq = OffDiagSequence::pollaczek(p);
    let eigs = eigs_outside(&seq, 5000, &SpectralQuery::above(1.0).with_k_max(3))
        .map_err(|e| e.to_string())?;
    let want = [2.0 / 3f64.sqrt(), 1.0327956, 1.0141851];
    let mut worst = 0.0f64;
    for (k, w) in want.iter().enumerate() {
        let got = eigs.get(k).copied().unwrap_or(f64::NAN);
        let closed = p.mu_k(k).map_err(|e| e.to_string())?;
        worst = worst
            .max(((got - w) / w).abs())
            .max(((got - closed) / closed).abs());
    }
    let policy = TruncationPolicy::default();
    let mut counts = Vec::new();
    let mut equal = true;
    for s in [1.01, 1.05, 1.1, 1.2] {
        let engine = stabilized_count(&seq, s, Side::Above, &policy).map_err(|e| e.to_string())?;
        let closed = p.count_above(s).map_err(|e| e.to_string())?;
        equal &= engine.stabilized && engine.count == closed;
        counts.push(format!("s={s}: {}/{closed}", engine.count));
    }
    check(
        eigs.len() >= 3 && worst <= 1e-4 && equal,
        format!(
            "top-3 max rel err {worst:.2e} at N=5000; engine/closed counts {}",
            counts.join(", ")
        ),
    )
}

fn birman_schwinger() -> Outcome {
    let policy = TruncationPolicy::default();
    let mut rows = Vec::new();
    let mut ok = true;
    for alpha in [0.8, 1.0, 1.2, 1.3] {
        for eps in [0.1, 0.25] {
            let problem = SmilanskyProblem::new(alpha, eps).map_err(|e| e.to_string())?;
            let grid = ModeSpaceGrid::default_for(eps, DEFAULT_MODES).map_err(|e| e.to_string())?;
            let c = birman_schwinger_check(&StarGraphSpec::line(), &problem, &grid, &policy)
                .map_err(|e| e.to_string())?;
            ok &= c.passed;
            rows.push(format!(
                "({alpha},{eps}):{}/{}",
                c.operator_count, c.jacobi_count
            ));
        }
    }
    check(ok, format!("operator/jacobi counts {}", rows.join(" ")))
}

fn sandwich() -> Outcome {
    let policy = TruncationPolicy::default();
    let mut rows = Vec::new();
    let mut ok = true;
    for alpha in [1.2, 1.3] {
        for eps in [0.1, 0.05, 0.02] {
            let problem = SmilanskyProblem::new(alpha, eps).map_err(|e| e.to_string())?;
            let grid = ModeSpaceGrid::default_for(eps, DEFAULT_MODES).map_err(|e| e.to_string())?;
            let c = sandwich_check(&problem, &grid, &policy).map_err(|e| e.to_string())?;
            ok &= c.passed;
            rows.push(format!(
                "({alpha},{eps}):{} vs J0 {}",
                c.operator_count, c.j0_count
            ));
        }
    }
    check(ok, rows.join(" "))
}

fn j0_counting_law() -> Outcome {
    let seq = OffDiagSequence::<f64>::j0();
    let policy = TruncationPolicy::default();
    let mut rows = Vec::new();
    let mut ratios = Vec::new();
    let mut ok = true;
    for d in [1e-2, 3e-3, 1e-3] {
        let s = 1.0 + d;
        let r = stabilized_count(&seq, s, Side::Above, &policy).map_err(|e| e.to_string())?;
        let ratio = counting_law_ratio(s, r.count, 0.125);
        ok &= r.stabilized && (0.7..=1.3).contains(&ratio);
        ratios.push(ratio);
        rows.push(format!(
            "s-1={d:e}: N={} (trunc {}) ratio {ratio:.3}",
            r.count, r.n_used
        ));
    }
    let toward_one = ratios
        .windows(2)
        .all(|w| (w[1] - 1.0).abs() <= (w[0] - 1.0).abs());
    ok &= toward_one;
    check(
        ok,
        format!("{}; monotone approach to 1: {toward_one}", rows.join(", ")),
    )
}

fn final_asymptotic() -> Outcome {
    let seq = OffDiagSequence::<f64>::j0();
    let policy = TruncationPolicy::default();
    let mut rows = Vec::new();
    let mut ok = true;
    for alpha in [1.40f64, 1.41] {
        let s = 2f64.sqrt() / alpha;
        let count = stabilized_count(&seq, s, Side::Above, &policy).map_err(|e| e.to_string())?;
        let pred = predict_count_a(alpha).map_err(|e| e.to_string())?;
        let band = 2f64.max(0.3 * pred);
        ok &= count.stabilized && (count.count as f64 - pred).abs() <= band;
        rows.push(format!(
            "alpha={alpha}: N={} prediction {pred:.3} band {band:.2}",
            count.count
        ));
    }
    check(ok, rows.join(", "))
}

fn interface_error(alpha: f64, eps: f64, h: f64) -> Result<f64, String> {
    let grid = ModeSpaceGrid::new(32, 24.0, h).map_err(|e| e.to_string())?;
    let problem = SmilanskyProblem::new(alpha, eps).map_err(|e| e.to_string())?;
    let iface = interface_schur(&problem, &grid).map_err(|e| e.to_string())?;
    let (diag, off) = iface.symmetrized(&iface.continuum_diag());
    let j = OffDiagSequence::j_eps(eps).map_err(|e| e.to_string())?;
    let c = alpha / 2f64.sqrt();
    let mut worst = diag.iter().map(|d| (d - 1.0).abs()).fold(0.0, f64::max);
    for (i, v) in off.iter().enumerate() {
        worst = worst.max((v - c * j.entry(i + 1).map_err(|e| e.to_string())?).abs());
    }
    Ok(worst)
}

fn interface_identity() -> Outcome {
    let errs = [1.0 / 64.0, 1.0 / 128.0, 1.0 / 256.0]
        .iter()
        .map(|&h| interface_error(1.0, 0.25, h))
        .collect::<Result<Vec<_>, _>>()?;
    let orders = [(errs[0] / errs[1]).log2(), (errs[1] / errs[2]).log2()];
    let ok = errs[1] <= 1e-3 && orders.iter().all(|o| (o - 2.0).abs() <= 0.1);
    check(
        ok,
        format!(
            "max entry error {:.3e} at h=1/128 (1/64: {:.3e}, 1/256: {:.3e}); orders {:.3}, {:.3}",
            errs[1], errs[0], errs[2], orders[0], orders[1]
        ),
    )
}

fn random_family(rng: &mut ChaCha8Rng) -> OffDiagSequence<f64> {
    match rng.gen_range(0..4) {
        0 => OffDiagSequence::j0(),
        1 => OffDiagSequence::j_eps(rng.gen_range(0.01..=0.5)).unwrap(),
        2 => {
            let r = rng.gen_range(0.05..0.95);
            OffDiagSequence::pollaczek(
                PollaczekParams::new(r + rng.gen_range(0.01..2.0), r).unwrap(),
            )
        }
        _ => OffDiagSequence::constant(rng.gen_range(0.2..1.2)).unwrap(),
    }
}

fn property_suite(seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for _ in 0..100 {
        let seq = random_family(&mut rng);
        let n = rng.gen_range(1..4000);
        let s = rng.gen_range(0.0..2.0);
        let up = sturm_count(&seq, n, s, Side::Above).map_err(|e| e.to_string())?;
        let down = sturm_count(&seq, n, -s, Side::Below).map_err(|e| e.to_string())?;
        if up.count != down.count {
            return Err(format!(
                "symmetry: {} above {s}, {} below {}",
                up.count, down.count, -s
            ));
        }
        let t = rng.gen_range(0.0..2.0);
        let (lo, hi) = if s < t { (s, t) } else { (t, s) };
        let c_lo = sturm_count(&seq, n, lo, Side::Above)
            .map_err(|e| e.to_string())?
            .count;
        let c_hi = sturm_count(&seq, n, hi, Side::Above)
            .map_err(|e| e.to_string())?
            .count;
        if c_lo < c_hi {
            return Err(format!("monotonicity: N({lo})={c_lo} < N({hi})={c_hi}"));
        }
    }

    for _ in 0..4 {
        let modes = rng.gen_range(1..=8);
        let bonds = rng.gen_range(1..=3);
        let lengths = (0..bonds)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    BondLength::Infinite
                } else {
                    BondLength::Finite(rng.gen_range(1..=16) as f64 * 0.25)
                }
            })
            .collect();
        let star = StarGraphSpec::new(lengths).map_err(|e| e.to_string())?;
        let alpha = rng.gen_range(0.0..bonds as f64 / 2f64.sqrt());
        let grid = ModeSpaceGrid::new(modes, 10.0, 0.125).map_err(|e| e.to_string())?;
        let problem = SmilanskyProblem::new(alpha, 0.25).map_err(|e| e.to_string())?;
        let eigs = common::dense_pencil_eigs(
            &assemble_star(&star, &problem, &grid).map_err(|e| e.to_string())?,
        );
        for _ in 0..5 {
            let lambda = rng.gen_range(0.0..3.0);
            let got = inertia_below(&star, alpha, &grid, lambda)
                .map_err(|e| e.to_string())?
                .total();
            let dense = eigs.iter().filter(|&&x| x < lambda).count();
            if got != dense {
                return Err(format!(
                    "inertia {got} vs dense {dense} (M={modes}, m={bonds}, lambda={lambda})"
                ));
            }
        }
    }

    let (nodes, weights) = common::gauss_hermite(60);
    let count = 16;
    let mut gram = vec![0.0; count * count];
    for (&y, &w) in nodes.iter().zip(&weights) {
        let chi = hermite_values::<f64>(count, y);
        let w = w * (y * y).exp();
        for m in 0..count {
            for n in 0..count {
                gram[m * count + n] += w * chi[m] * chi[n];
            }
        }
    }
    let probe = rng.gen_range(0..count * count);
    let worst = gram
        .iter()
        .enumerate()
        .map(|(i, g)| (g - if i / count == i % count { 1.0 } else { 0.0 }).abs())
        .fold(0.0, f64::max);
    if worst > 1e-8 || !gram[probe].is_finite() {
        return Err(format!("Hermite Gram deviation {worst:e}"));
    }

    let policy = TruncationPolicy::new(1024, 2, 2, 1 << 18).map_err(|e| e.to_string())?;
    for _ in 0..3 {
        let a = rng.gen_range(0.01..=0.5);
        let b = rng.gen_range(0.01..=0.5);
        let (small, large) = if a > b { (a, b) } else { (b, a) };
        let s = rng.gen_range(1.005..1.2);
        let rows = comparison_check(
            &OffDiagSequence::j_eps(small).map_err(|e| e.to_string())?,
            &OffDiagSequence::j_eps(large).map_err(|e| e.to_string())?,
            &[s],
            &policy,
        )
        .map_err(|e| e.to_string())?;
        if !rows[0].ordered {
            return Err(format!(
                "comparison J({small}) vs J({large}) at s={s}: {:?}",
                rows[0]
            ));
        }
    }
    Ok(())
}

fn property_suites() -> Outcome {
    let mut failures = Vec::new();
    for seed in 1..=5 {
        if let Err(e) = property_suite(seed) {
            failures.push(format!("seed {seed}: {e}"));
        }
    }
    check(
        failures.is_empty(),
        if failures.is_empty() {
            "symmetry, monotonicity, inertia vs dense, Hermite Gram, comparison ordering for seeds 1..5".into()
        } else {
            failures.join("; ")
        },
    )
}

fn star_graph() -> Outcome {
    let policy = TruncationPolicy::default();
    let problem = SmilanskyProblem::new(1.0, 0.25).map_err(|e| e.to_string())?;
    let grid = ModeSpaceGrid::default_for(0.25, DEFAULT_MODES).map_err(|e| e.to_string())?;
    let star3 = StarGraphSpec::infinite(3).map_err(|e| e.to_string())?;
    let c = birman_schwinger_check(&star3, &problem, &grid, &policy).map_err(|e| e.to_string())?;

    let star2 = StarGraphSpec::infinite(2).map_err(|e| e.to_string())?;
    let mut identical = true;
    for alpha in [0.8f64, 1.0, 1.3] {
        let p = SmilanskyProblem::new(alpha, 0.25).map_err(|e| e.to_string())?;
        identical &= star_graph_count(&star2, &p, &grid).map_err(|e| e.to_string())?
            == count_below(&p, &grid).map_err(|e| e.to_string())?;
        let a = interface_schur_star(&star2, &p, &grid).map_err(|e| e.to_string())?;
        let b = interface_schur(&p, &grid).map_err(|e| e.to_string())?;
        identical &= a
            .diag
            .iter()
            .zip(&b.diag)
            .all(|(x, y)| x.to_bits() == y.to_bits())
            && a.off
                .iter()
                .zip(&b.off)
                .all(|(x, y)| x.to_bits() == y.to_bits());
    }
    check(
        c.passed && identical,
        format!(
            "m=3: operator {} vs N+({:.4}; J(0.25)) = {}; m=2 bit-identical to line: {identical}",
            c.operator_count, c.s, c.jacobi_count
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 Pollaczek closed-form oracle", pollaczek_oracle),
        ("2 Birman-Schwinger equality", birman_schwinger),
        ("3 J0 sandwich", sandwich),
        ("4 J0 counting asymptotics", j0_counting_law),
        ("5 coupling asymptotic band", final_asymptotic),
        ("6 interface Schur identity", interface_identity),
        ("7 property suites", property_suites),
        ("8 star graph", star_graph),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {name}: PASS ({secs:.2}s) {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {name}: FAIL ({secs:.2}s) {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
