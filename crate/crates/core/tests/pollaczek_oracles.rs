mod common;

use smilansky::jacobi::{eigs_outside, OffDiagSequence, SpectralQuery};
use smilansky::pollaczek::*;

fn params(lambda: f64, r: f64) -> PollaczekParams<f64> {
    PollaczekParams::new(lambda, r).unwrap()
}

#[test]
fn monic_matches_dense_characteristic_polynomial() {
    for (lambda, r) in [(1.0, 0.5), (1.5, 0.25), (2.0, 0.9)] {
        let p = params(lambda, r);
        let seq = OffDiagSequence::pollaczek(p);
        for n in [1usize, 2, 5, 16, 33, 64] {
            let off = seq.couplings(n);
            for i in 0..=40 {
                let x = -2.0 + 0.1 * i as f64 + 0.0123;
                let q = p.monic_eval(n, x).unwrap();
                let det = common::dense_char_poly(&off, x);
                let scale = det.abs().max(q.abs()).max(1e-300);
                assert!(
                    (q - det).abs() <= 1e-8 * scale,
                    "lambda={lambda} r={r} n={n} x={x}: {q} vs {det}"
                );
            }
        }
    }
}

#[test]
fn degree_two_roots_are_two_by_two_eigenvalues() {
    let p = params(1.0, 0.5);
    let b = OffDiagSequence::pollaczek(p).couplings(2)[0];
    // Eigenvalues of [[0, b], [b, 0]] are ±b.
    for root in [b, -b] {
        assert!(p.monic_eval(2, root).unwrap().abs() < 1e-12);
    }
    assert!((b * b - 2.0 / 3.0).abs() < 1e-12);
}

#[test]
fn degree_fifty_has_fifty_simple_real_roots() {
    let p = params(1.0, 0.5);
    let points = 600_001;
    let mut changes = 0;
    let mut prev = p.monic_eval(50, -1.5).unwrap();
    for i in 1..points {
        let x = -1.5 + 3.0 * i as f64 / (points - 1) as f64;
        let v = p.monic_eval(50, x).unwrap();
        if v.signum() != prev.signum() {
            changes += 1;
        }
        prev = v;
    }
    assert_eq!(changes, 50);
}

#[test]
fn closed_form_count_matches_enumeration() {
    for (lambda, r) in [(1.0, 0.5), (1.5, 0.25), (2.0, 0.9), (1.0, 0.9), (3.0, 2.5)] {
        let p = params(lambda, r);
        for s in [1.0001, 1.001, 1.01, 1.05, 1.1, 1.2, 1.5, 3.0] {
            let cutoff = (r * s / (s * s - 1.0f64).sqrt()).ceil() as usize + 2;
            let enumerated = (0..=cutoff).filter(|&k| p.mu_k(k).unwrap() > s).count();
            assert_eq!(
                p.count_above(s).unwrap(),
                enumerated,
                "lambda={lambda} r={r} s={s}"
            );
        }
    }
}

#[test]
fn mu_expansion_coefficient() {
    // k²(μ_k - 1) → r²/2, with relative gap ≈ 2λ/k from the shift k + λ.
    for (lambda, r, k) in [
        (0.3, 0.25, 100usize),
        (0.45, 0.4, 100),
        (1.0, 0.5, 250),
        (2.0, 0.9, 500),
    ] {
        let p = params(lambda, r);
        let v = (k * k) as f64 * (p.mu_k(k).unwrap() - 1.0);
        let want = r * r / 2.0;
        assert!(
            (v - want).abs() < 0.01 * want,
            "lambda={lambda} r={r} k={k}: {v} vs {want}"
        );
        let shifted = (k as f64 + lambda).powi(2) * (p.mu_k(k).unwrap() - 1.0);
        assert!((shifted - want).abs() < 1e-4 * want);
    }
}

#[test]
fn entries_expand_as_half_plus_r_over_2n() {
    for (lambda, r) in [(1.0, 0.5), (2.0, 0.9)] {
        let seq = OffDiagSequence::pollaczek(params(lambda, r));
        for n in [1000usize, 10_000] {
            let b = seq.entry(n).unwrap();
            let resid = (b - 0.5 - r / 2.0 / n as f64) * (n * n) as f64;
            assert!(resid.abs() < 5.0, "n={n}: n²·remainder = {resid}");
        }
    }
}

#[test]
fn engine_top_eigenvalues() {
    let p = params(1.0, 0.5);
    let seq = OffDiagSequence::pollaczek(p);
    let got = eigs_outside(&seq, 5000, &SpectralQuery::above(1.01)).unwrap();
    let want = [1.1547005, 1.0327956, 1.0141851];
    assert_eq!(got.len(), 3);
    for k in 0..3 {
        assert!((got[k] - want[k]).abs() < 1e-4);
        assert!((got[k] - p.mu_k(k).unwrap()).abs() < 1e-4);
    }
}
