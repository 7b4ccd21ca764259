//! Band-edge asymptotics for Jacobi matrices with entries `1/2 + q/n + o(1/n)`.
//!
//! Such a matrix has infinitely many eigenvalues `λ_k > 1` with
//! `λ_k = 1 + 2q²/k² (1 + o(1))`, equivalently
//! `N₊(s) ~ q sqrt(2) / sqrt(s - 1)` as `s ↓ 1`. The checks here compute the
//! normalized ratios (which tend to 1) from stabilized truncations.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jacobi::{
    stabilized_count, stabilized_eigs, OffDiagSequence, Side, SpectralQuery, TruncationPolicy,
};
use crate::Scalar;

pub const MIN_WINDOW_POINTS: usize = 8;
pub const MIN_WINDOW_INDEX: usize = 10;

/// Estimate of `q` in `b_n = 1/2 + q/n (1 + o(1))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticFit<T: Scalar> {
    pub q_hat: T,
    pub window: (usize, usize),
    /// Largest relative deviation of `n (b_n - 1/2)` from `q_hat` over the
    /// window (absolute when `q_hat = 0`).
    pub residual: T,
}

/// Median of `n (b_n - 1/2)` over `lo..=hi`.
pub fn estimate_q<T: Scalar>(
    seq: &OffDiagSequence<T>,
    lo: usize,
    hi: usize,
) -> Result<AsymptoticFit<T>> {
    let len = if hi >= lo { hi - lo + 1 } else { 0 };
    if len < MIN_WINDOW_POINTS || lo < MIN_WINDOW_INDEX {
        return Err(Error::Window {
            lo,
            hi,
            len,
            min: MIN_WINDOW_POINTS,
        });
    }
    let half = T::lit(0.5);
    let mut samples = (lo..=hi)
        .map(|n| seq.entry(n).map(|b| T::from_usize_lossy(n) * (b - half)))
        .collect::<Result<Vec<T>>>()?;
    samples.sort_by(|a, b| a.partial_cmp(b).expect("finite entries"));
    let mid = samples.len() / 2;
    let q_hat = if samples.len() % 2 == 1 {
        samples[mid]
    } else {
        (samples[mid - 1] + samples[mid]) / T::lit(2.0)
    };
    let scale = if q_hat == T::zero() {
        T::one()
    } else {
        q_hat.abs()
    };
    let residual = samples
        .iter()
        .map(|x| (*x - q_hat).abs() / scale)
        .fold(T::zero(), T::max);
    Ok(AsymptoticFit {
        q_hat,
        window: (lo, hi),
        residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenLawRow<T: Scalar> {
    /// 1-based rank from the top.
    pub k: usize,
    pub lambda_k: T,
    /// `k² (λ_k - 1) / (2q²)`.
    pub ratio: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenLawTable<T: Scalar> {
    pub q: T,
    pub rows: Vec<EigenLawRow<T>>,
    pub n_used: usize,
    pub stabilized: bool,
    /// Set when some requested ranks had no eigenvalue above 1 at the final
    /// truncation.
    pub note: Option<String>,
}

pub fn eigen_law_ratio<T: Scalar>(k: usize, lambda_k: T, q: T) -> T {
    let kf = T::from_usize_lossy(k);
    kf * kf * (lambda_k - T::one()) / (T::lit(2.0) * q * q)
}

/// Table of `(k, λ_k, k²(λ_k-1)/(2q²))` for the requested 1-based ranks.
pub fn check_eigenvalue_law<T: Scalar>(
    seq: &OffDiagSequence<T>,
    q: T,
    ranks: &[usize],
    policy: &TruncationPolicy,
) -> Result<EigenLawTable<T>> {
    if !(q > T::zero()) {
        return Err(Error::domain("q", q.as_f64(), "(0, inf)"));
    }
    if ranks.contains(&0) {
        return Err(Error::Index {
            index: 0,
            reason: "eigenvalue ranks are 1-based",
        });
    }
    let k_max = ranks.iter().copied().max().unwrap_or(0);
    let query = SpectralQuery::above(T::one()).with_k_max(k_max);
    let report = stabilized_eigs(seq, &query, policy)?;
    let mut rows = Vec::new();
    let mut missing = Vec::new();
    for &k in ranks {
        match report.values.get(k - 1) {
            Some(&lambda_k) => rows.push(EigenLawRow {
                k,
                lambda_k,
                ratio: eigen_law_ratio(k, lambda_k, q),
            }),
            None => missing.push(k),
        }
    }
    let note = (!missing.is_empty()).then(|| {
        format!(
            "ranks {missing:?} not available: {} eigenvalues above 1 at N = {}",
            report.values.len(),
            report.n_used
        )
    });
    Ok(EigenLawTable {
        q,
        rows,
        n_used: report.n_used,
        stabilized: report.stabilized,
        note,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountingLawRow<T: Scalar> {
    pub s: T,
    pub count: usize,
    /// `N₊(s) sqrt(s - 1) / (q sqrt 2)`.
    pub ratio: T,
    pub n_used: usize,
    pub stabilized: bool,
}

pub fn counting_law_ratio<T: Scalar>(s: T, count: usize, q: T) -> T {
    T::from_usize_lossy(count) * (s - T::one()).sqrt() / (q * T::SQRT_2())
}

/// One row per threshold, in input order; non-stabilized rows are flagged.
pub fn check_counting_law<T: Scalar>(
    seq: &OffDiagSequence<T>,
    q: T,
    thresholds: &[T],
    policy: &TruncationPolicy,
) -> Result<Vec<CountingLawRow<T>>> {
    if !(q > T::zero()) {
        return Err(Error::domain("q", q.as_f64(), "(0, inf)"));
    }
    if let Some(&s) = thresholds.iter().find(|&&s| !(s > T::one())) {
        return Err(Error::domain("s", s.as_f64(), "(1, inf)"));
    }
    thresholds
        .par_iter()
        .map(|&s| {
            let r = stabilized_count(seq, s, Side::Above, policy)?;
            Ok(CountingLawRow {
                s,
                count: r.count,
                ratio: counting_law_ratio(s, r.count, q),
                n_used: r.n_used,
                stabilized: r.stabilized,
            })
        })
        .collect()
}

/// `1 / (4 sqrt(2 (s(α) - 1)))` with `s(α) = sqrt(2)/α`.
pub fn predict_count_a<T: Scalar>(alpha: T) -> Result<T> {
    if !(alpha > T::zero() && alpha < T::SQRT_2()) {
        return Err(Error::domain("alpha", alpha.as_f64(), "(0, sqrt(2))"));
    }
    let s = T::SQRT_2() / alpha;
    Ok(T::one() / (T::lit(4.0) * (T::lit(2.0) * (s - T::one())).sqrt()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparisonRow<T: Scalar> {
    pub s: T,
    pub count_small: usize,
    pub count_large: usize,
    pub ordered: bool,
    pub n_small: usize,
    pub n_large: usize,
}

/// Relative slack for the entrywise domination test; entries of nearby
/// families agree to a few ulps far out in the sequence.
const DOMINATION_SLACK_ULPS: f64 = 8.0;

/// Verifies `1/2 ≤ small_i ≤ large_i` at every coupling position of the
/// largest truncation, then compares stabilized counts above each `s`.
pub fn comparison_check<T: Scalar>(
    small: &OffDiagSequence<T>,
    large: &OffDiagSequence<T>,
    thresholds: &[T],
    policy: &TruncationPolicy,
) -> Result<Vec<ComparisonRow<T>>> {
    policy.validate()?;
    if let Some(&s) = thresholds.iter().find(|&&s| !(s > T::one())) {
        return Err(Error::domain("s", s.as_f64(), "(1, inf)"));
    }
    let half = T::lit(0.5);
    let slack = T::lit(DOMINATION_SLACK_ULPS) * T::epsilon();
    let violation = (0..policy.n_max.saturating_sub(1))
        .into_par_iter()
        .find_first(|&i| {
            let a = small.coupling(i);
            let b = large.coupling(i);
            a < half * (T::one() - slack) || a > b * (T::one() + slack)
        });
    if let Some(i) = violation {
        return Err(Error::Domination {
            index: i + small.first_index(),
            detail: format!(
                "need 1/2 <= {} <= {} at coupling position {i} ({} vs {})",
                small.coupling(i),
                large.coupling(i),
                small.label(),
                large.label()
            ),
        });
    }
    thresholds
        .par_iter()
        .map(|&s| {
            let a = stabilized_count(small, s, Side::Above, policy)?;
            let b = stabilized_count(large, s, Side::Above, policy)?;
            Ok(ComparisonRow {
                s,
                count_small: a.count,
                count_large: b.count,
                ordered: a.count <= b.count,
                n_small: a.n_used,
                n_large: b.n_used,
            })
        })
        .collect()
}
