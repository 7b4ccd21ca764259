use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::Scalar;

use super::sturm::{sturm_count, Side, Truncation};
use super::OffDiagSequence;

pub const MAX_BISECTION_STEPS: usize = 200;

/// What to count or locate: threshold, side and bisection tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralQuery<T: Scalar> {
    pub s: T,
    pub side: Side,
    pub eig_tol: T,
    pub k_max: Option<usize>,
}

impl<T: Scalar> SpectralQuery<T> {
    /// Default tolerance `1e-12 · max(1, |s|)`.
    pub fn new(s: T, side: Side) -> Self {
        Self {
            s,
            side,
            eig_tol: T::lit(1e-12) * T::one().max(s.abs()),
            k_max: None,
        }
    }

    pub fn above(s: T) -> Self {
        Self::new(s, Side::Above)
    }

    pub fn below(s: T) -> Self {
        Self::new(s, Side::Below)
    }

    pub fn with_tol(mut self, eig_tol: T) -> Self {
        self.eig_tol = eig_tol;
        self
    }

    pub fn with_k_max(mut self, k_max: usize) -> Self {
        self.k_max = Some(k_max);
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.eig_tol > T::zero()) {
            return Err(Error::domain("eig_tol", self.eig_tol.as_f64(), "(0, inf)"));
        }
        if !self.s.is_finite() {
            return Err(Error::domain("s", self.s.as_f64(), "finite reals"));
        }
        Ok(())
    }
}

/// Doubling schedule for the truncation size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TruncationPolicy {
    pub n_start: usize,
    pub growth_factor: usize,
    /// Consecutive levels that must agree.
    pub plateau_window: usize,
    pub n_max: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            n_start: 1024,
            growth_factor: 2,
            plateau_window: 2,
            n_max: 1 << 22,
        }
    }
}

impl TruncationPolicy {
    pub fn new(
        n_start: usize,
        growth_factor: usize,
        plateau_window: usize,
        n_max: usize,
    ) -> Result<Self> {
        let p = Self {
            n_start,
            growth_factor,
            plateau_window,
            n_max,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_start < 2 {
            return Err(Error::domain("n_start", self.n_start as f64, "[2, inf)"));
        }
        if self.growth_factor < 2 {
            return Err(Error::domain(
                "growth_factor",
                self.growth_factor as f64,
                "[2, inf)",
            ));
        }
        if self.plateau_window == 0 {
            return Err(Error::domain("plateau_window", 0.0, "[1, inf)"));
        }
        if self.n_max < self.n_start {
            return Err(Error::domain("n_max", self.n_max as f64, "[n_start, inf)"));
        }
        Ok(())
    }

    /// Truncation sizes visited, in order.
    pub fn levels(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::successors(Some(self.n_start), move |&n| {
            n.checked_mul(self.growth_factor)
                .filter(|&m| m <= self.n_max)
        })
    }
}

/// Integer count plus the truncation provenance behind it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountReport {
    pub count: usize,
    pub n_used: usize,
    pub stabilized: bool,
    /// `(N, count)` at every inspected level.
    pub levels: Vec<(usize, usize)>,
    /// Zero-pivot retries summed over all levels.
    pub retries: u32,
}

/// Eigenvalues beyond a threshold, located at a sequence of truncations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigReport<T: Scalar> {
    pub values: Vec<T>,
    pub n_used: usize,
    pub stabilized: bool,
    /// `(N, number of eigenvalues located)` at every inspected level.
    pub levels: Vec<(usize, usize)>,
}

fn plateau_reached(levels: &[(usize, usize)], window: usize) -> bool {
    levels.len() >= window && {
        let tail = &levels[levels.len() - window..];
        tail.iter().all(|&(_, c)| c == tail[0].1)
    }
}

/// Counts at `N = n_start, n_start·g, …` until `plateau_window` consecutive
/// levels agree or `n_max` is reached.
pub fn stabilized_count<T: Scalar>(
    seq: &OffDiagSequence<T>,
    s: T,
    side: Side,
    policy: &TruncationPolicy,
) -> Result<CountReport> {
    policy.validate()?;
    let mut levels = Vec::new();
    let mut retries = 0;
    for n in policy.levels() {
        let out = sturm_count(seq, n, s, side)?;
        retries += out.retries;
        levels.push((n, out.count));
        if plateau_reached(&levels, policy.plateau_window) {
            return Ok(CountReport {
                count: out.count,
                n_used: n,
                stabilized: true,
                levels,
                retries,
            });
        }
    }
    let &(n_used, count) = levels.last().expect("policy has at least one level");
    Ok(CountReport {
        count,
        n_used,
        stabilized: false,
        levels,
        retries,
    })
}

/// Locates the `rank`-th eigenvalue beyond `q.s` (1 = farthest from the
/// threshold) by bisection on the Sturm count.
fn bisect_rank<T: Scalar>(trunc: &Truncation<T>, q: &SpectralQuery<T>, rank: usize) -> Result<T> {
    // Work on the "above" side; below-side eigenvalues of a zero-diagonal
    // matrix are exact negatives.
    let s = match q.side {
        Side::Above => q.s,
        Side::Below => -q.s,
    };
    let mut lo = s;
    let mut hi = (T::one() + T::lit(2.0) * trunc.max_coupling()).max(s + q.eig_tol);
    for _ in 0..MAX_BISECTION_STEPS {
        if hi - lo <= q.eig_tol {
            let mid = (lo + hi) / T::lit(2.0);
            return Ok(match q.side {
                Side::Above => mid,
                Side::Below => -mid,
            });
        }
        let mid = (lo + hi) / T::lit(2.0);
        if trunc.count(mid, Side::Above)?.count >= rank {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NotConverged(format!(
        "bisection for eigenvalue {rank} beyond s = {} stalled at width {} after {MAX_BISECTION_STEPS} steps (tol {})",
        q.s,
        hi - lo,
        q.eig_tol
    )))
}

/// First `min(k_max, count)` eigenvalues of the `size × size` truncation
/// strictly beyond `q.s`, ordered from the outermost inward (descending for
/// `Above`, ascending for `Below`).
pub fn eigs_outside<T: Scalar>(
    seq: &OffDiagSequence<T>,
    size: usize,
    q: &SpectralQuery<T>,
) -> Result<Vec<T>> {
    q.validate()?;
    if q.k_max == Some(0) {
        return Ok(Vec::new());
    }
    let trunc = Truncation::new(seq, size)?;
    eigs_in_truncation(&trunc, q)
}

fn eigs_in_truncation<T: Scalar>(trunc: &Truncation<T>, q: &SpectralQuery<T>) -> Result<Vec<T>> {
    let total = trunc.count(q.s, q.side)?.count;
    let wanted = q.k_max.map_or(total, |k| k.min(total));
    (1..=wanted)
        .into_par_iter()
        .map(|rank| bisect_rank(trunc, q, rank))
        .collect()
}

/// Eigenvalues beyond `q.s` at growing truncations until the located set
/// has the same length and moves by at most `4·eig_tol` over
/// `plateau_window` consecutive levels.
pub fn stabilized_eigs<T: Scalar>(
    seq: &OffDiagSequence<T>,
    q: &SpectralQuery<T>,
    policy: &TruncationPolicy,
) -> Result<EigReport<T>> {
    q.validate()?;
    policy.validate()?;
    let mut levels = Vec::new();
    let mut history: Vec<Vec<T>> = Vec::new();
    let drift_tol = T::lit(4.0) * q.eig_tol;
    for n in policy.levels() {
        let values = if q.k_max == Some(0) {
            Vec::new()
        } else {
            eigs_in_truncation(&Truncation::new(seq, n)?, q)?
        };
        levels.push((n, values.len()));
        history.push(values);
        let w = policy.plateau_window;
        if history.len() >= w {
            let tail = &history[history.len() - w..];
            let last = &tail[w - 1];
            let settled = tail.iter().all(|v| {
                v.len() == last.len()
                    && v.iter()
                        .zip(last)
                        .all(|(a, b)| (*a - *b).abs() <= drift_tol)
            });
            if settled {
                return Ok(EigReport {
                    values: last.clone(),
                    n_used: n,
                    stabilized: true,
                    levels,
                });
            }
        }
    }
    let (n_used, _) = *levels.last().expect("policy has at least one level");
    Ok(EigReport {
        values: history.pop().unwrap_or_default(),
        n_used,
        stabilized: false,
        levels,
    })
}
