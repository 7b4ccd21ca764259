use serde::Serialize;

use crate::error::{Error, Result};
use crate::Scalar;

use super::OffDiagSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Above,
    Below,
}

/// Hit an exactly zero pivot; the shift sits on an eigenvalue of a leading
/// principal submatrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct ZeroPivot;

/// Number of negative pivots in the LDLᵀ factorization of a symmetric
/// tridiagonal matrix with diagonal `diag(i)` and squared couplings
/// `off_sq(i)` between rows `i` and `i + 1`.
///
/// An infinite pivot (from a subnormal predecessor) is carried through: the
/// next pivot then equals its diagonal, which is the correct limit.
#[inline]
pub(crate) fn negative_pivots<T, D, O>(size: usize, diag: D, off_sq: O) -> Result<usize, ZeroPivot>
where
    T: Scalar,
    D: Fn(usize) -> T,
    O: Fn(usize) -> T,
{
    if size == 0 {
        return Ok(0);
    }
    let mut pivot = diag(0);
    let mut negatives = 0usize;
    for i in 0..size {
        if i > 0 {
            pivot = diag(i) - off_sq(i - 1) / pivot;
        }
        if pivot == T::zero() {
            return Err(ZeroPivot);
        }
        if pivot < T::zero() {
            negatives += 1;
        }
    }
    Ok(negatives)
}

/// Same recurrence as [`negative_pivots`] for a zero-diagonal matrix shifted
/// by `shift` (diagonal constant `shift`), with couplings from a slice.
#[inline]
fn negative_pivots_const_diag<T: Scalar>(shift: T, off_sq: &[T]) -> Result<usize, ZeroPivot> {
    let mut pivot = shift;
    if pivot == T::zero() {
        return Err(ZeroPivot);
    }
    let mut negatives = usize::from(pivot < T::zero());
    for &b2 in off_sq {
        pivot = shift - b2 / pivot;
        if pivot == T::zero() {
            return Err(ZeroPivot);
        }
        if pivot < T::zero() {
            negatives += 1;
        }
    }
    Ok(negatives)
}

/// Diagnostics of a single count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SturmOutcome {
    pub count: usize,
    /// Number of zero-pivot retries (each moves the threshold away from the
    /// counted side).
    pub retries: u32,
    /// Threshold actually used for the final pass.
    pub effective_s: f64,
}

pub(crate) const MAX_RETRIES: u32 = 16;

/// Shift away from the counted side after an exact zero pivot. `attempt`
/// starts at 0; the step doubles each time.
fn perturbed<T: Scalar>(s: T, side: Side, attempt: u32) -> T {
    let base = T::lit(10.0) * T::epsilon() * T::one().max(s.abs());
    let step = base * T::lit(2f64.powi(attempt as i32));
    match side {
        Side::Above => s + step,
        Side::Below => s - step,
    }
}

/// Counts eigenvalues of the `size × size` truncation strictly on `side` of
/// `s`, retrying with a shifted threshold on an exact zero pivot.
fn count_with_retries<T, F>(s: T, side: Side, mut pass: F) -> Result<SturmOutcome>
where
    T: Scalar,
    F: FnMut(T) -> Result<usize, ZeroPivot>,
{
    let mut shifted = s;
    for retries in 0..=MAX_RETRIES {
        // Above s: negatives of sI - T (diagonal +s). Below s: negatives of
        // T - sI (diagonal -s). Both use the squared couplings unchanged.
        let diag = match side {
            Side::Above => shifted,
            Side::Below => -shifted,
        };
        match pass(diag) {
            Ok(count) => {
                return Ok(SturmOutcome {
                    count,
                    retries,
                    effective_s: shifted.as_f64(),
                })
            }
            Err(ZeroPivot) => shifted = perturbed(s, side, retries),
        }
    }
    Err(Error::NotConverged(format!(
        "zero pivot persisted after {MAX_RETRIES} threshold perturbations at s = {s}"
    )))
}

/// Eigenvalue count of the `size × size` zero-diagonal truncation of `seq`
/// strictly above or below `s`. Streams the couplings, O(size) time and
/// O(1) memory.
pub fn sturm_count<T: Scalar>(
    seq: &OffDiagSequence<T>,
    size: usize,
    s: T,
    side: Side,
) -> Result<SturmOutcome> {
    if size == 0 {
        return Err(Error::Index {
            index: 0,
            reason: "truncation size must be at least 1",
        });
    }
    count_with_retries(s, side, |diag| {
        negative_pivots(
            size,
            |_| diag,
            |i| {
                let b = seq.coupling(i);
                b * b
            },
        )
    })
}

/// Squared couplings of a fixed truncation, cached for repeated counts
/// (bisection).
#[derive(Debug, Clone)]
pub struct Truncation<T: Scalar> {
    off_sq: Vec<T>,
    max_coupling: T,
}

impl<T: Scalar> Truncation<T> {
    pub fn new(seq: &OffDiagSequence<T>, size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::Index {
                index: 0,
                reason: "truncation size must be at least 1",
            });
        }
        let mut max_coupling = T::zero();
        let off_sq = (0..size - 1)
            .map(|i| {
                let b = seq.coupling(i);
                max_coupling = max_coupling.max(b.abs());
                b * b
            })
            .collect();
        Ok(Self {
            off_sq,
            max_coupling,
        })
    }

    pub fn size(&self) -> usize {
        self.off_sq.len() + 1
    }

    pub fn max_coupling(&self) -> T {
        self.max_coupling
    }

    pub fn count(&self, s: T, side: Side) -> Result<SturmOutcome> {
        count_with_retries(s, side, |diag| {
            negative_pivots_const_diag(diag, &self.off_sq)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pollaczek::PollaczekParams;

    fn half() -> OffDiagSequence<f64> {
        OffDiagSequence::constant(0.5).unwrap()
    }

    #[test]
    fn two_by_two_constant() {
        let c = half();
        assert_eq!(sturm_count(&c, 2, 0.75, Side::Above).unwrap().count, 0);
        assert_eq!(sturm_count(&c, 2, 0.25, Side::Above).unwrap().count, 1);
        assert_eq!(sturm_count(&c, 2, 0.25, Side::Below).unwrap().count, 1);
        assert_eq!(sturm_count(&c, 2, -0.75, Side::Below).unwrap().count, 0);
    }

    #[test]
    fn pollaczek_count_at_1_1() {
        let p = OffDiagSequence::pollaczek(PollaczekParams::new(1.0, 0.5).unwrap());
        assert_eq!(sturm_count(&p, 2000, 1.1, Side::Above).unwrap().count, 1);
    }

    #[test]
    fn zero_pivot_retry_excludes_tie() {
        // 1x1 matrix [0] at s = 0: exactly one tie, counted on neither side.
        let c = half();
        let above = sturm_count(&c, 1, 0.0, Side::Above).unwrap();
        let below = sturm_count(&c, 1, 0.0, Side::Below).unwrap();
        assert_eq!(above.count, 0);
        assert_eq!(below.count, 0);
        assert_eq!(above.retries, 1);
        assert!(above.effective_s > 0.0 && below.effective_s < 0.0);
        // 2x2 at s = 0.5: eigenvalue 0.5 exactly, ±0.5.
        let above = sturm_count(&c, 2, 0.5, Side::Above).unwrap();
        assert_eq!(above.count, 0);
        let below = sturm_count(&c, 2, 0.5, Side::Below).unwrap();
        assert_eq!(below.count, 1);
    }

    #[test]
    fn cached_truncation_matches_streaming() {
        let j0 = OffDiagSequence::<f64>::j0();
        let t = Truncation::new(&j0, 4096).unwrap();
        for s in [1.001, 1.003, 1.01, 1.03, -1.01, 0.3] {
            for side in [Side::Above, Side::Below] {
                assert_eq!(
                    t.count(s, side).unwrap(),
                    sturm_count(&j0, 4096, s, side).unwrap()
                );
            }
        }
    }

    #[test]
    fn general_negative_pivots() {
        // [[1, -1], [-1, 3]] has eigenvalues 2 ± sqrt(2).
        let d = [1.0, 3.0];
        let e2 = [1.0];
        let at = |lam: f64| negative_pivots(2, |i| d[i] - lam, |i| e2[i]).unwrap();
        assert_eq!(at(0.0), 0);
        assert_eq!(at(1.5), 1);
        assert_eq!(at(4.0), 2);
    }

    #[test]
    fn size_zero_rejected() {
        assert!(sturm_count(&half(), 0, 0.1, Side::Above).is_err());
    }
}
