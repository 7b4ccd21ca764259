//! Monic Pollaczek polynomials with `b = 0, a = -r`, and the closed-form
//! eigenvalues of their Jacobi matrix outside `[-1, 1]`.
//!
//! For `λ > r > 0` the eigenvalues above 1 are
//! `μ_k = (1 - r² / (k + λ)²)^{-1/2}`, `k = 0, 1, …`, decreasing to 1. These
//! serve as exact ground truth for the Sturm counter in [`crate::jacobi`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jacobi::sequence_p;
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PollaczekParams<T: Scalar> {
    lambda: T,
    r: T,
}

impl<T: Scalar> PollaczekParams<T> {
    /// Requires `λ > r > 0`.
    pub fn new(lambda: T, r: T) -> Result<Self> {
        if !(r > T::zero()) || !r.is_finite() {
            return Err(Error::domain("r", r.as_f64(), "(0, lambda)"));
        }
        if !(lambda > r) || !lambda.is_finite() {
            return Err(Error::domain("lambda", lambda.as_f64(), "(r, inf)"));
        }
        Ok(Self { lambda, r })
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    pub fn r(&self) -> T {
        self.r
    }

    /// Recurrence coefficient `p_n(λ, r)`, `n ≥ 1`.
    pub fn p(&self, n: usize) -> T {
        sequence_p(self.lambda, self.r, n)
    }

    /// `μ_k`, the `(k+1)`-th largest eigenvalue of the infinite matrix.
    pub fn mu_k(&self, k: usize) -> Result<T> {
        let shifted = T::from_usize_lossy(k) + self.lambda;
        let ratio = self.r / shifted;
        let gap = T::one() - ratio * ratio;
        if !(gap > T::zero()) {
            return Err(Error::domain("k + lambda", shifted.as_f64(), "(r, inf)"));
        }
        Ok(T::one() / gap.sqrt())
    }

    /// `#{k ≥ 0 : μ_k > s}` for `s > 1`.
    ///
    /// Equivalent to `k + λ < r s / sqrt(s² - 1)`; the estimate from that
    /// inequality is corrected against [`Self::mu_k`] itself so the result
    /// agrees exactly with enumeration, ties (`μ_k = s`) excluded.
    pub fn count_above(&self, s: T) -> Result<usize> {
        if !(s > T::one()) || !s.is_finite() {
            return Err(Error::domain(
                "s",
                s.as_f64(),
                "(1, inf); the count is infinite at the band edge",
            ));
        }
        let bound = self.r * s / (s * s - T::one()).sqrt() - self.lambda;
        let mut k = if bound > T::zero() {
            bound.ceil().to_usize().unwrap_or(usize::MAX)
        } else {
            0
        };
        while k > 0 && self.mu_k(k - 1)? <= s {
            k -= 1;
        }
        while self.mu_k(k)? > s {
            k += 1;
        }
        Ok(k)
    }

    /// Degree-`n` monic polynomial at `x` by the forward recurrence
    /// `Q_{m+1} = x Q_m - p_m Q_{m-1}`, `Q_0 = 1`, `Q_1 = x`.
    pub fn monic_eval(&self, n: usize, x: T) -> Result<T> {
        let mut prev = T::one();
        if n == 0 {
            return Ok(prev);
        }
        let mut cur = x;
        for m in 1..n {
            let next = x * cur - self.p(m) * prev;
            prev = cur;
            cur = next;
        }
        if !cur.is_finite() {
            return Err(Error::Overflow(format!(
                "Q_{n}({x}) overflows the scalar range; evaluate a scaled recurrence instead"
            )));
        }
        Ok(cur)
    }
}

pub fn mu_k<T: Scalar>(p: &PollaczekParams<T>, k: usize) -> Result<T> {
    p.mu_k(k)
}

pub fn count_above_closed_form<T: Scalar>(p: &PollaczekParams<T>, s: T) -> Result<usize> {
    p.count_above(s)
}

pub fn monic_eval<T: Scalar>(p: &PollaczekParams<T>, n: usize, x: T) -> Result<T> {
    p.monic_eval(n, x)
}
