use crate::Scalar;

/// Normalized Hermite function `χ_n(y)` by the forward recurrence
/// `sqrt(n+1) χ_{n+1} = sqrt(2) y χ_n - sqrt(n) χ_{n-1}`,
/// `χ_0(y) = π^{-1/4} e^{-y²/2}`.
///
/// For `|y|` large enough that `χ_0` underflows every value is 0.
pub fn hermite_eval<T: Scalar>(n: usize, y: T) -> T {
    let two = T::lit(2.0);
    let mut prev = T::zero();
    let mut cur = T::PI().sqrt().sqrt().recip() * (-y * y / two).exp();
    for m in 0..n {
        let mf = T::from_usize_lossy(m);
        let next = (two.sqrt() * y * cur - mf.sqrt() * prev) / (mf + T::one()).sqrt();
        prev = cur;
        cur = next;
    }
    cur
}

/// All of `χ_0(y), …, χ_{count-1}(y)` in one recurrence sweep.
pub fn hermite_values<T: Scalar>(count: usize, y: T) -> Vec<T> {
    let two = T::lit(2.0);
    let mut out = Vec::with_capacity(count);
    let mut prev = T::zero();
    let mut cur = T::PI().sqrt().sqrt().recip() * (-y * y / two).exp();
    for m in 0..count {
        out.push(cur);
        let mf = T::from_usize_lossy(m);
        let next = (two.sqrt() * y * cur - mf.sqrt() * prev) / (mf + T::one()).sqrt();
        prev = cur;
        cur = next;
    }
    out
}

/// Weight `sqrt(2n)` of `Re(u_n(0) conj u_{n-1}(0))` in the interface form,
/// i.e. twice `∫ y χ_n χ_{n-1} dy`.
pub fn coupling_coefficient<T: Scalar>(n: usize) -> T {
    (T::lit(2.0) * T::from_usize_lossy(n)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_origin() {
        let c0: f64 = hermite_eval(0, 0.0);
        assert!((c0 - std::f64::consts::PI.powf(-0.25)).abs() < 1e-15);
        assert!((c0 - 0.7511256).abs() < 1e-7);
        assert_eq!(hermite_eval(1, 0.0f64), 0.0);
        assert_eq!(hermite_eval(5, 0.0f64), 0.0);
    }

    #[test]
    fn parity() {
        for n in 0..12 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let a: f64 = hermite_eval(n, 1.3);
            let b: f64 = hermite_eval(n, -1.3);
            assert!((a - sign * b).abs() < 1e-14);
        }
    }

    #[test]
    fn batch_matches_single() {
        let v = hermite_values(10, 0.7f64);
        for (n, x) in v.iter().enumerate() {
            assert_eq!(*x, hermite_eval(n, 0.7f64));
        }
    }

    #[test]
    fn far_tail_underflows_to_zero() {
        assert_eq!(hermite_eval(3, 60.0f64), 0.0);
    }

    #[test]
    fn coefficients() {
        assert_eq!(coupling_coefficient::<f64>(2), 2.0);
        assert_eq!(coupling_coefficient::<f64>(8), 4.0);
    }
}
