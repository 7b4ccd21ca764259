use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pollaczek::PollaczekParams;
use crate::Scalar;

/// Entry of `J(ε)` coupling coordinates `n-1` and `n`:
/// `sqrt(n) / (2 (n+ε)^{1/4} (n-1+ε)^{1/4})`.
pub fn offdiag_j_eps<T: Scalar>(eps: T, n: usize) -> Result<T> {
    if n == 0 {
        return Err(Error::Index {
            index: 0,
            reason: "J(eps) entries start at n = 1",
        });
    }
    if !(eps > T::zero()) {
        // The n = 1 entry has (n-1+eps)^{1/4} = 0 in the denominator.
        return Err(Error::domain(
            "eps",
            eps.as_f64(),
            "(0, 1/2]; j_{1,0}(0) is infinite",
        ));
    }
    Ok(j_eps_unchecked(eps, n))
}

#[inline]
fn j_eps_unchecked<T: Scalar>(eps: T, n: usize) -> T {
    let nf = T::from_usize_lossy(n);
    let prod = (nf + eps) * (nf - T::one() + eps);
    nf.sqrt() / (T::lit(2.0) * prod.sqrt().sqrt())
}

/// Entry of `J₀` (the `ε → 0` limit with the first coordinate deleted):
/// `(1/2) (1 - 1/n)^{-1/4}` for `n ≥ 2`.
pub fn offdiag_j0<T: Scalar>(n: usize) -> Result<T> {
    if n < 2 {
        return Err(Error::Index {
            index: n,
            reason: "J0 entries are defined for n >= 2 only",
        });
    }
    Ok(j0_unchecked(n))
}

#[inline]
fn j0_unchecked<T: Scalar>(n: usize) -> T {
    let nf = T::from_usize_lossy(n);
    let base = (nf - T::one()) / nf;
    T::lit(0.5) / base.sqrt().sqrt()
}

/// Pollaczek entry `sqrt(p_n(λ, r))` with
/// `p_n = n (n + 2λ - 1) / (4 (n - r + λ - 1)(n - r + λ))`.
pub fn offdiag_pollaczek<T: Scalar>(lambda: T, r: T, n: usize) -> Result<T> {
    if n == 0 {
        return Err(Error::Index {
            index: 0,
            reason: "Pollaczek entries start at n = 1",
        });
    }
    let p = pollaczek_p(lambda, r, n);
    if !(p > T::zero()) || !p.is_finite() {
        return Err(Error::domain(
            "p_n(lambda, r)",
            p.as_f64(),
            "(0, inf); denominators of p_n must be positive",
        ));
    }
    Ok(p.sqrt())
}

#[inline]
pub(crate) fn pollaczek_p<T: Scalar>(lambda: T, r: T, n: usize) -> T {
    let nf = T::from_usize_lossy(n);
    let num = nf * (nf + T::lit(2.0) * lambda - T::one());
    let den = T::lit(4.0) * (nf - r + lambda - T::one()) * (nf - r + lambda);
    num / den
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyTag {
    JEps,
    J0,
    Pollaczek,
    Constant,
    Custom,
}

type EntryFn<T> = Arc<dyn Fn(usize) -> T + Send + Sync>;

#[derive(Clone)]
enum Family<T: Scalar> {
    JEps {
        eps: T,
    },
    J0,
    Pollaczek(PollaczekParams<T>),
    Constant {
        value: T,
    },
    Custom {
        name: String,
        first: usize,
        f: EntryFn<T>,
    },
}

/// Generator `n ↦ b_n` for a zero-diagonal Jacobi matrix.
///
/// Index `n` is 1-based: `b_n` couples coordinates `n-1` and
/// `n`. Truncations always act on coordinates `0..N`, so the first stored
/// coupling is `b_{first_index()}`. For `J₀` that is `b_2`, the first row of
/// `J(ε)` having been removed before the limit.
#[derive(Clone)]
pub struct OffDiagSequence<T: Scalar> {
    family: Family<T>,
}

impl<T: Scalar> OffDiagSequence<T> {
    pub fn j_eps(eps: T) -> Result<Self> {
        if !(eps > T::zero() && eps <= T::lit(0.5)) {
            return Err(Error::domain("eps", eps.as_f64(), "(0, 1/2]"));
        }
        Ok(Self {
            family: Family::JEps { eps },
        })
    }

    pub fn j0() -> Self {
        Self { family: Family::J0 }
    }

    pub fn pollaczek(params: PollaczekParams<T>) -> Self {
        Self {
            family: Family::Pollaczek(params),
        }
    }

    pub fn constant(value: T) -> Result<Self> {
        if !(value > T::zero()) || !value.is_finite() {
            return Err(Error::domain("value", value.as_f64(), "(0, inf)"));
        }
        Ok(Self {
            family: Family::Constant { value },
        })
    }

    /// Arbitrary positive sequence starting at `first_index ≥ 1`.
    pub fn custom<F>(name: impl Into<String>, first_index: usize, f: F) -> Result<Self>
    where
        F: Fn(usize) -> T + Send + Sync + 'static,
    {
        if first_index == 0 {
            return Err(Error::Index {
                index: 0,
                reason: "sequences are indexed from n >= 1",
            });
        }
        Ok(Self {
            family: Family::Custom {
                name: name.into(),
                first: first_index,
                f: Arc::new(f),
            },
        })
    }

    pub fn tag(&self) -> FamilyTag {
        match self.family {
            Family::JEps { .. } => FamilyTag::JEps,
            Family::J0 => FamilyTag::J0,
            Family::Pollaczek(_) => FamilyTag::Pollaczek,
            Family::Constant { .. } => FamilyTag::Constant,
            Family::Custom { .. } => FamilyTag::Custom,
        }
    }

    /// Family parameters in a fixed order: `[ε]`, `[]`, `[λ, r]`, `[value]`.
    pub fn params(&self) -> Vec<T> {
        match &self.family {
            Family::JEps { eps } => vec![*eps],
            Family::J0 => vec![],
            Family::Pollaczek(p) => vec![p.lambda(), p.r()],
            Family::Constant { value } => vec![*value],
            Family::Custom { .. } => vec![],
        }
    }

    pub fn label(&self) -> String {
        match &self.family {
            Family::JEps { eps } => format!("jeps(eps={eps})"),
            Family::J0 => "j0".to_string(),
            Family::Pollaczek(p) => format!("pollaczek(lambda={}, r={})", p.lambda(), p.r()),
            Family::Constant { value } => format!("const({value})"),
            Family::Custom { name, .. } => format!("custom({name})"),
        }
    }

    pub fn first_index(&self) -> usize {
        match &self.family {
            Family::J0 => 2,
            Family::Custom { first, .. } => *first,
            _ => 1,
        }
    }

    /// `b_n`, checked against the family's index domain.
    pub fn entry(&self, n: usize) -> Result<T> {
        if n < self.first_index() {
            return Err(Error::Index {
                index: n,
                reason: "below the first index of the sequence",
            });
        }
        Ok(self.eval(n))
    }

    #[inline]
    fn eval(&self, n: usize) -> T {
        match &self.family {
            Family::JEps { eps } => j_eps_unchecked(*eps, n),
            Family::J0 => j0_unchecked(n),
            Family::Pollaczek(p) => pollaczek_p(p.lambda(), p.r(), n).sqrt(),
            Family::Constant { value } => *value,
            Family::Custom { f, .. } => f(n),
        }
    }

    /// Coupling between truncation coordinates `i` and `i + 1`.
    #[inline]
    pub fn coupling(&self, i: usize) -> T {
        self.eval(self.first_index() + i)
    }

    /// The `N - 1` couplings of the `N × N` truncation.
    pub fn couplings(&self, size: usize) -> Vec<T> {
        (0..size.saturating_sub(1))
            .map(|i| self.coupling(i))
            .collect()
    }
}

impl<T: Scalar> fmt::Debug for OffDiagSequence<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OffDiagSequence")
            .field("family", &self.label())
            .field("first_index", &self.first_index())
            .finish()
    }
}
