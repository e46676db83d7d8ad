use dashmap::DashMap;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

use crate::exact::{big, Spin};
use crate::{Error, Result};

/// Evaluation context for su_q(2) arithmetic at an exact positive rational
/// deformation parameter.
///
/// `q = 1` is handled as an explicit classical branch, not a limit
/// computation. All q-number machinery is memoized per context; caches
/// support concurrent reads with atomic insertion.
#[derive(Clone)]
pub struct QContext {
    inner: Arc<Inner>,
}

struct Inner {
    q: BigRational,
    classical: bool,
    qnum: DashMap<i64, BigRational>,
    qfact: DashMap<i64, BigRational>,
    series_f: DashMap<i64, BigRational>,
    phi_fact: DashMap<i64, BigRational>,
    pub(crate) omega: DashMap<(i64, u32, u32), BigRational>,
    pub(crate) racah: DashMap<[u32; 6], BigRational>,
}

impl QContext {
    /// A context at exact rational `q > 0`.
    pub fn new(q: BigRational) -> Result<Self> {
        if !q.is_positive() {
            return Err(Error::OutOfRange(format!("q must be positive, got {q}")));
        }
        let classical = q.is_one();
        Ok(QContext {
            inner: Arc::new(Inner {
                q,
                classical,
                qnum: DashMap::new(),
                qfact: DashMap::new(),
                series_f: DashMap::new(),
                phi_fact: DashMap::new(),
                omega: DashMap::new(),
                racah: DashMap::new(),
            }),
        })
    }

    pub fn classical() -> Self {
        QContext::new(BigRational::one()).unwrap()
    }

    pub fn q(&self) -> &BigRational {
        &self.inner.q
    }

    /// True when this context routes to classical su(2) values.
    pub fn is_classical(&self) -> bool {
        self.inner.classical
    }

    pub(crate) fn omega_cache(&self) -> &DashMap<(i64, u32, u32), BigRational> {
        &self.inner.omega
    }

    pub(crate) fn racah_cache(&self) -> &DashMap<[u32; 6], BigRational> {
        &self.inner.racah
    }

    /// Symmetric q-number `[n] = (q^n - q^-n)/(q - q^-1)`; equals `n` in the
    /// classical branch.
    pub fn qnum(&self, n: i64) -> BigRational {
        if self.inner.classical {
            return big(n);
        }
        if let Some(hit) = self.inner.qnum.get(&n) {
            return hit.clone();
        }
        let q = &self.inner.q;
        let qn = pow_rational(q, n);
        let value = (&qn - qn.recip()) / (q - q.recip());
        self.inner.qnum.insert(n, value.clone());
        value
    }

    /// q-factorial `[n]! = [n][n-1]...[1]`, with `[0]! = 1`.
    pub fn qfact(&self, n: i64) -> BigRational {
        assert!(n >= 0, "q-factorial of negative argument {n}");
        if let Some(hit) = self.inner.qfact.get(&n) {
            return hit.clone();
        }
        let value = if n == 0 {
            BigRational::one()
        } else {
            self.qfact(n - 1) * self.qnum(n)
        };
        self.inner.qfact.insert(n, value.clone());
        value
    }

    /// q-binomial coefficient `[n choose k] = [n]!/([k]![n-k]!)`; zero
    /// outside `0 <= k <= n`.
    pub fn qbinom(&self, n: i64, k: i64) -> BigRational {
        if k < 0 || k > n {
            return BigRational::zero();
        }
        self.qfact(n) / (self.qfact(k) * self.qfact(n - k))
    }

    /// The series `F(n) = [1] + [2] + ... + [n]`, `n >= 1`.
    pub fn series_f(&self, n: i64) -> Result<BigRational> {
        if n < 1 {
            return Err(Error::OutOfRange(format!("F(n) needs n >= 1, got {n}")));
        }
        if let Some(hit) = self.inner.series_f.get(&n) {
            return Ok(hit.clone());
        }
        let mut acc = BigRational::zero();
        for k in 1..=n {
            acc += self.qnum(k);
        }
        self.inner.series_f.insert(n, acc.clone());
        Ok(acc)
    }

    /// The normalized series `Phi(n) = [2] F(n) / ([n+1][n])`, which is
    /// identically 1 in the classical branch.
    pub fn phi(&self, n: i64) -> Result<BigRational> {
        if n < 1 {
            return Err(Error::OutOfRange(format!("Phi(n) needs n >= 1, got {n}")));
        }
        if self.inner.classical {
            return Ok(BigRational::one());
        }
        Ok(self.qnum(2) * self.series_f(n)? / (self.qnum(n + 1) * self.qnum(n)))
    }

    /// `Phi(n)! = Phi(n) Phi(n-1) ... Phi(1)`, with `Phi(0)! = 1`.
    pub fn phi_fact(&self, n: i64) -> Result<BigRational> {
        if n < 0 {
            return Err(Error::OutOfRange(format!("Phi(n)! needs n >= 0, got {n}")));
        }
        if let Some(hit) = self.inner.phi_fact.get(&n) {
            return Ok(hit.clone());
        }
        let value = if n == 0 {
            BigRational::one()
        } else {
            self.phi_fact(n - 1)? * self.phi(n)?
        };
        self.inner.phi_fact.insert(n, value.clone());
        Ok(value)
    }

    /// Squared rank-lowering coefficient `(gamma_kappa / c0)^2
    /// = ([2k+1][2k]/[2]) Phi(2k)^2`. The squared form keeps the value
    /// rational in q.
    pub fn gamma_sq(&self, kappa: Spin) -> Result<BigRational> {
        let tk = kappa.twice_i();
        if tk == 0 {
            return Err(Error::SpinTooSmall(kappa));
        }
        let phi = self.phi(tk)?;
        Ok(self.qnum(tk + 1) * self.qnum(tk) / self.qnum(2) * (&phi * &phi))
    }
}

pub(crate) fn pow_rational(q: &BigRational, n: i64) -> BigRational {
    let abs = BigRational::new(
        q.numer().pow(n.unsigned_abs() as u32),
        q.denom().pow(n.unsigned_abs() as u32),
    );
    if n >= 0 {
        abs
    } else {
        abs.recip()
    }
}
