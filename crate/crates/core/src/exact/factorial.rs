use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use once_cell::sync::Lazy;

static FACTORIALS: Lazy<RwLock<Vec<BigInt>>> = Lazy::new(|| RwLock::new(vec![BigInt::one()]));

/// Exact `n!` for `n >= 0`, from a shared grow-only cache.
///
/// Panics on negative arguments: every formula in this crate guards its
/// factorial arguments, so a negative one is a caller bug.
pub fn factorial(n: i64) -> BigInt {
    assert!(n >= 0, "factorial of negative argument {n}");
    let n = n as usize;
    {
        let cache = FACTORIALS.read().unwrap();
        if n < cache.len() {
            return cache[n].clone();
        }
    }
    let mut cache = FACTORIALS.write().unwrap();
    while cache.len() <= n {
        let next = cache.last().unwrap() * BigInt::from(cache.len());
        cache.push(next);
    }
    cache[n].clone()
}

/// Exact double factorial `n!!` with the conventions `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> BigInt {
    assert!(n >= -1, "double factorial of argument {n} below -1");
    let mut acc = BigInt::one();
    let mut k = n;
    while k >= 2 {
        acc *= BigInt::from(k);
        k -= 2;
    }
    acc
}

/// Exact binomial coefficient `C(n, k)`; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::from(0);
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Falling product `n (n-1) ... (n-k+1)` (equals `n!/(n-k)!` for `n >= k`).
pub fn falling_product(n: i64, k: i64) -> BigInt {
    assert!(k >= 0);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
    }
    acc
}

/// Exact `a!/b!` as a big rational, for `a, b >= 0`.
pub fn ratio_of_factorials(a: i64, b: i64) -> BigRational {
    BigRational::new(factorial(a), factorial(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_factorials() {
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(factorial(0), BigInt::from(1));
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(0), BigInt::from(1));
        assert_eq!(double_factorial(-1), BigInt::from(1));
        assert_eq!(double_factorial(7), BigInt::from(105));
        assert_eq!(double_factorial(8), BigInt::from(384));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 1), BigInt::from(4));
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(4, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }
}
