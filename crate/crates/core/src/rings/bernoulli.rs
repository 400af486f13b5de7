//! Bernoulli numbers and polynomials over exact rationals.
//!
//! Convention: B1 = -1/2, matching B_k(x) = sum C(k,j) B_j x^{k-j} with
//! B_1(x) = x - 1/2.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use super::BigRational;

static CACHE: Lazy<Mutex<Vec<BigRational>>> = Lazy::new(|| Mutex::new(Vec::new()));
static BINOM_CACHE: Lazy<Mutex<HashMap<(u64, u64), BigInt>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    if let Some(v) = BINOM_CACHE.lock().unwrap().get(&(n, k)) {
        return v.clone();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    BINOM_CACHE.lock().unwrap().insert((n, k), r.clone());
    r
}

/// The n-th Bernoulli number.
pub fn bernoulli(n: usize) -> BigRational {
    let mut cache = CACHE.lock().unwrap();
    if cache.is_empty() {
        cache.push(BigRational::one());
    }
    while cache.len() <= n {
        let m = cache.len();
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let mut s = BigRational::zero();
        for (j, b) in cache.iter().enumerate() {
            s += BigRational::from(binomial(m as u64 + 1, j as u64)) * b;
        }
        let val = -s / BigRational::from(BigInt::from(m as u64 + 1));
        cache.push(val);
    }
    cache[n].clone()
}

/// Evaluates the Bernoulli polynomial B_k at a rational argument.
pub fn bernoulli_poly(k: usize, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    let mut xpow = BigRational::one();
    // sum_{j=0}^{k} C(k, j) B_{k-j} x^j, built from the x^0 term upward
    for j in 0..=k {
        let c = BigRational::from(binomial(k as u64, j as u64)) * bernoulli(k - j);
        acc += c * &xpow;
        xpow *= x;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn known_bernoulli_numbers() {
        assert_eq!(bernoulli(0), q(1, 1));
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(3), q(0, 1));
        assert_eq!(bernoulli(4), q(-1, 30));
        assert_eq!(bernoulli(12), q(-691, 2730));
    }

    #[test]
    fn bernoulli_poly_values() {
        // B_1(x) = x - 1/2
        assert_eq!(bernoulli_poly(1, &q(1, 3)), q(-1, 6));
        // B_2(x) = x^2 - x + 1/6
        assert_eq!(bernoulli_poly(2, &q(1, 2)), q(-1, 12));
        // B_k(1) = B_k(0) for k != 1 (via B_k(1) = B_k + k*0^{k-1} identity)
        assert_eq!(bernoulli_poly(4, &q(1, 1)), bernoulli(4));
        // B_1(1) = 1/2
        assert_eq!(bernoulli_poly(1, &q(1, 1)), q(1, 2));
    }
}
