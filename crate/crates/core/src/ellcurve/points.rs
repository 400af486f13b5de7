//! Point counting over F_q and the multiplicative a_n generator.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::par;

use super::{CurveError, EllipticCurveQ};

/// Naive point-counting bound; the approximate-functional-equation demand
/// at desk conductors stays far below this.
pub const AP_BOUND: u64 = 1_000_000;

/// a_q = q + 1 - #E(F_q) at a prime of good reduction, by enumeration.
pub fn ap(e: &EllipticCurveQ, q: u64) -> Result<i64, CurveError> {
    if e.conductor % q == 0 {
        return Err(CurveError::BadReduction(q));
    }
    if q > AP_BOUND {
        return Err(CurveError::PrimeTooLarge(q));
    }
    let m = |x: &BigInt| -> u64 {
        use num_integer::Integer;
        x.mod_floor(&BigInt::from(q)).to_u64().unwrap()
    };
    if q == 2 {
        // brute force the 4 affine candidates
        let mut count = 1i64; // infinity
        for x in 0..2u64 {
            for y in 0..2u64 {
                let lhs = (y * y + m(&e.a1) * x * y + m(&e.a3) * y) % 2;
                let rhs = (x * x * x + m(&e.a2) * x * x + m(&e.a4) * x + m(&e.a6)) % 2;
                if lhs == rhs {
                    count += 1;
                }
            }
        }
        return Ok(3 - count);
    }
    // complete the square: (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    let (b2, b4, b6, _) = super::b_invariants(&e.a_invariants());
    let (b2, b4, b6) = (m(&b2) as u128, m(&b4) as u128, m(&b6) as u128);
    let qq = q as u128;
    // quadratic-character table
    let mut chi = vec![-1i8; q as usize];
    chi[0] = 0;
    let mut x = 1u128;
    while x < qq {
        chi[(x * x % qq) as usize] = 1;
        x += 1;
    }
    let chi = &chi;
    let sum = par::sum_indexed(
        q as usize,
        0i64,
        move |x| {
            let x = x as u128;
            let g = (4 * x % qq * x % qq * x + b2 * x % qq * x + 2 * b4 * x + b6) % qq;
            chi[g as usize] as i64
        },
        |a, b| a + b,
    );
    // #E(F_q) = q + 1 + sum, a_q = -sum
    Ok(-sum)
}

/// a_q for any prime, using local data at bad primes.
pub fn aq_any(e: &EllipticCurveQ, q: u64) -> Result<i64, CurveError> {
    match e.aq_bad(q) {
        Some(v) => Ok(v),
        None => ap(e, q),
    }
}

/// a(1..bound) by the good-prime recursion
/// a(q^(r+1)) = a_q a(q^r) - q a(q^(r-1)) and bad-prime a(q^r) = a_q^r,
/// extended multiplicatively.
pub fn an_list(e: &EllipticCurveQ, bound: usize) -> Result<Vec<i64>, CurveError> {
    let mut primes = Vec::new();
    {
        // smallest-prime-factor sieve
        let mut spf = vec![0u32; bound + 1];
        for i in 2..=bound {
            if spf[i] == 0 {
                primes.push(i as u64);
                let mut j = i;
                while j <= bound {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        let aps: Vec<(u64, i64)> = {
            let results = par::map_slice(&primes, |&p| aq_any(e, p).map(|v| (p, v)));
            let mut out = Vec::new();
            for r in results {
                out.push(r?);
            }
            out
        };
        let mut a = vec![0i64; bound + 1];
        if bound >= 1 {
            a[1] = 1;
        }
        for &(p, apv) in &aps {
            // fill prime powers
            let good = e.conductor % p != 0;
            let mut pk = p as usize;
            let mut prev2 = 1i64; // a(p^(r-1))
            let mut prev1 = apv; // a(p^r)
            while pk <= bound {
                a[pk] = prev1;
                let next = if good {
                    prev1
                        .checked_mul(apv)
                        .and_then(|x| x.checked_sub((p as i64).checked_mul(prev2)?))
                        .expect("a_n overflow")
                } else {
                    prev1.checked_mul(apv).expect("a_n overflow")
                };
                prev2 = prev1;
                prev1 = next;
                match pk.checked_mul(p as usize) {
                    Some(v) => pk = v,
                    None => break,
                }
            }
        }
        // multiplicative fill
        for n in 2..=bound {
            let p = spf[n] as usize;
            let mut pk = p;
            let mut rest = n / p;
            while rest % p == 0 {
                pk *= p;
                rest /= p;
            }
            if rest > 1 {
                a[n] = a[pk].checked_mul(a[rest]).expect("a_n overflow");
            }
        }
        return Ok(a);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // [OP] ap examples
    #[test]
    fn ap_11a1() {
        let e = EllipticCurveQ::by_label("11a1").unwrap();
        assert_eq!(ap(&e, 2).unwrap(), -2);
        assert_eq!(ap(&e, 3).unwrap(), -1);
        assert_eq!(ap(&e, 5).unwrap(), 1);
        assert_eq!(ap(&e, 7).unwrap(), -2);
        assert!(matches!(ap(&e, 11), Err(CurveError::BadReduction(11))));
        assert_eq!(e.aq_bad(11), Some(1)); // split multiplicative
    }

    #[test]
    fn hasse_bound() {
        let e = EllipticCurveQ::by_label("37a1").unwrap();
        for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 41, 97, 101] {
            let a = ap(&e, q).unwrap();
            assert!((a * a) as u64 <= 4 * q, "Hasse violated at {}", q);
        }
    }

    // [OP] an_list examples
    #[test]
    fn an_11a1() {
        let e = EllipticCurveQ::by_label("11a1").unwrap();
        let a = an_list(&e, 30).unwrap();
        assert_eq!(a[1], 1);
        assert_eq!(a[2], -2);
        assert_eq!(a[3], -1);
        assert_eq!(a[4], 2); // a2^2 - 2
        assert_eq!(a[5], 1);
        assert_eq!(a[6], 2); // a2 a3
        assert_eq!(a[9], -2); // a3^2 - 3
        assert_eq!(a[11], 1); // split multiplicative
        assert_eq!(a[22], -2); // a2 * a11
    }

    #[test]
    fn an_multiplicative_random() {
        let e = EllipticCurveQ::by_label("37a1").unwrap();
        let a = an_list(&e, 2000).unwrap();
        let mut seed = 123456789u64;
        let mut rng = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        let mut checked = 0;
        while checked < 100 {
            let m = (rng() % 60 + 1) as usize;
            let n = (rng() % 30 + 1) as usize;
            if num_integer::gcd(m, n) == 1 && m * n <= 2000 {
                assert_eq!(a[m * n], a[m] * a[n], "m={} n={}", m, n);
                checked += 1;
            }
        }
    }
}
