//! Recognition of exact values from floats, and rational reconstruction
//! from 3-adic residues.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::complex::BigComplex;
use super::cyclo::CycloElem;
use super::float::BigFloat;
use super::{RingError, BigRational};

/// Finds the continued-fraction convergent p/q of `x` with q <= bound and
/// |x - p/q| < tol.
pub fn recognize_rational_real(
    x: &BigFloat,
    bound: &BigInt,
    tol: &BigFloat,
) -> Result<BigRational, RingError> {
    let prec = x.prec();
    let mut a = x.clone();
    // convergents p_k/q_k
    let (mut p0, mut q0) = (BigInt::from(1), BigInt::zero());
    let (mut p1, mut q1) = (x.floor_int(), BigInt::from(1));
    for _ in 0..prec {
        let cand = BigRational::new(p1.clone(), q1.clone());
        let diff = x.sub(&BigFloat::from_ratio(&cand, prec)).abs();
        if q1.abs() <= *bound && diff < *tol {
            return Ok(cand);
        }
        let f = a.floor_int();
        let frac = a.sub(&BigFloat::from_bigint(&f, prec));
        if frac.is_zero() || frac.ilog2().unwrap_or(i64::MIN) < -(prec as i64) + 8 {
            break;
        }
        a = frac.recip();
        let an = a.floor_int();
        // note: the first iteration recomputes a1 from the fractional part
        let p2 = &an * &p1 + &p0;
        let q2 = &an * &q1 + &q0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        if q1 > bound * BigInt::from(1_000_000u64) {
            break;
        }
    }
    let cand = BigRational::new(p1, q1.clone());
    if q1.abs() <= *bound && x.sub(&BigFloat::from_ratio(&cand, prec)).abs() < *tol {
        Ok(cand)
    } else {
        Err(RingError::NoRecognition)
    }
}

/// Recognizes a complex value with negligible imaginary part as a rational.
pub fn recognize_rational(
    z: &BigComplex,
    bound: u64,
    tol: &BigFloat,
) -> Result<BigRational, RingError> {
    if z.im.abs() >= *tol {
        return Err(RingError::NoRecognition);
    }
    recognize_rational_real(&z.re, &BigInt::from(bound), tol)
}

/// Recognizes z as an element a + b*sqrt(-3) of Q(omega), returned as a
/// cyclotomic element of order 3 (a + b*sqrt(-3) = (a+b) + 2b*omega).
pub fn recognize_quadomega(
    z: &BigComplex,
    bound: u64,
    tol: &BigFloat,
) -> Result<CycloElem, RingError> {
    let prec = z.prec();
    let sqrt3 = BigFloat::from_i64(3, prec).sqrt();
    let b_float = z.im.div(&sqrt3);
    let b = recognize_rational_real(&b_float, &BigInt::from(bound), tol)?;
    let a = recognize_rational_real(&z.re, &BigInt::from(bound), tol)?;
    // verify the recognition as a pair
    let back_re = BigFloat::from_ratio(&a, prec);
    let back_im = BigFloat::from_ratio(&b, prec).mul(&sqrt3);
    if z.re.sub(&back_re).abs() >= *tol || z.im.sub(&back_im).abs() >= *tol {
        return Err(RingError::NoRecognition);
    }
    Ok(CycloElem::from_rational(3, &a).add(&CycloElem::sqrt_m3().scale(&b)))
}

/// Rational reconstruction: finds p/q with p = q*r mod m, |p| <= a_bound,
/// 0 < q <= b_bound, gcd(q, m) = 1. Classic half-extended Euclid.
pub fn rational_reconstruct(
    r: &BigInt,
    m: &BigInt,
    a_bound: &BigInt,
    b_bound: &BigInt,
) -> Option<BigRational> {
    let mut r0 = m.clone();
    let mut r1 = r.mod_floor(m);
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::from(1);
    while r1.abs() > *a_bound {
        if r1.is_zero() {
            return None;
        }
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.abs() > *b_bound {
        return None;
    }
    let (num, den) = if t1.is_negative() { (-r1, -t1) } else { (r1, t1) };
    if num.gcd(&den) != BigInt::from(1) && !num.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

trait ModFloorExt {
    fn mod_floor(&self, m: &BigInt) -> BigInt;
    fn gcd(&self, other: &BigInt) -> BigInt;
}

impl ModFloorExt for BigInt {
    fn mod_floor(&self, m: &BigInt) -> BigInt {
        num_integer::Integer::mod_floor(self, m)
    }
    fn gcd(&self, other: &BigInt) -> BigInt {
        num_integer::Integer::gcd(self, other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::float::digits_to_bits;

    fn tol(prec: u32, digits: i64) -> BigFloat {
        BigFloat::from_i64(10, prec).powi(-digits)
    }

    // [OP] recognize_rational examples
    #[test]
    fn recognize_simple_fractions() {
        let p = digits_to_bits(40);
        let t = tol(p, 25);
        let fifth = BigComplex::from_ratio(&BigRational::new(1.into(), 5.into()), p);
        assert_eq!(recognize_rational(&fifth, 100, &t).unwrap(), BigRational::new(1.into(), 5.into()));
        let third = BigComplex::from_ratio(&BigRational::new(1.into(), 3.into()), p);
        assert_eq!(recognize_rational(&third, 100, &t).unwrap(), BigRational::new(1.into(), 3.into()));
        // a number with no small-denominator convergent within tolerance
        let x = BigComplex::from_real(
            BigFloat::from_decimal_str("0.1234567890123456", p).unwrap(),
        );
        assert!(recognize_rational(&x, 100, &t).is_err());
    }

    #[test]
    fn recognize_round_trip_small() {
        // recognize(embed(p/q)) = p/q for all |p|, q <= 50 at 30+ digits
        let p = digits_to_bits(32);
        let t = tol(p, 20);
        for num in (-50i64..=50).step_by(7) {
            for den in (1i64..=50).step_by(3) {
                let r = BigRational::new(num.into(), den.into());
                let z = BigComplex::from_ratio(&r, p);
                assert_eq!(recognize_rational(&z, 50, &t).unwrap(), r, "{}/{}", num, den);
            }
        }
    }

    // [OP] recognize_quadomega examples
    #[test]
    fn recognize_quad() {
        let p = digits_to_bits(40);
        let t = tol(p, 25);
        // i*sqrt(3) -> sqrt(-3) = 1 + 2 omega
        let z = BigComplex::new(BigFloat::zero(p), BigFloat::from_i64(3, p).sqrt());
        assert_eq!(recognize_quadomega(&z, 100, &t).unwrap(), CycloElem::sqrt_m3());
        // 2.5 -> 5/2
        let z = BigComplex::from_ratio(&BigRational::new(5.into(), 2.into()), p);
        assert_eq!(
            recognize_quadomega(&z, 100, &t).unwrap(),
            CycloElem::from_rational(3, &BigRational::new(5.into(), 2.into()))
        );
        // 1/2 + i sqrt(3)/2 = omega + 1
        let z = CycloElem::zeta(3).add(&CycloElem::one(3)).embed_complex(p);
        assert_eq!(
            recognize_quadomega(&z, 100, &t).unwrap(),
            CycloElem::zeta(3).add(&CycloElem::one(3))
        );
    }

    #[test]
    fn reconstruct_3adic() {
        // 2/5 mod 3^20
        let m = BigInt::from(3u32).pow(20);
        let inv5 = crate::rings::padic::mod_inverse(&BigInt::from(5), &m).unwrap();
        let r = (BigInt::from(2) * inv5) % &m;
        let b = BigInt::from(1000u64);
        let rec = rational_reconstruct(&r, &m, &b, &b).unwrap();
        assert_eq!(rec, BigRational::new(2.into(), 5.into()));
        // negative value
        let r = num_integer::Integer::mod_floor(&BigInt::from(-7), &m);
        let rec = rational_reconstruct(&r, &m, &b, &b).unwrap();
        assert_eq!(rec, BigRational::new((-7).into(), 1.into()));
    }
}
