//! Capped-precision 3-adic numbers.
//!
//! A nonzero element is `3^val * unit` with `unit` an invertible residue
//! known modulo `3^prec` (so the element is known modulo `3^(val+prec)`).
//! An "apparent zero" carries only the information `v_3(x) >= val`; it is
//! produced by cancellation and by construction from the integer 0.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{RingError, BigRational};

fn pow3(n: u32) -> BigInt {
    BigInt::from(3u32).pow(n)
}

#[derive(Clone, PartialEq, Eq)]
pub struct Padic3 {
    /// valuation for nonzero, lower bound on the valuation for zero
    val: i64,
    /// invertible residue mod 3^prec, or 0 for an apparent zero
    unit: BigInt,
    /// relative precision in 3-adic digits (0 for an apparent zero)
    prec: u32,
}

impl Padic3 {
    /// The zero known to satisfy v_3 >= cap.
    pub fn zero_at(cap: i64) -> Self {
        Padic3 { val: cap, unit: BigInt::zero(), prec: 0 }
    }

    pub fn from_bigint(n: &BigInt, prec: u32) -> Self {
        if n.is_zero() {
            return Padic3::zero_at(prec as i64);
        }
        let mut val = 0i64;
        let mut u = n.clone();
        let three = BigInt::from(3u32);
        loop {
            let (q, r) = u.div_rem(&three);
            if r.is_zero() {
                u = q;
                val += 1;
            } else {
                break;
            }
        }
        let unit = u.mod_floor(&pow3(prec));
        Padic3 { val, unit, prec }
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Padic3::from_bigint(&BigInt::from(n), prec)
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Result<Self, RingError> {
        let num = Padic3::from_bigint(r.numer(), prec);
        let den = Padic3::from_bigint(r.denom(), prec);
        num.div(&den)
    }

    pub fn is_apparent_zero(&self) -> bool {
        self.unit.is_zero()
    }

    /// Exact valuation for nonzero, None for an apparent zero
    /// (whose valuation is only bounded below by [`Padic3::val_lower_bound`]).
    pub fn valuation(&self) -> Option<i64> {
        if self.is_apparent_zero() {
            None
        } else {
            Some(self.val)
        }
    }

    pub fn val_lower_bound(&self) -> i64 {
        self.val
    }

    pub fn rel_prec(&self) -> u32 {
        self.prec
    }

    /// Absolute precision: the element is known modulo 3^abs_prec.
    pub fn abs_prec(&self) -> i64 {
        self.val + self.prec as i64
    }

    pub fn unit_part(&self) -> &BigInt {
        &self.unit
    }

    pub fn neg(&self) -> Self {
        if self.is_apparent_zero() {
            return self.clone();
        }
        let m = pow3(self.prec);
        Padic3 { val: self.val, unit: (&m - &self.unit).mod_floor(&m), prec: self.prec }
    }

    pub fn add(&self, other: &Self) -> Self {
        let abs = self.abs_prec().min(other.abs_prec());
        if self.is_apparent_zero() && other.is_apparent_zero() {
            return Padic3::zero_at(abs);
        }
        if self.is_apparent_zero() {
            return other.truncate_abs(abs);
        }
        if other.is_apparent_zero() {
            return self.truncate_abs(abs);
        }
        let v0 = self.val.min(other.val);
        if abs <= v0 {
            return Padic3::zero_at(abs);
        }
        let digits = (abs - v0) as u32;
        let m = pow3(digits);
        let a = (&self.unit * pow3((self.val - v0) as u32)).mod_floor(&m);
        let b = (&other.unit * pow3((other.val - v0) as u32)).mod_floor(&m);
        let s = (a + b).mod_floor(&m);
        Self::from_residue(s, v0, abs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Builds an element from `residue * 3^shift` known modulo `3^(abs-shift)`.
    fn from_residue(residue: BigInt, shift: i64, abs: i64) -> Self {
        if residue.is_zero() {
            return Padic3::zero_at(abs);
        }
        let x = Padic3::from_bigint(&residue, (abs - shift) as u32);
        let val = x.val + shift;
        let prec = (abs - val) as u32;
        Padic3 { val, unit: x.unit.mod_floor(&pow3(prec)), prec }
    }

    fn truncate_abs(&self, abs: i64) -> Self {
        if self.is_apparent_zero() {
            return Padic3::zero_at(self.val.min(abs));
        }
        if abs <= self.val {
            return Padic3::zero_at(abs);
        }
        let prec = ((abs - self.val) as u32).min(self.prec);
        Padic3 { val: self.val, unit: self.unit.mod_floor(&pow3(prec)), prec }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_apparent_zero() || other.is_apparent_zero() {
            // v(xy) >= v_bound(x) + v_bound(y); relative precision is moot
            return Padic3::zero_at(self.val + other.val + self.prec.min(other.prec) as i64);
        }
        let prec = self.prec.min(other.prec);
        let unit = (&self.unit * &other.unit).mod_floor(&pow3(prec));
        Padic3 { val: self.val + other.val, unit, prec }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        self.mul(&Padic3::from_i64(k, self.prec.max(1)))
    }

    pub fn inv(&self) -> Result<Self, RingError> {
        if self.is_apparent_zero() {
            return Err(RingError::DivisionByApparentZero);
        }
        let m = pow3(self.prec);
        let u = mod_inverse(&self.unit, &m).ok_or(RingError::DivisionByApparentZero)?;
        Ok(Padic3 { val: -self.val, unit: u, prec: self.prec })
    }

    pub fn div(&self, other: &Self) -> Result<Self, RingError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut acc = Padic3::from_i64(1, self.prec.max(1));
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// The canonical residue of the element modulo 3^k (requires abs_prec >= k
    /// and valuation >= 0).
    pub fn residue_mod(&self, k: u32) -> Result<BigInt, RingError> {
        if self.abs_prec() < k as i64 {
            return Err(RingError::PrecisionExhausted);
        }
        if self.is_apparent_zero() {
            return Ok(BigInt::zero());
        }
        if self.val < 0 {
            return Err(RingError::NotIntegral);
        }
        Ok((&self.unit * pow3(self.val.min(k as i64) as u32)).mod_floor(&pow3(k)))
    }

    /// Base-3 digit string of the canonical residue mod 3^k, most significant
    /// digit first, prefixed with "...". For reports.
    pub fn digits_string(&self, k: u32) -> String {
        match self.residue_mod(k) {
            Err(_) => "?".to_string(),
            Ok(mut r) => {
                let mut ds = Vec::new();
                let three = BigInt::from(3u32);
                for _ in 0..k {
                    let (q, rem) = r.div_rem(&three);
                    ds.push(char::from(b'0' + rem.to_u8().unwrap_or(0)));
                    r = q;
                }
                ds.reverse();
                format!("...{}", ds.into_iter().collect::<String>())
            }
        }
    }
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

impl fmt::Debug for Padic3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_apparent_zero() {
            write!(f, "O(3^{})", self.val)
        } else {
            write!(f, "3^{} * {} + O(3^{})", self.val, self.unit, self.abs_prec())
        }
    }
}

/// The 3-adic unit root of X^2 - a_p X + p at p = 3, by Newton iteration.
///
/// Fails with `NotOrdinary` when 3 | a_p.
pub fn hensel_unit_root(a_p: &BigInt, prec: u32) -> Result<Padic3, RingError> {
    if a_p.mod_floor(&BigInt::from(3u32)).is_zero() {
        return Err(RingError::NotOrdinary);
    }
    // f(X) = X^2 - a_p X + 3; the unit root is congruent to a_p mod 3
    let mut k = 2u32; // current absolute precision of the iterate
    let mut m = BigInt::from(9u32);
    let mut u = a_p.mod_floor(&BigInt::from(3u32));
    // lift u mod 3 to a root mod 9 by brute force, then Newton
    'outer: for t in 0..3u32 {
        let cand = &u + BigInt::from(3 * t);
        let f = (&cand * &cand - a_p * &cand + BigInt::from(3u32)).mod_floor(&m);
        if f.is_zero() {
            u = cand;
            break 'outer;
        }
    }
    while k < prec {
        k = (2 * k).min(prec);
        m = pow3(k);
        let f = (&u * &u - a_p * &u + BigInt::from(3u32)).mod_floor(&m);
        let fp = (&u * BigInt::from(2u32) - a_p).mod_floor(&m);
        let fp_inv = mod_inverse(&fp, &m).expect("f'(u) is a unit for ordinary a_p");
        u = (&u - f * fp_inv).mod_floor(&m);
    }
    Ok(Padic3 { val: 0, unit: u.mod_floor(&pow3(prec)), prec })
}
