//! Arbitrary-precision binary floating point on top of `num-bigint`.
//!
//! A value is `mant * 2^exp` with `|mant| < 2^prec`. Rounding is
//! round-half-up on the magnitude at `prec` bits; callers that need a
//! guaranteed number of correct digits work at `prec = digits·log2(10) + guard`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use super::BigRational;

/// Converts a decimal-digit count to a working precision in bits,
/// including guard bits.
pub fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 32
}

#[derive(Clone, PartialEq, Eq)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        BigFloat { mant: BigInt::zero(), exp: 0, prec }
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        let mut x = BigFloat { mant: BigInt::from(v), exp: 0, prec };
        x.normalize();
        x
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        let mut x = BigFloat { mant: v.clone(), exp: 0, prec };
        x.normalize();
        x
    }

    pub fn from_ratio(r: &BigRational, prec: u32) -> Self {
        let num = BigFloat::from_bigint(r.numer(), prec + 8);
        let den = BigFloat::from_bigint(r.denom(), prec + 8);
        let mut q = num.div(&den);
        q.prec = prec;
        q.normalize();
        q
    }

    /// Parses a plain decimal literal such as `-12.3456` or `0.00001`.
    pub fn from_decimal_str(s: &str, prec: u32) -> Option<Self> {
        let s = s.trim();
        let (neg, s) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int_part, frac_part) = match s.split_once('.') {
            Some((a, b)) => (a, b),
            None => (s, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        let digits: String = format!("{}{}", int_part, frac_part);
        if !digits.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let num: BigInt = digits.parse().ok()?;
        let den = BigInt::from(10u32).pow(frac_part.len() as u32);
        let r = BigRational::new(if neg { -num } else { num }, den);
        Some(BigFloat::from_ratio(&r, prec))
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        let mut x = self.clone();
        x.prec = prec;
        x.normalize();
        x
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    /// log2 of the magnitude, rounded down; `None` for zero.
    pub fn ilog2(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.mant.bits() as i64 - 1)
        }
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let bits = self.mant.bits();
        if bits > self.prec as u64 {
            let shift = bits - self.prec as u64;
            let (sign, mut mag) = self.mant.clone().into_parts();
            let round_up = mag.bit(shift - 1);
            mag >>= shift;
            if round_up {
                mag += 1u32;
            }
            self.exp += shift as i64;
            self.mant = BigInt::from_biguint(sign, mag);
            // rounding may have produced an extra bit
            if self.mant.bits() > self.prec as u64 {
                let (sign, mut mag) = self.mant.clone().into_parts();
                mag >>= 1u8;
                self.exp += 1;
                self.mant = BigInt::from_biguint(sign, mag);
            }
        }
    }

    pub fn neg(&self) -> Self {
        BigFloat { mant: -&self.mant, exp: self.exp, prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        if self.is_zero() {
            return other.with_prec(prec);
        }
        if other.is_zero() {
            return self.with_prec(prec);
        }
        let (hi, lo) = if self.exp >= other.exp { (self, other) } else { (other, self) };
        let shift = (hi.exp - lo.exp) as u64;
        // the low operand cannot influence the result beyond this gap
        let gap = prec as u64 + 4;
        if shift > gap + hi.mant.bits().max(lo.mant.bits()) {
            return hi.with_prec(prec);
        }
        let mant = (&hi.mant << shift) + &lo.mant;
        let mut r = BigFloat { mant, exp: lo.exp, prec };
        r.normalize();
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        let mut r = BigFloat { mant: &self.mant * &other.mant, exp: self.exp + other.exp, prec };
        r.normalize();
        r
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        let mut r = BigFloat { mant: &self.mant * k, exp: self.exp, prec: self.prec };
        r.normalize();
        r
    }

    pub fn div(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        assert!(!other.is_zero(), "BigFloat division by zero");
        if self.is_zero() {
            return BigFloat::zero(prec);
        }
        let extra = prec as u64 + 4 + other.mant.bits();
        let num = &self.mant << extra;
        let mant = num / &other.mant;
        let mut r = BigFloat { mant, exp: self.exp - other.exp - extra as i64, prec };
        r.normalize();
        r
    }

    pub fn recip(&self) -> Self {
        BigFloat::from_i64(1, self.prec).div(self)
    }

    /// Multiplies by 2^k.
    pub fn ldexp(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        BigFloat { mant: self.mant.clone(), exp: self.exp + k, prec: self.prec }
    }

    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        self.abs().partial_cmp(&other.abs()).unwrap()
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let (m, e) = if bits > 53 {
            let shift = bits - 53;
            ((&self.mant >> shift).to_i64().unwrap(), self.exp + shift as i64)
        } else {
            (self.mant.to_i64().unwrap(), self.exp)
        };
        if e > 1020 {
            if m > 0 { f64::INFINITY } else { f64::NEG_INFINITY }
        } else if e < -1070 {
            0.0
        } else {
            (m as f64) * (e as f64).exp2()
        }
    }

    /// Nearest integer.
    pub fn round(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mant << self.exp as u64;
        }
        let shift = (-self.exp) as u64;
        if shift > self.mant.bits() + 1 {
            return BigInt::zero();
        }
        let (sign, mut mag) = self.mant.clone().into_parts();
        let round_up = mag.bit(shift - 1);
        mag >>= shift;
        if round_up {
            mag += 1u32;
        }
        BigInt::from_biguint(sign, mag)
    }

    pub fn floor_int(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mant << self.exp as u64;
        }
        let shift = (-self.exp) as u64;
        // BigInt shr rounds toward negative infinity, which is floor
        &self.mant >> shift
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "BigFloat sqrt of negative value");
        if self.is_zero() {
            return self.clone();
        }
        let prec = self.prec;
        let target = 2 * prec as u64 + 6;
        let bits = self.mant.bits();
        let mut shift = target.saturating_sub(bits);
        if (self.exp - shift as i64) % 2 != 0 {
            shift += 1;
        }
        let m2: BigUint = (self.mant.magnitude() << shift).clone();
        let r = m2.sqrt();
        let mut out =
            BigFloat { mant: BigInt::from(r), exp: (self.exp - shift as i64) / 2, prec };
        out.normalize();
        out
    }

    pub fn powi(&self, n: i64) -> Self {
        if n == 0 {
            return BigFloat::from_i64(1, self.prec);
        }
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut base = self.clone();
        let mut acc = BigFloat::from_i64(1, self.prec);
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    // ---- elementary transcendentals ----

    pub fn exp(&self) -> Self {
        let prec = self.prec;
        let work = prec + 24 + (self.ilog2().unwrap_or(0).max(0) as u32);
        let x = self.with_prec(work);
        let l2 = ln2(work);
        // x = k ln2 + r
        let k = x.div(&l2).round();
        let k_i = k.to_i64().expect("exp argument out of range");
        let r = x.sub(&BigFloat::from_bigint(&k, work).mul(&l2));
        // halve further for faster Taylor convergence
        let j = (work as f64).sqrt() as i64 + 2;
        let r_small = r.ldexp(-j);
        let mut term = BigFloat::from_i64(1, work);
        let mut sum = BigFloat::from_i64(1, work);
        let mut n = 1i64;
        loop {
            term = term.mul(&r_small).div(&BigFloat::from_i64(n, work));
            sum = sum.add(&term);
            if term.is_zero() || term.ilog2().unwrap() < sum.ilog2().unwrap_or(0) - work as i64 - 4
            {
                break;
            }
            n += 1;
        }
        let mut out = sum;
        for _ in 0..j {
            out = out.mul(&out);
        }
        out.ldexp(k_i).with_prec(prec)
    }

    pub fn ln(&self) -> Self {
        assert!(!self.is_negative() && !self.is_zero(), "BigFloat ln of non-positive value");
        let prec = self.prec;
        let work = prec + 24;
        let x = self.with_prec(work);
        // write x = m * 2^e with m in [1, 2)
        let e = x.ilog2().unwrap();
        let m = x.ldexp(-e);
        // ln m = 2 atanh((m-1)/(m+1)), argument in [0, 1/3]
        let one = BigFloat::from_i64(1, work);
        let t = m.sub(&one).div(&m.add(&one));
        let t2 = t.mul(&t);
        let mut term = t.clone();
        let mut sum = t.clone();
        let mut n = 1i64;
        loop {
            term = term.mul(&t2);
            let contrib = term.div(&BigFloat::from_i64(2 * n + 1, work));
            sum = sum.add(&contrib);
            if contrib.is_zero()
                || contrib.ilog2().unwrap() < sum.ilog2().unwrap_or(0) - work as i64 - 4
            {
                break;
            }
            n += 1;
        }
        let lnm = sum.ldexp(1);
        lnm.add(&ln2(work).mul_i64(e)).with_prec(prec)
    }

    /// x^y for x > 0 and real y.
    pub fn pow(&self, y: &Self) -> Self {
        if y.is_zero() {
            return BigFloat::from_i64(1, self.prec.max(y.prec));
        }
        self.ln().mul(y).exp()
    }

    /// Simultaneous sine and cosine.
    pub fn sin_cos(&self) -> (Self, Self) {
        let prec = self.prec;
        let mag_bits = self.ilog2().unwrap_or(0).max(0) as u32;
        let work = prec + 24 + mag_bits;
        let x = self.with_prec(work);
        let half_pi = pi(work).ldexp(-1);
        let q = x.div(&half_pi).round();
        let quadrant = Integer::mod_floor(&q, &BigInt::from(4)).to_i64().unwrap();
        let r = x.sub(&BigFloat::from_bigint(&q, work).mul(&half_pi));
        // now |r| <= pi/4; halve twice for convergence
        let j = 2;
        let r_small = r.ldexp(-j);
        let r2 = r_small.mul(&r_small);
        let mut term = r_small.clone();
        let mut sin = r_small.clone();
        let mut n = 1i64;
        loop {
            term = term.mul(&r2).div(&BigFloat::from_i64(-(2 * n) * (2 * n + 1), work));
            sin = sin.add(&term);
            if term.is_zero() || term.ilog2().unwrap() < -(work as i64) - 4 {
                break;
            }
            n += 1;
        }
        let one = BigFloat::from_i64(1, work);
        let mut cos = one.sub(&sin.mul(&sin)).sqrt(); // |r_small| < 1: cos > 0
        let mut s = sin;
        for _ in 0..j {
            let s2 = s.mul(&cos).ldexp(1);
            let c2 = cos.mul(&cos).sub(&s.mul(&s));
            s = s2;
            cos = c2;
        }
        let (s_out, c_out) = match quadrant {
            0 => (s, cos),
            1 => (cos, s.neg()),
            2 => (s.neg(), cos.neg()),
            _ => (cos.neg(), s),
        };
        (s_out.with_prec(prec), c_out.with_prec(prec))
    }

    pub fn to_decimal_string(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.is_negative();
        let mag = self.abs();
        // value = mant * 2^exp; find decimal exponent
        let log10 = (mag.ilog2().unwrap() as f64) * std::f64::consts::LN_2
            / std::f64::consts::LN_10;
        let dec_exp = log10.floor() as i64;
        // scaled = value * 10^(digits-1-dec_exp) should have `digits` digits
        let shift = digits as i64 - 1 - dec_exp;
        let ten = BigFloat::from_i64(10, self.prec + 64);
        let scaled = if shift >= 0 {
            mag.with_prec(self.prec + 64).mul(&ten.powi(shift))
        } else {
            mag.with_prec(self.prec + 64).div(&ten.powi(-shift))
        };
        let int = scaled.round();
        let s = int.to_string();
        // re-derive the exponent in case rounding pushed us over a power of 10
        let actual_exp = dec_exp + (s.len() as i64 - digits as i64);
        let (first, rest) = s.split_at(1);
        let body = if rest.is_empty() {
            first.to_string()
        } else {
            format!("{}.{}", first, rest)
        };
        let sign = if neg { "-" } else { "" };
        if actual_exp == 0 {
            format!("{}{}", sign, body)
        } else {
            format!("{}{}e{}", sign, body, actual_exp)
        }
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let d = self.sub(other);
        Some(if d.is_zero() {
            Ordering::Equal
        } else if d.is_negative() {
            Ordering::Less
        } else {
            Ordering::Greater
        })
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(20))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string((self.prec as f64 / 3.33) as usize))
    }
}

// ---- cached constants ----

static PI_CACHE: Lazy<Mutex<HashMap<u32, BigFloat>>> = Lazy::new(|| Mutex::new(HashMap::new()));
static LN2_CACHE: Lazy<Mutex<HashMap<u32, BigFloat>>> = Lazy::new(|| Mutex::new(HashMap::new()));

fn bucket(prec: u32) -> u32 {
    (prec / 64 + 1) * 64
}

/// arctan(1/n) * 2^prec as an integer, by the Taylor series.
fn atan_recip_scaled(n: u64, prec: u64) -> BigInt {
    let one = BigInt::one() << prec;
    let n2 = BigInt::from(n * n);
    let mut power = one / n; // 2^prec / n^(2k+1)
    let mut sum = power.clone();
    let mut k = 1u64;
    loop {
        power = power / &n2;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

/// pi at the given precision (Machin's formula).
pub fn pi(prec: u32) -> BigFloat {
    let b = bucket(prec);
    {
        let cache = PI_CACHE.lock().unwrap();
        if let Some(v) = cache.get(&b) {
            return v.with_prec(prec);
        }
    }
    let work = b as u64 + 32;
    let a5 = atan_recip_scaled(5, work);
    let a239 = atan_recip_scaled(239, work);
    let scaled = a5 * 16 - a239 * 4;
    let mut v = BigFloat { mant: scaled, exp: -(work as i64), prec: b };
    v.normalize();
    PI_CACHE.lock().unwrap().insert(b, v.clone());
    v.with_prec(prec)
}

/// ln(2) at the given precision, via 2 atanh(1/3).
pub fn ln2(prec: u32) -> BigFloat {
    let b = bucket(prec);
    {
        let cache = LN2_CACHE.lock().unwrap();
        if let Some(v) = cache.get(&b) {
            return v.with_prec(prec);
        }
    }
    let work = b as u64 + 32;
    let nine = BigInt::from(9u32);
    let mut power = (BigInt::one() << work) / 3u32;
    let mut sum = power.clone();
    let mut k = 1u64;
    loop {
        power = power / &nine;
        if power.is_zero() {
            break;
        }
        sum += &power / BigInt::from(2 * k + 1);
        k += 1;
    }
    let mut v = BigFloat { mant: sum * 2, exp: -(work as i64), prec: b };
    v.normalize();
    LN2_CACHE.lock().unwrap().insert(b, v.clone());
    v.with_prec(prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &BigFloat, b: f64, tol: f64) -> bool {
        (a.to_f64() - b).abs() < tol
    }

    #[test]
    fn arithmetic_basics() {
        let p = 128;
        let a = BigFloat::from_i64(3, p);
        let b = BigFloat::from_i64(7, p);
        assert!(close(&a.div(&b), 3.0 / 7.0, 1e-15));
        assert!(close(&a.mul(&b), 21.0, 1e-12));
        assert!(close(&a.sub(&b), -4.0, 1e-12));
        let r = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert!(close(&BigFloat::from_ratio(&r, p), 1.0 / 3.0, 1e-15));
    }

    #[test]
    fn sqrt_exp_ln() {
        let p = digits_to_bits(50);
        let two = BigFloat::from_i64(2, p);
        let s = two.sqrt();
        assert!(close(&s.mul(&s), 2.0, 1e-14));
        let e1 = BigFloat::from_i64(1, p).exp();
        assert!(close(&e1, std::f64::consts::E, 1e-14));
        assert!(close(&e1.ln(), 1.0, 1e-14));
        // round trip at high precision
        let x = BigFloat::from_decimal_str("1.37", p).unwrap();
        let d = x.ln().exp().sub(&x);
        assert!(d.is_zero() || d.ilog2().unwrap() < -(p as i64) + 24);
    }

    #[test]
    fn pi_and_trig() {
        let p = digits_to_bits(50);
        let pi_v = pi(p);
        assert!(close(&pi_v, std::f64::consts::PI, 1e-14));
        let (s, c) = pi_v.ldexp(-2).sin_cos(); // pi/4
        assert!(close(&s, std::f64::consts::FRAC_1_SQRT_2, 1e-14));
        assert!(close(&c, std::f64::consts::FRAC_1_SQRT_2, 1e-14));
        let (s, c) = pi_v.mul_i64(3).sin_cos(); // 3 pi
        assert!(close(&s, 0.0, 1e-14));
        assert!(close(&c, -1.0, 1e-14));
    }

    #[test]
    fn decimal_io() {
        let p = digits_to_bits(40);
        let x = BigFloat::from_decimal_str("0.2", p).unwrap();
        let s = x.to_decimal_string(30);
        assert!(s.starts_with("2.0000000000"), "{}", s);
        assert!(s.ends_with("e-1"), "{}", s);
        let y = BigFloat::from_decimal_str("-123.5", p).unwrap();
        assert!(close(&y, -123.5, 1e-12));
    }

    #[test]
    fn pow_fractional() {
        let p = digits_to_bits(40);
        let x = BigFloat::from_i64(2, p);
        let half = BigFloat::from_ratio(&BigRational::new(1.into(), 2.into()), p);
        let r = x.pow(&half);
        assert!(close(&r, std::f64::consts::SQRT_2, 1e-14));
    }
}
