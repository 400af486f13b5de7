//! Complex numbers over [`BigFloat`].

use std::fmt;

use super::float::{pi, BigFloat};
use super::BigRational;

#[derive(Clone, PartialEq)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        BigComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        BigComplex { re: BigFloat::zero(prec), im: BigFloat::zero(prec) }
    }

    pub fn one(prec: u32) -> Self {
        BigComplex { re: BigFloat::from_i64(1, prec), im: BigFloat::zero(prec) }
    }

    pub fn i(prec: u32) -> Self {
        BigComplex { re: BigFloat::zero(prec), im: BigFloat::from_i64(1, prec) }
    }

    pub fn from_real(re: BigFloat) -> Self {
        let p = re.prec();
        BigComplex { re, im: BigFloat::zero(p) }
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        BigComplex::from_real(BigFloat::from_i64(v, prec))
    }

    pub fn from_ratio(r: &BigRational, prec: u32) -> Self {
        BigComplex::from_real(BigFloat::from_ratio(r, prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        BigComplex { re: self.re.with_prec(prec), im: self.im.with_prec(prec) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn neg(&self) -> Self {
        BigComplex { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn add(&self, o: &Self) -> Self {
        BigComplex { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        BigComplex { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        BigComplex {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn mul_real(&self, s: &BigFloat) -> Self {
        BigComplex { re: self.re.mul(s), im: self.im.mul(s) }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        BigComplex { re: self.re.mul_i64(k), im: self.im.mul_i64(k) }
    }

    pub fn div(&self, o: &Self) -> Self {
        let n = o.norm_sqr();
        let t = self.mul(&o.conj());
        BigComplex { re: t.re.div(&n), im: t.im.div(&n) }
    }

    pub fn recip(&self) -> Self {
        BigComplex::one(self.prec()).div(self)
    }

    pub fn norm_sqr(&self) -> BigFloat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt()
    }

    pub fn exp(&self) -> Self {
        let r = self.re.exp();
        let (s, c) = self.im.sin_cos();
        BigComplex { re: r.mul(&c), im: r.mul(&s) }
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let prec = self.prec();
        if self.im.is_zero() {
            if self.re.is_negative() {
                return BigComplex {
                    re: BigFloat::zero(prec),
                    im: self.re.neg().sqrt(),
                };
            }
            return BigComplex::from_real(self.re.sqrt());
        }
        let m = self.abs();
        let re = m.add(&self.re).ldexp(-1).sqrt();
        let im_mag = m.sub(&self.re).ldexp(-1).sqrt();
        let im = if self.im.is_negative() { im_mag.neg() } else { im_mag };
        BigComplex { re, im }
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, n: i64) -> Self {
        if n == 0 {
            return BigComplex::one(self.prec());
        }
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut base = self.clone();
        let mut acc = BigComplex::one(self.prec());
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

    /// e^{2 pi i z}, the building block for q-expansions.
    pub fn exp_2pi_i(z: &BigComplex) -> BigComplex {
        let prec = z.prec();
        let two_pi = pi(prec).ldexp(1);
        BigComplex { re: z.im.mul(&two_pi).neg(), im: z.re.mul(&two_pi) }.exp()
    }
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i)", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::float::digits_to_bits;

    #[test]
    fn complex_arithmetic() {
        let p = digits_to_bits(40);
        let z = BigComplex::new(BigFloat::from_i64(3, p), BigFloat::from_i64(4, p));
        assert!((z.abs().to_f64() - 5.0).abs() < 1e-14);
        let w = z.mul(&z.recip());
        assert!((w.re.to_f64() - 1.0).abs() < 1e-14);
        assert!(w.im.to_f64().abs() < 1e-14);
        let s = z.sqrt();
        let back = s.mul(&s);
        assert!((back.re.to_f64() - 3.0).abs() < 1e-12);
        assert!((back.im.to_f64() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn exp_unit_circle() {
        let p = digits_to_bits(40);
        // e^{2 pi i * (1/4)} = i
        let quarter = BigComplex::from_ratio(&BigRational::new(1.into(), 4.into()), p);
        let q = BigComplex::exp_2pi_i(&quarter);
        assert!(q.re.to_f64().abs() < 1e-14);
        assert!((q.im.to_f64() - 1.0).abs() < 1e-14);
    }
}
