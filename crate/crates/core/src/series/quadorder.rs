//! The quadratic order Q(theta) with theta^2 = t*theta - 3.
//!
//! Coefficients of 3-stabilized forms live here exactly. The two roots of
//! X^2 - tX + 3 are theta and t - theta; the 3-adic evaluation sends theta
//! to the unit root, the complex evaluation to a chosen complex root.

use num_bigint::BigInt;

use crate::rings::complex::BigComplex;
use crate::rings::float::BigFloat;
use crate::rings::padic::{hensel_unit_root, Padic3};
use crate::rings::{BigRational, RingError};

#[derive(Clone, PartialEq, Debug)]
pub struct QuadraticOrderElem {
    /// trace parameter t = a_p of the underlying curve; 0 marks a pure
    /// rational usable in any order
    t: i64,
    a: BigRational,
    b: BigRational,
}

impl QuadraticOrderElem {
    pub fn new(t: i64, a: BigRational, b: BigRational) -> Self {
        QuadraticOrderElem { t, a, b }
    }

    pub fn rational_in(q: &BigRational) -> Self {
        QuadraticOrderElem { t: 0, a: q.clone(), b: num_traits::Zero::zero() }
    }

    pub fn theta(t: i64) -> Self {
        QuadraticOrderElem { t, a: num_traits::Zero::zero(), b: num_traits::One::one() }
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn trace_param(&self) -> i64 {
        self.t
    }

    pub fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(&self.a) && num_traits::Zero::is_zero(&self.b)
    }

    pub fn is_rational(&self) -> Option<BigRational> {
        if num_traits::Zero::is_zero(&self.b) {
            Some(self.a.clone())
        } else {
            None
        }
    }

    fn unify(t1: i64, t2: i64) -> i64 {
        match (t1, t2) {
            (0, t) | (t, 0) => t,
            (a, b) => {
                assert_eq!(a, b, "mixed quadratic orders: theta parameters {} vs {}", a, b);
                a
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        QuadraticOrderElem {
            t: Self::unify(self.t, o.t),
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }

    pub fn neg(&self) -> Self {
        QuadraticOrderElem { t: self.t, a: -&self.a, b: -&self.b }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let t = Self::unify(self.t, o.t);
        // (a + b th)(c + d th) = ac + (ad + bc) th + bd th^2,
        // th^2 = t th - 3
        let tq = BigRational::from_integer(t.into());
        let three = BigRational::from_integer(3.into());
        let bd = &self.b * &o.b;
        QuadraticOrderElem {
            t,
            a: &self.a * &o.a - &three * &bd,
            b: &self.a * &o.b + &self.b * &o.a + &tq * &bd,
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        QuadraticOrderElem { t: self.t, a: &self.a * q, b: &self.b * q }
    }

    /// Conjugate: theta -> t - theta.
    pub fn conj(&self) -> Self {
        let tq = BigRational::from_integer(self.t.into());
        QuadraticOrderElem { t: self.t, a: &self.a + &tq * &self.b, b: -&self.b }
    }

    /// Norm a^2 + t a b + 3 b^2 ... computed as self * conj.
    pub fn norm(&self) -> BigRational {
        let prod = self.mul(&self.conj());
        debug_assert!(num_traits::Zero::is_zero(&prod.b));
        prod.a
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if num_traits::Zero::is_zero(&n) {
            return None;
        }
        Some(self.conj().scale(&n.recip()))
    }

    /// 3-adic evaluation theta -> unit root of X^2 - tX + 3.
    pub fn eval_3adic(&self, prec: u32) -> Result<Padic3, RingError> {
        let av = Padic3::from_rational(&self.a, prec)?;
        if num_traits::Zero::is_zero(&self.b) {
            return Ok(av);
        }
        let u = hensel_unit_root(&BigInt::from(self.t), prec)?;
        let bv = Padic3::from_rational(&self.b, prec)?;
        Ok(av.add(&bv.mul(&u)))
    }

    /// Complex evaluation; `plus_root` selects theta = (t + sqrt(t^2-12))/2.
    /// For |t| < 4 the discriminant is negative and the root is complex.
    pub fn eval_complex(&self, prec: u32, plus_root: bool) -> BigComplex {
        let av = BigComplex::from_ratio(&self.a, prec);
        if num_traits::Zero::is_zero(&self.b) {
            return av;
        }
        let disc = BigComplex::from_i64(self.t * self.t - 12, prec);
        let mut sq = disc.sqrt();
        if !plus_root {
            sq = sq.neg();
        }
        let theta = BigComplex::from_i64(self.t, prec).add(&sq).mul_real(&BigFloat::from_ratio(
            &BigRational::new(1.into(), 2.into()),
            prec,
        ));
        av.add(&BigComplex::from_ratio(&self.b, prec).mul(&theta))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn ring_relations() {
        // 11a1 has a_3 = -1: theta^2 + theta + 3 = 0
        let th = QuadraticOrderElem::theta(-1);
        let sq = th.mul(&th);
        let rel = sq.add(&th).add(&QuadraticOrderElem::rational_in(&q(3, 1)));
        assert!(rel.is_zero());
        // norm(theta) = 3 (product of roots)
        assert_eq!(th.norm(), q(3, 1));
        // trace: theta + conj(theta) = t
        let tr = th.add(&th.conj());
        assert_eq!(tr.is_rational(), Some(q(-1, 1)));
    }

    #[test]
    fn both_evaluations_are_homomorphisms() {
        let th = QuadraticOrderElem::theta(-1);
        let x = th.scale(&q(2, 1)).add(&QuadraticOrderElem::rational_in(&q(5, 3)));
        let y = th.add(&QuadraticOrderElem::rational_in(&q(-1, 2)));
        let xy = x.mul(&y);
        // 3-adic
        let prec = 18;
        let lhs = xy.eval_3adic(prec).unwrap();
        let rhs = x.eval_3adic(prec).unwrap().mul(&y.eval_3adic(prec).unwrap());
        assert!(lhs.sub(&rhs).is_apparent_zero());
        // complex
        let p = 160;
        let lc = xy.eval_complex(p, true);
        let rc = x.eval_complex(p, true).mul(&y.eval_complex(p, true));
        assert!(lc.sub(&rc).abs().to_f64() < 1e-30);
    }

    #[test]
    fn theta_evaluates_to_unit_root() {
        let th = QuadraticOrderElem::theta(-1);
        let u = th.eval_3adic(10).unwrap();
        assert_eq!(u.valuation(), Some(0));
        // u^2 + u + 3 = 0 (a_p = -1)
        let f = u.mul(&u).add(&u).add(&Padic3::from_i64(3, 10));
        assert!(f.is_apparent_zero());
    }
}
