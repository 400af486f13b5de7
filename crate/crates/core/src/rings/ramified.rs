//! The ramified quadratic extension Q_3(sqrt(-3)).
//!
//! Elements are `x + y*pi` with `pi^2 = -3`. Valuations are counted in
//! pi-units, so v(pi) = 1 and v(3) = 2, and every valuation is an integer.

use std::fmt;


use super::cyclo::CycloElem;
use super::padic::Padic3;
use super::{RingError, BigRational};

#[derive(Clone, PartialEq, Eq)]
pub struct RamifiedPadic3 {
    pub x: Padic3,
    pub y: Padic3,
}

impl RamifiedPadic3 {
    pub fn new(x: Padic3, y: Padic3) -> Self {
        RamifiedPadic3 { x, y }
    }

    pub fn from_padic(x: Padic3) -> Self {
        let cap = x.abs_prec();
        RamifiedPadic3 { x, y: Padic3::zero_at(cap) }
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        RamifiedPadic3::from_padic(Padic3::from_i64(n, prec))
    }

    pub fn sqrt_m3(prec: u32) -> Self {
        RamifiedPadic3 { x: Padic3::zero_at(prec as i64), y: Padic3::from_i64(1, prec) }
    }

    pub fn is_apparent_zero(&self) -> bool {
        self.x.is_apparent_zero() && self.y.is_apparent_zero()
    }

    /// Valuation in pi-units (v(3) = 2); exact for elements whose leading
    /// component is resolved, None for apparent zero.
    pub fn valuation(&self) -> Option<i64> {
        let vx = self.x.valuation().map(|v| 2 * v);
        let vy = self.y.valuation().map(|v| 2 * v + 1);
        match (vx, vy) {
            (None, None) => None,
            (Some(v), None) => {
                // the y part is an apparent zero; its bound must not undercut vx
                if 2 * self.y.val_lower_bound() + 1 > v {
                    Some(v)
                } else {
                    None
                }
            }
            (None, Some(v)) => {
                if 2 * self.x.val_lower_bound() > v {
                    Some(v)
                } else {
                    None
                }
            }
            // parities differ, the two components never interfere
            (Some(a), Some(b)) => Some(a.min(b)),
        }
    }

    pub fn val_lower_bound(&self) -> i64 {
        (2 * self.x.val_lower_bound()).min(2 * self.y.val_lower_bound() + 1)
    }

    pub fn neg(&self) -> Self {
        RamifiedPadic3 { x: self.x.neg(), y: self.y.neg() }
    }

    pub fn conj(&self) -> Self {
        RamifiedPadic3 { x: self.x.clone(), y: self.y.neg() }
    }

    pub fn add(&self, o: &Self) -> Self {
        RamifiedPadic3 { x: self.x.add(&o.x), y: self.y.add(&o.y) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        RamifiedPadic3 { x: self.x.sub(&o.x), y: self.y.sub(&o.y) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        // (a + b pi)(c + d pi) = (ac - 3bd) + (ad + bc) pi
        let three = Padic3::from_i64(3, 64);
        let ac = self.x.mul(&o.x);
        let bd = self.y.mul(&o.y);
        let ad = self.x.mul(&o.y);
        let bc = self.y.mul(&o.x);
        RamifiedPadic3 { x: ac.sub(&three.mul(&bd)), y: ad.add(&bc) }
    }

    pub fn div(&self, o: &Self) -> Result<Self, RingError> {
        // multiply by conj / norm, norm = c^2 + 3 d^2
        let three = Padic3::from_i64(3, 64);
        let norm = o.x.mul(&o.x).add(&three.mul(&o.y.mul(&o.y)));
        let num = self.mul(&o.conj());
        Ok(RamifiedPadic3 { x: num.x.div(&norm)?, y: num.y.div(&norm)? })
    }
}

impl fmt::Debug for RamifiedPadic3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) + ({:?})*pi", self.x, self.y)
    }
}

/// Embeds an element of Q(sqrt(-3)) (given as a cyclotomic element of
/// 2^a 3^b torsion order) into the ramified extension, sending
/// sqrt(-3) to +pi.
pub fn embed_3adic(x: &CycloElem, prec: u32) -> Result<RamifiedPadic3, RingError> {
    let (a, b): (BigRational, BigRational) =
        x.as_sqrt_m3().ok_or(RingError::NotInQuadraticField)?;
    let xa = Padic3::from_rational(&a, prec)?;
    let yb = Padic3::from_rational(&b, prec)?;
    Ok(RamifiedPadic3 { x: xa, y: yb })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::cyclo::CycloElem;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    // [OP] embed_3adic examples
    #[test]
    fn embed_examples() {
        let prec = 12;
        // 3 -> valuation 2
        let three = CycloElem::from_rational(1, &q(3, 1));
        assert_eq!(embed_3adic(&three, prec).unwrap().valuation(), Some(2));
        // sqrt(-3) -> valuation 1
        let s = CycloElem::sqrt_m3();
        assert_eq!(embed_3adic(&s, prec).unwrap().valuation(), Some(1));
        // omega = (-1 + sqrt(-3))/2 is a unit
        let omega = CycloElem::zeta(3);
        assert_eq!(embed_3adic(&omega, prec).unwrap().valuation(), Some(0));
    }

    #[test]
    fn embed_multiplicative() {
        // v(xy) = v(x) + v(y) on random pairs from Z[omega]
        let prec = 16;
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut rng = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        let omega = CycloElem::zeta(3);
        for _ in 0..100 {
            let a = (rng() % 19) as i64 - 9;
            let b = (rng() % 19) as i64 - 9;
            let c = (rng() % 19) as i64 - 9;
            let d = (rng() % 19) as i64 - 9;
            let x = CycloElem::from_rational(3, &q(a, 1))
                .add(&omega.scale(&q(b, 1)));
            let y = CycloElem::from_rational(3, &q(c, 1))
                .add(&omega.scale(&q(d, 1)));
            let ex = embed_3adic(&x, prec).unwrap();
            let ey = embed_3adic(&y, prec).unwrap();
            let exy = embed_3adic(&x.mul(&y), prec).unwrap();
            match (ex.valuation(), ey.valuation()) {
                (Some(vx), Some(vy)) => {
                    assert_eq!(exy.valuation(), Some(vx + vy));
                    // and the embedding is a ring homomorphism
                    let prod = ex.mul(&ey);
                    let diff = prod.sub(&exy);
                    assert!(diff.is_apparent_zero() || diff.val_lower_bound() >= 20);
                }
                _ => {
                    assert!(x.is_zero() || y.is_zero());
                }
            }
        }
    }

    #[test]
    fn ramified_field_ops() {
        let prec = 14;
        let pi = RamifiedPadic3::sqrt_m3(prec);
        let m3 = pi.mul(&pi);
        // pi^2 = -3
        assert_eq!(m3.valuation(), Some(2));
        let s = m3.add(&RamifiedPadic3::from_i64(3, prec));
        assert!(s.is_apparent_zero());
        // division round trip
        let a = RamifiedPadic3::new(Padic3::from_i64(5, prec), Padic3::from_i64(2, prec));
        let b = RamifiedPadic3::new(Padic3::from_i64(7, prec), Padic3::from_i64(-3, prec));
        let q = a.div(&b).unwrap();
        let back = q.mul(&b).sub(&a);
        assert!(back.is_apparent_zero() || back.val_lower_bound() >= 20);
    }
}
