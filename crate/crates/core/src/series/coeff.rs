//! The coefficient-ring abstraction for q-expansions.

use num_bigint::BigInt;

use crate::rings::cyclo::CycloElem;
use crate::rings::padic::Padic3;
use crate::rings::ramified::{embed_3adic, RamifiedPadic3};
use crate::rings::BigRational;

use super::quadorder::QuadraticOrderElem;

/// A commutative ring usable as the scalar ring of a truncated q-expansion.
///
/// `padic_valuation` reports the valuation of the element under the fixed
/// embedding into Q_3(sqrt(-3)), in uniformizer units (so v(3) = 2 on
/// ramified rings and v(3) = 1 on unramified ones, as reported by
/// `ramification_index`).
pub trait Coeff: Clone + PartialEq + Send + Sync + std::fmt::Debug + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn is_zero(&self) -> bool;
    fn from_i64(v: i64) -> Self;
    /// Embeds a rational scalar, failing where the ring cannot represent it.
    fn try_from_rational(q: &BigRational) -> Option<Self>;
    /// Embeds a cyclotomic scalar (character value), failing where the ring
    /// cannot represent it.
    fn try_from_cyclo(c: &CycloElem) -> Option<Self>;
    /// 3-adic valuation in uniformizer units under the fixed embedding;
    /// `None` means "zero to working precision" (valuation above any bound).
    fn padic_valuation(&self, prec: u32) -> Option<i64>;
    /// v(3) in the units used by `padic_valuation`.
    fn ramification_index() -> i64;
    /// Exact textual encoding for the dump format.
    fn encode(&self) -> String;
    fn decode(s: &str) -> Option<Self>;
}

impl Coeff for BigRational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn try_from_rational(q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }
    fn try_from_cyclo(c: &CycloElem) -> Option<Self> {
        c.as_rational()
    }
    fn padic_valuation(&self, _prec: u32) -> Option<i64> {
        if num_traits::Zero::is_zero(self) {
            return None;
        }
        Some(v3_bigint(self.numer()) - v3_bigint(self.denom()))
    }
    fn ramification_index() -> i64 {
        1
    }
    fn encode(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
    fn decode(s: &str) -> Option<Self> {
        let (n, d) = s.split_once('/')?;
        Some(BigRational::new(n.parse().ok()?, d.parse().ok()?))
    }
}

pub fn v3_bigint(n: &BigInt) -> i64 {
    use num_integer::Integer;
    use num_traits::Zero;
    assert!(!n.is_zero());
    let three = BigInt::from(3u32);
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&three);
        if r.is_zero() {
            v += 1;
            m = q;
        } else {
            return v;
        }
    }
}

impl Coeff for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn add(&self, o: &Self) -> Self {
        self.checked_add(*o).expect("i64 coefficient overflow")
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Self {
        self.checked_mul(*o).expect("i64 coefficient overflow")
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn try_from_rational(q: &BigRational) -> Option<Self> {
        use num_traits::{One, ToPrimitive};
        if q.denom().is_one() {
            q.numer().to_i64()
        } else {
            None
        }
    }
    fn try_from_cyclo(c: &CycloElem) -> Option<Self> {
        Self::try_from_rational(&c.as_rational()?)
    }
    fn padic_valuation(&self, _prec: u32) -> Option<i64> {
        if *self == 0 {
            return None;
        }
        let mut v = 0;
        let mut m = *self;
        while m % 3 == 0 {
            v += 1;
            m /= 3;
        }
        Some(v)
    }
    fn ramification_index() -> i64 {
        1
    }
    fn encode(&self) -> String {
        self.to_string()
    }
    fn decode(s: &str) -> Option<Self> {
        s.parse().ok()
    }
}

impl Coeff for CycloElem {
    fn zero() -> Self {
        CycloElem::zero(1)
    }
    fn one() -> Self {
        CycloElem::one(1)
    }
    fn add(&self, o: &Self) -> Self {
        CycloElem::add(self, o)
    }
    fn neg(&self) -> Self {
        CycloElem::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        CycloElem::mul(self, o)
    }
    fn is_zero(&self) -> bool {
        CycloElem::is_zero(self)
    }
    fn from_i64(v: i64) -> Self {
        CycloElem::from_i64(1, v)
    }
    fn try_from_rational(q: &BigRational) -> Option<Self> {
        Some(CycloElem::from_rational(1, q))
    }
    fn try_from_cyclo(c: &CycloElem) -> Option<Self> {
        Some(c.clone())
    }
    fn padic_valuation(&self, prec: u32) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        // only elements of Q(sqrt(-3)) carry a canonical valuation here
        let e = embed_3adic(self, prec).ok()?;
        e.valuation()
    }
    fn ramification_index() -> i64 {
        2
    }
    fn encode(&self) -> String {
        let body: Vec<String> = self.coeffs().iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect();
        format!("c{}:{}", self.order(), body.join(","))
    }
    fn decode(s: &str) -> Option<Self> {
        let rest = s.strip_prefix('c')?;
        let (order, body) = rest.split_once(':')?;
        let order: u32 = order.parse().ok()?;
        let mut e = CycloElem::zero(order);
        let mut out = Vec::new();
        for part in body.split(',') {
            let (n, d) = part.split_once('/')?;
            out.push(BigRational::new(n.parse().ok()?, d.parse().ok()?));
        }
        if out.len() != e.coeffs().len() {
            return None;
        }
        for (i, q) in out.into_iter().enumerate() {
            let term = CycloElem::zeta(order).pow(i as u64).scale(&q);
            e = CycloElem::add(&e, &term);
        }
        Some(e)
    }
}

impl Coeff for QuadraticOrderElem {
    fn zero() -> Self {
        QuadraticOrderElem::rational_in(&BigRational::from_integer(0.into()))
    }
    fn one() -> Self {
        QuadraticOrderElem::rational_in(&BigRational::from_integer(1.into()))
    }
    fn add(&self, o: &Self) -> Self {
        QuadraticOrderElem::add(self, o)
    }
    fn neg(&self) -> Self {
        QuadraticOrderElem::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        QuadraticOrderElem::mul(self, o)
    }
    fn is_zero(&self) -> bool {
        QuadraticOrderElem::is_zero(self)
    }
    fn from_i64(v: i64) -> Self {
        QuadraticOrderElem::rational_in(&BigRational::from_integer(v.into()))
    }
    fn try_from_rational(q: &BigRational) -> Option<Self> {
        Some(QuadraticOrderElem::rational_in(q))
    }
    fn try_from_cyclo(c: &CycloElem) -> Option<Self> {
        Some(QuadraticOrderElem::rational_in(&c.as_rational()?))
    }
    fn padic_valuation(&self, prec: u32) -> Option<i64> {
        self.eval_3adic(prec).ok()?.valuation()
    }
    fn ramification_index() -> i64 {
        1
    }
    fn encode(&self) -> String {
        format!(
            "q{};{}/{};{}/{}",
            self.trace_param(),
            self.a().numer(),
            self.a().denom(),
            self.b().numer(),
            self.b().denom()
        )
    }
    fn decode(s: &str) -> Option<Self> {
        let rest = s.strip_prefix('q')?;
        let mut it = rest.split(';');
        let t: i64 = it.next()?.parse().ok()?;
        let a = BigRational::decode(it.next()?)?;
        let b = BigRational::decode(it.next()?)?;
        Some(QuadraticOrderElem::new(t, a, b))
    }
}

impl Coeff for Padic3 {
    fn zero() -> Self {
        Padic3::zero_at(1 << 30)
    }
    fn one() -> Self {
        Padic3::from_i64(1, 64)
    }
    fn add(&self, o: &Self) -> Self {
        Padic3::add(self, o)
    }
    fn neg(&self) -> Self {
        Padic3::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        Padic3::mul(self, o)
    }
    fn is_zero(&self) -> bool {
        self.is_apparent_zero()
    }
    fn from_i64(v: i64) -> Self {
        Padic3::from_i64(v, 64)
    }
    fn try_from_rational(q: &BigRational) -> Option<Self> {
        Padic3::from_rational(q, 64).ok()
    }
    fn try_from_cyclo(c: &CycloElem) -> Option<Self> {
        Self::try_from_rational(&c.as_rational()?)
    }
    fn padic_valuation(&self, _prec: u32) -> Option<i64> {
        self.valuation()
    }
    fn ramification_index() -> i64 {
        1
    }
    fn encode(&self) -> String {
        if self.is_apparent_zero() {
            format!("pz{}", self.val_lower_bound())
        } else {
            format!("p{};{};{}", self.valuation().unwrap(), self.rel_prec(), self.unit_part())
        }
    }
    fn decode(s: &str) -> Option<Self> {
        if let Some(rest) = s.strip_prefix("pz") {
            return Some(Padic3::zero_at(rest.parse().ok()?));
        }
        let rest = s.strip_prefix('p')?;
        let mut it = rest.split(';');
        let val: i64 = it.next()?.parse().ok()?;
        let prec: u32 = it.next()?.parse().ok()?;
        let unit: BigInt = it.next()?.parse().ok()?;
        let base = Padic3::from_bigint(&unit, prec);
        let three = Padic3::from_i64(3, prec + 4);
        let mut out = base;
        if val > 0 {
            out = out.mul(&three.pow(val as u64));
        } else if val < 0 {
            for _ in 0..(-val) {
                out = out.div(&three).ok()?;
            }
        }
        Some(out)
    }
}

impl Coeff for RamifiedPadic3 {
    fn zero() -> Self {
        RamifiedPadic3::from_padic(Padic3::zero_at(1 << 30))
    }
    fn one() -> Self {
        RamifiedPadic3::from_i64(1, 64)
    }
    fn add(&self, o: &Self) -> Self {
        RamifiedPadic3::add(self, o)
    }
    fn neg(&self) -> Self {
        RamifiedPadic3::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        RamifiedPadic3::mul(self, o)
    }
    fn is_zero(&self) -> bool {
        self.is_apparent_zero()
    }
    fn from_i64(v: i64) -> Self {
        RamifiedPadic3::from_i64(v, 64)
    }
    fn try_from_rational(q: &BigRational) -> Option<Self> {
        Some(RamifiedPadic3::from_padic(Padic3::from_rational(q, 64).ok()?))
    }
    fn try_from_cyclo(c: &CycloElem) -> Option<Self> {
        embed_3adic(c, 64).ok()
    }
    fn padic_valuation(&self, _prec: u32) -> Option<i64> {
        self.valuation()
    }
    fn ramification_index() -> i64 {
        2
    }
    fn encode(&self) -> String {
        format!("r[{}|{}]", self.x.encode(), self.y.encode())
    }
    fn decode(s: &str) -> Option<Self> {
        let rest = s.strip_prefix("r[")?.strip_suffix(']')?;
        let (x, y) = rest.split_once('|')?;
        Some(RamifiedPadic3::new(Padic3::decode(x)?, Padic3::decode(y)?))
    }
}
