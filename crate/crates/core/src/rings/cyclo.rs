//! Elements of cyclotomic fields Q(zeta_n) for n = 2^a 3^b, in the power
//! basis of zeta_n reduced modulo the cyclotomic polynomial.
//!
//! These carry values of the finite-order characters in play (quadratic,
//! cubic and 3-power order), and Q(omega) = Q(sqrt(-3)) embeds as order 3.

use std::fmt;

use num_traits::{One, Zero};

use super::complex::BigComplex;
use super::float::pi;
use super::BigRational;

fn euler_phi(n: u32) -> u32 {
    let mut phi = 1;
    let mut m = n;
    for p in [2u32, 3] {
        if m % p == 0 {
            let mut pk = 1;
            while m % p == 0 {
                m /= p;
                pk *= p;
            }
            phi *= pk - pk / p;
        }
    }
    assert_eq!(m, 1, "cyclotomic order must be of the form 2^a 3^b, got {}", n);
    phi
}

/// Sparse monic cyclotomic polynomial for n = 2^a 3^b (excluding the leading
/// term, as (exponent, coefficient) pairs).
fn cyclo_poly_tail(n: u32) -> Vec<(usize, i64)> {
    if n == 1 {
        return vec![(0, -1)]; // x - 1
    }
    if n == 2 {
        return vec![(0, 1)]; // x + 1
    }
    if n % 3 != 0 {
        // n = 2^a: x^(n/2) + 1
        return vec![(0, 1)];
    }
    if n % 2 != 0 {
        // n = 3^b: x^(2m) + x^m + 1, m = n/3
        return vec![((n / 3) as usize, 1), (0, 1)];
    }
    // n = 2^a 3^b with a,b >= 1: x^(n/3) - x^(n/6) + 1
    vec![((n / 6) as usize, -1), (0, 1)]
}

#[derive(Clone)]
pub struct CycloElem {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl CycloElem {
    pub fn zero(order: u32) -> Self {
        CycloElem { order, coeffs: vec![BigRational::zero(); euler_phi(order) as usize] }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, &BigRational::one())
    }

    pub fn from_rational(order: u32, q: &BigRational) -> Self {
        let mut e = Self::zero(order);
        e.coeffs[0] = q.clone();
        e
    }

    pub fn from_i64(order: u32, v: i64) -> Self {
        Self::from_rational(order, &BigRational::from_integer(v.into()))
    }

    pub fn zeta(order: u32) -> Self {
        let mut e = Self::zero(order);
        if euler_phi(order) == 1 {
            // zeta_1 = 1, zeta_2 = -1
            e.coeffs[0] = if order == 1 {
                BigRational::one()
            } else {
                -BigRational::one()
            };
        } else {
            e.coeffs[1] = BigRational::one();
        }
        e
    }

    /// sqrt(-3) = 1 + 2*omega as an element of Q(zeta_3).
    pub fn sqrt_m3() -> Self {
        let mut e = Self::zero(3);
        e.coeffs[0] = BigRational::one();
        e.coeffs[1] = BigRational::from_integer(2.into());
        e
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn reduce(order: u32, mut poly: Vec<BigRational>) -> Vec<BigRational> {
        let phi = euler_phi(order) as usize;
        let tail = cyclo_poly_tail(order);
        let mut d = poly.len();
        while d > phi {
            d -= 1;
            if poly[d].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut poly[d], BigRational::zero());
            for &(e, t) in &tail {
                let idx = d - phi + e;
                let delta = &c * BigRational::from_integer(t.into());
                poly[idx] -= delta;
            }
        }
        poly.truncate(phi);
        poly.resize(phi, BigRational::zero());
        poly
    }

    /// Lifts to Q(zeta_m) for order | m.
    pub fn lift(&self, m: u32) -> Self {
        assert!(m % self.order == 0, "lift target must be a multiple of the order");
        if m == self.order {
            return self.clone();
        }
        let k = (m / self.order) as usize;
        let mut poly = vec![BigRational::zero(); self.coeffs.len() * k + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[j * k] = c.clone();
        }
        CycloElem { order: m, coeffs: Self::reduce(m, poly) }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let m = num_integer::lcm(a.order, b.order);
        (a.lift(m), b.lift(m))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = Self::common(self, other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CycloElem { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycloElem { order: self.order, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        let mut poly = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                poly[i + j] += x * y;
            }
        }
        CycloElem { order: a.order, coeffs: Self::reduce(a.order, poly) }
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut acc = Self::one(self.order);
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

    /// Galois action zeta -> zeta^k for gcd(k, order) = 1.
    pub fn galois(&self, k: u32) -> Self {
        let k = k % self.order.max(1);
        assert!(num_integer::gcd(k, self.order) == 1, "galois exponent not coprime");
        let mut poly = vec![BigRational::zero(); (self.order as usize).max(self.coeffs.len() * k as usize) + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            let e = (j * k as usize) % self.order as usize;
            poly[e] += c;
        }
        CycloElem { order: self.order, coeffs: Self::reduce(self.order, poly) }
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        if self.order <= 2 {
            return self.clone();
        }
        self.galois(self.order - 1)
    }

    /// Some(q) iff the element is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Writes the element as a + b*sqrt(-3) when it lies in Q(sqrt(-3)).
    pub fn as_sqrt_m3(&self) -> Option<(BigRational, BigRational)> {
        if let Some(q) = self.as_rational() {
            return Some((q, BigRational::zero()));
        }
        if self.order % 3 != 0 {
            return None;
        }
        let s = Self::sqrt_m3().lift(self.order);
        // solve self = a + b * s against a non-constant coordinate, then verify
        let pivot = s.coeffs[1..].iter().position(|c| !c.is_zero())? + 1;
        let b = &self.coeffs[pivot] / &s.coeffs[pivot];
        let a = &self.coeffs[0] - &b * &s.coeffs[0];
        let candidate = Self::from_rational(self.order, &a).add(&s.scale(&b));
        if candidate == *self {
            Some((a, b))
        } else {
            None
        }
    }

    /// Numeric embedding with zeta_n -> e^{2 pi i / n}.
    pub fn embed_complex(&self, prec: u32) -> BigComplex {
        let two_pi_over_n =
            pi(prec + 16).ldexp(1).div(&super::float::BigFloat::from_i64(self.order as i64, prec + 16));
        let (s, c) = two_pi_over_n.sin_cos();
        let zeta = BigComplex::new(c, s);
        let mut acc = BigComplex::zero(prec + 16);
        for coeff in self.coeffs.iter().rev() {
            acc = acc.mul(&zeta);
            if !coeff.is_zero() {
                acc = acc.add(&BigComplex::from_ratio(coeff, prec + 16));
            }
        }
        acc.with_prec(prec)
    }

    /// Max absolute value of numerators/denominators, as a rough height.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }
}

impl PartialEq for CycloElem {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloElem {}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo{}[", self.order)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]")
    }
}
