//! Elliptic curves over Q: minimal models, local reduction data, a_n
//! coefficients, the hypothesis filter, Neron periods and the 3-adic
//! unit root.

pub mod filter;
pub mod periods;
pub mod points;
pub mod tate;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::rings::padic::{hensel_unit_root, Padic3};
use crate::rings::RingError;

pub use filter::{rational_roots_psi3, HypothesisReport};
pub use points::{an_list, ap};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("singular curve: discriminant is zero")]
    SingularCurve,
    #[error("bad reduction at {0}: use local data instead of point counts")]
    BadReduction(u64),
    #[error("prime {0} exceeds the configured point-counting bound")]
    PrimeTooLarge(u64),
    #[error("curve is not ordinary at 3")]
    NotOrdinary,
    #[error("unknown curve label {0}")]
    UnknownLabel(String),
    #[error("invalid curve specification {0}")]
    BadSpec(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionKind {
    Good,
    SplitMultiplicative,
    NonsplitMultiplicative,
    Additive,
}

#[derive(Debug, Clone)]
pub struct LocalData {
    pub prime: u64,
    pub kind: ReductionKind,
    /// v_q of the minimal discriminant
    pub disc_val: u32,
    /// conductor exponent
    pub cond_exp: u32,
}

/// An elliptic curve over Q in a global minimal Weierstrass model.
#[derive(Debug, Clone)]
pub struct EllipticCurveQ {
    pub a1: BigInt,
    pub a2: BigInt,
    pub a3: BigInt,
    pub a4: BigInt,
    pub a6: BigInt,
    pub disc: BigInt,
    pub conductor: u64,
    pub local: Vec<LocalData>,
    pub label: Option<String>,
}

pub fn b_invariants(a: &[BigInt; 5]) -> (BigInt, BigInt, BigInt, BigInt) {
    let [a1, a2, a3, a4, a6] = a;
    let b2 = a1 * a1 + a2 * 4;
    let b4 = a4 * 2 + a1 * a3;
    let b6 = a3 * a3 + a6 * 4;
    let b8: BigInt = (&b2 * &b6 - &b4 * &b4) / 4;
    (b2, b4, b6, b8)
}

pub fn c_invariants(a: &[BigInt; 5]) -> (BigInt, BigInt, BigInt) {
    let (b2, b4, b6, b8) = b_invariants(a);
    let c4 = &b2 * &b2 - &b4 * 24;
    let c6 = -(&b2 * &b2 * &b2) + &b2 * &b4 * 36 - &b6 * 216;
    let disc = -(&b2 * &b2 * &b8) - &b4 * &b4 * &b4 * 8 - &b6 * &b6 * 27 + &b2 * &b4 * &b6 * 9;
    (c4, c6, disc)
}

fn val_at(n: &BigInt, q: u64) -> u32 {
    use num_integer::Integer;
    assert!(!n.is_zero());
    let q = BigInt::from(q);
    let mut v = 0u32;
    let mut m = n.clone();
    loop {
        let (d, r) = m.div_rem(&q);
        if r.is_zero() {
            v += 1;
            m = d;
        } else {
            return v;
        }
    }
}

fn prime_factors(n: &BigInt) -> Vec<u64> {
    let mut m = n.abs().to_u128().expect("discriminant too large to factor");
    let mut out = Vec::new();
    let mut p = 2u128;
    while p * p <= m {
        if m % p == 0 {
            out.push(p as u64);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m as u64);
    }
    out
}

impl EllipticCurveQ {
    /// Constructs the curve from raw integral a-invariants, reducing to a
    /// global minimal model (Laska-Kraus-Connell) and running Tate's
    /// algorithm at every bad prime.
    pub fn minimal_model(raw: &[BigInt; 5]) -> Result<Self, CurveError> {
        let (_, _, disc) = c_invariants(raw);
        if disc.is_zero() {
            return Err(CurveError::SingularCurve);
        }
        let a = laska_kraus_connell(raw);
        let (_, _, disc) = c_invariants(&a);
        let mut local = Vec::new();
        let mut conductor = 1u64;
        for q in prime_factors(&disc) {
            let ld = tate::local_data(&a, q);
            for _ in 0..ld.cond_exp {
                conductor = conductor.checked_mul(q).expect("conductor overflow");
            }
            local.push(ld);
        }
        let [a1, a2, a3, a4, a6] = a;
        Ok(EllipticCurveQ { a1, a2, a3, a4, a6, disc, conductor, local, label: None })
    }

    pub fn from_ai(a1: i64, a2: i64, a3: i64, a4: i64, a6: i64) -> Result<Self, CurveError> {
        Self::minimal_model(&[a1.into(), a2.into(), a3.into(), a4.into(), a6.into()])
    }

    pub fn a_invariants(&self) -> [BigInt; 5] {
        [self.a1.clone(), self.a2.clone(), self.a3.clone(), self.a4.clone(), self.a6.clone()]
    }

    pub fn is_semistable(&self) -> bool {
        self.local.iter().all(|l| {
            matches!(
                l.kind,
                ReductionKind::SplitMultiplicative | ReductionKind::NonsplitMultiplicative
            )
        })
    }

    pub fn local_at(&self, q: u64) -> Option<&LocalData> {
        self.local.iter().find(|l| l.prime == q)
    }

    /// a_q at a bad prime from the reduction type.
    pub fn aq_bad(&self, q: u64) -> Option<i64> {
        self.local_at(q).map(|l| match l.kind {
            ReductionKind::SplitMultiplicative => 1,
            ReductionKind::NonsplitMultiplicative => -1,
            ReductionKind::Additive => 0,
            ReductionKind::Good => unreachable!(),
        })
    }

    /// The 3-adic unit root u of X^2 - a_3 X + 3 and w = 3/u.
    pub fn u_w(&self, prec: u32) -> Result<(Padic3, Padic3), CurveError> {
        if self.conductor % 3 == 0 {
            return Err(CurveError::NotOrdinary);
        }
        let a3 = ap(self, 3).map_err(|_| CurveError::NotOrdinary)?;
        let u = hensel_unit_root(&BigInt::from(a3), prec).map_err(|e| match e {
            RingError::NotOrdinary => CurveError::NotOrdinary,
            _ => CurveError::NotOrdinary,
        })?;
        let w = Padic3::from_i64(3, prec).div(&u).expect("u is a unit");
        Ok((u, w))
    }

    /// Resolves a label from the bundled curve table.
    pub fn by_label(label: &str) -> Result<Self, CurveError> {
        for line in CURVE_TABLE.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let l = it.next().unwrap();
            if l == label {
                let vals: Vec<i64> = it.map(|t| t.parse().unwrap()).collect();
                if vals.len() != 5 {
                    return Err(CurveError::BadSpec(label.to_string()));
                }
                let mut e = Self::from_ai(vals[0], vals[1], vals[2], vals[3], vals[4])?;
                e.label = Some(label.to_string());
                return Ok(e);
            }
        }
        Err(CurveError::UnknownLabel(label.to_string()))
    }

    /// All labels in the bundled table.
    pub fn table_labels() -> Vec<&'static str> {
        CURVE_TABLE
            .lines()
            .filter_map(|l| {
                let t = l.trim();
                if t.is_empty() || t.starts_with('#') {
                    None
                } else {
                    t.split_whitespace().next()
                }
            })
            .collect()
    }

    /// Parses `label` or `a1,a2,a3,a4,a6`.
    pub fn parse_spec(spec: &str) -> Result<Self, CurveError> {
        if spec.contains(',') {
            let vals: Result<Vec<i64>, _> = spec.split(',').map(|t| t.trim().parse()).collect();
            let vals = vals.map_err(|_| CurveError::BadSpec(spec.to_string()))?;
            if vals.len() != 5 {
                return Err(CurveError::BadSpec(spec.to_string()));
            }
            Self::from_ai(vals[0], vals[1], vals[2], vals[3], vals[4])
        } else {
            Self::by_label(spec)
        }
    }
}

/// Laska-Kraus-Connell reduction to a global minimal model.
fn laska_kraus_connell(a: &[BigInt; 5]) -> [BigInt; 5] {
    let (c4, c6, disc) = c_invariants(a);
    let mut u = BigInt::from(1u32);
    for q in prime_factors(&disc) {
        let e_disc = val_at(&disc, q) / 12;
        let e_c4 = if c4.is_zero() { u32::MAX } else { val_at(&c4, q) / 4 };
        let e_c6 = if c6.is_zero() { u32::MAX } else { val_at(&c6, q) / 6 };
        let mut e = e_disc.min(e_c4).min(e_c6);
        if q == 2 || q == 3 {
            let qb = BigInt::from(q);
            while e > 0 {
                let s = qb.pow(e);
                let c4s = &c4 / s.pow(4);
                let c6s = &c6 / s.pow(6);
                if kraus_valid(&c4s, &c6s) {
                    break;
                }
                e -= 1;
            }
        }
        u *= BigInt::from(q).pow(e);
    }
    let c4m = &c4 / u.pow(4);
    let c6m = &c6 / u.pow(6);
    model_from_c4c6(&c4m, &c6m)
}

/// Kraus' criterion: (c4, c6) arise from an integral model.
fn kraus_valid(c4: &BigInt, c6: &BigInt) -> bool {
    use num_integer::Integer;
    // at 3: v_3(c6) != 2
    if !c6.is_zero() {
        let three = BigInt::from(3u32);
        let mut v = 0;
        let mut m = c6.clone();
        while v < 3 {
            let (d, r) = m.div_rem(&three);
            if r.is_zero() {
                v += 1;
                m = d;
            } else {
                break;
            }
        }
        if v == 2 {
            return false;
        }
    }
    // at 2: c6 = -1 mod 4, or (c4 = 0 mod 16 and c6 = 0, 8 mod 32)
    let c6m4 = c6.mod_floor(&BigInt::from(4u32)).to_i64().unwrap();
    if c6m4 == 3 {
        return true;
    }
    let c4m16 = c4.mod_floor(&BigInt::from(16u32)).to_i64().unwrap();
    let c6m32 = c6.mod_floor(&BigInt::from(32u32)).to_i64().unwrap();
    c4m16 == 0 && (c6m32 == 0 || c6m32 == 8)
}

/// Standard reconstruction of a reduced model from (c4, c6).
fn model_from_c4c6(c4: &BigInt, c6: &BigInt) -> [BigInt; 5] {
    use num_integer::Integer;
    // b2 = -c6 mod 12 chosen in [-5, 6]
    let mut b2 = (-c6).mod_floor(&BigInt::from(12u32));
    if b2 > BigInt::from(6u32) {
        b2 -= 12;
    }
    let b4: BigInt = (&b2 * &b2 - c4) / 24;
    let b6: BigInt = (-(&b2 * &b2 * &b2) + &b2 * &b4 * 36 - c6) / 216;
    let a1 = b2.mod_floor(&BigInt::from(2u32));
    let a2: BigInt = (&b2 - &a1 * &a1) / 4;
    let a3 = b6.mod_floor(&BigInt::from(2u32));
    let a4: BigInt = (&b4 - &a1 * &a3) / 2;
    let a6: BigInt = (&b6 - &a3 * &a3) / 4;
    [a1, a2, a3, a4, a6]
}

/// Bundled table of well-known curves: `label a1 a2 a3 a4 a6`.
/// Every entry is validated against its label's conductor in the tests.
pub const CURVE_TABLE: &str = include_str!("curves.txt");
