//! The hypothesis filter: semistability, ordinarity at 3, conductor of the
//! mod-3 representation, irreducibility of E[3], and the m-conditions.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::rings::BigRational;

use super::{b_invariants, points::ap, EllipticCurveQ, ReductionKind};

/// Rational roots of the 3-division polynomial
/// psi_3(x) = 3x^4 + b2 x^3 + 3 b4 x^2 + 3 b6 x + b8.
///
/// A rational root is equivalent to a rational order-3 subgroup. Roots are
/// located numerically (Durand-Kerner) and certified exactly; a rational
/// root of the integer quartic has denominator dividing 3.
pub fn rational_roots_psi3(e: &EllipticCurveQ) -> Vec<BigRational> {
    let (b2, b4, b6, b8) = b_invariants(&e.a_invariants());
    let coeffs = [
        b8.clone(),
        &b6 * 3,
        &b4 * 3,
        b2.clone(),
        BigInt::from(3u32),
    ];
    let cf: Vec<f64> = coeffs.iter().map(|c| c.to_f64().unwrap()).collect();
    // Durand-Kerner on the monic-normalized quartic
    let mut roots = [(0.4f64, 0.9f64), (-0.6, 0.8), (0.7, -0.5), (-0.3, -0.7)];
    let eval = |z: (f64, f64)| -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for c in cf.iter().rev() {
            let r2 = re * z.0 - im * z.1 + c;
            let i2 = re * z.1 + im * z.0;
            re = r2;
            im = i2;
        }
        (re, im)
    };
    for _ in 0..200 {
        let old = roots;
        for i in 0..4 {
            let (fr, fi) = eval(old[i]);
            let mut dr = cf[4];
            let mut di = 0.0;
            for j in 0..4 {
                if j == i {
                    continue;
                }
                let zr = old[i].0 - old[j].0;
                let zi = old[i].1 - old[j].1;
                let nr = dr * zr - di * zi;
                let ni = dr * zi + di * zr;
                dr = nr;
                di = ni;
            }
            let den = dr * dr + di * di;
            if den > 1e-300 {
                roots[i].0 -= (fr * dr + fi * di) / den;
                roots[i].1 -= (fi * dr - fr * di) / den;
            }
        }
    }
    // certify candidates with denominator 1 or 3 near each numeric root
    let mut out: Vec<BigRational> = Vec::new();
    let psi = |x: &BigRational| -> BigRational {
        let mut acc = BigRational::zero();
        for c in coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    };
    for (re, im) in roots {
        if im.abs() > 1e-6 * (1.0 + re.abs()) {
            continue;
        }
        for den in [1i64, 3] {
            let num = (re * den as f64).round();
            if !num.is_finite() || num.abs() > 9e15 {
                continue;
            }
            let cand = BigRational::new(BigInt::from(num as i64), BigInt::from(den));
            if num_traits::Zero::is_zero(&psi(&cand)) && !out.contains(&cand) {
                out.push(cand);
            }
        }
    }
    out
}

/// Per-condition report of the paper-level hypotheses for a pair (E, m).
#[derive(Debug, Clone)]
pub struct HypothesisReport {
    pub curve: String,
    pub m: u64,
    pub semistable: bool,
    pub conductor_prime_to_3: bool,
    pub good_at_3: bool,
    pub ordinary_at_3: bool,
    /// 3 does not divide i_q = v_q(Delta_min) for every bad q
    pub mod3_conductor_equal: bool,
    /// product of bad primes q with 3 | i_q
    pub n_diff: u64,
    pub no_rational_3_isogeny: bool,
    pub m_cube_free: bool,
    pub m_coprime_to_3n: bool,
}

impl HypothesisReport {
    pub fn passes(&self) -> bool {
        self.semistable
            && self.conductor_prime_to_3
            && self.good_at_3
            && self.ordinary_at_3
            && self.mod3_conductor_equal
            && self.no_rational_3_isogeny
            && self.m_cube_free
            && self.m_coprime_to_3n
    }

    /// True when the only failed condition is the conductor-of-mod-3
    /// condition, which the relaxed mode can absorb by the extra local
    /// factors at q | N_diff.
    pub fn relaxable(&self) -> bool {
        !self.mod3_conductor_equal
            && self.n_diff > 1
            && self.semistable
            && self.conductor_prime_to_3
            && self.good_at_3
            && self.ordinary_at_3
            && self.no_rational_3_isogeny
            && self.m_cube_free
            && self.m_coprime_to_3n
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.semistable {
            out.push("curve not semistable");
        }
        if !self.conductor_prime_to_3 {
            out.push("3 divides the conductor");
        }
        if !self.good_at_3 {
            out.push("bad reduction at 3");
        }
        if !self.ordinary_at_3 {
            out.push("supersingular at 3 (3 | a_3)");
        }
        if !self.mod3_conductor_equal {
            out.push("3 | i_q for some bad prime (mod-3 conductor drops)");
        }
        if !self.no_rational_3_isogeny {
            out.push("rational 3-isogeny (E[3] reducible)");
        }
        if !self.m_cube_free {
            out.push("m not cube-free");
        }
        if !self.m_coprime_to_3n {
            out.push("gcd(m, 3N) > 1");
        }
        out
    }
}

pub fn is_cube_free(m: u64) -> bool {
    let mut m = m;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            if e >= 3 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Checks every hypothesis of the congruence theorem for the pair (E, m).
pub fn hypothesis_filter(e: &EllipticCurveQ, m: u64) -> HypothesisReport {
    let semistable = e.is_semistable();
    let conductor_prime_to_3 = e.conductor % 3 != 0;
    let good_at_3 = e.local_at(3).is_none();
    let ordinary_at_3 = good_at_3 && ap(e, 3).map(|a| a % 3 != 0).unwrap_or(false);
    let mut n_diff = 1u64;
    for l in &e.local {
        if matches!(
            l.kind,
            ReductionKind::SplitMultiplicative | ReductionKind::NonsplitMultiplicative
        ) && l.disc_val % 3 == 0
        {
            n_diff *= l.prime;
        }
    }
    let mod3_conductor_equal = semistable && n_diff == 1;
    let no_rational_3_isogeny = rational_roots_psi3(e).is_empty();
    HypothesisReport {
        curve: e.label.clone().unwrap_or_else(|| format!("N{}", e.conductor)),
        m,
        semistable,
        conductor_prime_to_3,
        good_at_3,
        ordinary_at_3,
        mod3_conductor_equal,
        n_diff,
        no_rational_3_isogeny,
        m_cube_free: is_cube_free(m),
        m_coprime_to_3n: num_integer::gcd(m, 3 * e.conductor) == 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // [OP] hypothesis_filter examples
    #[test]
    fn filter_11a1_m2_passes() {
        let e = EllipticCurveQ::by_label("11a1").unwrap();
        let r = hypothesis_filter(&e, 2);
        assert!(r.passes(), "failures: {:?}", r.failures());
        // i_11 = 5, not divisible by 3
        assert_eq!(e.local_at(11).unwrap().disc_val, 5);
    }

    #[test]
    fn filter_19a1_fails_isogeny() {
        // 19a1 has rational 3-torsion, psi_3 has a rational root
        let e = EllipticCurveQ::by_label("19a1").unwrap();
        let roots = rational_roots_psi3(&e);
        assert!(!roots.is_empty());
        let r = hypothesis_filter(&e, 2);
        assert!(!r.passes());
        assert!(!r.no_rational_3_isogeny);
    }

    #[test]
    fn filter_m_conditions() {
        let e = EllipticCurveQ::by_label("11a1").unwrap();
        assert!(!hypothesis_filter(&e, 3).passes()); // gcd(m, 3) > 1
        assert!(!hypothesis_filter(&e, 11).passes()); // gcd(m, N) > 1
        assert!(!hypothesis_filter(&e, 8).passes()); // not cube-free
        assert!(hypothesis_filter(&e, 10).passes());
    }

    #[test]
    fn filter_17a1_supersingular() {
        let e = EllipticCurveQ::by_label("17a1").unwrap();
        let r = hypothesis_filter(&e, 2);
        assert!(!r.ordinary_at_3);
        assert!(!r.passes());
    }

    #[test]
    fn psi3_root_certification() {
        // 14a1 and 35a1 have 3-isogenies; 37a1 does not
        let e14 = EllipticCurveQ::by_label("14a1").unwrap();
        assert!(!rational_roots_psi3(&e14).is_empty());
        let e37 = EllipticCurveQ::by_label("37a1").unwrap();
        assert!(rational_roots_psi3(&e37).is_empty());
    }
}
