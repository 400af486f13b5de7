//! Special functions on [`BigFloat`]: log-gamma, incomplete gamma, the
//! Bessel functions K0/K1, and the Euler-Mascheroni constant.
//!
//! Accuracy policy: every routine works internally with enough guard bits
//! to absorb its own cancellation (estimated per algorithm), then rounds
//! back to the caller's precision.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use once_cell::sync::Lazy;

use super::bernoulli::bernoulli;
use super::float::{pi, BigFloat};
use super::BigRational;

fn bf(v: i64, p: u32) -> BigFloat {
    BigFloat::from_i64(v, p)
}

// ---- Euler-Mascheroni constant (Brent-McMillan) ----

static GAMMA_CACHE: Lazy<Mutex<HashMap<u32, BigFloat>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

pub fn euler_gamma(prec: u32) -> BigFloat {
    let b = (prec / 64 + 1) * 64;
    {
        let cache = GAMMA_CACHE.lock().unwrap();
        if let Some(v) = cache.get(&b) {
            return v.with_prec(prec);
        }
    }
    let work = b + 32;
    let n = ((b as f64 + 16.0) * std::f64::consts::LN_2 / 4.0).ceil() as i64 + 1;
    let nf = bf(n, work);
    // I = sum (n^k/k!)^2,  S = sum (n^k/k!)^2 H_k,  gamma = S/I - ln n
    let mut term = bf(1, work); // (n^k/k!)^2
    let mut i_sum = term.clone();
    let mut s_sum = BigFloat::zero(work);
    let mut h = BigFloat::zero(work); // H_k
    let mut k = 1i64;
    loop {
        let ratio = nf.div(&bf(k, work));
        term = term.mul(&ratio).mul(&ratio);
        h = h.add(&bf(k, work).recip());
        i_sum = i_sum.add(&term);
        s_sum = s_sum.add(&term.mul(&h));
        if k as f64 > 4.0 * n as f64
            && term.ilog2().unwrap_or(i64::MIN) < i_sum.ilog2().unwrap() - work as i64 - 8
        {
            break;
        }
        k += 1;
    }
    let v = s_sum.div(&i_sum).sub(&nf.ln()).with_prec(b);
    GAMMA_CACHE.lock().unwrap().insert(b, v.clone());
    v.with_prec(prec)
}

// ---- log-gamma and gamma for positive real argument ----

/// ln Gamma(x) for x > 0 by argument shifting plus the Stirling series.
pub fn lngamma(x: &BigFloat) -> BigFloat {
    let prec = x.prec();
    let work = prec + 48;
    assert!(!x.is_negative() && !x.is_zero(), "lngamma needs x > 0");
    let x = x.with_prec(work);
    let z0 = ((work as f64 + 16.0) * 0.12).ceil().max(12.0);
    let mut shift_terms = BigFloat::zero(work);
    let mut z = x.clone();
    while z.to_f64() < z0 {
        shift_terms = shift_terms.add(&z.ln());
        z = z.add(&bf(1, work));
    }
    // Stirling: (z - 1/2) ln z - z + ln(2 pi)/2 + sum B_2k / (2k (2k-1) z^(2k-1))
    let ln_z = z.ln();
    let half = bf(1, work).ldexp(-1);
    let mut acc = z.sub(&half).mul(&ln_z).sub(&z);
    let ln_2pi = pi(work).ldexp(1).ln();
    acc = acc.add(&ln_2pi.ldexp(-1));
    let z2 = z.mul(&z);
    let mut zpow = z.clone(); // z^(2k-1)
    let mut k = 1usize;
    loop {
        let b2k = bernoulli(2 * k);
        let num = BigFloat::from_ratio(&b2k, work);
        let den = bf((2 * k) as i64 * (2 * k - 1) as i64, work).mul(&zpow);
        let term = num.div(&den);
        acc = acc.add(&term);
        if term.is_zero() || term.ilog2().unwrap() < acc.ilog2().unwrap() - work as i64 - 8 {
            break;
        }
        zpow = zpow.mul(&z2);
        k += 1;
        assert!(k < 4 * work as usize, "Stirling series failed to converge");
    }
    acc.sub(&shift_terms).with_prec(prec)
}

pub fn gamma(x: &BigFloat) -> BigFloat {
    lngamma(x).exp()
}

// ---- incomplete gamma ----

/// Upper incomplete gamma Gamma(a, x) for real a and x > 0.
pub fn inc_gamma_upper(a: &BigFloat, x: &BigFloat) -> BigFloat {
    let prec = a.prec().max(x.prec());
    assert!(!x.is_negative() && !x.is_zero(), "inc_gamma_upper needs x > 0");
    // small integer a: finite closed form Gamma(n,x) = (n-1)! e^{-x} sum x^k/k!
    if let Some(n) = as_small_positive_int(a) {
        let work = prec + 16;
        let x = x.with_prec(work);
        let mut fact = bf(1, work);
        let mut term = bf(1, work);
        let mut sum = bf(1, work);
        for k in 1..n {
            term = term.mul(&x).div(&bf(k as i64, work));
            sum = sum.add(&term);
            fact = fact.mul_i64(k as i64);
        }
        return fact.mul(&x.neg().exp()).mul(&sum).with_prec(prec);
    }
    let xf = x.to_f64();
    let af = a.to_f64();
    if xf < af + 1.0 {
        inc_gamma_upper_series(a, x, prec)
    } else {
        inc_gamma_upper_cf(a, x, prec)
    }
}

fn as_small_positive_int(a: &BigFloat) -> Option<u32> {
    let r = a.round();
    let diff = a.sub(&BigFloat::from_bigint(&r, a.prec()));
    if diff.is_zero() {
        let v = r.to_i64()?;
        if v >= 1 && v <= 64 {
            return Some(v as u32);
        }
    }
    None
}

/// Gamma(a) - gamma(a, x) via the lower series; valid for a > 0.
fn inc_gamma_upper_series(a: &BigFloat, x: &BigFloat, prec: u32) -> BigFloat {
    assert!(!a.is_negative() && !a.is_zero(), "series branch needs a > 0");
    let work = prec + 32 + (2.0 * x.to_f64().max(0.0)).ceil() as u32;
    let a = a.with_prec(work);
    let x = x.with_prec(work);
    // gamma(a,x) = x^a e^{-x} sum_{n>=0} x^n / (a (a+1) ... (a+n))
    let mut denom = a.clone();
    let mut term = a.recip();
    let mut sum = term.clone();
    loop {
        denom = denom.add(&bf(1, work));
        term = term.mul(&x).div(&denom);
        sum = sum.add(&term);
        if term.is_zero() || term.ilog2().unwrap() < sum.ilog2().unwrap() - work as i64 - 8 {
            break;
        }
    }
    let xa = x.ln().mul(&a).exp();
    let lower = xa.mul(&x.neg().exp()).mul(&sum);
    gamma(&a).sub(&lower).with_prec(prec)
}

/// Continued fraction (modified Lentz), good for x >= a + 1.
fn inc_gamma_upper_cf(a: &BigFloat, x: &BigFloat, prec: u32) -> BigFloat {
    let work = prec + 32;
    let a = a.with_prec(work);
    let x = x.with_prec(work);
    let tiny = bf(1, work).ldexp(-2 * work as i64);
    let mut b = x.add(&bf(1, work)).sub(&a);
    let mut c = bf(1, work).ldexp(2 * work as i64);
    let mut d = b.recip();
    let mut h = d.clone();
    let mut i = 1i64;
    loop {
        let an = bf(-i, work).mul(&bf(i, work).sub(&a));
        b = b.add(&bf(2, work));
        d = an.mul(&d).add(&b);
        if d.is_zero() {
            d = tiny.clone();
        }
        c = b.add(&an.div(&c));
        if c.is_zero() {
            c = tiny.clone();
        }
        d = d.recip();
        let delta = d.mul(&c);
        h = h.mul(&delta);
        let dev = delta.sub(&bf(1, work));
        if dev.is_zero() || dev.ilog2().unwrap() < -(work as i64) - 8 {
            break;
        }
        i += 1;
        assert!(i < 64 * work as i64, "incomplete gamma CF failed to converge");
    }
    let xa = x.ln().mul(&a).exp();
    xa.mul(&x.neg().exp()).mul(&h).with_prec(prec)
}

// ---- Bessel K0, K1 ----

/// K0 and K1 at the same argument; x > 0.
pub fn bessel_k01(x: &BigFloat) -> (BigFloat, BigFloat) {
    let prec = x.prec();
    let xf = x.to_f64();
    assert!(xf > 0.0, "bessel_k01 needs x > 0");
    let cutoff = 0.35 * (prec as f64 + 24.0);
    if xf < cutoff {
        bessel_k01_series(x, prec)
    } else {
        (bessel_k_asympt(0, x, prec), bessel_k_asympt(1, x, prec))
    }
}

fn bessel_k01_series(x: &BigFloat, prec: u32) -> (BigFloat, BigFloat) {
    // cancellation between the ln-term and the sum is of order e^{2x}
    let work = prec + 48 + (2.89 * x.to_f64()).ceil() as u32;
    let x = x.with_prec(work);
    let half_x = x.ldexp(-1);
    let q = half_x.mul(&half_x); // x^2/4
    let lnt = half_x.ln().add(&euler_gamma(work)); // ln(x/2) + gamma
    let one = bf(1, work);

    // K0 = -lnt * I0 + sum_{k>=1} H_k q^k / (k!)^2
    // K1 = 1/x + lnt * I1 - (x/4) * sum_{k>=0} [H_k + H_{k+1}] q^k / (k! (k+1)!)
    let mut i0 = one.clone();
    let mut s0 = BigFloat::zero(work);
    let mut i1 = one.clone(); // I1 = (x/2) * sum q^k/(k!(k+1)!), accumulate the sum
    let mut s1 = one.clone(); // sum [H_k + H_{k+1}] q^k/(k!(k+1)!), k=0 term: H_0 + H_1 = 1
    let mut h = BigFloat::zero(work);
    let mut t0 = one.clone(); // q^k/(k!)^2
    let mut t1 = one.clone(); // q^k/(k!(k+1)!)
    let mut k = 1i64;
    loop {
        let kf = bf(k, work);
        t0 = t0.mul(&q).div(&kf).div(&kf);
        t1 = t1.mul(&q).div(&kf).div(&bf(k + 1, work));
        h = h.add(&kf.recip());
        let h_next = h.add(&bf(k + 1, work).recip());
        i0 = i0.add(&t0);
        s0 = s0.add(&t0.mul(&h));
        i1 = i1.add(&t1);
        s1 = s1.add(&t1.mul(&h.add(&h_next)));
        if t0.ilog2().unwrap_or(i64::MIN) < i0.ilog2().unwrap() - work as i64 - 8 {
            break;
        }
        k += 1;
        assert!(k < 16 * work as i64, "Bessel series failed to converge");
    }
    let k0 = s0.sub(&lnt.mul(&i0));
    let i1_full = half_x.mul(&i1);
    let k1 = x.recip().add(&lnt.mul(&i1_full)).sub(&half_x.ldexp(-1).mul(&s1));
    (k0.with_prec(prec), k1.with_prec(prec))
}

fn bessel_k_asympt(nu: u32, x: &BigFloat, prec: u32) -> BigFloat {
    let work = prec + 32;
    let x = x.with_prec(work);
    // K_nu(x) ~ sqrt(pi/(2x)) e^{-x} sum a_k(nu)/x^k,
    // a_k = prod_{j=1..k} (4 nu^2 - (2j-1)^2) / (8^k k!)
    let mu = 4i64 * (nu as i64) * (nu as i64);
    let mut term = bf(1, work);
    let mut sum = term.clone();
    let mut k = 1i64;
    let mut last_mag = i64::MAX;
    loop {
        let num = bf(mu - (2 * k - 1) * (2 * k - 1), work);
        term = term.mul(&num).div(&bf(8 * k, work)).div(&x);
        let mag = term.ilog2().unwrap_or(i64::MIN);
        if mag >= last_mag {
            break; // asymptotic tail starting to diverge
        }
        sum = sum.add(&term);
        if mag < sum.ilog2().unwrap() - work as i64 - 8 {
            break;
        }
        last_mag = mag;
        k += 1;
    }
    let pref = pi(work).div(&x.ldexp(1)).sqrt().mul(&x.neg().exp());
    pref.mul(&sum).with_prec(prec)
}

/// Rational-argument convenience: Gamma(num/den, x).
pub fn inc_gamma_upper_q(num: i64, den: i64, x: &BigFloat) -> BigFloat {
    let a = BigFloat::from_ratio(&BigRational::new(num.into(), den.into()), x.prec());
    inc_gamma_upper(&a, x)
}

pub fn factorial_bigint(n: u64) -> BigInt {
    let mut r = BigInt::from(1u32);
    for i in 2..=n {
        r *= i;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::float::digits_to_bits;

    fn close(a: &BigFloat, b: f64, tol: f64) -> bool {
        (a.to_f64() - b).abs() < tol
    }

    #[test]
    fn euler_gamma_value() {
        let g = euler_gamma(digits_to_bits(40));
        assert!(close(&g, 0.5772156649015329, 1e-15));
    }

    #[test]
    fn gamma_values() {
        let p = digits_to_bits(40);
        let g5 = gamma(&bf(5, p));
        assert!(close(&g5, 24.0, 1e-12));
        let gh = gamma(&BigFloat::from_decimal_str("0.5", p).unwrap());
        assert!(close(&gh, std::f64::consts::PI.sqrt(), 1e-13));
        // Gamma(3/2) = sqrt(pi)/2
        let g32 = gamma(&BigFloat::from_decimal_str("1.5", p).unwrap());
        assert!(close(&g32, std::f64::consts::PI.sqrt() / 2.0, 1e-13));
    }

    #[test]
    fn inc_gamma_closed_forms() {
        let p = digits_to_bits(40);
        // Gamma(1, x) = e^{-x}
        for xv in [0.3f64, 1.0, 2.5, 10.0, 40.0] {
            let x = BigFloat::from_decimal_str(&format!("{}", xv), p).unwrap();
            let g = inc_gamma_upper(&bf(1, p), &x);
            assert!(close(&g, (-xv).exp(), 1e-15 * (-xv).exp().max(1e-30)), "x={}", xv);
        }
        // Gamma(2, x) = (x+1) e^{-x}
        let x = BigFloat::from_decimal_str("3.7", p).unwrap();
        let g = inc_gamma_upper(&bf(2, p), &x);
        assert!(close(&g, 4.7 * (-3.7f64).exp(), 1e-14));
    }

    #[test]
    fn inc_gamma_branches_agree() {
        let p = digits_to_bits(40);
        // near the series/CF boundary both must give the same value
        let a = BigFloat::from_decimal_str("0.5", p).unwrap();
        for xv in ["1.2", "1.5", "1.8"] {
            let x = BigFloat::from_decimal_str(xv, p).unwrap();
            let s = inc_gamma_upper_series(&a, &x, p);
            let c = inc_gamma_upper_cf(&a, &x, p);
            let d = s.sub(&c).abs();
            let scale = s.abs();
            assert!(
                d.to_f64() < scale.to_f64() * 1e-36,
                "x={} s={:?} c={:?}",
                xv,
                s,
                c
            );
        }
    }

    #[test]
    fn bessel_known_values() {
        let p = digits_to_bits(40);
        let one = bf(1, p);
        let (k0, k1) = bessel_k01(&one);
        assert!(close(&k0, 0.42102443824070834, 1e-15));
        assert!(close(&k1, 0.6019072301972346, 1e-15));
        let five = bf(5, p);
        let (k0, k1) = bessel_k01(&five);
        assert!(close(&k0, 0.003691098334042594, 1e-17));
        assert!(close(&k1, 0.004044613445452164, 1e-17));
    }

    #[test]
    fn bessel_branches_agree() {
        // compare series against asymptotic in the overlap region
        let p = digits_to_bits(25);
        for xv in [30i64, 40, 60] {
            let x = bf(xv, p);
            let (s0, s1) = bessel_k01_series(&x, p);
            let a0 = bessel_k_asympt(0, &x, p);
            let a1 = bessel_k_asympt(1, &x, p);
            for (s, a) in [(s0, a0), (s1, a1)] {
                let rel = s.sub(&a).abs().div(&a.abs());
                assert!(rel.to_f64() < 1e-20, "x={} rel={:?}", xv, rel);
            }
        }
    }

    #[test]
    fn incomplete_bessel_identity() {
        // int_x^infty K0(y) y dy = x K1(x): check numerically by midpoint sum
        let p = digits_to_bits(30);
        let x = bf(2, p);
        let (_, k1) = bessel_k01(&x);
        let exact = x.mul(&k1).to_f64();
        let mut acc = 0.0;
        let h = 0.001;
        let mut y = 2.0 + h / 2.0;
        while y < 60.0 {
            let yb = BigFloat::from_decimal_str(&format!("{:.6}", y), p).unwrap();
            let (k0, _) = bessel_k01(&yb);
            acc += k0.to_f64() * y * h;
            y += h;
        }
        assert!((acc - exact).abs() < 1e-5, "acc={} exact={}", acc, exact);
    }
}
