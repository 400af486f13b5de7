//! Neron periods via the arithmetic-geometric mean, with a direct
//! numerical-integration oracle used by the verification suites.
//!
//! With y' = 2y + a1 x + a3 the Neron differential is dx/y' and
//! y'^2 = g(x) = 4x^3 + b2 x^2 + 2 b4 x + b6, so the periods are complete
//! integrals of dx/sqrt(g).


use num_traits::Signed;

use crate::rings::complex::BigComplex;
use crate::rings::float::{digits_to_bits, pi, BigFloat};

use super::{b_invariants, EllipticCurveQ};

/// Real arithmetic-geometric mean of positive inputs.
pub fn agm(a0: &BigFloat, b0: &BigFloat) -> BigFloat {
    let prec = a0.prec().max(b0.prec());
    let mut a = a0.with_prec(prec + 16);
    let mut b = b0.with_prec(prec + 16);
    for _ in 0..prec {
        let am = a.add(&b).ldexp(-1);
        let gm = a.mul(&b).sqrt();
        let diff = am.sub(&gm).abs();
        a = am;
        b = gm;
        if diff.is_zero()
            || diff.ilog2().unwrap() < a.ilog2().unwrap_or(0) - (prec as i64) - 8
        {
            break;
        }
    }
    a.with_prec(prec)
}

/// Roots of g(x) = 4x^3 + b2 x^2 + 2 b4 x + b6 at working precision.
/// Returns either three reals (descending) or (e1, alpha, beta) for the
/// complex pair alpha +- i beta.
enum CubicRoots {
    ThreeReal(BigFloat, BigFloat, BigFloat),
    OneReal { e1: BigFloat, alpha: BigFloat, beta: BigFloat },
}

fn g_roots(e: &EllipticCurveQ, prec: u32) -> CubicRoots {
    let (b2, b4, b6, _) = b_invariants(&e.a_invariants());
    let c: [BigFloat; 4] = [
        BigFloat::from_bigint(&b6, prec),
        BigFloat::from_bigint(&(&b4 * 2), prec),
        BigFloat::from_bigint(&b2, prec),
        BigFloat::from_i64(4, prec),
    ];
    let cf: Vec<f64> = c.iter().map(|x| x.to_f64()).collect();
    // f64 Durand-Kerner for seeds
    let mut roots = [(0.4f64, 0.9f64), (-0.6, 0.8), (0.7, -0.5)];
    let eval = |z: (f64, f64)| -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for k in (0..4).rev() {
            let r2 = re * z.0 - im * z.1 + cf[k];
            let i2 = re * z.1 + im * z.0;
            re = r2;
            im = i2;
        }
        (re, im)
    };
    for _ in 0..300 {
        let old = roots;
        for i in 0..3 {
            let (fr, fi) = eval(old[i]);
            let mut dr = cf[3];
            let mut di = 0.0;
            for j in 0..3 {
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
    let scale: f64 = 1.0 + roots.iter().map(|r| r.0.abs()).fold(0.0, f64::max);
    let real_count = roots.iter().filter(|r| r.1.abs() < 1e-7 * scale).count();
    // Newton polish at full precision on a real seed
    let polish = |seed: f64| -> BigFloat {
        let mut x = f64_to_bigfloat(seed, prec);
        for _ in 0..32 {
            // g(x), g'(x)
            let mut g = BigFloat::zero(prec);
            let mut gp = BigFloat::zero(prec);
            for k in (0..4).rev() {
                gp = gp.mul(&x).add(&g);
                g = g.mul(&x).add(&c[k]);
            }
            if gp.is_zero() {
                break;
            }
            let step = g.div(&gp);
            x = x.sub(&step);
            if step.is_zero() || step.ilog2().unwrap() < x.ilog2().unwrap_or(0) - prec as i64 {
                break;
            }
        }
        x
    };
    if real_count == 3 && e.disc.is_positive() {
        let mut rs: Vec<BigFloat> = roots.iter().map(|r| polish(r.0)).collect();
        rs.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let e3 = rs.pop().unwrap();
        let e2 = rs.pop().unwrap();
        let e1 = rs.pop().unwrap();
        CubicRoots::ThreeReal(e1, e2, e3)
    } else {
        // single real root: pick the most-real one
        let seed = roots
            .iter()
            .min_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap())
            .unwrap()
            .0;
        let e1 = polish(seed);
        // deflate: 4x^3 + b2 x^2 + 2b4 x + b6 = (x - e1)(4x^2 + p x + q)
        let p = c[2].add(&e1.mul_i64(4));
        let q = c[1].add(&e1.mul(&p));
        // roots of 4x^2 + px + q: (-p +- sqrt(p^2 - 16q)) / 8
        let disc = p.mul(&p).sub(&q.mul_i64(16));
        assert!(disc.is_negative(), "expected a complex pair");
        let alpha = p.neg().ldexp(-3);
        let beta = disc.neg().sqrt().ldexp(-3);
        CubicRoots::OneReal { e1, alpha, beta }
    }
}

fn f64_to_bigfloat(v: f64, prec: u32) -> BigFloat {
    let (m, e) = frexp(v);
    let mant = (m * (1u64 << 53) as f64) as i64;
    BigFloat::from_i64(mant, prec).ldexp(e as i64 - 53)
}

fn frexp(v: f64) -> (f64, i32) {
    if v == 0.0 {
        return (0.0, 0);
    }
    let e = v.abs().log2().floor() as i32 + 1;
    (v / (e as f64).exp2(), e)
}

/// Neron periods (Omega_+, nu) with Omega_- = i nu; both returned positive.
pub fn periods_agm(e: &EllipticCurveQ, digits: u32) -> (BigFloat, BigFloat) {
    use num_traits::Signed;
    let prec = digits_to_bits(digits) + 32;
    let pi_v = pi(prec);
    match g_roots(e, prec) {
        CubicRoots::ThreeReal(e1, e2, e3) => {
            let a = e1.sub(&e3).sqrt();
            let b = e1.sub(&e2).sqrt();
            let c = e2.sub(&e3).sqrt();
            let omega_plus = pi_v.div(&agm(&a, &b));
            let nu = pi_v.div(&agm(&a, &c));
            (omega_plus, nu)
        }
        CubicRoots::OneReal { e1, alpha, beta } => {
            let d = e1.sub(&alpha);
            let r = d.mul(&d).add(&beta.mul(&beta)).sqrt();
            let sa = r.clone().sqrt();
            let plus = r.add(&d).ldexp(-1).sqrt();
            let minus = r.sub(&d).ldexp(-1).sqrt();
            let omega_plus = pi_v.div(&agm(&sa, &plus));
            let nu = pi_v.div(&agm(&sa, &minus));
            (omega_plus, nu)
        }
    }
}

/// Omega_- as a purely imaginary complex number with Omega_-/i > 0.
pub fn omega_minus_complex(e: &EllipticCurveQ, digits: u32) -> BigComplex {
    let (_, nu) = periods_agm(e, digits);
    BigComplex::new(BigFloat::zero(nu.prec()), nu)
}

// ---- quadrature oracle ----

/// tanh-sinh quadrature of an integrand on [0, 1] (endpoint singularities
/// up to 1/sqrt are fine). Levels are recomputed from scratch; convergence
/// is checked between successive levels.
pub fn tanh_sinh_01(f: impl Fn(&BigFloat) -> BigFloat, prec: u32) -> BigFloat {
    let work = prec + 24;
    let half = BigFloat::from_i64(1, work).ldexp(-1);
    let pi_half = pi(work).ldexp(-1);
    // abscissas where the weight has decayed below 2^-(work+20) are skipped:
    // w ~ exp(-pi/2 e^|t|), so |t|_max ~ ln(2 (work+20) ln2 / pi)
    let t_max = ((4.0 * (work as f64 + 20.0) * std::f64::consts::LN_2)
        / std::f64::consts::PI)
        .ln()
        + 0.5;
    let mut prev = BigFloat::zero(work);
    let mut total = BigFloat::zero(work);
    for level in 2..10u32 {
        let h = BigFloat::from_i64(1, work).ldexp(-(level as i64));
        let k_max = (t_max * (1u64 << level) as f64).ceil() as i64;
        let mut sum = BigFloat::zero(work);
        for k in -k_max..=k_max {
            let t = h.mul_i64(k);
            let et = t.exp();
            let emt = et.recip();
            let sinh = et.sub(&emt).ldexp(-1);
            let cosh = et.add(&emt).ldexp(-1);
            let arg = pi_half.mul(&sinh);
            let ea = arg.exp();
            let ema = ea.recip();
            let cosh_a = ea.add(&ema).ldexp(-1);
            // x = (1 + tanh(arg))/2 = e^arg / (e^arg + e^-arg), stable near 0
            let x = ea.div(&ea.add(&ema));
            // skip nodes indistinguishable from the endpoints
            if x.is_zero() || x.sub(&BigFloat::from_i64(1, work)).is_zero() {
                continue;
            }
            let w = pi_half.mul(&cosh).div(&cosh_a.mul(&cosh_a)).ldexp(-1);
            sum = sum.add(&w.mul(&f(&x)));
        }
        total = sum.mul(&h);
        if level > 3 {
            let diff = total.sub(&prev).abs();
            if diff.is_zero()
                || diff.ilog2().unwrap() < total.ilog2().unwrap_or(0) - prec as i64 - 4
            {
                break;
            }
        }
        prev = total.clone();
    }
    total.with_prec(prec)
}

/// Direct numerical integration of the period integrals; the independent
/// oracle against which `periods_agm` is validated.
pub fn periods_integration_oracle(e: &EllipticCurveQ, digits: u32) -> (BigFloat, BigFloat) {
    let prec = digits_to_bits(digits) + 40;
    match g_roots(e, prec) {
        CubicRoots::ThreeReal(e1, e2, e3) => {
            let a = e1.sub(&e2); // > 0
            let b = e1.sub(&e3);
            let omega_plus = split_integral(&a, &b, prec).ldexp(1);
            let ap = e2.sub(&e3);
            let nu = split_integral(&ap, &b, prec).ldexp(1);
            (omega_plus, nu)
        }
        CubicRoots::OneReal { e1, alpha, beta } => {
            let d = e1.sub(&alpha);
            let omega_plus = split_integral_complex(&d, &beta, true, prec).ldexp(1);
            let nu = split_integral_complex(&d, &beta, false, prec).ldexp(1);
            (omega_plus, nu)
        }
    }
}

/// int_0^infty ds / sqrt((s^2+A)(s^2+B)) as two smooth [0,1] pieces
/// (s in [0,1], then s = 1/u).
fn split_integral(a: &BigFloat, b: &BigFloat, prec: u32) -> BigFloat {
    let near = tanh_sinh_01(
        |s| {
            let s2 = s.mul(s);
            s2.add(a).mul(&s2.add(b)).sqrt().recip()
        },
        prec,
    );
    let far = tanh_sinh_01(
        |u| {
            let u2 = u.mul(u);
            let one = BigFloat::from_i64(1, u.prec());
            one.add(&a.mul(&u2)).mul(&one.add(&b.mul(&u2))).sqrt().recip()
        },
        prec,
    );
    near.add(&far)
}

/// Same for the complex pair: (s^2 +- d)^2 + beta^2 under the radical.
/// `plus` selects (s^2 + d) (the real period); otherwise (s^2 - d).
fn split_integral_complex(d: &BigFloat, beta: &BigFloat, plus: bool, prec: u32) -> BigFloat {
    let b2 = beta.mul(beta);
    let near = tanh_sinh_01(
        |s| {
            let s2 = s.mul(s);
            let t = if plus { s2.add(d) } else { s2.sub(d) };
            t.mul(&t).add(&b2).sqrt().recip()
        },
        prec,
    );
    let far = tanh_sinh_01(
        |u| {
            let u2 = u.mul(u);
            let one = BigFloat::from_i64(1, u.prec());
            let t = if plus { one.add(&d.mul(&u2)) } else { one.sub(&d.mul(&u2)) };
            t.mul(&t).add(&b2.mul(&u2).mul(&u2)).sqrt().recip()
        },
        prec,
    );
    near.add(&far)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn tanh_sinh_known_integrals() {
        let prec = digits_to_bits(30);
        // int_0^1 dx/sqrt(x) = 2 (integrable endpoint singularity)
        let v = tanh_sinh_01(|x| x.sqrt().recip(), prec);
        let err = v.sub(&BigFloat::from_i64(2, prec)).abs();
        assert!(err.is_zero() || err.ilog2().unwrap() < -83, "{:?}", v);
        // int_0^1 4/(1+x^2) dx = pi
        let v = tanh_sinh_01(
            |x| {
                BigFloat::from_i64(4, x.prec())
                    .div(&BigFloat::from_i64(1, x.prec()).add(&x.mul(x)))
            },
            prec,
        );
        let err = v.sub(&crate::rings::float::pi(prec)).abs();
        assert!(err.is_zero() || err.ilog2().unwrap() < -83, "{:?}", v);
    }

    // [OP] periods_agm examples
    #[test]
    fn periods_11a1() {
        let e = EllipticCurveQ::by_label("11a1").unwrap();
        let (op, nu) = periods_agm(&e, 40);
        assert!((op.to_f64() - 1.2692093042795045).abs() < 1e-12);
        assert!(nu.to_f64() > 0.0);
        // against the integration oracle at 30 digits
        let (op2, nu2) = periods_integration_oracle(&e, 30);
        assert!(op.sub(&op2).abs().to_f64() < 1e-25, "{:?} vs {:?}", op, op2);
        assert!(nu.sub(&nu2).abs().to_f64() < 1e-25);
    }

    #[test]
    fn periods_37a1() {
        let e = EllipticCurveQ::by_label("37a1").unwrap();
        let (op, nu) = periods_agm(&e, 40);
        assert!((op.to_f64() - 2.9934586462319596).abs() < 1e-12);
        let (op2, nu2) = periods_integration_oracle(&e, 30);
        assert!(op.sub(&op2).abs().to_f64() < 1e-25);
        assert!(nu.sub(&nu2).abs().to_f64() < 1e-25);
    }

    #[test]
    fn lattice_consistency_j_invariant() {
        // j(tau) from the period lattice must match c4^3/Delta
        for label in ["11a1", "37a1", "14a1", "43a1"] {
            let e = EllipticCurveQ::by_label(label).unwrap();
            let (op, nu) = periods_agm(&e, 30);
            let mut tau: (f64, f64) = if e.disc.to_f64().unwrap() > 0.0 {
                // rectangular lattice [Omega+, i nu]
                (0.0, nu.to_f64() / op.to_f64())
            } else {
                // half-offset lattice [Omega+, (Omega+ + i nu)/2]
                (0.5, nu.to_f64() / op.to_f64() / 2.0)
            };
            // reduce tau into the fundamental domain before the q-series
            for _ in 0..64 {
                tau.0 -= tau.0.round();
                let n2 = tau.0 * tau.0 + tau.1 * tau.1;
                if n2 >= 1.0 - 1e-12 {
                    break;
                }
                tau = (-tau.0 / n2, tau.1 / n2);
            }
            let qr = (-2.0 * std::f64::consts::PI * tau.1).exp();
            let qarg = 2.0 * std::f64::consts::PI * tau.0;
            // j = 1/q + 744 + 196884 q + 21493760 q^2 + ...
            let (qc, qs) = (qr * qarg.cos(), qr * qarg.sin());
            let inv = (qc / (qc * qc + qs * qs), -qs / (qc * qc + qs * qs));
            let mut jr = inv.0 + 744.0;
            let coeffs = [
                196884.0f64,
                21493760.0,
                864299970.0,
                20245856256.0,
                333202640600.0,
                4252023300096.0,
            ];
            let (mut pr, mut pi_) = (1.0f64, 0.0f64);
            for c in coeffs {
                let nr = pr * qc - pi_ * qs;
                let ni = pr * qs + pi_ * qc;
                pr = nr;
                pi_ = ni;
                jr += c * pr;
            }
            let (c4, _, disc) = super::super::c_invariants(&e.a_invariants());
            let j_exact = c4.pow(3).to_f64().unwrap() / disc.to_f64().unwrap();
            // truncation of the j-series limits the accuracy; a lattice
            // mix-up would be off by orders of magnitude
            assert!(
                (jr - j_exact).abs() < 2e-2 * (1.0 + j_exact.abs()),
                "{}: {} vs {}",
                label,
                jr,
                j_exact
            );
        }
    }
}
