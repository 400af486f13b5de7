//! Tate's algorithm: reduction type and conductor exponent at a prime.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{b_invariants, c_invariants, LocalData, ReductionKind};

fn vp(n: &BigInt, p: u64) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    super::val_at(n, p)
}

fn modp(n: &BigInt, p: u64) -> u64 {
    use num_integer::Integer;
    n.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

fn is_square_mod(a: u64, p: u64) -> bool {
    (0..p).any(|x| (x * x) % p == a % p)
}

/// Change of variables x = x' + r, y = y' + s x' + t (u = 1).
fn translate(a: &mut [BigInt; 5], r: &BigInt, s: &BigInt, t: &BigInt) {
    let [a1, a2, a3, a4, a6] = a.clone();
    a[0] = &a1 + s * 2;
    a[1] = &a2 - s * &a1 + r * 3 - s * s;
    a[2] = &a3 + r * &a1 + t * 2;
    a[3] = &a4 - s * &a3 + r * &a2 * 2 - (t + r * s) * &a1 + r * r * 3 - s * t * 2;
    a[4] = &a6 + r * &a4 + r * r * &a2 + r * r * r - t * &a3 - t * t - r * t * &a1;
}

/// Divide out u = p (only reached for non-minimal input).
fn scale_down(a: &mut [BigInt; 5], p: u64) {
    let pb = BigInt::from(p);
    a[0] = &a[0] / &pb;
    a[1] = &a[1] / (&pb * &pb);
    a[2] = &a[2] / pb.pow(3);
    a[3] = &a[3] / pb.pow(4);
    a[4] = &a[4] / pb.pow(6);
}

/// The singular point of the reduction mod p, as small non-negative lifts.
fn singular_point(a: &[BigInt; 5], p: u64) -> (BigInt, BigInt) {
    assert!(p <= 1_000_000, "additive reduction at very large prime unsupported");
    let eval = |x: u64, y: u64| -> (u64, u64, u64) {
        let xb = BigInt::from(x);
        let yb = BigInt::from(y);
        // F = y^2 + a1 x y + a3 y - x^3 - a2 x^2 - a4 x - a6
        let f = &yb * &yb + &a[0] * &xb * &yb + &a[2] * &yb
            - &xb * &xb * &xb
            - &a[1] * &xb * &xb
            - &a[3] * &xb
            - &a[4];
        let fx = &a[0] * &yb - &xb * &xb * 3 - &a[1] * &xb * 2 - &a[3];
        let fy = &yb * 2 + &a[0] * &xb + &a[2];
        (modp(&f, p), modp(&fx, p), modp(&fy, p))
    };
    if p == 2 {
        for x in 0..2u64 {
            for y in 0..2u64 {
                if eval(x, y) == (0, 0, 0) {
                    return (x.into(), y.into());
                }
            }
        }
    } else {
        let inv2 = (p + 1) / 2;
        for x in 0..p {
            // F_y = 0 determines y
            let num = modp(&(-(&a[0] * BigInt::from(x) + &a[2])), p);
            let y = num * inv2 % p;
            if eval(x, y) == (0, 0, 0) {
                return (x.into(), y.into());
            }
        }
    }
    panic!("no singular point found mod {}", p);
}

/// A root of the cubic T^3 + b T^2 + c T + d mod p that is at least double.
fn multiple_root_cubic(b: u64, c: u64, d: u64, p: u64) -> Option<u64> {
    let p = p as u128;
    let (b, c, d) = (b as u128, c as u128, d as u128);
    for t in 0..p {
        let f = (t * t % p * t + b * t % p * t + c * t + d) % p;
        let fp = (3 * t % p * t + 2 * b * t + c) % p;
        if f == 0 && fp == 0 {
            return Some(t as u64);
        }
    }
    None
}

/// A double root of Y^2 + a Y - b mod p (None when the roots are distinct
/// or there is no root).
fn double_root_quadratic(aq: u64, bq: u64, p: u64) -> Option<u64> {
    // discriminant a^2 + 4b
    let disc = (aq * aq % p + 4 * bq) % p;
    if disc != 0 {
        return None;
    }
    if p == 2 {
        // Y^2 + aY - b with a even-case: double root iff a = 0 mod 2; root = sqrt(b)
        for y in 0..2u64 {
            if (y * y + aq * y) % 2 == bq % 2 {
                return Some(y);
            }
        }
        return None;
    }
    let inv2 = (p + 1) / 2;
    Some((p - aq % p) % p * inv2 % p)
}

/// A double root of a X^2 + b X + c mod p with a != 0 mod p.
fn double_root_quadratic_general(aq: u64, bq: u64, cq: u64, p: u64) -> Option<u64> {
    if p == 2 {
        for x in 0..2u64 {
            let f = (aq * x * x + bq * x + cq) % 2;
            // double root mod 2 detection: f has the single root with f' = 0
            let fp = bq % 2;
            if f == 0 && fp == 0 {
                return Some(x);
            }
        }
        return None;
    }
    let disc = ((bq * bq) % p + p * p - (4 * aq % p) * cq % p) % p;
    if disc != 0 {
        return None;
    }
    // root = -b / (2a)
    let inv = |x: u64| -> u64 {
        let mut r = 1u64;
        let mut base = x % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        r
    };
    Some((p - bq % p) % p * inv(2 * aq % p) % p)
}

/// Reduction data at p for a globally minimal model.
pub fn local_data(a0: &[BigInt; 5], p: u64) -> LocalData {
    let mut a = a0.clone();
    let mut restarts = 0;
    loop {
        let (c4, c6, disc) = c_invariants(&a);
        let n = vp(&disc, p);
        if n == 0 {
            return LocalData { prime: p, kind: ReductionKind::Good, disc_val: 0, cond_exp: 0 };
        }
        if vp(&c4, p) == 0 {
            // multiplicative: split iff -c6 is a square in Q_p
            let split = if p == 2 {
                modp(&-&c6, 8) == 1
            } else {
                is_square_mod(modp(&-&c6, p), p)
            };
            let kind = if split {
                ReductionKind::SplitMultiplicative
            } else {
                ReductionKind::NonsplitMultiplicative
            };
            return LocalData { prime: p, kind, disc_val: n, cond_exp: 1 };
        }
        // additive
        let f = additive_exponent(&mut a, p, n);
        match f {
            Some(f) => {
                return LocalData {
                    prime: p,
                    kind: ReductionKind::Additive,
                    disc_val: n,
                    cond_exp: f,
                };
            }
            None => {
                // non-minimal at p: scale down and rerun
                scale_down(&mut a, p);
                restarts += 1;
                assert!(restarts < 30, "Tate restart loop");
            }
        }
    }
}

/// Conductor exponent for additive reduction; None signals a non-minimal
/// model (caller scales down and retries).
fn additive_exponent(a: &mut [BigInt; 5], p: u64, n: u32) -> Option<u32> {
    let pb = BigInt::from(p);
    let p2 = &pb * &pb;
    // move the singular point to the origin
    let (x0, y0) = singular_point(a, p);
    translate(a, &x0, &BigInt::zero(), &y0);
    if vp(&a[4], p) < 2 {
        return Some(n); // type II
    }
    let (_, _, _, b8) = b_invariants(a);
    if vp(&b8, p) < 3 {
        return Some(n - 1); // type III
    }
    let (_, _, b6, _) = b_invariants(a);
    if vp(&b6, p) < 3 {
        return Some(n - 2); // type IV
    }
    // normalize so that p | a1, a2 and p^2 | a3, a4, p^3 | a6
    let (s, t) = if p == 2 {
        let s = BigInt::from(modp(&a[1], 2));
        let a6_4: BigInt = &a[4] / 4;
        let t = BigInt::from(2) * BigInt::from(modp(&a6_4, 2));
        (s, t)
    } else {
        let inv2 = BigInt::from((p + 1) / 2);
        let s_val = modp(&(-&a[0] * &inv2), p);
        let s = BigInt::from(s_val);
        // after the s-shift a3 changes; compute then pick t mod p^2
        let mut tmp = a.clone();
        translate(&mut tmp, &BigInt::zero(), &s, &BigInt::zero());
        use num_integer::Integer;
        let p2b = p2.clone();
        let inv2_p2 = {
            // inverse of 2 mod p^2 via Fermat-Euler
            let m = p2b.to_u64().unwrap();
            let mut r = 1u64;
            let mut base = 2 % m;
            let mut e = p * (p - 1) - 1; // phi(p^2) - 1
            while e > 0 {
                if e & 1 == 1 {
                    r = (r as u128 * base as u128 % m as u128) as u64;
                }
                base = (base as u128 * base as u128 % m as u128) as u64;
                e >>= 1;
            }
            BigInt::from(r)
        };
        let t = (-&tmp[2] * &inv2_p2).mod_floor(&p2b);
        (s, t)
    };
    translate(a, &BigInt::zero(), &s, &t);
    debug_assert!(vp(&a[0], p) >= 1 && vp(&a[1], p) >= 1);
    debug_assert!(vp(&a[2], p) >= 2 && vp(&a[3], p) >= 2 && vp(&a[4], p) >= 3);
    // the cubic T^3 + (a2/p) T^2 + (a4/p^2) T + (a6/p^3) mod p
    let b = modp(&(&a[1] / &pb), p);
    let c = modp(&(&a[3] / &p2), p);
    let d = modp(&(&a[4] / (&p2 * &pb)), p);
    // discriminant of the cubic mod p
    let disc_cubic = {
        let (b, c, d) = (b as i128, c as i128, d as i128);
        let v = 18 * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * c * c * c - 27 * d * d;
        (v.rem_euclid(p as i128)) as u64
    };
    if disc_cubic != 0 {
        return Some(n - 4); // I0*
    }
    // 3c - b^2 distinguishes double from triple root
    let triple = {
        let v = (3 * (c as i128) - (b as i128) * (b as i128)).rem_euclid(p as i128);
        v == 0
    };
    if !triple {
        // I_m* loop
        let r = multiple_root_cubic(b, c, d, p).expect("double root exists");
        translate(a, &(&pb * BigInt::from(r)), &BigInt::zero(), &BigInt::zero());
        let mut m = 1u32;
        // valuation targets: a3 measured at p^ky, a6 at p^(ky+kx), a4 at p^(kx+1)
        let mut kx = 2u32; // current x-depth: a4 divisible by p^kx guaranteed-ish
        let mut ky = 2u32;
        loop {
            // Y-quadratic: Y^2 + (a3/p^ky) Y - (a6/p^(2ky))
            let a3t = modp(&(&a[2] / pb.pow(ky)), p);
            let a6t = modp(&(&a[4] / pb.pow(2 * ky)), p);
            match double_root_quadratic(a3t, (p - a6t % p) % p, p) {
                None => return Some(n - 4 - m), // distinct roots: I_m*
                Some(root) => {
                    let t = pb.pow(ky) * BigInt::from(root);
                    translate(a, &BigInt::zero(), &BigInt::zero(), &t);
                }
            }
            m += 1;
            // X-quadratic: (a2/p) X^2 + (a4/p^(kx+1)) X + (a6/p^(2kx+1))
            let a2t = modp(&(&a[1] / &pb), p);
            let a4t = modp(&(&a[3] / pb.pow(kx + 1)), p);
            let a6t = modp(&(&a[4] / pb.pow(2 * kx + 1)), p);
            match double_root_quadratic_general(a2t, a4t, a6t, p) {
                None => return Some(n - 4 - m),
                Some(root) => {
                    let r = pb.pow(kx) * BigInt::from(root);
                    translate(a, &r, &BigInt::zero(), &BigInt::zero());
                }
            }
            m += 1;
            kx += 1;
            ky += 1;
            assert!(m < 1000, "I_m* loop runaway");
        }
    }
    // triple root: move it to the origin
    let r = multiple_root_cubic(b, c, d, p).expect("triple root exists");
    translate(a, &(&pb * BigInt::from(r)), &BigInt::zero(), &BigInt::zero());
    // quadratic Y^2 + (a3/p^2) Y - (a6/p^4)
    let a3t = modp(&(&a[2] / &p2), p);
    let a6t = modp(&(&a[4] / (&p2 * &p2)), p);
    match double_root_quadratic(a3t, (p - a6t % p) % p, p) {
        None => {
            // distinct roots mod p (or irreducible): IV*
            Some(n - 6)
        }
        Some(root) => {
            let t = &p2 * BigInt::from(root);
            translate(a, &BigInt::zero(), &BigInt::zero(), &t);
            if vp(&a[3], p) < 4 {
                return Some(n - 7); // III*
            }
            if vp(&a[4], p) < 6 {
                return Some(n - 8); // II*
            }
            None // non-minimal
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ld(ai: [i64; 5], p: u64) -> LocalData {
        let a: [BigInt; 5] =
            [ai[0].into(), ai[1].into(), ai[2].into(), ai[3].into(), ai[4].into()];
        local_data(&a, p)
    }

    #[test]
    fn multiplicative_types() {
        // 11a1 at 11: split multiplicative, v(Delta) = 5
        let l = ld([0, -1, 1, -10, -20], 11);
        assert_eq!(l.kind, ReductionKind::SplitMultiplicative);
        assert_eq!(l.disc_val, 5);
        assert_eq!(l.cond_exp, 1);
        // 37a1 at 37
        let l = ld([0, 0, 1, -1, 0], 37);
        assert_eq!(l.cond_exp, 1);
    }

    #[test]
    fn additive_small_primes() {
        // 27a1 = [0,0,1,0,-7]: conductor 27, so f_3 = 3
        let l = ld([0, 0, 1, 0, -7], 3);
        assert_eq!(l.kind, ReductionKind::Additive);
        assert_eq!(l.cond_exp, 3);
        // 32a1 = [0,0,0,4,0]: conductor 32, f_2 = 5
        let l = ld([0, 0, 0, 4, 0], 2);
        assert_eq!(l.cond_exp, 5);
        // 36a1 = [0,0,0,0,1]: conductor 36: f_2 = 2, f_3 = 2
        assert_eq!(ld([0, 0, 0, 0, 1], 2).cond_exp, 2);
        assert_eq!(ld([0, 0, 0, 0, 1], 3).cond_exp, 2);
        // 20a1 = [0,1,0,4,4]: conductor 20: f_2 = 2
        assert_eq!(ld([0, 1, 0, 4, 4], 2).cond_exp, 2);
        // 24a1 = [0,-1,0,-4,4]: conductor 24: f_2 = 3
        assert_eq!(ld([0, -1, 0, -4, 4], 2).cond_exp, 3);
    }

    #[test]
    fn good_reduction() {
        let l = ld([0, -1, 1, -10, -20], 7);
        assert_eq!(l.kind, ReductionKind::Good);
        assert_eq!(l.cond_exp, 0);
    }
}
