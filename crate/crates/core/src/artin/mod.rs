//! Data attached to the first layer of the false Tate extension for a
//! cube-free integer m: the cubic character of Q(mu_3, m^(1/3))/Q(mu_3),
//! its weight-one theta newform, the weight-one Eisenstein series of the
//! reducible twist, conductors and Euler polynomials at 3.

use crate::rings::BigRational;
use crate::series::{radical, DirichletCharacter, QExpansion};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArtinError {
    #[error("prime {0} is not 1 mod 3 or divides 3m")]
    BadPrime(u64),
    #[error("m = {0} is not admissible (cube-free, coprime to 3, > 1)")]
    BadM(u64),
}

/// Modular exponentiation.
pub fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u128;
    let mm = m as u128;
    let mut bb = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * bb % mm;
        }
        bb = bb * bb % mm;
        e >>= 1;
    }
    r as u64
}

/// Whether m is a cubic residue modulo a split prime q = 1 mod 3.
pub fn cubic_residue_class(m: u64, q: u64) -> Result<bool, ArtinError> {
    if q % 3 != 1 || m % q == 0 {
        return Err(ArtinError::BadPrime(q));
    }
    Ok(pow_mod(m % q, (q - 1) / 3, q) == 1)
}

/// Ramification of the cubic character at 3: r = 1 (unramified) iff
/// m = +-1 mod 9, else r = 3.
pub fn ramification_at_3(m: u64) -> (u32, bool) {
    let unram = m % 9 == 1 || m % 9 == 8;
    (if unram { 1 } else { 3 }, unram)
}

fn is_admissible_m(m: u64) -> bool {
    m > 1 && m % 3 != 0 && super::ellcurve::filter::is_cube_free(m)
}

/// Theta coefficients of the induced representation: multiplicative, with
/// a(q) = 2 or -1 at split primes by cubic residuosity, a(q) = 0 at inert
/// primes and at q | m, a(3) = 1 in the unramified case and 0 otherwise,
/// and the weight-one recursion with nebentypus eps_3 at good primes.
pub fn g_rho_coeffs(m: u64, n_max: usize) -> Result<QExpansion<i64>, ArtinError> {
    if !is_admissible_m(m) {
        return Err(ArtinError::BadM(m));
    }
    let (r, unram) = ramification_at_3(m);
    let eps3 = DirichletCharacter::eps3();
    let mut a = vec![0i64; n_max + 1];
    if n_max >= 1 {
        a[1] = 1;
    }
    // smallest prime factor sieve
    let mut spf = vec![0u32; n_max + 1];
    let mut primes = Vec::new();
    for i in 2..=n_max {
        if spf[i] == 0 {
            primes.push(i as u64);
            let mut j = i;
            while j <= n_max {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    let aq = |q: u64| -> i64 {
        if q == 3 {
            if unram {
                1
            } else {
                0
            }
        } else if m % q == 0 {
            0
        } else if q % 3 == 2 {
            0
        } else if cubic_residue_class(m, q).unwrap() {
            2
        } else {
            -1
        }
    };
    let level = radical(m) * radical(m) * 3u64.pow(r);
    for &q in &primes {
        let apv = aq(q);
        let bad = level % q == 0;
        let eps = eps3.eval_i64(q as i64).unwrap();
        let mut pk = q as usize;
        let mut prev2 = 1i64;
        let mut prev1 = apv;
        while pk <= n_max {
            a[pk] = prev1;
            let next = if bad { prev1 * apv } else { prev1 * apv - eps * prev2 };
            prev2 = prev1;
            prev1 = next;
            match pk.checked_mul(q as usize) {
                Some(v) => pk = v,
                None => break,
            }
        }
    }
    for n in 2..=n_max {
        let p = spf[n] as usize;
        let mut pk = p;
        let mut rest = n / p;
        while rest % p == 0 {
            pk *= p;
            rest /= p;
        }
        if rest > 1 {
            a[n] = a[pk] * a[rest];
        }
    }
    Ok(QExpansion::new(a, 1, level, eps3))
}

/// The weight-one Eisenstein series g_sigma = E_1(eps_3):
/// a(0) = (1/2) L(0, eps_3) = 1/6 and a(n) = sum of eps_3 over divisors.
pub fn g_sigma_coeffs(n_max: usize) -> QExpansion<BigRational> {
    let mut a = vec![0i64; n_max + 1];
    for d in 1..=n_max {
        let ed = DirichletCharacter::eps3().eval_i64(d as i64).unwrap();
        if ed == 0 {
            continue;
        }
        let mut j = d;
        while j <= n_max {
            a[j] += ed;
            j += d;
        }
    }
    let mut coeffs: Vec<BigRational> =
        a.into_iter().map(|v| BigRational::from_integer(v.into())).collect();
    coeffs[0] = BigRational::new(1.into(), 6.into());
    QExpansion::new(coeffs, 1, 3, DirichletCharacter::eps3())
}

/// Integer Euler polynomial at a prime: P(X) = 1 + c1 X + c2 X^2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerPoly {
    pub c1: i64,
    pub c2: i64,
}

impl EulerPoly {
    pub fn one() -> Self {
        EulerPoly { c1: 0, c2: 0 }
    }
    pub fn one_minus_x() -> Self {
        EulerPoly { c1: -1, c2: 0 }
    }
    pub fn degree(&self) -> u32 {
        if self.c2 != 0 {
            2
        } else if self.c1 != 0 {
            1
        } else {
            0
        }
    }
}

/// Everything attached to rho = Ind(chi) and sigma = 1 + eps_3 for a
/// given m.
#[derive(Debug, Clone)]
pub struct ArtinTwistData {
    pub m: u64,
    /// 3-exponent of the conductor of rho (1 unramified, 3 ramified)
    pub r: u32,
    pub unramified_at_3: bool,
    /// conductor of rho: rad(m)^2 3^r
    pub n_rho: u64,
    /// conductor of sigma: 3
    pub n_sigma: u64,
    /// Euler polynomial of rho at 3 (1 - X unramified, 1 ramified)
    pub p3_rho: EulerPoly,
    /// Euler polynomial of sigma at 3: always 1 - X
    pub p3_sigma: EulerPoly,
}

/// Assembles the full record for an admissible m.
pub fn euler_data(m: u64) -> Result<ArtinTwistData, ArtinError> {
    if !is_admissible_m(m) {
        return Err(ArtinError::BadM(m));
    }
    let (r, unram) = ramification_at_3(m);
    Ok(ArtinTwistData {
        m,
        r,
        unramified_at_3: unram,
        n_rho: radical(m) * radical(m) * 3u64.pow(r),
        n_sigma: 3,
        p3_rho: if unram { EulerPoly::one_minus_x() } else { EulerPoly::one() },
        p3_sigma: EulerPoly::one_minus_x(),
    })
}

impl ArtinTwistData {
    pub fn g_rho(&self, n_max: usize) -> QExpansion<i64> {
        g_rho_coeffs(self.m, n_max).expect("admissibility checked at construction")
    }

    /// g_sigma with the Euler factors at m removed (the sigma-side form).
    pub fn g_sigma_m(&self, n_max: usize) -> QExpansion<BigRational> {
        g_sigma_coeffs(n_max).iota(self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Coeff;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    // [OP] cubic_residue_class examples
    #[test]
    fn cubic_residues() {
        // 2^10 = 1024 = 33*31 + 1 mod 31
        assert!(cubic_residue_class(2, 31).unwrap());
        // 2^2 = 4 != 1 mod 7
        assert!(!cubic_residue_class(2, 7).unwrap());
        // 8 = 2^3 is a cube
        assert!(cubic_residue_class(8, 7).unwrap());
        assert!(matches!(cubic_residue_class(2, 5), Err(ArtinError::BadPrime(5))));
    }

    // [OP] ramification_at_3 examples
    #[test]
    fn ramification_cases() {
        assert_eq!(ramification_at_3(10), (1, true)); // 10 = 1 mod 9
        assert_eq!(ramification_at_3(2), (3, false));
        assert_eq!(ramification_at_3(17), (1, true)); // 17 = -1 mod 9
        assert_eq!(ramification_at_3(5), (3, false));
        assert_eq!(ramification_at_3(26), (1, true)); // 26 = -1 mod 9
    }

    // [OP] g_rho_coeffs examples for m = 2
    #[test]
    fn g_rho_m2() {
        let g = g_rho_coeffs(2, 40).unwrap();
        assert_eq!(g.level, 108); // 2^2 * 3^3
        assert_eq!(*g.a(1), 1);
        assert_eq!(*g.a(2), 0); // q | m
        assert_eq!(*g.a(3), 0); // ramified
        assert_eq!(*g.a(5), 0); // inert
        assert_eq!(*g.a(7), -1); // split, 2 not a cube mod 7
        assert_eq!(*g.a(31), 2); // split, 2 is a cube mod 31
        assert_eq!(*g.a(25), 1); // inert recursion: 0*0 - eps3(5)*1 = 1
        assert_eq!(*g.a(13), -1); // 2^4 = 16 = 3 mod 13
        // multiplicativity spot check
        assert_eq!(*g.a(35), g.a(5) * g.a(7));
    }

    #[test]
    fn g_rho_m10() {
        let g = g_rho_coeffs(10, 40).unwrap();
        assert_eq!(g.level, 300); // 10^2 * 3
        assert_eq!(*g.a(3), 1); // unramified: a(3) = 1
        assert_eq!(*g.a(9), 1); // U_3-eigenform: a(9) = a(3)^2
        assert_eq!(*g.a(2), 0);
        assert_eq!(*g.a(5), 0);
        // 10^2 = 2 mod 7 != 1: not a cube
        assert_eq!(*g.a(7), -1);
        // q = 13: 10^4 = 3 mod 13
        assert_eq!(*g.a(13), -1);
        // q = 37: 10^3 = 1000 = 1 mod 37
        assert_eq!(*g.a(37), 2);
    }

    #[test]
    fn g_rho_invariants() {
        for m in [2u64, 5, 7, 10, 11, 17] {
            let g = g_rho_coeffs(m, 500).unwrap();
            for n in 1..=500usize {
                let v = *g.a(n);
                assert!((-2..=3).contains(&v), "m={} n={} a={}", m, n, v);
            }
            // prime coefficients lie in {-1, 0, 1, 2}
            for p in [2usize, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43] {
                let v = *g.a(p);
                assert!((-1..=2).contains(&v), "m={} p={} a={}", m, p, v);
            }
            // eps3-oddness: a(q) = 0 for inert q not dividing m
            for p in [2usize, 5, 11, 17, 23, 29, 41, 47] {
                if m % (p as u64) != 0 {
                    assert_eq!(*g.a(p), 0, "m={} inert p={}", m, p);
                }
            }
        }
    }

    // [OP] g_sigma_coeffs examples
    #[test]
    fn g_sigma_values() {
        let g = g_sigma_coeffs(20);
        assert_eq!(g.a(0), &q(1, 6));
        assert_eq!(g.a(1), &q(1, 1));
        assert_eq!(g.a(4), &q(1, 1)); // 1 - 1 + 1
        assert_eq!(g.a(7), &q(2, 1)); // 1 + eps3(7)
        assert_eq!(g.a(3), &q(1, 1)); // divisors 1, 3: 1 + 0
        assert_eq!(g.a(12), &q(1, 1));
    }

    // [OP] euler_data examples
    #[test]
    fn euler_data_cases() {
        let d10 = euler_data(10).unwrap();
        assert_eq!(d10.p3_rho, EulerPoly::one_minus_x());
        assert_eq!(d10.n_rho, 300);
        assert_eq!(d10.r, 1);
        let d2 = euler_data(2).unwrap();
        assert_eq!(d2.p3_rho, EulerPoly::one());
        assert_eq!(d2.n_rho, 108);
        assert_eq!(d2.r, 3);
        assert_eq!(d2.p3_sigma, EulerPoly::one_minus_x());
        assert_eq!(d2.n_sigma, 3);
        assert!(euler_data(9).is_err());
        assert!(euler_data(8).is_err());
        assert!(euler_data(24).is_err());
        assert!(euler_data(20).is_ok()); // cube-free with a square factor
    }

    #[test]
    fn termwise_congruence_substrate() {
        // a(n, g_rho) = a(n, g_sigma | iota_m) mod 3 for 3 not dividing n
        for m in [2u64, 5, 7, 10, 11, 17] {
            let n_max = 3000;
            let grho = g_rho_coeffs(m, n_max).unwrap();
            let grho_q = grho
                .convert(|c| BigRational::try_from_rational(&q(*c, 1)))
                .unwrap();
            let gsig = g_sigma_coeffs(n_max).iota(m);
            let first = grho_q.termwise_congruent(&gsig, 1, true);
            assert_eq!(first, None, "m={} first violation {:?}", m, first);
        }
    }
}
