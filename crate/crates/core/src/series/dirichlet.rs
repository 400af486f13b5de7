//! Dirichlet characters of modulus N and order dividing 2 * 3^t.

use crate::rings::cyclo::CycloElem;

/// Kronecker symbol (a/n) for n > 0, and (a/2), (a/-1) conventions built in.
pub fn kronecker(mut a: i64, mut n: i64) -> i64 {
    if n == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    let mut result = 1i64;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // factor out 2s from n
    let mut n2 = 0;
    while n % 2 == 0 {
        n /= 2;
        n2 += 1;
    }
    if n2 > 0 {
        if a % 2 == 0 {
            return 0;
        }
        // (a/2) = 1 if a = +-1 mod 8 else -1
        let am8 = ((a % 8) + 8) % 8;
        let s2 = if am8 == 1 || am8 == 7 { 1 } else { -1 };
        if n2 % 2 == 1 {
            result *= s2;
        }
    }
    a = ((a % n) + n) % n;
    while a != 0 {
        let mut a2 = 0;
        while a % 2 == 0 {
            a /= 2;
            a2 += 1;
        }
        if a2 % 2 == 1 {
            let nm8 = n % 8;
            if nm8 == 3 || nm8 == 5 {
                result = -result;
            }
        }
        // quadratic reciprocity for odd positive a, n
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        let t = a;
        a = n % t;
        n = t;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DirichletCharacter {
    /// The trivial character modulo `modulus` (principal character).
    Trivial { modulus: u64 },
    /// The quadratic character given by the Kronecker symbol (d/.),
    /// of modulus |d|.
    Kronecker { d: i64 },
    /// Explicit value table on residues mod `modulus`; entry n holds
    /// chi(n), with chi(n) = 0 for gcd(n, modulus) > 1.
    Table { modulus: u64, order: u32, values: Vec<CycloElem> },
}

impl DirichletCharacter {
    pub fn trivial(modulus: u64) -> Self {
        DirichletCharacter::Trivial { modulus }
    }

    /// The quadratic character mod 3 (nontrivial character of Q(mu_3)/Q).
    pub fn eps3() -> Self {
        DirichletCharacter::Kronecker { d: -3 }
    }

    pub fn modulus(&self) -> u64 {
        match self {
            DirichletCharacter::Trivial { modulus } => *modulus,
            DirichletCharacter::Kronecker { d } => d.unsigned_abs(),
            DirichletCharacter::Table { modulus, .. } => *modulus,
        }
    }

    pub fn order(&self) -> u32 {
        match self {
            DirichletCharacter::Trivial { .. } => 1,
            DirichletCharacter::Kronecker { .. } => 2,
            DirichletCharacter::Table { order, .. } => *order,
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, DirichletCharacter::Trivial { .. })
    }

    /// chi(n) as a small integer where the character is +-1-valued,
    /// None for higher order.
    pub fn eval_i64(&self, n: i64) -> Option<i64> {
        match self {
            DirichletCharacter::Trivial { modulus } => {
                let m = *modulus as i64;
                if m <= 1 || num_integer::gcd(n.rem_euclid(m), m) == 1 {
                    Some(1)
                } else {
                    Some(0)
                }
            }
            DirichletCharacter::Kronecker { d } => Some(kronecker(*d, n)),
            DirichletCharacter::Table { .. } => None,
        }
    }

    pub fn eval(&self, n: i64) -> CycloElem {
        match self {
            DirichletCharacter::Table { modulus, values, .. } => {
                let m = *modulus as i64;
                let idx = n.rem_euclid(m) as usize;
                values[idx].clone()
            }
            _ => CycloElem::from_i64(1, self.eval_i64(n).unwrap()),
        }
    }

    /// Multiplies two characters, producing a table character at the lcm
    /// modulus (kept simple: used only for small moduli).
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_trivial() && other.is_trivial() {
            return DirichletCharacter::trivial(num_integer::lcm(self.modulus(), other.modulus()));
        }
        if self.is_trivial() {
            return other.extend_modulus(num_integer::lcm(self.modulus(), other.modulus()));
        }
        if other.is_trivial() {
            return self.extend_modulus(num_integer::lcm(self.modulus(), other.modulus()));
        }
        if let (DirichletCharacter::Kronecker { d: d1 }, DirichletCharacter::Kronecker { d: d2 }) =
            (self, other)
        {
            if d1 == d2 {
                return DirichletCharacter::trivial(d1.unsigned_abs());
            }
        }
        let modulus = num_integer::lcm(self.modulus(), other.modulus());
        let order = num_integer::lcm(self.order(), other.order());
        let values = (0..modulus as i64)
            .map(|n| {
                if num_integer::gcd(n, modulus as i64) != 1 {
                    CycloElem::zero(1)
                } else {
                    self.eval(n).mul(&other.eval(n))
                }
            })
            .collect();
        DirichletCharacter::Table { modulus, order, values }
    }

    fn extend_modulus(&self, m: u64) -> Self {
        match self {
            DirichletCharacter::Trivial { .. } => DirichletCharacter::Trivial { modulus: m },
            // a Kronecker character keeps its own conductor; level bookkeeping
            // in q-expansions tracks the ambient modulus separately
            other => other.clone(),
        }
    }

    /// Identifier used in the q-expansion dump header.
    pub fn id_string(&self) -> String {
        match self {
            DirichletCharacter::Trivial { modulus } => format!("triv{}", modulus),
            DirichletCharacter::Kronecker { d } => format!("kron{}", d),
            DirichletCharacter::Table { modulus, order, .. } => {
                format!("table{}o{}", modulus, order)
            }
        }
    }

    pub fn from_id_string(s: &str) -> Option<Self> {
        if let Some(m) = s.strip_prefix("triv") {
            return Some(DirichletCharacter::Trivial { modulus: m.parse().ok()? });
        }
        if let Some(d) = s.strip_prefix("kron") {
            return Some(DirichletCharacter::Kronecker { d: d.parse().ok()? });
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eps3_values() {
        let chi = DirichletCharacter::eps3();
        assert_eq!(chi.eval_i64(1), Some(1));
        assert_eq!(chi.eval_i64(2), Some(-1));
        assert_eq!(chi.eval_i64(3), Some(0));
        assert_eq!(chi.eval_i64(4), Some(1));
        assert_eq!(chi.eval_i64(7), Some(1));
        assert_eq!(chi.eval_i64(-1), Some(-1)); // odd character
        // periodicity mod 3
        for n in 1..50i64 {
            assert_eq!(chi.eval_i64(n), chi.eval_i64(n + 3));
        }
    }

    #[test]
    fn kronecker_against_legendre() {
        // (a/p) = a^((p-1)/2) mod p for odd primes
        for p in [5i64, 7, 11, 13, 17] {
            for a in 1..p {
                let mut pow = 1i64;
                for _ in 0..(p - 1) / 2 {
                    pow = pow * a % p;
                }
                let legendre = if pow == 1 { 1 } else { -1 };
                assert_eq!(kronecker(a, p), legendre, "a={} p={}", a, p);
            }
        }
        // multiplicativity in the top argument
        for a in -20i64..20 {
            for b in -20i64..20 {
                assert_eq!(kronecker(a * b, 35), kronecker(a, 35) * kronecker(b, 35));
            }
        }
    }

    #[test]
    fn trivial_character() {
        let chi = DirichletCharacter::trivial(6);
        assert_eq!(chi.eval_i64(5), Some(1));
        assert_eq!(chi.eval_i64(4), Some(0));
        assert_eq!(chi.eval_i64(3), Some(0));
        assert_eq!(chi.eval_i64(7), Some(1));
    }

    #[test]
    fn character_product() {
        let e = DirichletCharacter::eps3();
        let sq = e.mul(&e);
        // eps3^2 = trivial mod 3
        assert_eq!(sq.eval_i64(2), Some(1));
        assert_eq!(sq.eval_i64(3), Some(0));
    }
}
