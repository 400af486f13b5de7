//! P^1(Z/N): canonical representatives, enumeration, lifts to SL_2(Z),
//! and cusp equivalence on Gamma_0(N) with explicit witnesses.

use num_integer::Integer;

fn gcd(a: i64, b: i64) -> i64 {
    a.abs().gcd(&b.abs())
}

/// Extended gcd: returns (g, x, y) with a x + b y = g.
pub fn xgcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i64, 0i64);
    let (mut y0, mut y1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        (-r0, -x0, -y0)
    } else {
        (r0, x0, y0)
    }
}

fn inv_mod(a: i64, m: i64) -> Option<i64> {
    let (g, x, _) = xgcd(a.rem_euclid(m), m);
    if g == 1 {
        Some(x.rem_euclid(m))
    } else {
        None
    }
}

/// Canonical representative of (c : d) in P^1(Z/N).
///
/// The class with gcd(c, N) = g is normalized to c = g and the smallest
/// admissible d, scanning the finitely many units that stabilize c = g.
pub fn p1_normalize(n: i64, c0: i64, d0: i64) -> (i64, i64) {
    if n == 1 {
        return (0, 0);
    }
    let c = c0.rem_euclid(n);
    let d = d0.rem_euclid(n);
    debug_assert_eq!(gcd(gcd(c, d), n), 1, "invalid P1 element ({}:{}) mod {}", c0, d0, n);
    if c == 0 {
        return (0, 1);
    }
    let g = gcd(c, n);
    // scale by the inverse of c/g modulo N/g to put c = g
    let u = inv_mod(c / g, n / g).expect("c/g invertible mod N/g");
    // all scalings fixing c = g: u' = u (1 + k N/g) for k mod g, coprime to N
    let mut best: Option<(i64, i64)> = None;
    for k in 0..g {
        let v = (u + k * (n / g)).rem_euclid(n);
        if gcd(v, n) != 1 {
            continue;
        }
        let dd = (v * (d % n)).rem_euclid(n);
        let cand = (g, dd);
        if best.is_none() || cand < best.unwrap() {
            best = Some(cand);
        }
    }
    best.expect("at least one valid scaling")
}

/// All canonical representatives of P^1(Z/N).
pub fn p1_list(n: i64) -> Vec<(i64, i64)> {
    if n == 1 {
        return vec![(0, 0)];
    }
    let mut out = vec![(0, 1)];
    for g in 1..n {
        if n % g != 0 {
            continue;
        }
        for d in 0..n {
            if gcd(gcd(g, d), n) == 1 {
                out.push(p1_normalize(n, g, d));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Lift (c : d) with gcd(c, d, N) = 1 to a matrix [[a, b], [c', d']] in
/// SL_2(Z) with (c', d') = (c, d) mod N.
pub fn lift_to_sl2(n: i64, c: i64, d: i64) -> [i64; 4] {
    if n == 1 {
        return [1, 0, 0, 1];
    }
    let mut c = c.rem_euclid(n);
    let mut d = d.rem_euclid(n);
    if c == 0 && d == 0 {
        panic!("invalid P1 element");
    }
    // adjust d modulo N so that gcd(c, d) = 1 as integers
    if c == 0 {
        c = n;
    }
    if d == 0 {
        d = n;
    }
    let mut k = 0;
    while gcd(c, d + k * n) != 1 {
        k += 1;
        assert!(k < 10_000, "lift failed");
    }
    d += k * n;
    let (g, x, y) = xgcd(d, -c);
    debug_assert_eq!(g, 1);
    // a d - b c = 1 with a = x, b = y
    [x, y, c, d]
}

/// psi(N) = N prod (1 + 1/p), the size of P^1(Z/N).
pub fn psi(n: u64) -> u64 {
    let mut r = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            r = r / p * (p + 1);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        r = r / m * (m + 1);
    }
    r
}

/// Cusp a/c (primitive vector (a, c)); infinity is (1, 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cusp {
    pub a: i64,
    pub c: i64,
}

impl Cusp {
    pub fn new(a: i64, c: i64) -> Self {
        let g = gcd(a, c).max(1);
        let (mut a, mut c) = (a / g, c / g);
        if c < 0 || (c == 0 && a < 0) {
            a = -a;
            c = -c;
        }
        Cusp { a, c }
    }
}

/// Gamma_0(N)-equivalence of cusps with an explicit witness matrix:
/// returns gamma in Gamma_0(N) with gamma * c2 = c1 (projectively).
pub fn cusp_equiv(n: i64, c1: Cusp, c2: Cusp) -> Option<[i64; 4]> {
    // complete each cusp to SL2: g_i (a_i */ c_i *) with g_i(infinity) = cusp
    let g1 = complete_cusp(c1);
    let g2 = complete_cusp(c2);
    // gamma = g1 * t * g2^{-1} with t = [[1, j], [0, 1]]: need lower-left
    // entry of g1 t g2^{-1} = 0 mod N
    // g2^{-1} = [[d2, -b2], [-c2, a2]]
    let [a1, _b1, c1v, _d1] = g1;
    let [a2, b2, c2v, d2] = g2;
    // lower row of g1 t: (c1, c1 j + d1); times g2^{-1}:
    // ll(j) = c1 d2 - (c1 j + d1) c2 ... compute symbolically
    let ll0 = c1v * d2 - _d1 * c2v; // j = 0 term
    let ll_j = -c2v * c1v; // coefficient of j
    // brute-force j over residues mod N (N moderate; called rarely)
    for j in 0..n {
        if (ll0 + j * ll_j).rem_euclid(n) == 0 {
            let t = [1, j, 0, 1];
            let gt = mat_mul(g1, t);
            let g2inv = [d2, -b2, -c2v, a2];
            let gamma = mat_mul(gt, g2inv);
            debug_assert_eq!(gamma[0] * gamma[3] - gamma[1] * gamma[2], 1);
            if gamma[2].rem_euclid(n) == 0 {
                return Some(gamma);
            }
        }
    }
    None
}

/// SL2 matrix with g(infinity) = a/c.
pub fn complete_cusp(cusp: Cusp) -> [i64; 4] {
    let (g, x, y) = xgcd(cusp.a, cusp.c);
    debug_assert_eq!(g, 1);
    // a y' - c x' = ... want det [[a, b],[c, d]] = 1: a d - b c = 1
    [cusp.a, -y, cusp.c, x]
}

pub fn mat_mul(a: [i64; 4], b: [i64; 4]) -> [i64; 4] {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p1_sizes() {
        assert_eq!(p1_list(11).len(), 12);
        assert_eq!(p1_list(7).len(), 8);
        assert_eq!(p1_list(33).len() as u64, psi(33));
        assert_eq!(p1_list(132).len() as u64, psi(132));
        assert_eq!(psi(132), 288);
        assert_eq!(psi(3300), 8640);
    }

    #[test]
    fn normalize_is_canonical() {
        let n = 132;
        // scaling by any unit must not change the representative
        for &(c, d) in p1_list(n).iter() {
            for u in 1..n {
                if num_integer::gcd(u, n) != 1 {
                    continue;
                }
                assert_eq!(p1_normalize(n, c * u, d * u), (c, d), "({},{}) * {}", c, d, u);
            }
        }
    }

    #[test]
    fn lifts_are_correct() {
        for n in [11i64, 33, 132] {
            for &(c, d) in p1_list(n).iter() {
                let m = lift_to_sl2(n, c, d);
                assert_eq!(m[0] * m[3] - m[1] * m[2], 1, "det at ({}, {})", c, d);
                assert_eq!(p1_normalize(n, m[2], m[3]), (c, d));
            }
        }
    }

    #[test]
    fn cusp_equivalence() {
        // on X_0(11) there are two cusps: 0 and infinity
        let inf = Cusp::new(1, 0);
        let zero = Cusp::new(0, 1);
        assert!(cusp_equiv(11, inf, zero).is_none());
        assert!(cusp_equiv(11, inf, inf).is_some());
        // 1/11 is equivalent to infinity... actually 1/11 ~ infinity on
        // Gamma_0(11) iff 11 | c-part: cusp (1, 11): equivalent to infinity
        let c = Cusp::new(1, 11);
        let gamma = cusp_equiv(11, inf, c);
        assert!(gamma.is_some());
        let g = gamma.unwrap();
        // witness maps c to infinity-class representative: g * (1,11)^T
        // proportional to (1, 0)
        let x = g[0] * 1 + g[1] * 11;
        let y = g[2] * 1 + g[3] * 11;
        assert_eq!(y, 0);
        assert!(x == 1 || x == -1);
        // 1/3 ~ 2/3 on Gamma_0(11)? both have denominator 3 coprime to 11:
        // all cusps with the same gcd(c, N) class are equivalent at prime level
        let g2 = cusp_equiv(11, Cusp::new(1, 3), Cusp::new(2, 3));
        assert!(g2.is_some());
    }
}
