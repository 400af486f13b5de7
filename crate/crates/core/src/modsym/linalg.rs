//! Exact dense linear algebra: generic field matrices (rationals and the
//! quadratic order), and fast integer kernels/solves via mod-p elimination
//! with Dixon p-adic lifting, always verified exactly afterwards.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rings::recognize::rational_reconstruct;
use crate::rings::BigRational;
use crate::series::QuadraticOrderElem;

use super::ModSymError;

pub trait FieldElem: Clone + PartialEq + Send + Sync + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
}

impl FieldElem for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl FieldElem for QuadraticOrderElem {
    fn zero() -> Self {
        QuadraticOrderElem::rational_in(&Zero::zero())
    }
    fn one() -> Self {
        QuadraticOrderElem::rational_in(&One::one())
    }
    fn add(&self, o: &Self) -> Self {
        QuadraticOrderElem::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        QuadraticOrderElem::add(self, &QuadraticOrderElem::neg(o))
    }
    fn mul(&self, o: &Self) -> Self {
        QuadraticOrderElem::mul(self, o)
    }
    fn inv(&self) -> Option<Self> {
        QuadraticOrderElem::inv(self)
    }
    fn is_zero(&self) -> bool {
        QuadraticOrderElem::is_zero(self)
    }
}

/// Dense row-major matrix over a field.
#[derive(Clone, Debug)]
pub struct FMat<F: FieldElem> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<F>,
}

impl<F: FieldElem> FMat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FMat { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        FMat { rows: r, cols: c, data }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc = acc.add(&a.mul(&v[j]));
                    }
                }
                acc
            })
            .collect()
    }

    /// v^T * self for a row vector v.
    pub fn vecmat(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.rows, v.len());
        (0..self.cols)
            .map(|j| {
                let mut acc = F::zero();
                for i in 0..self.rows {
                    if !v[i].is_zero() {
                        let a = self.get(i, j);
                        if !a.is_zero() {
                            acc = acc.add(&v[i].mul(a));
                        }
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn add_mat(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&o.data) {
            *a = a.add(b);
        }
        out
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.mul(s);
        }
        out
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r >= self.rows {
                break;
            }
            let mut pr = None;
            for i in r..self.rows {
                if !self.get(i, c).is_zero() {
                    pr = Some(i);
                    break;
                }
            }
            let Some(pr) = pr else { continue };
            for j in 0..self.cols {
                self.data.swap(r * self.cols + j, pr * self.cols + j);
            }
            let inv = self.get(r, c).inv().unwrap();
            for j in 0..self.cols {
                let v = self.get(r, j).mul(&inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in 0..self.cols {
                    let v = self.get(i, j).sub(&f.mul(self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis of the right kernel, as rows of the returned matrix.
    pub fn kernel(&self) -> Self {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, F::one());
            for (r, &pc) in pivots.iter().enumerate() {
                let v = m.get(r, fc).clone();
                if !v.is_zero() {
                    out.set(k, pc, F::zero().sub(&v));
                }
            }
        }
        out
    }

    /// Solves self * x = b; None when inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(self.rows, b.len());
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Characteristic polynomial by Faddeev-LeVerrier (coefficients of
    /// X^0 .. X^n). Suitable for small dimensions.
    pub fn charpoly(&self) -> Vec<F> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut coeffs = vec![F::zero(); n + 1];
        coeffs[n] = F::one();
        let mut m = Self::zeros(n, n);
        let mut c_prev = F::one();
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut am = self.mul(&m);
            for i in 0..n {
                let v = am.get(i, i).add(&c_prev);
                am.set(i, i, v);
            }
            m = am;
            let tr = {
                let am2 = self.mul(&m);
                let mut t = F::zero();
                for i in 0..n {
                    t = t.add(am2.get(i, i));
                }
                t
            };
            let kinv = int_in_field::<F>(k as i64).inv().unwrap();
            c_prev = F::zero().sub(&tr.mul(&kinv));
            coeffs[n - k] = c_prev.clone();
        }
        coeffs
    }
}

pub fn int_in_field<F: FieldElem>(k: i64) -> F {
    let mut acc = F::zero();
    let one = F::one();
    for _ in 0..k.unsigned_abs() {
        acc = acc.add(&one);
    }
    if k < 0 {
        F::zero().sub(&acc)
    } else {
        acc
    }
}

pub type QMat = FMat<BigRational>;

// ---- integer matrices with modular methods ----

const DIXON_P: u64 = 2_147_483_629; // prime < 2^31

fn modp(x: &BigInt) -> u64 {
    x.mod_floor(&BigInt::from(DIXON_P)).to_u64().unwrap()
}

fn inv_modp(a: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % DIXON_P;
    let mut e = DIXON_P - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % DIXON_P;
        }
        b = b * b % DIXON_P;
        e >>= 1;
    }
    r
}

/// Dense integer matrix in row-major order.
#[derive(Clone, Debug)]
pub struct ZMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl ZMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ZMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    /// Clears denominators row-wise is not wanted here: scales the whole
    /// matrix by the lcm of all denominators.
    pub fn from_qmat_scaled(m: &QMat) -> (ZMat, BigInt) {
        let mut den = BigInt::one();
        for v in &m.data {
            den = num_integer::lcm(den.clone(), v.denom().clone());
        }
        let mut z = ZMat::zeros(m.rows, m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                let v = m.get(i, j);
                z.set(i, j, v.numer() * (&den / v.denom()));
            }
        }
        (z, den)
    }

    fn to_modp(&self) -> Vec<u64> {
        self.data.iter().map(modp).collect()
    }

    /// Row echelon mod p: returns (rank, pivot columns, pivot rows).
    pub fn rank_profile_modp(&self) -> (usize, Vec<usize>, Vec<usize>) {
        let mut a = self.to_modp();
        let (rows, cols) = (self.rows, self.cols);
        let mut piv_cols = Vec::new();
        let mut piv_rows = Vec::new();
        let mut row_order: Vec<usize> = (0..rows).collect();
        let mut r = 0;
        for c in 0..cols {
            if r >= rows {
                break;
            }
            let mut pr = None;
            for i in r..rows {
                if a[row_order[i] * cols + c] != 0 {
                    pr = Some(i);
                    break;
                }
            }
            let Some(pr) = pr else { continue };
            row_order.swap(r, pr);
            let ri = row_order[r];
            let inv = inv_modp(a[ri * cols + c]);
            for i in (r + 1)..rows {
                let rj = row_order[i];
                let f = a[rj * cols + c] % DIXON_P;
                if f == 0 {
                    continue;
                }
                let mult = f * inv % DIXON_P;
                for j in c..cols {
                    let sub = (mult as u128 * a[ri * cols + j] as u128 % DIXON_P as u128) as u64;
                    a[rj * cols + j] = (a[rj * cols + j] + DIXON_P - sub) % DIXON_P;
                }
            }
            piv_cols.push(c);
            piv_rows.push(ri);
            r += 1;
        }
        (r, piv_cols, piv_rows)
    }

    /// Solves self * x = b exactly over Q by Dixon lifting; self must be
    /// square and nonsingular mod the internal prime.
    pub fn dixon_solve(&self, b: &[BigInt]) -> Result<Vec<BigRational>, ModSymError> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        assert_eq!(b.len(), n);
        let inv = modp_inverse(&self.to_modp(), n)
            .ok_or_else(|| ModSymError::Linalg("singular mod p".into()))?;
        let p = BigInt::from(DIXON_P);
        let max_a = self
            .data
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(BigInt::one)
            .max(BigInt::one());
        let max_b =
            b.iter().map(|v| v.abs()).max().unwrap_or_else(BigInt::one).max(BigInt::one());
        let ln_h = (n as f64) * ((n as f64).sqrt() * max_a.to_f64().unwrap_or(1e300)).ln()
            + max_b.to_f64().unwrap_or(1e300).ln();
        let mut iters = (ln_h / (DIXON_P as f64).ln()).ceil() as usize + 12;
        loop {
            let mut r: Vec<BigInt> = b.to_vec();
            let mut x = vec![BigInt::zero(); n];
            let mut pk = BigInt::one();
            for _ in 0..iters {
                let rp: Vec<u64> = r.iter().map(modp).collect();
                let y: Vec<u64> = crate::par::map_indexed(n, |i| {
                    let mut acc = 0u128;
                    for j in 0..n {
                        acc += inv[i * n + j] as u128 * rp[j] as u128 % DIXON_P as u128;
                    }
                    (acc % DIXON_P as u128) as u64
                });
                for i in 0..n {
                    if y[i] != 0 {
                        x[i] += &pk * BigInt::from(y[i]);
                    }
                }
                let new_r: Vec<BigInt> = crate::par::map_indexed(n, |i| {
                    let mut acc = BigInt::zero();
                    for j in 0..n {
                        if y[j] != 0 {
                            acc += self.get(i, j) * BigInt::from(y[j]);
                        }
                    }
                    (&r[i] - acc) / &p
                });
                r = new_r;
                pk *= &p;
            }
            let half = pk.sqrt() / 2;
            let mut out = Vec::with_capacity(n);
            let mut ok = true;
            for xi in &x {
                match rational_reconstruct(xi, &pk, &half, &half) {
                    Some(qv) => out.push(qv),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && self.verify_solution(&out, b) {
                return Ok(out);
            }
            iters *= 2;
            if iters > 500_000 {
                return Err(ModSymError::Linalg("Dixon lifting did not converge".into()));
            }
        }
    }

    pub fn verify_solution(&self, x: &[BigRational], b: &[BigInt]) -> bool {
        for i in 0..self.rows {
            let mut acc = BigRational::zero();
            for j in 0..self.cols {
                if !Zero::is_zero(&x[j]) {
                    acc += BigRational::from_integer(self.get(i, j).clone()) * &x[j];
                }
            }
            if acc != BigRational::from_integer(b[i].clone()) {
                return false;
            }
        }
        true
    }

    /// Exact rational right-kernel basis (rows), via mod-p rank profile and
    /// Dixon solves, verified exactly.
    pub fn kernel_rational(&self) -> Result<Vec<Vec<BigRational>>, ModSymError> {
        let (rank, piv_cols, piv_rows) = self.rank_profile_modp();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv_cols.contains(c)).collect();
        if rank == 0 {
            if self.data.iter().any(|v| !v.is_zero()) {
                return Err(ModSymError::Linalg("rank 0 mod p but nonzero matrix".into()));
            }
            return Ok(free
                .iter()
                .map(|&c| {
                    let mut v = vec![BigRational::zero(); self.cols];
                    v[c] = BigRational::one();
                    v
                })
                .collect());
        }
        let mut sub = ZMat::zeros(rank, rank);
        for (i, &ri) in piv_rows.iter().enumerate() {
            for (j, &cj) in piv_cols.iter().enumerate() {
                sub.set(i, j, self.get(ri, cj).clone());
            }
        }
        let mut out = Vec::new();
        for &fc in &free {
            let b: Vec<BigInt> =
                piv_rows.iter().map(|&ri| -self.get(ri, fc).clone()).collect();
            let sol = sub.dixon_solve(&b)?;
            let mut v = vec![BigRational::zero(); self.cols];
            v[fc] = BigRational::one();
            for (j, &cj) in piv_cols.iter().enumerate() {
                v[cj] = sol[j].clone();
            }
            for i in 0..self.rows {
                let mut acc = BigRational::zero();
                for c in 0..self.cols {
                    if !Zero::is_zero(&v[c]) {
                        acc += BigRational::from_integer(self.get(i, c).clone()) * &v[c];
                    }
                }
                if !Zero::is_zero(&acc) {
                    return Err(ModSymError::Linalg(
                        "kernel verification failed (unlucky prime)".into(),
                    ));
                }
            }
            out.push(v);
        }
        Ok(out)
    }
}

fn modp_inverse(a: &[u64], n: usize) -> Option<Vec<u64>> {
    let mut m = a.to_vec();
    let mut inv = vec![0u64; n * n];
    for i in 0..n {
        inv[i * n + i] = 1;
    }
    for c in 0..n {
        let mut pr = None;
        for i in c..n {
            if m[i * n + c] != 0 {
                pr = Some(i);
                break;
            }
        }
        let pr = pr?;
        if pr != c {
            for j in 0..n {
                m.swap(c * n + j, pr * n + j);
                inv.swap(c * n + j, pr * n + j);
            }
        }
        let f = inv_modp(m[c * n + c]);
        for j in 0..n {
            m[c * n + j] = m[c * n + j] * f % DIXON_P;
            inv[c * n + j] = inv[c * n + j] * f % DIXON_P;
        }
        for i in 0..n {
            if i == c || m[i * n + c] == 0 {
                continue;
            }
            let f = m[i * n + c];
            for j in 0..n {
                let s1 = (f as u128 * m[c * n + j] as u128 % DIXON_P as u128) as u64;
                m[i * n + j] = (m[i * n + j] + DIXON_P - s1) % DIXON_P;
                let s2 = (f as u128 * inv[c * n + j] as u128 % DIXON_P as u128) as u64;
                inv[i * n + j] = (inv[i * n + j] + DIXON_P - s2) % DIXON_P;
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rref_solve_kernel() {
        let mut m = QMat::zeros(2, 3);
        m.set(0, 0, q(1, 1));
        m.set(0, 1, q(2, 1));
        m.set(0, 2, q(3, 1));
        m.set(1, 0, q(2, 1));
        m.set(1, 1, q(4, 1));
        m.set(1, 2, q(7, 1));
        let k = m.kernel();
        assert_eq!(k.rows, 1);
        let v = k.row(0).to_vec();
        let prod = m.matvec(&v);
        assert!(prod.iter().all(|x| FieldElem::is_zero(x)));
        let sol = m.solve(&[q(6, 1), q(13, 1)]).unwrap();
        let back = m.matvec(&sol);
        assert_eq!(back, vec![q(6, 1), q(13, 1)]);
    }

    #[test]
    fn charpoly_small() {
        // [[2, 1], [1, 2]]: X^2 - 4X + 3
        let mut m = QMat::zeros(2, 2);
        m.set(0, 0, q(2, 1));
        m.set(0, 1, q(1, 1));
        m.set(1, 0, q(1, 1));
        m.set(1, 1, q(2, 1));
        let cp = m.charpoly();
        assert_eq!(cp, vec![q(3, 1), q(-4, 1), q(1, 1)]);
    }

    #[test]
    fn dixon_solves_exactly() {
        let n = 12;
        let mut a = ZMat::zeros(n, n);
        let mut seed = 42u64;
        let mut rng = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for i in 0..n {
            for j in 0..n {
                a.set(i, j, BigInt::from((rng() % 2001) as i64 - 1000));
            }
        }
        let b: Vec<BigInt> = (0..n).map(|_| BigInt::from((rng() % 201) as i64 - 100)).collect();
        let x = a.dixon_solve(&b).unwrap();
        assert!(a.verify_solution(&x, &b));
    }

    #[test]
    fn integer_kernel() {
        let mut a = ZMat::zeros(3, 5);
        let rows = [[1i64, 2, 3, 4, 5], [2, 4, 6, 8, 10], [1, 0, 1, 0, 1]];
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                a.set(i, j, BigInt::from(v));
            }
        }
        let k = a.kernel_rational().unwrap();
        assert_eq!(k.len(), 3);
    }

    #[test]
    fn quadratic_field_matrices() {
        let th = QuadraticOrderElem::theta(-1);
        let mut m = FMat::<QuadraticOrderElem>::zeros(2, 2);
        m.set(0, 0, th.clone());
        m.set(0, 1, FieldElem::one());
        m.set(1, 0, FieldElem::one());
        m.set(1, 1, th.clone());
        assert_eq!(m.rank(), 2);
        let sol = m.solve(&[FieldElem::one(), FieldElem::zero()]).unwrap();
        let back = m.matvec(&sol);
        assert_eq!(back[0], FieldElem::one());
        assert!(FieldElem::is_zero(&back[1]));
    }
}
