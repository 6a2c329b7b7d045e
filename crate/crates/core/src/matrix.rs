//! Exact dense linear algebra: Bareiss determinants over the integers,
//! Faddeev–LeVerrier characteristic polynomials, and rational Gaussian
//! elimination. Everything here is allocation-heavy and intended for the
//! small matrices (n = number of partition classes) this crate works with;
//! only the group-determinant check goes up to 60x60.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Square integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZMat {
    pub n: usize,
    pub data: Vec<BigInt>,
}

impl ZMat {
    pub fn zero(n: usize) -> Self {
        ZMat { n, data: vec![BigInt::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n);
            data.extend(row.iter().map(|&v| BigInt::from(v)));
        }
        ZMat { n, data }
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &ZMat) -> ZMat {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = ZMat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = a * other.at(k, j);
                    out.data[i * n + j] += t;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &ZMat) -> ZMat {
        assert_eq!(self.n, other.n);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        ZMat { n: self.n, data }
    }

    pub fn scale(&self, c: &BigInt) -> ZMat {
        ZMat { n: self.n, data: self.data.iter().map(|v| v * c).collect() }
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.at(i, i).clone()).sum()
    }

    /// Fraction-free Bareiss determinant.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.data.clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k * n + k].is_zero() {
                let mut found = None;
                for r in k + 1..n {
                    if !m[r * n + k].is_zero() {
                        found = Some(r);
                        break;
                    }
                }
                match found {
                    Some(r) => {
                        for c in 0..n {
                            m.swap(k * n + c, r * n + c);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                    let (q, r) = num_integer::Integer::div_rem(&num, &prev);
                    debug_assert!(r.is_zero());
                    m[i * n + j] = q;
                }
                m[i * n + k] = BigInt::zero();
            }
            prev = m[k * n + k].clone();
        }
        let d = m[(n - 1) * n + (n - 1)].clone();
        if sign < 0 { -d } else { d }
    }

    /// Monic characteristic polynomial det(xI - M), coefficients ascending,
    /// by Faddeev–LeVerrier (all divisions exact over Z).
    pub fn charpoly(&self) -> Vec<BigInt> {
        let n = self.n;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        if n == 0 {
            return coeffs;
        }
        let mut mk = self.clone();
        let mut ck = -mk.trace();
        coeffs[n - 1] = ck.clone();
        for k in 2..=n {
            let mut adj = mk;
            for i in 0..n {
                let v = adj.at(i, i) + &ck;
                adj.set(i, i, v);
            }
            mk = self.mul(&adj);
            let t = mk.trace();
            let (q, r) = num_integer::Integer::div_rem(&t, &BigInt::from(k as i64));
            debug_assert!(r.is_zero(), "Faddeev-LeVerrier division must be exact");
            ck = -q;
            coeffs[n - k] = ck.clone();
        }
        coeffs
    }
}

/// Rectangular rational matrix, used for exact solving.
#[derive(Clone, Debug)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigRational>,
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn at(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        QMat { rows: r, cols: c, data }
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows);
        let mut out = QMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k).clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = &a * other.at(k, j);
                    let cur = out.at(i, j) + t;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Solve the (possibly overdetermined) system A x = b exactly.
    /// Returns None when inconsistent or underdetermined.
    pub fn solve(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(b.len(), self.rows);
        let rows = self.rows;
        let cols = self.cols;
        let width = cols + 1;
        let mut aug: Vec<BigRational> = Vec::with_capacity(rows * width);
        for i in 0..rows {
            for j in 0..cols {
                aug.push(self.at(i, j).clone());
            }
            aug.push(b[i].clone());
        }
        let mut pivot_cols = Vec::new();
        let mut r = 0usize;
        for c in 0..cols {
            let mut piv = None;
            for i in r..rows {
                if !aug[i * width + c].is_zero() {
                    piv = Some(i);
                    break;
                }
            }
            let Some(p) = piv else { continue };
            for j in 0..width {
                aug.swap(r * width + j, p * width + j);
            }
            let inv = aug[r * width + c].clone();
            for j in c..width {
                let v = &aug[r * width + j] / &inv;
                aug[r * width + j] = v;
            }
            for i in 0..rows {
                if i != r && !aug[i * width + c].is_zero() {
                    let f = aug[i * width + c].clone();
                    for j in c..width {
                        let v = &aug[i * width + j] - &f * &aug[r * width + j];
                        aug[i * width + j] = v;
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        // inconsistent when a zero row has nonzero rhs
        for i in r..rows {
            if !aug[i * width + cols].is_zero() {
                return None;
            }
        }
        if pivot_cols.len() < cols {
            return None;
        }
        let mut x = vec![BigRational::zero(); cols];
        for (rank_row, &c) in pivot_cols.iter().enumerate() {
            x[c] = aug[rank_row * width + cols].clone();
        }
        Some(x)
    }

    /// Exact inverse of a square matrix, None when singular.
    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let width = 2 * n;
        let mut aug = vec![BigRational::zero(); n * width];
        for i in 0..n {
            for j in 0..n {
                aug[i * width + j] = self.at(i, j).clone();
            }
            aug[i * width + n + i] = BigRational::one();
        }
        for c in 0..n {
            let mut piv = None;
            for i in c..n {
                if !aug[i * width + c].is_zero() {
                    piv = Some(i);
                    break;
                }
            }
            let p = piv?;
            for j in 0..width {
                aug.swap(c * width + j, p * width + j);
            }
            let inv = aug[c * width + c].clone();
            for j in 0..width {
                let v = &aug[c * width + j] / &inv;
                aug[c * width + j] = v;
            }
            for i in 0..n {
                if i != c && !aug[i * width + c].is_zero() {
                    let f = aug[i * width + c].clone();
                    for j in 0..width {
                        let v = &aug[i * width + j] - &f * &aug[c * width + j];
                        aug[i * width + j] = v;
                    }
                }
            }
        }
        let mut out = QMat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug[i * width + n + j].clone());
            }
        }
        Some(out)
    }

    /// Monic characteristic polynomial of a square rational matrix,
    /// via denominator clearing and integer Faddeev-LeVerrier.
    pub fn charpoly(&self) -> Vec<BigRational> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut denom = BigInt::one();
        for v in &self.data {
            denom = num_integer::Integer::lcm(&denom, v.denom());
        }
        let mut zm = ZMat::zero(n);
        for i in 0..n {
            for j in 0..n {
                let scaled = self.at(i, j) * BigRational::from_integer(denom.clone());
                debug_assert!(scaled.is_integer());
                zm.set(i, j, scaled.to_integer());
            }
        }
        let int_coeffs = zm.charpoly();
        // char(M) where M = Z/d: coeff_k(M) = coeff_k(Z) / d^(n-k)
        let mut out = Vec::with_capacity(n + 1);
        for (k, c) in int_coeffs.iter().enumerate() {
            let mut dpow = BigInt::one();
            for _ in 0..(n - k) {
                dpow = dpow * &denom;
            }
            out.push(BigRational::new(c.clone(), dpow));
        }
        out
    }
}

/// Evaluate a polynomial (ascending coefficients) at an integer matrix.
pub fn eval_poly_at_matrix(coeffs: &[BigInt], m: &ZMat) -> ZMat {
    let n = m.n;
    let mut acc = ZMat::zero(n);
    for c in coeffs.iter().rev() {
        acc = acc.mul(m);
        for i in 0..n {
            let v = acc.at(i, i) + c;
            acc.set(i, i, v);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn bareiss_det_small() {
        let m = ZMat::from_i64_rows(&[vec![2, 0], vec![0, 2]]);
        assert_eq!(m.det(), zi(4));
        let m = ZMat::from_i64_rows(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]);
        assert_eq!(m.det(), zi(-3));
        let m = ZMat::from_i64_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.det(), zi(-1));
        let singular = ZMat::from_i64_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.det(), zi(0));
    }

    #[test]
    fn charpoly_matches_det_and_trace() {
        let m = ZMat::from_i64_rows(&[vec![0, 3, 0], vec![1, 0, 2], vec![0, 3, 0]]);
        let cp = m.charpoly();
        // x^3 - 9x for the S3 transposition-block matrix
        assert_eq!(cp, vec![zi(0), zi(-9), zi(0), zi(1)]);
        // Cayley-Hamilton
        let z = eval_poly_at_matrix(&cp, &m);
        assert!(z.data.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn rational_solve_and_inverse() {
        use num_traits::FromPrimitive;
        let q = |v: i64| BigRational::from_i64(v).unwrap();
        let a = QMat::from_rows(vec![vec![q(2), q(1)], vec![q(1), q(3)]]);
        let x = a.solve(&[q(5), q(10)]).unwrap();
        assert_eq!(x, vec![q(1), q(3)]);
        let inv = a.inverse().unwrap();
        let prod = a.mul(&inv);
        assert_eq!(prod.at(0, 0), &q(1));
        assert_eq!(prod.at(0, 1), &q(0));
    }

    #[test]
    fn rational_charpoly_rescales() {
        use num_traits::FromPrimitive;
        let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        // M = [[1/2, 0], [0, 1/3]] -> (x-1/2)(x-1/3)
        let m = QMat::from_rows(vec![vec![q(1, 2), q(0, 1)], vec![q(0, 1), q(1, 3)]]);
        let cp = m.charpoly();
        assert_eq!(cp[2], BigRational::from_i64(1).unwrap());
        assert_eq!(cp[1], q(-5, 6));
        assert_eq!(cp[0], q(1, 6));
    }
}
