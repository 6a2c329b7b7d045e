//! Arithmetic over Z/p: polynomials, root finding via gcd with x^p - x,
//! dense matrices, and the iterative eigenspace splitting that
//! simultaneously diagonalizes the commuting regular-representation
//! matrices. p is always an odd prime chosen with p ≡ 1 (mod exp(G)) and
//! p > |G|, so the class algebra splits completely and stays semisimple
//! mod p.

use crate::arith::SplitMix64;
use crate::error::{Error, Result};

#[inline]
pub fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p { s - p } else { s }
}

#[inline]
pub fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b { a - b } else { a + p - b }
}

#[inline]
pub fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powm(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulm(acc, base, p);
        }
        base = mulm(base, base, p);
        exp >>= 1;
    }
    acc
}

pub fn invm(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "division by zero mod {}", p);
    powm(a, p - 2, p)
}

/// Reduce a signed integer.
pub fn redm(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

/// An element of multiplicative order exactly n in Z/p (requires n | p-1).
pub fn element_of_order(n: u64, p: u64) -> u64 {
    assert_eq!((p - 1) % n, 0);
    if n == 1 {
        return 1;
    }
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    'outer: for g in 2..p {
        for &f in &factors {
            if powm(g, (p - 1) / f, p) == 1 {
                continue 'outer;
            }
        }
        return powm(g, (p - 1) / n, p);
    }
    unreachable!("(Z/p)* is cyclic")
}

// ---------------------------------------------------------------------------
// polynomials over Z/p (dense, ascending coefficients)
// ---------------------------------------------------------------------------

pub fn poly_trim(f: &mut Vec<u64>) {
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
}

fn poly_is_zero(f: &[u64]) -> bool {
    f.iter().all(|&c| c == 0)
}

pub fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = addm(out[i + j], mulm(x, y, p), p);
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of a mod b, b nonzero.
pub fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = invm(b[db], p);
    while !poly_is_zero(&r) && r.len() - 1 >= db {
        let dr = r.len() - 1;
        let factor = mulm(r[dr], lead_inv, p);
        for k in 0..=db {
            let idx = dr - db + k;
            r[idx] = subm(r[idx], mulm(factor, b[k], p), p);
        }
        poly_trim(&mut r);
    }
    r
}

pub fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !poly_is_zero(&y) {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    let lead = *x.last().unwrap();
    if lead != 0 && lead != 1 {
        let inv = invm(lead, p);
        for c in &mut x {
            *c = mulm(*c, inv, p);
        }
    }
    x
}

/// base^exp mod f, where base is a polynomial.
pub fn poly_powmod(base: &[u64], mut exp: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, f, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &b, p), f, p);
        }
        b = poly_rem(&poly_mul(&b, &b, p), f, p);
        exp >>= 1;
    }
    acc
}

/// All roots of f in Z/p, multiplicity stripped, sorted ascending. Reduces
/// to the product of distinct linear factors gcd(f, x^p - x), then splits
/// by repeated randomized gcds with (x+a)^((p-1)/2) - 1.
pub fn poly_roots(f: &[u64], p: u64, seed: u64) -> Vec<u64> {
    let mut f = f.to_vec();
    poly_trim(&mut f);
    if f.len() <= 1 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    if f[0] == 0 {
        roots.push(0);
        while f[0] == 0 && f.len() > 1 {
            f.remove(0);
        }
    }
    if f.len() > 1 {
        let xp = poly_powmod(&[0, 1], p, &f, p);
        let mut xpx = xp;
        if xpx.len() < 2 {
            xpx.resize(2, 0);
        }
        xpx[1] = subm(xpx[1], 1, p);
        poly_trim(&mut xpx);
        let g = if poly_is_zero(&xpx) { f.clone() } else { poly_gcd(&f, &xpx, p) };
        let mut rng = SplitMix64::new(seed ^ p);
        split_linear(&g, p, &mut rng, &mut roots);
    }
    roots.sort_unstable();
    roots
}

fn split_linear(g: &[u64], p: u64, rng: &mut SplitMix64, out: &mut Vec<u64>) {
    let deg = g.len() - 1;
    if deg == 0 {
        return;
    }
    if deg == 1 {
        let c = g[0];
        let lead_inv = invm(g[1], p);
        out.push(subm(0, mulm(c, lead_inv, p), p));
        return;
    }
    loop {
        let a = rng.below(p);
        let shifted = [a, 1];
        let mut h = poly_powmod(&shifted, (p - 1) / 2, g, p);
        if h.is_empty() {
            h = vec![0];
        }
        h[0] = subm(h[0], 1, p);
        poly_trim(&mut h);
        if poly_is_zero(&h) {
            continue;
        }
        let d = poly_gcd(g, &h, p);
        let dd = d.len() - 1;
        if dd == 0 || dd == deg {
            continue;
        }
        let q = poly_div_exact(g, &d, p);
        split_linear(&d, p, rng, out);
        split_linear(&q, p, rng, out);
        return;
    }
}

fn poly_div_exact(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let mut q = vec![0u64; r.len().saturating_sub(db)];
    let lead_inv = invm(b[db], p);
    while !poly_is_zero(&r) && r.len() - 1 >= db {
        let dr = r.len() - 1;
        let factor = mulm(r[dr], lead_inv, p);
        q[dr - db] = factor;
        for k in 0..=db {
            let idx = dr - db + k;
            r[idx] = subm(r[idx], mulm(factor, b[k], p), p);
        }
        poly_trim(&mut r);
    }
    debug_assert!(poly_is_zero(&r), "division must be exact");
    poly_trim(&mut q);
    q
}

// ---------------------------------------------------------------------------
// matrices over Z/p
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatP {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl MatP {
    pub fn zero(rows: usize, cols: usize) -> Self {
        MatP { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, vals: impl Iterator<Item = i64>, p: u64) -> Self {
        let data: Vec<u64> = vals.map(|v| redm(v, p)).collect();
        assert_eq!(data.len(), rows * cols);
        MatP { rows, cols, data }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &MatP, p: u64) -> MatP {
        assert_eq!(self.cols, other.rows);
        let mut out = MatP::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = addm(out.at(i, j), mulm(a, other.at(k, j), p), p);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Row-vector times matrix.
    pub fn row_mul(&self, row: &[u64], p: u64) -> Vec<u64> {
        assert_eq!(row.len(), self.rows);
        let mut out = vec![0u64; self.cols];
        for (k, &a) in row.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for j in 0..self.cols {
                out[j] = addm(out[j], mulm(a, self.at(k, j), p), p);
            }
        }
        out
    }

    /// Monic characteristic polynomial by Faddeev-LeVerrier; needs p > n.
    pub fn charpoly(&self, p: u64) -> Vec<u64> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        assert!(p > n as u64);
        let mut coeffs = vec![0u64; n + 1];
        coeffs[n] = 1;
        if n == 0 {
            return coeffs;
        }
        let trace = |m: &MatP| -> u64 {
            let mut t = 0;
            for i in 0..n {
                t = addm(t, m.at(i, i), p);
            }
            t
        };
        let mut mk = self.clone();
        let mut ck = subm(0, trace(&mk), p);
        coeffs[n - 1] = ck;
        for k in 2..=n {
            let mut adj = mk;
            for i in 0..n {
                let v = addm(adj.at(i, i), ck, p);
                adj.set(i, i, v);
            }
            mk = self.mul(&adj, p);
            ck = mulm(subm(0, trace(&mk), p), invm(k as u64, p), p);
            coeffs[n - k] = ck;
        }
        coeffs
    }

    /// Basis of the (right) kernel as row vectors.
    pub fn kernel(&self, p: u64) -> Vec<Vec<u64>> {
        let rows = self.rows;
        let cols = self.cols;
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..cols {
            let mut piv = None;
            for i in r..rows {
                if m[i * cols + c] != 0 {
                    piv = Some(i);
                    break;
                }
            }
            let Some(pi) = piv else { continue };
            for j in 0..cols {
                m.swap(r * cols + j, pi * cols + j);
            }
            let inv = invm(m[r * cols + c], p);
            for j in c..cols {
                m[r * cols + j] = mulm(m[r * cols + j], inv, p);
            }
            for i in 0..rows {
                if i != r && m[i * cols + c] != 0 {
                    let f = m[i * cols + c];
                    for j in c..cols {
                        m[i * cols + j] = subm(m[i * cols + j], mulm(f, m[r * cols + j], p), p);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![0u64; cols];
            v[free] = 1;
            for (rank_row, &pc) in pivots.iter().enumerate() {
                v[pc] = subm(0, m[rank_row * cols + free], p);
            }
            basis.push(v);
        }
        basis
    }

    /// Solve M x = b for square invertible M; None when singular.
    pub fn solve(&self, b: &[u64], p: u64) -> Option<Vec<u64>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let width = n + 1;
        let mut aug = vec![0u64; n * width];
        for i in 0..n {
            for j in 0..n {
                aug[i * width + j] = self.at(i, j);
            }
            aug[i * width + n] = b[i];
        }
        for c in 0..n {
            let mut piv = None;
            for i in c..n {
                if aug[i * width + c] != 0 {
                    piv = Some(i);
                    break;
                }
            }
            let pi = piv?;
            for j in 0..width {
                aug.swap(c * width + j, pi * width + j);
            }
            let inv = invm(aug[c * width + c], p);
            for j in c..width {
                aug[c * width + j] = mulm(aug[c * width + j], inv, p);
            }
            for i in 0..n {
                if i != c && aug[i * width + c] != 0 {
                    let f = aug[i * width + c];
                    for j in c..width {
                        aug[i * width + j] =
                            subm(aug[i * width + j], mulm(f, aug[c * width + j], p), p);
                    }
                }
            }
        }
        Some((0..n).map(|i| aug[i * width + n]).collect())
    }
}

// ---------------------------------------------------------------------------
// row-space bases and simultaneous diagonalization
// ---------------------------------------------------------------------------

/// Reduced row echelon basis with pivot columns, representing a subspace
/// of row vectors.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    pub rows: Vec<Vec<u64>>,
    pub pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn full(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut v = vec![0u64; n];
                v[i] = 1;
                v
            })
            .collect();
        SubspaceBasis { rows, pivots: (0..n).collect() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn from_rows(mut rows: Vec<Vec<u64>>, p: u64) -> Self {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..cols {
            let mut piv = None;
            for i in r..rows.len() {
                if rows[i][c] != 0 {
                    piv = Some(i);
                    break;
                }
            }
            let Some(pi) = piv else { continue };
            rows.swap(r, pi);
            let inv = invm(rows[r][c], p);
            for j in c..cols {
                rows[r][j] = mulm(rows[r][j], inv, p);
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for j in c..cols {
                        rows[i][j] = subm(rows[i][j], mulm(f, rows[r][j], p), p);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        SubspaceBasis { rows, pivots }
    }

    /// Coordinates of v in this reduced basis; None when v lies outside
    /// the span.
    pub fn coords(&self, v: &[u64], p: u64) -> Option<Vec<u64>> {
        let coords: Vec<u64> = self.pivots.iter().map(|&c| v[c]).collect();
        let mut recon = vec![0u64; v.len()];
        for (k, row) in self.rows.iter().enumerate() {
            if coords[k] == 0 {
                continue;
            }
            for j in 0..v.len() {
                recon[j] = addm(recon[j], mulm(coords[k], row[j], p), p);
            }
        }
        if recon == v { Some(coords) } else { None }
    }
}

/// Simultaneously diagonalize a family of commuting matrices acting on row
/// vectors (v -> v M). Returns the common eigenvectors' eigenvalue tuples,
/// sorted and deduplicated: columns\[t]\[k] is the eigenvalue of matrix k on
/// the t-th common eigenvector. Fails when a subspace refuses to split.
pub fn simultaneous_eigencolumns(matrices: &[MatP], p: u64, seed: u64) -> Result<Vec<Vec<u64>>> {
    let n = matrices.first().map(|m| m.rows).unwrap_or(0);
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut spaces = vec![SubspaceBasis::full(n)];
    for (mi, m) in matrices.iter().enumerate() {
        if spaces.iter().all(|s| s.dim() == 1) {
            break;
        }
        let mut next = Vec::with_capacity(spaces.len());
        for space in spaces {
            if space.dim() == 1 {
                next.push(space);
                continue;
            }
            let k = space.dim();
            // restriction of the action to the subspace, in basis coords
            let mut c = MatP::zero(k, k);
            for (i, b) in space.rows.iter().enumerate() {
                let w = m.row_mul(b, p);
                let coords = space.coords(&w, p).ok_or_else(|| {
                    Error::Modular(format!(
                        "matrix {} does not preserve a common invariant subspace",
                        mi
                    ))
                })?;
                for (j, v) in coords.into_iter().enumerate() {
                    c.set(i, j, v);
                }
            }
            let cp = c.charpoly(p);
            let roots = poly_roots(&cp, p, seed ^ ((mi as u64) << 32) ^ k as u64);
            let mut total = 0usize;
            for &lambda in &roots {
                // rows x with x C = lambda x form the kernel of (C^T - lambda I)
                let mut shifted = MatP::zero(k, k);
                for i in 0..k {
                    for j in 0..k {
                        let v = c.at(j, i);
                        shifted.set(i, j, if i == j { subm(v, lambda, p) } else { v });
                    }
                }
                let kern = shifted.kernel(p);
                total += kern.len();
                if kern.is_empty() {
                    continue;
                }
                let lifted: Vec<Vec<u64>> = kern
                    .iter()
                    .map(|coords| {
                        let mut v = vec![0u64; n];
                        for (ci, &co) in coords.iter().enumerate() {
                            if co == 0 {
                                continue;
                            }
                            for j in 0..n {
                                v[j] = addm(v[j], mulm(co, space.rows[ci][j], p), p);
                            }
                        }
                        v
                    })
                    .collect();
                next.push(SubspaceBasis::from_rows(lifted, p));
            }
            if total != k {
                return Err(Error::Modular(format!(
                    "eigenspaces of matrix {} span {}/{} dimensions; algebra is \
                     not semisimple mod {}",
                    mi, total, k, p
                )));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.dim() != 1) {
        return Err(Error::Modular(
            "splitting stalled: a common subspace of dimension > 1 remains after \
             all matrices"
                .into(),
        ));
    }
    let mut columns = Vec::with_capacity(spaces.len());
    for space in &spaces {
        let v = &space.rows[0];
        let idx = v.iter().position(|&x| x != 0).expect("basis vector nonzero");
        let vinv = invm(v[idx], p);
        let mut col = Vec::with_capacity(matrices.len());
        for m in matrices {
            let w = m.row_mul(v, p);
            let lambda = mulm(w[idx], vinv, p);
            for j in 0..v.len() {
                if w[j] != mulm(lambda, v[j], p) {
                    return Err(Error::Modular(
                        "claimed eigenvector fails on a later matrix".into(),
                    ));
                }
            }
            col.push(lambda);
        }
        columns.push(col);
    }
    columns.sort();
    columns.dedup();
    Ok(columns)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_roots_small() {
        let p = 7;
        // x^2 - 1 = (x-1)(x+1)
        let f = vec![p - 1, 0, 1];
        assert_eq!(poly_roots(&f, p, 1), vec![1, 6]);
        // x^3 - 9x mod 7 = x(x-3)(x+3)
        let f = vec![0, redm(-9, p as u64), 0, 1];
        assert_eq!(poly_roots(&f, p, 1), vec![0, 3, 4]);
        // x^2 + 1 mod 7 has no roots
        let f = vec![1, 0, 1];
        assert!(poly_roots(&f, p, 1).is_empty());
    }

    #[test]
    fn poly_roots_larger_prime() {
        let p = 151;
        let mut f = vec![1u64];
        for &r in &[3u64, 17, 99, 17] {
            f = poly_mul(&f, &[subm(0, r, p), 1], p);
        }
        assert_eq!(poly_roots(&f, p, 9), vec![3, 17, 99]);
    }

    #[test]
    fn matp_charpoly_and_kernel() {
        let p = 7;
        let m = MatP::from_i64(3, 3, [0, 3, 0, 1, 0, 2, 0, 3, 0].into_iter(), p);
        let cp = m.charpoly(p);
        assert_eq!(cp, vec![0, redm(-9, p), 0, 1]);
        let mut shifted = m.clone();
        for i in 0..3 {
            shifted.set(i, i, subm(shifted.at(i, i), 3, p));
        }
        let k = shifted.kernel(p);
        assert_eq!(k.len(), 1);
    }

    #[test]
    fn element_orders() {
        let p = 73;
        let z = element_of_order(24, p);
        assert_eq!(powm(z, 24, p), 1);
        for d in 1..24u64 {
            if 24 % d == 0 {
                assert_ne!(powm(z, d, p), 1, "order divides {}", d);
            }
        }
    }

    #[test]
    fn simultaneous_diagonalization_of_commuting_family() {
        let p = 7;
        // S3 class-algebra matrices (blocks: e, transpositions, 3-cycles)
        let a1 = MatP::identity(3);
        let a2 = MatP::from_i64(3, 3, [0, 3, 0, 1, 0, 2, 0, 3, 0].into_iter(), p);
        let a3 = MatP::from_i64(3, 3, [0, 0, 2, 0, 2, 0, 1, 0, 1].into_iter(), p);
        let cols = simultaneous_eigencolumns(&[a1, a2, a3], p, 0).unwrap();
        assert_eq!(cols.len(), 3);
        let mut expected = vec![
            vec![1, 3, 2],
            vec![1, redm(-3, 7), 2],
            vec![1, 0, redm(-1, 7)],
        ];
        expected.sort();
        assert_eq!(cols, expected);
    }
}
