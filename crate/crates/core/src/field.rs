//! Prime fields F_p and dense matrices over them.
//!
//! Elements are stored as `u32` residues in `0..p`. All reductions are
//! deterministic: row echelon forms always pick the leftmost available pivot
//! and the topmost row carrying it.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field too small: p = {p} must exceed the algebra dimension {dim}")]
    FieldTooSmall { p: u32, dim: usize },
    #[error("element is not idempotent modulo the radical")]
    NotIdempotent,
    #[error("no primitive {n}-th root of unity in F_{p}")]
    NoRootOfUnity { p: u32, n: u32 },
    #[error("idempotent lifting did not converge")]
    LiftDiverged,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Self, LinalgError> {
        if p >= (1 << 31) || !is_prime(p as u64) {
            return Err(LinalgError::NotPrime(p as u64));
        }
        Ok(Fp { p })
    }

    /// Smallest prime `p >= 1009` with `p = 1 (mod exponent)`.
    pub fn default_for_exponent(exponent: u32) -> Self {
        let e = exponent.max(1) as u64;
        let mut p = 1009u64;
        loop {
            if p % e == 1 % e && is_prime(p) {
                return Fp { p: p as u32 };
            }
            p += 1;
        }
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Representative in `(-p/2, p/2]`, used for printing.
    pub fn signed(self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + self.p as u64 - b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// `acc + a*b`
    #[inline]
    pub fn mul_add(self, acc: u32, a: u32, b: u32) -> u32 {
        ((acc as u64 + a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1u32 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    pub fn div(self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(self, a: u32) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least primitive `n`-th root of unity under integer order.
    pub fn primitive_root_of_unity(self, n: u32) -> Result<u32, LinalgError> {
        if n == 1 {
            return Ok(1);
        }
        if !(self.p - 1).is_multiple_of(n) {
            return Err(LinalgError::NoRootOfUnity { p: self.p, n });
        }
        (2..self.p)
            .find(|&z| self.pow(z, n as u64) == 1 && self.order(z) == n)
            .ok_or(LinalgError::NoRootOfUnity { p: self.p, n })
    }

    /// Smallest `x` with `x^n = a`, by exhaustive search.
    pub fn nth_root(self, a: u32, n: u32) -> Option<u32> {
        (0..self.p).find(|&x| self.pow(x, n as u64) == a)
    }
}

pub fn dot(f: Fp, a: &[u32], b: &[u32]) -> u32 {
    let mut acc = 0u64;
    for (x, y) in a.iter().zip(b) {
        acc = (acc + *x as u64 * *y as u64) % f.p as u64;
    }
    acc as u32
}

/// `y += c * x`
pub fn axpy(f: Fp, y: &mut [u32], c: u32, x: &[u32]) {
    if c == 0 {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if *xi != 0 {
            *yi = f.mul_add(*yi, c, *xi);
        }
    }
}

pub fn scale_vec(f: Fp, v: &mut [u32], c: u32) {
    for x in v.iter_mut() {
        *x = f.mul(*x, c);
    }
}

pub fn is_zero_vec(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// Dense row-major matrix over F_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    f: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(f: Fp, rows: usize, cols: usize) -> Self {
        Matrix {
            f,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(f: Fp, n: usize) -> Self {
        let mut m = Matrix::zeros(f, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_vec(f: Fp, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        let p = f.p;
        Matrix {
            f,
            rows,
            cols,
            data: data.into_iter().map(|x| x % p).collect(),
        }
    }

    /// Build from signed integer rows; `cols` is needed when there are no rows.
    pub fn from_i64_rows(f: Fp, rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Matrix::zeros(f, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            for (j, &v) in r.iter().enumerate() {
                m.data[i * cols + j] = f.reduce(v);
            }
        }
        m
    }

    pub fn from_rows(f: Fp, rows: &[Vec<u32>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r.iter().map(|x| x % f.p));
        }
        Matrix {
            f,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_columns(f: Fp, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Matrix::zeros(f, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, &v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v % f.p;
            }
        }
        m
    }

    pub fn field(&self) -> Fp {
        self.f
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.f.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn signed_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&x| self.f.signed(x)).collect())
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.f, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<(), LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.check_same_shape(other).expect("matrix add");
        let f = self.f;
        Matrix {
            f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f.add(*a, *b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.check_same_shape(other).expect("matrix sub");
        let f = self.f;
        Matrix {
            f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f.sub(*a, *b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let f = self.f;
        Matrix {
            f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(*a, c)).collect(),
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: u32, other: &Matrix) {
        self.check_same_shape(other).expect("matrix add_scaled");
        axpy(self.f, &mut self.data, c, &other.data);
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.f;
        let p = f.p as u64;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                for (j, &b) in orow.iter().enumerate() {
                    acc[j] = (acc[j] + a * b as u64) % p;
                }
            }
            for (o, &x) in out.data[i * other.cols..(i + 1) * other.cols]
                .iter_mut()
                .zip(&acc)
            {
                *o = x as u32;
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.try_mul(other).expect("matrix product")
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "matrix-vector length");
        (0..self.rows)
            .map(|i| dot(self.f, self.row(i), v))
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.f, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack rows");
        let mut m = Matrix::zeros(self.f, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[i * m.cols + j] = self.get(i, j);
            }
            for j in 0..other.cols {
                m.data[i * m.cols + self.cols + j] = other.get(i, j);
            }
        }
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack cols");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            f: self.f,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diag(f: Fp, blocks: &[Matrix]) -> Matrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(f, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn submatrix(&self, r0: usize, nr: usize, c0: usize, nc: usize) -> Matrix {
        let mut m = Matrix::zeros(self.f, nr, nc);
        for i in 0..nr {
            for j in 0..nc {
                m.data[i * nc + j] = self.get(r0 + i, c0 + j);
            }
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = b.get(i, j);
            }
        }
    }

    /// Rows picked by index, in the given order.
    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let rows: Vec<Vec<u32>> = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        Matrix::from_rows(self.f, &rows, self.cols)
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.f, self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                m.data[i * idx.len() + k] = self.get(i, j);
            }
        }
        m
    }

    pub fn rref(&self) -> Rref {
        let f = self.f;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            for j in c..m.cols {
                let v = m.get(r, j);
                m.data[r * m.cols + j] = f.mul(v, inv);
            }
            let prow: Vec<u32> = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor != 0 {
                    let start = i * m.cols;
                    axpy(f, &mut m.data[start..start + m.cols], f.neg(factor), &prow);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column, with a 1 in that column.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let f = self.f;
        let Rref { matrix, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(matrix.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `A X = B`. Free variables are set to zero.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>, LinalgError> {
        if self.rows != b.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "solve: A has {} rows, B has {}",
                self.rows, b.rows
            )));
        }
        let aug = self.hstack(b);
        let Rref { matrix, pivots } = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.f, self.cols, b.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.data[pc * b.cols + j] = matrix.get(r, self.cols + j);
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let Rref { matrix, pivots } = self.hstack(&Matrix::identity(self.f, n)).rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return None;
        }
        Some(matrix.submatrix(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// `det(t I - A)`
    pub fn charpoly_at(&self, t: u32) -> u32 {
        let n = self.rows;
        let f = self.f;
        let mut m = self.scale(f.neg(1));
        for i in 0..n {
            let v = m.get(i, i);
            m.set(i, i, f.add(v, t));
        }
        m.det()
    }

    /// Coefficients of `det(x I - A)`, lowest degree first, via Hessenberg reduction.
    pub fn charpoly(&self) -> Vec<u32> {
        assert!(self.is_square());
        let f = self.f;
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(r) = (j + 1..n).find(|&i| h.get(i, j) != 0) else {
                continue;
            };
            if r != j + 1 {
                for c in 0..n {
                    h.data.swap(r * n + c, (j + 1) * n + c);
                }
                for i in 0..n {
                    h.data.swap(i * n + r, i * n + j + 1);
                }
            }
            let inv = f.inv(h.get(j + 1, j));
            for i in j + 2..n {
                let u = f.mul(h.get(i, j), inv);
                if u == 0 {
                    continue;
                }
                for c in 0..n {
                    let v = f.sub(h.get(i, c), f.mul(u, h.get(j + 1, c)));
                    h.set(i, c, v);
                }
                for k in 0..n {
                    let v = f.add(h.get(k, j + 1), f.mul(u, h.get(k, i)));
                    h.set(k, j + 1, v);
                }
            }
        }
        let mut polys: Vec<Vec<u32>> = vec![vec![1]];
        for m in 1..=n {
            let prev = &polys[m - 1];
            let mut next = vec![0u32; m + 1];
            for (k, &c) in prev.iter().enumerate() {
                next[k + 1] = f.add(next[k + 1], c);
                next[k] = f.sub(next[k], f.mul(h.get(m - 1, m - 1), c));
            }
            let mut t = 1u32;
            for i in (1..m).rev() {
                t = f.mul(t, h.get(i, i - 1));
                let c = f.mul(h.get(i - 1, m - 1), t);
                if c != 0 {
                    for (k, &x) in polys[i - 1].iter().enumerate() {
                        next[k] = f.sub(next[k], f.mul(c, x));
                    }
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }

    /// Distinct roots in F_p of the characteristic polynomial, ascending.
    pub fn eigenvalues(&self) -> Vec<u32> {
        let f = self.f;
        let cp = self.charpoly();
        (0..f.p())
            .filter(|&t| cp.iter().rev().fold(0u32, |acc, &c| f.mul_add(c, acc, t)) == 0)
            .collect()
    }

    pub fn det(&self) -> u32 {
        assert!(self.is_square());
        let f = self.f;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1u32;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return 0;
            };
            if pr != c {
                for j in 0..n {
                    m.data.swap(pr * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let piv = m.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv);
            let prow: Vec<u32> = m.row(c).to_vec();
            for i in c + 1..n {
                let factor = m.get(i, c);
                if factor != 0 {
                    let k = f.neg(f.mul(factor, inv));
                    let start = i * n;
                    axpy(f, &mut m.data[start..start + n], k, &prow);
                }
            }
        }
        det
    }

    /// Basis of the column space, as the pivot columns of `self`.
    pub fn column_space(&self) -> Vec<Vec<u32>> {
        let pivots = self.rref().pivots;
        pivots.iter().map(|&c| self.column(c)).collect()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows.max(1) as u64).is_zero()
    }
}

/// A subspace of F_p^n kept in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    f: Fp,
    n: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(f: Fp, n: usize) -> Self {
        Subspace {
            f,
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors<'a>(f: Fp, n: usize, vs: impl IntoIterator<Item = &'a Vec<u32>>) -> Self {
        let mut s = Subspace::new(f, n);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn field(&self) -> Fp {
        self.f
    }
    pub fn ambient_dim(&self) -> usize {
        self.n
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after eliminating the pivot coordinates.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.f;
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = w[pc];
            if c != 0 {
                axpy(f, &mut w, f.neg(c), row);
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Insert `v`; returns true if the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.n, "subspace ambient dimension");
        let f = self.f;
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[pc]);
        scale_vec(f, &mut w, inv);
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                axpy(f, row, f.neg(c), &w);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(pos, pc);
        self.rows.insert(pos, w);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r);
        }
        s
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // x = Σ a_i u_i = Σ b_j w_j  <=>  [U^T | -W^T] (a,b) = 0
        let f = self.f;
        let mut cols: Vec<Vec<u32>> = self.rows.clone();
        for w in &other.rows {
            cols.push(w.iter().map(|&x| f.neg(x)).collect());
        }
        let m = Matrix::from_columns(f, self.n, &cols);
        let mut out = Subspace::new(f, self.n);
        for sol in m.nullspace() {
            let mut x = vec![0u32; self.n];
            for (i, u) in self.rows.iter().enumerate() {
                axpy(f, &mut x, sol[i], u);
            }
            out.insert(&x);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f101() -> Fp {
        Fp::new(101).unwrap()
    }

    proptest! {
        #[test]
        fn charpoly_matches_determinant(entries in proptest::collection::vec(0u32..101, 25), t in 0u32..101) {
            let a = Matrix::from_vec(f101(), 5, 5, entries);
            let cp = a.charpoly();
            let f = f101();
            let val = cp.iter().rev().fold(0u32, |acc, &c| f.mul_add(c, acc, t));
            prop_assert_eq!(cp.len(), 6);
            prop_assert_eq!(cp[5], 1);
            prop_assert_eq!(val, a.charpoly_at(t));
        }
    }

    #[test]
    fn empty_matrix_is_invertible() {
        let e = Matrix::identity(f101(), 0);
        assert_eq!(e.inverse(), Some(e.clone()));
        assert!(e.is_invertible());
    }

    #[test]
    fn eigenvalues_of_diagonal() {
        let a = Matrix::from_i64_rows(f101(), &[vec![3, 1, 0], vec![0, 3, 0], vec![0, 0, 7]], 3);
        assert_eq!(a.eigenvalues(), vec![3, 7]);
    }

    #[test]
    fn default_prime_is_1009_for_small_exponents() {
        assert_eq!(Fp::default_for_exponent(1).p(), 1009);
        assert_eq!(Fp::default_for_exponent(2).p(), 1009);
        assert_eq!(Fp::default_for_exponent(3).p(), 1009);
        assert_eq!(Fp::default_for_exponent(5).p(), 1021);
    }

    #[test]
    fn rejects_composites() {
        assert!(Fp::new(1000).is_err());
        assert!(Fp::new(1).is_err());
    }

    #[test]
    fn roots_of_unity() {
        let f = Fp::new(1009).unwrap();
        assert_eq!(f.primitive_root_of_unity(2).unwrap(), 1008);
        let z = f.primitive_root_of_unity(3).unwrap();
        assert_eq!(f.pow(z, 3), 1);
        assert_ne!(z, 1);
        assert!((2..z).all(|x| f.pow(x, 3) != 1));
        assert!(Fp::new(7).unwrap().primitive_root_of_unity(4).is_err());
    }

    #[test]
    fn solve_identity() {
        let f = f101();
        let i2 = Matrix::identity(f, 2);
        assert_eq!(i2.solve(&i2).unwrap().unwrap(), i2);
    }

    #[test]
    fn solve_inconsistent() {
        let f = Fp::new(5).unwrap();
        let a = Matrix::from_i64_rows(f, &[vec![1, 1], vec![0, 0]], 2);
        let b = Matrix::from_i64_rows(f, &[vec![2], vec![1]], 1);
        assert!(a.solve(&b).unwrap().is_none());
    }

    #[test]
    fn solve_dimension_mismatch() {
        let f = f101();
        let a = Matrix::identity(f, 2);
        let b = Matrix::zeros(f, 3, 1);
        assert!(matches!(
            a.solve(&b),
            Err(LinalgError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn nullspace_examples() {
        let f = Fp::new(7).unwrap();
        assert!(Matrix::identity(f, 3).nullspace().is_empty());
        assert_eq!(Matrix::zeros(f, 2, 3).nullspace().len(), 3);
        let a = Matrix::from_i64_rows(f, &[vec![1, 2, 3]], 3);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert_eq!(a.apply(&v), vec![0]);
        }
    }

    #[test]
    fn determinant_and_inverse() {
        let f = f101();
        let a = Matrix::from_i64_rows(f, &[vec![2, 1], vec![1, 1]], 2);
        assert_eq!(a.det(), 1);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(f, 2));
        let s = Matrix::from_i64_rows(f, &[vec![1, 2], vec![2, 4]], 2);
        assert!(s.inverse().is_none());
        assert_eq!(s.det(), 0);
    }

    #[test]
    fn subspace_intersection() {
        let f = f101();
        let a = Subspace::from_vectors(f, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let b = Subspace::from_vectors(f, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        let c = a.intersection(&b);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&[0, 5, 0]));
        assert_eq!(a.sum(&b).dim(), 3);
    }

    fn arb_matrix(n: usize, m: usize) -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::vec(0u32..101, n * m)
    }

    proptest! {
        #[test]
        fn solve_recovers_solution(a in arb_matrix(6, 6), x0 in arb_matrix(6, 2)) {
            let f = f101();
            let a = Matrix::from_vec(f, 6, 6, a);
            let x0 = Matrix::from_vec(f, 6, 2, x0);
            let b = a.mul(&x0);
            let x = a.solve(&b).unwrap().expect("consistent by construction");
            prop_assert_eq!(a.mul(&x), b);
            if a.is_invertible() {
                prop_assert_eq!(x, x0);
            }
        }

        #[test]
        fn nullspace_is_kernel(a in arb_matrix(3, 5)) {
            let f = f101();
            let a = Matrix::from_vec(f, 3, 5, a);
            let ns = a.nullspace();
            prop_assert_eq!(ns.len(), 5 - a.rank());
            for v in &ns {
                prop_assert!(is_zero_vec(&a.apply(v)));
            }
        }

        #[test]
        fn inverse_roundtrip(a in arb_matrix(4, 4)) {
            let f = f101();
            let a = Matrix::from_vec(f, 4, 4, a);
            match a.inverse() {
                Some(inv) => prop_assert_eq!(inv.mul(&a), Matrix::identity(f, 4)),
                None => prop_assert_eq!(a.det(), 0),
            }
        }
    }
}
