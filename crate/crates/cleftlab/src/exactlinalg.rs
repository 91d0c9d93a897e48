//! Exact dense linear algebra over a prime field 𝔽_p.
//!
//! This is the computational substrate for every other module: matrices with
//! entries reduced modulo a prime `p`, canonical reduced row-echelon forms,
//! kernels, column spaces, and Kronecker products. All values are immutable
//! after construction and all operations are pure functions, so everything
//! here is safe to share across threads.
//!
//! Subspaces of 𝔽_p^n are stored as RREF basis matrices, which makes subspace
//! equality a syntactic (entry-wise) comparison.

use crate::error::{Error, Result};

/// The prime field 𝔽_p. A session works over a single field; the default
/// modulus used by the CLI is 101, which exceeds the dimension of every
/// curated algebra (a requirement of the radical algorithm).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp {
    p: u64,
}

impl Fp {
    /// Construct the field, checking that `p` is prime.
    pub fn new(p: u64) -> Result<Fp> {
        if p < 2 {
            return Err(Error::InputError(format!("{p} is not a prime")));
        }
        let mut d = 2u64;
        while d.saturating_mul(d) <= p {
            if p % d == 0 {
                return Err(Error::InputError(format!("{p} is not a prime")));
            }
            d += 1;
        }
        Ok(Fp { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Reduce a signed integer into the residue range `[0, p)`.
    pub fn reduce_i64(&self, x: i64) -> u64 {
        let p = self.p as i64;
        (((x % p) + p) % p) as u64
    }

    pub fn reduce(&self, x: u64) -> u64 {
        x % self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat's little theorem (`p` is prime).
    /// Panics on zero, which is always a logic error at a call site.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "attempted to invert 0 in F_{}", self.p);
        self.pow(a, self.p - 2)
    }
}

/// A dense row-major matrix over 𝔽_p. Desk-scale dimensions (≤ ~200) keep
/// plain Gaussian elimination trivially fast, so there is no sparse format.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    field: Fp,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl Matrix {
    pub fn zero(field: Fp, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(field: Fp, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from row slices of signed integers, reducing every entry mod p.
    pub fn from_rows_i64(field: Fp, rows: &[Vec<i64>]) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InputError("ragged matrix rows".into()));
        }
        let entries = rows.iter().flatten().map(|&x| field.reduce_i64(x)).collect();
        Ok(Matrix { field, rows: r, cols: c, entries })
    }

    pub fn from_fn(field: Fp, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Matrix {
        let mut m = Matrix::zero(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// A column vector (n×1) from a coefficient slice.
    pub fn column(field: Fp, v: &[u64]) -> Matrix {
        Matrix { field, rows: v.len(), cols: 1, entries: v.iter().map(|&x| field.reduce(x)).collect() }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.cols + j] = self.field.reduce(v);
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col_vec(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u64::from(i == j)))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix addition shape mismatch");
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| self.field.add(a, b)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix subtraction shape mismatch");
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| self.field.sub(a, b)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, entries }
    }

    pub fn neg(&self) -> Matrix {
        let entries = self.entries.iter().map(|&a| self.field.neg(a)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, entries }
    }

    pub fn scale(&self, c: u64) -> Matrix {
        let entries = self.entries.iter().map(|&a| self.field.mul(a, c)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, entries }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix multiplication shape mismatch");
        let f = self.field;
        let mut out = Matrix::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Apply to a column vector given as a slice; returns the image vector.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0;
                for j in 0..self.cols {
                    acc = f.add(acc, f.mul(self.get(i, j), v[j]));
                }
                acc
            })
            .collect()
    }

    /// Kronecker product, block order a-index major: `(a⊗b)[(ia,ib),(ja,jb)]
    /// = a[ia,ja]·b[ib,jb]` with row index `ia·rows(b)+ib`. On column vectors
    /// this realizes the tensor-basis order "left factor index major" used by
    /// every tensor construction in the crate.
    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        let mut out = Matrix::zero(f, self.rows * other.rows, self.cols * other.cols);
        for ia in 0..self.rows {
            for ja in 0..self.cols {
                let a = self.get(ia, ja);
                if a == 0 {
                    continue;
                }
                for ib in 0..other.rows {
                    for jb in 0..other.cols {
                        out.set(ia * other.rows + ib, ja * other.cols + jb, f.mul(a, other.get(ib, jb)));
                    }
                }
            }
        }
        out
    }

    /// Stack vertically: `[self; other]`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, entries }
    }

    /// Stack horizontally: `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = Matrix::zero(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    /// Canonical reduced row-echelon form: `(rref, rank, pivot columns)`.
    /// The RREF is unique, so two matrices have the same row space iff their
    /// RREFs (with zero rows stripped) are entry-equal.
    pub fn rref(&self) -> (Matrix, usize, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // Find a pivot in column c at or below row r.
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            // Swap into place and normalize the pivot to 1.
            for j in 0..m.cols {
                let (a, b) = (m.get(r, j), m.get(pr, j));
                m.set(r, j, b);
                m.set(pr, j, a);
            }
            let piv_inv = f.inv(m.get(r, c));
            for j in 0..m.cols {
                m.set(r, j, f.mul(m.get(r, j), piv_inv));
            }
            // Eliminate the column everywhere else.
            for i in 0..m.rows {
                if i == r || m.get(i, c) == 0 {
                    continue;
                }
                let factor = m.get(i, c);
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, r, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Basis of `{v : self·v = 0}` as a canonical subspace of 𝔽_p^cols.
    pub fn kernel_basis(&self) -> Subspace {
        let (rref, rank, pivots) = self.rref();
        let f = self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zero(f, free.len(), self.cols);
        for (bi, &fc) in free.iter().enumerate() {
            basis.set(bi, fc, 1);
            for r in 0..rank {
                let v = rref.get(r, fc);
                if v != 0 {
                    basis.set(bi, pivots[r], f.neg(v));
                }
            }
        }
        Subspace::from_rows(&basis)
    }

    /// Column space as a canonical subspace of 𝔽_p^rows (vectors are stored
    /// as rows of the basis matrix).
    pub fn column_space(&self) -> Subspace {
        Subspace::from_rows(&self.transpose())
    }

    /// Solve `self · X = rhs` for any one solution, or `None` if inconsistent.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows, "solve shape mismatch");
        let aug = self.hstack(rhs);
        let (r, _, pivots) = aug.rref();
        // Inconsistent iff some pivot lands in the rhs block.
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zero(self.field, self.cols, rhs.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, r.get(row, self.cols + j));
            }
        }
        Some(x)
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let aug = self.hstack(&Matrix::identity(self.field, self.rows));
        let (r, _, pivots) = aug.rref();
        // Invertible iff every pivot lands in the left block, in order.
        if pivots.len() != self.rows || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        Some(Matrix::from_fn(self.field, self.rows, self.cols, |i, j| r.get(i, self.cols + j)))
    }

    /// Column-major vectorization, the convention under which
    /// `vec(A·X·B) = (Bᵀ ⊗ A)·vec(X)` holds with this crate's `kronecker`.
    pub fn vec_cm(&self) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                v.push(self.get(i, j));
            }
        }
        v
    }

    /// Inverse of [`Matrix::vec_cm`].
    pub fn unvec_cm(field: Fp, v: &[u64], rows: usize, cols: usize) -> Matrix {
        assert_eq!(v.len(), rows * cols, "unvec length mismatch");
        Matrix::from_fn(field, rows, cols, |i, j| v[j * rows + i])
    }
}

/// A subspace of 𝔽_p^n, canonically represented: the basis matrix rows are a
/// basis in reduced row-echelon form, so `S == T` iff the representations are
/// entry-equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Fp, ambient_dim: usize) -> Subspace {
        Subspace { ambient_dim, basis: Matrix::zero(field, 0, ambient_dim), pivots: Vec::new() }
    }

    pub fn full(field: Fp, ambient_dim: usize) -> Subspace {
        Subspace::from_rows(&Matrix::identity(field, ambient_dim))
    }

    /// Span of the rows of `m`, canonicalized by RREF with zero rows dropped.
    pub fn from_rows(m: &Matrix) -> Subspace {
        let (r, rank, pivots) = m.rref();
        let mut basis = Matrix::zero(m.field(), rank, m.cols());
        for i in 0..rank {
            for j in 0..m.cols() {
                basis.set(i, j, r.get(i, j));
            }
        }
        Subspace { ambient_dim: m.cols(), basis, pivots }
    }

    /// Span of a set of vectors given as slices.
    pub fn from_vectors(field: Fp, ambient_dim: usize, vectors: &[Vec<u64>]) -> Subspace {
        let mut m = Matrix::zero(field, vectors.len(), ambient_dim);
        for (i, v) in vectors.iter().enumerate() {
            assert_eq!(v.len(), ambient_dim, "vector length mismatch");
            for (j, &x) in v.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Subspace::from_rows(&m)
    }

    pub fn field(&self) -> Fp {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// The canonical RREF basis; rows are the basis vectors.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as columns (ambient_dim × dim), convenient as an
    /// inclusion matrix for column-vector conventions.
    pub fn basis_columns(&self) -> Matrix {
        self.basis.transpose()
    }

    /// Reduce `v` modulo the subspace: the result is zero iff `v` lies in it,
    /// and is supported on non-pivot coordinates otherwise.
    pub fn reduce_vector(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.ambient_dim, "reduce_vector length mismatch");
        let f = self.field();
        let mut w = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let c = w[pc];
            if c != 0 {
                for j in 0..self.ambient_dim {
                    w[j] = f.sub(w[j], f.mul(c, self.basis.get(r, j)));
                }
            }
        }
        w
    }

    pub fn contains_vector(&self, v: &[u64]) -> bool {
        self.reduce_vector(v).iter().all(|&x| x == 0)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient dimension mismatch");
        (0..other.dim()).all(|i| self.contains_vector(other.basis.row(i)))
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` is outside.
    /// For an RREF basis the coordinates are exactly the entries of `v` at
    /// the pivot columns.
    pub fn coords(&self, v: &[u64]) -> Option<Vec<u64>> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c]).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient dimension mismatch");
        Subspace::from_rows(&self.basis.vstack(&other.basis))
    }
}
