//! Dense exact matrices and canonical subspaces over GF(p).
//!
//! Subspaces are always stored through their reduced-row-echelon basis with
//! zero rows removed, so subspace equality is plain grid comparison.  That
//! canonical form is what lets the closure computations elsewhere in the
//! crate detect fixed points syntactically.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Modulus, Scalar};

/// A coordinate vector over GF(p).
pub type Vector = Vec<Scalar>;

pub fn zero_vector(modulus: Modulus, len: usize) -> Vector {
    vec![modulus.zero(); len]
}

pub fn vector_from_values(modulus: Modulus, values: &[u64]) -> Vector {
    values.iter().map(|&v| modulus.scalar(v)).collect()
}

pub fn add_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

pub fn scale_vector(c: Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|&x| c * x).collect()
}

pub fn vector_is_zero(v: &[Scalar]) -> bool {
    v.iter().all(|s| s.is_zero())
}

pub fn standard_basis(modulus: Modulus, n: usize) -> Vec<Vector> {
    (0..n)
        .map(|i| {
            let mut v = zero_vector(modulus, n);
            v[i] = modulus.one();
            v
        })
        .collect()
}

/// A dense rows x cols matrix over GF(p), stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
    modulus: Modulus,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, modulus: Modulus) -> Self {
        Matrix { rows, cols, entries: vec![modulus.zero(); rows * cols], modulus }
    }

    pub fn identity(n: usize, modulus: Modulus) -> Self {
        let mut m = Matrix::zero(n, n, modulus);
        for i in 0..n {
            m.set(i, i, modulus.one());
        }
        m
    }

    /// The matrix unit with a single 1 at (r, c).
    pub fn unit(rows: usize, cols: usize, r: usize, c: usize, modulus: Modulus) -> Self {
        let mut m = Matrix::zero(rows, cols, modulus);
        m.set(r, c, modulus.one());
        m
    }

    pub fn from_rows(row_vecs: Vec<Vector>, cols: usize, modulus: Modulus) -> Self {
        let rows = row_vecs.len();
        let mut entries = Vec::with_capacity(rows * cols);
        for r in &row_vecs {
            assert_eq!(r.len(), cols, "row length mismatch");
            entries.extend_from_slice(r);
        }
        Matrix { rows, cols, entries, modulus }
    }

    /// Builds from integer values, reducing each entry mod p.
    pub fn from_values(rows: usize, cols: usize, values: &[u64], modulus: Modulus) -> Self {
        assert_eq!(values.len(), rows * cols, "value count mismatch");
        Matrix { rows, cols, entries: values.iter().map(|&v| modulus.scalar(v)).collect(), modulus }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn at(&self, r: usize, c: usize) -> Scalar {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, s: Scalar) {
        assert_eq!(s.modulus(), self.modulus, "field modulus mismatch");
        self.entries[r * self.cols + c] = s;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|s| s.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.cols, self.rows, self.modulus);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.at(r, c));
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, entries, modulus: self.modulus }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, entries, modulus: self.modulus }
    }

    pub fn scale(&self, c: Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&a| c * a).collect(),
            modulus: self.modulus,
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Matrix::zero(self.rows, other.cols, self.modulus);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    out.set(r, c, out.at(r, c) + a * other.at(k, c));
                }
            }
        }
        out
    }

    /// Applies the matrix to a column vector.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(self.modulus.zero(), |acc, (&a, &x)| acc + a * x)
            })
            .collect()
    }

    /// Row-major flattening into a vector of length rows*cols.
    pub fn vectorize(&self) -> Vector {
        self.entries.clone()
    }

    pub fn from_vectorized(rows: usize, cols: usize, v: Vector, modulus: Modulus) -> Matrix {
        assert_eq!(v.len(), rows * cols, "value count mismatch");
        Matrix { rows, cols, entries: v, modulus }
    }

    /// Embeds into a larger shape, filling new entries with zeros.
    pub fn padded(&self, rows: usize, cols: usize) -> Matrix {
        assert!(rows >= self.rows && cols >= self.cols, "padding cannot shrink");
        let mut out = Matrix::zero(rows, cols, self.modulus);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.at(r, c));
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, f: Scalar) {
        for c in 0..self.cols {
            let v = self.at(r, c);
            self.set(r, c, v * f);
        }
    }

    /// row[dst] += f * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, f: Scalar) {
        for c in 0..self.cols {
            let v = self.at(dst, c) + f * self.at(src, c);
            self.set(dst, c, v);
        }
    }

    /// Gauss-Jordan elimination with full transform tracking.
    ///
    /// Returns `(R, T, pivots)` with `T` nonsingular, `T * self = R`, `R` in
    /// reduced row echelon form and pivot columns strictly increasing.
    /// Pivot choice is deterministic: the first nonzero entry scanning down.
    pub fn row_echelon(&self) -> RowEchelon {
        let mut reduced = self.clone();
        let mut transform = Matrix::identity(self.rows, self.modulus);
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(src) = (pivot_row..self.rows).find(|&r| !reduced.at(r, col).is_zero()) else {
                continue;
            };
            reduced.swap_rows(pivot_row, src);
            transform.swap_rows(pivot_row, src);
            let inv = reduced.at(pivot_row, col).inv().expect("pivot is nonzero");
            reduced.scale_row(pivot_row, inv);
            transform.scale_row(pivot_row, inv);
            for r in 0..self.rows {
                if r != pivot_row {
                    let f = reduced.at(r, col);
                    if !f.is_zero() {
                        reduced.row_axpy(r, pivot_row, -f);
                        transform.row_axpy(r, pivot_row, -f);
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        RowEchelon { reduced, transform, pivots }
    }

    pub fn rank(&self) -> usize {
        self.row_echelon().pivots.len()
    }

    /// Canonical basis of the right kernel, as a subspace of the domain.
    pub fn kernel_basis(&self) -> Subspace {
        let ech = self.row_echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let mut rows = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = zero_vector(self.modulus, self.cols);
            v[free] = self.modulus.one();
            for (i, &p) in ech.pivots.iter().enumerate() {
                v[p] = -ech.reduced.at(i, free);
            }
            rows.push(v);
        }
        Subspace::from_vectors(self.cols, self.modulus, &rows)
    }

    /// Canonical basis of the column space, as a subspace of the codomain.
    pub fn image_basis(&self) -> Subspace {
        Subspace::from_spanning_rows(self.transpose())
    }
}

impl fmt::Display for Matrix {
    /// Rows of space-separated canonical representatives, one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// The result of Gauss-Jordan elimination.
#[derive(Debug, Clone)]
pub struct RowEchelon {
    pub reduced: Matrix,
    pub transform: Matrix,
    pub pivots: Vec<usize>,
}

/// Solves `A x = b`, returning the particular solution with all free
/// variables set to zero.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Result<Vector> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let ech = a.row_echelon();
    let c = ech.transform.mul_vec(b);
    if c[ech.pivots.len()..].iter().any(|s| !s.is_zero()) {
        return Err(Error::NoSolution);
    }
    let mut x = zero_vector(a.modulus(), a.cols());
    for (i, &p) in ech.pivots.iter().enumerate() {
        x[p] = c[i];
    }
    Ok(x)
}

/// Coordinates of `target` in the span of `basis`, found by solving the
/// vectorized linear system.  All matrices must share the target's shape.
pub fn matrix_span_coordinates(basis: &[Matrix], target: &Matrix) -> Result<Vector> {
    let rows = target.rows() * target.cols();
    let modulus = target.modulus();
    let mut sys = Matrix::zero(rows, basis.len(), modulus);
    for (j, b) in basis.iter().enumerate() {
        assert_eq!((b.rows(), b.cols()), (target.rows(), target.cols()), "shape mismatch");
        for (i, s) in b.vectorize().into_iter().enumerate() {
            sys.set(i, j, s);
        }
    }
    solve(&sys, &target.vectorize())
}

/// A subspace of F^n held as a canonical RREF basis with no zero rows.
///
/// Two `Subspace` values are equal exactly when they denote the same
/// subspace, because the stored basis is canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient: usize, modulus: Modulus) -> Self {
        Subspace { ambient, basis: Matrix::zero(0, ambient, modulus) }
    }

    pub fn full(ambient: usize, modulus: Modulus) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient, modulus) }
    }

    /// Canonicalizes an arbitrary spanning set given as matrix rows.
    pub fn from_spanning_rows(m: Matrix) -> Self {
        let ambient = m.cols();
        let modulus = m.modulus();
        let ech = m.row_echelon();
        let dim = ech.pivots.len();
        let mut rows = Vec::with_capacity(dim);
        for r in 0..dim {
            rows.push(ech.reduced.row(r).to_vec());
        }
        Subspace { ambient, basis: Matrix::from_rows(rows, ambient, modulus) }
    }

    pub fn from_vectors(ambient: usize, modulus: Modulus, vecs: &[Vector]) -> Self {
        Subspace::from_spanning_rows(Matrix::from_rows(vecs.to_vec(), ambient, modulus))
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn modulus(&self) -> Modulus {
        self.basis.modulus()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> impl Iterator<Item = &[Scalar]> {
        self.basis.row_vectors()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        let mut w = v.to_vec();
        for row in self.basis.row_vectors() {
            let pivot = row.iter().position(|s| !s.is_zero()).expect("no zero rows in basis");
            let c = w[pivot];
            if !c.is_zero() {
                for (wi, &ri) in w.iter_mut().zip(row) {
                    *wi = *wi - c * ri;
                }
            }
        }
        vector_is_zero(&w)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_rows().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        let mut rows: Vec<Vector> = self.basis_rows().map(<[Scalar]>::to_vec).collect();
        rows.extend(other.basis_rows().map(<[Scalar]>::to_vec));
        Subspace::from_vectors(self.ambient, self.modulus(), &rows)
    }

    /// Intersection via the kernel of the stacked bases.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        let da = self.dim();
        let db = other.dim();
        let modulus = self.modulus();
        // columns: coefficients on self's basis, then negated other's basis
        let mut stacked = Matrix::zero(self.ambient, da + db, modulus);
        for (j, row) in self.basis_rows().enumerate() {
            for (i, &v) in row.iter().enumerate() {
                stacked.set(i, j, v);
            }
        }
        for (j, row) in other.basis_rows().enumerate() {
            for (i, &v) in row.iter().enumerate() {
                stacked.set(i, da + j, -v);
            }
        }
        let kernel = stacked.kernel_basis();
        let mut rows = Vec::with_capacity(kernel.dim());
        for coeffs in kernel.basis_rows() {
            let mut v = zero_vector(modulus, self.ambient);
            for (j, row) in self.basis_rows().enumerate() {
                let c = coeffs[j];
                if !c.is_zero() {
                    for (vi, &ri) in v.iter_mut().zip(row) {
                        *vi = *vi + c * ri;
                    }
                }
            }
            rows.push(v);
        }
        Subspace::from_vectors(self.ambient, modulus, &rows)
    }

    /// The span of the standard basis vectors at non-pivot coordinates.
    ///
    /// Deterministic complement: together with `self` it spans the ambient
    /// space and the two intersect trivially.
    pub fn complement(&self) -> Subspace {
        let modulus = self.modulus();
        let mut is_pivot = vec![false; self.ambient];
        for row in self.basis.row_vectors() {
            let p = row.iter().position(|s| !s.is_zero()).expect("no zero rows in basis");
            is_pivot[p] = true;
        }
        let rows: Vec<Vector> = (0..self.ambient)
            .filter(|&c| !is_pivot[c])
            .map(|c| {
                let mut v = zero_vector(modulus, self.ambient);
                v[c] = modulus.one();
                v
            })
            .collect();
        Subspace::from_vectors(self.ambient, modulus, &rows)
    }

    /// Pivot columns of the canonical basis, in increasing order.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.basis
            .row_vectors()
            .map(|row| row.iter().position(|s| !s.is_zero()).expect("no zero rows in basis"))
            .collect()
    }
}

/// Incrementally maintained row span with fast membership testing.
///
/// Rows are kept forward-reduced and ordered by pivot column; this is enough
/// for membership and independence tests without full canonicalization.
#[derive(Debug, Clone)]
pub struct SpanBuilder {
    ambient: usize,
    modulus: Modulus,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl SpanBuilder {
    pub fn new(ambient: usize, modulus: Modulus) -> Self {
        SpanBuilder { ambient, modulus, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p];
            if !c.is_zero() {
                for (wi, &ri) in w.iter_mut().zip(row) {
                    *wi = *wi - c * ri;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        vector_is_zero(&self.reduce(v))
    }

    /// Adds `v` to the span.  Returns true when `v` was independent of the
    /// current span (and so enlarged it).
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|s| !s.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("leading entry is nonzero");
        let normalized = scale_vector(inv, &w);
        let at = self.pivots.iter().position(|&q| q > p).unwrap_or(self.pivots.len());
        self.rows.insert(at, normalized);
        self.pivots.insert(at, p);
        true
    }

    pub fn into_subspace(self) -> Subspace {
        let ambient = self.ambient;
        let modulus = self.modulus;
        Subspace::from_vectors(ambient, modulus, &self.rows)
    }
}

/// Builds a nonsingular `g` with `(g h)^2 = g h` for a square `h`.
///
/// Runs elimination `T h = R` and then permutes rows so that every pivot of
/// `R` lands on the diagonal; the permuted echelon form is idempotent and
/// has the same rank as `h`.  The idempotency is re-verified by an exact
/// multiplication and violations abort, though they cannot occur.
pub fn idempotentizer(h: &Matrix) -> Matrix {
    assert!(h.is_square(), "idempotentizer requires a square matrix");
    let n = h.rows();
    let ech = h.row_echelon();
    let rank = ech.pivots.len();
    let mut is_pivot = vec![false; n];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let mut target_of_source = vec![0usize; n];
    for (i, &p) in ech.pivots.iter().enumerate() {
        target_of_source[i] = p;
    }
    for (j, np) in (0..n).filter(|&c| !is_pivot[c]).enumerate() {
        target_of_source[rank + j] = np;
    }
    let mut g = Matrix::zero(n, n, h.modulus());
    for (src, &dst) in target_of_source.iter().enumerate() {
        for c in 0..n {
            g.set(dst, c, ech.transform.at(src, c));
        }
    }
    let e = g.mul(h);
    assert_eq!(e.mul(&e), e, "idempotentizer produced a non-idempotent product");
    assert_eq!(e.rank(), rank, "idempotentizer changed the rank");
    g
}
