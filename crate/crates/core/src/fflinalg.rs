//! Dense linear algebra over a small prime field.
//!
//! Everything above this module reduces to solving linear systems exactly:
//! hom-spaces are null spaces, factorization questions are consistency
//! questions, and quotients of hom-spaces are computed from reduced
//! row-echelon forms. Entries are stored as `u8` residues; the modulus is
//! at most 7, so every product fits comfortably in a `u32` accumulator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};

/// A prime field `F_p` with `p` in {2, 3, 5, 7}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Field {
    p: u8,
}

impl Default for Field {
    fn default() -> Self {
        Field { p: 2 }
    }
}

impl Field {
    pub const SUPPORTED: [u32; 4] = [2, 3, 5, 7];

    pub fn new(p: u32) -> Result<Self> {
        if Self::SUPPORTED.contains(&p) {
            Ok(Field { p: p as u8 })
        } else {
            Err(Error::UnsupportedCharacteristic(p))
        }
    }

    pub fn characteristic(self) -> u32 {
        self.p as u32
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.p as u16 - b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u8) -> u8 {
        assert!(a != 0, "zero has no inverse");
        // a^(p-2) by Fermat; p <= 7 so a short loop is enough.
        let mut acc = 1u8;
        for _ in 0..(self.p - 2) {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn reduce(self, v: i64) -> u8 {
        v.rem_euclid(self.p as i64) as u8
    }

    pub fn elements(self) -> impl Iterator<Item = u8> {
        0..self.p
    }

    pub fn scalar(self, v: i64) -> FpScalar {
        FpScalar {
            value: self.reduce(v),
            field: self,
        }
    }
}

/// A single residue together with its field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u8,
    field: Field,
}

impl FpScalar {
    pub fn new(value: i64, modulus: u32) -> Result<Self> {
        let field = Field::new(modulus)?;
        Ok(field.scalar(value))
    }

    pub fn value(self) -> u8 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.field.characteristic()
    }

    pub fn inverse(self) -> Option<Self> {
        (self.value != 0).then(|| FpScalar {
            value: self.field.inv(self.value),
            field: self.field,
        })
    }
}

impl Add for FpScalar {
    type Output = FpScalar;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.field, rhs.field, "mixed moduli");
        FpScalar {
            value: self.field.add(self.value, rhs.value),
            field: self.field,
        }
    }
}

impl Sub for FpScalar {
    type Output = FpScalar;
    fn sub(self, rhs: Self) -> Self {
        assert_eq!(self.field, rhs.field, "mixed moduli");
        FpScalar {
            value: self.field.sub(self.value, rhs.value),
            field: self.field,
        }
    }
}

impl Mul for FpScalar {
    type Output = FpScalar;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.field, rhs.field, "mixed moduli");
        FpScalar {
            value: self.field.mul(self.value, rhs.value),
            field: self.field,
        }
    }
}

impl Neg for FpScalar {
    type Output = FpScalar;
    fn neg(self) -> Self {
        FpScalar {
            value: self.field.neg(self.value),
            field: self.field,
        }
    }
}

/// Dense row-major matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

/// Result of row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: FpMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// A surjection onto a quotient space together with a section of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    /// `ambient -> quotient`, kernel equal to the span of the submitted vectors.
    pub proj: FpMatrix,
    /// `quotient -> ambient`, with `proj * lift = 1`.
    pub lift: FpMatrix,
}

impl QuotientMap {
    pub fn dim(&self) -> usize {
        self.proj.rows()
    }
}

impl FpMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        FpMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod `p`.
    pub fn from_rows(field: Field, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| field.reduce(v)))
            .collect();
        Ok(FpMatrix {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    /// Builds a `rows x cols` matrix from a row-major slice of residues.
    pub fn from_vec(field: Field, rows: usize, cols: usize, data: Vec<u8>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length must equal rows * cols");
        debug_assert!(data.iter().all(|&v| v < field.p));
        FpMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u8) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j) % field.p;
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<u8>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, &v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v;
            }
        }
        m
    }

    /// A single column vector.
    pub fn column_vector(field: Field, v: &[u8]) -> Self {
        Self::from_vec(field, v.len(), 1, v.to_vec())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v % self.field.p;
    }

    pub fn scalar(&self, i: usize, j: usize) -> FpScalar {
        FpScalar {
            value: self.get(i, j),
            field: self.field,
        }
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u8>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u8::from(i == j)))
    }

    pub fn mul(&self, rhs: &FpMatrix) -> FpMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let p = self.field.p as u32;
        let mut out = FpMatrix::zeros(self.field, self.rows, rhs.cols);
        let mut acc = vec![0u32; rhs.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(i, k) as u32;
                if a == 0 {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    *slot += a * rhs.get(k, j) as u32;
                }
            }
            for (j, a) in acc.iter().enumerate() {
                out.data[i * rhs.cols + j] = (a % p) as u8;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(self.cols, v.len());
        let p = self.field.p as u32;
        (0..self.rows)
            .map(|i| {
                let s: u32 = self.row(i).iter().zip(v).map(|(&a, &b)| a as u32 * b as u32).sum();
                (s % p) as u8
            })
            .collect()
    }

    fn zip_with(&self, rhs: &FpMatrix, f: impl Fn(u8, u8) -> u8) -> FpMatrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch");
        FpMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, rhs: &FpMatrix) -> FpMatrix {
        let fld = self.field;
        self.zip_with(rhs, |a, b| fld.add(a, b))
    }

    pub fn sub(&self, rhs: &FpMatrix) -> FpMatrix {
        let fld = self.field;
        self.zip_with(rhs, |a, b| fld.sub(a, b))
    }

    pub fn neg(&self) -> FpMatrix {
        self.scale(self.field.neg(1))
    }

    pub fn scale(&self, c: u8) -> FpMatrix {
        let fld = self.field;
        FpMatrix {
            field: fld,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| fld.mul(a, c)).collect(),
        }
    }

    pub fn transpose(&self) -> FpMatrix {
        FpMatrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Horizontal concatenation; all blocks must share a row count.
    pub fn hstack(field: Field, rows: usize, blocks: &[&FpMatrix]) -> FpMatrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = FpMatrix::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            out.paste(0, off, b);
            off += b.cols;
        }
        out
    }

    /// Vertical concatenation; all blocks must share a column count.
    pub fn vstack(field: Field, cols: usize, blocks: &[&FpMatrix]) -> FpMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = FpMatrix::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            out.paste(off, 0, b);
            off += b.rows;
        }
        out
    }

    pub fn block_diag(field: Field, blocks: &[&FpMatrix]) -> FpMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = FpMatrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.paste(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    /// Writes `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &FpMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(i));
        }
    }

    /// The submatrix on rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> FpMatrix {
        FpMatrix::from_fn(self.field, r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn select_columns(&self, idx: &[usize]) -> FpMatrix {
        FpMatrix::from_fn(self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    pub fn rref(&self) -> Rref {
        let fld = self.field;
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
            let inv = fld.inv(m.get(r, c));
            for j in c..m.cols {
                let v = fld.mul(m.get(r, j), inv);
                m.data[r * m.cols + j] = v;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = fld.sub(m.get(i, j), fld.mul(factor, m.get(r, j)));
                    m.data[i * m.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            reduced: m,
            rank: pivots.len(),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Some `X` with `self * X = b`, free variables set to zero; `None` when inconsistent.
    pub fn solve_right(&self, b: &FpMatrix) -> Option<FpMatrix> {
        assert_eq!(self.rows, b.rows, "solve_right: row counts differ");
        let aug = FpMatrix::hstack(self.field, self.rows, &[self, b]);
        let Rref { reduced, pivots, .. } = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = FpMatrix::zeros(self.field, self.cols, b.cols);
        for (i, &c) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.data[c * b.cols + j] = reduced.get(i, self.cols + j);
            }
        }
        Some(x)
    }

    /// Solves `self * x = v` for a single right-hand side vector.
    pub fn solve_vec(&self, v: &[u8]) -> Option<Vec<u8>> {
        self.solve_right(&FpMatrix::column_vector(self.field, v))
            .map(|x| x.column(0))
    }

    /// Columns form a basis of the null space, one per free column of the RREF.
    pub fn kernel_basis(&self) -> FpMatrix {
        let fld = self.field;
        let Rref { reduced, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = FpMatrix::zeros(fld, self.cols, free.len());
        for (fi, &f) in free.iter().enumerate() {
            k.data[f * free.len() + fi] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                k.data[pc * free.len() + fi] = fld.neg(reduced.get(i, f));
            }
        }
        k
    }

    /// Column indices of `self` forming a basis of its column space (leftmost choice).
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().pivots
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        self.solve_right(&FpMatrix::identity(self.field, self.rows))
            .filter(|_| self.is_invertible())
    }

    /// Whether every column of `other` lies in the column span of `self`.
    pub fn spans(&self, other: &FpMatrix) -> bool {
        self.solve_right(other).is_some()
    }
}

/// The quotient of `F_p^ambient_dim` by the column span of `sub_basis`.
///
/// The columns of `sub_basis` need not be independent. The complement is
/// spanned by the standard vectors at the non-pivot coordinates of the
/// reduced form of the span, which makes the result canonical.
pub fn quotient_space(field: Field, ambient_dim: usize, sub_basis: &FpMatrix) -> QuotientMap {
    assert_eq!(sub_basis.rows(), ambient_dim, "quotient_space: sub_basis rows must equal ambient_dim");
    let Rref { reduced, pivots, .. } = sub_basis.transpose().rref();
    let free: Vec<usize> = (0..ambient_dim).filter(|c| !pivots.contains(c)).collect();
    let mut proj = FpMatrix::zeros(field, free.len(), ambient_dim);
    let mut lift = FpMatrix::zeros(field, ambient_dim, free.len());
    for (k, &j) in free.iter().enumerate() {
        proj.set(k, j, 1);
        lift.set(j, k, 1);
        for (i, &pc) in pivots.iter().enumerate() {
            proj.set(k, pc, field.neg(reduced.get(i, j)));
        }
    }
    QuotientMap { proj, lift }
}

/// All vectors of `F_p^n` in lexicographic order; `p^n` of them.
pub fn all_vectors(field: Field, n: usize) -> impl Iterator<Item = Vec<u8>> {
    let p = field.characteristic() as u64;
    let total = p.checked_pow(n as u32).expect("vector space too large to enumerate");
    (0..total).map(move |mut idx| {
        let mut v = vec![0u8; n];
        for slot in v.iter_mut().rev() {
            *slot = (idx % p) as u8;
            idx /= p;
        }
        v
    })
}

/// All subspaces of `F_p^n`, each as an `n x k` matrix whose columns are the
/// transposed rows of its reduced echelon basis. Ordered by dimension, then
/// pivot set, then free entries.
pub fn all_subspaces(field: Field, n: usize) -> Vec<FpMatrix> {
    let mut out = Vec::new();
    for k in 0..=n {
        for pivots in combinations(n, k) {
            // Free slots: row i, column j > pivots[i], j not a pivot.
            let slots: Vec<(usize, usize)> = (0..k)
                .flat_map(|i| {
                    let pv = &pivots;
                    ((pv[i] + 1)..n).filter(move |j| !pv.contains(j)).map(move |j| (i, j))
                })
                .collect();
            for fill in all_vectors(field, slots.len()) {
                let mut basis = FpMatrix::zeros(field, n, k);
                for (i, &pc) in pivots.iter().enumerate() {
                    basis.set(pc, i, 1);
                }
                for (&(i, j), &v) in slots.iter().zip(&fill) {
                    basis.set(j, i, v);
                }
                out.push(basis);
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}{:?}", self.field.p, self.to_rows())
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "[{}x{}]", self.rows, self.cols);
        }
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(u8::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for FpMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}
