//! Exact integer and F₂ linear algebra.
//!
//! Everything here is exact: integer matrices carry arbitrary precision
//! entries and F₂ matrices are bit-packed. The Hermite form follows a fixed
//! convention (positive pivots, entries above a pivot reduced into
//! `[0, pivot)`) so that quotient normal forms built on top of it are
//! reproducible byte for byte.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary precision entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. All rows must have the
    /// same length.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    /// As [`IntMatrix::from_rows`], but with an explicit column count so
    /// that matrices with zero rows keep their shape.
    pub fn from_rows_with_cols<T: Into<BigInt> + Copy>(rows: &[Vec<T>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len());
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.push(r.iter().map(|&x| x.into()).collect());
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<Self> {
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(Error::Shape(format!(
                "row {i} has {} entries, expected {cols}",
                r.len()
            )));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i][j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[Vec<BigInt>] {
        &self.data
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    /// Submatrix made of the given rows, in the given order.
    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        IntMatrix {
            rows: idx.len(),
            cols: self.cols,
            data: idx.iter().map(|&i| self.data[i].clone()).collect(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(Zero::is_zero))
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.data {
            let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Row-style Hermite normal form `H = U·A`.
#[derive(Clone, Debug)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// `(row, column)` of each pivot, in increasing row order.
    pub pivots: Vec<(usize, usize)>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn nonzeros(row: &[BigInt]) -> usize {
    row.iter().filter(|x| !x.is_zero()).count()
}

fn sub_scaled(target: &mut [BigInt], src: &[BigInt], q: &BigInt) {
    for (t, s) in target.iter_mut().zip(src) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

/// Core elimination shared by the HNF entry points. When `transform` is
/// given every row operation is mirrored onto it.
fn hermite_in_place(
    data: &mut [Vec<BigInt>],
    cols: usize,
    mut transform: Option<&mut [Vec<BigInt>]>,
) -> Vec<(usize, usize)> {
    let nrows = data.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        loop {
            // Smallest |entry| in this column wins; ties go to the sparser row.
            let mut best: Option<usize> = None;
            let mut nz_count = 0;
            for i in r..nrows {
                if data[i][c].is_zero() {
                    continue;
                }
                nz_count += 1;
                best = match best {
                    None => Some(i),
                    Some(b) => {
                        let (ai, ab) = (data[i][c].abs(), data[b][c].abs());
                        if ai < ab || (ai == ab && nonzeros(&data[i]) < nonzeros(&data[b])) {
                            Some(i)
                        } else {
                            Some(b)
                        }
                    }
                };
            }
            let Some(b) = best else { break };
            data.swap(r, b);
            if let Some(t) = transform.as_deref_mut() {
                t.swap(r, b);
            }
            if nz_count == 1 {
                break;
            }
            let (head, tail) = data.split_at_mut(r + 1);
            let prow = &head[r];
            let p = prow[c].clone();
            for (off, row) in tail.iter_mut().enumerate() {
                if row[c].is_zero() {
                    continue;
                }
                let q = row[c].div_floor(&p);
                sub_scaled(row, prow, &q);
                if let Some(t) = transform.as_deref_mut() {
                    let (th, tt) = t.split_at_mut(r + 1);
                    sub_scaled(&mut tt[off], &th[r], &q);
                }
            }
        }
        if data[r][c].is_zero() {
            continue;
        }
        if data[r][c].is_negative() {
            for x in data[r].iter_mut() {
                *x = -&*x;
            }
            if let Some(t) = transform.as_deref_mut() {
                for x in t[r].iter_mut() {
                    *x = -&*x;
                }
            }
        }
        let (head, tail) = data.split_at_mut(r);
        let prow = &tail[0];
        let p = prow[c].clone();
        for (i, row) in head.iter_mut().enumerate() {
            if row[c].is_zero() {
                continue;
            }
            let q = row[c].div_floor(&p);
            if q.is_zero() {
                continue;
            }
            sub_scaled(row, prow, &q);
            if let Some(t) = transform.as_deref_mut() {
                let (th, tt) = t.split_at_mut(r);
                sub_scaled(&mut th[i], &tt[0], &q);
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    pivots
}

/// Hermite normal form with the unimodular transform.
pub fn hermite_normal_form(a: &IntMatrix) -> HermiteForm {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let pivots = hermite_in_place(&mut h.data, a.cols, Some(&mut u.data));
    HermiteForm { h, u, pivots }
}

/// Hermite normal form without tracking the transform; returns only the
/// nonzero rows. This is what the quotient constructions use.
pub fn hermite_rows(a: &IntMatrix) -> (IntMatrix, Vec<usize>) {
    let mut data = a.data.clone();
    data.retain(|r| r.iter().any(|x| !x.is_zero()));
    let pivots = hermite_in_place(&mut data, a.cols, None);
    data.truncate(pivots.len());
    let pivot_cols = pivots.iter().map(|&(_, c)| c).collect();
    let rows = data.len();
    (
        IntMatrix {
            rows,
            cols: a.cols,
            data,
        },
        pivot_cols,
    )
}

/// Rank over ℚ.
///
/// A rank modulo a large prime is a lower bound; when it already equals the
/// number of rows or columns it is exact and the Hermite form is skipped.
pub fn rank(a: &IntMatrix) -> usize {
    let r = rank_mod_prime(a, MODULAR_PRIME);
    if r == a.rows.min(a.cols) {
        return r;
    }
    hermite_rows(a).1.len()
}

const MODULAR_PRIME: u64 = (1 << 61) - 1;

/// Rank over 𝔽_p for a prime `p < 2⁶³`.
pub fn rank_mod_prime(a: &IntMatrix, p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut rows: Vec<Vec<u64>> = a
        .data
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    let (_, digits) = x.mod_floor(&pb).to_u64_digits();
                    digits.first().copied().unwrap_or(0)
                })
                .collect()
        })
        .collect();
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let inv = |x: u64| {
        // Fermat: x^(p-2).
        let (mut base, mut e, mut acc) = (x, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for c in 0..a.cols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let scale = inv(rows[rank][c]);
        let pivot_row: Vec<u64> = rows[rank].iter().map(|&x| mul(x, scale)).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = (*x + p - mul(f, y)) % p;
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Invariant factors of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero invariant factors `d₁ | d₂ | …`, all positive.
    pub factors: Vec<BigInt>,
    pub rows: usize,
    pub cols: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// The full diagonal, padded with zeros to `min(rows, cols)` entries.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let mut d = self.factors.clone();
        d.resize(self.rows.min(self.cols), BigInt::zero());
        d
    }

    pub fn all_units(&self) -> bool {
        self.factors.iter().all(One::is_one)
    }
}

/// Smith normal form (invariant factors only).
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let mut m: Vec<Vec<BigInt>> = a.data.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pick the smallest nonzero entry of the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            let p = m[t][t].clone();
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&p);
                let (head, tail) = m.split_at_mut(i);
                sub_scaled(&mut tail[0][t..], &head[t][t..], &q);
                if !m[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&p);
                for row in m.iter_mut().skip(t) {
                    let v = &q * &row[t];
                    row[j] -= v;
                }
                if !m[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // Divisibility: fold any entry not divisible by the pivot
                // into the pivot row and go again.
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m[i][j].is_multiple_of(&p)));
                match bad {
                    Some(i) => {
                        let (head, tail) = m.split_at_mut(i);
                        for (x, y) in head[t].iter_mut().zip(&tail[0]).skip(t) {
                            *x += y;
                        }
                    }
                    None => break,
                }
            }
            // Move the smallest nonzero entry of row/column t to the pivot.
            let mut best = (t, t);
            for i in t..rows {
                if !m[i][t].is_zero() && (m[best.0][best.1].is_zero() || m[i][t].abs() < m[best.0][best.1].abs()) {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !m[t][j].is_zero() && (m[best.0][best.1].is_zero() || m[t][j].abs() < m[best.0][best.1].abs()) {
                    best = (t, j);
                }
            }
            m.swap(t, best.0);
            for row in m.iter_mut() {
                row.swap(t, best.1);
            }
        }
        factors.push(m[t][t].abs());
        t += 1;
    }
    SmithForm { factors, rows, cols }
}

/// Bit-packed matrix over F₂.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        F2Matrix {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Shape(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x & 1 == 1);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.data[i * self.words + j / 64] >> (j % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let w = &mut self.data[i * self.words + j / 64];
        if value {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] ^= 1 << (j % 64);
    }

    fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let w = self.words;
        for k in 0..w {
            let v = self.data[src * w + k];
            self.data[dst * w + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words;
        for k in 0..w {
            self.data.swap(a * w + k, b * w + k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row_words(i).iter().all(|&w| w == 0)
    }

    pub fn mul(&self, other: &F2Matrix) -> Result<F2Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = F2Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    for w in 0..other.words {
                        out.data[i * out.words + w] ^= other.data[k * other.words + w];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(r, p);
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_row_into(r, i);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis of the right kernel `{x : A x = 0}`, one vector per row.
    pub fn kernel_basis(&self) -> F2Matrix {
        let mut e = self.clone();
        let pivots = e.reduce();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = F2Matrix::zeros(free.len(), self.cols);
        for (row, &f) in free.iter().enumerate() {
            k.set(row, f, true);
            for (pr, &pc) in pivots.iter().enumerate() {
                if e.get(pr, f) {
                    k.set(row, pc, true);
                }
            }
        }
        k
    }
}

pub fn f2_rank(a: &F2Matrix) -> usize {
    a.clone().reduce().len()
}

pub fn f2_kernel_basis(a: &F2Matrix) -> F2Matrix {
    a.kernel_basis()
}

/// A subspace of F₂ⁿ kept in reduced echelon form, used to reduce vectors
/// to a canonical representative modulo the subspace.
#[derive(Clone, Debug)]
pub struct F2Reducer {
    basis: F2Matrix,
    pivots: Vec<usize>,
}

impl F2Reducer {
    pub fn new(mut span: F2Matrix) -> Self {
        let pivots = span.reduce();
        F2Reducer { basis: span, pivots }
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` (a bit vector of length `cols`) so that it has no support
    /// on pivot columns.
    pub fn reduce_vec(&self, v: &mut [u64]) {
        for (r, &c) in self.pivots.iter().enumerate() {
            if (v[c / 64] >> (c % 64)) & 1 == 1 {
                for (x, y) in v.iter_mut().zip(self.basis.row_words(r)) {
                    *x ^= y;
                }
            }
        }
    }
}
