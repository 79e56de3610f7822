//! Dense bit-packed linear algebra over the two-element field.
//!
//! Rows are packed little-endian into `u64` words; padding bits past the
//! logical column count are kept zero as an enforced invariant, so
//! word-level XOR and popcount never need masking. All operations are
//! exact and deterministic; matrices of a few thousand rows reduce in
//! well under a second.

use std::fmt;
use std::io::{BufRead, Write};

use crate::{Error, Result};

/// A dense matrix over GF(2). The 0×0 and 0×n matrices are valid.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    /// Zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64);
        Gf2Matrix {
            rows,
            cols,
            words_per_row,
            data: vec![0u64; rows * words_per_row],
        }
    }

    /// Identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// All-ones matrix (the matrix usually written `J`).
    pub fn ones(rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, true);
            }
        }
        m
    }

    /// Builds a matrix from `'0'`/`'1'` strings, one per row. Test helper.
    pub fn from_str_rows(rows: &[&str]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |s| s.len());
        let mut m = Self::zeros(r, c);
        for (i, s) in rows.iter().enumerate() {
            if s.len() != c {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} characters, expected {c}",
                    s.len()
                )));
            }
            for (j, ch) in s.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(i, j, true),
                    _ => {
                        return Err(Error::Format(format!(
                            "unexpected character {ch:?} in matrix row"
                        )))
                    }
                }
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        let w = self.data[i * self.words_per_row + j / 64];
        (w >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        let w = &mut self.data[i * self.words_per_row + j / 64];
        if value {
            *w |= 1u64 << (j % 64);
        } else {
            *w &= !(1u64 << (j % 64));
        }
    }

    #[inline]
    fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    /// Column of the leftmost set bit of row `i`, if any.
    pub fn row_leading(&self, i: usize) -> Option<usize> {
        let words = self.row_words(i);
        for (w, &word) in words.iter().enumerate() {
            if word != 0 {
                let col = w * 64 + word.trailing_zeros() as usize;
                return (col < self.cols).then_some(col);
            }
        }
        None
    }

    /// XORs row `src` into row `dst`.
    pub fn add_row_into(&mut self, dst: usize, src: usize) {
        debug_assert!(dst != src);
        let w = self.words_per_row;
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * w);
            (&mut lo[dst * w..dst * w + w], &hi[..w])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * w);
            (&mut hi[..w], &lo[src * w..src * w + w])
        };
        for (x, y) in a.iter_mut().zip(b) {
            *x ^= *y;
        }
    }

    /// XORs column `src` into column `dst`.
    pub fn add_col_into(&mut self, dst: usize, src: usize) {
        debug_assert!(dst != src);
        for i in 0..self.rows {
            if self.get(i, src) {
                let v = self.get(i, dst);
                self.set(i, dst, !v);
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words_per_row;
        for t in 0..w {
            self.data.swap(a * w + t, b * w + t);
        }
    }

    /// Entrywise sum (XOR). Shapes must match.
    pub fn add(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "add: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x ^= *y;
        }
        Ok(out)
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "mul: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Gf2Matrix::zeros(self.rows, other.cols);
        let w = out.words_per_row;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    let src = other.row_words(j);
                    let dst = &mut out.data[i * w..(i + 1) * w];
                    for (x, y) in dst.iter_mut().zip(src) {
                        *x ^= *y;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut out = Gf2Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    out.set(j, i, true);
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Row rank over GF(2).
    pub fn rank(&self) -> usize {
        #[cfg(debug_assertions)]
        debug_assert!(self.padding_is_zero());
        let mut work = self.clone();
        let mut rank = 0;
        for col in 0..work.cols {
            let Some(pivot) = (rank..work.rows).find(|&r| work.get(r, col)) else {
                continue;
            };
            work.swap_rows(rank, pivot);
            for r in rank + 1..work.rows {
                if work.get(r, col) {
                    work.add_row_into(r, rank);
                }
            }
            rank += 1;
            if rank == work.rows {
                break;
            }
        }
        rank
    }

    /// Full reduction to reduced row echelon form, with pivot columns and
    /// a basis of the null space. `rank + kernel dimension = cols` always.
    pub fn row_reduce(&self) -> RowReduction {
        #[cfg(debug_assertions)]
        debug_assert!(self.padding_is_zero());
        let mut reduced = self.clone();
        let mut pivot_cols = Vec::new();
        let mut rank = 0;
        for col in 0..reduced.cols {
            let Some(pivot) = (rank..reduced.rows).find(|&r| reduced.get(r, col)) else {
                continue;
            };
            reduced.swap_rows(rank, pivot);
            for r in 0..reduced.rows {
                if r != rank && reduced.get(r, col) {
                    reduced.add_row_into(r, rank);
                }
            }
            pivot_cols.push(col);
            rank += 1;
            if rank == reduced.rows {
                break;
            }
        }

        let mut is_pivot = vec![false; reduced.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        let free_cols: Vec<usize> = (0..reduced.cols).filter(|&c| !is_pivot[c]).collect();
        let mut kernel_basis = Gf2Matrix::zeros(free_cols.len(), reduced.cols);
        for (v, &f) in free_cols.iter().enumerate() {
            kernel_basis.set(v, f, true);
            for (r, &p) in pivot_cols.iter().enumerate() {
                if reduced.get(r, f) {
                    kernel_basis.set(v, p, true);
                }
            }
        }

        RowReduction {
            reduced,
            rank,
            pivot_cols,
            kernel_basis,
        }
    }

    /// Submatrix selected by explicit row and column index lists.
    /// Index lists may repeat or reorder; empty lists give a 0-sized matrix.
    pub fn block(&self, row_indices: &[usize], col_indices: &[usize]) -> Result<Gf2Matrix> {
        for &r in row_indices {
            if r >= self.rows {
                return Err(Error::IndexOutOfRange(format!(
                    "row index {r} in a {}x{} matrix",
                    self.rows, self.cols
                )));
            }
        }
        for &c in col_indices {
            if c >= self.cols {
                return Err(Error::IndexOutOfRange(format!(
                    "column index {c} in a {}x{} matrix",
                    self.rows, self.cols
                )));
            }
        }
        let mut out = Gf2Matrix::zeros(row_indices.len(), col_indices.len());
        for (i, &r) in row_indices.iter().enumerate() {
            for (j, &c) in col_indices.iter().enumerate() {
                if self.get(r, c) {
                    out.set(i, j, true);
                }
            }
        }
        Ok(out)
    }

    #[cfg(debug_assertions)]
    pub(crate) fn padding_is_zero(&self) -> bool {
        if self.cols % 64 == 0 || self.words_per_row == 0 {
            return true;
        }
        let mask = !((1u64 << (self.cols % 64)) - 1);
        (0..self.rows).all(|i| self.row_words(i)[self.words_per_row - 1] & mask == 0)
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix({}x{})", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{}", u8::from(self.get(i, j)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Result of [`Gf2Matrix::row_reduce`].
#[derive(Debug, Clone)]
pub struct RowReduction {
    /// Reduced row echelon form; reducing it again is a no-op.
    pub reduced: Gf2Matrix,
    pub rank: usize,
    /// Pivot columns in increasing order.
    pub pivot_cols: Vec<usize>,
    /// Rows span the null space: `m * v = 0` for every row `v`.
    pub kernel_basis: Gf2Matrix,
}

/// Computes the triple product `yᵀ · omega · y`.
///
/// `omega` must be square with as many rows as `y`; the result is square
/// of size `cols(y)`, symmetric whenever `omega` is symmetric, and of
/// rank at most `rows(y)`.
pub fn gram(y: &Gf2Matrix, omega: &Gf2Matrix) -> Result<Gf2Matrix> {
    if !omega.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "gram: omega is {}x{}, expected square",
            omega.rows, omega.cols
        )));
    }
    if omega.rows != y.rows {
        return Err(Error::DimensionMismatch(format!(
            "gram: omega has {} rows, y has {}",
            omega.rows, y.rows
        )));
    }
    y.transpose().mul(&omega.mul(y)?)
}

/// Optional `meta` line of the GF2M file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gf2mMeta {
    pub n: usize,
    pub k: usize,
}

/// Writes a matrix in the GF2M text format.
///
/// Layout: `GF2M 1`, an optional `meta n=<n> k=<k> indexing=joinpower-lex`
/// line, `rows <R> cols <C>`, then `R` lines of exactly `C` characters
/// from `{0,1}`. Round-trips bit-exactly.
pub fn write_gf2m<W: Write>(w: &mut W, m: &Gf2Matrix, meta: Option<&Gf2mMeta>) -> Result<()> {
    writeln!(w, "GF2M 1")?;
    if let Some(meta) = meta {
        writeln!(w, "meta n={} k={} indexing=joinpower-lex", meta.n, meta.k)?;
    }
    writeln!(w, "rows {} cols {}", m.rows(), m.cols())?;
    let mut line = String::with_capacity(m.cols());
    for i in 0..m.rows() {
        line.clear();
        for j in 0..m.cols() {
            line.push(if m.get(i, j) { '1' } else { '0' });
        }
        writeln!(w, "{line}")?;
    }
    Ok(())
}

/// Reads a matrix in the GF2M text format.
pub fn read_gf2m<R: BufRead>(r: &mut R) -> Result<(Gf2Matrix, Option<Gf2mMeta>)> {
    let mut lines = r.lines();
    let mut next_line = || -> Result<String> {
        match lines.next() {
            Some(l) => Ok(l?),
            None => Err(Error::Format("unexpected end of GF2M file".into())),
        }
    };

    let header = next_line()?;
    if header.trim() != "GF2M 1" {
        return Err(Error::Format(format!(
            "bad GF2M header {:?}, expected \"GF2M 1\"",
            header
        )));
    }

    let mut line = next_line()?;
    let mut meta = None;
    if let Some(rest) = line.trim().strip_prefix("meta ") {
        let mut n = None;
        let mut k = None;
        for field in rest.split_whitespace() {
            if let Some(v) = field.strip_prefix("n=") {
                n = Some(parse_count(v, "meta n")?);
            } else if let Some(v) = field.strip_prefix("k=") {
                k = Some(parse_count(v, "meta k")?);
            } else if let Some(v) = field.strip_prefix("indexing=") {
                if v != "joinpower-lex" {
                    return Err(Error::Format(format!("unknown indexing {v:?}")));
                }
            } else {
                return Err(Error::Format(format!("unknown meta field {field:?}")));
            }
        }
        match (n, k) {
            (Some(n), Some(k)) => meta = Some(Gf2mMeta { n, k }),
            _ => return Err(Error::Format("meta line must carry both n= and k=".into())),
        }
        line = next_line()?;
    }

    let dims: Vec<&str> = line.split_whitespace().collect();
    if dims.len() != 4 || dims[0] != "rows" || dims[2] != "cols" {
        return Err(Error::Format(format!(
            "bad dimension line {line:?}, expected \"rows <R> cols <C>\""
        )));
    }
    let rows = parse_count(dims[1], "rows")?;
    let cols = parse_count(dims[3], "cols")?;

    let mut m = Gf2Matrix::zeros(rows, cols);
    for i in 0..rows {
        let row = next_line()?;
        let row = row.trim_end();
        if row.len() != cols {
            return Err(Error::Format(format!(
                "row {i} has {} characters, expected {cols}",
                row.len()
            )));
        }
        for (j, ch) in row.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => m.set(i, j, true),
                _ => return Err(Error::Format(format!("bad character {ch:?} in row {i}"))),
            }
        }
    }
    Ok((m, meta))
}

fn parse_count(s: &str, what: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::Format(format!("bad {what} value {s:?}")))
}
