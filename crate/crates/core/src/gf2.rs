//! Bit-packed vectors and matrices over GF(2).
//!
//! Rows are stored as runs of `u64` words; bit `k` of a row is the coefficient
//! of column `k`. Every padding bit past the logical length is kept at zero so
//! word-level equality, popcounts and hashing can ignore the tail.
//!
//! Vectors of length `2n` follow the split `a = [v; w]`: coordinates `0..n`
//! carry the Z-part and `n..2n` the X-part.

use std::fmt;
use std::ops::{Add, BitXor, BitXorAssign, Mul};

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// Mask selecting the valid bits of the last word of a `bits`-long run.
#[inline]
fn tail_mask(bits: usize) -> u64 {
    match bits % WORD {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

#[inline]
fn parity(x: u64) -> bool {
    x.count_ones() & 1 == 1
}

#[inline]
fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

/// Bits `start..start + 64·dst.len()` of `src` into `dst`; bits past `src` read as zero.
fn extract_bits(src: &[u64], start: usize, dst: &mut [u64]) {
    let (w0, shift) = (start / WORD, start % WORD);
    for (k, d) in dst.iter_mut().enumerate() {
        let lo = src.get(w0 + k).copied().unwrap_or(0);
        *d = if shift == 0 {
            lo
        } else {
            let hi = src.get(w0 + k + 1).copied().unwrap_or(0);
            (lo >> shift) | (hi << (WORD - shift))
        };
    }
}

/// Overwrites bits `start..start + len` of `dst` with the low `len` bits of `src`.
fn deposit_bits(dst: &mut [u64], start: usize, src: &[u64], len: usize) {
    for (k, &v) in src.iter().enumerate().take(words_for(len)) {
        let bits = (len - k * WORD).min(WORD);
        let mask = if bits == WORD { u64::MAX } else { (1u64 << bits) - 1 };
        let v = v & mask;
        let pos = start + k * WORD;
        let (w, shift) = (pos / WORD, pos % WORD);
        dst[w] = (dst[w] & !(mask << shift)) | (v << shift);
        if shift > 0 && shift + bits > WORD {
            let back = WORD - shift;
            dst[w + 1] = (dst[w + 1] & !(mask >> back)) | (v >> back);
        }
    }
}

/// Parity of the bitwise AND of two word runs.
#[inline]
fn and_parity(a: &[u64], b: &[u64]) -> bool {
    let mut acc = 0u64;
    for (x, y) in a.iter().zip(b) {
        acc ^= x & y;
    }
    parity(acc)
}

/// Parity of `a & b` restricted to bit positions `< limit`.
#[inline]
fn and_parity_prefix(a: &[u64], b: &[u64], limit: usize) -> bool {
    let full = limit / WORD;
    let mut acc = 0u64;
    for k in 0..full {
        acc ^= a[k] & b[k];
    }
    let rem = limit % WORD;
    if rem != 0 {
        acc ^= a[full] & b[full] & ((1u64 << rem) - 1);
    }
    parity(acc)
}

fn iter_ones_words(words: &[u64], len: usize) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(move |(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let t = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(wi * WORD + t)
        })
        .take_while(move |&k| k < len)
    })
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinVec {
    len: usize,
    words: Vec<u64>,
}

impl BinVec {
    pub fn zeros(len: usize) -> Self {
        Self { len, words: vec![0; words_for(len)] }
    }

    /// The `k`-th standard basis vector of length `len`.
    pub fn unit(len: usize, k: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(k, true);
        v
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (k, b) in bits.into_iter().enumerate() {
            if b {
                v.set(k, true);
            }
        }
        v
    }

    /// Builds a vector from a list of 0/1 integers.
    pub fn from_bits(bits: &[u8]) -> Self {
        Self::from_bools(bits.iter().map(|&b| b & 1 == 1))
    }

    /// Parses a string of `'0'`/`'1'` characters.
    pub fn parse01(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for (k, ch) in s.chars().enumerate() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => {
                    return Err(Error::parse(0, format!("invalid bit character {other:?} at position {k}")));
                }
            }
        }
        Ok(Self::from_bools(bits))
    }

    pub(crate) fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(len);
        }
        Self { len, words }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, k: usize) -> bool {
        assert!(k < self.len, "bit index {k} out of range for length {}", self.len);
        (self.words[k / WORD] >> (k % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, k: usize, value: bool) {
        assert!(k < self.len, "bit index {k} out of range for length {}", self.len);
        let mask = 1u64 << (k % WORD);
        if value {
            self.words[k / WORD] |= mask;
        } else {
            self.words[k / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, k: usize) {
        assert!(k < self.len, "bit index {k} out of range for length {}", self.len);
        self.words[k / WORD] ^= 1u64 << (k % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Standard inner product `selfᵀ other` over GF(2).
    pub fn dot(&self, other: &BinVec) -> bool {
        assert_eq!(self.len, other.len, "dot product of vectors with different lengths");
        and_parity(&self.words, &other.words)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        iter_ones_words(&self.words, self.len)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |k| self.get(k))
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.iter_ones().next()
    }

    /// Copies out bits `start..end`.
    pub fn slice(&self, start: usize, end: usize) -> BinVec {
        assert!(start <= end && end <= self.len);
        BinVec::from_bools((start..end).map(|k| self.get(k)))
    }

    /// Concatenation `[self; other]`.
    pub fn concat(&self, other: &BinVec) -> BinVec {
        BinVec::from_bools(self.iter().chain(other.iter()))
    }

    /// Exchanges the two halves of an even-length vector, i.e. computes `P·a`.
    pub fn swap_halves(&self) -> BinVec {
        assert!(self.len.is_multiple_of(2), "swap_halves needs an even length");
        let n = self.len / 2;
        self.slice(n, 2 * n).concat(&self.slice(0, n))
    }

    /// The low 64 bits interpreted as an integer (bit `k` has weight `2^k`).
    pub fn to_index(&self) -> usize {
        assert!(self.len <= 63, "vector too long to serve as an index");
        self.words.first().copied().unwrap_or(0) as usize
    }

    pub fn from_index(len: usize, index: usize) -> BinVec {
        assert!(len <= 63);
        BinVec::from_words(len, vec![index as u64])
    }

    /// Renders as `'0'`/`'1'` characters, coordinate 0 first.
    pub fn to_string01(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }
}

impl fmt::Debug for BinVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinVec[{}]", self.to_string01())
    }
}

impl fmt::Display for BinVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string01())
    }
}

impl BitXorAssign<&BinVec> for BinVec {
    fn bitxor_assign(&mut self, rhs: &BinVec) {
        assert_eq!(self.len, rhs.len, "xor of vectors with different lengths");
        xor_into(&mut self.words, &rhs.words);
    }
}

impl BitXor<&BinVec> for &BinVec {
    type Output = BinVec;
    fn bitxor(self, rhs: &BinVec) -> BinVec {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl Add<&BinVec> for &BinVec {
    type Output = BinVec;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: &BinVec) -> BinVec {
        self ^ rhs
    }
}

/// A dense matrix over GF(2), rows packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinMat {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BinMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from nested 0/1 rows. All rows must have equal length.
    pub fn from_rows(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| rows[i][j] & 1 == 1)
    }

    /// Stacks the given vectors as columns.
    pub fn from_cols(nrows: usize, cols: &[BinVec]) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows, "column {j} has the wrong length");
            for i in c.iter_ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    /// Stacks the given vectors as rows.
    pub fn from_row_vecs(ncols: usize, rows: &[BinVec]) -> Self {
        let mut m = Self::zeros(rows.len(), ncols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), ncols, "row {i} has the wrong length");
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        (self.data[i * self.stride + j / WORD] >> (j % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        let mask = 1u64 << (j % WORD);
        let w = &mut self.data[i * self.stride + j / WORD];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize, j: usize) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        self.data[i * self.stride + j / WORD] ^= 1u64 << (j % WORD);
    }

    #[inline]
    pub(crate) fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub(crate) fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> BinVec {
        BinVec::from_words(self.cols, self.row_words(i).to_vec())
    }

    pub fn col(&self, j: usize) -> BinVec {
        BinVec::from_bools((0..self.rows).map(|i| self.get(i, j)))
    }

    pub fn set_row(&mut self, i: usize, v: &BinVec) {
        assert_eq!(v.len(), self.cols);
        self.row_words_mut(i).copy_from_slice(v.words());
    }

    pub fn set_col(&mut self, j: usize, v: &BinVec) {
        assert_eq!(v.len(), self.rows);
        for i in 0..self.rows {
            self.set(i, j, v.get(i));
        }
    }

    /// `row[dst] ^= row[src]`
    pub fn add_row(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst);
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&lo[src * s..(src + 1) * s], &mut hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&hi[..s], &mut lo[dst * s..(dst + 1) * s])
        };
        xor_into(b, a);
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.stride {
            self.data.swap(i * self.stride + k, j * self.stride + k);
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            let (a, b) = (self.get(r, i), self.get(r, j));
            self.set(r, i, b);
            self.set(r, j, a);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == BinMat::identity(self.rows)
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    /// First `(i, j)` with `i > j` where `A(i,j) != A(j,i)`.
    pub fn first_asymmetry(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        (0..self.rows).flat_map(|i| (0..i).map(move |j| (i, j))).find(|&(i, j)| self.get(i, j) != self.get(j, i))
    }

    pub fn transpose(&self) -> BinMat {
        let mut t = BinMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in iter_ones_words(self.row_words(i), self.cols) {
                t.data[j * t.stride + i / WORD] |= 1u64 << (i % WORD);
            }
        }
        t
    }

    /// Matrix product with dimension checking.
    pub fn try_mul(&self, rhs: &BinMat) -> Result<BinMat> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "matrix product",
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        Ok(mul_m4rm(self, rhs))
    }

    /// `A·x`
    pub fn mul_vec(&self, x: &BinVec) -> BinVec {
        assert_eq!(self.cols, x.len(), "matrix-vector dimension mismatch");
        BinVec::from_bools((0..self.rows).map(|i| and_parity(self.row_words(i), x.words())))
    }

    /// `xᵀ·A`, returned as a column-length vector (equivalently `Aᵀx`).
    pub fn vec_mul(&self, x: &BinVec) -> BinVec {
        assert_eq!(self.rows, x.len(), "vector-matrix dimension mismatch");
        let mut out = vec![0u64; self.stride];
        for i in x.iter_ones() {
            xor_into(&mut out, self.row_words(i));
        }
        BinVec::from_words(self.cols, out)
    }

    pub fn try_add(&self, rhs: &BinMat) -> Result<BinMat> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                op: "matrix sum",
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let mut out = self.clone();
        xor_into(&mut out.data, &rhs.data);
        Ok(out)
    }

    /// Strictly lower triangular part.
    pub fn lows(&self) -> BinMat {
        assert!(self.is_square(), "lows needs a square matrix");
        let mut out = self.clone();
        for i in 0..self.rows {
            let row = out.row_words_mut(i);
            let full = i / WORD;
            let rem = i % WORD;
            if rem == 0 {
                row[full..].iter_mut().for_each(|w| *w = 0);
            } else {
                row[full] &= (1u64 << rem) - 1;
                row[full + 1..].iter_mut().for_each(|w| *w = 0);
            }
        }
        out
    }

    /// The vector of diagonal entries.
    pub fn diag_vec(&self) -> BinVec {
        assert!(self.is_square(), "diag_vec needs a square matrix");
        BinVec::from_bools((0..self.rows).map(|k| self.get(k, k)))
    }

    /// Diagonal matrix with the given diagonal.
    pub fn diagonal(d: &BinVec) -> BinMat {
        let mut m = BinMat::zeros(d.len(), d.len());
        for k in d.iter_ones() {
            m.set(k, k, true);
        }
        m
    }

    /// Outer product `x·yᵀ`.
    pub fn outer(x: &BinVec, y: &BinVec) -> BinMat {
        let mut m = BinMat::zeros(x.len(), y.len());
        for i in x.iter_ones() {
            m.row_words_mut(i).copy_from_slice(y.words());
        }
        m
    }

    /// `xᵀ·lows(A)·x`, evaluated row by row on word-masked prefixes.
    pub fn quad_form_lows(&self, x: &BinVec) -> bool {
        assert!(self.is_square() && self.rows == x.len(), "quadratic form dimension mismatch");
        let mut acc = false;
        for i in x.iter_ones() {
            acc ^= and_parity_prefix(self.row_words(i), x.words(), i);
        }
        acc
    }

    /// `diag(Xᵀ·lows(self)·X)`: the quadratic form of every column of `x`.
    pub fn lows_congruence_diag(&self, x: &BinMat) -> BinVec {
        assert!(self.is_square() && self.cols == x.rows, "congruence dimension mismatch");
        let lx = &self.lows() * x;
        let mut acc = vec![0u64; x.stride];
        for i in 0..x.rows {
            for (a, (p, q)) in acc.iter_mut().zip(x.row_words(i).iter().zip(lx.row_words(i))) {
                *a ^= p & q;
            }
        }
        BinVec::from_words(x.cols, acc)
    }

    /// Copies the block of rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> BinMat {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        let mut out = BinMat::zeros(r1 - r0, c1 - c0);
        let tail = tail_mask(c1 - c0);
        for i in 0..out.rows {
            let dst = &mut out.data[i * out.stride..(i + 1) * out.stride];
            extract_bits(self.row_words(r0 + i), c0, dst);
            if let Some(last) = dst.last_mut() {
                *last &= tail;
            }
        }
        out
    }

    /// Overwrites a block with `block`, top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &BinMat) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            let stride = self.stride;
            let dst = &mut self.data[(r0 + i) * stride..(r0 + i + 1) * stride];
            deposit_bits(dst, c0, block.row_words(i), block.cols);
        }
    }

    /// Copy truncated or zero-extended to `rows x cols`, keeping the top-left corner.
    pub fn resized(&self, rows: usize, cols: usize) -> BinMat {
        let mut out = BinMat::zeros(rows, cols);
        let w = self.stride.min(out.stride);
        for i in 0..rows.min(self.rows) {
            let dst = &mut out.data[i * out.stride..i * out.stride + w];
            dst.copy_from_slice(&self.row_words(i)[..w]);
            // Source padding is already zero when widening.
            if cols < self.cols && w > 0 {
                dst[w - 1] &= tail_mask(cols);
            }
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> BinMat {
        BinMat::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]))
    }

    pub fn hstack(&self, rhs: &BinMat) -> BinMat {
        assert_eq!(self.rows, rhs.rows);
        let mut m = BinMat::zeros(self.rows, self.cols + rhs.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, rhs);
        m
    }

    pub fn vstack(&self, rhs: &BinMat) -> BinMat {
        assert_eq!(self.cols, rhs.cols);
        let mut m = BinMat::zeros(self.rows + rhs.rows, self.cols);
        m.data[..self.data.len()].copy_from_slice(&self.data);
        m.data[self.data.len()..].copy_from_slice(&rhs.data);
        m
    }

    /// `[[a, 0], [0, b]]`
    pub fn block_diag(a: &BinMat, b: &BinMat) -> BinMat {
        let mut m = BinMat::zeros(a.rows + b.rows, a.cols + b.cols);
        m.set_block(0, 0, a);
        m.set_block(a.rows, a.cols, b);
        m
    }

    /// `[[a, b], [c, d]]` from equally compatible blocks.
    pub fn from_blocks(a: &BinMat, b: &BinMat, c: &BinMat, d: &BinMat) -> BinMat {
        assert!(a.rows == b.rows && c.rows == d.rows && a.cols == c.cols && b.cols == d.cols);
        let mut m = BinMat::zeros(a.rows + c.rows, a.cols + b.cols);
        m.set_block(0, 0, a);
        m.set_block(0, a.cols, b);
        m.set_block(a.rows, 0, c);
        m.set_block(a.rows, a.cols, d);
        m
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_reduce().len()
    }

    /// In-place reduced row echelon form. The pivot for each column is the
    /// lowest-index remaining row with a one there. Returns the pivot columns.
    fn row_reduce(&mut self) -> Vec<usize> {
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
                    self.add_row(r, i);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<BinMat> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = BinMat::identity(n);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| a.get(i, c)) else {
                return Err(Error::Singular { size: n, rank: self.rank() });
            };
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            for i in 0..n {
                if i != c && a.get(i, c) {
                    a.add_row(c, i);
                    inv.add_row(c, i);
                }
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// `true` iff `AᵀPA = P`.
    pub fn is_symplectic(&self, p: &BinMat) -> bool {
        self.symplectic_defect(p).is_none()
    }

    /// First entry `(i, j)` where `AᵀPA` differs from `P`.
    pub fn symplectic_defect(&self, p: &BinMat) -> Option<(usize, usize)> {
        if !self.is_square() || self.rows != p.rows || !p.is_square() {
            return Some((0, 0));
        }
        let g = &(&self.transpose() * p) * self;
        let diff = &g + p;
        (0..diff.rows).find_map(|i| diff.row(i).first_one().map(|j| (i, j)))
    }

    /// Kernel basis, range basis and rank.
    pub fn kernel_range_bases(&self) -> KernelRange {
        let mut r = self.clone();
        let pivots = r.row_reduce();
        let rank = pivots.len();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let kernel_cols: Vec<BinVec> = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BinVec::unit(self.cols, f);
                for (row, &pc) in pivots.iter().enumerate() {
                    if r.get(row, f) {
                        v.set(pc, true);
                    }
                }
                v
            })
            .collect();
        KernelRange { kernel: BinMat::from_cols(self.cols, &kernel_cols), range: self.select_cols(&pivots), rank }
    }

    /// Extends independent columns to an invertible square matrix.
    ///
    /// The given columns keep their positions at the front; the remaining
    /// columns are standard basis vectors `e_k` for every row `k` that is not
    /// a pivot of the given columns, in increasing `k`. Pivots are found by
    /// reducing each column against the earlier ones and taking its lowest
    /// set index.
    pub fn complete_to_invertible(&self) -> Result<BinMat> {
        let n = self.rows;
        let mut reduced: Vec<(usize, BinVec)> = Vec::with_capacity(self.cols);
        for j in 0..self.cols {
            let mut v = self.col(j);
            for (p, r) in &reduced {
                if v.get(*p) {
                    v ^= r;
                }
            }
            let Some(p) = v.first_one() else {
                return Err(Error::DependentColumns { column: j });
            };
            reduced.push((p, v));
        }
        let mut is_pivot = vec![false; n];
        for (p, _) in &reduced {
            is_pivot[*p] = true;
        }
        let mut out = BinMat::zeros(n, n);
        out.set_block(0, 0, self);
        for (j, k) in (self.cols..).zip((0..n).filter(|&k| !is_pivot[k])) {
            out.set(k, j, true);
        }
        Ok(out)
    }

    /// Renders rows of `'0'`/`'1'` characters separated by newlines.
    /// Bytes held by the packed row storage.
    pub fn heap_bytes(&self) -> usize {
        self.data.capacity() * std::mem::size_of::<u64>()
    }

    pub fn to_string01(&self) -> String {
        let mut s = String::with_capacity(self.rows * (self.cols + 1));
        for i in 0..self.rows {
            for j in 0..self.cols {
                s.push(if self.get(i, j) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for BinMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinMat {}x{}", self.rows, self.cols)?;
        f.write_str(&self.to_string01())
    }
}

impl Mul<&BinMat> for &BinMat {
    type Output = BinMat;

    /// Panics on dimension mismatch; see [`BinMat::try_mul`].
    fn mul(self, rhs: &BinMat) -> BinMat {
        self.try_mul(rhs).expect("matrix product dimension mismatch")
    }
}

impl Add<&BinMat> for &BinMat {
    type Output = BinMat;

    fn add(self, rhs: &BinMat) -> BinMat {
        self.try_add(rhs).expect("matrix sum dimension mismatch")
    }
}

/// Output of [`BinMat::kernel_range_bases`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelRange {
    /// Columns form a basis of `{x : Ax = 0}`.
    pub kernel: BinMat,
    /// Columns form a basis of `{Ax}`; they are the pivot columns of `A`.
    pub range: BinMat,
    pub rank: usize,
}

const M4RM_BITS: usize = 8;
const M4RM_TABLES: usize = 4;
const M4RM_COL_BLOCK: usize = 8;

/// Method of the four Russians: for every group of eight rows of `b`, all
/// 256 XOR combinations are tabulated once and then looked up by byte.
fn mul_m4rm(a: &BinMat, b: &BinMat) -> BinMat {
    let mut out = BinMat::zeros(a.rows, b.cols);
    if a.rows == 0 || b.cols == 0 || a.cols == 0 {
        return out;
    }
    let stride = b.stride;
    if a.rows < 32 || b.rows < 32 {
        for i in 0..a.rows {
            let dst = &mut out.data[i * stride..(i + 1) * stride];
            for k in iter_ones_words(a.row_words(i), a.cols) {
                xor_into(dst, b.row_words(k));
            }
        }
        return out;
    }
    // Output is processed in column blocks of M4RM_COL_BLOCK words so the
    // lookup tables and the touched output stay in cache. Each pass consumes
    // M4RM_TABLES groups of M4RM_BITS rows of `b`.
    type Block = [u64; M4RM_COL_BLOCK];
    let entries = 1usize << M4RM_BITS;
    let span = M4RM_BITS * M4RM_TABLES;
    let mut tables: Vec<Block> = vec![[0u64; M4RM_COL_BLOCK]; M4RM_TABLES * entries];
    let mut rows: Vec<Block> = vec![[0u64; M4RM_COL_BLOCK]; a.rows];
    for c0 in (0..stride).step_by(M4RM_COL_BLOCK) {
        let w = M4RM_COL_BLOCK.min(stride - c0);
        rows.iter_mut().for_each(|r| *r = [0; M4RM_COL_BLOCK]);
        for g0 in (0..b.rows).step_by(span) {
            let ntab = (b.rows - g0).min(span).div_ceil(M4RM_BITS);
            for t in 0..ntab {
                let base = g0 + t * M4RM_BITS;
                let gsize = M4RM_BITS.min(b.rows - base);
                let tab = &mut tables[t * entries..(t + 1) * entries];
                for m in 1usize..(1 << gsize) {
                    // entry m = entry (m without its top bit) ^ row(top bit)
                    let top = usize::BITS as usize - 1 - m.leading_zeros() as usize;
                    let mut e = tab[m ^ (1 << top)];
                    let row = &b.row_words(base + top)[c0..c0 + w];
                    for (d, r) in e.iter_mut().zip(row) {
                        *d ^= r;
                    }
                    tab[m] = e;
                }
                tab[1 << gsize..].fill([0; M4RM_COL_BLOCK]);
            }
            let word = g0 / WORD;
            let shift = g0 % WORD;
            for (i, acc) in rows.iter_mut().enumerate() {
                let bits = a.data[i * a.stride + word] >> shift;
                let bits = if span < WORD { bits & ((1u64 << span) - 1) } else { bits };
                if bits == 0 {
                    continue;
                }
                for t in 0..ntab {
                    let idx = ((bits >> (t * M4RM_BITS)) as usize) & (entries - 1);
                    let e = &tables[t * entries + idx];
                    for k in 0..M4RM_COL_BLOCK {
                        acc[k] ^= e[k];
                    }
                }
            }
        }
        for (i, acc) in rows.iter().enumerate() {
            out.data[i * stride + c0..i * stride + c0 + w].copy_from_slice(&acc[..w]);
        }
    }
    out
}

/// The fixed `2n x 2n` matrices `U = [[0, I], [0, 0]]` and `P = U + Uᵀ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructMatrices {
    pub n: usize,
    pub u: BinMat,
    pub p: BinMat,
}

impl StructMatrices {
    pub fn new(n: usize) -> Self {
        Self { n, u: upper_form(n), p: symplectic_form(n) }
    }
}

/// `U = [[0, I], [0, 0]]` of size `2n`.
pub fn upper_form(n: usize) -> BinMat {
    let mut u = BinMat::zeros(2 * n, 2 * n);
    for k in 0..n {
        u.set(k, n + k, true);
    }
    u
}

/// `P = [[0, I], [I, 0]]` of size `2n`.
pub fn symplectic_form(n: usize) -> BinMat {
    let mut p = BinMat::zeros(2 * n, 2 * n);
    for k in 0..n {
        p.set(k, n + k, true);
        p.set(n + k, k, true);
    }
    p
}

/// `aᵀ U a` for a `2n`-vector: the parity of positions where both halves are set.
pub fn utu(a: &BinVec) -> bool {
    u_form(a, a)
}

/// `xᵀ U y = Σ_k x_k y_{n+k}` (z-half of `x` against x-half of `y`).
pub fn u_form(x: &BinVec, y: &BinVec) -> bool {
    assert_eq!(x.len(), y.len());
    assert!(x.len().is_multiple_of(2));
    let n = x.len() / 2;
    (0..n).filter(|&k| x.get(k) && y.get(n + k)).count() % 2 == 1
}

/// Symplectic product `yᵀ P x`.
pub fn sym_form(x: &BinVec, y: &BinVec) -> bool {
    u_form(x, y) ^ u_form(y, x)
}
