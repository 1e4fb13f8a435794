//! Bit-packed vectors and matrices over GF(2).
//!
//! All public indices are 1-based: bit `1` is the leftmost bit of a vector and
//! `(1, 1)` is the top-left entry of a matrix. The packed word layout is an
//! implementation detail.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A fixed-length vector over GF(2).
///
/// Bits past `len` in the last storage word are always zero, so word-wise
/// comparisons and popcounts are exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// The indicator vector with a single one at 1-based position `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
            }
        }
        v
    }

    /// Builds a vector from 1-based positions of its one bits.
    pub fn from_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut v = Self::zeros(len);
        for i in ones {
            v.check_index(i)?;
            v.set(i, true);
        }
        Ok(v)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index == 0 || index > self.len {
            Err(Error::IndexOutOfRange {
                index,
                len: self.len,
            })
        } else {
            Ok(())
        }
    }

    /// Bit at 1-based `index`.
    ///
    /// Panics if `index` is outside `1..=len`.
    #[inline]
    pub fn get(&self, index: usize) -> bool {
        assert!(
            index >= 1 && index <= self.len,
            "bit index {index} out of range 1..={}",
            self.len
        );
        let i = index - 1;
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, index: usize, value: bool) {
        assert!(
            index >= 1 && index <= self.len,
            "bit index {index} out of range 1..={}",
            self.len
        );
        let i = index - 1;
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, index: usize) {
        assert!(
            index >= 1 && index <= self.len,
            "bit index {index} out of range 1..={}",
            self.len
        );
        let i = index - 1;
        self.words[i / WORD_BITS] ^= 1 << (i % WORD_BITS);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// 1-based positions of the one bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD_BITS + bit + 1)
            })
        })
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (1..=self.len).map(|i| self.get(i)).collect()
    }

    pub fn xor_assign(&mut self, other: &BitVector) -> Result<()> {
        if self.len != other.len {
            return Err(Error::DimensionMismatch {
                context: "vector xor",
                expected: self.len,
                found: other.len,
            });
        }
        self.xor_words(&other.words);
        Ok(())
    }

    pub fn xor(&self, other: &BitVector) -> Result<BitVector> {
        let mut out = self.clone();
        out.xor_assign(other)?;
        Ok(out)
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> Result<bool> {
        if self.len != other.len {
            return Err(Error::DimensionMismatch {
                context: "vector dot product",
                expected: self.len,
                found: other.len,
            });
        }
        Ok(self.dot_words(&other.words))
    }

    /// Packed storage, least significant bit of word 0 is bit 1.
    #[inline]
    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub(crate) fn xor_words(&mut self, other: &[u64]) {
        for (a, b) in self.words.iter_mut().zip(other) {
            *a ^= b;
        }
    }

    #[inline]
    fn dot_words(&self, other: &[u64]) -> bool {
        let ones: u32 = self
            .words
            .iter()
            .zip(other)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    /// Sub-vector covering 1-based positions `start..=end`.
    pub fn slice(&self, start: usize, end: usize) -> Result<BitVector> {
        if start == 0 || end > self.len || start > end + 1 {
            return Err(Error::IndexOutOfRange {
                index: if start == 0 { 0 } else { end },
                len: self.len,
            });
        }
        let mut out = BitVector::zeros(end + 1 - start);
        for (j, i) in (start..=end).enumerate() {
            if self.get(i) {
                out.set(j + 1, true);
            }
        }
        Ok(out)
    }

    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    /// Parses a string of `0`/`1` characters, leftmost character is bit 1.
    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for (pos, ch) in s.chars().enumerate() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => {
                    return Err(Error::Parse {
                        line: 1,
                        message: format!("unexpected character {other:?} at column {}", pos + 1),
                    })
                }
            }
        }
        Ok(BitVector::from_bits(&bits))
    }
}

/// A dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

/// Output of [`BitMatrix::row_reduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReduction {
    pub rref: BitMatrix,
    pub rank: usize,
    /// 1-based pivot column of each nonzero row of `rref`, ascending.
    pub pivot_cols: Vec<usize>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (1..=n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    /// Stacks `rows` into a matrix with `cols` columns.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                context: "matrix row length",
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self { cols, rows })
    }

    /// Builds a matrix from a row-major 0/1 table.
    pub fn from_table(table: &[Vec<u8>]) -> Result<Self> {
        let cols = table.first().map_or(0, |r| r.len());
        let rows = table
            .iter()
            .map(|r| BitVector::from_bits(&r.iter().map(|&b| b & 1 == 1).collect::<Vec<_>>()))
            .collect();
        Self::from_rows(cols, rows)
    }

    #[inline]
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.rows[row - 1].get(col)
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.rows[row - 1].set(col, value);
    }

    /// Row at 1-based `index`.
    pub fn row(&self, index: usize) -> &BitVector {
        &self.rows[index - 1]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &BitVector> {
        self.rows.iter()
    }

    /// Column at 1-based `index`, as a vector of length `num_rows`.
    pub fn column(&self, index: usize) -> BitVector {
        let mut out = BitVector::zeros(self.num_rows());
        for (r, row) in self.rows.iter().enumerate() {
            if row.get(index) {
                out.set(r + 1, true);
            }
        }
        out
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.cols, self.num_rows());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                out.rows[c - 1].set(r + 1, true);
            }
        }
        out
    }

    /// `M · vᵀ`: entry `i` is the parity of `row_i AND v`.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix-vector product",
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = BitVector::zeros(self.num_rows());
        for (r, row) in self.rows.iter().enumerate() {
            if row.dot_words(v.words()) {
                out.set(r + 1, true);
            }
        }
        Ok(out)
    }

    /// Row vector times matrix, `v · M`: the XOR of the rows selected by `v`.
    pub fn vec_mul(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.num_rows() {
            return Err(Error::DimensionMismatch {
                context: "vector-matrix product",
                expected: self.num_rows(),
                found: v.len(),
            });
        }
        let mut out = BitVector::zeros(self.cols);
        for r in v.ones() {
            out.xor_words(self.rows[r - 1].words());
        }
        Ok(out)
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.num_rows() {
            return Err(Error::DimensionMismatch {
                context: "matrix product",
                expected: self.cols,
                found: other.num_rows(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|row| other.vec_mul(row))
            .collect::<Result<Vec<_>>>()?;
        Ok(BitMatrix {
            cols: other.cols,
            rows,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    /// Reduced row echelon form by Gauss-Jordan elimination.
    pub fn row_reduce(&self) -> RowReduction {
        let mut rows = self.rows.clone();
        let mut pivot_cols = Vec::new();
        let mut rank = 0;
        for col in 1..=self.cols {
            if rank == rows.len() {
                break;
            }
            let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    row.xor_words(pivot.words());
                }
            }
            pivot_cols.push(col);
            rank += 1;
        }
        RowReduction {
            rref: BitMatrix {
                cols: self.cols,
                rows,
            },
            rank,
            pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().rank
    }

    /// Basis of `{x : self · xᵀ = 0}` as the rows of a `(cols − rank) × cols` matrix.
    ///
    /// Rejects inputs without full row rank.
    pub fn null_space_basis(&self) -> Result<BitMatrix> {
        let red = self.row_reduce();
        if red.rank != self.num_rows() {
            return Err(Error::RankDeficient {
                rank: red.rank,
                required: self.num_rows(),
            });
        }
        let mut is_pivot = vec![false; self.cols + 1];
        for &c in &red.pivot_cols {
            is_pivot[c] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - red.rank);
        for free in (1..=self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVector::unit(self.cols, free);
            for (r, &pc) in red.pivot_cols.iter().enumerate() {
                if red.rref.rows[r].get(free) {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        BitMatrix::from_rows(self.cols, basis)
    }

    /// An `cols × rows` matrix `X` with `self · X = I`.
    ///
    /// `X` is supported on the pivot rows of the row reduction; it is zero
    /// elsewhere. Rejects inputs without full row rank.
    pub fn right_inverse(&self) -> Result<BitMatrix> {
        let k = self.num_rows();
        let red = self.row_reduce();
        if red.rank != k {
            return Err(Error::RankDeficient {
                rank: red.rank,
                required: k,
            });
        }
        // Square k×k block on the pivot columns, inverted via [A | I] → [I | A⁻¹].
        let mut aug: Vec<BitVector> = self
            .rows
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let mut v = BitVector::zeros(2 * k);
                for (j, &pc) in red.pivot_cols.iter().enumerate() {
                    if row.get(pc) {
                        v.set(j + 1, true);
                    }
                }
                v.set(k + r + 1, true);
                v
            })
            .collect();
        for col in 1..=k {
            let p = (col - 1..k)
                .find(|&r| aug[r].get(col))
                .expect("pivot block is invertible by construction");
            aug.swap(col - 1, p);
            let pivot = aug[col - 1].clone();
            for (r, row) in aug.iter_mut().enumerate() {
                if r != col - 1 && row.get(col) {
                    row.xor_words(pivot.words());
                }
            }
        }
        let mut inv = BitMatrix::zeros(self.cols, k);
        for (j, &pc) in red.pivot_cols.iter().enumerate() {
            for c in 1..=k {
                if aug[j].get(k + c) {
                    inv.set(pc, c, true);
                }
            }
        }
        Ok(inv)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.num_rows() != other.num_rows() {
            return Err(Error::DimensionMismatch {
                context: "horizontal concatenation",
                expected: self.num_rows(),
                found: other.num_rows(),
            });
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.concat(b))
            .collect();
        Ok(BitMatrix {
            cols: self.cols + other.cols,
            rows,
        })
    }

    /// Keeps the 1-based rows listed in `indices`, in that order.
    pub fn select_rows(&self, indices: &[usize]) -> Result<BitMatrix> {
        let mut rows = Vec::with_capacity(indices.len());
        for &i in indices {
            if i == 0 || i > self.num_rows() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: self.num_rows(),
                });
            }
            rows.push(self.rows[i - 1].clone());
        }
        Ok(BitMatrix {
            cols: self.cols,
            rows,
        })
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.num_rows(), self.cols)?;
        for row in &self.rows {
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}

/// `M · vᵀ`.
pub fn mat_vec_mul(m: &BitMatrix, v: &BitVector) -> Result<BitVector> {
    m.mul_vec(v)
}

/// Syndrome `H · vᵀ`; zero exactly when `v` satisfies every parity check.
pub fn syndrome(h: &BitMatrix, v: &BitVector) -> Result<BitVector> {
    h.mul_vec(v)
}

pub fn is_codeword(h: &BitMatrix, c: &BitVector) -> Result<bool> {
    Ok(syndrome(h, c)?.is_zero())
}

/// Codeword `u · G`.
pub fn encode(u: &BitVector, g: &BitMatrix) -> Result<BitVector> {
    g.vec_mul(u)
}
