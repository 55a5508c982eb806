//! Dense bit-packed linear algebra over GF(2).
//!
//! Every homology computation in this crate reduces to ranks and kernels
//! of GF(2) matrices, so this module is deliberately small and completely
//! deterministic: elimination always takes the first available pivot, and
//! every [`Subspace`] is stored in reduced row echelon form. Two subspaces
//! are equal iff their stored bases are equal word for word, which is what
//! lets canonical bases be frozen into tests and golden files.
//!
//! Rows are packed 64 columns to a `u64` word. Matrices at desk scale stay
//! well under ~10^4 columns, where dense packing beats any sparse scheme.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

// ================================================================
// BitVec
// ================================================================

/// Fixed-length vector over GF(2).
///
/// Trailing bits of the last word are kept zero, so derived equality and
/// hashing are sound.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    #[must_use]
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Vector with ones exactly at `ones`.
    ///
    /// # Panics
    /// Panics if an index is out of range.
    #[must_use]
    pub fn from_indices(len: usize, ones: &[usize]) -> Self {
        let mut v = BitVec::zeros(len);
        for &i in ones {
            assert!(i < len, "bit index {i} out of range {len}");
            v.set(i, true);
        }
        v
    }

    /// Vector from 0/1 entries; any nonzero byte counts as a one.
    #[must_use]
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.len
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[must_use]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    /// Adds `other` in place. Lengths must match.
    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "xor of bit vectors of unequal length");
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[must_use]
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of the one bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rem = w;
            std::iter::from_fn(move || {
                if rem == 0 {
                    None
                } else {
                    let tz = rem.trailing_zeros() as usize;
                    rem &= rem - 1;
                    Some(wi * WORD + tz)
                }
            })
        })
    }

    #[must_use]
    pub fn first_one(&self) -> Option<usize> {
        self.ones().next()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

// ================================================================
// BitMatrix
// ================================================================

/// Dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    wpr: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let wpr = words_for(cols);
        BitMatrix {
            rows,
            cols,
            wpr,
            bits: vec![0; rows * wpr],
        }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Permutation matrix sending basis vector `i` to basis vector
    /// `perm[i]` (entry `(perm[i], i)` is set).
    ///
    /// # Panics
    /// Panics if `perm` is not a permutation of `0..perm.len()`.
    #[must_use]
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = BitMatrix::zeros(n, n);
        let mut seen = vec![false; n];
        for (i, &target) in perm.iter().enumerate() {
            assert!(target < n && !seen[target], "not a permutation");
            seen[target] = true;
            m.set(target, i, true);
        }
        m
    }

    /// Matrix from dense 0/1 rows; any nonzero byte counts as a one.
    ///
    /// # Panics
    /// Panics if the rows are ragged.
    #[must_use]
    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, &b) in row.iter().enumerate() {
                if b != 0 {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Matrix whose rows are the given vectors (all of equal length `cols`).
    #[must_use]
    pub fn from_bitvec_rows(cols: usize, rows: &[BitVec]) -> Self {
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            m.set_row(r, v);
        }
        m
    }

    #[must_use]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[must_use]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[must_use]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        self.bits[r * self.wpr + c / WORD] >> (c % WORD) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let mask = 1u64 << (c % WORD);
        let w = &mut self.bits[r * self.wpr + c / WORD];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        debug_assert!(r < self.rows && c < self.cols);
        self.bits[r * self.wpr + c / WORD] ^= 1u64 << (c % WORD);
    }

    #[must_use]
    pub fn row(&self, r: usize) -> BitVec {
        BitVec {
            len: self.cols,
            words: self.bits[r * self.wpr..(r + 1) * self.wpr].to_vec(),
        }
    }

    pub fn set_row(&mut self, r: usize, v: &BitVec) {
        assert_eq!(v.len, self.cols);
        self.bits[r * self.wpr..(r + 1) * self.wpr].copy_from_slice(&v.words);
    }

    /// Adds row `src` into row `dst`.
    pub fn row_xor_assign(&mut self, dst: usize, src: usize) {
        debug_assert!(dst != src);
        let (a, b) = (dst * self.wpr, src * self.wpr);
        for k in 0..self.wpr {
            let w = self.bits[b + k];
            self.bits[a + k] ^= w;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.wpr {
            self.bits.swap(a * self.wpr + k, b * self.wpr + k);
        }
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    #[must_use]
    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row_ones(r) {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Indices of the ones in row `r`, ascending.
    pub fn row_ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(r).iter().enumerate().flat_map(|(wi, &w)| {
            let mut rem = w;
            std::iter::from_fn(move || {
                if rem == 0 {
                    None
                } else {
                    let tz = rem.trailing_zeros() as usize;
                    rem &= rem - 1;
                    Some(wi * WORD + tz)
                }
            })
        })
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.bits[r * self.wpr..(r + 1) * self.wpr]
    }

    /// Matrix product over GF(2).
    ///
    /// # Panics
    /// Panics on a shape mismatch.
    #[must_use]
    pub fn mul(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut out = BitMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in self.row_ones(r) {
                let (dst, src) = (r * out.wpr, k * rhs.wpr);
                for w in 0..out.wpr {
                    let v = rhs.bits[src + w];
                    out.bits[dst + w] ^= v;
                }
            }
        }
        out
    }

    /// Matrix-vector product over GF(2).
    #[must_use]
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(self.cols, v.len, "shape mismatch in matrix-vector product");
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let mut acc = 0u64;
            for (w, x) in self.row_words(r).iter().zip(&v.words) {
                acc ^= w & x;
            }
            if acc.count_ones() % 2 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    /// Horizontal concatenation `[self | rhs]`.
    #[must_use]
    pub fn hstack(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(self.rows, rhs.rows);
        let mut out = BitMatrix::zeros(self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in self.row_ones(r) {
                out.set(r, c, true);
            }
            for c in rhs.row_ones(r) {
                out.set(r, self.cols + c, true);
            }
        }
        out
    }

    /// Vertical concatenation, `self` on top.
    #[must_use]
    pub fn vstack(&self, below: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, below.cols);
        let mut out = BitMatrix::zeros(self.rows + below.rows, self.cols);
        out.bits[..self.bits.len()].copy_from_slice(&self.bits);
        out.bits[self.bits.len()..].copy_from_slice(&below.bits);
        out
    }

    /// Contiguous submatrix.
    #[must_use]
    pub fn submatrix(
        &self,
        rows: std::ops::Range<usize>,
        cols: std::ops::Range<usize>,
    ) -> BitMatrix {
        assert!(rows.end <= self.rows && cols.end <= self.cols);
        let mut out = BitMatrix::zeros(rows.len(), cols.len());
        for (ri, r) in rows.clone().enumerate() {
            for c in self.row_ones(r) {
                if cols.contains(&c) {
                    out.set(ri, c - cols.start, true);
                }
            }
        }
        out
    }

    /// Rank via forward elimination with first-nonzero pivoting.
    #[must_use]
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c)) else {
                continue;
            };
            m.swap_rows(r, pr);
            for i in r + 1..m.rows {
                if m.get(i, c) {
                    m.row_xor_assign(i, r);
                }
            }
            r += 1;
        }
        r
    }

    /// Reduced row echelon form and the pivot columns, ascending.
    ///
    /// First-nonzero pivoting makes the result canonical: equal row spaces
    /// produce identical reduced matrices.
    #[must_use]
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c)) else {
                continue;
            };
            m.swap_rows(r, pr);
            for i in 0..m.rows {
                if i != r && m.get(i, c) {
                    m.row_xor_assign(i, r);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Canonical basis of the null space `{x : Mx = 0}`.
    ///
    /// One basis vector per free column, ascending by free column index.
    #[must_use]
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let (rref, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for (f, _) in is_pivot.iter().enumerate().filter(|(_, &pivot)| !pivot) {
            let mut v = BitVec::zeros(self.cols);
            v.set(f, true);
            for (row, &p) in pivots.iter().enumerate() {
                if rref.get(row, f) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", u8::from(self.get(r, c)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

// ================================================================
// Subspace
// ================================================================

/// Subspace of GF(2)^n held as a canonical basis.
///
/// The basis matrix is in reduced row echelon form with no zero rows, so
/// structural equality coincides with equality of subspaces.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: BitMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    #[must_use]
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: BitMatrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    #[must_use]
    pub fn full(ambient: usize) -> Self {
        Subspace::from_rows(&BitMatrix::identity(ambient))
    }

    /// Span of the given vectors.
    #[must_use]
    pub fn span(ambient: usize, vectors: &[BitVec]) -> Self {
        Subspace::from_rows(&BitMatrix::from_bitvec_rows(ambient, vectors))
    }

    /// Row space of a matrix.
    #[must_use]
    pub fn from_rows(m: &BitMatrix) -> Self {
        let (rref, pivots) = m.rref();
        let basis = rref.submatrix(0..pivots.len(), 0..m.cols());
        Subspace {
            ambient: m.cols(),
            basis,
            pivots,
        }
    }

    /// Column space of a matrix.
    #[must_use]
    pub fn column_space(m: &BitMatrix) -> Self {
        Subspace::from_rows(&m.transpose())
    }

    #[must_use]
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    #[must_use]
    pub fn basis_matrix(&self) -> &BitMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = BitVec> + '_ {
        (0..self.dim()).map(|r| self.basis.row(r))
    }

    /// Canonical residual of `v` after reduction by the basis.
    ///
    /// The residual is zero iff `v` lies in the subspace.
    #[must_use]
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.ambient);
        let mut w = v.clone();
        for (row, &p) in self.pivots.iter().enumerate() {
            if w.get(p) {
                w.xor_assign(&self.basis.row(row));
            }
        }
        w
    }

    #[must_use]
    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    #[must_use]
    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().all(|v| self.contains(&v))
    }

    #[must_use]
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Subspace::from_rows(&self.basis.vstack(&other.basis))
    }

    /// Intersection via the kernel of `[A^T | B^T]`.
    #[must_use]
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let stacked = self.basis.transpose().hstack(&other.basis.transpose());
        let vectors: Vec<BitVec> = stacked
            .kernel_basis()
            .into_iter()
            .map(|lambda_mu| {
                let mut v = BitVec::zeros(self.ambient);
                for i in lambda_mu.ones().take_while(|&i| i < self.dim()) {
                    v.xor_assign(&self.basis.row(i));
                }
                v
            })
            .collect();
        Subspace::span(self.ambient, &vectors)
    }

    /// Preimage `{x : Mx in self}` under a map into this ambient space.
    ///
    /// # Panics
    /// Panics if `m` does not map into this ambient space.
    #[must_use]
    pub fn preimage(&self, m: &BitMatrix) -> Subspace {
        assert_eq!(m.rows(), self.ambient, "map does not land in this space");
        // Membership in `self` is the vanishing of the linear residual map
        // R(v) = v + sum_j v[pivot_j] * basis_j, so the preimage is ker(R M).
        let mut residual = BitMatrix::identity(self.ambient);
        for (row, &p) in self.pivots.iter().enumerate() {
            for i in self.basis.row_ones(row) {
                residual.flip(i, p);
            }
        }
        let vectors = residual.mul(m).kernel_basis();
        Subspace::span(m.cols(), &vectors)
    }

    /// Image `{Mx : x in self}` under a map out of this ambient space.
    #[must_use]
    pub fn image(&self, m: &BitMatrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient, "map is not defined on this space");
        let vectors: Vec<BitVec> = self.basis_vectors().map(|v| m.mul_vec(&v)).collect();
        Subspace::span(m.rows(), &vectors)
    }

    /// Dimension of `self / sub`, after checking containment.
    pub fn quotient_dim(&self, sub: &Subspace) -> Result<usize> {
        if sub.ambient != self.ambient || !self.contains_subspace(sub) {
            return Err(Error::NotASubspace);
        }
        Ok(self.dim() - sub.dim())
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} of GF(2)^{}):\n{:?}",
            self.dim(),
            self.ambient,
            self.basis
        )
    }
}
