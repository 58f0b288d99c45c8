//! Packed binary linear algebra over GF(2).
//!
//! Bit vectors and matrices are stored as little-endian `u64` words (bit `i`
//! of a vector lives at word `i / 64`, bit `i % 64`). All row/column indices
//! are zero-based. Unused high bits of the last word are kept at zero, which
//! lets `weight` and equality work directly on the packed words.

use std::fmt;

const WORD_BITS: usize = 64;

#[inline]
const fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// Mask selecting the valid bits of the final word of a `len`-bit payload.
#[inline]
const fn tail_mask(len: usize) -> u64 {
    let rem = len % WORD_BITS;
    if rem == 0 {
        u64::MAX
    } else {
        (1u64 << rem) - 1
    }
}

// ============================================================================
// BitVector
// ============================================================================

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    /// All-zero vector of the given length.
    #[must_use]
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Builds a vector from booleans.
    #[must_use]
    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector of the given length with ones at `indices`.
    #[must_use]
    pub fn from_indices(len: usize, indices: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in indices {
            v.set(i, true);
        }
        v
    }

    /// Uniformly random vector.
    #[must_use]
    pub fn random<R: rand::Rng>(len: usize, rng: &mut R) -> Self {
        let mut words: Vec<u64> = (0..words_for(len)).map(|_| rng.gen()).collect();
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(len);
        }
        Self { len, words }
    }

    #[inline]
    #[must_use]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    #[must_use]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// Number of set bits.
    #[inline]
    #[must_use]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// In-place XOR with another vector of the same length.
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    #[must_use]
    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// In-place XOR with a raw word slice of the same word length.
    #[inline]
    pub fn xor_assign_words(&mut self, words: &[u64]) {
        debug_assert_eq!(self.words.len(), words.len());
        for (a, b) in self.words.iter_mut().zip(words) {
            *a ^= b;
        }
    }

    /// Iterates over the indices of set bits in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + bit)
                }
            })
        })
    }

    #[inline]
    #[must_use]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Copies bits `range.start..range.end` into a new vector.
    #[must_use]
    pub fn slice(&self, start: usize, end: usize) -> Self {
        assert!(start <= end && end <= self.len, "bad slice {start}..{end}");
        let mut out = Self::zeros(end - start);
        for i in start..end {
            if self.get(i) {
                out.set(i - start, true);
            }
        }
        out
    }

    /// Concatenation `[self | other]`.
    #[must_use]
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Dot product over GF(2).
    #[inline]
    #[must_use]
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        write!(f, "BitVector({s})")
    }
}

// ============================================================================
// Permutation
// ============================================================================

/// A permutation of `{0..size}` acting on row vectors from the right.
///
/// `apply` realizes `v · Π` where output position `j` takes input position
/// `map[j]`. Treated as a matrix, `Π` has a one at `(map[j], j)`, so the
/// inverse permutation plays the role of `Π^T`.
#[derive(Clone, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    #[must_use]
    pub fn identity(size: usize) -> Self {
        Self {
            map: (0..size).collect(),
        }
    }

    /// Builds from an explicit mapping; `map[j]` is the source index of
    /// output position `j`. Panics unless `map` is a bijection.
    #[must_use]
    pub fn from_mapping(map: Vec<usize>) -> Self {
        let mut seen = vec![false; map.len()];
        for &i in &map {
            assert!(i < map.len() && !seen[i], "mapping is not a bijection");
            seen[i] = true;
        }
        Self { map }
    }

    #[inline]
    #[must_use]
    pub fn size(&self) -> usize {
        self.map.len()
    }

    /// Source index feeding output position `j`.
    #[inline]
    #[must_use]
    pub fn source_of(&self, j: usize) -> usize {
        self.map[j]
    }

    /// `v · Π`.
    #[must_use]
    pub fn apply_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.size(), "length mismatch in apply_vec");
        let mut out = BitVector::zeros(v.len());
        for (j, &i) in self.map.iter().enumerate() {
            if v.get(i) {
                out.set(j, true);
            }
        }
        out
    }

    /// Reorders an arbitrary slice the same way `apply_vec` reorders bits.
    #[must_use]
    pub fn apply_slice<T: Copy>(&self, xs: &[T]) -> Vec<T> {
        assert_eq!(xs.len(), self.size(), "length mismatch in apply_slice");
        self.map.iter().map(|&i| xs[i]).collect()
    }

    #[must_use]
    pub fn inverse(&self) -> Self {
        let mut inv = vec![0usize; self.map.len()];
        for (j, &i) in self.map.iter().enumerate() {
            inv[i] = j;
        }
        Self { map: inv }
    }

    /// Composition: applying the result equals applying `self`, then `then`
    /// (`v · Π_self · Π_then`).
    #[must_use]
    pub fn compose(&self, then: &Permutation) -> Self {
        assert_eq!(self.size(), then.size(), "size mismatch in compose");
        Self {
            map: then.map.iter().map(|&j| self.map[j]).collect(),
        }
    }

    pub fn swap_targets(&mut self, a: usize, b: usize) {
        self.map.swap(a, b);
    }

    /// Dense matrix form (mainly for tests).
    #[must_use]
    pub fn to_matrix(&self) -> BitMatrix {
        let n = self.size();
        let mut m = BitMatrix::zeros(n, n);
        for (j, &i) in self.map.iter().enumerate() {
            m.set(i, j, true);
        }
        m
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({:?})", self.map)
    }
}

// ============================================================================
// BitMatrix
// ============================================================================

/// A dense matrix over GF(2), row-major with padded rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    wpr: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let wpr = words_for(cols);
        Self {
            rows,
            cols,
            wpr,
            words: vec![0; rows * wpr],
        }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    #[must_use]
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Builds from rows, which must all share one length.
    #[must_use]
    pub fn from_rows(rows: &[BitVector]) -> Self {
        let cols = rows.first().map_or(0, BitVector::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            assert_eq!(v.len(), cols, "ragged rows");
            m.words[r * m.wpr..(r + 1) * m.wpr].copy_from_slice(v.words());
        }
        m
    }

    /// Uniformly random matrix.
    #[must_use]
    pub fn random<R: rand::Rng>(rows: usize, cols: usize, rng: &mut R) -> Self {
        let mut m = Self::zeros(rows, cols);
        let mask = tail_mask(cols);
        for r in 0..rows {
            for w in 0..m.wpr {
                m.words[r * m.wpr + w] = rng.gen();
            }
            if m.wpr > 0 {
                m.words[r * m.wpr + m.wpr - 1] &= mask;
            }
        }
        m
    }

    #[inline]
    #[must_use]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    #[must_use]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    #[must_use]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        (self.words[r * self.wpr + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        let mask = 1u64 << (c % WORD_BITS);
        let w = &mut self.words[r * self.wpr + c / WORD_BITS];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    /// Packed words of row `r`.
    #[inline]
    #[must_use]
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.words[r * self.wpr..(r + 1) * self.wpr]
    }

    /// Row `r` as an owned vector.
    #[must_use]
    pub fn row(&self, r: usize) -> BitVector {
        BitVector {
            len: self.cols,
            words: self.row_words(r).to_vec(),
        }
    }

    /// Column `c` as an owned vector.
    #[must_use]
    pub fn col(&self, c: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    /// XORs row `src` into row `dst`.
    pub fn xor_rows(&mut self, dst: usize, src: usize) {
        assert!(dst != src, "xor_rows onto itself");
        let (a, b) = if dst < src {
            let (lo, hi) = self.words.split_at_mut(src * self.wpr);
            (&mut lo[dst * self.wpr..(dst + 1) * self.wpr], &hi[..self.wpr])
        } else {
            let (lo, hi) = self.words.split_at_mut(dst * self.wpr);
            (&mut hi[..self.wpr], &lo[src * self.wpr..(src + 1) * self.wpr])
        };
        for (x, y) in a.iter_mut().zip(b) {
            *x ^= y;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.wpr {
            self.words.swap(a * self.wpr + w, b * self.wpr + w);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            let x = self.get(r, a);
            let y = self.get(r, b);
            self.set(r, a, y);
            self.set(r, b, x);
        }
    }

    /// `v · self` for a row vector `v` of length `rows`.
    #[must_use]
    pub fn vec_mul(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.rows, "dimension mismatch in vec_mul");
        let mut out = BitVector::zeros(self.cols);
        for r in v.ones() {
            out.xor_assign_words(self.row_words(r));
        }
        out
    }

    /// `self · v^T` for a vector `v` of length `cols`; returns length `rows`.
    #[must_use]
    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.cols, "dimension mismatch in mul_vec");
        let mut out = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            let mut acc = 0u64;
            for (a, b) in self.row_words(r).iter().zip(v.words()) {
                acc ^= a & b;
            }
            if acc.count_ones() % 2 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    /// Matrix product `self · other`.
    #[must_use]
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let mut acc = vec![0u64; other.wpr];
            for c in self.row(r).ones() {
                for (x, y) in acc.iter_mut().zip(other.row_words(c)) {
                    *x ^= y;
                }
            }
            out.words[r * out.wpr..(r + 1) * out.wpr].copy_from_slice(&acc);
        }
        out
    }

    #[must_use]
    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).ones() {
                out.set(c, r, true);
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    #[must_use]
    pub fn hstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        BitMatrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c)
            } else {
                other.get(r, c - self.cols)
            }
        })
    }

    /// Vertical concatenation `[self; other]`.
    #[must_use]
    pub fn vstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut rows: Vec<BitVector> = (0..self.rows).map(|r| self.row(r)).collect();
        rows.extend((0..other.rows).map(|r| other.row(r)));
        let mut m = BitMatrix::from_rows(&rows);
        m.cols = self.cols;
        m
    }

    /// Copies the block `rows.start..rows.end` x `cols.start..cols.end`.
    #[must_use]
    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> BitMatrix {
        assert!(rows.end <= self.rows && cols.end <= self.cols, "block out of range");
        BitMatrix::from_fn(rows.len(), cols.len(), |r, c| {
            self.get(rows.start + r, cols.start + c)
        })
    }

    /// Column permutation `self · Π`.
    #[must_use]
    pub fn permute_cols(&self, pi: &Permutation) -> BitMatrix {
        assert_eq!(pi.size(), self.cols, "permutation size mismatch");
        BitMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, pi.source_of(c)))
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        ge_systematic(self).rank
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix({}x{})", self.rows, self.cols)?;
        for r in 0..self.rows {
            let s: String = (0..self.cols)
                .map(|c| if self.get(r, c) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

// ============================================================================
// Gaussian elimination
// ============================================================================

/// Result of [`ge_systematic`]: `E · A · Π = R` with `R` in reduced echelon
/// form whose leading `rank x rank` block is the identity.
pub struct GeResult {
    /// Invertible row-operation matrix (rows x rows).
    pub e: BitMatrix,
    /// Column permutation.
    pub pi: Permutation,
    /// Rank of `A`.
    pub rank: usize,
    /// Reduced echelon form of `A` under `E` and `Π`.
    pub r: BitMatrix,
}

/// Gaussian elimination with full row reduction and column pivoting.
///
/// Scans pivot columns left to right; when the current column has no usable
/// one at or below the pivot row, the nearest independent column to its
/// right is swapped in. Row swaps and eliminations are mirrored into `E`, so
/// `E · A · Π = R` holds exactly. Rows below `rank` end up all-zero and the
/// leading block of `R` is the identity.
#[must_use]
pub fn ge_systematic(a: &BitMatrix) -> GeResult {
    assert!(a.rows > 0 && a.cols > 0, "ge_systematic on empty matrix");
    let mut r = a.clone();
    let mut e = BitMatrix::identity(a.rows);
    let mut pi = Permutation::identity(a.cols);
    let mut rank = 0;

    for pivot in 0..a.rows.min(a.cols) {
        // Nearest column at or right of `pivot` with a one in rows >= pivot.
        let mut found = None;
        'cols: for c in pivot..a.cols {
            for row in pivot..a.rows {
                if r.get(row, c) {
                    found = Some((c, row));
                    break 'cols;
                }
            }
        }
        let Some((col, row)) = found else { break };
        if col != pivot {
            r.swap_cols(pivot, col);
            pi.swap_targets(pivot, col);
        }
        if row != pivot {
            r.swap_rows(pivot, row);
            e.swap_rows(pivot, row);
        }
        for other in 0..a.rows {
            if other != pivot && r.get(other, pivot) {
                r.xor_rows(other, pivot);
                e.xor_rows(other, pivot);
            }
        }
        rank = pivot + 1;
    }

    GeResult { e, pi, rank, r }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitvector_basics() {
        let mut v = BitVector::zeros(70);
        assert_eq!(v.len(), 70);
        assert!(v.is_zero());
        v.set(0, true);
        v.set(69, true);
        v.flip(3);
        assert_eq!(v.weight(), 3);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 3, 69]);
        v.flip(3);
        assert_eq!(v.weight(), 2);
        let w = BitVector::from_indices(70, &[0, 1]);
        let x = v.xor(&w);
        assert_eq!(x.ones().collect::<Vec<_>>(), vec![1, 69]);
        assert_eq!(BitVector::from_bools(&[true, false, true, true]).weight(), 3);
    }

    #[test]
    fn xor_self_inverse() {
        let mut rng = rand_chacha::ChaCha8Rng::from_seed([7; 32]);
        use rand::SeedableRng;
        let v = BitVector::random(130, &mut rng);
        let w = BitVector::random(130, &mut rng);
        assert_eq!(v.xor(&w).xor(&w), v);
    }

    #[test]
    fn slice_and_concat_roundtrip() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let v = BitVector::random(100, &mut rng);
        let (a, b) = (v.slice(0, 37), v.slice(37, 100));
        assert_eq!(a.concat(&b), v);
    }

    #[test]
    fn permutation_roundtrip_and_compose() {
        let p = Permutation::from_mapping(vec![2, 0, 3, 1]);
        let v = BitVector::from_bools(&[true, false, false, true]);
        let pv = p.apply_vec(&v);
        assert_eq!(p.inverse().apply_vec(&pv), v);
        let q = Permutation::from_mapping(vec![1, 2, 3, 0]);
        let lhs = q.apply_vec(&p.apply_vec(&v));
        let rhs = p.compose(&q).apply_vec(&v);
        assert_eq!(lhs, rhs);
        // Matrix forms compose the same way.
        let mp = p.to_matrix().mul(&q.to_matrix());
        assert_eq!(mp, p.compose(&q).to_matrix());
    }

    #[test]
    fn matvec_against_bit_serial() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let a = BitMatrix::random(9, 13, &mut rng);
            let v = BitVector::random(9, &mut rng);
            let fast = a.vec_mul(&v);
            for c in 0..13 {
                let mut bit = false;
                for r in 0..9 {
                    bit ^= v.get(r) && a.get(r, c);
                }
                assert_eq!(fast.get(c), bit);
            }
            let w = BitVector::random(13, &mut rng);
            let fast2 = a.mul_vec(&w);
            for r in 0..9 {
                let mut bit = false;
                for c in 0..13 {
                    bit ^= w.get(c) && a.get(r, c);
                }
                assert_eq!(fast2.get(r), bit);
            }
        }
    }

    #[test]
    fn ge_identity_and_zero() {
        let g = ge_systematic(&BitMatrix::identity(3));
        assert_eq!(g.rank, 3);
        assert_eq!(g.r, BitMatrix::identity(3));
        assert_eq!(g.e, BitMatrix::identity(3));
        assert_eq!(g.pi, Permutation::identity(3));

        let z = ge_systematic(&BitMatrix::zeros(2, 3));
        assert_eq!(z.rank, 0);
        assert!(z.r.is_zero());
        assert_eq!(z.e, BitMatrix::identity(2));
        assert_eq!(z.pi, Permutation::identity(3));
    }

    #[test]
    fn ge_worked_example() {
        // Rows (1,1,0) and (1,1,1): the second column is dependent, so the
        // third is swapped in.
        let a = BitMatrix::from_fn(2, 3, |r, c| [[true, true, false], [true, true, true]][r][c]);
        let g = ge_systematic(&a);
        assert_eq!(g.rank, 2);
        assert_eq!(g.pi, Permutation::from_mapping(vec![0, 2, 1]));
        let want_r = BitMatrix::from_fn(2, 3, |r, c| [[true, false, true], [false, true, false]][r][c]);
        assert_eq!(g.r, want_r);
        let want_e = BitMatrix::from_fn(2, 2, |r, c| [[true, false], [true, true]][r][c]);
        assert_eq!(g.e, want_e);
        assert_eq!(g.e.mul(&a).permute_cols(&g.pi), g.r);
    }

    #[test]
    fn ge_factorization_holds_on_random_inputs() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        for _ in 0..50 {
            use rand::Rng;
            let rows = rng.gen_range(1..20);
            let cols = rng.gen_range(1..20);
            let a = BitMatrix::random(rows, cols, &mut rng);
            let g = ge_systematic(&a);
            assert_eq!(g.e.mul(&a).permute_cols(&g.pi), g.r);
            for i in 0..g.rank {
                for j in 0..g.rank {
                    assert_eq!(g.r.get(i, j), i == j);
                }
            }
            for i in g.rank..rows {
                assert!(g.r.row(i).is_zero());
            }
            // E is invertible.
            assert_eq!(g.e.rank(), rows);
        }
    }
}
