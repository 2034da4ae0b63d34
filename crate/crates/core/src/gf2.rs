//! Bit-packed vectors and generator matrices over GF(2).
//!
//! A vector of dimension `k` lives in the low `k` bits of a `u32`; coordinate
//! `i` (0-based) is bit `i`, so the query `(1, 0)` is the integer 1 and
//! `(1, 1, 1)` is 7. Column sets are `u128` masks, which caps the code length
//! at 128.

use std::cmp::Ordering;
use std::fmt;
use std::ops::BitXor;

use crate::error::{param, Error, Result};

/// Largest supported dimension.
pub const MAX_K: u32 = 24;
/// Largest supported code length.
pub const MAX_N: usize = 128;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    word: u32,
    k: u32,
}

impl BitVec {
    pub fn new(word: u32, k: u32) -> Result<Self> {
        if k == 0 || k > MAX_K {
            return param(format!("dimension k = {k} outside 1..={MAX_K}"));
        }
        if word >> k != 0 {
            return param(format!("word {word:#b} has bits above dimension {k}"));
        }
        Ok(BitVec { word, k })
    }

    pub fn zero(k: u32) -> Result<Self> {
        Self::new(0, k)
    }

    /// Unit vector with a one at 0-based coordinate `i`.
    pub fn unit(i: u32, k: u32) -> Result<Self> {
        if i >= k {
            return param(format!("coordinate {i} out of range for k = {k}"));
        }
        Self::new(1 << i, k)
    }

    /// Builds a vector from its coordinates, first coordinate first.
    pub fn from_coords(coords: &[u8]) -> Result<Self> {
        let mut word = 0u32;
        for (i, &c) in coords.iter().enumerate() {
            match c {
                0 => {}
                1 => word |= 1 << i,
                _ => return param(format!("entry {c} is not a bit")),
            }
        }
        Self::new(word, coords.len() as u32)
    }

    #[inline]
    pub fn word(self) -> u32 {
        self.word
    }

    #[inline]
    pub fn k(self) -> u32 {
        self.k
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.word == 0
    }

    pub fn weight(self) -> u32 {
        self.word.count_ones()
    }

    pub fn coord(self, i: u32) -> u8 {
        ((self.word >> i) & 1) as u8
    }

    /// GF(2) inner product.
    pub fn dot(self, other: BitVec) -> u8 {
        ((self.word & other.word).count_ones() & 1) as u8
    }
}

impl BitXor for BitVec {
    type Output = BitVec;

    fn bitxor(self, rhs: BitVec) -> BitVec {
        assert_eq!(self.k, rhs.k, "adding vectors of different dimension");
        BitVec {
            word: self.word ^ rhs.word,
            k: self.k,
        }
    }
}

/// Coordinates printed first to last, e.g. `110` for `(1, 1, 0)`.
impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.k {
            write!(f, "{}", self.coord(i))?;
        }
        Ok(())
    }
}

/// A set of column positions, stored as a bit mask over `0..128`.
///
/// Sets order by size first and then lexicographically by their ascending
/// index lists.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ColumnSet {
    mask: u128,
}

impl ColumnSet {
    pub const EMPTY: ColumnSet = ColumnSet { mask: 0 };

    pub fn from_mask(mask: u128) -> Self {
        ColumnSet { mask }
    }

    /// Panics if an index is 128 or larger.
    pub fn from_indices(indices: &[usize]) -> Self {
        let mut set = ColumnSet::EMPTY;
        for &j in indices {
            set.insert(j);
        }
        set
    }

    #[inline]
    pub fn mask(self) -> u128 {
        self.mask
    }

    pub fn insert(&mut self, j: usize) {
        assert!(j < MAX_N, "column index {j} exceeds {MAX_N}");
        self.mask |= 1u128 << j;
    }

    #[inline]
    pub fn contains(self, j: usize) -> bool {
        j < MAX_N && (self.mask >> j) & 1 == 1
    }

    #[inline]
    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: ColumnSet) -> bool {
        self.mask & other.mask == 0
    }

    pub fn union(self, other: ColumnSet) -> ColumnSet {
        ColumnSet::from_mask(self.mask | other.mask)
    }

    pub fn is_subset(self, other: ColumnSet) -> bool {
        self.mask & !other.mask == 0
    }

    /// Ascending column indices.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut rest = self.mask;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(j)
            }
        })
    }

    /// Largest index plus one, or 0 for the empty set.
    pub fn span_end(self) -> usize {
        (128 - self.mask.leading_zeros()) as usize
    }
}

impl Ord for ColumnSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.mask ^ other.mask;
            if diff == 0 {
                Ordering::Equal
            } else if (self.mask >> diff.trailing_zeros()) & 1 == 1 {
                // the smallest differing index belongs to self
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for ColumnSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// 1-based indices in braces, matching how recovery sets are usually written.
impl fmt::Display for ColumnSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, j) in self.indices().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", j + 1)?;
        }
        write!(f, "}}")
    }
}

/// A `k x n` binary matrix kept as its list of columns.
///
/// Column order is significant and duplicate columns are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    k: u32,
    cols: Vec<u32>,
}

impl GeneratorMatrix {
    pub fn new(k: u32, cols: &[BitVec]) -> Result<Self> {
        for c in cols {
            if c.k() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    got: c.k(),
                });
            }
        }
        Self::from_words(k, cols.iter().map(|c| c.word()).collect())
    }

    /// Columns given as raw words; each must fit in `k` bits.
    pub fn from_words(k: u32, cols: Vec<u32>) -> Result<Self> {
        if k == 0 || k > MAX_K {
            return param(format!("dimension k = {k} outside 1..={MAX_K}"));
        }
        if cols.is_empty() || cols.len() > MAX_N {
            return param(format!("length n = {} outside 1..={MAX_N}", cols.len()));
        }
        if let Some(c) = cols.iter().find(|&&c| c >> k != 0) {
            return param(format!("column {c:#b} does not fit in {k} bits"));
        }
        Ok(GeneratorMatrix { k, cols })
    }

    /// Builds the matrix from `k` rows of `n` bits each.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let k = rows.len();
        if k == 0 || k > MAX_K as usize {
            return param(format!("row count {k} outside 1..={MAX_K}"));
        }
        let n = rows[0].len();
        let mut cols = vec![0u32; n];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return param(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                ));
            }
            for (j, &b) in row.iter().enumerate() {
                match b {
                    0 => {}
                    1 => cols[j] |= 1 << i,
                    _ => return param(format!("entry {b} is not a bit")),
                }
            }
        }
        Self::from_words(k as u32, cols)
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> BitVec {
        BitVec {
            word: self.cols[j],
            k: self.k,
        }
    }

    pub fn column_words(&self) -> &[u32] {
        &self.cols
    }

    /// Row `i` (0-based) as a list of bits.
    pub fn row(&self, i: u32) -> Vec<u8> {
        self.cols.iter().map(|c| ((c >> i) & 1) as u8).collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn concat(&self, other: &GeneratorMatrix) -> Result<Self> {
        if self.k != other.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                got: other.k,
            });
        }
        let mut cols = self.cols.clone();
        cols.extend_from_slice(&other.cols);
        Self::from_words(self.k, cols)
    }

    /// Rank of the whole matrix.
    pub fn rank(&self) -> usize {
        let mut basis = XorBasis::new();
        self.cols.iter().filter(|&&c| basis.insert(c)).count()
    }

    pub(crate) fn check_set(&self, set: ColumnSet) -> Result<()> {
        if set.span_end() > self.n() {
            return param(format!("column set {set} refers past column {}", self.n()));
        }
        Ok(())
    }

    pub(crate) fn check_vec(&self, v: BitVec) -> Result<()> {
        if v.k() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                got: v.k(),
            });
        }
        Ok(())
    }
}

/// An encoded word of length `n`; bit `j` is the symbol stored at position `j`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Codeword {
    bits: u128,
    n: usize,
}

impl Codeword {
    pub fn bits(self) -> u128 {
        self.bits
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn bit(self, j: usize) -> u8 {
        ((self.bits >> j) & 1) as u8
    }

    pub fn to_vec(self) -> Vec<u8> {
        (0..self.n).map(|j| self.bit(j)).collect()
    }
}

/// `y = x G`.
pub fn encode(g: &GeneratorMatrix, x: BitVec) -> Result<Codeword> {
    g.check_vec(x)?;
    let bits = g.cols.iter().enumerate().fold(0u128, |acc, (j, &c)| {
        acc | (((c & x.word).count_ones() & 1) as u128) << j
    });
    Ok(Codeword { bits, n: g.n() })
}

/// Row-echelon basis indexed by leading bit.
#[derive(Copy, Clone, Debug, Default)]
pub struct XorBasis {
    pivots: [u32; MAX_K as usize],
    rank: usize,
}

impl XorBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Reduces `v` against the basis; zero means `v` is in the span.
    pub fn reduce(&self, mut v: u32) -> u32 {
        while v != 0 {
            let top = 31 - v.leading_zeros();
            let p = self.pivots[top as usize];
            if p == 0 {
                break;
            }
            v ^= p;
        }
        v
    }

    /// Adds `v`; returns false (and leaves the basis unchanged) if it was
    /// already in the span.
    pub fn insert(&mut self, v: u32) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let top = 31 - v.leading_zeros();
        self.pivots[top as usize] = v;
        self.rank += 1;
        true
    }

    pub fn contains(&self, v: u32) -> bool {
        self.reduce(v) == 0
    }
}

/// True iff `alpha` is a GF(2) combination of the columns in `set`.
pub fn in_span(g: &GeneratorMatrix, set: ColumnSet, alpha: BitVec) -> Result<bool> {
    g.check_set(set)?;
    g.check_vec(alpha)?;
    let mut basis = XorBasis::new();
    for j in set.indices() {
        basis.insert(g.cols[j]);
    }
    Ok(basis.contains(alpha.word))
}

/// True iff the columns in `set` are linearly independent and sum to
/// `alpha`. Over GF(2) this is exactly the condition for `set` to be a
/// minimal recovery set of `alpha`.
pub fn is_independent_and_sums_to(
    g: &GeneratorMatrix,
    set: ColumnSet,
    alpha: BitVec,
) -> Result<bool> {
    g.check_set(set)?;
    g.check_vec(alpha)?;
    if set.is_empty() {
        return Ok(false);
    }
    let mut basis = XorBasis::new();
    let mut sum = 0u32;
    for j in set.indices() {
        if !basis.insert(g.cols[j]) {
            return Ok(false);
        }
        sum ^= g.cols[j];
    }
    Ok(sum == alpha.word)
}
