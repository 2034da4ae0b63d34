//! Simplex-family constructions and exhaustive verification of the
//! functional batch property.
//!
//! A batch of queries can be served iff every query has a recovery set and
//! the sets can be chosen pairwise disjoint. Any recovery set contains a
//! minimal one, so the search only ever looks at minimal sets, which over
//! GF(2) are exactly the independent column sets summing to the query.

mod catalog;
mod search;
mod verify;

use std::fmt;

pub use catalog::{build_catalog, RecoveryCatalog};
pub use search::find_disjoint_assignment;
pub use verify::{multiset_count, verify, verify_with_catalog, Status, Verdict, VerifyOptions};

use crate::error::{param, Error, Result};
use crate::gf2::{BitVec, ColumnSet, GeneratorMatrix};

/// A nonzero query vector.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Query(BitVec);

impl Query {
    pub fn new(alpha: BitVec) -> Result<Self> {
        if alpha.is_zero() {
            return param("queries must be nonzero");
        }
        Ok(Query(alpha))
    }

    pub fn from_word(word: u32, k: u32) -> Result<Self> {
        Self::new(BitVec::new(word, k)?)
    }

    pub fn vector(self) -> BitVec {
        self.0
    }

    pub fn word(self) -> u32 {
        self.0.word()
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.word())
    }
}

/// Multiset of queries, kept sorted by integer value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Batch {
    queries: Vec<Query>,
}

impl Batch {
    pub fn new(mut queries: Vec<Query>) -> Result<Self> {
        if queries.is_empty() {
            return param("a batch needs at least one query");
        }
        let k = queries[0].vector().k();
        if let Some(q) = queries.iter().find(|q| q.vector().k() != k) {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: q.vector().k(),
            });
        }
        queries.sort();
        Ok(Batch { queries })
    }

    pub fn from_words(words: &[u32], k: u32) -> Result<Self> {
        let queries = words
            .iter()
            .map(|&w| Query::from_word(w, k))
            .collect::<Result<Vec<_>>>()?;
        Self::new(queries)
    }

    pub fn uniform(q: Query, t: usize) -> Self {
        assert!(t > 0);
        Batch {
            queries: vec![q; t],
        }
    }

    pub fn queries(&self) -> &[Query] {
        &self.queries
    }

    pub fn len(&self) -> usize {
        self.queries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.queries.is_empty()
    }

    pub fn words(&self) -> Vec<u32> {
        self.queries.iter().map(|q| q.word()).collect()
    }
}

/// Space-separated query integers.
impl fmt::Display for Batch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, q) in self.queries.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{q}")?;
        }
        Ok(())
    }
}

/// All nonzero vectors of dimension `k` as columns, in increasing integer
/// order. For `k = 2` this is `[[1,0,1],[0,1,1]]`.
pub fn simplex(k: u32) -> Result<GeneratorMatrix> {
    if !(1..=7).contains(&k) {
        return param(format!("simplex dimension k = {k} outside 1..=7"));
    }
    GeneratorMatrix::from_words(k, (1..(1u32 << k)).collect())
}

/// `[G | G]` for the simplex generator `G`.
pub fn double_simplex(k: u32) -> Result<GeneratorMatrix> {
    if !(1..=6).contains(&k) {
        return param(format!("double simplex dimension k = {k} outside 1..=6"));
    }
    let g = simplex(k)?;
    g.concat(&g)
}

/// One row of the worked `[3, 2, 2, 2]` example: two queries (as
/// coordinate pairs) and the 1-based recovery sets listed for them.
#[derive(Copy, Clone, Debug)]
pub struct Table1Row {
    pub queries: [[u8; 2]; 2],
    pub sets: [&'static [usize]; 2],
}

pub const TABLE1: [Table1Row; 9] = [
    Table1Row {
        queries: [[1, 0], [1, 0]],
        sets: [&[1], &[2, 3]],
    },
    Table1Row {
        queries: [[1, 0], [0, 1]],
        sets: [&[1], &[2]],
    },
    Table1Row {
        queries: [[1, 0], [1, 1]],
        sets: [&[1], &[3]],
    },
    Table1Row {
        queries: [[0, 1], [1, 0]],
        sets: [&[2], &[1]],
    },
    Table1Row {
        queries: [[0, 1], [0, 1]],
        sets: [&[1, 3], &[2]],
    },
    Table1Row {
        queries: [[0, 1], [1, 1]],
        sets: [&[2], &[3]],
    },
    Table1Row {
        queries: [[1, 1], [1, 0]],
        sets: [&[3], &[1]],
    },
    Table1Row {
        queries: [[1, 1], [0, 1]],
        sets: [&[3], &[2]],
    },
    Table1Row {
        queries: [[1, 1], [1, 1]],
        sets: [&[1, 2], &[3]],
    },
];

/// The `2 x 3` generator matrix of the worked example.
pub fn example_matrix() -> GeneratorMatrix {
    GeneratorMatrix::from_rows(&[vec![1, 0, 1], vec![0, 1, 1]]).expect("fixed matrix")
}

pub fn check_table1_row(g: &GeneratorMatrix, row: &Table1Row) -> bool {
    let sets: Vec<ColumnSet> = row
        .sets
        .iter()
        .map(|s| ColumnSet::from_indices(&s.iter().map(|j| j - 1).collect::<Vec<_>>()))
        .collect();
    if !sets[0].is_disjoint(sets[1]) {
        return false;
    }
    row.queries.iter().zip(&sets).all(|(q, &s)| {
        let alpha = BitVec::from_coords(q).expect("two coordinates");
        s.len() <= 2 && crate::gf2::in_span(g, s, alpha).unwrap_or(false)
    })
}

/// Checks every listed pair of recovery sets on the example matrix.
pub fn verify_table1() -> bool {
    let g = example_matrix();
    TABLE1.iter().all(|row| check_table1_row(&g, row))
}
