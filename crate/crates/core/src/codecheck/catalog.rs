use std::collections::BTreeMap;

use crate::gf2::{ColumnSet, GeneratorMatrix, XorBasis};

use super::Query;

/// Every minimal recovery set of size at most `r`, grouped by the query it
/// recovers. Lists are sorted by size, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveryCatalog {
    k: u32,
    n: usize,
    r: usize,
    sets: BTreeMap<u32, Vec<ColumnSet>>,
}

impl RecoveryCatalog {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Empty when the query has no recovery set of size at most `r`.
    pub fn sets_for(&self, q: Query) -> &[ColumnSet] {
        self.sets.get(&q.word()).map_or(&[], Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &[ColumnSet])> {
        self.sets.iter().map(|(&w, v)| (w, v.as_slice()))
    }

    pub fn total_sets(&self) -> usize {
        self.sets.values().map(Vec::len).sum()
    }
}

/// Enumerates the independent column subsets of size at most `r`; each one
/// is the minimal recovery set of exactly one query, its column sum.
pub fn build_catalog(g: &GeneratorMatrix, r: usize) -> RecoveryCatalog {
    let mut sets: BTreeMap<u32, Vec<ColumnSet>> = BTreeMap::new();
    let cols = g.column_words();
    extend(cols, r, 0, XorBasis::new(), 0, ColumnSet::EMPTY, &mut sets);
    for list in sets.values_mut() {
        list.sort();
    }
    RecoveryCatalog {
        k: g.k(),
        n: g.n(),
        r,
        sets,
    }
}

fn extend(
    cols: &[u32],
    r: usize,
    start: usize,
    basis: XorBasis,
    sum: u32,
    set: ColumnSet,
    out: &mut BTreeMap<u32, Vec<ColumnSet>>,
) {
    if set.len() == r {
        return;
    }
    for j in start..cols.len() {
        let mut next = basis;
        if !next.insert(cols[j]) {
            continue;
        }
        let mut grown = set;
        grown.insert(j);
        let s = sum ^ cols[j];
        out.entry(s).or_default().push(grown);
        extend(cols, r, j + 1, next, s, grown, out);
    }
}
