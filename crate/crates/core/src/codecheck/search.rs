use crate::gf2::ColumnSet;

use super::{Batch, RecoveryCatalog};

/// Copies of one distinct query inside a batch.
struct Group<'a> {
    query: u32,
    cands: &'a [ColumnSet],
    need: usize,
    // copies take candidates in increasing catalog order, which removes the
    // permutations among identical queries
    next: usize,
    chosen: Vec<usize>,
}

impl Group<'_> {
    fn remaining(&self) -> usize {
        self.need - self.chosen.len()
    }
}

/// Finds pairwise-disjoint recovery sets, one per query of the batch, in
/// batch order. Returns `None` when no such family exists.
///
/// Backtracking picks the query with the fewest compatible candidates next
/// and tries candidates in catalog order (smaller sets first), so the result
/// is deterministic.
pub fn find_disjoint_assignment(
    catalog: &RecoveryCatalog,
    batch: &Batch,
) -> Option<Vec<ColumnSet>> {
    let mut groups: Vec<Group> = Vec::new();
    for &q in batch.queries() {
        match groups.last_mut() {
            Some(g) if g.query == q.word() => g.need += 1,
            _ => groups.push(Group {
                query: q.word(),
                cands: catalog.sets_for(q),
                need: 1,
                next: 0,
                chosen: Vec::new(),
            }),
        }
    }
    if groups.iter().any(|g| g.cands.len() < g.need) {
        return None;
    }
    if !solve(&mut groups, 0, catalog.n()) {
        return None;
    }
    Some(
        groups
            .iter()
            .flat_map(|g| g.chosen.iter().map(|&i| g.cands[i]))
            .collect(),
    )
}

fn solve(groups: &mut [Group], used: u128, n: usize) -> bool {
    let free = n - used.count_ones() as usize;
    let mut pick = None;
    let mut best = usize::MAX;
    let mut min_columns = 0usize;
    for (gi, g) in groups.iter().enumerate() {
        let left = g.remaining();
        if left == 0 {
            continue;
        }
        let mut count = 0;
        let mut smallest = usize::MAX;
        for c in &g.cands[g.next..] {
            if c.mask() & used == 0 {
                count += 1;
                smallest = smallest.min(c.len());
            }
        }
        if count < left {
            return false;
        }
        min_columns += left * smallest;
        if count < best {
            best = count;
            pick = Some(gi);
        }
    }
    let Some(gi) = pick else {
        return true;
    };
    if min_columns > free {
        return false;
    }
    let (start, len) = (groups[gi].next, groups[gi].cands.len());
    for idx in start..len {
        let mask = groups[gi].cands[idx].mask();
        if mask & used != 0 {
            continue;
        }
        let g = &mut groups[gi];
        g.chosen.push(idx);
        g.next = idx + 1;
        if solve(groups, used | mask, n) {
            return true;
        }
        let g = &mut groups[gi];
        g.chosen.pop();
        g.next = start;
    }
    false
}
