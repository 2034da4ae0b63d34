use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::{Duration, Instant};

use crate::error::{param, Result};
use crate::gf2::GeneratorMatrix;

use super::{build_catalog, find_disjoint_assignment, Batch, Query, RecoveryCatalog};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
    /// A budget ran out before every batch was checked.
    Undecided,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub status: Status,
    /// A batch with no disjoint family of recovery sets; present iff
    /// `status == Fails`.
    pub counterexample: Option<Batch>,
    pub batches_checked: u64,
    /// Number of multiset batches in the full sweep.
    pub total_batches: u64,
    pub wall_time: Duration,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Worker threads; 0 means one per available core.
    pub jobs: usize,
    /// Report the lexicographically least failing batch of the sweep.
    pub deterministic: bool,
    /// Try the `t` copies of each single query first.
    pub quick_screen: bool,
    pub time_budget: Option<Duration>,
    pub batch_budget: Option<u64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            jobs: 1,
            deterministic: false,
            quick_screen: true,
            time_budget: None,
            batch_budget: None,
        }
    }
}

/// Number of size-`t` multisets over `q` values, `C(q + t - 1, t)`; `None`
/// on overflow.
pub fn multiset_count(q: u64, t: usize) -> Option<u64> {
    if q == 0 {
        return Some(u64::from(t == 0));
    }
    let mut c: u128 = 1;
    for i in 1..=t as u128 {
        c = c.checked_mul(q as u128 - 1 + i)? / i;
    }
    u64::try_from(c).ok()
}

/// The non-decreasing sequence of length `t` over `1..=q` at position `idx`
/// in lexicographic order.
fn unrank(mut idx: u64, q: u32, t: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(t);
    let mut v = 1u32;
    for pos in 0..t {
        let rest = t - pos - 1;
        loop {
            let with_v = multiset_count((q - v + 1) as u64, rest).expect("fits: below total");
            if idx < with_v {
                break;
            }
            idx -= with_v;
            v += 1;
        }
        out.push(v);
    }
    out
}

/// Advances to the lexicographic successor; false after the last sequence.
fn advance(seq: &mut [u32], q: u32) -> bool {
    let Some(p) = seq.iter().rposition(|&a| a < q) else {
        return false;
    };
    let v = seq[p] + 1;
    seq[p..].fill(v);
    true
}

/// Decides whether `g` serves every batch of `t` queries with pairwise
/// disjoint recovery sets of size at most `r`.
///
/// Batches are enumerated as multisets: whether a batch can be served does
/// not depend on the order of its queries.
pub fn verify(g: &GeneratorMatrix, t: usize, r: usize, opts: &VerifyOptions) -> Result<Verdict> {
    if r == 0 {
        return param("locality r must be at least 1");
    }
    let catalog = build_catalog(g, r);
    verify_with_catalog(&catalog, t, opts)
}

struct Budget {
    start: Instant,
    time: Option<Duration>,
    batches: Option<u64>,
    checked: AtomicU64,
    exhausted: AtomicBool,
}

impl Budget {
    /// Claims one batch check; false once a budget is spent.
    fn claim(&self) -> bool {
        if self.exhausted.load(Ordering::Relaxed) {
            return false;
        }
        if self.time.is_some_and(|limit| self.start.elapsed() > limit) {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        let before = self.checked.fetch_add(1, Ordering::Relaxed);
        if self.batches.is_some_and(|limit| before >= limit) {
            self.checked.fetch_sub(1, Ordering::Relaxed);
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

pub fn verify_with_catalog(
    catalog: &RecoveryCatalog,
    t: usize,
    opts: &VerifyOptions,
) -> Result<Verdict> {
    if t == 0 {
        return param("batch size t must be at least 1");
    }
    let k = catalog.k();
    let q = (1u32 << k) - 1;
    let Some(total) = multiset_count(q as u64, t) else {
        return param(format!(
            "too many batches to enumerate for k = {k}, t = {t}"
        ));
    };
    let budget = Budget {
        start: Instant::now(),
        time: opts.time_budget,
        batches: opts.batch_budget,
        checked: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
    };
    let finish = |status, counterexample| Verdict {
        status,
        counterexample,
        batches_checked: budget.checked.load(Ordering::Relaxed),
        total_batches: total,
        wall_time: budget.start.elapsed(),
    };

    if opts.quick_screen {
        let mut order: Vec<u32> = (1..=q).collect();
        order.sort_by_key(|&w| std::cmp::Reverse((w.count_ones(), w)));
        for w in order {
            if !budget.claim() {
                return Ok(finish(Status::Undecided, None));
            }
            let batch = Batch::uniform(Query::from_word(w, k)?, t);
            if find_disjoint_assignment(catalog, &batch).is_none() {
                return Ok(finish(Status::Fails, Some(batch)));
            }
        }
    }

    let jobs = match opts.jobs {
        0 => thread::available_parallelism().map_or(1, |n| n.get()),
        j => j,
    }
    .clamp(1, total.max(1) as usize);
    let chunk = total.div_ceil(jobs as u64);

    let first_fail = AtomicU64::new(u64::MAX);
    let stop = AtomicBool::new(false);
    let failures: Mutex<Vec<(u64, Batch)>> = Mutex::new(Vec::new());

    thread::scope(|s| {
        for w in 0..jobs as u64 {
            let (lo, hi) = (w * chunk, ((w + 1) * chunk).min(total));
            if lo >= hi {
                continue;
            }
            let (budget, first_fail, stop, failures) = (&budget, &first_fail, &stop, &failures);
            s.spawn(move || {
                let mut seq = unrank(lo, q, t);
                for idx in lo..hi {
                    if stop.load(Ordering::Relaxed) || idx > first_fail.load(Ordering::Relaxed) {
                        break;
                    }
                    if !budget.claim() {
                        break;
                    }
                    let batch = Batch {
                        queries: seq
                            .iter()
                            .map(|&v| Query::from_word(v, k).expect("nonzero query"))
                            .collect(),
                    };
                    if find_disjoint_assignment(catalog, &batch).is_none() {
                        first_fail.fetch_min(idx, Ordering::Relaxed);
                        failures
                            .lock()
                            .expect("no poisoned workers")
                            .push((idx, batch));
                        if !opts.deterministic {
                            stop.store(true, Ordering::Relaxed);
                        }
                        break;
                    }
                    advance(&mut seq, q);
                }
            });
        }
    });

    let failure = failures
        .into_inner()
        .expect("no poisoned workers")
        .into_iter()
        .min_by_key(|(idx, _)| *idx);
    Ok(match failure {
        Some((_, batch)) => finish(Status::Fails, Some(batch)),
        None if budget.exhausted.load(Ordering::Relaxed) => finish(Status::Undecided, None),
        None => finish(Status::Holds, None),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codecheck::{double_simplex, example_matrix, simplex};

    #[test]
    fn multiset_counts() {
        assert_eq!(multiset_count(7, 4), Some(210));
        assert_eq!(multiset_count(7, 8), Some(3003));
        assert_eq!(multiset_count(15, 8), Some(319_770));
        assert_eq!(multiset_count(3, 0), Some(1));
        assert_eq!(multiset_count(0, 0), Some(1));
        assert_eq!(multiset_count(0, 3), Some(0));
        assert_eq!(multiset_count(1 << 24, 40), None);
    }

    #[test]
    fn rank_order_matches_successor() {
        let (q, t) = (4u32, 3usize);
        let total = multiset_count(q as u64, t).unwrap();
        let mut seq = vec![1; t];
        for idx in 0..total {
            assert_eq!(unrank(idx, q, t), seq, "idx {idx}");
            let more = advance(&mut seq, q);
            assert_eq!(more, idx + 1 < total);
        }
    }

    #[test]
    fn example_code_holds() {
        let v = verify(&example_matrix(), 2, 2, &VerifyOptions::default()).unwrap();
        assert!(v.holds());
        assert_eq!(v.total_batches, 6);
        assert!(v.counterexample.is_none());
    }

    #[test]
    fn simplex3_t5_fails_on_all_ones() {
        let g = simplex(3).unwrap();
        let v = verify(&g, 5, 2, &VerifyOptions::default()).unwrap();
        assert_eq!(v.status, Status::Fails);
        assert_eq!(v.counterexample.unwrap().words(), vec![7; 5]);

        // without the screen the sweep reports the least failing multiset
        let opts = VerifyOptions {
            quick_screen: false,
            deterministic: true,
            jobs: 3,
            ..Default::default()
        };
        let v = verify(&g, 5, 2, &opts).unwrap();
        assert_eq!(v.counterexample.unwrap().words(), vec![1; 5]);
    }

    #[test]
    fn parallel_agrees_with_serial() {
        let g = double_simplex(2).unwrap();
        for jobs in [1, 2, 5, 64] {
            let opts = VerifyOptions {
                jobs,
                quick_screen: false,
                deterministic: true,
                ..Default::default()
            };
            assert!(verify(&g, 4, 2, &opts).unwrap().holds());
            let v = verify(&g, 5, 2, &opts).unwrap();
            assert_eq!(v.status, Status::Fails);
            assert_eq!(v.counterexample.unwrap().words(), vec![1, 1, 1, 1, 1]);
        }
    }

    #[test]
    fn batch_budget_gives_undecided() {
        let g = simplex(3).unwrap();
        let opts = VerifyOptions {
            batch_budget: Some(20),
            ..Default::default()
        };
        let v = verify(&g, 4, 2, &opts).unwrap();
        assert_eq!(v.status, Status::Undecided);
        assert_eq!(v.batches_checked, 20);
        let opts = VerifyOptions {
            time_budget: Some(Duration::ZERO),
            ..Default::default()
        };
        assert_eq!(verify(&g, 4, 2, &opts).unwrap().status, Status::Undecided);
    }

    #[test]
    fn rejects_bad_parameters() {
        let g = simplex(2).unwrap();
        assert!(verify(&g, 0, 2, &VerifyOptions::default()).is_err());
        assert!(verify(&g, 2, 0, &VerifyOptions::default()).is_err());
    }
}
