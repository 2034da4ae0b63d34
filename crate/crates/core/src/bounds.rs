//! Lower bounds on the length `n` of an `[n, k, t, r]` functional batch code.
//!
//! Every code must satisfy `theta(n, t, r) >= (2^k - 1)^t`. The exact bound
//! scans that condition directly; the closed forms replace `theta` by one of
//! its upper bounds and solve for `n`. Closed-form solvers estimate in
//! floating point and then pin the answer with exact integer comparisons.
//!
//! Several closed forms are only proved for `n` above an applicability floor.
//! When the smallest `n` satisfying the inequality lies below that floor the
//! outcome is *clamped* to the floor, and it is additionally *vacuous* when
//! exact counting cannot rule out codes shorter than the floor (then the
//! closed form says nothing about short codes at all).

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::counting::{factorial, Count, ThetaMemo};
use crate::error::{param, Result};
use crate::gf2::MAX_K;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct CodeParams {
    pub k: u32,
    pub t: usize,
    pub r: usize,
}

impl CodeParams {
    pub fn new(k: u32, t: usize, r: usize) -> Result<Self> {
        if k == 0 || k > MAX_K {
            return param(format!("dimension k = {k} outside 1..={MAX_K}"));
        }
        if t == 0 {
            return param("batch size t must be at least 1");
        }
        if r == 0 {
            return param("locality r must be at least 1");
        }
        Ok(CodeParams { k, t, r })
    }

    /// `(2^k - 1)^t`, the number of ordered batches.
    pub fn batch_count(&self) -> Count {
        query_count(self.k).pow(self.t as u32)
    }
}

fn query_count(k: u32) -> Count {
    (Count::one() << k) - 1u32
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum BoundId {
    ExactTheta,
    Thm6,
    Cor1,
    Thm7,
    Thm8,
    Baseline23,
}

impl BoundId {
    pub fn name(self) -> &'static str {
        match self {
            BoundId::ExactTheta => "exact",
            BoundId::Thm6 => "thm6",
            BoundId::Cor1 => "cor1",
            BoundId::Thm7 => "thm7",
            BoundId::Thm8 => "thm8",
            BoundId::Baseline23 => "baseline",
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundOutcome {
    pub bound: BoundId,
    /// Real-valued right-hand side of `n >= rhs`, where the bound has that
    /// shape. Display only; `min_n` never depends on its rounding.
    pub rhs: Option<f64>,
    /// Reported lower bound, raised to the floor when clamped.
    pub min_n: usize,
    /// Smallest `n` satisfying the inequality, ignoring the floor.
    pub raw_min_n: usize,
    pub applicability_floor: usize,
    pub clamped: bool,
    pub vacuous: bool,
}

impl BoundOutcome {
    fn unfloored(bound: BoundId, rhs: Option<f64>, n: usize) -> Self {
        BoundOutcome {
            bound,
            rhs,
            min_n: n,
            raw_min_n: n,
            applicability_floor: 0,
            clamped: false,
            vacuous: false,
        }
    }

    fn floored(bound: BoundId, rhs: Option<f64>, raw: usize, floor: usize, p: CodeParams) -> Self {
        let clamped = raw < floor;
        let min_n = raw.max(floor);
        let vacuous = floor > 0 && min_n == floor && {
            let mut memo = ThetaMemo::new(p.r);
            necessary_condition_with(&mut memo, floor - 1, p)
        };
        BoundOutcome {
            bound,
            rhs,
            min_n,
            raw_min_n: raw,
            applicability_floor: floor,
            clamped,
            vacuous,
        }
    }
}

/// `theta(n, t, r) >= (2^k - 1)^t`. False rules out every `[n, k, t, r]` code.
pub fn necessary_condition(n: usize, p: CodeParams) -> bool {
    necessary_condition_with(&mut ThetaMemo::new(p.r), n, p)
}

/// Same as [`necessary_condition`], reusing a memo whose locality is `p.r`.
pub fn necessary_condition_with(memo: &mut ThetaMemo, n: usize, p: CodeParams) -> bool {
    assert_eq!(memo.r(), p.r, "memo built for a different locality");
    *memo.get(n, p.t) >= p.batch_count()
}

/// Smallest `n` for which `pred` holds, given that `pred` is monotone on
/// `lo..` (false then true). Gallops up from `lo`, then bisects.
fn first_true(lo: usize, mut pred: impl FnMut(usize) -> bool) -> usize {
    if pred(lo) {
        return lo;
    }
    let mut bad = lo;
    let mut step = 1usize;
    let mut good = loop {
        let probe = bad + step;
        if pred(probe) {
            break probe;
        }
        bad = probe;
        step *= 2;
    };
    while good - bad > 1 {
        let mid = bad + (good - bad) / 2;
        if pred(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    good
}

/// Smallest `n >= 0` with `pred(n)`, starting from a floating-point guess.
/// `pred` must be monotone in `n`.
fn certify_from_estimate(estimate: f64, pred: impl Fn(usize) -> bool) -> usize {
    let mut n = if estimate.is_finite() && estimate > 0.0 {
        estimate.ceil() as usize
    } else {
        0
    };
    while n > 0 && pred(n - 1) {
        n -= 1;
    }
    while !pred(n) {
        n += 1;
    }
    n
}

/// Smallest `n` passing [`necessary_condition`].
pub fn min_n_exact(p: CodeParams) -> usize {
    min_n_exact_with(&mut ThetaMemo::new(p.r), p)
}

pub fn min_n_exact_with(memo: &mut ThetaMemo, p: CodeParams) -> usize {
    let target = p.batch_count();
    // theta vanishes below n = t
    let n = first_true(p.t, |n| *memo.get(n, p.t) >= target);
    debug_assert!(n == p.t || *memo.get(n - 1, p.t) < target);
    n
}

/// `2^k - 1 <= (n - (t-1)/2) (n-t)^(r-1) / (r-1)!`, proved for `n >= t + r`.
pub fn thm6_holds(n: usize, p: CodeParams) -> bool {
    if n < p.t {
        return false;
    }
    let lhs = BigUint::from(2 * n + 1 - p.t) * BigUint::from(n - p.t).pow((p.r - 1) as u32);
    lhs >= BigUint::from(2u32) * query_count(p.k) * factorial(p.r - 1)
}

pub fn min_n_thm6(p: CodeParams) -> BoundOutcome {
    // both factors are nondecreasing once n >= t
    let raw = first_true(p.t, |n| thm6_holds(n, p));
    BoundOutcome::floored(BoundId::Thm6, None, raw, p.t + p.r, p)
}

fn radicand(p: CodeParams) -> BigUint {
    query_count(p.k) * factorial(p.r - 1)
}

fn root_estimate(p: CodeParams) -> f64 {
    let x = ((1u64 << p.k) - 1) as f64 * (1..p.r).map(|i| i as f64).product::<f64>();
    x.powf(1.0 / p.r as f64)
}

/// `(2r(n - t) + t + 1)^r >= (2r)^r (2^k - 1)(r-1)!` with a nonnegative base,
/// i.e. `n >= t - (t+1)/(2r) + ((2^k - 1)(r-1)!)^(1/r)`.
pub fn cor1_holds(n: usize, p: CodeParams) -> bool {
    let base = (2 * p.r * n + p.t + 1) as i128 - (2 * p.r * p.t) as i128;
    if base < 0 {
        return false;
    }
    BigUint::from(base as u128).pow(p.r as u32)
        >= BigUint::from(2 * p.r).pow(p.r as u32) * radicand(p)
}

pub fn min_n_cor1(p: CodeParams) -> BoundOutcome {
    let rhs = p.t as f64 - (p.t + 1) as f64 / (2 * p.r) as f64 + root_estimate(p);
    let raw = certify_from_estimate(rhs, |n| cor1_holds(n, p));
    BoundOutcome::floored(BoundId::Cor1, Some(rhs), raw, p.t + p.r, p)
}

/// `(2n - t - r + 2)^r >= 2^r (2^k - 1)(r-1)!` with a nonnegative base,
/// i.e. `n >= (t+r)/2 - 1 + ((2^k - 1)(r-1)!)^(1/r)`.
pub fn thm7_holds(n: usize, p: CodeParams) -> bool {
    let base = (2 * n + 2) as i128 - (p.t + p.r) as i128;
    if base < 0 {
        return false;
    }
    BigUint::from(base as u128).pow(p.r as u32) >= (BigUint::one() << p.r) * radicand(p)
}

pub fn min_n_thm7(p: CodeParams) -> BoundOutcome {
    let rhs = (p.t + p.r) as f64 / 2.0 - 1.0 + root_estimate(p);
    let raw = certify_from_estimate(rhs, |n| thm7_holds(n, p));
    let floor = (p.t + 1).max(2 * p.r - 1);
    BoundOutcome::floored(BoundId::Thm7, Some(rhs), raw, floor, p)
}

/// `(4n - 3t + 5)^2 >= 32 (2^k - 1)` with a nonnegative base,
/// i.e. `n >= sqrt(2 (2^k - 1)) + 3t/4 - 5/4`. Locality is fixed at 2.
pub fn thm8_holds(n: usize, k: u32, t: usize) -> bool {
    let base = (4 * n + 5) as i128 - (3 * t) as i128;
    if base < 0 {
        return false;
    }
    BigUint::from(base as u128).pow(2u32) >= BigUint::from(32u32) * query_count(k)
}

pub fn min_n_thm8(k: u32, t: usize) -> BoundOutcome {
    let rhs = (2.0 * ((1u64 << k) - 1) as f64).sqrt() + 0.75 * t as f64 - 1.25;
    let n = certify_from_estimate(rhs, |n| thm8_holds(n, k, t));
    BoundOutcome::unfloored(BoundId::Thm8, Some(rhs), n)
}

/// `(t+1)^n >= (2^k - 1)^t`.
pub fn baseline_holds(n: usize, k: u32, t: usize) -> bool {
    BigUint::from(t + 1).pow(n as u32) >= query_count(k).pow(t as u32)
}

pub fn min_n_baseline23(k: u32, t: usize) -> BoundOutcome {
    let rhs = t as f64 * (((1u64 << k) - 1) as f64).ln() / ((t + 1) as f64).ln();
    let n = certify_from_estimate(rhs, |n| baseline_holds(n, k, t));
    BoundOutcome::unfloored(BoundId::Baseline23, Some(rhs), n)
}

/// Length of the double-simplex code, which serves `t = 2^k` with `r = 2`.
pub fn construction_length(k: u32) -> usize {
    (1usize << (k + 1)) - 2
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table2Row {
    pub k: u32,
    pub t: usize,
    pub thm8: usize,
    pub exact: usize,
    pub construction: usize,
}

/// Bounds at `r = 2`, `t = 2^k` for `k = 2..=k_max`, next to the
/// double-simplex length. The shared memo holds about `2^k * 2^(k+1)` big
/// integers, so `k_max` stops at 11; 12 exhausts memory on typical machines.
pub fn emit_table2(k_max: u32) -> Result<Vec<Table2Row>> {
    if !(2..=11).contains(&k_max) {
        return param(format!("table 2 k_max = {k_max} outside 2..=11"));
    }
    let mut memo = ThetaMemo::new(2);
    let rows = (2..=k_max)
        .map(|k| {
            let t = 1usize << k;
            let p = CodeParams::new(k, t, 2).expect("valid parameters");
            Table2Row {
                k,
                t,
                thm8: min_n_thm8(k, t).min_n,
                exact: min_n_exact_with(&mut memo, p),
                construction: construction_length(k),
            }
        })
        .collect();
    Ok(rows)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Table3Column {
    Baseline { t: usize },
    Thm7 { t: usize, r: usize },
}

impl Table3Column {
    pub fn header(&self) -> String {
        match *self {
            Table3Column::Baseline { t } => format!("baseline_t{t}"),
            Table3Column::Thm7 { t, r } => format!("thm7_t{t}_r{r}"),
        }
    }

    pub fn evaluate(&self, k: u32) -> Result<BoundOutcome> {
        Ok(match *self {
            Table3Column::Baseline { t } => {
                CodeParams::new(k, t, 1)?;
                min_n_baseline23(k, t)
            }
            Table3Column::Thm7 { t, r } => min_n_thm7(CodeParams::new(k, t, r)?),
        })
    }
}

pub const TABLE3_DEFAULT_COLUMNS: [Table3Column; 5] = [
    Table3Column::Baseline { t: 2 },
    Table3Column::Thm7 { t: 2, r: 2 },
    Table3Column::Thm7 { t: 2, r: 3 },
    Table3Column::Thm7 { t: 3, r: 3 },
    Table3Column::Thm7 { t: 2, r: 5 },
];

/// A reference table value that differs from the certified one.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct PublishedMismatch {
    pub k: u32,
    pub column: Table3Column,
    pub published: usize,
    pub certified: usize,
}

/// The one known cell where the reference Table 3 and the exact certification
/// disagree: the right-hand side is about 8.22 and the floor is 9.
pub const TABLE3_PUBLISHED_MISMATCHES: [PublishedMismatch; 1] = [PublishedMismatch {
    k: 8,
    column: Table3Column::Thm7 { t: 2, r: 5 },
    published: 10,
    certified: 9,
}];

#[derive(Clone, Debug, PartialEq)]
pub struct Table3Row {
    pub k: u32,
    pub cells: Vec<BoundOutcome>,
}

pub fn emit_table3(
    ks: std::ops::RangeInclusive<u32>,
    columns: &[Table3Column],
) -> Result<Vec<Table3Row>> {
    ks.map(|k| {
        let cells = columns
            .iter()
            .map(|c| c.evaluate(k))
            .collect::<Result<Vec<_>>>()?;
        Ok(Table3Row { k, cells })
    })
    .collect()
}
