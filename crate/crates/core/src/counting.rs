//! Exact counts of bounded labellings.
//!
//! `theta(n, t, r)` is the number of maps from `n` positions to the labels
//! `{0, 1, ..., t}` in which every nonzero label is used at least once and
//! at most `r` times. It is computed three independent ways (multinomial
//! sum, recursion, exponential generating function) and bounded from above
//! by three closed forms.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{param, Error, Result};

/// Arbitrary-precision nonnegative count.
pub type Count = BigUint;

/// `n (n-1) ... (n-m+1)`.
pub fn falling_factorial(n: usize, m: usize) -> Result<Count> {
    if m > n {
        return param(format!("falling factorial ({n})_{m} needs m <= n"));
    }
    Ok(((n - m + 1)..=n).fold(Count::one(), |acc, f| acc * f))
}

pub fn factorial(n: usize) -> Count {
    (1..=n).fold(Count::one(), |acc, f| acc * f)
}

/// Binomial coefficient; zero when `m > n`.
pub fn binomial(n: usize, m: usize) -> Count {
    if m > n {
        return Count::zero();
    }
    let m = m.min(n - m);
    let mut acc = Count::one();
    for i in 0..m {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `n! / (parts[0]! parts[1]! ...)`.
pub fn multinomial(n: usize, parts: &[usize]) -> Result<Count> {
    if parts.iter().sum::<usize>() != n {
        return param(format!("multinomial parts {parts:?} do not sum to {n}"));
    }
    // product of binomials avoids the big intermediate n!
    let mut left = n;
    let mut acc = Count::one();
    for &p in parts {
        acc *= binomial(left, p);
        left -= p;
    }
    Ok(acc)
}

/// Sum of multinomials over all `(i_1, ..., i_t)` in `[1, r]^t`.
///
/// Cost is `r^t` terms, so this is meant as a reference for small `t`.
pub fn theta_direct(n: usize, t: usize, r: usize) -> Count {
    if t == 0 {
        return Count::one();
    }
    if r == 0 || n < t {
        return Count::zero();
    }
    let mut parts = vec![1usize; t];
    let mut total = Count::zero();
    loop {
        let used: usize = parts.iter().sum();
        if used <= n {
            let mut all = Vec::with_capacity(t + 1);
            all.push(n - used);
            all.extend_from_slice(&parts);
            total += multinomial(n, &all).expect("parts sum to n");
        }
        // odometer step; skip the rest of a digit's range once the sum overflows n
        let mut pos = t;
        loop {
            if pos == 0 {
                return total;
            }
            pos -= 1;
            let used: usize = parts.iter().sum();
            if parts[pos] < r && used < n {
                parts[pos] += 1;
                break;
            }
            parts[pos] = 1;
        }
    }
}

/// Memo table of `theta(n, t)` for a fixed `r`, filled by
/// `theta(n, t) = sum_{i=1..r} C(n, i) theta(n - i, t - 1)`.
///
/// The table always holds the full rectangle `t' <= t_max`, `n' <= n_max`
/// of the largest query so far.
#[derive(Clone, Debug)]
pub struct ThetaMemo {
    r: usize,
    rows: Vec<Vec<Count>>,
}

impl ThetaMemo {
    pub fn new(r: usize) -> Self {
        ThetaMemo {
            r,
            rows: Vec::new(),
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of `n` values currently stored per row.
    pub fn width(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn get(&mut self, n: usize, t: usize) -> &Count {
        self.ensure(n, t);
        &self.rows[t][n]
    }

    fn ensure(&mut self, n: usize, t: usize) {
        let width = self.width().max(n + 1);
        if self.rows.is_empty() {
            self.rows.push(Vec::new());
        }
        self.rows[0].resize(width, Count::one());
        for row in 1..self.rows.len() {
            let start = self.rows[row].len();
            for m in start..width {
                let v = self.entry(row, m);
                self.rows[row].push(v);
            }
        }
        while self.rows.len() <= t {
            let row = self.rows.len();
            self.rows.push(Vec::with_capacity(width));
            for m in 0..width {
                let v = self.entry(row, m);
                self.rows[row].push(v);
            }
        }
    }

    // needs rows[row - 1][..m] already filled
    fn entry(&self, row: usize, m: usize) -> Count {
        let prev = &self.rows[row - 1];
        let mut acc = Count::zero();
        let mut c = Count::one();
        for i in 1..=self.r.min(m) {
            c *= m - i + 1;
            c /= i;
            acc += &c * &prev[m - i];
        }
        acc
    }
}

pub fn theta_rec(memo: &mut ThetaMemo, n: usize, t: usize) -> Count {
    memo.get(n, t).clone()
}

/// Convenience wrapper that builds a fresh memo.
pub fn theta(n: usize, t: usize, r: usize) -> Count {
    ThetaMemo::new(r).get(n, t).clone()
}

/// Truncated exponential generating function `sum_j c_j x^j / j!`, stored as
/// its integer numerators `c_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EgfPoly {
    coeffs: Vec<Count>,
}

impl EgfPoly {
    pub fn one() -> Self {
        EgfPoly {
            coeffs: vec![Count::one()],
        }
    }

    /// `x/1! + x^2/2! + ... + x^r/r!`, cut at `max_deg`.
    pub fn bounded_block(r: usize, max_deg: usize) -> Self {
        let coeffs = (0..=r.min(max_deg))
            .map(|j| if j == 0 { Count::zero() } else { Count::one() })
            .collect();
        EgfPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Count] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, m: usize) -> Count {
        self.coeffs.get(m).cloned().unwrap_or_default()
    }

    /// EGF product, `c_m = sum_j C(m, j) a_j b_{m-j}`, cut at `max_deg`.
    pub fn mul_truncated(&self, other: &EgfPoly, max_deg: usize) -> EgfPoly {
        let deg = (self.degree() + other.degree()).min(max_deg);
        let mut coeffs = vec![Count::zero(); deg + 1];
        let mut pascal = vec![Count::one()];
        for (m, slot) in coeffs.iter_mut().enumerate() {
            if m > 0 {
                let mut next = vec![Count::one(); m + 1];
                for j in 1..m {
                    next[j] = &pascal[j - 1] + &pascal[j];
                }
                pascal = next;
            }
            for (j, c) in pascal.iter().enumerate() {
                let (Some(a), Some(b)) = (self.coeffs.get(j), other.coeffs.get(m - j)) else {
                    continue;
                };
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                *slot += c * a * b;
            }
        }
        EgfPoly { coeffs }
    }
}

/// `theta` read off `e^x * G_r(x)^t`.
pub fn theta_egf(n: usize, t: usize, r: usize) -> Count {
    let deg = n.min(r * t);
    let block = EgfPoly::bounded_block(r, deg);
    let mut power = EgfPoly::one();
    for _ in 0..t {
        power = power.mul_truncated(&block, deg);
    }
    (0..=power.degree().min(n))
        .map(|m| binomial(n, m) * power.coeff(m))
        .sum()
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `(n)_t (n - t + 2)^t / 2^t`, the `r = 2` upper bound on `theta`.
pub fn theta_upper_r2(n: usize, t: usize) -> Result<BigRational> {
    if n < t {
        return Err(Error::NotApplicable { n, floor: t });
    }
    let num = falling_factorial(n, t)? * BigUint::from(n - t + 2).pow(t as u32);
    Ok(ratio(num, BigUint::one() << t))
}

/// `((n - (t-1)/2) (n-t)^(r-1) / (r-1)!)^t`, valid for `n >= t + r`.
pub fn theta_upper_general(n: usize, t: usize, r: usize) -> Result<BigRational> {
    if r == 0 {
        return param("locality r must be at least 1");
    }
    if n < t + r {
        return Err(Error::NotApplicable { n, floor: t + r });
    }
    // (2n - t + 1)/2 carries the half-integer
    let base_num = BigUint::from(2 * n - t + 1) * BigUint::from(n - t).pow((r - 1) as u32);
    let base_den = BigUint::from(2u32) * factorial(r - 1);
    Ok(ratio(base_num.pow(t as u32), base_den.pow(t as u32)))
}

/// `(n - (t+r)/2 + 1)^(rt) / ((r-1)!)^t`, valid for `t >= 1` and
/// `n >= max(t + 1, 2r - 1)`.
pub fn theta_upper_recursive(n: usize, t: usize, r: usize) -> Result<BigRational> {
    if r == 0 {
        return param("locality r must be at least 1");
    }
    if t == 0 {
        return param("batch size t must be at least 1");
    }
    let floor = (t + 1).max(2 * r - 1);
    if n < floor {
        return Err(Error::NotApplicable { n, floor });
    }
    let exp = (r * t) as u32;
    let num = BigUint::from(2 * n + 2 - t - r).pow(exp);
    let den = (BigUint::one() << (r * t)) * factorial(r - 1).pow(t as u32);
    Ok(ratio(num, den))
}
