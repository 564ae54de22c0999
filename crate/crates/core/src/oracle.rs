//! Slow reference implementations for validating the sweep.
//!
//! Everything here works on full `(|X| + 1) x (|Y| + 1)` tables and is
//! meant for strings of a few hundred symbols at most.

use crate::error::{check_k, Result};

/// Dense DP table; `cell(i, j)` covers prefixes `x[..i]` and `y[..j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpTable {
    rows: usize,
    cols: usize,
    cells: Vec<u64>,
}

impl DpTable {
    fn new(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            cells: vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cell(&self, i: usize, j: usize) -> u64 {
        self.cells[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: u64) {
        self.cells[i * self.cols + j] = v;
    }

    pub fn last(&self) -> u64 {
        self.cell(self.rows - 1, self.cols - 1)
    }

    /// Zero borders and nondecreasing along rows and columns.
    pub fn is_monotone(&self) -> bool {
        (0..self.rows).all(|i| self.cell(i, 0) == 0)
            && (0..self.cols).all(|j| self.cell(0, j) == 0)
            && (1..self.rows).all(|i| {
                (1..self.cols).all(|j| {
                    self.cell(i, j) >= self.cell(i - 1, j) && self.cell(i, j) >= self.cell(i, j - 1)
                })
            })
    }
}

/// Full LCSk++ table from the direct recurrence: each cell extends any
/// common suffix of length `q >= k` from `cell(i - q, j - q)`.
pub fn lcskpp_table(x: &[u8], y: &[u8], k: usize) -> Result<DpTable> {
    check_k(k)?;
    let (n, m) = (x.len(), y.len());
    let mut dp = DpTable::new(n + 1, m + 1);
    // common suffix length of x[..i] and y[..j]
    let mut suffix = vec![0usize; (n + 1) * (m + 1)];
    for i in 1..=n {
        for j in 1..=m {
            let s = if x[i - 1] == y[j - 1] {
                suffix[(i - 1) * (m + 1) + j - 1] + 1
            } else {
                0
            };
            suffix[i * (m + 1) + j] = s;
            let mut best = dp.cell(i - 1, j).max(dp.cell(i, j - 1));
            for q in k..=s {
                best = best.max(dp.cell(i - q, j - q) + q as u64);
            }
            dp.set(i, j, best);
        }
    }
    Ok(dp)
}

pub fn lcskpp_dp(x: &[u8], y: &[u8], k: usize) -> Result<u64> {
    Ok(lcskpp_table(x, y, k)?.last())
}

/// Full LCSk table: `max(up, left, diag_k + 1 if the k-windows ending here match)`.
pub fn lcsk_table(x: &[u8], y: &[u8], k: usize) -> Result<DpTable> {
    check_k(k)?;
    let (n, m) = (x.len(), y.len());
    let mut dp = DpTable::new(n + 1, m + 1);
    for i in 1..=n {
        for j in 1..=m {
            let mut best = dp.cell(i - 1, j).max(dp.cell(i, j - 1));
            if i >= k && j >= k && x[i - k..i] == y[j - k..j] {
                best = best.max(dp.cell(i - k, j - k) + 1);
            }
            dp.set(i, j, best);
        }
    }
    Ok(dp)
}

pub fn lcsk_dp(x: &[u8], y: &[u8], k: usize) -> Result<u64> {
    Ok(lcsk_table(x, y, k)?.last())
}

/// Textbook quadratic LCS length.
pub fn lcs_classic(x: &[u8], y: &[u8]) -> u64 {
    let mut prev = vec![0u64; y.len() + 1];
    let mut cur = vec![0u64; y.len() + 1];
    for &a in x {
        for (j, &b) in y.iter().enumerate() {
            cur[j + 1] = if a == b {
                prev[j] + 1
            } else {
                prev[j + 1].max(cur[j])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[y.len()]
}

/// Number of `(i, j)` with equal `k`-windows, by double loop.
pub fn count_match_pairs_naive(x: &[u8], y: &[u8], k: usize) -> usize {
    if k == 0 || k > x.len() || k > y.len() {
        return 0;
    }
    let mut r = 0;
    for i in 0..=x.len() - k {
        for j in 0..=y.len() - k {
            if x[i..i + k] == y[j..j + k] {
                r += 1;
            }
        }
    }
    r
}

/// Whether index lists `xi`, `yj` describe a k++ common subsequence.
///
/// Both lists must be strictly increasing, of equal length, and pick equal
/// symbols. The chain is cut wherever either list skips an index; every
/// resulting block must be at least `k` long.
pub fn validate_chain(x: &[u8], y: &[u8], k: usize, xi: &[usize], yj: &[usize]) -> bool {
    if xi.len() != yj.len() || k == 0 {
        return false;
    }
    if xi.iter().any(|&i| i >= x.len()) || yj.iter().any(|&j| j >= y.len()) {
        return false;
    }
    if xi.windows(2).any(|w| w[0] >= w[1]) || yj.windows(2).any(|w| w[0] >= w[1]) {
        return false;
    }
    if xi.iter().zip(yj).any(|(&i, &j)| x[i] != y[j]) {
        return false;
    }
    let mut run = 0;
    for t in 0..xi.len() {
        let joined = t > 0 && xi[t] == xi[t - 1] + 1 && yj[t] == yj[t - 1] + 1;
        if !joined {
            if t > 0 && run < k {
                return false;
            }
            run = 0;
        }
        run += 1;
    }
    xi.is_empty() || run >= k
}
