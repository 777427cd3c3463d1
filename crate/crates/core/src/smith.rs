//! Smith normal form and the LCM-period of a root list.

use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;

/// Default cap on the number of column subsets [`lcm_period`] visits.
pub const DEFAULT_SUBSET_BUDGET: u128 = 1 << 22;

/// `Z^rows / <columns>  =  (+) Z/d_i  (+)  Z^free_rank`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`, units included.
    pub invariant_factors: Vec<i128>,
    pub free_rank: usize,
}

impl SmithForm {
    /// The invariant factors greater than one.
    pub fn torsion(&self) -> Vec<i128> {
        self.invariant_factors.iter().copied().filter(|&d| d > 1).collect()
    }

    /// Largest invariant factor greater than one, or 1 for a torsion-free quotient.
    pub fn exponent(&self) -> i128 {
        self.invariant_factors.last().copied().unwrap_or(1).max(1)
    }
}

pub fn smith_normal_form(matrix: &IntegerMatrix) -> SmithForm {
    let (r, c) = (matrix.rows(), matrix.cols());
    let mut a: Vec<Vec<i128>> = (0..r)
        .map(|i| matrix.row(i).iter().map(|&v| v as i128).collect())
        .collect();
    let mut diag = Vec::new();
    for t in 0..r.min(c) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let Some((pi, pj)) = min_nonzero(&a, t) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..r {
                let f = a[i][t] / a[t][t];
                if f != 0 {
                    let pivot = a[t].clone();
                    for (x, y) in a[i][t..].iter_mut().zip(&pivot[t..]) {
                        *x -= f * y;
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..c {
                let f = a[t][j] / a[t][t];
                if f != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= f * row[t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                // a remainder is smaller than the pivot: move it in and retry
                let (pi, pj) = min_nonzero_cross(&a, t);
                a.swap(t, pi);
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                continue;
            }
            let p = a[t][t];
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    let src = a[i].clone();
                    for (x, y) in a[t][t..].iter_mut().zip(&src[t..]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    SmithForm {
        free_rank: r - diag.len(),
        invariant_factors: diag,
    }
}

fn min_nonzero(a: &[Vec<i128>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(i128, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, &v) in row.iter().enumerate().skip(t) {
            if v != 0 && best.is_none_or(|(b, _, _)| v.abs() < b) {
                best = Some((v.abs(), i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Smallest nonzero entry in row `t` or column `t` (the pivot included).
fn min_nonzero_cross(a: &[Vec<i128>], t: usize) -> (usize, usize) {
    let mut best = (a[t][t].abs(), t, t);
    for (i, row) in a.iter().enumerate().skip(t + 1) {
        if row[t] != 0 && row[t].abs() < best.0 {
            best = (row[t].abs(), i, t);
        }
    }
    for (j, &v) in a[t].iter().enumerate().skip(t + 1) {
        if v != 0 && v.abs() < best.0 {
            best = (v.abs(), t, j);
        }
    }
    (best.1, best.2)
}

/// `lcm` of the largest elementary divisor over column subsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LcmPeriod {
    pub value: u64,
    /// `false` when subsets were capped below the column count: then `value` is a lower bound.
    pub exact: bool,
}

/// LCM-period over all column subsets of size at most `subset_size_cap`.
pub fn lcm_period(matrix: &IntegerMatrix, subset_size_cap: usize) -> Result<LcmPeriod> {
    lcm_period_with_budget(matrix, subset_size_cap, DEFAULT_SUBSET_BUDGET)
}

pub fn lcm_period_with_budget(
    matrix: &IntegerMatrix,
    subset_size_cap: usize,
    budget: u128,
) -> Result<LcmPeriod> {
    let m = matrix.cols();
    let cap = subset_size_cap.min(m);
    let total: u128 = (0..=cap).map(|k| binomial(m, k)).sum();
    if total > budget {
        return Err(Error::Capacity {
            estimate: total,
            budget,
        });
    }
    let mut value: u64 = 1;
    let mut subset: Vec<usize> = Vec::with_capacity(cap);
    for size in 1..=cap {
        subset.clear();
        subset.extend(0..size);
        loop {
            let e = smith_normal_form(&matrix.select_columns(&subset)).exponent() as u64;
            value = lcm(value, e);
            if !next_combination(&mut subset, m) {
                break;
            }
        }
    }
    Ok(LcmPeriod {
        value,
        exact: cap == m,
    })
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
