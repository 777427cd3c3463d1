//! Brute-force point counting on `(Z/qZ)^l`.
//!
//! For a list of integer vectors (the columns of a matrix) this counts the
//! points `z` for which every `z . column` is a unit, i.e. nonzero mod `q`.
//! The kernel walks `z` in odometer order: every digit change adds one fixed
//! row of the matrix (mod `q`) to the running dot products, including the
//! wrap from `q - 1` to `0`, so no carry correction is ever needed.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;

/// Default cap on `q^l * m` elementary updates.
pub const DEFAULT_BUDGET: u128 = 2_000_000_000;

const PARALLEL_THRESHOLD: u128 = 1 << 18;

/// Configured point counter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    pub budget: u128,
    pub parallel: bool,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            budget: DEFAULT_BUDGET,
            parallel: true,
        }
    }
}

impl Oracle {
    pub fn with_budget(budget: u128) -> Self {
        Oracle {
            budget,
            ..Self::default()
        }
    }

    /// Estimated number of elementary updates for counting `matrix` at `q`.
    pub fn work_estimate(matrix: &IntegerMatrix, q: u64) -> u128 {
        let mut w: u128 = matrix.cols().max(1) as u128;
        for _ in 0..matrix.rows() {
            w = w.saturating_mul(q as u128);
        }
        w
    }

    /// `#{z in (Z/qZ)^l : z . c != 0 for every column c}`.
    pub fn count(&self, matrix: &IntegerMatrix, q: u64) -> Result<u64> {
        self.run(matrix, None, q)
    }

    /// `#{z : z . c_j + offsets[j] != 0 for every j}`.
    pub fn count_shifted(&self, matrix: &IntegerMatrix, offsets: &[i64], q: u64) -> Result<u64> {
        if offsets.len() != matrix.cols() {
            return Err(Error::Domain(format!(
                "{} offsets for {} columns",
                offsets.len(),
                matrix.cols()
            )));
        }
        self.run(matrix, Some(offsets), q)
    }

    fn run(&self, matrix: &IntegerMatrix, offsets: Option<&[i64]>, q: u64) -> Result<u64> {
        if q == 0 {
            return Err(Error::Domain("q must be positive".into()));
        }
        if q > u32::MAX as u64 / 2 {
            return Err(Error::Domain(format!("q = {q} is too large")));
        }
        let m = matrix.cols();
        if q == 1 {
            // the only residue is 0, never a unit
            return Ok(u64::from(m == 0));
        }
        let estimate = Self::work_estimate(matrix, q);
        if estimate > self.budget {
            return Err(Error::Capacity {
                estimate,
                budget: self.budget,
            });
        }
        let qq = q as u32;
        let reduce = |x: i64| x.rem_euclid(q as i64) as u32;
        let start: Vec<u32> = match offsets {
            Some(o) => o.iter().map(|&x| reduce(x)).collect(),
            None => vec![0; m],
        };
        let l = matrix.rows();
        if l == 0 {
            return Ok(u64::from(start.iter().all(|&v| v != 0)));
        }
        // sparse rows: (column, coefficient mod q), zero coefficients dropped
        let rows: Vec<Vec<(usize, u32)>> = (0..l)
            .map(|i| {
                matrix
                    .row(i)
                    .iter()
                    .enumerate()
                    .map(|(j, &a)| (j, reduce(a)))
                    .filter(|&(_, a)| a != 0)
                    .collect()
            })
            .collect();

        let slab = |first: u32| -> u64 {
            let mut v = start.clone();
            for &(j, a) in &rows[0] {
                v[j] = ((v[j] as u64 + a as u64 * first as u64) % q) as u32;
            }
            count_slab(&rows[1..], v, qq)
        };
        let total = if self.parallel && estimate >= PARALLEL_THRESHOLD {
            (0..qq).into_par_iter().map(slab).sum()
        } else {
            (0..qq).map(slab).sum()
        };
        Ok(total)
    }
}

/// Counts over the odometer of `rows.len()` free digits, starting from dot products `v`.
fn count_slab(rows: &[Vec<(usize, u32)>], mut v: Vec<u32>, q: u32) -> u64 {
    let digits = rows.len();
    let mut zeros = v.iter().filter(|&&x| x == 0).count();
    let mut z = vec![0u32; digits];
    let mut count = 0u64;
    loop {
        if zeros == 0 {
            count += 1;
        }
        let mut d = digits;
        loop {
            if d == 0 {
                return count;
            }
            d -= 1;
            for &(j, a) in &rows[d] {
                let old = v[j];
                let mut nv = old + a;
                if nv >= q {
                    nv -= q;
                }
                v[j] = nv;
                zeros = zeros + usize::from(nv == 0) - usize::from(old == 0);
            }
            z[d] += 1;
            if z[d] < q {
                break;
            }
            z[d] = 0;
        }
    }
}

/// Complement count with the default budget.
pub fn count_complement(matrix: &IntegerMatrix, q: u64) -> Result<u64> {
    Oracle::default().count(matrix, q)
}

/// Shifted complement count with the default budget.
pub fn count_shifted(matrix: &IntegerMatrix, offsets: &[i64], q: u64) -> Result<u64> {
    Oracle::default().count_shifted(matrix, offsets, q)
}

/// Restricts the list to the hyperplane of column `column`, which must be `+-e_k`.
///
/// On `z_k = 0` the remaining forms lose their k-th coefficient, so the result
/// drops row `k` and the chosen column.
pub fn contraction(matrix: &IntegerMatrix, column: usize) -> Result<IntegerMatrix> {
    if column >= matrix.cols() {
        return Err(Error::IndexOutOfRange {
            index: column,
            max: matrix.cols().saturating_sub(1),
        });
    }
    let c = matrix.column(column);
    let nonzero: Vec<usize> = (0..c.len()).filter(|&i| c[i] != 0).collect();
    let k = match nonzero.as_slice() {
        [k] if c[*k].abs() == 1 => *k,
        _ => {
            return Err(Error::Domain(format!(
                "contraction needs a column equal to +-e_k, got {c:?}"
            )))
        }
    };
    let cols: Vec<Vec<i64>> = (0..matrix.cols())
        .filter(|&j| j != column)
        .map(|j| {
            (0..matrix.rows())
                .filter(|&i| i != k)
                .map(|i| matrix.get(i, j))
                .collect()
        })
        .collect();
    IntegerMatrix::from_columns(matrix.rows() - 1, &cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct enumeration, no incremental updates.
    fn naive(matrix: &IntegerMatrix, offsets: &[i64], q: u64) -> u64 {
        let l = matrix.rows();
        let total = (q as usize).pow(l as u32);
        let mut count = 0;
        for code in 0..total {
            let mut z = vec![0i64; l];
            let mut c = code;
            for zi in z.iter_mut() {
                *zi = (c % q as usize) as i64;
                c /= q as usize;
            }
            let ok = (0..matrix.cols()).all(|j| {
                let dot: i64 = (0..l).map(|i| z[i] * matrix.get(i, j)).sum::<i64>() + offsets[j];
                dot.rem_euclid(q as i64) != 0
            });
            count += u64::from(ok);
        }
        count
    }

    fn m(cols: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_columns(cols[0].len(), cols).unwrap()
    }

    #[test]
    fn single_coordinate_column() {
        for l in 1..=4 {
            let mut c = vec![0; l];
            c[0] = 1;
            for q in 1..=7u64 {
                let expect = q.pow(l as u32 - 1) * (q - 1);
                assert_eq!(count_complement(&m(&[c.clone()]), q).unwrap(), expect);
            }
        }
    }

    #[test]
    fn b2_full_system_even_q() {
        // T_{Phi+(B_2)}: e1-e2, e1+e2, e1, e2
        let t = m(&[vec![1, -1], vec![1, 1], vec![1, 0], vec![0, 1]]);
        assert_eq!(count_complement(&t, 4).unwrap(), 4);
        assert_eq!(naive(&t, &[0; 4], 4), 4);
    }

    #[test]
    fn q_one_and_empty_lists() {
        let t = m(&[vec![1, 0]]);
        assert_eq!(count_complement(&t, 1).unwrap(), 0);
        assert_eq!(count_complement(&IntegerMatrix::zeros(3, 0), 1).unwrap(), 1);
        assert_eq!(count_complement(&IntegerMatrix::zeros(3, 0), 5).unwrap(), 125);
        assert!(count_complement(&t, 0).is_err());
    }

    #[test]
    fn zero_rows() {
        let z = IntegerMatrix::zeros(0, 2);
        assert_eq!(count_complement(&z, 5).unwrap(), 0);
        assert_eq!(count_shifted(&z, &[1, 2], 5).unwrap(), 1);
        assert_eq!(count_shifted(&z, &[1, 5], 5).unwrap(), 0);
    }

    #[test]
    fn kernel_matches_naive() {
        let t = m(&[
            vec![1, -1, 0],
            vec![0, 1, 1],
            vec![2, 0, 0],
            vec![1, 1, -2],
            vec![0, 0, 3],
        ]);
        let offs = [0, 1, 1, 2, -1];
        for q in 1..=9 {
            assert_eq!(count_complement(&t, q).unwrap(), naive(&t, &[0; 5], q), "q={q}");
            assert_eq!(count_shifted(&t, &offs, q).unwrap(), naive(&t, &offs, q), "q={q}");
        }
    }

    #[test]
    fn zero_offsets_equal_plain_count() {
        let t = m(&[vec![1, -1, 0], vec![1, 1, 0], vec![0, 1, 1]]);
        for q in 2..=8 {
            assert_eq!(
                count_shifted(&t, &[0, 0, 0], q).unwrap(),
                count_complement(&t, q).unwrap()
            );
        }
    }

    #[test]
    fn parallel_and_serial_agree() {
        let t = m(&[
            vec![1, -1, 0, 0],
            vec![0, 1, 1, 0],
            vec![1, 0, 0, 1],
            vec![0, 0, 1, -1],
        ]);
        let serial = Oracle {
            parallel: false,
            ..Oracle::default()
        };
        let par = Oracle::default();
        assert_eq!(serial.count(&t, 30).unwrap(), par.count(&t, 30).unwrap());
    }

    #[test]
    fn budget_enforced() {
        let t = m(&[vec![1, 0, 0]]);
        let o = Oracle::with_budget(1000);
        assert!(matches!(o.count(&t, 11), Err(Error::Capacity { .. })));
        assert!(o.count(&t, 9).is_ok());
    }

    #[test]
    fn offsets_length_checked() {
        let t = m(&[vec![1, 0]]);
        assert!(matches!(count_shifted(&t, &[0, 0], 3), Err(Error::Domain(_))));
    }

    #[test]
    fn contraction_by_e1() {
        // {e1, e1 - e2} in B_2, contract by e1 -> [-1]
        let t = m(&[vec![1, 0], vec![1, -1]]);
        let c = contraction(&t, 0).unwrap();
        assert_eq!((c.rows(), c.cols()), (1, 1));
        assert_eq!(c.get(0, 0), -1);
        for q in 1..=7 {
            assert_eq!(count_complement(&c, q).unwrap(), q - 1);
        }
    }

    #[test]
    fn contraction_rejects_other_columns() {
        let t = m(&[vec![1, 1], vec![2, 0]]);
        assert!(contraction(&t, 0).is_err());
        assert!(contraction(&t, 1).is_err());
        assert!(contraction(&t, 2).is_err());
        let neg = m(&[vec![0, -1], vec![1, 1]]);
        assert!(contraction(&neg, 0).is_ok());
    }
}
