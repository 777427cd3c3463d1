use std::fmt;

use crate::error::{Error, Result};

/// A dense integer matrix whose columns are read as a list of vectors in `Z^rows`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    // row-major
    data: Vec<i64>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from row vectors.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Domain("ragged rows".into()));
        }
        Ok(IntegerMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    /// Builds a `rows x columns.len()` matrix whose j-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vec<i64>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::Domain(format!(
                    "column {j} has length {}, expected {rows}",
                    c.len()
                )));
            }
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.cols).map(move |j| self.column(j))
    }

    /// The submatrix keeping the given columns, in the given order.
    pub fn select_columns(&self, idx: &[usize]) -> IntegerMatrix {
        let mut m = Self::zeros(self.rows, idx.len());
        for (jj, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                m.set(i, jj, self.get(i, j));
            }
        }
        m
    }

    /// Appends the columns of `other` after those of `self`.
    pub fn hconcat(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.rows != other.rows {
            return Err(Error::Domain("row counts differ".into()));
        }
        let cols: Vec<Vec<i64>> = self.columns().chain(other.columns()).collect();
        Self::from_columns(self.rows, &cols)
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j));
            }
        }
        m
    }

    pub fn mul(&self, rhs: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Domain(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut m = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let v = (0..self.cols).map(|k| self.get(i, k) * rhs.get(k, j)).sum();
                m.set(i, j, v);
            }
        }
        Ok(m)
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerMatrix{:?}", (0..self.rows).map(|i| self.row(i)).collect::<Vec<_>>())
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| format!("{v:>3}")).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}
