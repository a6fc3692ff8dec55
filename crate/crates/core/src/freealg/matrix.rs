use std::fmt;

use super::poly::NCPoly;
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// A dense matrix over the base field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<ScalarMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        if let Some(bad) = rows.iter().flatten().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field.tag(), bad.field().tag()));
        }
        Ok(ScalarMatrix { rows: r, cols: c, field, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Result<ScalarMatrix> {
        ScalarMatrix::from_rows(
            field,
            rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect(),
        )
    }

    pub fn identity(n: usize, field: Field) -> ScalarMatrix {
        let mut m = ScalarMatrix { rows: n, cols: n, field, data: vec![field.zero(); n * n] };
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn mul(&self, other: &ScalarMatrix) -> Result<ScalarMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape("matrix product dimensions".into()));
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.field.zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                data.push(acc);
            }
        }
        Ok(ScalarMatrix { rows: self.rows, cols: other.cols, field: self.field, data })
    }

    pub fn transpose(&self) -> ScalarMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        ScalarMatrix { rows: self.cols, cols: self.rows, field: self.field, data }
    }

    /// Gauss-Jordan inverse; `SingularMatrix` when not invertible.
    pub fn inverse(&self) -> Result<ScalarMatrix> {
        if self.rows != self.cols {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a: Vec<Vec<Scalar>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut inv: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { self.field.one() } else { self.field.zero() })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].inv()?;
            for j in 0..n {
                a[col][j] = &a[col][j] * &p;
                inv[col][j] = &inv[col][j] * &p;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in 0..n {
                        a[r][j] = &a[r][j] - &(&f * &a[col][j]);
                        inv[r][j] = &inv[r][j] - &(&f * &inv[col][j]);
                    }
                }
            }
        }
        ScalarMatrix::from_rows(self.field, inv)
    }
}

/// An `n × n` matrix of polynomials. Entry `(k, i)` (row `k`, column `i`)
/// holds the symbol with lower index `k` and upper index `i`, so composing
/// commutation-rule images is ordinary matrix multiplication.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixPoly {
    n: usize,
    field: Field,
    entries: Vec<NCPoly>,
}

impl MatrixPoly {
    pub fn zero(n: usize, field: Field) -> MatrixPoly {
        MatrixPoly { n, field, entries: vec![NCPoly::zero(n, field); n * n] }
    }

    pub fn identity(n: usize, field: Field) -> MatrixPoly {
        let mut m = MatrixPoly::zero(n, field);
        for i in 0..n {
            m.entries[i * n + i] = NCPoly::one(n, field);
        }
        m
    }

    /// Builds from a row-major grid; every entry must have `n` generators
    /// where `n` is the grid size.
    pub fn from_grid(field: Field, grid: Vec<Vec<NCPoly>>) -> Result<MatrixPoly> {
        let n = grid.len();
        if grid.iter().any(|row| row.len() != n) {
            return Err(Error::Shape(format!("matrix must be {n}x{n}")));
        }
        let entries: Vec<NCPoly> = grid.into_iter().flatten().collect();
        if let Some(bad) = entries.iter().find(|p| p.n() != n) {
            return Err(Error::GeneratorMismatch(n, bad.n()));
        }
        if let Some(bad) = entries.iter().find(|p| p.field() != field) {
            return Err(Error::FieldMismatch(field.tag(), bad.field().tag()));
        }
        Ok(MatrixPoly { n, field, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, row: usize, col: usize) -> &NCPoly {
        &self.entries[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, p: NCPoly) {
        self.entries[row * self.n + col] = p;
    }

    pub fn entries(&self) -> impl Iterator<Item = &NCPoly> {
        self.entries.iter()
    }

    /// `(row, col, entry)` triples in row-major order.
    pub fn indexed_entries(&self) -> impl Iterator<Item = (usize, usize, &NCPoly)> {
        let n = self.n;
        self.entries.iter().enumerate().map(move |(idx, p)| (idx / n, idx % n, p))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(NCPoly::is_zero)
    }

    pub fn checked_mul(&self, other: &MatrixPoly) -> Result<MatrixPoly> {
        if self.n != other.n {
            return Err(Error::GeneratorMismatch(self.n, other.n));
        }
        let n = self.n;
        let field = self.field;
        let mut out = MatrixPoly::zero(n, field);
        for k in 0..n {
            for i in 0..n {
                let mut acc = NCPoly::zero(n, field);
                for l in 0..n {
                    acc = acc.checked_add(&self.get(k, l).checked_mul(other.get(l, i))?)?;
                }
                out.set(k, i, acc);
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &MatrixPoly) -> Result<MatrixPoly> {
        if self.n != other.n {
            return Err(Error::GeneratorMismatch(self.n, other.n));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_>>()?;
        Ok(MatrixPoly { n: self.n, field: self.field, entries })
    }

    pub fn checked_sub(&self, other: &MatrixPoly) -> Result<MatrixPoly> {
        if self.n != other.n {
            return Err(Error::GeneratorMismatch(self.n, other.n));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<_>>()?;
        Ok(MatrixPoly { n: self.n, field: self.field, entries })
    }

    pub fn scale(&self, c: &Scalar) -> Result<MatrixPoly> {
        let entries = self.entries.iter().map(|p| p.scale(c)).collect::<Result<_>>()?;
        Ok(MatrixPoly { n: self.n, field: self.field, entries })
    }

    pub fn map_entries<F>(&self, f: F) -> Result<MatrixPoly>
    where
        F: FnMut(&NCPoly) -> Result<NCPoly>,
    {
        let entries = self.entries.iter().map(f).collect::<Result<_>>()?;
        Ok(MatrixPoly { n: self.n, field: self.field, entries })
    }
}

impl fmt::Display for MatrixPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|i| self.get(k, i).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
