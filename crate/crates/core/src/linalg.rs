//! Exact linear algebra over the integers and the rationals for the small
//! square matrices that show up here (rank ≤ 8, relation matrices ≤ 240).

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend_from_slice(row);
        }
        IntMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Builds the matrix whose j-th column is `cols[j]`.
    pub fn from_columns(cols: &[Vec<i64>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged matrix");
            for (i, &v) in col.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// Bilinear evaluation `xᵀ M y`.
    pub fn bilinear(&self, x: &[i64], y: &[i64]) -> i64 {
        let my = self.mul_vec(y);
        x.iter().zip(&my).map(|(a, b)| a * b).sum()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<i64> {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<Vec<i128>> = self
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(i128::from).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(p) => {
                        a.swap(k, p);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j]
                        .checked_mul(a[k][k])
                        .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                        .ok_or(Error::Overflow("determinant"))?;
                    a[i][j] = num / prev;
                }
                a[i][k] = 0;
            }
            prev = a[k][k];
        }
        i64::try_from(sign * a[n - 1][n - 1]).map_err(|_| Error::Overflow("determinant"))
    }

    /// Determinants of the leading principal submatrices, sizes 1..=n.
    pub fn leading_minors(&self) -> Result<Vec<i64>> {
        (1..=self.rows)
            .map(|k| {
                let sub: Vec<Vec<i64>> = (0..k).map(|i| self.row(i)[..k].to_vec()).collect();
                IntMatrix::from_rows(&sub).determinant()
            })
            .collect()
    }

    pub fn is_unimodular(&self) -> Result<bool> {
        Ok(self.rows == self.cols && self.determinant()?.abs() == 1)
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// Dense rational matrix, used for inverses that are only integral after the fact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    n_rows: usize,
    n_cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn from_int(m: &IntMatrix) -> Self {
        RatMatrix {
            n_rows: m.rows,
            n_cols: m.cols,
            data: m
                .data
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_int(&IntMatrix::identity(n))
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.n_cols + j]
    }

    fn get_mut(&mut self, i: usize, j: usize) -> &mut BigRational {
        &mut self.data[i * self.n_cols + j]
    }

    pub fn rows(&self) -> usize {
        self.n_rows
    }

    pub fn cols(&self) -> usize {
        self.n_cols
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.n_cols {
            for i in 0..self.n_rows {
                data.push(self.get(i, j).clone());
            }
        }
        RatMatrix {
            n_rows: self.n_cols,
            n_cols: self.n_rows,
            data,
        }
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n_cols, other.n_rows);
        let mut data = vec![BigRational::zero(); self.n_rows * other.n_cols];
        for i in 0..self.n_rows {
            for k in 0..self.n_cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.n_cols {
                    data[i * other.n_cols + j] += a * other.get(k, j);
                }
            }
        }
        RatMatrix {
            n_rows: self.n_rows,
            n_cols: other.n_cols,
            data,
        }
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.n_rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<RatMatrix> {
        assert_eq!(self.n_rows, self.n_cols, "inverse of a non-square matrix");
        let n = self.n_rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(Error::Singular)?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a.get(col, col).clone();
            for j in 0..n {
                *a.get_mut(col, j) /= &p;
                *inv.get_mut(col, j) /= &p;
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..n {
                    let da = a.get(col, j) * &factor;
                    let di = inv.get(col, j) * &factor;
                    *a.get_mut(r, j) -= da;
                    *inv.get_mut(r, j) -= di;
                }
            }
        }
        Ok(inv)
    }

    /// The integer matrix with the same entries, if every entry is integral.
    pub fn to_int(&self) -> Option<IntMatrix> {
        let mut m = IntMatrix::zeros(self.n_rows, self.n_cols);
        for (k, v) in self.data.iter().enumerate() {
            if !v.is_integer() {
                return None;
            }
            m.data[k] = v.to_integer().to_i64()?;
        }
        Some(m)
    }

    pub fn is_identity(&self) -> bool {
        self.n_rows == self.n_cols
            && (0..self.n_rows).all(|i| {
                (0..self.n_cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    /// Largest denominator among the entries.
    pub fn max_denominator(&self) -> BigInt {
        self.data
            .iter()
            .map(|v| v.denom().abs())
            .max()
            .unwrap_or_else(BigInt::one)
    }
}

/// Invariant factors of an integer matrix: the nonzero diagonal entries of its
/// Smith normal form, in divisibility order.
pub fn smith_invariant_factors(m: &IntMatrix) -> Result<Vec<i64>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<i128>> = m
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(i128::from).collect())
        .collect();
    let mut factors = Vec::new();
    for t in 0..rows.min(cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let Some((pi, pj)) = min_abs_entry(&a, t) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t] != 0 {
                    let q = a[i][t].div_euclid(a[t][t]);
                    row_axpy(&mut a, i, t, -q)?;
                    if a[i][t] != 0 {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if a[t][j] != 0 {
                    let q = a[t][j].div_euclid(a[t][t]);
                    col_axpy(&mut a, j, t, -q)?;
                    if a[t][j] != 0 {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                // Divisibility: fold any offending row into the pivot row.
                let p = a[t][t];
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
                match bad {
                    Some(i) => row_axpy(&mut a, t, i, 1)?,
                    None => break,
                }
            }
            let (pi, pj) = min_abs_entry_in_cross(&a, t);
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
        }
        let d = a[t][t].abs();
        factors.push(i64::try_from(d).map_err(|_| Error::Overflow("smith normal form"))?);
    }
    Ok(factors)
}

fn min_abs_entry(a: &[Vec<i128>], t: usize) -> Option<(usize, usize)> {
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

fn min_abs_entry_in_cross(a: &[Vec<i128>], t: usize) -> (usize, usize) {
    let mut best = (a[t][t].abs(), t, t);
    for (i, row) in a.iter().enumerate().skip(t) {
        let v = row[t];
        if v != 0 && (best.0 == 0 || v.abs() < best.0) {
            best = (v.abs(), i, t);
        }
    }
    for (j, &v) in a[t].iter().enumerate().skip(t) {
        if v != 0 && (best.0 == 0 || v.abs() < best.0) {
            best = (v.abs(), t, j);
        }
    }
    (best.1, best.2)
}

fn row_axpy(a: &mut [Vec<i128>], dst: usize, src: usize, k: i128) -> Result<()> {
    for j in 0..a[dst].len() {
        let v = a[src][j]
            .checked_mul(k)
            .and_then(|x| x.checked_add(a[dst][j]))
            .ok_or(Error::Overflow("smith normal form"))?;
        a[dst][j] = v;
    }
    Ok(())
}

fn col_axpy(a: &mut [Vec<i128>], dst: usize, src: usize, k: i128) -> Result<()> {
    for row in a.iter_mut() {
        let v = row[src]
            .checked_mul(k)
            .and_then(|x| x.checked_add(row[dst]))
            .ok_or(Error::Overflow("smith normal form"))?;
        row[dst] = v;
    }
    Ok(())
}
