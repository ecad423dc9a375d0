use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::elim::echelon;
use super::rational::{format_rational, rat, Rational, RationalRepr};
use crate::error::{Error, Result};

/// Dense exact-rational matrix, row-major.
///
/// Zero-sized matrices are allowed; they carry bases of zero subspaces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> RationalMatrix {
        RationalMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn scalar(n: usize, x: Rational) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<RationalMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(RationalMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> RationalMatrix {
        RationalMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
            .expect("rectangular input")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, columns: &[Vec<Rational>]) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(nrows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (r, x) in col.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        m
    }

    pub fn diagonal(entries: &[Rational]) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Rational) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut t = RationalMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn try_mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn scale(&self, x: &Rational) -> RationalMatrix {
        RationalMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|y| y * x).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn pow(&self, k: u64) -> RationalMatrix {
        assert!(self.is_square());
        let mut result = RationalMatrix::identity(self.rows);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Columns `cols` of `self`, in order.
    pub fn select_columns(&self, cols: &[usize]) -> RationalMatrix {
        let columns: Vec<_> = cols.iter().map(|&c| self.column(c)).collect();
        RationalMatrix::from_columns(self.rows, &columns)
    }

    pub fn hstack(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        Ok(RationalMatrix::from_columns(self.rows, &cols))
    }

    pub fn vstack(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(RationalMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Block-diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &RationalMatrix) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m.set(self.rows + r, self.cols + c, other.get(r, c).clone());
            }
        }
        m
    }

    pub fn kronecker(&self, other: &RationalMatrix) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        m.set(r1 * other.rows + r2, c1 * other.cols + c2, a * other.get(r2, c2));
                    }
                }
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        echelon(self, self.cols).rank()
    }

    /// Basis of `{v : self v = 0}` as the columns of the result.
    pub fn kernel_basis(&self) -> RationalMatrix {
        let ech = echelon(self, self.cols);
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        let columns: Vec<Vec<Rational>> =
            free.iter().map(|&f| ech.back_substitute(self.cols, None, Some(f))).collect();
        RationalMatrix::from_columns(self.cols, &columns)
    }

    /// Solve `self X = rhs`; `None` when inconsistent. Free unknowns are set to zero.
    pub fn solve(&self, rhs: &RationalMatrix) -> Result<Option<RationalMatrix>> {
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch("solve: row counts differ".into()));
        }
        let aug = self.hstack(rhs)?;
        let ech = echelon(&aug, self.cols);
        let rank = ech.rank();
        for row in &ech.rows[rank..] {
            if row[self.cols..].iter().any(|x| !x.is_zero()) {
                return Ok(None);
            }
        }
        let columns: Vec<Vec<Rational>> =
            (0..rhs.cols).map(|k| ech.back_substitute(self.cols, Some(self.cols + k), None)).collect();
        Ok(Some(RationalMatrix::from_columns(self.cols, &columns)))
    }

    pub fn inverse(&self) -> Result<RationalMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        if self.rank() < self.rows {
            return Err(Error::Singular);
        }
        self.solve(&RationalMatrix::identity(self.rows))?.ok_or(Error::Singular)
    }

    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        let mut m = self.to_rows();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            let pivot = m[c][c].clone();
            det *= &pivot;
            for r in c + 1..n {
                if m[r][c].is_zero() {
                    continue;
                }
                let f = &m[r][c] / &pivot;
                let pivot_row = m[c].clone();
                for (x, p) in m[r][c..].iter_mut().zip(&pivot_row[c..]) {
                    *x -= &f * p;
                }
            }
        }
        Ok(det)
    }

    /// Exterior square in the basis `e_i ∧ e_j`, `i < j`, ordered lexicographically.
    pub fn exterior_square(&self) -> RationalMatrix {
        assert!(self.is_square());
        let d = self.rows;
        let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
        let mut out = RationalMatrix::zeros(pairs.len(), pairs.len());
        for (col, &(i, j)) in pairs.iter().enumerate() {
            for (row, &(k, l)) in pairs.iter().enumerate() {
                let x = self.get(k, i) * self.get(l, j) - self.get(l, i) * self.get(k, j);
                out.set(row, col, x);
            }
        }
        out
    }

    /// Symmetric square in the basis `e_i e_j`, `i <= j`, ordered lexicographically.
    pub fn symmetric_square(&self) -> RationalMatrix {
        assert!(self.is_square());
        let d = self.rows;
        let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect();
        let mut out = RationalMatrix::zeros(pairs.len(), pairs.len());
        for (col, &(i, j)) in pairs.iter().enumerate() {
            for (row, &(k, l)) in pairs.iter().enumerate() {
                let x = if k == l {
                    self.get(k, i) * self.get(k, j)
                } else {
                    self.get(k, i) * self.get(l, j) + self.get(l, i) * self.get(k, j)
                };
                out.set(row, col, x);
            }
        }
        out
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;

    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        self.try_mul(rhs).expect("matrix dimensions agree")
    }
}

impl Add for &RationalMatrix {
    type Output = RationalMatrix;

    fn add(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &RationalMatrix {
    type Output = RationalMatrix;

    fn sub(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &RationalMatrix {
    type Output = RationalMatrix;

    fn neg(self) -> RationalMatrix {
        RationalMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_rational).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<RationalRepr>>,
}

impl Serialize for RationalMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows)
                .map(|r| self.row(r).iter().map(|x| RationalRepr::Str(format_rational(x))).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = MatrixJson::deserialize(deserializer)?;
        if raw.entries.len() != raw.rows || raw.entries.iter().any(|r| r.len() != raw.cols) {
            return Err(D::Error::custom("matrix entries do not match rows/cols"));
        }
        let mut data = Vec::with_capacity(raw.rows * raw.cols);
        for row in &raw.entries {
            for x in row {
                data.push(x.to_rational().map_err(D::Error::custom)?);
            }
        }
        Ok(RationalMatrix { rows: raw.rows, cols: raw.cols, data })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rational::ratio;

    fn m(rows: &[Vec<i64>]) -> RationalMatrix {
        RationalMatrix::from_i64_rows(rows)
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        assert_eq!(RationalMatrix::identity(3).kernel_basis().cols(), 0);
        assert_eq!(RationalMatrix::zeros(2, 2).kernel_basis().cols(), 2);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = m(&[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, -1, 2]]);
        let k = a.kernel_basis();
        assert_eq!(k.cols(), 2);
        assert!((&a * &k).is_zero());
        assert_eq!(k.rank(), 2);
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&[vec![2, 1], vec![1, 3]]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert_eq!(inv.get(0, 0), &ratio(3, 5));
        let singular = m(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.inverse(), Err(Error::Singular));
        let rhs = m(&[vec![1], vec![3]]);
        assert!(singular.solve(&rhs).unwrap().is_none());
        let rhs = m(&[vec![1], vec![2]]);
        let x = singular.solve(&rhs).unwrap().unwrap();
        assert_eq!(&singular * &x, rhs);
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let a = m(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]);
        assert_eq!(a.determinant().unwrap(), rat(6));
        assert_eq!(m(&[vec![0, 1], vec![1, 0]]).determinant().unwrap(), rat(-1));
    }

    #[test]
    fn squares_of_scalars() {
        let minus = RationalMatrix::scalar(3, rat(-1));
        assert!(minus.exterior_square().is_identity());
        assert!(minus.symmetric_square().is_identity());
        assert_eq!(RationalMatrix::identity(3).exterior_square().rows(), 3);
        assert_eq!(RationalMatrix::identity(3).symmetric_square().rows(), 6);
        assert_eq!(RationalMatrix::identity(4).exterior_square().rows(), 6);
    }

    #[test]
    fn json_round_trip() {
        let a = RationalMatrix::from_rows(vec![vec![ratio(1, 2), rat(-3)]]).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"rows":1,"cols":2,"entries":[["1/2","-3"]]}"#);
        let back: RationalMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        let ints: RationalMatrix = serde_json::from_str(r#"{"rows":1,"cols":2,"entries":[[1,"2/4"]]}"#).unwrap();
        assert_eq!(ints.get(0, 1), &ratio(1, 2));
        assert!(serde_json::from_str::<RationalMatrix>(r#"{"rows":2,"cols":2,"entries":[[1,2]]}"#).is_err());
    }
}
