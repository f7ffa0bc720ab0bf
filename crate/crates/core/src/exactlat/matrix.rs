use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type BigRat = BigRational;

/// Dense integer matrix with arbitrary-precision entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<BigInt>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r.iter().cloned());
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    pub fn from_i64_rows(cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| to_big(r)).collect();
        Self::from_rows(cols, &big)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: v.len() });
        }
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += c * self.get(i, j);
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.row_vecs();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[source * self.cols + j] * factor;
            self.data[target * self.cols + j] += v;
        }
    }

    /// col[target] += factor * col[source]
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + source] * factor;
            self.data[i * self.cols + target] += v;
        }
    }

    pub(crate) fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.data[idx] = -&self.data[idx];
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Dense rational matrix; used for homomorphisms and changes of embedding.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRat>,
}

impl RatMatrix {
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigRat>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r);
        }
        Ok(RatMatrix { rows: n, cols, data })
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![BigRat::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = BigRat::one();
        }
        RatMatrix { rows: n, cols: n, data }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        RatMatrix {
            rows: m.rows(),
            cols: m.cols(),
            data: m.data.iter().map(|x| BigRat::from_integer(x.clone())).collect(),
        }
    }

    pub fn from_i64_rows(cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            cols,
            rows.iter().map(|r| r.iter().map(|&x| BigRat::from_integer(x.into())).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRat {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigRat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigRat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn scaled(&self, factor: &BigRat) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * factor).collect() }
    }

    /// Matrix times an integer column vector.
    pub fn apply_int(&self, v: &[i64]) -> Result<Vec<BigRat>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(BigRat::zero(), |acc, (a, &b)| acc + a * BigRat::from_integer(b.into()))
            })
            .collect())
    }

    /// Integral image of an integer vector, or `None` if some coordinate is fractional.
    pub fn apply_integral(&self, v: &[i64]) -> Result<Option<Vec<i64>>> {
        let img = self.apply_int(v)?;
        let mut out = Vec::with_capacity(img.len());
        for x in img {
            if !x.is_integer() {
                return Ok(None);
            }
            out.push(x.to_integer().to_i64().ok_or(Error::Overflow("matrix image"))?);
        }
        Ok(Some(out))
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut data = vec![BigRat::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(RatMatrix { rows: self.rows, cols: other.cols, data })
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut a = self.row_vecs();
        rational_echelon(&mut a, self.cols).len()
    }

    /// Inverse of a square matrix by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<RatMatrix> {
        if self.rows != self.cols {
            return Err(Error::NonInvertible);
        }
        let n = self.rows;
        let mut aug: Vec<Vec<BigRat>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { BigRat::one() } else { BigRat::zero() }));
                r
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !aug[r][c].is_zero()).ok_or(Error::NonInvertible)?;
            aug.swap(c, p);
            let inv = aug[c][c].recip();
            for x in aug[c].iter_mut() {
                *x *= &inv;
            }
            for r in 0..n {
                if r != c && !aug[r][c].is_zero() {
                    let f = aug[r][c].clone();
                    let pivot_row = aug[c].clone();
                    for (x, p) in aug[r].iter_mut().zip(&pivot_row) {
                        *x -= &f * p;
                    }
                }
            }
        }
        RatMatrix::from_rows(n, aug.into_iter().map(|r| r[n..].to_vec()).collect())
    }

    /// Solves `self * X = rhs` for X (columns independent), choosing zero for free
    /// variables. Returns `None` when the system is inconsistent.
    pub fn solve_right(&self, rhs: &RatMatrix) -> Result<Option<RatMatrix>> {
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: rhs.rows });
        }
        let n = self.cols;
        let k = rhs.cols;
        let mut aug: Vec<Vec<BigRat>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend(rhs.row(i).iter().cloned());
                r
            })
            .collect();
        let pivots = rational_echelon(&mut aug, n);
        // rows past the pivot count must have zero right-hand side
        for r in aug.iter().skip(pivots.len()) {
            if r[n..].iter().any(|x| !x.is_zero()) {
                return Ok(None);
            }
        }
        let mut sol = vec![vec![BigRat::zero(); k]; n];
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..k {
                sol[c][j] = aug[r][n + j].clone();
            }
        }
        Ok(Some(RatMatrix::from_rows(k, sol)?))
    }
}

/// Reduced row echelon form over Q restricted to the first `ncols` columns.
/// Returns pivot columns; rows are reordered so pivot rows come first.
pub(crate) fn rational_echelon(a: &mut [Vec<BigRat>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn from_big(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter().map(|x| x.to_i64().ok_or(Error::Overflow("vector conversion"))).collect()
}

/// Parses a rational literal such as `3`, `-4/3` or `1/2`.
pub fn parse_rational(s: &str) -> Result<BigRat> {
    let s = s.trim();
    let parse_int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad rational `{s}`")));
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(BigRat::new(parse_int(n)?, d))
        }
        None => Ok(BigRat::from_integer(parse_int(s)?)),
    }
}

pub fn format_rational(q: &BigRat) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn abs_cmp(a: &BigInt, b: &BigInt) -> std::cmp::Ordering {
    a.abs().cmp(&b.abs())
}
