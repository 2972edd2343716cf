//! Exact rational scalars and dense matrices.
//!
//! Elimination clears row denominators and runs fraction-free (Bareiss)
//! forward elimination over the integers, then back-substitutes to a reduced
//! row echelon form. The pivot rule is fixed (first row with a nonzero entry
//! in the current column), so every routine is deterministic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical `num/den` rendering used in every machine-readable output.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `a`, `-a` or `a/b`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::input(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::input("zero denominator"));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::input(format!("matrix data has {} entries, expected {}x{}", data.len(), rows, cols)));
        }
        Ok(RatMatrix { rows, cols, data })
    }

    /// Builds a matrix from integer rows. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| rat(x)));
        }
        RatMatrix { rows: r, cols: c, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::input("ragged rows"));
        }
        Ok(RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn column(values: Vec<Rational>) -> Self {
        RatMatrix { rows: values.len(), cols: 1, data: values }
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn diag(&self) -> Vec<Rational> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    /// `self · other`, skipping zero entries of `self`.
    pub fn matmul(&self, other: &RatMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Trace of `self · other` without forming the product.
    pub fn trace_product(&self, other: &RatMatrix) -> Rational {
        debug_assert_eq!(self.cols, other.rows);
        debug_assert_eq!(self.rows, other.cols);
        let mut acc = Rational::zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let b = &other[(k, i)];
                if !b.is_zero() {
                    acc += a * b;
                }
            }
        }
        acc
    }

    /// Lie bracket `[self, other] = self·other − other·self`.
    pub fn bracket(&self, other: &RatMatrix) -> Self {
        let ab = self.matmul(other).expect("bracket of square matrices of equal size");
        let ba = other.matmul(self).expect("bracket of square matrices of equal size");
        &ab - &ba
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::input("power of non-square matrix"));
        }
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = out.matmul(self)?;
        }
        Ok(out)
    }

    /// Horizontal concatenation.
    pub fn hstack(blocks: &[&RatMatrix]) -> Result<Self> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        if blocks.iter().any(|b| b.rows != rows) {
            return Err(Error::input("hstack: row counts differ"));
        }
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            for i in 0..rows {
                for j in 0..b.cols {
                    out[(i, offset + j)] = b[(i, j)].clone();
                }
            }
            offset += b.cols;
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn vstack(blocks: &[&RatMatrix]) -> Result<Self> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(Error::input("vstack: column counts differ"));
        }
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            data.extend(b.data.iter().cloned());
            rows += b.rows;
        }
        Ok(RatMatrix { rows, cols, data })
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut out = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                out[(i, j)] = v.clone();
            }
        }
        out
    }

    pub fn col_vec(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "apply: length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add: shape mismatch");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub: shape mismatch");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        self.matmul(rhs).expect("mul: shape mismatch")
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rref: RatMatrix,
    pub pivots: Vec<usize>,
}

/// Multiplies each row by the lcm of its denominators.
fn integer_rows(a: &RatMatrix) -> Vec<Vec<BigInt>> {
    (0..a.rows)
        .map(|i| {
            let row = a.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

pub fn echelon(a: &RatMatrix) -> Echelon {
    let (m, n) = (a.rows, a.cols);
    let mut rows = integer_rows(a);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (top, bottom) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = pivot_row[c].clone();
        for row in bottom.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..n {
                let keep = !row[j].is_zero();
                let elim = !factor.is_zero() && !pivot_row[j].is_zero();
                if !keep && !elim {
                    continue;
                }
                let mut v = if keep { &pivot * &row[j] } else { BigInt::zero() };
                if elim {
                    v -= &factor * &pivot_row[j];
                }
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }

    let mut rref = RatMatrix::zeros(m, n);
    for (i, row) in rows.iter().enumerate().take(pivots.len()) {
        let lead = &row[pivots[i]];
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() {
                rref[(i, j)] = Rational::new(x.clone(), lead.clone());
            }
        }
    }
    for (i, &pc) in pivots.iter().enumerate().rev() {
        for k in 0..i {
            let factor = rref[(k, pc)].clone();
            if factor.is_zero() {
                continue;
            }
            for j in pc..n {
                let v = &rref[(i, j)];
                if !v.is_zero() {
                    let delta = &factor * v;
                    rref[(k, j)] -= delta;
                }
            }
        }
    }
    Echelon { rref, pivots }
}

pub fn rank(a: &RatMatrix) -> usize {
    echelon(a).pivots.len()
}

/// Some `x` with `a·x = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve_linear(a: &RatMatrix, b: &RatMatrix) -> Result<Option<RatMatrix>> {
    if b.cols != 1 || b.rows != a.rows {
        return Err(Error::input(format!("solve_linear: A is {}x{}, b is {}x{}", a.rows, a.cols, b.rows, b.cols)));
    }
    let aug = RatMatrix::hstack(&[a, b])?;
    let ech = echelon(&aug);
    if ech.pivots.last() == Some(&a.cols) {
        return Ok(None);
    }
    let mut x = RatMatrix::zeros(a.cols, 1);
    for (i, &pc) in ech.pivots.iter().enumerate() {
        x[(pc, 0)] = ech.rref[(i, a.cols)].clone();
    }
    Ok(Some(x))
}

/// Basis of the null space, one column vector per free column in increasing
/// order, each with a 1 in its free coordinate.
pub fn kernel_basis(a: &RatMatrix) -> Vec<RatMatrix> {
    kernel_vectors(a).into_iter().map(RatMatrix::column).collect()
}

/// Same as [`kernel_basis`] but returning plain vectors.
pub fn kernel_vectors(a: &RatMatrix) -> Vec<Vec<Rational>> {
    let ech = echelon(a);
    let n = a.cols;
    let mut is_pivot = vec![false; n];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (i, &pc) in ech.pivots.iter().enumerate() {
                v[pc] = -ech.rref[(i, f)].clone();
            }
            v
        })
        .collect()
}

/// Exact determinant via Bareiss elimination.
pub fn determinant(a: &RatMatrix) -> Result<Rational> {
    if !a.is_square() {
        return Err(Error::input("determinant of non-square matrix"));
    }
    let n = a.rows;
    if n == 0 {
        return Ok(Rational::one());
    }
    let scale = (0..n).fold(BigInt::one(), |acc, i| acc * a.row(i).iter().fold(BigInt::one(), |l, x| l.lcm(x.denom())));
    let mut m = integer_rows(a);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    Ok(Rational::new(sign * &m[n - 1][n - 1], scale))
}

pub fn inverse(a: &RatMatrix) -> Result<Option<RatMatrix>> {
    if !a.is_square() {
        return Err(Error::input("inverse of non-square matrix"));
    }
    let n = a.rows;
    let aug = RatMatrix::hstack(&[a, &RatMatrix::identity(n)])?;
    let ech = echelon(&aug);
    if ech.pivots.len() < n || ech.pivots[n - 1] != n - 1 {
        return Ok(None);
    }
    let mut inv = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv[(i, j)] = ech.rref[(i, n + j)].clone();
        }
    }
    Ok(Some(inv))
}

/// True iff the symmetric Gram matrix has nonzero determinant.
pub fn form_nondegenerate(g: &RatMatrix) -> Result<bool> {
    if !g.is_square() {
        return Err(Error::input("form_nondegenerate: Gram matrix must be square"));
    }
    Ok(!determinant(g)?.is_zero())
}

/// Sign helper for rationals: -1, 0 or 1.
pub fn signum(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}
