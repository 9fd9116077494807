//! Scalar field abstraction, dense vectors and matrices, linear solving and
//! the orientation predicate.
//!
//! Every combinatorial decision in the crate goes through [`Field::sign`].
//! For [`BigRational`] the sign is exact. The `f64` implementation uses a
//! fixed absolute tolerance and carries no robustness guarantee; it exists
//! for quick experiments on well-conditioned inputs.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    fn to_ordering(self) -> Ordering {
        match self {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

/// An ordered field the geometry runs over.
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialOrd
    + Num
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// Sign used for every classification decision.
    fn sign(&self) -> Sign;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        let n = Self::from_i64(numer).expect("i64 is representable");
        let d = Self::from_i64(denom).expect("i64 is representable");
        n / d
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn cmp_field(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).sign().to_ordering()
    }

    fn same(&self, other: &Self) -> bool {
        self.cmp_field(other) == Ordering::Equal
    }
}

impl Field for BigRational {
    fn sign(&self) -> Sign {
        if self.is_zero() {
            Sign::Zero
        } else if self.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

/// Absolute tolerance behind `f64` sign decisions.
pub const F64_EPS: f64 = 1e-9;

impl Field for f64 {
    fn sign(&self) -> Sign {
        if self.abs() <= F64_EPS {
            Sign::Zero
        } else if *self > 0.0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }
}

/// Parses `"n"` or `"p/q"` with an optional leading minus into a canonical
/// rational. Zero denominators are rejected.
pub fn parse_rational(input: &str) -> Result<BigRational> {
    let fail = |reason: &str| Error::ParseScalar {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let s = input.trim();
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |part: &str| -> Result<BigInt> {
        if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(fail("expected decimal digits"));
        }
        part.parse::<BigInt>().map_err(|e| fail(&e.to_string()))
    };
    let mut numer = digits(num)?;
    let denom = match den {
        Some(d) => digits(d)?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(fail("zero denominator"));
    }
    if negative {
        numer = -numer;
    }
    Ok(BigRational::new(numer, denom))
}

/// Inverse of [`parse_rational`].
pub fn format_rational(q: &BigRational) -> String {
    q.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Vector<T>(Vec<T>);

impl<T: Field> Vector<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Vector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![T::zero(); dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[axis] = T::one();
        v
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        Vector(
            coords
                .iter()
                .map(|&c| T::from_i64(c).expect("i64 is representable"))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<T> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.0.iter()
    }

    pub fn dot(&self, other: &Self) -> T {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }

    pub fn scale(&self, k: &T) -> Self {
        Vector(self.0.iter().map(|a| a.clone() * k.clone()).collect())
    }

    pub fn neg(&self) -> Self {
        Vector(self.0.iter().map(|a| -a.clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|a| a.sign().is_zero())
    }

    /// Coordinate-wise equality under [`Field::sign`].
    pub fn same(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a.same(b))
    }

    /// Appends one coordinate.
    pub fn extended(&self, last: T) -> Self {
        let mut c = self.0.clone();
        c.push(last);
        Vector(c)
    }

    /// Drops coordinate `axis`.
    pub fn without(&self, axis: usize) -> Self {
        let mut c = self.0.clone();
        c.remove(axis);
        Vector(c)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(Field::to_f64_lossy).collect()
    }

    /// Arithmetic mean of a nonempty point set.
    pub fn centroid<'a>(points: impl IntoIterator<Item = &'a Vector<T>>) -> Option<Self> {
        let mut iter = points.into_iter();
        let first = iter.next()?.clone();
        let (sum, count) = iter.fold((first, 1i64), |(s, n), p| (s.add(p), n + 1));
        Some(sum.scale(&T::from_ratio(1, count)))
    }

    /// Lexicographic order under [`Field::cmp_field`].
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.cmp_field(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.dim().cmp(&other.dim())
    }
}

impl<T> Index<usize> for Vector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T> IndexMut<usize> for Vector<T> {
    fn index_mut(&mut self, i: usize) -> &mut T {
        &mut self.0[i]
    }
}

impl<T: fmt::Display> fmt::Display for Vector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl<T> From<Vec<T>> for Vector<T> {
    fn from(v: Vec<T>) -> Self {
        Vector(v)
    }
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: Vec<Vec<T>>,
    cols: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LinearSolution<T> {
    Unique(Vector<T>),
    /// Affine solution set `particular + span(basis)`.
    Space {
        particular: Vector<T>,
        basis: Vec<Vector<T>>,
    },
    Inconsistent,
}

impl<T: Field> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Matrix { rows, cols })
    }

    pub fn from_vectors<'a>(rows: impl IntoIterator<Item = &'a Vector<T>>, cols: usize) -> Result<Self> {
        Self::from_rows(rows.into_iter().map(|v| v.coords().to_vec()).collect(), cols)
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
            .collect();
        Matrix { rows, cols: n }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.rows[i]
    }

    pub fn mul_vec(&self, x: &Vector<T>) -> Vector<T> {
        Vector(
            self.rows
                .iter()
                .map(|r| {
                    r.iter()
                        .zip(x.iter())
                        .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
                })
                .collect(),
        )
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Matrix<T>, Vec<usize>) {
        let mut m = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == m.len() {
                break;
            }
            // Largest magnitude pivot; any nonzero works over an exact field.
            let Some(p) = (r..m.len())
                .filter(|&i| !m[i][c].sign().is_zero())
                .max_by(|&i, &j| m[i][c].abs().partial_cmp(&m[j][c].abs()).unwrap_or(Ordering::Equal))
            else {
                continue;
            };
            m.swap(r, p);
            let inv = T::one() / m[r][c].clone();
            for v in m[r].iter_mut() {
                *v = v.clone() * inv.clone();
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].sign().is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v = v.clone() - f.clone() * pv.clone();
                }
                row[c] = T::zero();
            }
            pivots.push(c);
            r += 1;
        }
        (Matrix { rows: m, cols: self.cols }, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vector<T>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = Vector::zeros(self.cols);
                v[f] = T::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.rows[row][f].clone();
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self) -> Result<T> {
        if self.nrows() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: self.nrows(),
            });
        }
        let mut m = self.rows.clone();
        let n = self.cols;
        let mut det = T::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i][c].sign().is_zero()) else {
                return Ok(T::zero());
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            let piv = m[c][c].clone();
            det = det * piv.clone();
            for i in c + 1..n {
                if m[i][c].sign().is_zero() {
                    continue;
                }
                let f = m[i][c].clone() / piv.clone();
                let (upper, lower) = m.split_at_mut(i);
                for (x, y) in lower[0][c..].iter_mut().zip(&upper[c][c..]) {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        Ok(det)
    }
}

/// Solves `A x = b` exactly by Gaussian elimination.
pub fn solve_linear<T: Field>(a: &Matrix<T>, b: &Vector<T>) -> Result<LinearSolution<T>> {
    if b.dim() != a.nrows() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: b.dim(),
        });
    }
    let n = a.ncols();
    let augmented = Matrix {
        rows: a
            .rows
            .iter()
            .zip(b.iter())
            .map(|(r, bi)| {
                let mut r = r.clone();
                r.push(bi.clone());
                r
            })
            .collect(),
        cols: n + 1,
    };
    let (r, pivots) = augmented.rref();
    if pivots.last() == Some(&n) {
        return Ok(LinearSolution::Inconsistent);
    }
    let mut particular = Vector::zeros(n);
    for (row, &pc) in pivots.iter().enumerate() {
        particular[pc] = r.rows[row][n].clone();
    }
    if pivots.len() == n {
        return Ok(LinearSolution::Unique(particular));
    }
    let basis = Matrix { rows: r.rows[..pivots.len()].iter().map(|row| row[..n].to_vec()).collect(), cols: n }
        .nullspace();
    Ok(LinearSolution::Space { particular, basis })
}

/// Sign of `det[(p_0, 1); …; (p_d, 1)]` for `d + 1` points in `R^d`.
pub fn orientation<T: Field>(points: &[Vector<T>]) -> Result<Sign> {
    let Some(first) = points.first() else {
        return Err(Error::DimensionMismatch { expected: 1, found: 0 });
    };
    let d = first.dim();
    if points.len() != d + 1 {
        return Err(Error::DimensionMismatch {
            expected: d + 1,
            found: points.len(),
        });
    }
    let rows = points
        .iter()
        .map(|p| {
            if p.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, found: p.dim() });
            }
            Ok(p.extended(T::one()).into_coords())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(rows, d + 1)?.determinant()?.sign())
}

/// Dimension of the affine hull of a nonempty point set.
pub fn affine_dimension<T: Field>(points: &[Vector<T>]) -> Option<usize> {
    let first = points.first()?;
    let diffs: Vec<Vec<T>> = points[1..].iter().map(|p| p.sub(first).into_coords()).collect();
    if diffs.is_empty() {
        return Some(0);
    }
    Some(Matrix { rows: diffs, cols: first.dim() }.rank())
}
