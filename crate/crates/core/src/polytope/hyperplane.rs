use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{Field, Matrix, Sign, Vector};

/// The hyperplane `{x : <x, normal> = offset}` with positive side
/// `<x, normal> > offset`.
///
/// Two values describe the same oriented hyperplane when they differ by a
/// positive factor; negating both flips the orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct OrientedHyperplane<T> {
    normal: Vector<T>,
    offset: T,
}

impl<T: Field> OrientedHyperplane<T> {
    pub fn new(normal: Vector<T>, offset: T) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::Usage("hyperplane normal must be nonzero".into()));
        }
        Ok(OrientedHyperplane { normal, offset })
    }

    pub fn normal(&self) -> &Vector<T> {
        &self.normal
    }

    pub fn offset(&self) -> &T {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    /// `<x, normal> - offset`.
    pub fn eval(&self, x: &Vector<T>) -> T {
        x.dot(&self.normal) - self.offset.clone()
    }

    pub fn side(&self, x: &Vector<T>) -> Sign {
        self.eval(x).sign()
    }

    pub fn flipped(&self) -> Self {
        OrientedHyperplane {
            normal: self.normal.neg(),
            offset: -self.offset.clone(),
        }
    }

    /// Scales by a positive factor so the first nonzero normal coordinate
    /// is `+1` or `-1`. Orientation is kept.
    pub fn canonical(&self) -> Self {
        let lead = self
            .normal
            .iter()
            .find(|c| !c.sign().is_zero())
            .expect("normal is nonzero")
            .abs();
        let inv = T::one() / lead;
        OrientedHyperplane {
            normal: self.normal.scale(&inv),
            offset: self.offset.clone() * inv,
        }
    }

    /// Canonical representative of the underlying unoriented hyperplane:
    /// first nonzero normal coordinate is `+1`.
    pub fn unoriented(&self) -> Self {
        let c = self.canonical();
        let lead = c.normal.iter().find(|x| !x.sign().is_zero()).expect("nonzero");
        if lead.sign().is_negative() {
            c.flipped()
        } else {
            c
        }
    }

    pub fn same_oriented(&self, other: &Self) -> bool {
        let (a, b) = (self.canonical(), other.canonical());
        a.normal.same(&b.normal) && a.offset.same(&b.offset)
    }

    pub fn same_unoriented(&self, other: &Self) -> bool {
        self.same_oriented(other) || self.same_oriented(&other.flipped())
    }

    /// The hyperplane through `d` affinely independent points of `R^d`, or
    /// `None` if they are dependent. Orientation is arbitrary.
    pub fn through_points(points: &[Vector<T>]) -> Option<Self> {
        let first = points.first()?;
        let d = first.dim();
        if points.len() != d || points.iter().any(|p| p.dim() != d) {
            return None;
        }
        let diffs: Vec<Vec<T>> = points[1..].iter().map(|p| p.sub(first).into_coords()).collect();
        let null = if diffs.is_empty() {
            // d = 1: the hyperplane is the point itself.
            vec![Vector::unit(1, 0)]
        } else {
            Matrix::from_rows(diffs, d).ok()?.nullspace()
        };
        if null.len() != 1 {
            return None;
        }
        let normal = null.into_iter().next()?;
        let offset = first.dot(&normal);
        Some(OrientedHyperplane { normal, offset })
    }

    /// Unit normal and offset in floating point, for reporting.
    pub fn to_unit_f64(&self) -> (Vec<f64>, f64) {
        let n = self.normal.to_f64();
        let len = n.iter().map(|x| x * x).sum::<f64>().sqrt();
        (n.iter().map(|x| x / len).collect(), self.offset.to_f64_lossy() / len)
    }

    /// Carries the hyperplane along `x -> M x + t`, with `M` invertible:
    /// the image is `{y : <y, M^{-T} u> = alpha + <t, M^{-T} u>}`.
    pub fn transform(&self, inverse_transpose: &Matrix<T>, translation: &Vector<T>) -> Self {
        let normal = inverse_transpose.mul_vec(&self.normal);
        let offset = self.offset.clone() + translation.dot(&normal);
        OrientedHyperplane { normal, offset }
    }
}

impl<T: Field> fmt::Display for OrientedHyperplane<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<x, {}> = {}", self.normal, self.offset)
    }
}
