use super::OrientedHyperplane;
use crate::error::{Error, Result};
use crate::exactnum::{Field, Vector};
use crate::lpsolve::{feasible, InequalitySystem, Relation};

/// Vectors of `R^{d+1}` with the labels of the points they came from.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorConfiguration<T> {
    pub vectors: Vec<Vector<T>>,
    pub labels: Vec<usize>,
}

impl<T: Field> VectorConfiguration<T> {
    pub fn new(vectors: Vec<Vector<T>>, labels: Vec<usize>) -> Self {
        debug_assert_eq!(vectors.len(), labels.len());
        VectorConfiguration { vectors, labels }
    }

    /// Negates every vector whose label satisfies `pred`.
    pub fn negate_where(&self, pred: impl Fn(usize) -> bool) -> Self {
        VectorConfiguration {
            vectors: self
                .vectors
                .iter()
                .zip(&self.labels)
                .map(|(v, &l)| if pred(l) { v.neg() } else { v.clone() })
                .collect(),
            labels: self.labels.clone(),
        }
    }

    /// Some `h` with `<h, v> > 0` for every vector, found by LP, or `None`
    /// if the configuration is not acyclic.
    pub fn acyclicity_witness(&self) -> Option<Vector<T>> {
        let dim = self.vectors.first()?.dim();
        let mut sys = InequalitySystem::new(dim);
        for v in &self.vectors {
            sys.push(v.clone(), Relation::Gt, T::zero()).ok()?;
        }
        feasible(&sys).witness().cloned()
    }

    /// Whether `h` has strictly positive inner product with every vector.
    pub fn is_witnessed_by(&self, h: &Vector<T>) -> bool {
        self.vectors.iter().all(|v| v.dot(h).sign().is_positive())
    }
}

/// `p -> (p, 1)`, labelled by position.
pub fn linearize<T: Field>(points: &[Vector<T>]) -> VectorConfiguration<T> {
    VectorConfiguration {
        vectors: points.iter().map(|p| p.extended(T::one())).collect(),
        labels: (0..points.len()).collect(),
    }
}

/// Chart of the affine hyperplane `{x : <x, h> = 1}` in `R^{d+1}`, given by
/// dropping coordinate `axis` (where `h` is nonzero).
#[derive(Debug, Clone, PartialEq)]
pub struct AffineFrame<T> {
    pub witness: Vector<T>,
    pub axis: usize,
}

impl<T: Field> AffineFrame<T> {
    pub fn new(witness: Vector<T>) -> Result<Self> {
        let axis = (0..witness.dim())
            .rev()
            .find(|&k| !witness[k].sign().is_zero())
            .ok_or_else(|| Error::Usage("acyclicity witness must be nonzero".into()))?;
        Ok(AffineFrame { witness, axis })
    }

    /// Chart coordinates of `v / <h, v>`.
    pub fn project(&self, v: &Vector<T>) -> Result<Vector<T>> {
        let s = v.dot(&self.witness);
        if !s.sign().is_positive() {
            return Err(Error::WitnessInvalid { index: 0 });
        }
        Ok(v.scale(&(T::one() / s)).without(self.axis))
    }

    /// The point of `{<x, h> = 1}` with chart coordinates `y`.
    pub fn lift(&self, y: &Vector<T>) -> Vector<T> {
        let mut coords = y.coords().to_vec();
        coords.insert(self.axis, T::zero());
        let partial = Vector::new(coords.clone()).dot(&self.witness);
        coords[self.axis] = (T::one() - partial) / self.witness[self.axis].clone();
        Vector::new(coords)
    }

    /// Linear functional `w` on `R^{d+1}` with `<w, x> = <u, y> - alpha` for
    /// every point `x` of the chart with coordinates `y`; positively
    /// homogeneous, so `sign <w, v>` is the side of the projection of `v`.
    pub fn pull_back(&self, h: &OrientedHyperplane<T>) -> Vector<T> {
        let mut coords = h.normal().coords().to_vec();
        coords.insert(self.axis, T::zero());
        Vector::new(coords).sub(&self.witness.scale(h.offset()))
    }

    /// Inverse of [`AffineFrame::pull_back`] for functionals not parallel to
    /// the witness.
    pub fn push_forward(&self, w: &Vector<T>) -> Option<OrientedHyperplane<T>> {
        // Reduce w modulo h along the chart axis so its axis coordinate vanishes.
        let lambda = -w[self.axis].clone() / self.witness[self.axis].clone();
        let reduced = w.add(&self.witness.scale(&lambda));
        OrientedHyperplane::new(reduced.without(self.axis), lambda).ok()
    }
}

/// Chart coordinates of the configuration on `{<x, h> = 1}`.
pub fn affinize<T: Field>(config: &VectorConfiguration<T>, h: &Vector<T>) -> Result<(Vec<Vector<T>>, AffineFrame<T>)> {
    if let Some(bad) = config.vectors.iter().find(|v| v.dim() != h.dim()) {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: bad.dim(),
        });
    }
    if let Some(index) = config.vectors.iter().position(|v| !v.dot(h).sign().is_positive()) {
        return Err(Error::WitnessInvalid { index });
    }
    let frame = AffineFrame::new(h.clone())?;
    let points = config
        .vectors
        .iter()
        .map(|v| frame.project(v))
        .collect::<Result<Vec<_>>>()?;
    Ok((points, frame))
}
