//! Strong separation of families, facet visibility, and the simplex cut
//! out by the tangents that exclude one member each.

use crate::error::{Error, Result};
use crate::exactnum::{affine_dimension, solve_linear, Field, LinearSolution, Matrix, Vector};
use crate::family::{Family, MemberSet, Partition};
use crate::lpsolve::{feasible, separating_hyperplane, InequalitySystem, Relation};
use crate::polytope::{OrientedHyperplane, Polytope};
use crate::tangents::unique_tangent_excluding_unchecked;

/// Strict separators for the bipartitions of a family.
///
/// Bipartitions are keyed by the side containing member 0; the stored
/// hyperplane has that side strictly negative and the rest strictly
/// positive.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparationCertificate<T> {
    pub witnesses: Vec<(Partition, OrientedHyperplane<T>)>,
    pub failures: Vec<Partition>,
}

impl<T: Field> SeparationCertificate<T> {
    pub fn is_separated(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<Partition> {
        self.failures.first().copied()
    }

    /// `Ok(())` or the error naming the first failing bipartition.
    pub fn require(&self) -> Result<()> {
        match self.first_failure() {
            None => Ok(()),
            Some(p) => Err(Error::NotStronglySeparated {
                left: p.a().to_vec(),
                right: p.b().to_vec(),
            }),
        }
    }
}

/// Tries every nontrivial bipartition `I | [m] \ I` with member 0 in `I`.
pub fn is_strongly_separated<T: Field>(family: &Family<T>) -> SeparationCertificate<T> {
    let m = family.len();
    let mut cert = SeparationCertificate {
        witnesses: Vec::new(),
        failures: Vec::new(),
    };
    for part in Partition::all_canonical(m) {
        if part.b().is_empty() {
            continue;
        }
        let left = family.union_of(part.a());
        let right = family.union_of(part.b());
        match separating_hyperplane(&left, &right, true) {
            Ok(Some(h)) => cert.witnesses.push((part, h)),
            _ => cert.failures.push(part),
        }
    }
    cert
}

/// Facets of `p` whose supporting hyperplane has `q` strictly beyond it.
pub fn visible_facets<T: Field>(p: &Polytope<T>, q: &Vector<T>) -> Result<Vec<usize>> {
    if q.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: q.dim(),
        });
    }
    let seen: Vec<usize> = (0..p.facets().len())
        .filter(|&i| p.facets()[i].hyperplane.side(q).is_positive())
        .collect();
    if seen.is_empty() {
        return Err(Error::PointInsidePolytope);
    }
    Ok(seen)
}

/// Which side of a color subset the witness should see.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VisibilityMode {
    Visible,
    Covisible,
}

/// A point seeing exactly the facets whose colors lie in `subset`
/// (`Visible`) or exactly the others (`Covisible`).
///
/// `coloring[i]` is the color of facet `i`.
pub fn visibility_witness<T: Field>(
    p: &Polytope<T>,
    coloring: &[usize],
    subset: MemberSet,
    mode: VisibilityMode,
) -> Result<Option<Vector<T>>> {
    if coloring.len() != p.facets().len() {
        return Err(Error::DimensionMismatch {
            expected: p.facets().len(),
            found: coloring.len(),
        });
    }
    let used: MemberSet = coloring.iter().copied().collect();
    if subset.is_empty() || !subset.is_subset(used) || subset == used {
        return Err(Error::Usage(format!(
            "color subset {subset} must be a nonempty proper subset of the used colors {used}"
        )));
    }
    let mut sys = InequalitySystem::new(p.dim());
    for (facet, &color) in p.facets().iter().zip(coloring) {
        let inside = subset.contains(color) == (mode == VisibilityMode::Visible);
        let rel = if inside { Relation::Gt } else { Relation::Lt };
        sys.push(
            facet.hyperplane.normal().clone(),
            rel,
            facet.hyperplane.offset().clone(),
        )?;
    }
    Ok(feasible(&sys).witness().cloned())
}

#[derive(Debug, Clone, PartialEq)]
pub enum Visibility<T> {
    Visible(Vector<T>),
    Covisible(Vector<T>),
    Neither,
}

impl<T> Visibility<T> {
    pub fn is_neither(&self) -> bool {
        matches!(self, Visibility::Neither)
    }
}

/// Classification of every nonempty proper subset of the used colors.
#[derive(Debug, Clone, PartialEq)]
pub struct VisibilityReport<T> {
    pub entries: Vec<(MemberSet, Visibility<T>)>,
}

impl<T> VisibilityReport<T> {
    pub fn first_neither(&self) -> Option<MemberSet> {
        self.entries.iter().find(|(_, v)| v.is_neither()).map(|(s, _)| *s)
    }

    pub fn all_classified(&self) -> bool {
        self.first_neither().is_none()
    }
}

pub fn classify_color_subsets<T: Field>(p: &Polytope<T>, coloring: &[usize]) -> Result<VisibilityReport<T>> {
    let used: MemberSet = coloring.iter().copied().collect();
    let mut entries = Vec::new();
    for subset in used.proper_subsets() {
        let class = if let Some(w) = visibility_witness(p, coloring, subset, VisibilityMode::Visible)? {
            Visibility::Visible(w)
        } else if let Some(w) = visibility_witness(p, coloring, subset, VisibilityMode::Covisible)? {
            Visibility::Covisible(w)
        } else {
            Visibility::Neither
        };
        entries.push((subset, class));
    }
    Ok(VisibilityReport { entries })
}

/// The `d + 1` hyperplanes `H_i`, each tangent to every member but `i` and
/// leaving member `i` strictly positive, with the vertices of the simplex
/// `S = ∩ {H_i >= 0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplicialSimplex<T> {
    pub hyperplanes: Vec<OrientedHyperplane<T>>,
    /// `vertices[i]` is the vertex of `S` opposite the facet on `H_i`.
    pub vertices: Vec<Vector<T>>,
}

impl<T: Field> SimplicialSimplex<T> {
    pub fn contains(&self, x: &Vector<T>) -> bool {
        self.hyperplanes.iter().all(|h| !h.side(x).is_negative())
    }

    /// Whether `x` lies in the cone at vertex `i` pointing away from `S`,
    /// that is on the nonpositive side of every `H_j` with `j != i`.
    pub fn in_opposite_cone(&self, i: usize, x: &Vector<T>) -> bool {
        self.hyperplanes
            .iter()
            .enumerate()
            .all(|(j, h)| j == i || !h.side(x).is_positive())
    }
}

/// Builds the simplex for a family of `d + 1` members in `R^d`, or `None`
/// when some `H_i` cannot be chosen or the cells do not close up.
pub fn simplicial_simplex<T: Field>(family: &Family<T>) -> Result<Option<SimplicialSimplex<T>>> {
    let d = family.dim();
    let m = family.len();
    if m != d + 1 {
        return Err(Error::Usage(format!("simplicial simplex needs {} members in R^{d}, got {m}", d + 1)));
    }
    is_strongly_separated(family).require()?;
    require_spanning_subfamilies(family)?;
    let mut hyperplanes = Vec::with_capacity(m);
    for i in 0..m {
        let part = Partition::new(MemberSet::single(i), m)?;
        match unique_tangent_excluding_unchecked(family, part, i) {
            Ok(h) => hyperplanes.push(h),
            Err(Error::NeitherQualifies { .. } | Error::BothQualify { .. }) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    let mut vertices = Vec::with_capacity(m);
    for i in 0..m {
        let others: Vec<&OrientedHyperplane<T>> = (0..m).filter(|&j| j != i).map(|j| &hyperplanes[j]).collect();
        let a = Matrix::from_vectors(others.iter().map(|h| h.normal()), d)?;
        let b = Vector::new(others.iter().map(|h| h.offset().clone()).collect());
        let LinearSolution::Unique(v) = solve_linear(&a, &b)? else {
            return Ok(None);
        };
        if !hyperplanes[i].side(&v).is_positive() {
            return Ok(None);
        }
        vertices.push(v);
    }
    Ok(Some(SimplicialSimplex { hyperplanes, vertices }))
}

/// Every subfamily missing one member affinely spans the ambient space.
pub(crate) fn require_spanning_subfamilies<T: Field>(family: &Family<T>) -> Result<()> {
    let m = family.len();
    for i in 0..m {
        let mut rest = MemberSet::full(m);
        rest.remove(i);
        if !family.subfamily_is_spanning(rest) {
            return Err(Error::NotFullDimensional {
                dim: family.dim(),
                found: affine_dimension(&family.union_of(rest)).unwrap_or(0),
            });
        }
    }
    Ok(())
}
