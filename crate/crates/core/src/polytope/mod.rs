//! Convex polytopes in V- and H-representation with their face lattice,
//! polarity, vertex figures and the linearization/affinization charts.

mod config;
mod hull;
mod hyperplane;

use std::collections::{BTreeSet, HashMap};

pub use config::{affinize, linearize, AffineFrame, VectorConfiguration};
pub use hull::{convex_hull, convex_hull_indexed};
pub use hyperplane::OrientedHyperplane;

use crate::error::{Error, Result};
use crate::exactnum::{affine_dimension, Field, Vector};

/// A facet `<x, u> <= alpha` together with the vertices on it.
#[derive(Debug, Clone, PartialEq)]
pub struct Facet<T> {
    /// Outward hyperplane: the polytope lies in its closed negative side.
    pub hyperplane: OrientedHyperplane<T>,
    /// Sorted indices of incident vertices.
    pub vertices: Vec<usize>,
}

/// A proper nonempty face, identified by its vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Face {
    pub vertices: Vec<usize>,
    /// Facets containing the face, sorted.
    pub facets: Vec<usize>,
}

/// Proper nonempty faces graded by dimension, `0..dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceLattice {
    levels: Vec<Vec<Face>>,
    /// `up[j][i]`: indices of the `(j+1)`-faces covering face `i` of dimension `j`.
    up: Vec<Vec<Vec<usize>>>,
}

impl FaceLattice {
    fn build<T: Field>(vertices: &[Vector<T>], facets: &[Vec<usize>], dim: usize) -> Self {
        let mut seen: BTreeSet<Vec<usize>> = facets.iter().cloned().collect();
        let mut work: Vec<Vec<usize>> = seen.iter().cloned().collect();
        while let Some(face) = work.pop() {
            for f in facets {
                let meet: Vec<usize> = face.iter().copied().filter(|v| f.contains(v)).collect();
                if !meet.is_empty() && seen.insert(meet.clone()) {
                    work.push(meet);
                }
            }
        }
        let mut levels: Vec<Vec<Face>> = vec![Vec::new(); dim];
        for verts in seen {
            let coords: Vec<Vector<T>> = verts.iter().map(|&i| vertices[i].clone()).collect();
            let k = affine_dimension(&coords).expect("nonempty face");
            if k >= dim {
                continue;
            }
            let containing = facets
                .iter()
                .enumerate()
                .filter(|(_, f)| verts.iter().all(|v| f.contains(v)))
                .map(|(i, _)| i)
                .collect();
            levels[k].push(Face {
                vertices: verts,
                facets: containing,
            });
        }
        for level in &mut levels {
            level.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        }
        let up = (0..dim)
            .map(|j| {
                levels[j]
                    .iter()
                    .map(|f| {
                        if j + 1 >= dim {
                            return Vec::new();
                        }
                        levels[j + 1]
                            .iter()
                            .enumerate()
                            .filter(|(_, g)| f.vertices.iter().all(|v| g.vertices.contains(v)))
                            .map(|(i, _)| i)
                            .collect()
                    })
                    .collect()
            })
            .collect();
        FaceLattice { levels, up }
    }

    /// Faces of dimension `j`.
    pub fn faces(&self, j: usize) -> &[Face] {
        self.levels.get(j).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn levels(&self) -> &[Vec<Face>] {
        &self.levels
    }

    /// Indices of the `(j+1)`-faces covering face `i` of dimension `j`.
    pub fn covers(&self, j: usize, i: usize) -> &[usize] {
        &self.up[j][i]
    }

    /// `f_0, ..., f_{d-1}`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    /// Alternating sum of the boundary face counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.levels
            .iter()
            .enumerate()
            .map(|(j, l)| if j % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// `(dimension, index)` of the face with exactly this vertex set.
    pub fn find(&self, vertices: &[usize]) -> Option<(usize, usize)> {
        self.levels.iter().enumerate().find_map(|(j, l)| {
            l.iter().position(|f| f.vertices == vertices).map(|i| (j, i))
        })
    }
}

/// A full-dimensional convex polytope.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope<T> {
    vertices: Vec<Vector<T>>,
    facets: Vec<Facet<T>>,
    lattice: FaceLattice,
    dim: usize,
}

impl<T: Field> Polytope<T> {
    /// Assembles a polytope from irredundant vertices and facets whose
    /// incidence lists are already correct; the face lattice is derived.
    pub fn from_parts(vertices: Vec<Vector<T>>, facets: Vec<Facet<T>>, dim: usize) -> Self {
        let incidence: Vec<Vec<usize>> = facets.iter().map(|f| f.vertices.clone()).collect();
        let lattice = FaceLattice::build(&vertices, &incidence, dim);
        Polytope {
            vertices,
            facets,
            lattice,
            dim,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector<T>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet<T>] {
        &self.facets
    }

    pub fn lattice(&self) -> &FaceLattice {
        &self.lattice
    }

    /// Edges as sorted vertex pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        if self.dim == 1 {
            return vec![(0, 1)];
        }
        self.lattice
            .faces(1)
            .iter()
            .map(|f| (f.vertices[0], f.vertices[1]))
            .collect()
    }

    /// Closed containment.
    pub fn contains(&self, p: &Vector<T>) -> bool {
        self.facets.iter().all(|f| !f.hyperplane.side(p).is_positive())
    }

    pub fn contains_strictly(&self, p: &Vector<T>) -> bool {
        self.facets.iter().all(|f| f.hyperplane.side(p).is_negative())
    }

    pub fn vertex_index(&self, p: &Vector<T>) -> Option<usize> {
        self.vertices.iter().position(|v| v.same(p))
    }

    /// Facets through vertex `v`.
    pub fn facets_at(&self, v: usize) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&i| self.facets[i].vertices.contains(&v))
            .collect()
    }

    /// Every facet inequality holds for all vertices, tightly exactly on the
    /// incidence list.
    pub fn is_valid(&self) -> bool {
        self.facets.iter().all(|f| {
            self.vertices.iter().enumerate().all(|(i, v)| match f.hyperplane.side(v) {
                s if s.is_positive() => false,
                s => s.is_zero() == f.vertices.contains(&i),
            })
        })
    }

    /// Image under `x -> x + shift`.
    pub fn translated(&self, shift: &Vector<T>) -> Self {
        let vertices = self.vertices.iter().map(|v| v.add(shift)).collect();
        let facets = self
            .facets
            .iter()
            .map(|f| Facet {
                hyperplane: OrientedHyperplane::new(
                    f.hyperplane.normal().clone(),
                    f.hyperplane.offset().clone() + shift.dot(f.hyperplane.normal()),
                )
                .expect("nonzero normal"),
                vertices: f.vertices.clone(),
            })
            .collect();
        Polytope {
            vertices,
            facets,
            lattice: self.lattice.clone(),
            dim: self.dim,
        }
    }
}

/// A point strictly inside every facet: the vertex average, which lies in
/// the interior of any full-dimensional polytope.
pub fn interior_point<T: Field>(p: &Polytope<T>) -> Vector<T> {
    let c = Vector::centroid(p.vertices()).expect("polytope has vertices");
    debug_assert!(p.contains_strictly(&c));
    c
}

/// Polar `{y : <x, y> <= 1 for x in P}` of a polytope with the origin in its
/// interior.
///
/// Vertex `i` of the result is the scaled normal of facet `i` of `p`, and
/// facet `j` of the result is `<y, v_j> <= 1` for vertex `j` of `p`.
pub fn polar_dual<T: Field>(p: &Polytope<T>) -> Result<Polytope<T>> {
    if p.facets.iter().any(|f| !f.hyperplane.offset().sign().is_positive()) {
        return Err(Error::OriginNotInterior);
    }
    let vertices: Vec<Vector<T>> = p
        .facets
        .iter()
        .map(|f| f.hyperplane.normal().scale(&(T::one() / f.hyperplane.offset().clone())))
        .collect();
    let facets = p
        .vertices
        .iter()
        .enumerate()
        .map(|(j, v)| Facet {
            hyperplane: OrientedHyperplane::new(v.clone(), T::one()).expect("origin is interior, so v != 0"),
            vertices: p.facets_at(j),
        })
        .collect();
    Ok(Polytope::from_parts(vertices, facets, p.dim))
}

/// Vertex figure at `v`, cut at half the distance to the nearest other
/// vertex along a direction separating `v` from the rest.
pub fn vertex_figure<T: Field>(p: &Polytope<T>, v: usize) -> Result<Polytope<T>> {
    vertex_figure_at_depth(p, v, &T::from_ratio(1, 2))
}

/// Vertex figure with the cutting hyperplane at relative depth `depth` in
/// `(0, 1)`; the combinatorial type does not depend on `depth`.
///
/// The cut is `{x : <x, n> = <v, n> - depth * gap}` where `n` sums the
/// normals of the facets at `v` and `gap` is the smallest drop of `<., n>`
/// from `v` to another vertex. The result lives in the chart that drops the
/// first coordinate where `n` is nonzero.
pub fn vertex_figure_at_depth<T: Field>(p: &Polytope<T>, v: usize, depth: &T) -> Result<Polytope<T>> {
    if v >= p.vertices.len() {
        return Err(Error::NotAVertex(v));
    }
    if p.dim < 2 {
        return Err(Error::UnsupportedDimension(p.dim));
    }
    if !depth.sign().is_positive() || !(T::one() - depth.clone()).sign().is_positive() {
        return Err(Error::Usage("vertex figure depth must lie in (0, 1)".into()));
    }
    let at_v = p.facets_at(v);
    let n = at_v
        .iter()
        .fold(Vector::zeros(p.dim), |acc, &i| acc.add(p.facets[i].hyperplane.normal()));
    let top = p.vertices[v].dot(&n);
    let gap = p
        .vertices
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != v)
        .map(|(_, w)| top.clone() - w.dot(&n))
        .reduce(|a, b| if b.cmp_field(&a).is_lt() { b } else { a })
        .expect("polytope has several vertices");
    debug_assert!(gap.sign().is_positive());
    let level = top.clone() - depth.clone() * gap;
    let axis = (0..p.dim).find(|&k| !n[k].sign().is_zero()).expect("n is nonzero");

    let apex = &p.vertices[v];
    let mut cut = Vec::new();
    for (a, b) in p.edges() {
        let w = match (a == v, b == v) {
            (true, _) => &p.vertices[b],
            (_, true) => &p.vertices[a],
            _ => continue,
        };
        // apex + s (w - apex) with <., n> = level.
        let s = (top.clone() - level.clone()) / (top.clone() - w.dot(&n));
        let x = apex.add(&w.sub(apex).scale(&s));
        cut.push(x.without(axis));
    }
    convex_hull(&cut, p.dim - 1)
}

/// Maps vertex index sets of `p` to face ids, for lattice comparisons.
pub fn face_index(p: &FaceLattice) -> HashMap<Vec<usize>, (usize, usize)> {
    let mut out = HashMap::new();
    for (j, level) in p.levels().iter().enumerate() {
        for (i, f) in level.iter().enumerate() {
            out.insert(f.vertices.clone(), (j, i));
        }
    }
    out
}
