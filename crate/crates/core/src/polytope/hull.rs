//! Incremental beneath-beyond hull over exact predicates.
//!
//! The boundary is kept as a triangulation; once all points are inserted,
//! coplanar simplices are merged into true facets and non-extreme boundary
//! points are dropped.

use std::collections::HashMap;

use super::{Facet, OrientedHyperplane, Polytope};
use crate::error::{Error, Result};
use crate::exactnum::{affine_dimension, Field, Matrix, Vector};

struct Simplex<T> {
    verts: Vec<usize>,
    plane: OrientedHyperplane<T>,
}

/// Convex hull of `points` in `R^dim`.
pub fn convex_hull<T: Field>(points: &[Vector<T>], dim: usize) -> Result<Polytope<T>> {
    convex_hull_indexed(points, dim).map(|(p, _)| p)
}

/// Like [`convex_hull`], also returning the input index of every output
/// vertex. Vertices keep their input order; duplicates map to the first
/// occurrence.
pub fn convex_hull_indexed<T: Field>(points: &[Vector<T>], dim: usize) -> Result<(Polytope<T>, Vec<usize>)> {
    if dim == 0 {
        return Err(Error::UnsupportedDimension(0));
    }
    if let Some(bad) = points.iter().find(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.dim(),
        });
    }
    let mut unique: Vec<usize> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if !unique.iter().any(|&j| points[j].same(p)) {
            unique.push(i);
        }
    }
    let pts: Vec<Vector<T>> = unique.iter().map(|&i| points[i].clone()).collect();
    let found = affine_dimension(&pts).unwrap_or(0);
    if pts.is_empty() || found < dim {
        return Err(Error::NotFullDimensional { dim, found });
    }

    let planes = if dim == 1 {
        segment_planes(&pts)
    } else {
        simplicial_boundary(&pts, dim)?
    };

    // Merge coplanar simplices into facets.
    let mut merged: Vec<OrientedHyperplane<T>> = Vec::new();
    for plane in planes {
        if !merged.iter().any(|h| h.same_oriented(&plane)) {
            merged.push(plane.canonical());
        }
    }

    let incidence: Vec<Vec<usize>> = merged
        .iter()
        .map(|h| (0..pts.len()).filter(|&i| h.side(&pts[i]).is_zero()).collect())
        .collect();

    // A boundary point is a vertex iff the normals of the facets through it
    // span R^dim.
    let is_vertex: Vec<bool> = (0..pts.len())
        .map(|i| {
            let normals: Vec<&Vector<T>> = merged
                .iter()
                .zip(&incidence)
                .filter(|(_, inc)| inc.contains(&i))
                .map(|(h, _)| h.normal())
                .collect();
            !normals.is_empty()
                && Matrix::from_vectors(normals, dim).map(|m| m.rank()).unwrap_or(0) == dim
        })
        .collect();

    let mut new_index = vec![usize::MAX; pts.len()];
    let mut vertices = Vec::new();
    let mut source = Vec::new();
    for (i, &v) in is_vertex.iter().enumerate() {
        if v {
            new_index[i] = vertices.len();
            vertices.push(pts[i].clone());
            source.push(unique[i]);
        }
    }

    let mut facets: Vec<Facet<T>> = merged
        .into_iter()
        .zip(incidence)
        .map(|(hyperplane, inc)| Facet {
            hyperplane,
            vertices: inc.into_iter().filter(|&i| is_vertex[i]).map(|i| new_index[i]).collect(),
        })
        .collect();
    facets.sort_by(|a, b| a.vertices.cmp(&b.vertices));

    Ok((Polytope::from_parts(vertices, facets, dim), source))
}

fn segment_planes<T: Field>(pts: &[Vector<T>]) -> Vec<OrientedHyperplane<T>> {
    let mut lo = &pts[0];
    let mut hi = &pts[0];
    for p in pts {
        if p[0].cmp_field(&lo[0]).is_lt() {
            lo = p;
        }
        if p[0].cmp_field(&hi[0]).is_gt() {
            hi = p;
        }
    }
    vec![
        OrientedHyperplane::new(Vector::unit(1, 0), hi[0].clone()).expect("unit normal"),
        OrientedHyperplane::new(Vector::unit(1, 0).neg(), -lo[0].clone()).expect("unit normal"),
    ]
}

fn simplicial_boundary<T: Field>(pts: &[Vector<T>], dim: usize) -> Result<Vec<OrientedHyperplane<T>>> {
    // Greedy affinely independent start.
    let mut start = vec![0usize];
    for i in 1..pts.len() {
        if start.len() == dim + 1 {
            break;
        }
        let mut cand: Vec<Vector<T>> = start.iter().map(|&j| pts[j].clone()).collect();
        cand.push(pts[i].clone());
        if affine_dimension(&cand) == Some(start.len()) {
            start.push(i);
        }
    }
    debug_assert_eq!(start.len(), dim + 1);
    let interior = Vector::centroid(start.iter().map(|&i| &pts[i])).expect("nonempty");

    let make = |verts: Vec<usize>| -> Result<Simplex<T>> {
        let corners: Vec<Vector<T>> = verts.iter().map(|&i| pts[i].clone()).collect();
        let plane = OrientedHyperplane::through_points(&corners)
            .ok_or_else(|| Error::Usage("degenerate simplex during hull construction".into()))?;
        let plane = match plane.side(&interior) {
            s if s.is_positive() => plane.flipped(),
            s if s.is_negative() => plane,
            _ => return Err(Error::Usage("interior point lies on a hull facet".into())),
        };
        Ok(Simplex { verts, plane })
    };

    let mut simplices: Vec<Simplex<T>> = Vec::new();
    for skip in 0..=dim {
        let verts: Vec<usize> = start
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != skip)
            .map(|(_, &i)| i)
            .collect();
        simplices.push(make(verts)?);
    }

    for (p, point) in pts.iter().enumerate() {
        if start.contains(&p) {
            continue;
        }
        let (visible, kept): (Vec<Simplex<T>>, Vec<Simplex<T>>) = simplices
            .into_iter()
            .partition(|s| s.plane.side(point).is_positive());
        simplices = kept;
        if visible.is_empty() {
            continue;
        }
        let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
        for s in &visible {
            for k in 0..s.verts.len() {
                let mut r = s.verts.clone();
                r.remove(k);
                *ridges.entry(r).or_default() += 1;
            }
        }
        let mut horizon: Vec<Vec<usize>> = ridges.into_iter().filter(|(_, c)| *c == 1).map(|(r, _)| r).collect();
        horizon.sort();
        for mut r in horizon {
            r.push(p);
            r.sort_unstable();
            simplices.push(make(r)?);
        }
    }
    Ok(simplices.into_iter().map(|s| s.plane).collect())
}
