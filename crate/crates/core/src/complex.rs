//! The tangent complex of a family, built from the rainbow faces of the hull
//! of its union, and combinatorial sphere checks.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::exactnum::Field;
use crate::family::{Family, MemberSet};
use crate::polytope::{convex_hull_indexed, OrientedHyperplane, Polytope};
use crate::separation::{classify_color_subsets, is_strongly_separated};

/// One cell of a [`TangentComplex`], recorded by the face of the underlying
/// polytope it comes from.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexFace<T> {
    /// Vertices of the underlying polytope on the face.
    pub vertices: Vec<usize>,
    /// Facets of the underlying polytope containing the face.
    pub facets: Vec<usize>,
    /// For the 0-cells of a tangent complex: the tangent hyperplane, with
    /// the family on its nonnegative side.
    pub hyperplane: Option<OrientedHyperplane<T>>,
}

/// A polytopal complex graded by dimension, with boundary incidences.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentComplex<T> {
    /// `faces[j]`: the `j`-dimensional cells.
    pub faces: Vec<Vec<ComplexFace<T>>>,
    /// `boundary[j][i]`: indices of the `(j-1)`-cells on cell `i` of
    /// dimension `j`; empty for `j = 0`.
    pub boundary: Vec<Vec<Vec<usize>>>,
    /// Dimension of the sphere the complex should be.
    pub sphere_dim: usize,
    /// The polytope whose faces the cells are.
    pub polytope: Polytope<T>,
    /// Color of every vertex (tangent complex) or facet (rainbow locus) of
    /// `polytope`.
    pub colors: Vec<usize>,
}

impl<T: Field> TangentComplex<T> {
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f: Vec<usize> = self.faces.iter().map(Vec::len).collect();
        while f.last() == Some(&0) {
            f.pop();
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(j, l)| if j % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.iter().all(Vec::is_empty)
    }

    /// `cofaces[j][i]`: indices of the `(j+1)`-cells having cell `i` of
    /// dimension `j` on their boundary.
    pub fn cofaces(&self) -> Vec<Vec<Vec<usize>>> {
        let mut up: Vec<Vec<Vec<usize>>> = self.faces.iter().map(|l| vec![Vec::new(); l.len()]).collect();
        for (j, level) in self.boundary.iter().enumerate().skip(1) {
            for (i, below) in level.iter().enumerate() {
                for &b in below {
                    up[j - 1][b].push(i);
                }
            }
        }
        up
    }

    /// The complex with one cell removed and the incidences renumbered.
    pub fn without_face(&self, dim: usize, index: usize) -> Self {
        let mut out = self.clone();
        out.faces[dim].remove(index);
        out.boundary[dim].remove(index);
        if let Some(above) = out.boundary.get_mut(dim + 1) {
            for list in above {
                list.retain(|&b| b != index);
                for b in list.iter_mut() {
                    if *b > index {
                        *b -= 1;
                    }
                }
            }
        }
        out
    }
}

fn empty_complex<T: Field>(polytope: Polytope<T>, colors: Vec<usize>, sphere_dim: usize) -> TangentComplex<T> {
    TangentComplex {
        faces: Vec::new(),
        boundary: Vec::new(),
        sphere_dim,
        polytope,
        colors,
    }
}

/// The tangent complex of `family` (`m <= d` members in `R^d`): the faces of
/// the hull of the union that carry a vertex of every member, with a
/// `j`-face giving a cell of dimension `d - 1 - j`.
///
/// With `relaxed`, members need only jointly span `R^d` instead of being
/// full dimensional.
pub fn tangent_complex<T: Field>(family: &Family<T>, relaxed: bool) -> Result<TangentComplex<T>> {
    let d = family.dim();
    let m = family.len();
    if m > d {
        return Err(Error::Usage(format!("tangent complex needs at most {d} members in R^{d}, got {m}")));
    }
    let (points, colors) = family.colored_points();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if colors[i] != colors[j] && points[i].same(&points[j]) {
                return Err(Error::VertexColorClash {
                    first: colors[i],
                    second: colors[j],
                    point: points[i].to_string(),
                });
            }
        }
    }
    is_strongly_separated(family).require()?;
    if let Some(i) = (0..m).find(|&i| !relaxed && !family.member(i).is_full_dimensional()) {
        return Err(Error::NotFullDimensional {
            dim: d,
            found: family.member(i).affine_dimension(),
        });
    }
    let (hull, source) = convex_hull_indexed(&points, d)?;
    let hull_colors: Vec<usize> = source.iter().map(|&s| colors[s]).collect();
    let all = MemberSet::full(m);
    let lattice = hull.lattice();
    let is_rainbow = |verts: &[usize]| all.is_subset(verts.iter().map(|&v| hull_colors[v]).collect());

    // Primal dimension j maps to cell dimension d - 1 - j.
    let mut index: Vec<HashMap<usize, usize>> = vec![HashMap::new(); d];
    let mut faces: Vec<Vec<ComplexFace<T>>> = vec![Vec::new(); d];
    for j in (0..d).rev() {
        for (i, face) in lattice.faces(j).iter().enumerate() {
            if !is_rainbow(&face.vertices) {
                continue;
            }
            let c = d - 1 - j;
            let hyperplane = (c == 0).then(|| hull.facets()[face.facets[0]].hyperplane.flipped().canonical());
            index[j].insert(i, faces[c].len());
            faces[c].push(ComplexFace {
                vertices: face.vertices.clone(),
                facets: face.facets.clone(),
                hyperplane,
            });
        }
    }
    let boundary = (0..d)
        .map(|c| {
            let j = d - 1 - c;
            lattice
                .faces(j)
                .iter()
                .enumerate()
                .filter(|(i, _)| index[j].contains_key(i))
                .map(|(i, _)| {
                    if c == 0 {
                        return Vec::new();
                    }
                    let mut b: Vec<usize> = lattice
                        .covers(j, i)
                        .iter()
                        .filter_map(|g| index[j + 1].get(g).copied())
                        .collect();
                    b.sort();
                    b
                })
                .collect()
        })
        .collect();
    Ok(trimmed(TangentComplex {
        faces,
        boundary,
        sphere_dim: d - m,
        polytope: hull,
        colors: hull_colors,
    }))
}

fn trimmed<T: Field>(mut c: TangentComplex<T>) -> TangentComplex<T> {
    while c.faces.last().is_some_and(Vec::is_empty) {
        c.faces.pop();
        c.boundary.pop();
    }
    c
}

/// Faces of `p` lying in a facet of every color, as a complex graded by
/// their own dimension. `coloring[i]` is the color of facet `i`; colors are
/// `0..m` with `m` one more than the largest color used.
///
/// If some color in `0..m` has no facet, no point is rainbow and the result
/// is empty.
pub fn rainbow_points_dual<T: Field>(p: &Polytope<T>, coloring: &[usize]) -> Result<TangentComplex<T>> {
    if coloring.len() != p.facets().len() {
        return Err(Error::DimensionMismatch {
            expected: p.facets().len(),
            found: coloring.len(),
        });
    }
    let d = p.dim();
    let m = coloring.iter().max().map_or(0, |&c| c + 1);
    if m == 0 || m > d {
        return Err(Error::Usage(format!("rainbow locus needs between 1 and {d} colors, got {m}")));
    }
    let all = MemberSet::full(m);
    let used: MemberSet = coloring.iter().copied().collect();
    if used != all {
        return Ok(empty_complex(p.clone(), coloring.to_vec(), d - m));
    }
    let report = classify_color_subsets(p, coloring)?;
    if let Some(subset) = report.first_neither() {
        return Err(Error::HypothesisFails { subset: subset.to_vec() });
    }
    let lattice = p.lattice();
    let is_rainbow = |facets: &[usize]| all.is_subset(facets.iter().map(|&f| coloring[f]).collect());
    let mut index: Vec<HashMap<usize, usize>> = vec![HashMap::new(); d];
    let mut faces: Vec<Vec<ComplexFace<T>>> = vec![Vec::new(); d];
    for j in 0..d {
        for (i, face) in lattice.faces(j).iter().enumerate() {
            if is_rainbow(&face.facets) {
                index[j].insert(i, faces[j].len());
                faces[j].push(ComplexFace {
                    vertices: face.vertices.clone(),
                    facets: face.facets.clone(),
                    hyperplane: None,
                });
            }
        }
    }
    let mut boundary: Vec<Vec<Vec<usize>>> = faces.iter().map(|l| vec![Vec::new(); l.len()]).collect();
    for j in 0..d.saturating_sub(1) {
        for (i, _) in lattice.faces(j).iter().enumerate() {
            let Some(&lo) = index[j].get(&i) else { continue };
            for g in lattice.covers(j, i) {
                if let Some(&hi) = index[j + 1].get(g) {
                    boundary[j + 1][hi].push(lo);
                }
            }
        }
    }
    for level in &mut boundary {
        for b in level {
            b.sort();
        }
    }
    Ok(trimmed(TangentComplex {
        faces,
        boundary,
        sphere_dim: d - m,
        polytope: p.clone(),
        colors: coloring.to_vec(),
    }))
}

/// Necessary conditions for a complex to be a combinatorial sphere of
/// dimension `sphere_dim`: they do not certify a homeomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereReport {
    pub sphere_dim: usize,
    pub f_vector: Vec<usize>,
    pub euler: i64,
    pub expected_euler: i64,
    /// Every `(k-1)`-cell lies in exactly two `k`-cells; for `k = 0`,
    /// there are exactly two points.
    pub pseudomanifold: bool,
    /// The `k`-cells are connected through shared `(k-1)`-cells; vacuously
    /// true for `k = 0`.
    pub connected: bool,
    /// No cell above dimension `k`, and every cell lies in a `k`-cell.
    pub pure: bool,
    /// Exact structure for `k <= 1`: two points, or a single cycle.
    pub low_dim_exact: Option<bool>,
    pub passed: bool,
    pub reasons: Vec<String>,
}

pub fn verify_sphere<T: Field>(c: &TangentComplex<T>) -> SphereReport {
    let k = c.sphere_dim;
    let f = c.f_vector();
    let count = |j: usize| c.faces.get(j).map_or(0, Vec::len);
    let euler = c.euler_characteristic();
    let expected_euler = if k.is_multiple_of(2) { 2 } else { 0 };
    let up = c.cofaces();

    let pseudomanifold = if k == 0 {
        count(0) == 2
    } else {
        count(k) > 0 && up.get(k - 1).is_some_and(|l| l.iter().all(|u| u.len() == 2))
    };

    let top_dim = c.faces.iter().rposition(|l| !l.is_empty());
    let mut pure = top_dim == Some(k);
    if pure {
        // Walk down from the k-cells and check everything is reached.
        let mut reached: Vec<Vec<bool>> = c.faces.iter().map(|l| vec![false; l.len()]).collect();
        reached[k].iter_mut().for_each(|r| *r = true);
        for j in (1..=k).rev() {
            for i in 0..count(j) {
                if reached[j][i] {
                    for &b in &c.boundary[j][i] {
                        reached[j - 1][b] = true;
                    }
                }
            }
        }
        pure = reached.iter().all(|l| l.iter().all(|&r| r));
    }

    let connected = if k == 0 {
        true
    } else {
        let n = count(k);
        let mut neighbours: Vec<Vec<usize>> = vec![Vec::new(); n];
        if let Some(ridges) = up.get(k - 1) {
            for tops in ridges {
                for &x in tops {
                    for &y in tops {
                        if x != y {
                            neighbours[x].push(y);
                        }
                    }
                }
            }
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        if n > 0 {
            seen[0] = true;
            queue.push_back(0);
        }
        while let Some(x) = queue.pop_front() {
            for &y in &neighbours[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        n > 0 && seen.iter().all(|&s| s)
    };

    let low_dim_exact = match k {
        0 => Some(f == vec![2]),
        1 => Some(f.len() == 2 && f[0] == f[1] && up[0].iter().all(|e| e.len() == 2) && connected),
        _ => None,
    };

    let mut reasons = Vec::new();
    if euler != expected_euler {
        reasons.push(format!("Euler characteristic {euler}, expected {expected_euler}"));
    }
    if !pseudomanifold {
        reasons.push(if k == 0 {
            format!("{} points, expected 2", count(0))
        } else {
            format!("some {}-cell does not lie in exactly two {k}-cells", k - 1)
        });
    }
    if !connected {
        reasons.push(format!("{k}-cells are not connected through {}-cells", k - 1));
    }
    if !pure {
        reasons.push(format!("complex is not pure of dimension {k}"));
    }
    if low_dim_exact == Some(false) {
        reasons.push(if k == 0 {
            "not exactly two points".to_string()
        } else {
            "not a single cycle".to_string()
        });
    }
    SphereReport {
        sphere_dim: k,
        f_vector: f,
        euler,
        expected_euler,
        pseudomanifold,
        connected,
        pure,
        low_dim_exact,
        passed: reasons.is_empty(),
        reasons,
    }
}

/// `(dimension, vertices, facets)` of every cell, sorted, for comparing
/// complexes.
pub fn cell_keys<T: Field>(c: &TangentComplex<T>) -> Vec<(usize, Vec<usize>, Vec<usize>)> {
    let mut keys: Vec<_> = c
        .faces
        .iter()
        .enumerate()
        .flat_map(|(j, l)| l.iter().map(move |f| (j, f.vertices.clone(), f.facets.clone())))
        .collect();
    keys.sort();
    keys
}

#[cfg(test)]
mod tests;
