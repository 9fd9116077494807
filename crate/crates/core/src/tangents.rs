//! Common tangent hyperplanes: the two sandwich tangents of a partition,
//! all `2^d` tangents of `d` members in `R^d`, the unique tangent that
//! excludes one of `d + 1` members, and a brute-force oracle.

use std::cmp::Ordering;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::exactnum::{Field, Sign, Vector};
use crate::family::{Family, MemberSet, Partition};
use crate::polytope::{affinize, convex_hull_indexed, linearize, OrientedHyperplane, Polytope, VectorConfiguration};
use crate::separation::{is_strongly_separated, require_spanning_subfamilies};

/// Default vertex budget of [`brute_force_tangents`].
pub const ORACLE_GUARD: usize = 40;

/// Facets of `hull` whose vertices carry every color `0..m`.
///
/// `vertex_colors[i]` is the color of hull vertex `i`.
pub fn rainbow_facets<T: Field>(hull: &Polytope<T>, vertex_colors: &[usize], m: usize) -> Vec<usize> {
    let all = MemberSet::full(m);
    hull.facets()
        .iter()
        .enumerate()
        .filter(|(_, f)| all.is_subset(f.vertices.iter().map(|&v| vertex_colors[v]).collect()))
        .map(|(i, _)| i)
        .collect()
}

/// The two tangents of one partition, with `A` on the nonnegative side and
/// `B` on the nonpositive side of each.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentPair<T> {
    pub partition: Partition,
    pub hyperplanes: [OrientedHyperplane<T>; 2],
    /// `contacts[k][i]`: vertices of member `i` lying on hyperplane `k`.
    pub contacts: [Vec<Vec<usize>>; 2],
}

/// Indices of the vertices of each member on `h`.
pub fn contact_faces<T: Field>(h: &OrientedHyperplane<T>, family: &Family<T>) -> Vec<Vec<usize>> {
    family
        .members()
        .iter()
        .map(|m| {
            (0..m.vertices().len())
                .filter(|&j| h.side(&m.vertices()[j]).is_zero())
                .collect()
        })
        .collect()
}

fn check_square<T: Field>(family: &Family<T>) -> Result<()> {
    if family.len() != family.dim() {
        return Err(Error::Usage(format!(
            "tangent construction needs as many members as dimensions, got {} in R^{}",
            family.len(),
            family.dim()
        )));
    }
    if !family.is_affinely_spanning() {
        let (points, _) = family.colored_points();
        return Err(Error::NotFullDimensional {
            dim: family.dim(),
            found: crate::exactnum::affine_dimension(&points).unwrap_or(0),
        });
    }
    Ok(())
}

fn check_partition<T: Field>(family: &Family<T>, part: Partition) -> Result<()> {
    if part.len() != family.len() {
        return Err(Error::Usage(format!(
            "partition covers {} members, family has {}",
            part.len(),
            family.len()
        )));
    }
    Ok(())
}

/// The two tangents of `family` (with `m = d`) for the partition `part`.
pub fn sandwich_tangents<T: Field>(family: &Family<T>, part: Partition) -> Result<TangentPair<T>> {
    check_square(family)?;
    check_partition(family, part)?;
    is_strongly_separated(family).require()?;
    sandwich_unchecked(family, part)
}

/// [`sandwich_tangents`] for callers that already hold a separation
/// certificate.
pub(crate) fn sandwich_unchecked<T: Field>(family: &Family<T>, part: Partition) -> Result<TangentPair<T>> {
    let d = family.dim();
    let m = family.len();
    let (points, colors) = family.colored_points();
    let lifted = linearize(&points);
    let config = VectorConfiguration::new(lifted.vectors, colors.clone()).negate_where(|c| part.b().contains(c));
    let h = config.acyclicity_witness().ok_or_else(|| {
        let a = part.a().to_vec();
        let b = part.b().to_vec();
        Error::NotStronglySeparated { left: a, right: b }
    })?;
    let (chart, frame) = affinize(&config, &h)?;
    let (hull, source) = convex_hull_indexed(&chart, d)?;
    let hull_colors: Vec<usize> = source.iter().map(|&s| colors[s]).collect();
    let rainbow = rainbow_facets(&hull, &hull_colors, m);
    if rainbow.len() != 2 {
        return Err(Error::RainbowCountUnexpected { found: rainbow.len() });
    }
    let mut planes: Vec<OrientedHyperplane<T>> = rainbow
        .iter()
        .map(|&f| {
            let w = frame.pull_back(&hull.facets()[f].hyperplane);
            let coords = w.into_coords();
            let normal = Vector::new(coords[..d].iter().map(|c| -c.clone()).collect());
            OrientedHyperplane::new(normal, coords[d].clone()).map(|p| p.canonical())
        })
        .collect::<Result<_>>()?;
    planes.sort_by(hyperplane_order);
    let contacts = [contact_faces(&planes[0], family), contact_faces(&planes[1], family)];
    let second = planes.pop().expect("two planes");
    let first = planes.pop().expect("two planes");
    Ok(TangentPair {
        partition: part,
        hyperplanes: [first, second],
        contacts,
    })
}

/// Total order on canonically scaled hyperplanes.
pub fn hyperplane_order<T: Field>(x: &OrientedHyperplane<T>, y: &OrientedHyperplane<T>) -> Ordering {
    let key = |h: &OrientedHyperplane<T>| {
        let c = h.canonical();
        c.normal().extended(c.offset().clone())
    };
    key(x).lex_cmp(&key(y))
}

/// All tangents of a family of `d` members in `R^d`, grouped by the
/// canonical partitions.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentSet<T> {
    pub pairs: Vec<TangentPair<T>>,
    /// Whether every member is full dimensional, so that all hyperplanes
    /// are guaranteed distinct.
    pub full_dimensional: bool,
    /// Positions `(p, k)` and `(q, l)` of hyperplanes that coincide as
    /// unoriented hyperplanes.
    pub coincidences: Vec<((usize, usize), (usize, usize))>,
}

impl<T: Field> TangentSet<T> {
    pub fn hyperplanes(&self) -> impl Iterator<Item = (Partition, &OrientedHyperplane<T>)> {
        self.pairs
            .iter()
            .flat_map(|p| p.hyperplanes.iter().map(move |h| (p.partition, h)))
    }

    pub fn len(&self) -> usize {
        2 * self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Distinct as required: no coincidences when every member is full
    /// dimensional.
    pub fn distinctness_holds(&self) -> bool {
        !self.full_dimensional || self.coincidences.is_empty()
    }
}

pub fn all_tangents<T: Field>(family: &Family<T>) -> Result<TangentSet<T>> {
    check_square(family)?;
    is_strongly_separated(family).require()?;
    let pairs = Partition::all_canonical(family.len())
        .into_iter()
        .map(|part| sandwich_unchecked(family, part))
        .collect::<Result<Vec<_>>>()?;
    let flat: Vec<((usize, usize), &OrientedHyperplane<T>)> = pairs
        .iter()
        .enumerate()
        .flat_map(|(p, pair)| pair.hyperplanes.iter().enumerate().map(move |(k, h)| ((p, k), h)))
        .collect();
    let coincidences = flat
        .iter()
        .tuple_combinations()
        .filter(|((_, x), (_, y))| x.same_unoriented(y))
        .map(|((i, _), (j, _))| (*i, *j))
        .collect();
    Ok(TangentSet {
        pairs,
        full_dimensional: family.all_full_dimensional(),
        coincidences,
    })
}

/// Tangency and side check for one member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemberCheck {
    pub member: usize,
    /// Vertices exactly on the hyperplane.
    pub contact: Vec<usize>,
    /// A vertex on the wrong side, if any.
    pub offending_vertex: Option<usize>,
}

impl MemberCheck {
    pub fn touches(&self) -> bool {
        !self.contact.is_empty()
    }

    pub fn side_ok(&self) -> bool {
        self.offending_vertex.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentReport {
    pub members: Vec<MemberCheck>,
}

impl TangentReport {
    pub fn passed(&self) -> bool {
        self.members.iter().all(|c| c.touches() && c.side_ok())
    }

    pub fn first_failure(&self) -> Option<&MemberCheck> {
        self.members.iter().find(|c| !(c.touches() && c.side_ok()))
    }
}

/// Checks that `h` touches every member, with `A` in `H^>=` and `B` in
/// `H^<=`.
pub fn verify_tangent<T: Field>(h: &OrientedHyperplane<T>, family: &Family<T>, part: Partition) -> TangentReport {
    let members = family
        .members()
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let forbidden = if part.a().contains(i) {
                Sign::Negative
            } else {
                Sign::Positive
            };
            let sides: Vec<Sign> = m.vertices().iter().map(|v| h.side(v)).collect();
            MemberCheck {
                member: i,
                contact: (0..sides.len()).filter(|&j| sides[j].is_zero()).collect(),
                offending_vertex: sides.iter().position(|&s| s == forbidden),
            }
        })
        .collect();
    TangentReport { members }
}

/// A common tangent found by exhaustive search, oriented with `A` on the
/// nonnegative side.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleTangent<T> {
    pub hyperplane: OrientedHyperplane<T>,
    pub partition: Partition,
}

/// Every common tangent hyperplane spanned by member vertices, with each
/// partition it induces; members lying flat on a hyperplane may go to
/// either side.
pub fn brute_force_tangents<T: Field>(family: &Family<T>, guard: usize) -> Result<Vec<OracleTangent<T>>> {
    let count = family.vertex_count();
    if count > guard {
        return Err(Error::TooLarge { count, guard });
    }
    let d = family.dim();
    let m = family.len();
    let (points, _) = family.colored_points();
    let mut planes: Vec<(Vector<T>, OrientedHyperplane<T>)> = (0..points.len())
        .combinations(d)
        .filter_map(|subset| {
            let chosen: Vec<Vector<T>> = subset.iter().map(|&i| points[i].clone()).collect();
            let h = OrientedHyperplane::through_points(&chosen)?.unoriented();
            Some((h.normal().extended(h.offset().clone()), h))
        })
        .collect();
    planes.sort_by(|x, y| x.0.lex_cmp(&y.0));
    planes.dedup_by(|x, y| x.0.same(&y.0));
    let planes = planes.into_iter().map(|(_, h)| h);
    let mut out = Vec::new();
    for h in planes {
        let mut sides = Vec::with_capacity(m);
        for member in family.members() {
            let signs: Vec<Sign> = member.vertices().iter().map(|v| h.side(v)).collect();
            let pos = signs.iter().any(|s| s.is_positive());
            let neg = signs.iter().any(|s| s.is_negative());
            let touch = signs.iter().any(|s| s.is_zero());
            if !touch || (pos && neg) {
                sides.clear();
                break;
            }
            sides.push(if pos {
                Sign::Positive
            } else if neg {
                Sign::Negative
            } else {
                Sign::Zero
            });
        }
        if sides.len() != m {
            continue;
        }
        let flat: Vec<usize> = (0..m).filter(|&i| sides[i].is_zero()).collect();
        let mut found: Vec<OracleTangent<T>> = Vec::new();
        for mask in 0u64..1 << flat.len() {
            let mut positive = MemberSet::EMPTY;
            for (i, &side) in sides.iter().enumerate() {
                let s = match flat.iter().position(|&f| f == i) {
                    Some(k) if mask & (1 << k) != 0 => Sign::Positive,
                    Some(_) => Sign::Negative,
                    None => side,
                };
                if s.is_positive() {
                    positive.insert(i);
                }
            }
            let raw = Partition::new(positive, m)?;
            let (partition, hyperplane) = if raw.is_canonical() {
                (raw, h.clone())
            } else {
                (raw.swapped(), h.flipped())
            };
            if !found.iter().any(|t| t.partition == partition) {
                found.push(OracleTangent {
                    hyperplane: hyperplane.canonical(),
                    partition,
                });
            }
        }
        out.extend(found);
    }
    out.sort_by(|x, y| {
        x.partition
            .cmp(&y.partition)
            .then_with(|| hyperplane_order(&x.hyperplane, &y.hyperplane))
    });
    Ok(out)
}

/// The tangent of `d + 1` members in `R^d` that touches every member except
/// `a`, has `A \ {a}` in `H^>=`, `B` in `H^<=` and member `a` strictly in
/// `H^+`.
pub fn unique_tangent_excluding<T: Field>(
    family: &Family<T>,
    part: Partition,
    a: usize,
) -> Result<OrientedHyperplane<T>> {
    if family.len() != family.dim() + 1 {
        return Err(Error::Usage(format!(
            "excluded tangent needs {} members in R^{}, got {}",
            family.dim() + 1,
            family.dim(),
            family.len()
        )));
    }
    check_partition(family, part)?;
    if !part.a().contains(a) {
        return Err(Error::Usage(format!("excluded member {a} must lie on the A side of {part}")));
    }
    is_strongly_separated(family).require()?;
    require_spanning_subfamilies(family)?;
    unique_tangent_excluding_unchecked(family, part, a)
}

pub(crate) fn unique_tangent_excluding_unchecked<T: Field>(
    family: &Family<T>,
    part: Partition,
    a: usize,
) -> Result<OrientedHyperplane<T>> {
    let pair = sandwich_unchecked(&family.without(a), part.without(a))?;
    let excluded = family.member(a);
    let mut qualifying = pair
        .hyperplanes
        .into_iter()
        .filter(|h| excluded.vertices().iter().all(|v| h.side(v).is_positive()));
    match (qualifying.next(), qualifying.next()) {
        (Some(h), None) => Ok(h),
        (None, _) => Err(Error::NeitherQualifies { member: a }),
        (Some(_), Some(_)) => Err(Error::BothQualify { member: a }),
    }
}
