//! Inscribed polytopes of disks, balls and ellipsoids, convergence of the
//! sandwich tangents under refinement, and the pyramid counterexample.

use std::f64::consts::PI;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactnum::{Field, Vector};
use crate::family::{Family, Member, Partition};
use crate::polytope::{convex_hull, Polytope};
use crate::separation::{is_strongly_separated, SeparationCertificate};
use crate::tangents::{brute_force_tangents, sandwich_unchecked, OracleTangent, TangentPair};

/// Resolution of the tangent-half-angle parameter of circle points.
const PARAM_SCALE: i64 = 1 << 16;

/// A convex body with rational parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum BodySpec<T> {
    Ball { center: Vector<T>, radius: T },
    Ellipsoid { center: Vector<T>, axes: Vector<T> },
    Polytope { vertices: Vec<Vector<T>> },
}

impl<T: Field> BodySpec<T> {
    pub fn dim(&self) -> usize {
        match self {
            BodySpec::Ball { center, .. } | BodySpec::Ellipsoid { center, .. } => center.dim(),
            BodySpec::Polytope { vertices } => vertices.first().map_or(0, Vector::dim),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            BodySpec::Ball { radius, .. } if !radius.sign().is_positive() => {
                Err(Error::UnsupportedBody("ball radius must be positive".into()))
            }
            BodySpec::Ellipsoid { center, axes } => {
                if axes.dim() != center.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: center.dim(),
                        found: axes.dim(),
                    });
                }
                if axes.iter().any(|a| !a.sign().is_positive()) {
                    return Err(Error::UnsupportedBody("ellipsoid axes must be positive".into()));
                }
                Ok(())
            }
            BodySpec::Polytope { vertices } if vertices.is_empty() => {
                Err(Error::UnsupportedBody("polytope body without vertices".into()))
            }
            _ => Ok(()),
        }
    }

    /// Whether `x` lies in the closed body (for polytopes: is one of the
    /// given vertices, which is all inscription ever produces).
    pub fn contains_exactly(&self, x: &Vector<T>) -> bool {
        match self {
            BodySpec::Ball { center, radius } => {
                let r = x.sub(center);
                !(r.dot(&r) - radius.clone() * radius.clone()).sign().is_positive()
            }
            BodySpec::Ellipsoid { center, axes } => {
                let q = x
                    .sub(center)
                    .iter()
                    .zip(axes.iter())
                    .map(|(c, a)| {
                        let s = c.clone() / a.clone();
                        s.clone() * s
                    })
                    .fold(T::zero(), |acc, s| acc + s);
                !(q - T::one()).sign().is_positive()
            }
            BodySpec::Polytope { vertices } => vertices.iter().any(|v| v.same(x)),
        }
    }

    /// Whether `x` lies exactly on the boundary sphere or ellipsoid.
    pub fn on_boundary(&self, x: &Vector<T>) -> bool {
        match self {
            BodySpec::Ball { center, radius } => {
                let r = x.sub(center);
                (r.dot(&r) - radius.clone() * radius.clone()).sign().is_zero()
            }
            BodySpec::Ellipsoid { center, axes } => {
                let q = x
                    .sub(center)
                    .iter()
                    .zip(axes.iter())
                    .map(|(c, a)| {
                        let s = c.clone() / a.clone();
                        s.clone() * s
                    })
                    .fold(T::zero(), |acc, s| acc + s);
                (q - T::one()).sign().is_zero()
            }
            BodySpec::Polytope { vertices } => vertices.iter().any(|v| v.same(x)),
        }
    }
}

/// A rational point of the unit circle near angle `2 pi k / n + phase`.
///
/// The angle only depends on `k / n` in lowest terms, so the points for
/// `n` reappear unchanged for every multiple of `n`.
pub fn circle_point<T: Field>(k: usize, n: usize, phase: f64) -> (T, T) {
    let g = k.gcd(&n).max(1);
    let (k, n) = (k / g, n / g);
    let theta = 2.0 * PI * (k as f64 / n as f64) + phase;
    let t = (theta / 2.0).tan();
    if !t.is_finite() || t.abs() > 1e6 {
        return (-T::one(), T::zero());
    }
    let t = T::from_ratio((t * PARAM_SCALE as f64).round() as i64, PARAM_SCALE);
    let t2 = t.clone() * t.clone();
    let denom = T::one() + t2.clone();
    ((T::one() - t2) / denom.clone(), (t.clone() + t) / denom)
}

/// Points on the unit sphere of `R^dim` (`dim` 2 or 3) for resolution `n`.
fn unit_sphere_points<T: Field>(dim: usize, n: usize, phase: f64) -> Result<Vec<Vector<T>>> {
    let ring: Vec<(T, T)> = (0..n).map(|k| circle_point::<T>(k, n, phase)).collect();
    match dim {
        2 => Ok(ring.into_iter().map(|(x, y)| Vector::new(vec![x, y])).collect()),
        3 => {
            // Latitudes 2 pi j / n strictly between the poles.
            let latitudes: Vec<(T, T)> = (1..n)
                .take_while(|&j| 4 * j < n)
                .map(|j| circle_point::<T>(j, n, 0.0))
                .collect();
            let ring_at = |c: &T, s: T| {
                ring.iter()
                    .map(|(x, y)| Vector::new(vec![c.clone() * x.clone(), c.clone() * y.clone(), s.clone()]))
                    .collect::<Vec<_>>()
            };
            let mut out = vec![Vector::new(vec![T::zero(), T::zero(), -T::one()])];
            for (c, s) in latitudes.iter().rev() {
                out.extend(ring_at(c, -s.clone()));
            }
            out.extend(ring_at(&T::one(), T::zero()));
            for (c, s) in &latitudes {
                out.extend(ring_at(c, s.clone()));
            }
            out.push(Vector::new(vec![T::zero(), T::zero(), T::one()]));
            Ok(out)
        }
        d => Err(Error::UnsupportedDimension(d)),
    }
}

/// Vertices of a polytope inscribed in `body`, exactly on its boundary for
/// balls and ellipsoids.
///
/// Disks get `n` vertices near the angles `2 pi k / n + phase`; balls in
/// `R^3` get `n` longitudes, the latitudes `2 pi j / n` and both poles.
/// Doubling `n` keeps every earlier vertex.
pub fn inscribed_points<T: Field>(body: &BodySpec<T>, n: usize, phase: &T) -> Result<Vec<Vector<T>>> {
    body.validate()?;
    let d = body.dim();
    if n < 3 {
        return Err(Error::Usage(format!("inscribing needs at least 3 points per circle, got {n}")));
    }
    let phase = phase.to_f64_lossy();
    match body {
        BodySpec::Ball { center, radius } => Ok(unit_sphere_points(d, n, phase)?
            .into_iter()
            .map(|p| p.scale(radius).add(center))
            .collect()),
        BodySpec::Ellipsoid { center, axes } => Ok(unit_sphere_points::<T>(d, n, phase)?
            .into_iter()
            .map(|p| {
                Vector::new(p.iter().zip(axes.iter()).map(|(x, a)| x.clone() * a.clone()).collect()).add(center)
            })
            .collect()),
        BodySpec::Polytope { vertices } => Ok(vertices.clone()),
    }
}

pub fn inscribe_polytope<T: Field>(body: &BodySpec<T>, n: usize, phase: &T) -> Result<Polytope<T>> {
    let points = inscribed_points(body, n, phase)?;
    convex_hull(&points, body.dim())
}

/// Angle between unit normals and offset difference, both in floating
/// point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperplaneGap {
    pub angle: f64,
    pub offset: f64,
}

impl HyperplaneGap {
    pub fn between(x: &(Vec<f64>, f64), y: &(Vec<f64>, f64)) -> Self {
        let dot: f64 = x.0.iter().zip(&y.0).map(|(a, b)| a * b).sum();
        HyperplaneGap {
            angle: dot.clamp(-1.0, 1.0).acos(),
            offset: (x.1 - y.1).abs(),
        }
    }

    fn max(self, other: Self) -> Self {
        HyperplaneGap {
            angle: self.angle.max(other.angle),
            offset: self.offset.max(other.offset),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RefinementLevel<T> {
    pub n: usize,
    pub family: Family<T>,
    /// Hyperplanes reordered to match the previous level.
    pub pair: TangentPair<T>,
    pub unit: [(Vec<f64>, f64); 2],
    /// Largest change from the previous level, over both hyperplanes.
    pub gap: Option<HyperplaneGap>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RefinementRun<T> {
    pub partition: Partition,
    pub levels: Vec<RefinementLevel<T>>,
    /// Every level's vertices contain the previous level's.
    pub nested: bool,
    pub converging: bool,
    /// Angle between the two hyperplanes of the final level.
    pub final_separation: f64,
}

impl<T> RefinementRun<T> {
    pub fn final_gap(&self) -> Option<HyperplaneGap> {
        self.levels.last().and_then(|l| l.gap)
    }
}

/// Final-level angle gap below which a run counts as converging.
pub const DEFAULT_ANGLE_TOLERANCE: f64 = 1e-2;

/// Sandwich tangents of the inscribed families along `schedule`.
pub fn convergence_run<T: Field>(
    bodies: &[BodySpec<T>],
    part: Partition,
    schedule: &[usize],
    phase: &T,
    angle_tolerance: f64,
) -> Result<RefinementRun<T>> {
    if schedule.is_empty() {
        return Err(Error::Usage("refinement schedule is empty".into()));
    }
    if schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Usage("refinement schedule must increase".into()));
    }
    let mut levels: Vec<RefinementLevel<T>> = Vec::new();
    let mut previous_points: Option<Vec<Vec<Vector<T>>>> = None;
    let mut nested = true;
    for (idx, &n) in schedule.iter().enumerate() {
        let points: Vec<Vec<Vector<T>>> = bodies
            .iter()
            .map(|b| inscribed_points(b, n, phase))
            .collect::<Result<_>>()?;
        if let Some(prev) = &previous_points {
            nested &= prev
                .iter()
                .zip(&points)
                .all(|(old, new)| old.iter().all(|p| new.iter().any(|q| q.same(p))));
        }
        let family = Family::new(points.iter().cloned().map(Member::new).collect::<Result<_>>()?)?;
        if idx == 0 {
            if family.len() != family.dim() {
                return Err(Error::Usage(format!(
                    "convergence runs need as many bodies as dimensions, got {} in R^{}",
                    family.len(),
                    family.dim()
                )));
            }
            is_strongly_separated(&family).require()?;
        }
        let mut pair = sandwich_unchecked(&family, part)?;
        let mut unit = [pair.hyperplanes[0].to_unit_f64(), pair.hyperplanes[1].to_unit_f64()];
        let mut gap = None;
        if let Some(prev) = levels.last() {
            let keep = [
                HyperplaneGap::between(&prev.unit[0], &unit[0]),
                HyperplaneGap::between(&prev.unit[1], &unit[1]),
            ];
            let swap = [
                HyperplaneGap::between(&prev.unit[0], &unit[1]),
                HyperplaneGap::between(&prev.unit[1], &unit[0]),
            ];
            let cost = |g: &[HyperplaneGap; 2]| (g[0].angle + g[1].angle, g[0].offset + g[1].offset);
            let (ck, cs) = (cost(&keep), cost(&swap));
            let swapped = cs.0 < ck.0 || (cs.0 == ck.0 && cs.1 < ck.1);
            let chosen = if swapped {
                pair.hyperplanes.swap(0, 1);
                pair.contacts.swap(0, 1);
                unit.swap(0, 1);
                swap
            } else {
                keep
            };
            gap = Some(chosen[0].max(chosen[1]));
        }
        levels.push(RefinementLevel {
            n,
            family,
            pair,
            unit,
            gap,
        });
        previous_points = Some(points);
    }
    let gaps: Vec<HyperplaneGap> = levels.iter().filter_map(|l| l.gap).collect();
    let converging = match (gaps.first(), gaps.last()) {
        (Some(first), Some(last)) => last.angle < angle_tolerance && last.angle <= first.angle,
        _ => false,
    };
    let last = levels.last().expect("schedule is nonempty");
    let final_separation = HyperplaneGap::between(&last.unit[0], &last.unit[1]).angle;
    Ok(RefinementRun {
        partition: part,
        levels,
        nested,
        converging,
        final_separation,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TangentKind {
    Outer,
    Inner,
}

/// A common tangent line of two circles with unit normal, in floating
/// point: outer lines have both circles on the nonnegative side, inner
/// lines have the first circle on the nonnegative side and the second on
/// the nonpositive side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleTangent {
    pub kind: TangentKind,
    pub normal: [f64; 2],
    pub offset: f64,
}

impl CircleTangent {
    pub fn unit(&self) -> (Vec<f64>, f64) {
        (self.normal.to_vec(), self.offset)
    }
}

/// The four common tangents of two disjoint circles.
pub fn analytic_circle_tangents(c1: [f64; 2], r1: f64, c2: [f64; 2], r2: f64) -> Result<Vec<CircleTangent>> {
    let delta = [c2[0] - c1[0], c2[1] - c1[1]];
    let dist = delta[0].hypot(delta[1]);
    if !(r1 > 0.0 && r2 > 0.0) || dist <= r1 + r2 {
        return Err(Error::CirclesNotDisjoint);
    }
    let phi = delta[1].atan2(delta[0]);
    let mut out = Vec::with_capacity(4);
    // <n, c1> - alpha = r1 and <n, c2> - alpha = +r2 (outer) or -r2 (inner).
    for (kind, along) in [(TangentKind::Outer, r2 - r1), (TangentKind::Inner, -r2 - r1)] {
        let spread = (along / dist).acos();
        for sign in [1.0, -1.0] {
            let theta = phi + sign * spread;
            let normal = [theta.cos(), theta.sin()];
            let offset = normal[0] * c1[0] + normal[1] * c1[1] - r1;
            out.push(CircleTangent { kind, normal, offset });
        }
    }
    Ok(out)
}

/// Outcome of the pyramid-and-two-balls example.
#[derive(Debug, Clone, PartialEq)]
pub struct NgonDemo<T> {
    pub n: usize,
    pub family: Family<T>,
    /// Every common tangent with each partition it induces.
    pub tangents: Vec<OracleTangent<T>>,
    /// Number of distinct unoriented tangent planes.
    pub plane_count: usize,
    pub certificate: SeparationCertificate<T>,
}

/// The pyramid over an inscribed `n`-gon with apex `(0,0,1)` and two
/// inscribed unit balls centered at `(0,0,10)` and `(0,0,-10)` built with
/// the same `n` longitudes, so that their equators repeat the `n`-gon.
pub fn ngon_pyramid_demo<T: Field>(n: usize, guard: usize) -> Result<NgonDemo<T>> {
    if n < 3 {
        return Err(Error::Usage(format!("the pyramid needs an n-gon with n >= 3, got {n}")));
    }
    let mut pyramid: Vec<Vector<T>> = (0..n)
        .map(|k| {
            let (x, y) = circle_point::<T>(k, n, 0.0);
            Vector::new(vec![x, y, T::zero()])
        })
        .collect();
    pyramid.push(Vector::new(vec![T::zero(), T::zero(), T::one()]));
    let ball = |z: i64| BodySpec::Ball {
        center: Vector::new(vec![T::zero(), T::zero(), T::from_ratio(z, 1)]),
        radius: T::one(),
    };
    let family = Family::from_points(vec![
        pyramid,
        inscribed_points(&ball(10), n, &T::zero())?,
        inscribed_points(&ball(-10), n, &T::zero())?,
    ])?;
    let tangents = brute_force_tangents(&family, guard)?;
    let mut planes: Vec<&OracleTangent<T>> = Vec::new();
    for t in &tangents {
        if !planes.iter().any(|p| p.hyperplane.same_unoriented(&t.hyperplane)) {
            planes.push(t);
        }
    }
    let plane_count = planes.len();
    let certificate = is_strongly_separated(&family);
    Ok(NgonDemo {
        n,
        family,
        tangents,
        plane_count,
        certificate,
    })
}

#[cfg(test)]
mod tests;
