//! Polytope families, member subsets and set partitions of members.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{affine_dimension, Field, Vector};
use crate::lpsolve::{feasible, InequalitySystem, Relation};
use crate::polytope::convex_hull;

/// A set of member (or color) indices, at most 64 of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MemberSet(u64);

impl MemberSet {
    pub const EMPTY: MemberSet = MemberSet(0);

    pub fn from_bits(bits: u64) -> Self {
        MemberSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn full(m: usize) -> Self {
        MemberSet(if m >= 64 { u64::MAX } else { (1u64 << m) - 1 })
    }

    pub fn single(i: usize) -> Self {
        MemberSet(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn complement(self, m: usize) -> Self {
        MemberSet(!self.0 & MemberSet::full(m).0)
    }

    pub fn is_subset(self, other: MemberSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Nonempty proper subsets of `self`, in increasing bit order.
    pub fn proper_subsets(self) -> Vec<MemberSet> {
        let members = self.to_vec();
        let k = members.len();
        if k < 2 {
            return Vec::new();
        }
        (1u64..(1 << k) - 1)
            .map(|mask| {
                MemberSet(
                    members
                        .iter()
                        .enumerate()
                        .filter(|(b, _)| mask & (1 << b) != 0)
                        .fold(0, |acc, (_, &i)| acc | 1 << i),
                )
            })
            .collect()
    }
}

impl FromIterator<usize> for MemberSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = MemberSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Display for MemberSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_vec())
    }
}

/// A set partition `A ⊔ B` of the members `0..len`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    a: MemberSet,
    len: usize,
}

impl Partition {
    pub fn new(a: MemberSet, len: usize) -> Result<Self> {
        if !a.is_subset(MemberSet::full(len)) {
            return Err(Error::Usage(format!("partition side {a} exceeds {len} members")));
        }
        Ok(Partition { a, len })
    }

    pub fn from_sides(a: &[usize], b: &[usize], len: usize) -> Result<Self> {
        let sa: MemberSet = a.iter().copied().collect();
        let sb: MemberSet = b.iter().copied().collect();
        if sa.len() != a.len() || sb.len() != b.len() || !(sa.0 & sb.0 == 0) || sa.len() + sb.len() != len {
            return Err(Error::Usage(format!("{a:?} | {b:?} is not a partition of {len} members")));
        }
        Partition::new(sa, len)
    }

    pub fn a(self) -> MemberSet {
        self.a
    }

    pub fn b(self) -> MemberSet {
        self.a.complement(self.len)
    }

    pub fn len(self) -> usize {
        self.len
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn swapped(self) -> Self {
        Partition {
            a: self.b(),
            len: self.len,
        }
    }

    /// Representative with member 0 on the `A` side.
    pub fn canonical(self) -> Self {
        if self.a.contains(0) {
            self
        } else {
            self.swapped()
        }
    }

    pub fn is_canonical(self) -> bool {
        self.a.contains(0)
    }

    /// The `2^{len-1}` canonical partitions, `A = [len]` first.
    pub fn all_canonical(len: usize) -> Vec<Partition> {
        if len == 0 {
            return Vec::new();
        }
        let rest = MemberSet::full(len).0 & !1;
        let mut out: Vec<Partition> = (0u64..1 << (len - 1))
            .map(|k| Partition {
                a: MemberSet(1 | (rest & !(k << 1))),
                len,
            })
            .collect();
        out.sort_by_key(|p| std::cmp::Reverse(p.a.len()));
        out
    }

    /// Drops member `i` and renumbers the members above it.
    pub fn without(self, i: usize) -> Self {
        let low = self.a.0 & ((1 << i) - 1);
        let high = (self.a.0 >> (i + 1)) << i;
        Partition {
            a: MemberSet(low | high),
            len: self.len - 1,
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.a(), self.b())
    }
}

/// One member of a family, given by its vertices.
///
/// Members need not be full dimensional; redundant input points are
/// removed on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Member<T> {
    vertices: Vec<Vector<T>>,
}

impl<T: Field> Member<T> {
    pub fn new(points: Vec<Vector<T>>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::Usage("a family member needs at least one point".into()));
        };
        let d = first.dim();
        if let Some(bad) = points.iter().find(|p| p.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: bad.dim(),
            });
        }
        Ok(Member {
            vertices: extreme_points(&points),
        })
    }

    pub fn vertices(&self) -> &[Vector<T>] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn affine_dimension(&self) -> usize {
        affine_dimension(&self.vertices).unwrap_or(0)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dimension() == self.dim()
    }
}

/// The extreme points of a finite set, in input order with duplicates
/// removed.
pub fn extreme_points<T: Field>(points: &[Vector<T>]) -> Vec<Vector<T>> {
    let mut unique: Vec<Vector<T>> = Vec::new();
    for p in points {
        if !unique.iter().any(|q| q.same(p)) {
            unique.push(p.clone());
        }
    }
    let Some(first) = unique.first() else {
        return unique;
    };
    let d = first.dim();
    if unique.len() > d + 1 && affine_dimension(&unique) == Some(d) {
        if let Ok(hull) = convex_hull(&unique, d) {
            return hull.vertices().to_vec();
        }
    }
    // Lower dimensional: p is redundant iff it is a convex combination of
    // the others.
    (0..unique.len())
        .filter(|&i| {
            let others: Vec<&Vector<T>> = unique.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q).collect();
            if others.is_empty() {
                return true;
            }
            let k = others.len();
            let mut sys = InequalitySystem::new(k);
            for j in 0..k {
                sys.push(Vector::unit(k, j), Relation::Ge, T::zero()).expect("dims agree");
            }
            sys.push(Vector::new(vec![T::one(); k]), Relation::Eq, T::one()).expect("dims agree");
            for axis in 0..d {
                let row = Vector::new(others.iter().map(|q| q[axis].clone()).collect());
                sys.push(row, Relation::Eq, unique[i][axis].clone()).expect("dims agree");
            }
            !feasible(&sys).is_feasible()
        })
        .map(|i| unique[i].clone())
        .collect()
}

/// Members `0..m` in a common ambient space `R^dim`; member `i` carries
/// color `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Family<T> {
    members: Vec<Member<T>>,
    dim: usize,
}

impl<T: Field> Family<T> {
    pub fn new(members: Vec<Member<T>>) -> Result<Self> {
        let Some(first) = members.first() else {
            return Err(Error::Usage("a family needs at least one member".into()));
        };
        let dim = first.dim();
        if let Some(bad) = members.iter().find(|m| m.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(Family { members, dim })
    }

    pub fn from_points(members: Vec<Vec<Vector<T>>>) -> Result<Self> {
        Family::new(members.into_iter().map(Member::new).collect::<Result<_>>()?)
    }

    pub fn members(&self) -> &[Member<T>] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &Member<T> {
        &self.members[i]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// All member vertices with their colors.
    pub fn colored_points(&self) -> (Vec<Vector<T>>, Vec<usize>) {
        let mut points = Vec::new();
        let mut colors = Vec::new();
        for (i, m) in self.members.iter().enumerate() {
            for v in m.vertices() {
                points.push(v.clone());
                colors.push(i);
            }
        }
        (points, colors)
    }

    pub fn vertex_count(&self) -> usize {
        self.members.iter().map(|m| m.vertices.len()).sum()
    }

    /// Vertices of the members in `set`.
    pub fn union_of(&self, set: MemberSet) -> Vec<Vector<T>> {
        set.iter()
            .filter(|&i| i < self.members.len())
            .flat_map(|i| self.members[i].vertices.iter().cloned())
            .collect()
    }

    /// Whether the vertices of all members affinely span `R^dim`.
    pub fn is_affinely_spanning(&self) -> bool {
        self.subfamily_is_spanning(MemberSet::full(self.len()))
    }

    pub fn subfamily_is_spanning(&self, set: MemberSet) -> bool {
        affine_dimension(&self.union_of(set)) == Some(self.dim)
    }

    pub fn all_full_dimensional(&self) -> bool {
        self.members.iter().all(Member::is_full_dimensional)
    }

    /// The family with member `i` removed.
    pub fn without(&self, i: usize) -> Self {
        let mut members = self.members.clone();
        members.remove(i);
        Family { members, dim: self.dim }
    }

    /// Reordered so that new member `k` is old member `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        Family {
            members: order.iter().map(|&i| self.members[i].clone()).collect(),
            dim: self.dim,
        }
    }

    /// Image under `x -> M x + t`.
    pub fn mapped(&self, f: impl Fn(&Vector<T>) -> Vector<T>) -> Result<Self> {
        Family::from_points(
            self.members
                .iter()
                .map(|m| m.vertices.iter().map(&f).collect())
                .collect(),
        )
    }
}
