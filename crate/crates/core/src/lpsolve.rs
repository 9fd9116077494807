//! Exact feasibility of mixed strict / non-strict linear systems.
//!
//! Strict rows `<a, x> < b` become `<a, x> + t <= b` with one shared slack
//! `t` in `[0, 1]` that is maximized; the system is feasible iff the optimum
//! is positive. The LP itself is a dense two-phase tableau simplex with
//! Bland's rule, so it terminates on degenerate exact input; systems with
//! many rows go through row generation.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exactnum::{Field, Vector};
use crate::polytope::OrientedHyperplane;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl Relation {
    pub fn is_strict(self) -> bool {
        matches!(self, Relation::Lt | Relation::Gt)
    }

    /// Whether `lhs rel rhs` holds.
    pub fn holds<T: Field>(self, lhs: &T, rhs: &T) -> bool {
        let o = lhs.cmp_field(rhs);
        match self {
            Relation::Lt => o == Ordering::Less,
            Relation::Le => o != Ordering::Greater,
            Relation::Eq => o == Ordering::Equal,
            Relation::Ge => o != Ordering::Less,
            Relation::Gt => o == Ordering::Greater,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Inequality<T> {
    pub coeffs: Vector<T>,
    pub relation: Relation,
    pub rhs: T,
}

/// Rows `<a, x> rel b` over `x` in `R^dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalitySystem<T> {
    dim: usize,
    rows: Vec<Inequality<T>>,
}

impl<T: Field> InequalitySystem<T> {
    pub fn new(dim: usize) -> Self {
        InequalitySystem { dim, rows: Vec::new() }
    }

    pub fn push(&mut self, coeffs: Vector<T>, relation: Relation, rhs: T) -> Result<()> {
        if coeffs.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: coeffs.dim(),
            });
        }
        self.rows.push(Inequality { coeffs, relation, rhs });
        Ok(())
    }

    pub fn with(mut self, coeffs: Vector<T>, relation: Relation, rhs: T) -> Result<Self> {
        self.push(coeffs, relation, rhs)?;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Inequality<T>] {
        &self.rows
    }

    pub fn is_satisfied_by(&self, x: &Vector<T>) -> bool {
        x.dim() == self.dim && self.rows.iter().all(|r| r.relation.holds(&r.coeffs.dot(x), &r.rhs))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FeasibilityResult<T> {
    /// `slack` is the common margin of the strict rows (zero if there are none).
    Feasible { witness: Vector<T>, slack: T },
    Infeasible,
}

impl<T> FeasibilityResult<T> {
    pub fn witness(&self) -> Option<&Vector<T>> {
        match self {
            FeasibilityResult::Feasible { witness, .. } => Some(witness),
            FeasibilityResult::Infeasible => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityResult::Feasible { .. })
    }
}

/// Rows solved directly before switching to row generation.
const DIRECT_ROWS: usize = 24;

/// Decides the system and returns a witness satisfying every row verbatim.
///
/// Large systems are solved by row generation: the LP runs on a subset of
/// rows, and the rows its optimum violates at the same slack are added until
/// none is, at which point the optimum is also optimal for the full system.
pub fn feasible<T: Field>(system: &InequalitySystem<T>) -> FeasibilityResult<T> {
    let n = system.dim;
    let strict = system.rows.iter().any(|r| r.relation.is_strict());
    let all: Vec<&Inequality<T>> = system.rows.iter().collect();
    let (witness, slack) = if all.len() <= DIRECT_ROWS {
        match solve_rows(n, &all, strict) {
            Some(sol) => sol,
            None => return FeasibilityResult::Infeasible,
        }
    } else {
        let batch = n + 2;
        let mut active: Vec<bool> = system.rows.iter().map(|r| r.relation == Relation::Eq).collect();
        for i in 0..system.rows.len() {
            if active.iter().filter(|&&a| a).count() >= 2 * batch {
                break;
            }
            active[i] = true;
        }
        loop {
            let rows: Vec<&Inequality<T>> = (0..all.len()).filter(|&i| active[i]).map(|i| all[i]).collect();
            let Some((x, t)) = solve_rows(n, &rows, strict) else {
                return FeasibilityResult::Infeasible;
            };
            if strict && !t.sign().is_positive() {
                return FeasibilityResult::Infeasible;
            }
            let mut violated: Vec<(usize, T)> = (0..all.len())
                .filter(|&i| !active[i])
                .filter_map(|i| violation(all[i], &x, &t).map(|v| (i, v)))
                .collect();
            if violated.is_empty() {
                break (x, t);
            }
            violated.sort_by(|a, b| b.1.cmp_field(&a.1).then(a.0.cmp(&b.0)));
            for (i, _) in violated.into_iter().take(batch) {
                active[i] = true;
            }
        }
    };
    if strict && !slack.sign().is_positive() {
        return FeasibilityResult::Infeasible;
    }
    debug_assert!(system.is_satisfied_by(&witness));
    FeasibilityResult::Feasible { witness, slack }
}

/// How far `row` misses being satisfied by `x` with strict margin `t`.
fn violation<T: Field>(row: &Inequality<T>, x: &Vector<T>, t: &T) -> Option<T> {
    let lhs = row.coeffs.dot(x);
    let miss = match row.relation {
        Relation::Lt => lhs + t.clone() - row.rhs.clone(),
        Relation::Le => lhs - row.rhs.clone(),
        Relation::Gt => row.rhs.clone() - lhs + t.clone(),
        Relation::Ge => row.rhs.clone() - lhs,
        Relation::Eq => (lhs - row.rhs.clone()).abs(),
    };
    miss.sign().is_positive().then_some(miss)
}

/// Maximizes the strict margin `t` (capped at 1) over `rows`; `None` if
/// the non-strict part is infeasible.
fn solve_rows<T: Field>(n: usize, rows: &[&Inequality<T>], strict: bool) -> Option<(Vector<T>, T)> {
    // Columns: x+ (n), x- (n), t (strict only).
    let width = 2 * n + usize::from(strict);
    let mut lp = Lp::new(width);
    for r in rows {
        let mut a: Vec<T> = r.coeffs.iter().cloned().collect();
        a.extend(r.coeffs.iter().map(|c| -c.clone()));
        let rel = match r.relation {
            Relation::Lt => {
                a.push(T::one());
                LpRel::Le
            }
            Relation::Gt => {
                a.push(-T::one());
                LpRel::Ge
            }
            other => {
                if strict {
                    a.push(T::zero());
                }
                match other {
                    Relation::Le => LpRel::Le,
                    Relation::Ge => LpRel::Ge,
                    _ => LpRel::Eq,
                }
            }
        };
        lp.rows.push((a, rel, r.rhs.clone()));
    }
    if strict {
        let mut cap = vec![T::zero(); width];
        cap[2 * n] = T::one();
        lp.rows.push((cap.clone(), LpRel::Le, T::one()));
        lp.objective = cap;
    }
    let solution = match lp.solve() {
        LpOutcome::Optimal(y) => y,
        // t is capped, so only a strict-free system can be unbounded.
        LpOutcome::Unbounded(y) => y,
        LpOutcome::Infeasible => return None,
    };
    let witness = Vector::new((0..n).map(|j| solution[j].clone() - solution[n + j].clone()).collect());
    let slack = if strict { solution[2 * n].clone() } else { T::zero() };
    Some((witness, slack))
}

/// A hyperplane with `A` on its negative side and `B` on its positive side
/// (strictly when `strict`), or `None` if there is none.
///
/// The non-strict variant additionally requires the normal to increase from
/// the centroid of `A` to the centroid of `B`, which rules out the zero
/// normal; it therefore reports `None` when the centroids coincide.
///
/// The result depends only on the unordered pair: swapping `A` and `B`
/// returns the flipped hyperplane.
pub fn separating_hyperplane<T: Field>(
    a: &[Vector<T>],
    b: &[Vector<T>],
    strict: bool,
) -> Result<Option<OrientedHyperplane<T>>> {
    let (Some(first), false) = (a.first(), b.is_empty()) else {
        return Err(Error::Usage("separation needs two nonempty point sets".into()));
    };
    let d = first.dim();
    if let Some(bad) = a.iter().chain(b).find(|p| p.dim() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: bad.dim(),
        });
    }
    if canonical_order(a, b) == Ordering::Greater {
        return Ok(separating_hyperplane(b, a, strict)?.map(|h| h.flipped()));
    }
    if strict {
        if let Some(h) = centroid_separator(a, b) {
            return Ok(Some(h));
        }
    }
    // Unknowns (u, alpha); rows <p, u> - alpha.
    let row =|p: &Vector<T>| p.extended(-T::one());
    let mut sys = InequalitySystem::new(d + 1);
    let (below, above) = if strict {
        (Relation::Lt, Relation::Gt)
    } else {
        (Relation::Le, Relation::Ge)
    };
    for p in a {
        sys.push(row(p), below, T::zero())?;
    }
    for p in b {
        sys.push(row(p), above, T::zero())?;
    }
    if !strict {
        let ca = Vector::centroid(a).expect("nonempty");
        let cb = Vector::centroid(b).expect("nonempty");
        sys.push(cb.sub(&ca).extended(T::zero()), Relation::Eq, T::one())?;
    }
    let Some(w) = feasible(&sys).witness().cloned() else {
        return Ok(None);
    };
    let coords = w.into_coords();
    let offset = coords[d].clone();
    let normal = Vector::new(coords[..d].to_vec());
    Ok(OrientedHyperplane::new(normal, offset).ok().map(|h| h.canonical()))
}

/// The hyperplane normal to the centroid difference, halfway between the
/// two projected point sets, if it already separates them strictly.
fn centroid_separator<T: Field>(a: &[Vector<T>], b: &[Vector<T>]) -> Option<OrientedHyperplane<T>> {
    let u = Vector::centroid(b)?.sub(&Vector::centroid(a)?);
    let max_a = a.iter().map(|p| p.dot(&u)).max_by(|x, y| x.cmp_field(y))?;
    let min_b = b.iter().map(|p| p.dot(&u)).min_by(|x, y| x.cmp_field(y))?;
    if !(min_b.clone() - max_a.clone()).sign().is_positive() {
        return None;
    }
    let offset = (max_a + min_b) / T::from_i64(2).expect("small integer");
    OrientedHyperplane::new(u, offset).ok().map(|h| h.canonical())
}

fn canonical_order<T: Field>(a: &[Vector<T>], b: &[Vector<T>]) -> Ordering {
    let sorted = |s: &[Vector<T>]| {
        let mut v = s.to_vec();
        v.sort_by(|x, y| x.lex_cmp(y));
        v
    };
    let (sa, sb) = (sorted(a), sorted(b));
    for (x, y) in sa.iter().zip(&sb) {
        match x.lex_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    sa.len().cmp(&sb.len())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LpRel {
    Le,
    Eq,
    Ge,
}

/// maximize `objective . y` subject to `rows`, `y >= 0`.
struct Lp<T> {
    width: usize,
    rows: Vec<(Vec<T>, LpRel, T)>,
    objective: Vec<T>,
}

enum LpOutcome<T> {
    Optimal(Vec<T>),
    /// Unbounded objective; carries a feasible point.
    Unbounded(Vec<T>),
    Infeasible,
}

struct Tableau<T> {
    /// Constraint rows, last entry is the right-hand side.
    rows: Vec<Vec<T>>,
    basis: Vec<usize>,
}

impl<T: Field> Tableau<T> {
    fn ncols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len() - 1)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = T::one() / self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].sign().is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&prow) {
                *v = v.clone() - f.clone() * p.clone();
            }
        }
        self.basis[r] = c;
    }

    /// Primal simplex with Bland's rule over columns where `allowed`.
    /// Returns false on unboundedness.
    fn optimize(&mut self, cost: &[T], allowed: &dyn Fn(usize) -> bool) -> bool {
        let ncols = self.ncols();
        loop {
            let entering = (0..ncols).filter(|&j| allowed(j)).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let reduced = self
                    .rows
                    .iter()
                    .zip(&self.basis)
                    .fold(cost[j].clone(), |acc, (row, &b)| acc - cost[b].clone() * row[j].clone());
                reduced.sign().is_positive()
            });
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<(usize, T)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].sign().is_positive() {
                    continue;
                }
                let ratio = row[ncols].clone() / row[c].clone();
                best = match best {
                    None => Some((i, ratio)),
                    Some((bi, br)) => match ratio.cmp_field(&br) {
                        Ordering::Less => Some((i, ratio)),
                        Ordering::Equal if self.basis[i] < self.basis[bi] => Some((i, ratio)),
                        _ => Some((bi, br)),
                    },
                };
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, c);
        }
    }

    fn value(&self, width: usize) -> Vec<T> {
        let ncols = self.ncols();
        let mut y = vec![T::zero(); width];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < width {
                y[b] = row[ncols].clone();
            }
        }
        y
    }
}

impl<T: Field> Lp<T> {
    fn new(width: usize) -> Self {
        Lp {
            width,
            rows: Vec::new(),
            objective: vec![T::zero(); width],
        }
    }

    fn solve(&self) -> LpOutcome<T> {
        let n = self.width;
        // Normalize to nonnegative right-hand sides.
        let rows: Vec<(Vec<T>, LpRel, T)> = self
            .rows
            .iter()
            .map(|(a, rel, b)| {
                if b.sign().is_negative() {
                    let flipped = match rel {
                        LpRel::Le => LpRel::Ge,
                        LpRel::Ge => LpRel::Le,
                        LpRel::Eq => LpRel::Eq,
                    };
                    (a.iter().map(|x| -x.clone()).collect(), flipped, -b.clone())
                } else {
                    (a.clone(), *rel, b.clone())
                }
            })
            .collect();
        let m = rows.len();
        let n_slack = rows.iter().filter(|r| r.1 != LpRel::Eq).count();
        let n_art = rows.iter().filter(|r| r.1 != LpRel::Le).count();
        let art_start = n + n_slack;
        let ncols = art_start + n_art;

        let mut t = Tableau {
            rows: Vec::with_capacity(m),
            basis: Vec::with_capacity(m),
        };
        let (mut s, mut a) = (n, art_start);
        for (coeffs, rel, rhs) in rows {
            let mut row = coeffs;
            row.resize(ncols + 1, T::zero());
            row[ncols] = rhs;
            match rel {
                LpRel::Le => {
                    row[s] = T::one();
                    t.basis.push(s);
                    s += 1;
                }
                LpRel::Ge => {
                    row[s] = -T::one();
                    s += 1;
                    row[a] = T::one();
                    t.basis.push(a);
                    a += 1;
                }
                LpRel::Eq => {
                    row[a] = T::one();
                    t.basis.push(a);
                    a += 1;
                }
            }
            t.rows.push(row);
        }

        if n_art > 0 {
            let cost: Vec<T> = (0..ncols)
                .map(|j| if j >= art_start { -T::one() } else { T::zero() })
                .collect();
            t.optimize(&cost, &|_| true);
            let infeasibility = t
                .rows
                .iter()
                .zip(&t.basis)
                .filter(|(_, &b)| b >= art_start)
                .fold(T::zero(), |acc, (row, _)| acc + row[ncols].clone());
            if infeasibility.sign().is_positive() {
                return LpOutcome::Infeasible;
            }
            // Drive zero-valued artificials out of the basis.
            let mut i = 0;
            while i < t.rows.len() {
                if t.basis[i] < art_start {
                    i += 1;
                    continue;
                }
                match (0..art_start).find(|&j| !t.rows[i][j].sign().is_zero()) {
                    Some(j) => {
                        t.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        t.rows.remove(i);
                        t.basis.remove(i);
                    }
                }
            }
        }

        let mut cost = self.objective.clone();
        cost.resize(ncols, T::zero());
        if t.optimize(&cost, &|j| j < art_start) {
            LpOutcome::Optimal(t.value(n))
        } else {
            LpOutcome::Unbounded(t.value(n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational as Q;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn qv(c: &[i64]) -> Vector<Q> {
        Vector::from_i64s(c)
    }

    #[test]
    fn separator_beyond_the_centroid_direction() {
        let a = [qv(&[0, 0]), qv(&[20, 1])];
        let b = [qv(&[1, 3])];
        assert!(centroid_separator(&a, &b).is_none());
        let h = separating_hyperplane(&a, &b, true).unwrap().unwrap();
        assert!(a.iter().all(|p| h.side(p).is_negative()));
        assert!(h.side(&b[0]).is_positive());
        let far = [qv(&[30, 0])];
        let h = separating_hyperplane(&a, &far, true).unwrap().unwrap();
        assert!(h.side(&far[0]).is_positive() && a.iter().all(|p| h.side(p).is_negative()));
    }

    #[test]
    fn open_interval() {
        let sys = InequalitySystem::new(1)
            .with(qv(&[1]), Relation::Gt, q(0, 1))
            .unwrap()
            .with(qv(&[1]), Relation::Lt, q(1, 1))
            .unwrap();
        assert_eq!(
            feasible(&sys),
            FeasibilityResult::Feasible {
                witness: Vector::new(vec![q(1, 2)]),
                slack: q(1, 2)
            }
        );
    }

    #[test]
    fn contradictory_strict_rows() {
        let sys = InequalitySystem::new(1)
            .with(qv(&[1]), Relation::Gt, q(0, 1))
            .unwrap()
            .with(qv(&[1]), Relation::Lt, q(0, 1))
            .unwrap();
        assert_eq!(feasible(&sys), FeasibilityResult::Infeasible);
    }

    #[test]
    fn square_with_marked_edge() {
        // Unit square facets: x <= 1, -x <= 0, y <= 1 (marked), -y <= 0.
        let facets = [(qv(&[1, 0]), 1), (qv(&[-1, 0]), 0), (qv(&[0, 1]), 1), (qv(&[0, -1]), 0)];
        let mut sys = InequalitySystem::new(2);
        for (i, (a, b)) in facets.iter().enumerate() {
            let rel = if i == 2 { Relation::Gt } else { Relation::Lt };
            sys.push(a.clone(), rel, q(*b, 1)).unwrap();
        }
        let w = feasible(&sys).witness().cloned().unwrap();
        assert!(w[1] > q(1, 1));
        assert!(w[0] > q(0, 1) && w[0] < q(1, 1));
        assert!(sys.is_satisfied_by(&w));
    }

    #[test]
    fn equalities_and_nonstrict() {
        let sys = InequalitySystem::new(2)
            .with(qv(&[1, 1]), Relation::Eq, q(3, 1))
            .unwrap()
            .with(qv(&[1, -1]), Relation::Ge, q(5, 1))
            .unwrap();
        let w = feasible(&sys).witness().cloned().unwrap();
        assert!(sys.is_satisfied_by(&w));
        let bad = sys.with(qv(&[0, 1]), Relation::Ge, q(0, 1)).unwrap();
        assert_eq!(feasible(&bad), FeasibilityResult::Infeasible);
    }

    #[test]
    fn empty_system_is_feasible() {
        assert!(feasible(&InequalitySystem::<Q>::new(3)).is_feasible());
    }

    #[test]
    fn separating_point_pairs() {
        let h = separating_hyperplane(&[qv(&[0, 0])], &[qv(&[1, 0])], true).unwrap().unwrap();
        assert!(h.normal()[0] > q(0, 1));
        assert!(h.side(&qv(&[0, 0])).is_negative() && h.side(&qv(&[1, 0])).is_positive());
        assert_eq!(separating_hyperplane(&[qv(&[0, 0])], &[qv(&[0, 0])], true).unwrap(), None);
        assert!(separating_hyperplane(&[qv(&[0, 0])], &[qv(&[0, 0, 1])], true).is_err());
    }

    #[test]
    fn separating_squares() {
        let a: Vec<_> = [[0, 0], [1, 0], [1, 1], [0, 1]].iter().map(|c| qv(c)).collect();
        let b: Vec<_> = [[3, 0], [4, 0], [4, 1], [3, 1]].iter().map(|c| qv(c)).collect();
        let h = separating_hyperplane(&a, &b, true).unwrap().unwrap();
        assert!(a.iter().all(|p| h.side(p).is_negative()));
        assert!(b.iter().all(|p| h.side(p).is_positive()));
        let g = separating_hyperplane(&b, &a, true).unwrap().unwrap();
        assert!(g.same_oriented(&h.flipped()));
    }

    #[test]
    fn weak_separation_of_touching_sets() {
        let a = vec![qv(&[0, 0]), qv(&[1, 0])];
        let b = vec![qv(&[1, 0]), qv(&[2, 0])];
        assert_eq!(separating_hyperplane(&a, &b, true).unwrap(), None);
        let h = separating_hyperplane(&a, &b, false).unwrap().unwrap();
        assert!(a.iter().all(|p| !h.side(p).is_positive()));
        assert!(b.iter().all(|p| !h.side(p).is_negative()));
    }

    fn small_q() -> impl Strategy<Value = Q> {
        (-6i64..=6, 1i64..=3).prop_map(|(n, d)| q(n, d))
    }

    fn relation() -> impl Strategy<Value = Relation> {
        prop_oneof![
            Just(Relation::Lt),
            Just(Relation::Le),
            Just(Relation::Eq),
            Just(Relation::Ge),
            Just(Relation::Gt)
        ]
    }

    fn row(dim: usize) -> impl Strategy<Value = (Vec<Q>, Relation, Q)> {
        (prop::collection::vec(small_q(), dim), relation(), small_q())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn witnesses_satisfy_rows(rows in prop::collection::vec(row(2), 0..7)) {
            let mut sys = InequalitySystem::new(2);
            for (a, rel, b) in rows {
                sys.push(Vector::new(a), rel, b).unwrap();
            }
            if let FeasibilityResult::Feasible { witness, slack } = feasible(&sys) {
                prop_assert!(sys.is_satisfied_by(&witness));
                if sys.rows().iter().any(|r| r.relation.is_strict()) {
                    prop_assert!(slack > q(0, 1));
                }
            }
        }

        #[test]
        fn adding_rows_is_monotone(rows in prop::collection::vec(row(2), 1..7), extra in row(2)) {
            let mut sys = InequalitySystem::new(2);
            for (a, rel, b) in rows {
                sys.push(Vector::new(a), rel, b).unwrap();
            }
            let before = feasible(&sys).is_feasible();
            sys.push(Vector::new(extra.0), extra.1, extra.2).unwrap();
            if !before {
                prop_assert!(!feasible(&sys).is_feasible());
            }
        }

        #[test]
        fn row_generation_agrees_with_direct_solve(rows in prop::collection::vec(row(3), 25..60)) {
            let mut sys = InequalitySystem::new(3);
            for (a, rel, b) in rows {
                sys.push(Vector::new(a), rel, b).unwrap();
            }
            let strict = sys.rows().iter().any(|r| r.relation.is_strict());
            let all: Vec<&Inequality<Q>> = sys.rows().iter().collect();
            let direct = solve_rows(3, &all, strict).filter(|(_, t)| !strict || *t > q(0, 1));
            match feasible(&sys) {
                FeasibilityResult::Feasible { witness, slack } => {
                    prop_assert!(sys.is_satisfied_by(&witness));
                    let (_, t) = direct.expect("direct solve agrees");
                    prop_assert_eq!(slack, t);
                }
                FeasibilityResult::Infeasible => prop_assert!(direct.is_none()),
            }
        }

        #[test]
        fn separation_is_orientation_symmetric(
            a in prop::collection::vec(prop::collection::vec(-5i64..5, 2), 1..5),
            b in prop::collection::vec(prop::collection::vec(-5i64..5, 2), 1..5),
        ) {
            let a: Vec<Vector<Q>> = a.iter().map(|c| qv(c)).collect();
            let b: Vec<Vector<Q>> = b.iter().map(|c| qv(c)).collect();
            let ab = separating_hyperplane(&a, &b, true).unwrap();
            let ba = separating_hyperplane(&b, &a, true).unwrap();
            match (ab, ba) {
                (Some(h), Some(g)) => {
                    prop_assert!(h.same_oriented(&g.flipped()));
                    prop_assert!(a.iter().all(|p| h.side(p).is_negative()));
                    prop_assert!(b.iter().all(|p| h.side(p).is_positive()));
                }
                (None, None) => {}
                _ => prop_assert!(false, "asymmetric outcome"),
            }
        }
    }
}
