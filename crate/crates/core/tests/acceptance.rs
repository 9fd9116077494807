//! End-to-end acceptance checks. Each criterion prints one `PASS` or `FAIL`
//! line with its measurements; the binary exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_rational::BigRational as Q;
use polytangent::approx::{
    analytic_circle_tangents, convergence_run, ngon_pyramid_demo, BodySpec, HyperplaneGap, TangentKind,
    DEFAULT_ANGLE_TOLERANCE,
};
use polytangent::complex::{tangent_complex, verify_sphere};
use polytangent::exactnum::affine_dimension;
use polytangent::polytope::{convex_hull, convex_hull_indexed, interior_point, polar_dual};
use polytangent::separation::{is_strongly_separated, visibility_witness, visible_facets, VisibilityMode};
use polytangent::tangents::{
    all_tangents, brute_force_tangents, rainbow_facets, sandwich_tangents, unique_tangent_excluding, verify_tangent,
    OracleTangent, TangentSet, ORACLE_GUARD,
};
use polytangent::{Error, Family, Matrix, MemberSet, Partition, Polytope, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ANGLE_TOL: f64 = 1e-2;
const OFFSET_TOL: f64 = 5e-2;
const DISK_BUDGET: Duration = Duration::from_secs(30);
const CRITERION_BUDGET: Duration = Duration::from_secs(60);

type Check = fn() -> Result<String, String>;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn qv(c: &[i64]) -> Vector<Q> {
    Vector::from_i64s(c)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn family_of(members: Vec<Vec<Vector<Q>>>) -> Family<Q> {
    Family::from_points(members).expect("fixture family")
}

fn simplex_at(shift: &[i64], size: i64) -> Vec<Vector<Q>> {
    let mut pts = vec![qv(shift)];
    for k in 0..shift.len() {
        let mut p = shift.to_vec();
        p[k] += size;
        pts.push(qv(&p));
    }
    pts
}

fn cross_polytope_at(center: &[i64]) -> Vec<Vector<Q>> {
    let mut pts = Vec::new();
    for k in 0..center.len() {
        for s in [-1, 1] {
            let mut p = center.to_vec();
            p[k] += s;
            pts.push(qv(&p));
        }
    }
    pts
}

fn random_polytope_points(rng: &mut ChaCha8Rng, d: usize, count: usize, spread: i64, center: &[i64]) -> Vec<Vector<Q>> {
    loop {
        let pts: Vec<Vector<Q>> = (0..count)
            .map(|_| qv(&center.iter().map(|c| c + rng.gen_range(-spread..=spread)).collect::<Vec<_>>()))
            .collect();
        if affine_dimension(&pts) == Some(d) {
            return pts;
        }
    }
}

/// `m` full-dimensional members in `R^d` that are strongly separated.
fn random_separated_family(rng: &mut ChaCha8Rng, d: usize, m: usize) -> Family<Q> {
    loop {
        let members = (0..m)
            .map(|_| {
                let center: Vec<i64> = (0..d).map(|_| 8 * rng.gen_range(-3..=3)).collect();
                let count = rng.gen_range(d + 1..=d + 3);
                random_polytope_points(rng, d, count, 2, &center)
            })
            .collect();
        let Ok(f) = Family::from_points(members) else { continue };
        if f.all_full_dimensional() && is_strongly_separated(&f).is_separated() {
            return f;
        }
    }
}

fn oracle_matches(set: &TangentSet<Q>, oracle: &[OracleTangent<Q>]) -> bool {
    oracle.len() == set.len()
        && set
            .hyperplanes()
            .all(|(p, h)| oracle.iter().any(|t| t.partition == p && t.hyperplane.same_oriented(h)))
}

fn four_dimensional_fixtures() -> Vec<Family<Q>> {
    vec![
        family_of(vec![
            simplex_at(&[0, 0, 0, 0], 1),
            simplex_at(&[10, 0, 0, 0], 1),
            simplex_at(&[0, 10, 0, 0], 1),
            simplex_at(&[0, 0, 10, 0], 1),
        ]),
        family_of(vec![
            simplex_at(&[0, 0, 0, 0], 1),
            simplex_at(&[12, 1, 0, 0], 2),
            simplex_at(&[0, 12, 3, 0], 3),
            simplex_at(&[1, 0, 12, 2], 1),
        ]),
        family_of(vec![
            cross_polytope_at(&[0, 0, 0, 0]),
            cross_polytope_at(&[10, 0, 0, 0]),
            cross_polytope_at(&[0, 10, 0, 0]),
            cross_polytope_at(&[0, 0, 0, 10]),
        ]),
    ]
}

/// The separated instances shared by the tangent-count and oracle checks.
fn tangent_instances() -> Vec<Family<Q>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a11);
    let mut out = Vec::new();
    for d in [2, 3] {
        for _ in 0..20 {
            out.push(random_separated_family(&mut rng, d, d));
        }
    }
    out.extend(four_dimensional_fixtures());
    out
}

fn two_polygons() -> Result<String, String> {
    let hexagon: Vec<Vector<Q>> = [[2, 0], [1, 2], [-1, 2], [-2, 0], [-1, -2], [1, -2]]
        .iter()
        .map(|p| qv(p))
        .collect();
    let heptagon: Vec<Vector<Q>> = [[9, -1], [11, -2], [13, 0], [13, 2], [11, 4], [9, 3], [8, 1]]
        .iter()
        .map(|p| qv(p))
        .collect();
    let mut families = vec![family_of(vec![hexagon, heptagon])];
    let mut rng = ChaCha8Rng::seed_from_u64(0x90_1a);
    while families.len() < 11 {
        let a = random_polytope_points(&mut rng, 2, 8, 3, &[0, 0]);
        let shift = rng.gen_range(-6..=6);
        let b = random_polytope_points(&mut rng, 2, 8, 3, &[10, shift]);
        let f = family_of(vec![a, b]);
        if f.vertex_count() >= 6 {
            families.push(f);
        }
    }
    for (i, f) in families.iter().enumerate() {
        let set = all_tangents(f).map_err(|e| format!("family {i}: {e}"))?;
        ensure(set.len() == 4 && set.coincidences.is_empty(), || {
            format!("family {i}: {} tangents, {} coincidences", set.len(), set.coincidences.len())
        })?;
        let oracle = brute_force_tangents(f, ORACLE_GUARD).map_err(|e| e.to_string())?;
        ensure(oracle_matches(&set, &oracle), || format!("family {i}: oracle disagrees"))?;
    }
    Ok(format!("{} polygon pairs, 4 tangents each, equal to the oracle", families.len()))
}

fn tangent_counts() -> Result<String, String> {
    let mut compared = 0;
    let instances = tangent_instances();
    for (i, f) in instances.iter().enumerate() {
        let d = f.dim();
        let set = all_tangents(f).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(set.len() == 1 << d && set.distinctness_holds(), || {
            format!("instance {i} in R^{d}: {} tangents, {} coincidences", set.len(), set.coincidences.len())
        })?;
        for (p, h) in set.hyperplanes() {
            ensure(verify_tangent(h, f, p).passed(), || format!("instance {i}: tangent {h} fails for {p}"))?;
        }
        match brute_force_tangents(f, ORACLE_GUARD) {
            Ok(oracle) => {
                ensure(oracle_matches(&set, &oracle), || format!("instance {i}: oracle disagrees"))?;
                compared += 1;
            }
            Err(Error::TooLarge { .. }) => {}
            Err(e) => return Err(format!("instance {i}: {e}")),
        }
    }
    Ok(format!(
        "{} families in R^2, R^3, R^4 with 2^d distinct verified tangents, {compared} compared to the oracle",
        instances.len()
    ))
}

fn at_most_two_per_partition() -> Result<String, String> {
    let mut checked = 0;
    for (i, f) in tangent_instances().iter().enumerate() {
        let Ok(oracle) = brute_force_tangents(f, ORACLE_GUARD) else { continue };
        for part in Partition::all_canonical(f.len()) {
            let count = oracle.iter().filter(|t| t.partition == part).count();
            ensure(count <= 2, || format!("instance {i}: {count} tangents for {part}"))?;
        }
        checked += 1;
    }
    ensure(checked >= 20, || format!("only {checked} instances within the oracle guard"))?;
    Ok(format!("{checked} families, at most 2 oracle tangents per partition"))
}

fn spheres() -> Result<String, String> {
    let cases = [
        (
            "m=2 d=2",
            family_of(vec![
                vec![qv(&[0, 0]), qv(&[1, 0]), qv(&[1, 1]), qv(&[0, 1])],
                vec![qv(&[3, 0]), qv(&[4, 0]), qv(&[4, 1]), qv(&[3, 1])],
            ]),
            0,
        ),
        (
            "m=2 d=3",
            family_of(vec![simplex_at(&[0, 0, 0], 1), simplex_at(&[5, 1, 2], 1)]),
            1,
        ),
        (
            "m=3 d=4",
            family_of(vec![
                simplex_at(&[0, 0, 0, 0], 1),
                simplex_at(&[10, 0, 0, 0], 1),
                simplex_at(&[0, 10, 0, 0], 1),
            ]),
            1,
        ),
    ];
    let mut summary = Vec::new();
    for (name, f, k) in cases {
        let c = tangent_complex(&f, false).map_err(|e| format!("{name}: {e}"))?;
        let report = verify_sphere(&c);
        ensure(report.passed && report.sphere_dim == k, || format!("{name}: {report:?}"))?;
        if k == 0 {
            ensure(report.f_vector == vec![2], || format!("{name}: f-vector {:?}", report.f_vector))?;
        } else {
            ensure(report.f_vector[0] == report.f_vector[1], || {
                format!("{name}: f-vector {:?}", report.f_vector)
            })?;
        }
        summary.push(format!("{name} f={:?} chi={}", report.f_vector, report.euler));
    }
    Ok(summary.join(", "))
}

fn prism_family() -> Result<String, String> {
    let corners = [[1, 1], [-1, 1], [-1, -1], [1, -1]];
    let members = corners
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let r = if i % 2 == 0 { 1 } else { 2 };
            [[-r, -r], [r, -r], [r, r], [-r, r]]
                .iter()
                .map(|s| qv(&[p[0], p[1], s[0], s[1]]))
                .collect()
        })
        .collect();
    let f = family_of(members);
    let (points, colors) = f.colored_points();
    let (hull, index) = convex_hull_indexed(&points, 4).map_err(|e| e.to_string())?;
    let vertex_colors: Vec<usize> = index.iter().map(|&i| colors[i]).collect();
    let rainbow = rainbow_facets(&hull, &vertex_colors, f.len());
    ensure(rainbow.is_empty(), || format!("{} rainbow facets", rainbow.len()))?;
    let cert = is_strongly_separated(&f);
    let failure = cert.first_failure().ok_or("prism family reported as separated")?;
    Ok(format!(
        "hull with {} facets, no rainbow facet, separation fails on {failure}",
        hull.facets().len()
    ))
}

fn visibility_witnesses() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x515);
    let (mut found, mut tried) = (0, 0);
    while found < 50 {
        tried += 1;
        ensure(tried < 5000, || format!("only {found} feasible cases in {tried} draws"))?;
        let d = rng.gen_range(2..=3);
        let pts = random_polytope_points(&mut rng, d, 10, 9, &vec![0; d]);
        let p = convex_hull(&pts, d).map_err(|e| e.to_string())?;
        let coloring: Vec<usize> = (0..p.facets().len()).map(|_| rng.gen_range(0..3)).collect();
        let used: MemberSet = coloring.iter().copied().collect();
        let subsets = used.proper_subsets();
        let subsets: Vec<MemberSet> = subsets.into_iter().filter(|s| !s.is_empty()).collect();
        if subsets.is_empty() {
            continue;
        }
        let subset = subsets[rng.gen_range(0..subsets.len())];
        let mode = if rng.gen_bool(0.5) {
            VisibilityMode::Visible
        } else {
            VisibilityMode::Covisible
        };
        let Some(w) = visibility_witness(&p, &coloring, subset, mode).map_err(|e| e.to_string())? else {
            continue;
        };
        let expected: Vec<usize> = (0..coloring.len())
            .filter(|&i| subset.contains(coloring[i]) == (mode == VisibilityMode::Visible))
            .collect();
        let seen = visible_facets(&p, &w).map_err(|e| e.to_string())?;
        ensure(seen == expected, || format!("witness sees {seen:?}, expected {expected:?}"))?;
        found += 1;
    }
    Ok(format!("{found} witnesses see exactly their class ({tried} draws)"))
}

fn uniqueness() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x11);
    let mut solved = 0;
    for (d, count) in [(2, 10), (3, 5)] {
        for i in 0..count {
            let f = random_separated_family(&mut rng, d, d + 1);
            let m = f.len();
            for a in 0..m {
                for bits in 0..(1u64 << m) {
                    let set = MemberSet::from_bits(bits);
                    if !set.contains(a) {
                        continue;
                    }
                    let part = Partition::new(set, m).map_err(|e| e.to_string())?;
                    let h = unique_tangent_excluding(&f, part, a)
                        .map_err(|e| format!("R^{d} family {i}, a={a}, {part}: {e}"))?;
                    ensure(f.member(a).vertices().iter().all(|v| h.side(v).is_positive()), || {
                        format!("R^{d} family {i}: member {a} not strictly positive")
                    })?;
                    solved += 1;
                }
            }
        }
    }
    Ok(format!("{solved} (family, a, partition) cases, exactly one qualifying candidate each"))
}

fn disk_convergence() -> Result<String, String> {
    let start = Instant::now();
    let bodies = [
        BodySpec::Ball {
            center: qv(&[-2, 0]),
            radius: q(1),
        },
        BodySpec::Ball {
            center: qv(&[4, 0]),
            radius: q(2),
        },
    ];
    let oracle = analytic_circle_tangents([-2.0, 0.0], 1.0, [4.0, 0.0], 2.0).map_err(|e| e.to_string())?;
    let mut worst = HyperplaneGap { angle: 0.0, offset: 0.0 };
    for (a, kind) in [(MemberSet::full(2), TangentKind::Outer), (MemberSet::single(0), TangentKind::Inner)] {
        let part = Partition::new(a, 2).map_err(|e| e.to_string())?;
        let run = convergence_run(&bodies, part, &[8, 16, 32, 64], &q(0), DEFAULT_ANGLE_TOLERANCE)
            .map_err(|e| e.to_string())?;
        ensure(run.nested, || format!("{kind:?}: levels not nested"))?;
        let last = run.levels.last().ok_or("empty run")?;
        for u in &last.unit {
            let gap = oracle
                .iter()
                .filter(|t| t.kind == kind)
                .map(|t| HyperplaneGap::between(u, &t.unit()))
                .min_by(|x, y| x.angle.total_cmp(&y.angle))
                .ok_or("no analytic tangent")?;
            ensure(gap.angle < ANGLE_TOL && gap.offset < OFFSET_TOL, || format!("{kind:?}: {gap:?}"))?;
            worst.angle = worst.angle.max(gap.angle);
            worst.offset = worst.offset.max(gap.offset);
        }
        let step = run.final_gap().ok_or("no refinement step")?;
        ensure(run.final_separation > 10.0 * step.angle, || {
            format!("{kind:?}: separation {} vs step {}", run.final_separation, step.angle)
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < DISK_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "worst angle {:.2e} rad, offset {:.2e}, in {:.1?}",
        worst.angle, worst.offset, elapsed
    ))
}

fn pentagon_pyramid() -> Result<String, String> {
    let demo = ngon_pyramid_demo::<Q>(5, ORACLE_GUARD).map_err(|e| e.to_string())?;
    ensure(demo.plane_count >= 5, || format!("{} planes", demo.plane_count))?;
    let failure = demo.certificate.first_failure().ok_or("pyramid family reported as separated")?;
    Ok(format!("{} tangent planes, separation fails on {failure}", demo.plane_count))
}

fn invertible(rng: &mut ChaCha8Rng, d: usize) -> (Matrix<Q>, Matrix<Q>) {
    loop {
        let rows: Vec<Vec<Q>> = (0..d).map(|_| (0..d).map(|_| q(rng.gen_range(-3..=3))).collect()).collect();
        let m = Matrix::from_rows(rows.clone(), d).expect("square");
        if m.rank() < d {
            continue;
        }
        // Inverse transpose: solve M^T X = I column by column.
        let transpose: Vec<Vec<Q>> = (0..d).map(|i| (0..d).map(|j| rows[j][i].clone()).collect()).collect();
        let mt = Matrix::from_rows(transpose, d).expect("square");
        let mut cols = Vec::new();
        for k in 0..d {
            match polytangent::exactnum::solve_linear(&mt, &Vector::unit(d, k)) {
                Ok(polytangent::LinearSolution::Unique(x)) => cols.push(x),
                _ => panic!("invertible matrix without unique inverse"),
            }
        }
        let inv_t: Vec<Vec<Q>> = (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect();
        return (m, Matrix::from_rows(inv_t, d).expect("square"));
    }
}

fn symmetries() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xe9);
    let mut equivariant = 0;
    for i in 0..20 {
        let d = if i % 2 == 0 { 2 } else { 3 };
        let f = random_separated_family(&mut rng, d, d);
        let (m, inv_t) = invertible(&mut rng, d);
        let t: Vector<Q> = qv(&(0..d).map(|_| rng.gen_range(-5..=5)).collect::<Vec<_>>());
        let g = f.mapped(|p| m.mul_vec(p).add(&t)).map_err(|e| e.to_string())?;
        let before = all_tangents(&f).map_err(|e| e.to_string())?;
        let after = all_tangents(&g).map_err(|e| e.to_string())?;
        ensure(before.len() == after.len(), || format!("instance {i}: tangent counts differ"))?;
        for (p, h) in before.hyperplanes() {
            let image = h.transform(&inv_t, &t);
            ensure(after.hyperplanes().any(|(p2, h2)| p2 == p && h2.same_oriented(&image)), || {
                format!("instance {i}: image of {h} missing")
            })?;
        }
        equivariant += 1;
    }

    let mut involutions = 0;
    for _ in 0..20 {
        let d = rng.gen_range(2..=4);
        let pts = random_polytope_points(&mut rng, d, d + 5, 6, &vec![0; d]);
        let p: Polytope<Q> = convex_hull(&pts, d).map_err(|e| e.to_string())?;
        let centered = p.translated(&interior_point(&p).neg());
        let back = polar_dual(&polar_dual(&centered).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(
            back.vertices().len() == centered.vertices().len()
                && back.vertices().iter().all(|v| centered.vertex_index(v).is_some()),
            || format!("polar of polar differs in R^{d}"),
        )?;
        involutions += 1;
    }

    let mut flips = 0;
    for i in 0..20 {
        let d = if i % 2 == 0 { 2 } else { 3 };
        let f = random_separated_family(&mut rng, d, d);
        for part in Partition::all_canonical(d) {
            let here = sandwich_tangents(&f, part).map_err(|e| e.to_string())?;
            let there = sandwich_tangents(&f, part.swapped()).map_err(|e| e.to_string())?;
            for h in &here.hyperplanes {
                ensure(there.hyperplanes.iter().any(|x| x.same_oriented(&h.flipped())), || {
                    format!("instance {i}: swapping {part} does not flip {h}")
                })?;
            }
        }
        flips += 1;
    }
    Ok(format!(
        "{equivariant} affine images, {involutions} polar involutions, {flips} orientation flips"
    ))
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("two polygons have 4 tangents equal to the oracle", two_polygons),
        ("2^d distinct verified tangents", tangent_counts),
        ("at most 2 oracle tangents per partition", at_most_two_per_partition),
        ("tangent complexes pass the sphere checks", spheres),
        ("prism family has no rainbow facet and is not separated", prism_family),
        ("visibility witnesses are exact", visibility_witnesses),
        ("excluded tangents are unique", uniqueness),
        ("inscribed disks converge to the circle tangents", disk_convergence),
        ("pentagon pyramid has many tangents", pentagon_pyramid),
        ("affine, polar and orientation symmetries", symmetries),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = match catch_unwind(AssertUnwindSafe(check)) {
            Ok(r) => r,
            Err(panic) => Err(panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into())),
        };
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if elapsed < CRITERION_BUDGET {
                Ok(msg)
            } else {
                Err(format!("{msg}; over budget at {elapsed:.1?}"))
            }
        });
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} [{elapsed:.1?}]", k + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} [{elapsed:.1?}]", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
