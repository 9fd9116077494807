use super::*;
use crate::exactnum::Vector;
use crate::family::Partition;
use crate::polytope::{interior_point, polar_dual};
use crate::tangents::verify_tangent;
use num_rational::BigRational as Q;
use proptest::prelude::*;

fn qv(c: &[i64]) -> Vector<Q> {
    Vector::from_i64s(c)
}

fn simplex_at(shift: &[i64]) -> Vec<Vector<Q>> {
    let d = shift.len();
    let mut pts = vec![qv(shift)];
    for k in 0..d {
        let mut p = shift.to_vec();
        p[k] += 1;
        pts.push(qv(&p));
    }
    pts
}

fn family_of(members: Vec<Vec<Vector<Q>>>) -> Family<Q> {
    Family::from_points(members).unwrap()
}

fn two_squares() -> Family<Q> {
    family_of(vec![
        vec![qv(&[0, 0]), qv(&[1, 0]), qv(&[1, 1]), qv(&[0, 1])],
        vec![qv(&[3, 0]), qv(&[4, 0]), qv(&[4, 1]), qv(&[3, 1])],
    ])
}

fn two_tetrahedra() -> Family<Q> {
    family_of(vec![simplex_at(&[0, 0, 0]), simplex_at(&[5, 1, 2])])
}

fn three_simplices_4d() -> Family<Q> {
    family_of(vec![
        simplex_at(&[0, 0, 0, 0]),
        simplex_at(&[10, 0, 0, 0]),
        simplex_at(&[0, 10, 0, 0]),
    ])
}

/// Rainbow locus of the polar of the hull, colored through the vertex
/// colors of the hull.
fn dual_locus(c: &TangentComplex<Q>) -> TangentComplex<Q> {
    let p = &c.polytope;
    let centered = p.translated(&interior_point(p).neg());
    let polar = polar_dual(&centered).unwrap();
    rainbow_points_dual(&polar, &c.colors).unwrap()
}

fn swapped_keys(c: &TangentComplex<Q>) -> Vec<(usize, Vec<usize>, Vec<usize>)> {
    let mut keys: Vec<_> = cell_keys(c).into_iter().map(|(j, v, f)| (j, f, v)).collect();
    keys.sort();
    keys
}

#[test]
fn two_squares_give_two_points() {
    let f = two_squares();
    let c = tangent_complex(&f, false).unwrap();
    assert_eq!(c.f_vector(), vec![2]);
    let report = verify_sphere(&c);
    assert!(report.passed, "{report:?}");
    assert_eq!(report.euler, 2);
    let all = Partition::new(MemberSet::full(2), 2).unwrap();
    for cell in &c.faces[0] {
        assert!(verify_tangent(cell.hyperplane.as_ref().unwrap(), &f, all).passed());
    }
}

#[test]
fn segments_in_relaxed_mode() {
    let f = family_of(vec![vec![qv(&[0, 0]), qv(&[0, 1])], vec![qv(&[3, 0]), qv(&[3, 2])]]);
    assert!(matches!(tangent_complex(&f, false), Err(Error::NotFullDimensional { .. })));
    let c = tangent_complex(&f, true).unwrap();
    assert_eq!(c.f_vector(), vec![2]);
    assert!(verify_sphere(&c).passed);
}

#[test]
fn two_tetrahedra_give_a_cycle() {
    let f = two_tetrahedra();
    let c = tangent_complex(&f, false).unwrap();
    let report = verify_sphere(&c);
    assert!(report.passed, "{report:?}");
    assert_eq!(report.f_vector[0], report.f_vector[1]);
    assert_eq!(report.euler, 0);
    assert_eq!(report.low_dim_exact, Some(true));
    let all = Partition::new(MemberSet::full(2), 2).unwrap();
    for cell in &c.faces[0] {
        assert!(verify_tangent(cell.hyperplane.as_ref().unwrap(), &f, all).passed());
    }
}

#[test]
fn three_simplices_in_four_dimensions() {
    let f = three_simplices_4d();
    let c = tangent_complex(&f, false).unwrap();
    assert_eq!(c.sphere_dim, 1);
    let report = verify_sphere(&c);
    assert!(report.passed, "{report:?}");
    assert_eq!(report.euler, 0);
    let dropped = tangent_complex(&f.without(1), false).unwrap();
    assert_eq!(dropped.sphere_dim, 2);
    let report = verify_sphere(&dropped);
    assert!(report.passed, "{report:?}");
    assert_eq!(report.euler, 2);
}

#[test]
fn deleting_a_top_cell_breaks_the_sphere() {
    let c = tangent_complex(&two_tetrahedra(), false).unwrap();
    let broken = c.without_face(1, 0);
    let report = verify_sphere(&broken);
    assert!(!report.passed);
    assert!(!report.pseudomanifold);
    let one_point = tangent_complex(&two_squares(), false).unwrap().without_face(0, 1);
    assert!(!verify_sphere(&one_point).passed);
}

#[test]
fn polar_locus_matches_tangent_complex() {
    for f in [two_squares(), two_tetrahedra(), three_simplices_4d()] {
        let c = tangent_complex(&f, false).unwrap();
        let r = dual_locus(&c);
        assert_eq!(cell_keys(&r), swapped_keys(&c));
        assert_eq!(verify_sphere(&r).passed, verify_sphere(&c).passed);
    }
}

#[test]
fn opposite_colored_cube_fails_the_hypothesis() {
    let pts: Vec<Vector<Q>> = (0..8).map(|k| qv(&[k & 1, (k >> 1) & 1, (k >> 2) & 1])).collect();
    let cube = crate::polytope::convex_hull(&pts, 3).unwrap();
    let coloring: Vec<usize> = cube
        .facets()
        .iter()
        .map(|f| f.hyperplane.normal().iter().position(|c| !c.sign().is_zero()).unwrap())
        .collect();
    assert!(matches!(
        rainbow_points_dual(&cube, &coloring),
        Err(Error::HypothesisFails { .. })
    ));
}

#[test]
fn missing_color_gives_empty_locus() {
    let sq = crate::polytope::convex_hull(&[qv(&[-1, -1]), qv(&[1, -1]), qv(&[1, 1]), qv(&[-1, 1])], 2).unwrap();
    let c = rainbow_points_dual(&sq, &[1, 1, 1, 1]).unwrap();
    assert!(c.is_empty());
    assert!(!verify_sphere(&c).passed);
}

#[test]
fn shared_vertex_is_a_clash() {
    let f = family_of(vec![
        vec![qv(&[0, 0]), qv(&[1, 0]), qv(&[0, 1])],
        vec![qv(&[1, 0]), qv(&[2, 0]), qv(&[2, 1])],
    ]);
    assert!(matches!(tangent_complex(&f, false), Err(Error::VertexColorClash { .. })));
}

fn family_3d() -> impl Strategy<Value = Family<Q>> {
    let member = proptest::collection::vec([0i64..3, 0i64..3, 0i64..3], 4..7);
    (member.clone(), member, [-3i64..4, -3i64..4, -3i64..4]).prop_filter_map("flat or close", |(a, b, s)| {
        if s.iter().all(|c| c.abs() < 1) {
            return None;
        }
        let shift = |p: &[i64; 3]| qv(&[p[0] + 4 * s[0], p[1] + 4 * s[1], p[2] + 4 * s[2]]);
        let f = Family::from_points(vec![a.iter().map(|p| qv(p)).collect(), b.iter().map(shift).collect()]).ok()?;
        f.all_full_dimensional().then_some(f)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn random_pairs_in_space_are_circles(f in family_3d()) {
        let c = tangent_complex(&f, false).unwrap();
        let report = verify_sphere(&c);
        prop_assert!(report.passed, "{:?}", report);
        let r = dual_locus(&c);
        prop_assert_eq!(cell_keys(&r), swapped_keys(&c));
    }
}
