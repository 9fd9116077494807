use super::*;
use crate::family::MemberSet;
use crate::tangents::verify_tangent;
use num_rational::BigRational as Q;

fn qv(c: &[i64]) -> Vector<Q> {
    Vector::from_i64s(c)
}

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn disk(cx: i64, r: i64) -> BodySpec<Q> {
    BodySpec::Ball {
        center: qv(&[cx, 0]),
        radius: q(r),
    }
}

fn closest(run: &RefinementRun<Q>, oracle: &[CircleTangent], kind: TangentKind) -> Vec<HyperplaneGap> {
    let last = run.levels.last().unwrap();
    last.unit
        .iter()
        .map(|u| {
            oracle
                .iter()
                .filter(|t| t.kind == kind)
                .map(|t| HyperplaneGap::between(u, &t.unit()))
                .min_by(|a, b| a.angle.total_cmp(&b.angle))
                .unwrap()
        })
        .collect()
}

#[test]
fn square_in_a_disk() {
    let body = disk(-2, 1);
    let p = inscribe_polytope(&body, 4, &q(0)).unwrap();
    assert_eq!(p.vertices().len(), 4);
    assert!(p.vertices().iter().all(|v| body.on_boundary(v)));
    assert!(p.vertices().iter().any(|v| v.same(&qv(&[-3, 0]))));
}

#[test]
fn doubling_keeps_vertices() {
    let body = disk(0, 3);
    let phase = Q::new(1.into(), 7.into());
    let mut prev = inscribed_points(&body, 6, &phase).unwrap();
    for n in [12, 24, 48] {
        let next = inscribed_points(&body, n, &phase).unwrap();
        assert!(prev.iter().all(|p| next.iter().any(|x| x.same(p))));
        assert!(next.iter().all(|p| body.on_boundary(p)));
        prev = next;
    }
}

#[test]
fn ellipse_and_ball_points_are_exact() {
    let ellipse = BodySpec::Ellipsoid {
        center: qv(&[1, -1]),
        axes: qv(&[2, 1]),
    };
    let pts = inscribed_points(&ellipse, 10, &q(0)).unwrap();
    assert!(pts.iter().all(|p| ellipse.on_boundary(p)));
    let ball = BodySpec::Ball {
        center: qv(&[0, 0, 10]),
        radius: q(1),
    };
    let pts = inscribed_points(&ball, 8, &q(0)).unwrap();
    assert_eq!(pts.len(), 8 * 3 + 2);
    assert!(pts.iter().all(|p| ball.on_boundary(p)));
    let coarse = inscribed_points(&ball, 4, &q(0)).unwrap();
    assert!(coarse.iter().all(|p| pts.iter().any(|x| x.same(p))));
    assert_eq!(inscribe_polytope(&ball, 4, &q(0)).unwrap().facets().len(), 8);
}

#[test]
fn bad_bodies() {
    assert!(matches!(
        inscribed_points(&disk(0, 0), 8, &q(0)),
        Err(Error::UnsupportedBody(_))
    ));
    let far = BodySpec::Ball {
        center: qv(&[0, 0, 0, 0]),
        radius: q(1),
    };
    assert_eq!(inscribed_points(&far, 8, &q(0)).unwrap_err(), Error::UnsupportedDimension(4));
    assert!(matches!(inscribed_points(&disk(0, 1), 2, &q(0)), Err(Error::Usage(_))));
}

#[test]
fn homothety_centers() {
    let lines = analytic_circle_tangents([-2.0, 0.0], 1.0, [4.0, 0.0], 2.0).unwrap();
    assert_eq!(lines.iter().filter(|t| t.kind == TangentKind::Outer).count(), 2);
    assert_eq!(lines.iter().filter(|t| t.kind == TangentKind::Inner).count(), 2);
    for t in &lines {
        let through = match t.kind {
            TangentKind::Outer => [-8.0, 0.0],
            TangentKind::Inner => [0.0, 0.0],
        };
        let value = t.normal[0] * through[0] + t.normal[1] * through[1] - t.offset;
        assert!(value.abs() < 1e-12, "{t:?}");
        let d1 = t.normal[0] * -2.0 - t.offset;
        let d2 = t.normal[0] * 4.0 - t.offset;
        assert!((d1 - 1.0).abs() < 1e-12);
        let expected = if t.kind == TangentKind::Outer { 2.0 } else { -2.0 };
        assert!((d2 - expected).abs() < 1e-12);
    }
    let equal = analytic_circle_tangents([0.0, 0.0], 1.0, [5.0, 0.0], 1.0).unwrap();
    for t in equal.iter().filter(|t| t.kind == TangentKind::Outer) {
        assert!(t.normal[0].abs() < 1e-12);
    }
    assert_eq!(
        analytic_circle_tangents([0.0, 0.0], 1.0, [1.5, 0.0], 1.0).unwrap_err(),
        Error::CirclesNotDisjoint
    );
}

#[test]
fn figure_disks_converge_to_both_tangent_kinds() {
    let bodies = [disk(-2, 1), disk(4, 2)];
    let oracle = analytic_circle_tangents([-2.0, 0.0], 1.0, [4.0, 0.0], 2.0).unwrap();
    for (a, kind) in [(MemberSet::full(2), TangentKind::Outer), (MemberSet::single(0), TangentKind::Inner)] {
        let part = Partition::new(a, 2).unwrap();
        let run = convergence_run(&bodies, part, &[8, 16, 32, 64], &q(0), DEFAULT_ANGLE_TOLERANCE).unwrap();
        assert!(run.nested && run.converging, "{:?}", run.levels.iter().map(|l| l.gap).collect::<Vec<_>>());
        for level in &run.levels {
            for h in &level.pair.hyperplanes {
                assert!(verify_tangent(h, &level.family, part).passed());
            }
        }
        for gap in closest(&run, &oracle, kind) {
            assert!(gap.angle < 1e-2 && gap.offset < 5e-2, "{gap:?}");
        }
        assert!(run.final_separation > 10.0 * run.final_gap().unwrap().angle);
    }
}

#[test]
fn polytope_bodies_stabilize_at_once() {
    let bodies = [
        BodySpec::Polytope {
            vertices: vec![qv(&[0, 0]), qv(&[1, 0]), qv(&[0, 1])],
        },
        BodySpec::Polytope {
            vertices: vec![qv(&[5, 0]), qv(&[6, 0]), qv(&[5, 1])],
        },
    ];
    let part = Partition::new(MemberSet::full(2), 2).unwrap();
    let run = convergence_run(&bodies, part, &[4, 8], &q(0), DEFAULT_ANGLE_TOLERANCE).unwrap();
    let gap = run.final_gap().unwrap();
    assert_eq!((gap.angle, gap.offset), (0.0, 0.0));
    assert!(matches!(
        convergence_run(&bodies, part, &[], &q(0), DEFAULT_ANGLE_TOLERANCE),
        Err(Error::Usage(_))
    ));
}

#[test]
fn pentagon_pyramid_has_many_tangents() {
    let demo = ngon_pyramid_demo::<Q>(5, 40).unwrap();
    assert!(demo.plane_count >= 5, "{}", demo.plane_count);
    assert!(!demo.certificate.is_separated());
}

#[test]
fn triangle_pyramid_count() {
    let demo = ngon_pyramid_demo::<Q>(3, 40).unwrap();
    assert!(demo.plane_count >= 3);
    assert!(!demo.certificate.is_separated());
}
