//! SVG and Wavefront OBJ scenes of a family and its tangents.
//!
//! This is the only place exact coordinates become floating point. Output
//! is deterministic: members and hyperplanes keep their input order and
//! every number is printed with 9 significant digits.

use std::fmt::Write as _;

use polytangent::{Partition, QHyperplane};

use crate::document::LoadedFamily;
use crate::CliError;

/// Fill colors by member index.
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

const EPS: f64 = 1e-9;

/// `x` with 9 significant digits, trailing zeros dropped.
pub fn num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (8 - magnitude).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

/// Axis-aligned box around the family, 1.25 times its coordinate range
/// on every axis.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundingBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl BoundingBox {
    pub fn around(loaded: &LoadedFamily) -> Self {
        let d = loaded.family.dim();
        let mut lo = vec![f64::INFINITY; d];
        let mut hi = vec![f64::NEG_INFINITY; d];
        for p in loaded.family.members().iter().flat_map(|m| m.vertices()) {
            for (k, x) in p.to_f64().into_iter().enumerate() {
                lo[k] = lo[k].min(x);
                hi[k] = hi[k].max(x);
            }
        }
        for k in 0..d {
            let range = if hi[k] - lo[k] > EPS { hi[k] - lo[k] } else { 1.0 };
            let center = (lo[k] + hi[k]) / 2.0;
            lo[k] = center - 0.625 * range;
            hi[k] = center + 0.625 * range;
        }
        BoundingBox { lo, hi }
    }

    fn corners(&self) -> Vec<Vec<f64>> {
        let d = self.lo.len();
        (0..1usize << d)
            .map(|mask| {
                (0..d)
                    .map(|k| if mask >> k & 1 == 1 { self.hi[k] } else { self.lo[k] })
                    .collect()
            })
            .collect()
    }

    /// The part of `<normal, x> = offset` inside the box: its points on the
    /// box edges, in cyclic order around their centroid.
    pub fn clip(&self, normal: &[f64], offset: f64) -> Vec<Vec<f64>> {
        let d = self.lo.len();
        let corners = self.corners();
        let value = |p: &[f64]| dot(normal, p) - offset;
        let mut points: Vec<Vec<f64>> = Vec::new();
        for (i, p) in corners.iter().enumerate() {
            for k in 0..d {
                if i >> k & 1 == 1 {
                    continue;
                }
                let q = &corners[i | 1 << k];
                let (vp, vq) = (value(p), value(q));
                if (vp > EPS && vq > EPS) || (vp < -EPS && vq < -EPS) {
                    continue;
                }
                let t = if (vp - vq).abs() <= EPS { 0.0 } else { vp / (vp - vq) };
                let x: Vec<f64> = p.iter().zip(q).map(|(a, b)| a + t * (b - a)).collect();
                if !points.iter().any(|y| distance(y, &x) <= 1e-7) {
                    points.push(x);
                }
            }
        }
        order_in_plane(points, normal)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

fn cross(a: &[f64], b: &[f64]) -> Vec<f64> {
    vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn normalize(v: &[f64]) -> Vec<f64> {
    let len = dot(v, v).sqrt();
    v.iter().map(|x| x / len).collect()
}

/// Points of a hyperplane of the plane or of space, in counterclockwise
/// order seen from the side `normal` points to. In the plane the two
/// extreme points along the line are kept.
fn order_in_plane(points: Vec<Vec<f64>>, normal: &[f64]) -> Vec<Vec<f64>> {
    if points.len() < 2 {
        return points;
    }
    let n = points.len() as f64;
    let d = points[0].len();
    let c: Vec<f64> = (0..d).map(|k| points.iter().map(|p| p[k]).sum::<f64>() / n).collect();
    if d == 2 {
        let dir = [-normal[1], normal[0]];
        let key = |p: &Vec<f64>| dot(&dir, p);
        let lo = points.iter().min_by(|a, b| key(a).total_cmp(&key(b))).cloned();
        let hi = points.iter().max_by(|a, b| key(a).total_cmp(&key(b))).cloned();
        return lo.into_iter().chain(hi).collect();
    }
    let far = points
        .iter()
        .max_by(|a, b| distance(a, &c).total_cmp(&distance(b, &c)))
        .expect("nonempty");
    let e1 = normalize(&far.iter().zip(&c).map(|(a, b)| a - b).collect::<Vec<_>>());
    let e2 = cross(&normalize(normal), &e1);
    let mut keyed: Vec<(f64, Vec<f64>)> = points
        .into_iter()
        .map(|p| {
            let r: Vec<f64> = p.iter().zip(&c).map(|(a, b)| a - b).collect();
            (dot(&r, &e2).atan2(dot(&r, &e1)), p)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    keyed.into_iter().map(|(_, p)| p).collect()
}

fn unit(h: &QHyperplane) -> (Vec<f64>, f64) {
    h.to_unit_f64()
}

fn partition_label(p: Option<Partition>) -> String {
    match p {
        None => "none".into(),
        Some(p) => {
            let side = |s: polytangent::MemberSet| s.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
            format!("A={} B={}", side(p.a()), side(p.b()))
        }
    }
}

/// A member's vertices in boundary order for the plane.
fn polygon_2d(vertices: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = vertices.len() as f64;
    let c = [
        vertices.iter().map(|p| p[0]).sum::<f64>() / n,
        vertices.iter().map(|p| p[1]).sum::<f64>() / n,
    ];
    let mut v = vertices.to_vec();
    v.sort_by(|a, b| (a[1] - c[1]).atan2(a[0] - c[0]).total_cmp(&(b[1] - c[1]).atan2(b[0] - c[0])));
    v
}

pub fn svg(loaded: &LoadedFamily, hyperplanes: &[(QHyperplane, Option<Partition>)]) -> Result<String, CliError> {
    let d = loaded.family.dim();
    if d != 2 {
        return Err(CliError::Input(format!("unsupported dimension {d}: SVG renders need d = 2")));
    }
    let bbox = BoundingBox::around(loaded);
    let (w, h) = (bbox.hi[0] - bbox.lo[0], bbox.hi[1] - bbox.lo[1]);
    let stroke = num(w.max(h) / 300.0);
    let px_h = 800.0 * h / w;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="800" height="{}" viewBox="{} {} {} {}">"#,
        num(px_h),
        num(bbox.lo[0]),
        num(-bbox.hi[1]),
        num(w),
        num(h)
    );
    let _ = writeln!(out, r#"<g transform="scale(1,-1)" stroke-width="{stroke}">"#);
    for (i, member) in loaded.family.members().iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let verts: Vec<Vec<f64>> = member.vertices().iter().map(|v| v.to_f64()).collect();
        let points = polygon_2d(&verts)
            .iter()
            .map(|p| format!("{},{}", num(p[0]), num(p[1])))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(
            out,
            r#"<polygon class="member" data-member="{}" points="{points}" fill="{color}" fill-opacity="0.35" stroke="{color}"><title>{}</title></polygon>"#,
            i + 1,
            escape(&loaded.names[i])
        );
    }
    for (k, (hp, part)) in hyperplanes.iter().enumerate() {
        let (n, a) = unit(hp);
        let seg = bbox.clip(&n, a);
        if seg.len() < 2 {
            continue;
        }
        let _ = writeln!(
            out,
            r##"<line class="tangent" data-index="{}" data-partition="{}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#222222"/>"##,
            k + 1,
            partition_label(*part),
            num(seg[0][0]),
            num(seg[0][1]),
            num(seg[1][0]),
            num(seg[1][1])
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Faces of a member in space as cyclic vertex lists, outward oriented.
fn member_faces(vertices: &[polytangent::QVector]) -> Vec<Vec<usize>> {
    let Ok(hull) = polytangent::polytope::convex_hull(vertices, 3) else {
        return Vec::new();
    };
    hull.facets()
        .iter()
        .map(|f| {
            let pts: Vec<Vec<f64>> = f.vertices.iter().map(|&v| hull.vertices()[v].to_f64()).collect();
            let normal = f.hyperplane.normal().to_f64();
            let ordered = order_in_plane(pts, &normal);
            ordered
                .iter()
                .map(|p| {
                    let at = hull.vertices().iter().position(|v| distance(&v.to_f64(), p) <= 1e-12).expect("hull vertex");
                    vertices
                        .iter()
                        .position(|v| v.same(&hull.vertices()[at]))
                        .expect("member vertex")
                })
                .collect()
        })
        .collect()
}

pub fn obj(loaded: &LoadedFamily, hyperplanes: &[(QHyperplane, Option<Partition>)]) -> Result<String, CliError> {
    let d = loaded.family.dim();
    if d != 3 {
        return Err(CliError::Input(format!("unsupported dimension {d}: OBJ renders need d = 3")));
    }
    let bbox = BoundingBox::around(loaded);
    let mut out = String::new();
    let _ = writeln!(out, "# polytangent scene");
    let _ = writeln!(
        out,
        "# bounding box {} {} {} to {} {} {}",
        num(bbox.lo[0]),
        num(bbox.lo[1]),
        num(bbox.lo[2]),
        num(bbox.hi[0]),
        num(bbox.hi[1]),
        num(bbox.hi[2])
    );
    let mut base = 1;
    let vertex_line = |out: &mut String, p: &[f64]| {
        let _ = writeln!(out, "v {} {} {}", num(p[0]), num(p[1]), num(p[2]));
    };
    for (i, member) in loaded.family.members().iter().enumerate() {
        let _ = writeln!(out, "o member_{}", i + 1);
        let _ = writeln!(out, "# {}", loaded.names[i]);
        let verts = member.vertices();
        for v in verts {
            vertex_line(&mut out, &v.to_f64());
        }
        let faces = member_faces(verts);
        if faces.is_empty() {
            let ids: Vec<String> = (0..verts.len()).map(|k| (base + k).to_string()).collect();
            let _ = writeln!(out, "p {}", ids.join(" "));
        }
        for face in faces {
            let ids: Vec<String> = face.iter().map(|k| (base + k).to_string()).collect();
            let _ = writeln!(out, "f {}", ids.join(" "));
        }
        base += verts.len();
    }
    for (k, (hp, part)) in hyperplanes.iter().enumerate() {
        let (n, a) = unit(hp);
        let poly = bbox.clip(&n, a);
        if poly.len() < 3 {
            continue;
        }
        let _ = writeln!(out, "o tangent_{}", k + 1);
        let _ = writeln!(out, "# {}", partition_label(*part));
        for p in &poly {
            vertex_line(&mut out, p);
        }
        let ids: Vec<String> = (0..poly.len()).map(|j| (base + j).to_string()).collect();
        let _ = writeln!(out, "f {}", ids.join(" "));
        base += poly.len();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(num(0.0), "0");
        assert_eq!(num(-0.0), "0");
        assert_eq!(num(1.0), "1");
        assert_eq!(num(-2.5), "-2.5");
        assert_eq!(num(1.0 / 3.0), "0.333333333");
        assert_eq!(num(12345.678901), "12345.6789");
        assert_eq!(num(123456789012.0), "123456789012");
    }

    #[test]
    fn clip_square_diagonal() {
        let b = BoundingBox {
            lo: vec![0.0, 0.0],
            hi: vec![1.0, 1.0],
        };
        let s = 0.5f64.sqrt();
        let seg = b.clip(&[s, -s], 0.0);
        assert_eq!(seg.len(), 2);
        assert!(seg.iter().all(|p| (p[0] - p[1]).abs() < 1e-12));
        assert!(b.clip(&[1.0, 0.0], 2.0).is_empty());
    }

    #[test]
    fn clip_cube_is_a_hexagon() {
        let b = BoundingBox {
            lo: vec![-1.0; 3],
            hi: vec![1.0; 3],
        };
        let n = normalize(&[1.0, 1.0, 1.0]);
        let poly = b.clip(&n, 0.0);
        assert_eq!(poly.len(), 6);
        assert!(poly.iter().all(|p| dot(&n, p).abs() < 1e-12));
        let square = b.clip(&[0.0, 0.0, 1.0], 0.5);
        assert_eq!(square.len(), 4);
    }

    #[test]
    fn cube_faces_are_quadrilaterals() {
        let cube: Vec<polytangent::QVector> = (0..8)
            .map(|k| polytangent::QVector::from_i64s(&[k & 1, (k >> 1) & 1, (k >> 2) & 1]))
            .collect();
        let faces = member_faces(&cube);
        assert_eq!(faces.len(), 6);
        assert!(faces.iter().all(|f| f.len() == 4));
    }
}
