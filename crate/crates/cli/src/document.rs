//! JSON input and output documents.
//!
//! Scalars travel as rational strings (`"3"`, `"-7/2"`), never as JSON
//! numbers. Member and vertex indices are 1-based.

use polytangent::exactnum::{format_rational, parse_rational};
use polytangent::separation::SeparationCertificate;
use polytangent::tangents::verify_tangent;
use polytangent::{Family, Member, Partition, QHyperplane, QVector, Rational};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// A family of polytopes, optionally with convex bodies and a partition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDocument {
    pub dimension: usize,
    #[serde(default)]
    pub polytopes: Vec<PolytopeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bodies: Option<Vec<BodyRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<PartitionRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeRecord {
    pub name: String,
    pub vertices: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum BodyRecord {
    Ball { center: Vec<String>, radius: String },
    Ellipsoid { center: Vec<String>, axes: Vec<String> },
    Polytope { vertices: Vec<Vec<String>> },
}

/// Two sides of a bipartition of the members, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionRecord {
    #[serde(rename = "A")]
    pub a: Vec<usize>,
    #[serde(rename = "B")]
    pub b: Vec<usize>,
}

impl PartitionRecord {
    pub fn from_partition(p: Partition) -> Self {
        PartitionRecord {
            a: p.a().iter().map(|i| i + 1).collect(),
            b: p.b().iter().map(|i| i + 1).collect(),
        }
    }

    pub fn to_partition(&self, m: usize) -> Result<Partition, CliError> {
        let zero_based = |side: &[usize], label: &str| -> Result<Vec<usize>, CliError> {
            side.iter()
                .map(|&i| {
                    if i == 0 || i > m {
                        Err(CliError::Input(format!("partition side {label}: member {i} is not in 1..={m}")))
                    } else {
                        Ok(i - 1)
                    }
                })
                .collect()
        };
        let a = zero_based(&self.a, "A")?;
        let b = zero_based(&self.b, "B")?;
        Partition::from_sides(&a, &b, m).map_err(|e| CliError::Input(format!("partition: {e}")))
    }
}

/// `<normal, x> = offset`, scaled so the first nonzero normal entry is
/// `1` or `-1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperplaneRecord {
    pub normal: Vec<String>,
    pub offset: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<PartitionRecord>,
    pub orientation: String,
    /// 1-based member left strictly on the positive side instead of touched.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub excluded: Option<usize>,
    /// Per member, the 1-based input vertices lying on the hyperplane.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contacts: Option<Vec<Vec<usize>>>,
}

pub const TANGENT_ORIENTATION: &str = "A members on the >= side, B members on the <= side";
pub const SEPARATOR_ORIENTATION: &str = "A members strictly on the < side, B members strictly on the > side";
pub const EXCLUDED_ORIENTATION: &str =
    "excluded member strictly on the > side, other A members on the >= side, B members on the <= side";
pub const FAMILY_ORIENTATION: &str = "every member on the >= side";

impl HyperplaneRecord {
    pub fn new(h: &QHyperplane, partition: Option<Partition>, orientation: &str) -> Self {
        let h = h.canonical();
        HyperplaneRecord {
            normal: h.normal().iter().map(format_rational).collect(),
            offset: format_rational(h.offset()),
            partition: partition.map(PartitionRecord::from_partition),
            orientation: orientation.to_string(),
            excluded: None,
            contacts: None,
        }
    }

    pub fn with_contacts(mut self, contacts: Vec<Vec<usize>>) -> Self {
        self.contacts = Some(contacts);
        self
    }

    pub fn hyperplane(&self, location: &str) -> Result<QHyperplane, CliError> {
        let normal = parse_point(&self.normal, &format!("{location}.normal"))?;
        let offset = parse_scalar(&self.offset, &format!("{location}.offset"))?;
        QHyperplane::new(normal, offset).map_err(|e| CliError::Input(format!("{location}: {e}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeparationRecord {
    pub separated: bool,
    pub witnesses: Vec<HyperplaneRecord>,
    pub failures: Vec<PartitionRecord>,
}

impl SeparationRecord {
    pub fn new(cert: &SeparationCertificate<Rational>) -> Self {
        SeparationRecord {
            separated: cert.is_separated(),
            witnesses: cert
                .witnesses
                .iter()
                .map(|(p, h)| HyperplaneRecord::new(h, Some(*p), SEPARATOR_ORIENTATION))
                .collect(),
            failures: cert.failures.iter().map(|p| PartitionRecord::from_partition(*p)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleRecord {
    pub guard: usize,
    pub count: usize,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellRecord {
    /// 1-based vertices of the underlying polytope on the face.
    pub vertices: Vec<usize>,
    /// 1-based facets of the underlying polytope containing the face.
    pub facets: Vec<usize>,
    /// 1-based cells one dimension lower on the boundary.
    pub boundary: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyperplane: Option<HyperplaneRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexRecord {
    pub sphere_dimension: usize,
    pub polytope_vertices: Vec<Vec<String>>,
    /// `"vertices"` or `"facets"`: what `colors` labels.
    pub colored: String,
    /// 1-based member of each colored vertex or facet.
    pub colors: Vec<usize>,
    /// `cells[j]`: the `j`-dimensional cells.
    pub cells: Vec<Vec<CellRecord>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SphereRecord {
    pub sphere_dimension: usize,
    pub f_vector: Vec<usize>,
    pub euler: i64,
    pub expected_euler: i64,
    pub pseudomanifold: bool,
    pub connected: bool,
    pub pure: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub low_dimensional_exact: Option<bool>,
    pub passed: bool,
    pub reasons: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitHyperplane {
    pub normal: Vec<f64>,
    pub offset: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GapRecord {
    pub angle: f64,
    pub offset: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelRecord {
    pub n: usize,
    pub hyperplanes: Vec<HyperplaneRecord>,
    pub unit: Vec<UnitHyperplane>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap: Option<GapRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RefinementRecord {
    pub partition: PartitionRecord,
    pub levels: Vec<LevelRecord>,
    pub nested: bool,
    pub converging: bool,
    pub final_separation: f64,
    /// Distance of the final level to the exact tangents of two disks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analytic_gap: Option<Vec<GapRecord>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DemoRecord {
    pub n: usize,
    pub plane_count: usize,
    pub tangents: Vec<HyperplaneRecord>,
    pub separation: SeparationRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RenderRecord {
    pub format: String,
    pub path: String,
    pub polytopes: usize,
    pub hyperplanes: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    HypothesisFailure,
    InputError,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommandEcho {
    pub name: String,
    pub args: Vec<String>,
}

/// Everything a command reports; absent sections are omitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    pub command: CommandEcho,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub separation: Option<SeparationRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyperplanes: Option<Vec<HyperplaneRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sphere: Option<SphereRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refinement: Option<Vec<RefinementRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub demo: Option<DemoRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub render: Option<RenderRecord>,
    pub elapsed_us: u64,
}

impl ResultDocument {
    pub fn new(command: CommandEcho) -> Self {
        ResultDocument {
            command,
            status: Status::Ok,
            message: None,
            separation: None,
            hyperplanes: None,
            oracle: None,
            complex: None,
            sphere: None,
            refinement: None,
            demo: None,
            render: None,
            elapsed_us: 0,
        }
    }

    /// Hyperplanes that name a partition must still be tangents of that
    /// partition for `family`.
    pub fn verify_hyperplanes(&self, loaded: &LoadedFamily) -> Result<Vec<(QHyperplane, Option<Partition>)>, CliError> {
        let mut out = Vec::new();
        for (k, rec) in self.hyperplanes.iter().flatten().enumerate() {
            let location = format!("hyperplanes[{k}]");
            let h = rec.hyperplane(&location)?;
            if h.dim() != loaded.family.dim() {
                return Err(CliError::Input(format!(
                    "{location}: hyperplane of R^{} for a family in R^{}",
                    h.dim(),
                    loaded.family.dim()
                )));
            }
            let part = match &rec.partition {
                Some(p) => Some(p.to_partition(loaded.family.len())?),
                None => None,
            };
            let m = loaded.family.len();
            match (part, rec.excluded) {
                (Some(p), Some(a)) if (1..=m).contains(&a) && p.a().contains(a - 1) => {
                    let a = a - 1;
                    let report = verify_tangent(&h, &loaded.family.without(a), p.without(a));
                    let strict = loaded.family.member(a).vertices().iter().all(|v| h.side(v).is_positive());
                    if !report.passed() || !strict {
                        return Err(CliError::Hypothesis(format!(
                            "{location} is not the tangent excluding member {} for partition {p}",
                            a + 1
                        )));
                    }
                }
                (_, Some(a)) => {
                    return Err(CliError::Input(format!(
                        "{location}: excluded member {a} must be on the A side of a partition"
                    )));
                }
                (Some(p), None) => {
                    if let Some(bad) = verify_tangent(&h, &loaded.family, p).first_failure() {
                        return Err(CliError::Hypothesis(format!(
                            "{location} is not a tangent for partition {p}: member {} fails",
                            bad.member + 1
                        )));
                    }
                }
                (None, None) => {}
            }
            out.push((h, part));
        }
        Ok(out)
    }
}

pub fn parse_scalar(s: &str, location: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::Input(format!("{location}: {e}")))
}

pub fn parse_point(coords: &[String], location: &str) -> Result<QVector, CliError> {
    coords
        .iter()
        .enumerate()
        .map(|(i, c)| parse_scalar(c, &format!("{location}[{i}]")))
        .collect::<Result<Vec<_>, _>>()
        .map(QVector::new)
}

pub fn format_point(p: &QVector) -> Vec<String> {
    p.iter().map(format_rational).collect()
}

fn parse_sized_point(coords: &[String], dim: usize, location: &str) -> Result<QVector, CliError> {
    if coords.len() != dim {
        return Err(CliError::Input(format!(
            "{location}: expected {dim} coordinates, found {}",
            coords.len()
        )));
    }
    parse_point(coords, location)
}

/// A family built from a document, with the input vertex order kept for
/// reporting.
#[derive(Debug, Clone)]
pub struct LoadedFamily {
    pub family: Family<Rational>,
    pub names: Vec<String>,
    pub inputs: Vec<Vec<QVector>>,
}

impl LoadedFamily {
    /// 1-based input positions of member vertices given by position in the
    /// member's reduced vertex list.
    pub fn input_indices(&self, member: usize, reduced: &[usize]) -> Vec<usize> {
        let verts = self.family.member(member).vertices();
        let mut out: Vec<usize> = reduced
            .iter()
            .filter_map(|&v| self.inputs[member].iter().position(|p| p.same(&verts[v])))
            .map(|i| i + 1)
            .collect();
        out.sort_unstable();
        out
    }
}

impl FamilyDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("invalid family document: {e}")))
    }

    pub fn check_dimension(&self) -> Result<(), CliError> {
        if self.dimension == 0 {
            return Err(CliError::Input("dimension must be positive".into()));
        }
        Ok(())
    }

    pub fn load(&self) -> Result<LoadedFamily, CliError> {
        self.check_dimension()?;
        if self.polytopes.is_empty() {
            return Err(CliError::Input("the document lists no polytopes".into()));
        }
        let mut names: Vec<String> = Vec::new();
        let mut inputs = Vec::new();
        for (i, rec) in self.polytopes.iter().enumerate() {
            if names.contains(&rec.name) {
                return Err(CliError::Input(format!("polytopes[{i}]: duplicate name {:?}", rec.name)));
            }
            names.push(rec.name.clone());
            if rec.vertices.is_empty() {
                return Err(CliError::Input(format!("polytopes[{i}]: no vertices")));
            }
            let pts = rec
                .vertices
                .iter()
                .enumerate()
                .map(|(j, c)| parse_sized_point(c, self.dimension, &format!("polytopes[{i}].vertices[{j}]")))
                .collect::<Result<Vec<_>, _>>()?;
            inputs.push(pts);
        }
        let members = inputs
            .iter()
            .enumerate()
            .map(|(i, pts)| Member::new(pts.clone()).map_err(|e| CliError::Input(format!("polytopes[{i}]: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let family = Family::new(members).map_err(|e| CliError::Input(e.to_string()))?;
        Ok(LoadedFamily { family, names, inputs })
    }

    pub fn load_bodies(&self) -> Result<Vec<polytangent::QBodySpec>, CliError> {
        self.check_dimension()?;
        let d = self.dimension;
        let bodies = self
            .bodies
            .as_ref()
            .filter(|b| !b.is_empty())
            .ok_or_else(|| CliError::Input("the document lists no bodies".into()))?;
        bodies
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let at = format!("bodies[{i}]");
                Ok(match b {
                    BodyRecord::Ball { center, radius } => polytangent::QBodySpec::Ball {
                        center: parse_sized_point(center, d, &format!("{at}.center"))?,
                        radius: parse_scalar(radius, &format!("{at}.radius"))?,
                    },
                    BodyRecord::Ellipsoid { center, axes } => polytangent::QBodySpec::Ellipsoid {
                        center: parse_sized_point(center, d, &format!("{at}.center"))?,
                        axes: parse_sized_point(axes, d, &format!("{at}.axes"))?,
                    },
                    BodyRecord::Polytope { vertices } => polytangent::QBodySpec::Polytope {
                        vertices: vertices
                            .iter()
                            .enumerate()
                            .map(|(j, c)| parse_sized_point(c, d, &format!("{at}.vertices[{j}]")))
                            .collect::<Result<_, _>>()?,
                    },
                })
            })
            .collect()
    }
}
