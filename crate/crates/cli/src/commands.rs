//! Subcommand implementations. Each returns the document to print, or an
//! error carrying the exit status.

use std::time::Instant;

use polytangent::approx::{
    analytic_circle_tangents, convergence_run, ngon_pyramid_demo, HyperplaneGap, RefinementRun, TangentKind,
    DEFAULT_ANGLE_TOLERANCE,
};
use polytangent::complex::{rainbow_points_dual, tangent_complex, verify_sphere, SphereReport, TangentComplex};
use polytangent::polytope::{convex_hull_indexed, interior_point, polar_dual};
use polytangent::separation::is_strongly_separated;
use polytangent::tangents::{
    all_tangents, brute_force_tangents, sandwich_tangents, unique_tangent_excluding, OracleTangent, TangentPair,
};
use polytangent::{Error, MemberSet, Partition, QBodySpec, QHyperplane, Rational};

use crate::document::{
    format_point, CellRecord, CommandEcho, ComplexRecord, DemoRecord, FamilyDocument, GapRecord, HyperplaneRecord,
    LevelRecord, LoadedFamily, OracleRecord, RefinementRecord, RenderRecord, ResultDocument, SeparationRecord, SphereRecord, Status,
    UnitHyperplane, EXCLUDED_ORIENTATION, FAMILY_ORIENTATION, TANGENT_ORIENTATION,
};
use crate::CliError;

pub const DEFAULT_SCHEDULE: [usize; 4] = [8, 16, 32, 64];

/// Sorts a core error into an input error or a failed hypothesis.
pub fn classify(e: Error) -> CliError {
    match e {
        Error::DimensionMismatch { .. }
        | Error::ParseScalar { .. }
        | Error::NotAVertex(_)
        | Error::OriginNotInterior
        | Error::TooLarge { .. }
        | Error::UnsupportedBody(_)
        | Error::UnsupportedDimension(_)
        | Error::Usage(_) => CliError::Input(e.to_string()),
        _ => CliError::Hypothesis(e.to_string()),
    }
}

fn sep_failure(loaded: &LoadedFamily, e: Error, doc: &mut ResultDocument) -> CliError {
    if !matches!(e, Error::NotStronglySeparated { .. }) {
        return classify(e);
    }
    let cert = is_strongly_separated(&loaded.family);
    doc.separation = Some(SeparationRecord::new(&cert));
    match cert.first_failure() {
        Some(p) => CliError::Hypothesis(format!(
            "not strongly separated: no strict separator for {}",
            named_partition(loaded, p)
        )),
        None => classify(e),
    }
}

/// `{1, 3} vs {2}` with 1-based members.
fn one_based(p: Partition) -> String {
    let side = |s: MemberSet| s.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(", ");
    format!("{{{}}} vs {{{}}}", side(p.a()), side(p.b()))
}

/// Finishes a document for a failed hypothesis so it can be printed with
/// its evidence.
pub fn with_failure(mut doc: ResultDocument, err: CliError) -> Outcome {
    doc.status = match err {
        CliError::Input(_) => Status::InputError,
        CliError::Hypothesis(_) => Status::HypothesisFailure,
    };
    doc.message = Some(err.to_string());
    Err(Box::new((doc, err)))
}

pub type Outcome = Result<ResultDocument, Box<(ResultDocument, CliError)>>;

fn finish(mut doc: ResultDocument, start: Instant, result: Result<(), CliError>) -> Outcome {
    doc.elapsed_us = start.elapsed().as_micros() as u64;
    match result {
        Ok(()) => Ok(doc),
        Err(e) => with_failure(doc, e),
    }
}

pub fn separation(echo: CommandEcho, input: &FamilyDocument) -> Outcome {
    let start = Instant::now();
    let mut doc = ResultDocument::new(echo);
    let result = (|| {
        let loaded = input.load()?;
        let cert = is_strongly_separated(&loaded.family);
        doc.separation = Some(SeparationRecord::new(&cert));
        match cert.first_failure() {
            None => Ok(()),
            Some(p) => Err(CliError::Hypothesis(format!(
                "not strongly separated: no strict separator for {}",
                named_partition(&loaded, p)
            ))),
        }
    })();
    finish(doc, start, result)
}

fn named_partition(loaded: &LoadedFamily, p: Partition) -> String {
    let side = |s: MemberSet| s.iter().map(|i| loaded.names[i].clone()).collect::<Vec<_>>().join(", ");
    format!("{{{}}} vs {{{}}}", side(p.a()), side(p.b()))
}

fn pair_records(loaded: &LoadedFamily, pair: &TangentPair<Rational>) -> Vec<HyperplaneRecord> {
    pair.hyperplanes
        .iter()
        .zip(&pair.contacts)
        .map(|(h, contacts)| {
            let inputs = contacts
                .iter()
                .enumerate()
                .map(|(i, c)| loaded.input_indices(i, c))
                .collect();
            HyperplaneRecord::new(h, Some(pair.partition), TANGENT_ORIENTATION).with_contacts(inputs)
        })
        .collect()
}

fn oracle_has(oracle: &[OracleTangent<Rational>], part: Partition, h: &QHyperplane) -> bool {
    let (p, h) = if part.is_canonical() {
        (part, h.clone())
    } else {
        (part.canonical(), h.flipped())
    };
    oracle.iter().any(|t| t.partition == p && t.hyperplane.same_oriented(&h))
}

pub struct TangentOptions {
    pub partition: Option<Vec<usize>>,
    pub all: bool,
    pub oracle: bool,
    pub exclude: Option<usize>,
    pub guard: usize,
}

pub fn tangents(echo: CommandEcho, input: &FamilyDocument, opts: &TangentOptions) -> Outcome {
    let start = Instant::now();
    let mut doc = ResultDocument::new(echo);
    let result = (|| {
        let loaded = input.load()?;
        let f = &loaded.family;
        let (m, d) = (f.len(), f.dim());
        let from_flag = match &opts.partition {
            Some(a) => {
                let b: Vec<usize> = (1..=m).filter(|i| !a.contains(i)).collect();
                Some(crate::document::PartitionRecord { a: a.clone(), b }.to_partition(m)?)
            }
            None => None,
        };
        let requested = match (from_flag, &input.partition) {
            (Some(p), _) => Some(p),
            (None, Some(rec)) => Some(rec.to_partition(m)?),
            (None, None) => None,
        };
        if opts.all && opts.partition.is_some() {
            return Err(CliError::Input("--all and --partition exclude each other".into()));
        }

        if let Some(excluded) = opts.exclude {
            if excluded == 0 || excluded > m {
                return Err(CliError::Input(format!("--exclude {excluded} is not in 1..={m}")));
            }
            let a = excluded - 1;
            if m != d + 1 {
                return Err(CliError::Input(format!("--exclude needs {} members in R^{d}, got {m}", d + 1)));
            }
            let part = match requested {
                Some(p) if !opts.all => p,
                _ => Partition::new(MemberSet::single(a), m).map_err(classify)?,
            };
            let h = unique_tangent_excluding(f, part, a).map_err(|e| sep_failure(&loaded, e, &mut doc))?;
            let contacts = polytangent::tangents::contact_faces(&h, f)
                .iter()
                .enumerate()
                .map(|(i, c)| loaded.input_indices(i, c))
                .collect();
            let mut record = HyperplaneRecord::new(&h, Some(part), EXCLUDED_ORIENTATION).with_contacts(contacts);
            record.excluded = Some(excluded);
            doc.hyperplanes = Some(vec![record]);
            if opts.oracle {
                let sub = f.without(a);
                let oracle = brute_force_tangents(&sub, opts.guard).map_err(classify)?;
                let agrees = oracle_has(&oracle, part.without(a), &h);
                doc.oracle = Some(OracleRecord {
                    guard: opts.guard,
                    count: oracle.len(),
                    agrees,
                });
                if !agrees {
                    return Err(CliError::Hypothesis("the excluded tangent is missing from the oracle".into()));
                }
            }
            return Ok(());
        }

        if m != d {
            return Err(CliError::Input(format!(
                "tangents need as many members as dimensions (got {m} in R^{d}); use --exclude for {} members",
                d + 1
            )));
        }
        let pairs = match requested {
            Some(p) if !opts.all => vec![sandwich_tangents(f, p).map_err(|e| sep_failure(&loaded, e, &mut doc))?],
            _ => {
                let set = all_tangents(f).map_err(|e| sep_failure(&loaded, e, &mut doc))?;
                if !set.distinctness_holds() {
                    return Err(CliError::Hypothesis(format!(
                        "{} pairs of tangents coincide",
                        set.coincidences.len()
                    )));
                }
                set.pairs
            }
        };
        doc.hyperplanes = Some(pairs.iter().flat_map(|p| pair_records(&loaded, p)).collect());
        if opts.oracle {
            let oracle = brute_force_tangents(f, opts.guard).map_err(|e| match e {
                Error::TooLarge { count, guard } => CliError::Input(format!(
                    "{count} vertices exceed the oracle guard {guard} (set TANGENT_ORACLE_GUARD to raise it)"
                )),
                e => classify(e),
            })?;
            let found_all = pairs
                .iter()
                .all(|p| p.hyperplanes.iter().all(|h| oracle_has(&oracle, p.partition, h)));
            let relevant = oracle
                .iter()
                .filter(|t| pairs.iter().any(|p| p.partition.canonical() == t.partition))
                .count();
            let agrees = found_all && relevant == 2 * pairs.len();
            doc.oracle = Some(OracleRecord {
                guard: opts.guard,
                count: oracle.len(),
                agrees,
            });
            if !agrees {
                return Err(CliError::Hypothesis("tangents disagree with the brute-force oracle".into()));
            }
        }
        Ok(())
    })();
    finish(doc, start, result)
}

fn sphere_record(r: &SphereReport) -> SphereRecord {
    SphereRecord {
        sphere_dimension: r.sphere_dim,
        f_vector: r.f_vector.clone(),
        euler: r.euler,
        expected_euler: r.expected_euler,
        pseudomanifold: r.pseudomanifold,
        connected: r.connected,
        pure: r.pure,
        low_dimensional_exact: r.low_dim_exact,
        passed: r.passed,
        reasons: r.reasons.clone(),
    }
}

fn complex_record(c: &TangentComplex<Rational>, colored: &str) -> ComplexRecord {
    let cells = c
        .faces
        .iter()
        .enumerate()
        .map(|(j, level)| {
            level
                .iter()
                .enumerate()
                .map(|(i, face)| CellRecord {
                    vertices: face.vertices.iter().map(|v| v + 1).collect(),
                    facets: face.facets.iter().map(|v| v + 1).collect(),
                    boundary: c
                        .boundary
                        .get(j)
                        .and_then(|b| b.get(i))
                        .map(|b| b.iter().map(|v| v + 1).collect())
                        .unwrap_or_default(),
                    hyperplane: face
                        .hyperplane
                        .as_ref()
                        .map(|h| HyperplaneRecord::new(h, None, FAMILY_ORIENTATION)),
                })
                .collect()
        })
        .collect();
    ComplexRecord {
        sphere_dimension: c.sphere_dim,
        polytope_vertices: c.polytope.vertices().iter().map(format_point).collect(),
        colored: colored.to_string(),
        colors: c.colors.iter().map(|k| k + 1).collect(),
        cells,
    }
}

fn sphere_verdict(doc: &mut ResultDocument, c: &TangentComplex<Rational>) -> Result<(), CliError> {
    let report = verify_sphere(c);
    doc.sphere = Some(sphere_record(&report));
    if report.passed {
        Ok(())
    } else {
        Err(CliError::Hypothesis(format!("sphere checks failed: {}", report.reasons.join("; "))))
    }
}

pub fn complex(echo: CommandEcho, input: &FamilyDocument, relaxed: bool) -> Outcome {
    let start = Instant::now();
    let mut doc = ResultDocument::new(echo);
    let result = (|| {
        let loaded = input.load()?;
        let (m, d) = (loaded.family.len(), loaded.family.dim());
        if m < 2 || m > d {
            return Err(CliError::Input(format!("the tangent complex needs 2 to {d} members in R^{d}, got {m}")));
        }
        let c = tangent_complex(&loaded.family, relaxed).map_err(|e| sep_failure(&loaded, e, &mut doc))?;
        doc.complex = Some(complex_record(&c, "vertices"));
        sphere_verdict(&mut doc, &c)
    })();
    finish(doc, start, result)
}

/// Rainbow locus of the polar of the union hull, whose facets carry the
/// member of the hull vertex they correspond to.
pub fn rainbow(echo: CommandEcho, input: &FamilyDocument) -> Outcome {
    let start = Instant::now();
    let mut doc = ResultDocument::new(echo);
    let result = (|| {
        let loaded = input.load()?;
        let f = &loaded.family;
        if f.len() < 2 {
            return Err(CliError::Input("the rainbow locus needs at least 2 members".into()));
        }
        let (points, colors) = f.colored_points();
        let (hull, index) = convex_hull_indexed(&points, f.dim()).map_err(classify)?;
        let vertex_colors: Vec<usize> = index.iter().map(|&i| colors[i]).collect();
        let centered = hull.translated(&interior_point(&hull).neg());
        let polar = polar_dual(&centered).map_err(classify)?;
        let c = rainbow_points_dual(&polar, &vertex_colors).map_err(|e| match e {
            Error::HypothesisFails { subset } => CliError::Hypothesis(format!(
                "color subset {{{}}} is neither visible nor covisible",
                subset.iter().map(|i| loaded.names[*i].clone()).collect::<Vec<_>>().join(", ")
            )),
            e => classify(e),
        })?;
        doc.complex = Some(complex_record(&c, "facets"));
        sphere_verdict(&mut doc, &c)
    })();
    finish(doc, start, result)
}

fn unit_record(u: &(Vec<f64>, f64)) -> UnitHyperplane {
    UnitHyperplane {
        normal: u.0.clone(),
        offset: u.1,
    }
}

fn gap_record(g: HyperplaneGap) -> GapRecord {
    GapRecord {
        angle: g.angle,
        offset: g.offset,
    }
}

/// Two disks: the final level against the exact circle tangents of the
/// matching kind.
fn analytic_gaps(bodies: &[QBodySpec], run: &RefinementRun<Rational>) -> Option<Vec<GapRecord>> {
    let [QBodySpec::Ball { center: c1, radius: r1 }, QBodySpec::Ball { center: c2, radius: r2 }] = bodies else {
        return None;
    };
    if c1.dim() != 2 {
        return None;
    }
    let f = |v: &polytangent::QVector| [v.to_f64()[0], v.to_f64()[1]];
    let lines = analytic_circle_tangents(f(c1), to_f64(r1), f(c2), to_f64(r2)).ok()?;
    let kind = if run.partition.b().is_empty() {
        TangentKind::Outer
    } else {
        TangentKind::Inner
    };
    let last = run.levels.last()?;
    last.unit
        .iter()
        .map(|u| {
            lines
                .iter()
                .filter(|t| t.kind == kind)
                .map(|t| HyperplaneGap::between(u, &t.unit()))
                .min_by(|a, b| a.angle.total_cmp(&b.angle))
                .map(gap_record)
        })
        .collect()
}

fn to_f64(r: &Rational) -> f64 {
    use polytangent::Field;
    r.to_f64_lossy()
}

pub struct ApproxOptions {
    pub schedule: Vec<usize>,
    pub phase: Rational,
    pub tolerance: f64,
}

impl Default for ApproxOptions {
    fn default() -> Self {
        ApproxOptions {
            schedule: DEFAULT_SCHEDULE.to_vec(),
            phase: Rational::from_integer(0.into()),
            tolerance: DEFAULT_ANGLE_TOLERANCE,
        }
    }
}

pub fn approx(echo: CommandEcho, input: &FamilyDocument, opts: &ApproxOptions) -> Outcome {
    let start = Instant::now();
    let mut doc = ResultDocument::new(echo);
    let result = (|| {
        let bodies = input.load_bodies()?;
        let m = bodies.len();
        let parts = match &input.partition {
            Some(rec) => vec![rec.to_partition(m)?],
            None => Partition::all_canonical(m),
        };
        let mut runs = Vec::new();
        let mut converging = true;
        for part in parts {
            let run = convergence_run(&bodies, part, &opts.schedule, &opts.phase, opts.tolerance).map_err(classify)?;
            converging &= run.converging;
            let levels = run
                .levels
                .iter()
                .map(|l| LevelRecord {
                    n: l.n,
                    hyperplanes: l
                        .pair
                        .hyperplanes
                        .iter()
                        .map(|h| HyperplaneRecord::new(h, Some(part), TANGENT_ORIENTATION))
                        .collect(),
                    unit: l.unit.iter().map(unit_record).collect(),
                    gap: l.gap.map(gap_record),
                })
                .collect();
            runs.push(RefinementRecord {
                partition: crate::document::PartitionRecord::from_partition(part),
                levels,
                nested: run.nested,
                converging: run.converging,
                final_separation: run.final_separation,
                analytic_gap: analytic_gaps(&bodies, &run),
            });
        }
        doc.refinement = Some(runs);
        if converging {
            doc.message = Some(format!(
                "converging: final angle gap below {} rad; the two tangents stay apart",
                opts.tolerance
            ));
        } else {
            doc.message = Some("not converging at this schedule".into());
        }
        Ok(())
    })();
    finish(doc, start, result)
}

pub fn ngon_demo(echo: CommandEcho, n: usize, guard: usize) -> Outcome {
    let start = Instant::now();
    let mut doc = ResultDocument::new(echo);
    let result = (|| {
        let demo = ngon_pyramid_demo::<Rational>(n, guard).map_err(classify)?;
        let tangents = demo
            .tangents
            .iter()
            .map(|t| HyperplaneRecord::new(&t.hyperplane, Some(t.partition), TANGENT_ORIENTATION))
            .collect();
        let failure = demo.certificate.first_failure();
        doc.demo = Some(DemoRecord {
            n: demo.n,
            plane_count: demo.plane_count,
            tangents,
            separation: SeparationRecord::new(&demo.certificate),
        });
        doc.message = Some(match failure {
            Some(p) => format!(
                "{} common tangent planes; not strongly separated, {} has no strict separator",
                demo.plane_count,
                one_based(p)
            ),
            None => format!("{} common tangent planes", demo.plane_count),
        });
        Ok(())
    })();
    finish(doc, start, result)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Svg,
    Obj,
}

/// Draws the family with the hyperplanes of `result`, which must still
/// verify, or with all tangents when no result is given and there are as
/// many members as dimensions.
pub fn render(
    echo: CommandEcho,
    input: &FamilyDocument,
    result: Option<&ResultDocument>,
    format: RenderFormat,
    out: &std::path::Path,
) -> Outcome {
    let start = Instant::now();
    let mut doc = ResultDocument::new(echo);
    let outcome = (|| {
        let loaded = input.load()?;
        let f = &loaded.family;
        let needed = match format {
            RenderFormat::Svg => 2,
            RenderFormat::Obj => 3,
        };
        if f.dim() != needed {
            return Err(classify(Error::UnsupportedDimension(f.dim())));
        }
        let hyperplanes = match result {
            Some(r) => r.verify_hyperplanes(&loaded)?,
            None if f.len() == f.dim() => all_tangents(f)
                .map_err(|e| sep_failure(&loaded, e, &mut doc))?
                .hyperplanes()
                .map(|(p, h)| (h.clone(), Some(p)))
                .collect(),
            None => Vec::new(),
        };
        let (text, name) = match format {
            RenderFormat::Svg => (crate::render::svg(&loaded, &hyperplanes)?, "svg"),
            RenderFormat::Obj => (crate::render::obj(&loaded, &hyperplanes)?, "obj"),
        };
        std::fs::write(out, text).map_err(|e| CliError::Input(format!("cannot write {}: {e}", out.display())))?;
        doc.render = Some(RenderRecord {
            format: name.into(),
            path: out.display().to_string(),
            polytopes: f.len(),
            hyperplanes: hyperplanes.len(),
        });
        Ok(())
    })();
    finish(doc, start, outcome)
}
