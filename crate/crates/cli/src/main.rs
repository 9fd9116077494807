use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use polytangent::exactnum::parse_rational;
use polytangent::tangents::ORACLE_GUARD;
use polytangent_cli::commands::{self, ApproxOptions, Outcome, RenderFormat, TangentOptions};
use polytangent_cli::document::{CommandEcho, FamilyDocument, ResultDocument};
use polytangent_cli::CliError;

/// Exact common tangent hyperplanes of polytope families.
///
/// Inputs are JSON family documents (use `-` for stdin); results are JSON
/// on stdout. Exit status: 0 success, 1 a hypothesis fails, 2 bad input.
#[derive(Parser, Debug)]
#[command(name = "polytangent", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certify strong separation, or name a bipartition without separator.
    Separation { input: PathBuf },
    /// Common tangent hyperplanes of d members in R^d.
    Tangents {
        input: PathBuf,
        /// Members on the A side, 1-based; the rest form B.
        #[arg(long, value_delimiter = ',')]
        partition: Option<Vec<usize>>,
        /// Every partition (the default without a partition).
        #[arg(long)]
        all: bool,
        /// Compare with the brute-force search over vertex hyperplanes.
        #[arg(long)]
        oracle: bool,
        /// For d+1 members: the tangent missing this member.
        #[arg(long)]
        exclude: Option<usize>,
    },
    /// Tangent complex of 2 to d members in R^d, with sphere checks.
    Complex {
        input: PathBuf,
        /// Skip the full-dimensionality requirement on members.
        #[arg(long)]
        relaxed: bool,
    },
    /// Rainbow locus of the polar of the union hull.
    Rainbow { input: PathBuf },
    /// Tangents of inscribed polytopes of convex bodies under refinement.
    Approx {
        input: Option<PathBuf>,
        /// Increasing vertex counts per body, e.g. `8,16,32,64`.
        #[arg(long)]
        schedule: Option<String>,
        /// Rotation of the inscribed points, as a rational number of radians.
        #[arg(long, default_value = "0")]
        phase: String,
        /// Final angle gap, in radians, below which a run converges.
        #[arg(long)]
        tolerance: Option<f64>,
        /// `ngon:N`: the pyramid over an N-gon between two balls.
        #[arg(long)]
        demo: Option<String>,
    },
    /// Draw a family and its tangents as SVG (d = 2) or OBJ (d = 3).
    #[command(group(ArgGroup::new("format").required(true).args(["svg", "obj"])))]
    Render {
        input: PathBuf,
        /// Result document whose hyperplanes are drawn.
        #[arg(long)]
        result: Option<PathBuf>,
        #[arg(long)]
        svg: bool,
        #[arg(long)]
        obj: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

fn family(path: &Path) -> Result<FamilyDocument, CliError> {
    FamilyDocument::parse(&read_input(path)?)
}

fn oracle_guard() -> Result<usize, CliError> {
    match std::env::var("TANGENT_ORACLE_GUARD") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("TANGENT_ORACLE_GUARD={v:?} is not a vertex count"))),
        Err(_) => Ok(ORACLE_GUARD),
    }
}

fn parse_schedule(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| CliError::Input(format!("--schedule: {t:?} is not a vertex count")))
        })
        .collect()
}

fn parse_demo(spec: &str) -> Result<usize, CliError> {
    spec.strip_prefix("ngon:")
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| CliError::Input(format!("unknown demo {spec:?}; expected ngon:N")))
}

fn run(cli: Cli, echo: CommandEcho) -> Outcome {
    let fail = |echo: CommandEcho, e: CliError| commands::with_failure(ResultDocument::new(echo), e);
    match cli.command {
        Command::Separation { input } => match family(&input) {
            Ok(doc) => commands::separation(echo, &doc),
            Err(e) => fail(echo, e),
        },
        Command::Tangents {
            input,
            partition,
            all,
            oracle,
            exclude,
        } => {
            let prepared = family(&input).and_then(|doc| Ok((doc, oracle_guard()?)));
            match prepared {
                Ok((doc, guard)) => {
                    let opts = TangentOptions {
                        partition,
                        all,
                        oracle,
                        exclude,
                        guard,
                    };
                    commands::tangents(echo, &doc, &opts)
                }
                Err(e) => fail(echo, e),
            }
        }
        Command::Complex { input, relaxed } => match family(&input) {
            Ok(doc) => commands::complex(echo, &doc, relaxed),
            Err(e) => fail(echo, e),
        },
        Command::Rainbow { input } => match family(&input) {
            Ok(doc) => commands::rainbow(echo, &doc),
            Err(e) => fail(echo, e),
        },
        Command::Approx {
            input,
            schedule,
            phase,
            tolerance,
            demo,
        } => {
            if let Some(spec) = demo {
                return match parse_demo(&spec).and_then(|n| Ok((n, oracle_guard()?))) {
                    Ok((n, guard)) => commands::ngon_demo(echo, n, guard),
                    Err(e) => fail(echo, e),
                };
            }
            let prepared = (|| {
                let path = input.ok_or_else(|| CliError::Input("approx needs an input document or --demo".into()))?;
                let doc = family(&path)?;
                let mut opts = ApproxOptions {
                    phase: parse_rational(&phase).map_err(|e| CliError::Input(format!("--phase: {e}")))?,
                    ..ApproxOptions::default()
                };
                if let Some(s) = schedule {
                    opts.schedule = parse_schedule(&s)?;
                }
                if let Some(t) = tolerance {
                    opts.tolerance = t;
                }
                Ok((doc, opts))
            })();
            match prepared {
                Ok((doc, opts)) => commands::approx(echo, &doc, &opts),
                Err(e) => fail(echo, e),
            }
        }
        Command::Render {
            input,
            result,
            svg,
            obj: _,
            out,
        } => {
            let prepared = (|| {
                let doc = family(&input)?;
                let result = match result {
                    Some(path) => Some(
                        serde_json::from_str::<ResultDocument>(&read_input(&path)?)
                            .map_err(|e| CliError::Input(format!("invalid result document: {e}")))?,
                    ),
                    None => None,
                };
                Ok((doc, result))
            })();
            let format = if svg { RenderFormat::Svg } else { RenderFormat::Obj };
            match prepared {
                Ok((doc, result)) => commands::render(echo, &doc, result.as_ref(), format, &out),
                Err(e) => fail(echo, e),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut args = std::env::args().skip(1);
    let echo = CommandEcho {
        name: args.next().unwrap_or_default(),
        args: args.collect(),
    };
    let (doc, code) = match run(cli, echo) {
        Ok(doc) => (doc, 0),
        Err(failure) => {
            let (doc, e) = *failure;
            eprintln!("polytangent: {e}");
            (doc, e.exit_code())
        }
    };
    match serde_json::to_string_pretty(&doc) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = writeln!(stdout, "{text}") {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("polytangent: cannot write the result: {e}");
                    return ExitCode::from(2);
                }
            }
        }
        Err(e) => {
            eprintln!("polytangent: cannot serialize the result: {e}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code as u8)
}
