use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use pencil_orbits::classifier::Classifier;
use pencil_orbits::group::representative;
use pencil_orbits::pencil::{Geometry, PencilError};
use pencil_orbits::records::{self, ClassifyRecord, Format, SolidRecord};
use pencil_orbits::sweep::{hyperplane_census, point_census};
use pencil_orbits::verify::{self, Level};
use pencil_orbits::veronese::{hyperplane_census_formula, point_census_formula};
use pencil_orbits::{
    ClassificationInconsistency, Conic, Field, OrbitLabel, ParseError, PencilSolid,
};

const EXIT_CODES: &str = "\
Exit codes:
  0  success
  2  usage error (unknown flag, missing or conflicting arguments, unsupported format)
  3  invalid input (malformed solid or conic, unsupported q, degenerate pencil)
  4  classification inconsistency (distributions match no orbit)
  5  verification failed (at least one check did not pass)
  6  I/O error while writing output";

/// Orbits of pencils of conics in PG(2,q), q = 2, 4, 8.
#[derive(Parser)]
#[command(name = "pencil-orbits", version, after_help = EXIT_CODES)]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output file (default: stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format: json-lines, csv or latex. Only `table` accepts csv and latex.
    #[arg(long, global = true, default_value = "json-lines")]
    format: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one solid, given as a basis, a pair of conics or a representative.
    #[command(after_help = EXIT_CODES)]
    Classify(Input),
    /// Print the orbit table with evaluated distributions, stabilisers and orbit sizes.
    #[command(after_help = EXIT_CODES)]
    Table {
        #[arg(long)]
        q: usize,
        /// Add the correspondence with Campbell's classes.
        #[arg(long)]
        campbell: bool,
    },
    /// Run a verification level: q2-full, q4-full, q8-reps or q8-full (long).
    #[command(after_help = EXIT_CODES)]
    Verify {
        #[arg(long)]
        level: String,
    },
    /// Print representatives with their distributions (all 15 without --rep).
    #[command(after_help = EXIT_CODES)]
    Rep {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        rep: Option<String>,
    },
    /// Count the points and hyperplanes of PG(5,q) by type.
    #[command(after_help = EXIT_CODES)]
    Census {
        #[arg(long)]
        q: usize,
    },
}

#[derive(Args)]
struct Input {
    /// Field order; optional when --solid carries a `q=` prefix.
    #[arg(long)]
    q: Option<usize>,
    /// Basis of the solid: 24 hex digits, or `q=<q>:<24 digits>`.
    #[arg(long, conflicts_with_all = ["conics", "rep"])]
    solid: Option<String>,
    /// Two conics, 6 hex digits each, separated by a comma.
    #[arg(long, conflicts_with = "rep")]
    conics: Option<String>,
    /// Orbit representative, e.g. 9 or Ω9.
    #[arg(long)]
    rep: Option<String>,
}

enum Failure {
    Usage(String),
    Input(String),
    Inconsistent(ClassificationInconsistency),
    Verification(Vec<String>),
    Io(io::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Input(_) => 3,
            Failure::Inconsistent(_) => 4,
            Failure::Verification(_) => 5,
            Failure::Io(_) => 6,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => format!("usage error: {m}"),
            Failure::Input(m) => format!("invalid input: {m}"),
            Failure::Inconsistent(e) => e.to_string(),
            Failure::Verification(names) => format!("verification failed: {}", names.join("; ")),
            Failure::Io(e) => format!("i/o error: {e}"),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<PencilError> for Failure {
    fn from(e: PencilError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn field(q: usize) -> Result<Field, Failure> {
    Field::new(q).map_err(|e| Failure::Input(e.to_string()))
}

fn label(s: &str) -> Result<OrbitLabel, Failure> {
    s.parse()
        .map_err(|_| Failure::Input(format!("unknown orbit `{s}`")))
}

fn json_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("records serialize") + "\n"
}

fn solid_from_input(input: &Input) -> Result<PencilSolid, Failure> {
    if let Some(text) = &input.solid {
        let s = if text.trim().starts_with("q=") {
            PencilSolid::parse(text)?
        } else {
            let q = input
                .q
                .ok_or_else(|| Failure::Usage("--solid without a q= prefix needs --q".into()))?;
            PencilSolid::parse_digits(&field(q)?, text.trim())?
        };
        if input.q.is_some_and(|q| q != s.q()) {
            return Err(Failure::Usage(format!(
                "--q {} disagrees with the solid's q={}",
                input.q.unwrap(),
                s.q()
            )));
        }
        return Ok(s);
    }
    let q = input
        .q
        .ok_or_else(|| Failure::Usage("--q is required".into()))?;
    let f = field(q)?;
    if let Some(pair) = &input.conics {
        let (a, b) = pair.split_once(',').ok_or_else(|| {
            Failure::Input(format!("expected two comma-separated conics, got `{pair}`"))
        })?;
        let c1 = Conic::parse_hex(&f, a.trim())?;
        let c2 = Conic::parse_hex(&f, b.trim())?;
        return Ok(PencilSolid::from_conics(&f, &c1, &c2)?);
    }
    if let Some(r) = &input.rep {
        return Ok(representative(&f, label(r)?));
    }
    Err(Failure::Usage(
        "one of --solid, --conics or --rep is required".into(),
    ))
}

fn json_only(format: Format, command: &str) -> Result<(), Failure> {
    if format == Format::JsonLines {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "`{command}` only writes json-lines"
        )))
    }
}

#[derive(Serialize)]
struct CensusRecord {
    q: usize,
    kind: &'static str,
    /// Order: rank 1, rank 2 nucleus, rank 2 secant, rank 3 for points;
    /// double line, real pair, imaginary pair, nonsingular for hyperplanes.
    counts: [u64; 4],
    expected: [u64; 4],
    pass: bool,
}

fn run(cli: Cli) -> Result<String, Failure> {
    let format: Format = cli
        .format
        .parse()
        .map_err(|_| Failure::Usage(format!("unknown format `{}`", cli.format)))?;
    match cli.command {
        Command::Classify(input) => {
            json_only(format, "classify")?;
            let s = solid_from_input(&input)?;
            let geom = Geometry::new(s.q()).map_err(|e| Failure::Input(e.to_string()))?;
            let c = Classifier::new(geom)
                .classify(&s)
                .map_err(Failure::Inconsistent)?;
            Ok(json_line(&ClassifyRecord::new(&s, &c)))
        }
        Command::Table { q, campbell } => Ok(records::render(
            &records::table_rows(&field(q)?, campbell),
            format,
        )),
        Command::Verify { level } => {
            json_only(format, "verify")?;
            let level: Level = level
                .parse()
                .map_err(|_| Failure::Usage(format!("unknown level `{level}`")))?;
            let start = Instant::now();
            let progress = |done: u64, total: u64| {
                eprint!("\r{done}/{total} solids");
                if done == total {
                    eprintln!();
                }
            };
            let report = verify::run_with_progress(level, &progress);
            for c in &report.checks {
                let status = if c.pass { "PASS" } else { "FAIL" };
                match &c.witness {
                    Some(w) => eprintln!("{status} {}: {} (witness {w})", c.name, c.detail),
                    None => eprintln!("{status} {}: {}", c.name, c.detail),
                }
            }
            eprintln!(
                "{} checks, {} failed, {:.1} s",
                report.checks.len(),
                report.failed.len(),
                start.elapsed().as_secs_f64()
            );
            let text = json_line(&report);
            if report.pass {
                Ok(text)
            } else {
                write_out(cli.out.as_ref(), &text)?;
                Err(Failure::Verification(report.failed))
            }
        }
        Command::Rep { q, rep } => {
            json_only(format, "rep")?;
            let geom = Geometry::new(q).map_err(|e| Failure::Input(e.to_string()))?;
            let labels: Vec<OrbitLabel> = match rep {
                Some(r) => vec![label(&r)?],
                None => OrbitLabel::all().collect(),
            };
            Ok(labels
                .into_iter()
                .map(|l| {
                    let s = representative(&geom.field, l);
                    json_line(&SolidRecord::new(&s, &s.distributions(&geom), Some(l)))
                })
                .collect())
        }
        Command::Census { q } => {
            json_only(format, "census")?;
            let f = field(q)?;
            let points = point_census(&f);
            let hyperplanes = hyperplane_census(&f);
            let pe = point_census_formula(q as u64);
            let he = hyperplane_census_formula(q as u64);
            Ok(json_line(&CensusRecord {
                q,
                kind: "points",
                counts: points,
                expected: pe,
                pass: points == pe,
            }) + &json_line(&CensusRecord {
                q,
                kind: "hyperplanes",
                counts: hyperplanes,
                expected: he,
                pass: hyperplanes == he,
            }))
        }
    }
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("usage error: {e}");
            return ExitCode::from(2);
        }
    }
    let out = cli.out.clone();
    let result = run(cli).and_then(|text| write_out(out.as_ref(), &text));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.message());
            ExitCode::from(f.code())
        }
    }
}
