//! The `castelnuovo` command line.
//!
//! Exit codes: 0 success, 1 input error, 2 internal consistency failure,
//! 3 scan limit exceeded, 4 triplet outside the range covered by the families.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;

use crate::castelnuovo::{self, lower_bound_nvol, verdict, Verdict};
use crate::counting::{self, ScanLimits};
use crate::error::Error;
use crate::families::{self, FamilyPrediction};
use crate::lattice::LatticePolytope;
use crate::scan::{self, ScanParams};
use crate::triangulate::{self, SimplexDecomposition};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CONSISTENCY: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;
pub const EXIT_OUT_OF_RANGE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "castelnuovo", version, about = "Lattice point counts, volumes and minimal-volume checks for lattice polytopes")]
pub struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a member of one of the polytope families and check its predicted profile
    Family(FamilyArgs),
    /// Profile a polytope JSON file and test the minimal-volume equality
    Verify {
        input: PathBuf,
    },
    /// Construct a witness polytope for the triplet (b, c, d)
    Realize {
        #[arg(long)]
        b: u64,
        #[arg(long)]
        c: u64,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the planar triplets up to a given interior count
    Scott {
        #[arg(long = "c-max")]
        c_max: u64,
    },
    /// Sample random polytopes in a box and record minimal-volume ones
    Scan {
        #[arg(long)]
        d: usize,
        #[arg(long = "box")]
        box_size: u64,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ScanFormat::Csv)]
        format: ScanFormat,
        /// Also record samples that miss the bound
        #[arg(long)]
        all: bool,
    },
    /// Emit an explicit simplex decomposition and its verification verdict
    Triangulate {
        #[arg(value_enum)]
        kind: TriangulationKind,
        #[arg(long)]
        c: Option<u64>,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the dilation counts L(0..T) and the normalized volume
    Ehrhart {
        input: PathBuf,
        #[arg(long = "t")]
        t: u64,
    },
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(value_enum)]
    family: FamilyName,
    #[arg(long)]
    c: Option<u64>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    j: Option<usize>,
    /// Write the polytope JSON here
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyName {
    Bipyramid,
    Prism,
    PrismType,
    HtSimplex,
    Cube,
    ExamplePrismR3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TriangulationKind {
    Bipyramid,
    PrismZero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ScanFormat {
    Csv,
    Jsonl,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Everything `verify` reports about one polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub dim: usize,
    pub vertex_count: usize,
    pub b: u64,
    pub c: u64,
    pub total: u64,
    #[serde(serialize_with = "crate::lattice::serialize_bigint")]
    pub nvol: BigInt,
    #[serde(serialize_with = "serialize_opt_bigint")]
    pub lower_bound: Option<BigInt>,
    pub castelnuovo: Verdict,
    pub checks: Vec<Check>,
}

fn serialize_opt_bigint<S: serde::Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => crate::lattice::serialize_bigint(v, s),
        None => s.serialize_none(),
    }
}

impl Report {
    pub fn build(p: &LatticePolytope, limits: ScanLimits) -> crate::Result<Report> {
        let analysis = counting::analyze(p, limits)?;
        let prof = &analysis.profile;
        let reciprocity = Check {
            name: "reciprocity".into(),
            passed: analysis.interior_by_reciprocity == prof.c,
            detail: format!(
                "direct c = {}, (-1)^d L(-1) = {}",
                prof.c, analysis.interior_by_reciprocity
            ),
        };
        Ok(Report {
            dim: p.dim(),
            vertex_count: p.points().len(),
            b: prof.b,
            c: prof.c,
            total: prof.total,
            nvol: prof.nvol.clone(),
            lower_bound: lower_bound_nvol(prof.b, prof.c, prof.dim).ok(),
            castelnuovo: verdict(prof),
            checks: vec![reciprocity],
        })
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn write_text(&self, out: &mut dyn Write) -> std::io::Result<()> {
        writeln!(out, "dim={} vertices={}", self.dim, self.vertex_count)?;
        writeln!(out, "b={} c={} total={} nvol={}", self.b, self.c, self.total, self.nvol)?;
        match &self.lower_bound {
            Some(lb) => writeln!(out, "lower_bound={lb}")?,
            None => writeln!(out, "lower_bound=undefined")?,
        }
        writeln!(out, "castelnuovo={}", self.castelnuovo)?;
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            writeln!(out, "check {}: {status} ({})", c.name, c.detail)?;
        }
        Ok(())
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Consistency(_) => EXIT_CONSISTENCY,
            Error::BoxLimitExceeded { .. } => EXIT_LIMIT,
            Error::NotRealizable { .. } => EXIT_OUT_OF_RANGE,
            _ => EXIT_INPUT,
        };
        let message = match &e {
            Error::NotRealizable { .. } => format!(
                "{e}: outside the range proven Castelnuovo (d + 1 <= b <= cd + 2d + 2); conjectured impossible for c >= 2"
            ),
            _ => e.to_string(),
        };
        Failure { code, message }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
            if code == EXIT_OK {
                let _ = write!(out, "{e}");
            } else {
                let _ = write!(err, "{e}");
            }
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let limits = ScanLimits::from_env()?;
    match &cli.command {
        Command::Family(args) => cmd_family(args, cli.json, limits, out),
        Command::Verify { input } => cmd_verify(input, cli.json, limits, out),
        Command::Realize { b, c, d, out: path } => cmd_realize(*b, *c, *d, path.as_deref(), cli.json, limits, out),
        Command::Scott { c_max } => cmd_scott(*c_max, cli.json, out),
        Command::Scan {
            d,
            box_size,
            samples,
            seed,
            out: path,
            format,
            all,
        } => {
            let mut params = ScanParams::new(*d, *box_size, *samples, *seed);
            params.record_all = *all;
            cmd_scan(&params, path.as_deref(), *format, cli.json, limits, out, err)
        }
        Command::Triangulate { kind, c, d, n, j, out: path } => {
            cmd_triangulate(*kind, *c, *d, *n, *j, path.as_deref(), cli.json, limits, out)
        }
        Command::Ehrhart { input, t } => cmd_ehrhart(input, *t, cli.json, limits, out),
    }
}

fn read_polytope(path: &Path) -> Result<LatticePolytope, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    Ok(LatticePolytope::from_json(&text)?)
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn need<T>(value: Option<T>, flag: &str, family: &str) -> Result<T, Failure> {
    value.ok_or_else(|| input_error(format!("{family} requires --{flag}")))
}

fn build_family(args: &FamilyArgs) -> Result<(LatticePolytope, FamilyPrediction), Failure> {
    let name = args.family.to_possible_value().expect("no skipped variants").get_name().to_string();
    Ok(match args.family {
        FamilyName::Bipyramid => families::bipyramid(
            need(args.c, "c", &name)?,
            need(args.d, "d", &name)?,
            need(args.n, "n", &name)?,
        )?,
        FamilyName::Prism => families::prism(need(args.c, "c", &name)?, need(args.d, "d", &name)?)?,
        FamilyName::PrismType => families::prism_type(
            need(args.c, "c", &name)?,
            need(args.d, "d", &name)?,
            need(args.j, "j", &name)?,
        )?,
        FamilyName::HtSimplex => families::ht_simplex(need(args.c, "c", &name)?, need(args.d, "d", &name)?)?,
        FamilyName::Cube => {
            let d = need(args.d, "d", &name)?;
            if d < 3 {
                return Err(input_error(format!("cube needs d >= 3, got {d}")));
            }
            (families::cube(d)?, families::cube_prediction(d))
        }
        FamilyName::ExamplePrismR3 => (families::example_prism_r3(), families::example_prism_r3_prediction()),
    })
}

fn cmd_family(args: &FamilyArgs, as_json: bool, limits: ScanLimits, out: &mut dyn Write) -> CmdResult {
    let (polytope, prediction) = build_family(args)?;
    let polytope_json = polytope.to_json();
    if let Some(path) = &args.out {
        write_file(path, &format!("{polytope_json}\n"))?;
    }
    let report = Report::build(&polytope, limits)?;
    let matches = report.b == prediction.b && report.c == prediction.c && report.nvol == prediction.nvol;

    if as_json {
        let value = json!({
            "polytope": polytope,
            "report": report,
            "prediction": prediction,
            "prediction_match": matches,
        });
        writeln!(out, "{value}")?;
    } else {
        writeln!(out, "polytope {polytope_json}")?;
        report.write_text(out)?;
        writeln!(
            out,
            "prediction b={} c={} nvol={}: {}",
            prediction.b,
            prediction.c,
            prediction.nvol,
            if matches { "match" } else { "MISMATCH" }
        )?;
    }
    Ok(if matches && report.all_checks_pass() {
        EXIT_OK
    } else {
        EXIT_CONSISTENCY
    })
}

fn cmd_verify(input: &Path, as_json: bool, limits: ScanLimits, out: &mut dyn Write) -> CmdResult {
    let polytope = read_polytope(input)?;
    let report = Report::build(&polytope, limits)?;
    if as_json {
        writeln!(out, "{}", serde_json::to_string(&report).expect("report serializes"))?;
    } else {
        report.write_text(out)?;
    }
    Ok(if report.all_checks_pass() {
        EXIT_OK
    } else {
        EXIT_CONSISTENCY
    })
}

fn cmd_realize(
    b: u64,
    c: u64,
    d: usize,
    path: Option<&Path>,
    as_json: bool,
    limits: ScanLimits,
    out: &mut dyn Write,
) -> CmdResult {
    let (realization, profile) = castelnuovo::realize_and_verify(b, c, d, limits)?;
    let polytope_json = realization.polytope.to_json();
    if let Some(path) = path {
        write_file(path, &format!("{polytope_json}\n"))?;
    }
    if as_json {
        let value = json!({
            "triplet": castelnuovo::CastelnuovoTriplet::new(b, c, d),
            "witness": realization.family,
            "polytope": realization.polytope,
            "profile": profile,
            "castelnuovo": verdict(&profile),
        });
        writeln!(out, "{value}")?;
    } else {
        writeln!(out, "triplet ({b}, {c}, {d})")?;
        writeln!(out, "witness {}", realization.family)?;
        writeln!(out, "polytope {polytope_json}")?;
        writeln!(out, "b={} c={} nvol={}", profile.b, profile.c, profile.nvol)?;
        writeln!(out, "castelnuovo={}", verdict(&profile))?;
    }
    Ok(EXIT_OK)
}

fn cmd_scott(c_max: u64, as_json: bool, out: &mut dyn Write) -> CmdResult {
    if c_max < 1 {
        return Err(input_error("--c-max must be at least 1"));
    }
    let triplets = castelnuovo::scott_triplets_d2(c_max);
    if as_json {
        writeln!(out, "{}", serde_json::to_string(&triplets).expect("triplets serialize"))?;
    } else {
        for t in triplets {
            writeln!(out, "{t}")?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_scan(
    params: &ScanParams,
    path: Option<&Path>,
    format: ScanFormat,
    as_json: bool,
    limits: ScanLimits,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let records = scan::scan(params, limits)?;
    let mut buf = Vec::new();
    match format {
        ScanFormat::Csv => scan::write_csv(&records, &mut buf)?,
        ScanFormat::Jsonl => scan::write_jsonl(&records, &mut buf)?,
    }
    let violations = scan::conjecture_violations(&records);
    let castelnuovo = records.iter().filter(|r| r.castelnuovo == Verdict::Castelnuovo).count();
    let summary = json!({
        "samples": params.samples,
        "records": records.len(),
        "castelnuovo": castelnuovo,
        "violations": violations.iter().map(|r| r.sample_index).collect::<Vec<_>>(),
    });

    // records go to the file when given, otherwise to stdout with the summary on stderr
    let summary_sink: &mut dyn Write = match path {
        Some(p) => {
            fs::write(p, &buf).map_err(|e| input_error(format!("{}: {e}", p.display())))?;
            out
        }
        None => {
            out.write_all(&buf)?;
            err
        }
    };
    if as_json {
        writeln!(summary_sink, "{summary}")?;
    } else {
        writeln!(
            summary_sink,
            "samples={} records={} castelnuovo={} violations={}",
            params.samples,
            records.len(),
            castelnuovo,
            violations.len()
        )?;
    }
    for r in &violations {
        writeln!(
            err,
            "POSSIBLE COUNTEREXAMPLE: sample {} seed {} has triplet {} with b above cd + 2d + 2",
            r.sample_index, r.seed, r.triplet
        )?;
    }
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_triangulate(
    kind: TriangulationKind,
    c: Option<u64>,
    d: usize,
    n: Option<u64>,
    j: Option<usize>,
    path: Option<&Path>,
    as_json: bool,
    limits: ScanLimits,
    out: &mut dyn Write,
) -> CmdResult {
    let (label, dec): (String, SimplexDecomposition) = match kind {
        TriangulationKind::Bipyramid => {
            let c = need(c, "c", "bipyramid")?;
            let n = need(n, "n", "bipyramid")?;
            (
                format!("bipyramid(c={c}, d={d}, n={n})"),
                triangulate::bipyramid_triangulation(c, d, n)?,
            )
        }
        TriangulationKind::PrismZero => {
            let j = need(j, "j", "prism-zero")?;
            (format!("prism-zero(d={d}, j={j})"), triangulate::prism_zero_triangulation(d, j)?)
        }
    };
    let verified = triangulate::verify_decomposition(&dec, limits)?;
    let value = json!({
        "decomposition": label,
        "ambient": dec.ambient,
        "simplices": dec.simplices,
        "total_nvol": crate::lattice::JsonInt(dec.total_nvol()),
        "verified": verified,
    });
    if let Some(p) = path {
        write_file(p, &format!("{value}\n"))?;
    }
    if as_json {
        writeln!(out, "{value}")?;
    } else {
        writeln!(out, "decomposition {label}")?;
        for (i, s) in dec.simplices.iter().enumerate() {
            let verts: Vec<String> = s.vertices.iter().map(ToString::to_string).collect();
            writeln!(out, "simplex {i}: nvol={} vertices={}", s.nvol, verts.join(" "))?;
        }
        writeln!(out, "total_nvol={}", dec.total_nvol())?;
        writeln!(out, "verified={verified}")?;
    }
    Ok(if verified { EXIT_OK } else { EXIT_CONSISTENCY })
}

fn cmd_ehrhart(input: &Path, t: u64, as_json: bool, limits: ScanLimits, out: &mut dyn Write) -> CmdResult {
    let polytope = read_polytope(input)?;
    let d = polytope.dim() as u64;
    let values = counting::ehrhart_values(&polytope, t.max(d), limits)?;
    let nvol = values.forward_difference(polytope.dim());
    let shown = &values.values()[..=t as usize];
    if as_json {
        let value = json!({
            "values": shown,
            "nvol": crate::lattice::JsonInt(nvol),
        });
        writeln!(out, "{value}")?;
    } else {
        let list: Vec<String> = shown.iter().map(ToString::to_string).collect();
        writeln!(out, "L = {}", list.join(" "))?;
        writeln!(out, "nvol = {nvol}")?;
    }
    Ok(EXIT_OK)
}
