//! The `bethe-spectra` command line.
//!
//! Exit codes: 0 success, 1 property or constancy failure, 2 invalid input.
//! All randomness comes from one ChaCha8 generator seeded by `--seed`, so
//! identical arguments produce byte-identical output.

pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bethe::{
    char_poly_expanded, char_poly_factored, family_scan, lambda_min_any, BetheError, DegreePrefix,
    DegreeSequence, FactoredCharPoly, FamilyScan,
};
use crate::graphs::{build_bethe_tree, corona, line_graph, Graph};
use crate::oracle::char_poly_of_graph;
use crate::poly::{
    default_eps, isolate_smallest_root, parse_rational, rational_to_significant, BigRational,
    IntPoly, RootInterval,
};
use crate::{TOOL_NAME, VERSION};

use self::verify::{run_verify, verify_graph, Faults, GraphCheck, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// Oracle runs are capped at this many vertices.
pub const MAX_GRAPH_SIZE: usize = 500;

/// Digits after the decimal point in reported approximations.
const DIGITS: usize = 12;

#[derive(Debug, Parser)]
#[command(
    name = "bethe-spectra",
    version,
    about = "Exact spectra of line graphs of generalized Bethe trees"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Isolation width, as "p/q" or a decimal.
    #[arg(long, global = true)]
    pub eps: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Defaults to csv for `family` and text elsewhere.
    #[arg(long, global = true, value_enum)]
    pub output: Option<OutputFormat>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factored and expanded characteristic polynomial of L(B(d)).
    Charpoly {
        /// Comma-separated d_1,...,d_k.
        #[arg(long)]
        degrees: String,
    },
    /// Certified smallest eigenvalue of L(B(d)) and its multiplicity.
    LambdaMin {
        #[arg(long)]
        degrees: String,
    },
    /// Smallest eigenvalue across d_k for a fixed prefix d_1,...,d_(k-1).
    Family {
        #[arg(long)]
        prefix: String,
        /// Inclusive range "a..b" within 2..64.
        #[arg(long)]
        dk: String,
    },
    /// Randomized check of every invariant against the oracle.
    Verify {
        #[arg(long, default_value_t = 120)]
        max_size: usize,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        /// Check one explicit graph given as a "u v" edge list instead.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, hide = true)]
        corrupt_sigma: bool,
    },
    /// Compare K_n ⊗ K_q and K_n ⊗ K_(q-1) with L(B(1,q,n)).
    CoronaCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Charpoly { .. } => "charpoly",
            Command::LambdaMin { .. } => "lambda-min",
            Command::Family { .. } => "family",
            Command::Verify { .. } => "verify",
            Command::CoronaCheck { .. } => "corona-check",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn invalid(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }

    fn failed(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_FAILURE,
            message: message.into(),
        }
    }
}

impl From<BetheError> for CliError {
    fn from(e: BetheError) -> Self {
        match e {
            BetheError::ConstancyViolation(_)
            | BetheError::InterlacingViolation(_)
            | BetheError::MultiplicityMismatch(_) => CliError::failed(e.to_string()),
            _ => CliError::invalid(e.to_string()),
        }
    }
}

/// `{"tool", "version", "seed", "command", "result"}` in that order.
#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    seed: u64,
    command: &'a str,
    result: &'a T,
}

pub fn parse_degrees(s: &str) -> Result<DegreeSequence, CliError> {
    s.parse()
        .map_err(|e: crate::bethe::DegreeError| CliError::invalid(e.to_string()))
}

/// Parse an inclusive range `"a..b"` (or a single value) within `[2, 64]`.
pub fn parse_dk_range(s: &str) -> Result<std::ops::RangeInclusive<usize>, CliError> {
    let bad = || {
        CliError::invalid(format!(
            "--dk expects \"a..b\" with 2 <= a <= b <= 64 (got {s:?})"
        ))
    };
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if !(2 <= a && a <= b && b <= 64) {
        return Err(bad());
    }
    Ok(a..=b)
}

#[derive(Debug, Clone, Serialize)]
pub struct CharPolyReport {
    pub factored: FactoredCharPoly,
    pub expanded: IntPoly,
}

pub fn charpoly(d: &DegreeSequence) -> Result<CharPolyReport, CliError> {
    Ok(CharPolyReport {
        factored: char_poly_factored(d),
        expanded: char_poly_expanded(d)?,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LambdaMinReport {
    pub degrees: DegreeSequence,
    pub interval: RootInterval,
    pub approx: String,
    pub multiplicity: u64,
    /// `"g_(k-1)"` when `d_k >= 2`, `"expanded"` otherwise.
    pub source: &'static str,
}

pub fn lambda_min(d: &DegreeSequence, eps: &BigRational) -> Result<LambdaMinReport, CliError> {
    let (interval, multiplicity) = lambda_min_any(d, eps)?;
    // the printed digits come from an interval far narrower than the last one
    let fine = fine_eps();
    let (narrow, _) = lambda_min_any(d, &fine.min(eps.clone()))?;
    Ok(LambdaMinReport {
        degrees: d.clone(),
        interval,
        approx: narrow.decimal(DIGITS),
        multiplicity,
        source: if d.dk() >= 2 { "g_(k-1)" } else { "expanded" },
    })
}

fn fine_eps() -> BigRational {
    BigRational::new(
        1.into(),
        num_bigint::BigInt::from(10u32).pow(DIGITS as u32 + 4),
    )
}

pub fn family(
    prefix: &DegreePrefix,
    range: std::ops::RangeInclusive<usize>,
    eps: &BigRational,
) -> Result<FamilyScan, CliError> {
    Ok(family_scan(prefix, range, eps)?)
}

pub fn family_csv(scan: &FamilyScan) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::failed(e.to_string());
    w.write_record([
        "dk",
        "lambda_min_lo",
        "lambda_min_hi",
        "multiplicity",
        "lo_num",
        "lo_den",
        "hi_num",
        "hi_den",
    ])
    .map_err(io)?;
    for row in &scan.rows {
        let iv = &row.lambda_min;
        w.write_record([
            row.dk.to_string(),
            rational_to_significant(&iv.lo, DIGITS),
            rational_to_significant(&iv.hi, DIGITS),
            row.multiplicity.to_string(),
            iv.lo.numer().to_string(),
            iv.lo.denom().to_string(),
            iv.hi.numer().to_string(),
            iv.hi.denom().to_string(),
        ])
        .map_err(io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::failed(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Debug, Clone, Serialize)]
pub struct CoronaGraph {
    pub label: String,
    pub vertices: usize,
    pub char_poly: IntPoly,
    pub lambda_min: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoronaReport {
    pub n: usize,
    pub q: usize,
    pub line_graph: CoronaGraph,
    /// The closed-form polynomial agrees with the oracle on the line graph.
    pub formula_agrees: bool,
    pub coronas: Vec<CoronaGraph>,
    /// Labels of the coronas whose polynomial equals the line graph's.
    pub matches: Vec<String>,
}

impl CoronaReport {
    pub fn verdict(&self) -> String {
        match self.matches.as_slice() {
            [] => "no corona matches".to_string(),
            m => format!("{} ~ {}", self.line_graph.label, m.join(", ")),
        }
    }
}

fn corona_graph(label: String, g: &Graph) -> Result<CoronaGraph, CliError> {
    let char_poly = char_poly_of_graph(g);
    let fine = fine_eps();
    let lambda_min = isolate_smallest_root(&char_poly, &fine)
        .map_err(|e| CliError::failed(e.to_string()))?
        .decimal(DIGITS);
    Ok(CoronaGraph {
        label,
        vertices: g.vertex_count(),
        char_poly,
        lambda_min,
    })
}

/// Oracle polynomials of `K_n ⊗ K_q`, `K_n ⊗ K_{q-1}` (for `q >= 2`) and
/// `L(B(1, q, n))`, and which coronas match the line graph.
pub fn corona_check(n: usize, q: usize) -> Result<CoronaReport, CliError> {
    if n < 1 || q < 1 {
        return Err(CliError::invalid("corona-check needs n >= 1 and q >= 1"));
    }
    let d = DegreeSequence::new(vec![1, q, n])
        .map_err(|e| CliError::invalid(format!("L(B(1,{q},{n})) is undefined: {e}")))?;
    if n * (q + 1) > MAX_GRAPH_SIZE {
        return Err(CliError::invalid(format!(
            "K_{n} ⊗ K_{q} has {} vertices; the limit is {MAX_GRAPH_SIZE}",
            n * (q + 1)
        )));
    }
    let line = line_graph(&build_bethe_tree(&d).graph);
    let line_graph = corona_graph(format!("L(B(1,{q},{n}))"), &line)?;
    let formula_agrees = char_poly_expanded(&d)? == line_graph.char_poly;
    let mut coronas = vec![corona_graph(
        format!("K_{n} ⊗ K_{q}"),
        &corona(&Graph::complete(n), &Graph::complete(q)),
    )?];
    if q >= 2 {
        coronas.push(corona_graph(
            format!("K_{n} ⊗ K_{}", q - 1),
            &corona(&Graph::complete(n), &Graph::complete(q - 1)),
        )?);
    }
    let matches = coronas
        .iter()
        .filter(|c| c.char_poly == line_graph.char_poly)
        .map(|c| c.label.clone())
        .collect();
    Ok(CoronaReport {
        n,
        q,
        line_graph,
        formula_agrees,
        coronas,
        matches,
    })
}

fn read_edge_list(path: &PathBuf) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::invalid(format!("cannot read {}: {e}", path.display())))?;
    let g = Graph::parse_edge_list(&text)
        .map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
    if g.vertex_count() > MAX_GRAPH_SIZE {
        return Err(CliError::invalid(format!(
            "graph has {} vertices; the limit is {MAX_GRAPH_SIZE}",
            g.vertex_count()
        )));
    }
    Ok(g)
}

/// Rendered output plus exit code.
struct Outcome {
    body: String,
    code: i32,
    warnings: Vec<String>,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome {
            body,
            code: EXIT_OK,
            warnings: Vec::new(),
        }
    }
}

fn json<T: Serialize>(cli: &Cli, result: &T) -> String {
    let env = Envelope {
        tool: TOOL_NAME,
        version: VERSION,
        seed: cli.seed,
        command: cli.command.name(),
        result,
    };
    let mut s = serde_json::to_string_pretty(&env).expect("reports serialize");
    s.push('\n');
    s
}

fn csv_lines(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut s = format!("{header}\n");
    for r in rows {
        s.push_str(&r);
        s.push('\n');
    }
    s
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let eps = match &cli.eps {
        None => default_eps(),
        Some(s) => {
            let e = parse_rational(s).map_err(|e| CliError::invalid(e.to_string()))?;
            if e <= BigRational::from_integer(0.into()) {
                return Err(CliError::invalid(format!(
                    "--eps must be positive (got {s})"
                )));
            }
            e
        }
    };
    let format = cli.output.unwrap_or(match cli.command {
        Command::Family { .. } => OutputFormat::Csv,
        _ => OutputFormat::Text,
    });
    match &cli.command {
        Command::Charpoly { degrees } => {
            let d = parse_degrees(degrees)?;
            let r = charpoly(&d)?;
            Ok(Outcome::ok(match format {
                OutputFormat::Json => json(cli, &r),
                OutputFormat::Csv => csv_lines(
                    "factor,exponent,coeffs",
                    r.factored
                        .factors
                        .iter()
                        .enumerate()
                        .map(|(i, (g, e))| format!("g_{},{e},{}", i + 1, coeff_field(g)))
                        .chain([
                            format!("divisor,-1,{}", coeff_field(&FactoredCharPoly::divisor())),
                            format!("expanded,1,{}", coeff_field(&r.expanded)),
                        ]),
                ),
                OutputFormat::Text => {
                    let factors: Vec<String> = r
                        .factored
                        .factors
                        .iter()
                        .filter(|(_, e)| *e > 0)
                        .map(|(g, e)| format!("({g})^{e}"))
                        .collect();
                    format!(
                        "degrees: {d}\nfactored: {} / (λ + 2)\nexpanded: {}\n",
                        factors.join(" · "),
                        r.expanded
                    )
                }
            }))
        }
        Command::LambdaMin { degrees } => {
            let d = parse_degrees(degrees)?;
            let r = lambda_min(&d, &eps)?;
            Ok(Outcome::ok(match format {
                OutputFormat::Json => json(cli, &r),
                OutputFormat::Csv => csv_lines(
                    "degrees,lambda_min,multiplicity,lo,hi,source",
                    [format!(
                        "\"{}\",{},{},{},{},{}",
                        d.as_slice().iter().map(usize::to_string).collect::<Vec<_>>().join(","),
                        r.approx,
                        r.multiplicity,
                        r.interval.lo,
                        r.interval.hi,
                        r.source
                    )],
                ),
                OutputFormat::Text => format!(
                    "degrees: {d}\ninterval: ({}, {}]\nlambda_min: {}\nmultiplicity: {}\nsource: {}\n",
                    r.interval.lo, r.interval.hi, r.approx, r.multiplicity, r.source
                ),
            }))
        }
        Command::Family { prefix, dk } => {
            let prefix: DegreePrefix = prefix
                .parse()
                .map_err(|e: crate::bethe::DegreeError| CliError::invalid(e.to_string()))?;
            let range = parse_dk_range(dk)?;
            let scan = family(&prefix, range, &eps)?;
            Ok(Outcome::ok(match format {
                OutputFormat::Json => json(cli, &scan),
                OutputFormat::Csv => family_csv(&scan)?,
                OutputFormat::Text => {
                    let mut s = format!("prefix: {}\ng_(k-1): {}\n", scan.prefix, scan.g_km1);
                    for row in &scan.rows {
                        s.push_str(&format!(
                            "d_k = {:>2}  lambda_min = {}  multiplicity = {}\n",
                            row.dk,
                            row.lambda_min.decimal(DIGITS),
                            row.multiplicity
                        ));
                    }
                    s
                }
            }))
        }
        Command::Verify {
            max_size,
            trials,
            graph,
            corrupt_sigma,
        } => {
            if *max_size > MAX_GRAPH_SIZE {
                return Err(CliError::invalid(format!(
                    "--max-size must be at most {MAX_GRAPH_SIZE} (got {max_size})"
                )));
            }
            if let Some(path) = graph {
                let g = read_edge_list(path)?;
                return Ok(render_graph_check(cli, format, &verify_graph(&g, 1e-9)));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let faults = Faults {
                corrupt_sigma: *corrupt_sigma,
            };
            let report = run_verify(&mut rng, *trials, *max_size, faults);
            let mut outcome = render_verify(cli, format, &report);
            if *trials == 0 {
                outcome
                    .warnings
                    .push("warning: --trials 0 checks nothing".into());
            }
            Ok(outcome)
        }
        Command::CoronaCheck { n, q } => {
            let r = corona_check(*n, *q)?;
            Ok(Outcome::ok(match format {
                OutputFormat::Json => json(cli, &r),
                OutputFormat::Csv => csv_lines(
                    "graph,vertices,lambda_min,matches_line_graph",
                    std::iter::once(&r.line_graph).chain(&r.coronas).map(|c| {
                        format!(
                            "\"{}\",{},{},{}",
                            c.label,
                            c.vertices,
                            c.lambda_min,
                            c.char_poly == r.line_graph.char_poly
                        )
                    }),
                ),
                OutputFormat::Text => {
                    let mut s = String::new();
                    for c in std::iter::once(&r.line_graph).chain(&r.coronas) {
                        s.push_str(&format!(
                            "{}: {} vertices, lambda_min = {}\n",
                            c.label, c.vertices, c.lambda_min
                        ));
                    }
                    s.push_str(&format!("closed form agrees: {}\n", r.formula_agrees));
                    s.push_str(&format!("verdict: {}\n", r.verdict()));
                    s
                }
            }))
        }
    }
}

fn coeff_field(p: &IntPoly) -> String {
    p.coeffs()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn render_verify(cli: &Cli, format: OutputFormat, r: &VerifyReport) -> Outcome {
    let body = match format {
        OutputFormat::Json => json(cli, r),
        OutputFormat::Csv => csv_lines(
            "check,passed,status",
            r.checks.iter().map(|c| {
                let status = match &r.failure {
                    Some(f) if f.check == c.name => "fail",
                    _ => "pass",
                };
                format!("{},{},{status}", c.name, c.passed)
            }),
        ),
        OutputFormat::Text => {
            let mut s = format!(
                "seed: {}\ntrials: {}\nmax size: {}\n",
                cli.seed, r.trials, r.max_size
            );
            for c in &r.checks {
                s.push_str(&format!("{:<26} {} passed\n", c.name, c.passed));
            }
            match &r.failure {
                None => s.push_str("result: pass\n"),
                Some(f) => s.push_str(&format!(
                    "result: FAIL in {}\ndetail: {}\nreproducer: {}\n",
                    f.check, f.detail, f.reproducer
                )),
            }
            s
        }
    };
    Outcome {
        body,
        code: if r.passed() { EXIT_OK } else { EXIT_FAILURE },
        warnings: Vec::new(),
    }
}

fn render_graph_check(cli: &Cli, format: OutputFormat, r: &GraphCheck) -> Outcome {
    let body = match format {
        OutputFormat::Json => json(cli, r),
        OutputFormat::Csv => csv_lines(
            "check,status",
            r.checks
                .iter()
                .map(|c| format!("{},pass", c.name))
                .chain(r.failure.iter().map(|f| format!("{},fail", f.check))),
        ),
        OutputFormat::Text => {
            let mut s = format!(
                "vertices: {}\nedges: {}\nchar poly: {}\n",
                r.vertices, r.edges, r.char_poly
            );
            if let Some((d, root)) = &r.bethe {
                s.push_str(&format!("bethe tree: {d} rooted at {root}\n"));
            }
            for c in &r.checks {
                s.push_str(&format!("{:<14} pass\n", c.name));
            }
            match &r.failure {
                None => s.push_str("result: pass\n"),
                Some(f) => s.push_str(&format!(
                    "result: FAIL in {}\ndetail: {}\n",
                    f.check, f.detail
                )),
            }
            s
        }
    };
    Outcome {
        body,
        code: if r.failure.is_none() {
            EXIT_OK
        } else {
            EXIT_FAILURE
        },
        warnings: Vec::new(),
    }
}

/// Parse `args` (including the program name), run, write to `out`/`err`,
/// and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            for w in &outcome.warnings {
                let _ = writeln!(err, "{w}");
            }
            let _ = out.write_all(outcome.body.as_bytes());
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}
