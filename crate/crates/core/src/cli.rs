//! The `monocomp` command-line tool.
//!
//! Exit codes: 0 success, 1 a classifier or check found nothing (or found a
//! violation), 2 usage, input or parse error, 3 search budget refusal.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::bounds::{
    best_provable_bound_with, evaluate_weighting, round_weighting, solve_cover, z_lower_bound, BoundQuery,
    BoundsError, CoverKind, SweepOptions, Weighting,
};
use crate::coloring::EdgeColoring;
use crate::components::{decompose, ComponentDecomposition};
use crate::constructions::{blow_up, gyarfas_coloring, two_color_extremal};
use crate::report::{rational_decimal, Report, Table};
use crate::search::{exact_m, random_coloring, scan_bound_soundness, RandomBatch, ScanConfig, SearchConfig, SearchError, Symmetry};
use crate::structure::{
    classify_bipartite, classify_r3, detect_disjoint_pair, detect_gyarfas_grid, find_spanning_cover,
    validate_certificate, verify_bipartite_lemma, R3Case,
};
use crate::{parse_rational, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_FOUND: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Environment variable that replaces the default seed of `construct random`.
pub const SEED_VAR: &str = "MONOCOMP_SEED";

#[derive(Parser, Debug)]
#[command(name = "monocomp", version, about = "Monochromatic components of edge-colored complete graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a coloring and write it in the text format.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Decompose a coloring into monochromatic components.
    Analyze {
        file: PathBuf,
        /// Write the component table as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lower bounds from fractional covers.
    Bound(BoundArgs),
    /// Structural classifiers.
    Classify(ClassifyArgs),
    /// Exhaustive search for the minimum largest component.
    Search(SearchArgs),
    /// Run the soundness scan and the bipartite enumeration.
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
enum ConstructKind {
    /// Affine-plane coloring of K_{(r-1)^2}.
    Gyarfas {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replace each vertex of a base coloring by k vertices.
    Blowup {
        /// Base coloring file; defaults to the affine-plane coloring for --r.
        #[arg(long, conflicts_with = "r")]
        base: Option<PathBuf>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Two color-0 cliques joined by color 1 (n = 1 mod 3).
    TwoColor {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Uniform random coloring.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Overrides MONOCOMP_SEED and the default seed 0.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct BoundArgs {
    file: PathBuf,
    /// Solve the cover LP at this level (p/q).
    #[arg(long)]
    gamma: Option<String>,
    /// Sweep gamma over [0, r] for the best bound (default when no other mode is given).
    #[arg(long)]
    sweep: bool,
    /// Evaluate a weighting given as lines "index p/q".
    #[arg(long)]
    weights: Option<PathBuf>,
    /// Use the single averaged covering constraint instead of one per vertex.
    #[arg(long)]
    aggregate: bool,
    /// Sweep grid step (p/q); "none" disables the grid.
    #[arg(long, default_value = "1/100")]
    grid_step: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    file: PathBuf,
    /// Case of a 3-coloring: a, b, c or unclassified.
    #[arg(long)]
    r3_case: bool,
    /// Look for the 3x3 cell structure of a 4-coloring.
    #[arg(long)]
    grid: bool,
    /// Two disjoint components of different colors.
    #[arg(long)]
    disjoint_pair: bool,
    /// At most m components of distinct colors covering all vertices.
    #[arg(long, value_name = "M")]
    spanning_cover: Option<usize>,
    /// Classify the bipartite graph between two vertex sets, e.g. "0,1,2" "3-5".
    #[arg(long, num_args = 2, value_names = ["A1", "A2"])]
    bipartite: Option<Vec<String>>,
    /// The two colors of the bipartite graph, e.g. "0,1"; inferred when omitted.
    #[arg(long)]
    colors: Option<String>,
    /// Designated color for splitting the single-component case.
    #[arg(long)]
    designated: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    /// none, vertex or vertex+color.
    #[arg(long, default_value = "vertex")]
    symmetry: Symmetry,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, default_value_t = 1_000_000_000)]
    budget_nodes: u64,
    /// Disable the incumbent cutoff.
    #[arg(long)]
    no_cutoff: bool,
    /// Write the witness coloring here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Largest K_n enumerated exhaustively.
    #[arg(long, default_value_t = 4)]
    max_n: usize,
    /// Largest color count enumerated exhaustively.
    #[arg(long, default_value_t = 3)]
    max_r: usize,
    /// Random colorings in addition to the exhaustive ones.
    #[arg(long, default_value_t = 0)]
    random: usize,
    #[arg(long, default_value_t = 30)]
    random_n: usize,
    #[arg(long, default_value_t = 4)]
    random_r: usize,
    /// Random subsets per random coloring.
    #[arg(long, default_value_t = 1000)]
    subsets: usize,
    /// Side limit of the bipartite enumeration.
    #[arg(long, default_value_t = 4)]
    bipartite_max: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        let code = match e {
            SearchError::BudgetExceeded { .. } | SearchError::NodeLimit { .. } => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<BoundsError> for Failure {
    fn from(e: BoundsError) -> Self {
        Self::usage(e)
    }
}

/// Parses `argv` (including the program name), runs the command and writes
/// the report to standard output.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let echo = args
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if code == EXIT_OK { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let start = Instant::now();
    let outcome = match cli.command {
        Command::Construct { kind } => construct(kind, &echo, out),
        Command::Analyze { file, out: csv } => analyze(&file, &echo).and_then(|r| emit(r, csv.as_deref(), EXIT_OK)),
        Command::Bound(args) => bound(args, &echo),
        Command::Classify(args) => classify(args, &echo),
        Command::Search(args) => search(args, &echo),
        Command::Verify(args) => verify(args, &echo),
    };
    match outcome {
        Ok(Outcome { mut report, code, quiet }) => {
            if !quiet {
                report.elapsed = Some(start.elapsed());
                let _ = out.write_all(report.to_text().as_bytes());
            }
            code
        }
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

struct Outcome {
    report: Report,
    code: i32,
    /// The command already wrote its output.
    quiet: bool,
}

fn emit(report: Report, csv: Option<&Path>, code: i32) -> Result<Outcome, Failure> {
    if let Some(path) = csv {
        let file = fs::File::create(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        report
            .write_csv(file)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    }
    Ok(Outcome {
        report,
        code,
        quiet: false,
    })
}

fn read_coloring(path: &Path, report: &mut Report) -> Result<EdgeColoring, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    report.digest_of(&bytes);
    let text = std::str::from_utf8(&bytes).map_err(|_| Failure::usage(format!("{}: not valid UTF-8", path.display())))?;
    EdgeColoring::parse(text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn construct(kind: ConstructKind, echo: &str, out: &mut dyn Write) -> Result<Outcome, Failure> {
    let mut report = Report::new(echo);
    let (coloring, path) = match kind {
        ConstructKind::Gyarfas { r, out } => (gyarfas_coloring(r).map_err(Failure::usage)?, out),
        ConstructKind::Blowup { base, r, k, out } => {
            let base = match (base, r) {
                (Some(path), _) => read_coloring(&path, &mut report)?,
                (None, Some(r)) => gyarfas_coloring(r).map_err(Failure::usage)?,
                (None, None) => return Err(Failure::usage("blowup needs --base or --r")),
            };
            (blow_up(&base, k).map_err(Failure::usage)?, out)
        }
        ConstructKind::TwoColor { n, out } => (two_color_extremal(n).map_err(Failure::usage)?, out),
        ConstructKind::Random { n, r, seed, out } => {
            let seed = match seed {
                Some(s) => s,
                None => match std::env::var(SEED_VAR) {
                    Ok(v) => v
                        .trim()
                        .parse()
                        .map_err(|_| Failure::usage(format!("{SEED_VAR} must be an unsigned integer, got `{v}`")))?,
                    Err(_) => 0,
                },
            };
            if n == 0 {
                return Err(Failure::usage("n must be positive"));
            }
            report.put("seed", seed);
            (random_coloring(n, r, seed).map_err(Failure::usage)?, out)
        }
    };
    let text = coloring.to_text();
    match path {
        Some(path) => {
            write_file(&path, &text)?;
            report.put("output", path.display().to_string());
            report.put("output-sha256", crate::report::sha256_hex(text.as_bytes()));
            report.put("n", coloring.n());
            report.put("r", coloring.r());
            report.put("components", decompose(&coloring).len());
            Ok(Outcome {
                report,
                code: EXIT_OK,
                quiet: false,
            })
        }
        None => {
            // the coloring itself is the output
            out.write_all(text.as_bytes()).map_err(Failure::usage)?;
            Ok(Outcome {
                report,
                code: EXIT_OK,
                quiet: true,
            })
        }
    }
}

fn component_table(decomp: &ComponentDecomposition) -> Table {
    let mut table = Table::new("components", &["index", "color", "vertices", "edges", "members"]);
    for (i, c) in decomp.components().iter().enumerate() {
        let members = c.vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        table.push(vec![
            i.to_string(),
            c.color.to_string(),
            c.len().to_string(),
            c.edge_count.to_string(),
            members,
        ]);
    }
    table
}

fn analyze(path: &Path, echo: &str) -> Result<Report, Failure> {
    let mut report = Report::new(echo);
    let coloring = read_coloring(path, &mut report)?;
    let decomp = decompose(&coloring);
    report.put("n", decomp.n());
    report.put("r", decomp.r());
    report.put("components", decomp.len());
    let per_color = (0..decomp.r())
        .map(|c| decomp.components_of_color(c).len().to_string())
        .collect::<Vec<_>>()
        .join(" ");
    report.put("components-per-color", per_color);
    report.put("max-edges", decomp.max_edges());
    if decomp.n() >= 2 {
        report.put("max-edge-fraction", decomp.max_edge_fraction().map_err(Failure::usage)?);
    }
    report.put("equivalence-classes", decomp.equivalence_classes().len());
    report.put("biconnected-pairs", decomp.biconnected_pairs().len());
    report.tables.push(component_table(&decomp));
    Ok(report)
}

fn bound(args: BoundArgs, echo: &str) -> Result<Outcome, Failure> {
    let mut report = Report::new(echo);
    let coloring = read_coloring(&args.file, &mut report)?;
    let decomp = decompose(&coloring);
    if decomp.n() < 2 {
        return Err(Failure::usage("bounds need at least two vertices"));
    }
    let kind = if args.aggregate { CoverKind::Aggregate } else { CoverKind::PerVertex };
    let actual = decomp.max_edge_fraction().map_err(Failure::usage)?;
    report.put("r", decomp.r());
    report.put("cover", if args.aggregate { "aggregate" } else { "per-vertex" });
    report.put("max-edge-fraction", &actual);

    if let Some(g) = &args.gamma {
        let gamma = parse_rational(g).ok_or_else(|| Failure::usage(format!("bad --gamma `{g}`")))?;
        let lp = solve_cover(&decomp, &gamma, kind)?;
        lp.verify(&decomp)?;
        report.put("gamma", &gamma);
        report.put("x*", &lp.optimum);
        report.put("dual-objective", lp.dual_objective(&decomp));
        report.put("certificate", "verified");
        if let Ok(z) = z_lower_bound(&BoundQuery::new(decomp.r(), gamma.clone(), lp.optimum.clone())?) {
            report.put("z-bound", z);
        }
        let mut table = Table::new("weights", &["index", "color", "weight"]);
        for (i, w) in lp.weights.weights.iter().enumerate() {
            table.push(vec![i.to_string(), decomp.component(i).color.to_string(), w.to_string()]);
        }
        report.tables.push(table);
    }

    if let Some(path) = &args.weights {
        let weights = read_weights(path, decomp.len())?;
        let stats = evaluate_weighting(&decomp, &weights)?;
        report.put("weight-x", &stats.x);
        report.put("weight-gamma-total", &stats.gamma_total);
        report.put("weight-gamma-min", &stats.gamma_min);
        if let Ok(z) = z_lower_bound(&BoundQuery::new(decomp.r(), stats.gamma_total.clone(), stats.x.clone())?) {
            report.put("weight-z-bound", z);
        }
        match round_weighting(&decomp, &weights, &actual) {
            Ok(rounded) => {
                let list = rounded.components.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
                report.put("rounded-subset", list);
                report.put("rounded-x", &rounded.x);
                report.put("rounded-gamma", &rounded.gamma);
                report.put("rounded-objective", rounded.objective);
            }
            Err(BoundsError::PreconditionViolated { lhs, rhs }) => {
                report.put("rounding", format!("precondition fails at z = max-edge-fraction: {lhs} > {rhs}"));
            }
            Err(e) => return Err(e.into()),
        }
    }

    if args.sweep || (args.gamma.is_none() && args.weights.is_none()) {
        let grid_step = match args.grid_step.as_str() {
            "none" => None,
            s => Some(
                parse_rational(s)
                    .filter(|q| q > &Rational::from_integer(0.into()))
                    .ok_or_else(|| Failure::usage(format!("bad --grid-step `{s}`")))?,
            ),
        };
        let best = best_provable_bound_with(&decomp, &SweepOptions { kind, grid_step })?;
        report.put("best-z", best.z.clone());
        report.put("best-gamma", &best.gamma);
        report.put("best-x", &best.x);
        report.put(
            "breakpoints",
            best.breakpoints.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" "),
        );
        report.put("tight", best.z == crate::quadratic::QuadIrrational::from_rational(actual.clone()));
        let mut table = Table::new("sweep", &["gamma", "x", "z", "z_decimal"]);
        for p in &best.points {
            let decimal = match p.z.as_rational() {
                Some(q) => rational_decimal(q),
                None => p.z.to_decimal(crate::report::DECIMAL_DIGITS),
            };
            table.push(vec![p.gamma.to_string(), p.x.to_string(), p.z.to_string(), decimal]);
        }
        report.tables.insert(0, table);
    }
    emit(report, args.out.as_deref(), EXIT_OK)
}

/// Reads lines `index p/q`; unlisted components get weight 0.
fn read_weights(path: &Path, len: usize) -> Result<Weighting, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let mut weights = vec![Rational::from_integer(0.into()); len];
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Failure::usage(format!("{}: line {}: expected `index p/q`", path.display(), lineno + 1));
        let mut fields = line.split_whitespace();
        let (Some(i), Some(w), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(bad());
        };
        let i: usize = i.parse().map_err(|_| bad())?;
        let w = parse_rational(w).ok_or_else(bad)?;
        if i >= len {
            return Err(Failure::usage(format!(
                "{}: line {}: component {i} out of range ({len} components)",
                path.display(),
                lineno + 1
            )));
        }
        weights[i] = w;
    }
    Ok(Weighting::new(weights))
}

/// `"0,1,2"`, `"0-3"` or a mix such as `"0-2,7"`.
fn parse_vertex_set(text: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::usage(format!("bad vertex set `{text}`"));
    let mut out = Vec::new();
    for part in text.split(',').filter(|p| !p.is_empty()) {
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b): (usize, usize) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn classify(args: ClassifyArgs, echo: &str) -> Result<Outcome, Failure> {
    let mut report = Report::new(echo);
    let coloring = read_coloring(&args.file, &mut report)?;
    let decomp = decompose(&coloring);
    let mut found_all = true;
    let mut any = false;
    let list = |v: &[usize]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");

    if args.r3_case {
        any = true;
        let case = classify_r3(&decomp).map_err(Failure::usage)?;
        report.put("r3-case", case.tag());
        match &case {
            R3Case::OneComponent { color } => report.put("r3-color", *color),
            R3Case::TwoCover { components } => report.put("r3-witness", list(components)),
            R3Case::Unclassified => found_all = false,
            R3Case::TwoEach => {}
        }
    }
    if args.grid {
        any = true;
        match detect_gyarfas_grid(&decomp).map_err(Failure::usage)? {
            Some(grid) => {
                report.put("grid", "found");
                report.put("grid-row-color", grid.row_color);
                report.put("grid-col-color", grid.col_color);
                report.put("grid-rows", list(&grid.rows));
                report.put("grid-cols", list(&grid.cols));
                let mut table = Table::new("cells", &["row", "col", "vertices"]);
                for (i, row) in grid.cells.iter().enumerate() {
                    for (j, cell) in row.iter().enumerate() {
                        table.push(vec![i.to_string(), j.to_string(), list(cell)]);
                    }
                }
                report.tables.push(table);
            }
            None => {
                report.put("grid", "none");
                found_all = false;
            }
        }
    }
    if args.disjoint_pair {
        any = true;
        match detect_disjoint_pair(&decomp) {
            Some((a, b)) => report.put("disjoint-pair", format!("{a} {b}")),
            None => {
                report.put("disjoint-pair", "none");
                found_all = false;
            }
        }
    }
    if let Some(m) = args.spanning_cover {
        any = true;
        match find_spanning_cover(&decomp, m) {
            Some(cover) => report.put("spanning-cover", list(&cover)),
            None => {
                report.put("spanning-cover", "none");
                found_all = false;
            }
        }
    }
    if let Some(sides) = &args.bipartite {
        any = true;
        let a1 = parse_vertex_set(&sides[0])?;
        let a2 = parse_vertex_set(&sides[1])?;
        let colors = match &args.colors {
            Some(given) => {
                let parsed: Vec<usize> = given
                    .split(',')
                    .map(|c| c.trim().parse())
                    .collect::<Result<_, _>>()
                    .map_err(|_| Failure::usage(format!("bad --colors `{given}`")))?;
                match parsed[..] {
                    [c1, c2] => (c1, c2),
                    _ => return Err(Failure::usage("--colors takes exactly two colors")),
                }
            }
            None => infer_colors(&coloring, &a1, &a2)?,
        };
        let case = classify_bipartite(&coloring, &a1, &a2, colors, args.designated).map_err(Failure::usage)?;
        validate_certificate(&case, &a1, &a2).map_err(Failure::usage)?;
        report.put("bipartite-case", case.kind.to_string());
        report.put("bipartite-colors", format!("{} {}", colors.0, colors.1));
        let mut table = Table::new("certificate", &["color", "weight", "vertices"]);
        for part in &case.certificate {
            table.push(vec![part.color.to_string(), part.weight.to_string(), list(&part.vertices)]);
        }
        report.tables.push(table);
    }
    if !any {
        return Err(Failure::usage(
            "classify needs one of --r3-case, --grid, --disjoint-pair, --spanning-cover, --bipartite",
        ));
    }
    let code = if found_all { EXIT_OK } else { EXIT_NOT_FOUND };
    emit(report, args.out.as_deref(), code)
}

/// The colors used between `a1` and `a2`, padded with the smallest unused
/// color when only one appears.
fn infer_colors(coloring: &EdgeColoring, a1: &[usize], a2: &[usize]) -> Result<(usize, usize), Failure> {
    let mut used = Vec::new();
    for &u in a1 {
        for &v in a2 {
            if u >= coloring.n() || v >= coloring.n() || u == v {
                return Err(Failure::usage(format!("bad vertex pair ({u}, {v})")));
            }
            let c = coloring.color(u, v);
            if !used.contains(&c) {
                used.push(c);
            }
        }
    }
    used.sort_unstable();
    match used[..] {
        [c1, c2] => Ok((c1, c2)),
        [c] => {
            let other = (0..coloring.r())
                .find(|&d| d != c)
                .ok_or_else(|| Failure::usage("the bipartite classifier needs at least two colors"))?;
            Ok((c.min(other), c.max(other)))
        }
        _ => Err(Failure::usage(format!(
            "edges between the sides use {} colors; pass --colors",
            used.len()
        ))),
    }
}

fn search(args: SearchArgs, echo: &str) -> Result<Outcome, Failure> {
    let mut report = Report::new(echo);
    let mut config = SearchConfig::new(args.n, args.r).with_symmetry(args.symmetry);
    config.jobs = args.jobs;
    config.budget_nodes = args.budget_nodes;
    config.cutoff = !args.no_cutoff;
    let result = exact_m(&config)?;
    report.put("n", args.n);
    report.put("r", args.r);
    report.put("symmetry", args.symmetry.name());
    report.put("value", result.value);
    report.put("nodes", result.nodes);
    report.put("witness-nodes", result.witness_nodes);
    report.put("leaves", result.leaves);
    report.put("prefixes", result.prefixes);
    let text = result.witness.to_text();
    report.put("witness-sha256", crate::report::sha256_hex(text.as_bytes()));
    match &args.out {
        Some(path) => {
            write_file(path, &text)?;
            report.put("witness", path.display().to_string());
        }
        None => report.attachment = Some(text),
    }
    Ok(Outcome {
                report,
                code: EXIT_OK,
                quiet: false,
            })
}

fn verify(args: VerifyArgs, echo: &str) -> Result<Outcome, Failure> {
    let mut report = Report::new(echo);
    let mut config = ScanConfig {
        exhaustive: Vec::new(),
        seed: args.seed,
        ..ScanConfig::default()
    };
    for n in 2..=args.max_n {
        for r in 1..=args.max_r {
            config.exhaustive.push((n, r));
        }
    }
    if args.random > 0 {
        config.random.push(RandomBatch {
            n_min: args.random_n,
            n_max: args.random_n,
            r: args.random_r,
            colorings: args.random,
            subsets: args.subsets,
        });
    }
    let scan = scan_bound_soundness(&config)?;
    report.put("scan-colorings", scan.colorings);
    report.put("scan-subsets", scan.subsets);
    report.put("scan-equalities", scan.equalities);
    report.put("scan-lp-checks", scan.lp_checks);
    report.put("scan-lp-tight", scan.lp_tight);
    report.put("scan-r4-checks", scan.r4_checks);
    report.put("scan-r4-below-threshold", scan.r4_below_threshold);
    report.put("scan-grid-detected", scan.grid_detected);
    report.put("scan-violations", scan.violations.len());

    let lemma = verify_bipartite_lemma(args.bipartite_max, args.bipartite_max).map_err(Failure::usage)?;
    report.put("bipartite-colorings", lemma.total());
    report.put("bipartite-case-a1", lemma.case_a1);
    report.put("bipartite-case-a2", lemma.case_a2);
    report.put("bipartite-case-b", lemma.case_b);
    report.put("bipartite-case-c", lemma.case_c);
    report.put("bipartite-failures", lemma.failures.len());

    let mut table = Table::new("violations", &["source", "detail", "coloring"]);
    for v in &scan.violations {
        table.push(vec![
            "scan".into(),
            format!("{:?}", v.kind),
            v.coloring.to_text().trim_end().replace('\n', "; "),
        ]);
    }
    for (a, b, mask) in &lemma.failures {
        table.push(vec!["bipartite".into(), format!("K_{a},{b}"), format!("mask {mask}")]);
    }
    let clean = table.rows.is_empty();
    report.tables.push(table);
    emit(report, args.out.as_deref(), if clean { EXIT_OK } else { EXIT_NOT_FOUND })
}
