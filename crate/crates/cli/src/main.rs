//! `matchmaps` — command-line front end for the planar-map toolkit.
//!
//! One binary, six subcommands: `validate`, `audit`, `embed`, `search`,
//! `render`, `oracle`. Exit codes are a stable contract:
//!
//! * `0` — success,
//! * `1` — domain failure (validation failed, no drawing found, a bound
//!   violated),
//! * `2` — input error (unreadable or malformed files, invalid flags),
//! * `3` — precondition violation (the analysis refused the input and named
//!   the condition).
//!
//! Wherever a map or coordinate file is expected, `catalog:<name>` addresses
//! a built-in instance instead. All outputs are deterministic given flags and
//! seed.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use matchmaps::audit::{audit, audit_drawing};
use matchmaps::charge::{local_config_oracle, ratio_string, ChargeMode, LocalConfigTable};
use matchmaps::embed::{EmbedOptions, EmbedStatus};
use matchmaps::geometry::{parse_coords, serialize_coords};
use matchmaps::map::parse_map;
use matchmaps::search::{run_pipeline, DegreeGoal, SearchSpec, MAX_EDGE_BUDGET};
use matchmaps::svg::{render_svg, SvgOptions};
use matchmaps::{catalog, Charge, EmbeddingProblem, GeometricMap, PlanarMap, DEFAULT_TOLERANCE};

/// Environment override for the default geometric tolerance.
const TOLERANCE_VAR: &str = "MATCHMAPS_TOLERANCE";
/// Environment override for the default search budget, in seconds.
const BUDGET_VAR: &str = "MATCHMAPS_BUDGET";

#[derive(Parser)]
#[command(
    name = "matchmaps",
    version,
    about = "Planar maps with unit-length straight edges: validate drawings, \
             audit charges, search for matchstick graphs",
    after_help = "Map and coordinate arguments accept either a file path or \
                  catalog:<name> for a built-in instance (try `matchmaps render \
                  catalog:hex-patch`). Environment: MATCHMAPS_TOLERANCE and \
                  MATCHMAPS_BUDGET override the defaults."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-readable text.
    #[default]
    Text,
    /// Stable-ordered JSON.
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Every vertex must have degree exactly 5.
    Exact5,
    /// Every vertex must have degree at least 5.
    Mindeg5,
}

impl From<ModeArg> for ChargeMode {
    fn from(m: ModeArg) -> ChargeMode {
        match m {
            ModeArg::Exact5 => ChargeMode::Exact5,
            ModeArg::Mindeg5 => ChargeMode::MinDeg5,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Check that a drawing realizes its map with unit matchsticks.
    Validate {
        /// Map file (or catalog:<name>).
        map: String,
        /// Coordinates file (or catalog:<name> for a built-in drawing).
        coords: String,
        /// Also require every vertex to have this degree.
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        tol: ToleranceArg,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run the charge audit and print the report as JSON.
    Audit {
        /// Map file (or catalog:<name>).
        map: String,
        /// Optional coordinates; with them, unsplit diamonds are detected
        /// before the minimum-degree analysis.
        coords: Option<String>,
        /// Degree regime to audit under.
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[command(flatten)]
        tol: ToleranceArg,
    },
    /// Search for a unit-distance drawing of a map.
    Embed {
        /// Map file (or catalog:<name>).
        map: String,
        /// Base RNG seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random restarts.
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        /// Iteration budget per restart.
        #[arg(long = "max-iterations", default_value_t = 5000)]
        max_iterations: usize,
        /// Convergence threshold on the largest edge-length error.
        #[arg(long, default_value_t = 1e-10)]
        target: f64,
        #[command(flatten)]
        tol: ToleranceArg,
        /// Write the coordinates here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also render the drawing to this SVG file.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Enumerate candidate maps and run the embed-validate-audit pipeline.
    Search {
        /// Target degree.
        #[arg(long)]
        k: usize,
        /// Ask for minimum degree k instead of exact regularity.
        #[arg(long = "min-degree", default_value_t = false)]
        min_degree: bool,
        /// Enumeration budget (at most 14 edges).
        #[arg(long = "max-edges", default_value_t = MAX_EDGE_BUDGET)]
        max_edges: usize,
        /// Time budget for the embedding phase, in seconds.
        #[arg(long)]
        budget: Option<f64>,
        /// Base RNG seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Render a drawing as a standalone SVG document.
    Render {
        /// Map file (or catalog:<name>).
        map: String,
        /// Coordinates file; defaults to the catalog entry's own drawing.
        coords: Option<String>,
        /// Label every vertex with its id.
        #[arg(long, default_value_t = false)]
        labels: bool,
        /// Write the SVG here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Exhaust the local charge configurations and confirm the share bounds.
    Oracle {
        /// Vertex degrees to cover (each between 5 and 7).
        #[arg(long, value_delimiter = ',', default_values_t = vec![5, 6, 7])]
        degrees: Vec<usize>,
        /// Largest face size to include (at least 5).
        #[arg(long, default_value_t = 10)]
        cap: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Args)]
struct ToleranceArg {
    /// Relative tolerance for geometric decisions.
    #[arg(long)]
    tolerance: Option<f64>,
}

/// A failure destined for standard error, with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Failure {
        Failure { code: 2, message: message.into() }
    }

    fn domain(message: impl Into<String>) -> Failure {
        Failure { code: 1, message: message.into() }
    }

    fn precondition(message: impl Into<String>) -> Failure {
        Failure { code: 3, message: message.into() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Validate { map, coords, k, tol, format } => {
            let tolerance = resolve_tolerance(tol.tolerance)?;
            let m = load_map(&map)?;
            let gm = load_drawing(&coords, m)?;
            let report = gm.validate(tolerance, k);
            match format {
                Format::Text => {
                    println!(
                        "checked {} edges at tolerance {}",
                        report.edges_checked, report.tolerance
                    );
                    for issue in &report.issues {
                        println!("issue: {issue}");
                    }
                    println!("result: {}", if report.passed() { "pass" } else { "fail" });
                }
                Format::Json => {
                    let issues: Vec<String> =
                        report.issues.iter().map(|i| i.to_string()).collect();
                    let doc = serde_json::json!({
                        "tolerance": report.tolerance,
                        "edges_checked": report.edges_checked,
                        "passed": report.passed(),
                        "issues": issues,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::domain(format!(
                    "validation failed with {} issue(s)",
                    report.issues.len()
                )))
            }
        }

        Cmd::Audit { map, coords, mode, tol } => {
            let tolerance = resolve_tolerance(tol.tolerance)?;
            let m = load_map(&map)?;
            let report = match coords {
                Some(c) => {
                    let gm = load_drawing(&c, m)?;
                    audit_drawing(&gm, mode.into(), tolerance)
                }
                None => audit(&m, mode.into()),
            }
            .map_err(|e| Failure::precondition(e.to_string()))?;
            println!("{}", report.to_json());
            if report.identities.iter().all(|i| i.pass) {
                Ok(())
            } else {
                Err(Failure::domain("a charge identity failed".to_string()))
            }
        }

        Cmd::Embed {
            map,
            seed,
            restarts,
            max_iterations,
            target,
            tol,
            output,
            svg,
            format,
        } => {
            let tolerance = resolve_tolerance(tol.tolerance)?;
            let m = load_map(&map)?;
            let opts = EmbedOptions {
                restarts,
                max_iters: max_iterations,
                target,
                validation_tolerance: tolerance,
                seed,
                ..EmbedOptions::default()
            };
            let result = EmbeddingProblem::with_options(m, opts).solve();
            let coords_text = result
                .drawing
                .as_ref()
                .map(|gm| serialize_coords(&gm.coord_pairs()));

            match format {
                Format::Text => {
                    println!("status: {}", result.status);
                    println!("restarts used: {}", result.restarts_used);
                    println!("iterations: {}", result.iterations);
                    println!("max edge error: {:e}", result.max_edge_error);
                    if let Some(v) = &result.validation {
                        println!(
                            "validation: {} ({} edges at tolerance {})",
                            if v.passed() { "pass" } else { "fail" },
                            v.edges_checked,
                            v.tolerance
                        );
                    }
                    if let (Some(text), None) = (&coords_text, &output) {
                        print!("{text}");
                    }
                }
                Format::Json => {
                    let coords_json = result.drawing.as_ref().map(|gm| {
                        gm.coord_pairs()
                            .into_iter()
                            .map(|(v, p)| (v.0.to_string(), vec![p.x, p.y]))
                            .collect::<std::collections::BTreeMap<_, _>>()
                    });
                    let doc = serde_json::json!({
                        "status": result.status.to_string(),
                        "restarts_used": result.restarts_used,
                        "iterations": result.iterations,
                        "max_edge_error": result.max_edge_error,
                        "validation_passed":
                            result.validation.as_ref().map(|v| v.passed()),
                        "coords": coords_json,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
            }

            if result.status != EmbedStatus::Converged {
                return Err(Failure::domain(format!(
                    "no realization found: {} after {} restarts (best edge error {:e}); \
                     absence of a drawing here is evidence, not proof",
                    result.status, result.restarts_used, result.max_edge_error
                )));
            }
            if let (Some(path), Some(text)) = (&output, &coords_text) {
                write_file(path, text)?;
            }
            if let Some(path) = &svg {
                let gm = result.drawing.as_ref().expect("converged runs carry a drawing");
                let doc = render_svg(gm, &SvgOptions::default());
                write_file(path, &doc)?;
            }
            Ok(())
        }

        Cmd::Search { k, min_degree, max_edges, budget, seed, format } => {
            let goal = if min_degree { DegreeGoal::MinDegree(k) } else { DegreeGoal::Regular(k) };
            let spec = SearchSpec {
                goal,
                max_edges,
                budget: resolve_budget(budget)?,
                seed,
            };
            let report = run_pipeline(&spec).map_err(|e| Failure::input(e.to_string()))?;
            match format {
                Format::Text => {
                    println!(
                        "goal: {} {}, max edges {}, seed {}",
                        report.goal, report.k, report.max_edges, report.seed
                    );
                    println!(
                        "candidates: {} (attempted {}, truncated: {})",
                        report.candidates,
                        report.attempted,
                        if report.truncated { "yes" } else { "no" }
                    );
                    println!("findings: {}", report.findings.len());
                    for f in &report.findings {
                        println!(
                            "  {} edges, {} vertices, residual {:e}",
                            f.edges, f.vertices, f.residual
                        );
                    }
                    if !report.audits.is_empty() {
                        println!("audits: {}", report.audits.len());
                        for (i, a) in report.audits.iter().enumerate() {
                            println!("  candidate {i}: {}", a.verdict);
                        }
                    }
                }
                Format::Json => println!("{}", report.to_json()),
            }
            Ok(())
        }

        Cmd::Render { map, coords, labels, output } => {
            let m = load_map(&map)?;
            let gm = match &coords {
                Some(c) => load_drawing(c, m)?,
                None => load_drawing(&map, m)?,
            };
            let doc = render_svg(&gm, &SvgOptions { labels, ..SvgOptions::default() });
            match &output {
                Some(path) => write_file(path, &doc)?,
                None => print!("{doc}"),
            }
            Ok(())
        }

        Cmd::Oracle { degrees, cap, format } => {
            if degrees.is_empty() {
                return Err(Failure::input("at least one degree is required".to_string()));
            }
            for &d in &degrees {
                if !(5..=7).contains(&d) {
                    return Err(Failure::input(format!(
                        "degree {d} is outside the analysis range 5..=7"
                    )));
                }
            }
            if cap < 5 {
                return Err(Failure::input(format!(
                    "face-size cap {cap} is too small: pentagons (size 5) must be included"
                )));
            }
            let table = local_config_oracle(&degrees, cap);
            match format {
                Format::Text => print!("{}", oracle_text(&table)),
                Format::Json => println!("{}", oracle_json(&table)),
            }
            if table.violations.is_empty() {
                Ok(())
            } else {
                Err(Failure::domain(format!(
                    "{} configuration(s) violate the published bounds",
                    table.violations.len()
                )))
            }
        }
    }
}

/// Flag value, else environment override, else the built-in default.
fn resolve_tolerance(flag: Option<f64>) -> Result<f64, Failure> {
    if let Some(t) = flag {
        return check_tolerance(t, "--tolerance");
    }
    match std::env::var(TOLERANCE_VAR) {
        Ok(raw) => {
            let t: f64 = raw
                .trim()
                .parse()
                .map_err(|_| Failure::input(format!("{TOLERANCE_VAR}={raw:?} is not a number")))?;
            check_tolerance(t, TOLERANCE_VAR)
        }
        Err(_) => Ok(DEFAULT_TOLERANCE),
    }
}

fn check_tolerance(t: f64, source: &str) -> Result<f64, Failure> {
    if t.is_finite() && t > 0.0 {
        Ok(t)
    } else {
        Err(Failure::input(format!("{source} must be a positive finite number, got {t}")))
    }
}

fn resolve_budget(flag: Option<f64>) -> Result<Duration, Failure> {
    let seconds = match flag {
        Some(s) => s,
        None => match std::env::var(BUDGET_VAR) {
            Ok(raw) => raw
                .trim()
                .parse()
                .map_err(|_| Failure::input(format!("{BUDGET_VAR}={raw:?} is not a number")))?,
            Err(_) => 60.0,
        },
    };
    if seconds.is_finite() && seconds >= 0.0 {
        Ok(Duration::from_secs_f64(seconds))
    } else {
        Err(Failure::input(format!(
            "the budget must be a non-negative number of seconds, got {seconds}"
        )))
    }
}

/// Loads a map from a file path or `catalog:<name>`.
fn load_map(source: &str) -> Result<PlanarMap, Failure> {
    if let Some(name) = source.strip_prefix("catalog:") {
        return Ok(catalog_entry(name)?.map);
    }
    let text = read_file(source)?;
    parse_map(&text).map_err(|e| Failure::input(format!("{source}: {e}")))
}

/// Loads coordinates from a file path or `catalog:<name>` and binds them to
/// the map.
fn load_drawing(source: &str, map: PlanarMap) -> Result<GeometricMap, Failure> {
    if let Some(name) = source.strip_prefix("catalog:") {
        let entry = catalog_entry(name)?;
        let pairs = entry.coords.ok_or_else(|| {
            Failure::input(format!(
                "catalog entry {name:?} has no built-in drawing; pass a coordinates file"
            ))
        })?;
        let pts: Vec<_> = pairs
            .iter()
            .map(|&(v, (x, y))| (v, matchmaps::geometry::Pt::new(x, y)))
            .collect();
        return GeometricMap::new(map, &pts).map_err(|e| Failure::input(e.to_string()));
    }
    let text = read_file(source)?;
    let pairs = parse_coords(&text).map_err(|e| Failure::input(format!("{source}: {e}")))?;
    GeometricMap::new(map, &pairs).map_err(|e| Failure::input(format!("{source}: {e}")))
}

fn catalog_entry(name: &str) -> Result<catalog::CatalogEntry, Failure> {
    catalog::entry(name).ok_or_else(|| {
        Failure::input(format!(
            "unknown catalog entry {name:?}; available: {}",
            catalog::names().join(", ")
        ))
    })
}

fn read_file(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{path}: {e}")))
}

fn write_file(path: &PathBuf, content: &str) -> Result<(), Failure> {
    std::fs::write(path, content)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn profile_string(profile: &std::collections::BTreeMap<usize, usize>) -> String {
    let mut sizes = Vec::new();
    for (&size, &count) in profile {
        for _ in 0..count {
            sizes.push(size.to_string());
        }
    }
    sizes.join(",")
}

/// The three published per-class ceilings on the per-pentagon share.
fn class_of(degree: usize, pentagons: usize) -> (&'static str, Charge) {
    if pentagons >= 2 {
        ("two or more pentagons", Charge::new(-1, 2))
    } else if degree >= 6 {
        ("one pentagon, degree 6 or 7", Charge::new(-4, 3))
    } else {
        ("one pentagon, degree 5", Charge::new(1, 3))
    }
}

fn oracle_text(table: &LocalConfigTable) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "degree  faces                share      bound");
    for c in &table.configs {
        let _ = writeln!(
            s,
            "{:<7} {:<20} {:<10} {}",
            c.degree,
            profile_string(&c.profile),
            ratio_string(c.share),
            ratio_string(c.bound)
        );
    }
    let mut maxima: std::collections::BTreeMap<&'static str, (Charge, Charge)> =
        std::collections::BTreeMap::new();
    for c in &table.configs {
        let pentagons = c.profile.get(&5).copied().unwrap_or(0);
        let (label, ceiling) = class_of(c.degree, pentagons);
        maxima
            .entry(label)
            .and_modify(|(best, _)| {
                if c.share > *best {
                    *best = c.share;
                }
            })
            .or_insert((c.share, ceiling));
    }
    let _ = writeln!(s, "{} configurations", table.configs.len());
    for (label, (best, ceiling)) in &maxima {
        let _ = writeln!(
            s,
            "largest share with {label}: {} (bound {})",
            ratio_string(*best),
            ratio_string(*ceiling)
        );
    }
    let _ = writeln!(s, "violations: {}", table.violations.len());
    s
}

fn oracle_json(table: &LocalConfigTable) -> String {
    let configs: Vec<serde_json::Value> = table
        .configs
        .iter()
        .map(|c| {
            serde_json::json!({
                "degree": c.degree,
                "profile": c.profile,
                "share": ratio_string(c.share),
                "bound": ratio_string(c.bound),
            })
        })
        .collect();
    let doc = serde_json::json!({
        "configs": configs,
        "violations": table.violations,
    });
    serde_json::to_string_pretty(&doc).unwrap()
}
