//! The `grack` command line tool.
//!
//! Subcommands: `check` (validate an algebra file), `build` (emit a
//! groupoid rack built from simpler data), `color count` / `color enum`
//! (coloring counts of a diagram), `move apply` (rewrite a diagram at a
//! site), and `invariance` (run the bundled move-pair suite against an
//! algebra).
//!
//! Exit codes: 0 on success/valid, 1 when a check or operation fails
//! (violations printed on stdout), 2 on usage, I/O, or parse errors.
//! Results go to stdout, diagnostics to stderr; `--json` switches stdout to
//! a stable machine-readable form.

use crate::coloring::{count_colorings_oracle, count_colorings_threaded, enumerate_colorings};
use crate::constructions::{augmented_groupoid_rack, heap_rack, multiple_group_rack, rack_square};
use crate::corpus::{check_invariance, corpus, corpus_from_dir, MovePair};
use crate::diagram::{parse_diagram, serialize_diagram, Diagram};
use crate::group::check_group;
use crate::groupoid_rack::{check_groupoid_rack, GroupoidRack};
use crate::moves::{apply_move, MoveSite};
use crate::mutate::{corrupt_groupoid_rack, SplitMix64};
use crate::rack::{check_rack, check_symmetric_rack};
use crate::report::ValidationReport;
use crate::textfmt::{
    parse_algebra, parse_groupoid_rack, parse_rack, serialize_groupoid_rack, AlgebraInput,
};
use crate::universality::{check_universality_conditions, universality_construct};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "grack",
    version,
    about = "Finite groupoid racks and diagram coloring invariants"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the coloring solver; 1 guarantees deterministic
    /// enumeration order. Defaults to the available cores.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    parallel: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra file against its axioms.
    Check(CheckArgs),
    /// Build a groupoid rack and emit it in `groupoid-rack v1` format.
    Build {
        #[command(subcommand)]
        what: BuildCmd,
    },
    /// Count or enumerate colorings of a diagram.
    Color {
        #[command(subcommand)]
        what: ColorCmd,
    },
    /// Apply a Reidemeister or inverse move to a diagram.
    Move {
        #[command(subcommand)]
        what: MoveCmd,
    },
    /// Run the move-pair invariance suite against an algebra.
    Invariance(InvarianceArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Algebra file (any `* v1` header).
    #[arg(long)]
    algebra: PathBuf,
    /// Additionally corrupt this many random single cells and verify each
    /// corruption is detected (groupoid-rack files only).
    #[arg(long)]
    mutations: Option<usize>,
    /// Seed for the mutation sampler.
    #[arg(long, default_value_t = 20240817)]
    seed: u64,
}

#[derive(Subcommand)]
enum BuildCmd {
    /// Heap rack of a group: pairs under `(x,y)*(z,w) = (xz⁻¹w, yz⁻¹w)`.
    Heap {
        #[arg(long)]
        group: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Groupoid rack of a multiple group rack datum.
    Mgr {
        #[arg(long)]
        spec: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Groupoid rack of an augmented rack, for a fixed exponent and delta.
    Augmented {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        delta: u8,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reconstruct a groupoid rack from a symmetric rack with a partial
    /// product.
    Universal {
        #[arg(long)]
        spec: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Pair-groupoid rack on the square of a rack.
    RackSquare {
        #[arg(long)]
        rack: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ColorCmd {
    /// Print the number of colorings.
    Count {
        #[arg(long)]
        diagram: PathBuf,
        /// Algebra file in `groupoid-rack v1` format.
        #[arg(long)]
        algebra: PathBuf,
        /// Cross-check the solver against the brute-force oracle and fail
        /// on any mismatch.
        #[arg(long)]
        oracle: bool,
        /// Also print every coloring after the count.
        #[arg(long)]
        enumerate: bool,
    },
    /// Stream all colorings, one per line, in lexicographic order.
    Enum {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        algebra: PathBuf,
        /// Stop after this many colorings.
        #[arg(long)]
        limit: Option<usize>,
    },
}

#[derive(Subcommand)]
enum MoveCmd {
    /// Rewrite the diagram at a site, e.g. `--site "r5c forward 0"`.
    Apply {
        #[arg(long)]
        diagram: PathBuf,
        /// `<kind> <forward|backward> <ids...>`; see the manual for the
        /// anchor layout of each kind.
        #[arg(long)]
        site: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InvarianceArgs {
    /// Algebra file in `groupoid-rack v1` format.
    #[arg(long)]
    algebra: PathBuf,
    /// Corpus directory (one subdirectory per pair). Falls back to the
    /// GRACK_CORPUS environment variable, then to the bundled corpus.
    #[arg(long)]
    corpus: Option<PathBuf>,
}

/// Failures that map to exit codes: domain failures print to stdout and
/// exit 1; input failures print to stderr and exit 2.
enum Failure {
    Invalid(String),
    Input(String),
}

impl Failure {
    fn input(e: impl std::fmt::Display) -> Failure {
        Failure::Input(e.to_string())
    }
}

type CliResult = Result<i32, Failure>;

/// Entry point used by the `grack` binary.
pub fn run_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 0 for --help/--version and 2 for usage errors
            e.exit();
        }
    };
    let threads = cli
        .parallel
        .map(|p| p as usize)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let json = cli.json;
    let outcome = match cli.command {
        Command::Check(args) => cmd_check(args, json),
        Command::Build { what } => cmd_build(what, json),
        Command::Color { what } => cmd_color(what, json, threads),
        Command::Move { what } => cmd_move(what, json),
        Command::Invariance(args) => cmd_invariance(args, json, threads),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Invalid(msg)) => {
            println!("{msg}");
            1
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), Failure> {
    match path {
        Some(p) => {
            std::fs::write(p, content).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn load_groupoid_rack(path: &Path) -> Result<GroupoidRack, Failure> {
    let text = read_file(path)?;
    parse_groupoid_rack(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_diagram(path: &Path) -> Result<Diagram, Failure> {
    let text = read_file(path)?;
    parse_diagram(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn cmd_check(args: CheckArgs, json: bool) -> CliResult {
    let text = read_file(&args.algebra)?;
    let input = parse_algebra(&text)
        .map_err(|e| Failure::Input(format!("{}: {e}", args.algebra.display())))?;
    let report: ValidationReport = match &input {
        AlgebraInput::Rack(r) => check_rack(r),
        AlgebraInput::Group(g) => check_group(g),
        AlgebraInput::GroupoidRack(gr) => check_groupoid_rack(gr),
        AlgebraInput::Mgr(d) => match multiple_group_rack(d) {
            Ok(_) => ValidationReport::new(),
            Err(e) => {
                let mut rep = ValidationReport::new();
                rep.push("mgr.condition", vec![], e.to_string());
                rep
            }
        },
        AlgebraInput::Augmented(d) => crate::constructions::check_augmented_rack(d),
        AlgebraInput::Universal(d) => {
            let mut rep = check_symmetric_rack(&d.sym);
            rep.merge(check_universality_conditions(d));
            rep
        }
    };
    let mut mutation_failures = 0usize;
    let mut mutations_run = 0usize;
    if let Some(count) = args.mutations {
        let AlgebraInput::GroupoidRack(gr) = &input else {
            return Err(Failure::Input(
                "--mutations requires a groupoid-rack algebra file".into(),
            ));
        };
        if !report.is_valid() {
            return Err(Failure::Input(
                "--mutations requires a valid algebra to corrupt".into(),
            ));
        }
        let mut rng = SplitMix64::new(args.seed);
        for _ in 0..count {
            match corrupt_groupoid_rack(gr, &mut rng) {
                Some((bad, _site)) => {
                    mutations_run += 1;
                    if check_groupoid_rack(&bad).is_valid() {
                        mutation_failures += 1;
                    }
                }
                None => break,
            }
        }
    }
    let valid = report.is_valid() && mutation_failures == 0;
    if json {
        println!(
            "{}",
            json!({
                "algebra": args.algebra.display().to_string(),
                "kind": input.kind(),
                "valid": valid,
                "violations": report.total_violations(),
                "mutations_run": mutations_run,
                "mutations_undetected": mutation_failures,
            })
        );
    } else if valid {
        let mutated = if mutations_run > 0 {
            format!(" ({mutations_run} corruptions all detected)")
        } else {
            String::new()
        };
        println!(
            "{}: valid {}{}",
            args.algebra.display(),
            input.kind(),
            mutated
        );
    } else {
        println!("{}: INVALID {}", args.algebra.display(), input.kind());
        print!("{report}");
        if mutation_failures > 0 {
            println!("{mutation_failures} corruption(s) went undetected");
        }
    }
    Ok(if valid { 0 } else { 1 })
}

fn cmd_build(what: BuildCmd, _json: bool) -> CliResult {
    let (result, output) = match what {
        BuildCmd::Heap { group, output } => {
            let text = read_file(&group)?;
            let g = crate::textfmt::parse_group(&text)
                .map_err(|e| Failure::Input(format!("{}: {e}", group.display())))?;
            let report = check_group(&g);
            if !report.is_valid() {
                return Err(Failure::Invalid(format!(
                    "input group is invalid:\n{report}"
                )));
            }
            (Ok(heap_rack(&g)), output)
        }
        BuildCmd::Mgr { spec, output } => {
            let text = read_file(&spec)?;
            let d = crate::textfmt::parse_mgr(&text)
                .map_err(|e| Failure::Input(format!("{}: {e}", spec.display())))?;
            (multiple_group_rack(&d), output)
        }
        BuildCmd::Augmented {
            spec,
            n,
            delta,
            output,
        } => {
            let text = read_file(&spec)?;
            let d = crate::textfmt::parse_augmented(&text)
                .map_err(|e| Failure::Input(format!("{}: {e}", spec.display())))?;
            (augmented_groupoid_rack(&d, n, delta), output)
        }
        BuildCmd::Universal { spec, output } => {
            let text = read_file(&spec)?;
            let d = crate::textfmt::parse_universal(&text)
                .map_err(|e| Failure::Input(format!("{}: {e}", spec.display())))?;
            (universality_construct(&d).map(|c| c.groupoid_rack), output)
        }
        BuildCmd::RackSquare { rack, output } => {
            let text = read_file(&rack)?;
            let r = parse_rack(&text)
                .map_err(|e| Failure::Input(format!("{}: {e}", rack.display())))?;
            (rack_square(&r), output)
        }
    };
    let gr = result.map_err(|e| Failure::Invalid(e.to_string()))?;
    write_output(output.as_deref(), &serialize_groupoid_rack(&gr))?;
    Ok(0)
}

fn cmd_color(what: ColorCmd, json: bool, threads: usize) -> CliResult {
    match what {
        ColorCmd::Count {
            diagram,
            algebra,
            oracle,
            enumerate,
        } => {
            let d = load_diagram(&diagram)?;
            let x = load_groupoid_rack(&algebra)?;
            let start = Instant::now();
            let count = count_colorings_threaded(&d, &x, threads);
            let elapsed_ms = start.elapsed().as_millis() as u64;
            if oracle {
                let slow =
                    count_colorings_oracle(&d, &x).map_err(|e| Failure::Input(e.to_string()))?;
                if slow != count {
                    return Err(Failure::Invalid(format!(
                        "solver/oracle mismatch: solver={count} oracle={slow}"
                    )));
                }
            }
            if json {
                println!(
                    "{}",
                    json!({
                        "diagram": diagram.display().to_string(),
                        "algebra": algebra.display().to_string(),
                        "count": count.to_string(),
                        "elapsed_ms": elapsed_ms,
                    })
                );
            } else {
                println!("{count}");
            }
            if enumerate {
                for c in enumerate_colorings(&d, &x) {
                    println!("{}", format_coloring(&c.assignment));
                }
            }
            Ok(0)
        }
        ColorCmd::Enum {
            diagram,
            algebra,
            limit,
        } => {
            let d = load_diagram(&diagram)?;
            let x = load_groupoid_rack(&algebra)?;
            let limit = limit.unwrap_or(usize::MAX);
            for c in enumerate_colorings(&d, &x).take(limit) {
                println!("{}", format_coloring(&c.assignment));
            }
            Ok(0)
        }
    }
}

fn format_coloring(assignment: &[usize]) -> String {
    assignment
        .iter()
        .enumerate()
        .map(|(arc, m)| format!("a{arc}={m}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_move(what: MoveCmd, _json: bool) -> CliResult {
    let MoveCmd::Apply {
        diagram,
        site,
        output,
    } = what;
    let d = load_diagram(&diagram)?;
    let site = MoveSite::parse(&site).map_err(Failure::Input)?;
    let out = apply_move(&d, &site).map_err(|e| Failure::Invalid(e.to_string()))?;
    write_output(output.as_deref(), &serialize_diagram(&out.diagram))?;
    Ok(0)
}

fn cmd_invariance(args: InvarianceArgs, json: bool, threads: usize) -> CliResult {
    let x = load_groupoid_rack(&args.algebra)?;
    let pairs: Vec<MovePair> = match args
        .corpus
        .or_else(|| std::env::var_os("GRACK_CORPUS").map(PathBuf::from))
    {
        Some(dir) => corpus_from_dir(&dir).map_err(Failure::input)?,
        None => corpus(),
    };
    let _ = threads; // counts here are small; the solver is run sequentially
    let mut all_ok = true;
    let mut rows = Vec::new();
    for pair in &pairs {
        let outcome = check_invariance(pair, &x);
        all_ok &= outcome.passed();
        rows.push((pair, outcome));
    }
    if json {
        let entries: Vec<_> = rows
            .iter()
            .map(|(pair, o)| {
                json!({
                    "pair": pair.name,
                    "kind": pair.kind.name(),
                    "before_count": o.before_count.to_string(),
                    "after_count": o.after_count.to_string(),
                    "boundary_equal": o.boundary_equal,
                    "pass": o.passed(),
                })
            })
            .collect();
        println!(
            "{}",
            json!({
                "algebra": args.algebra.display().to_string(),
                "pairs": entries,
                "pass": all_ok,
            })
        );
    } else {
        println!(
            "{:<12} {:<10} {:>12} {:>12} {:>9} {:>6}",
            "pair", "kind", "before", "after", "boundary", ""
        );
        for (pair, o) in &rows {
            println!(
                "{:<12} {:<10} {:>12} {:>12} {:>9} {:>6}",
                pair.name,
                pair.kind.name(),
                o.before_count.to_string(),
                o.after_count.to_string(),
                if o.boundary_equal { "ok" } else { "MISMATCH" },
                if o.passed() { "PASS" } else { "FAIL" },
            );
        }
    }
    Ok(if all_ok { 0 } else { 1 })
}
