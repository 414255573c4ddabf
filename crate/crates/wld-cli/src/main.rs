//! `wld`: enumeration, per-diagram reports, pairwise equivalence, and
//! verification suites over Wilson loop diagrams, with machine-readable
//! (newline-delimited) JSON output.
//!
//! Exit codes: 0 success, 1 invalid input diagram, 2 parse error,
//! 3 violated invariant (from `wld verify`).

mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;
use wld::{
    count_nonparallel_faces, default_polygon, dissection_of, enumerate_weakly_admissible,
    equivalence_class, equivalence_class_size, equivalence_key, equivalent, exact_subdiagrams,
    matroid_of, secondary_vertex, Matroid, ParallelClass, WilsonLoopDiagram,
};

#[derive(Parser)]
#[command(name = "wld", version, about = "Wilson loop diagram toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Pretty-print JSON objects
    #[arg(long, global = true)]
    pretty: bool,
    /// Include wall-clock timings in reports (off by default so identical
    /// invocations stay byte-identical)
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Report admissibility, exact subdiagrams, and non-supporting vertices
    Check {
        /// Diagram JSON file; stdin when omitted or "-"
        file: Option<String>,
    },
    /// Emit the matroid of a weakly admissible diagram
    Matroid {
        file: Option<String>,
        /// Also list the flats (ground sets up to 12 elements)
        #[arg(long)]
        flats: bool,
    },
    /// Decide retriangulation equivalence of two diagrams
    Equiv { left: String, right: String },
    /// List the equivalence class of a diagram
    Class { file: Option<String> },
    /// Enumerate weakly admissible diagrams as newline-delimited JSON
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Keep only diagrams with exactly k propagators
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = Filter::All)]
        filter: Filter,
        /// Print only the count
        #[arg(long)]
        count_only: bool,
    },
    /// Run the verification suites at a given size
    Verify {
        #[arg(long)]
        n: usize,
        /// 1 = per-module invariants, 2 = + cross-module theorem suites,
        /// 3 = + seeded realization-oracle checks
        #[arg(long, default_value_t = 2)]
        level: u8,
        /// Seed for the level-3 randomized checks
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Associahedron face classes up to parallelism
    Assoc {
        #[arg(long)]
        n: usize,
        /// Also list each triangulation's secondary vertex
        #[arg(long)]
        vertices: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Filter {
    /// Every enumerated diagram (the enumeration domain is the weakly
    /// admissible diagrams, so this equals `weakly-admissible`)
    All,
    WeaklyAdmissible,
    Admissible,
    /// One lexicographically least representative per equivalence class
    ClassRepresentatives,
}

enum Failure {
    Invalid(String),
    Parse(String),
    Violation(String),
}

impl Failure {
    fn code(&self) -> ExitCode {
        match self {
            Failure::Invalid(_) => ExitCode::from(1),
            Failure::Parse(_) => ExitCode::from(2),
            Failure::Violation(_) => ExitCode::from(3),
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Parse(m) | Failure::Violation(m) => m,
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Invalid(e.to_string())
}

fn read_input(file: &Option<String>) -> Result<String, Failure> {
    read_path(file.as_deref().unwrap_or("-"))
}

fn read_path(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Parse(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::Parse(format!("reading {path}: {e}")))
    }
}

/// Syntax errors exit 2; structurally invalid diagrams exit 1.
fn parse_diagram(text: &str) -> Result<WilsonLoopDiagram, Failure> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Failure::Parse(format!("invalid JSON: {e}")))?;
    serde_json::from_value(value).map_err(|e| Failure::Invalid(format!("invalid diagram: {e}")))
}

fn emit<T: Serialize>(value: &T, pretty: bool) {
    use std::io::Write;
    let text = if pretty {
        serde_json::to_string_pretty(value).unwrap()
    } else {
        serde_json::to_string(value).unwrap()
    };
    // downstream consumers (head, grep -m) may close the pipe early
    if let Err(e) = writeln!(std::io::stdout(), "{text}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing output: {e}");
        std::process::exit(2);
    }
}

#[derive(Serialize)]
struct PieceReport {
    propagators: Vec<(usize, usize)>,
    support: Vec<usize>,
    trivial: bool,
}

#[derive(Serialize)]
struct CheckReport {
    command: &'static str,
    version: &'static str,
    n: usize,
    k: usize,
    weakly_admissible: bool,
    admissible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    non_supporting: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    maximal_exact_subdiagrams: Option<Vec<PieceReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_ms: Option<u128>,
}

fn cmd_check(file: &Option<String>, pretty: bool, timings: bool) -> Result<(), Failure> {
    let start = Instant::now();
    let d = parse_diagram(&read_input(file)?)?;
    let weakly = d.is_weakly_admissible();
    let pieces = if weakly {
        let sets = exact_subdiagrams(&d).map_err(invalid)?;
        Some(
            sets.iter()
                .map(|p| PieceReport {
                    propagators: d.props_in(p).iter().map(|q| q.pair()).collect(),
                    support: d.vertex_support(p).unwrap().to_vec(),
                    trivial: p.len() == 1 && d.vertex_support(p).unwrap().len() == 4,
                })
                .collect(),
        )
    } else {
        None
    };
    emit(
        &CheckReport {
            command: "check",
            version: env!("CARGO_PKG_VERSION"),
            n: d.n(),
            k: d.k(),
            weakly_admissible: weakly,
            admissible: d.is_admissible(),
            non_supporting: weakly.then(|| d.non_supporting().to_vec()),
            maximal_exact_subdiagrams: pieces,
            wall_ms: timings.then(|| start.elapsed().as_millis()),
        },
        pretty,
    );
    Ok(())
}

#[derive(Serialize)]
struct MatroidReport {
    command: &'static str,
    version: &'static str,
    #[serde(flatten)]
    matroid: Matroid,
    circuits: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    flats: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_ms: Option<u128>,
}

fn cmd_matroid(
    file: &Option<String>,
    flats: bool,
    pretty: bool,
    timings: bool,
) -> Result<(), Failure> {
    let start = Instant::now();
    let d = parse_diagram(&read_input(file)?)?;
    let m = matroid_of(&d).map_err(invalid)?;
    if flats && d.n() > 12 {
        return Err(Failure::Invalid(format!(
            "flat listing is limited to n <= 12, got n = {}",
            d.n()
        )));
    }
    emit(
        &MatroidReport {
            command: "matroid",
            version: env!("CARGO_PKG_VERSION"),
            circuits: m.circuits().iter().map(|c| c.to_vec()).collect(),
            flats: flats.then(|| m.flats().iter().map(|f| f.to_vec()).collect()),
            matroid: m,
            wall_ms: timings.then(|| start.elapsed().as_millis()),
        },
        pretty,
    );
    Ok(())
}

#[derive(Serialize)]
struct EquivReport {
    command: &'static str,
    version: &'static str,
    equivalent: bool,
    pieces_left: Vec<Vec<usize>>,
    pieces_right: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_ms: Option<u128>,
}

fn cmd_equiv(left: &str, right: &str, pretty: bool, timings: bool) -> Result<(), Failure> {
    let start = Instant::now();
    let d1 = parse_diagram(&read_path(left)?)?;
    let d2 = parse_diagram(&read_path(right)?)?;
    let verdict = equivalent(&d1, &d2).map_err(invalid)?;
    emit(
        &EquivReport {
            command: "equiv",
            version: env!("CARGO_PKG_VERSION"),
            equivalent: verdict,
            pieces_left: equivalence_key(&d1).map_err(invalid)?,
            pieces_right: equivalence_key(&d2).map_err(invalid)?,
            wall_ms: timings.then(|| start.elapsed().as_millis()),
        },
        pretty,
    );
    Ok(())
}

#[derive(Serialize)]
struct ClassReport {
    command: &'static str,
    version: &'static str,
    size: usize,
    formula: u128,
    members: Vec<WilsonLoopDiagram>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_ms: Option<u128>,
}

fn cmd_class(file: &Option<String>, pretty: bool, timings: bool) -> Result<(), Failure> {
    let start = Instant::now();
    let d = parse_diagram(&read_input(file)?)?;
    let members = equivalence_class(&d).map_err(invalid)?;
    emit(
        &ClassReport {
            command: "class",
            version: env!("CARGO_PKG_VERSION"),
            size: members.len(),
            formula: equivalence_class_size(&d).map_err(invalid)?,
            members,
            wall_ms: timings.then(|| start.elapsed().as_millis()),
        },
        pretty,
    );
    Ok(())
}

#[derive(Serialize)]
struct CountReport {
    command: &'static str,
    version: &'static str,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    filter: &'static str,
    count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_ms: Option<u128>,
}

fn cmd_enumerate(
    n: usize,
    k: Option<usize>,
    filter: Filter,
    count_only: bool,
    pretty: bool,
    timings: bool,
) -> Result<(), Failure> {
    let start = Instant::now();
    let mut diagrams = enumerate_weakly_admissible(n, k).map_err(invalid)?;
    let filter_name = match filter {
        Filter::All => "all",
        Filter::WeaklyAdmissible => "weakly-admissible",
        Filter::Admissible => "admissible",
        Filter::ClassRepresentatives => "class-representatives",
    };
    match filter {
        Filter::All | Filter::WeaklyAdmissible => {}
        Filter::Admissible => diagrams.retain(WilsonLoopDiagram::is_admissible),
        Filter::ClassRepresentatives => {
            let mut seen = std::collections::BTreeSet::new();
            diagrams.retain(|d| seen.insert(equivalence_key(d).unwrap()));
        }
    }
    if count_only {
        emit(
            &CountReport {
                command: "enumerate",
                version: env!("CARGO_PKG_VERSION"),
                n,
                k,
                filter: filter_name,
                count: diagrams.len(),
                wall_ms: timings.then(|| start.elapsed().as_millis()),
            },
            pretty,
        );
    } else {
        for d in &diagrams {
            emit(d, pretty);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyReport {
    command: &'static str,
    version: &'static str,
    n: usize,
    level: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    checks: Vec<verify::CheckResult>,
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_ms: Option<u128>,
}

fn cmd_verify(n: usize, level: u8, seed: u64, pretty: bool, timings: bool) -> Result<(), Failure> {
    let start = Instant::now();
    if !(1..=3).contains(&level) {
        return Err(Failure::Invalid(format!("level must be 1..=3, got {level}")));
    }
    let max_n = if level == 1 { 8 } else { 7 };
    if !(4..=max_n).contains(&n) {
        return Err(Failure::Invalid(format!(
            "verify level {level} supports 4 <= n <= {max_n}, got n = {n}"
        )));
    }
    let checks = verify::run(n, level, seed);
    let ok = checks.iter().all(|c| c.ok);
    emit(
        &VerifyReport {
            command: "verify",
            version: env!("CARGO_PKG_VERSION"),
            n,
            level,
            seed: (level >= 3).then_some(seed),
            ok,
            checks,
            wall_ms: timings.then(|| start.elapsed().as_millis()),
        },
        pretty,
    );
    if ok {
        Ok(())
    } else {
        Err(Failure::Violation("invariant violated; see report".into()))
    }
}

#[derive(Serialize)]
struct SecondaryVertexReport {
    triangulation: wld::PolygonDissection,
    coords: Vec<String>,
}

#[derive(Serialize)]
struct AssocReport {
    command: &'static str,
    version: &'static str,
    n: usize,
    classes: Vec<ParallelClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    secondary_vertices: Option<Vec<SecondaryVertexReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_ms: Option<u128>,
}

fn cmd_assoc(n: usize, vertices: bool, pretty: bool, timings: bool) -> Result<(), Failure> {
    let start = Instant::now();
    let classes = count_nonparallel_faces(n).map_err(invalid)?;
    let secondary_vertices = if vertices {
        let poly = default_polygon(n).map_err(invalid)?;
        let mut out = Vec::new();
        for d in enumerate_weakly_admissible(n, Some(n - 3)).map_err(invalid)? {
            let t = dissection_of(&d).map_err(invalid)?;
            let s = secondary_vertex(&poly, &t).map_err(invalid)?;
            out.push(SecondaryVertexReport {
                triangulation: t,
                coords: s.coords.iter().map(|c| c.to_string()).collect(),
            });
        }
        Some(out)
    } else {
        None
    };
    emit(
        &AssocReport {
            command: "assoc",
            version: env!("CARGO_PKG_VERSION"),
            n,
            classes,
            secondary_vertices,
            wall_ms: timings.then(|| start.elapsed().as_millis()),
        },
        pretty,
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Check { file } => cmd_check(file, cli.pretty, cli.timings),
        Command::Matroid { file, flats } => cmd_matroid(file, *flats, cli.pretty, cli.timings),
        Command::Equiv { left, right } => cmd_equiv(left, right, cli.pretty, cli.timings),
        Command::Class { file } => cmd_class(file, cli.pretty, cli.timings),
        Command::Enumerate { n, k, filter, count_only } => {
            cmd_enumerate(*n, *k, *filter, *count_only, cli.pretty, cli.timings)
        }
        Command::Verify { n, level, seed } => {
            cmd_verify(*n, *level, *seed, cli.pretty, cli.timings)
        }
        Command::Assoc { n, vertices } => cmd_assoc(*n, *vertices, cli.pretty, cli.timings),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            failure.code()
        }
    }
}
