//! Command-line front end.
//!
//! Exit status: `0` when every check passes, `2` when a check fails, `3`
//! when a resource cap is hit, `4` on a configuration error.

mod report;
mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use report::{Check, GroupCard, GroupSection, Report, SuiteSection, SCHEMA_VERSION};
pub use suites::Suite;

use crate::error::Error;
use crate::factorizations::CompositionType;
use crate::groups::{BuildOptions, GroupSpec, ReflectionGroup};
use crate::hurwitz::{class_multiset, factorisations_of_shape, orbit_decomposition, DEFAULT_ORBIT_CAP};
use crate::ncp::NcpLattice;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_CONFIG: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "ncpforge", version, about = "Exact verification of noncrossing-partition combinatorics")]
pub struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "NCPFORGE_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the catalog groups.
    Catalog {
        #[arg(long)]
        max_order: Option<u128>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run verification suites and write a report.
    Verify(VerifyArgs),
    /// Hurwitz orbit decomposition of factorisations of a given shape.
    Orbits {
        #[arg(long)]
        group: GroupSpec,
        /// Partition of the rank, e.g. `2,1`.
        #[arg(long)]
        shape: String,
        #[arg(long, default_value_t = DEFAULT_ORBIT_CAP)]
        orbit_cap: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    /// Group to verify (repeatable); defaults to the catalog.
    #[arg(long = "group")]
    pub groups: Vec<GroupSpec>,
    /// Suite to run (repeatable).
    #[arg(long = "suite", value_enum, default_value = "all")]
    pub suites: Vec<Suite>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = BuildOptions::default().order_cap)]
    pub order_cap: usize,
    #[arg(long, default_value_t = DEFAULT_ORBIT_CAP)]
    pub orbit_cap: usize,
    /// Largest multichain length for the Chapoton and multichain checks.
    #[arg(long, default_value_t = 6)]
    pub n_max: usize,
    /// Lift the order cap.
    #[arg(long)]
    pub allow_large: bool,
    /// Add wall-clock timings to the report; the output is then no longer
    /// reproducible byte for byte.
    #[arg(long)]
    pub timings: bool,
}

/// Parses arguments, runs the command, and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    match cli.threads {
        Some(0) => {
            let _ = writeln!(err, "error: --threads must be positive");
            return EXIT_CONFIG;
        }
        Some(k) => pool = pool.num_threads(k),
        None => {}
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_CONFIG;
        }
    };
    let (code, stdout, stderr) = pool.install(|| {
        let mut o = Vec::new();
        let mut e = Vec::new();
        let code = match cli.command {
            Command::Catalog { max_order, format } => cmd_catalog(max_order, format, &mut o),
            Command::Verify(args) => cmd_verify(&args, &mut o, &mut e),
            Command::Orbits {
                group,
                shape,
                orbit_cap,
                format,
            } => cmd_orbits(group, &shape, orbit_cap, format, &mut o, &mut e),
        };
        (code, o, e)
    });
    let _ = err.write_all(&stderr);
    match out.write_all(&stdout) {
        Ok(()) => code,
        Err(_) => EXIT_CONFIG,
    }
}

fn exit_for(e: &Error) -> i32 {
    match e {
        Error::OrderCapExceeded { .. } | Error::OrbitCapExceeded { .. } => EXIT_RESOURCE,
        Error::InvalidSpec(_) | Error::InvalidComposition(_) => EXIT_CONFIG,
        _ => EXIT_CHECK_FAILED,
    }
}

#[derive(Serialize)]
struct CatalogEntry {
    group: GroupSpec,
    rank: usize,
    order: u128,
    degrees: Vec<u32>,
    coxeter_number: u32,
    reflections: u64,
}

fn cmd_catalog(max_order: Option<u128>, format: Format, out: &mut dyn Write) -> i32 {
    let entries: Vec<CatalogEntry> = GroupSpec::default_catalog()
        .into_iter()
        .filter(|s| max_order.is_none_or(|m| s.order() <= m))
        .map(|s| CatalogEntry {
            group: s,
            rank: s.rank(),
            order: s.order(),
            degrees: s.degrees(),
            coxeter_number: s.coxeter_number(),
            reflections: s.reflection_count(),
        })
        .collect();
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&entries).expect("catalog serialises") + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["group", "rank", "order", "degrees", "coxeter_number", "reflections"])
                .expect("in-memory write");
            for e in &entries {
                let degrees: Vec<String> = e.degrees.iter().map(ToString::to_string).collect();
                w.write_record([
                    e.group.to_string(),
                    e.rank.to_string(),
                    e.order.to_string(),
                    degrees.join(" "),
                    e.coxeter_number.to_string(),
                    e.reflections.to_string(),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8")
        }
        Format::Text => entries
            .iter()
            .map(|e| {
                format!(
                    "{:<8} rank {} order {:<6} degrees {:?} h {}\n",
                    e.group.to_string(),
                    e.rank,
                    e.order,
                    e.degrees,
                    e.coxeter_number
                )
            })
            .collect(),
    };
    match out.write_all(text.as_bytes()) {
        Ok(()) => EXIT_OK,
        Err(_) => EXIT_CONFIG,
    }
}

fn selected_suites(args: &VerifyArgs) -> Vec<Suite> {
    let mut s: Vec<Suite> = if args.suites.contains(&Suite::All) {
        Suite::CONCRETE.to_vec()
    } else {
        args.suites.clone()
    };
    s.sort_unstable();
    s.dedup();
    s
}

/// Builds the report for `verify`. Resource caps abort the whole run.
pub fn build_report(args: &VerifyArgs) -> Result<Report, Error> {
    let suites = selected_suites(args);
    let order_cap = if args.allow_large { usize::MAX } else { args.order_cap };
    let groups: Vec<GroupSpec> = if args.groups.is_empty() {
        GroupSpec::default_catalog()
            .into_iter()
            .filter(|s| s.order() <= order_cap as u128)
            .collect()
    } else {
        args.groups.clone()
    };
    let opts = BuildOptions {
        order_cap,
        ..BuildOptions::default()
    };
    let mut sections = Vec::new();
    for spec in groups {
        let start = Instant::now();
        let w = ReflectionGroup::build_with(spec, &opts)?;
        let mut section = GroupSection {
            group: spec,
            card: Some(GroupCard::of(&w)),
            suites: Vec::new(),
            elapsed_ms: None,
        };
        match NcpLattice::build(&w) {
            Ok(l) => {
                let ctx = suites::Ctx::new(&l, args.n_max, args.orbit_cap);
                for &s in &suites {
                    section.suites.push(suites::run_suite(&ctx, s)?);
                }
            }
            Err(e) => {
                let mut b = report::SuiteBuilder::new(spec, "ncp");
                b.push("build", suites::catalan_of(w.degrees()), e.to_string(), false);
                section.suites.push(b.finish());
            }
        }
        if args.timings {
            section.elapsed_ms = Some(start.elapsed().as_millis());
        }
        sections.push(section);
    }
    let mut report = Report {
        schema_version: SCHEMA_VERSION,
        suites: suites.iter().map(|s| s.name()).collect(),
        n_max: args.n_max,
        groups: sections,
        pass: true,
    };
    let pass = report.checks().all(|c| c.pass);
    report.pass = pass;
    Ok(report)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if args.order_cap == 0 || args.orbit_cap == 0 || args.n_max == 0 {
        let _ = writeln!(err, "error: caps and --n-max must be positive");
        return EXIT_CONFIG;
    }
    let report = match build_report(args) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_for(&e);
        }
    };
    let text = match args.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    let written = match &args.output {
        Some(path) => std::fs::write(path, &text),
        None => out.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write report: {e}");
        return EXIT_CONFIG;
    }
    if report.pass {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

#[derive(Serialize)]
struct OrbitSummary {
    size: usize,
    /// Sorted conjugacy-class ids of the factors.
    classes: Vec<usize>,
    seed: String,
}

#[derive(Serialize)]
struct OrbitsReport {
    schema_version: u32,
    group: GroupSpec,
    shape: Vec<usize>,
    factorisations: usize,
    orbits: Vec<OrbitSummary>,
}

fn cmd_orbits(
    spec: GroupSpec,
    shape: &str,
    cap: usize,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let result = (|| -> Result<OrbitsReport, Error> {
        let shape: CompositionType = shape.parse()?;
        if shape.total() != spec.rank() {
            return Err(Error::InvalidComposition(format!(
                "shape {shape} does not sum to the rank {}",
                spec.rank()
            )));
        }
        let w = ReflectionGroup::build(spec)?;
        let l = NcpLattice::build(&w)?;
        let tuples = factorisations_of_shape(&l, &shape);
        let orbits = orbit_decomposition(&w, &tuples, cap)?;
        Ok(OrbitsReport {
            schema_version: SCHEMA_VERSION,
            group: spec,
            shape: shape.partition(),
            factorisations: tuples.len(),
            orbits: orbits
                .iter()
                .map(|o| OrbitSummary {
                    size: o.len(),
                    classes: class_multiset(&w, o.seed.factors()),
                    seed: o.seed.to_string(),
                })
                .collect(),
        })
    })();
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_for(&e);
        }
    };
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&report).expect("orbits serialise") + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["group", "orbit", "size", "classes"]).expect("in-memory write");
            for (i, o) in report.orbits.iter().enumerate() {
                let classes: Vec<String> = o.classes.iter().map(ToString::to_string).collect();
                w.write_record([report.group.to_string(), i.to_string(), o.size.to_string(), classes.join(" ")])
                    .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8")
        }
        Format::Text => {
            let mut s = format!(
                "{} shape {:?}: {} factorisations in {} orbits\n",
                report.group,
                report.shape,
                report.factorisations,
                report.orbits.len()
            );
            for o in &report.orbits {
                s += &format!("  size {:<6} classes {:?}\n", o.size, o.classes);
            }
            s
        }
    };
    match out.write_all(text.as_bytes()) {
        Ok(()) => EXIT_OK,
        Err(_) => EXIT_CONFIG,
    }
}
