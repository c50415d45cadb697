use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use symtriad::orbit::classify_with_tol;
use symtriad::report::{
    check_austere_quarter_points, check_examples, reproduce_table, table_ids, CheckReport, TableReport,
};
use symtriad::solver::{enumerate_minimal_orbits, SolverOptions};
use symtriad::svg::emit_cell_svg;
use symtriad::triad::{catalog_entries, lookup, SymmetricTriad};

// stdout may be a closed pipe (e.g. `| head`); output errors are ignored
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(name = "symtriad", version, about = "Orbit geometry of Hermann actions from symmetric triads")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Absolute tolerance for numeric comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Solve faces in parallel.
    #[arg(long, global = true)]
    parallel: bool,
    /// Include solver diagnostics.
    #[arg(long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Browse the built-in catalog.
    Triads {
        #[command(subcommand)]
        action: TriadsAction,
    },
    /// Classify the orbit through one point.
    Analyze {
        /// Catalog slug, catalog name, or path to a triad JSON file.
        triad: String,
        /// Simple-root values, e.g. "pi/3,-pi/6" or "0.1,0.2".
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// Find every minimal orbit by solving each face of the cell.
    Minimal { triad: String },
    /// Check the built-in regression data.
    Verify {
        /// Tables to reproduce (all when no id is given).
        #[arg(long, num_args = 0.., value_name = "ID")]
        tables: Option<Vec<u8>>,
        /// Austere quarter points of the equal-multiplicity triads.
        #[arg(long)]
        prop41: bool,
        /// Worked examples up to this n.
        #[arg(long, value_name = "N")]
        examples: Option<usize>,
        /// Everything, with examples up to n = 3.
        #[arg(long)]
        all: bool,
    },
    /// Draw a rank-2 cell as SVG, marking its minimal orbits.
    Figure {
        triad: String,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Draw the outline only.
        #[arg(long)]
        bare: bool,
    },
}

#[derive(Subcommand)]
enum TriadsAction {
    List,
    Show { name: String },
}

/// Bad input from the user; exits with status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(e: impl ToString) -> anyhow::Error {
    anyhow!(Usage(e.to_string()))
}

fn load_triad(src: &str) -> anyhow::Result<SymmetricTriad> {
    let p = Path::new(src);
    if p.is_file() {
        let text = std::fs::read_to_string(p).with_context(|| format!("reading {src}"))?;
        return SymmetricTriad::from_json(&text).map_err(usage);
    }
    lookup(src).map(|e| e.triad).map_err(usage)
}

fn print_value(v: &Value) {
    outln!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

/// Returns whether every check passed.
fn run(cli: &Cli) -> anyhow::Result<bool> {
    if !(cli.tol > 0.0) {
        return Err(usage("--tol must be positive"));
    }
    let opts = SolverOptions { tol: cli.tol, parallel: cli.parallel, ..SolverOptions::default() };
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Triads { action: TriadsAction::List } => {
            let entries = catalog_entries();
            if json {
                print_value(&Value::Array(
                    entries
                        .iter()
                        .map(|e| json!({"slug": e.slug, "name": e.triad.name, "rank": e.triad.rank, "ambient_dim": e.triad.ambient_dim}))
                        .collect(),
                ));
            } else {
                for e in &entries {
                    outln!("{:<20} {}", e.slug, e.triad.name);
                }
            }
        }
        Command::Triads { action: TriadsAction::Show { name } } => {
            let t = load_triad(name)?;
            if json {
                print_value(&serde_json::from_str(&t.to_json())?);
            } else {
                outln!("{}", t.name);
                outln!("rank {}, ambient dim {}", t.rank, t.ambient_dim.map_or("-".into(), |d| d.to_string()));
                for r in &t.roots {
                    outln!("  {:<10} mV {:<2} mH {}", r.root.to_string(), r.m_v, r.m_h);
                }
            }
        }
        Command::Analyze { triad, z } => {
            let t = load_triad(triad)?;
            let z = t.parse_point(z).map_err(usage)?;
            let r = classify_with_tol(&t, &z, cli.tol);
            if json {
                print_value(&r.to_json());
            } else {
                out!("{}", r.to_text());
            }
        }
        Command::Minimal { triad } => {
            let t = load_triad(triad)?;
            let set = enumerate_minimal_orbits(&t, &opts)?;
            if json {
                print_value(&set.to_json(cli.verbose));
            } else {
                out!("{}", set.to_text(cli.verbose));
            }
        }
        Command::Verify { tables, prop41, examples, all } => {
            let nothing = tables.is_none() && !prop41 && examples.is_none();
            let all = *all || nothing;
            let table_list: Vec<u8> = match tables {
                Some(ids) if !ids.is_empty() => ids.clone(),
                Some(_) => table_ids().collect(),
                None if all => table_ids().collect(),
                None => Vec::new(),
            };
            let mut reports: Vec<TableReport> = Vec::new();
            for id in table_list {
                reports.push(reproduce_table(id, &opts).ok_or_else(|| usage(format!("no table {id}")))?);
            }
            let mut checks: Vec<CheckReport> = Vec::new();
            if *prop41 || all {
                checks.push(check_austere_quarter_points(cli.tol));
            }
            if let Some(n) = examples.or(all.then_some(3)) {
                checks.push(check_examples(n, cli.tol));
            }
            let ok = reports.iter().all(TableReport::all_pass) && checks.iter().all(CheckReport::all_pass);
            let (passed, total) = reports.iter().fold((0, 0), |(p, n), r| (p + r.passed(), n + r.rows.len()));
            if json {
                print_value(&json!({
                    "tables": reports.iter().map(TableReport::to_json).collect::<Vec<_>>(),
                    "checks": checks.iter().map(CheckReport::to_json).collect::<Vec<_>>(),
                    "rows_passed": passed,
                    "rows_total": total,
                    "pass": ok,
                }));
            } else {
                for r in &reports {
                    out!("{}", r.to_text());
                }
                for c in &checks {
                    out!("{}", c.to_text());
                }
                if !reports.is_empty() {
                    outln!("table rows: {passed}/{total} pass");
                }
                outln!("{}", if ok { "PASS" } else { "FAIL" });
            }
            return Ok(ok);
        }
        Command::Figure { triad, output, bare } => {
            let t = load_triad(triad)?;
            if t.rank != 2 {
                return Err(usage(format!("figures need a rank-2 triad, {} has rank {}", t.name, t.rank)));
            }
            let marks = if *bare {
                Vec::new()
            } else {
                enumerate_minimal_orbits(&t, &opts)?
                    .solutions
                    .into_iter()
                    .map(|s| (s.point.pretty(), s.point))
                    .collect()
            };
            let svg = emit_cell_svg(&t, &marks)?;
            match output {
                Some(p) => std::fs::write(p, svg).with_context(|| format!("writing {}", p.display()))?,
                None => out!("{svg}"),
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
