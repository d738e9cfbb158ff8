//! `unitdist` command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 computation error. Errors go to
//! stderr as `error[CODE]: message`.

use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use unitdist::catalog::{self, minkowski_sum};
use unitdist::claims::{self, ClaimsConfig};
use unitdist::graph::{from_dimacs, from_json, to_dimacs, to_json};
use unitdist::plane::{HexScheme, RatPoint};
use unitdist::solver::{chromatic_number_with, to_cnf, SolveOptions};
use unitdist::{degeneracy, greedy_degeneracy_coloring, parse_rat, pyth_unit_vector, UdGraph};

#[derive(Parser, Debug)]
#[command(name = "unitdist", version, about = "Exact workbench for unit-distance graphs")]
struct Cli {
    /// Seed for every randomized computation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the solver's parallel mode (answers are unchanged).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List or show the named graphs.
    Catalog {
        #[command(subcommand)]
        action: CatalogCmd,
    },
    /// Exact chromatic number with a witness coloring.
    Chromatic {
        graph: String,
        /// Abort the search after this many nodes.
        #[arg(long)]
        node_limit: Option<u64>,
    },
    /// Degeneracy, minimum degree and elimination order.
    Degeneracy { graph: String },
    /// Minkowski sum of a named graph with one or two Pythagorean unit vectors.
    Product {
        name: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, allow_hyphen_values = true)]
        t2: Option<String>,
    },
    /// Evaluate the claim verdicts.
    Claims {
        #[command(subcommand)]
        action: ClaimsCmd,
    },
    /// Hexagonal 7-coloring: color a point, or `verify` by sampling.
    #[command(args_conflicts_with_subcommands = true, allow_negative_numbers = true)]
    Hexcolor(HexArgs),
    /// 2-coloring of the rational plane; coordinates as `p/q`.
    Ratcolor {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Write a named graph as DIMACS, JSON, or the k-coloring CNF.
    Export {
        name: String,
        #[arg(long, value_enum)]
        format: ExportFormat,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Read a DIMACS or JSON graph file and print it as JSON.
    Import {
        file: String,
        #[arg(long, value_enum)]
        format: Option<ImportFormat>,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    List,
    Show { name: String },
}

#[derive(Subcommand, Debug)]
enum ClaimsCmd {
    Run {
        #[arg(long)]
        id: Option<String>,
        /// Unit pairs sampled for the hexagonal coloring claim.
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
    },
}

#[derive(Args, Debug)]
struct HexArgs {
    #[command(subcommand)]
    action: Option<HexCmd>,
    x: Option<f64>,
    y: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum HexCmd {
    Verify {
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ExportFormat {
    Dimacs,
    Json,
    Cnf,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ImportFormat {
    Dimacs,
    Json,
}

enum Failure {
    Usage(String, String),
    Compute(String, String),
}

impl Failure {
    fn usage(code: &str, msg: impl ToString) -> Self {
        Failure::Usage(code.to_string(), msg.to_string())
    }
    fn compute(code: &str, msg: impl ToString) -> Self {
        Failure::Compute(code.to_string(), msg.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("error[E_USAGE]: {e}");
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(code, msg)) => {
            eprintln!("error[{code}]: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Compute(code, msg)) => {
            eprintln!("error[{code}]: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Named graphs first, then files (`.json` or `{`-prefixed content is JSON,
/// anything else DIMACS).
fn resolve_graph(arg: &str) -> Result<UdGraph, Failure> {
    if let Ok(g) = catalog::lookup(arg) {
        return Ok(g);
    }
    if !Path::new(arg).exists() {
        return Err(Failure::usage(
            "E_UNKNOWN_GRAPH",
            format!("{arg:?} is neither a catalog name nor a file"),
        ));
    }
    read_graph(arg, None)
}

fn read_graph(path: &str, format: Option<ImportFormat>) -> Result<UdGraph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::compute("E_IO", e))?;
    let format = format.unwrap_or(
        if path.ends_with(".json") || text.trim_start().starts_with('{') {
            ImportFormat::Json
        } else {
            ImportFormat::Dimacs
        },
    );
    let parsed = match format {
        ImportFormat::Json => from_json(&text),
        ImportFormat::Dimacs => from_dimacs(&text),
    };
    parsed.map_err(|e| Failure::compute(e.code(), e))
}

fn named(name: &str) -> Result<UdGraph, Failure> {
    catalog::lookup(name).map_err(|e| Failure::usage(e.code(), e))
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let mut out = String::new();
    match &cli.command {
        Command::Catalog { action } => match action {
            CatalogCmd::List => {
                let rows: Vec<(&str, UdGraph)> = catalog::NAMES
                    .iter()
                    .map(|n| (*n, catalog::lookup(n).expect("catalog name")))
                    .collect();
                if cli.json {
                    let v: Vec<_> = rows
                        .iter()
                        .map(|(n, g)| json!({"name": n, "n": g.n(), "edges": g.edge_count()}))
                        .collect();
                    out = pretty(&json!(v));
                } else {
                    for (n, g) in rows {
                        writeln!(out, "{n} {} {}", g.n(), g.edge_count()).unwrap();
                    }
                }
            }
            CatalogCmd::Show { name } => out = to_json(&named(name)?),
        },
        Command::Chromatic { graph, node_limit } => {
            let g = resolve_graph(graph)?;
            let opts = SolveOptions {
                node_limit: *node_limit,
                threads: cli.threads,
            };
            let r = chromatic_number_with(&g, &opts).map_err(|e| Failure::compute(e.code(), e))?;
            if cli.json {
                out = pretty(&json!({
                    "graph": graph,
                    "chromatic_number": r.chromatic_number,
                    "witness": r.witness.colors,
                    "canonical": r.infeasibility.as_ref().is_none_or(|a| a.canonical),
                    "infeasibility_nodes": r.infeasibility.as_ref().map(|a| a.nodes_explored),
                    "nodes_explored": r.nodes_explored,
                }));
            } else {
                writeln!(out, "chromatic_number {}", r.chromatic_number).unwrap();
                writeln!(out, "witness {}", join(&r.witness.colors)).unwrap();
                writeln!(out, "nodes_explored {}", r.nodes_explored).unwrap();
            }
        }
        Command::Degeneracy { graph } => {
            let g = resolve_graph(graph)?;
            let d = degeneracy(&g);
            let greedy = greedy_degeneracy_coloring(&g);
            if cli.json {
                out = pretty(&json!({
                    "graph": graph,
                    "n": g.n(),
                    "edges": g.edge_count(),
                    "min_degree": d.min_degree,
                    "degeneracy": d.degeneracy,
                    "elimination_order": d.elimination_order,
                    "greedy_colors": greedy.used(),
                }));
            } else {
                writeln!(out, "n {}", g.n()).unwrap();
                writeln!(out, "edges {}", g.edge_count()).unwrap();
                writeln!(out, "min_degree {}", d.min_degree).unwrap();
                writeln!(out, "degeneracy {}", d.degeneracy).unwrap();
                writeln!(out, "elimination_order {}", join(&d.elimination_order)).unwrap();
                writeln!(out, "greedy_colors {}", greedy.used()).unwrap();
            }
        }
        Command::Product { name, t, t2 } => {
            let mut g = named(name)?;
            for t in std::iter::once(t).chain(t2) {
                let t = parse_rat(t).map_err(|e| Failure::usage(e.code(), e))?;
                g = minkowski_sum(&g, &pyth_unit_vector(&t))
                    .map_err(|e| Failure::compute(e.code(), e))?;
            }
            if cli.json {
                out = to_json(&g);
            } else {
                let d = degeneracy(&g);
                writeln!(out, "n {}", g.n()).unwrap();
                writeln!(out, "edges {}", g.edge_count()).unwrap();
                writeln!(out, "min_degree {}", d.min_degree).unwrap();
                writeln!(out, "degeneracy {}", d.degeneracy).unwrap();
            }
        }
        Command::Claims { action } => {
            let ClaimsCmd::Run { id, samples } = action;
            let cfg = ClaimsConfig {
                seed: cli.seed,
                hex_samples: *samples,
            };
            let report = match id {
                Some(id) => {
                    claims::evaluate_one(id, &cfg).map_err(|e| Failure::usage(e.code(), e))?
                }
                None => claims::evaluate_all(&cfg),
            };
            let issues = claims::check_consistency(&report);
            if !issues.is_empty() {
                return Err(Failure::compute("E_INCONSISTENT", issues.join("; ")));
            }
            if cli.json {
                out = pretty(&serde_json::to_value(&report).expect("report serializes"));
            } else {
                for c in &report.claims {
                    write!(out, "{} {}", c.id, c.verdict.as_str()).unwrap();
                    if let Some(p) = c.proof_status {
                        write!(out, " proof-status={}", p.as_str()).unwrap();
                    }
                    writeln!(out, " :: {}", c.statement).unwrap();
                    for (k, v) in &c.instances {
                        writeln!(out, "  instance {k} {}", v.as_str()).unwrap();
                    }
                    if let Some(a) = &c.annotation {
                        writeln!(out, "  note: {a}").unwrap();
                    }
                }
                for o in &report.out_of_scope {
                    writeln!(out, "{} OUT_OF_SCOPE :: {}", o.id, o.statement).unwrap();
                }
                writeln!(out, "note: {}", report.note).unwrap();
            }
        }
        Command::Hexcolor(args) => {
            let scheme = HexScheme::canonical();
            match (&args.action, args.x, args.y) {
                (Some(HexCmd::Verify { samples }), _, _) => {
                    let report = scheme.verify(*samples, cli.seed);
                    out = pretty(&serde_json::to_value(&report).expect("report serializes"));
                }
                (None, Some(x), Some(y)) => {
                    let cell = scheme.cell(x, y).map_err(|e| Failure::usage(e.code(), e))?;
                    let color = scheme.color(x, y).map_err(|e| Failure::usage(e.code(), e))?;
                    if cli.json {
                        out = pretty(&json!({"x": x, "y": y, "cell": [cell.0, cell.1], "color": color}));
                    } else {
                        writeln!(out, "{color}").unwrap();
                    }
                }
                _ => {
                    return Err(Failure::usage(
                        "E_USAGE",
                        "expected `hexcolor <x> <y>` or `hexcolor verify --samples N`",
                    ))
                }
            }
        }
        Command::Ratcolor { x, y } => {
            let px = parse_rat(x).map_err(|e| Failure::usage(e.code(), e))?;
            let py = parse_rat(y).map_err(|e| Failure::usage(e.code(), e))?;
            let p = RatPoint::new(px, py);
            let color = unitdist::rational2_color(&p);
            if cli.json {
                out = pretty(&json!({"x": p.x.to_string(), "y": p.y.to_string(), "color": color}));
            } else {
                writeln!(out, "{color}").unwrap();
            }
        }
        Command::Export { name, format, k } => {
            let g = resolve_graph(name)?;
            out = match format {
                ExportFormat::Dimacs => to_dimacs(&g),
                ExportFormat::Json => to_json(&g),
                ExportFormat::Cnf => {
                    let k = k.ok_or_else(|| {
                        Failure::usage("E_USAGE", "--k is required for --format cnf")
                    })?;
                    to_cnf(&g, k)
                }
            };
        }
        Command::Import { file, format } => {
            out = to_json(&read_graph(file, *format)?);
        }
    }
    Ok(out)
}
