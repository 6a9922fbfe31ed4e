//! capgraph: structured graph families, exact and fractional invariants,
//! the Lovász function, and certified Shannon-capacity bounds.

mod config;
mod report;
mod reproduce;

use capgraph_core::capacity::{capacity_bounds, certify_unattainable};
use capgraph_core::error::Error as CoreError;
use capgraph_core::exact::render_significant;
use capgraph_core::expr::parse;
use capgraph_core::fractional;
use capgraph_core::invariants::{self, SearchOpts};
use capgraph_core::theta;
use capgraph_core::{io as graph_io, Graph};
use clap::{Parser, Subcommand, ValueEnum};
use config::{OutputFormat, RunConfig};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "capgraph",
    about = "Graph invariants and certified Shannon-capacity bounds",
    version
)]
struct Cli {
    /// Optional key=value configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output format: text, json or csv.
    #[arg(long, global = true, default_value = "text")]
    format: String,
    /// Directory for witness files (independent sets, weightings, spectra).
    #[arg(long, global = true)]
    emit_witness: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Invariant {
    Alpha,
    Omega,
    Chi,
    Cc,
    AlphaF,
    ChiF,
    Theta,
    ThetaPrime,
    Spectrum,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a graph invariant of an expression.
    Eval {
        expr: String,
        #[arg(long, value_enum)]
        invariant: Invariant,
    },
    /// Compute certified capacity bounds for an expression.
    Capacity {
        expr: String,
        /// Highest strong power used for alpha-root lower bounds.
        #[arg(long)]
        max_power: Option<u64>,
        /// Per-search time budget in seconds.
        #[arg(long)]
        budget: Option<f64>,
        /// Disable the built-in table of published cycle-power values.
        #[arg(long)]
        no_literature: bool,
    },
    /// Try to certify that the capacity is unattained at every finite power.
    Certify { expr: String },
    /// Re-run the reference-value suite.
    Reproduce {
        #[arg(long, default_value = "paper")]
        suite: String,
        /// Include the slow tier.
        #[arg(long)]
        slow: bool,
    },
    /// Convert between the DIMACS and JSON graph formats (by extension).
    Convert { input: PathBuf, output: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut config = RunConfig::default();
    if let Some(path) = &cli.config {
        if let Err(e) = config.apply_file(path) {
            eprintln!("error: config file: {e}");
            return ExitCode::from(1);
        }
    }
    if let Err(e) = config.apply_env() {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    match cli.format.parse() {
        Ok(f) => config.format = f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    if let Err(e) = config.validate() {
        eprintln!("error: invalid configuration: {e}");
        return ExitCode::from(1);
    }
    match run(cli, config) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match &e {
                CoreError::Parse { .. } | CoreError::Domain(_) => 2,
                CoreError::Resource { .. } => 3,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli, config: RunConfig) -> Result<ExitCode, CoreError> {
    match cli.command {
        Command::Eval { expr, invariant } => {
            cmd_eval(&expr, invariant, &config, cli.emit_witness.as_deref())
        }
        Command::Capacity {
            expr,
            max_power,
            budget,
            no_literature,
        } => {
            let mut config = config;
            if let Some(mp) = max_power {
                config.max_power = mp;
            }
            if let Some(b) = budget {
                config.alpha_budget_secs = b;
            }
            if no_literature {
                config.literature_constants = false;
            }
            cmd_capacity(&expr, &config)
        }
        Command::Certify { expr } => cmd_certify(&expr, &config),
        Command::Reproduce { suite, slow } => {
            if suite != "paper" {
                return Err(CoreError::Domain(format!("unknown suite {suite:?}")));
            }
            let mut config = config;
            config.slow = config.slow || slow;
            Ok(cmd_reproduce(&config))
        }
        Command::Convert { input, output } => {
            let g = graph_io::load_graph(&input)?;
            graph_io::save_graph(&g, &output)?;
            println!(
                "converted {} ({} vertices, {} edges) -> {}",
                input.display(),
                g.n(),
                g.edge_count(),
                output.display()
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn emit_witness(dir: Option<&std::path::Path>, name: &str, payload: &serde_json::Value) {
    let Some(dir) = dir else { return };
    if let Err(e) = std::fs::create_dir_all(dir) {
        eprintln!("warning: cannot create witness directory: {e}");
        return;
    }
    let path = dir.join(name);
    match serde_json::to_string_pretty(payload) {
        Ok(text) => {
            if let Err(e) = std::fs::write(&path, text) {
                eprintln!("warning: cannot write {}: {e}", path.display());
            }
        }
        Err(e) => eprintln!("warning: witness serialization failed: {e}"),
    }
}

fn cmd_eval(
    expr_src: &str,
    invariant: Invariant,
    config: &RunConfig,
    witness_dir: Option<&std::path::Path>,
) -> Result<ExitCode, CoreError> {
    let expr = parse(expr_src)?;
    let caps = config.caps();
    let g: Graph = expr.evaluate(&caps)?;
    let search = SearchOpts {
        budget: Some(std::time::Duration::from_secs_f64(config.alpha_budget_secs)),
    };
    let opts = config.capacity_opts();
    let theta_opts = config.theta_opts();
    let (name, payload) = match invariant {
        Invariant::Alpha => {
            let r = invariants::independence_number(&g, &search);
            emit_witness(
                witness_dir,
                "independent_set.json",
                &serde_json::to_value(&r.witness).unwrap(),
            );
            (
                "alpha",
                json!({"value": r.size, "optimal": r.optimal}),
            )
        }
        Invariant::Omega => {
            let r = invariants::clique_number(&g, &search);
            ("omega", json!({"value": r.size, "optimal": r.optimal}))
        }
        Invariant::Chi => {
            let r = invariants::chromatic_number(&g, opts.color_cap, &search)?;
            ("chi", json!({"value": r.count}))
        }
        Invariant::Cc => {
            let r = invariants::clique_cover_number(&g, opts.color_cap, &search)?;
            ("clique_cover", json!({"value": r.count}))
        }
        Invariant::AlphaF => {
            let r = fractional::fractional_independence_number(&g, opts.enum_cap)?;
            emit_witness(witness_dir, "fractional_cover.json", &r.cover_json());
            ("alpha_f", json!({"value": r.value.to_string()}))
        }
        Invariant::ChiF => {
            let r = fractional::fractional_chromatic_number(&g, opts.enum_cap)?;
            emit_witness(witness_dir, "fractional_cover.json", &r.cover_json());
            ("chi_f", json!({"value": r.value.to_string()}))
        }
        Invariant::Theta => {
            let r = theta::theta(&g, &theta_opts)?;
            (
                "theta",
                json!({
                    "value": render_significant(r.value, 7),
                    "render": r.exact.as_ref().map(|e| e.render()),
                    "method": r.method,
                    "dual_gap": r.dual_gap,
                }),
            )
        }
        Invariant::ThetaPrime => {
            let r = theta::schrijver_theta(&g, &theta_opts)?;
            (
                "theta_prime",
                json!({
                    "value": render_significant(r.value, 7),
                    "dual_gap": r.dual_gap,
                }),
            )
        }
        Invariant::Spectrum => {
            let s = invariants::spectrum(&g, 4096)?;
            emit_witness(
                witness_dir,
                "spectrum.json",
                &serde_json::to_value(&s).unwrap(),
            );
            (
                "spectrum",
                json!({
                    "value": s.largest(),
                    "smallest": s.smallest(),
                    "eigenvalues": s.eigenvalues,
                    "residual": s.residual,
                }),
            )
        }
    };
    match config.format {
        OutputFormat::Json => {
            let doc = report::with_timestamp(json!({
                "expr": expr_src,
                "invariant": name,
                "order": g.n(),
                "size": g.edge_count(),
                "result": payload,
            }));
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        OutputFormat::Csv => {
            println!("expr,invariant,value");
            let value = payload
                .get("value")
                .map(|v| v.to_string())
                .unwrap_or_default();
            println!("{expr_src},{name},{}", value.trim_matches('"'));
        }
        OutputFormat::Text => {
            let value = payload
                .get("value")
                .map(|v| v.to_string())
                .unwrap_or_default();
            println!("{name}({expr_src}) = {}", value.trim_matches('"'));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_capacity(expr_src: &str, config: &RunConfig) -> Result<ExitCode, CoreError> {
    let expr = parse(expr_src)?;
    let opts = config.capacity_opts();
    let b = capacity_bounds(&expr, &opts)?;
    match config.format {
        OutputFormat::Json => {
            let doc = report::with_timestamp(report::bounds_json(expr_src, &b));
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        OutputFormat::Csv => {
            println!("expr,lower,upper,exact");
            println!(
                "{expr_src},{},{},{}",
                render_significant(b.lower.value.to_f64(), 7),
                render_significant(b.upper.value.to_f64(), 7),
                b.exact
            );
        }
        OutputFormat::Text => print!("{}", report::bounds_text(expr_src, &b)),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_certify(expr_src: &str, config: &RunConfig) -> Result<ExitCode, CoreError> {
    let expr = parse(expr_src)?;
    let opts = config.capacity_opts();
    let cert = certify_unattainable(&expr, &opts)?;
    match config.format {
        OutputFormat::Json => {
            let doc = report::with_timestamp(json!({
                "expr": expr_src,
                "certificate": cert,
            }));
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        _ => match &cert {
            Some(c) => {
                println!("capacity of {expr_src} is not attained at any finite power");
                for r in &c.routes {
                    println!("  route {:?}:", r.route);
                    for f in &r.facts {
                        println!("    - {f}");
                    }
                }
            }
            None => println!("none"),
        },
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_reproduce(config: &RunConfig) -> ExitCode {
    let rows = reproduce::run_suite(config);
    let failures = rows.iter().filter(|r| !r.status).count();
    match config.format {
        OutputFormat::Json => {
            let doc = report::with_timestamp(json!({
                "suite": "paper",
                "rows": rows.iter().map(|r| json!({
                    "id": r.id,
                    "description": r.description,
                    "status": if r.status { "pass" } else { "fail" },
                    "detail": r.detail,
                })).collect::<Vec<_>>(),
                "failures": failures,
            }));
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        OutputFormat::Csv => {
            println!("id,status,detail");
            for r in &rows {
                println!(
                    "{},{},{}",
                    r.id,
                    if r.status { "pass" } else { "fail" },
                    r.detail.replace(',', ";")
                );
            }
        }
        OutputFormat::Text => {
            for r in &rows {
                println!(
                    "[{}] {:26} {} — {}",
                    if r.status { "pass" } else { "FAIL" },
                    r.id,
                    r.description,
                    r.detail
                );
            }
            println!("\n{} rows, {} failed", rows.len(), failures);
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
