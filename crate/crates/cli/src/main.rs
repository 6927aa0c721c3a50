use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use cubic_meta::bottleneck::{jcycle_bottleneck, theorem11_pipeline};
use cubic_meta::cubic::{enumerate_labelled, enumerate_unlabelled, EnumCaps};
use cubic_meta::experiments::{self, Assertion, CsvRow, Format, Report, SCHEMA};
use cubic_meta::spectral::{graph_spectrum, Vectors};
use cubic_meta::{randreg, MetaGraph, Mode};

#[derive(Parser)]
#[command(
    name = "cubic-meta",
    version,
    about = "Whitehead-move meta-graphs of cubic multigraphs"
)]
struct Cli {
    /// Seed for randomized steps.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// json or csv.
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Raise both enumeration caps to this order.
    #[arg(long, global = true)]
    cap_override: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List cubic graphs of order n, one per line.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "unlabelled")]
        mode: Mode,
    },
    /// Build a meta-graph and save it (requires --out).
    BuildMeta {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "unlabelled")]
        mode: Mode,
        /// Also write the degree histogram as CSV here.
        #[arg(long)]
        histogram: Option<PathBuf>,
    },
    /// Laplacian spectrum of a saved meta-graph.
    Spectrum {
        #[arg(long)]
        meta: PathBuf,
        /// Report only the k smallest eigenvalues.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        vectors: bool,
    },
    /// j-cycle bottleneck of a saved meta-graph.
    Bottleneck {
        #[arg(long)]
        meta: PathBuf,
        #[arg(long)]
        j: usize,
    },
    /// Many-small-eigenvalues pipeline on a saved meta-graph.
    Pipeline {
        #[arg(long)]
        meta: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Meta-graph spectrum against random regular graphs.
    CompareRandom {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Largest random-graph order; beyond it the order is capped and flagged.
        #[arg(long, default_value_t = randreg::DEFAULT_COMPARISON_CAP)]
        order_cap: usize,
    },
    /// lambda_2, conductance and mean degree per order.
    Trends {
        #[arg(long, value_delimiter = ',', default_value = "2,4,6")]
        n: Vec<usize>,
        #[arg(long, default_value = "unlabelled")]
        mode: Mode,
    },
    /// Labelled degree bounds per order.
    Prop41 {
        #[arg(long, value_delimiter = ',', default_value = "2,4,6")]
        n: Vec<usize>,
    },
    /// Eigenvalue bound table per order.
    Thm11 {
        #[arg(long, value_delimiter = ',', default_value = "2,4,6")]
        n: Vec<usize>,
        #[arg(long, default_value = "unlabelled")]
        mode: Mode,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Eigenvector entries tagged with structural properties.
    Eigvec {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "unlabelled")]
        mode: Mode,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Run the invariant suite at small order.
    Verify,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Enumerate { .. } => "enumerate",
            Command::BuildMeta { .. } => "build-meta",
            Command::Spectrum { .. } => "spectrum",
            Command::Bottleneck { .. } => "bottleneck",
            Command::Pipeline { .. } => "pipeline",
            Command::CompareRandom { .. } => "compare-random",
            Command::Trends { .. } => "trends",
            Command::Prop41 { .. } => "prop41",
            Command::Thm11 { .. } => "thm11",
            Command::Eigvec { .. } => "eigvec",
            Command::Verify => "verify",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    match run(&cli) {
        Ok(failures) if failures.is_empty() => ExitCode::SUCCESS,
        Ok(failures) => {
            let record = json!({
                "schema": SCHEMA,
                "status": "failed",
                "command": name,
                "failures": failures,
            });
            eprintln!("{record}");
            ExitCode::from(1)
        }
        Err(e) => {
            let record = json!({
                "schema": SCHEMA,
                "status": "error",
                "command": name,
                "message": format!("{e:#}"),
            });
            eprintln!("{record}");
            ExitCode::from(2)
        }
    }
}

fn output(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<T: Serialize>(out: Option<&Path>, value: &T) -> Result<()> {
    let mut w = output(out)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn emit<R: Serialize + CsvRow>(cli: &Cli, report: &Report<R>) -> Result<Vec<Assertion>> {
    let mut w = output(cli.out.as_deref())?;
    report.write(cli.format.unwrap_or(Format::Json), &mut w)?;
    w.flush()?;
    Ok(report.failures().into_iter().cloned().collect())
}

fn check(name: &str, passed: bool, detail: String) -> Vec<Assertion> {
    if passed {
        Vec::new()
    } else {
        vec![Assertion::new(name, false, detail)]
    }
}

fn run(cli: &Cli) -> Result<Vec<Assertion>> {
    let caps = cli
        .cap_override
        .map_or_else(EnumCaps::default, EnumCaps::override_with);
    let format = cli.format;
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Enumerate { n, mode } => {
            let graphs = match mode {
                Mode::Labelled => enumerate_labelled(*n, &caps)?,
                Mode::Unlabelled => enumerate_unlabelled(*n, &caps)?,
            };
            let mut w = output(out)?;
            match format {
                Some(Format::Json) => {
                    let lines: Vec<String> = graphs.iter().map(ToString::to_string).collect();
                    let v = json!({
                        "schema": SCHEMA,
                        "n": n,
                        "mode": mode,
                        "count": graphs.len(),
                        "graphs": lines,
                    });
                    serde_json::to_writer_pretty(&mut w, &v)?;
                    writeln!(w)?;
                }
                Some(Format::Csv) => {
                    writeln!(w, "graph")?;
                    for g in &graphs {
                        writeln!(w, "\"{g}\"")?;
                    }
                }
                None => {
                    for g in &graphs {
                        writeln!(w, "{g}")?;
                    }
                }
            }
            w.flush()?;
            Ok(Vec::new())
        }
        Command::BuildMeta { n, mode, histogram } => {
            let Some(path) = out else {
                bail!("build-meta needs --out <path>");
            };
            let (meta, diag) = MetaGraph::build_with_diagnostics(*n, *mode, &caps)?;
            meta.save(path)?;
            let stats = meta.degree_stats();
            if let Some(h) = histogram {
                stats.write_histogram_csv(File::create(h)?)?;
            }
            let connected = meta.graph().is_connected();
            let summary = json!({
                "schema": SCHEMA,
                "path": path.display().to_string(),
                "mode": mode,
                "order": n,
                "vertices": meta.len(),
                "edges": meta.edges().len(),
                "connected": connected,
                "diagnostics": diag,
                "degrees": stats,
            });
            println!("{}", serde_json::to_string_pretty(&summary)?);
            let mut failures = check(
                "meta-graph connected",
                connected,
                format!("{} components", meta.graph().component_count()),
            );
            failures.extend(check(
                "neighbor relation symmetric",
                diag.asymmetric_pairs == 0,
                format!("{} asymmetric pairs", diag.asymmetric_pairs),
            ));
            if *mode == Mode::Labelled {
                failures.extend(check(
                    "max degree <= 6n",
                    stats.max <= 6 * n,
                    format!("max {}", stats.max),
                ));
            }
            Ok(failures)
        }
        Command::Spectrum { meta, k, vectors } => {
            let meta = MetaGraph::load(meta)?;
            let want = match (vectors, k) {
                (false, _) => Vectors::None,
                (true, Some(k)) => Vectors::Lowest(*k),
                (true, None) => Vectors::All,
            };
            let mut s = graph_spectrum(meta.graph(), want)?;
            if let Some(k) = k {
                s.eigenvalues.truncate(*k);
                s.residuals.truncate(*k);
                if let Some(v) = s.eigenvectors.as_mut() {
                    v.truncate(*k);
                }
            }
            let residual = s.max_relative_residual();
            let mut failures = check(
                "residuals within tol",
                residual <= s.tol,
                format!("max relative residual {residual:e}"),
            );
            failures.extend(check(
                "eigenvalues non-negative",
                s.eigenvalues.iter().all(|&l| l >= -s.tol * s.norm.max(1.0)),
                String::new(),
            ));
            if format == Some(Format::Csv) {
                let mut w = output(out)?;
                writeln!(w, "schema,index,eigenvalue,residual")?;
                for (i, l) in s.eigenvalues.iter().enumerate() {
                    let r = s.residuals.get(i).map_or_else(String::new, f64::to_string);
                    writeln!(w, "{SCHEMA},{},{l},{r}", i + 1)?;
                }
                w.flush()?;
            } else {
                write_json(out, &json!({ "schema": SCHEMA, "spectrum": s }))?;
            }
            Ok(failures)
        }
        Command::Bottleneck { meta, j } => {
            let meta = MetaGraph::load(meta)?;
            let r = jcycle_bottleneck(&meta, *j)?;
            write_json(out, &json!({ "schema": SCHEMA, "bottleneck": r }))?;
            Ok(check(
                "boundary within vertex bound",
                r.vertex_bound_holds,
                format!("max vertex boundary {}", r.max_vertex_boundary),
            ))
        }
        Command::Pipeline { meta, k } => {
            let meta = MetaGraph::load(meta)?;
            let r = theorem11_pipeline(&meta, *k, None)?;
            write_json(out, &json!({ "schema": SCHEMA, "pipeline": r }))?;
            let mut failures = check(
                "lambda_k within bound",
                r.holds,
                format!("{} > {}", r.lambda_k, r.bound),
            );
            failures.extend(check(
                "lambda_2 within Cheeger bound",
                r.cheeger.holds,
                format!("{} > {}", r.cheeger.lambda2, r.cheeger.bound),
            ));
            if r.bound_next.is_some() {
                failures.extend(check(
                    "lambda_{k+1} within bound with constant vector",
                    r.holds_next,
                    format!("{:?} > {:?}", r.lambda_next, r.bound_next),
                ));
            }
            Ok(failures)
        }
        Command::CompareRandom {
            n,
            k,
            trials,
            order_cap,
        } => {
            let (report, raw) =
                experiments::run_compare_random(*n, *k, *trials, cli.seed, *order_cap, &caps)?;
            if format == Some(Format::Csv) {
                emit(cli, &report)
            } else {
                write_json(out, &json!({ "report": report, "comparison": raw }))?;
                Ok(report.failures().into_iter().cloned().collect())
            }
        }
        Command::Trends { n, mode } => emit(cli, &experiments::run_trends(n, *mode, &caps)?),
        Command::Prop41 { n } => emit(cli, &experiments::run_prop41(n, &caps)?),
        Command::Thm11 { n, mode, k } => emit(cli, &experiments::run_thm11(n, *mode, *k, &caps)?),
        Command::Eigvec { n, mode, k } => {
            emit(cli, &experiments::run_eigvec_report(*n, *mode, *k, &caps)?)
        }
        Command::Verify => emit(cli, &experiments::run_verify(cli.seed, &caps)?),
    }
}
