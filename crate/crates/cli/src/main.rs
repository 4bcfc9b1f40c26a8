//! `partcert`: build the recursive families, verify the lemmas on small
//! graphs, and check single graphs for chordality, perfection or a
//! tree-decomposition certificate.
//!
//! Exit codes: 0 success (certified / property holds), 1 failures found or
//! property fails, 2 resource cap or size refusal, 3 bad input or usage.

mod config;

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::{Arc, Mutex};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use partcert_core::construct::{build, Family, Params};
use partcert_core::decomposition::{validate, TreeDecomposition};
use partcert_core::io::{read_graph_file, write_graph, GraphFormat};
use partcert_core::recognition::{is_chordal, is_perfect_small};
use partcert_core::verify::{verify_lemma, FailureSink, LemmaParams, VerifyOptions};
use partcert_core::{Error, Graph};

use config::Config;

const EXIT_FAIL: u8 = 1;
const EXIT_CAP: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "partcert",
    version,
    about = "Chordal and perfect partitions: constructions and exhaustive checks"
)]
struct Cli {
    /// TOML config file (default: $PARTCERT_CONFIG).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Chordal,
    Perfect,
    General,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Chordal => Family::Chordal,
            FamilyArg::Perfect => Family::Perfect,
            FamilyArg::General => Family::General,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    G6,
    Dot,
    Json,
}

impl From<FormatArg> for GraphFormat {
    fn from(f: FormatArg) -> GraphFormat {
        match f {
            FormatArg::G6 => GraphFormat::Graph6,
            FormatArg::Dot => GraphFormat::Dot,
            FormatArg::Json => GraphFormat::Json,
        }
    }
}

#[allow(clippy::enum_variant_names)]
#[derive(Clone, Copy, ValueEnum)]
enum LemmaArg {
    ChordalLemma,
    PerfectLemma,
    GeneralLemma,
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Chordal,
    Perfect,
    TreewidthCert,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family member with its tree-decomposition.
    Construct {
        family: FamilyArg,
        #[arg(short)]
        k: u64,
        #[arg(short, default_value_t = 1)]
        r: u64,
        /// Quotient order (general family only).
        #[arg(short)]
        t: Option<u64>,
        #[arg(long, value_enum, default_value = "g6")]
        format: FormatArg,
        /// Directory for the output files (default: config, then ".").
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Base name of the output files (default: derived from parameters).
        #[arg(long)]
        name: Option<String>,
        /// Build even when the predicted size exceeds the configured caps.
        #[arg(long)]
        force_size: bool,
    },
    /// Check a lemma on every connected partition of a graph.
    Verify {
        lemma: LemmaArg,
        /// Graph file (.g6, .dot or .json).
        #[arg(long, conflicts_with = "family", required_unless_present = "family")]
        graph: Option<PathBuf>,
        /// Build the graph from this family with the same parameters.
        #[arg(long)]
        family: Option<FamilyArg>,
        #[arg(short)]
        k: usize,
        #[arg(short, default_value_t = 1)]
        r: usize,
        #[arg(short)]
        t: Option<usize>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Report path (default: <out-dir>/<name>.report.json).
        #[arg(long)]
        report: Option<PathBuf>,
        /// Failure stream path (default: <out-dir>/<name>.failures.ndjson).
        #[arg(long)]
        failures: Option<PathBuf>,
    },
    /// Decide a property of one graph and print a certificate.
    Check {
        graph: PathBuf,
        property: Property,
        /// Tree-decomposition JSON (treewidth-cert only).
        #[arg(long)]
        decomp: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let cap = e
                .downcast_ref::<Error>()
                .is_some_and(Error::is_resource_cap);
            ExitCode::from(if cap { EXIT_CAP } else { EXIT_INPUT })
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let config = Config::load(cli.config.as_deref())?;
    match cli.command {
        Command::Construct {
            family,
            k,
            r,
            t,
            format,
            out_dir,
            name,
            force_size,
        } => {
            let params = family_params(family.into(), k, r, t)?;
            let dir = out_dir
                .or(config.output_dir.clone())
                .unwrap_or_else(|| PathBuf::from("."));
            let name = name.unwrap_or_else(|| default_name(&params));
            construct(&config, params, format.into(), &dir, &name, force_size)
        }
        Command::Verify {
            lemma,
            graph,
            family,
            k,
            r,
            t,
            workers,
            out_dir,
            report,
            failures,
        } => {
            let params = match lemma {
                LemmaArg::ChordalLemma => LemmaParams::chordal(k, r),
                LemmaArg::PerfectLemma => LemmaParams::perfect(k, r),
                LemmaArg::GeneralLemma => {
                    LemmaParams::general(k, t.ok_or_else(|| anyhow!("general-lemma needs -t"))?, r)
                }
            };
            let (g, name) = match (graph, family) {
                (Some(path), _) => {
                    let g = read_graph_file(&path)?;
                    let stem = path
                        .file_stem()
                        .and_then(|s| s.to_str())
                        .unwrap_or("graph")
                        .to_string();
                    (g, stem)
                }
                (None, Some(f)) => {
                    let p = family_params(f.into(), k as u64, r as u64, t.map(|t| t as u64))?;
                    (build(p, &config.limits, false)?.graph, default_name(&p))
                }
                (None, None) => bail!("give --graph or --family"),
            };
            let dir = out_dir
                .or(config.output_dir.clone())
                .unwrap_or_else(|| PathBuf::from("."));
            let report = report.unwrap_or_else(|| dir.join(format!("{name}.report.json")));
            let failures = failures.unwrap_or_else(|| dir.join(format!("{name}.failures.ndjson")));
            let workers = workers.or(config.workers).unwrap_or(1);
            verify(&config, &g, params, &name, workers, &report, &failures)
        }
        Command::Check {
            graph,
            property,
            decomp,
        } => check(&config, &graph, property, decomp.as_deref()),
    }
}

fn family_params(family: Family, k: u64, r: u64, t: Option<u64>) -> Result<Params> {
    Ok(match family {
        Family::Chordal => Params::chordal(k, r),
        Family::Perfect => Params::perfect(k, r),
        Family::General => Params::general(
            k,
            t.ok_or_else(|| anyhow!("the general family needs -t"))?,
            r,
        ),
    })
}

fn default_name(p: &Params) -> String {
    match p.t {
        Some(t) => format!("{}-k{}-t{}-r{}", p.family.name(), p.k, t, p.r),
        None => format!("{}-k{}-r{}", p.family.name(), p.k, p.r),
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)
            .with_context(|| format!("creating {}", parent.display()))?;
    }
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn construct(
    config: &Config,
    params: Params,
    format: GraphFormat,
    dir: &Path,
    name: &str,
    force: bool,
) -> Result<u8> {
    let res = match build(params, &config.limits, force) {
        Err(e @ Error::SizeRefused { .. }) => {
            eprintln!("refused {params}: {e}");
            if let Some(b) = params.bag_bound() {
                eprintln!(
                    "bound inputs: k = {}, r = {}, bag bound = {b}",
                    params.k, params.r
                );
            }
            return Ok(EXIT_CAP);
        }
        other => other?,
    };
    let graph_path = dir.join(format!("{name}.{}", format.extension()));
    write_file(&graph_path, &write_graph(&res.graph, format))?;
    let log_path = dir.join(format!("{name}.attachments.json"));
    write_file(
        &log_path,
        &(serde_json::to_string_pretty(&res.attachment_log)? + "\n"),
    )?;
    let mut line = format!(
        "{params}: n={} m={} predicted={}",
        res.graph.n(),
        res.graph.edge_count(),
        res.predicted_size
    );
    if let Some(t) = &res.decomposition {
        let path = dir.join(format!("{name}.decomposition.json"));
        write_file(&path, &(t.to_json() + "\n"))?;
        let bound = params.bag_bound().expect("bounded family");
        line += &format!(" width={} (bound <= {})", t.width(), bound - 1);
    }
    println!("{line}");
    println!("graph: {}", graph_path.display());
    Ok(0)
}

fn verify(
    config: &Config,
    g: &Graph,
    params: LemmaParams,
    name: &str,
    workers: usize,
    report_path: &Path,
    failures_path: &Path,
) -> Result<u8> {
    if let Some(parent) = failures_path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    let file = File::create(failures_path)
        .with_context(|| format!("creating {}", failures_path.display()))?;
    let sink: FailureSink = Arc::new(Mutex::new(BufWriter::new(file)));
    let opts = VerifyOptions {
        limits: config.limits,
        workers,
        failure_sink: Some(sink),
        graph_id: Some(name.to_string()),
        ..VerifyOptions::default()
    };
    let report = verify_lemma(g, params, &opts)?;
    write_file(report_path, &report.to_json())?;
    println!(
        "{}: {} connected partitions, {} in scope, {} failures",
        if report.is_certified() {
            "certified"
        } else {
            "FAILED"
        },
        report.partition_count,
        report.filtered_count,
        report.failure_count
    );
    println!("report: {}", report_path.display());
    println!("failures: {}", failures_path.display());
    Ok(if report.is_certified() { 0 } else { EXIT_FAIL })
}

fn check(config: &Config, path: &Path, property: Property, decomp: Option<&Path>) -> Result<u8> {
    let g = read_graph_file(path)?;
    let (holds, certificate) = match property {
        Property::Chordal => {
            let c = is_chordal(&g)?;
            (c.is_chordal(), serde_json::to_string(&c)?)
        }
        Property::Perfect => {
            let c = is_perfect_small(&g, config.limits.perfect)?;
            (c.is_perfect(), serde_json::to_string(&c)?)
        }
        Property::TreewidthCert => {
            let decomp = decomp.ok_or_else(|| anyhow!("treewidth-cert needs --decomp"))?;
            let text = std::fs::read_to_string(decomp)
                .with_context(|| format!("reading {}", decomp.display()))?;
            let t = TreeDecomposition::from_json(&text)?;
            match validate(&g, &t) {
                Ok(()) => {
                    println!("ok, width {}", t.width());
                    return Ok(0);
                }
                Err(v) => (false, serde_json::to_string(&v)?),
            }
        }
    };
    println!("{holds}");
    println!("{certificate}");
    Ok(if holds { 0 } else { EXIT_FAIL })
}
