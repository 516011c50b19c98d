use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use plabic_cli::server::{self, AppState};
use plabic_cli::{
    check_report, cut_list, dotted, inner_quiver, read_collection, to_json_string, Failure, DEFAULT_CUT_LIMIT,
};
use plabic_core::families::{family_quiver, match_symmetric_collection, FamilySpec};
use plabic_core::jacobian::{jacobian_by_paths, self_injectivity};
use plabic_core::mutation::{geometric_exchange, orbit_exchange};
use plabic_core::samples::symmetric_3_9;
use plabic_core::search::{enumerate_symmetric, SearchConfig};
use plabic_core::{Error, KSubset, Quiver};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "plabic",
    version,
    about = "Weakly separated collections, their quivers with potential and Jacobian algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family quiver, match it to a symmetric collection and write quiver, collection and report JSON.
    Family {
        name: String,
        param: String,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long)]
        max_solutions: Option<usize>,
    },
    /// Self-injectivity, symmetry, Nakayama order and cut census of a collection.
    Check {
        collection: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
        /// Cap on enumerated cuts.
        #[arg(long)]
        max_solutions: Option<usize>,
    },
    /// Exchange one label, or its whole `+k` orbit with `--orbit-only`.
    Mutate {
        collection: PathBuf,
        label: String,
        #[arg(long)]
        orbit_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the cuts of the underlying quiver.
    Cuts {
        collection: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        max_solutions: Option<usize>,
    },
    /// Render the quiver of a collection.
    Export {
        collection: PathBuf,
        #[arg(value_enum)]
        format: ExportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate rotation-invariant maximal collections up to dihedral symmetry.
    Search {
        k: usize,
        n: usize,
        #[arg(long)]
        max_solutions: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Serve the explorer API on localhost.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Collection every new session starts from.
        #[arg(long)]
        seed_file: Option<PathBuf>,
        #[arg(long)]
        max_solutions: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
    Tikz,
    Json,
}

#[derive(Debug)]
struct PortBusy(std::io::Error);

impl std::fmt::Display for PortBusy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "cannot bind port: {}", self.0)
    }
}

impl std::error::Error for PortBusy {}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn family_stem(spec: &FamilySpec) -> String {
    match spec {
        FamilySpec::CobwebPlus(x) => format!("cobweb-plus-{x}"),
        FamilySpec::CobwebMinus(x) => format!("cobweb-minus-{x}"),
        other => other.to_string().replace(' ', "-"),
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct FamilyReport {
    family: String,
    vertices: usize,
    arrows: usize,
    self_injective: bool,
    collection: plabic_cli::CheckReport,
}

fn cmd_family(name: &str, param: &str, out: &Path, max_solutions: Option<usize>) -> anyhow::Result<()> {
    let spec = FamilySpec::parse(name, param)?;
    let q = family_quiver(spec)?;
    let (k, n) = spec.parameters();
    let mut config = SearchConfig::new(k, n);
    if let Some(m) = max_solutions {
        config.max_solutions = m;
    }
    let m = match_symmetric_collection(spec, Some(config))?;
    let table = jacobian_by_paths(&q)?;
    let report = FamilyReport {
        family: spec.to_string(),
        vertices: q.vertex_count(),
        arrows: q.arrows.len(),
        self_injective: self_injectivity(&table)?.self_injective,
        collection: check_report(&m.collection, None, DEFAULT_CUT_LIMIT)?,
    };
    std::fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let stem = family_stem(&spec);
    let files = [
        (format!("{stem}.quiver.json"), to_json_string(&q.to_json())),
        (format!("{stem}.collection.json"), to_json_string(&m.collection.to_json())),
        (format!("{stem}.report.json"), to_json_string(&report)),
    ];
    for (file, text) in files {
        let path = out.join(file);
        std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        println!("{}", path.display());
    }
    Ok(())
}

fn text_report(r: &plabic_cli::CheckReport) -> String {
    let mut lines = vec![
        format!("({},{}) collection, symmetric: {}", r.k, r.n, r.symmetric),
        format!("self-injective: {}, dim {}", r.report.self_injective, r.report.dim_total),
    ];
    if let Some(cycles) = &r.report.sigma {
        let shown: Vec<String> = cycles.iter().map(|c| format!("({})", c.join(" "))).collect();
        lines.push(format!("nakayama permutation: {}", shown.join("")));
    }
    if let Some(order) = r.nakayama_order {
        lines.push(format!("nakayama order: {order}"));
    }
    let homogeneous = r.cuts.homogeneous.map(|h| format!(", {h} homogeneous")).unwrap_or_default();
    let more = if r.cuts.truncated { "+" } else { "" };
    lines.push(format!("cuts: {}{more}{homogeneous}, enough cuts: {}", r.cuts.count, r.cuts.enough_cuts));
    lines.join("\n") + "\n"
}

fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Family { name, param, out, max_solutions } => cmd_family(&name, &param, &out, max_solutions),
        Command::Check { collection, out, format, max_solutions } => {
            let coll = read_collection(&collection)?;
            let r = check_report(&coll, None, max_solutions.unwrap_or(DEFAULT_CUT_LIMIT))?;
            let text = match format {
                ReportFormat::Json => to_json_string(&r),
                ReportFormat::Text => text_report(&r),
            };
            emit(out.as_deref(), &text)
        }
        Command::Mutate { collection, label, orbit_only, out } => {
            let coll = read_collection(&collection)?;
            let label = KSubset::parse(coll.n(), &label)?;
            let next = if orbit_only { orbit_exchange(&coll, &label)? } else { geometric_exchange(&coll, &label)? };
            emit(out.as_deref(), &to_json_string(&next.to_json()))
        }
        Command::Cuts { collection, out, max_solutions } => {
            let q = inner_quiver(&read_collection(&collection)?)?;
            emit(out.as_deref(), &to_json_string(&cut_list(&q, max_solutions.unwrap_or(DEFAULT_CUT_LIMIT))))
        }
        Command::Export { collection, format, out } => {
            let q = Quiver::from_collection(&read_collection(&collection)?)?;
            let text = match format {
                ExportFormat::Dot => q.to_dot(&dotted(None)),
                ExportFormat::Tikz => q.to_tikz(&dotted(None)),
                ExportFormat::Json => to_json_string(&q.to_json()),
            };
            emit(out.as_deref(), &text)
        }
        Command::Search { k, n, max_solutions, out } => {
            let mut config = SearchConfig::new(k, n);
            config.canonicalize = true;
            if let Some(m) = max_solutions {
                config.max_solutions = m;
            }
            let found: Vec<_> = enumerate_symmetric(&config)?.iter().map(|c| c.to_json()).collect();
            emit(out.as_deref(), &to_json_string(&found))
        }
        Command::Serve { port, seed_file, max_solutions } => {
            let seed = match seed_file {
                Some(path) => read_collection(&path)?,
                None => symmetric_3_9(),
            };
            let app = AppState::new(seed, max_solutions.unwrap_or(DEFAULT_CUT_LIMIT));
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(async {
                let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await.map_err(PortBusy)?;
                eprintln!("listening on http://{}", listener.local_addr()?);
                server::serve(listener, app).await?;
                Ok(())
            })
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.is::<PortBusy>() {
        return Failure::Environment.exit_code();
    }
    match e.downcast_ref::<Error>() {
        Some(core) => Failure::of(core).exit_code(),
        None => Failure::InvalidInput.exit_code(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
