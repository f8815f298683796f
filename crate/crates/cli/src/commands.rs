//! Subcommand implementations.

use clumsy_core::bounds::{build_report, ReportOptions};
use clumsy_core::construct::{
    check_divisibility, construct_grid_pattern, construct_kn_km, construct_qn_q2_layers, emit_svg,
    ConstructionOutput,
};
use clumsy_core::copies::{parse_copy_table, write_copy_table};
use clumsy_core::generators::{self, GridSpec};
use clumsy_core::graph::serialize_graph;
use clumsy_core::packing::{
    check_maximal, check_packing, parse_packing, write_packing, Certificate,
};
use clumsy_core::solve::{hypercube_group, symmetric_group, CopySymmetry};
use clumsy_core::{Quantity, SolveStatus};
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;
use thiserror::Error;

use crate::family::{build_instance, instance_table, read, InstanceArgs};
use crate::{
    sha256_hex, Artifact, Cli, Command, Format, RunConfig, Timing, EXIT_BOUNDS_ONLY, EXIT_ERROR,
    EXIT_OK,
};

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Failed(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub fn dispatch(cli: &Cli) -> Result<i32, CommandError> {
    match &cli.command {
        Command::Gen(args) => gen(cli, args),
        Command::Copies(args) => copies(cli, args),
        Command::Solve(args) => solve(cli, args),
        Command::Construct(args) => construct(cli, args),
        Command::Verify(args) => verify(cli, args),
        Command::Report(args) => report(cli, args),
        Command::Suite(args) => suite(cli, args),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), CommandError> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_artifact<T: Serialize>(
    cli: &Cli,
    config: RunConfig,
    inputs: BTreeMap<String, String>,
    body: T,
    started: Instant,
) -> Result<(), CommandError> {
    let artifact = Artifact {
        version: env!("CARGO_PKG_VERSION"),
        config,
        inputs,
        body,
        timing: Timing {
            total_millis: started.elapsed().as_millis(),
        },
    };
    let mut text = serde_json::to_string_pretty(&artifact)
        .map_err(|e| CommandError::Failed(e.to_string()))?;
    text.push('\n');
    emit(cli, &text)
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

#[derive(clap::Args, Debug)]
pub struct GenArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// For --family gadget: write PREFIX.prime.txt and PREFIX.reduced.txt.
    #[arg(long)]
    pub out_prefix: Option<PathBuf>,
}

fn gen(cli: &Cli, args: &GenArgs) -> Result<i32, CommandError> {
    if let (Some("gadget"), Some(prefix)) =
        (args.instance.family.as_deref(), args.out_prefix.as_ref())
    {
        let k = args
            .instance
            .k
            .ok_or(CommandError::Usage("missing --k".into()))?;
        let gadget = generators::monotonicity_gadget(k);
        let prime = format!("{}.prime.txt", prefix.display());
        let reduced = format!("{}.reduced.txt", prefix.display());
        std::fs::write(&prime, serialize_graph(&gadget.prime))?;
        std::fs::write(&reduced, serialize_graph(&gadget.reduced))?;
        eprintln!("wrote {prime} and {reduced}");
        return Ok(EXIT_OK);
    }
    let (host, _) = crate::family::build_host(&args.instance, cli.seed)?;
    emit(cli, &serialize_graph(&host))?;
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// copies
// ---------------------------------------------------------------------------

#[derive(clap::Args, Debug)]
pub struct CopiesArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
}

fn copies(cli: &Cli, args: &CopiesArgs) -> Result<i32, CommandError> {
    let config = cli.run_config("copies");
    let inst = build_instance(&args.instance, cli.seed)?;
    let table = instance_table(&inst, config.threads)?;
    emit(cli, &write_copy_table(&table))?;
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

#[derive(clap::Args, Debug)]
pub struct SolveArgs {
    /// Which quantity to solve: cl, pp, cov, or ex.
    #[arg(long)]
    pub quantity: Quantity,
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Orbit pruning from host automorphisms (complete and hypercube
    /// families only).
    #[arg(long, default_value_t = false)]
    pub symmetry: bool,
    /// Pre-enumerated copy table (skips enumeration).
    #[arg(long)]
    pub copies: Option<PathBuf>,
}

#[derive(Serialize)]
struct SolveBody {
    instance: String,
    result: clumsy_core::SolveResult,
}

fn solve(cli: &Cli, args: &SolveArgs) -> Result<i32, CommandError> {
    let started = Instant::now();
    let config = cli.run_config("solve");
    let inst = build_instance(&args.instance, cli.seed)?;
    let table = match &args.copies {
        Some(path) => parse_copy_table(&read(path)?)
            .map_err(|e| CommandError::Input(e.to_string()))?,
        None => instance_table(&inst, config.threads)?,
    };

    let symmetry = if args.symmetry {
        let group = match args.instance.family.as_deref() {
            Some("hypercube") => hypercube_group(args.instance.n.unwrap_or(0))
                .map_err(|e| CommandError::Input(e.to_string()))?,
            Some("complete") => symmetric_group(args.instance.n.unwrap_or(0))
                .map_err(|e| CommandError::Input(e.to_string()))?,
            other => {
                return Err(CommandError::Usage(format!(
                    "--symmetry supports --family hypercube/complete, not {other:?}"
                )))
            }
        };
        Some(
            CopySymmetry::new(&inst.host, &table, &group)
                .map_err(|e| CommandError::Input(e.to_string()))?,
        )
    } else {
        None
    };

    let result = clumsy_core::solve::solve(&table, args.quantity, &config.budget(), symmetry.as_ref())
        .map_err(|e| CommandError::Failed(e.to_string()))?;
    let code = match result.status {
        SolveStatus::Optimal => EXIT_OK,
        SolveStatus::BoundsOnly { .. } => EXIT_BOUNDS_ONLY,
    };

    let mut inputs = BTreeMap::new();
    inputs.insert("host".into(), sha256_hex(&serialize_graph(&inst.host)));
    inputs.insert(
        "pattern".into(),
        sha256_hex(&serialize_graph(&inst.pattern)),
    );
    if cli.format == Format::Text {
        let (lo, hi) = result.bounds();
        emit(
            cli,
            &format!(
                "{} {} = {} [{}..{}] ({}, {} nodes)\n",
                result.quantity,
                inst.id,
                result.value,
                lo,
                hi,
                if result.is_optimal() {
                    "optimal"
                } else {
                    "bounds only"
                },
                result.nodes
            ),
        )?;
    } else {
        emit_artifact(
            cli,
            config,
            inputs,
            SolveBody {
                instance: inst.id,
                result,
            },
            started,
        )?;
    }
    Ok(code)
}

// ---------------------------------------------------------------------------
// construct
// ---------------------------------------------------------------------------

#[derive(clap::Args, Debug)]
pub struct ConstructArgs {
    #[command(subcommand)]
    pub family: ConstructCmd,
    /// Write PREFIX.packing.txt, PREFIX.certificate.json,
    /// PREFIX.report.json next to the main artifact.
    #[arg(long)]
    pub out_prefix: Option<PathBuf>,
}

#[derive(clap::Subcommand, Debug)]
pub enum ConstructCmd {
    /// Clique packing of a complete graph over an equitable partition.
    Turan {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
    },
    /// Layer-pair subcube packing of a hypercube.
    Layers {
        #[arg(long)]
        n: u32,
    },
    /// Periodic pattern on a tiling section (k in {3, 4, 6}).
    Grid {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
        /// Block side for k = 4.
        #[arg(long, default_value_t = 2)]
        block: u32,
        /// Render the section and packing to an SVG file.
        #[arg(long)]
        emit_svg: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct ConstructBody {
    report: clumsy_core::construct::ConstructionReport,
    packing: Vec<u32>,
    divisibility: clumsy_core::construct::DivisibilityReport,
}

fn construct(cli: &Cli, args: &ConstructArgs) -> Result<i32, CommandError> {
    let started = Instant::now();
    let config = cli.run_config("construct");
    let budget = config.budget();
    let out: ConstructionOutput = match &args.family {
        ConstructCmd::Turan { n, m } => {
            construct_kn_km(*n, *m, &budget).map_err(|e| CommandError::Failed(e.to_string()))?
        }
        ConstructCmd::Layers { n } => construct_qn_q2_layers(*n, &budget)
            .map_err(|e| CommandError::Failed(e.to_string()))?,
        ConstructCmd::Grid {
            k,
            n,
            block,
            emit_svg: svg_path,
        } => {
            let spec = GridSpec::new(*k, *n).map_err(|e| CommandError::Input(e.to_string()))?;
            let out = construct_grid_pattern(spec, Some(*block), &budget)
                .map_err(|e| CommandError::Failed(e.to_string()))?;
            if let Some(path) = svg_path {
                std::fs::write(path, emit_svg(&out.host, &out.packing))?;
            }
            out
        }
    };

    if let Some(prefix) = &args.out_prefix {
        std::fs::write(
            format!("{}.packing.txt", prefix.display()),
            write_packing(&out.packing),
        )?;
        std::fs::write(
            format!("{}.certificate.json", prefix.display()),
            serde_json::to_string_pretty(&out.report.certificate)
                .map_err(|e| CommandError::Failed(e.to_string()))?,
        )?;
        std::fs::write(
            format!("{}.report.json", prefix.display()),
            serde_json::to_string_pretty(&out.report)
                .map_err(|e| CommandError::Failed(e.to_string()))?,
        )?;
    }

    let mut inputs = BTreeMap::new();
    inputs.insert("host".into(), sha256_hex(&serialize_graph(&out.host)));
    inputs.insert(
        "pattern".into(),
        sha256_hex(&serialize_graph(&out.pattern)),
    );
    let divisibility = check_divisibility(&out.host, &out.pattern);
    emit_artifact(
        cli,
        config,
        inputs,
        ConstructBody {
            packing: out.packing.members().to_vec(),
            report: out.report,
            divisibility,
        },
        started,
    )?;
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

#[derive(clap::Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Packing file (`m <copy_id>` lines against the canonical table).
    #[arg(long)]
    pub packing: PathBuf,
    /// Pre-enumerated copy table (skips enumeration).
    #[arg(long)]
    pub copies: Option<PathBuf>,
}

#[derive(Serialize)]
struct VerifyBody {
    instance: String,
    packing_size: usize,
    valid: Certificate,
    maximal: Option<Certificate>,
}

fn verify(cli: &Cli, args: &VerifyArgs) -> Result<i32, CommandError> {
    let started = Instant::now();
    let config = cli.run_config("verify");
    let inst = build_instance(&args.instance, cli.seed)?;
    let table = match &args.copies {
        Some(path) => parse_copy_table(&read(path)?)
            .map_err(|e| CommandError::Input(e.to_string()))?,
        None => instance_table(&inst, config.threads)?,
    };
    let packing_text = read(&args.packing)?;
    let packing =
        parse_packing(&packing_text, &table).map_err(|e| CommandError::Input(e.to_string()))?;

    let valid = check_packing(&table, &packing);
    let maximal = match valid {
        Certificate::ValidPacking => Some(
            check_maximal(&table, &packing).map_err(|e| CommandError::Failed(e.to_string()))?,
        ),
        _ => None,
    };
    let ok = matches!(maximal, Some(Certificate::Maximal));

    let mut inputs = BTreeMap::new();
    inputs.insert("host".into(), sha256_hex(&serialize_graph(&inst.host)));
    inputs.insert(
        "pattern".into(),
        sha256_hex(&serialize_graph(&inst.pattern)),
    );
    inputs.insert("packing".into(), sha256_hex(&packing_text));
    emit_artifact(
        cli,
        config,
        inputs,
        VerifyBody {
            instance: inst.id,
            packing_size: packing.len(),
            valid,
            maximal,
        },
        started,
    )?;
    Ok(if ok { EXIT_OK } else { EXIT_ERROR })
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

#[derive(clap::Args, Debug)]
pub struct ReportArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Skip the exact solvers (closed-form bounds only).
    #[arg(long, default_value_t = false)]
    pub no_solve: bool,
}

#[derive(Serialize)]
struct ReportBody {
    report: clumsy_core::bounds::BoundsReport,
}

fn report(cli: &Cli, args: &ReportArgs) -> Result<i32, CommandError> {
    let started = Instant::now();
    let config = cli.run_config("report");
    let inst = build_instance(&args.instance, cli.seed)?;
    let table = instance_table(&inst, config.threads)?;

    let mut opts = ReportOptions::new(inst.id.clone());
    opts.budget = config.budget();
    opts.solve = !args.no_solve;
    opts.hypercube = inst.hypercube;
    opts.turan_ex = inst.complete_pair;
    let report =
        build_report(&inst.pattern, &table, &opts).map_err(|e| CommandError::Failed(e.to_string()))?;

    let mut inputs = BTreeMap::new();
    inputs.insert("host".into(), sha256_hex(&serialize_graph(&inst.host)));
    inputs.insert(
        "pattern".into(),
        sha256_hex(&serialize_graph(&inst.pattern)),
    );
    emit_artifact(cli, config, inputs, ReportBody { report }, started)?;
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// suite
// ---------------------------------------------------------------------------

#[derive(clap::Args, Debug)]
pub struct SuiteArgs {
    /// Run the acceptance battery.
    #[arg(long, action = clap::ArgAction::SetTrue)]
    pub acceptance: bool,
    /// Run a single criterion (1-9) instead of all.
    #[arg(long)]
    pub only: Option<u8>,
}

fn suite(cli: &Cli, args: &SuiteArgs) -> Result<i32, CommandError> {
    if !args.acceptance {
        return Err(CommandError::Usage(
            "nothing to run: pass --acceptance".into(),
        ));
    }
    let config = crate::acceptance::AcceptanceConfig::default();
    let outcomes = match args.only {
        Some(id) => vec![crate::acceptance::run_criterion(id, &config)
            .ok_or_else(|| CommandError::Usage(format!("no criterion {id}")))?],
        None => crate::acceptance::run_all(&config),
    };
    let mut all_ok = true;
    for o in &outcomes {
        println!("{}", o.line());
        all_ok &= o.passed;
    }
    if let Some(path) = &cli.out {
        std::fs::write(
            path,
            serde_json::to_string_pretty(&outcomes)
                .map_err(|e| CommandError::Failed(e.to_string()))?,
        )?;
    }
    Ok(if all_ok { EXIT_OK } else { EXIT_ERROR })
}
