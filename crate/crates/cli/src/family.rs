//! Resolving hosts and patterns from files or family shorthands.

use clumsy_core::copies::{
    enumerate_copies_with, enumerate_subcubes, CopyTable, EnumConfig, DEFAULT_COPY_BUDGET,
};
use clumsy_core::generators::{self, GridSpec};
use clumsy_core::graph::{parse_graph, Graph};
use std::path::{Path, PathBuf};

use crate::commands::CommandError;

/// The CLI refuses hypercubes above this dimension unless --cap raises
/// it (the library cap stays at 16).
pub const CLI_HYPERCUBE_CAP: u32 = 12;

#[derive(clap::Args, Debug, Clone)]
pub struct InstanceArgs {
    /// Host graph file in edge-list format.
    #[arg(long)]
    pub graph: Option<PathBuf>,

    /// Pattern graph file in edge-list format.
    #[arg(long)]
    pub pattern_file: Option<PathBuf>,

    /// Host family: complete | hypercube | turan | grid | gadget |
    /// gadget-prime | cycle | path | random.
    #[arg(long)]
    pub family: Option<String>,

    /// Pattern shorthand: complete | cycle | path | subcube | grid-block.
    #[arg(long)]
    pub pattern: Option<String>,

    /// Primary size parameter (vertices, hypercube dimension, section side).
    #[arg(long)]
    pub n: Option<u32>,

    /// Secondary parameter (clique order, Turán part count).
    #[arg(long)]
    pub m: Option<u32>,

    /// Cycle length / tiling kind (3, 4, or 6) / gadget cycle length.
    #[arg(long)]
    pub k: Option<u32>,

    /// Subcube dimension for --pattern subcube.
    #[arg(long)]
    pub d: Option<u32>,

    /// Block side for --pattern grid-block.
    #[arg(long)]
    pub block: Option<u32>,

    /// Edge probability for --family random.
    #[arg(long)]
    pub p: Option<f64>,

    /// Hypercube dimension cap for generation.
    #[arg(long)]
    pub cap: Option<u32>,
}

pub struct Instance {
    pub host: Graph,
    pub pattern: Graph,
    pub id: String,
    /// Set when the instance is (Q_n, Q_d); enables the subcube
    /// enumeration shortcut and counting bounds.
    pub hypercube: Option<(u32, u32)>,
    /// Set when the instance is (K_n, K_m).
    pub complete_pair: Option<(u32, u32)>,
}

fn need(opt: Option<u32>, what: &str) -> Result<u32, CommandError> {
    opt.ok_or_else(|| CommandError::Usage(format!("missing --{what}")))
}

pub fn build_host(args: &InstanceArgs, seed: u64) -> Result<(Graph, String), CommandError> {
    if let Some(path) = &args.graph {
        let text = read(path)?;
        let g = parse_graph(&text).map_err(|e| CommandError::Input(e.to_string()))?;
        return Ok((g, format!("file:{}", path.display())));
    }
    let family = args
        .family
        .as_deref()
        .ok_or_else(|| CommandError::Usage("need --graph FILE or --family NAME".into()))?;
    let (g, id) = match family {
        "complete" => {
            let n = need(args.n, "n")?;
            (generators::complete(n), format!("K{n}"))
        }
        "hypercube" => {
            let n = need(args.n, "n")?;
            let cap = args.cap.unwrap_or(CLI_HYPERCUBE_CAP);
            if n > cap {
                return Err(CommandError::Usage(format!(
                    "hypercube dimension {n} above CLI cap {cap}; raise with --cap"
                )));
            }
            (
                generators::hypercube(n).map_err(|e| CommandError::Input(e.to_string()))?,
                format!("Q{n}"),
            )
        }
        "turan" => {
            let n = need(args.n, "n")?;
            let m = need(args.m, "m")?;
            (
                generators::turan(n, m)
                    .map_err(|e| CommandError::Input(e.to_string()))?
                    .graph,
                format!("T({n},{m})"),
            )
        }
        "grid" => {
            let k = need(args.k, "k")?;
            let n = need(args.n, "n")?;
            let spec = GridSpec::new(k, n).map_err(|e| CommandError::Input(e.to_string()))?;
            (generators::grid_section(spec).graph, format!("R{k}({n})"))
        }
        "gadget" | "gadget-prime" => {
            let k = need(args.k, "k")?;
            let gadget = generators::monotonicity_gadget(k);
            if family == "gadget-prime" {
                (gadget.prime, format!("gadget-prime(k={k})"))
            } else {
                (gadget.reduced, format!("gadget(k={k})"))
            }
        }
        "cycle" => {
            let k = need(args.k, "k")?;
            (generators::cycle(k), format!("C{k}"))
        }
        "path" => {
            let k = need(args.k, "k")?;
            (generators::path(k), format!("P{k}"))
        }
        "random" => {
            let n = need(args.n, "n")?;
            let p = args
                .p
                .ok_or_else(|| CommandError::Usage("missing --p".into()))?;
            (
                generators::random_graph(n, p, seed),
                format!("G({n},{p},seed={seed})"),
            )
        }
        other => {
            return Err(CommandError::Usage(format!(
                "unknown family {other:?}"
            )))
        }
    };
    Ok((g, id))
}

pub fn build_pattern(args: &InstanceArgs) -> Result<(Graph, String), CommandError> {
    if let Some(path) = &args.pattern_file {
        let text = read(path)?;
        let g = parse_graph(&text).map_err(|e| CommandError::Input(e.to_string()))?;
        return Ok((g, format!("file:{}", path.display())));
    }
    let kind = args
        .pattern
        .as_deref()
        .ok_or_else(|| CommandError::Usage("need --pattern-file FILE or --pattern KIND".into()))?;
    let (g, id) = match kind {
        "complete" => {
            let m = need(args.m, "m")?;
            (generators::complete(m), format!("K{m}"))
        }
        "cycle" => {
            let k = need(args.k, "k")?;
            (generators::cycle(k), format!("C{k}"))
        }
        "path" => {
            let k = need(args.k, "k")?;
            (generators::path(k), format!("P{k}"))
        }
        "subcube" => {
            let d = need(args.d, "d")?;
            (
                generators::hypercube(d).map_err(|e| CommandError::Input(e.to_string()))?,
                format!("Q{d}"),
            )
        }
        "grid-block" => {
            let b = args.block.unwrap_or(2);
            (generators::square_block(b), format!("B{b}"))
        }
        other => {
            return Err(CommandError::Usage(format!(
                "unknown pattern kind {other:?}"
            )))
        }
    };
    Ok((g, id))
}

pub fn build_instance(args: &InstanceArgs, seed: u64) -> Result<Instance, CommandError> {
    let (host, host_id) = build_host(args, seed)?;
    let (pattern, pattern_id) = build_pattern(args)?;
    let hypercube = match (args.family.as_deref(), args.pattern.as_deref()) {
        (Some("hypercube"), Some("subcube")) => Some((args.n.unwrap(), args.d.unwrap())),
        _ => None,
    };
    let complete_pair = match (args.family.as_deref(), args.pattern.as_deref()) {
        (Some("complete"), Some("complete")) => Some((args.n.unwrap(), args.m.unwrap())),
        _ => None,
    };
    Ok(Instance {
        host,
        pattern,
        id: format!("{host_id}/{pattern_id}"),
        hypercube,
        complete_pair,
    })
}

/// Copy table for an instance, taking the subcube shortcut when it
/// applies.
pub fn instance_table(inst: &Instance, threads: usize) -> Result<CopyTable, CommandError> {
    if let Some((n, d)) = inst.hypercube {
        let (_, table) =
            enumerate_subcubes(n, d).map_err(|e| CommandError::Input(e.to_string()))?;
        return Ok(table);
    }
    let cfg = EnumConfig {
        budget: DEFAULT_COPY_BUDGET,
        threads,
    };
    enumerate_copies_with(&inst.host, &inst.pattern, &cfg)
        .map_err(|e| CommandError::Input(e.to_string()))
}

pub fn read(path: &Path) -> Result<String, CommandError> {
    std::fs::read_to_string(path)
        .map_err(|e| CommandError::Input(format!("{}: {e}", path.display())))
}
