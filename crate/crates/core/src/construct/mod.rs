//! The three construction families, each emitting a certified maximal
//! packing: clique packings of complete graphs over an equitable
//! partition, layer-based subcube packings of hypercubes, and periodic
//! patterns on the three regular plane tilings. Certification by the
//! maximality checker is a hard requirement; no construction gets to
//! rely on asymptotic arguments for correctness.

mod grid;
mod layers;
mod turan;

pub use grid::{construct_grid_pattern, emit_svg, gadget_lower_bound, GridParams};
pub use layers::{construct_qn_q2_layers, LayerParams};
pub use turan::{construct_kn_km, TuranParams};

use crate::copies::{CopyEnumError, CopyTable};
use crate::generators::GeneratorError;
use crate::graph::Graph;
use crate::packing::{Certificate, Packing, PackingError};
use crate::rational::Rational;
use crate::solve::SolveError;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Copies(#[from] CopyEnumError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Packing(#[from] PackingError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error("construction failed to certify: {0:?}")]
    CertificationFailed(Certificate),
    #[error("pattern placement has no matching copy in the table")]
    PlacementNotFound,
    #[error("section too small for one full pattern period; solve the instance exactly instead")]
    SectionTooSmall,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionKind {
    TuranClique,
    HypercubeLayers,
    GridPattern,
}

/// Family-specific parameters and diagnostics.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum ConstructionParams {
    Turan(TuranParams),
    Layers(LayerParams),
    Grid(GridParams),
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstructionReport {
    pub construction: ConstructionKind,
    /// Final packing size.
    pub size: u64,
    /// Formula target the construction aims for.
    pub predicted_size: Rational,
    /// Members added by completion beyond the structured core.
    pub boundary_added: u64,
    pub covered_fraction: Rational,
    /// Always `Maximal`; constructions that fail to certify error out.
    pub certificate: Certificate,
    pub params: ConstructionParams,
}

/// A construction's full output: everything needed to re-verify it.
#[derive(Debug)]
pub struct ConstructionOutput {
    pub host: Graph,
    pub pattern: Graph,
    pub table: CopyTable,
    pub packing: Packing,
    pub report: ConstructionReport,
}

/// Divisibility prerequisites for a perfect packing: the gcd of the
/// pattern's degrees must divide the gcd of the host's, and the
/// pattern's edge count must divide the host's.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityReport {
    pub gcd_h: u64,
    pub gcd_g: u64,
    pub edges_h: u64,
    pub edges_g: u64,
    pub divisible: bool,
}

pub fn check_divisibility(g: &Graph, h: &Graph) -> DivisibilityReport {
    let gcd_h = h.degree_gcd();
    let gcd_g = g.degree_gcd();
    let edges_h = h.edge_count() as u64;
    let edges_g = g.edge_count() as u64;
    let divides = |a: u64, b: u64| a != 0 && b.is_multiple_of(a);
    DivisibilityReport {
        gcd_h,
        gcd_g,
        edges_h,
        edges_g,
        divisible: divides(gcd_h, gcd_g) && divides(edges_h, edges_g),
    }
}

/// Certifies a finished construction, or errors out with the failing
/// certificate.
pub(crate) fn certify(table: &CopyTable, packing: &Packing) -> Result<Certificate, ConstructError> {
    match crate::packing::check_packing(table, packing) {
        Certificate::ValidPacking => {}
        other => return Err(ConstructError::CertificationFailed(other)),
    }
    match crate::packing::check_maximal(table, packing)? {
        Certificate::Maximal => Ok(Certificate::Maximal),
        other => Err(ConstructError::CertificationFailed(other)),
    }
}

/// Restriction of a table to the copies passing the filter, keeping the
/// mapping back to full-table indices. Canonical order is preserved
/// because a subsequence of a sorted list stays sorted.
pub(crate) fn filter_table(
    table: &CopyTable,
    keep: impl Fn(u32) -> bool,
) -> (CopyTable, Vec<u32>) {
    let kept: Vec<u32> = (0..table.len() as u32).filter(|&c| keep(c)).collect();
    let sub = CopyTable::from_copies(
        table.host_edge_count(),
        table.pattern_edge_count(),
        kept.iter().map(|&c| table.copy(c).to_vec()),
    );
    debug_assert_eq!(sub.len(), kept.len());
    (sub, kept)
}
