//! Canonical generators for every graph family the solvers and
//! constructions operate on: complete graphs, cycles, paths, Turán
//! graphs, hypercubes, finite sections of the three regular plane
//! tilings, the cycle-gadget pair showing non-monotonicity of minimum
//! maximal packings, and seeded random graphs for test batteries.

use crate::graph::Graph;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hypercubes above this dimension are rejected by the library
/// (n * 2^(n-1) edges makes enumeration pointless past it).
pub const HYPERCUBE_CAP: u32 = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("hypercube dimension {0} exceeds cap {HYPERCUBE_CAP}")]
    HypercubeCapExceeded(u32),
    #[error("turan graph requires 1 <= k <= n, got n={n}, k={k}")]
    BadTuranParams { n: u32, k: u32 },
    #[error("tiling kind must be 3, 4, or 6, got {0}")]
    BadTilingKind(u32),
}

/// Complete graph on `n >= 1` vertices.
pub fn complete(n: u32) -> Graph {
    assert!(n >= 1, "complete graph needs n >= 1");
    let mut edges = Vec::with_capacity((n as usize * (n as usize - 1)) / 2);
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, edges).expect("complete graph is simple")
}

/// Cycle on `k >= 3` vertices.
pub fn cycle(k: u32) -> Graph {
    assert!(k >= 3, "cycle needs k >= 3");
    let edges = (0..k).map(|i| (i, (i + 1) % k));
    Graph::new(k, edges).expect("cycle is simple")
}

/// Path on `k >= 1` vertices, hence `k - 1` edges.
pub fn path(k: u32) -> Graph {
    assert!(k >= 1, "path needs k >= 1");
    let edges = (0..k.saturating_sub(1)).map(|i| (i, i + 1));
    Graph::new(k, edges).expect("path is simple")
}

/// Hypercube graph on `2^n` vertices; vertex ids are the integer values
/// of their coordinate strings, edges join words at Hamming distance 1.
pub fn hypercube(n: u32) -> Result<Graph, GeneratorError> {
    if n > HYPERCUBE_CAP {
        return Err(GeneratorError::HypercubeCapExceeded(n));
    }
    let count = 1u32 << n;
    let mut edges = Vec::with_capacity((n as usize) << n.saturating_sub(1));
    for v in 0..count {
        for bit in 0..n {
            let w = v | (1 << bit);
            if w != v {
                edges.push((v, w));
            }
        }
    }
    Ok(Graph::new(count, edges).expect("hypercube is simple"))
}

/// Hamming weight of a hypercube vertex id.
pub fn hamming_weight(v: u32) -> u32 {
    v.count_ones()
}

/// Complete multipartite Turán graph with its equitable partition.
#[derive(Clone, Debug)]
pub struct TuranGraph {
    pub graph: Graph,
    pub parts: Vec<Vec<u32>>,
}

/// Turán graph `T(n, k)`: complete k-partite, part sizes `floor(n/k)`
/// or `ceil(n/k)`, vertices assigned to parts consecutively.
pub fn turan(n: u32, k: u32) -> Result<TuranGraph, GeneratorError> {
    if k < 1 || k > n {
        return Err(GeneratorError::BadTuranParams { n, k });
    }
    let base = n / k;
    let extra = n % k;
    let mut parts: Vec<Vec<u32>> = Vec::with_capacity(k as usize);
    let mut next = 0u32;
    for i in 0..k {
        let size = base + u32::from(i < extra);
        parts.push((next..next + size).collect());
        next += size;
    }
    let mut part_of = vec![0u32; n as usize];
    for (pi, part) in parts.iter().enumerate() {
        for &v in part {
            part_of[v as usize] = pi as u32;
        }
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if part_of[u as usize] != part_of[v as usize] {
                edges.push((u, v));
            }
        }
    }
    Ok(TuranGraph {
        graph: Graph::new(n, edges).expect("turan graph is simple"),
        parts,
    })
}

/// Number of edges of `T(n, k)` without building it.
pub fn turan_edge_count(n: u64, k: u64) -> u64 {
    assert!(k >= 1 && k <= n);
    let base = n / k;
    let extra = n % k;
    let intra: u64 = (0..k)
        .map(|i| {
            let s = base + u64::from(i < extra);
            s * s.saturating_sub(1) / 2
        })
        .sum();
    n * (n - 1) / 2 - intra
}

// ---------------------------------------------------------------------------
// Regular plane tilings
// ---------------------------------------------------------------------------

/// The three regular tessellations, named by face size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TilingKind {
    Triangular,
    Square,
    Hexagonal,
}

impl TilingKind {
    pub fn from_k(k: u32) -> Result<Self, GeneratorError> {
        match k {
            3 => Ok(TilingKind::Triangular),
            4 => Ok(TilingKind::Square),
            6 => Ok(TilingKind::Hexagonal),
            other => Err(GeneratorError::BadTilingKind(other)),
        }
    }

    pub fn k(self) -> u32 {
        match self {
            TilingKind::Triangular => 3,
            TilingKind::Square => 4,
            TilingKind::Hexagonal => 6,
        }
    }
}

/// A finite section request: tiling kind plus side length of the
/// `[0, n) x [0, n)` window, with unit edge length and an edge anchored
/// on the segment from (0,0) to (1,0).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub kind: TilingKind,
    pub n: u32,
}

impl GridSpec {
    pub fn new(k: u32, n: u32) -> Result<Self, GeneratorError> {
        Ok(GridSpec {
            kind: TilingKind::from_k(k)?,
            n,
        })
    }
}

/// Exact lattice address of a tiling vertex. For the square tiling this
/// is `(x, y)` directly; for the triangular and hexagonal tilings the
/// planar position is `(p/2, q*sqrt(3)/2)`.
pub type LatticePoint = (i64, i64);

/// A generated tiling section: the graph, one exact lattice address per
/// vertex, and the spec it came from. The graph also carries f64
/// coordinates for serialization and window measurements.
#[derive(Clone, Debug)]
pub struct GridSection {
    pub graph: Graph,
    pub lattice: Vec<LatticePoint>,
    pub spec: GridSpec,
}

impl GridSection {
    /// Vertex id for an exact lattice address, if inside the section.
    pub fn vertex_at(&self, p: LatticePoint) -> Option<u32> {
        self.lattice.binary_search(&by_row(p)).ok().map(|i| i as u32)
    }
}

// Lattice points are sorted row-major by (q, p); keep the key encoding
// in one place.
fn by_row((p, q): LatticePoint) -> LatticePoint {
    (q, p)
}

fn in_window_x(p: i64, n: i64) -> bool {
    // x = p/2 in [0, n)
    p >= 0 && p < 2 * n
}

fn in_window_y(q: i64, n: i64) -> bool {
    // y = q*sqrt(3)/2 in [0, n)  <=>  3 q^2 < 4 n^2 for q >= 0
    q >= 0 && 3 * q * q < 4 * n * n
}

fn triangular_site(p: i64, q: i64) -> bool {
    (p - q).rem_euclid(2) == 0
}

fn hexagonal_site(p: i64, q: i64) -> bool {
    match p.rem_euclid(3) {
        0 => (q - p / 3).rem_euclid(2) == 0,
        2 => (q - (p - 2) / 3).rem_euclid(2) == 0,
        _ => false,
    }
}

fn neighbor_offsets(kind: TilingKind, p: i64) -> &'static [(i64, i64)] {
    const SQUARE: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];
    const TRI: [(i64, i64); 6] = [(2, 0), (-2, 0), (1, 1), (-1, -1), (1, -1), (-1, 1)];
    const HEX_A: [(i64, i64); 3] = [(2, 0), (-1, -1), (-1, 1)];
    const HEX_B: [(i64, i64); 3] = [(-2, 0), (1, 1), (1, -1)];
    match kind {
        TilingKind::Square => &SQUARE,
        TilingKind::Triangular => &TRI,
        TilingKind::Hexagonal => {
            if p.rem_euclid(3) == 0 {
                &HEX_A
            } else {
                &HEX_B
            }
        }
    }
}

/// Builds the induced subgraph of the tiling on vertices inside
/// `[0, n) x [0, n)`. Requires `n >= 2`.
pub fn grid_section(spec: GridSpec) -> GridSection {
    assert!(spec.n >= 2, "grid section needs n >= 2");
    let n = spec.n as i64;
    let mut points: Vec<LatticePoint> = Vec::new();
    match spec.kind {
        TilingKind::Square => {
            for q in 0..n {
                for p in 0..n {
                    points.push((p, q));
                }
            }
        }
        TilingKind::Triangular | TilingKind::Hexagonal => {
            let mut q = 0i64;
            while in_window_y(q, n) {
                for p in 0..(2 * n) {
                    debug_assert!(in_window_x(p, n));
                    let site = match spec.kind {
                        TilingKind::Triangular => triangular_site(p, q),
                        _ => hexagonal_site(p, q),
                    };
                    if site {
                        points.push((p, q));
                    }
                }
                q += 1;
            }
        }
    }
    points.sort_unstable_by_key(|&pt| by_row(pt));
    let index: std::collections::HashMap<LatticePoint, u32> = points
        .iter()
        .enumerate()
        .map(|(i, &pt)| (pt, i as u32))
        .collect();
    let mut edges = Vec::new();
    for (i, &(p, q)) in points.iter().enumerate() {
        for &(dp, dq) in neighbor_offsets(spec.kind, p) {
            if let Some(&j) = index.get(&(p + dp, q + dq)) {
                if (i as u32) < j {
                    edges.push((i as u32, j));
                }
            }
        }
    }
    let mut graph = Graph::new(points.len() as u32, edges).expect("tiling section is simple");
    let coords = points
        .iter()
        .map(|&(p, q)| match spec.kind {
            TilingKind::Square => (p as f64, q as f64),
            _ => (p as f64 / 2.0, q as f64 * 3f64.sqrt() / 2.0),
        })
        .collect();
    graph.set_coords(coords);
    let lattice = points.iter().map(|&pt| by_row(pt)).collect::<Vec<_>>();
    // `lattice` is stored row-major-keyed so vertex_at can binary search.
    GridSection {
        graph,
        lattice,
        spec,
    }
}

/// Planar coordinates of a stored (row-major keyed) lattice point.
pub fn lattice_coords(kind: TilingKind, stored: LatticePoint) -> (f64, f64) {
    let (q, p) = stored;
    match kind {
        TilingKind::Square => (p as f64, q as f64),
        _ => (p as f64 / 2.0, q as f64 * 3f64.sqrt() / 2.0),
    }
}

/// `d x d` block of the square tiling (the pattern graph packed into
/// square grids). `square_block(2)` is the 4-cycle.
pub fn square_block(d: u32) -> Graph {
    assert!(d >= 2);
    grid_section(GridSpec {
        kind: TilingKind::Square,
        n: d,
    })
    .graph
}

// ---------------------------------------------------------------------------
// Non-monotonicity gadget
// ---------------------------------------------------------------------------

/// A pair of graphs on k-cycles: `prime` is a base cycle with one extra
/// edge-disjoint cycle glued to each of its edges; `reduced` deletes the
/// base cycle's first edge. Minimum maximal cycle packings jump from 1
/// to k-1 across that deletion.
#[derive(Clone, Debug)]
pub struct MonotonicityGadget {
    pub prime: Graph,
    pub reduced: Graph,
    /// Edges of the base cycle as vertex pairs (valid in `prime`).
    pub base_edges: Vec<(u32, u32)>,
}

pub fn monotonicity_gadget(k: u32) -> MonotonicityGadget {
    assert!(k >= 3, "gadget needs k >= 3");
    let base_edges: Vec<(u32, u32)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    let mut edges = base_edges.clone();
    let mut next = k;
    for &(u, v) in &base_edges {
        // Glue a fresh cycle sharing exactly the edge (u, v): the path
        // v -> w_1 -> ... -> w_{k-2} -> u plus the shared edge.
        let mut prev = v;
        for _ in 0..(k - 2) {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, u));
    }
    let n = next;
    let prime = Graph::new(n, edges.clone()).expect("gadget is simple");
    let reduced_edges: Vec<(u32, u32)> = edges
        .iter()
        .copied()
        .filter(|&e| e != base_edges[0])
        .collect();
    let reduced = Graph::new(n, reduced_edges).expect("gadget minus an edge is simple");
    MonotonicityGadget {
        prime,
        reduced,
        base_edges,
    }
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

/// Erdős–Rényi graph with a fixed seed; used by the test batteries.
pub fn random_graph(n: u32, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("sampled simple graph")
}
