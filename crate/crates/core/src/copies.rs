//! Enumeration of all copies of a pattern graph inside a host graph.
//!
//! A copy is a subgraph of the host isomorphic to the pattern, stored as
//! its sorted set of host edge ids. Automorphic images collapse to one
//! copy, matching the packing semantics: what gets packed is the
//! subgraph, not the embedding. Copy ordering is canonical
//! (lexicographic over sorted edge-id sets) regardless of enumeration
//! order or parallelism, so solver traces and certificates reproduce.

use crate::graph::Graph;
use std::collections::BTreeSet;
use thiserror::Error;

/// Default limit on the number of copies an enumeration may produce.
pub const DEFAULT_COPY_BUDGET: usize = 5_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CopyEnumError {
    #[error("pattern has no edges")]
    EmptyPattern,
    #[error("pattern has an isolated vertex ({0}); a copy is determined by its edge set")]
    IsolatedPatternVertex(u32),
    #[error("copy budget {budget} exceeded (at least {found} copies)")]
    BudgetExceeded { budget: usize, found: usize },
    #[error("subcube parameters need 1 <= d <= n, got n={n}, d={d}")]
    BadSubcubeParams { n: u32, d: u32 },
    #[error(transparent)]
    Generator(#[from] crate::generators::GeneratorError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CopyTableParseError {
    #[error("line {line}: malformed record")]
    BadRecord { line: usize },
    #[error("missing `t` header line")]
    MissingHeader,
    #[error("line {line}: copy id {id} out of order (expected {expected})")]
    OutOfOrder { line: usize, id: usize, expected: usize },
    #[error("line {line}: edge id {edge} out of range ({m} host edges)")]
    EdgeOutOfRange { line: usize, edge: u32, m: usize },
    #[error("line {line}: copy has {got} edges, pattern has {want}")]
    WrongCopySize { line: usize, got: usize, want: usize },
    #[error("declared {declared} copies, found {actual}")]
    CountMismatch { declared: usize, actual: usize },
}

/// All copies of one pattern in one host, with the edge -> copies
/// incidence transpose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopyTable {
    host_edge_count: usize,
    pattern_edge_count: usize,
    copies: Vec<Vec<u32>>,
    incidence: Vec<Vec<u32>>,
}

impl CopyTable {
    /// Builds a table from raw copies (each a set of host edge ids).
    /// Copies are sorted internally, deduplicated, and put in canonical
    /// order.
    pub fn from_copies(
        host_edge_count: usize,
        pattern_edge_count: usize,
        copies: impl IntoIterator<Item = Vec<u32>>,
    ) -> CopyTable {
        let mut set: BTreeSet<Vec<u32>> = BTreeSet::new();
        for mut c in copies {
            c.sort_unstable();
            c.dedup();
            debug_assert_eq!(c.len(), pattern_edge_count);
            set.insert(c);
        }
        let copies: Vec<Vec<u32>> = set.into_iter().collect();
        let mut incidence = vec![Vec::new(); host_edge_count];
        for (ci, copy) in copies.iter().enumerate() {
            for &e in copy {
                incidence[e as usize].push(ci as u32);
            }
        }
        CopyTable {
            host_edge_count,
            pattern_edge_count,
            copies,
            incidence,
        }
    }

    pub fn len(&self) -> usize {
        self.copies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.copies.is_empty()
    }

    pub fn host_edge_count(&self) -> usize {
        self.host_edge_count
    }

    pub fn pattern_edge_count(&self) -> usize {
        self.pattern_edge_count
    }

    /// Sorted edge ids of one copy.
    pub fn copy(&self, id: u32) -> &[u32] {
        &self.copies[id as usize]
    }

    pub fn copies(&self) -> &[Vec<u32>] {
        &self.copies
    }

    /// Sorted copy ids containing the given edge.
    pub fn copies_with_edge(&self, edge: u32) -> &[u32] {
        &self.incidence[edge as usize]
    }

    pub fn incidence(&self) -> &[Vec<u32>] {
        &self.incidence
    }

    /// Index of a copy given by its edge set, if present.
    pub fn find_copy(&self, edge_set: &mut Vec<u32>) -> Option<u32> {
        edge_set.sort_unstable();
        self.copies
            .binary_search_by(|c| c.as_slice().cmp(edge_set.as_slice()))
            .ok()
            .map(|i| i as u32)
    }

    /// True when the two copies share at least one edge.
    pub fn copies_intersect(&self, a: u32, b: u32) -> bool {
        let (ca, cb) = (self.copy(a), self.copy(b));
        let (mut i, mut j) = (0, 0);
        while i < ca.len() && j < cb.len() {
            match ca[i].cmp(&cb[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }
}

/// Enumeration knobs. `threads > 1` splits the search over root
/// vertices; the canonical output order makes the result identical.
#[derive(Clone, Copy, Debug)]
pub struct EnumConfig {
    pub budget: usize,
    pub threads: usize,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            budget: DEFAULT_COPY_BUDGET,
            threads: 1,
        }
    }
}

/// Enumerates all copies of `pattern` in `host` as edge sets.
pub fn enumerate_copies(host: &Graph, pattern: &Graph) -> Result<CopyTable, CopyEnumError> {
    enumerate_copies_with(host, pattern, &EnumConfig::default())
}

pub fn enumerate_copies_with(
    host: &Graph,
    pattern: &Graph,
    cfg: &EnumConfig,
) -> Result<CopyTable, CopyEnumError> {
    if pattern.edge_count() == 0 {
        return Err(CopyEnumError::EmptyPattern);
    }
    for v in 0..pattern.vertex_count() {
        if pattern.degree(v) == 0 {
            return Err(CopyEnumError::IsolatedPatternVertex(v));
        }
    }

    let order = pattern_order(pattern);
    let roots: Vec<u32> = (0..host.vertex_count()).collect();

    let run_shard = |shard: &[u32]| -> Result<BTreeSet<Vec<u32>>, CopyEnumError> {
        let mut found = BTreeSet::new();
        let mut assign = vec![u32::MAX; pattern.vertex_count() as usize];
        let mut used = vec![false; host.vertex_count() as usize];
        for &root in shard {
            assign[order[0] as usize] = root;
            used[root as usize] = true;
            extend(
                host,
                pattern,
                &order,
                1,
                &mut assign,
                &mut used,
                &mut found,
                cfg.budget,
            )?;
            used[root as usize] = false;
            assign[order[0] as usize] = u32::MAX;
        }
        Ok(found)
    };

    let merged: BTreeSet<Vec<u32>> = if cfg.threads > 1 && roots.len() > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .expect("thread pool");
        let chunk = roots.len().div_ceil(cfg.threads * 4).max(1);
        let shards: Vec<Result<BTreeSet<Vec<u32>>, CopyEnumError>> = pool.install(|| {
            roots
                .par_chunks(chunk)
                .map(run_shard)
                .collect()
        });
        let mut all = BTreeSet::new();
        for s in shards {
            all.extend(s?);
        }
        all
    } else {
        run_shard(&roots)?
    };

    if merged.len() > cfg.budget {
        return Err(CopyEnumError::BudgetExceeded {
            budget: cfg.budget,
            found: merged.len(),
        });
    }
    Ok(CopyTable::from_copies(
        host.edge_count(),
        pattern.edge_count(),
        merged,
    ))
}

/// Connected search order over pattern vertices: start at a max-degree
/// vertex, then repeatedly take the vertex with the most already-placed
/// neighbors (ties by index). Patterns here are connected (isolated
/// vertices are rejected, and disconnected patterns without isolated
/// vertices are ordered component by component).
fn pattern_order(pattern: &Graph) -> Vec<u32> {
    let n = pattern.vertex_count() as usize;
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let start = (0..n as u32)
            .filter(|&v| !placed[v as usize])
            .max_by_key(|&v| pattern.degree(v))
            .expect("unplaced vertex exists");
        placed[start as usize] = true;
        order.push(start);
        loop {
            let next = (0..n as u32)
                .filter(|&v| !placed[v as usize])
                .map(|v| {
                    let anchored = pattern
                        .neighbors(v)
                        .iter()
                        .filter(|&&w| placed[w as usize])
                        .count();
                    (anchored, v)
                })
                .filter(|&(anchored, _)| anchored > 0)
                .max_by_key(|&(anchored, v)| (anchored, std::cmp::Reverse(v)));
            match next {
                Some((_, v)) => {
                    placed[v as usize] = true;
                    order.push(v);
                }
                None => break,
            }
        }
    }
    order
}

#[allow(clippy::too_many_arguments)]
fn extend(
    host: &Graph,
    pattern: &Graph,
    order: &[u32],
    depth: usize,
    assign: &mut [u32],
    used: &mut [bool],
    found: &mut BTreeSet<Vec<u32>>,
    budget: usize,
) -> Result<(), CopyEnumError> {
    if depth == order.len() {
        let mut edge_set: Vec<u32> = pattern
            .edges()
            .iter()
            .map(|&(a, b)| {
                host.edge_id(assign[a as usize], assign[b as usize])
                    .expect("mapped pattern edge exists in host")
            })
            .collect();
        edge_set.sort_unstable();
        found.insert(edge_set);
        if found.len() > budget {
            return Err(CopyEnumError::BudgetExceeded {
                budget,
                found: found.len(),
            });
        }
        return Ok(());
    }

    let pv = order[depth];
    let anchors: Vec<u32> = pattern
        .neighbors(pv)
        .iter()
        .copied()
        .filter(|&w| assign[w as usize] != u32::MAX)
        .collect();

    let candidates: Vec<u32> = match anchors.first() {
        Some(&a0) => host.neighbors(assign[a0 as usize]).to_vec(),
        None => (0..host.vertex_count()).collect(),
    };

    'cand: for cand in candidates {
        if used[cand as usize] || host.degree(cand) < pattern.degree(pv) {
            continue;
        }
        for &a in &anchors {
            if !host.has_edge(cand, assign[a as usize]) {
                continue 'cand;
            }
        }
        assign[pv as usize] = cand;
        used[cand as usize] = true;
        extend(host, pattern, order, depth + 1, assign, used, found, budget)?;
        used[cand as usize] = false;
        assign[pv as usize] = u32::MAX;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Subcubes of hypercubes
// ---------------------------------------------------------------------------

/// Number of d-dimensional subcubes of the n-cube: `2^(n-d) * C(n, d)`.
pub fn count_subcubes(n: u32, d: u32) -> u64 {
    assert!(d >= 1 && d <= n);
    (1u64 << (n - d)) * binomial(n as u64, d as u64)
}

/// Number of d-dimensional subcubes containing a fixed edge:
/// `C(n-1, d-1)`.
pub fn edge_subcube_degree(n: u32, d: u32) -> u64 {
    assert!(d >= 1 && d <= n);
    binomial((n - 1) as u64, (d - 1) as u64)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// A subcube as a star vector: `mask` marks the free coordinates
/// (exactly d of them), `base` fixes the remaining ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubcubeVector {
    pub n: u32,
    pub star_mask: u32,
    pub base: u32,
}

impl SubcubeVector {
    /// Host edge ids of this subcube's edges.
    pub fn edge_set(&self, host: &Graph) -> Vec<u32> {
        let stars: Vec<u32> = (0..self.n).filter(|&i| self.star_mask >> i & 1 == 1).collect();
        let d = stars.len();
        let mut edges = Vec::with_capacity(d << d.saturating_sub(1));
        for sub in 0..(1u32 << d) {
            let mut v = self.base;
            for (bit, &coord) in stars.iter().enumerate() {
                if sub >> bit & 1 == 1 {
                    v |= 1 << coord;
                }
            }
            for &coord in &stars {
                let w = v | (1 << coord);
                if w != v {
                    edges.push(host.edge_id(v, w).expect("subcube edge in host"));
                }
            }
        }
        edges.sort_unstable();
        edges
    }
}

/// All subcube vectors with d stars in dimension n.
pub fn subcube_vectors(n: u32, d: u32) -> Vec<SubcubeVector> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() != d {
            continue;
        }
        let fixed = !mask & ((1 << n) - 1);
        let fixed_bits: Vec<u32> = (0..n).filter(|&i| fixed >> i & 1 == 1).collect();
        for pick in 0..(1u32 << fixed_bits.len()) {
            let mut base = 0u32;
            for (bit, &coord) in fixed_bits.iter().enumerate() {
                if pick >> bit & 1 == 1 {
                    base |= 1 << coord;
                }
            }
            out.push(SubcubeVector {
                n,
                star_mask: mask,
                base,
            });
        }
    }
    out
}

/// Copy table of all `Q_d` copies in `Q_n`, computed via star vectors
/// rather than generic isomorphism search. Agrees with
/// `enumerate_copies(Q_n, Q_d)` as a set of edge sets.
pub fn enumerate_subcubes(n: u32, d: u32) -> Result<(Graph, CopyTable), CopyEnumError> {
    if d < 1 || d > n {
        return Err(CopyEnumError::BadSubcubeParams { n, d });
    }
    let host = crate::generators::hypercube(n)?;
    let copies: Vec<Vec<u32>> = subcube_vectors(n, d)
        .iter()
        .map(|sv| sv.edge_set(&host))
        .collect();
    let table = CopyTable::from_copies(host.edge_count(), (d as usize) << (d - 1) as usize, copies);
    Ok((host, table))
}

// ---------------------------------------------------------------------------
// Text export (consumed by the solver and verifier CLI paths)
// ---------------------------------------------------------------------------

pub fn write_copy_table(table: &CopyTable) -> String {
    let mut out = format!(
        "t copies {} host-edges {} pattern-edges {}\n",
        table.len(),
        table.host_edge_count(),
        table.pattern_edge_count()
    );
    for (i, copy) in table.copies().iter().enumerate() {
        out.push_str(&format!("k {}", i));
        for &e in copy {
            out.push_str(&format!(" {e}"));
        }
        out.push('\n');
    }
    out
}

pub fn parse_copy_table(text: &str) -> Result<CopyTable, CopyTableParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut copies: Vec<Vec<u32>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('c') {
            continue;
        }
        let mut it = t.split_whitespace();
        match it.next() {
            Some("t") => {
                let rest: Vec<&str> = it.collect();
                if rest.len() != 6
                    || rest[0] != "copies"
                    || rest[2] != "host-edges"
                    || rest[4] != "pattern-edges"
                {
                    return Err(CopyTableParseError::BadRecord { line });
                }
                let c = rest[1].parse().map_err(|_| CopyTableParseError::BadRecord { line })?;
                let m = rest[3].parse().map_err(|_| CopyTableParseError::BadRecord { line })?;
                let h = rest[5].parse().map_err(|_| CopyTableParseError::BadRecord { line })?;
                header = Some((c, m, h));
            }
            Some("k") => {
                let (_, m, h) = header.ok_or(CopyTableParseError::MissingHeader)?;
                let id: usize = it
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or(CopyTableParseError::BadRecord { line })?;
                if id != copies.len() {
                    return Err(CopyTableParseError::OutOfOrder {
                        line,
                        id,
                        expected: copies.len(),
                    });
                }
                let mut edges = Vec::new();
                for tok in it {
                    let e: u32 = tok
                        .parse()
                        .map_err(|_| CopyTableParseError::BadRecord { line })?;
                    if e as usize >= m {
                        return Err(CopyTableParseError::EdgeOutOfRange { line, edge: e, m });
                    }
                    edges.push(e);
                }
                if edges.len() != h {
                    return Err(CopyTableParseError::WrongCopySize {
                        line,
                        got: edges.len(),
                        want: h,
                    });
                }
                copies.push(edges);
            }
            _ => return Err(CopyTableParseError::BadRecord { line }),
        }
    }
    let (c, m, h) = header.ok_or(CopyTableParseError::MissingHeader)?;
    if copies.len() != c {
        return Err(CopyTableParseError::CountMismatch {
            declared: c,
            actual: copies.len(),
        });
    }
    Ok(CopyTable::from_copies(m, h, copies))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, hypercube, turan};

    #[test]
    fn triangles_in_k4() {
        let k4 = complete(4);
        let table = enumerate_copies(&k4, &complete(3)).unwrap();
        assert_eq!(table.len(), 4);
        for copy in table.copies() {
            assert_eq!(copy.len(), 3);
        }
    }

    #[test]
    fn triangle_counts_in_complete_graphs() {
        for n in 3..=8u32 {
            let table = enumerate_copies(&complete(n), &complete(3)).unwrap();
            assert_eq!(table.len() as u64, binomial(n as u64, 3));
        }
    }

    #[test]
    fn bipartite_host_has_no_triangles() {
        let host = turan(6, 2).unwrap().graph;
        let table = enumerate_copies(&host, &complete(3)).unwrap();
        assert!(table.is_empty());
    }

    #[test]
    fn turan_graphs_are_clique_free() {
        for n in 4..=12u32 {
            for k in 2..=4u32.min(n - 1) {
                let host = turan(n, k).unwrap().graph;
                let table = enumerate_copies(&host, &complete(k + 1)).unwrap();
                assert!(table.is_empty(), "T({n},{k}) contains K_{}", k + 1);
            }
        }
    }

    #[test]
    fn q3_q2_has_six_faces() {
        let (host, table) = enumerate_subcubes(3, 2).unwrap();
        assert_eq!(table.len(), 6);
        for copy in table.copies() {
            assert_eq!(copy.len(), 4);
        }
        let generic = enumerate_copies(&host, &hypercube(2).unwrap()).unwrap();
        assert_eq!(generic, table);
    }

    #[test]
    fn subcube_counts_match_closed_forms() {
        assert_eq!(count_subcubes(3, 2), 6);
        assert_eq!(edge_subcube_degree(3, 2), 2);
        assert_eq!(count_subcubes(5, 2), 80);
        assert_eq!(edge_subcube_degree(5, 2), 4);
        assert_eq!(count_subcubes(4, 2), 24);
        for d in 1..=6u32 {
            assert_eq!(count_subcubes(d, d), 1);
            assert_eq!(edge_subcube_degree(d, d), 1);
        }
        for n in 1..=6u32 {
            for d in 1..=n.min(3) {
                let (_, table) = enumerate_subcubes(n, d).unwrap();
                assert_eq!(table.len() as u64, count_subcubes(n, d));
                for e in 0..table.host_edge_count() {
                    assert_eq!(
                        table.copies_with_edge(e as u32).len() as u64,
                        edge_subcube_degree(n, d)
                    );
                }
            }
        }
    }

    #[test]
    fn subcube_enumeration_matches_generic_search() {
        for (n, d) in [(3u32, 2u32), (4, 2), (4, 3), (5, 2)] {
            let (host, fast) = enumerate_subcubes(n, d).unwrap();
            let slow = enumerate_copies(&host, &hypercube(d).unwrap()).unwrap();
            assert_eq!(fast, slow, "n={n}, d={d}");
        }
    }

    #[test]
    fn whole_cube_is_single_copy() {
        for n in 1..=4u32 {
            let (host, table) = enumerate_subcubes(n, n).unwrap();
            assert_eq!(table.len(), 1);
            assert_eq!(table.copy(0).len(), host.edge_count());
        }
    }

    #[test]
    fn q2_copies_pairwise_share_at_most_one_edge() {
        for n in 2..=5u32 {
            let (_, table) = enumerate_subcubes(n, 2).unwrap();
            for a in 0..table.len() as u32 {
                for b in (a + 1)..table.len() as u32 {
                    let ca = table.copy(a);
                    let cb = table.copy(b);
                    let shared = ca.iter().filter(|e| cb.contains(e)).count();
                    assert!(shared <= 1, "n={n}: copies {a},{b} share {shared} edges");
                }
            }
        }
    }

    #[test]
    fn incidence_is_transpose() {
        let (_, table) = enumerate_subcubes(4, 2).unwrap();
        for (ci, copy) in table.copies().iter().enumerate() {
            for &e in copy {
                assert!(table.copies_with_edge(e).contains(&(ci as u32)));
            }
        }
        for e in 0..table.host_edge_count() as u32 {
            for &ci in table.copies_with_edge(e) {
                assert!(table.copy(ci).contains(&e));
            }
        }
    }

    #[test]
    fn rejects_degenerate_patterns() {
        let host = complete(4);
        let isolated = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(
            enumerate_copies(&host, &isolated).unwrap_err(),
            CopyEnumError::IsolatedPatternVertex(2)
        );
        let empty = Graph::new(2, []).unwrap();
        assert_eq!(
            enumerate_copies(&host, &empty).unwrap_err(),
            CopyEnumError::EmptyPattern
        );
    }

    #[test]
    fn budget_is_enforced() {
        let cfg = EnumConfig {
            budget: 3,
            threads: 1,
        };
        let err = enumerate_copies_with(&complete(5), &complete(3), &cfg).unwrap_err();
        match err {
            CopyEnumError::BudgetExceeded { budget: 3, found } => assert!(found >= 4),
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn parallel_enumeration_is_canonical() {
        let host = hypercube(4).unwrap();
        let pat = cycle(4);
        let seq = enumerate_copies(&host, &pat).unwrap();
        let par = enumerate_copies_with(
            &host,
            &pat,
            &EnumConfig {
                budget: DEFAULT_COPY_BUDGET,
                threads: 4,
            },
        )
        .unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn export_roundtrip() {
        let (_, table) = enumerate_subcubes(3, 2).unwrap();
        let text = write_copy_table(&table);
        let back = parse_copy_table(&text).unwrap();
        assert_eq!(table, back);
    }

    #[test]
    fn cycles_in_gadget_all_touch_base() {
        for k in 3..=6u32 {
            let g = crate::generators::monotonicity_gadget(k);
            let table = enumerate_copies(&g.prime, &cycle(k)).unwrap();
            assert_eq!(table.len() as u32, k + 1, "k={k}");
            let base_ids: Vec<u32> = g
                .base_edges
                .iter()
                .map(|&(u, v)| g.prime.edge_id(u, v).unwrap())
                .collect();
            for copy in table.copies() {
                assert!(
                    copy.iter().any(|e| base_ids.contains(e)),
                    "k={k}: copy misses the base cycle"
                );
            }
            let reduced_table = enumerate_copies(&g.reduced, &cycle(k)).unwrap();
            assert_eq!(reduced_table.len() as u32, k - 1, "k={k} reduced");
        }
    }
}
