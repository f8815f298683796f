//! Immutable undirected simple graphs with stable, dense edge ids.
//!
//! Edge ids are assigned in lexicographic order of the normalized pair
//! `(u, v)` with `u < v`, so serializing and re-parsing a graph yields
//! identical ids. Everything downstream (copy tables, packings,
//! certificates) refers to edges by these ids.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(u32, u32),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: u32, n: u32 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected header `p edge <n> <m>`")]
    BadHeader { line: usize },
    #[error("missing `p edge` header")]
    MissingHeader,
    #[error("line {line}: unrecognized record {record:?}")]
    UnknownRecord { line: usize, record: String },
    #[error("line {line}: malformed edge")]
    BadEdge { line: usize },
    #[error("line {line}: vertex {vertex} out of range (graph has {n} vertices)")]
    VertexOutOfRange { line: usize, vertex: u32, n: u32 },
    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: u32, v: u32 },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: u32 },
    #[error("header declared {declared} edges but file lists {actual}")]
    EdgeCountMismatch { declared: usize, actual: usize },
    #[error("line {line}: malformed coordinate record")]
    BadCoord { line: usize },
}

/// Undirected simple graph. Vertices are `0..n`; edges are stored as
/// `(u, v)` with `u < v`, sorted lexicographically, and identified by
/// their index in that order.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    n: u32,
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
    coords: Option<Vec<(f64, f64)>>,
}

impl Graph {
    pub fn new(n: u32, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, GraphError> {
        let mut norm: Vec<(u32, u32)> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        for w in norm.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        let mut adj = vec![Vec::new(); n as usize];
        for &(u, v) in &norm {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: norm,
            adj,
            coords: None,
        })
    }

    #[inline]
    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Endpoints of the edge with the given id.
    #[inline]
    pub fn edge(&self, id: u32) -> (u32, u32) {
        self.edges[id as usize]
    }

    /// Id of the edge `{u, v}`, if present.
    pub fn edge_id(&self, u: u32, v: u32) -> Option<u32> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok().map(|i| i as u32)
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    /// Greatest common divisor of the vertex degrees, ignoring isolated
    /// vertices. Returns 0 for an empty graph.
    pub fn degree_gcd(&self) -> u64 {
        let mut g = 0u64;
        for list in &self.adj {
            g = num_integer::gcd(g, list.len() as u64);
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n as usize];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in self.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Planar coordinates per vertex, present on tiling sections.
    pub fn coords(&self) -> Option<&[(f64, f64)]> {
        self.coords.as_deref()
    }

    pub fn set_coords(&mut self, coords: Vec<(f64, f64)>) {
        assert_eq!(coords.len(), self.n as usize);
        self.coords = Some(coords);
    }

    /// Subgraph on the given edge ids, keeping the vertex set. Used to
    /// re-check extremal-number witnesses.
    pub fn edge_subgraph(&self, edge_ids: &[u32]) -> Graph {
        let edges: Vec<(u32, u32)> = edge_ids.iter().map(|&e| self.edge(e)).collect();
        Graph::new(self.n, edges).expect("subset of existing edges is valid")
    }
}

/// Hash-stable identity for CLI artifacts: the normalized serialization.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphId(pub String);

pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str(&format!("p edge {} {}\n", g.vertex_count(), g.edge_count()));
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    if let Some(coords) = g.coords() {
        for (v, (x, y)) in coords.iter().enumerate() {
            out.push_str(&format!("x coord {} {:.6} {:.6}\n", v + 1, x, y));
        }
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut n: Option<u32> = None;
    let mut declared_m = 0usize;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();
    let mut coords: Vec<(usize, u32, f64, f64)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('c') {
            continue;
        }
        let mut it = t.split_whitespace();
        match it.next() {
            Some("p") => {
                let ok = it.next() == Some("edge");
                let nv = it.next().and_then(|s| s.parse::<u32>().ok());
                let ne = it.next().and_then(|s| s.parse::<usize>().ok());
                match (ok, nv, ne) {
                    (true, Some(nv), Some(ne)) if it.next().is_none() => {
                        n = Some(nv);
                        declared_m = ne;
                    }
                    _ => return Err(ParseError::BadHeader { line }),
                }
            }
            Some("e") => {
                let n = n.ok_or(ParseError::MissingHeader)?;
                let u = it.next().and_then(|s| s.parse::<u32>().ok());
                let v = it.next().and_then(|s| s.parse::<u32>().ok());
                let (u, v) = match (u, v) {
                    (Some(u), Some(v)) if it.next().is_none() => (u, v),
                    _ => return Err(ParseError::BadEdge { line }),
                };
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(ParseError::VertexOutOfRange {
                            line,
                            vertex: w,
                            n,
                        });
                    }
                }
                if u == v {
                    return Err(ParseError::SelfLoop {
                        line,
                        vertex: u,
                    });
                }
                edges.push((u - 1, v - 1));
                edge_lines.push(line);
            }
            Some("x") => {
                let n = n.ok_or(ParseError::MissingHeader)?;
                let ok = it.next() == Some("coord");
                let v = it.next().and_then(|s| s.parse::<u32>().ok());
                let x = it.next().and_then(|s| s.parse::<f64>().ok());
                let y = it.next().and_then(|s| s.parse::<f64>().ok());
                match (ok, v, x, y) {
                    (true, Some(v), Some(x), Some(y)) if it.next().is_none() => {
                        if v == 0 || v > n {
                            return Err(ParseError::VertexOutOfRange {
                                line,
                                vertex: v,
                                n,
                            });
                        }
                        coords.push((line, v - 1, x, y));
                    }
                    _ => return Err(ParseError::BadCoord { line }),
                }
            }
            Some(other) => {
                return Err(ParseError::UnknownRecord {
                    line,
                    record: other.to_string(),
                })
            }
            None => unreachable!(),
        }
    }

    let n = n.ok_or(ParseError::MissingHeader)?;
    if edges.len() != declared_m {
        return Err(ParseError::EdgeCountMismatch {
            declared: declared_m,
            actual: edges.len(),
        });
    }

    // Report duplicates with the offending line number.
    {
        let mut seen = std::collections::HashSet::new();
        for (&(u, v), &line) in edges.iter().zip(&edge_lines) {
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(ParseError::DuplicateEdge {
                    line,
                    u: u + 1,
                    v: v + 1,
                });
            }
        }
    }

    let mut g = Graph::new(n, edges).expect("validated above");
    if !coords.is_empty() {
        let mut full = vec![(0.0, 0.0); n as usize];
        let mut have = vec![false; n as usize];
        for (_, v, x, y) in &coords {
            full[*v as usize] = (*x, *y);
            have[*v as usize] = true;
        }
        // Coordinates are all-or-nothing; partial sets are dropped.
        if have.iter().all(|&b| b) {
            g.set_coords(full);
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_from_text() {
        let g = parse_graph("c a triangle\np edge 3 3\ne 1 2\ne 1 3\ne 2 3\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.edge_id(0, 1), Some(0));
        assert_eq!(g.edge_id(2, 1), Some(2));
    }

    #[test]
    fn roundtrip_is_normalizing() {
        let text = "p edge 4 3\ne 4 2\ne 1 2\ne 3 1\n";
        let g = parse_graph(text).unwrap();
        let s = serialize_graph(&g);
        assert_eq!(s, "p edge 4 3\ne 1 2\ne 1 3\ne 2 4\n");
        let g2 = parse_graph(&s).unwrap();
        assert_eq!(g, g2);
        assert_eq!(serialize_graph(&g2), s);
    }

    #[test]
    fn duplicate_edge_names_line() {
        let err = parse_graph("p edge 3 3\ne 1 2\ne 1 3\ne 2 1\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::DuplicateEdge {
                line: 4,
                u: 2,
                v: 1
            }
        );
    }

    #[test]
    fn header_and_range_errors() {
        assert!(matches!(
            parse_graph("e 1 2\n"),
            Err(ParseError::MissingHeader)
        ));
        assert!(matches!(
            parse_graph("p edge 2 1\ne 1 3\n"),
            Err(ParseError::VertexOutOfRange { line: 2, vertex: 3, .. })
        ));
        assert!(matches!(
            parse_graph("p edge 2 2\ne 1 2\n"),
            Err(ParseError::EdgeCountMismatch { declared: 2, actual: 1 })
        ));
    }

    #[test]
    fn edge_ids_are_lexicographic() {
        let g = Graph::new(4, [(2, 3), (0, 1), (1, 2), (0, 3)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert_eq!(g.edge(1), (0, 3));
        assert_eq!(g.neighbors(0), &[1, 3]);
    }

    #[test]
    fn build_errors() {
        assert_eq!(
            Graph::new(3, [(1, 1)]).unwrap_err(),
            GraphError::SelfLoop(1)
        );
        assert_eq!(
            Graph::new(3, [(0, 1), (1, 0)]).unwrap_err(),
            GraphError::DuplicateEdge(0, 1)
        );
        assert!(matches!(
            Graph::new(2, [(0, 5)]),
            Err(GraphError::VertexOutOfRange { vertex: 5, n: 2 })
        ));
    }

    #[test]
    fn coords_roundtrip() {
        let mut g = Graph::new(2, [(0, 1)]).unwrap();
        g.set_coords(vec![(0.0, 0.0), (1.0, 0.0)]);
        let s = serialize_graph(&g);
        let g2 = parse_graph(&s).unwrap();
        assert_eq!(g2.coords().unwrap()[1], (1.0, 0.0));
    }
}
