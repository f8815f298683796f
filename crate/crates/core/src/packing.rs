//! Packings, their certificates, and deterministic greedy completion.
//!
//! A packing is a set of copy indices into a [`CopyTable`] claimed
//! pairwise edge-disjoint. Certificates carry a witness that can be
//! re-checked in O(pattern edges) against the table, so external
//! verifiers never have to trust the checker.

use crate::bitset::BitSet;
use crate::copies::CopyTable;
use crate::rational::Rational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PackingError {
    #[error("copy index {index} out of range ({len} copies)")]
    IndexOutOfRange { index: u32, len: usize },
    #[error("packing is invalid: members {a} and {b} share edge {edge}")]
    InvalidPacking { a: u32, b: u32, edge: u32 },
    #[error("covered fraction undefined: host has no edges")]
    EmptyHost,
    #[error("line {line}: malformed packing record")]
    BadRecord { line: usize },
}

/// A (claimed) packing: sorted member copy ids plus the covered-edge mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Packing {
    members: Vec<u32>,
    covered: BitSet,
}

impl Packing {
    /// Builds a packing over `table`. Members are sorted and
    /// deduplicated; overlap between members is allowed here (that is
    /// what [`check_packing`] reports on).
    pub fn new(
        table: &CopyTable,
        members: impl IntoIterator<Item = u32>,
    ) -> Result<Packing, PackingError> {
        let mut members: Vec<u32> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        let mut covered = BitSet::new(table.host_edge_count());
        for &m in &members {
            if m as usize >= table.len() {
                return Err(PackingError::IndexOutOfRange {
                    index: m,
                    len: table.len(),
                });
            }
            for &e in table.copy(m) {
                covered.insert(e as usize);
            }
        }
        Ok(Packing { members, covered })
    }

    pub fn empty(table: &CopyTable) -> Packing {
        Packing {
            members: Vec::new(),
            covered: BitSet::new(table.host_edge_count()),
        }
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn covered(&self) -> &BitSet {
        &self.covered
    }

    pub fn covered_count(&self) -> usize {
        self.covered.count()
    }

    pub fn contains(&self, copy: u32) -> bool {
        self.members.binary_search(&copy).is_ok()
    }
}

/// Machine-checkable verdicts about a packing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "witness", rename_all = "snake_case")]
pub enum Certificate {
    ValidPacking,
    InvalidOverlap {
        member_a: u32,
        member_b: u32,
        shared_edge: u32,
    },
    Maximal,
    NotMaximal {
        addable_copy: u32,
    },
}

/// Checks pairwise edge-disjointness of the members.
pub fn check_packing(table: &CopyTable, packing: &Packing) -> Certificate {
    let mut owner: Vec<Option<u32>> = vec![None; table.host_edge_count()];
    for &m in packing.members() {
        for &e in table.copy(m) {
            match owner[e as usize] {
                Some(prev) => {
                    return Certificate::InvalidOverlap {
                        member_a: prev,
                        member_b: m,
                        shared_edge: e,
                    }
                }
                None => owner[e as usize] = Some(m),
            }
        }
    }
    Certificate::ValidPacking
}

/// Checks maximality: no copy in the table is edge-disjoint from the
/// covered set. Scans copies incident to uncovered edges (any addable
/// copy consists solely of uncovered edges, so this finds one if it
/// exists); the verdict does not depend on the scan order.
pub fn check_maximal(table: &CopyTable, packing: &Packing) -> Result<Certificate, PackingError> {
    if let Certificate::InvalidOverlap {
        member_a,
        member_b,
        shared_edge,
    } = check_packing(table, packing)
    {
        return Err(PackingError::InvalidPacking {
            a: member_a,
            b: member_b,
            edge: shared_edge,
        });
    }
    let covered = packing.covered();
    for e in 0..table.host_edge_count() {
        if covered.contains(e) {
            continue;
        }
        for &c in table.copies_with_edge(e as u32) {
            if copy_disjoint(table, c, covered) {
                return Ok(Certificate::NotMaximal { addable_copy: c });
            }
        }
    }
    Ok(Certificate::Maximal)
}

#[inline]
pub(crate) fn copy_disjoint(table: &CopyTable, copy: u32, covered: &BitSet) -> bool {
    table.copy(copy).iter().all(|&e| !covered.contains(e as usize))
}

/// Re-verifies a certificate against the table and packing it was
/// issued for. Witnesses check in O(pattern edges).
pub fn recheck_certificate(table: &CopyTable, packing: &Packing, cert: &Certificate) -> bool {
    match *cert {
        Certificate::ValidPacking => {
            matches!(check_packing(table, packing), Certificate::ValidPacking)
        }
        Certificate::InvalidOverlap {
            member_a,
            member_b,
            shared_edge,
        } => {
            member_a != member_b
                && packing.contains(member_a)
                && packing.contains(member_b)
                && table.copy(member_a).contains(&shared_edge)
                && table.copy(member_b).contains(&shared_edge)
        }
        Certificate::Maximal => {
            matches!(check_maximal(table, packing), Ok(Certificate::Maximal))
        }
        Certificate::NotMaximal { addable_copy } => {
            (addable_copy as usize) < table.len()
                && !packing.contains(addable_copy)
                && copy_disjoint(table, addable_copy, packing.covered())
        }
    }
}

/// Extends a valid packing to a maximal one by scanning copies in the
/// given order and adding each copy that is edge-disjoint from the
/// running covered set. Deterministic for a fixed order; the result
/// contains the input.
pub fn greedy_maximalize(table: &CopyTable, packing: &Packing, order: &[u32]) -> Packing {
    let mut covered = packing.covered().clone();
    let mut members = packing.members().to_vec();
    for &c in order {
        if copy_disjoint(table, c, &covered) {
            members.push(c);
            for &e in table.copy(c) {
                covered.insert(e as usize);
            }
        }
    }
    members.sort_unstable();
    Packing { members, covered }
}

/// The identity order 0..len, the CLI default for greedy completion.
pub fn lexicographic_order(table: &CopyTable) -> Vec<u32> {
    (0..table.len() as u32).collect()
}

/// Fraction of host edges covered, as an exact rational.
pub fn covered_fraction(table: &CopyTable, packing: &Packing) -> Result<Rational, PackingError> {
    if table.host_edge_count() == 0 {
        return Err(PackingError::EmptyHost);
    }
    Ok(Rational::new(
        packing.covered_count() as i64,
        table.host_edge_count() as i64,
    ))
}

// ---------------------------------------------------------------------------
// Packing file format: `m <copy_id>` lines referencing a copy table.
// ---------------------------------------------------------------------------

pub fn write_packing(packing: &Packing) -> String {
    let mut out = format!("c packing size {}\n", packing.len());
    for &m in packing.members() {
        out.push_str(&format!("m {m}\n"));
    }
    out
}

pub fn parse_packing(text: &str, table: &CopyTable) -> Result<Packing, PackingError> {
    let mut members = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('c') {
            continue;
        }
        let mut it = t.split_whitespace();
        if it.next() != Some("m") {
            return Err(PackingError::BadRecord { line });
        }
        let id: u32 = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or(PackingError::BadRecord { line })?;
        if it.next().is_some() {
            return Err(PackingError::BadRecord { line });
        }
        members.push(id);
    }
    Packing::new(table, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copies::enumerate_subcubes;
    use crate::copies::enumerate_copies;
    use crate::generators::complete;

    /// Copy id of the Q_2 face of Q_3 with `coord` fixed to `value`.
    fn face(table: &CopyTable, host: &crate::graph::Graph, coord: u32, value: u32) -> u32 {
        let sv = crate::copies::SubcubeVector {
            n: 3,
            star_mask: 0b111 & !(1 << coord),
            base: value << coord,
        };
        let mut edges = sv.edge_set(host);
        table.find_copy(&mut edges).expect("face is a copy")
    }

    #[test]
    fn opposite_faces_form_valid_packing() {
        let (host, table) = enumerate_subcubes(3, 2).unwrap();
        let top = face(&table, &host, 2, 1);
        let bottom = face(&table, &host, 2, 0);
        let p = Packing::new(&table, [top, bottom]).unwrap();
        assert_eq!(check_packing(&table, &p), Certificate::ValidPacking);
        let cert = check_maximal(&table, &p).unwrap();
        assert_eq!(cert, Certificate::Maximal);
        assert!(recheck_certificate(&table, &p, &cert));
        assert_eq!(
            covered_fraction(&table, &p).unwrap(),
            Rational::new(2, 3)
        );
    }

    #[test]
    fn adjacent_faces_overlap() {
        let (host, table) = enumerate_subcubes(3, 2).unwrap();
        let bottom = face(&table, &host, 2, 0);
        let side = face(&table, &host, 0, 0);
        let p = Packing::new(&table, [bottom, side]).unwrap();
        let cert = check_packing(&table, &p);
        match cert {
            Certificate::InvalidOverlap { shared_edge, .. } => {
                assert!(table.copy(bottom).contains(&shared_edge));
                assert!(table.copy(side).contains(&shared_edge));
            }
            other => panic!("expected overlap, got {other:?}"),
        }
        assert!(recheck_certificate(&table, &p, &cert));
        assert!(check_maximal(&table, &p).is_err());
    }

    #[test]
    fn single_face_is_not_maximal() {
        let (host, table) = enumerate_subcubes(3, 2).unwrap();
        let top = face(&table, &host, 2, 1);
        let bottom = face(&table, &host, 2, 0);
        let p = Packing::new(&table, [top]).unwrap();
        let cert = check_maximal(&table, &p).unwrap();
        assert_eq!(cert, Certificate::NotMaximal { addable_copy: bottom });
        assert!(recheck_certificate(&table, &p, &cert));
    }

    #[test]
    fn empty_packing_certificates() {
        let (_, table) = enumerate_subcubes(3, 2).unwrap();
        let p = Packing::empty(&table);
        assert_eq!(check_packing(&table, &p), Certificate::ValidPacking);
        assert!(matches!(
            check_maximal(&table, &p).unwrap(),
            Certificate::NotMaximal { .. }
        ));
        assert_eq!(covered_fraction(&table, &p).unwrap(), Rational::zero());
    }

    #[test]
    fn one_triangle_is_maximal_in_k4() {
        let table = enumerate_copies(&complete(4), &complete(3)).unwrap();
        for c in 0..table.len() as u32 {
            let p = Packing::new(&table, [c]).unwrap();
            assert_eq!(check_maximal(&table, &p).unwrap(), Certificate::Maximal);
        }
    }

    #[test]
    fn greedy_on_single_copy_table() {
        let table = enumerate_copies(&complete(3), &complete(3)).unwrap();
        let out = greedy_maximalize(&table, &Packing::empty(&table), &lexicographic_order(&table));
        assert_eq!(out.members(), &[0]);
        assert_eq!(covered_fraction(&table, &out).unwrap(), Rational::from_int(1));
    }

    #[test]
    fn greedy_is_idempotent_on_maximal_input() {
        let (host, table) = enumerate_subcubes(3, 2).unwrap();
        let p = Packing::new(&table, [face(&table, &host, 2, 1), face(&table, &host, 2, 0)]).unwrap();
        let out = greedy_maximalize(&table, &p, &lexicographic_order(&table));
        assert_eq!(out, p);
    }

    #[test]
    fn greedy_natural_order_on_q3() {
        let (_, table) = enumerate_subcubes(3, 2).unwrap();
        let out = greedy_maximalize(&table, &Packing::empty(&table), &lexicographic_order(&table));
        assert_eq!(check_packing(&table, &out), Certificate::ValidPacking);
        assert_eq!(check_maximal(&table, &out).unwrap(), Certificate::Maximal);
        // Exact optima for this instance: minimum maximal 2, maximum 3.
        assert!(out.len() >= 2 && out.len() <= 3);
    }

    #[test]
    fn packing_file_roundtrip() {
        let (_, table) = enumerate_subcubes(3, 2).unwrap();
        let p = Packing::new(&table, [0, 5]).unwrap();
        let text = write_packing(&p);
        let back = parse_packing(&text, &table).unwrap();
        assert_eq!(p, back);
        assert!(parse_packing("m 99\n", &table).is_err());
        assert!(parse_packing("z 1\n", &table).is_err());
    }

    #[test]
    fn greedy_outputs_always_certify() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xFEED);
        let patterns = [complete(3), crate::generators::cycle(4)];
        let mut instances = 0;
        let mut seed = 0u64;
        while instances < 100 {
            seed += 1;
            let n = 5 + (seed % 8) as u32; // up to 12 vertices
            let g = crate::generators::random_graph(n, 0.5, seed);
            for pat in &patterns {
                let table = match enumerate_copies(&g, pat) {
                    Ok(t) if !t.is_empty() => t,
                    _ => continue,
                };
                let mut order = lexicographic_order(&table);
                order.shuffle(&mut rng);
                let out = greedy_maximalize(&table, &Packing::empty(&table), &order);
                assert_eq!(check_packing(&table, &out), Certificate::ValidPacking);
                assert_eq!(check_maximal(&table, &out).unwrap(), Certificate::Maximal);
                assert_eq!(out.covered_count(), out.len() * table.pattern_edge_count());
                instances += 1;
            }
        }
    }

    #[test]
    fn greedy_is_monotone() {
        let (_, table) = enumerate_subcubes(4, 2).unwrap();
        let p = Packing::new(&table, [3]).unwrap();
        let out = greedy_maximalize(&table, &p, &lexicographic_order(&table));
        for &m in p.members() {
            assert!(out.contains(m));
        }
    }

    #[test]
    fn certificate_json_shape() {
        let cert = Certificate::InvalidOverlap {
            member_a: 1,
            member_b: 2,
            shared_edge: 7,
        };
        let js = serde_json::to_value(&cert).unwrap();
        assert_eq!(js["kind"], "invalid_overlap");
        assert_eq!(js["witness"]["shared_edge"], 7);
        let js = serde_json::to_value(Certificate::Maximal).unwrap();
        assert_eq!(js["kind"], "maximal");
    }
}
