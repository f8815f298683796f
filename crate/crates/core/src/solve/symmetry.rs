//! Host automorphisms for orbit pruning in the minimum-maximal search.
//!
//! Only the vertex-transitive generators expose their groups: complete
//! graphs (all vertex permutations) and hypercubes (coordinate
//! permutations composed with translations). Groups are enumerated
//! explicitly and converted to permutations of the copy table, so the
//! search can canonicalize partial member sets. Pruning is off by
//! default; it must be requested per solve.

use crate::copies::CopyTable;
use crate::graph::Graph;

use super::SolveError;

/// Enumerated groups above this size are rejected.
pub const GROUP_CAP: u64 = 50_000;

/// An explicitly enumerated group of vertex permutations.
#[derive(Clone, Debug)]
pub struct SymmetryGroup {
    pub perms: Vec<Vec<u32>>,
}

fn permutations(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current: Vec<u32> = (0..n as u32).collect();
    heap_permute(&mut current, n, &mut out);
    out
}

fn heap_permute(arr: &mut Vec<u32>, k: usize, out: &mut Vec<Vec<u32>>) {
    if k <= 1 {
        out.push(arr.clone());
        return;
    }
    for i in 0..k {
        heap_permute(arr, k - 1, out);
        if k.is_multiple_of(2) {
            arr.swap(i, k - 1);
        } else {
            arr.swap(0, k - 1);
        }
    }
}

fn factorial(n: u64) -> u64 {
    (1..=n).product::<u64>().max(1)
}

/// Full symmetric group of the complete graph on n vertices.
pub fn symmetric_group(n: u32) -> Result<SymmetryGroup, SolveError> {
    let size = factorial(n as u64);
    if size > GROUP_CAP {
        return Err(SolveError::GroupTooLarge {
            size,
            cap: GROUP_CAP,
        });
    }
    Ok(SymmetryGroup {
        perms: permutations(n as usize),
    })
}

/// Automorphism group of the n-cube: 2^n translations times n!
/// coordinate permutations, acting on vertex ids as coordinate words.
pub fn hypercube_group(n: u32) -> Result<SymmetryGroup, SolveError> {
    let size = factorial(n as u64) << n;
    if size > GROUP_CAP {
        return Err(SolveError::GroupTooLarge {
            size,
            cap: GROUP_CAP,
        });
    }
    let coord_perms = permutations(n as usize);
    let count = 1u32 << n;
    let mut perms = Vec::with_capacity(size as usize);
    for sigma in &coord_perms {
        for t in 0..count {
            let mut perm = Vec::with_capacity(count as usize);
            for v in 0..count {
                let mut w = 0u32;
                for (i, &si) in sigma.iter().enumerate() {
                    if v >> i & 1 == 1 {
                        w |= 1 << si;
                    }
                }
                perm.push(w ^ t);
            }
            perms.push(perm);
        }
    }
    Ok(SymmetryGroup { perms })
}

/// The symmetry group pushed down to permutations of copy indices.
#[derive(Clone, Debug)]
pub struct CopySymmetry {
    perms: Vec<Vec<u32>>,
}

impl CopySymmetry {
    /// Maps each vertex permutation to a copy permutation. Fails if any
    /// permutation is not actually an automorphism mapping the copy set
    /// to itself.
    pub fn new(
        host: &Graph,
        table: &CopyTable,
        group: &SymmetryGroup,
    ) -> Result<CopySymmetry, SolveError> {
        let mut perms = Vec::with_capacity(group.perms.len());
        for vperm in &group.perms {
            if vperm.len() != host.vertex_count() as usize {
                return Err(SolveError::InvalidSymmetry);
            }
            let mut cperm = Vec::with_capacity(table.len());
            for copy in table.copies() {
                let mut mapped: Vec<u32> = Vec::with_capacity(copy.len());
                for &e in copy {
                    let (u, v) = table_edge(host, e);
                    let (pu, pv) = (vperm[u as usize], vperm[v as usize]);
                    match host.edge_id(pu, pv) {
                        Some(id) => mapped.push(id),
                        None => return Err(SolveError::InvalidSymmetry),
                    }
                }
                match table.find_copy(&mut mapped) {
                    Some(ci) => cperm.push(ci),
                    None => return Err(SolveError::InvalidSymmetry),
                }
            }
            perms.push(cperm);
        }
        Ok(CopySymmetry { perms })
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    /// Lexicographically smallest image of the member set under the
    /// group; equal canonical forms mean equivalent search states.
    pub fn canonical_members(&self, members: &[u32]) -> Vec<u32> {
        let mut best: Option<Vec<u32>> = None;
        let mut image = vec![0u32; members.len()];
        for perm in &self.perms {
            for (slot, &m) in image.iter_mut().zip(members) {
                *slot = perm[m as usize];
            }
            image.sort_unstable();
            match &best {
                Some(b) if image.as_slice() >= b.as_slice() => {}
                _ => best = Some(image.clone()),
            }
        }
        best.unwrap_or_default()
    }
}

fn table_edge(host: &Graph, e: u32) -> (u32, u32) {
    host.edge(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copies::{enumerate_copies, enumerate_subcubes};
    use crate::generators::complete;

    #[test]
    fn hypercube_group_sizes() {
        assert_eq!(hypercube_group(2).unwrap().perms.len(), 8);
        assert_eq!(hypercube_group(3).unwrap().perms.len(), 48);
        assert_eq!(hypercube_group(5).unwrap().perms.len(), 3840);
        assert!(hypercube_group(7).is_err());
    }

    #[test]
    fn symmetric_group_sizes() {
        assert_eq!(symmetric_group(4).unwrap().perms.len(), 24);
        assert!(symmetric_group(9).is_err());
    }

    #[test]
    fn copy_symmetry_maps_faces_transitively() {
        let (host, table) = enumerate_subcubes(3, 2).unwrap();
        let sym = CopySymmetry::new(&host, &table, &hypercube_group(3).unwrap()).unwrap();
        // All 6 faces lie in one orbit: the canonical form of any
        // single face is the same.
        let canon: Vec<Vec<u32>> = (0..6).map(|c| sym.canonical_members(&[c])).collect();
        for c in &canon {
            assert_eq!(c, &canon[0]);
        }
    }

    #[test]
    fn complete_graph_triangles_one_orbit() {
        let host = complete(5);
        let table = enumerate_copies(&host, &complete(3)).unwrap();
        let sym = CopySymmetry::new(&host, &table, &symmetric_group(5).unwrap()).unwrap();
        let base = sym.canonical_members(&[3]);
        for c in 0..table.len() as u32 {
            assert_eq!(sym.canonical_members(&[c]), base);
        }
    }

    #[test]
    fn wrong_group_is_rejected() {
        let host = crate::generators::cycle(4);
        let table = enumerate_copies(&host, &crate::generators::cycle(4)).unwrap();
        // S_4 on C_4's vertices contains non-automorphisms.
        let group = symmetric_group(4).unwrap();
        assert!(CopySymmetry::new(&host, &table, &group).is_err());
    }
}
