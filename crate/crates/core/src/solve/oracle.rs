//! Ground-truth oracle: exhaustive enumeration over copy subsets (for
//! the packing quantities) or edge subsets / an alive-set DP (for the
//! extremal number). No pruning beyond feasibility, no shared code with
//! the branch-and-bound paths; this is what the solvers are validated
//! against on small instances.

use crate::bitset::BitSet;
use crate::copies::CopyTable;

use super::{Quantity, SolveError, SolveResult, SolveStatus, Witness};

/// Exhaustion over copy subsets is capped at this many copies.
pub const ORACLE_COPY_CAP: usize = 22;
/// Exhaustion over edge subsets is capped at this many host edges.
pub const ORACLE_EDGE_CAP: usize = 22;

pub fn oracle_enumerate(table: &CopyTable, quantity: Quantity) -> Result<SolveResult, SolveError> {
    let started = std::time::Instant::now();
    let (value, witness, nodes) = match quantity {
        Quantity::Cl | Quantity::Pp | Quantity::Cov => subset_scan(table, quantity)?,
        Quantity::Ex => oracle_ex(table)?,
    };
    Ok(SolveResult {
        quantity,
        value,
        status: SolveStatus::Optimal,
        witness,
        nodes,
        millis: started.elapsed().as_millis(),
    })
}

fn copy_edge_masks(table: &CopyTable) -> Vec<BitSet> {
    table
        .copies()
        .iter()
        .map(|copy| {
            let mut mask = BitSet::new(table.host_edge_count());
            for &e in copy {
                mask.insert(e as usize);
            }
            mask
        })
        .collect()
}

/// Pairwise-intersection bitmask over copies (self excluded).
fn conflict_masks(table: &CopyTable, edge_masks: &[BitSet]) -> Vec<u32> {
    let c = table.len();
    let mut conflicts = vec![0u32; c];
    for a in 0..c {
        for b in (a + 1)..c {
            if edge_masks[a].intersects(&edge_masks[b]) {
                conflicts[a] |= 1 << b;
                conflicts[b] |= 1 << a;
            }
        }
    }
    conflicts
}

fn subset_scan(
    table: &CopyTable,
    quantity: Quantity,
) -> Result<(u64, Witness, u64), SolveError> {
    let c = table.len();
    if c > ORACLE_COPY_CAP {
        return Err(SolveError::OracleCapExceeded {
            copies: c,
            edges: table.host_edge_count(),
        });
    }
    let edge_masks = copy_edge_masks(table);
    let conflicts = conflict_masks(table, &edge_masks);
    let m = table.host_edge_count();

    let mut best: Option<(u32, u32)> = None; // (size, mask); first optimum found wins
    let full: u64 = 1u64 << c;
    for mask in 0..full {
        let mask = mask as u32;
        let size = mask.count_ones();

        match quantity {
            Quantity::Pp | Quantity::Cl => {
                // Members must be pairwise edge-disjoint.
                let mut valid = true;
                let mut t = mask;
                while t != 0 {
                    let i = t.trailing_zeros() as usize;
                    t &= t - 1;
                    if conflicts[i] & mask != 0 {
                        valid = false;
                        break;
                    }
                }
                if !valid {
                    continue;
                }
            }
            _ => {}
        }

        match quantity {
            Quantity::Pp => {
                if best.is_none_or(|(bs, _)| size > bs) {
                    best = Some((size, mask));
                }
            }
            Quantity::Cl | Quantity::Cov => {
                if let Some((bs, _)) = best {
                    if size >= bs {
                        continue;
                    }
                }
                let mut covered = BitSet::new(m);
                let mut t = mask;
                while t != 0 {
                    let i = t.trailing_zeros() as usize;
                    t &= t - 1;
                    covered.union_with(&edge_masks[i]);
                }
                let blocks_all = (0..c).all(|j| {
                    mask >> j & 1 == 1 || edge_masks[j].intersects(&covered)
                });
                if blocks_all {
                    best = Some((size, mask));
                }
            }
            Quantity::Ex => unreachable!(),
        }
    }

    let (size, mask) = best.expect("the empty subset is always feasible for cl/cov; pp starts empty");
    let ids: Vec<u32> = (0..c as u32).filter(|&i| mask >> i & 1 == 1).collect();
    let witness = match quantity {
        Quantity::Pp | Quantity::Cl => Witness::Members(ids),
        Quantity::Cov => Witness::Copies(ids),
        Quantity::Ex => unreachable!(),
    };
    Ok((size as u64, witness, full))
}

fn oracle_ex(table: &CopyTable) -> Result<(u64, Witness, u64), SolveError> {
    let m = table.host_edge_count();
    let c = table.len();
    if m <= ORACLE_EDGE_CAP {
        return Ok(ex_by_edge_subsets(table));
    }
    if c <= ORACLE_COPY_CAP {
        return Ok(ex_by_alive_dp(table));
    }
    Err(SolveError::OracleCapExceeded { copies: c, edges: m })
}

/// Scans all edge subsets, keeping the largest one containing no copy.
fn ex_by_edge_subsets(table: &CopyTable) -> (u64, Witness, u64) {
    let m = table.host_edge_count();
    let copy_masks: Vec<u32> = table
        .copies()
        .iter()
        .map(|copy| copy.iter().fold(0u32, |acc, &e| acc | 1 << e))
        .collect();
    let mut best: Option<(u32, u32)> = None;
    let full: u64 = 1u64 << m;
    for keep in 0..full {
        let keep = keep as u32;
        let size = keep.count_ones();
        if let Some((bs, _)) = best {
            if size <= bs {
                continue;
            }
        }
        if copy_masks.iter().all(|&cm| cm & keep != cm) {
            best = Some((size, keep));
        }
    }
    let (size, keep) = best.expect("the empty edge set is copy-free");
    let edges: Vec<u32> = (0..m as u32).filter(|&e| keep >> e & 1 == 1).collect();
    (size as u64, Witness::Edges(edges), full)
}

/// Minimum transversal by dynamic programming over the set of copies
/// still un-hit; works whenever the copy count is small, regardless of
/// how many edges the host has.
fn ex_by_alive_dp(table: &CopyTable) -> (u64, Witness, u64) {
    let c = table.len();
    let m = table.host_edge_count();
    let kill: std::collections::HashMap<u32, u32> = {
        let mut map = std::collections::HashMap::new();
        for (ci, copy) in table.copies().iter().enumerate() {
            for &e in copy {
                *map.entry(e).or_insert(0u32) |= 1 << ci;
            }
        }
        map
    };
    let full = (1u64 << c) - 1;
    let mut dp = vec![u8::MAX; 1usize << c];
    dp[0] = 0;

    fn go(alive: u32, table: &CopyTable, kill: &std::collections::HashMap<u32, u32>, dp: &mut [u8]) -> u8 {
        if dp[alive as usize] != u8::MAX {
            return dp[alive as usize];
        }
        let lowest = alive.trailing_zeros();
        let mut best = u8::MAX;
        for &e in table.copy(lowest) {
            let next = alive & !kill[&e];
            let sub = go(next, table, kill, dp);
            best = best.min(sub.saturating_add(1));
        }
        dp[alive as usize] = best;
        best
    }

    let f = go(full as u32, table, &kill, &mut dp) as usize;

    // Reconstruct one minimum transversal deterministically.
    let mut hitting: Vec<u32> = Vec::with_capacity(f);
    let mut alive = full as u32;
    while alive != 0 {
        let lowest = alive.trailing_zeros();
        let here = dp[alive as usize];
        for &e in table.copy(lowest) {
            let next = alive & !kill[&e];
            if dp[next as usize] != u8::MAX && dp[next as usize] + 1 == here {
                hitting.push(e);
                alive = next;
                break;
            }
        }
    }
    hitting.sort_unstable();
    let edges: Vec<u32> = (0..m as u32).filter(|e| !hitting.contains(e)).collect();
    ((m - f) as u64, Witness::Edges(edges), 1u64 << c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copies::{enumerate_copies, enumerate_subcubes};
    use crate::generators::{complete, cycle, monotonicity_gadget};
    use crate::solve::{solve_cl, solve_cov, solve_ex, solve_pp, Budget};

    #[test]
    fn oracle_values_on_q3() {
        let (_, table) = enumerate_subcubes(3, 2).unwrap();
        assert_eq!(oracle_enumerate(&table, Quantity::Cl).unwrap().value, 2);
        assert_eq!(oracle_enumerate(&table, Quantity::Pp).unwrap().value, 2);
        assert_eq!(oracle_enumerate(&table, Quantity::Cov).unwrap().value, 2);
        assert_eq!(oracle_enumerate(&table, Quantity::Ex).unwrap().value, 9);
    }

    #[test]
    fn oracle_values_on_k4() {
        let table = enumerate_copies(&complete(4), &complete(3)).unwrap();
        assert_eq!(oracle_enumerate(&table, Quantity::Cl).unwrap().value, 1);
        assert_eq!(oracle_enumerate(&table, Quantity::Pp).unwrap().value, 1);
        assert_eq!(oracle_enumerate(&table, Quantity::Cov).unwrap().value, 1);
    }

    #[test]
    fn gadget_values_match_the_jump() {
        let g = monotonicity_gadget(4);
        let prime = enumerate_copies(&g.prime, &cycle(4)).unwrap();
        assert_eq!(oracle_enumerate(&prime, Quantity::Cl).unwrap().value, 1);
        let reduced = enumerate_copies(&g.reduced, &cycle(4)).unwrap();
        assert_eq!(oracle_enumerate(&reduced, Quantity::Cl).unwrap().value, 3);
    }

    #[test]
    fn ex_routes_agree() {
        // Instances small in both directions: compare the edge-subset
        // scan against the alive-set DP.
        for table in [
            enumerate_copies(&complete(5), &complete(3)).unwrap(),
            enumerate_copies(&complete(4), &cycle(4)).unwrap(),
            enumerate_subcubes(3, 2).unwrap().1,
        ] {
            assert!(table.host_edge_count() <= ORACLE_EDGE_CAP);
            assert!(table.len() <= ORACLE_COPY_CAP);
            let (a, _, _) = ex_by_edge_subsets(&table);
            let (b, _, _) = ex_by_alive_dp(&table);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn solvers_match_oracle_on_small_instances() {
        let budget = Budget::default();
        let tables = vec![
            enumerate_copies(&complete(4), &complete(3)).unwrap(),
            enumerate_copies(&complete(5), &complete(3)).unwrap(),
            enumerate_copies(&complete(6), &complete(3)).unwrap(),
            enumerate_copies(&complete(5), &cycle(4)).unwrap(),
            enumerate_subcubes(3, 2).unwrap().1,
            enumerate_copies(&crate::generators::random_graph(8, 0.4, 11), &complete(3))
                .unwrap(),
        ];
        for table in tables {
            if table.len() > ORACLE_COPY_CAP {
                continue;
            }
            assert_eq!(
                solve_cl(&table, &budget, None).unwrap().value,
                oracle_enumerate(&table, Quantity::Cl).unwrap().value
            );
            assert_eq!(
                solve_pp(&table, &budget).unwrap().value,
                oracle_enumerate(&table, Quantity::Pp).unwrap().value
            );
            assert_eq!(
                solve_cov(&table, &budget).unwrap().value,
                oracle_enumerate(&table, Quantity::Cov).unwrap().value
            );
            assert_eq!(
                solve_ex(&table, &budget).unwrap().value,
                oracle_enumerate(&table, Quantity::Ex).unwrap().value
            );
        }
    }

    #[test]
    fn cap_is_enforced() {
        let table = enumerate_copies(&complete(7), &complete(3)).unwrap(); // 35 copies
        assert!(matches!(
            oracle_enumerate(&table, Quantity::Cl),
            Err(SolveError::OracleCapExceeded { .. })
        ));
    }
}
