//! Exact maximum packing (maximum set packing over the copy table).
//!
//! Branches on the lowest uncovered edge still contained in a free
//! copy: one of those copies covers it, or none does. The two sides
//! partition the solution space (which copy covers a given edge is
//! unique in a packing), so no dedup is needed. The upper bound
//! floor(live edges / pattern edges) makes the search behave like exact
//! cover on instances that admit perfect packings.

use crate::bitset::BitSet;
use crate::copies::CopyTable;
use crate::packing::{greedy_maximalize, lexicographic_order, Packing};

use super::search::{Ctx, Ticker};
use super::{Budget, Quantity, SolveError, SolveResult, SolveStatus, Witness};

pub fn solve_pp(table: &CopyTable, budget: &Budget) -> Result<SolveResult, SolveError> {
    let started = std::time::Instant::now();
    let ctx = Ctx::new(table)?;
    let h = table.pattern_edge_count().max(1);

    let greedy = greedy_maximalize(table, &Packing::empty(table), &lexicographic_order(table));
    let root_ub = table.len().min(table.host_edge_count() / h);

    let mut search = PpSearch {
        ctx: &ctx,
        ticker: Ticker::new(budget),
        members: Vec::new(),
        best: greedy.members().to_vec(),
        free_stack: vec![ctx.all_copies()],
        mask_stack: vec![BitSet::new(table.host_edge_count())],
    };
    let complete = search.dfs(0);

    let value = search.best.len() as u64;
    let status = if complete {
        SolveStatus::Optimal
    } else {
        SolveStatus::BoundsOnly {
            lo: value,
            hi: root_ub as u64,
        }
    };
    Ok(SolveResult {
        quantity: Quantity::Pp,
        value,
        status,
        witness: Witness::Members(search.best),
        nodes: search.ticker.nodes,
        millis: started.elapsed().as_millis(),
    })
}

struct PpSearch<'a, 'b> {
    ctx: &'b Ctx<'a>,
    ticker: Ticker,
    members: Vec<u32>,
    best: Vec<u32>,
    free_stack: Vec<BitSet>,
    mask_stack: Vec<BitSet>,
}

impl PpSearch<'_, '_> {
    /// Returns false when the budget ran out.
    fn dfs(&mut self, depth: usize) -> bool {
        if !self.ticker.tick() {
            return false;
        }
        let m = self.ctx.table.host_edge_count();
        let h = self.ctx.table.pattern_edge_count().max(1);

        // One scan: lowest live edge plus the count of live edges.
        let mut branch_edge: Option<u32> = None;
        let mut live = 0usize;
        for e in 0..m {
            if self.mask_stack[depth].contains(e) {
                continue;
            }
            let has_free = self.ctx.table.copies_with_edge(e as u32).iter().any(|&c| {
                self.free_stack[depth].contains(c as usize)
            });
            if has_free {
                live += 1;
                if branch_edge.is_none() {
                    branch_edge = Some(e as u32);
                }
            }
        }
        let e = match branch_edge {
            None => {
                if self.members.len() > self.best.len() {
                    self.best = self.members.clone();
                    self.best.sort_unstable();
                }
                return true;
            }
            Some(e) => e,
        };
        let ub = self.members.len() + (live / h).min(self.free_stack[depth].count());
        if ub <= self.best.len() {
            return true;
        }

        if self.free_stack.len() <= depth + 1 {
            self.free_stack.push(BitSet::new(self.ctx.copy_count()));
            self.mask_stack.push(BitSet::new(m));
        }

        let cands: Vec<u32> = self
            .ctx
            .table
            .copies_with_edge(e)
            .iter()
            .copied()
            .filter(|&c| self.free_stack[depth].contains(c as usize))
            .collect();
        for &d in &cands {
            let next_free = {
                let mut f = self.free_stack[depth].clone();
                f.subtract(&self.ctx.neighbors[d as usize]);
                f
            };
            let next_mask = {
                let mut mk = self.mask_stack[depth].clone();
                mk.union_with(&self.ctx.copy_edges[d as usize]);
                mk
            };
            self.free_stack[depth + 1] = next_free;
            self.mask_stack[depth + 1] = next_mask;
            self.members.push(d);
            let ok = self.dfs(depth + 1);
            self.members.pop();
            if !ok {
                return false;
            }
        }
        // Last branch: edge e covered by no member.
        let next_free = {
            let mut f = self.free_stack[depth].clone();
            for &d in &cands {
                f.remove(d as usize);
            }
            f
        };
        self.free_stack[depth + 1] = next_free;
        self.mask_stack[depth + 1] = self.mask_stack[depth].clone();
        self.dfs(depth + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copies::{enumerate_copies, enumerate_subcubes};
    use crate::generators::complete;
    use crate::packing::{check_packing, Certificate};

    fn pp_value(table: &CopyTable) -> u64 {
        let res = solve_pp(table, &Budget::default()).unwrap();
        assert_eq!(res.status, SolveStatus::Optimal);
        let members = match &res.witness {
            Witness::Members(m) => m.clone(),
            other => panic!("unexpected witness {other:?}"),
        };
        assert_eq!(members.len() as u64, res.value);
        let p = Packing::new(table, members).unwrap();
        assert_eq!(check_packing(table, &p), Certificate::ValidPacking);
        res.value
    }

    #[test]
    fn q3_q2_maximum_is_an_opposite_face_pair() {
        let (_, table) = enumerate_subcubes(3, 2).unwrap();
        // Every face shares an edge with each of the four adjacent
        // faces, so only opposite pairs are disjoint; a perfect
        // 3-face packing would also contradict divisibility (face
        // degrees are even, Q_3 is 3-regular).
        assert_eq!(pp_value(&table), 2);
    }

    #[test]
    fn k7_triangles_decompose() {
        let table = enumerate_copies(&complete(7), &complete(3)).unwrap();
        assert_eq!(pp_value(&table), 7);
    }

    #[test]
    fn k4_packs_one_triangle() {
        let table = enumerate_copies(&complete(4), &complete(3)).unwrap();
        assert_eq!(pp_value(&table), 1);
    }

    #[test]
    fn empty_table() {
        let table = CopyTable::from_copies(5, 1, Vec::<Vec<u32>>::new());
        assert_eq!(pp_value(&table), 0);
    }
}
