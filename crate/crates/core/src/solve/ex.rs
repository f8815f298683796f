//! Exact extremal number: the largest edge subset of the host
//! containing no copy of the pattern. Computed as host edges minus a
//! minimum transversal of the copy hypergraph (whose vertices are host
//! edges and whose hyperedges are the copies).

use crate::bitset::BitSet;
use crate::copies::CopyTable;

use super::search::{disjoint_copies_bound, Ctx, Ticker};
use super::{Budget, Quantity, SolveError, SolveResult, SolveStatus, Witness};

pub fn solve_ex(table: &CopyTable, budget: &Budget) -> Result<SolveResult, SolveError> {
    let started = std::time::Instant::now();
    let ctx = Ctx::new(table)?;
    let m = table.host_edge_count();

    let incumbent = greedy_hitting(&ctx);
    let root_lb = disjoint_copies_bound(&ctx, &ctx.all_copies());

    let mut search = ExSearch {
        ctx: &ctx,
        ticker: Ticker::new(budget),
        hit: Vec::new(),
        banned: BitSet::new(m),
        best: incumbent,
        alive_stack: vec![ctx.all_copies()],
    };
    let complete = search.dfs(0);
    let mut hitting = search.best;
    hitting.sort_unstable();

    let value = (m - hitting.len()) as u64;
    let witness: Vec<u32> = (0..m as u32).filter(|e| !hitting.contains(e)).collect();
    let status = if complete {
        SolveStatus::Optimal
    } else {
        SolveStatus::BoundsOnly {
            lo: value,
            hi: (m - root_lb) as u64,
        }
    };
    Ok(SolveResult {
        quantity: Quantity::Ex,
        value,
        status,
        witness: Witness::Edges(witness),
        nodes: search.ticker.nodes,
        millis: started.elapsed().as_millis(),
    })
}

/// Repeatedly hits the edge contained in the most surviving copies.
fn greedy_hitting(ctx: &Ctx) -> Vec<u32> {
    let mut alive = ctx.all_copies();
    let mut hit = Vec::new();
    while alive.first().is_some() {
        let mut best: Option<(usize, u32)> = None;
        for e in 0..ctx.table.host_edge_count() as u32 {
            let gain = ctx
                .table
                .copies_with_edge(e)
                .iter()
                .filter(|&&c| alive.contains(c as usize))
                .count();
            if gain == 0 {
                continue;
            }
            let better = match best {
                None => true,
                Some((bg, _)) => gain > bg,
            };
            if better {
                best = Some((gain, e));
            }
        }
        let (_, e) = best.expect("alive copy has edges");
        hit.push(e);
        for &c in ctx.table.copies_with_edge(e) {
            alive.remove(c as usize);
        }
    }
    hit
}

struct ExSearch<'a, 'b> {
    ctx: &'b Ctx<'a>,
    ticker: Ticker,
    hit: Vec<u32>,
    banned: BitSet,
    best: Vec<u32>,
    alive_stack: Vec<BitSet>,
}

impl ExSearch<'_, '_> {
    fn dfs(&mut self, depth: usize) -> bool {
        if !self.ticker.tick() {
            return false;
        }
        if self.alive_stack[depth].first().is_none() {
            if self.hit.len() < self.best.len() {
                self.best = self.hit.clone();
            }
            return true;
        }
        let lb = disjoint_copies_bound(self.ctx, &self.alive_stack[depth]);
        if self.hit.len() + lb >= self.best.len() {
            return true;
        }

        // Most-constrained alive copy: fewest un-banned edges, ties by
        // copy index.
        let mut pick: Option<(usize, usize)> = None;
        for c in self.alive_stack[depth].iter() {
            let avail = self
                .ctx
                .table
                .copy(c as u32)
                .iter()
                .filter(|&&e| !self.banned.contains(e as usize))
                .count();
            let better = match pick {
                None => true,
                Some((bn, _)) => avail < bn,
            };
            if better {
                pick = Some((avail, c));
                if avail == 0 {
                    break;
                }
            }
        }
        let (avail, target) = pick.expect("alive copy exists");
        if avail == 0 {
            // Every edge of this copy was banned on the way down.
            return true;
        }

        if self.alive_stack.len() <= depth + 1 {
            self.alive_stack.push(BitSet::new(self.ctx.copy_count()));
        }
        let edges: Vec<u32> = self
            .ctx
            .table
            .copy(target as u32)
            .iter()
            .copied()
            .filter(|&e| !self.banned.contains(e as usize))
            .collect();
        let mut newly_banned = Vec::new();
        let mut ok = true;
        for &e in &edges {
            let next = {
                let mut a = self.alive_stack[depth].clone();
                for &c in self.ctx.table.copies_with_edge(e) {
                    a.remove(c as usize);
                }
                a
            };
            self.alive_stack[depth + 1] = next;
            self.hit.push(e);
            ok = self.dfs(depth + 1);
            self.hit.pop();
            if !ok {
                break;
            }
            self.banned.insert(e as usize);
            newly_banned.push(e);
        }
        for e in newly_banned {
            self.banned.remove(e as usize);
        }
        ok
    }
}
