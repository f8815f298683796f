//! Exact minimum blocking set: fewest copies (overlap allowed) whose
//! edges touch every copy in the table. Removing their edges leaves the
//! host with no copy of the pattern, and the value lower-bounds the
//! minimum maximal packing.
//!
//! Two admissible bounds drive the pruning: pairwise-independent
//! undominated copies each need their own blocker, and the union of
//! the chosen copies' edges must reach a transversal, so at least
//! ceil((m - ex - union)/h) more copies are needed.

use crate::bitset::BitSet;
use crate::copies::CopyTable;

use super::search::{independent_copies_bound, Ctx, Ticker};
use super::{Budget, Quantity, SolveError, SolveResult, SolveStatus, Witness};

pub fn solve_cov(table: &CopyTable, budget: &Budget) -> Result<SolveResult, SolveError> {
    let started = std::time::Instant::now();
    let ctx = Ctx::new(table)?;

    let incumbent = greedy_cover(&ctx);

    // Presolve ex on a budget slice for the transversal-size bound.
    let mut presolve_nodes = 0u64;
    let mut transversal_need = 0usize;
    if !table.is_empty() && incumbent.len() > 1 {
        let slice = Budget::nodes((budget.max_nodes / 4).clamp(10_000, 2_000_000));
        let exres = super::solve_ex(table, &slice)?;
        presolve_nodes = exres.nodes;
        let ex_upper = exres.bounds().1 as usize;
        transversal_need = table.host_edge_count().saturating_sub(ex_upper);
    }
    let budget = &Budget {
        max_nodes: budget.max_nodes.saturating_sub(presolve_nodes),
        max_millis: budget.max_millis,
    };

    let h = table.pattern_edge_count().max(1);
    let root_lb = independent_copies_bound(&ctx, &ctx.all_copies())
        .max(transversal_need.div_ceil(h));

    let mut search = CovSearch {
        ctx: &ctx,
        ticker: Ticker::new(budget),
        chosen: Vec::new(),
        excluded: BitSet::new(table.len()),
        best: incumbent,
        transversal_need,
        undominated_stack: vec![ctx.all_copies()],
        union_stack: vec![BitSet::new(table.host_edge_count())],
    };
    let complete = search.dfs(0);
    let mut best = search.best;
    best.sort_unstable();

    let value = best.len() as u64;
    let status = if complete {
        SolveStatus::Optimal
    } else {
        SolveStatus::BoundsOnly {
            lo: root_lb as u64,
            hi: value,
        }
    };
    Ok(SolveResult {
        quantity: Quantity::Cov,
        value,
        status,
        witness: Witness::Copies(best),
        nodes: search.ticker.nodes + presolve_nodes,
        millis: started.elapsed().as_millis(),
    })
}

fn greedy_cover(ctx: &Ctx) -> Vec<u32> {
    let mut undominated = ctx.all_copies();
    let mut chosen = Vec::new();
    while undominated.first().is_some() {
        let mut best: Option<(usize, usize)> = None;
        for c in 0..ctx.copy_count() {
            let gain = ctx.neighbors[c].intersection_count(&undominated);
            if gain == 0 {
                continue;
            }
            let better = match best {
                None => true,
                Some((bg, _)) => gain > bg,
            };
            if better {
                best = Some((gain, c));
            }
        }
        let (_, c) = best.expect("undominated copy has a dominator (itself)");
        chosen.push(c as u32);
        undominated.subtract(&ctx.neighbors[c]);
    }
    chosen
}

struct CovSearch<'a, 'b> {
    ctx: &'b Ctx<'a>,
    ticker: Ticker,
    chosen: Vec<u32>,
    excluded: BitSet,
    best: Vec<u32>,
    transversal_need: usize,
    undominated_stack: Vec<BitSet>,
    union_stack: Vec<BitSet>,
}

impl CovSearch<'_, '_> {
    fn lower_bound(&self, depth: usize) -> usize {
        let h = self.ctx.table.pattern_edge_count().max(1);
        let indep = independent_copies_bound(self.ctx, &self.undominated_stack[depth]);
        let missing = self
            .transversal_need
            .saturating_sub(self.union_stack[depth].count());
        indep.max(missing.div_ceil(h))
    }

    fn dfs(&mut self, depth: usize) -> bool {
        if !self.ticker.tick() {
            return false;
        }
        let first = match self.undominated_stack[depth].first() {
            None => {
                if self.chosen.len() < self.best.len() {
                    self.best = self.chosen.clone();
                }
                return true;
            }
            Some(c) => c,
        };
        if self.chosen.len() + self.lower_bound(depth) >= self.best.len() {
            return true;
        }

        // Any copy sharing an edge with `first` can block it; order by
        // how much they dominate, ties by index.
        let mut cands: Vec<(usize, u32)> = Vec::new();
        for d in self.ctx.neighbors[first].iter() {
            if !self.excluded.contains(d) {
                cands.push((
                    self.ctx.neighbors[d].intersection_count(&self.undominated_stack[depth]),
                    d as u32,
                ));
            }
        }
        cands.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

        if self.undominated_stack.len() <= depth + 1 {
            self.undominated_stack
                .push(BitSet::new(self.ctx.copy_count()));
            self.union_stack
                .push(BitSet::new(self.ctx.table.host_edge_count()));
        }
        let mut newly_excluded = Vec::new();
        let mut ok = true;
        for (_, d) in cands {
            let next = {
                let mut u = self.undominated_stack[depth].clone();
                u.subtract(&self.ctx.neighbors[d as usize]);
                u
            };
            self.undominated_stack[depth + 1] = next;
            let next_union = {
                let mut u = self.union_stack[depth].clone();
                u.union_with(&self.ctx.copy_edges[d as usize]);
                u
            };
            self.union_stack[depth + 1] = next_union;
            self.chosen.push(d);
            ok = self.dfs(depth + 1);
            self.chosen.pop();
            if !ok {
                break;
            }
            self.excluded.insert(d as usize);
            newly_excluded.push(d);
        }
        for d in newly_excluded {
            self.excluded.remove(d as usize);
        }
        ok
    }
}
