//! Shared state for the exact solvers: per-copy edge masks, the
//! copy-intersection structure, budget accounting, and the greedy
//! bounds every branch-and-bound here leans on.

use crate::bitset::BitSet;
use crate::copies::CopyTable;
use std::time::Instant;

use super::{Budget, SolveError};

/// Hard cap on copy-table size for the exact solvers; the intersection
/// structure is quadratic in the number of copies.
pub const SOLVER_COPY_CAP: usize = 40_000;

pub(crate) struct Ctx<'a> {
    pub table: &'a CopyTable,
    /// Edge mask of each copy.
    pub copy_edges: Vec<BitSet>,
    /// Closed neighborhoods in the intersection graph: copies sharing
    /// at least one edge, self included.
    pub neighbors: Vec<BitSet>,
}

impl<'a> Ctx<'a> {
    pub fn new(table: &'a CopyTable) -> Result<Ctx<'a>, SolveError> {
        let c = table.len();
        if c > SOLVER_COPY_CAP {
            return Err(SolveError::TooManyCopies { copies: c });
        }
        let m = table.host_edge_count();
        let mut copy_edges = Vec::with_capacity(c);
        for copy in table.copies() {
            let mut mask = BitSet::new(m);
            for &e in copy {
                mask.insert(e as usize);
            }
            copy_edges.push(mask);
        }
        let mut neighbors = vec![BitSet::new(c); c];
        for (i, nb) in neighbors.iter_mut().enumerate() {
            nb.insert(i);
        }
        for e in 0..m {
            let inc = table.copies_with_edge(e as u32);
            for (ai, &a) in inc.iter().enumerate() {
                for &b in &inc[ai + 1..] {
                    neighbors[a as usize].insert(b as usize);
                    neighbors[b as usize].insert(a as usize);
                }
            }
        }
        Ok(Ctx {
            table,
            copy_edges,
            neighbors,
        })
    }

    pub fn copy_count(&self) -> usize {
        self.table.len()
    }

    pub fn all_copies(&self) -> BitSet {
        let mut s = BitSet::new(self.copy_count());
        for i in 0..self.copy_count() {
            s.insert(i);
        }
        s
    }
}

/// Node/time budget enforcement. With no deadline the search is fully
/// deterministic: identical inputs and node budgets explore identical
/// trees.
pub(crate) struct Ticker {
    pub nodes: u64,
    max_nodes: u64,
    deadline: Option<Instant>,
    exhausted: bool,
}

impl Ticker {
    pub fn new(budget: &Budget) -> Ticker {
        Ticker {
            nodes: 0,
            max_nodes: budget.max_nodes,
            deadline: budget
                .max_millis
                .map(|ms| Instant::now() + std::time::Duration::from_millis(ms)),
            exhausted: false,
        }
    }

    /// Counts one search node; returns false once the budget is gone.
    #[inline]
    pub fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.exhausted = true;
            return false;
        }
        if let Some(deadline) = self.deadline {
            if self.nodes.is_multiple_of(4096) && Instant::now() >= deadline {
                self.exhausted = true;
                return false;
            }
        }
        true
    }
}

/// Greedy family of "pairwise independent" active copies: no single
/// copy of the pattern can intersect two of them, so any solution needs
/// one distinct new element per family member. Admissible lower bound
/// for the minimum-maximal, blocking-set, and completion searches.
pub(crate) fn independent_copies_bound(ctx: &Ctx, active: &BitSet) -> usize {
    let mut blocked = BitSet::new(ctx.copy_count());
    let mut count = 0;
    for c in active.iter() {
        if !blocked.intersects(&ctx.neighbors[c]) {
            count += 1;
            blocked.union_with(&ctx.neighbors[c]);
        }
    }
    count
}

/// Greedy family of pairwise edge-disjoint active copies; every hitting
/// set needs one distinct edge per family member.
pub(crate) fn disjoint_copies_bound(ctx: &Ctx, active: &BitSet) -> usize {
    let mut used = BitSet::new(ctx.table.host_edge_count());
    let mut count = 0;
    for c in active.iter() {
        if !used.intersects(&ctx.copy_edges[c]) {
            count += 1;
            used.union_with(&ctx.copy_edges[c]);
        }
    }
    count
}

/// Builds a maximal packing by repeatedly taking the free copy that
/// blocks the most remaining free copies (ties by index). Good small
/// incumbents for the minimum-maximal search.
pub(crate) fn blocking_greedy(ctx: &Ctx, seed_members: &[u32], mut free: BitSet) -> Vec<u32> {
    let mut members = seed_members.to_vec();
    loop {
        let mut best: Option<(usize, usize)> = None;
        for c in free.iter() {
            let gain = ctx.neighbors[c].intersection_count(&free);
            let better = match best {
                None => true,
                Some((bg, _)) => gain > bg,
            };
            if better {
                best = Some((gain, c));
            }
        }
        match best {
            Some((_, c)) => {
                members.push(c as u32);
                free.subtract(&ctx.neighbors[c]);
            }
            None => break,
        }
    }
    members.sort_unstable();
    members
}

/// Free copies given a covered-edge mask: copies edge-disjoint from it.
pub(crate) fn free_copies(ctx: &Ctx, covered: &BitSet) -> BitSet {
    let mut free = BitSet::new(ctx.copy_count());
    for c in 0..ctx.copy_count() {
        if ctx.copy_edges[c].is_disjoint(covered) {
            free.insert(c);
        }
    }
    free
}
