//! Exact minimum maximal packing via iterative deepening.
//!
//! A packing is maximal exactly when no copy is edge-disjoint from the
//! covered set, so the search branches on the first free copy: some
//! member of the final packing must share an edge with it, and that
//! member is itself free right now. Branching over those candidates
//! (excluding, in each later branch, the candidates already tried) is
//! complete and adds one member per level, so depth equals packing
//! size.
//!
//! Deepening the size target k = lo, lo+1, ... keeps the reported lower
//! bound honest: once the tree for target k is exhausted, no maximal
//! packing of size <= k exists. The incumbent from the blocking greedy
//! gives the upper end, and the two meet at the optimum.

use crate::bitset::BitSet;
use crate::copies::CopyTable;

use super::search::{blocking_greedy, free_copies, independent_copies_bound, Ctx, Ticker};
use super::symmetry::CopySymmetry;
use super::{Budget, Quantity, SolveError, SolveResult, SolveStatus, Witness};

/// Orbit pruning canonicalizes member sets only this many members past
/// the seed; deeper nodes are too numerous for group scans to pay off.
const ORBIT_DEPTH: usize = 3;

pub fn solve_cl(
    table: &CopyTable,
    budget: &Budget,
    symmetry: Option<&CopySymmetry>,
) -> Result<SolveResult, SolveError> {
    solve_cl_seeded(table, &[], budget, symmetry)
}

/// Minimum maximal packing containing the given seed members. The seed
/// must be a valid packing; the reported size counts it.
pub fn solve_cl_seeded(
    table: &CopyTable,
    seed: &[u32],
    budget: &Budget,
    symmetry: Option<&CopySymmetry>,
) -> Result<SolveResult, SolveError> {
    let started = std::time::Instant::now();
    let ctx = Ctx::new(table)?;
    let mut covered = BitSet::new(table.host_edge_count());
    for &s in seed {
        covered.union_with(&ctx.copy_edges[s as usize]);
    }
    let root_free = free_copies(&ctx, &covered);

    let incumbent = blocking_greedy(&ctx, seed, root_free.clone());
    let mut hi = incumbent.len();
    let mut best = incumbent;
    let mut lo = seed.len() + independent_copies_bound(&ctx, &root_free);

    // Presolve the extremal number on a budget slice: any maximal
    // packing covers at least m - ex edges, so ceil((m - ex)/h) lower
    // bounds the size. An upper bound on ex keeps this admissible even
    // when the presolve stops early.
    let mut presolve_nodes = 0u64;
    if !table.is_empty() && lo < hi {
        let slice = Budget::nodes((budget.max_nodes / 4).clamp(10_000, 2_000_000));
        let exres = super::solve_ex(table, &slice)?;
        presolve_nodes = exres.nodes;
        let ex_upper = exres.bounds().1;
        let m = table.host_edge_count() as u64;
        let h = table.pattern_edge_count().max(1) as u64;
        if m > ex_upper {
            lo = lo.max((m - ex_upper).div_ceil(h) as usize);
        }
    }
    let budget = &Budget {
        max_nodes: budget.max_nodes.saturating_sub(presolve_nodes),
        max_millis: budget.max_millis,
    };

    let mut search = ClSearch {
        ctx: &ctx,
        ticker: Ticker::new(budget),
        symmetry,
        seed_len: seed.len(),
        target: 0,
        members: seed.to_vec(),
        excluded: BitSet::new(table.len()),
        free_stack: Vec::new(),
        found: None,
    };

    let (status, value, witness) = loop {
        if lo >= hi {
            break (SolveStatus::Optimal, hi as u64, best);
        }
        search.target = lo;
        match search.run(&root_free) {
            Outcome::Found => {
                let m = search.found.take().expect("found packing recorded");
                debug_assert_eq!(m.len(), lo);
                hi = m.len();
                best = m;
                break (SolveStatus::Optimal, hi as u64, best);
            }
            Outcome::Exhausted => lo += 1,
            Outcome::Budget => {
                break (
                    SolveStatus::BoundsOnly {
                        lo: lo as u64,
                        hi: hi as u64,
                    },
                    hi as u64,
                    best,
                );
            }
        }
    };

    Ok(SolveResult {
        quantity: Quantity::Cl,
        value,
        status,
        witness: Witness::Members(witness),
        nodes: search.ticker.nodes + presolve_nodes,
        millis: started.elapsed().as_millis(),
    })
}

enum Outcome {
    Found,
    Exhausted,
    Budget,
}

struct ClSearch<'a, 'b> {
    ctx: &'b Ctx<'a>,
    ticker: Ticker,
    symmetry: Option<&'b CopySymmetry>,
    seed_len: usize,
    target: usize,
    members: Vec<u32>,
    excluded: BitSet,
    free_stack: Vec<BitSet>,
    found: Option<Vec<u32>>,
}

impl ClSearch<'_, '_> {
    fn run(&mut self, root_free: &BitSet) -> Outcome {
        self.free_stack.clear();
        self.free_stack.push(root_free.clone());
        self.excluded.clear();
        self.dfs(0)
    }

    fn dfs(&mut self, depth: usize) -> Outcome {
        if !self.ticker.tick() {
            return Outcome::Budget;
        }
        let free = &self.free_stack[depth];
        let first = match free.first() {
            None => {
                let mut m = self.members.clone();
                m.sort_unstable();
                self.found = Some(m);
                return Outcome::Found;
            }
            Some(c) => c,
        };
        if self.members.len() >= self.target {
            return Outcome::Exhausted;
        }
        let lb = independent_copies_bound(self.ctx, free);
        if self.members.len() + lb > self.target {
            return Outcome::Exhausted;
        }

        // Orbit pruning levels keep one representative per sibling
        // orbit instead of excluding tried candidates: exclusion sets
        // are order-derived constraints that group images need not
        // respect, so the two mechanisms must not mix at one level.
        let orbit_level = self
            .symmetry
            .is_some_and(|_| self.members.len() - self.seed_len < ORBIT_DEPTH);

        // Candidates: free, not excluded copies sharing an edge with the
        // first free copy; most-blocking first, ties by index.
        let mut cands: Vec<(usize, u32)> = Vec::new();
        for d in self.ctx.neighbors[first].iter() {
            if free.contains(d) && !self.excluded.contains(d) {
                cands.push((self.ctx.neighbors[d].intersection_count(free), d as u32));
            }
        }
        cands.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

        let mut seen_canon: Vec<Vec<u32>> = Vec::new();
        let mut newly_excluded: Vec<u32> = Vec::new();
        let mut outcome = Outcome::Exhausted;
        for (_, d) in cands {
            if orbit_level {
                let sym = self.symmetry.expect("orbit level implies symmetry");
                self.members.push(d);
                let canon = sym.canonical_members(&self.members[self.seed_len..]);
                self.members.pop();
                if seen_canon.contains(&canon) {
                    continue;
                }
                seen_canon.push(canon);
            }
            if self.free_stack.len() <= depth + 1 {
                self.free_stack.push(BitSet::new(self.ctx.copy_count()));
            }
            let next = {
                let mut next = self.free_stack[depth].clone();
                next.subtract(&self.ctx.neighbors[d as usize]);
                next
            };
            self.free_stack[depth + 1] = next;
            self.members.push(d);
            let r = self.dfs(depth + 1);
            self.members.pop();
            match r {
                Outcome::Exhausted => {
                    if !orbit_level {
                        self.excluded.insert(d as usize);
                        newly_excluded.push(d);
                    }
                }
                other => {
                    outcome = other;
                    break;
                }
            }
        }
        for d in newly_excluded {
            self.excluded.remove(d as usize);
        }
        outcome
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copies::{enumerate_copies, enumerate_subcubes};
    use crate::generators::{complete, cycle, monotonicity_gadget, turan};
    use crate::packing::{check_maximal, check_packing, Certificate, Packing};

    fn cl_value(table: &CopyTable) -> u64 {
        let res = solve_cl(table, &Budget::default(), None).unwrap();
        assert_eq!(res.status, SolveStatus::Optimal);
        // The witness must re-verify as a maximal packing of the
        // claimed size.
        let members = match &res.witness {
            Witness::Members(m) => m.clone(),
            other => panic!("unexpected witness {other:?}"),
        };
        assert_eq!(members.len() as u64, res.value);
        let p = Packing::new(table, members).unwrap();
        assert_eq!(check_packing(table, &p), Certificate::ValidPacking);
        assert_eq!(check_maximal(table, &p).unwrap(), Certificate::Maximal);
        res.value
    }

    #[test]
    fn hypercube_exact_values() {
        let (_, q3) = enumerate_subcubes(3, 2).unwrap();
        assert_eq!(cl_value(&q3), 2);
        let (_, q4) = enumerate_subcubes(4, 2).unwrap();
        assert_eq!(cl_value(&q4), 3);
    }

    #[test]
    fn one_triangle_suffices_in_k4() {
        let table = enumerate_copies(&complete(4), &complete(3)).unwrap();
        assert_eq!(cl_value(&table), 1);
    }

    #[test]
    fn empty_table_has_empty_clumsy_packing() {
        let host = turan(6, 2).unwrap().graph;
        let table = enumerate_copies(&host, &complete(3)).unwrap();
        assert!(table.is_empty());
        assert_eq!(cl_value(&table), 0);
    }

    #[test]
    fn gadget_jump() {
        for k in [4u32, 5] {
            let g = monotonicity_gadget(k);
            let prime = enumerate_copies(&g.prime, &cycle(k)).unwrap();
            assert_eq!(cl_value(&prime), 1, "k={k} prime");
            let reduced = enumerate_copies(&g.reduced, &cycle(k)).unwrap();
            assert_eq!(cl_value(&reduced), (k - 1) as u64, "k={k} reduced");
        }
    }

    #[test]
    fn seeded_search_extends_and_counts_seed() {
        let (host, table) = enumerate_subcubes(3, 2).unwrap();
        // Seed with one face; minimum maximal extension is the opposite
        // face, total 2.
        let sv = crate::copies::SubcubeVector {
            n: 3,
            star_mask: 0b011,
            base: 0,
        };
        let mut edges = sv.edge_set(&host);
        let seed = table.find_copy(&mut edges).unwrap();
        let res = solve_cl_seeded(&table, &[seed], &Budget::default(), None).unwrap();
        assert_eq!(res.status, SolveStatus::Optimal);
        assert_eq!(res.value, 2);
    }

    #[test]
    fn symmetry_pruning_preserves_value() {
        let (host, table) = enumerate_subcubes(4, 2).unwrap();
        let group = super::super::symmetry::hypercube_group(4).unwrap();
        let sym = CopySymmetry::new(&host, &table, &group).unwrap();
        let plain = solve_cl(&table, &Budget::default(), None).unwrap();
        let pruned = solve_cl(&table, &Budget::default(), Some(&sym)).unwrap();
        assert_eq!(plain.value, pruned.value);
        assert_eq!(pruned.value, 3);
        assert!(pruned.nodes <= plain.nodes);
    }

    #[test]
    fn budget_exhaustion_reports_bounds() {
        let (_, table) = enumerate_subcubes(4, 2).unwrap();
        let res = solve_cl(&table, &Budget { max_nodes: 3, max_millis: None }, None).unwrap();
        match res.status {
            SolveStatus::BoundsOnly { lo, hi } => {
                assert!(lo <= 3 && hi >= 3, "bracket {lo}..{hi} must contain 3");
                assert_eq!(res.value, hi);
                let members = match &res.witness {
                    Witness::Members(m) => m.clone(),
                    other => panic!("unexpected witness {other:?}"),
                };
                assert_eq!(members.len() as u64, hi);
                let p = Packing::new(&table, members).unwrap();
                assert_eq!(check_maximal(&table, &p).unwrap(), Certificate::Maximal);
            }
            other => panic!("expected bounds_only, got {other:?}"),
        }
    }
}
