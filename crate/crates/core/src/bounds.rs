//! Closed-form bounds and consolidated per-instance reports.
//!
//! The basic chain for any instance: ceil((||G|| - ex) / ||H||) lower
//! bounds the blocking number, which lower bounds the minimum maximal
//! packing, which is at most the maximum packing. Hypercube instances
//! additionally get the counting bound from subcube incidence, and
//! complete-graph patterns get the limit ratio 1/(chi(H) - 1).

use crate::copies::{count_subcubes, edge_subcube_degree};
use crate::graph::Graph;
use crate::rational::Rational;
use crate::solve::{self, Budget, SolveError, SolveStatus};
use crate::CopyTable;
use serde::Serialize;
use thiserror::Error;

/// Exact chromatic-number computation is capped at this many vertices;
/// only pattern graphs need it.
pub const CHROMATIC_VERTEX_CAP: u32 = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("chromatic number cap exceeded: {0} vertices (cap {CHROMATIC_VERTEX_CAP})")]
    ChromaticCapExceeded(u32),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("bound chain violated: {0}")]
    ChainViolation(String),
}

/// ceil((edges_g - ex) / edges_h): every blocking set must cover at
/// least `edges_g - ex` edges.
pub fn eq1_lower_bound(edges_g: u64, ex_value: u64, edges_h: u64) -> u64 {
    assert!(edges_h >= 1, "pattern must have edges");
    assert!(ex_value <= edges_g, "ex cannot exceed the edge count");
    (edges_g - ex_value).div_ceil(edges_h)
}

/// Counting lower bound for maximal subcube packings: every copy of
/// Q_d must be blocked, each packed edge blocks at most the per-edge
/// incidence, and each member has d*2^(d-1) edges. Evaluated both from
/// the binomial form and the simplified closed form; they agree.
pub fn hypercube_counting_lower_bound(n: u32, d: u32) -> Rational {
    assert!(d >= 1 && d <= n);
    let copies = count_subcubes(n, d) as i64;
    let per_edge = edge_subcube_degree(n, d) as i64;
    let member_edges = (d as i64) << (d - 1);
    let by_counting = Rational::new(copies, per_edge * member_edges);
    // Simplified form 2^(n-2d+1) * n / d^2, exact in rationals.
    let pow = n as i64 + 1 - 2 * d as i64;
    let simplified = if pow >= 0 {
        Rational::new((1i64 << pow) * n as i64, (d * d) as i64)
    } else {
        Rational::new(n as i64, (d * d) as i64 * (1i64 << (-pow)))
    };
    debug_assert_eq!(by_counting, simplified);
    by_counting
}

/// Exact chromatic number by branch and bound over color assignments.
pub fn chromatic_number(h: &Graph) -> Result<u32, BoundsError> {
    let n = h.vertex_count();
    if n > CHROMATIC_VERTEX_CAP {
        return Err(BoundsError::ChromaticCapExceeded(n));
    }
    if n == 0 {
        return Ok(0);
    }
    if h.edge_count() == 0 {
        return Ok(1);
    }
    if is_bipartite(h) {
        return Ok(2);
    }
    // Greedy clique gives the starting lower bound; n is the fallback
    // upper bound.
    let clique = greedy_clique(h);
    let mut k = clique.max(3);
    loop {
        let mut colors = vec![u32::MAX; n as usize];
        if color_with(h, &order_by_degree(h), 0, k, &mut colors) {
            return Ok(k);
        }
        k += 1;
    }
}

fn is_bipartite(h: &Graph) -> bool {
    let n = h.vertex_count() as usize;
    let mut side = vec![u8::MAX; n];
    for start in 0..n {
        if side[start] != u8::MAX {
            continue;
        }
        side[start] = 0;
        let mut stack = vec![start as u32];
        while let Some(v) = stack.pop() {
            for &w in h.neighbors(v) {
                if side[w as usize] == u8::MAX {
                    side[w as usize] = 1 - side[v as usize];
                    stack.push(w);
                } else if side[w as usize] == side[v as usize] {
                    return false;
                }
            }
        }
    }
    true
}

fn greedy_clique(h: &Graph) -> u32 {
    let mut best = 1;
    for v in 0..h.vertex_count() {
        let mut clique = vec![v];
        for &w in h.neighbors(v) {
            if clique.iter().all(|&u| h.has_edge(u, w)) {
                clique.push(w);
            }
        }
        best = best.max(clique.len() as u32);
    }
    best
}

fn order_by_degree(h: &Graph) -> Vec<u32> {
    let mut order: Vec<u32> = (0..h.vertex_count()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(h.degree(v)));
    order
}

fn color_with(h: &Graph, order: &[u32], idx: usize, k: u32, colors: &mut [u32]) -> bool {
    if idx == order.len() {
        return true;
    }
    let v = order[idx];
    let mut used = 0u32;
    for &w in h.neighbors(v) {
        let c = colors[w as usize];
        if c != u32::MAX {
            used |= 1 << c;
        }
    }
    // Symmetry cut: allow at most one brand-new color.
    let max_new = order[..idx]
        .iter()
        .map(|&w| colors[w as usize])
        .max()
        .map_or(0, |c| (c + 1).min(k - 1));
    for c in 0..=max_new.min(k - 1) {
        if used >> c & 1 == 0 {
            colors[v as usize] = c;
            if color_with(h, order, idx + 1, k, colors) {
                return true;
            }
            colors[v as usize] = u32::MAX;
        }
    }
    false
}

/// Limit ratio of minimum maximal to maximum packings in complete
/// hosts: `1/(chi(H)-1)` when chi >= 3, undefined for bipartite
/// patterns.
pub fn chromatic_ratio(h: &Graph) -> Result<Option<Rational>, BoundsError> {
    let chi = chromatic_number(h)?;
    if chi >= 3 {
        Ok(Some(Rational::new(1, chi as i64 - 1)))
    } else {
        Ok(None)
    }
}

/// Where an extremal value came from; bound arithmetic refuses to
/// treat non-exact values as exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExProvenance {
    ExactSolver,
    TuranFormula,
    ExternalConstant,
}

/// Literature constants recorded in hypercube reports, never computed.
pub mod annotations {
    /// Best published coefficient: copy-free subgraphs of the n-cube
    /// keep at most this fraction of the edges (d = 2, asymptotic).
    pub const SUBCUBE_EX_UPPER_COEFF: f64 = 0.6068;
    /// Conjectured true coefficient for d = 2.
    pub const SUBCUBE_EX_CONJECTURED_COEFF: f64 = 0.5;
    /// Asymptotic bracket for the transversal density of d-subcubes.
    pub const TRANSVERSAL_DENSITY_BRACKET: &str =
        "log(d)/(d*2^d) .. 1/d^2, both up to constant factors";
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub instance: String,
    pub edges_g: u64,
    pub edges_h: u64,
    pub ex_value: Option<u64>,
    pub ex_provenance: Option<ExProvenance>,
    /// ceil((||G|| - ex)/||H||); only present when ex is exact.
    pub eq1_lower: Option<u64>,
    /// Hypercube-only counting bound, with its integer ceiling.
    pub counting_lower: Option<Rational>,
    pub counting_lower_ceil: Option<u64>,
    pub chi_h: Option<u32>,
    pub ratio_limit: Option<Rational>,
    pub cl: Option<u64>,
    pub cl_bounds: Option<(u64, u64)>,
    pub pp: Option<u64>,
    pub cov: Option<u64>,
    pub construction_size: Option<u64>,
    pub annotations: Vec<String>,
}

/// What to compute in a report and with what effort.
#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub instance: String,
    pub budget: Budget,
    /// Run the exact solvers (cl, pp, cov and, unless a formula is
    /// supplied, ex).
    pub solve: bool,
    /// Treat the instance as (Q_n, Q_d) and add the counting bound.
    pub hypercube: Option<(u32, u32)>,
    /// Take ex from the multipartite extremal formula for (K_n, K_m)
    /// instead of solving for it.
    pub turan_ex: Option<(u32, u32)>,
    /// A construction size to record next to the solver values.
    pub construction_size: Option<u64>,
}

impl ReportOptions {
    pub fn new(instance: impl Into<String>) -> ReportOptions {
        ReportOptions {
            instance: instance.into(),
            budget: Budget::default(),
            solve: true,
            hypercube: None,
            turan_ex: None,
            construction_size: None,
        }
    }
}

/// Builds a consolidated report for one (host, pattern) instance and
/// asserts the bound chain on every exact value it produced.
pub fn build_report(
    pattern: &Graph,
    table: &CopyTable,
    opts: &ReportOptions,
) -> Result<BoundsReport, BoundsError> {
    let edges_g = table.host_edge_count() as u64;
    let edges_h = table.pattern_edge_count() as u64;

    let mut ex_value = None;
    let mut ex_provenance = None;
    if let Some((n, m)) = opts.turan_ex {
        // ex(K_n, K_m) is the (m-1)-partite edge count.
        let formula = crate::generators::turan_edge_count(n as u64, m as u64 - 1);
        ex_value = Some(formula);
        ex_provenance = Some(ExProvenance::TuranFormula);
        if opts.solve {
            let solved = solve::solve_ex(table, &opts.budget)?;
            if solved.is_optimal() && solved.value != formula {
                return Err(BoundsError::ChainViolation(format!(
                    "solver ex {} disagrees with multipartite formula {}",
                    solved.value, formula
                )));
            }
        }
    } else if opts.solve {
        let solved = solve::solve_ex(table, &opts.budget)?;
        if solved.is_optimal() {
            ex_value = Some(solved.value);
            ex_provenance = Some(ExProvenance::ExactSolver);
        }
    }

    let eq1_lower = ex_value.map(|ex| eq1_lower_bound(edges_g, ex, edges_h));

    let (counting_lower, counting_lower_ceil) = match opts.hypercube {
        Some((n, d)) => {
            let r = hypercube_counting_lower_bound(n, d);
            (Some(r), Some(r.ceil_int().max(0) as u64))
        }
        None => (None, None),
    };

    let chi_h = chromatic_number(pattern).ok();
    let ratio_limit = match chi_h {
        Some(chi) if chi >= 3 => Some(Rational::new(1, chi as i64 - 1)),
        _ => None,
    };

    let (mut cl, mut cl_bounds, mut pp, mut cov) = (None, None, None, None);
    if opts.solve {
        let r = solve::solve_cl(table, &opts.budget, None)?;
        match r.status {
            SolveStatus::Optimal => cl = Some(r.value),
            SolveStatus::BoundsOnly { lo, hi } => cl_bounds = Some((lo, hi)),
        }
        let r = solve::solve_pp(table, &opts.budget)?;
        if r.is_optimal() {
            pp = Some(r.value);
        }
        let r = solve::solve_cov(table, &opts.budget)?;
        if r.is_optimal() {
            cov = Some(r.value);
        }
    }

    let mut annotations = Vec::new();
    if let Some((_, 2)) = opts.hypercube {
        annotations.push(format!(
            "subcube extremal coefficient: <= {} of the edges (published), {} conjectured",
            annotations::SUBCUBE_EX_UPPER_COEFF,
            annotations::SUBCUBE_EX_CONJECTURED_COEFF
        ));
    }
    if opts.hypercube.is_some() {
        annotations.push(format!(
            "transversal density bracket: {}",
            annotations::TRANSVERSAL_DENSITY_BRACKET
        ));
    }

    let report = BoundsReport {
        instance: opts.instance.clone(),
        edges_g,
        edges_h,
        ex_value,
        ex_provenance,
        eq1_lower,
        counting_lower,
        counting_lower_ceil,
        chi_h,
        ratio_limit,
        cl,
        cl_bounds,
        pp,
        cov,
        construction_size: opts.construction_size,
        annotations,
    };
    assert_chain(&report)?;
    Ok(report)
}

fn assert_chain(r: &BoundsReport) -> Result<(), BoundsError> {
    let fail = |msg: String| Err(BoundsError::ChainViolation(msg));
    if let (Some(eq1), Some(cov)) = (r.eq1_lower, r.cov) {
        if eq1 > cov {
            return fail(format!("eq1 {} > cov {}", eq1, cov));
        }
    }
    if let (Some(cov), Some(cl)) = (r.cov, r.cl) {
        if cov > cl {
            return fail(format!("cov {} > cl {}", cov, cl));
        }
    }
    if let (Some(cl), Some(pp)) = (r.cl, r.pp) {
        if cl > pp {
            return fail(format!("cl {} > pp {}", cl, pp));
        }
    }
    if let (Some(ceil), Some(cl)) = (r.counting_lower_ceil, r.cl) {
        if ceil > cl {
            return fail(format!("counting bound {} > cl {}", ceil, cl));
        }
    }
    if let (Some(cons), Some(cl)) = (r.construction_size, r.cl) {
        if cons < cl {
            return fail(format!("construction {} below optimum {}", cons, cl));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copies::{enumerate_copies, enumerate_subcubes};
    use crate::generators::{complete, cycle, monotonicity_gadget, path};

    #[test]
    fn eq1_examples() {
        assert_eq!(eq1_lower_bound(15, 9, 3), 2);
        assert_eq!(eq1_lower_bound(20, 20, 4), 0);
        assert_eq!(eq1_lower_bound(12, 9, 4), 1);
    }

    #[test]
    fn counting_bound_examples() {
        assert_eq!(hypercube_counting_lower_bound(3, 2), Rational::new(3, 4));
        assert_eq!(hypercube_counting_lower_bound(5, 2), Rational::from_int(5));
        for d in 1..=5u32 {
            let r = hypercube_counting_lower_bound(d, d);
            assert!(r <= Rational::from_int(1), "Q_d in Q_d bound {r}");
        }
    }

    #[test]
    fn chromatic_numbers() {
        for m in 3..=6u32 {
            assert_eq!(chromatic_number(&complete(m)).unwrap(), m);
            assert_eq!(
                chromatic_ratio(&complete(m)).unwrap().unwrap(),
                Rational::new(1, m as i64 - 1)
            );
        }
        assert_eq!(chromatic_number(&cycle(5)).unwrap(), 3);
        assert_eq!(
            chromatic_ratio(&cycle(5)).unwrap().unwrap(),
            Rational::new(1, 2)
        );
        assert_eq!(chromatic_number(&cycle(4)).unwrap(), 2);
        assert_eq!(chromatic_ratio(&cycle(4)).unwrap(), None);
        assert_eq!(chromatic_number(&path(3)).unwrap(), 2);
        assert!(chromatic_number(&complete(13)).is_err());
    }

    #[test]
    fn q3_report_is_fully_exact() {
        let (_, table) = enumerate_subcubes(3, 2).unwrap();
        let pattern = crate::generators::hypercube(2).unwrap();
        let mut opts = ReportOptions::new("Q3/Q2");
        opts.hypercube = Some((3, 2));
        let r = build_report(&pattern, &table, &opts).unwrap();
        assert_eq!(r.ex_value, Some(9));
        assert_eq!(r.eq1_lower, Some(1));
        assert_eq!(r.counting_lower_ceil, Some(1));
        assert_eq!(r.cl, Some(2));
        assert_eq!(r.pp, Some(2));
        assert_eq!(r.cov, Some(2));
        assert_eq!(r.chi_h, Some(2));
        assert_eq!(r.ratio_limit, None);
        assert!(!r.annotations.is_empty());
    }

    #[test]
    fn k6_report_uses_turan_formula() {
        let table = enumerate_copies(&complete(6), &complete(3)).unwrap();
        let mut opts = ReportOptions::new("K6/K3");
        opts.turan_ex = Some((6, 3));
        opts.construction_size = Some(2);
        let r = build_report(&complete(3), &table, &opts).unwrap();
        assert_eq!(r.ex_value, Some(9));
        assert_eq!(r.ex_provenance, Some(ExProvenance::TuranFormula));
        assert_eq!(r.eq1_lower, Some(2));
        assert_eq!(r.cl, Some(2));
        assert_eq!(r.ratio_limit, Some(Rational::new(1, 2)));
    }

    #[test]
    fn gadget_reports() {
        let g = monotonicity_gadget(4);
        let pat = cycle(4);
        let prime = enumerate_copies(&g.prime, &pat).unwrap();
        let r1 = build_report(&pat, &prime, &ReportOptions::new("gadget4-prime")).unwrap();
        assert_eq!(r1.cl, Some(1));
        let reduced = enumerate_copies(&g.reduced, &pat).unwrap();
        let r2 = build_report(&pat, &reduced, &ReportOptions::new("gadget4")).unwrap();
        assert_eq!(r2.cl, Some(3));
    }
}
