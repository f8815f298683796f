//! The acceptance battery: nine criteria, each with its tolerances
//! pinned in code, each printing one pass/fail line.

use clumsy_core::construct::{
    construct_grid_pattern, construct_kn_km, construct_qn_q2_layers, ConstructionParams,
};
use clumsy_core::copies::{
    binomial, count_subcubes, edge_subcube_degree, enumerate_copies, enumerate_subcubes, CopyTable,
};
use clumsy_core::generators::{
    complete, cycle, grid_section, hypercube, monotonicity_gadget, path, random_graph, GridSpec,
};
use clumsy_core::graph::Graph;
use clumsy_core::packing::{check_maximal, check_packing, Certificate, Packing};
use clumsy_core::solve::{
    hypercube_group, oracle_enumerate, solve_cl, solve_cov, solve_ex, solve_pp, CopySymmetry,
    ORACLE_COPY_CAP,
};
use clumsy_core::{Budget, Quantity};
use serde::Serialize;
use std::time::Instant;

#[derive(Clone, Debug)]
pub struct AcceptanceConfig {
    /// Node budget for the Q_5 search (criterion 2). The criterion
    /// allows up to an hour; the default closes the instance in
    /// milliseconds.
    pub q5_budget: Budget,
    /// Budget for every other exact solve.
    pub solver_budget: Budget,
    /// Random-graph count for the bound-chain battery (criterion 4).
    pub chain_instances: usize,
}

impl Default for AcceptanceConfig {
    fn default() -> Self {
        AcceptanceConfig {
            q5_budget: Budget::nodes(200_000_000),
            solver_budget: Budget::default(),
            chain_instances: 200,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
    pub millis: u128,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {}: {} — {} [{}] ({} ms)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.details,
            self.millis
        )
    }
}

pub fn run_all(config: &AcceptanceConfig) -> Vec<CriterionOutcome> {
    (1..=9)
        .map(|id| run_criterion(id, config).expect("criteria 1-9 exist"))
        .collect()
}

pub fn run_criterion(id: u8, config: &AcceptanceConfig) -> Option<CriterionOutcome> {
    let f: fn(&AcceptanceConfig) -> (bool, String) = match id {
        1 => c1_hypercube_exact,
        2 => c2_q5_frontier,
        3 => c3_oracle_equivalence,
        4 => c4_bound_chain,
        5 => c5_turan_construction,
        6 => c6_gadget_family,
        7 => c7_grid_densities,
        8 => c8_counting_formulas,
        9 => c9_layer_sanity,
        _ => return None,
    };
    let name = match id {
        1 => "exact hypercube values",
        2 => "Q5 frontier",
        3 => "oracle equivalence",
        4 => "bound chain on random graphs",
        5 => "complete-graph construction",
        6 => "non-monotonicity family",
        7 => "grid pattern densities",
        8 => "subcube counting formulas",
        9 => "layer construction sanity",
        _ => unreachable!(),
    };
    let started = Instant::now();
    let (passed, details) = f(config);
    Some(CriterionOutcome {
        id,
        name,
        passed,
        details,
        millis: started.elapsed().as_millis(),
    })
}

fn verify_packing(table: &CopyTable, members: &[u32]) -> bool {
    let p = match Packing::new(table, members.iter().copied()) {
        Ok(p) => p,
        Err(_) => return false,
    };
    matches!(check_packing(table, &p), Certificate::ValidPacking)
        && matches!(check_maximal(table, &p), Ok(Certificate::Maximal))
}

/// Criterion 1: cl(Q_3,Q_2) = 2 and cl(Q_4,Q_2) = 3, each within 60 s
/// in deterministic mode.
fn c1_hypercube_exact(config: &AcceptanceConfig) -> (bool, String) {
    let mut details = Vec::new();
    let mut ok = true;
    for (n, expected) in [(3u32, 2u64), (4, 3)] {
        let (_, table) = enumerate_subcubes(n, 2).expect("within cap");
        let started = Instant::now();
        let res = solve_cl(&table, &config.solver_budget, None).expect("solvable");
        let ms = started.elapsed().as_millis();
        let good =
            res.is_optimal() && res.value == expected && ms <= 60_000 && verify_packing(&table, res.witness.ids());
        ok &= good;
        details.push(format!("cl(Q{n},Q2)={} in {} ms", res.value, ms));
    }
    (ok, details.join("; "))
}

/// Criterion 2: a certified maximal Q_2-packing of Q_5 of size <= 8,
/// and a reported lower bound >= 5 under the budget with symmetry
/// pruning.
fn c2_q5_frontier(config: &AcceptanceConfig) -> (bool, String) {
    let (host, table) = enumerate_subcubes(5, 2).expect("within cap");
    let group = hypercube_group(5).expect("group under cap");
    let sym = CopySymmetry::new(&host, &table, &group).expect("valid symmetry");
    let res = solve_cl(&table, &config.q5_budget, Some(&sym)).expect("solvable");
    let (lo, hi) = res.bounds();
    let certified = verify_packing(&table, res.witness.ids());
    let witness_small = res.witness.ids().len() as u64 <= 8;
    let ok = lo >= 5 && certified && witness_small && hi <= 8;
    (
        ok,
        format!(
            "cl(Q5,Q2) in [{lo},{hi}] ({}), witness size {} certified={certified}",
            if res.is_optimal() { "optimal" } else { "bounds only" },
            res.witness.ids().len()
        ),
    )
}

/// Instance list for criterion 3: every family the build touches, kept
/// to at most 20 copies so the exhaustive oracle applies.
fn oracle_instances() -> Vec<(String, CopyTable)> {
    let mut out: Vec<(String, CopyTable)> = Vec::new();
    let mut push = |name: String, host: &Graph, pattern: &Graph| {
        if let Ok(table) = enumerate_copies(host, pattern) {
            if table.len() <= 20 {
                out.push((name, table));
            }
        }
    };

    for (n, m) in [
        (4u32, 3u32),
        (5, 3),
        (6, 3),
        (5, 4),
        (6, 4),
        (6, 5),
        (7, 6),
        (8, 7),
        (4, 4),
        (5, 5),
    ] {
        push(format!("K{n}/K{m}"), &complete(n), &complete(m));
    }
    for k in 3..=6u32 {
        let g = monotonicity_gadget(k);
        push(format!("gadget-prime(k={k})"), &g.prime, &cycle(k));
        push(format!("gadget(k={k})"), &g.reduced, &cycle(k));
    }
    for n in [3u32, 4, 5] {
        let s = grid_section(GridSpec::new(4, n).unwrap());
        push(format!("R4({n})/C4"), &s.graph, &cycle(4));
    }
    for n in [2u32, 3] {
        let s = grid_section(GridSpec::new(3, n).unwrap());
        push(format!("R3({n})/C3"), &s.graph, &cycle(3));
    }
    for n in [4u32, 5, 6] {
        let s = grid_section(GridSpec::new(6, n).unwrap());
        push(format!("R6({n})/C6"), &s.graph, &cycle(6));
    }
    for (n, d) in [(2u32, 2u32), (3, 2), (3, 3), (4, 3), (4, 4)] {
        let host = hypercube(n).unwrap();
        push(format!("Q{n}/Q{d}"), &host, &hypercube(d).unwrap());
    }
    // Random fill until at least 50 instances.
    let patterns: [(&str, Graph); 3] = [
        ("K3", complete(3)),
        ("C4", cycle(4)),
        ("P3", path(3)),
    ];
    let mut seed = 400u64;
    while out.len() < 55 {
        seed += 1;
        let n = 5 + (seed % 5) as u32;
        let p = 0.25 + (seed % 3) as f64 * 0.1;
        let g = random_graph(n, p, seed);
        for (pname, pat) in &patterns {
            if let Ok(table) = enumerate_copies(&g, pat) {
                if !table.is_empty() && table.len() <= 20 {
                    out.push((format!("G({n},{p:.2},{seed})/{pname}"), table));
                }
            }
        }
    }
    out
}

/// Criterion 3: on >= 50 instances with <= 20 copies, all four solvers
/// match the exhaustive oracle exactly, within 10 minutes total.
fn c3_oracle_equivalence(config: &AcceptanceConfig) -> (bool, String) {
    let started = Instant::now();
    let instances = oracle_instances();
    let mut mismatches = Vec::new();
    for (name, table) in &instances {
        debug_assert!(table.len() <= ORACLE_COPY_CAP);
        for q in [Quantity::Cl, Quantity::Pp, Quantity::Cov, Quantity::Ex] {
            let oracle = match oracle_enumerate(table, q) {
                Ok(r) => r,
                Err(e) => {
                    mismatches.push(format!("{name}/{q}: oracle failed ({e})"));
                    continue;
                }
            };
            let solved =
                clumsy_core::solve::solve(table, q, &config.solver_budget, None).expect("solvable");
            if !solved.is_optimal() || solved.value != oracle.value {
                mismatches.push(format!(
                    "{name}/{q}: solver {} vs oracle {}",
                    solved.value, oracle.value
                ));
            }
        }
    }
    let secs = started.elapsed().as_secs();
    let ok = mismatches.is_empty() && instances.len() >= 50 && secs <= 600;
    let details = if mismatches.is_empty() {
        format!(
            "{} instances x 4 quantities all match the oracle in {secs} s",
            instances.len()
        )
    } else {
        format!("{} mismatches: {}", mismatches.len(), mismatches.join(", "))
    };
    (ok, details)
}

/// Criterion 4: eq1 <= cov <= cl <= pp with all four exact on 200
/// random graphs times three patterns; zero violations.
fn c4_bound_chain(config: &AcceptanceConfig) -> (bool, String) {
    let patterns: [(&str, Graph); 3] = [
        ("K3", complete(3)),
        ("C4", cycle(4)),
        ("P3", path(3)),
    ];
    let mut violations = Vec::new();
    let mut solved = 0usize;
    for i in 0..config.chain_instances {
        let n = 4 + (i % 8) as u32; // 4..=11 vertices
        let p = [0.25, 0.35, 0.45, 0.55][i % 4];
        let g = random_graph(n, p, 1000 + i as u64);
        let m = g.edge_count() as u64;
        for (pname, pat) in &patterns {
            let table = match enumerate_copies(&g, pat) {
                Ok(t) => t,
                Err(_) => continue,
            };
            let h = table.pattern_edge_count() as u64;
            let name = format!("G(n={n},p={p},seed={})/{pname}", 1000 + i);
            let ex = solve_ex(&table, &config.solver_budget).expect("solvable");
            let cov = solve_cov(&table, &config.solver_budget).expect("solvable");
            let cl = solve_cl(&table, &config.solver_budget, None).expect("solvable");
            let pp = solve_pp(&table, &config.solver_budget).expect("solvable");
            if !(ex.is_optimal() && cov.is_optimal() && cl.is_optimal() && pp.is_optimal()) {
                violations.push(format!("{name}: not all exact"));
                continue;
            }
            solved += 1;
            let eq1 = (m - ex.value).div_ceil(h);
            if !(eq1 <= cov.value && cov.value <= cl.value && cl.value <= pp.value) {
                violations.push(format!(
                    "{name}: {eq1} <= {} <= {} <= {} fails",
                    cov.value, cl.value, pp.value
                ));
            }
        }
    }
    let ok = violations.is_empty() && solved >= 3 * config.chain_instances / 2;
    let details = if violations.is_empty() {
        format!(
            "{} graphs x 3 patterns, {solved} chains all exact, zero violations",
            config.chain_instances
        )
    } else {
        format!("{} violations: {}", violations.len(), violations.join(", "))
    };
    (ok, details)
}

/// Criterion 5: the complete-graph construction hits its formula sizes
/// with no boundary additions, and the solver confirms optimality for
/// n = 6.
fn c5_turan_construction(config: &AcceptanceConfig) -> (bool, String) {
    let mut ok = true;
    let mut details = Vec::new();
    for (n, expected) in [(6u32, 2u64), (14, 14)] {
        match construct_kn_km(n, 3, &config.solver_budget) {
            Ok(out) => {
                let good = out.report.size == expected
                    && out.report.boundary_added == 0
                    && out.report.certificate == Certificate::Maximal
                    && verify_packing(&out.table, out.packing.members());
                ok &= good;
                details.push(format!(
                    "K{n}/K3 size {} (+{} boundary)",
                    out.report.size, out.report.boundary_added
                ));
            }
            Err(e) => {
                ok = false;
                details.push(format!("K{n}/K3 failed: {e}"));
            }
        }
    }
    let table = enumerate_copies(&complete(6), &complete(3)).expect("small");
    let res = solve_cl(&table, &config.solver_budget, None).expect("solvable");
    ok &= res.is_optimal() && res.value == 2;
    details.push(format!("solver confirms cl(K6,K3)={}", res.value));
    (ok, details.join("; "))
}

/// Criterion 6: cl(prime) = 1 and cl(reduced) = k-1 for the gadget
/// family, k in {4, 5, 6}, within 5 minutes total.
fn c6_gadget_family(config: &AcceptanceConfig) -> (bool, String) {
    let started = Instant::now();
    let mut ok = true;
    let mut details = Vec::new();
    for k in [4u32, 5, 6] {
        let g = monotonicity_gadget(k);
        let prime = enumerate_copies(&g.prime, &cycle(k)).expect("small");
        let r1 = solve_cl(&prime, &config.solver_budget, None).expect("solvable");
        let reduced = enumerate_copies(&g.reduced, &cycle(k)).expect("small");
        let r2 = solve_cl(&reduced, &config.solver_budget, None).expect("solvable");
        let good = r1.is_optimal()
            && r1.value == 1
            && r2.is_optimal()
            && r2.value == (k - 1) as u64;
        ok &= good;
        details.push(format!("k={k}: cl'={} cl={}", r1.value, r2.value));
    }
    let secs = started.elapsed().as_secs();
    ok &= secs <= 300;
    details.push(format!("{secs} s total"));
    (ok, details.join("; "))
}

/// Criterion 7: for each tiling at n = 30 the pattern is certified
/// maximal with central-window covered fraction within 0.05 of
/// 2/(k+1), and the square-grid member count is within 10% of n^2/5.
fn c7_grid_densities(config: &AcceptanceConfig) -> (bool, String) {
    let mut ok = true;
    let mut details = Vec::new();
    for k in [3u32, 4, 6] {
        let spec = GridSpec::new(k, 30).expect("valid kind");
        match construct_grid_pattern(spec, Some(2), &config.solver_budget) {
            Ok(out) => {
                let target = 2.0 / (k as f64 + 1.0);
                let fraction = match &out.report.params {
                    ConstructionParams::Grid(p) => p.window_fraction.as_f64(),
                    _ => f64::NAN,
                };
                let mut good = out.report.certificate == Certificate::Maximal
                    && (fraction - target).abs() <= 0.05;
                if k == 4 {
                    let expect = 30.0 * 30.0 / 5.0;
                    good &= (out.report.size as f64 - expect).abs() <= 0.10 * expect;
                    details.push(format!(
                        "k=4: window {:.4} (target {:.4}), {} members vs {}",
                        fraction, target, out.report.size, expect
                    ));
                } else {
                    details.push(format!("k={k}: window {fraction:.4} (target {target:.4})"));
                }
                ok &= good;
            }
            Err(e) => {
                ok = false;
                details.push(format!("k={k} failed: {e}"));
            }
        }
    }
    (ok, details.join("; "))
}

/// Criterion 8: subcube enumeration cardinalities and per-edge
/// incidences equal the closed forms for all n <= 6, d <= 3; exact.
fn c8_counting_formulas(_config: &AcceptanceConfig) -> (bool, String) {
    let mut checked = 0;
    for n in 1..=6u32 {
        for d in 1..=n.min(3) {
            let (_, table) = enumerate_subcubes(n, d).expect("within cap");
            if table.len() as u64 != count_subcubes(n, d) {
                return (false, format!("count mismatch at n={n}, d={d}"));
            }
            let expected_degree = edge_subcube_degree(n, d);
            for e in 0..table.host_edge_count() as u32 {
                if table.copies_with_edge(e).len() as u64 != expected_degree {
                    return (false, format!("incidence mismatch at n={n}, d={d}, edge {e}"));
                }
            }
            debug_assert_eq!(
                count_subcubes(n, d),
                (1u64 << (n - d)) * binomial(n as u64, d as u64)
            );
            checked += 1;
        }
    }
    (true, format!("{checked} (n,d) pairs exact"))
}

/// Criterion 9: layer construction for n in {4, 5, 6} certifies
/// maximal with size at most three quarters of a perfect packing.
fn c9_layer_sanity(config: &AcceptanceConfig) -> (bool, String) {
    let mut ok = true;
    let mut details = Vec::new();
    for n in [4u32, 5, 6] {
        match construct_qn_q2_layers(n, &config.solver_budget) {
            Ok(out) => {
                let m = out.host.edge_count() as u64;
                // size / (m/4) <= 3/4, exactly: 16 * size <= 3 * m.
                let good = out.report.certificate == Certificate::Maximal
                    && 16 * out.report.size <= 3 * m
                    && verify_packing(&out.table, out.packing.members());
                ok &= good;
                details.push(format!(
                    "n={n}: size {} vs cap {}",
                    out.report.size,
                    3 * m / 16
                ));
            }
            Err(e) => {
                ok = false;
                details.push(format!("n={n} failed: {e}"));
            }
        }
    }
    (ok, details.join("; "))
}
