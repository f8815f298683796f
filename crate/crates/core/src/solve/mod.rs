//! Exact optimum computation for the four packing quantities at desk
//! scale.
//!
//! - `cl`: minimum size of a maximal packing (iterative deepening).
//! - `pp`: maximum size of a packing (edge-branching set packing).
//! - `cov`: minimum number of copies, overlap allowed, blocking every
//!   copy.
//! - `ex`: largest copy-free edge subset (via minimum transversal).
//!
//! All searches are single-threaded and deterministic: identical inputs
//! and node budgets explore identical trees. Wall-time budgets are
//! honored when set, at the cost of run-to-run reproducibility of the
//! `bounds_only` cut point; leave `max_millis` unset for deterministic
//! runs.

mod cl;
mod cov;
mod ex;
mod oracle;
mod pp;
pub(crate) mod search;
pub mod symmetry;

pub use cl::{solve_cl, solve_cl_seeded};
pub use cov::solve_cov;
pub use ex::solve_ex;
pub use oracle::{oracle_enumerate, ORACLE_COPY_CAP, ORACLE_EDGE_CAP};
pub use pp::solve_pp;
pub use search::SOLVER_COPY_CAP;
pub use symmetry::{hypercube_group, symmetric_group, CopySymmetry, SymmetryGroup, GROUP_CAP};

use crate::copies::CopyTable;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("instance too large for exact search: {copies} copies (cap {SOLVER_COPY_CAP})")]
    TooManyCopies { copies: usize },
    #[error(
        "oracle cap exceeded: {copies} copies, {edges} edges (caps {ORACLE_COPY_CAP} copies / {ORACLE_EDGE_CAP} edges)"
    )]
    OracleCapExceeded { copies: usize, edges: usize },
    #[error("symmetry group does not map the copy table to itself")]
    InvalidSymmetry,
    #[error("symmetry group too large: {size} elements (cap {cap})")]
    GroupTooLarge { size: u64, cap: u64 },
}

/// The four quantities attached to a (host, pattern) instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    /// Minimum maximal packing size.
    Cl,
    /// Maximum packing size.
    Pp,
    /// Minimum blocking set size.
    Cov,
    /// Largest copy-free edge subset size.
    Ex,
}

impl std::fmt::Display for Quantity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Quantity::Cl => "cl",
            Quantity::Pp => "pp",
            Quantity::Cov => "cov",
            Quantity::Ex => "ex",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Quantity {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "cl" => Ok(Quantity::Cl),
            "pp" => Ok(Quantity::Pp),
            "cov" => Ok(Quantity::Cov),
            "ex" => Ok(Quantity::Ex),
            other => Err(format!(
                "unknown quantity {other:?} (expected cl, pp, cov, ex)"
            )),
        }
    }
}

/// Search budget: explored nodes always, wall time optionally.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_millis: Option<u64>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 20_000_000,
            max_millis: None,
        }
    }
}

impl Budget {
    pub fn nodes(max_nodes: u64) -> Budget {
        Budget {
            max_nodes,
            max_millis: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SolveStatus {
    /// The value is the exact optimum.
    Optimal,
    /// Budget ran out; the optimum lies in `[lo, hi]`.
    BoundsOnly { lo: u64, hi: u64 },
}

/// The feasible object backing a solve result: a packing, a copy
/// subset, or an edge subset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Members(Vec<u32>),
    Copies(Vec<u32>),
    Edges(Vec<u32>),
}

impl Witness {
    pub fn ids(&self) -> &[u32] {
        match self {
            Witness::Members(v) | Witness::Copies(v) | Witness::Edges(v) => v,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub quantity: Quantity,
    /// Value of the witness; equals the optimum when status is Optimal.
    pub value: u64,
    pub status: SolveStatus,
    pub witness: Witness,
    pub nodes: u64,
    pub millis: u128,
}

impl SolveResult {
    /// Bracket `[lo, hi]` containing the optimum (collapsed when
    /// optimal).
    pub fn bounds(&self) -> (u64, u64) {
        match self.status {
            SolveStatus::Optimal => (self.value, self.value),
            SolveStatus::BoundsOnly { lo, hi } => (lo, hi),
        }
    }

    pub fn is_optimal(&self) -> bool {
        matches!(self.status, SolveStatus::Optimal)
    }
}

impl Serialize for SolveResult {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let (lo, hi) = self.bounds();
        let mut st = serializer.serialize_struct("SolveResult", 8)?;
        st.serialize_field("quantity", &self.quantity)?;
        st.serialize_field("value", &self.value)?;
        st.serialize_field(
            "status",
            match self.status {
                SolveStatus::Optimal => "optimal",
                SolveStatus::BoundsOnly { .. } => "bounds_only",
            },
        )?;
        st.serialize_field("lo", &lo)?;
        st.serialize_field("hi", &hi)?;
        st.serialize_field("witness", &self.witness.ids())?;
        st.serialize_field("nodes", &self.nodes)?;
        st.serialize_field("millis", &self.millis)?;
        st.end()
    }
}

/// Dispatch by quantity; `symmetry` only affects the `cl` search.
pub fn solve(
    table: &CopyTable,
    quantity: Quantity,
    budget: &Budget,
    symmetry: Option<&CopySymmetry>,
) -> Result<SolveResult, SolveError> {
    match quantity {
        Quantity::Cl => solve_cl(table, budget, symmetry),
        Quantity::Pp => solve_pp(table, budget),
        Quantity::Cov => solve_cov(table, budget),
        Quantity::Ex => solve_ex(table, budget),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copies::enumerate_subcubes;

    #[test]
    fn chain_on_q3() {
        let (_, table) = enumerate_subcubes(3, 2).unwrap();
        let budget = Budget::default();
        let cov = solve_cov(&table, &budget).unwrap().value;
        let cl = solve_cl(&table, &budget, None).unwrap().value;
        let pp = solve_pp(&table, &budget).unwrap().value;
        let ex = solve_ex(&table, &budget).unwrap().value;
        let m = table.host_edge_count() as u64;
        let h = table.pattern_edge_count() as u64;
        let eq1 = (m - ex).div_ceil(h);
        assert!(
            eq1 <= cov && cov <= cl && cl <= pp,
            "{eq1} <= {cov} <= {cl} <= {pp}"
        );
    }

    #[test]
    fn result_json_schema() {
        let (_, table) = enumerate_subcubes(3, 2).unwrap();
        let res = solve_cl(&table, &Budget::default(), None).unwrap();
        let js = serde_json::to_value(&res).unwrap();
        assert_eq!(js["quantity"], "cl");
        assert_eq!(js["value"], 2);
        assert_eq!(js["status"], "optimal");
        assert_eq!(js["lo"], 2);
        assert_eq!(js["hi"], 2);
        assert!(js["witness"].is_array());
        assert!(js["nodes"].as_u64().unwrap() > 0);
        assert!(js.get("millis").is_some());
    }

    #[test]
    fn quantity_parsing() {
        assert_eq!("cl".parse::<Quantity>().unwrap(), Quantity::Cl);
        assert_eq!("ex".parse::<Quantity>().unwrap(), Quantity::Ex);
        assert!("zz".parse::<Quantity>().is_err());
    }
}
