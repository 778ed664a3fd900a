//! Robust (ε, δ) stationarity testing: the net polyhedron, rounding by exact
//! projection, the robust stationarity test and its exact oracles.

mod net;
mod oracle;
mod rst;

pub use net::{build_net, rnd, ActiveSet, ApproxActiveSets, NetPolyhedron, Rounded};
pub use oracle::{oracle_dispatch, ExactOracle, OracleAnswer};
pub use rst::{rst, rst_iteration_bound, RstOutcome, RstStep, RstVerdict};
