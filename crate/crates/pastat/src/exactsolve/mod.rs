//! Exact rational linear algebra: rank, LP feasibility and optimization,
//! minimum-norm points and projection onto polyhedra.

mod filter;
mod linalg;
mod lp;
mod minnorm;
mod project;
mod scalar;

pub use linalg::{independent_rows, rank, solve, span_intersection_trivial};
pub use lp::{lp_feasible, lp_optimize, Farkas, Feasibility, LinearSystem, LpOutcome, Row};
pub use minnorm::{min_norm_point, strict_witness, MinNorm};
pub(crate) use minnorm::{extreme_in, from_small, sub_s, to_small, witness_fast, dot_s, Fail};
pub(crate) use filter::{idot, int_verdict, Verdict};
pub(crate) use scalar::{Scalar, SmallQ};
pub use project::project_point;

use crate::error::{Error, Result};
use crate::rational::RVector;

/// Indices of the `≤` rows of `sys` that hold with equality at every
/// feasible point (the implicit equalities). Explicit equalities are always
/// tight and are not listed.
///
/// Each candidate row tight at a first feasible point is tested by minimizing
/// its left-hand side.
pub fn equality_set(sys: &LinearSystem) -> Result<Vec<usize>> {
    let x0 = match lp_feasible(sys) {
        Feasibility::Feasible(x) => x,
        Feasibility::Infeasible(_) => return Err(Error::Empty),
    };
    let mut out = Vec::new();
    for (i, r) in sys.le.iter().enumerate() {
        if crate::rational::dot(&r.a, &x0) != r.b {
            continue;
        }
        match lp_optimize(&r.a, sys) {
            LpOutcome::Optimal { value, .. } if value == r.b => out.push(i),
            _ => {}
        }
    }
    Ok(out)
}

/// Homogeneous system describing the linear hull `par(P)` of a non-empty
/// polyhedron: every explicit and implicit equality with zero right-hand side.
pub fn parallel_space(sys: &LinearSystem) -> Result<Vec<RVector>> {
    let e = equality_set(sys)?;
    let mut rows: Vec<RVector> = sys.eq.iter().map(|r| r.a.clone()).collect();
    rows.extend(e.into_iter().map(|i| sys.le[i].a.clone()));
    Ok(rows)
}
