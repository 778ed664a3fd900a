//! Convex subdifferentials of multi-composite functions and brute-force
//! Clarke and Fréchet oracles.

mod brute;
mod intsearch;
mod lifted;
mod vertices;

pub use brute::{
    clarke_subdiff_brute, dc_essentially_active, disjunctive_witness, essentially_active, frechet_stationary,
    maxmin_essentially_active, ActivePiece, FrechetResult,
};
pub use lifted::{lifted_subdiff, lifted_transversal, subdiff_contains, LiftedSubdiff};
pub use vertices::{
    dc_critical_dist_sq, dc_critical_nearest, dc_difference_vertices, subdiff_vertices, transversal_at,
    TransversalMethod,
};
pub use crate::exactsolve::equality_set;
