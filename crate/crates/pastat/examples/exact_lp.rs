//! Exact linear programming, projection and min-norm points over the
//! rationals.
//!
//! Run with `cargo run --example exact_lp`.

use pastat::exactsolve::{lp_optimize, min_norm_point, project_point, rank, LinearSystem, LpOutcome};
use pastat::rational::{fmt_rational, fmt_vec, frac, int, ivec};

fn main() -> pastat::Result<()> {
    // maximize x + y subject to x + 2y <= 4, 3x + y <= 6, x, y >= 0
    let mut sys = LinearSystem::new(2);
    sys.add_le(ivec(&[1, 2]), int(4));
    sys.add_le(ivec(&[3, 1]), int(6));
    sys.add_ge(ivec(&[1, 0]), int(0));
    sys.add_ge(ivec(&[0, 1]), int(0));
    match lp_optimize(&ivec(&[-1, -1]), &sys) {
        LpOutcome::Optimal { point, value } => {
            println!("maximum {} at {}", fmt_rational(&-value), fmt_vec(&point))
        }
        other => println!("{other:?}"),
    }

    // Euclidean projection of (3, 3) onto the same polygon.
    if let Some(p) = project_point(&sys, &ivec(&[3, 3]))? {
        println!("projection of (3, 3): {}", fmt_vec(&p));
    }

    // Nearest point to the origin in conv{(1, 2), (2, -1), (3, 1/2)}.
    let m = min_norm_point(&[ivec(&[1, 2]), ivec(&[2, -1]), vec![int(3), frac(1, 2)]])?;
    println!("min-norm point {} with squared norm {}", fmt_vec(&m.point), fmt_rational(&m.norm_sq()));

    println!("rank of [[1,2,3],[2,4,6],[1,0,1]] = {}", rank(&[ivec(&[1, 2, 3]), ivec(&[2, 4, 6]), ivec(&[1, 0, 1])]));
    Ok(())
}
