//! The robust (ε, δ) stationarity test: rounding to the net polyhedron, then
//! asking an exact oracle.
//!
//! Run with `cargo run --example robust_test`.

use pastat::butterfly::{rnd, rst, ExactOracle, Rounded, RstVerdict};
use pastat::pafunc::{Affine, DcFunction, McFunction};
use pastat::rational::{fmt_vec, frac, int, ivec};
use pastat::Caps;

fn main() -> pastat::Result<()> {
    let abs = DcFunction::convex(McFunction::max_of(1, vec![Affine::linear(ivec(&[1])), Affine::linear(ivec(&[-1]))])?);
    let w = [frac(1, 20)];
    let delta = frac(1, 5);

    match rnd(&abs, &w, &delta)? {
        Rounded::Point(p) => println!("rnd(|x|, 1/20, 1/5) = {}", fmt_vec(&p)),
        Rounded::Infeasible => println!("net polyhedron is empty"),
    }
    println!("delta_sep(1/20) = {}", abs.delta_sep(&w)?);

    for oracle in [ExactOracle::ClarkeBrute, ExactOracle::DcCritical, ExactOracle::ClarkeSumRule] {
        let out = rst(&abs, &w, &int(0), &delta, oracle, &Caps::default())?;
        let verdict = match &out.verdict {
            RstVerdict::True { certificate } => format!("true, certificate {}", fmt_vec(certificate)),
            RstVerdict::False => "false".into(),
            RstVerdict::Refused { reason } => format!("refused: {reason}"),
        };
        println!("{oracle:?}: {verdict} after {} iterations", out.iterations());
    }

    let far = rst(&abs, &[int(1)], &int(0), &frac(1, 2), ExactOracle::ClarkeBrute, &Caps::default())?;
    println!("at w = 1 with delta = 1/2: {}", serde_json::to_string(&far.to_json()).unwrap());
    Ok(())
}
