//! Subgradient descent on `|x|` stopped by the robust stationarity test.
//!
//! Run with `cargo run --example subgradient_stop`.

use pastat::butterfly::ExactOracle;
use pastat::pafunc::{Affine, DcFunction, McFunction};
use pastat::rational::{fmt_vec, frac, int, ivec};
use pastat::sgm::{run, SgmConfig, StepSchedule};
use pastat::Caps;

fn main() -> pastat::Result<()> {
    let abs = DcFunction::convex(McFunction::max_of(1, vec![Affine::linear(ivec(&[1])), Affine::linear(ivec(&[-1]))])?);
    let cfg = SgmConfig {
        schedule: StepSchedule::Constant(frac(1, 4)),
        max_iters: 16,
        eps: int(0),
        delta: frac(1, 10),
        oracle: ExactOracle::ClarkeBrute,
        period: 1,
    };
    let trace = run(&abs, &[int(1)], &cfg, &Caps::default())?;
    print!("{}", trace.to_json_lines());
    match &trace.certificate {
        Some(c) => println!("stopped after {} iterations at certificate {}", trace.iterations(), fmt_vec(c)),
        None => println!("no certificate after {} iterations", trace.iterations()),
    }
    Ok(())
}
