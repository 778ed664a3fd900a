//! Building multi-composite, DC and Max-Min functions and evaluating values,
//! directional derivatives and subdifferentials.
//!
//! Run with `cargo run --example pa_functions`.

use pastat::io::function_to_json;
use pastat::pafunc::{Affine, DcFunction, MaxMinFunction, McFunction, McNode, PaFunction};
use pastat::rational::{fmt_rational, fmt_vec, int, ivec};
use pastat::subdiff::clarke_subdiff_brute;
use pastat::Caps;

fn main() -> pastat::Result<()> {
    let caps = Caps::default();

    // h(x, y) = max{x, -x} + max{y, 0}
    let h = McFunction::new(
        2,
        McNode::Sum(vec![
            McNode::Max(vec![McNode::leaf(ivec(&[1, 0]), int(0)), McNode::leaf(ivec(&[-1, 0]), int(0))]),
            McNode::Max(vec![McNode::leaf(ivec(&[0, 1]), int(0)), McNode::leaf(ivec(&[0, 0]), int(0))]),
        ]),
    )?;
    // g(x, y) = max{x + y, 0}
    let g = McFunction::max_of(2, vec![Affine::linear(ivec(&[1, 1])), Affine::linear(ivec(&[0, 0]))])?;
    let f = DcFunction::new(h, g)?;
    let w = ivec(&[0, 0]);
    println!("f(1, -2) = {}", fmt_rational(&f.eval(&ivec(&[1, -2]))?));
    println!("f'(0; (1, 1)) = {}", fmt_rational(&f.dir_deriv(&w, &ivec(&[1, 1]))?));

    let pf = PaFunction::Dc(f);
    let clarke = clarke_subdiff_brute(&pf, &w, &caps)?;
    println!("Clarke subdifferential at 0 has vertices:");
    for v in clarke.vertices() {
        println!("  {}", fmt_vec(v));
    }

    // min{x, y} written as a Max-Min function.
    let mm = MaxMinFunction::new(2, vec![Affine::linear(ivec(&[1, 0])), Affine::linear(ivec(&[0, 1]))], vec![vec![0, 1]])?;
    println!("min{{x, y}} at (3, 2) = {}", fmt_rational(&mm.eval(&ivec(&[3, 2]))?));
    println!("as JSON: {}", function_to_json(&PaFunction::MaxMin(mm)));
    Ok(())
}
