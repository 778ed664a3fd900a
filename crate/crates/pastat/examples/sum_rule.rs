//! When `∂(h - g) = ∂h - ∂g` fails: the function `2max{t,0} - max{t,0}`
//! equals `max{t,0}`, yet the difference of subdifferentials is too large.
//!
//! Run with `cargo run --example sum_rule`.

use pastat::pafunc::{Affine, DcFunction, McFunction, PaFunction};
use pastat::polytope::compatible;
use pastat::rational::{fmt_vec, int, ivec};
use pastat::subdiff::{clarke_subdiff_brute, dc_difference_vertices, subdiff_vertices, transversal_at, TransversalMethod};
use pastat::Caps;

fn show(name: &str, p: &pastat::polytope::VPolytope) {
    let v: Vec<String> = p.vertices().iter().map(|x| fmt_vec(x)).collect();
    println!("{name}: conv{{{}}}", v.join(", "));
}

fn main() -> pastat::Result<()> {
    let caps = Caps::default();
    let relu = |c: i64| McFunction::max_of(1, vec![Affine::linear(ivec(&[c])), Affine::linear(ivec(&[0]))]);
    let f = DcFunction::new(relu(2)?, relu(1)?)?;
    let w = [int(0)];

    let clarke = clarke_subdiff_brute(&PaFunction::Dc(f.clone()), &w, &caps)?;
    let dh = subdiff_vertices(&f.h, &w, &caps)?;
    let dg = subdiff_vertices(&f.g, &w, &caps)?;
    show("Clarke", &clarke);
    show("dh - dg", &dc_difference_vertices(&f, &w, &caps)?);
    println!("dh, dg compatible: {}", compatible(&dh, &dg)?.compatible);
    println!("dh, dg transversal: {}", transversal_at(&f, &w, TransversalMethod::Vrep, &caps)?);
    Ok(())
}
