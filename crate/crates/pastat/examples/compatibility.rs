//! Compatibility and transversality of polytopes, including zonotopes.
//!
//! Run with `cargo run --example compatibility`.

use pastat::polytope::{compatible, par_trivial_intersection, zonotope_transversal, VPolytope, Zonotope};
use pastat::rational::{fmt_vec, ivec};
use pastat::Caps;

fn main() -> pastat::Result<()> {
    let segment = VPolytope::new(vec![ivec(&[0, 0]), ivec(&[1, 0])])?;
    let vertical = VPolytope::new(vec![ivec(&[0, 0]), ivec(&[0, 1])])?;
    let parallel = VPolytope::new(vec![ivec(&[0, 1]), ivec(&[2, 1])])?;

    for (name, other) in [("vertical segment", &vertical), ("parallel segment", &parallel)] {
        let c = compatible(&segment, other)?;
        println!("[0,1]x{{0}} vs {name}: compatible = {}", c.compatible);
        for (a, b) in &c.violations {
            println!("  violating pair {} / {}", fmt_vec(a), fmt_vec(b));
        }
        println!("  transversal = {}", par_trivial_intersection(&segment, other)?);
    }

    let z1 = Zonotope::new(ivec(&[0, 0, 0]), vec![ivec(&[1, 0, 0]), ivec(&[0, 1, 0])])?;
    let z2 = Zonotope::new(ivec(&[1, 1, 1]), vec![ivec(&[0, 0, 1])])?;
    println!("zonotopes transversal = {}", zonotope_transversal(&z1, &z2)?);
    println!("first zonotope has {} vertices", z1.vertices(&Caps::default())?.vertices().len());
    Ok(())
}
