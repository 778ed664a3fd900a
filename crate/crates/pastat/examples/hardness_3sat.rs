//! Hardness fixtures: 3-CNF formulas turned into Max-Min functions, and
//! ℓ1-maximization instances turned into DC functions.
//!
//! Run with `cargo run --example hardness_3sat`.

use pastat::exactsolve::min_norm_point;
use pastat::hardgen::{gen_dcf, gen_maxmin_3sat_clarke, Cnf3, ParMaxInstance};
use pastat::pafunc::PaFunction;
use pastat::rational::{fmt_rational, zeros};
use pastat::subdiff::{clarke_subdiff_brute, frechet_stationary};
use pastat::Caps;

fn main() -> pastat::Result<()> {
    let caps = Caps::default();
    let formulas = [
        ("x1 and not x1", "p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n"),
        ("x1 or x2", "p cnf 2 1\n1 2 2 0\n"),
    ];
    for (name, dimacs) in formulas {
        let cnf = Cnf3::parse_dimacs(dimacs)?;
        let f = PaFunction::MaxMin(gen_maxmin_3sat_clarke(&cnf)?);
        let s = clarke_subdiff_brute(&f, &zeros(f.dim()), &caps)?;
        let d2 = min_norm_point(s.vertices())?.norm_sq();
        let sat = cnf.solve(&caps)?.is_some();
        println!("{name}: satisfiable = {sat}, squared Clarke distance at 0 = {}", fmt_rational(&d2));
    }

    for alpha in [2, 3] {
        let inst = ParMaxInstance::new(2, alpha, vec![vec![1, 1], vec![1, -1]])?;
        let f = PaFunction::Dc(gen_dcf(&inst)?);
        let r = frechet_stationary(&f, &zeros(f.dim()), &caps)?;
        println!(
            "l1 max = {}, alpha = {alpha}: 0 is Frechet stationary = {}",
            inst.max_l1(),
            r.stationary
        );
    }
    Ok(())
}
