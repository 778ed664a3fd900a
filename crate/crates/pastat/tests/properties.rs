//! Property tests of library invariants on small random instances.

use num_traits::Zero;
use pastat::apps::{relu2_qualification, LabeledDataset, ReluUnit};
use pastat::butterfly::{build_net, rnd, rst, ExactOracle, Rounded, RstVerdict};
use pastat::exactsolve::{lp_optimize, min_norm_point, project_point, LinearSystem, LpOutcome};
use pastat::hardgen::Cnf3;
use pastat::io::{function_from_json, function_to_json};
use pastat::pafunc::{Affine, DcFunction, ExtRational, McFunction, McNode, PaFunction};
use pastat::polytope::{compatible, par_trivial_intersection, VPolytope};
use pastat::rational::{add, dot, fmt_rational, frac, int, norm_sq, parse_rational, pow2, scale, sub, RVector};
use pastat::sgm::{run, SgmConfig, StepSchedule};
use pastat::subdiff::{clarke_subdiff_brute, dc_difference_vertices, subdiff_vertices};
use pastat::{Caps, Rational};
use proptest::prelude::*;

type LeafData = (Vec<i64>, i64);

fn leaf_data(d: usize) -> impl Strategy<Value = LeafData> {
    (prop::collection::vec(-3i64..=3, d), -2i64..=2)
}

/// Sum of maxima of affine leaves with small integer data.
fn sum_of_max(d: usize) -> impl Strategy<Value = McFunction> {
    prop::collection::vec(prop::collection::vec(leaf_data(d), 1..=3), 1..=3).prop_map(move |maxes| {
        let nodes = maxes
            .into_iter()
            .map(|leaves| {
                McNode::Max(
                    leaves
                        .into_iter()
                        .map(|(x, a)| McNode::Leaf(Affine::new(x.into_iter().map(int).collect(), int(a))))
                        .collect(),
                )
            })
            .collect();
        McFunction::new(d, McNode::Sum(nodes)).unwrap()
    })
}

fn point(d: usize) -> impl Strategy<Value = RVector> {
    prop::collection::vec((-6i64..=6, 1i64..=4), d).prop_map(|v| v.into_iter().map(|(n, q)| frac(n, q)).collect())
}

fn int_point(d: usize) -> impl Strategy<Value = RVector> {
    prop::collection::vec(-2i64..=2, d).prop_map(|v| v.into_iter().map(int).collect())
}

fn dc_at_point() -> impl Strategy<Value = (DcFunction, RVector, RVector)> {
    (1usize..=3).prop_flat_map(|d| {
        (sum_of_max(d), sum_of_max(d), point(d), int_point(d))
            .prop_map(|(h, g, w, dir)| (DcFunction::new(h, g).unwrap(), w, dir))
    })
}

fn polytope_pair() -> impl Strategy<Value = (VPolytope, VPolytope)> {
    (1usize..=3).prop_flat_map(|d| {
        let poly = prop::collection::vec(prop::collection::vec(-2i64..=2, d), 1..=4)
            .prop_map(|vs| VPolytope::new(vs.into_iter().map(|v| v.into_iter().map(int).collect()).collect()).unwrap());
        (poly.clone(), poly)
    })
}

/// Whether `v` lies in the convex hull of `pts`.
fn in_hull(v: &[Rational], pts: &[RVector]) -> bool {
    let shifted: Vec<RVector> = pts.iter().map(|p| sub(p, v)).collect();
    min_norm_point(&shifted).unwrap().norm_sq().is_zero()
}

fn ext_double(s: &ExtRational) -> Option<Rational> {
    match s {
        ExtRational::Finite(q) => Some(q * int(2)),
        ExtRational::Infinite => None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn local_affine_expansion((f, w, dir) in dc_at_point()) {
        let slope = f.dir_deriv(&w, &dir).unwrap();
        let base = f.eval(&w).unwrap();
        for k in [20, 21] {
            let t = pow2(-k);
            let moved = add(&w, &scale(&t, &dir));
            prop_assert_eq!(f.eval(&moved).unwrap(), &base + &t * &slope);
        }
    }

    #[test]
    fn convex_support_function((f, w, dir) in dc_at_point()) {
        let caps = Caps::default();
        let s = subdiff_vertices(&f.h, &w, &caps).unwrap();
        let support = s.vertices().iter().map(|g| dot(g, &dir)).max().unwrap();
        prop_assert_eq!(support, f.h.dir_deriv(&w, &dir).unwrap());
        let brute = clarke_subdiff_brute(&PaFunction::Mc(f.h.clone()), &w, &caps).unwrap();
        prop_assert_eq!(brute.canonicalize(), s.canonicalize());
    }

    #[test]
    fn weak_sum_rule((f, w, _dir) in dc_at_point()) {
        let caps = Caps::default();
        let diff = dc_difference_vertices(&f, &w, &caps).unwrap();
        let clarke = clarke_subdiff_brute(&PaFunction::Dc(f), &w, &caps).unwrap();
        for v in clarke.vertices() {
            prop_assert!(in_hull(v, diff.vertices()));
        }
    }

    #[test]
    fn compatibility_is_symmetric_and_implied_by_transversality((a, b) in polytope_pair()) {
        let ab = compatible(&a, &b).unwrap().compatible;
        prop_assert_eq!(ab, compatible(&b, &a).unwrap().compatible);
        if par_trivial_intersection(&a, &b).unwrap() {
            prop_assert!(ab);
        }
    }

    #[test]
    fn net_contains_its_center((f, w, _dir) in dc_at_point(), shrink in 1i64..=4) {
        let delta = ext_double(&f.delta_sep(&w).unwrap()).map_or(frac(1, shrink), |s| s / int(shrink));
        prop_assert!(build_net(&f, &w, &delta).unwrap().contains(&w));
        prop_assert_eq!(rnd(&f, &w, &delta).unwrap(), Rounded::Point(w));
    }

    #[test]
    fn net_captures_nearby_reference((f, wstar, dir) in dc_at_point(), t in 0i64..=4) {
        prop_assume!(!norm_sq(&dir).is_zero());
        let Some(delta) = ext_double(&f.delta_sep(&wstar).unwrap()) else {
            return Ok(());
        };
        // |dir| <= 2|dir|_inf * sqrt(3) < 4 |dir|_inf, so the step stays within delta
        let inf = dir.iter().map(|c| if c < &int(0) { -c.clone() } else { c.clone() }).max().unwrap();
        let s = &delta * frac(t, 4) / (int(4) * inf);
        let w = add(&wstar, &scale(&s, &dir));
        let net = build_net(&f, &w, &delta).unwrap();
        prop_assert!(net.contains(&wstar));
        let Rounded::Point(hat) = rnd(&f, &w, &delta).unwrap() else {
            return Err(TestCaseError::fail("net is empty"));
        };
        prop_assert!(norm_sq(&sub(&hat, &w)) <= norm_sq(&sub(&wstar, &w)));
    }

    #[test]
    fn robust_certificates_are_valid((f, w, _dir) in dc_at_point(), e in 0i64..=2, dk in 0i64..=3) {
        let caps = Caps::default();
        let eps = frac(e, 2);
        let delta = pow2(-dk);
        let out = rst(&f, &w, &eps, &delta, ExactOracle::ClarkeBrute, &caps).unwrap();
        if let RstVerdict::True { certificate } = out.verdict {
            prop_assert!(norm_sq(&sub(&certificate, &w)) <= &delta * &delta);
            let s = clarke_subdiff_brute(&PaFunction::Dc(f), &certificate, &caps).unwrap();
            prop_assert!(min_norm_point(s.vertices()).unwrap().norm_sq() <= &eps * &eps);
        }
    }

    #[test]
    fn subgradient_iterates_follow_the_update((f, w, _dir) in dc_at_point(), iters in 0u64..=6) {
        let cfg = SgmConfig {
            schedule: StepSchedule::Harmonic(int(1)),
            max_iters: iters,
            eps: int(0),
            delta: frac(1, 8),
            oracle: ExactOracle::ClarkeBrute,
            period: 2,
        };
        let t = run(&f, &w, &cfg, &Caps::default()).unwrap();
        for pair in t.steps.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            let step = a.step.as_ref().unwrap().0.clone();
            let s: RVector = a.subgradient.as_ref().unwrap().iter().map(|q| q.0.clone()).collect();
            let wa: RVector = a.w.iter().map(|q| q.0.clone()).collect();
            let wb: RVector = b.w.iter().map(|q| q.0.clone()).collect();
            prop_assert_eq!(wb, sub(&wa, &scale(&step, &s)));
        }
        prop_assert!(t.iterations() <= iters);
    }

    #[test]
    fn function_json_round_trip((f, w, _dir) in dc_at_point()) {
        let pf = PaFunction::Dc(f);
        let back = function_from_json(&function_to_json(&pf)).unwrap();
        prop_assert_eq!(back.eval(&w).unwrap(), pf.eval(&w).unwrap());
    }
}

proptest! {
    #[test]
    fn rational_text_round_trip(n in -1000i64..=1000, q in 1i64..=1000) {
        let r = frac(n, q);
        prop_assert_eq!(parse_rational(&fmt_rational(&r)).unwrap(), r);
    }

    #[test]
    fn dimacs_round_trip(clauses in prop::collection::vec(prop::array::uniform3(prop::sample::select(vec![1, -1, 2, -2, 3, -3])), 1..=4)) {
        let cnf = Cnf3::new(3, clauses).unwrap();
        prop_assert_eq!(Cnf3::parse_dimacs(&cnf.to_dimacs()).unwrap(), cnf);
    }

    #[test]
    fn lp_optimum_is_feasible_and_minimal(
        rows in prop::collection::vec((prop::collection::vec(-3i64..=3, 2), 0i64..=6), 1..=4),
        obj in prop::collection::vec(-3i64..=3, 2),
        probes in prop::collection::vec(prop::collection::vec(0i64..=3, 2), 8),
    ) {
        let mut sys = LinearSystem::new(2);
        for (a, b) in &rows {
            sys.add_le(a.iter().copied().map(int).collect(), int(*b));
        }
        for i in 0..2 {
            sys.add_ge((0..2).map(|j| int((i == j) as i64)).collect(), int(0));
            sys.add_le((0..2).map(|j| int((i == j) as i64)).collect(), int(3));
        }
        let obj: RVector = obj.into_iter().map(int).collect();
        let LpOutcome::Optimal { point, value } = lp_optimize(&obj, &sys) else {
            return Err(TestCaseError::fail("box LP containing 0 must be solvable"));
        };
        prop_assert!(sys.satisfied_by(&point));
        prop_assert_eq!(&dot(&obj, &point), &value);
        let proj = project_point(&sys, &[int(5), int(-1)]).unwrap().unwrap();
        prop_assert!(sys.satisfied_by(&proj));
        let target = [int(5), int(-1)];
        for p in probes {
            let x: RVector = p.into_iter().map(int).collect();
            if sys.satisfied_by(&x) {
                prop_assert!(dot(&obj, &x) >= value);
                prop_assert!(norm_sq(&sub(&x, &target)) >= norm_sq(&sub(&proj, &target)));
            }
        }
    }

    #[test]
    fn qualification_chain(
        raw in prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 2..=6),
        wt in prop::collection::vec(-2i64..=2, 2),
        anchor in 0usize..6,
        p in prop::collection::vec(prop::sample::select(vec![-1i64, 1, 2]), 6),
    ) {
        prop_assume!(wt.iter().any(|&c| c != 0));
        let n = raw.len();
        let raw: Vec<RVector> = raw.into_iter().map(|v| v.into_iter().map(int).collect()).collect();
        let wt: RVector = wt.into_iter().map(int).collect();
        let mut w = wt.clone();
        w.push(-dot(&wt, &raw[anchor % n]));
        let data = LabeledDataset::from_raw(raw, vec![int(1); n]).unwrap();
        let p: RVector = p.into_iter().take(n).map(int).collect();
        let r = relu2_qualification(&data, &[ReluUnit { w, u: int(1) }], &p, &Caps::default()).unwrap();
        prop_assert!(!r.general_position || r.surjectivity);
        prop_assert!(!r.surjectivity || r.span_condition);
    }
}
