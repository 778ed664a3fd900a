//! Brute-force Clarke and Fréchet oracles for small instances.

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exactsolve::{dot_s, from_small, strict_witness, sub_s, to_small, witness_fast, Fail, Scalar, SmallQ};
use crate::pafunc::{DcFunction, MaxMinFunction, PaFunction};
use crate::polytope::{joint_max_witness, VPolytope};
use crate::rational::{neg, sub, RVector, Rational};
use crate::subdiff::intsearch::{IntGrads, IntStop};
use crate::subdiff::lifted::subdiff_contains;
use crate::subdiff::vertices::subdiff_vertices;

/// An essentially active gradient with a direction `d` on whose open
/// neighbourhood (scaled) the function equals `gradient · d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActivePiece {
    pub gradient: RVector,
    pub witness: RVector,
}

enum Stop {
    Overflow,
    Budget,
}

impl From<Fail> for Stop {
    fn from(_: Fail) -> Self {
        Stop::Overflow
    }
}

fn budget_error() -> Error {
    Error::CapExceeded {
        what: "witness search nodes",
        required: "more".into(),
        cap: 0,
    }
}

/// Disjunctive search state: clause rows are stored once and referenced by
/// index; row sets whose subtree was exhausted are remembered, and any
/// superset of one is pruned.
struct Search<S> {
    rows: Vec<Vec<S>>,
    rows_f: Vec<Vec<f64>>,
    clauses: Vec<Vec<usize>>,
    dim: usize,
    failed: Vec<Vec<usize>>,
}

impl<S: Scalar> Search<S> {
    fn new(clauses: &[Vec<Vec<S>>], dim: usize) -> Self {
        let mut rows: Vec<Vec<S>> = clauses.iter().flatten().cloned().collect();
        rows.sort();
        rows.dedup();
        let clauses = clauses
            .iter()
            .map(|c| c.iter().map(|r| rows.binary_search(r).expect("listed row")).collect())
            .collect();
        Search::indexed(rows, clauses, dim)
    }

    /// Clauses given as indices into `rows`.
    fn indexed(rows: Vec<Vec<S>>, mut clauses: Vec<Vec<usize>>, dim: usize) -> Self {
        for c in &mut clauses {
            c.sort_unstable();
            c.dedup();
        }
        let rows_f = rows.iter().map(|r| r.iter().map(S::to_f64).collect()).collect();
        Search {
            rows,
            rows_f,
            clauses,
            dim,
            failed: Vec::new(),
        }
    }

    /// Whether `rows[r]·d ≥ 1`, decided in floating point when the rounding
    /// error bound allows and exactly otherwise.
    fn satisfies(&self, r: usize, d: &[S], df: &[f64]) -> std::result::Result<bool, Stop> {
        let (mut v, mut mag) = (0.0f64, 0.0f64);
        for (a, b) in self.rows_f[r].iter().zip(df) {
            v += a * b;
            mag += (a * b).abs();
        }
        let err = 1e-9 * (mag + 1.0);
        if v.is_finite() && (v - 1.0).abs() > err {
            return Ok(v > 1.0);
        }
        Ok(dot_s(&self.rows[r], d)? >= S::one())
    }

    fn known_failure(&self, chosen: &[usize]) -> bool {
        self.failed
            .iter()
            .any(|f| f.len() <= chosen.len() && f.iter().all(|x| chosen.binary_search(x).is_ok()))
    }

    fn run(&mut self, base: &mut Vec<Vec<S>>, budget: &mut usize) -> std::result::Result<Option<Vec<S>>, Stop> {
        let mut chosen = Vec::new();
        self.dfs(base, &mut chosen, budget)
    }

    fn dfs(
        &mut self,
        base: &mut Vec<Vec<S>>,
        chosen: &mut Vec<usize>,
        budget: &mut usize,
    ) -> std::result::Result<Option<Vec<S>>, Stop> {
        if self.known_failure(chosen) {
            return Ok(None);
        }
        if *budget == 0 {
            return Err(Stop::Budget);
        }
        *budget -= 1;
        let Some(d) = witness_fast(base, self.dim)? else {
            self.failed.push(chosen.clone());
            return Ok(None);
        };
        let df: Vec<f64> = d.iter().map(S::to_f64).collect();
        let mut sat: Vec<Option<bool>> = vec![None; self.rows.len()];
        let mut open: Option<usize> = None;
        for (ci, c) in self.clauses.iter().enumerate() {
            let mut ok = false;
            for &r in c {
                let v = match sat[r] {
                    Some(v) => v,
                    None => {
                        let v = self.satisfies(r, &d, &df)?;
                        sat[r] = Some(v);
                        v
                    }
                };
                if v {
                    ok = true;
                    break;
                }
            }
            if !ok && open.is_none_or(|o| c.len() < self.clauses[o].len()) {
                open = Some(ci);
            }
        }
        let Some(ci) = open else {
            return Ok(Some(d));
        };
        for k in 0..self.clauses[ci].len() {
            let r = self.clauses[ci][k];
            let pos = chosen.binary_search(&r).unwrap_err();
            chosen.insert(pos, r);
            base.push(self.rows[r].clone());
            let found = self.dfs(base, chosen, budget);
            base.pop();
            chosen.remove(pos);
            if let Some(found) = found? {
                return Ok(Some(found));
            }
        }
        self.failed.push(chosen.clone());
        Ok(None)
    }
}

/// Runs `search` on machine-word rationals when the data fit and no
/// overflow occurs, otherwise on arbitrary-precision rationals.
fn search_both<T>(
    rows: &[&[RVector]],
    budget: &mut usize,
    small: impl Fn(&[Vec<Vec<SmallQ>>], &mut usize) -> std::result::Result<T, Stop>,
    big: impl Fn(&[Vec<RVector>], &mut usize) -> std::result::Result<T, Stop>,
) -> Result<T> {
    let start = *budget;
    if let Some(conv) = rows.iter().map(|r| to_small(r)).collect::<Option<Vec<_>>>() {
        match small(&conv, budget) {
            Ok(t) => return Ok(t),
            Err(Stop::Budget) => return Err(budget_error()),
            Err(Stop::Overflow) => *budget = start,
        }
    }
    let owned: Vec<Vec<RVector>> = rows.iter().map(|r| r.to_vec()).collect();
    big(&owned, budget).map_err(|e| match e {
        Stop::Budget => budget_error(),
        Stop::Overflow => unreachable!("exact arithmetic does not overflow"),
    })
}

/// Finds `d` with `r·d ≥ 1` for every base row and, for every clause, for at
/// least one of its rows. Depth-first over clause choices, branching on the
/// unsatisfied clause with the fewest rows; `budget` bounds the node count.
pub fn disjunctive_witness(
    base: &[RVector],
    clauses: &[Vec<RVector>],
    dim: usize,
    budget: &mut usize,
) -> Result<Option<RVector>> {
    let mut all: Vec<&[RVector]> = vec![base];
    all.extend(clauses.iter().map(Vec::as_slice));
    fn run<S: Scalar>(v: &[Vec<Vec<S>>], dim: usize, budget: &mut usize) -> std::result::Result<Option<Vec<S>>, Stop> {
        let mut base = v[0].clone();
        Search::new(&v[1..], dim).run(&mut base, budget)
    }
    search_both(
        &all,
        budget,
        |v, b| Ok(run(v, dim, b)?.map(|d| from_small(&d))),
        |v, b| run(v, dim, b),
    )
}

/// Essentially active gradients of a DC function at `w`: pairs of vertices
/// `(a, b)` of `∂h(w)`, `∂g(w)` with a common strict maximizing direction.
pub fn dc_essentially_active(f: &DcFunction, w: &[Rational], caps: &Caps) -> Result<Vec<ActivePiece>> {
    let a = subdiff_vertices(&f.h, w, caps)?;
    let b = subdiff_vertices(&f.g, w, caps)?;
    Caps::check(
        "selection pieces",
        (a.vertices().len() as u128) * (b.vertices().len() as u128),
        caps.brute,
    )?;
    let mut out = Vec::new();
    for u in a.vertices() {
        for v in b.vertices() {
            if let Some(d) = joint_max_witness(u, &a, v, &b)? {
                out.push(ActivePiece {
                    gradient: sub(u, v),
                    witness: d,
                });
            }
        }
    }
    Ok(out)
}

/// The directional-derivative function at `w` with distinct gradients, each
/// group reduced to the extreme points of its hull, and groups containing
/// another group removed. Returns gradients and groups of gradient indices.
fn reduced_groups(f: &MaxMinFunction, w: &[Rational], caps: &Caps) -> Result<(Vec<RVector>, Vec<Vec<usize>>)> {
    let dd = f.dd_function(w)?;
    let mut grads: Vec<RVector> = dd.pieces().iter().map(|p| p.x.clone()).collect();
    grads.sort();
    grads.dedup();
    let id = |x: &RVector| grads.binary_search(x).unwrap();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for g in dd.groups() {
        let pts: Vec<RVector> = g.iter().map(|&j| dd.pieces()[j].x.clone()).collect();
        let ext = VPolytope::new(pts)?.canonicalize();
        let mut ids: Vec<usize> = ext.vertices().iter().map(id).collect();
        ids.sort_unstable();
        groups.push(ids);
    }
    groups.sort();
    groups.dedup();
    let keep: Vec<Vec<usize>> = groups
        .iter()
        .enumerate()
        .filter(|(i, g)| {
            !groups
                .iter()
                .enumerate()
                .any(|(j, o)| j != *i && o.len() < g.len() && o.iter().all(|x| g.binary_search(x).is_ok()))
        })
        .map(|(_, g)| g.clone())
        .collect();
    Caps::check(
        "selection pieces",
        (grads.len() as u128) * (keep.len() as u128),
        caps.brute,
    )?;
    Ok((grads, keep))
}

/// Decides activity of gradient `gi` over the groups containing it.
fn decide_in<S: Scalar>(
    grads: &[Vec<S>],
    groups: &[Vec<usize>],
    gi: usize,
    dim: usize,
    budget: &mut usize,
) -> std::result::Result<Option<Vec<S>>, Stop> {
    let x = &grads[gi];
    let rows = grads.iter().map(|g| sub_s(x, g)).collect::<std::result::Result<Vec<_>, _>>()?;
    let clauses: Vec<Vec<usize>> = groups.iter().filter(|g| g.binary_search(&gi).is_err()).cloned().collect();
    for group in groups.iter().filter(|g| g.binary_search(&gi).is_ok()) {
        let mut base = Vec::new();
        for &j in group.iter().filter(|&&j| j != gi) {
            base.push(sub_s(&grads[j], x)?);
        }
        if let Some(d) = Search::indexed(rows.clone(), clauses.clone(), dim).run(&mut base, budget)? {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// Active gradients with witnesses. With `hull_only`, candidates already in
/// the hull of found gradients are skipped, so the result has the right hull
/// but may omit inner gradients.
fn maxmin_active(f: &MaxMinFunction, w: &[Rational], caps: &Caps, hull_only: bool) -> Result<Vec<ActivePiece>> {
    let (grads, groups) = reduced_groups(f, w, caps)?;
    let dim = f.dim();
    let ints = IntGrads::new(&grads);
    let mut budget = caps.brute;
    let mut found: Vec<usize> = Vec::new();
    let mut out = Vec::new();
    for gi in 0..grads.len() {
        if hull_only && !found.is_empty() {
            let inside = match ints.as_ref().and_then(|ig| ig.in_hull(gi, &found, dim)) {
                Some(b) => b,
                None => {
                    let rows: Vec<RVector> = found.iter().map(|&j| sub(&grads[j], &grads[gi])).collect();
                    strict_witness(&rows, dim).is_none()
                }
            };
            if inside {
                continue;
            }
        }
        let fast = match &ints {
            Some(ig) => match ig.decide(&groups, gi, dim, &mut budget) {
                Ok(r) => Some(r),
                Err(IntStop::Budget) => return Err(budget_error()),
                Err(IntStop::Undecided) => None,
            },
            None => None,
        };
        let decided = match fast {
            Some(r) => r,
            None => search_both(
                &[&grads],
                &mut budget,
                |v, b| Ok(decide_in(&v[0], &groups, gi, dim, b)?.map(|d| from_small(&d))),
                |v, b| decide_in(&v[0], &groups, gi, dim, b),
            )?,
        };
        if let Some(d) = decided {
            found.push(gi);
            out.push(ActivePiece {
                gradient: grads[gi].clone(),
                witness: d,
            });
        }
    }
    Ok(out)
}

/// Essentially active gradients of a Max-Min function at `w`.
///
/// Gradient `x` of group `M_i` is active iff some `d` makes `x` the strict
/// minimum of `M_i` and every group without `x` has a member strictly below
/// `x·d`.
pub fn maxmin_essentially_active(f: &MaxMinFunction, w: &[Rational], caps: &Caps) -> Result<Vec<ActivePiece>> {
    maxmin_active(f, w, caps, false)
}

/// Essentially active gradients of any supported function at `w`.
pub fn essentially_active(f: &PaFunction, w: &[Rational], caps: &Caps) -> Result<Vec<ActivePiece>> {
    match f {
        PaFunction::MaxMin(m) => maxmin_essentially_active(m, w, caps),
        other => dc_essentially_active(&other.as_dc().expect("multi-composite"), w, caps),
    }
}

/// The Clarke subdifferential `∂f(w)` as the canonical hull of the
/// essentially active gradients.
pub fn clarke_subdiff_brute(f: &PaFunction, w: &[Rational], caps: &Caps) -> Result<VPolytope> {
    let active = match f {
        PaFunction::MaxMin(m) => maxmin_active(m, w, caps, true)?,
        other => essentially_active(other, w, caps)?,
    };
    let pts: Vec<RVector> = active.into_iter().map(|p| p.gradient).collect();
    Ok(VPolytope::new(pts)?.canonicalize())
}

/// Outcome of the Fréchet test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrechetResult {
    /// Whether `0 ∈ ∂̂f(w)`, i.e. `w` is a local minimizer.
    pub stationary: bool,
    /// A direction with `f'(w; d) < 0` when not stationary.
    pub descent: Option<RVector>,
}

/// Decides `0 ∈ ∂̂f(w)`.
///
/// DC: every vertex of `∂g(w)` must lie in `∂h(w)`; a vertex outside yields a
/// separating descent direction. Max-Min: searches `d` with `f'(w; d) ≤ -1`.
pub fn frechet_stationary(f: &PaFunction, w: &[Rational], caps: &Caps) -> Result<FrechetResult> {
    match f {
        PaFunction::MaxMin(m) => {
            let (grads, groups) = reduced_groups(m, w, caps)?;
            let clauses: Vec<Vec<RVector>> = groups
                .iter()
                .map(|g| g.iter().map(|&j| neg(&grads[j])).collect())
                .collect();
            let mut budget = caps.brute;
            let d = disjunctive_witness(&[], &clauses, m.dim(), &mut budget)?;
            Ok(FrechetResult {
                stationary: d.is_none(),
                descent: d,
            })
        }
        other => {
            let dc = other.as_dc().expect("multi-composite");
            let a = subdiff_vertices(&dc.h, w, caps)?;
            let b = subdiff_vertices(&dc.g, w, caps)?;
            for v in b.vertices() {
                if subdiff_contains(&dc.h, w, v)? {
                    continue;
                }
                let rows: Vec<RVector> = a.vertices().iter().map(|u| sub(v, u)).collect();
                let d = strict_witness(&rows, dc.dim()).expect("vertex outside the hull is separable");
                debug_assert!(dc.dir_deriv(w, &d).is_ok_and(|q| q < Rational::from_integer(0.into())));
                return Ok(FrechetResult {
                    stationary: false,
                    descent: Some(d),
                });
            }
            Ok(FrechetResult {
                stationary: true,
                descent: None,
            })
        }
    }
}
