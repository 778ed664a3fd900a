//! Lifted linear description of `∂h(w)` for a multi-composite `h`.

use num_traits::{One, Zero};

use crate::error::{check_dim, Result};
use crate::exactsolve::{equality_set, lp_feasible, Feasibility, LinearSystem};
use crate::pafunc::{McFunction, McNode, ValueTree};
use crate::rational::{unit, zeros, RVector, Rational};

/// `∂h(w)` as the projection onto `g` of a polyhedron in `(g, t)`.
///
/// There is one `t` variable per edge from a max node to an active child.
/// Weights of a top-level max node sum to one; weights below an edge sum to
/// that edge's weight; and `g = Σ t_leaf x_leaf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedSubdiff {
    /// Length of the `g` block.
    pub dim: usize,
    /// Number of edge weights `t`.
    pub nt: usize,
    /// System over `(g, t)`.
    pub sys: LinearSystem,
}

struct Builder {
    nt: usize,
    /// Sparse `Σ t_children - (t_parent | 1) = 0` rows.
    sums: Vec<(Vec<usize>, Option<usize>)>,
    leaves: Vec<(usize, RVector)>,
}

impl Builder {
    fn sum(&mut self, children: &[McNode], v: &ValueTree, parent: Option<usize>) {
        for (m, vm) in children.iter().zip(&v.children) {
            if let McNode::Max(c) = m {
                self.max(c, vm, parent);
            }
        }
    }

    fn max(&mut self, children: &[McNode], v: &ValueTree, parent: Option<usize>) {
        let mut ts = Vec::new();
        for (m, vm) in children.iter().zip(&v.children) {
            if vm.value != v.value {
                continue;
            }
            let t = self.nt;
            self.nt += 1;
            ts.push(t);
            match m {
                McNode::Leaf(l) => self.leaves.push((t, l.x.clone())),
                McNode::Sum(c) => self.sum(c, vm, Some(t)),
                McNode::Max(_) => unreachable!("validated alternation"),
            }
        }
        self.sums.push((ts, parent));
    }
}

/// Builds the lifted system of `∂h(w)`.
pub fn lifted_subdiff(h: &McFunction, w: &[Rational]) -> Result<LiftedSubdiff> {
    let vt = h.value_table(w)?;
    let d = h.dim();
    let mut b = Builder {
        nt: 0,
        sums: Vec::new(),
        leaves: Vec::new(),
    };
    if let McNode::Sum(c) = h.root() {
        b.sum(c, &vt, None);
    }
    let n = d + b.nt;
    let mut sys = LinearSystem::new(n);
    for (ts, parent) in &b.sums {
        let mut a = zeros(n);
        for &t in ts {
            a[d + t] = Rational::one();
        }
        match parent {
            Some(p) => {
                a[d + p] = -Rational::one();
                sys.add_eq(a, Rational::zero());
            }
            None => sys.add_eq(a, Rational::one()),
        }
    }
    for i in 0..d {
        let mut a = unit(n, i);
        for (t, x) in &b.leaves {
            a[d + t] = -x[i].clone();
        }
        sys.add_eq(a, Rational::zero());
    }
    for t in 0..b.nt {
        sys.add_ge(unit(n, d + t), Rational::zero());
    }
    Ok(LiftedSubdiff { dim: d, nt: b.nt, sys })
}

impl LiftedSubdiff {
    /// Whether `g` lies in the projection.
    pub fn contains(&self, g: &[Rational]) -> Result<bool> {
        check_dim(self.dim, g.len())?;
        let mut sys = self.sys.clone();
        for (i, gi) in g.iter().enumerate() {
            sys.add_eq(unit(self.dim + self.nt, i), gi.clone());
        }
        Ok(matches!(lp_feasible(&sys), Feasibility::Feasible(_)))
    }

    /// Homogeneous rows over `(g, t)` describing `par` of the lifted polyhedron:
    /// explicit equalities plus the equality set.
    pub fn parallel_rows(&self) -> Result<Vec<RVector>> {
        let e = equality_set(&self.sys)?;
        let mut rows: Vec<RVector> = self.sys.eq.iter().map(|r| r.a.clone()).collect();
        rows.extend(e.into_iter().map(|i| self.sys.le[i].a.clone()));
        Ok(rows)
    }
}

/// Whether `g ∈ ∂h(w)`, by LP feasibility of the lifted system.
pub fn subdiff_contains(h: &McFunction, w: &[Rational], g: &[Rational]) -> Result<bool> {
    lifted_subdiff(h, w)?.contains(g)
}

/// Transversality from the lifted descriptions: `par(∂h(w)) ∩ par(∂g(w))`
/// is trivial iff no `g` in both parallel spaces has `g_i ≥ 1` for some `i`.
pub fn lifted_transversal(lh: &LiftedSubdiff, lg: &LiftedSubdiff) -> Result<bool> {
    check_dim(lh.dim, lg.dim)?;
    let d = lh.dim;
    let n = d + lh.nt + lg.nt;
    let mut base = LinearSystem::new(n);
    for r in lh.parallel_rows()? {
        let mut a = zeros(n);
        a[..d + lh.nt].clone_from_slice(&r);
        base.add_eq(a, Rational::zero());
    }
    for r in lg.parallel_rows()? {
        let mut a = zeros(n);
        a[..d].clone_from_slice(&r[..d]);
        a[d + lh.nt..].clone_from_slice(&r[d..]);
        base.add_eq(a, Rational::zero());
    }
    for i in 0..d {
        let mut sys = base.clone();
        sys.add_ge(unit(n, i), Rational::one());
        if let Feasibility::Feasible(_) = lp_feasible(&sys) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactsolve::{lp_optimize, LpOutcome};
    use crate::pafunc::Affine;
    use crate::rational::{frac, int, ivec};

    fn abs() -> McFunction {
        McFunction::max_of(1, vec![Affine::linear(ivec(&[1])), Affine::linear(ivec(&[-1]))]).unwrap()
    }

    #[test]
    fn lifted_abs() {
        let l = lifted_subdiff(&abs(), &ivec(&[0])).unwrap();
        assert_eq!(l.nt, 2);
        let mut obj = zeros(3);
        obj[0] = int(1);
        match lp_optimize(&obj, &l.sys) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(-1)),
            other => panic!("{other:?}"),
        }
        assert!(l.contains(&[frac(1, 2)]).unwrap());
        assert!(!l.contains(&ivec(&[2])).unwrap());
        let l1 = lifted_subdiff(&abs(), &ivec(&[1])).unwrap();
        assert_eq!(l1.nt, 1);
        assert!(l1.contains(&ivec(&[1])).unwrap());
        assert!(!l1.contains(&ivec(&[0])).unwrap());
    }

    #[test]
    fn equality_set_of_lift() {
        let l = lifted_subdiff(&abs(), &ivec(&[0])).unwrap();
        assert!(equality_set(&l.sys).unwrap().is_empty());
        assert_eq!(l.parallel_rows().unwrap().len(), 2);
    }
}
