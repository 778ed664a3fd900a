//! Vertex enumeration of convex subdifferentials and the DC-critical distance.

use crate::caps::Caps;
use crate::error::Result;
use crate::exactsolve::{min_norm_point, MinNorm};
use crate::pafunc::{DcFunction, McFunction, McNode, ValueTree};
use crate::polytope::{minkowski_sum, par_trivial_intersection, VPolytope};
use crate::rational::{sub, zeros, Rational};

/// Canonical vertices of `∂h(w)`: hulls of active children at max nodes and
/// Minkowski sums at sum nodes, canonicalized at every level.
pub fn subdiff_vertices(h: &McFunction, w: &[Rational], caps: &Caps) -> Result<VPolytope> {
    let vt = h.value_table(w)?;
    fn go(n: &McNode, v: &ValueTree, dim: usize, caps: &Caps) -> Result<VPolytope> {
        match n {
            McNode::Leaf(l) => Ok(VPolytope::point(l.x.clone())),
            McNode::Max(c) => {
                let mut pts = Vec::new();
                for (m, vm) in c.iter().zip(&v.children) {
                    if vm.value == v.value {
                        pts.extend(go(m, vm, dim, caps)?.into_vertices());
                    }
                }
                Ok(VPolytope::new(pts)?.canonicalize())
            }
            McNode::Sum(c) => {
                let mut acc = VPolytope::point(zeros(dim));
                for (m, vm) in c.iter().zip(&v.children) {
                    let part = go(m, vm, dim, caps)?;
                    let need = (acc.vertices().len() as u128) * (part.vertices().len() as u128);
                    Caps::check("subdifferential vertex products", need, caps.vertices)?;
                    acc = minkowski_sum(&acc, &part)?;
                }
                Ok(acc)
            }
        }
    }
    go(h.root(), &vt, h.dim(), caps)
}

/// Canonical vertices of `∂h(w) - ∂g(w)`.
pub fn dc_difference_vertices(f: &DcFunction, w: &[Rational], caps: &Caps) -> Result<VPolytope> {
    let a = subdiff_vertices(&f.h, w, caps)?;
    let b = subdiff_vertices(&f.g, w, caps)?;
    Caps::check(
        "difference vertex products",
        (a.vertices().len() as u128) * (b.vertices().len() as u128),
        caps.brute,
    )?;
    minkowski_sum(&a, &b.neg())
}

/// Nearest point to the origin of `∂h(w) - ∂g(w)`.
pub fn dc_critical_nearest(f: &DcFunction, w: &[Rational], caps: &Caps) -> Result<MinNorm> {
    let a = subdiff_vertices(&f.h, w, caps)?;
    let b = subdiff_vertices(&f.g, w, caps)?;
    Caps::check(
        "difference vertex products",
        (a.vertices().len() as u128) * (b.vertices().len() as u128),
        caps.brute,
    )?;
    let pts: Vec<_> = a
        .vertices()
        .iter()
        .flat_map(|u| b.vertices().iter().map(move |v| sub(u, v)))
        .collect();
    min_norm_point(&pts)
}

/// `dist(0, ∂h(w) - ∂g(w))²`.
pub fn dc_critical_dist_sq(f: &DcFunction, w: &[Rational], caps: &Caps) -> Result<Rational> {
    Ok(dc_critical_nearest(f, w, caps)?.norm_sq())
}

/// How [`transversal_at`] computes parallel spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransversalMethod {
    /// Rank test on vertex differences.
    Vrep,
    /// Equality sets of the lifted systems and one LP per coordinate.
    Lprep,
}

/// Whether `par(∂h(w)) ∩ par(∂g(w)) = {0}`.
pub fn transversal_at(f: &DcFunction, w: &[Rational], method: TransversalMethod, caps: &Caps) -> Result<bool> {
    match method {
        TransversalMethod::Vrep => {
            let a = subdiff_vertices(&f.h, w, caps)?;
            let b = subdiff_vertices(&f.g, w, caps)?;
            par_trivial_intersection(&a, &b)
        }
        TransversalMethod::Lprep => {
            let lh = super::lifted_subdiff(&f.h, w)?;
            let lg = super::lifted_subdiff(&f.g, w)?;
            super::lifted::lifted_transversal(&lh, &lg)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pafunc::Affine;
    use crate::rational::{int, ivec};

    fn relu(x: &[i64]) -> McFunction {
        McFunction::max_of(x.len(), vec![Affine::linear(ivec(x)), Affine::linear(vec![int(0); x.len()])]).unwrap()
    }

    fn abs(x: &[i64]) -> McFunction {
        let n: Vec<i64> = x.iter().map(|v| -v).collect();
        McFunction::max_of(x.len(), vec![Affine::linear(ivec(x)), Affine::linear(ivec(&n))]).unwrap()
    }

    #[test]
    fn vertices_of_simple_functions() {
        let c = Caps::default();
        assert_eq!(subdiff_vertices(&abs(&[1]), &ivec(&[0]), &c).unwrap().vertices(), &[ivec(&[-1]), ivec(&[1])]);
        let split = McFunction::new(
            1,
            McNode::Sum(vec![
                McNode::Max(vec![McNode::leaf(ivec(&[1]), int(0)), McNode::leaf(ivec(&[0]), int(0))]),
                McNode::Max(vec![McNode::leaf(ivec(&[-1]), int(0)), McNode::leaf(ivec(&[0]), int(0))]),
            ]),
        )
        .unwrap();
        assert_eq!(subdiff_vertices(&split, &ivec(&[0]), &c).unwrap().vertices(), &[ivec(&[-1]), ivec(&[1])]);
        assert_eq!(subdiff_vertices(&McFunction::zero(2), &ivec(&[0, 0]), &c).unwrap().vertices(), &[ivec(&[0, 0])]);
    }

    #[test]
    fn dc_critical_distances() {
        let c = Caps::default();
        let f2 = DcFunction::new(relu(&[1]), relu(&[-1])).unwrap();
        assert_eq!(dc_critical_dist_sq(&f2, &ivec(&[0]), &c).unwrap(), int(0));
        let lin = DcFunction::convex(McFunction::affine(ivec(&[1]), int(0)));
        assert_eq!(dc_critical_dist_sq(&lin, &ivec(&[0]), &c).unwrap(), int(1));
    }

    #[test]
    fn transversality_both_methods() {
        let c = Caps::default();
        let cases = [
            (DcFunction::new(abs(&[1, 0]), abs(&[0, 1])).unwrap(), true),
            (DcFunction::new(abs(&[1, 0]), abs(&[1, 0])).unwrap(), false),
        ];
        for (f, want) in cases {
            let w = ivec(&[0, 0]);
            assert_eq!(transversal_at(&f, &w, TransversalMethod::Vrep, &c).unwrap(), want);
            assert_eq!(transversal_at(&f, &w, TransversalMethod::Lprep, &c).unwrap(), want);
        }
    }
}
