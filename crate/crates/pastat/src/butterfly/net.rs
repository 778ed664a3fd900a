//! The net polyhedron around a point and the rounding step.

use num_traits::Zero;

use crate::error::{check_dim, Error, Result};
use crate::exactsolve::{project_point, LinearSystem};
use crate::pafunc::{Affine, DcFunction, McFunction, McNode, ValueTree};
use crate::polytope::HPolyhedron;
use crate::rational::{int, zeros, RVector, Rational};

/// Children of one max node kept by the approximate active-set rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActiveSet {
    /// Child indices from the root of the tree to the max node.
    pub path: Vec<usize>,
    /// Sorted indices of children with `v_child(w) ≥ v_node(w) - 3Rδ`.
    pub active: Vec<usize>,
}

/// Approximate active sets of every max node of `h` and of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxActiveSets {
    pub h: Vec<ActiveSet>,
    pub g: Vec<ActiveSet>,
}

/// The net: a polyhedron in `z` built from the leaf data of `h` and `g` and
/// the approximate active sets at `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetPolyhedron {
    pub poly: HPolyhedron,
    pub active: ApproxActiveSets,
}

impl NetPolyhedron {
    /// Whether `z` satisfies every constraint.
    pub fn contains(&self, z: &[Rational]) -> bool {
        self.poly.sys.satisfied_by(z)
    }
}

/// Emits the constraints of one tree and returns its affine expression.
struct Emitter<'a> {
    sys: &'a mut LinearSystem,
    dim: usize,
    three: Rational,
    two: Rational,
    four: Rational,
    sets: Vec<ActiveSet>,
}

impl Emitter<'_> {
    /// Affine expression of node `n`, valid on the region constrained so far.
    fn visit(&mut self, n: &McNode, v: &ValueTree, path: &mut Vec<usize>) -> Affine {
        match n {
            McNode::Leaf(l) => l.clone(),
            McNode::Sum(c) => {
                let mut acc = Affine::new(zeros(self.dim), Rational::zero());
                for (i, (m, vm)) in c.iter().zip(&v.children).enumerate() {
                    path.push(i);
                    acc = acc.plus(&self.visit(m, vm, path));
                    path.pop();
                }
                acc
            }
            McNode::Max(c) => {
                let mut exprs = Vec::with_capacity(c.len());
                for (i, (m, vm)) in c.iter().zip(&v.children).enumerate() {
                    path.push(i);
                    exprs.push(self.visit(m, vm, path));
                    path.pop();
                }
                let floor = &v.value - &self.three;
                let active: Vec<usize> = (0..c.len()).filter(|&i| v.children[i].value >= floor).collect();
                let first = active[0];
                for &i in &active[1..] {
                    let d = exprs[i].plus(&exprs[first].negated());
                    self.sys.add_eq(d.x, -d.a);
                }
                let low = &v.value - &self.two;
                let high = &v.value - &self.four;
                for (i, e) in exprs.iter().enumerate() {
                    if active.binary_search(&i).is_ok() {
                        self.sys.add_ge(e.x.clone(), &low - &e.a);
                    } else {
                        self.sys.add_le(e.x.clone(), &high - &e.a);
                    }
                }
                self.sets.push(ActiveSet {
                    path: path.clone(),
                    active,
                });
                exprs.swap_remove(first)
            }
        }
    }
}

fn emit(h: &McFunction, w: &[Rational], r_delta: &Rational, sys: &mut LinearSystem) -> Result<Vec<ActiveSet>> {
    let vt = h.value_table(w)?;
    let mut e = Emitter {
        sys,
        dim: h.dim(),
        three: int(3) * r_delta,
        two: int(2) * r_delta,
        four: int(4) * r_delta,
        sets: Vec::new(),
    };
    e.visit(h.root(), &vt, &mut Vec::new());
    Ok(e.sets)
}

/// Builds the net of `f` at `w` with radius `δ`.
///
/// At every max node with active set `I`, the children in `I` are equal, each
/// is at least `v_node(w) - 2Rδ`, and every other child is at most
/// `v_node(w) - 4Rδ`. Child values are expanded bottom-up into affine
/// expressions, a max node taking the expression of its lowest-index active
/// child.
pub fn build_net(f: &DcFunction, w: &[Rational], delta: &Rational) -> Result<NetPolyhedron> {
    check_dim(f.dim(), w.len())?;
    if delta <= &Rational::zero() {
        return Err(Error::Invalid("net radius must be positive".into()));
    }
    let r_delta = f.lipschitz_r() * delta;
    let mut sys = LinearSystem::new(f.dim());
    let h = emit(&f.h, w, &r_delta, &mut sys)?;
    let g = emit(&f.g, w, &r_delta, &mut sys)?;
    Ok(NetPolyhedron {
        poly: HPolyhedron::new(sys)?,
        active: ApproxActiveSets { h, g },
    })
}

/// Outcome of rounding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rounded {
    Point(RVector),
    Infeasible,
}

/// Projects `w` onto the net of radius `δ`.
pub fn rnd(f: &DcFunction, w: &[Rational], delta: &Rational) -> Result<Rounded> {
    let net = build_net(f, w, delta)?;
    Ok(match project_point(&net.poly.sys, w)? {
        Some(p) => Rounded::Point(p),
        None => Rounded::Infeasible,
    })
}
