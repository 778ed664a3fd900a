//! Multi-composite convex functions: alternating sum-of-max trees.

use num_traits::Zero;

use crate::caps::Caps;
use crate::error::{check_dim, Error, Result};
use crate::rational::{add, dot, norm_sq, sqrt_upper, zeros, RVector, Rational};

/// Affine function `w ↦ x·w + a`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Affine {
    pub x: RVector,
    pub a: Rational,
}

impl Affine {
    /// Builds `x·w + a`.
    pub fn new(x: RVector, a: Rational) -> Self {
        Affine { x, a }
    }

    /// The linear function `x·w`.
    pub fn linear(x: RVector) -> Self {
        Affine { x, a: Rational::zero() }
    }

    /// Value at `w`.
    pub fn eval(&self, w: &[Rational]) -> Rational {
        dot(&self.x, w) + &self.a
    }

    /// Pointwise sum.
    pub fn plus(&self, other: &Affine) -> Affine {
        Affine {
            x: add(&self.x, &other.x),
            a: &self.a + &other.a,
        }
    }

    /// Pointwise negation.
    pub fn negated(&self) -> Affine {
        Affine {
            x: self.x.iter().map(|v| -v).collect(),
            a: -&self.a,
        }
    }
}

/// Node of a multi-composite tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum McNode {
    /// Sum of max nodes.
    Sum(Vec<McNode>),
    /// Max of sum nodes or of affine leaves.
    Max(Vec<McNode>),
    /// Affine leaf.
    Leaf(Affine),
}

impl McNode {
    /// Leaf `x·w + a`.
    pub fn leaf(x: RVector, a: Rational) -> McNode {
        McNode::Leaf(Affine::new(x, a))
    }

    /// Value at `w`.
    pub fn eval(&self, w: &[Rational]) -> Rational {
        match self {
            McNode::Leaf(l) => l.eval(w),
            McNode::Sum(c) => c.iter().map(|n| n.eval(w)).fold(Rational::zero(), |s, v| s + v),
            McNode::Max(c) => c.iter().map(|n| n.eval(w)).max().expect("max node has children"),
        }
    }

    /// Number of max levels between this node and its leaves, when uniform.
    fn depth(&self) -> Option<usize> {
        match self {
            McNode::Leaf(_) => Some(0),
            McNode::Sum(c) => uniform(c.iter().map(McNode::depth)),
            McNode::Max(c) => uniform(c.iter().map(McNode::depth)).map(|d| d + 1),
        }
    }

    /// Repairs alternation by inserting single-child wrappers.
    fn alternate(self, parent_is_max: bool) -> McNode {
        match (self, parent_is_max) {
            (McNode::Leaf(l), true) => McNode::Leaf(l),
            (McNode::Leaf(l), false) => McNode::Max(vec![McNode::Leaf(l)]),
            (McNode::Sum(c), true) => McNode::Sum(c.into_iter().map(|n| n.alternate(false)).collect()),
            (McNode::Sum(c), false) => McNode::Max(vec![McNode::Sum(
                c.into_iter().map(|n| n.alternate(false)).collect(),
            )]),
            (McNode::Max(c), false) => McNode::Max(c.into_iter().map(|n| n.alternate(true)).collect()),
            (McNode::Max(c), true) => McNode::Sum(vec![McNode::Max(
                c.into_iter().map(|n| n.alternate(true)).collect(),
            )]),
        }
    }

    /// Max levels on the deepest path (alternation assumed).
    fn max_depth(&self) -> usize {
        match self {
            McNode::Leaf(_) => 0,
            McNode::Sum(c) => c.iter().map(McNode::max_depth).max().unwrap_or(0),
            McNode::Max(c) => 1 + c.iter().map(McNode::max_depth).max().unwrap_or(0),
        }
    }

    /// Pads a max node so that its leaves sit `target` max levels below it.
    fn pad(self, target: usize) -> McNode {
        match self {
            McNode::Max(c) => {
                let children = c
                    .into_iter()
                    .map(|n| match n {
                        McNode::Leaf(l) if target > 1 => {
                            McNode::Sum(vec![McNode::Max(vec![McNode::Leaf(l)]).pad(target - 1)])
                        }
                        McNode::Sum(s) => McNode::Sum(s.into_iter().map(|m| m.pad(target - 1)).collect()),
                        other => other,
                    })
                    .collect();
                McNode::Max(children)
            }
            other => other,
        }
    }
}

fn uniform(mut it: impl Iterator<Item = Option<usize>>) -> Option<usize> {
    let first = match it.next() {
        None => return Some(0),
        Some(d) => d?,
    };
    for d in it {
        if d? != first {
            return None;
        }
    }
    Some(first)
}

/// Values of every node at a point, mirroring the tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueTree {
    pub value: Rational,
    pub children: Vec<ValueTree>,
}

impl ValueTree {
    /// Value of the node at `path` (child indices from the root).
    pub fn get(&self, path: &[usize]) -> Option<&Rational> {
        let mut node = self;
        for &i in path {
            node = node.children.get(i)?;
        }
        Some(&node.value)
    }
}

fn value_tree(n: &McNode, w: &[Rational]) -> ValueTree {
    match n {
        McNode::Leaf(l) => ValueTree {
            value: l.eval(w),
            children: Vec::new(),
        },
        McNode::Sum(c) => {
            let ch: Vec<ValueTree> = c.iter().map(|m| value_tree(m, w)).collect();
            let value = ch.iter().fold(Rational::zero(), |s, v| s + &v.value);
            ValueTree { value, children: ch }
        }
        McNode::Max(c) => {
            let ch: Vec<ValueTree> = c.iter().map(|m| value_tree(m, w)).collect();
            let value = ch.iter().map(|v| v.value.clone()).max().unwrap();
            ValueTree { value, children: ch }
        }
    }
}

/// A convex piecewise affine function in multi-composite form:
/// `Σ max Σ max … (x·w + a)`, with a sum node at the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McFunction {
    dim: usize,
    root: McNode,
}

impl McFunction {
    /// Validates and wraps a tree. A max or leaf root is wrapped in a sum.
    ///
    /// Requires strict alternation, non-empty max nodes, leaves of dimension
    /// `dim`, and all leaves at the same depth.
    pub fn new(dim: usize, root: McNode) -> Result<McFunction> {
        let root = match root {
            McNode::Sum(c) => McNode::Sum(c),
            McNode::Max(c) => McNode::Sum(vec![McNode::Max(c)]),
            McNode::Leaf(l) => McNode::Sum(vec![McNode::Max(vec![McNode::Leaf(l)])]),
        };
        check_shape(&root, false, dim)?;
        if root.depth().is_none() {
            return Err(Error::Invalid("leaves of an MC tree must sit at equal depth".into()));
        }
        Ok(McFunction { dim, root })
    }

    /// Builds a tree from loosely nested nodes: inserts single-child wrappers
    /// to restore alternation and pads shallow branches to equal depth.
    pub fn balanced(dim: usize, root: McNode) -> Result<McFunction> {
        let root = match root.alternate(true) {
            McNode::Sum(c) => McNode::Sum(c),
            other => McNode::Sum(vec![other.alternate(false)]),
        };
        let depth = root.max_depth();
        let root = match root {
            McNode::Sum(c) => McNode::Sum(c.into_iter().map(|m| m.pad(depth)).collect()),
            other => other,
        };
        McFunction::new(dim, root)
    }

    /// The zero function.
    pub fn zero(dim: usize) -> McFunction {
        McFunction {
            dim,
            root: McNode::Sum(Vec::new()),
        }
    }

    /// The affine function `x·w + a` as a one-leaf tree.
    pub fn affine(x: RVector, a: Rational) -> McFunction {
        let dim = x.len();
        McFunction::new(dim, McNode::leaf(x, a)).expect("single leaf is valid")
    }

    /// `max` over the given affine pieces.
    pub fn max_of(dim: usize, pieces: Vec<Affine>) -> Result<McFunction> {
        McFunction::new(dim, McNode::Max(pieces.into_iter().map(McNode::Leaf).collect()))
    }

    /// Input dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Root sum node.
    pub fn root(&self) -> &McNode {
        &self.root
    }

    /// Number of max levels (the `n` of n-MC); zero for an empty sum.
    pub fn depth(&self) -> usize {
        self.root.depth().unwrap_or(0)
    }

    /// Value at `w`.
    pub fn eval(&self, w: &[Rational]) -> Result<Rational> {
        check_dim(self.dim, w.len())?;
        Ok(self.root.eval(w))
    }

    /// Values of every node at `w`.
    pub fn value_table(&self, w: &[Rational]) -> Result<ValueTree> {
        check_dim(self.dim, w.len())?;
        Ok(value_tree(&self.root, w))
    }

    /// One-sided directional derivative `h'(w; d)`.
    pub fn dir_deriv(&self, w: &[Rational], d: &[Rational]) -> Result<Rational> {
        check_dim(self.dim, d.len())?;
        Ok(self.dd_function(w)?.root.eval(d))
    }

    /// The positively homogeneous function `d ↦ h'(w; d)`: the tree restricted
    /// to active children at `w`, with offsets dropped.
    pub fn dd_function(&self, w: &[Rational]) -> Result<McFunction> {
        let vt = self.value_table(w)?;
        fn restrict(n: &McNode, v: &ValueTree) -> McNode {
            match n {
                McNode::Leaf(l) => McNode::Leaf(Affine::linear(l.x.clone())),
                McNode::Sum(c) => McNode::Sum(c.iter().zip(&v.children).map(|(m, vm)| restrict(m, vm)).collect()),
                McNode::Max(c) => McNode::Max(
                    c.iter()
                        .zip(&v.children)
                        .filter(|(_, vm)| vm.value == v.value)
                        .map(|(m, vm)| restrict(m, vm))
                        .collect(),
                ),
            }
        }
        Ok(McFunction {
            dim: self.dim,
            root: restrict(&self.root, &vt),
        })
    }

    /// Lipschitz aggregate: sum/max of per-leaf rational upper bounds on `‖x‖`.
    pub fn lipschitz_bound(&self) -> Rational {
        fn go(n: &McNode) -> Rational {
            match n {
                McNode::Leaf(l) => sqrt_upper(&norm_sq(&l.x)),
                McNode::Sum(c) => c.iter().map(go).fold(Rational::zero(), |s, v| s + v),
                McNode::Max(c) => c.iter().map(go).max().unwrap_or_else(Rational::zero),
            }
        }
        go(&self.root)
    }

    /// Smallest strictly positive gap `v_parent(w) - v_child(w)` over all max
    /// nodes, or `None` when no child is strictly below its parent.
    pub fn min_gap(&self, w: &[Rational]) -> Result<Option<Rational>> {
        let vt = self.value_table(w)?;
        fn go(n: &McNode, v: &ValueTree, best: &mut Option<Rational>) {
            match n {
                McNode::Leaf(_) => {}
                McNode::Sum(c) => c.iter().zip(&v.children).for_each(|(m, vm)| go(m, vm, best)),
                McNode::Max(c) => {
                    for (m, vm) in c.iter().zip(&v.children) {
                        let gap = &v.value - &vm.value;
                        if !gap.is_zero() && best.as_ref().is_none_or(|b| &gap < b) {
                            *best = Some(gap);
                        }
                        go(m, vm, best);
                    }
                }
            }
        }
        let mut best = None;
        go(&self.root, &vt, &mut best);
        Ok(best)
    }

    /// Number of pieces produced by [`McFunction::flatten`], saturating.
    pub fn piece_count(&self) -> u128 {
        fn go(n: &McNode) -> u128 {
            match n {
                McNode::Leaf(_) => 1,
                McNode::Sum(c) => c.iter().map(go).fold(1u128, |s, v| s.saturating_mul(v)),
                McNode::Max(c) => c.iter().map(go).fold(0u128, |s, v| s.saturating_add(v)),
            }
        }
        go(&self.root)
    }

    /// All affine selection pieces, by distributing sums over maxima.
    /// The function equals the maximum of the returned pieces.
    pub fn flatten(&self, caps: &Caps) -> Result<Vec<Affine>> {
        Caps::check("flattened pieces", self.piece_count(), caps.flatten)?;
        fn go(n: &McNode, dim: usize) -> Vec<Affine> {
            match n {
                McNode::Leaf(l) => vec![l.clone()],
                McNode::Max(c) => c.iter().flat_map(|m| go(m, dim)).collect(),
                McNode::Sum(c) => {
                    let mut acc = vec![Affine::new(zeros(dim), Rational::zero())];
                    for m in c {
                        let part = go(m, dim);
                        acc = acc.iter().flat_map(|p| part.iter().map(move |q| p.plus(q))).collect();
                    }
                    acc
                }
            }
        }
        Ok(go(&self.root, self.dim))
    }

    /// Every leaf in document order.
    pub fn leaves(&self) -> Vec<&Affine> {
        fn go<'a>(n: &'a McNode, out: &mut Vec<&'a Affine>) {
            match n {
                McNode::Leaf(l) => out.push(l),
                McNode::Sum(c) | McNode::Max(c) => c.iter().for_each(|m| go(m, out)),
            }
        }
        let mut out = Vec::new();
        go(&self.root, &mut out);
        out
    }

    /// Gradient of the lowest-index active leaf chain at `w`: at each max node
    /// the first child attaining the maximum is followed.
    pub fn first_active_gradient(&self, w: &[Rational]) -> Result<RVector> {
        let vt = self.value_table(w)?;
        fn go(n: &McNode, v: &ValueTree, dim: usize) -> RVector {
            match n {
                McNode::Leaf(l) => l.x.clone(),
                McNode::Sum(c) => c
                    .iter()
                    .zip(&v.children)
                    .fold(zeros(dim), |s, (m, vm)| add(&s, &go(m, vm, dim))),
                McNode::Max(c) => {
                    let i = v.children.iter().position(|vm| vm.value == v.value).unwrap();
                    go(&c[i], &v.children[i], dim)
                }
            }
        }
        Ok(go(&self.root, &vt, self.dim))
    }
}

fn check_shape(n: &McNode, parent_is_max: bool, dim: usize) -> Result<()> {
    match n {
        McNode::Leaf(l) => {
            if !parent_is_max {
                return Err(Error::Invalid("an affine leaf must be the child of a max node".into()));
            }
            check_dim(dim, l.x.len())
        }
        McNode::Sum(c) => {
            if parent_is_max && c.is_empty() {
                return Err(Error::Invalid("an inner sum node needs at least one child".into()));
            }
            for m in c {
                if !matches!(m, McNode::Max(_)) {
                    return Err(Error::Invalid("children of a sum node must be max nodes".into()));
                }
                check_shape(m, false, dim)?;
            }
            Ok(())
        }
        McNode::Max(c) => {
            if parent_is_max {
                return Err(Error::Invalid("a max node cannot be the child of a max node".into()));
            }
            if c.is_empty() {
                return Err(Error::Invalid("a max node needs at least one child".into()));
            }
            for m in c {
                check_shape(m, true, dim)?;
            }
            Ok(())
        }
    }
}
