//! Max-Min form: `f(w) = max_i min_{j ∈ M_i} (x_j·w + a_j)`.

use crate::error::{check_dim, Error, Result};
use crate::pafunc::mc::Affine;
use crate::rational::{dot, Rational};

/// A piecewise affine function in Max-Min form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxMinFunction {
    dim: usize,
    pieces: Vec<Affine>,
    groups: Vec<Vec<usize>>,
}

impl MaxMinFunction {
    /// Validates pieces and groups: at least one group, every group
    /// non-empty, every index in range, every piece of dimension `dim`.
    pub fn new(dim: usize, pieces: Vec<Affine>, groups: Vec<Vec<usize>>) -> Result<Self> {
        for p in &pieces {
            check_dim(dim, p.x.len())?;
        }
        if groups.is_empty() {
            return Err(Error::Invalid("a max-min function needs at least one group".into()));
        }
        for g in &groups {
            if g.is_empty() {
                return Err(Error::Invalid("max-min groups must be non-empty".into()));
            }
            if let Some(&j) = g.iter().find(|&&j| j >= pieces.len()) {
                return Err(Error::Invalid(format!("piece index {j} out of range")));
            }
        }
        Ok(MaxMinFunction { dim, pieces, groups })
    }

    /// Input dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Affine pieces.
    pub fn pieces(&self) -> &[Affine] {
        &self.pieces
    }

    /// Index groups `M_i`.
    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    fn group_values(&self, w: &[Rational]) -> Vec<Vec<Rational>> {
        self.groups
            .iter()
            .map(|g| g.iter().map(|&j| self.pieces[j].eval(w)).collect())
            .collect()
    }

    /// Value at `w`.
    pub fn eval(&self, w: &[Rational]) -> Result<Rational> {
        check_dim(self.dim, w.len())?;
        Ok(self
            .group_values(w)
            .into_iter()
            .map(|v| v.into_iter().min().unwrap())
            .max()
            .unwrap())
    }

    /// The positively homogeneous function `d ↦ f'(w; d)`: active groups,
    /// each restricted to its active pieces, with offsets dropped. Pieces are
    /// renumbered densely in order of first use.
    pub fn dd_function(&self, w: &[Rational]) -> Result<MaxMinFunction> {
        check_dim(self.dim, w.len())?;
        let vals = self.group_values(w);
        let mins: Vec<Rational> = vals.iter().map(|v| v.iter().min().unwrap().clone()).collect();
        let top = mins.iter().max().unwrap().clone();
        let mut index = vec![usize::MAX; self.pieces.len()];
        let mut pieces = Vec::new();
        let mut groups = Vec::new();
        for (gi, g) in self.groups.iter().enumerate() {
            if mins[gi] != top {
                continue;
            }
            let mut group = Vec::new();
            for (pos, &j) in g.iter().enumerate() {
                if vals[gi][pos] != mins[gi] {
                    continue;
                }
                if index[j] == usize::MAX {
                    index[j] = pieces.len();
                    pieces.push(Affine::linear(self.pieces[j].x.clone()));
                }
                group.push(index[j]);
            }
            groups.push(group);
        }
        MaxMinFunction::new(self.dim, pieces, groups)
    }

    /// One-sided directional derivative by active-group recursion.
    pub fn dir_deriv(&self, w: &[Rational], d: &[Rational]) -> Result<Rational> {
        check_dim(self.dim, d.len())?;
        let dd = self.dd_function(w)?;
        Ok(dd
            .groups
            .iter()
            .map(|g| g.iter().map(|&j| dot(&dd.pieces[j].x, d)).min().unwrap())
            .max()
            .unwrap())
    }

    /// Every piece is a selection piece of a Max-Min function.
    pub fn flatten(&self) -> Vec<Affine> {
        self.pieces.clone()
    }
}
