//! Polyhedra given by linear constraints.

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exactsolve::{lp_feasible, lp_optimize, solve, Feasibility, LinearSystem, LpOutcome};
use crate::polytope::vpoly::VPolytope;
use crate::rational::{unit, RVector};

/// `{x : A_eq x = b_eq, A_le x ≤ b_le}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolyhedron {
    pub sys: LinearSystem,
}

impl HPolyhedron {
    /// Wraps a validated system.
    pub fn new(sys: LinearSystem) -> Result<Self> {
        sys.validate()?;
        Ok(HPolyhedron { sys })
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.sys.nvars
    }

    /// Whether the polyhedron has no points.
    pub fn is_empty(&self) -> bool {
        matches!(lp_feasible(&self.sys), Feasibility::Infeasible(_))
    }

    /// Whether every coordinate is bounded above and below.
    pub fn is_bounded(&self) -> bool {
        (0..self.dim()).all(|i| {
            let e = unit(self.dim(), i);
            let up = lp_optimize(&e, &self.sys);
            let down = lp_optimize(&crate::rational::neg(&e), &self.sys);
            !matches!(up, LpOutcome::Unbounded) && !matches!(down, LpOutcome::Unbounded)
        })
    }

    /// Vertex enumeration by solving every `d`-subset of constraint rows.
    ///
    /// Errors with [`Error::Empty`] or [`Error::Unbounded`] when the set is not
    /// a non-empty polytope, and with a cap error when the subset count is
    /// too large.
    pub fn vertices(&self, caps: &Caps) -> Result<VPolytope> {
        let d = self.dim();
        if self.is_empty() {
            return Err(Error::Empty);
        }
        if !self.is_bounded() {
            return Err(Error::Unbounded);
        }
        let rows: Vec<(&RVector, &crate::Rational)> = self
            .sys
            .eq
            .iter()
            .chain(&self.sys.le)
            .map(|r| (&r.a, &r.b))
            .collect();
        Caps::check("constraint subsets", binomial(rows.len() as u128, d as u128), caps.subsets)?;
        if d == 0 {
            return VPolytope::new(vec![Vec::new()]);
        }
        let mut pts = Vec::new();
        let mut idx: Vec<usize> = (0..d).collect();
        if rows.len() >= d {
            loop {
                let m: Vec<RVector> = idx.iter().map(|&i| rows[i].0.clone()).collect();
                let rhs: RVector = idx.iter().map(|&i| rows[i].1.clone()).collect();
                if let Some(x) = solve(&m, &rhs) {
                    if self.sys.satisfied_by(&x) {
                        pts.push(x);
                    }
                }
                if !next_combination(&mut idx, rows.len()) {
                    break;
                }
            }
        }
        Caps::check("vertices", pts.len() as u128, caps.vertices)?;
        Ok(VPolytope::new(pts)?.canonicalize())
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Advances `idx` to the next increasing `k`-subset of `0..n`.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ivec};

    #[test]
    fn square_vertices() {
        let mut s = LinearSystem::new(2);
        s.add_le(ivec(&[1, 0]), int(1));
        s.add_le(ivec(&[0, 1]), int(1));
        s.add_ge(ivec(&[1, 0]), int(0));
        s.add_ge(ivec(&[0, 1]), int(0));
        s.add_le(ivec(&[1, 1]), int(2));
        let v = HPolyhedron::new(s).unwrap().vertices(&Caps::default()).unwrap();
        assert_eq!(v.vertices(), &[ivec(&[0, 0]), ivec(&[0, 1]), ivec(&[1, 0]), ivec(&[1, 1])]);
    }

    #[test]
    fn unbounded_and_empty() {
        let mut s = LinearSystem::new(1);
        s.add_ge(ivec(&[1]), int(0));
        assert_eq!(HPolyhedron::new(s.clone()).unwrap().vertices(&Caps::default()), Err(Error::Unbounded));
        s.add_le(ivec(&[1]), int(-1));
        assert_eq!(HPolyhedron::new(s).unwrap().vertices(&Caps::default()), Err(Error::Empty));
    }

    #[test]
    fn combinations() {
        let mut idx = vec![0, 1];
        let mut n = 1;
        while next_combination(&mut idx, 4) {
            n += 1;
        }
        assert_eq!(n, 6);
        assert_eq!(binomial(5, 2), 10);
    }
}
