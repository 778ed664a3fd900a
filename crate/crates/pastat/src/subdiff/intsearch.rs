//! Integer fast path for the Max-Min activity search. Gradients are scaled
//! to integers; every node is decided by [`int_verdict`], and a node the
//! filter cannot certify aborts the search so the caller can rerun it in
//! exact rational arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::exactsolve::{idot, int_verdict, Verdict};
use crate::rational::{RVector, Rational};

/// Largest magnitude allowed for scaled entries.
const ENTRY_LIMIT: i64 = 1 << 40;

/// Why an integer search stopped early.
pub(crate) enum IntStop {
    Undecided,
    Budget,
}

/// Gradients multiplied by the common denominator of their entries.
pub(crate) struct IntGrads {
    pub grads: Vec<Vec<i64>>,
    pub factor: BigInt,
}

impl IntGrads {
    /// `None` when the scaled entries are too large.
    pub(crate) fn new(grads: &[RVector]) -> Option<Self> {
        let factor = grads.iter().flatten().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let grads = grads
            .iter()
            .map(|g| {
                g.iter()
                    .map(|q| {
                        let v = (q.numer() * (&factor / q.denom())).to_i64()?;
                        (v.abs() < ENTRY_LIMIT).then_some(v)
                    })
                    .collect::<Option<Vec<i64>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        Some(IntGrads { grads, factor })
    }

    fn diff(&self, a: usize, b: usize) -> Vec<i64> {
        self.grads[a].iter().zip(&self.grads[b]).map(|(x, y)| x - y).collect()
    }

    /// Whether gradient `x` lies in the hull of gradients `others`; `None`
    /// when undecided.
    pub(crate) fn in_hull(&self, x: usize, others: &[usize], dim: usize) -> Option<bool> {
        let rows: Vec<Vec<i64>> = others.iter().map(|&j| self.diff(j, x)).collect();
        match int_verdict(&rows, dim) {
            Verdict::Infeasible => Some(true),
            Verdict::Feasible(_) => Some(false),
            Verdict::Unknown => None,
        }
    }

    /// Decides activity of gradient `x`, returning an unscaled witness.
    pub(crate) fn decide(
        &self,
        groups: &[Vec<usize>],
        x: usize,
        dim: usize,
        budget: &mut usize,
    ) -> Result<Option<RVector>, IntStop> {
        let clauses: Vec<Vec<usize>> = groups.iter().filter(|g| g.binary_search(&x).is_err()).cloned().collect();
        for group in groups.iter().filter(|g| g.binary_search(&x).is_ok()) {
            let mut s = Node {
                ig: self,
                x,
                own: group.iter().copied().filter(|&j| j != x).collect(),
                clauses: &clauses,
                dim,
                failed: Vec::new(),
            };
            if let Some((h, m)) = s.dfs(&mut Vec::new(), budget)? {
                let scale = Rational::new(self.factor.clone(), BigInt::from(m));
                return Ok(Some(h.iter().map(|&v| Rational::from_integer(v.into()) * &scale).collect()));
            }
        }
        Ok(None)
    }
}

struct Node<'a> {
    ig: &'a IntGrads,
    x: usize,
    /// Other members of the group where `x` must be the strict minimum.
    own: Vec<usize>,
    /// Groups without `x`; each needs a member strictly below `x`.
    clauses: &'a [Vec<usize>],
    dim: usize,
    failed: Vec<Vec<usize>>,
}

impl Node<'_> {
    /// Returns `h` and `m = min r·h > 0` over the chosen rows, so that `h/m`
    /// has margin one on the scaled rows; `m` is one when there are no rows.
    fn dfs(&mut self, chosen: &mut Vec<usize>, budget: &mut usize) -> Result<Option<(Vec<i64>, i128)>, IntStop> {
        if self
            .failed
            .iter()
            .any(|f| f.len() <= chosen.len() && f.iter().all(|j| chosen.binary_search(j).is_ok()))
        {
            return Ok(None);
        }
        if *budget == 0 {
            return Err(IntStop::Budget);
        }
        *budget -= 1;
        let mut rows: Vec<Vec<i64>> = self.own.iter().map(|&j| self.ig.diff(j, self.x)).collect();
        rows.extend(chosen.iter().map(|&j| self.ig.diff(self.x, j)));
        let h = match int_verdict(&rows, self.dim) {
            Verdict::Feasible(h) => h,
            Verdict::Infeasible => {
                self.failed.push(chosen.clone());
                return Ok(None);
            }
            Verdict::Unknown => return Err(IntStop::Undecided),
        };
        let m = rows.iter().map(|r| idot(r, &h)).min();
        let xh = idot(&self.ig.grads[self.x], &h);
        let below = |j: usize| m.is_some_and(|m| xh - idot(&self.ig.grads[j], &h) >= m);
        let open = self
            .clauses
            .iter()
            .filter(|c| !c.iter().any(|&j| below(j)))
            .min_by_key(|c| c.len());
        let Some(clause) = open else {
            return Ok(Some((h, m.unwrap_or(1))));
        };
        for &j in clause {
            let pos = chosen.binary_search(&j).unwrap_err();
            chosen.insert(pos, j);
            let found = self.dfs(chosen, budget);
            chosen.remove(pos);
            if let Some(found) = found? {
                return Ok(Some(found));
            }
        }
        self.failed.push(chosen.clone());
        Ok(None)
    }
}
