//! Differences of multi-composite functions, the Lipschitz constant `R` and
//! the separation radius `δ_sep`.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Signed;

use crate::caps::Caps;
use crate::error::{check_dim, Result};
use crate::pafunc::mc::{Affine, McFunction};
use crate::rational::{fmt_rational, sub, RVector, Rational};

/// A rational or `+∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtRational {
    Finite(Rational),
    Infinite,
}

impl ExtRational {
    /// The finite value, if any.
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(q) => Some(q),
            ExtRational::Infinite => None,
        }
    }

    /// Whether `q ≤ self`.
    pub fn ge_rational(&self, q: &Rational) -> bool {
        match self {
            ExtRational::Finite(v) => q <= v,
            ExtRational::Infinite => true,
        }
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => a.cmp(b),
            (ExtRational::Finite(_), ExtRational::Infinite) => Ordering::Less,
            (ExtRational::Infinite, ExtRational::Finite(_)) => Ordering::Greater,
            (ExtRational::Infinite, ExtRational::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(q) => f.write_str(&fmt_rational(q)),
            ExtRational::Infinite => f.write_str("inf"),
        }
    }
}

/// `f = h - g` with `h`, `g` convex multi-composite functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DcFunction {
    pub h: McFunction,
    pub g: McFunction,
}

impl DcFunction {
    /// Pairs two functions of equal dimension.
    pub fn new(h: McFunction, g: McFunction) -> Result<Self> {
        check_dim(h.dim(), g.dim())?;
        Ok(DcFunction { h, g })
    }

    /// `h - 0`.
    pub fn convex(h: McFunction) -> Self {
        let g = McFunction::zero(h.dim());
        DcFunction { h, g }
    }

    /// Input dimension.
    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    /// Value at `w`.
    pub fn eval(&self, w: &[Rational]) -> Result<Rational> {
        Ok(self.h.eval(w)? - self.g.eval(w)?)
    }

    /// `h'(w; d) - g'(w; d)`.
    pub fn dir_deriv(&self, w: &[Rational], d: &[Rational]) -> Result<Rational> {
        Ok(self.h.dir_deriv(w, d)? - self.g.dir_deriv(w, d)?)
    }

    /// The directional-derivative function at `w` as a DC pair.
    pub fn dd_function(&self, w: &[Rational]) -> Result<DcFunction> {
        Ok(DcFunction {
            h: self.h.dd_function(w)?,
            g: self.g.dd_function(w)?,
        })
    }

    /// `R = max(R_h, R_g)` with per-leaf rational upper bounds on norms.
    pub fn lipschitz_r(&self) -> Rational {
        self.h.lipschitz_bound().max(self.g.lipschitz_bound())
    }

    /// `δ_sep(w) = min(γ_gap^h, γ_gap^g) / (12 R)`; `∞` when no max node has
    /// a strictly smaller child, or when `R = 0`.
    pub fn delta_sep(&self, w: &[Rational]) -> Result<ExtRational> {
        let gap = match (self.h.min_gap(w)?, self.g.min_gap(w)?) {
            (None, None) => return Ok(ExtRational::Infinite),
            (Some(a), None) | (None, Some(a)) => a,
            (Some(a), Some(b)) => a.min(b),
        };
        let r = self.lipschitz_r();
        if !r.is_positive() {
            return Ok(ExtRational::Infinite);
        }
        Ok(ExtRational::Finite(gap / (Rational::from_integer(12.into()) * r)))
    }

    /// Selection pieces `h_k - g_l` over all flattened pairs.
    pub fn flatten(&self, caps: &Caps) -> Result<Vec<Affine>> {
        let need = self.h.piece_count().saturating_mul(self.g.piece_count());
        Caps::check("flattened pieces", need, caps.flatten)?;
        let hp = self.h.flatten(caps)?;
        let gp = self.g.flatten(caps)?;
        Ok(hp
            .iter()
            .flat_map(|a| {
                gp.iter().map(move |b| Affine {
                    x: sub(&a.x, &b.x),
                    a: &a.a - &b.a,
                })
            })
            .collect())
    }

    /// `s_h - s_g` for the lowest-index active leaf chains of `h` and `g`.
    pub fn first_active_gradient(&self, w: &[Rational]) -> Result<RVector> {
        Ok(sub(&self.h.first_active_gradient(w)?, &self.g.first_active_gradient(w)?))
    }

    /// Whether `g` is an empty sum.
    pub fn is_convex(&self) -> bool {
        self.g.leaves().is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, ivec};

    fn relu(sign: i64) -> McFunction {
        McFunction::max_of(1, vec![Affine::linear(ivec(&[sign])), Affine::linear(ivec(&[0]))]).unwrap()
    }

    #[test]
    fn f2_is_identity() {
        let f = DcFunction::new(relu(1), relu(-1)).unwrap();
        assert_eq!(f.eval(&ivec(&[3])).unwrap(), int(3));
        assert_eq!(f.dir_deriv(&ivec(&[0]), &ivec(&[1])).unwrap(), int(1));
        assert_eq!(f.dir_deriv(&ivec(&[0]), &ivec(&[-1])).unwrap(), int(-1));
    }

    #[test]
    fn sum_rule_failure_derivative() {
        let two = McFunction::max_of(1, vec![Affine::linear(ivec(&[2])), Affine::linear(ivec(&[0]))]).unwrap();
        let f = DcFunction::new(two, relu(1)).unwrap();
        assert_eq!(f.dir_deriv(&ivec(&[0]), &ivec(&[-1])).unwrap(), int(0));
    }

    #[test]
    fn separation_radius() {
        let f = DcFunction::convex(relu(1));
        assert_eq!(f.lipschitz_r(), int(1));
        assert_eq!(f.delta_sep(&ivec(&[1])).unwrap(), ExtRational::Finite(frac(1, 12)));
        assert_eq!(f.delta_sep(&ivec(&[0])).unwrap(), ExtRational::Infinite);
        let g = DcFunction::new(relu(1), relu(1)).unwrap();
        assert_eq!(g.lipschitz_r(), int(1));
        assert!(ExtRational::Finite(int(5)) < ExtRational::Infinite);
    }

    #[test]
    fn pairwise_flatten() {
        let f = DcFunction::new(relu(1), relu(-1)).unwrap();
        let p = f.flatten(&Caps::default()).unwrap();
        assert_eq!(p.len(), 4);
        assert!(!f.is_convex());
        assert!(DcFunction::convex(relu(1)).is_convex());
    }
}
