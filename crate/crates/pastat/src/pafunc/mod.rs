//! Piecewise affine functions: multi-composite trees, DC pairs and the
//! Max-Min form, with exact evaluation and directional derivatives.

mod dc;
mod maxmin;
mod mc;

pub use dc::{DcFunction, ExtRational};
pub use maxmin::MaxMinFunction;
pub use mc::{Affine, McFunction, McNode, ValueTree};

use crate::caps::Caps;
use crate::error::Result;
use crate::rational::Rational;

/// Any supported piecewise affine function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PaFunction {
    Mc(McFunction),
    Dc(DcFunction),
    MaxMin(MaxMinFunction),
}

impl PaFunction {
    /// Input dimension.
    pub fn dim(&self) -> usize {
        match self {
            PaFunction::Mc(f) => f.dim(),
            PaFunction::Dc(f) => f.dim(),
            PaFunction::MaxMin(f) => f.dim(),
        }
    }

    /// Value at `w`.
    pub fn eval(&self, w: &[Rational]) -> Result<Rational> {
        match self {
            PaFunction::Mc(f) => f.eval(w),
            PaFunction::Dc(f) => f.eval(w),
            PaFunction::MaxMin(f) => f.eval(w),
        }
    }

    /// One-sided directional derivative `f'(w; d)`.
    pub fn dir_deriv(&self, w: &[Rational], d: &[Rational]) -> Result<Rational> {
        match self {
            PaFunction::Mc(f) => f.dir_deriv(w, d),
            PaFunction::Dc(f) => f.dir_deriv(w, d),
            PaFunction::MaxMin(f) => f.dir_deriv(w, d),
        }
    }

    /// The function as a DC pair, when it has multi-composite structure.
    pub fn as_dc(&self) -> Option<DcFunction> {
        match self {
            PaFunction::Mc(f) => Some(DcFunction::convex(f.clone())),
            PaFunction::Dc(f) => Some(f.clone()),
            PaFunction::MaxMin(_) => None,
        }
    }
}

/// Exhaustive affine selection pieces of `f`; `f(w)` equals one of them at
/// every `w`. Refuses when the distributed piece count exceeds the cap.
pub fn flatten_pieces(f: &PaFunction, caps: &Caps) -> Result<Vec<Affine>> {
    match f {
        PaFunction::Mc(h) => h.flatten(caps),
        PaFunction::Dc(d) => d.flatten(caps),
        PaFunction::MaxMin(m) => Ok(m.flatten()),
    }
}
