//! Exact stationarity testing for continuous piecewise affine functions.
//!
//! Functions are given as differences of multi-composite convex functions
//! ([`pafunc::DcFunction`]) or in Max-Min form ([`pafunc::MaxMinFunction`]).
//! All arithmetic is exact over [`rational::Rational`].

pub mod apps;
pub mod butterfly;
pub mod caps;
pub mod cli;
pub mod error;
pub mod exactsolve;
pub mod hardgen;
pub mod io;
pub mod pafunc;
pub mod polytope;
pub mod rational;
pub mod sgm;
pub mod subdiff;

pub use caps::Caps;
pub use error::{Error, Result};
pub use rational::{RMatrix, RVector, Rational};
