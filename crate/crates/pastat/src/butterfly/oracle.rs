//! Exact stationarity oracles used by the robust test.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exactsolve::min_norm_point;
use crate::pafunc::{DcFunction, PaFunction};
use crate::polytope::compatible;
use crate::rational::Rational;
use crate::subdiff::{
    clarke_subdiff_brute, dc_critical_dist_sq, frechet_stationary, subdiff_vertices, transversal_at,
    TransversalMethod,
};

/// Which notion of stationarity an oracle decides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExactOracle {
    /// `dist(0, ∂h(w) - ∂g(w)) ≤ ε`.
    DcCritical,
    /// The DC-critical test, answered only where the sum rule is certified by
    /// transversality or compatibility.
    ClarkeSumRule,
    /// `dist(0, ∂(h - g)(w)) ≤ ε` with the brute-force Clarke subdifferential.
    ClarkeBrute,
    /// `0 ∈ ∂̂(h - g)(w)`; only defined for `ε = 0`.
    FrechetBrute,
}

impl ExactOracle {
    /// Parses `dc-critical`, `clarke-sum-rule`, `clarke-brute` or
    /// `frechet-brute`.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "dc-critical" => Ok(ExactOracle::DcCritical),
            "clarke-sum-rule" => Ok(ExactOracle::ClarkeSumRule),
            "clarke-brute" => Ok(ExactOracle::ClarkeBrute),
            "frechet-brute" => Ok(ExactOracle::FrechetBrute),
            other => Err(Error::Parse(format!("unknown oracle {other:?}"))),
        }
    }
}

/// An oracle answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleAnswer {
    Yes,
    No,
    Refused(String),
}

impl OracleAnswer {
    fn from_bool(b: bool) -> Self {
        if b {
            OracleAnswer::Yes
        } else {
            OracleAnswer::No
        }
    }
}

/// Runs `oracle` on `f` at `w` with tolerance `ε`. Qualification failures
/// and cap overruns become [`OracleAnswer::Refused`]; other errors propagate.
pub fn oracle_dispatch(
    oracle: ExactOracle,
    f: &DcFunction,
    w: &[Rational],
    eps: &Rational,
    caps: &Caps,
) -> Result<OracleAnswer> {
    match answer(oracle, f, w, eps, caps) {
        Err(Error::CapExceeded { what, required, cap }) => Ok(OracleAnswer::Refused(format!(
            "cap exceeded for {what}: required {required}, cap {cap}"
        ))),
        Err(Error::Refused(reason)) => Ok(OracleAnswer::Refused(reason)),
        other => other,
    }
}

fn answer(oracle: ExactOracle, f: &DcFunction, w: &[Rational], eps: &Rational, caps: &Caps) -> Result<OracleAnswer> {
    let eps_sq = eps * eps;
    match oracle {
        ExactOracle::DcCritical => Ok(OracleAnswer::from_bool(dc_critical_dist_sq(f, w, caps)? <= eps_sq)),
        ExactOracle::ClarkeSumRule => {
            let qualified = transversal_at(f, w, TransversalMethod::Vrep, caps)? || {
                let a = subdiff_vertices(&f.h, w, caps)?;
                let b = subdiff_vertices(&f.g, w, caps)?;
                compatible(&a, &b)?.compatible
            };
            if !qualified {
                return Err(Error::Refused(
                    "sum rule not certified: subdifferentials neither transversal nor compatible".into(),
                ));
            }
            Ok(OracleAnswer::from_bool(dc_critical_dist_sq(f, w, caps)? <= eps_sq))
        }
        ExactOracle::ClarkeBrute => {
            let p = clarke_subdiff_brute(&PaFunction::Dc(f.clone()), w, caps)?;
            Ok(OracleAnswer::from_bool(min_norm_point(p.vertices())?.norm_sq() <= eps_sq))
        }
        ExactOracle::FrechetBrute => {
            if !eps.is_zero() {
                return Err(Error::Refused("the Fréchet oracle only decides ε = 0".into()));
            }
            Ok(OracleAnswer::from_bool(
                frechet_stationary(&PaFunction::Dc(f.clone()), w, caps)?.stationary,
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pafunc::{Affine, McFunction};
    use crate::rational::{int, ivec};

    fn abs() -> McFunction {
        McFunction::max_of(1, vec![Affine::linear(ivec(&[1])), Affine::linear(ivec(&[-1]))]).unwrap()
    }

    #[test]
    fn sum_rule_refuses_abs_minus_abs() {
        let f = DcFunction::new(abs(), abs()).unwrap();
        let c = Caps::default();
        let z = [int(0)];
        assert!(matches!(
            oracle_dispatch(ExactOracle::ClarkeSumRule, &f, &z, &int(0), &c).unwrap(),
            OracleAnswer::Refused(_)
        ));
        assert_eq!(oracle_dispatch(ExactOracle::DcCritical, &f, &z, &int(0), &c).unwrap(), OracleAnswer::Yes);
        assert_eq!(oracle_dispatch(ExactOracle::ClarkeBrute, &f, &z, &int(0), &c).unwrap(), OracleAnswer::Yes);
        assert!(matches!(
            oracle_dispatch(ExactOracle::FrechetBrute, &f, &z, &int(1), &c).unwrap(),
            OracleAnswer::Refused(_)
        ));
    }

    #[test]
    fn parse_names() {
        assert_eq!(ExactOracle::parse("clarke-brute").unwrap(), ExactOracle::ClarkeBrute);
        assert!(ExactOracle::parse("x").is_err());
    }
}
