//! Subgradient method on DC functions with a robust stationarity test as
//! the stopping rule.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::butterfly::{rst, ExactOracle, RstVerdict};
use crate::caps::Caps;
use crate::error::{check_dim, Error, Result};
use crate::pafunc::DcFunction;
use crate::rational::{axpy, parse_rational, to_q, RVector, Rational, Q};

/// Step sizes `t_k` for `k = 1, 2, …`, all rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepSchedule {
    /// `t_k = base`.
    Constant(Rational),
    /// `t_k = base / k`.
    Harmonic(Rational),
    /// `t_k = base / ⌈√k⌉`.
    InvSqrt(Rational),
}

impl StepSchedule {
    /// Step size of iteration `k ≥ 1`.
    pub fn step(&self, k: u64) -> Rational {
        let k = BigInt::from(k.max(1));
        match self {
            StepSchedule::Constant(b) => b.clone(),
            StepSchedule::Harmonic(b) => b / Rational::from_integer(k),
            StepSchedule::InvSqrt(b) => {
                let s = k.sqrt();
                let c = if &s * &s == k { s } else { s + 1 };
                b / Rational::from_integer(c)
            }
        }
    }

    fn base(&self) -> &Rational {
        match self {
            StepSchedule::Constant(b) | StepSchedule::Harmonic(b) | StepSchedule::InvSqrt(b) => b,
        }
    }

    /// Parses `const:B`, `harmonic:B` or `sqrt:B`; a bare rational means a
    /// constant step.
    pub fn parse(s: &str) -> Result<Self> {
        let (kind, base) = s.split_once(':').unwrap_or(("const", s));
        let b = parse_rational(base)?;
        match kind {
            "const" | "constant" => Ok(StepSchedule::Constant(b)),
            "harmonic" | "1/k" => Ok(StepSchedule::Harmonic(b)),
            "sqrt" | "1/sqrt" => Ok(StepSchedule::InvSqrt(b)),
            other => Err(Error::Parse(format!("unknown step schedule {other:?}"))),
        }
    }
}

/// Configuration of [`run`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SgmConfig {
    pub schedule: StepSchedule,
    pub max_iters: u64,
    pub eps: Rational,
    pub delta: Rational,
    pub oracle: ExactOracle,
    /// Run the robust test every `period` iterations.
    pub period: u64,
}

impl SgmConfig {
    fn validate(&self) -> Result<()> {
        if !self.schedule.base().is_positive() || !self.delta.is_positive() || self.eps.is_negative() {
            return Err(Error::Invalid("step base and δ must be positive, ε nonnegative".into()));
        }
        if self.period == 0 {
            return Err(Error::Invalid("check period must be at least 1".into()));
        }
        Ok(())
    }
}

/// Outcome of one stopping-rule check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckResult {
    True,
    False,
    Refused,
}

/// One iterate of the method.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SgmStep {
    pub k: u64,
    pub w: Vec<Q>,
    /// Subgradient used to leave `w`; absent at the final iterate.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subgradient: Option<Vec<Q>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<Q>,
    /// Stopping-rule result when a check ran at this iterate.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<Q>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Iterates, subgradients and stopping-rule results of a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SgmTrace {
    pub steps: Vec<SgmStep>,
    /// Certificate of the first accepted check, if any.
    pub certificate: Option<RVector>,
}

impl SgmTrace {
    /// Whether the run stopped on an accepted check.
    pub fn halted(&self) -> bool {
        self.certificate.is_some()
    }

    /// Number of subgradient steps taken.
    pub fn iterations(&self) -> u64 {
        self.steps.iter().filter(|s| s.subgradient.is_some()).count() as u64
    }

    /// One JSON object per iterate.
    pub fn to_json_lines(&self) -> String {
        self.steps
            .iter()
            .map(|s| serde_json::to_string(s).expect("step serializes") + "\n")
            .collect()
    }
}

/// The deterministic subgradient `s_h - s_g`, following the lowest-index
/// active child at every max node.
pub fn pick_subgradient(f: &DcFunction, w: &[Rational]) -> Result<RVector> {
    f.first_active_gradient(w)
}

/// Runs `w_{k+1} = w_k - t_{k+1} s_k`, checking the stopping rule every
/// `period` iterations starting at `w_0`, until a check succeeds or
/// `max_iters` steps are taken.
pub fn run(f: &DcFunction, w0: &[Rational], cfg: &SgmConfig, caps: &Caps) -> Result<SgmTrace> {
    check_dim(f.dim(), w0.len())?;
    cfg.validate()?;
    let mut w = w0.to_vec();
    let mut steps = Vec::new();
    let mut k = 0u64;
    loop {
        let mut step = SgmStep {
            k,
            w: to_q(&w),
            subgradient: None,
            step: None,
            check: None,
            certificate: None,
            reason: None,
        };
        if k.is_multiple_of(cfg.period) {
            let out = rst(f, &w, &cfg.eps, &cfg.delta, cfg.oracle, caps)?;
            match out.verdict {
                RstVerdict::True { certificate } => {
                    step.check = Some(CheckResult::True);
                    step.certificate = Some(to_q(&certificate));
                    steps.push(step);
                    return Ok(SgmTrace {
                        steps,
                        certificate: Some(certificate),
                    });
                }
                RstVerdict::False => step.check = Some(CheckResult::False),
                RstVerdict::Refused { reason } => {
                    step.check = Some(CheckResult::Refused);
                    step.reason = Some(reason);
                }
            }
        }
        if k == cfg.max_iters {
            steps.push(step);
            return Ok(SgmTrace {
                steps,
                certificate: None,
            });
        }
        let s = pick_subgradient(f, &w)?;
        let t = cfg.schedule.step(k + 1);
        step.subgradient = Some(to_q(&s));
        step.step = Some(Q(t.clone()));
        steps.push(step);
        w = axpy(&w, &-t, &s);
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pafunc::{Affine, McFunction};
    use crate::rational::{frac, int, ivec};

    fn abs() -> DcFunction {
        DcFunction::convex(
            McFunction::max_of(1, vec![Affine::linear(ivec(&[1])), Affine::linear(ivec(&[-1]))]).unwrap(),
        )
    }

    fn cfg(max_iters: u64) -> SgmConfig {
        SgmConfig {
            schedule: StepSchedule::Constant(frac(1, 4)),
            max_iters,
            eps: int(0),
            delta: frac(1, 10),
            oracle: ExactOracle::ClarkeBrute,
            period: 1,
        }
    }

    #[test]
    fn abs_halts_at_origin() {
        let t = run(&abs(), &[int(1)], &cfg(16), &Caps::default()).unwrap();
        assert_eq!(t.certificate, Some(vec![int(0)]));
        assert_eq!(t.iterations(), 4);
        assert_eq!(t.to_json_lines().lines().count(), 5);
    }

    #[test]
    fn tie_break_takes_first_branch() {
        assert_eq!(pick_subgradient(&abs(), &[int(0)]).unwrap(), ivec(&[1]));
    }

    #[test]
    fn schedules() {
        assert_eq!(StepSchedule::Harmonic(int(1)).step(4), frac(1, 4));
        assert_eq!(StepSchedule::InvSqrt(int(1)).step(4), frac(1, 2));
        assert_eq!(StepSchedule::InvSqrt(int(1)).step(5), frac(1, 3));
        assert_eq!(StepSchedule::parse("harmonic:1/2").unwrap(), StepSchedule::Harmonic(frac(1, 2)));
        assert_eq!(StepSchedule::parse("0.25").unwrap(), StepSchedule::Constant(frac(1, 4)));
    }
}
