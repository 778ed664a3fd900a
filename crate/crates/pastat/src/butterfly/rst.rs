//! The robust stationarity test: rounding at halving radii until the net
//! radius drops below the separation radius.

use num_traits::Signed;
use serde::Serialize;

use crate::butterfly::net::{rnd, Rounded};
use crate::butterfly::oracle::{oracle_dispatch, ExactOracle, OracleAnswer};
use crate::caps::Caps;
use crate::error::{check_dim, Error, Result};
use crate::pafunc::{DcFunction, ExtRational};
use crate::rational::{ceil_abs_log2, norm_sq, pow2, sub, to_q, RVector, Rational, Q};

/// One rounding step of the robust test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RstStep {
    pub k: u64,
    /// Net radius `2^-k δ`.
    pub delta_k: Q,
    pub feasible: bool,
    /// The rounded point, when the net is non-empty.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidate: Option<Vec<Q>>,
    /// `‖ŵ - w‖²`, when the net is non-empty.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dist_sq: Option<Q>,
    /// `"yes"`, `"no"`, `"refused"`, or `"skipped"` when the candidate is
    /// missing or too far.
    pub oracle: String,
}

/// Result of the robust test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RstVerdict {
    /// A certificate within `δ` of `w` accepted by the oracle.
    True { certificate: RVector },
    /// No stationary point within `min{δ, 2δ_sep(w*)}` of `w`, in the sense
    /// of the robust test.
    False,
    /// The oracle declined to answer at some candidate.
    Refused { reason: String },
}

/// Verdict together with its iteration trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RstOutcome {
    pub verdict: RstVerdict,
    pub trace: Vec<RstStep>,
    /// `δ_sep(w)`.
    pub delta_sep: ExtRational,
}

impl RstOutcome {
    /// Number of rounding steps performed.
    pub fn iterations(&self) -> u64 {
        self.trace.len() as u64
    }

    /// JSON object with the verdict and the full trace.
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = match &self.verdict {
            RstVerdict::True { certificate } => {
                serde_json::json!({"verdict": "true", "certificate": to_q(certificate)})
            }
            RstVerdict::False => serde_json::json!({"verdict": "false"}),
            RstVerdict::Refused { reason } => serde_json::json!({"verdict": "refused", "reason": reason}),
        };
        v["delta_sep"] = serde_json::Value::String(self.delta_sep.to_string());
        v["trace"] = serde_json::to_value(&self.trace).expect("trace serializes");
        v
    }
}

/// `1 + ⌈|log₂ δ|⌉ + ⌈|log₂ δ_sep|⌉`, or `1` when `δ_sep = ∞`.
pub fn rst_iteration_bound(delta: &Rational, delta_sep: &ExtRational) -> u64 {
    match delta_sep {
        ExtRational::Infinite => 1,
        ExtRational::Finite(s) => 1 + ceil_abs_log2(delta) + ceil_abs_log2(s),
    }
}

/// Decides whether `w` is within `δ` of an `ε`-stationary point of `f`, up
/// to the separation radius, by rounding onto nets of radius `2^-k δ`.
pub fn rst(
    f: &DcFunction,
    w: &[Rational],
    eps: &Rational,
    delta: &Rational,
    oracle: ExactOracle,
    caps: &Caps,
) -> Result<RstOutcome> {
    check_dim(f.dim(), w.len())?;
    if !delta.is_positive() {
        return Err(Error::Invalid("δ must be positive".into()));
    }
    if eps.is_negative() {
        return Err(Error::Invalid("ε must be nonnegative".into()));
    }
    let delta_sep = f.delta_sep(w)?;
    let delta_sq = delta * delta;
    let mut trace = Vec::new();
    let mut k: u64 = 0;
    loop {
        let delta_k = delta * pow2(-(k as i64));
        let mut step = RstStep {
            k,
            delta_k: Q(delta_k.clone()),
            feasible: false,
            candidate: None,
            dist_sq: None,
            oracle: "skipped".into(),
        };
        if let Rounded::Point(p) = rnd(f, w, &delta_k)? {
            let d2 = norm_sq(&sub(&p, w));
            step.feasible = true;
            step.candidate = Some(to_q(&p));
            step.dist_sq = Some(Q(d2.clone()));
            if d2 <= delta_sq {
                let answer = oracle_dispatch(oracle, f, &p, eps, caps)?;
                step.oracle = match &answer {
                    OracleAnswer::Yes => "yes",
                    OracleAnswer::No => "no",
                    OracleAnswer::Refused(_) => "refused",
                }
                .into();
                trace.push(step);
                match answer {
                    OracleAnswer::Yes => {
                        return Ok(RstOutcome {
                            verdict: RstVerdict::True { certificate: p },
                            trace,
                            delta_sep,
                        })
                    }
                    OracleAnswer::Refused(reason) => {
                        return Ok(RstOutcome {
                            verdict: RstVerdict::Refused { reason },
                            trace,
                            delta_sep,
                        })
                    }
                    OracleAnswer::No => {}
                }
            } else {
                trace.push(step);
            }
        } else {
            trace.push(step);
        }
        k += 1;
        if delta_sep.ge_rational(&(delta * pow2(-(k as i64) - 2))) {
            return Ok(RstOutcome {
                verdict: RstVerdict::False,
                trace,
                delta_sep,
            });
        }
    }
}
