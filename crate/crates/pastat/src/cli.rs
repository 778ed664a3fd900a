//! The `pa-stat` command line: loads function, polytope, CNF and dataset
//! files, runs the library's tests and prints verdicts.
//!
//! Exit codes: 0 when a verdict was computed (whatever it is), 2 on input
//! errors, 3 when a cap was exceeded or an oracle refused.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::apps::{relu2_qualification, svm_pa_part, LabeledDataset, ReluUnit};
use crate::butterfly::{rst, ExactOracle, RstVerdict};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exactsolve::min_norm_point;
use crate::hardgen::{gen_dcc, gen_dcf, gen_maxmin_3sat, gen_maxmin_3sat_clarke, random_cnf, Cnf3, ParMaxInstance};
use crate::io::{function_from_json, function_to_json, polytope_from_json};
use crate::pafunc::{DcFunction, PaFunction};
use crate::polytope::{compatible, par_trivial_intersection, zonotope_transversal, Polytope, VPolytope};
use crate::rational::{fmt_rational, fmt_vec, from_q, parse_rational, parse_vec, to_q, RVector, Rational, Q};
use crate::sgm::{run as run_sgm, SgmConfig, StepSchedule};
use crate::subdiff::{
    clarke_subdiff_brute, dc_critical_nearest, dc_difference_vertices, frechet_stationary, subdiff_vertices,
    transversal_at, TransversalMethod,
};

/// Exact stationarity testing for piecewise affine functions.
#[derive(Parser, Debug)]
#[command(name = "pa-stat", version)]
pub struct Cli {
    /// Print machine-readable JSON instead of a summary.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized fixture generation.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

/// Location of an input file; `-` or absent reads standard input.
#[derive(clap::Args, Debug, Clone)]
pub struct FnArg {
    /// Function file (JSON); `-` or omitted reads standard input.
    #[arg(long = "fn", value_name = "FILE")]
    pub file: Option<String>,
}

/// Point on the command line, e.g. `0.05,1/2`. A single value is repeated
/// in every coordinate.
#[derive(clap::Args, Debug, Clone)]
pub struct PointArg {
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    pub point: String,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Notion {
    /// Clarke subdifferential of the function.
    Clarke,
    /// `∂h(w) - ∂g(w)` of a DC pair.
    Dc,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExactNotion {
    Clarke,
    Frechet,
    DcCritical,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleArg {
    DcCritical,
    ClarkeSumRule,
    ClarkeBrute,
    FrechetBrute,
}

impl From<OracleArg> for ExactOracle {
    fn from(o: OracleArg) -> Self {
        match o {
            OracleArg::DcCritical => ExactOracle::DcCritical,
            OracleArg::ClarkeSumRule => ExactOracle::ClarkeSumRule,
            OracleArg::ClarkeBrute => ExactOracle::ClarkeBrute,
            OracleArg::FrechetBrute => ExactOracle::FrechetBrute,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SatForm {
    /// `f_F` with one group per clause.
    Maxmin,
    /// `f_C`, whose Clarke distance at 0 separates SAT from UNSAT.
    MaxminClarke,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParMaxForm {
    Dcf,
    Dcc,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    Svm,
    Relu2,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodArg {
    Vrep,
    Lprep,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Value of the function at a point.
    Eval {
        #[command(flatten)]
        f: FnArg,
        #[command(flatten)]
        p: PointArg,
    },
    /// One-sided directional derivative.
    Dirderiv {
        #[command(flatten)]
        f: FnArg,
        #[command(flatten)]
        p: PointArg,
        #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
        dir: String,
    },
    /// Vertices of a subdifferential.
    Subdiff {
        #[command(flatten)]
        f: FnArg,
        #[command(flatten)]
        p: PointArg,
        #[arg(long, value_enum, default_value_t = Notion::Clarke)]
        notion: Notion,
    },
    /// Squared distance from the origin to a subdifferential.
    Dist {
        #[command(flatten)]
        f: FnArg,
        #[command(flatten)]
        p: PointArg,
        #[arg(long, value_enum, default_value_t = Notion::Clarke)]
        notion: Notion,
    },
    /// Exact ε-stationarity test at a point.
    TestExact {
        #[command(flatten)]
        f: FnArg,
        #[command(flatten)]
        p: PointArg,
        #[arg(long, value_enum, default_value_t = ExactNotion::Clarke)]
        notion: ExactNotion,
        #[arg(long, default_value = "0")]
        eps: String,
    },
    /// Robust (ε, δ) stationarity test.
    TestRobust {
        #[command(flatten)]
        f: FnArg,
        #[command(flatten)]
        p: PointArg,
        #[arg(long, default_value = "0")]
        eps: String,
        #[arg(long)]
        delta: String,
        #[arg(long, value_enum, default_value_t = OracleArg::ClarkeBrute)]
        oracle: OracleArg,
    },
    /// Compatibility of two polytopes.
    CheckCompat {
        #[arg(long, value_name = "FILE")]
        a: String,
        #[arg(long, value_name = "FILE")]
        b: String,
    },
    /// Transversality of two polytopes, or of `∂h(w)` and `∂g(w)`.
    CheckTransversal {
        #[arg(long, value_name = "FILE", requires = "b", conflicts_with_all = ["file", "point"])]
        a: Option<String>,
        #[arg(long, value_name = "FILE")]
        b: Option<String>,
        #[arg(long = "fn", value_name = "FILE")]
        file: Option<String>,
        #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long, value_enum, default_value_t = MethodArg::Vrep)]
        method: MethodArg,
    },
    /// Separation radius `δ_sep(w)` and Lipschitz bound `R`.
    DeltaSep {
        #[command(flatten)]
        f: FnArg,
        #[command(flatten)]
        p: PointArg,
    },
    /// Max-Min function of a 3-CNF (DIMACS file, or random with --seed).
    #[command(name = "gen-3sat")]
    Gen3sat {
        #[arg(long, value_name = "FILE")]
        cnf: Option<String>,
        #[arg(long, value_enum, default_value_t = SatForm::MaxminClarke)]
        form: SatForm,
        #[arg(long, default_value_t = 3)]
        vars: usize,
        #[arg(long, default_value_t = 3)]
        clauses: usize,
    },
    /// DC function of an ℓ1-maximization instance (file, or random with --seed).
    GenParmax {
        #[arg(long, value_name = "FILE")]
        instance: Option<String>,
        #[arg(long, value_enum, default_value_t = ParMaxForm::Dcf)]
        form: ParMaxForm,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 4)]
        max_alpha: u64,
    },
    /// Subgradient method with the robust test as stopping rule.
    RunSgm {
        #[command(flatten)]
        f: FnArg,
        #[command(flatten)]
        p: PointArg,
        /// `const:B`, `harmonic:B` or `sqrt:B`.
        #[arg(long, default_value = "const:1/4")]
        step: String,
        #[arg(long, default_value_t = 100)]
        max_iters: u64,
        #[arg(long, default_value = "0")]
        eps: String,
        #[arg(long)]
        delta: String,
        #[arg(long, value_enum, default_value_t = OracleArg::ClarkeBrute)]
        oracle: OracleArg,
        #[arg(long, default_value_t = 1)]
        period: u64,
    },
    /// Sum-rule qualifications of the SVM loss or a two-layer ReLU network.
    CheckQualification {
        #[arg(long, value_name = "FILE")]
        data: String,
        #[arg(long, value_enum)]
        model: Model,
        /// SVM margin.
        #[arg(long, default_value = "1")]
        rho: String,
        /// SVM weights (augmented).
        #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
        point: Option<String>,
        /// ReLU parameters: `{"units":[{"w":[…],"u":…}],"p":[…]}`.
        #[arg(long, value_name = "FILE")]
        params: Option<String>,
    },
}

/// Text printed for one command.
struct Output {
    json: Value,
    human: String,
    code: i32,
}

impl Output {
    fn new(json: Value, human: String) -> Self {
        Output { json, human, code: 0 }
    }
}

struct Ctx<'a> {
    stdin: &'a mut dyn Read,
    caps: Caps,
    seed: u64,
}

impl Ctx<'_> {
    fn read(&mut self, path: Option<&str>) -> Result<String> {
        match path {
            None | Some("-") => {
                let mut s = String::new();
                self.stdin
                    .read_to_string(&mut s)
                    .map_err(|e| Error::Parse(format!("reading standard input: {e}")))?;
                Ok(s)
            }
            Some(p) => std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("reading {p}: {e}"))),
        }
    }

    fn function(&mut self, f: &FnArg) -> Result<PaFunction> {
        function_from_json(&self.read(f.file.as_deref())?)
    }

    fn polytope(&mut self, path: &str) -> Result<VPolytope> {
        polytope_from_json(&self.read(Some(path))?)?.to_vpolytope(&self.caps)
    }
}

fn point(s: &str, dim: usize) -> Result<RVector> {
    let v = parse_vec(s)?;
    if v.len() == 1 && dim > 1 {
        return Ok(vec![v[0].clone(); dim]);
    }
    crate::error::check_dim(dim, v.len())?;
    Ok(v)
}

fn as_dc(f: &PaFunction, what: &str) -> Result<DcFunction> {
    f.as_dc()
        .ok_or_else(|| Error::Invalid(format!("{what} needs a multi-composite or DC function")))
}

fn vertices_json(p: &VPolytope) -> Value {
    json!(p.vertices().iter().map(|v| to_q(v)).collect::<Vec<_>>())
}

fn vertices_human(p: &VPolytope) -> String {
    p.vertices().iter().map(|v| fmt_vec(v)).collect::<Vec<_>>().join("\n")
}

fn subdifferential(f: &PaFunction, w: &[Rational], notion: Notion, caps: &Caps) -> Result<VPolytope> {
    match (notion, f) {
        (Notion::Dc, _) => dc_difference_vertices(&as_dc(f, "the dc notion")?, w, caps),
        (Notion::Clarke, PaFunction::Mc(h)) => subdiff_vertices(h, w, caps),
        (Notion::Clarke, _) => clarke_subdiff_brute(f, w, caps),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Deserialize)]
struct ReluParams {
    units: Vec<ReluUnitJson>,
    p: Vec<Q>,
}

#[derive(Deserialize)]
struct ReluUnitJson {
    w: Vec<Q>,
    u: Q,
}

#[derive(Deserialize)]
struct ParMaxJson {
    n: usize,
    alpha: u64,
    ys: Vec<Vec<i8>>,
}

fn execute(cmd: &Command, cx: &mut Ctx) -> Result<Output> {
    let caps = cx.caps.clone();
    Ok(match cmd {
        Command::Eval { f, p } => {
            let f = cx.function(f)?;
            let v = f.eval(&point(&p.point, f.dim())?)?;
            Output::new(json!({"value": Q(v.clone())}), fmt_rational(&v))
        }
        Command::Dirderiv { f, p, dir } => {
            let f = cx.function(f)?;
            let v = f.dir_deriv(&point(&p.point, f.dim())?, &point(dir, f.dim())?)?;
            Output::new(json!({"value": Q(v.clone())}), fmt_rational(&v))
        }
        Command::Subdiff { f, p, notion } => {
            let f = cx.function(f)?;
            let s = subdifferential(&f, &point(&p.point, f.dim())?, *notion, &caps)?;
            Output::new(json!({"vertices": vertices_json(&s)}), vertices_human(&s))
        }
        Command::Dist { f, p, notion } => {
            let f = cx.function(f)?;
            let s = subdifferential(&f, &point(&p.point, f.dim())?, *notion, &caps)?;
            let m = min_norm_point(s.vertices())?;
            let d2 = m.norm_sq();
            Output::new(
                json!({"dist_sq": Q(d2.clone()), "nearest": to_q(&m.point)}),
                fmt_rational(&d2),
            )
        }
        Command::TestExact { f, p, notion, eps } => {
            let f = cx.function(f)?;
            let w = point(&p.point, f.dim())?;
            let eps = parse_rational(eps)?;
            match notion {
                ExactNotion::Frechet => {
                    if !num_traits::Zero::is_zero(&eps) {
                        return Err(Error::Refused("the Fréchet test only decides ε = 0".into()));
                    }
                    let r = frechet_stationary(&f, &w, &caps)?;
                    let mut j = json!({"stationary": r.stationary});
                    if let Some(d) = &r.descent {
                        j["descent"] = json!(to_q(d));
                    }
                    let human = match &r.descent {
                        Some(d) => format!("stationary: no (descent direction {})", fmt_vec(d)),
                        None => "stationary: yes".into(),
                    };
                    Output::new(j, human)
                }
                ExactNotion::Clarke | ExactNotion::DcCritical => {
                    let nearest = if *notion == ExactNotion::DcCritical {
                        dc_critical_nearest(&as_dc(&f, "dc-critical")?, &w, &caps)?
                    } else {
                        min_norm_point(subdifferential(&f, &w, Notion::Clarke, &caps)?.vertices())?
                    };
                    let d2 = nearest.norm_sq();
                    let ok = d2 <= &eps * &eps;
                    Output::new(
                        json!({"stationary": ok, "dist_sq": Q(d2.clone()), "nearest": to_q(&nearest.point)}),
                        format!("stationary: {} (dist^2 = {})", yes_no(ok), fmt_rational(&d2)),
                    )
                }
            }
        }
        Command::TestRobust {
            f,
            p,
            eps,
            delta,
            oracle,
        } => {
            let f = as_dc(&cx.function(f)?, "test-robust")?;
            let w = point(&p.point, f.dim())?;
            let out = rst(&f, &w, &parse_rational(eps)?, &parse_rational(delta)?, (*oracle).into(), &caps)?;
            let (human, code) = match &out.verdict {
                RstVerdict::True { certificate } => (format!("verdict: true\ncertificate: {}", fmt_vec(certificate)), 0),
                RstVerdict::False => ("verdict: false".to_string(), 0),
                RstVerdict::Refused { reason } => (format!("verdict: refused ({reason})"), 3),
            };
            let human = format!("{human}\niterations: {}", out.iterations());
            Output {
                json: out.to_json(),
                human,
                code,
            }
        }
        Command::CheckCompat { a, b } => {
            let pa = cx.polytope(a)?;
            let pb = cx.polytope(b)?;
            let c = compatible(&pa, &pb)?;
            let violations: Vec<Value> = c
                .violations
                .iter()
                .map(|(u, v)| json!({"a": to_q(u), "b": to_q(v)}))
                .collect();
            let mut human = format!("compatible: {}", yes_no(c.compatible));
            for (u, v) in &c.violations {
                human.push_str(&format!("\nviolation: a = {}, b = {}", fmt_vec(u), fmt_vec(v)));
            }
            Output::new(json!({"compatible": c.compatible, "violations": violations}), human)
        }
        Command::CheckTransversal {
            a,
            b,
            file,
            point: pt,
            method,
        } => {
            let t = match (a, b) {
                (Some(a), Some(b)) => {
                    let ra = polytope_from_json(&cx.read(Some(a))?)?;
                    let rb = polytope_from_json(&cx.read(Some(b))?)?;
                    match (&ra, &rb) {
                        (Polytope::Zonotope(za), Polytope::Zonotope(zb)) => zonotope_transversal(za, zb)?,
                        _ => par_trivial_intersection(&ra.to_vpolytope(&caps)?, &rb.to_vpolytope(&caps)?)?,
                    }
                }
                _ => {
                    let pt = pt
                        .as_deref()
                        .ok_or_else(|| Error::Invalid("give --a/--b polytopes or --fn with --point".into()))?;
                    let f = as_dc(&cx.function(&FnArg { file: file.clone() })?, "check-transversal")?;
                    let m = match method {
                        MethodArg::Vrep => TransversalMethod::Vrep,
                        MethodArg::Lprep => TransversalMethod::Lprep,
                    };
                    transversal_at(&f, &point(pt, f.dim())?, m, &caps)?
                }
            };
            Output::new(json!({"transversal": t}), format!("transversal: {}", yes_no(t)))
        }
        Command::DeltaSep { f, p } => {
            let f = as_dc(&cx.function(f)?, "delta-sep")?;
            let ds = f.delta_sep(&point(&p.point, f.dim())?)?;
            let r = f.lipschitz_r();
            Output::new(
                json!({"delta_sep": ds.to_string(), "r": Q(r.clone())}),
                format!("delta_sep: {ds}\nR: {}", fmt_rational(&r)),
            )
        }
        Command::Gen3sat {
            cnf,
            form,
            vars,
            clauses,
        } => {
            let cnf = match cnf {
                Some(path) => Cnf3::parse_dimacs(&cx.read(Some(path))?)?,
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(cx.seed);
                    Cnf3::new(*vars, random_cnf(&mut rng, *vars, *clauses).clauses)?
                }
            };
            let f = match form {
                SatForm::Maxmin => gen_maxmin_3sat(&cnf)?,
                SatForm::MaxminClarke => gen_maxmin_3sat_clarke(&cnf)?,
            };
            let text = function_to_json(&PaFunction::MaxMin(f));
            Output::new(serde_json::from_str(&text).expect("valid JSON"), text)
        }
        Command::GenParmax {
            instance,
            form,
            n,
            m,
            max_alpha,
        } => {
            let inst = match instance {
                Some(path) => {
                    let j: ParMaxJson =
                        serde_json::from_str(&cx.read(Some(path))?).map_err(|e| Error::Parse(e.to_string()))?;
                    ParMaxInstance::new(j.n, j.alpha, j.ys)?
                }
                None => {
                    if *m == 0 || m > n || *max_alpha == 0 {
                        return Err(Error::Invalid("need 1 ≤ m ≤ n and max-alpha ≥ 1".into()));
                    }
                    let mut rng = ChaCha8Rng::seed_from_u64(cx.seed);
                    ParMaxInstance::random(&mut rng, *n, *m, *max_alpha)
                }
            };
            let f = match form {
                ParMaxForm::Dcf => gen_dcf(&inst)?,
                ParMaxForm::Dcc => gen_dcc(&inst)?,
            };
            let text = function_to_json(&PaFunction::Dc(f));
            Output::new(serde_json::from_str(&text).expect("valid JSON"), text)
        }
        Command::RunSgm {
            f,
            p,
            step,
            max_iters,
            eps,
            delta,
            oracle,
            period,
        } => {
            let f = as_dc(&cx.function(f)?, "run-sgm")?;
            let w0 = point(&p.point, f.dim())?;
            let cfg = SgmConfig {
                schedule: StepSchedule::parse(step)?,
                max_iters: *max_iters,
                eps: parse_rational(eps)?,
                delta: parse_rational(delta)?,
                oracle: (*oracle).into(),
                period: *period,
            };
            let t = run_sgm(&f, &w0, &cfg, &caps)?;
            let human = match &t.certificate {
                Some(c) => format!("halted after {} iterations\ncertificate: {}", t.iterations(), fmt_vec(c)),
                None => format!("no certificate after {} iterations", t.iterations()),
            };
            let lines = t.to_json_lines();
            Output {
                json: Value::String(lines),
                human,
                code: 0,
            }
        }
        Command::CheckQualification {
            data,
            model,
            rho,
            point: pt,
            params,
        } => {
            let data = LabeledDataset::from_json(&cx.read(Some(data))?)?;
            let report = match model {
                Model::Svm => {
                    let pt = pt.as_deref().ok_or_else(|| Error::Invalid("svm needs --point".into()))?;
                    svm_pa_part(&data, &parse_rational(rho)?, &point(pt, data.dim())?, &caps)?.1
                }
                Model::Relu2 => {
                    let path = params.as_deref().ok_or_else(|| Error::Invalid("relu2 needs --params".into()))?;
                    let j: ReluParams =
                        serde_json::from_str(&cx.read(Some(path))?).map_err(|e| Error::Parse(e.to_string()))?;
                    let units: Vec<ReluUnit> = j
                        .units
                        .into_iter()
                        .map(|u| ReluUnit {
                            w: from_q(u.w),
                            u: u.u.0,
                        })
                        .collect();
                    relu2_qualification(&data, &units, &from_q(j.p), &caps)?
                }
            };
            let human = format!(
                "general position: {}\nsurjectivity: {}\nspan condition: {}",
                yes_no(report.general_position),
                yes_no(report.surjectivity),
                yes_no(report.span_condition)
            );
            Output::new(serde_json::to_value(&report).expect("report serializes"), human)
        }
    })
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } | Error::Refused(_) => 3,
        _ => 2,
    }
}

/// Runs the command line with explicit streams; returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return code;
        }
    };
    let caps = match Caps::from_env() {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(stderr, "error: PASTAT_CAPS: {e}");
            return 2;
        }
    };
    let mut cx = Ctx {
        stdin,
        caps,
        seed: cli.seed,
    };
    match execute(&cli.command, &mut cx) {
        Ok(out) => {
            let text = match (&out.json, cli.json) {
                (Value::String(s), true) => s.trim_end().to_string(),
                (j, true) => j.to_string(),
                (_, false) => out.human,
            };
            let _ = writeln!(stdout, "{text}");
            out.code
        }
        Err(e) => {
            let code = exit_code(&e);
            if cli.json {
                let _ = writeln!(stdout, "{}", json!({"error": e.to_string(), "code": code}));
            }
            let _ = writeln!(stderr, "error: {e}");
            code
        }
    }
}

/// Entry point of the `pa-stat` binary.
pub fn main() -> i32 {
    run(
        std::env::args_os(),
        &mut std::io::stdin().lock(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], input: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["pa-stat"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut input.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    const ABS: &str = r#"{"kind":"mc","dim":1,"tree":{"max":[{"leaf":{"x":[1]}},{"leaf":{"x":[-1]}}]}}"#;

    #[test]
    fn eval_and_errors() {
        assert_eq!(call(&["eval", "--point", "-0.5"], ABS), (0, "1/2\n".into(), String::new()));
        assert_eq!(call(&["eval", "--point", "1,2"], ABS).0, 2);
        assert_eq!(call(&["eval", "--point", "1"], "{").0, 2);
        assert_eq!(call(&["nope"], "").0, 2);
    }

    #[test]
    fn robust_json() {
        let (code, out, _) = call(
            &["--json", "test-robust", "--point", "0.05", "--eps", "0", "--delta", "1/5", "--oracle", "clarke-brute"],
            ABS,
        );
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdict"], "true");
        assert_eq!(v["certificate"], json!(["0"]));
    }
}
