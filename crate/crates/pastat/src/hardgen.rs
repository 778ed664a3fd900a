//! Instance generators tying stationarity verdicts to combinatorial ground
//! truth: `ℓ1`-maximization over parallelotopes and 3SAT.

use num_traits::Zero;
use rand::Rng;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exactsolve::rank;
use crate::pafunc::{Affine, DcFunction, MaxMinFunction, McFunction, McNode};
use crate::rational::{frac, int, neg, scale, unit, RVector, Rational};

/// A CNF whose clauses have exactly three literals. Literals follow DIMACS:
/// `k` is variable `k`, `-k` its negation, with `1 ≤ k ≤ nvars`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cnf3 {
    pub nvars: usize,
    pub clauses: Vec<[i32; 3]>,
}

impl Cnf3 {
    /// Validates literal ranges; at least one variable and one clause.
    pub fn new(nvars: usize, clauses: Vec<[i32; 3]>) -> Result<Self> {
        if nvars == 0 || clauses.is_empty() {
            return Err(Error::Invalid("a CNF needs at least one variable and one clause".into()));
        }
        for c in &clauses {
            for &l in c {
                if l == 0 || l.unsigned_abs() as usize > nvars {
                    return Err(Error::Invalid(format!("literal {l} out of range for {nvars} variables")));
                }
            }
        }
        Ok(Cnf3 { nvars, clauses })
    }

    /// Parses the DIMACS subset with three literals per clause.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut nvars = None;
        let mut lits: Vec<i32> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 3 || parts[0] != "cnf" {
                    return Err(Error::Parse(format!("bad problem line: {line}")));
                }
                nvars = Some(parts[1].parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?);
                continue;
            }
            for tok in line.split_whitespace() {
                lits.push(tok.parse::<i32>().map_err(|e| Error::Parse(format!("{tok}: {e}")))?);
            }
        }
        let nvars = nvars.ok_or_else(|| Error::Parse("missing 'p cnf' line".into()))?;
        let mut clauses = Vec::new();
        let mut cur = Vec::new();
        for l in lits {
            if l == 0 {
                let c: [i32; 3] = cur
                    .as_slice()
                    .try_into()
                    .map_err(|_| Error::Parse(format!("clause with {} literals; exactly 3 required", cur.len())))?;
                clauses.push(c);
                cur.clear();
            } else {
                cur.push(l);
            }
        }
        if !cur.is_empty() {
            return Err(Error::Parse("unterminated clause".into()));
        }
        Cnf3::new(nvars, clauses)
    }

    /// DIMACS text.
    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.nvars, self.clauses.len());
        for c in &self.clauses {
            s.push_str(&format!("{} {} {} 0\n", c[0], c[1], c[2]));
        }
        s
    }

    /// Whether `x` satisfies every clause.
    pub fn eval(&self, x: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|&l| x[l.unsigned_abs() as usize - 1] == (l > 0)))
    }

    /// A satisfying assignment by exhaustive truth table, or `None`.
    pub fn solve(&self, caps: &Caps) -> Result<Option<Vec<bool>>> {
        Caps::check("SAT variables", self.nvars as u128, caps.sat_vars)?;
        for mask in 0u64..1 << self.nvars {
            let x: Vec<bool> = (0..self.nvars).map(|i| mask >> i & 1 == 1).collect();
            if self.eval(&x) {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }

    /// `y_i = ±e_k` for the literal at each clause position, in order.
    pub fn y_vectors(&self) -> Vec<RVector> {
        self.clauses
            .iter()
            .flatten()
            .map(|&l| {
                let e = unit(self.nvars, l.unsigned_abs() as usize - 1);
                if l > 0 {
                    e
                } else {
                    neg(&e)
                }
            })
            .collect()
    }
}

/// Every CNF over `nvars` variables with between one and `max_clauses`
/// distinct clauses, each clause a multiset of three literals.
pub fn enumerate_cnfs(nvars: usize, max_clauses: usize) -> Vec<Cnf3> {
    let lits: Vec<i32> = (1..=nvars as i32).flat_map(|k| [k, -k]).collect();
    let mut clauses = Vec::new();
    for a in 0..lits.len() {
        for b in a..lits.len() {
            for c in b..lits.len() {
                clauses.push([lits[a], lits[b], lits[c]]);
            }
        }
    }
    let mut out = Vec::new();
    for k in 1..=max_clauses.min(clauses.len()) {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(Cnf3 {
                nvars,
                clauses: idx.iter().map(|&i| clauses[i]).collect(),
            });
            if !crate::polytope::next_combination(&mut idx, clauses.len()) {
                break;
            }
        }
    }
    out
}

/// Random CNF with `nclauses` clauses over `nvars` variables.
pub fn random_cnf(rng: &mut impl Rng, nvars: usize, nclauses: usize) -> Cnf3 {
    let clauses = (0..nclauses)
        .map(|_| {
            std::array::from_fn(|_| {
                let k = rng.gen_range(1..=nvars as i32);
                if rng.gen_bool(0.5) {
                    k
                } else {
                    -k
                }
            })
        })
        .collect();
    Cnf3 { nvars, clauses }
}

/// `ℓ1`-maximization instance: linearly independent `y_1..y_m ∈ {-1,0,1}^n`
/// and a positive integer threshold `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParMaxInstance {
    pub n: usize,
    pub alpha: u64,
    pub ys: Vec<Vec<i8>>,
}

impl ParMaxInstance {
    /// Validates entries, `1 ≤ m ≤ n`, `α ≥ 1` and linear independence.
    pub fn new(n: usize, alpha: u64, ys: Vec<Vec<i8>>) -> Result<Self> {
        let inst = ParMaxInstance { n, alpha, ys };
        inst.validate()?;
        Ok(inst)
    }

    fn validate(&self) -> Result<()> {
        let m = self.ys.len();
        if m == 0 || m > self.n {
            return Err(Error::Invalid(format!("need 1 ≤ m ≤ n, got m = {m}, n = {}", self.n)));
        }
        if self.alpha == 0 {
            return Err(Error::Invalid("alpha must be a positive integer".into()));
        }
        for y in &self.ys {
            crate::error::check_dim(self.n, y.len())?;
            if y.iter().any(|v| !(-1..=1).contains(v)) {
                return Err(Error::Invalid("entries must lie in {-1, 0, 1}".into()));
            }
        }
        if rank(&self.y_rational()) != m {
            return Err(Error::Invalid("vectors y_i must be linearly independent".into()));
        }
        Ok(())
    }

    /// The vectors as rationals.
    pub fn y_rational(&self) -> Vec<RVector> {
        self.ys.iter().map(|y| y.iter().map(|&v| int(v as i64)).collect()).collect()
    }

    /// `max ‖Σ ε_i y_i‖₁` over all sign patterns.
    pub fn max_l1(&self) -> u64 {
        let m = self.ys.len();
        (0u64..1 << m)
            .map(|mask| {
                (0..self.n)
                    .map(|k| {
                        let s: i64 = (0..m)
                            .map(|i| if mask >> i & 1 == 1 { self.ys[i][k] as i64 } else { -(self.ys[i][k] as i64) })
                            .sum();
                        s.unsigned_abs()
                    })
                    .sum()
            })
            .max()
            .unwrap()
    }

    /// Whether some sign pattern reaches `ℓ1` norm `α`.
    pub fn answer(&self) -> bool {
        self.max_l1() >= self.alpha
    }

    /// Random valid instance with `α` in `1..=max_alpha`.
    pub fn random(rng: &mut impl Rng, n: usize, m: usize, max_alpha: u64) -> ParMaxInstance {
        loop {
            let ys: Vec<Vec<i8>> = (0..m).map(|_| (0..n).map(|_| rng.gen_range(-1..=1)).collect()).collect();
            let alpha = rng.gen_range(1..=max_alpha);
            if let Ok(inst) = ParMaxInstance::new(n, alpha, ys) {
                return inst;
            }
        }
    }
}

fn leaf(x: RVector) -> McNode {
    McNode::leaf(x, Rational::zero())
}

/// `max{x·d, -x·d}`.
fn abs_node(x: RVector) -> McNode {
    McNode::Max(vec![leaf(x.clone()), leaf(neg(&x))])
}

/// `r‖d‖∞` as a max over `±r e_i`.
fn linf_node(n: usize, r: &Rational) -> McNode {
    McNode::Max((0..n).flat_map(|i| [leaf(scale(r, &unit(n, i))), leaf(scale(&-r, &unit(n, i)))]).collect())
}

/// `max{r‖d‖∞, Σ |d·y_i|}`.
fn g_f_node(inst: &ParMaxInstance, r: &Rational) -> McNode {
    McNode::Max(vec![
        McNode::Sum(vec![linf_node(inst.n, r)]),
        McNode::Sum(inst.y_rational().into_iter().map(abs_node).collect()),
    ])
}

/// `(h_F, g_F)` with `h_F = r‖·‖∞`, `g_F = max{h_F, Σ|·y_i|}` and `r = α - 1`.
pub fn gen_dcf(inst: &ParMaxInstance) -> Result<DcFunction> {
    inst.validate()?;
    let r = int(inst.alpha as i64 - 1);
    let h = McFunction::new(inst.n, McNode::Sum(vec![linf_node(inst.n, &r)]))?;
    let g = McFunction::new(inst.n, McNode::Sum(vec![g_f_node(inst, &r)]))?;
    DcFunction::new(h, g)
}

/// `(h_C, g_C)` with `h_C = d₁/2 + max{h_F + |d₁|/2, g_F}` and
/// `g_C = g_F + |d₁|/2`.
pub fn gen_dcc(inst: &ParMaxInstance) -> Result<DcFunction> {
    inst.validate()?;
    let n = inst.n;
    let r = int(inst.alpha as i64 - 1);
    let half_e1 = scale(&frac(1, 2), &unit(n, 0));
    let h = McNode::Sum(vec![
        McNode::Max(vec![leaf(half_e1.clone())]),
        McNode::Max(vec![
            McNode::Sum(vec![linf_node(n, &r), abs_node(half_e1.clone())]),
            McNode::Sum(vec![g_f_node(inst, &r)]),
        ]),
    ]);
    let g = McNode::Sum(vec![g_f_node(inst, &r), abs_node(half_e1)]);
    DcFunction::new(McFunction::balanced(n, h)?, McFunction::balanced(n, g)?)
}

/// Pieces `-Σ_{j∈S} y_{3i+j}` for every `S ⊆ {0,1,2}`, per clause `i`, as
/// integer vectors.
fn clause_pieces(cnf: &Cnf3) -> Vec<Vec<Vec<i64>>> {
    cnf.clauses
        .iter()
        .map(|c| {
            (0u8..8)
                .map(|s| {
                    let mut v = vec![0i64; cnf.nvars];
                    for (j, &l) in c.iter().enumerate() {
                        if s >> j & 1 == 1 {
                            v[l.unsigned_abs() as usize - 1] -= l.signum() as i64;
                        }
                    }
                    v
                })
                .collect()
        })
        .collect()
}

/// Collects groups of linear pieces `v / denom` into a Max-Min function,
/// sharing identical pieces.
fn assemble(dim: usize, groups: Vec<Vec<Vec<i64>>>, denom: i64) -> Result<MaxMinFunction> {
    let mut pieces: Vec<Vec<i64>> = Vec::new();
    let mut index = std::collections::HashMap::new();
    let groups = groups
        .into_iter()
        .map(|g| {
            let mut ids: Vec<usize> = g
                .into_iter()
                .map(|x| {
                    *index.entry(x.clone()).or_insert_with(|| {
                        pieces.push(x);
                        pieces.len() - 1
                    })
                })
                .collect();
            ids.sort_unstable();
            ids.dedup();
            ids
        })
        .collect();
    let pieces = pieces
        .into_iter()
        .map(|v| Affine::linear(v.into_iter().map(|n| frac(n, denom)).collect()))
        .collect();
    MaxMinFunction::new(dim, pieces, groups)
}

/// `f_F(d) = max_i -Σ_j max{d·y_{ij}, 0}` in Max-Min form: one group of eight
/// subset-sum pieces per clause.
pub fn gen_maxmin_3sat(cnf: &Cnf3) -> Result<MaxMinFunction> {
    assemble(cnf.nvars, clause_pieces(cnf), 1)
}

/// `f_C(d) = max{d₁/2 + f_F(d) + f_F(-d), min{d₁, 0}}` in Max-Min form: one
/// group per ordered clause pair with the 64 sums of their pieces, plus the
/// group `{d₁, 0}`.
pub fn gen_maxmin_3sat_clarke(cnf: &Cnf3) -> Result<MaxMinFunction> {
    let m = cnf.nvars;
    let pieces = clause_pieces(cnf);
    // Pieces are stored doubled: 2(e₁/2 + a - b) = e₁ + 2a - 2b.
    let mut groups = Vec::new();
    for p in &pieces {
        for q in &pieces {
            let mut g = Vec::with_capacity(64);
            for a in p {
                for b in q {
                    let mut v: Vec<i64> = a.iter().zip(b).map(|(x, y)| 2 * (x - y)).collect();
                    v[0] += 1;
                    g.push(v);
                }
            }
            groups.push(g);
        }
    }
    let mut e1 = vec![0i64; m];
    e1[0] = 2;
    groups.push(vec![e1, vec![0; m]]);
    assemble(m, groups, 2)
}

/// Total pieces before sharing in [`gen_maxmin_3sat_clarke`]: `64 n² + 2`.
pub fn clarke_piece_count(nclauses: usize) -> usize {
    64 * nclauses * nclauses + 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ivec;
    use num_traits::Signed;
    use rand::SeedableRng;

    #[test]
    fn dimacs_round_trip() {
        let cnf = Cnf3::parse_dimacs("c demo\np cnf 2 2\n1 -2 2 0\n-1 -1 -1 0\n").unwrap();
        assert_eq!(cnf.clauses, vec![[1, -2, 2], [-1, -1, -1]]);
        assert_eq!(Cnf3::parse_dimacs(&cnf.to_dimacs()).unwrap(), cnf);
        assert!(Cnf3::parse_dimacs("p cnf 2 1\n1 2 0\n").is_err());
        assert!(Cnf3::parse_dimacs("p cnf 1 1\n1 2 1 0\n").is_err());
    }

    #[test]
    fn truth_table() {
        let c = Caps::default();
        let unsat = Cnf3::new(1, vec![[1, 1, 1], [-1, -1, -1]]).unwrap();
        assert_eq!(unsat.solve(&c).unwrap(), None);
        let sat = Cnf3::new(2, vec![[1, 2, 2], [-1, -1, -1]]).unwrap();
        assert_eq!(sat.solve(&c).unwrap(), Some(vec![false, true]));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_cnfs(1, 3).len(), 4 + 6 + 4);
        assert_eq!(enumerate_cnfs(3, 3).len(), 56 + 1540 + 27720);
    }

    #[test]
    fn f_f_values() {
        let cnf = Cnf3::new(1, vec![[1, 1, 1]]).unwrap();
        let f = gen_maxmin_3sat(&cnf).unwrap();
        assert_eq!(f.eval(&ivec(&[1])).unwrap(), int(-3));
        assert_eq!(f.eval(&ivec(&[-1])).unwrap(), int(0));
    }

    #[test]
    fn f_c_matches_formula() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let cnf = random_cnf(&mut rng, 3, 2);
            let ff = gen_maxmin_3sat(&cnf).unwrap();
            let fc = gen_maxmin_3sat_clarke(&cnf).unwrap();
            let d: RVector = (0..3).map(|_| frac(rng.gen_range(-6..=6), rng.gen_range(1..=3))).collect();
            let half = frac(1, 2) * &d[0];
            let want = &half + (ff.eval(&d).unwrap() + ff.eval(&neg(&d)).unwrap()).max(-half.clone().abs());
            assert_eq!(fc.eval(&d).unwrap(), want);
        }
    }

    #[test]
    fn parmax_gadgets() {
        let inst = ParMaxInstance::new(2, 2, vec![vec![1, 0]]).unwrap();
        assert_eq!(inst.max_l1(), 1);
        let f = gen_dcf(&inst).unwrap();
        assert_eq!(f.eval(&ivec(&[3, -1])).unwrap(), int(0));
        let f1 = gen_dcf(&ParMaxInstance::new(2, 1, vec![vec![1, 0]]).unwrap()).unwrap();
        assert_eq!(f1.eval(&ivec(&[3, -1])).unwrap(), int(-3));
        let c = gen_dcc(&inst).unwrap();
        let d = ivec(&[-2, 1]);
        let hf_gf = f.eval(&d).unwrap();
        let want = int(-1) + hf_gf.max(int(-1));
        assert_eq!(c.eval(&d).unwrap(), want);
        assert!(ParMaxInstance::new(2, 1, vec![vec![1, 0], vec![-1, 0]]).is_err());
    }

    #[test]
    fn piece_count() {
        let cnf = Cnf3::new(3, vec![[1, 2, 3], [-1, 2, -3]]).unwrap();
        let total: usize = gen_maxmin_3sat_clarke(&cnf).unwrap().groups().iter().map(Vec::len).sum();
        assert!(total <= clarke_piece_count(2));
    }
}
