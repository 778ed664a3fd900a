//! Linear systems and an exact two-phase simplex method with Bland's rule.
//!
//! Variables are free. Internally each variable is split as `x = x⁺ - x⁻`,
//! each `≤` row gets a slack, and phase I uses one artificial per row that
//! lacks a ready slack basis.

use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Result};
use crate::rational::{dot, RVector, Rational};

/// One linear row `a · x (= or ≤) b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub a: RVector,
    pub b: Rational,
}

/// A system of equalities `a · x = b` and inequalities `a · x ≤ b` over free
/// variables. Row indices are stable and used when reporting equality sets.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinearSystem {
    pub nvars: usize,
    pub eq: Vec<Row>,
    pub le: Vec<Row>,
}

impl LinearSystem {
    /// An unconstrained system in `nvars` variables.
    pub fn new(nvars: usize) -> Self {
        LinearSystem {
            nvars,
            eq: Vec::new(),
            le: Vec::new(),
        }
    }

    /// Adds `a · x = b`.
    pub fn add_eq(&mut self, a: RVector, b: Rational) {
        assert_eq!(a.len(), self.nvars, "add_eq: row length");
        self.eq.push(Row { a, b });
    }

    /// Adds `a · x ≤ b`.
    pub fn add_le(&mut self, a: RVector, b: Rational) {
        assert_eq!(a.len(), self.nvars, "add_le: row length");
        self.le.push(Row { a, b });
    }

    /// Adds `a · x ≥ b` (stored as `-a · x ≤ -b`).
    pub fn add_ge(&mut self, a: RVector, b: Rational) {
        let a = a.into_iter().map(|x| -x).collect();
        self.add_le(a, -b);
    }

    /// Checks row lengths.
    pub fn validate(&self) -> Result<()> {
        for r in self.eq.iter().chain(&self.le) {
            check_dim(self.nvars, r.a.len())?;
        }
        Ok(())
    }

    /// True iff `x` satisfies every row exactly.
    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        x.len() == self.nvars
            && self.eq.iter().all(|r| dot(&r.a, x) == r.b)
            && self.le.iter().all(|r| dot(&r.a, x) <= r.b)
    }

    /// Appends every row of `other`, which must have the same variable count.
    pub fn extend(&mut self, other: &LinearSystem) {
        assert_eq!(self.nvars, other.nvars, "extend: variable count");
        self.eq.extend(other.eq.iter().cloned());
        self.le.extend(other.le.iter().cloned());
    }
}

/// Farkas certificate of infeasibility: multipliers `y_eq` (free sign) and
/// `y_le ≥ 0` with `Σ y_i a_i = 0` and `Σ y_i b_i < 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Farkas {
    pub y_eq: RVector,
    pub y_le: RVector,
}

impl Farkas {
    /// Checks the certificate against `sys` by substitution.
    pub fn verify(&self, sys: &LinearSystem) -> bool {
        if self.y_eq.len() != sys.eq.len() || self.y_le.len() != sys.le.len() {
            return false;
        }
        if self.y_le.iter().any(Signed::is_negative) {
            return false;
        }
        let mut comb = vec![Rational::zero(); sys.nvars];
        let mut rhs = Rational::zero();
        let rows = sys.eq.iter().zip(&self.y_eq).chain(sys.le.iter().zip(&self.y_le));
        for (r, y) in rows {
            if y.is_zero() {
                continue;
            }
            for (c, a) in comb.iter_mut().zip(&r.a) {
                *c += y * a;
            }
            rhs += y * &r.b;
        }
        comb.iter().all(Zero::is_zero) && rhs.is_negative()
    }

    /// The certificate on the system with each equality split into two `≤`
    /// rows (`a·x ≤ b` then `-a·x ≤ -b`), followed by the original `≤` rows.
    /// Every entry is nonnegative.
    pub fn split(&self) -> RVector {
        let mut out = Vec::with_capacity(2 * self.y_eq.len() + self.y_le.len());
        for y in &self.y_eq {
            if y.is_negative() {
                out.push(Rational::zero());
                out.push(-y);
            } else {
                out.push(y.clone());
                out.push(Rational::zero());
            }
        }
        out.extend(self.y_le.iter().cloned());
        out
    }
}

/// Outcome of a feasibility query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    /// An exact basic feasible point.
    Feasible(RVector),
    /// A verified Farkas certificate.
    Infeasible(Farkas),
}

/// Outcome of a minimization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { point: RVector, value: Rational },
    Infeasible(Farkas),
    Unbounded,
}

struct Tableau {
    /// Constraint rows; last entry of each row is the right-hand side.
    t: Vec<RVector>,
    /// Reduced costs per column; last entry is minus the objective value.
    obj: RVector,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let piv = self.t[r][c].clone();
        if !piv.is_one() {
            for v in self.t[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &piv;
                }
            }
        }
        let prow = self.t[r].clone();
        let nz: Vec<usize> = (0..=self.ncols).filter(|&j| !prow[j].is_zero()).collect();
        for i in 0..self.t.len() {
            if i == r || self.t[i][c].is_zero() {
                continue;
            }
            let f = self.t[i][c].clone();
            for &j in &nz {
                let v = &prow[j] * &f;
                self.t[i][j] -= v;
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for &j in &nz {
                let v = &prow[j] * &f;
                self.obj[j] -= v;
            }
        }
        self.basis[r] = c;
    }

    /// Runs Bland's rule over the allowed columns. Returns false on unboundedness.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            let Some(c) = (0..allowed).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.t.len() {
                let a = &self.t[i][c];
                if a.is_positive() {
                    let ratio = &self.t[i][self.ncols] / a;
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

struct Phase1 {
    tab: Tableau,
    /// Column of the initial unit basis for each row.
    init_col: Vec<usize>,
    /// Phase-I cost of each initial basis column.
    init_cost: Vec<Rational>,
    /// Row orientation: +1 or -1.
    sigma: Vec<Rational>,
    nstruct: usize,
    neq: usize,
}

fn phase1(sys: &LinearSystem) -> Phase1 {
    let n = sys.nvars;
    let neq = sys.eq.len();
    let m = neq + sys.le.len();
    let nslack = sys.le.len();
    let nstruct = 2 * n + nslack;
    let rows: Vec<&Row> = sys.eq.iter().chain(&sys.le).collect();
    let sigma: Vec<Rational> = rows
        .iter()
        .map(|r| if r.b.is_negative() { -Rational::one() } else { Rational::one() })
        .collect();
    // Rows that are `≤` with b ≥ 0 start with their slack in the basis.
    let mut init_col = vec![0; m];
    let mut nart = 0;
    for i in 0..m {
        if i >= neq && !rows[i].b.is_negative() {
            init_col[i] = 2 * n + (i - neq);
        } else {
            init_col[i] = nstruct + nart;
            nart += 1;
        }
    }
    let ncols = nstruct + nart;
    let mut t = vec![vec![Rational::zero(); ncols + 1]; m];
    for i in 0..m {
        let s = &sigma[i];
        for j in 0..n {
            let a = &rows[i].a[j];
            if !a.is_zero() {
                t[i][2 * j] = s * a;
                t[i][2 * j + 1] = -(s * a);
            }
        }
        if i >= neq {
            t[i][2 * n + (i - neq)] = s.clone();
        }
        t[i][init_col[i]] = Rational::one();
        t[i][ncols] = s * &rows[i].b;
    }
    let init_cost: Vec<Rational> = init_col
        .iter()
        .map(|&c| if c >= nstruct { Rational::one() } else { Rational::zero() })
        .collect();
    let mut obj = vec![Rational::zero(); ncols + 1];
    for j in nstruct..ncols {
        obj[j] = Rational::one();
    }
    for i in 0..m {
        if init_cost[i].is_one() {
            for j in 0..=ncols {
                if !t[i][j].is_zero() {
                    let v = t[i][j].clone();
                    obj[j] -= v;
                }
            }
        }
    }
    let mut tab = Tableau {
        t,
        obj,
        basis: init_col.clone(),
        ncols,
    };
    tab.optimize(ncols);
    Phase1 {
        tab,
        init_col,
        init_cost,
        sigma,
        nstruct,
        neq,
    }
}

fn farkas_from(p: &Phase1, sys: &LinearSystem) -> Farkas {
    let m = p.init_col.len();
    let y: Vec<Rational> = (0..m)
        .map(|i| {
            let pi = &p.init_cost[i] - &p.tab.obj[p.init_col[i]];
            -(&p.sigma[i] * pi)
        })
        .collect();
    let cert = Farkas {
        y_eq: y[..p.neq].to_vec(),
        y_le: y[p.neq..].to_vec(),
    };
    debug_assert!(cert.verify(sys), "phase I produced an invalid Farkas certificate");
    cert
}

fn extract(tab: &Tableau, n: usize) -> RVector {
    let mut vals = vec![Rational::zero(); tab.ncols];
    for (i, &b) in tab.basis.iter().enumerate() {
        vals[b] = tab.t[i][tab.ncols].clone();
    }
    (0..n).map(|j| &vals[2 * j] - &vals[2 * j + 1]).collect()
}

/// Decides feasibility of `sys`, returning a basic point or a Farkas certificate.
pub fn lp_feasible(sys: &LinearSystem) -> Feasibility {
    let p = phase1(sys);
    let value = -&p.tab.obj[p.tab.ncols];
    if value.is_positive() {
        Feasibility::Infeasible(farkas_from(&p, sys))
    } else {
        let x = extract(&p.tab, sys.nvars);
        debug_assert!(sys.satisfied_by(&x));
        Feasibility::Feasible(x)
    }
}

/// Minimizes `obj · x` over `sys` with the two-phase simplex method.
pub fn lp_optimize(obj: &[Rational], sys: &LinearSystem) -> LpOutcome {
    assert_eq!(obj.len(), sys.nvars, "lp_optimize: objective length");
    let n = sys.nvars;
    let mut p = phase1(sys);
    if (-&p.tab.obj[p.tab.ncols]).is_positive() {
        return LpOutcome::Infeasible(farkas_from(&p, sys));
    }
    let nstruct = p.nstruct;
    let tab = &mut p.tab;
    // Drive artificials out of the basis; drop rows that are redundant.
    let mut r = 0;
    while r < tab.t.len() {
        if tab.basis[r] >= nstruct {
            if let Some(c) = (0..nstruct).find(|&j| !tab.t[r][j].is_zero()) {
                tab.pivot(r, c);
                r += 1;
            } else {
                tab.t.remove(r);
                tab.basis.remove(r);
            }
        } else {
            r += 1;
        }
    }
    // Drop artificial columns.
    let old = tab.ncols;
    for row in tab.t.iter_mut() {
        let rhs = row[old].clone();
        row.truncate(nstruct);
        row.push(rhs);
    }
    tab.ncols = nstruct;
    let mut cost = vec![Rational::zero(); nstruct + 1];
    for j in 0..n {
        cost[2 * j] = obj[j].clone();
        cost[2 * j + 1] = -obj[j].clone();
    }
    let mut red = cost.clone();
    for (i, &b) in tab.basis.iter().enumerate() {
        if !cost[b].is_zero() {
            let cb = cost[b].clone();
            for j in 0..=nstruct {
                if !tab.t[i][j].is_zero() {
                    let v = &tab.t[i][j] * &cb;
                    red[j] -= v;
                }
            }
        }
    }
    tab.obj = red;
    if !tab.optimize(nstruct) {
        return LpOutcome::Unbounded;
    }
    let point = extract(tab, n);
    let value = dot(obj, &point);
    debug_assert!(sys.satisfied_by(&point));
    LpOutcome::Optimal { point, value }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, ivec};

    fn interval(lo: i64, hi: i64) -> LinearSystem {
        let mut s = LinearSystem::new(1);
        s.add_ge(ivec(&[1]), int(lo));
        s.add_le(ivec(&[1]), int(hi));
        s
    }

    #[test]
    fn feasible_interval_returns_lower_end() {
        assert_eq!(lp_feasible(&interval(1, 2)), Feasibility::Feasible(ivec(&[1])));
    }

    #[test]
    fn infeasible_interval_has_certificate() {
        let s = interval(1, 0);
        match lp_feasible(&s) {
            Feasibility::Infeasible(f) => {
                assert!(f.verify(&s));
                assert!(f.split().iter().all(|y| !y.is_negative()));
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn optimize_examples() {
        let mut s = LinearSystem::new(1);
        s.add_ge(ivec(&[1]), int(0));
        s.add_le(ivec(&[1]), int(3));
        assert_eq!(
            lp_optimize(&ivec(&[1]), &s),
            LpOutcome::Optimal { point: ivec(&[0]), value: int(0) }
        );
        let mut s = LinearSystem::new(1);
        s.add_le(ivec(&[1]), int(0));
        assert_eq!(
            lp_optimize(&ivec(&[-1]), &s),
            LpOutcome::Optimal { point: ivec(&[0]), value: int(0) }
        );
        assert_eq!(lp_optimize(&ivec(&[1]), &s), LpOutcome::Unbounded);
    }

    #[test]
    fn equalities_and_redundant_rows() {
        let mut s = LinearSystem::new(2);
        s.add_eq(ivec(&[1, 1]), int(1));
        s.add_eq(ivec(&[2, 2]), int(2));
        s.add_ge(ivec(&[1, 0]), int(0));
        s.add_ge(ivec(&[0, 1]), int(0));
        match lp_optimize(&ivec(&[1, -1]), &s) {
            LpOutcome::Optimal { point, value } => {
                assert_eq!(point, ivec(&[0, 1]));
                assert_eq!(value, int(-1));
            }
            other => panic!("{other:?}"),
        }
        let mut bad = s.clone();
        bad.add_eq(ivec(&[1, 1]), frac(1, 2));
        match lp_feasible(&bad) {
            Feasibility::Infeasible(f) => assert!(f.verify(&bad)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn margin_one_selection_system_is_feasible() {
        // Pieces x and -x: select x strictly with margin 1, i.e. d·(1 - (-1)) ≥ 1.
        let mut s = LinearSystem::new(1);
        s.add_ge(ivec(&[2]), int(1));
        match lp_feasible(&s) {
            Feasibility::Feasible(x) => assert_eq!(x, vec![frac(1, 2)]),
            other => panic!("{other:?}"),
        }
    }
}
