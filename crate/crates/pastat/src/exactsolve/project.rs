//! Exact Euclidean projection onto a polyhedron by a primal active-set method.

use num_traits::{Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::exactsolve::linalg::{rank, solve};
use crate::exactsolve::lp::{lp_feasible, Feasibility, LinearSystem};
use crate::rational::{add, dot, scale, sub, RVector, Rational};

const MAX_ITERS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Work {
    Eq(usize),
    Le(usize),
}

/// Projects `w` onto `{x : sys}`. Returns `Ok(None)` when the polyhedron is
/// empty.
///
/// Starts from a simplex vertex and iterates equality-constrained
/// subproblems. Blocking constraints are added and constraints with negative
/// multipliers are dropped, both choosing the lowest row index on ties. The
/// returned point satisfies the KKT conditions exactly.
pub fn project_point(sys: &LinearSystem, w: &[Rational]) -> Result<Option<RVector>> {
    check_dim(sys.nvars, w.len())?;
    sys.validate()?;
    if sys.satisfied_by(w) {
        return Ok(Some(w.to_vec()));
    }
    let mut x = match lp_feasible(sys) {
        Feasibility::Feasible(x) => x,
        Feasibility::Infeasible(_) => return Ok(None),
    };
    let row = |c: Work| match c {
        Work::Eq(i) => &sys.eq[i],
        Work::Le(i) => &sys.le[i],
    };
    let mut work: Vec<Work> = Vec::new();
    let mut rows: Vec<RVector> = Vec::new();
    let candidates = (0..sys.eq.len()).map(Work::Eq).chain(
        (0..sys.le.len())
            .filter(|&i| dot(&sys.le[i].a, &x) == sys.le[i].b)
            .map(Work::Le),
    );
    for c in candidates {
        let mut trial = rows.clone();
        trial.push(row(c).a.clone());
        if rank(&trial) == trial.len() {
            rows = trial;
            work.push(c);
        }
    }
    for _ in 0..MAX_ITERS {
        // Minimizer of ½‖z - w‖² on the affine set of the working rows.
        let k = work.len();
        let lambda: RVector = if k == 0 {
            Vec::new()
        } else {
            let gram: Vec<RVector> = (0..k)
                .map(|a| (0..k).map(|b| dot(&rows[a], &rows[b])).collect())
                .collect();
            let rhs: RVector = (0..k).map(|a| dot(&rows[a], w) - &row(work[a]).b).collect();
            solve(&gram, &rhs)
                .ok_or_else(|| Error::Invalid("dependent working set in projection".into()))?
        };
        let mut z = w.to_vec();
        for (l, r) in lambda.iter().zip(&rows) {
            if !l.is_zero() {
                z = sub(&z, &scale(l, r));
            }
        }
        let p = sub(&z, &x);
        if p.iter().all(Zero::is_zero) {
            let drop = (0..k)
                .filter(|&a| matches!(work[a], Work::Le(_)) && lambda[a].is_negative())
                .min_by_key(|&a| match work[a] {
                    Work::Le(i) => i,
                    Work::Eq(i) => i,
                });
            match drop {
                None => {
                    debug_assert!(sys.satisfied_by(&x));
                    return Ok(Some(x));
                }
                Some(a) => {
                    work.remove(a);
                    rows.remove(a);
                    continue;
                }
            }
        }
        let mut step = Rational::from_integer(1.into());
        let mut block: Option<usize> = None;
        for (i, r) in sys.le.iter().enumerate() {
            if work.contains(&Work::Le(i)) {
                continue;
            }
            let ap = dot(&r.a, &p);
            if ap.is_positive() {
                let t = (&r.b - dot(&r.a, &x)) / ap;
                if t < step {
                    step = t;
                    block = Some(i);
                }
            }
        }
        x = add(&x, &scale(&step, &p));
        if let Some(i) = block {
            work.push(Work::Le(i));
            rows.push(sys.le[i].a.clone());
        }
    }
    Err(Error::Invalid("projection exceeded its iteration limit".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, ivec};

    #[test]
    fn point_on_a_line() {
        let mut s = LinearSystem::new(1);
        s.add_eq(ivec(&[1]), int(0));
        assert_eq!(project_point(&s, &ivec(&[5])).unwrap(), Some(ivec(&[0])));
    }

    #[test]
    fn interior_point_is_fixed() {
        let mut s = LinearSystem::new(2);
        s.add_le(ivec(&[1, 1]), int(4));
        let w = vec![frac(1, 3), int(1)];
        assert_eq!(project_point(&s, &w).unwrap(), Some(w));
    }

    #[test]
    fn halfspace_projection() {
        let mut s = LinearSystem::new(2);
        s.add_ge(ivec(&[1, 0]), int(1));
        assert_eq!(project_point(&s, &ivec(&[0, 0])).unwrap(), Some(ivec(&[1, 0])));
    }

    #[test]
    fn projection_onto_triangle_corner_and_edge() {
        let mut s = LinearSystem::new(2);
        s.add_ge(ivec(&[1, 0]), int(0));
        s.add_ge(ivec(&[0, 1]), int(0));
        s.add_le(ivec(&[1, 1]), int(1));
        assert_eq!(project_point(&s, &ivec(&[3, 3])).unwrap(), Some(vec![frac(1, 2), frac(1, 2)]));
        assert_eq!(project_point(&s, &ivec(&[-2, -1])).unwrap(), Some(ivec(&[0, 0])));
        assert_eq!(project_point(&s, &ivec(&[5, -1])).unwrap(), Some(ivec(&[1, 0])));
    }

    #[test]
    fn empty_polyhedron() {
        let mut s = LinearSystem::new(1);
        s.add_ge(ivec(&[1]), int(1));
        s.add_le(ivec(&[1]), int(0));
        assert_eq!(project_point(&s, &ivec(&[0])).unwrap(), None);
    }
}
