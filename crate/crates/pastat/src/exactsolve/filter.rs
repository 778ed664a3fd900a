//! Floating-point filter for strict-witness existence. Every answer is
//! certified in exact arithmetic; uncertified cases return `None`.

use crate::exactsolve::minnorm::{affine_min, combine, dot_s, witness_in, Fail};
use crate::exactsolve::scalar::{Scalar, SmallQ};

const MAX_ITERS: usize = 200;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Solves the `n × n` system stored row-major in `a` with right-hand side
/// in column `n` (row stride `n + 1`) by partial pivoting; the solution is
/// written to `x`. `false` when nearly singular.
fn solve(a: &mut [f64], n: usize, x: &mut [f64]) -> bool {
    let w = n + 1;
    for c in 0..n {
        let mut p = c;
        for i in c + 1..n {
            if a[i * w + c].abs() > a[p * w + c].abs() {
                p = i;
            }
        }
        if a[p * w + c].abs() < 1e-12 {
            return false;
        }
        if p != c {
            for j in 0..w {
                a.swap(c * w + j, p * w + j);
            }
        }
        for i in c + 1..n {
            let f = a[i * w + c] / a[c * w + c];
            if f != 0.0 {
                for j in c..w {
                    a[i * w + j] -= f * a[c * w + j];
                }
            }
        }
    }
    for c in (0..n).rev() {
        let mut s = a[c * w + n];
        for j in c + 1..n {
            s -= a[c * w + j] * x[j];
        }
        x[c] = s / a[c * w + c];
    }
    true
}

/// Wolfe's method in doubles on `n` points of dimension `d` stored
/// row-major; returns the point and its corral.
fn wolfe(pts: &[f64], n: usize, d: usize) -> Option<(Vec<f64>, Vec<usize>)> {
    let row = |i: usize| &pts[i * d..(i + 1) * d];
    let mut gram = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let g = dot(row(i), row(j));
            gram[i * n + j] = g;
            gram[j * n + i] = g;
        }
    }
    let scale = (0..n).map(|i| gram[i * n + i]).fold(0.0, f64::max).max(1e-300);
    let tol = 1e-10 * scale;
    let start = (0..n).min_by(|&a, &b| gram[a * n + a].total_cmp(&gram[b * n + b]))?;
    let mut corral = vec![start];
    let mut lambda = vec![1.0];
    let mut x = row(start).to_vec();
    let mut m = Vec::new();
    let mut alpha = Vec::new();
    for _ in 0..MAX_ITERS {
        let xx = dot(&x, &x);
        let mut j = 0;
        let mut best = f64::INFINITY;
        for i in 0..n {
            let v = dot(&x, row(i));
            if v < best {
                best = v;
                j = i;
            }
        }
        if best >= xx - tol || corral.contains(&j) || xx <= tol {
            return Some((x, corral));
        }
        corral.push(j);
        lambda.push(0.0);
        loop {
            let k = corral.len();
            let w = k + 2;
            m.clear();
            m.resize((k + 1) * w, 0.0);
            for a in 0..k {
                for b in 0..k {
                    m[a * w + b] = gram[corral[a] * n + corral[b]];
                }
                m[a * w + k] = 1.0;
                m[k * w + a] = 1.0;
            }
            m[k * w + k + 1] = 1.0;
            alpha.clear();
            alpha.resize(k + 1, 0.0);
            if !solve(&mut m, k + 1, &mut alpha) {
                return None;
            }
            if alpha[..k].iter().all(|&a| a > 1e-14) {
                lambda.clear();
                lambda.extend_from_slice(&alpha[..k]);
                break;
            }
            let mut theta = f64::INFINITY;
            for (l, a) in lambda.iter().zip(&alpha) {
                if *a <= 1e-14 {
                    theta = theta.min(l / (l - a));
                }
            }
            let mut kept = 0;
            for i in 0..k {
                let v = theta * alpha[i] + (1.0 - theta) * lambda[i];
                if v > 1e-14 {
                    corral[kept] = corral[i];
                    lambda[kept] = v;
                    kept += 1;
                }
            }
            if kept == 0 {
                return None;
            }
            corral.truncate(kept);
            lambda.truncate(kept);
        }
        x.iter_mut().for_each(|v| *v = 0.0);
        for (&i, l) in corral.iter().zip(&lambda) {
            for (xv, pv) in x.iter_mut().zip(row(i)) {
                *xv += l * pv;
            }
        }
    }
    None
}

/// Outcome of [`int_verdict`].
pub(crate) enum Verdict {
    /// `h` with `r·h > 0` for every row, checked in integer arithmetic.
    Feasible(Vec<i64>),
    /// The origin lies in the hull of the rows, checked exactly.
    Infeasible,
    /// The filter could not certify either answer.
    Unknown,
}

/// Rounded integer direction from a float point, scaled to about `2^20`.
fn rounded(x: &[f64]) -> Option<Vec<i64>> {
    let top = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if top <= 0.0 || !top.is_finite() {
        return None;
    }
    let k = (1u64 << 20) as f64 / top;
    Some(x.iter().map(|v| (v * k).round() as i64).collect())
}

/// Integer dot product; rows and directions are bounded so this is exact.
pub(crate) fn idot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(x, y)| *x as i128 * *y as i128).sum()
}

/// Strict feasibility of integer rows (`r·h > 0` for all rows), decided by
/// float Wolfe and certified exactly.
pub(crate) fn int_verdict(rows: &[Vec<i64>], dim: usize) -> Verdict {
    if rows.is_empty() {
        return Verdict::Feasible(vec![0; dim]);
    }
    let fl: Vec<f64> = rows.iter().flatten().map(|&v| v as f64).collect();
    let Some((x, corral)) = wolfe(&fl, rows.len(), dim) else {
        return Verdict::Unknown;
    };
    if let Some(h) = rounded(&x) {
        if rows.iter().all(|r| idot(r, &h) > 0) {
            return Verdict::Feasible(h);
        }
    }
    let sub: Option<Vec<Vec<SmallQ>>> = corral
        .iter()
        .map(|&i| rows[i].iter().map(|&v| SmallQ::from_int(v)).collect())
        .collect();
    let Some(sub) = sub else {
        return Verdict::Unknown;
    };
    match origin_in_hull(&sub, dim) {
        Ok(true) => Verdict::Infeasible,
        _ => Verdict::Unknown,
    }
}

/// Certified answer to "is there `h` with `r·h ≥ 1` for every row?":
/// `Some(Some(h))` with an exactly checked `h`, `Some(None)` when the origin
/// is exactly in the hull of the rows, `None` when the filter cannot decide.
pub(crate) fn filtered_witness<S: Scalar>(rows: &[Vec<S>], dim: usize) -> Result<Option<Option<Vec<S>>>, Fail> {
    if rows.is_empty() {
        return Ok(Some(Some(vec![S::zero(); dim])));
    }
    let fl: Vec<f64> = rows.iter().flatten().map(S::to_f64).collect();
    if fl.iter().any(|v| !v.is_finite()) {
        return Ok(None);
    }
    let Some((x, corral)) = wolfe(&fl, rows.len(), dim) else {
        return Ok(None);
    };
    let top = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if top > 0.0 {
        let k = (1u64 << 20) as f64 / top;
        let h: Vec<S> = x.iter().map(|v| S::from_i64((v * k).round() as i64)).collect();
        let mut least: Option<S> = None;
        let mut ok = true;
        for r in rows {
            let v = dot_s(r, &h)?;
            if !v.is_positive() {
                ok = false;
                break;
            }
            if least.as_ref().is_none_or(|l| v < *l) {
                least = Some(v);
            }
        }
        if ok {
            let m = least.expect("non-empty rows");
            let h = h.iter().map(|v| v.div(&m).ok_or(Fail::Overflow)).collect::<Result<Vec<_>, _>>()?;
            return Ok(Some(Some(h)));
        }
    }
    let sub: Vec<Vec<S>> = corral.iter().map(|&i| rows[i].clone()).collect();
    Ok(origin_in_hull(&sub, dim)?.then_some(None))
}

/// Whether the origin lies in the hull of a few points: one affine solve
/// when the points are affinely independent, exact Wolfe otherwise.
fn origin_in_hull<S: Scalar>(sub: &[Vec<S>], dim: usize) -> Result<bool, Fail> {
    let k = sub.len();
    let mut gram = vec![vec![S::zero(); k]; k];
    for a in 0..k {
        for b in a..k {
            let g = dot_s(&sub[a], &sub[b])?;
            gram[a][b] = g.clone();
            gram[b][a] = g;
        }
    }
    let idx: Vec<usize> = (0..k).collect();
    match affine_min(&gram, &idx) {
        Ok(alpha) => {
            if alpha.iter().all(S::is_positive) && combine(sub, &idx, &alpha, dim)?.iter().all(S::is_zero) {
                return Ok(true);
            }
            Ok(false)
        }
        Err(Fail::Singular) => Ok(witness_in(sub, dim)?.is_none()),
        Err(e) => Err(e),
    }
}
