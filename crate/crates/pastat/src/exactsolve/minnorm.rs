//! Wolfe's minimum-norm-point algorithm in exact arithmetic, and the
//! Gordan-type strict witness built on it.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactsolve::scalar::{Scalar, SmallQ};
use crate::rational::{dot, norm_sq, zeros, RVector, Rational};

/// The minimum-norm point of a convex hull with its convex weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinNorm {
    pub point: RVector,
    /// `(index into the input, weight)`; weights are positive and sum to one.
    pub weights: Vec<(usize, Rational)>,
}

impl MinNorm {
    /// Squared norm of the point.
    pub fn norm_sq(&self) -> Rational {
        norm_sq(&self.point)
    }

    /// Verifies `p ∈ conv(points)` via the weights and `⟨p, v - p⟩ ≥ 0` for
    /// every input point.
    pub fn verify(&self, points: &[RVector]) -> bool {
        let d = self.point.len();
        let mut comb = zeros(d);
        let mut total = <Rational as Zero>::zero();
        for (i, w) in &self.weights {
            if !Signed::is_positive(w) {
                return false;
            }
            total += w;
            for (c, x) in comb.iter_mut().zip(&points[*i]) {
                *c += w * x;
            }
        }
        if !total.is_one() || comb != self.point {
            return false;
        }
        let pp = norm_sq(&self.point);
        points.iter().all(|v| dot(&self.point, v) >= pp)
    }
}

/// Why a generic min-norm computation stopped.
#[derive(Debug)]
pub(crate) enum Fail {
    Overflow,
    Singular,
}

pub(crate) fn dot_s<S: Scalar>(a: &[S], b: &[S]) -> std::result::Result<S, Fail> {
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = acc.add(&x.mul(y).ok_or(Fail::Overflow)?).ok_or(Fail::Overflow)?;
    }
    Ok(acc)
}

/// Gauss-Jordan solve of a square system.
fn solve_s<S: Scalar>(mut a: Vec<Vec<S>>) -> std::result::Result<Vec<S>, Fail> {
    let n = a.len();
    let of = || Fail::Overflow;
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero()).ok_or(Fail::Singular)?;
        a.swap(c, p);
        let piv = a[c][c].clone();
        for j in c..=n {
            a[c][j] = a[c][j].div(&piv).ok_or_else(of)?;
        }
        for i in 0..n {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..=n {
                if !a[c][j].is_zero() {
                    let v = a[c][j].mul(&f).ok_or_else(of)?;
                    a[i][j] = a[i][j].sub(&v).ok_or_else(of)?;
                }
            }
        }
    }
    Ok(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Minimizes `‖Σ α_i p_i‖²` subject to `Σ α_i = 1` over the corral.
pub(crate) fn affine_min<S: Scalar>(gram: &[Vec<S>], corral: &[usize]) -> std::result::Result<Vec<S>, Fail> {
    let k = corral.len();
    let mut m = vec![vec![S::zero(); k + 2]; k + 1];
    for a in 0..k {
        for b in 0..k {
            m[a][b] = gram[corral[a]][corral[b]].clone();
        }
        m[a][k] = S::one();
        m[k][a] = S::one();
    }
    m[k][k + 1] = S::one();
    let mut sol = solve_s(m)?;
    sol.truncate(k);
    Ok(sol)
}

pub(crate) fn combine<S: Scalar>(points: &[Vec<S>], corral: &[usize], w: &[S], d: usize) -> std::result::Result<Vec<S>, Fail> {
    let mut x = vec![S::zero(); d];
    for (&i, c) in corral.iter().zip(w) {
        if c.is_zero() {
            continue;
        }
        for (xv, pv) in x.iter_mut().zip(&points[i]) {
            if !pv.is_zero() {
                *xv = xv.add(&c.mul(pv).ok_or(Fail::Overflow)?).ok_or(Fail::Overflow)?;
            }
        }
    }
    Ok(x)
}

type Wolfe<S> = (Vec<S>, Vec<(usize, S)>);

/// Wolfe's method with a lazily filled Gram matrix.
fn wolfe<S: Scalar>(points: &[Vec<S>]) -> std::result::Result<Wolfe<S>, Fail> {
    let n = points.len();
    let d = points[0].len();
    let mut gram: Vec<Vec<S>> = vec![Vec::new(); n];
    let mut have = vec![false; n];
    let mut norms = Vec::with_capacity(n);
    for p in points {
        norms.push(dot_s(p, p)?);
    }
    let start = (0..n).min_by(|&a, &b| norms[a].cmp(&norms[b]).then(a.cmp(&b))).unwrap();
    let mut corral = vec![start];
    let mut lambda = vec![S::one()];
    let mut x = points[start].clone();
    loop {
        let xx = dot_s(&x, &x)?;
        let mut best: Option<(usize, S)> = None;
        for (i, p) in points.iter().enumerate() {
            let v = dot_s(&x, p)?;
            if best.as_ref().is_none_or(|(_, b)| v < *b) {
                best = Some((i, v));
            }
        }
        let (j, best) = best.unwrap();
        if best >= xx || corral.contains(&j) {
            break;
        }
        corral.push(j);
        lambda.push(S::zero());
        for &i in &corral {
            if !have[i] {
                gram[i] = vec![S::zero(); n];
                have[i] = true;
            }
        }
        for &a in &corral {
            for &b in &corral {
                if gram[a][b].is_zero() && a <= b {
                    let g = dot_s(&points[a], &points[b])?;
                    gram[a][b] = g.clone();
                    gram[b][a] = g;
                }
            }
        }
        loop {
            let alpha = affine_min(&gram, &corral)?;
            if alpha.iter().all(S::is_positive) {
                x = combine(points, &corral, &alpha, d)?;
                lambda = alpha;
                break;
            }
            let mut theta: Option<S> = None;
            for (l, a) in lambda.iter().zip(&alpha) {
                if !a.is_positive() {
                    let t = l.div(&l.sub(a).ok_or(Fail::Overflow)?).ok_or(Fail::Overflow)?;
                    if theta.as_ref().is_none_or(|th| &t < th) {
                        theta = Some(t);
                    }
                }
            }
            let theta = theta.unwrap();
            let one_minus = S::one().sub(&theta).ok_or(Fail::Overflow)?;
            let mut next = Vec::with_capacity(lambda.len());
            for (l, a) in lambda.iter().zip(&alpha) {
                let v = theta.mul(a).and_then(|u| one_minus.mul(l).and_then(|w| u.add(&w)));
                next.push(v.ok_or(Fail::Overflow)?);
            }
            let keep: Vec<usize> = (0..corral.len()).filter(|&i| next[i].is_positive()).collect();
            corral = keep.iter().map(|&i| corral[i]).collect();
            lambda = keep.iter().map(|&i| next[i].clone()).collect();
        }
    }
    Ok((x, corral.into_iter().zip(lambda).collect()))
}

/// Generic strict witness: `h` with `r·h ≥ 1` for every row, `Ok(None)` when
/// the origin lies in the hull of the rows.
pub(crate) fn witness_in<S: Scalar>(rows: &[Vec<S>], dim: usize) -> std::result::Result<Option<Vec<S>>, Fail> {
    if rows.is_empty() {
        return Ok(Some(vec![S::zero(); dim]));
    }
    let (p, _) = wolfe(rows)?;
    let nn = dot_s(&p, &p)?;
    if nn.is_zero() {
        return Ok(None);
    }
    let mut h = Vec::with_capacity(dim);
    for v in &p {
        h.push(v.div(&nn).ok_or(Fail::Overflow)?);
    }
    Ok(Some(h))
}

/// [`witness_in`] behind a certified floating-point filter. The witness is
/// valid but need not be the minimum-norm one.
pub(crate) fn witness_fast<S: Scalar>(rows: &[Vec<S>], dim: usize) -> std::result::Result<Option<Vec<S>>, Fail> {
    match super::filter::filtered_witness(rows, dim)? {
        Some(answer) => Ok(answer),
        None => witness_in(rows, dim),
    }
}

/// Indices of the extreme points of a list of distinct points.
pub(crate) fn extreme_in<S: Scalar>(pts: &[Vec<S>]) -> std::result::Result<Vec<usize>, Fail> {
    let dim = pts.first().map_or(0, Vec::len);
    let mut sure = vec![false; pts.len()];
    for dir in probe_directions::<S>(dim) {
        let vals = pts.iter().map(|p| dot_s(p, &dir)).collect::<std::result::Result<Vec<_>, _>>()?;
        for want_max in [true, false] {
            let best = if want_max { vals.iter().max() } else { vals.iter().min() };
            let hits: Vec<usize> = (0..pts.len()).filter(|&i| Some(&vals[i]) == best).collect();
            if let [only] = hits[..] {
                sure[only] = true;
            }
        }
    }
    let mut sorted: Vec<&Vec<S>> = pts.iter().collect();
    sorted.sort();
    let mut keep = Vec::new();
    for i in 0..pts.len() {
        if sure[i] {
            keep.push(i);
            continue;
        }
        if is_midpoint(&pts[i], pts, &sorted)? {
            continue;
        }
        let mut rows = Vec::with_capacity(pts.len());
        for (j, q) in pts.iter().enumerate() {
            if j != i {
                rows.push(sub_s(&pts[i], q)?);
            }
        }
        if witness_fast(&rows, dim)?.is_some() {
            keep.push(i);
        }
    }
    Ok(keep)
}

/// Whether `p = (q + r) / 2` for two other listed points.
fn is_midpoint<S: Scalar>(p: &[S], pts: &[Vec<S>], sorted: &[&Vec<S>]) -> std::result::Result<bool, Fail> {
    for q in pts {
        if q.as_slice() == p {
            continue;
        }
        let mut r = Vec::with_capacity(p.len());
        for (a, b) in p.iter().zip(q) {
            r.push(a.add(a).and_then(|t| t.sub(b)).ok_or(Fail::Overflow)?);
        }
        if sorted.binary_search(&&r).is_ok() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Fixed integer directions whose unique maximizers and minimizers are
/// certainly extreme points.
fn probe_directions<S: Scalar>(dim: usize) -> Vec<Vec<S>> {
    let int = S::from_i64;
    let mut dirs = Vec::new();
    for i in 0..dim {
        dirs.push((0..dim).map(|j| int((j == i) as i64)).collect());
    }
    for seed in 0..2 * dim as i64 {
        dirs.push((0..dim as i64).map(|j| int((seed * 7 + j * j * 5 + j * 3 + 1) % 11 - 5)).collect());
    }
    dirs
}

/// `a - b` componentwise.
pub(crate) fn sub_s<S: Scalar>(a: &[S], b: &[S]) -> std::result::Result<Vec<S>, Fail> {
    a.iter().zip(b).map(|(x, y)| x.sub(y).ok_or(Fail::Overflow)).collect()
}

/// Converts every vector to the machine-word rational when all entries fit.
pub(crate) fn to_small(v: &[RVector]) -> Option<Vec<Vec<SmallQ>>> {
    v.iter().map(|p| p.iter().map(SmallQ::from_big).collect()).collect()
}

/// Converts back to arbitrary precision.
pub(crate) fn from_small(v: &[SmallQ]) -> RVector {
    v.iter().map(|q| q.to_big()).collect()
}

fn small_wolfe(points: &[RVector]) -> Option<MinNorm> {
    let pts: Vec<Vec<SmallQ>> = points
        .iter()
        .map(|p| p.iter().map(SmallQ::from_big).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    let (x, w) = wolfe(&pts).ok()?;
    Some(MinNorm {
        point: x.into_iter().map(SmallQ::to_big).collect(),
        weights: w.into_iter().map(|(i, q)| (i, q.to_big())).collect(),
    })
}

/// Exact minimum-norm point of `conv(points)`.
pub fn min_norm_point(points: &[RVector]) -> Result<MinNorm> {
    let first = points.first().ok_or(Error::Empty)?;
    let d = first.len();
    for p in points {
        crate::error::check_dim(d, p.len())?;
    }
    if let Some(mn) = small_wolfe(points) {
        return Ok(mn);
    }
    match wolfe(points) {
        Ok((point, weights)) => Ok(MinNorm { point, weights }),
        Err(_) => Err(Error::Invalid("affinely dependent corral in min-norm point".into())),
    }
}

/// Gordan alternative with margin one: returns `h` with `a · h ≥ 1` for every
/// row, or `None` when `0 ∈ conv(rows)` (no strictly positive solution).
///
/// The witness is `p / ‖p‖²` for the minimum-norm point `p` of the rows.
pub fn strict_witness(rows: &[RVector], dim: usize) -> Option<RVector> {
    for r in rows {
        assert_eq!(r.len(), dim, "rows must have the given dimension");
    }
    if let Some(small) = to_small(rows) {
        if let Ok(h) = witness_in(&small, dim) {
            return h.map(|h| from_small(&h));
        }
    }
    witness_in(rows, dim).expect("exact arithmetic does not overflow")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, ivec};

    #[test]
    fn segment_between_unit_vectors() {
        let pts = vec![ivec(&[1, 0]), ivec(&[0, 1])];
        let mn = min_norm_point(&pts).unwrap();
        assert_eq!(mn.point, vec![frac(1, 2), frac(1, 2)]);
        assert!(mn.verify(&pts));
    }

    #[test]
    fn hull_containing_origin() {
        let pts = vec![ivec(&[0]), ivec(&[1])];
        assert_eq!(min_norm_point(&pts).unwrap().point, ivec(&[0]));
        let tri = vec![ivec(&[1, 1]), ivec(&[-2, 1]), ivec(&[1, -3])];
        let mn = min_norm_point(&tri).unwrap();
        assert_eq!(mn.point, ivec(&[0, 0]));
        assert!(mn.verify(&tri));
    }

    #[test]
    fn empty_input_is_an_error() {
        assert_eq!(min_norm_point(&[]), Err(Error::Empty));
    }

    #[test]
    fn witness_for_unit_vectors() {
        let h = strict_witness(&[ivec(&[1, 0]), ivec(&[0, 1])], 2).unwrap();
        assert_eq!(h, ivec(&[1, 1]));
        assert!(strict_witness(&[ivec(&[1]), ivec(&[-1])], 1).is_none());
        assert_eq!(strict_witness(&[], 2), Some(vec![int(0), int(0)]));
    }

    mod props {
        use super::super::*;
        use crate::rational::frac;
        use proptest::prelude::*;

        fn points() -> impl Strategy<Value = Vec<RVector>> {
            (1usize..=4).prop_flat_map(|d| {
                prop::collection::vec(prop::collection::vec((-9i64..=9, 1i64..=4), d), 1..=7)
                    .prop_map(|pts| pts.into_iter().map(|p| p.into_iter().map(|(n, q)| frac(n, q)).collect()).collect())
            })
        }

        proptest! {
            #[test]
            fn small_and_big_arithmetic_agree(pts in points()) {
                let big: Vec<Vec<Rational>> = pts.clone();
                let (x, _) = wolfe(&big).unwrap();
                if let Some(small) = small_wolfe(&pts) {
                    prop_assert_eq!(&small.point, &x);
                }
                let mn = min_norm_point(&pts).unwrap();
                prop_assert_eq!(&mn.point, &x);
                prop_assert!(mn.verify(&pts));
            }
        }
    }
}
