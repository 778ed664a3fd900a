//! Exact polytopes: vertex lists, constraint systems and zonotopes, with the
//! extreme-pair witnesses behind compatibility and transversality.

mod hpoly;
mod vpoly;
mod zonotope;

pub use hpoly::HPolyhedron;
pub(crate) use hpoly::next_combination;
pub use vpoly::{minkowski_diff, minkowski_sum, VPolytope};
pub use zonotope::{zonotope_transversal, Zonotope};

use crate::error::{check_dim, Error, Result};
use crate::exactsolve::{span_intersection_trivial, strict_witness};
use crate::rational::{fmt_vec, neg, sub, RVector, Rational};

/// Any supported polytope representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Polytope {
    V(VPolytope),
    H(HPolyhedron),
    Zonotope(Zonotope),
}

impl Polytope {
    /// Canonical vertex list.
    pub fn to_vpolytope(&self, caps: &crate::Caps) -> Result<VPolytope> {
        match self {
            Polytope::V(p) => Ok(p.canonicalize()),
            Polytope::H(p) => p.vertices(caps),
            Polytope::Zonotope(z) => z.vertices(caps),
        }
    }
}

fn margin_rows(v: &[Rational], p: &VPolytope) -> Vec<RVector> {
    p.vertices()
        .iter()
        .filter(|u| u.as_slice() != v)
        .map(|u| sub(v, u))
        .collect()
}

/// A direction `h` with `h·a ≥ h·a' + 1` for every other vertex `a'` of `A`
/// and `h·b ≥ h·b' + 1` for every other vertex `b'` of `B`, or `None`.
///
/// Such `h` exists iff `a + b` is an extreme point of `A + B`. Both polytopes
/// must be canonical and `a`, `b` must be among their vertices.
pub fn joint_max_witness(a: &[Rational], pa: &VPolytope, b: &[Rational], pb: &VPolytope) -> Result<Option<RVector>> {
    check_dim(pa.dim(), pb.dim())?;
    if !pa.has_vertex(a) {
        return Err(Error::Invalid(format!("{} is not a vertex of the first polytope", fmt_vec(a))));
    }
    if !pb.has_vertex(b) {
        return Err(Error::Invalid(format!("{} is not a vertex of the second polytope", fmt_vec(b))));
    }
    let mut rows = margin_rows(a, pa);
    rows.extend(margin_rows(b, pb));
    Ok(strict_witness(&rows, pa.dim()))
}

/// Outcome of a compatibility check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Compatibility {
    pub compatible: bool,
    /// Pairs `(a, b)` with `a - b ∈ ext(A - B)` but `a + b ∉ ext(A + B)`.
    pub violations: Vec<(RVector, RVector)>,
}

/// Decides compatibility of `A` and `B` by checking every extreme pair.
pub fn compatible(pa: &VPolytope, pb: &VPolytope) -> Result<Compatibility> {
    check_dim(pa.dim(), pb.dim())?;
    let a = pa.canonicalize();
    let b = pb.canonicalize();
    let nb = b.neg();
    let mut violations = Vec::new();
    for u in a.vertices() {
        for v in b.vertices() {
            let diff_extreme = joint_max_witness(u, &a, &neg(v), &nb)?.is_some();
            if diff_extreme && joint_max_witness(u, &a, v, &b)?.is_none() {
                violations.push((u.clone(), v.clone()));
            }
        }
    }
    Ok(Compatibility {
        compatible: violations.is_empty(),
        violations,
    })
}

/// Direction vectors `v - v_0` spanning `par(P)`.
pub fn parallel_directions(p: &VPolytope) -> Vec<RVector> {
    let v0 = &p.vertices()[0];
    p.vertices()[1..].iter().map(|v| sub(v, v0)).collect()
}

/// Whether `par(A) ∩ par(B) = {0}`.
pub fn par_trivial_intersection(pa: &VPolytope, pb: &VPolytope) -> Result<bool> {
    check_dim(pa.dim(), pb.dim())?;
    span_intersection_trivial(&parallel_directions(pa), &parallel_directions(pb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, ivec, unit, zeros};

    fn vp(v: Vec<RVector>) -> VPolytope {
        VPolytope::new(v).unwrap().canonicalize()
    }

    #[test]
    fn segments_on_axes() {
        let x = vp(vec![ivec(&[0, 0]), ivec(&[1, 0])]);
        let y = vp(vec![ivec(&[0, 0]), ivec(&[0, 1])]);
        assert_eq!(joint_max_witness(&ivec(&[1, 0]), &x, &ivec(&[0, 1]), &y).unwrap(), Some(ivec(&[1, 1])));
        assert!(compatible(&x, &y).unwrap().compatible);
        assert!(par_trivial_intersection(&x, &y).unwrap());
        assert!(!par_trivial_intersection(&x, &x).unwrap());
    }

    #[test]
    fn incompatible_triangle_and_segment() {
        let x = vp(vec![ivec(&[0, 0]), ivec(&[-1, -1]), ivec(&[1, -1])]);
        let y = vp(vec![ivec(&[0, 0]), vec![int(0), frac(-1, 2)]]);
        let b = vec![int(0), frac(-1, 2)];
        assert_eq!(joint_max_witness(&ivec(&[0, 0]), &x, &b, &y).unwrap(), None);
        assert!(joint_max_witness(&ivec(&[0, 0]), &x, &neg(&b), &y.neg()).unwrap().is_some());
        let c = compatible(&x, &y).unwrap();
        assert!(!c.compatible);
        assert_eq!(c.violations, vec![(ivec(&[0, 0]), b)]);
    }

    #[test]
    fn simplex_and_segment_in_r4() {
        let mut pts = vec![zeros(4)];
        pts.extend((0..4).map(|i| unit(4, i)));
        let x = vp(pts);
        let y = vp(vec![zeros(4), ivec(&[1, 1, -1, -1])]);
        assert!(compatible(&x, &y).unwrap().compatible);
        assert!(!par_trivial_intersection(&x, &y).unwrap());
    }

    #[test]
    fn witness_requires_vertices() {
        let x = vp(vec![ivec(&[0]), ivec(&[2])]);
        assert!(joint_max_witness(&ivec(&[1]), &x, &ivec(&[0]), &x).is_err());
    }
}
