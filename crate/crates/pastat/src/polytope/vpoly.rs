//! Polytopes given by finite point sets.

use crate::error::{check_dim, Error, Result};
use crate::exactsolve::{extreme_in, to_small};
use crate::rational::{add, neg, RVector};

/// `conv(vertices)`. After [`VPolytope::canonicalize`] the list is exactly
/// the set of extreme points, deduplicated and sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<RVector>,
}

impl VPolytope {
    /// Wraps a non-empty list of points of equal dimension.
    pub fn new(vertices: Vec<RVector>) -> Result<Self> {
        let dim = vertices.first().ok_or(Error::Empty)?.len();
        for v in &vertices {
            check_dim(dim, v.len())?;
        }
        Ok(VPolytope { dim, vertices })
    }

    /// The single point `{v}`.
    pub fn point(v: RVector) -> Self {
        VPolytope {
            dim: v.len(),
            vertices: vec![v],
        }
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Generating points (extreme points once canonical).
    pub fn vertices(&self) -> &[RVector] {
        &self.vertices
    }

    /// Consumes the polytope, returning its points.
    pub fn into_vertices(self) -> Vec<RVector> {
        self.vertices
    }

    /// Extreme points only, deduplicated and sorted.
    pub fn canonicalize(&self) -> VPolytope {
        let mut pts = self.vertices.clone();
        pts.sort();
        pts.dedup();
        let idx = match to_small(&pts).map(|sp| extreme_in(&sp)) {
            Some(Ok(idx)) => idx,
            _ => extreme_in(&pts).expect("exact arithmetic does not overflow"),
        };
        let keep: Vec<RVector> = idx.into_iter().map(|i| pts[i].clone()).collect();
        VPolytope {
            dim: self.dim,
            vertices: keep,
        }
    }

    /// Whether `v` is one of the listed points.
    pub fn has_vertex(&self, v: &[crate::Rational]) -> bool {
        self.vertices.iter().any(|u| u.as_slice() == v)
    }

    /// `-P`.
    pub fn neg(&self) -> VPolytope {
        VPolytope {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| neg(v)).collect(),
        }
    }

    /// `P + {t}`.
    pub fn translate(&self, t: &[crate::Rational]) -> Result<VPolytope> {
        check_dim(self.dim, t.len())?;
        Ok(VPolytope {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| add(v, t)).collect(),
        })
    }

    /// `conv(P ∪ Q)`, not canonicalized.
    pub fn union_hull(&self, other: &VPolytope) -> Result<VPolytope> {
        check_dim(self.dim, other.dim)?;
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().cloned());
        Ok(VPolytope { dim: self.dim, vertices })
    }
}

/// Canonical vertex set of `A + B` from pairwise sums.
pub fn minkowski_sum(a: &VPolytope, b: &VPolytope) -> Result<VPolytope> {
    check_dim(a.dim, b.dim)?;
    let vertices = a
        .vertices
        .iter()
        .flat_map(|u| b.vertices.iter().map(move |v| add(u, v)))
        .collect();
    Ok(VPolytope { dim: a.dim, vertices }.canonicalize())
}

/// Canonical vertex set of `A - B = A + (-B)`.
pub fn minkowski_diff(a: &VPolytope, b: &VPolytope) -> Result<VPolytope> {
    minkowski_sum(a, &b.neg())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, ivec};

    #[test]
    fn canonicalize_drops_interior_points() {
        let p = VPolytope::new(vec![vec![int(1)], vec![frac(1, 2)], vec![int(0)], vec![int(1)]]).unwrap();
        assert_eq!(p.canonicalize().vertices(), &[vec![int(0)], vec![int(1)]]);
        let tri = VPolytope::new(vec![ivec(&[0, 0]), ivec(&[1, 0]), ivec(&[0, 1])]).unwrap();
        assert_eq!(tri.canonicalize().vertices().len(), 3);
    }

    #[test]
    fn sums() {
        let a = VPolytope::new(vec![ivec(&[0, 0]), ivec(&[1, 0])]).unwrap();
        let b = VPolytope::new(vec![ivec(&[0, 0]), ivec(&[0, 1])]).unwrap();
        let s = minkowski_sum(&a, &b).unwrap();
        assert_eq!(s.vertices(), &[ivec(&[0, 0]), ivec(&[0, 1]), ivec(&[1, 0]), ivec(&[1, 1])]);
        let i = VPolytope::new(vec![ivec(&[0]), ivec(&[1])]).unwrap();
        assert_eq!(minkowski_sum(&i, &i).unwrap().vertices(), &[ivec(&[0]), ivec(&[2])]);
        let t = minkowski_sum(&a, &VPolytope::point(ivec(&[2, 3]))).unwrap();
        assert_eq!(t.vertices(), &[ivec(&[2, 3]), ivec(&[3, 3])]);
        assert!(VPolytope::new(vec![]).is_err());
    }
}
