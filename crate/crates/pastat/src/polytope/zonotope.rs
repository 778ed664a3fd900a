//! Zonotopes `V[-1,1]^p + z`.

use crate::caps::Caps;
use crate::error::{check_dim, Result};
use crate::exactsolve::span_intersection_trivial;
use crate::polytope::vpoly::VPolytope;
use crate::rational::{add, sub, RVector};

/// Center plus a Minkowski sum of symmetric segments `[-v_i, v_i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zonotope {
    pub center: RVector,
    pub generators: Vec<RVector>,
}

impl Zonotope {
    /// Checks that every generator has the center's dimension.
    pub fn new(center: RVector, generators: Vec<RVector>) -> Result<Self> {
        for g in &generators {
            check_dim(center.len(), g.len())?;
        }
        Ok(Zonotope { center, generators })
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// Canonical vertices from the `2^p` sign assignments.
    pub fn vertices(&self, caps: &Caps) -> Result<VPolytope> {
        let p = self.generators.len();
        Caps::check("zonotope generators", p as u128, caps.zonotope_generators)?;
        let pts = (0u64..1 << p)
            .map(|mask| {
                self.generators.iter().enumerate().fold(self.center.clone(), |acc, (i, g)| {
                    if mask >> i & 1 == 1 {
                        add(&acc, g)
                    } else {
                        sub(&acc, g)
                    }
                })
            })
            .collect();
        Ok(VPolytope::new(pts)?.canonicalize())
    }
}

/// Whether the generator spans of two zonotopes intersect only at zero.
pub fn zonotope_transversal(z1: &Zonotope, z2: &Zonotope) -> Result<bool> {
    check_dim(z1.dim(), z2.dim())?;
    if z1.generators.is_empty() || z2.generators.is_empty() {
        return Ok(true);
    }
    span_intersection_trivial(&z1.generators, &z2.generators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ivec};

    #[test]
    fn vertices_of_small_zonotopes() {
        let z = Zonotope::new(ivec(&[0, 0]), vec![ivec(&[1, 0])]).unwrap();
        assert_eq!(z.vertices(&Caps::default()).unwrap().vertices(), &[ivec(&[-1, 0]), ivec(&[1, 0])]);
        let sq = Zonotope::new(ivec(&[0, 0]), vec![ivec(&[1, 0]), ivec(&[0, 1])]).unwrap();
        assert_eq!(sq.vertices(&Caps::default()).unwrap().vertices().len(), 4);
        // Collinear generators: the middle sign points are interior.
        let col = Zonotope::new(ivec(&[0, 0]), vec![ivec(&[1, 1]), ivec(&[2, 2]), ivec(&[1, 0])]).unwrap();
        let v = col.vertices(&Caps::default()).unwrap();
        assert_eq!(v.vertices(), &[ivec(&[-4, -3]), ivec(&[-2, -3]), ivec(&[2, 3]), ivec(&[4, 3])]);
        let empty = Zonotope::new(vec![int(2)], vec![]).unwrap();
        assert_eq!(empty.vertices(&Caps::default()).unwrap().vertices(), &[vec![int(2)]]);
    }

    #[test]
    fn transversality() {
        let a = Zonotope::new(ivec(&[0, 0]), vec![ivec(&[1, 0])]).unwrap();
        let b = Zonotope::new(ivec(&[0, 0]), vec![ivec(&[0, 1])]).unwrap();
        assert!(zonotope_transversal(&a, &b).unwrap());
        assert!(!zonotope_transversal(&a, &a).unwrap());
    }
}
