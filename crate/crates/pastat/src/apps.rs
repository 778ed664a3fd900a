//! Structured front-ends: the ρ-margin SVM loss, two-layer ReLU networks,
//! general position of data, and partial linearization of PA regression.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{check_dim, Error, Result};
use crate::exactsolve::{rank, span_intersection_trivial};
use crate::pafunc::{Affine, DcFunction, McFunction, McNode};
use crate::polytope::next_combination;
use crate::rational::{dot, from_q, int, scale, to_q, zeros, RVector, Rational, Q};

/// Data points in augmented form `[x̃ᵢ | 1]` with labels or targets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledDataset {
    /// Augmented points, all of length `d + 1`.
    pub points: Vec<RVector>,
    pub labels: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct DatasetJson {
    points: Vec<Vec<Q>>,
    #[serde(default)]
    labels: Vec<Q>,
    /// Whether `points` already end with the constant coordinate.
    #[serde(default)]
    augmented: bool,
}

impl LabeledDataset {
    /// Augments raw points `x̃ᵢ` with a trailing one.
    pub fn from_raw(raw: Vec<RVector>, labels: Vec<Rational>) -> Result<Self> {
        let points = raw
            .into_iter()
            .map(|mut p| {
                p.push(int(1));
                p
            })
            .collect();
        LabeledDataset::new(points, labels)
    }

    /// Wraps augmented points; labels may be empty.
    pub fn new(points: Vec<RVector>, labels: Vec<Rational>) -> Result<Self> {
        let d = points.first().map_or(0, Vec::len);
        if d == 0 {
            return Err(Error::Invalid("dataset needs at least one point with one coordinate".into()));
        }
        for p in &points {
            check_dim(d, p.len())?;
        }
        if !labels.is_empty() && labels.len() != points.len() {
            return Err(Error::Invalid(format!(
                "{} labels for {} points",
                labels.len(),
                points.len()
            )));
        }
        Ok(LabeledDataset { points, labels })
    }

    /// Augmented dimension `d + 1`.
    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    /// The points without the trailing constant coordinate.
    pub fn raw_points(&self) -> Vec<RVector> {
        self.points.iter().map(|p| p[..p.len() - 1].to_vec()).collect()
    }

    /// Parses `{"points":[[…]], "labels":[…], "augmented":false}`; raw points
    /// are augmented.
    pub fn from_json(text: &str) -> Result<Self> {
        let j: DatasetJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let points = j.points.into_iter().map(from_q).collect();
        let labels = from_q(j.labels);
        if j.augmented {
            LabeledDataset::new(points, labels)
        } else {
            LabeledDataset::from_raw(points, labels)
        }
    }

    /// Serializes with augmented points.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&DatasetJson {
            points: self.points.iter().map(|p| to_q(p)).collect(),
            labels: to_q(&self.labels),
            augmented: true,
        })
        .expect("dataset serializes")
    }
}

/// Index sets whose spans must intersect trivially, for one unit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexSets {
    /// Hidden unit, or `None` for the SVM loss.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit: Option<usize>,
    /// `I₁` (SVM) or `I⁺_k` (ReLU).
    pub plus: Vec<usize>,
    /// `I₂` (SVM) or `I⁻_k` (ReLU).
    pub minus: Vec<usize>,
}

/// Which sum-rule qualifications hold, from strongest to weakest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QualificationReport {
    pub general_position: bool,
    /// Active data vectors of every unit are linearly independent.
    pub surjectivity: bool,
    /// `span{xᵢ : i ∈ plus} ∩ span{xⱼ : j ∈ minus} = {0}` for every unit.
    pub span_condition: bool,
    pub index_sets: Vec<IndexSets>,
}

impl QualificationReport {
    /// Name of the strongest condition that holds, if any.
    pub fn strongest(&self) -> Option<&'static str> {
        if self.general_position {
            Some("general-position")
        } else if self.surjectivity {
            Some("surjectivity")
        } else if self.span_condition {
            Some("span-condition")
        } else {
            None
        }
    }

    fn build(data: &LabeledDataset, sets: Vec<IndexSets>, caps: &Caps) -> Result<Self> {
        let mut span_condition = true;
        let mut surjectivity = true;
        for s in &sets {
            let a: Vec<RVector> = s.plus.iter().map(|&i| data.points[i].clone()).collect();
            let b: Vec<RVector> = s.minus.iter().map(|&i| data.points[i].clone()).collect();
            span_condition &= span_intersection_trivial(&a, &b)?;
            let all: Vec<RVector> = a.into_iter().chain(b).collect();
            surjectivity &= rank(&all) == all.len();
        }
        Ok(QualificationReport {
            general_position: general_position(&data.raw_points(), caps)?,
            surjectivity,
            span_condition,
            index_sets: sets,
        })
    }
}

fn hinge(x: RVector, a: Rational, dim: usize) -> McNode {
    McNode::Max(vec![McNode::Leaf(Affine::new(x, a)), McNode::Leaf(Affine::linear(zeros(dim)))])
}

fn sum_of(dim: usize, terms: Vec<McNode>) -> Result<McFunction> {
    if terms.is_empty() {
        Ok(McFunction::zero(dim))
    } else {
        McFunction::new(dim, McNode::Sum(terms))
    }
}

/// The PA part of the ρ-margin SVM loss,
/// `Σ max{1 - yᵢxᵢᵀw/ρ, 0} - Σ max{-yⱼxⱼᵀw/ρ, 0}`, and its qualification at
/// `w` with `I₁ = {i : yᵢxᵢᵀw = ρ}` and `I₂ = {j : yⱼxⱼᵀw = 0}`.
pub fn svm_pa_part(
    data: &LabeledDataset,
    rho: &Rational,
    w: &[Rational],
    caps: &Caps,
) -> Result<(DcFunction, QualificationReport)> {
    let d = data.dim();
    check_dim(d, w.len())?;
    if !rho.is_positive() {
        return Err(Error::Invalid("ρ must be positive".into()));
    }
    if data.labels.len() != data.points.len() {
        return Err(Error::Invalid("SVM needs one label per point".into()));
    }
    let mut h = Vec::new();
    let mut g = Vec::new();
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for (i, (x, y)) in data.points.iter().zip(&data.labels).enumerate() {
        let c = -(y / rho);
        h.push(hinge(scale(&c, x), int(1), d));
        g.push(hinge(scale(&c, x), Rational::zero(), d));
        let margin = y * dot(x, w);
        if &margin == rho {
            plus.push(i);
        }
        if margin.is_zero() {
            minus.push(i);
        }
    }
    let f = DcFunction::new(sum_of(d, h)?, sum_of(d, g)?)?;
    let report = QualificationReport::build(
        data,
        vec![IndexSets {
            unit: None,
            plus,
            minus,
        }],
        caps,
    )?;
    Ok((f, report))
}

/// Parameters `(w_k, u_k)` of one hidden unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReluUnit {
    /// Weights on augmented inputs, length `d + 1`.
    pub w: RVector,
    pub u: Rational,
}

/// Qualification of a two-layer ReLU network at given parameters, with
/// `pᵢ = ℓᵢ'(network output)` supplied by the caller:
/// `I^±_k = {i : ±u_k pᵢ > 0, w_kᵀxᵢ = 0}`.
pub fn relu2_qualification(
    data: &LabeledDataset,
    units: &[ReluUnit],
    p: &[Rational],
    caps: &Caps,
) -> Result<QualificationReport> {
    if p.len() != data.points.len() {
        return Err(Error::Invalid(format!("{} loss derivatives for {} points", p.len(), data.points.len())));
    }
    let mut sets = Vec::new();
    for (k, unit) in units.iter().enumerate() {
        check_dim(data.dim(), unit.w.len())?;
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for (i, x) in data.points.iter().enumerate() {
            if !dot(&unit.w, x).is_zero() {
                continue;
            }
            let s = &unit.u * &p[i];
            if s.is_positive() {
                plus.push(i);
            } else if s.is_negative() {
                minus.push(i);
            }
        }
        sets.push(IndexSets {
            unit: Some(k),
            plus,
            minus,
        });
    }
    QualificationReport::build(data, sets, caps)
}

/// The DC function `w ↦ u_k Σ pᵢ max{wᵀxᵢ, 0}` of one unit, with positive
/// coefficients in `h` and negative ones in `g`.
pub fn relu_unit_dc(data: &LabeledDataset, u: &Rational, p: &[Rational]) -> Result<DcFunction> {
    let d = data.dim();
    let mut h = Vec::new();
    let mut g = Vec::new();
    for (x, pi) in data.points.iter().zip(p) {
        let c = u * pi;
        if c.is_positive() {
            h.push(hinge(scale(&c, x), Rational::zero(), d));
        } else if c.is_negative() {
            g.push(hinge(scale(&-c, x), Rational::zero(), d));
        }
    }
    DcFunction::new(sum_of(d, h)?, sum_of(d, g)?)
}

/// Whether no `d + 1` of the points lie on a common affine hyperplane of
/// `R^d`. With at most `d + 1` points this means affine independence.
pub fn general_position(points: &[RVector], caps: &Caps) -> Result<bool> {
    let Some(first) = points.first() else {
        return Ok(true);
    };
    let d = first.len();
    for p in points {
        check_dim(d, p.len())?;
    }
    let n = points.len();
    let k = n.min(d + 1);
    Caps::check("general-position subsets", binomial(n, k), caps.subsets)?;
    let aug: Vec<RVector> = points
        .iter()
        .map(|p| {
            let mut q = p.clone();
            q.push(int(1));
            q
        })
        .collect();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let rows: Vec<RVector> = idx.iter().map(|&i| aug[i].clone()).collect();
        if rank(&rows) < k {
            return Ok(false);
        }
        if !next_combination(&mut idx, n) {
            return Ok(true);
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// Inner map `Gᵢ(θ) = max_j aᵢⱼ(θ) - max_k bᵢₖ(θ)` of a composite loss.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerDc {
    pub plus: Vec<Affine>,
    pub minus: Vec<Affine>,
}

impl InnerDc {
    /// `Gᵢ(θ)`.
    pub fn eval(&self, theta: &[Rational]) -> Rational {
        let mx = |v: &[Affine]| v.iter().map(|a| a.eval(theta)).max().unwrap_or_else(Rational::zero);
        mx(&self.plus) - mx(&self.minus)
    }
}

/// `Σ pᵢ Gᵢ` as a DC pair. A max term enters `h` when its coefficient is
/// positive and `g` when negative, so both parts stay convex.
pub fn partial_linearize(dim: usize, p: &[Rational], inner: &[InnerDc]) -> Result<DcFunction> {
    if p.len() != inner.len() {
        return Err(Error::Invalid(format!("{} coefficients for {} inner terms", p.len(), inner.len())));
    }
    let mut h = Vec::new();
    let mut g = Vec::new();
    let mut term = |c: Rational, pieces: &[Affine]| -> Result<()> {
        if c.is_zero() || pieces.is_empty() {
            return Ok(());
        }
        let leaves = pieces
            .iter()
            .map(|a| {
                check_dim(dim, a.x.len())?;
                Ok(McNode::Leaf(Affine::new(scale(&c.abs(), &a.x), &c.abs() * &a.a)))
            })
            .collect::<Result<Vec<_>>>()?;
        if c.is_positive() {
            h.push(McNode::Max(leaves));
        } else {
            g.push(McNode::Max(leaves));
        }
        Ok(())
    };
    for (pi, t) in p.iter().zip(inner) {
        term(pi.clone(), &t.plus)?;
        term(-pi.clone(), &t.minus)?;
    }
    DcFunction::new(sum_of(dim, h)?, sum_of(dim, g)?)
}

/// Inner maps of PA regression `max_j a_jᵀxᵢ - max_k b_kᵀxᵢ` over the
/// stacked parameter `θ = (a_1, …, a_{m1}, b_1, …, b_{m2})`.
pub fn pa_regression_inner(data: &LabeledDataset, m1: usize, m2: usize) -> Vec<InnerDc> {
    let d = data.dim();
    let dim = d * (m1 + m2);
    let block = |x: &RVector, slot: usize| {
        let mut v = zeros(dim);
        v[slot * d..(slot + 1) * d].clone_from_slice(x);
        Affine::linear(v)
    };
    data.points
        .iter()
        .map(|x| InnerDc {
            plus: (0..m1).map(|j| block(x, j)).collect(),
            minus: (0..m2).map(|k| block(x, m1 + k)).collect(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, ivec};

    #[test]
    fn svm_single_point() {
        let data = LabeledDataset::from_raw(vec![ivec(&[1])], vec![int(1)]).unwrap();
        let (f, r) = svm_pa_part(&data, &int(1), &ivec(&[0, 0]), &Caps::default()).unwrap();
        assert!(r.index_sets[0].plus.is_empty());
        assert_eq!(r.index_sets[0].minus, vec![0]);
        assert!(r.span_condition);
        assert_eq!(f.eval(&ivec(&[0, 0])).unwrap(), int(1));
    }

    #[test]
    fn svm_margin_span_meets_boundary_point() {
        // Raw points 1 and -1 (labels 1, -1) sit on the margin at w = (1, 0)
        // and span the plane containing the boundary point 0.
        let data = LabeledDataset::from_raw(vec![ivec(&[1]), ivec(&[-1]), ivec(&[0])], vec![int(1), int(-1), int(1)])
            .unwrap();
        let (_, r) = svm_pa_part(&data, &int(1), &ivec(&[1, 0]), &Caps::default()).unwrap();
        assert_eq!(r.index_sets[0].plus, vec![0, 1]);
        assert_eq!(r.index_sets[0].minus, vec![2]);
        assert!(!r.span_condition);
    }

    #[test]
    fn general_position_basics() {
        let c = Caps::default();
        assert!(general_position(&[ivec(&[0, 0]), ivec(&[1, 0]), ivec(&[0, 1])], &c).unwrap());
        assert!(!general_position(&[ivec(&[0, 0]), ivec(&[1, 1]), ivec(&[2, 2])], &c).unwrap());
        let pm: Vec<RVector> = [[-1, 0], [-1, 1], [-1, 2], [1, 0], [1, 3], [1, 5]].iter().map(|p| ivec(p)).collect();
        assert!(!general_position(&pm, &c).unwrap());
    }

    #[test]
    fn negative_coefficient_moves_to_g() {
        let data = LabeledDataset::from_raw(vec![ivec(&[2])], vec![]).unwrap();
        let inner = pa_regression_inner(&data, 2, 1);
        let f = partial_linearize(6, &[int(-1)], &inner).unwrap();
        assert_eq!(f.h.leaves().len(), 1);
        assert_eq!(f.g.leaves().len(), 2);
        let f = partial_linearize(6, &[int(1)], &inner).unwrap();
        assert_eq!(f.h.leaves().len(), 2);
    }

    #[test]
    fn dataset_json_round_trip() {
        let d = LabeledDataset::from_json(r#"{"points":[[1,"1/2"]],"labels":[-1]}"#).unwrap();
        assert_eq!(d.points, vec![vec![int(1), frac(1, 2), int(1)]]);
        assert_eq!(LabeledDataset::from_json(&d.to_json()).unwrap(), d);
    }
}
