//! Intertwiner spaces and the projections `P_p`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::Serialize;

use super::matrix::{Echelon, IntMatrix, RatMatrix};
use super::tmap::t_map;
use super::LinearError;
use crate::partition::{ColoredPartition, PartitionCategorySample};

/// `span{T_p : p ∈ C(k,l) all white}` at size `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntertwinerSpace {
    pub k: usize,
    pub l: usize,
    pub n: usize,
    pub dim: usize,
    /// Greedy independent subset in canonical partition order.
    pub basis: Vec<ColoredPartition>,
    pub candidates: usize,
}

fn flattened(t: &IntMatrix) -> impl Iterator<Item = (usize, BigInt)> + '_ {
    let cols = t.cols();
    t.entries().map(move |(r, c, v)| (r * cols + c, v.clone()))
}

pub fn intertwiner_dim(
    sample: &PartitionCategorySample,
    k: usize,
    l: usize,
    n: usize,
) -> Result<IntertwinerSpace, LinearError> {
    if k + l > sample.max_points() {
        return Err(LinearError::ShapeMismatch(format!(
            "({k},{l}) needs {} points but the sample stops at {}",
            k + l,
            sample.max_points()
        )));
    }
    let candidates = sample.white_members_at(k, l);
    let mut ech = Echelon::default();
    let mut basis = Vec::new();
    for p in &candidates {
        let t = t_map(p, n)?;
        if ech.insert(flattened(&t)) {
            basis.push(p.clone());
        }
    }
    Ok(IntertwinerSpace {
        k,
        l,
        n,
        dim: basis.len(),
        basis,
        candidates: candidates.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectionReport {
    pub p: ColoredPartition,
    #[serde(rename = "P_matrix")]
    pub p_matrix: RatMatrix,
    #[serde(rename = "R_matrix")]
    pub r_matrix: RatMatrix,
    pub sub_projectives_used: Vec<ColoredPartition>,
}

/// Orthogonal projection onto the column space of `m`.
fn range_projection(m: &RatMatrix) -> RatMatrix {
    let cols = m.independent_columns();
    if cols.is_empty() {
        return RatMatrix::zeros(m.rows(), m.rows());
    }
    let a = m.select_columns(&cols);
    let at = a.transpose();
    let gram_inv = at.mul(&a).inverse().expect("independent columns have an invertible Gram matrix");
    a.mul(&gram_inv).mul(&at)
}

/// `P_p = T_p / n^{b(p,p)} − R_p`, with `R_p` the projection onto the sum of
/// the ranges of `T_q`, `q ≺ p`, taken from the sample.
pub fn projective_projection(
    p: &ColoredPartition,
    sample: &PartitionCategorySample,
    n: usize,
) -> Result<ProjectionReport, LinearError> {
    if !p.is_projective() {
        return Err(LinearError::NotProjective(p.to_string()));
    }
    if p.points() > sample.max_points() {
        return Err(LinearError::MissingSubprojectives(format!(
            "{p} has {} points but the sample stops at {}",
            p.points(),
            sample.max_points()
        )));
    }
    if !sample.saturated() {
        return Err(LinearError::MissingSubprojectives(
            "the sample is not saturated".into(),
        ));
    }
    let (_, loops) = p.compose(p)?;
    let norm: BigInt = Pow::pow(BigInt::from(n), loops);
    let e = t_map(p, n)?
        .to_rational()
        .scale(&BigRational::new(BigInt::one(), norm));

    let mut subs = Vec::new();
    for q in sample.members_at(p.k(), p.l()) {
        if q.upper_colors() == p.upper_colors()
            && q.lower_colors() == p.lower_colors()
            && q.is_projective()
            && q.precedes(p)?
        {
            subs.push(q);
        }
    }
    let side = e.rows();
    let mut stacked = RatMatrix::zeros(side, 0);
    for q in &subs {
        let t = t_map(q, n)?.to_rational();
        let mut wider = RatMatrix::zeros(side, stacked.cols() + t.cols());
        for (r, c, v) in stacked.entries().chain(t.entries().map(|(r, c, v)| (r, c + stacked.cols(), v))) {
            wider.set(r, c, v.clone());
        }
        stacked = wider;
    }
    let r = range_projection(&stacked);
    Ok(ProjectionReport {
        p: p.clone(),
        p_matrix: e.sub(&r),
        r_matrix: r,
        sub_projectives_used: subs,
    })
}

/// Whether `(P_p ⊗ P_q) T_r ≠ 0`.
pub fn cp1_witness_check(
    sample: &PartitionCategorySample,
    p: &ColoredPartition,
    q: &ColoredPartition,
    r: &ColoredPartition,
    n: usize,
) -> Result<bool, LinearError> {
    for x in [p, q] {
        if !x.is_all_white() {
            return Err(LinearError::ShapeMismatch(format!("{x} is not all white")));
        }
    }
    if r.k() != 0 || r.l() != p.k() + q.k() || !r.is_all_white() {
        return Err(LinearError::ShapeMismatch(format!(
            "{r} is not an all-white partition in P(0,{})",
            p.k() + q.k()
        )));
    }
    let pp = projective_projection(p, sample, n)?.p_matrix;
    let pq = projective_projection(q, sample, n)?.p_matrix;
    let v = pp.kron(&pq).mul(&t_map(r, n)?.to_rational());
    Ok(!v.is_zero())
}
