//! Small fixed-size helpers shared by the geometry modules.

use nalgebra::{DMatrix, SMatrix};

use crate::octonion::{ImOctonion, Vector7};

pub type Matrix7 = SMatrix<f64, 7, 7>;
pub type Matrix2 = SMatrix<f64, 2, 2>;

/// Modified Gram–Schmidt with one re-orthogonalization pass. Returns `None`
/// if a vector collapses below `min_norm` after projection.
pub fn gram_schmidt(vs: &[ImOctonion], min_norm: f64) -> Option<Vec<ImOctonion>> {
    let mut out: Vec<ImOctonion> = Vec::with_capacity(vs.len());
    for v in vs {
        let mut w = v.0;
        for _ in 0..2 {
            for q in &out {
                w -= q.0 * q.0.dot(&w);
            }
        }
        let n = w.norm();
        if n < min_norm {
            return None;
        }
        out.push(ImOctonion(w / n));
    }
    Some(out)
}

/// Matrix whose columns are the given vectors.
pub fn columns<const K: usize>(vs: &[ImOctonion; K]) -> SMatrix<f64, 7, K> {
    SMatrix::<f64, 7, K>::from_fn(|i, j| vs[j].0[i])
}

/// Singular values of the 7×k matrix with the given columns, descending.
pub fn singular_values(vs: &[ImOctonion]) -> Vec<f64> {
    let m = DMatrix::<f64>::from_fn(7, vs.len(), |i, j| vs[j].0[i]);
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Sine of the largest principal angle between two 3-dimensional subspaces
/// given by orthonormal frames: the spectral norm of `(I − P_a) B`.
pub fn subspace_sin_distance(a: &[ImOctonion; 3], b: &[ImOctonion; 3]) -> f64 {
    let qa = columns(a);
    let qb = columns(b);
    let resid = qb - qa * (qa.transpose() * qb);
    resid.singular_values().max().min(1.0)
}

/// Largest principal angle between two 3-dimensional subspaces, radians.
pub fn subspace_distance(a: &[ImOctonion; 3], b: &[ImOctonion; 3]) -> f64 {
    subspace_sin_distance(a, b).asin()
}

pub fn max_abs_diff7(a: &Matrix7, b: &Matrix7) -> f64 {
    (a - b).amax()
}

pub fn apply(m: &Matrix7, v: &ImOctonion) -> ImOctonion {
    ImOctonion(m * v.0)
}

pub fn vector7(c: [f64; 7]) -> Vector7 {
    Vector7::from(c)
}

pub fn rows7(m: &Matrix7) -> [[f64; 7]; 7] {
    std::array::from_fn(|i| std::array::from_fn(|j| m[(i, j)]))
}
