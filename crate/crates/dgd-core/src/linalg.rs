//! Dense complex linear-algebra helpers shared across the crate.
//!
//! Everything is built on nalgebra's Hermitian eigendecomposition. Ranks and
//! nullspaces go through the augmented Hermitian form [[0, A*], [A, 0]], whose
//! eigenvalues are +-(singular values of A); this avoids the precision loss of
//! forming A* A, which squares small singular values.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::tol;

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

/// Largest absolute entry, used as the deviation measure between matrices.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Deviation of `m` from the identity matrix.
pub fn dev_from_identity(m: &CMat) -> f64 {
    let mut d = CMat::identity(m.nrows(), m.ncols());
    d -= m;
    max_abs(&d)
}

/// Deviation of `m` from being unitary, max |m* m - I|.
pub fn dev_from_unitary(m: &CMat) -> f64 {
    dev_from_identity(&(m.adjoint() * m))
}

/// Deviation of `m` from being Hermitian.
pub fn dev_from_hermitian(m: &CMat) -> f64 {
    max_abs(&(m.clone() - m.adjoint()))
}

/// Singular values of `a` via the augmented Hermitian matrix
/// [[0, A*], [A, 0]], returned in descending order.
pub fn singular_values(a: &CMat) -> Vec<f64> {
    let (r, c) = (a.nrows(), a.ncols());
    let n = r + c;
    let mut h = CMat::zeros(n, n);
    h.view_mut((0, c), (c, r)).copy_from(&a.adjoint());
    h.view_mut((c, 0), (r, c)).copy_from(a);
    let eig = h.symmetric_eigen();
    let mut sv: Vec<f64> = eig.eigenvalues.iter().map(|x| x.abs()).collect();
    sv.sort_by(|x, y| y.partial_cmp(x).unwrap());
    // Each singular value of A appears twice (as +s and -s); keep one copy.
    sv.into_iter().step_by(2).take(r.min(c)).collect()
}

/// Numerical rank: singular values above `tol::RANK_REL` times the largest.
pub fn rank(a: &CMat) -> usize {
    rank_with_floor(a, 0.0)
}

/// Numerical rank with an absolute cutoff floor, for matrices whose natural
/// scale is known a priori: an all-cancellation result (top singular value
/// pure roundoff, below `floor`) then correctly has rank 0 rather than
/// having its noise measured relative to itself.
pub fn rank_with_floor(a: &CMat, floor: f64) -> usize {
    let sv = singular_values(a);
    let top = sv.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0;
    }
    let cut = (tol::RANK_REL * top).max(floor);
    sv.iter().filter(|&&s| s > cut).count()
}

/// Orthonormal basis of the (right) nullspace of `a`: columns `v` with
/// `a v ~ 0`. Computed from the eigendecomposition of the Gram matrix A* A,
/// which is cheap for our very tall constraint matrices; the squared cutoff
/// compensates for the Gram step squaring singular values. Our constraint
/// matrices have 0/1 entries and well-separated spectra, so this is safe.
pub fn nullspace(a: &CMat) -> Vec<CVec> {
    nullspace_of_gram(&(a.adjoint() * a))
}

/// Nullspace basis from a pre-accumulated Gram matrix sum_i A_i* A_i; lets
/// callers with many constraint blocks avoid materializing the tall stack.
pub fn nullspace_of_gram(gram: &CMat) -> Vec<CVec> {
    let eig = gram.clone().symmetric_eigen();
    let top = eig.eigenvalues.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    let cut = if top == 0.0 { 0.0 } else { (tol::RANK_REL * tol::RANK_REL) * top };
    let mut basis = Vec::new();
    for (i, &lam) in eig.eigenvalues.iter().enumerate() {
        if lam.abs() <= cut.max(f64::EPSILON * gram.nrows() as f64) {
            basis.push(eig.eigenvectors.column(i).into_owned());
        }
    }
    basis
}

/// Condition number from the singular values (largest / smallest).
pub fn condition_number(a: &CMat) -> f64 {
    let sv = singular_values(a);
    match (sv.first(), sv.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
        _ => f64::INFINITY,
    }
}

/// |det| of a square complex matrix via LU.
pub fn abs_det(a: &CMat) -> f64 {
    a.clone().lu().determinant().norm()
}

/// Eigen-decomposition of a Hermitian matrix with eigenvalues clustered into
/// groups closer than `tol::EIGEN_CLUSTER` relative to the spectral radius.
/// Returns (sorted eigenvalues, orthonormal eigenvector matrix, cluster
/// boundaries as half-open ranges).
pub fn hermitian_eigen_clustered(h: &CMat) -> (Vec<f64>, CMat, Vec<(usize, usize)>) {
    let eig = h.clone().symmetric_eigen();
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = CMat::zeros(h.nrows(), n);
    for (k, &i) in order.iter().enumerate() {
        vecs.set_column(k, &eig.eigenvectors.column(i));
    }
    let scale = vals.iter().fold(1.0f64, |m, &x| m.max(x.abs()));
    let width = tol::EIGEN_CLUSTER * scale;
    let mut clusters = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || vals[i] - vals[i - 1] > width {
            clusters.push((start, i));
            start = i;
        }
    }
    (vals, vecs, clusters)
}
