//! Independent oracles for the acceptance suite. These deliberately
//! avoid the library's own formulas: curvature data comes from finite
//! differences of the homogeneous support extension, and mixed
//! discriminants from determinant polarization.

use mvlab::RevolutionBody;
use nalgebra::DMatrix;

/// Ambient Hessian of the 1-homogeneous extension `h(x) = ‖x‖ φ(ē·x/‖x‖)`
/// at the sphere point with latitude `t`, by Richardson-extrapolated
/// central differences, restricted to an orthonormal basis of `u^⊥`.
pub fn fd_tangential_hessian(body: &RevolutionBody, t: f64) -> DMatrix<f64> {
    let n = body.dim();
    let h = |x: &[f64]| {
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        body.support(x[0] / norm) * norm
    };
    let mut u = vec![0.0; n];
    u[0] = t;
    u[1] = (1.0 - t * t).sqrt();
    let hess_entry = |a: usize, b: usize, d: f64| {
        let mut xs = [u.clone(), u.clone(), u.clone(), u.clone()];
        xs[0][a] += d;
        xs[0][b] += d;
        xs[1][a] += d;
        xs[1][b] -= d;
        xs[2][a] -= d;
        xs[2][b] += d;
        xs[3][a] -= d;
        xs[3][b] -= d;
        (h(&xs[0]) - h(&xs[1]) - h(&xs[2]) + h(&xs[3])) / (4.0 * d * d)
    };
    let d = 2e-3;
    let mut full = DMatrix::zeros(n, n);
    for a in 0..n {
        for b in a..n {
            let coarse = hess_entry(a, b, d);
            let fine = hess_entry(a, b, d / 2.0);
            let v = (4.0 * fine - coarse) / 3.0;
            full[(a, b)] = v;
            full[(b, a)] = v;
        }
    }
    let mut basis = DMatrix::zeros(n, n - 1);
    basis[(0, 0)] = -u[1];
    basis[(1, 0)] = u[0];
    for j in 1..n - 1 {
        basis[(j + 1, j)] = 1.0;
    }
    basis.transpose() * full * basis
}

/// Mixed discriminant by polarization:
/// `D(A_1,…,A_m) = (1/m!) Σ_{∅≠S} (-1)^{m-|S|} det(Σ_{j∈S} A_j)`.
pub fn mixed_discriminant(mats: &[DMatrix<f64>]) -> f64 {
    let m = mats.len();
    let mut acc = 0.0;
    for mask in 1u32..(1 << m) {
        let mut sum = DMatrix::zeros(m, m);
        for (j, mat) in mats.iter().enumerate() {
            if mask & (1 << j) != 0 {
                sum += mat;
            }
        }
        let sign = if (m - mask.count_ones() as usize) % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        acc += sign * sum.determinant();
    }
    let fact: f64 = (1..=m).map(|j| j as f64).product();
    acc / fact
}
