//! Gauss–Jacobi quadrature for zonal integrals over `S^{n-1}`.
//!
//! Integrating a zonal function `u ↦ f(ē·u)` over the sphere reduces to a
//! weighted line integral:
//!
//! ```text
//! ∫_{S^{n-1}} f(ē·u) du = ω_{n-1} ∫_{-1}^{1} f(t) (1-t²)^{(n-3)/2} dt,
//! ```
//!
//! where `ω_m` is the surface area of the unit sphere in `R^m`. A rule with
//! `m` nodes is exact for polynomials of degree `2m-1` against the weight
//! `(1-t²)^{(n-3)/2}`, so smooth profiles converge spectrally.
//!
//! Nodes and weights come from the Golub–Welsch algorithm: the symmetric
//! tridiagonal Jacobi matrix of the weight's orthogonal-polynomial
//! recurrence is diagonalized, eigenvalues are the nodes, and the squared
//! first components of the normalized eigenvectors (times the total mass of
//! the weight) are the weights.
//!
//! [`SplitRule`] integrates profiles with a kink at `t = 0` (support
//! functions of segments and their relatives) by joining two Jacobi rules on
//! `[-1, 0]` and `[0, 1]`; each half sees a smooth integrand, so spectral
//! accuracy is restored.

use nalgebra::DMatrix;
use statrs::function::gamma::gamma;

use crate::legendre;
use crate::{Error, Result};

/// Extra nodes beyond the requested truncation order; `kmax + 32` nodes
/// integrate products of two degree-`kmax` expansions exactly with room for
/// the curvature factors that arise in area densities.
pub const DEFAULT_EXTRA_NODES: usize = 32;

/// Surface area `ω_n = 2 π^{n/2} / Γ(n/2)` of the unit ball in `R^n`
/// (i.e. the measure of `S^{n-1}`).
pub fn sphere_area(n: usize) -> f64 {
    2.0 * std::f64::consts::PI.powf(n as f64 / 2.0) / gamma(n as f64 / 2.0)
}

/// Volume `κ_n = π^{n/2} / Γ(n/2 + 1)` of the unit ball in `R^n`.
pub fn ball_volume(n: usize) -> f64 {
    std::f64::consts::PI.powf(n as f64 / 2.0) / gamma(n as f64 / 2.0 + 1.0)
}

/// Nodes and weights of a Gauss–Jacobi rule with weight
/// `(1-x)^alpha (1+x)^beta` on `[-1, 1]`.
fn gauss_jacobi(m: usize, alpha: f64, beta: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if m == 0 {
        return Err(Error::Config("quadrature rule needs at least one node".into()));
    }
    if alpha <= -1.0 || beta <= -1.0 {
        return Err(Error::Config(format!(
            "Jacobi exponents must exceed -1, got alpha={alpha}, beta={beta}"
        )));
    }
    let ab = alpha + beta;
    let mut jac = DMatrix::<f64>::zeros(m, m);
    for j in 0..m {
        let d = if j == 0 {
            (beta - alpha) / (ab + 2.0)
        } else {
            let s = 2.0 * j as f64 + ab;
            (beta * beta - alpha * alpha) / (s * (s + 2.0))
        };
        jac[(j, j)] = d;
    }
    for j in 1..m {
        let jf = j as f64;
        let s = 2.0 * jf + ab;
        let b2 = 4.0 * jf * (jf + alpha) * (jf + beta) * (jf + ab) / (s * s * (s + 1.0) * (s - 1.0));
        let off = b2.sqrt();
        jac[(j, j - 1)] = off;
        jac[(j - 1, j)] = off;
    }
    let eig = jac.symmetric_eigen();
    // Total mass of the weight: 2^{α+β+1} Γ(α+1) Γ(β+1) / Γ(α+β+2).
    let mu0 = 2f64.powf(ab + 1.0) * gamma(alpha + 1.0) * gamma(beta + 1.0) / gamma(ab + 2.0);
    let mut pairs: Vec<(f64, f64)> = (0..m)
        .map(|i| {
            let v0 = eig.eigenvectors.column(i)[0];
            (eig.eigenvalues[i], mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    Ok(pairs.into_iter().unzip())
}

/// Quadrature rule for zonal integrals on `S^{n-1}`.
///
/// Weights already include the factor `ω_{n-1}`, so
/// [`zonal_integral`](Self::zonal_integral) returns sphere integrals
/// directly; the weights of any rule sum to `ω_n`.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    n: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    /// Rule with `m` nodes for dimension `n`.
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Dimension(n));
        }
        let lambda = (n as f64 - 3.0) / 2.0;
        let (mut nodes, mut weights) = gauss_jacobi(m, lambda, lambda)?;
        // The exact rule is symmetric; enforce it so that odd integrands
        // cancel pairwise instead of leaving eigen-solver noise behind.
        for j in 0..m / 2 {
            let r = m - 1 - j;
            let t = 0.5 * (nodes[r] - nodes[j]);
            nodes[j] = -t;
            nodes[r] = t;
            let w = 0.5 * (weights[j] + weights[r]);
            weights[j] = w;
            weights[r] = w;
        }
        if m % 2 == 1 {
            nodes[m / 2] = 0.0;
        }
        let scale = sphere_area(n - 1);
        for w in &mut weights {
            *w *= scale;
        }
        Ok(Self { n, nodes, weights })
    }

    /// Rule sized for expansions truncated at degree `kmax`.
    pub fn for_truncation(n: usize, kmax: usize) -> Result<Self> {
        Self::new(n, kmax + DEFAULT_EXTRA_NODES)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `∫_{S^{n-1}} f(ē·u) du` for a profile `f` smooth on `[-1, 1]`.
    pub fn zonal_integral(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * f(t))
            .sum()
    }

    /// Multiplier `a_k^n[f] = ∫_{S^{n-1}} f(ē·u) P_k^n(ē·u) du`.
    pub fn multiplier(&self, k: usize, f: impl Fn(f64) -> f64) -> f64 {
        self.zonal_integral(|t| f(t) * legendre::eval(self.n, k, t))
    }

    /// All multipliers `a_0^n[f], …, a_kmax^n[f]` in one pass over the nodes.
    pub fn multipliers_up_to(&self, kmax: usize, f: impl Fn(f64) -> f64) -> Vec<f64> {
        let mut out = vec![0.0; kmax + 1];
        for (&t, &w) in self.nodes.iter().zip(&self.weights) {
            let p = legendre::eval_all(self.n, kmax, t);
            let wf = w * f(t);
            for (o, pk) in out.iter_mut().zip(&p) {
                *o += wf * pk;
            }
        }
        out
    }
}

/// Two-piece rule for profiles smooth on `[-1, 0]` and `[0, 1]` but kinked
/// at the origin.
///
/// Each half `∫_0^1 g(t)(1-t²)^{(n-3)/2} dt` is mapped to `[-1, 1]`; the
/// factor `(1-t)^{(n-3)/2}` becomes a Jacobi weight at the boundary node
/// `x = 1`, and the smooth remainder `(1+t)^{(n-3)/2}` is folded into the
/// weights. The negative half reuses the same rule by reflection.
#[derive(Debug, Clone)]
pub struct SplitRule {
    n: usize,
    /// Nodes in `(0, 1)`.
    nodes: Vec<f64>,
    /// Weights for one half, including the `ω_{n-1}` zonal factor.
    weights: Vec<f64>,
}

impl SplitRule {
    /// Split rule with `m` nodes per half.
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Dimension(n));
        }
        let lambda = (n as f64 - 3.0) / 2.0;
        let (xs, ws) = gauss_jacobi(m, lambda, 0.0)?;
        let scale = sphere_area(n - 1);
        let mut nodes = Vec::with_capacity(m);
        let mut weights = Vec::with_capacity(m);
        for (x, w) in xs.into_iter().zip(ws) {
            let t = 0.5 * (x + 1.0);
            // dt = dx/2; (1-t²)^λ = (1-x)^λ · ((3+x)/4)^λ · ... :
            //   1-t = (1-x)/2,  1+t = (3+x)/2, so the non-Jacobi part is
            //   ((3+x)/2)^λ (1/2)^λ.
            let smooth = ((3.0 + x) / 2.0).powf(lambda) * 0.5f64.powf(lambda);
            nodes.push(t);
            weights.push(scale * 0.5 * w * smooth);
        }
        Ok(Self { n, nodes, weights })
    }

    /// Rule sized for truncation order `kmax`.
    pub fn for_truncation(n: usize, kmax: usize) -> Result<Self> {
        Self::new(n, kmax + DEFAULT_EXTRA_NODES)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `∫_{S^{n-1}} f(ē·u) du`, exact in each half-interval separately.
    pub fn zonal_integral(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * (f(t) + f(-t)))
            .sum()
    }

    /// Multiplier `a_k^n[f]` for a kinked profile.
    pub fn multiplier(&self, k: usize, f: impl Fn(f64) -> f64) -> f64 {
        self.zonal_integral(|t| f(t) * legendre::eval(self.n, k, t))
    }

    /// All multipliers up to `kmax` in one pass.
    pub fn multipliers_up_to(&self, kmax: usize, f: impl Fn(f64) -> f64) -> Vec<f64> {
        let mut out = vec![0.0; kmax + 1];
        for (&t, &w) in self.nodes.iter().zip(&self.weights) {
            let p = legendre::eval_all(self.n, kmax, t);
            let (fp, fm) = (w * f(t), w * f(-t));
            for (k, (o, pk)) in out.iter_mut().zip(&p).enumerate() {
                // P_k(-t) = (-1)^k P_k(t) exactly.
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                *o += (fp + sign * fm) * pk;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use statrs::function::gamma::gamma;
    use std::f64::consts::PI;

    /// Even moment `ω_{n-1} ∫ t^{2j} (1-t²)^{(n-3)/2} dt` via the Beta
    /// function: the integral is `B(j + 1/2, (n-1)/2)`.
    fn even_moment(n: usize, j: usize) -> f64 {
        let a = j as f64 + 0.5;
        let b = (n as f64 - 1.0) / 2.0;
        sphere_area(n - 1) * gamma(a) * gamma(b) / gamma(a + b)
    }

    #[test]
    fn weights_sum_to_sphere_area() {
        for n in 3..=8 {
            for m in [8, 33, 160] {
                let rule = QuadratureRule::new(n, m).unwrap();
                let total: f64 = rule.weights().iter().sum();
                assert_abs_diff_eq!(total, sphere_area(n), epsilon = 1e-10 * sphere_area(n));
            }
        }
    }

    #[test]
    fn sphere_constants() {
        assert_abs_diff_eq!(sphere_area(1), 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(sphere_area(2), 2.0 * PI, epsilon = 1e-13);
        assert_abs_diff_eq!(sphere_area(3), 4.0 * PI, epsilon = 1e-13);
        assert_abs_diff_eq!(ball_volume(2), PI, epsilon = 1e-14);
        assert_abs_diff_eq!(ball_volume(3), 4.0 * PI / 3.0, epsilon = 1e-13);
        for n in 1..=9 {
            assert_abs_diff_eq!(
                sphere_area(n),
                n as f64 * ball_volume(n),
                epsilon = 1e-12 * sphere_area(n)
            );
        }
    }

    #[test]
    fn even_moments_match_beta_values() {
        for n in 3..=8 {
            let rule = QuadratureRule::new(n, 24).unwrap();
            for j in 0..=10 {
                let q = rule.zonal_integral(|t| t.powi(2 * j as i32));
                assert_abs_diff_eq!(q, even_moment(n, j), epsilon = 1e-12 * even_moment(n, 0));
            }
        }
    }

    #[test]
    fn odd_integrands_vanish() {
        for n in 3..=6 {
            let rule = QuadratureRule::new(n, 41).unwrap();
            for j in [1, 3, 7] {
                assert!(rule.zonal_integral(|t| t.powi(j)).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn legendre_orthogonality() {
        for n in [3, 5, 6] {
            let rule = QuadratureRule::new(n, 60).unwrap();
            for j in 0..=20 {
                for k in 0..=20 {
                    let got = rule.multiplier(k, |t| legendre::eval(n, j, t));
                    let want = if j == k {
                        sphere_area(n) / legendre::harmonic_dimension_f64(n, k).unwrap()
                    } else {
                        0.0
                    };
                    assert_abs_diff_eq!(got, want, epsilon = 1e-10);
                }
            }
        }
    }

    #[test]
    fn split_rule_matches_symbolic_segment_multipliers() {
        // ∫_{S²} |ē·u| du = 2π and the degree-2 multiplier is π/2,
        // degree-4 is -π/12 (Beta-integral evaluations frozen by hand).
        let rule = SplitRule::new(3, 40).unwrap();
        assert_abs_diff_eq!(rule.multiplier(0, f64::abs), 2.0 * PI, epsilon = 1e-10);
        assert_abs_diff_eq!(rule.multiplier(2, f64::abs), PI / 2.0, epsilon = 1e-10);
        assert_abs_diff_eq!(rule.multiplier(4, f64::abs), -PI / 12.0, epsilon = 1e-10);
        for k in [1, 3, 5, 9] {
            assert!(rule.multiplier(k, f64::abs).abs() < 1e-13);
        }
    }

    #[test]
    fn split_rule_agrees_with_plain_rule_on_smooth_profiles() {
        for n in 3..=6 {
            let plain = QuadratureRule::new(n, 80).unwrap();
            let split = SplitRule::new(n, 80).unwrap();
            let f = |t: f64| (1.0 + 0.3 * t + 0.2 * t * t).sqrt();
            for k in 0..=10 {
                assert_abs_diff_eq!(
                    plain.multiplier(k, f),
                    split.multiplier(k, f),
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn node_count_doubling_is_converged() {
        for n in 3..=6 {
            let a = QuadratureRule::new(n, 96).unwrap();
            let b = QuadratureRule::new(n, 192).unwrap();
            let f = |t: f64| (2.0 + t).ln() * (1.0 + 0.5 * t * t);
            for k in 0..=32 {
                assert!(
                    (a.multiplier(k, f) - b.multiplier(k, f)).abs() < 1e-11,
                    "(n={n}, k={k})"
                );
            }
        }
    }

    #[test]
    fn multiplier_batch_matches_single_calls() {
        let rule = QuadratureRule::new(4, 48).unwrap();
        let f = |t: f64| (1.0 + t * t).sqrt();
        let batch = rule.multipliers_up_to(16, f);
        for (k, m) in batch.iter().enumerate() {
            assert_abs_diff_eq!(*m, rule.multiplier(k, f), epsilon = 1e-13);
        }
        let split = SplitRule::new(4, 48).unwrap();
        let batch = split.multipliers_up_to(16, f64::abs);
        for (k, m) in batch.iter().enumerate() {
            assert_abs_diff_eq!(*m, split.multiplier(k, f64::abs), epsilon = 1e-13);
        }
    }

    proptest! {
        /// Exactness on random polynomials of degree ≤ 2m-1.
        #[test]
        fn exact_on_polynomials(
            n in 3usize..9,
            coeffs in proptest::collection::vec(-2.0..2.0f64, 1..12),
        ) {
            let rule = QuadratureRule::new(n, 16).unwrap();
            let horner = |t: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c);
            let exact: f64 = coeffs
                .iter()
                .enumerate()
                .filter(|(d, _)| d % 2 == 0)
                .map(|(d, c)| c * even_moment(n, d / 2))
                .sum();
            prop_assert!((rule.zonal_integral(horner) - exact).abs() < 1e-11 * (1.0 + exact.abs()));
        }
    }
}
