//! Legendre polynomials of dimension `n`.
//!
//! `P_k^n` is the degree-`k` Gegenbauer polynomial with parameter
//! `λ = (n-2)/2`, normalized so that `P_k^n(1) = 1`. For `n = 3` these are
//! the classical Legendre polynomials. They are the zonal spherical
//! harmonics of `S^{n-1}`: every rotation-invariant eigenfunction of the
//! spherical Laplacian is a multiple of `u ↦ P_k^n(ē·u)`.
//!
//! Evaluation uses the three-term recurrence
//!
//! ```text
//! (k+n-2) P_{k+1}^n(t) = (2k+n-2) t P_k^n(t) - k P_{k-1}^n(t)
//! ```
//!
//! which is forward-stable on `[-1, 1]` where `|P_k^n| <= 1`. Derivatives
//! come from the dimension-shift identity
//!
//! ```text
//! d/dt P_k^n = (k(k+n-2)/(n-1)) P_{k-1}^{n+2}
//! ```
//!
//! so they inherit the same stability instead of amplifying rounding noise
//! the way differentiated recurrences do.

use crate::{Error, Result};

/// Largest grid used when hunting for critical points of `P_k^n`.
const SCAN_POINTS: usize = 4096;

/// Bisection tolerance (in `t`) for critical-point refinement.
const BISECT_TOL: f64 = 1e-12;

fn check_dim(n: usize) {
    assert!(n >= 3, "dimension n must be at least 3, got {n}");
}

/// Evaluates `P_k^n(t)`.
pub fn eval(n: usize, k: usize, t: f64) -> f64 {
    check_dim(n);
    debug_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&t), "t out of range: {t}");
    let (mut prev, mut cur) = (1.0, t);
    if k == 0 {
        return prev;
    }
    for j in 1..k {
        let (j_, n_) = (j as f64, n as f64);
        let next = ((2.0 * j_ + n_ - 2.0) * t * cur - j_ * prev) / (j_ + n_ - 2.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Evaluates `P_0^n(t), …, P_kmax^n(t)` in one recurrence pass.
pub fn eval_all(n: usize, kmax: usize, t: f64) -> Vec<f64> {
    check_dim(n);
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(1.0);
    if kmax == 0 {
        return out;
    }
    out.push(t);
    for j in 1..kmax {
        let (j_, n_) = (j as f64, n as f64);
        let next = ((2.0 * j_ + n_ - 2.0) * t * out[j] - j_ * out[j - 1]) / (j_ + n_ - 2.0);
        out.push(next);
    }
    out
}

/// Coefficient in `d/dt P_k^n = deriv_factor(n, k) · P_{k-1}^{n+2}`.
///
/// Equals `k(k+n-2)/(n-1)`; at `t = 1` the shifted polynomial is 1, so this
/// is also the endpoint slope `(P_k^n)'(1)`.
pub fn deriv_factor(n: usize, k: usize) -> f64 {
    let (n_, k_) = (n as f64, k as f64);
    k_ * (k_ + n_ - 2.0) / (n_ - 1.0)
}

/// Evaluates `(P_k^n)'(t)` via the dimension-shift identity.
pub fn derivative(n: usize, k: usize, t: f64) -> f64 {
    if k == 0 {
        check_dim(n);
        return 0.0;
    }
    deriv_factor(n, k) * eval(n + 2, k - 1, t)
}

/// Evaluates `(P_k^n)''(t)` by applying the dimension shift twice.
pub fn second_derivative(n: usize, k: usize, t: f64) -> f64 {
    if k <= 1 {
        check_dim(n);
        return 0.0;
    }
    deriv_factor(n, k) * deriv_factor(n + 2, k - 1) * eval(n + 4, k - 2, t)
}

/// Residual of the Legendre ODE
/// `(1-t²) P'' - (n-1) t P' + k(k+n-2) P` at `t`.
///
/// Identically zero in exact arithmetic; in floating point it measures the
/// combined rounding error of all three recurrences.
pub fn ode_residual(n: usize, k: usize, t: f64) -> f64 {
    let p = eval(n, k, t);
    let dp = derivative(n, k, t);
    let ddp = second_derivative(n, k, t);
    let (n_, k_) = (n as f64, k as f64);
    (1.0 - t * t) * ddp - (n_ - 1.0) * t * dp + k_ * (k_ + n_ - 2.0) * p
}

/// Relative maxima `ν_k^n[1] > ν_k^n[2] > …` of `|P_k^n(t)|` as `t`
/// decreases from 1 to 0.
///
/// There are exactly `⌊k/2⌋` of them: the critical points of `P_k^n` in
/// `[0, 1)` are the zeros of `P_{k-1}^{n+2}` there, plus `t = 0` when `k`
/// is even. Located by a sign-change scan on a 4096-point grid refined by
/// bisection to `1e-12` in `t`.
pub fn relative_maxima(n: usize, k: usize) -> Vec<f64> {
    check_dim(n);
    if k < 2 {
        return Vec::new();
    }
    let q = |t: f64| eval(n + 2, k - 1, t);
    let mut criticals = Vec::with_capacity(k / 2);
    let mut prev_t = 0.0;
    let mut prev_q = q(prev_t);
    for j in 1..SCAN_POINTS {
        let t = j as f64 / (SCAN_POINTS - 1) as f64;
        let qt = q(t);
        if prev_q == 0.0 {
            criticals.push(prev_t);
        } else if prev_q * qt < 0.0 {
            criticals.push(bisect(&q, prev_t, t));
        }
        prev_t = t;
        prev_q = qt;
    }
    // Descending in t: the r-th entry is the r-th maximum met from t = 1.
    criticals.reverse();
    debug_assert_eq!(criticals.len(), k / 2, "critical-point count for (n={n}, k={k})");
    criticals.into_iter().map(|t| eval(n, k, t).abs()).collect()
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    while hi - lo > BISECT_TOL {
        let mid = 0.5 * (lo + hi);
        let fmid = f(mid);
        if fmid == 0.0 {
            return mid;
        }
        if flo * fmid < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
    0.5 * (lo + hi)
}

/// Dimension `N(n, k)` of the space of spherical harmonics of degree `k`
/// on `S^{n-1}`:
///
/// ```text
/// N(n, k) = (n+2k-2)/(n+k-2) · C(n+k-2, n-2),    N(n, 0) = 1.
/// ```
///
/// Computed in exact integer arithmetic; overflow is an error, never a
/// silently wrapped value.
pub fn harmonic_dimension(n: usize, k: usize) -> Result<u128> {
    check_dim(n);
    if k == 0 {
        return Ok(1);
    }
    let b = binomial(n + k - 2, n - 2)?;
    let num = b
        .checked_mul((n + 2 * k - 2) as u128)
        .ok_or(Error::Overflow("harmonic dimension"))?;
    let den = (n + k - 2) as u128;
    debug_assert_eq!(num % den, 0, "N(n,k) must be integral");
    Ok(num / den)
}

/// `N(n, k)` as `f64` (exact for every size reachable with `n ≤ 16`,
/// `k ≤ 512`).
pub fn harmonic_dimension_f64(n: usize, k: usize) -> Result<f64> {
    Ok(harmonic_dimension(n, k)? as f64)
}

/// Binomial coefficient with overflow detection, exact at every step.
fn binomial(n: usize, k: usize) -> Result<u128> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        // acc * (n-j) is divisible by j+1 because acc already equals C(n, j).
        acc = acc
            .checked_mul((n - j) as u128)
            .ok_or(Error::Overflow("binomial coefficient"))?
            / (j as u128 + 1);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    /// Rodrigues-formula evaluation by symbolic differentiation.
    ///
    /// `P_k^n(t) = (-1)^k c_k (1-t²)^{-λ} (d/dt)^k (1-t²)^{λ+k}` with
    /// `λ = (n-3)/2` and `c_k = Γ((n-1)/2) / (2^k Γ((n-1)/2 + k))`.
    /// Functions of the form `(1-t²)^s p(t)` are closed under d/dt:
    /// `s` drops by one and `p ← (1-t²) p' - 2 s t p`, so the k-th
    /// derivative is computed exactly (up to rounding) for any real `λ`.
    fn rodrigues(n: usize, k: usize, t: f64) -> f64 {
        let lambda = (n as f64 - 3.0) / 2.0;
        // Polynomial coefficients of p(t), ascending; start from p = 1 at
        // exponent s = λ + k.
        let mut p = vec![1.0_f64];
        let mut s = lambda + k as f64;
        for _ in 0..k {
            // (1-t²) p'  -  2 s t p
            let mut next = vec![0.0; p.len() + 1];
            for (j, &c) in p.iter().enumerate() {
                if j >= 1 {
                    next[j - 1] += j as f64 * c;
                }
                next[j + 1] += -(j as f64) * c - 2.0 * s * c;
            }
            p = next;
            s -= 1.0;
        }
        debug_assert_eq!(s, lambda);
        let mut poly = 0.0;
        for &c in p.iter().rev() {
            poly = poly * t + c;
        }
        // c_k via the Γ recurrence: Γ(a+k)/Γ(a) = a(a+1)…(a+k-1).
        let a = (n as f64 - 1.0) / 2.0;
        let mut rising = 1.0;
        for j in 0..k {
            rising *= a + j as f64;
        }
        let ck = 1.0 / (2f64.powi(k as i32) * rising);
        if k % 2 == 0 { ck * poly } else { -ck * poly }
    }

    /// Nullity of the Laplacian on homogeneous polynomials of degree `k`
    /// in `n` variables, counted by Gaussian elimination. Independent of
    /// the closed-form dimension formula.
    fn harmonic_dimension_by_rank(n: usize, k: usize) -> usize {
        // Multi-indices of total degree d in n variables.
        fn monomials(n: usize, d: usize) -> Vec<Vec<usize>> {
            if n == 1 {
                return vec![vec![d]];
            }
            let mut out = Vec::new();
            for first in 0..=d {
                for mut rest in monomials(n - 1, d - first) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        let dom = monomials(n, k);
        if k < 2 {
            return dom.len();
        }
        let codom = monomials(n, k - 2);
        let col_of: std::collections::HashMap<Vec<usize>, usize> =
            codom.iter().cloned().zip(0..).collect();
        let mut m = vec![vec![0.0_f64; dom.len()]; codom.len()];
        for (j, alpha) in dom.iter().enumerate() {
            for v in 0..n {
                if alpha[v] >= 2 {
                    let mut beta = alpha.clone();
                    beta[v] -= 2;
                    m[col_of[&beta]][j] += (alpha[v] * (alpha[v] - 1)) as f64;
                }
            }
        }
        // Rank by row reduction with partial pivoting.
        let (rows, cols) = (m.len(), dom.len());
        let mut rank = 0;
        let mut row = 0;
        for col in 0..cols {
            let pivot = (row..rows).max_by(|&a, &b| {
                m[a][col].abs().partial_cmp(&m[b][col].abs()).unwrap()
            });
            let Some(p) = pivot else { break };
            if m[p][col].abs() < 1e-9 {
                continue;
            }
            m.swap(row, p);
            for r in row + 1..rows {
                let f = m[r][col] / m[row][col];
                for c in col..cols {
                    m[r][c] -= f * m[row][c];
                }
            }
            rank += 1;
            row += 1;
        }
        dom.len() - rank
    }

    #[test]
    fn low_degree_closed_forms() {
        for n in 3..=8 {
            let nf = n as f64;
            for j in 0..=100 {
                let t = -1.0 + 2.0 * j as f64 / 100.0;
                assert_abs_diff_eq!(eval(n, 0, t), 1.0);
                assert_abs_diff_eq!(eval(n, 1, t), t);
                assert_abs_diff_eq!(
                    eval(n, 2, t),
                    (nf * t * t - 1.0) / (nf - 1.0),
                    epsilon = 1e-14
                );
            }
        }
    }

    #[test]
    fn dimension_three_is_classical() {
        let p3 = |t: f64| (5.0 * t.powi(3) - 3.0 * t) / 2.0;
        let p4 = |t: f64| (35.0 * t.powi(4) - 30.0 * t * t + 3.0) / 8.0;
        for j in 0..=50 {
            let t = -1.0 + 2.0 * j as f64 / 50.0;
            assert_abs_diff_eq!(eval(3, 3, t), p3(t), epsilon = 1e-14);
            assert_abs_diff_eq!(eval(3, 4, t), p4(t), epsilon = 1e-14);
        }
    }

    #[test]
    fn endpoint_values_and_slopes() {
        for n in 3..=8 {
            for k in 0..=32 {
                assert_abs_diff_eq!(eval(n, k, 1.0), 1.0, epsilon = 1e-12);
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                assert_abs_diff_eq!(eval(n, k, -1.0), sign, epsilon = 1e-12);
                assert_abs_diff_eq!(
                    derivative(n, k, 1.0),
                    deriv_factor(n, k),
                    epsilon = 1e-10 * (1.0 + deriv_factor(n, k))
                );
            }
        }
    }

    #[test]
    fn matches_rodrigues_for_small_degrees() {
        for n in 3..=8 {
            for k in 0..=8 {
                for j in 0..=40 {
                    let t = -0.999 + 1.998 * j as f64 / 40.0;
                    assert_abs_diff_eq!(eval(n, k, t), rodrigues(n, k, t), epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let h = 1e-5;
        for n in [3, 5, 8] {
            for k in [1, 2, 5, 9] {
                for j in 1..20 {
                    let t = -0.95 + 1.9 * j as f64 / 20.0;
                    let fd1 = (eval(n, k, t + h) - eval(n, k, t - h)) / (2.0 * h);
                    assert_abs_diff_eq!(derivative(n, k, t), fd1, epsilon = 1e-6 * deriv_factor(n, k).max(1.0));
                    let fd2 = (derivative(n, k, t + h) - derivative(n, k, t - h)) / (2.0 * h);
                    assert_abs_diff_eq!(
                        second_derivative(n, k, t),
                        fd2,
                        epsilon = 1e-5 * (1.0 + second_derivative(n, k, t).abs())
                    );
                }
            }
        }
    }

    #[test]
    fn ode_residual_spot_checks() {
        for (n, k) in [(3, 7), (4, 12), (6, 25), (8, 64)] {
            for j in 0..=200 {
                let t = -1.0 + 2.0 * j as f64 / 200.0;
                let bound = 1e-9 * (k * k) as f64;
                assert!(
                    ode_residual(n, k, t).abs() < bound,
                    "ODE residual {} at (n={n}, k={k}, t={t})",
                    ode_residual(n, k, t)
                );
            }
        }
    }

    #[test]
    fn relative_maxima_degree_two() {
        // P_2^n(0) = -1/(n-1) is the single interior extremum.
        for n in 3..=8 {
            let nu = relative_maxima(n, 2);
            assert_eq!(nu.len(), 1);
            assert_abs_diff_eq!(nu[0], 1.0 / (n as f64 - 1.0), epsilon = 1e-10);
        }
    }

    #[test]
    fn relative_maxima_strictly_decrease_in_r() {
        for n in 3..=6 {
            for k in 2..=30 {
                let nu = relative_maxima(n, k);
                assert_eq!(nu.len(), k / 2);
                for r in 1..nu.len() {
                    assert!(
                        nu[r] < nu[r - 1],
                        "ν not strictly decreasing at (n={n}, k={k}, r={r})"
                    );
                }
                assert!(nu[0] < 1.0);
            }
        }
    }

    #[test]
    fn relative_maxima_decrease_in_degree() {
        // ν_k^n[r] > ν_{k+1}^n[r] for each fixed r.
        for n in 3..=6 {
            for k in 2..=29 {
                let a = relative_maxima(n, k);
                let b = relative_maxima(n, k + 1);
                for r in 0..a.len().min(b.len()) {
                    assert!(
                        a[r] > b[r],
                        "ν chain broken at (n={n}, k={k}, r={})",
                        r + 1
                    );
                }
            }
        }
    }

    #[test]
    fn even_degree_lower_bound() {
        // Even-degree polynomials never drop below -1/(n-1), the value of
        // P_2^n at 0.
        for n in 3..=8 {
            for k in (2..=40).step_by(2) {
                let min = (0..=4096)
                    .map(|j| eval(n, k, -1.0 + 2.0 * j as f64 / 4096.0))
                    .fold(f64::INFINITY, f64::min);
                assert!(min >= -1.0 / (n as f64 - 1.0) - 1e-12, "(n={n}, k={k}): {min}");
            }
        }
    }

    #[test]
    fn harmonic_dimension_closed_forms() {
        for k in 0..=40 {
            assert_eq!(harmonic_dimension(3, k).unwrap(), (2 * k + 1) as u128);
        }
        assert_eq!(harmonic_dimension(4, 2).unwrap(), 9);
        assert_eq!(harmonic_dimension(5, 3).unwrap(), 30);
    }

    #[test]
    fn harmonic_dimension_matches_laplacian_nullity() {
        for n in 3..=5 {
            for k in 0..=4 {
                assert_eq!(
                    harmonic_dimension(n, k).unwrap(),
                    harmonic_dimension_by_rank(n, k) as u128,
                    "(n={n}, k={k})"
                );
            }
        }
    }

    #[test]
    fn harmonic_dimension_overflow_is_reported() {
        let err = harmonic_dimension(8, usize::MAX / 4).unwrap_err();
        assert!(matches!(err, Error::Overflow(_)));
    }

    proptest! {
        #[test]
        fn recurrence_holds(n in 3usize..9, k in 1usize..80, j in 0usize..=1000) {
            let t = -1.0 + 2.0 * j as f64 / 1000.0;
            let (nf, kf) = (n as f64, k as f64);
            let lhs = (kf + nf - 2.0) * eval(n, k + 1, t);
            let rhs = (2.0 * kf + nf - 2.0) * t * eval(n, k, t) - kf * eval(n, k - 1, t);
            prop_assert!((lhs - rhs).abs() < 1e-11 * (1.0 + kf));
        }

        #[test]
        fn bounded_by_one(n in 3usize..9, k in 0usize..128, j in 0usize..=1000) {
            let t = -1.0 + 2.0 * j as f64 / 1000.0;
            prop_assert!(eval(n, k, t).abs() <= 1.0 + 1e-12);
        }

        #[test]
        fn parity(n in 3usize..9, k in 0usize..64, j in 0usize..=500) {
            let t = j as f64 / 500.0;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert_eq!(eval(n, k, -t), sign * eval(n, k, t));
        }
    }
}
