//! Convex bodies of revolution and their area measures.
//!
//! A body of revolution with axis `ē` is described by its support profile
//! `φ: [-1, 1] → R`, where `h(K, u) = φ(ē·u)` on the sphere. At
//! `u = t ē + √(1-t²) v` the restriction of the support-function Hessian to
//! the tangent space `u^⊥` has exactly two distinct eigenvalues:
//!
//! ```text
//! g1(t) = φ(t) - t φ'(t)                 (multiplicity n-2)
//! g2(t) = (1-t²) φ''(t) + g1(t)          (multiplicity 1)
//! ```
//!
//! (the remaining ambient eigenvalue is 0, along `u`). `φ` is the support
//! function of a convex body iff `g1, g2 ≥ 0`, and of a C²₊ body iff both
//! are strictly positive.
//!
//! The density of the `i`-th area measure is the normalized `i`-th
//! elementary symmetric function of those eigenvalues:
//!
//! ```text
//! s_i(t) = [ C(n-2, i) g1^i + C(n-2, i-1) g1^{i-1} g2 ] / C(n-1, i),
//! ```
//!
//! and the mixed density of `n-1` bodies sharing the axis is the mixed
//! discriminant of their Hessians, which for simultaneously diagonal
//! matrices reduces to a permanent average over the shared eigenframe.

use itertools::Itertools;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::legendre;
use crate::quadrature::QuadratureRule;
use crate::zonal::ZonalFunction;
use crate::{Error, Result};

/// Grid size for support classification and transition scans.
pub const CLASSIFY_GRID: usize = 4096;

/// Strict-positivity threshold for the C²₊ class.
pub const C2PLUS_MARGIN: f64 = 1e-9;

/// Tolerance below which a curvature eigenvalue counts as a violation.
pub const SUPPORT_MARGIN: f64 = -1e-12;

#[derive(Debug, Clone, PartialEq)]
enum Shape {
    Ball { r: f64 },
    Ellipsoid { a: f64, b: f64 },
    Series { coeffs: Vec<f64> },
}

/// A body of revolution in `R^n` (more precisely: a zonal profile; whether
/// it is an actual support function is reported by
/// [`classify_support`](RevolutionBody::classify_support), and operations
/// that need convexity check it explicitly).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BodyRepr", into = "BodyRepr")]
pub struct RevolutionBody {
    n: usize,
    shape: Shape,
}

/// Serialized form; constructor-style kinds normalize to the three
/// canonical shapes on load.
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum BodyRepr {
    Ball { n: usize, #[serde(default = "default_radius")] r: f64 },
    Ellipsoid { n: usize, a: f64, b: f64 },
    Series { n: usize, coeffs: Vec<f64> },
    PerturbedBall { n: usize, k: usize, amplitude: f64 },
    Zonoid { n: usize, multipliers: Vec<f64> },
    GeneralizedZonoid { n: usize, multipliers: Vec<f64> },
}

fn default_radius() -> f64 {
    1.0
}

impl TryFrom<BodyRepr> for RevolutionBody {
    type Error = Error;

    fn try_from(r: BodyRepr) -> Result<Self> {
        match r {
            BodyRepr::Ball { n, r } => RevolutionBody::ball_of_radius(n, r),
            BodyRepr::Ellipsoid { n, a, b } => RevolutionBody::ellipsoid(n, a, b),
            BodyRepr::Series { n, coeffs } => RevolutionBody::from_series(n, coeffs),
            BodyRepr::PerturbedBall { n, k, amplitude } => {
                RevolutionBody::perturbed_ball(n, k, amplitude)
            }
            BodyRepr::Zonoid { n, multipliers } => {
                RevolutionBody::zonoid_from_multipliers(n, &multipliers)
            }
            BodyRepr::GeneralizedZonoid { n, multipliers } => {
                RevolutionBody::generalized_zonoid(n, &multipliers)
            }
        }
    }
}

impl From<RevolutionBody> for BodyRepr {
    fn from(b: RevolutionBody) -> Self {
        match b.shape {
            Shape::Ball { r } => BodyRepr::Ball { n: b.n, r },
            Shape::Ellipsoid { a, b: bb } => BodyRepr::Ellipsoid { n: b.n, a, b: bb },
            Shape::Series { coeffs } => BodyRepr::Series { n: b.n, coeffs },
        }
    }
}

/// Support classification of a profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SupportClass {
    /// Some curvature eigenvalue is decisively negative.
    NotSupport,
    /// Eigenvalues are nonnegative up to rounding; the boundary may be
    /// merely C^{1,1}.
    Support,
    /// Both eigenvalues are strictly positive everywhere.
    C2Plus,
}

/// Outcome of a classification scan.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SupportReport {
    pub class: SupportClass,
    /// Minimum of `g1`, `g2` over the scan grid.
    pub margin: f64,
    /// Location of the minimum.
    pub worst_t: f64,
}

/// Hessian spectrum of the support function at latitude `t`.
///
/// `g1` has multiplicity `n-2`, `g2` multiplicity one; the ambient Hessian
/// also annihilates the radial direction `u`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct HessianEigenvalues {
    pub g1: f64,
    pub g2: f64,
    pub g1_multiplicity: usize,
}

/// Outer bounds for the perturbation intervals of `1 + λ P_k^n`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PerturbationIntervals {
    /// Lower/upper bounds containing every λ for which `1 + λ P_k^n` is a
    /// support function: `[-1/((k(n+k-2)-1) ν), (n-1)/((k-1)(n+k-1))]`
    /// where `ν = ν_k^n[1]`.
    pub support_lo: f64,
    pub support_hi: f64,
    /// Exact interval on which `1 + λ P_k^n ≥ 0`: `[-1, 1/ν]`.
    pub nonneg_lo: f64,
    pub nonneg_hi: f64,
    /// The support bounds are attained exactly when `k = 2`.
    pub exact: bool,
}

impl RevolutionBody {
    /// Unit ball.
    pub fn ball(n: usize) -> Result<Self> {
        Self::ball_of_radius(n, 1.0)
    }

    /// Ball of radius `r`.
    pub fn ball_of_radius(n: usize, r: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::Dimension(n));
        }
        if !(r > 0.0) {
            return Err(Error::Config(format!("ball radius must be positive, got {r}")));
        }
        Ok(Self { n, shape: Shape::Ball { r } })
    }

    /// Ellipsoid of revolution with semi-axis `a` along `ē` and `b` across:
    /// `φ(t) = √(a²t² + b²(1-t²))`.
    pub fn ellipsoid(n: usize, a: f64, b: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::Dimension(n));
        }
        if !(a > 0.0 && b > 0.0) {
            return Err(Error::Config(format!(
                "ellipsoid semi-axes must be positive, got a={a}, b={b}"
            )));
        }
        Ok(Self { n, shape: Shape::Ellipsoid { a, b } })
    }

    /// Profile `1 + amplitude · P_k^n`. No convexity check: the classifier
    /// decides what it is.
    pub fn perturbed_ball(n: usize, k: usize, amplitude: f64) -> Result<Self> {
        let mut coeffs = vec![0.0; k + 1];
        coeffs[0] = 1.0;
        coeffs[k] += amplitude;
        Self::from_series(n, coeffs)
    }

    /// Profile given by Legendre coefficients: `φ = Σ c_k P_k^n`.
    pub fn from_series(n: usize, coeffs: Vec<f64>) -> Result<Self> {
        if n < 3 {
            return Err(Error::Dimension(n));
        }
        if coeffs.is_empty() {
            return Err(Error::Config("series profile needs coefficients".into()));
        }
        Ok(Self { n, shape: Shape::Series { coeffs } })
    }

    /// Zonoid with generating measure given by its multiplier sequence
    /// `a_k[μ]`: the support function has multipliers `a_k[C]·a_k[μ]`,
    /// where `a_k[C]` are the cosine-transform multipliers.
    pub fn zonoid_from_multipliers(n: usize, mu: &[f64]) -> Result<Self> {
        let c = crate::zonal::cosine_multipliers(n, mu.len() - 1)?;
        let prod: Vec<f64> = mu.iter().zip(&c).map(|(m, ck)| m * ck).collect();
        let support = ZonalFunction::from_multipliers(n, &prod)?;
        Self::from_series(n, support.coeffs().to_vec())
    }

    /// Zonoid of a signed measure. The result must still pass the support
    /// classifier; otherwise an error is returned.
    pub fn generalized_zonoid(n: usize, mu: &[f64]) -> Result<Self> {
        let body = Self::zonoid_from_multipliers(n, mu)?;
        let report = body.classify_support();
        if report.class == SupportClass::NotSupport {
            return Err(Error::NotSupport(format!(
                "generalized zonoid has curvature margin {} at t={}",
                report.margin, report.worst_t
            )));
        }
        Ok(body)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Support profile `φ(t)`.
    pub fn support(&self, t: f64) -> f64 {
        match &self.shape {
            Shape::Ball { r } => *r,
            Shape::Ellipsoid { a, b } => (a * a * t * t + b * b * (1.0 - t * t)).sqrt(),
            Shape::Series { coeffs } => {
                let p = legendre::eval_all(self.n, coeffs.len() - 1, t);
                coeffs.iter().zip(&p).map(|(c, pk)| c * pk).sum()
            }
        }
    }

    /// `φ'(t)`.
    pub fn support_d1(&self, t: f64) -> f64 {
        match &self.shape {
            Shape::Ball { .. } => 0.0,
            Shape::Ellipsoid { a, b } => {
                let phi = self.support(t);
                (a * a - b * b) * t / phi
            }
            Shape::Series { coeffs } => {
                // d/dt P_k^n = (k(k+n-2)/(n-1)) P_{k-1}^{n+2}
                let kmax = coeffs.len() - 1;
                if kmax == 0 {
                    return 0.0;
                }
                let p = legendre::eval_all(self.n + 2, kmax - 1, t);
                coeffs
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(k, c)| c * legendre::deriv_factor(self.n, k) * p[k - 1])
                    .sum()
            }
        }
    }

    /// `φ''(t)`.
    pub fn support_d2(&self, t: f64) -> f64 {
        match &self.shape {
            Shape::Ball { .. } => 0.0,
            Shape::Ellipsoid { a, b } => {
                let phi = self.support(t);
                (a * a - b * b) * b * b / phi.powi(3)
            }
            Shape::Series { coeffs } => {
                let kmax = coeffs.len() - 1;
                if kmax <= 1 {
                    return 0.0;
                }
                let p = legendre::eval_all(self.n + 4, kmax - 2, t);
                coeffs
                    .iter()
                    .enumerate()
                    .skip(2)
                    .map(|(k, c)| {
                        c * legendre::deriv_factor(self.n, k)
                            * legendre::deriv_factor(self.n + 2, k - 1)
                            * p[k - 2]
                    })
                    .sum()
            }
        }
    }

    /// Tangential Hessian eigenvalues at latitude `t`.
    pub fn hessian_eigenvalues(&self, t: f64) -> HessianEigenvalues {
        let (g1, g2) = self.curvature_eigs(t);
        HessianEigenvalues { g1, g2, g1_multiplicity: self.n - 2 }
    }

    /// `(g1, g2)` without the struct wrapper.
    pub fn curvature_eigs(&self, t: f64) -> (f64, f64) {
        let g1 = self.support(t) - t * self.support_d1(t);
        let g2 = (1.0 - t * t) * self.support_d2(t) + g1;
        (g1, g2)
    }

    /// Scans `g1, g2` on a 4096-point grid and classifies the profile.
    pub fn classify_support(&self) -> SupportReport {
        let mut margin = f64::INFINITY;
        let mut worst_t = -1.0;
        for j in 0..CLASSIFY_GRID {
            let t = -1.0 + 2.0 * j as f64 / (CLASSIFY_GRID - 1) as f64;
            let (g1, g2) = self.curvature_eigs(t);
            let local = g1.min(g2);
            if local < margin {
                margin = local;
                worst_t = t;
            }
        }
        let class = if margin > C2PLUS_MARGIN {
            SupportClass::C2Plus
        } else if margin > SUPPORT_MARGIN {
            SupportClass::Support
        } else {
            SupportClass::NotSupport
        };
        SupportReport { class, margin, worst_t }
    }

    /// Scaled copy `λ K`.
    pub fn scale(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(Error::Config(format!("scale factor must be positive, got {lambda}")));
        }
        let shape = match &self.shape {
            Shape::Ball { r } => Shape::Ball { r: lambda * r },
            Shape::Ellipsoid { a, b } => Shape::Ellipsoid { a: lambda * a, b: lambda * b },
            Shape::Series { coeffs } => {
                Shape::Series { coeffs: coeffs.iter().map(|c| lambda * c).collect() }
            }
        };
        Ok(Self { n: self.n, shape })
    }

    /// Translate by `c·ē`: adds `c t` to the profile.
    pub fn translate(&self, c: f64) -> Result<Self> {
        let mut coeffs = match &self.shape {
            Shape::Series { coeffs } => coeffs.clone(),
            _ => return self.to_series_exactish(64)?.translate(c),
        };
        if coeffs.len() < 2 {
            coeffs.resize(2, 0.0);
        }
        coeffs[1] += c;
        Self::from_series(self.n, coeffs)
    }

    fn to_series_exactish(&self, kmax: usize) -> Result<Self> {
        let rule = QuadratureRule::for_truncation(self.n, kmax)?;
        self.to_series(&rule, kmax)
    }

    /// Series representation truncated at `kmax` (exact for balls and
    /// series, spectrally convergent for ellipsoids).
    pub fn to_series(&self, rule: &QuadratureRule, kmax: usize) -> Result<Self> {
        if rule.dim() != self.n {
            return Err(Error::Mismatch(format!(
                "rule dimension {} vs body dimension {}",
                rule.dim(),
                self.n
            )));
        }
        let coeffs = match &self.shape {
            Shape::Ball { r } => {
                let mut c = vec![0.0; kmax + 1];
                c[0] = *r;
                c
            }
            Shape::Series { coeffs } => {
                let mut c = coeffs.clone();
                c.resize(kmax + 1, 0.0);
                c
            }
            Shape::Ellipsoid { .. } => {
                ZonalFunction::expand(rule, kmax, |t| self.support(t))?.coeffs().to_vec()
            }
        };
        Self::from_series(self.n, coeffs)
    }

    /// Series coefficients, if this body is stored as a series.
    pub fn series_coeffs(&self) -> Option<&[f64]> {
        match &self.shape {
            Shape::Series { coeffs } => Some(coeffs),
            _ => None,
        }
    }

    /// Support profile as a [`ZonalFunction`] truncated at `kmax`.
    pub fn support_zonal(&self, rule: &QuadratureRule, kmax: usize) -> Result<ZonalFunction> {
        let series = self.to_series(rule, kmax)?;
        let Some(coeffs) = series.series_coeffs() else { unreachable!() };
        ZonalFunction::new(self.n, coeffs.to_vec())
    }

    /// Coefficient-wise combination `x·A + y·B` of two series bodies.
    pub fn combine(x: f64, a: &Self, y: f64, b: &Self) -> Result<Self> {
        let (Some(ca), Some(cb)) = (a.series_coeffs(), b.series_coeffs()) else {
            return Err(Error::Config("combine requires series bodies".into()));
        };
        if a.n != b.n {
            return Err(Error::Mismatch(format!("dimensions {} and {}", a.n, b.n)));
        }
        let len = ca.len().max(cb.len());
        let coeffs = (0..len)
            .map(|k| {
                x * ca.get(k).copied().unwrap_or(0.0) + y * cb.get(k).copied().unwrap_or(0.0)
            })
            .collect();
        Self::from_series(a.n, coeffs)
    }

    /// Density `s_i(t)` of the `i`-th area measure.
    pub fn area_density_at(&self, i: usize, t: f64) -> f64 {
        assert!(i <= self.n - 1, "area measure order {i} out of range for n={}", self.n);
        if i == 0 {
            return 1.0;
        }
        let (g1, g2) = self.curvature_eigs(t);
        let n = self.n;
        // e_i of the eigenvalue multiset {g1 × (n-2), g2}: pick i copies of
        // g1, or i-1 copies plus g2.
        let lead = binom_f64(n - 2, i) * g1.powi(i as i32);
        let cross = binom_f64(n - 2, i - 1) * g1.powi(i as i32 - 1) * g2;
        (lead + cross) / binom_f64(n - 1, i)
    }

    /// The `i`-th area density as a reusable profile object.
    pub fn area_density(&self, i: usize) -> AreaDensity {
        assert!(i <= self.n - 1, "area measure order {i} out of range for n={}", self.n);
        AreaDensity { body: self.clone(), i }
    }
}

/// Density of the `i`-th area measure of a body of revolution, evaluated
/// pointwise or expanded into the Legendre basis.
#[derive(Debug, Clone)]
pub struct AreaDensity {
    body: RevolutionBody,
    i: usize,
}

impl AreaDensity {
    pub fn order(&self) -> usize {
        self.i
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.body.area_density_at(self.i, t)
    }

    /// Expands the density in the dimension-`n` Legendre basis.
    pub fn to_zonal(&self, rule: &QuadratureRule, kmax: usize) -> Result<ZonalFunction> {
        ZonalFunction::expand(rule, kmax, |t| self.eval(t))
    }
}

/// Mixed area density `s(K_1, …, K_{n-1}; t)` of `n-1` coaxial bodies: the
/// mixed discriminant of their tangential Hessians.
///
/// All Hessians share the eigenframe (the axis direction projected to
/// `u^⊥`, plus `n-2` directions orthogonal to it), so the mixed discriminant
/// is the normalized permanent `(1/(n-1)!) Σ_σ Π_j λ_j(σ(j))` of the
/// eigenvalue matrix `λ_j = (g2_j, g1_j, …, g1_j)`.
pub fn mixed_area_density(bodies: &[&RevolutionBody], t: f64) -> Result<f64> {
    let m = bodies.len();
    if m == 0 {
        return Err(Error::Config("mixed area density needs at least one body".into()));
    }
    let n = bodies[0].dim();
    if m != n - 1 {
        return Err(Error::Mismatch(format!(
            "mixed area density in dimension {n} needs {} bodies, got {m}",
            n - 1
        )));
    }
    if bodies.iter().any(|b| b.dim() != n) {
        return Err(Error::Mismatch("bodies of different dimensions".into()));
    }
    let eigs: Vec<(f64, f64)> = bodies.iter().map(|b| b.curvature_eigs(t)).collect();
    // Eigenvalue of body j along frame direction l (direction 0 carries g2).
    let lam = |j: usize, l: usize| if l == 0 { eigs[j].1 } else { eigs[j].0 };
    let mut acc = 0.0;
    let mut count = 0usize;
    for perm in (0..m).permutations(m) {
        let mut prod = 1.0;
        for (j, &l) in perm.iter().enumerate() {
            prod *= lam(j, l);
        }
        acc += prod;
        count += 1;
    }
    Ok(acc / count as f64)
}

/// Outer bounds for the support / nonnegativity intervals of `1 + λP_k^n`.
pub fn perturbation_intervals(n: usize, k: usize) -> Result<PerturbationIntervals> {
    if n < 3 {
        return Err(Error::Dimension(n));
    }
    if k < 2 {
        return Err(Error::Config(format!("perturbation degree must be ≥ 2, got {k}")));
    }
    let nu = legendre::relative_maxima(n, k)[0];
    let (nf, kf) = (n as f64, k as f64);
    Ok(PerturbationIntervals {
        support_lo: -1.0 / ((kf * (nf + kf - 2.0) - 1.0) * nu),
        support_hi: (nf - 1.0) / ((kf - 1.0) * (nf + kf - 1.0)),
        nonneg_lo: -1.0,
        nonneg_hi: 1.0 / nu,
        exact: k == 2,
    })
}

/// Empirical endpoints `(λ⁻, λ⁺)` of the support interval of `1 + λP_k^n`,
/// found by bisecting the classifier margin to `1e-9` in `λ`.
pub fn empirical_support_transition(n: usize, k: usize) -> Result<(f64, f64)> {
    let bounds = perturbation_intervals(n, k)?;
    let is_support = |lambda: f64| -> Result<bool> {
        let body = RevolutionBody::perturbed_ball(n, k, lambda)?;
        Ok(body.classify_support().margin >= 0.0)
    };
    let locate = |sign: f64, outer: f64| -> Result<f64> {
        // The outer bound is guaranteed invalid slightly beyond itself.
        let mut lo = 0.0;
        let mut hi = sign * outer.abs() * 1.5 + sign;
        if is_support(hi)? {
            return Ok(hi);
        }
        while (hi - lo).abs() > 1e-9 {
            let mid = 0.5 * (lo + hi);
            if is_support(mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    };
    let neg = locate(-1.0, bounds.support_lo)?;
    let pos = locate(1.0, bounds.support_hi)?;
    Ok((neg, pos))
}

/// Options for random perturbed-ball sampling.
#[derive(Debug, Clone)]
pub struct RandomBodyOptions {
    /// Highest perturbation degree (inclusive).
    pub max_degree: usize,
    /// Base amplitude; degree `k` draws from `±amplitude/k²`.
    pub amplitude: f64,
    /// Restrict to even degrees (origin-symmetric bodies).
    pub even_only: bool,
}

impl Default for RandomBodyOptions {
    fn default() -> Self {
        Self { max_degree: 6, amplitude: 0.3, even_only: false }
    }
}

/// Draws a random C²₊ perturbed ball, rejection-sampling until the
/// classifier accepts. Deterministic for a given RNG state.
pub fn sample_c2plus_body(
    rng: &mut impl Rng,
    n: usize,
    opts: &RandomBodyOptions,
) -> Result<RevolutionBody> {
    for _ in 0..1000 {
        let mut coeffs = vec![0.0; opts.max_degree + 1];
        coeffs[0] = 1.0;
        for k in 2..=opts.max_degree {
            if opts.even_only && k % 2 == 1 {
                continue;
            }
            let scale = opts.amplitude / (k * k) as f64;
            coeffs[k] = rng.gen_range(-scale..scale);
        }
        let body = RevolutionBody::from_series(n, coeffs)?;
        if body.classify_support().class == SupportClass::C2Plus {
            return Ok(body);
        }
    }
    Err(Error::Config(format!(
        "rejection sampling failed to find a C2+ body (n={n}, amplitude={})",
        opts.amplitude
    )))
}

fn binom_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let mut acc = 1.0f64;
    for j in 0..k.min(n - k) {
        acc = acc * (n - j) as f64 / (j + 1) as f64;
    }
    acc
}
