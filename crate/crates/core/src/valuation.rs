//! Minkowski valuations on bodies of revolution.
//!
//! A degree-`i`, rotation-equivariant Minkowski valuation acts on support
//! functions through the `i`-th area measure and a zonal generating
//! function `f`:
//!
//! ```text
//! h(Φ_i K, ·) = S_i(K, ·) ∗ f,
//! ```
//!
//! which in the Legendre basis is the multiplier product
//! `c_k(Φ_i K) = a_k^n[f] · c_k(s_i(K))`. Balls are always fixed points up
//! to scale: `Φ_i(r B) = r^i a_0^n[f] B`.
//!
//! The linearization of the renormalized map at the ball is diagonal with
//! per-degree factors
//!
//! ```text
//! μ_k = i · (1-k)(k+n-1)/(n-1) · a_k^n[f] / a_0^n[f],
//! ```
//!
//! so `|μ_k| < 1` for all `k ≥ 2` makes the ball a locally attracting
//! fixed point of the (even) iteration. [`gap_check`](MinkowskiValuation::gap_check)
//! reports the margins of the two relevant multiplier bounds: the sharp
//! bound satisfied by every body-generated valuation,
//! `|a_k| ≤ a_0/((k-1)(n+k-1))`, and the stricter contraction bound with
//! the extra factor `(n-1)/i`.

use serde::{Deserialize, Serialize};

use crate::body::{mixed_area_density, RevolutionBody, SupportClass};
use crate::quadrature::QuadratureRule;
use crate::zonal::{box_multiplier, cosine_multipliers, ZonalFunction};
use crate::{Error, Result};

/// Denominators closer to zero than this are treated as singular in
/// [`MinkowskiValuation::resolvent`].
pub const RESOLVENT_GUARD: f64 = 1e-8;

/// Generating-function description, as accepted in configuration files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    /// `f(u) = |ē·u|`, the support function of the segment `[-ē, ē]`.
    Segment,
    /// `f(u) = ½|ē·u|`; with `i = n-1` this is the projection body map.
    Projection,
    /// Support function of a body of revolution.
    Body { body: RevolutionBody },
    /// Explicit multiplier sequence `a_k^n[f]`.
    Multipliers { values: Vec<f64> },
}

/// Serialized description of a valuation: `{"n":…, "i":…, "generator":…}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValuationSpec {
    pub n: usize,
    pub i: usize,
    pub generator: GeneratorSpec,
}

/// A zonal Minkowski valuation of degree `i` on `R^n`, truncated at
/// harmonic degree `kmax`.
#[derive(Debug, Clone)]
pub struct MinkowskiValuation {
    n: usize,
    i: usize,
    /// Multipliers `a_k^n[f]` of the generating function.
    generator: Vec<f64>,
    rule: QuadratureRule,
}

impl MinkowskiValuation {
    /// Builds a valuation from explicit generator multipliers.
    ///
    /// Requires `a_0 > 0`: the ball must map to a nondegenerate ball.
    pub fn from_multipliers(n: usize, i: usize, mut generator: Vec<f64>) -> Result<Self> {
        if n < 3 {
            return Err(Error::Dimension(n));
        }
        if i == 0 || i > n - 1 {
            return Err(Error::Degree { n, i });
        }
        if generator.is_empty() || generator[0] <= 0.0 {
            return Err(Error::Config(
                "generator must have positive mean multiplier a_0".into(),
            ));
        }
        // Degree-1 harmonics only shift the Steiner point; a valuation that
        // keeps track of them is still translation-covariant, but the
        // odd-degree part plays no role in any of the bounds below.
        if generator.len() == 1 {
            generator.push(0.0);
        }
        let kmax = generator.len() - 1;
        let rule = QuadratureRule::for_truncation(n, kmax)?;
        Ok(Self { n, i, generator, rule })
    }

    /// Valuation generated by the segment `[-ē, ē]`: `f = |ē·u|`.
    pub fn segment_generated(n: usize, i: usize, kmax: usize) -> Result<Self> {
        Self::from_multipliers(n, i, cosine_multipliers(n, kmax)?)
    }

    /// The projection-body map: degree `n-1` with `f = ½|ē·u|` (by the
    /// Cauchy projection formula). Satisfies `Π B^n = κ_{n-1} B^n`.
    pub fn projection_body(n: usize, kmax: usize) -> Result<Self> {
        let half: Vec<f64> = cosine_multipliers(n, kmax)?.iter().map(|a| 0.5 * a).collect();
        Self::from_multipliers(n, n - 1, half)
    }

    /// Valuation generated by the support function of a body of revolution.
    pub fn body_generated(n: usize, i: usize, body: &RevolutionBody, kmax: usize) -> Result<Self> {
        if body.dim() != n {
            return Err(Error::Mismatch(format!(
                "generator body dimension {} vs valuation dimension {n}",
                body.dim()
            )));
        }
        let rule = QuadratureRule::for_truncation(n, kmax)?;
        let f = body.support_zonal(&rule, kmax)?;
        Self::from_multipliers(n, i, f.multipliers())
    }

    /// Builds a valuation from a serialized description.
    pub fn from_spec(spec: &ValuationSpec, kmax: usize) -> Result<Self> {
        match &spec.generator {
            GeneratorSpec::Segment => Self::segment_generated(spec.n, spec.i, kmax),
            GeneratorSpec::Projection => {
                if spec.i != spec.n - 1 {
                    return Err(Error::Config(format!(
                        "projection generator requires i = n-1, got i={} for n={}",
                        spec.i, spec.n
                    )));
                }
                Self::projection_body(spec.n, kmax)
            }
            GeneratorSpec::Body { body } => Self::body_generated(spec.n, spec.i, body, kmax),
            GeneratorSpec::Multipliers { values } => {
                Self::from_multipliers(spec.n, spec.i, values.clone())
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.i
    }

    pub fn kmax(&self) -> usize {
        self.generator.len() - 1
    }

    /// Generator multipliers `a_k^n[f]`.
    pub fn generator_multipliers(&self) -> &[f64] {
        &self.generator
    }

    /// The quadrature rule used for all expansions at this truncation.
    pub fn quadrature(&self) -> &QuadratureRule {
        &self.rule
    }

    /// Rescales the generator so that `a_0 = 1`.
    pub fn normalized(&self) -> Self {
        let a0 = self.generator[0];
        Self {
            n: self.n,
            i: self.i,
            generator: self.generator.iter().map(|a| a / a0).collect(),
            rule: self.rule.clone(),
        }
    }

    /// Support function of `Φ_i K` in the Legendre basis.
    pub fn apply(&self, body: &RevolutionBody) -> Result<ZonalFunction> {
        if body.dim() != self.n {
            return Err(Error::Mismatch(format!(
                "body dimension {} vs valuation dimension {}",
                body.dim(),
                self.n
            )));
        }
        let density = body.area_density(self.i);
        let si = density.to_zonal(&self.rule, self.kmax())?;
        let coeffs = si
            .coeffs()
            .iter()
            .zip(&self.generator)
            .map(|(c, a)| c * a)
            .collect();
        ZonalFunction::new(self.n, coeffs)
    }

    /// `Φ_i K` as a body of revolution (series profile).
    pub fn apply_body(&self, body: &RevolutionBody) -> Result<RevolutionBody> {
        let h = self.apply(body)?;
        RevolutionBody::from_series(self.n, h.coeffs().to_vec())
    }

    /// Per-degree multipliers of the linearized (mean-width renormalized)
    /// map at the ball, raised to the `m`-th power:
    /// `μ_k^m = [ i · (1-k)(k+n-1)/(n-1) · a_k/a_0 ]^m`.
    pub fn linearization_multipliers(&self, m: u32) -> Vec<f64> {
        let a0 = self.generator[0];
        self.generator
            .iter()
            .enumerate()
            .map(|(k, a)| {
                (self.i as f64 * box_multiplier(self.n, k) * a / a0).powi(m as i32)
            })
            .collect()
    }

    /// Spectral-gap report for the generator.
    pub fn gap_check(&self) -> GapReport {
        let a0 = self.generator[0];
        let (nf, i_f) = (self.n as f64, self.i as f64);
        let mut entries = Vec::new();
        let mut min_body = f64::INFINITY;
        let mut min_contraction = f64::INFINITY;
        for (k, &ak) in self.generator.iter().enumerate().skip(2) {
            let kf = k as f64;
            let bound_body = a0 / ((kf - 1.0) * (nf + kf - 1.0));
            let bound_contraction = bound_body * (nf - 1.0) / i_f;
            let margin_body = bound_body - ak.abs();
            let margin_contraction = bound_contraction - ak.abs();
            min_body = min_body.min(margin_body);
            min_contraction = min_contraction.min(margin_contraction);
            entries.push(GapEntry {
                k,
                multiplier: ak,
                bound_body,
                margin_body,
                bound_contraction,
                margin_contraction,
                linearization: i_f * box_multiplier(self.n, k) * ak / a0,
            });
        }
        GapReport {
            n: self.n,
            i: self.i,
            a0,
            decay_exponent: fit_decay_exponent(&self.generator),
            min_margin_body: min_body,
            min_margin_contraction: min_contraction,
            // The contraction bound is a strict inequality; margins that
            // only clear zero by rounding noise (borderline generators,
            // where the margin is exactly zero in exact arithmetic) must
            // not count.
            contraction: min_contraction > 1e-12 * a0.abs(),
            entries,
        }
    }

    /// Fréchet derivative `dΦ_i(h)[g]` evaluated through the mixed area
    /// density: `i · s(g, h[i-1], B[n-1-i]) ∗ f`.
    pub fn derivative(&self, base: &RevolutionBody, dir: &RevolutionBody) -> Result<ZonalFunction> {
        let ball = RevolutionBody::ball(self.n)?;
        let mut slots: Vec<&RevolutionBody> = vec![dir];
        for _ in 0..self.i - 1 {
            slots.push(base);
        }
        for _ in 0..self.n - 1 - self.i {
            slots.push(&ball);
        }
        let density = ZonalFunction::expand(&self.rule, self.kmax(), |t| {
            self.i as f64 * mixed_area_density(&slots, t).expect("validated slot count")
        })?;
        let coeffs = density
            .coeffs()
            .iter()
            .zip(&self.generator)
            .map(|(c, a)| c * a)
            .collect();
        ZonalFunction::new(self.n, coeffs)
    }

    /// Compares the analytic derivative against central finite differences
    /// of `Φ_i` itself.
    pub fn derivative_fd_check(
        &self,
        base: &RevolutionBody,
        dir: &RevolutionBody,
        eps: f64,
    ) -> Result<FdCheckReport> {
        let kmax = self.kmax();
        let base_s = base.to_series(&self.rule, kmax)?;
        let dir_s = dir.to_series(&self.rule, kmax)?;
        let plus = RevolutionBody::combine(1.0, &base_s, eps, &dir_s)?;
        let minus = RevolutionBody::combine(1.0, &base_s, -eps, &dir_s)?;
        let fd = self
            .apply(&plus)?
            .sub(&self.apply(&minus)?)?
            .scale(0.5 / eps);
        let analytic = self.derivative(&base_s, &dir_s)?;
        let mut sup_diff = 0.0f64;
        let mut sup_ref = 0.0f64;
        for j in 0..=512 {
            let t = -1.0 + 2.0 * j as f64 / 512.0;
            sup_diff = sup_diff.max((fd.eval(t) - analytic.eval(t)).abs());
            sup_ref = sup_ref.max(analytic.eval(t).abs());
        }
        Ok(FdCheckReport {
            eps,
            sup_norm_analytic: sup_ref,
            sup_norm_difference: sup_diff,
            relative_error: sup_diff / sup_ref.max(f64::MIN_POSITIVE),
        })
    }

    /// Fixed-point iteration of `Φ_i` (or `Φ_i ∘ Φ_i` when `squared`),
    /// renormalizing the mean width to the unit ball's after every step.
    ///
    /// Starting bodies are re-expanded through quadrature each step, so the
    /// iteration sees the full nonlinear map, not its linearization.
    pub fn iterate(
        &self,
        start: &RevolutionBody,
        steps: usize,
        squared: bool,
    ) -> Result<IterationReport> {
        let kmax = self.kmax();
        let track = kmax.min(TRACKED_DEGREES);
        let mut current = start.to_series(&self.rule, kmax)?;
        let mut report = IterationReport {
            n: self.n,
            i: self.i,
            squared,
            steps_requested: steps,
            steps_completed: 0,
            predicted_ratios: self.linearization_multipliers(if squared { 2 } else { 1 })
                [..=track]
                .iter()
                .map(|m| m.abs())
                .collect(),
            steps: Vec::with_capacity(steps),
            fitted_ratios: vec![None; track + 1],
            stop_reason: None,
        };
        let mut prev_coeffs: Option<Vec<f64>> = None;
        for step in 0..steps {
            let once = self.apply_body(&current)?;
            let image = if squared { self.apply_body(&once)? } else { once };
            let coeffs = image.series_coeffs().expect("apply_body returns series");
            let gamma = coeffs[0];
            if !(gamma > 0.0) || !gamma.is_finite() {
                report.stop_reason =
                    Some(format!("mean width collapsed at step {step}: {gamma}"));
                break;
            }
            let normalized: Vec<f64> = coeffs.iter().map(|c| c / gamma).collect();
            current = RevolutionBody::from_series(self.n, normalized.clone())?;
            let class = current.classify_support();
            let sup = (0..=1024)
                .map(|j| {
                    let t = -1.0 + 2.0 * j as f64 / 1024.0;
                    (current.support(t) - 1.0).abs()
                })
                .fold(0.0f64, f64::max);
            let l2 = {
                let mut f = ZonalFunction::new(self.n, normalized.clone())?;
                f = f.sub(&ZonalFunction::one(self.n, kmax)?)?;
                f.l2_norm()
            };
            let ratios: Vec<Option<f64>> = match &prev_coeffs {
                Some(prev) => (0..=track)
                    .map(|k| {
                        let (num, den) = (normalized[k].abs(), prev[k].abs());
                        (den > RATIO_FLOOR && num > RATIO_FLOOR).then(|| num / den)
                    })
                    .collect(),
                None => vec![None; track + 1],
            };
            report.steps.push(IterationStep {
                step,
                gamma,
                sup_distance: sup,
                l2_distance: l2,
                class: class.class,
                margin: class.margin,
                coeff_abs: normalized[..=track].iter().map(|c| c.abs()).collect(),
                ratios,
            });
            report.steps_completed = step + 1;
            prev_coeffs = Some(normalized);
            if class.class == SupportClass::NotSupport {
                report.stop_reason = Some(format!(
                    "iterate left the support cone at step {step} (margin {:.3e} at t={:.4})",
                    class.margin, class.worst_t
                ));
                break;
            }
        }
        // Geometric mean of the observed per-step ratios, skipping the
        // first step (transient) and noise-floored entries.
        for k in 0..=track {
            let usable: Vec<f64> = report
                .steps
                .iter()
                .skip(1)
                .filter_map(|s| s.ratios[k])
                .collect();
            if !usable.is_empty() {
                let log_mean =
                    usable.iter().map(|r| r.ln()).sum::<f64>() / usable.len() as f64;
                report.fitted_ratios[k] = Some(log_mean.exp());
            }
        }
        Ok(report)
    }

    /// `F_m(h) = Φ^{2m}(h) - (π_0 Φ^{2m}(h) / π_0 h) · h` for the
    /// mean-normalized generator (`a_0 = 1`).
    ///
    /// Zeros of `F_m` on mean-width-1 profiles are exactly the fixed points
    /// of the renormalized even iteration; `F_m(ball) = 0`.
    pub fn fm_residual(&self, h: &RevolutionBody, m: u32) -> Result<ZonalFunction> {
        let val = self.normalized();
        let mut image = h.to_series(&self.rule, self.kmax())?;
        for _ in 0..2 * m {
            image = val.apply_body(&image)?;
        }
        let hz = h.support_zonal(&self.rule, self.kmax())?;
        let imz = image.support_zonal(&self.rule, self.kmax())?;
        let pi0_h = hz.mean();
        if pi0_h.abs() < 1e-14 {
            return Err(Error::Singular("π_0 h vanishes in F_m".into()));
        }
        imz.sub(&hz.scale(imz.mean() / pi0_h))
    }

    /// Inverts the linearization of `F_m` at the ball: solves
    /// `(dF_m) g = h` degree-wise via `g_k = h_k / (μ_k^{2m} - 1)`.
    ///
    /// Requires `π_0 h = 0`; refuses degrees whose denominator is within
    /// `1e-8` of singular, which happens exactly when some `|μ_k| = 1`
    /// (borderline spectral gap).
    pub fn resolvent(&self, h: &ZonalFunction, m: u32) -> Result<ZonalFunction> {
        if h.dim() != self.n {
            return Err(Error::Mismatch(format!(
                "dimension {} vs valuation dimension {}",
                h.dim(),
                self.n
            )));
        }
        if h.mean().abs() > 1e-12 {
            return Err(Error::Config(
                "resolvent requires a mean-zero right-hand side".into(),
            ));
        }
        let mu = self.linearization_multipliers(2 * m);
        let mut coeffs = Vec::with_capacity(h.kmax() + 1);
        for k in 0..=h.kmax() {
            let hk = h.coeff(k);
            if k == 0 {
                coeffs.push(0.0);
                continue;
            }
            let denom = mu.get(k).copied().unwrap_or(0.0) - 1.0;
            if denom.abs() < RESOLVENT_GUARD {
                if hk.abs() > 0.0 {
                    return Err(Error::Singular(format!(
                        "linearization multiplier at degree {k} is within {RESOLVENT_GUARD:.0e} of 1"
                    )));
                }
                coeffs.push(0.0);
            } else {
                coeffs.push(hk / denom);
            }
        }
        ZonalFunction::new(self.n, coeffs)
    }
}

/// Highest harmonic degree tracked step-by-step in iteration reports.
const TRACKED_DEGREES: usize = 16;

/// Coefficients below this are considered quadrature noise when fitting
/// decay ratios.
const RATIO_FLOOR: f64 = 1e-13;

/// Least-squares slope of `log|a_k|` against `log k` over the decaying
/// tail; `None` when fewer than four tail multipliers are resolvable.
fn fit_decay_exponent(multipliers: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = multipliers
        .iter()
        .enumerate()
        .skip(2)
        .filter(|(_, a)| a.abs() > 1e-13)
        .map(|(k, a)| ((k as f64).ln(), a.abs().ln()))
        .collect();
    if pts.len() < 4 {
        return None;
    }
    let n = pts.len() as f64;
    let (sx, sy): (f64, f64) = pts.iter().fold((0.0, 0.0), |(x, y), p| (x + p.0, y + p.1));
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    Some(-slope)
}

/// One degree's worth of spectral-gap data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GapEntry {
    pub k: usize,
    /// `a_k^n[f]`.
    pub multiplier: f64,
    /// Sharp bound `a_0/((k-1)(n+k-1))` satisfied by body generators.
    pub bound_body: f64,
    pub margin_body: f64,
    /// Contraction bound: the body bound times `(n-1)/i`.
    pub bound_contraction: f64,
    pub margin_contraction: f64,
    /// Linearization multiplier `μ_k` of the renormalized map at the ball.
    pub linearization: f64,
}

/// Spectral-gap report for a generating function.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GapReport {
    pub n: usize,
    pub i: usize,
    pub a0: f64,
    /// Fitted `ϱ` in `|a_k| ~ k^{-ϱ}`; the iteration theory wants `ϱ > 2`.
    pub decay_exponent: Option<f64>,
    pub min_margin_body: f64,
    pub min_margin_contraction: f64,
    /// True iff every contraction margin is strictly positive.
    pub contraction: bool,
    pub entries: Vec<GapEntry>,
}

/// Outcome of a finite-difference derivative check.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FdCheckReport {
    pub eps: f64,
    pub sup_norm_analytic: f64,
    pub sup_norm_difference: f64,
    pub relative_error: f64,
}

/// One renormalized iteration step.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IterationStep {
    pub step: usize,
    /// Mean-width normalization constant removed after this step.
    pub gamma: f64,
    pub sup_distance: f64,
    pub l2_distance: f64,
    pub class: SupportClass,
    pub margin: f64,
    /// `|c_k|` after normalization, low degrees only.
    pub coeff_abs: Vec<f64>,
    /// Per-degree ratio to the previous step, where both are above the
    /// noise floor.
    pub ratios: Vec<Option<f64>>,
}

/// Full fixed-point iteration report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IterationReport {
    pub n: usize,
    pub i: usize,
    pub squared: bool,
    pub steps_requested: usize,
    pub steps_completed: usize,
    /// `|μ_k|` (or `μ_k²` for squared iteration) from the linearization.
    pub predicted_ratios: Vec<f64>,
    pub steps: Vec<IterationStep>,
    /// Geometric mean of observed per-degree ratios.
    pub fitted_ratios: Vec<Option<f64>>,
    pub stop_reason: Option<String>,
}

impl IterationReport {
    /// Final sup-distance to the ball, if any step ran.
    pub fn final_sup_distance(&self) -> Option<f64> {
        self.steps.last().map(|s| s.sup_distance)
    }
}
