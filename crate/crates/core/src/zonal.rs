//! Zonal functions on `S^{n-1}` and their harmonic calculus.
//!
//! A zonal function is stored by its expansion coefficients in the
//! dimension-`n` Legendre basis,
//!
//! ```text
//! f(u) = Σ_{k=0}^{kmax} c_k P_k^n(ē·u),
//! ```
//!
//! so `c_k P_k^n(ē·u)` is exactly the degree-`k` spherical-harmonic
//! component `π_k f`. Coefficients and *multipliers* are two views of the
//! same data: the multiplier `a_k^n[f] = ∫ f(u) P_k^n(ē·u) du` satisfies
//! `c_k = N(n,k)/ω_n · a_k^n[f]` by orthogonality.
//!
//! By the Funk–Hecke theorem, spherical convolution with a zonal kernel
//! acts degree-wise: `(μ ∗ f)` has coefficients `a_k^n[f] · μ_k`. All
//! transforms in this module (convolution, the `□_n` operator, the Radon
//! and cosine transforms) are therefore diagonal in this basis, and
//! compositions commute.

use serde::{Deserialize, Serialize};

use crate::legendre;
use crate::quadrature::{sphere_area, QuadratureRule, SplitRule};
use crate::{Error, Result};

/// Default truncation order used by drivers unless a caller overrides it.
pub const DEFAULT_KMAX: usize = 128;

/// Multiplier of the operator `□_n = Id + Δ_S/(n-1)` on degree-`k`
/// harmonics: `(1-k)(k+n-1)/(n-1)`.
///
/// `□_n` sends the support function of a smooth convex body to the density
/// of its first-order area measure.
pub fn box_multiplier(n: usize, k: usize) -> f64 {
    let (nf, kf) = (n as f64, k as f64);
    (1.0 - kf) * (kf + nf - 1.0) / (nf - 1.0)
}

/// Multipliers `a_k^n[C]` of the cosine transform, i.e. of convolution with
/// `u ↦ |ē·u|`, for `k = 0, …, kmax`.
///
/// Computed by split quadrature: the kink of `|t|` at the origin defeats a
/// single Jacobi rule but each half-interval is polynomial. Odd degrees
/// vanish by symmetry.
pub fn cosine_multipliers(n: usize, kmax: usize) -> Result<Vec<f64>> {
    let rule = SplitRule::for_truncation(n, kmax)?;
    let mut out = rule.multipliers_up_to(kmax, f64::abs);
    for (k, a) in out.iter_mut().enumerate() {
        if k % 2 == 1 {
            *a = 0.0;
        }
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct ZonalRepr {
    n: usize,
    kmax: usize,
    coeffs: Vec<f64>,
}

/// A zonal function given by Legendre coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ZonalRepr", into = "ZonalRepr")]
pub struct ZonalFunction {
    n: usize,
    coeffs: Vec<f64>,
}

impl TryFrom<ZonalRepr> for ZonalFunction {
    type Error = Error;

    fn try_from(r: ZonalRepr) -> Result<Self> {
        if r.n < 3 {
            return Err(Error::Dimension(r.n));
        }
        if r.coeffs.len() != r.kmax + 1 {
            return Err(Error::Mismatch(format!(
                "kmax {} does not match {} coefficients",
                r.kmax,
                r.coeffs.len()
            )));
        }
        Ok(Self { n: r.n, coeffs: r.coeffs })
    }
}

impl From<ZonalFunction> for ZonalRepr {
    fn from(z: ZonalFunction) -> Self {
        ZonalRepr { n: z.n, kmax: z.coeffs.len() - 1, coeffs: z.coeffs }
    }
}

impl ZonalFunction {
    /// Builds a zonal function from raw coefficients.
    pub fn new(n: usize, coeffs: Vec<f64>) -> Result<Self> {
        if n < 3 {
            return Err(Error::Dimension(n));
        }
        if coeffs.is_empty() {
            return Err(Error::Config("coefficient vector must be non-empty".into()));
        }
        Ok(Self { n, coeffs })
    }

    /// The constant function 1 truncated at `kmax`.
    pub fn one(n: usize, kmax: usize) -> Result<Self> {
        let mut coeffs = vec![0.0; kmax + 1];
        coeffs[0] = 1.0;
        Self::new(n, coeffs)
    }

    /// Projects a profile `f` onto degrees `0..=kmax` using `rule`.
    pub fn expand(rule: &QuadratureRule, kmax: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let n = rule.dim();
        let mult = rule.multipliers_up_to(kmax, f);
        Self::from_multipliers(n, &mult)
    }

    /// Builds the function whose multiplier sequence is `a`.
    pub fn from_multipliers(n: usize, a: &[f64]) -> Result<Self> {
        let omega = sphere_area(n);
        let coeffs = a
            .iter()
            .enumerate()
            .map(|(k, ak)| Ok(legendre::harmonic_dimension_f64(n, k)? / omega * ak))
            .collect::<Result<Vec<f64>>>()?;
        Self::new(n, coeffs)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn kmax(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    /// Multiplier sequence `a_k^n[f] = c_k ω_n / N(n,k)`.
    pub fn multipliers(&self) -> Vec<f64> {
        let omega = sphere_area(self.n);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * omega / legendre::harmonic_dimension_f64(self.n, k).unwrap())
            .collect()
    }

    /// Evaluates the profile at `t = ē·u`.
    pub fn eval(&self, t: f64) -> f64 {
        let p = legendre::eval_all(self.n, self.kmax(), t);
        self.coeffs.iter().zip(&p).map(|(c, pk)| c * pk).sum()
    }

    /// Mean value over the sphere, i.e. the degree-0 component `π_0 f`.
    pub fn mean(&self) -> f64 {
        self.coeffs[0]
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Mismatch(format!(
                "dimensions {} and {}",
                self.n, other.n
            )));
        }
        if self.kmax() != other.kmax() {
            return Err(Error::Mismatch(format!(
                "truncation orders {} and {}",
                self.kmax(),
                other.kmax()
            )));
        }
        Ok(())
    }

    /// Spherical convolution `self ∗ f`: degree-wise product with the
    /// multipliers of `f`.
    pub fn convolve(&self, f: &Self) -> Result<Self> {
        self.check_compatible(f)?;
        let a = f.multipliers();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&a)
            .map(|(c, ak)| c * ak)
            .collect();
        Self::new(self.n, coeffs)
    }

    /// Applies `□_n = Id + Δ_S/(n-1)`.
    pub fn box_n(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * box_multiplier(self.n, k))
            .collect();
        Self { n: self.n, coeffs }
    }

    /// Spherical Radon-type transform `R_t`: each degree is scaled by
    /// `P_k^n(t)`. `R_1` is the identity and `R_{-1}` the antipodal map.
    pub fn radon_t(&self, t: f64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * legendre::eval(self.n, k, t))
            .collect();
        Self { n: self.n, coeffs }
    }

    /// Cosine transform: convolution with `u ↦ |ē·u|`.
    pub fn cosine_transform(&self) -> Result<Self> {
        let a = cosine_multipliers(self.n, self.kmax())?;
        let coeffs = self.coeffs.iter().zip(&a).map(|(c, ak)| c * ak).collect();
        Self::new(self.n, coeffs)
    }

    /// Sobolev norm `‖f‖_{H^s}` with
    /// `‖f‖²_{H^s} = Σ_k (1+k²)^s ‖π_k f‖²_{L²}` and
    /// `‖π_k f‖²_{L²} = c_k² ω_n / N(n,k)`.
    pub fn sobolev_norm(&self, s: f64) -> f64 {
        let omega = sphere_area(self.n);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let nk = legendre::harmonic_dimension_f64(self.n, k).unwrap();
                (1.0 + (k * k) as f64).powf(s) * c * c * omega / nk
            })
            .sum::<f64>()
            .sqrt()
    }

    /// `L²(S^{n-1})` norm.
    pub fn l2_norm(&self) -> f64 {
        self.sobolev_norm(0.0)
    }

    /// Coefficient-wise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Self::new(self.n, coeffs)
    }

    /// Coefficient-wise difference.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Self::new(self.n, coeffs)
    }

    /// Scalar multiple.
    pub fn scale(&self, s: f64) -> Self {
        Self {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Integral of `self` against the zonal measure with multiplier
    /// sequence `a_k[τ]`: `∫ f dτ = Σ_k c_k a_k[τ]`.
    pub fn integrate_against(&self, tau_multipliers: &[f64]) -> f64 {
        self.coeffs
            .iter()
            .zip(tau_multipliers)
            .map(|(c, a)| c * a)
            .sum()
    }
}
