//! Numerical laboratory for zonal Minkowski valuations on convex bodies of
//! revolution.
//!
//! Everything here lives on the rotation-invariant slice of convex geometry:
//! functions on the unit sphere `S^{n-1}` that depend only on the cosine
//! `t = ē·u` of the polar angle to a fixed axis `ē`. On that slice the
//! building blocks are one-dimensional and fast:
//!
//! * [`legendre`] — Legendre polynomials `P_k^n` of dimension `n`, their
//!   derivatives, relative maxima, and the dimensions of spherical-harmonic
//!   spaces.
//! * [`quadrature`] — Gauss–Jacobi rules for the weight `(1-t²)^((n-3)/2)`,
//!   which turn sphere integrals of zonal functions into line integrals.
//! * [`zonal`] — expansions `f = Σ c_k P_k^n(ē·u)`, spherical convolution as
//!   a multiplier product, and the classical intertwining transforms.
//! * [`body`] — convex bodies of revolution described by a support profile
//!   `φ(t)`, their curvature data, and area measure densities `s_i`.
//! * [`valuation`] — Minkowski valuations `Φ_i K` generated by convolving
//!   area measures with a zonal generating function, their spectral gap
//!   bounds, linearization at the ball, and fixed-point iteration.
//! * [`geometry`] — mixed and intrinsic volumes of bodies of revolution and
//!   the inequality checks built from them.
//! * [`cli`] — experiment drivers behind the `mvlab` binary.
//!
//! The crate's primary interface is the `examples/` directory: each runnable
//! example exercises one capability end to end. The `mvlab` binary exposes
//! the same drivers for scripted runs.

pub mod body;
pub mod cli;
pub mod geometry;
pub mod legendre;
pub mod quadrature;
pub mod valuation;
pub mod zonal;

pub use body::{AreaDensity, RevolutionBody, SupportClass};
pub use quadrature::QuadratureRule;
pub use valuation::{GapReport, IterationReport, MinkowskiValuation};
pub use zonal::ZonalFunction;

/// Errors reported by the numerical kernels.
///
/// Exit-code mapping in the CLI: configuration problems are usage errors,
/// everything else is a numeric failure.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Ambient dimension outside the supported range `n ≥ 3`.
    #[error("ambient dimension must be at least 3, got {0}")]
    Dimension(usize),

    /// Valuation degree outside `1 ≤ i ≤ n-1`.
    #[error("valuation degree must satisfy 1 <= i <= n-1, got i={i} for n={n}")]
    Degree { n: usize, i: usize },

    /// An exact integer computation would overflow.
    #[error("integer overflow computing {0}")]
    Overflow(&'static str),

    /// Mismatched dimensions or truncation orders between operands.
    #[error("operands disagree: {0}")]
    Mismatch(String),

    /// A profile left the cone of support functions during an operation
    /// that requires convexity.
    #[error("profile is not a support function: {0}")]
    NotSupport(String),

    /// A resolvent or normalization hit a (near-)singular denominator.
    #[error("singular denominator: {0}")]
    Singular(String),

    /// Invalid configuration or argument combination.
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Schema tag stamped into every serialized report.
pub const SCHEMA_VERSION: &str = "v1";
