//! Experiment drivers behind the `mvlab` binary.
//!
//! Each subcommand loads an [`ExperimentConfig`] (JSON file plus long-name
//! flag overrides), runs the corresponding library routine, and emits a
//! JSON or CSV report. All randomness is seeded, sweeps are gathered in
//! input order, and floats are written with shortest-roundtrip formatting,
//! so identical config+seed produces byte-identical output.
//!
//! Exit codes: `0` success, `1` a monitored theorem condition failed
//! (informative, e.g. no spectral gap), `2` usage or configuration error,
//! `3` numeric failure.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::body::{
    empirical_support_transition, perturbation_intervals, sample_c2plus_body, RandomBodyOptions,
    RevolutionBody, SupportClass,
};
use crate::geometry::{class_reduction_check, degree1_check};
use crate::valuation::{GeneratorSpec, MinkowskiValuation, ValuationSpec};
use crate::{Error, Result, SCHEMA_VERSION};

/// Sweep rows whose final distance to the ball is below this count as
/// converged in amplitude probes.
const CONVERGENCE_SUP: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(name = "mvlab", version, about = "Zonal Minkowski valuation laboratory")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generator and linearization multiplier table.
    Multipliers(CommonArgs),
    /// Spectral-gap margins; exits 1 when the contraction bounds fail.
    Gap(CommonArgs),
    /// Renormalized fixed-point iteration (single body or amplitude sweep).
    Iterate(CommonArgs),
    /// Volume-ratio sweep: class reduction and degree-1 comparisons.
    Petty(CommonArgs),
    /// Perturbation intervals per degree, with empirical transitions.
    Intervals(CommonArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// JSON experiment configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Ambient dimension n.
    #[arg(long)]
    dim: Option<usize>,
    /// Valuation degree i.
    #[arg(long)]
    degree: Option<usize>,
    /// Generator: "segment", "projection", or an inline JSON spec.
    #[arg(long)]
    generator: Option<String>,
    /// Body: "ball" or an inline JSON spec.
    #[arg(long)]
    body: Option<String>,
    /// Series truncation degree (for `intervals`: highest degree listed).
    #[arg(long)]
    kmax: Option<usize>,
    /// Iteration steps.
    #[arg(long)]
    steps: Option<usize>,
    /// Iteration exponent parameter m.
    #[arg(long)]
    m: Option<u32>,
    /// Finite-difference step.
    #[arg(long)]
    eps: Option<f64>,
    /// RNG seed for sampled bodies.
    #[arg(long)]
    seed: Option<u64>,
    /// Output path (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long)]
    format: Option<OutputFormat>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Full experiment description; every field has a default, and every
/// field can be overridden by a command-line flag.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub dim: usize,
    pub degree: usize,
    pub generator: GeneratorSpec,
    /// Body spec record; `null` means the unit ball.
    pub body: Option<serde_json::Value>,
    pub kmax: usize,
    pub steps: usize,
    pub m: u32,
    pub eps: f64,
    pub seed: u64,
    /// Number of sampled bodies in sweeps.
    pub count: usize,
    /// Iterate the squared map Φ∘Φ (preserves parity classes).
    pub squared: bool,
    /// Non-empty: `iterate` runs an amplitude sweep instead of one body.
    pub amplitudes: Vec<f64>,
    /// Perturbation degree used by the amplitude sweep.
    pub perturb_degree: usize,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            dim: 4,
            degree: 2,
            generator: GeneratorSpec::Segment,
            body: None,
            kmax: 48,
            steps: 50,
            m: 1,
            eps: 1e-4,
            seed: 7,
            count: 100,
            squared: true,
            amplitudes: Vec::new(),
            perturb_degree: 2,
            out: None,
            format: OutputFormat::Json,
        }
    }
}

impl ExperimentConfig {
    fn load(args: &CommonArgs) -> Result<Self> {
        let mut cfg: Self = match &args.config {
            Some(path) => serde_json::from_str(&fs::read_to_string(path)?)?,
            None => Self::default(),
        };
        if let Some(v) = args.dim {
            cfg.dim = v;
        }
        if let Some(v) = args.degree {
            cfg.degree = v;
        }
        if let Some(g) = &args.generator {
            cfg.generator = parse_generator(g)?;
        }
        if let Some(b) = &args.body {
            cfg.body = Some(parse_body(b, cfg.dim)?);
        }
        if let Some(v) = args.kmax {
            cfg.kmax = v;
        }
        if let Some(v) = args.steps {
            cfg.steps = v;
        }
        if let Some(v) = args.m {
            cfg.m = v;
        }
        if let Some(v) = args.eps {
            cfg.eps = v;
        }
        if let Some(v) = args.seed {
            cfg.seed = v;
        }
        if let Some(v) = &args.out {
            cfg.out = Some(v.clone());
        }
        if let Some(v) = args.format {
            cfg.format = v;
        }
        Ok(cfg)
    }

    fn valuation(&self) -> Result<MinkowskiValuation> {
        let spec = ValuationSpec {
            n: self.dim,
            i: self.degree,
            generator: self.generator.clone(),
        };
        MinkowskiValuation::from_spec(&spec, self.kmax)
    }

    fn resolve_body(&self) -> Result<RevolutionBody> {
        let body = match &self.body {
            None => RevolutionBody::ball(self.dim)?,
            Some(value) => serde_json::from_value(value.clone())
                .map_err(|e| Error::Config(format!("invalid body spec: {e}")))?,
        };
        if body.dim() != self.dim {
            return Err(Error::Config(format!(
                "body dimension {} does not match configured dimension {}",
                body.dim(),
                self.dim
            )));
        }
        Ok(body)
    }

    /// True when the generator is (the spectrum of) an actual convex body,
    /// which is what the strengthened degree-1 comparison assumes.
    fn body_backed_generator(&self) -> bool {
        !matches!(self.generator, GeneratorSpec::Multipliers { .. })
    }
}

fn parse_generator(s: &str) -> Result<GeneratorSpec> {
    match s {
        "segment" => Ok(GeneratorSpec::Segment),
        "projection" => Ok(GeneratorSpec::Projection),
        other => serde_json::from_str(other)
            .map_err(|e| Error::Config(format!("invalid generator spec {other:?}: {e}"))),
    }
}

fn parse_body(s: &str, dim: usize) -> Result<serde_json::Value> {
    match s {
        "ball" => Ok(serde_json::json!({"kind": "ball", "n": dim})),
        other => serde_json::from_str(other)
            .map_err(|e| Error::Config(format!("invalid body spec {other:?}: {e}"))),
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(&cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Singular(_) | Error::Overflow(_) | Error::NotSupport(_) => 3,
                _ => 2,
            }
        }
    }
}

fn dispatch(command: &Command) -> Result<i32> {
    match command {
        Command::Multipliers(args) => cmd_multipliers(&ExperimentConfig::load(args)?),
        Command::Gap(args) => cmd_gap(&ExperimentConfig::load(args)?),
        Command::Iterate(args) => cmd_iterate(&ExperimentConfig::load(args)?),
        Command::Petty(args) => cmd_petty(&ExperimentConfig::load(args)?),
        Command::Intervals(args) => cmd_intervals(&ExperimentConfig::load(args)?),
    }
}

#[derive(Serialize)]
struct JsonEnvelope<T: Serialize> {
    schema: &'static str,
    command: &'static str,
    report: T,
}

fn emit_json<T: Serialize>(cfg: &ExperimentConfig, command: &'static str, report: T) -> Result<()> {
    let envelope = JsonEnvelope {
        schema: SCHEMA_VERSION,
        command,
        report,
    };
    let mut bytes = serde_json::to_vec_pretty(&envelope)?;
    bytes.push(b'\n');
    emit(cfg, bytes)
}

fn emit_csv<R: Serialize>(cfg: &ExperimentConfig, rows: &[R]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::Config(format!("csv buffer: {e}")))?;
    emit(cfg, bytes)
}

fn emit(cfg: &ExperimentConfig, bytes: Vec<u8>) -> Result<()> {
    match &cfg.out {
        Some(path) => fs::write(path, bytes)?,
        None => std::io::stdout().write_all(&bytes)?,
    }
    Ok(())
}

#[derive(Serialize)]
struct MultiplierRow {
    k: usize,
    multiplier: f64,
    normalized: f64,
    linearization: f64,
}

#[derive(Serialize)]
struct MultipliersReport {
    n: usize,
    i: usize,
    kmax: usize,
    a0: f64,
    decay_exponent: Option<f64>,
    rows: Vec<MultiplierRow>,
}

/// `multipliers`: generator spectrum `a_k`, normalized spectrum, and the
/// per-degree linearization factors of the renormalized map at the ball.
pub fn cmd_multipliers(cfg: &ExperimentConfig) -> Result<i32> {
    let val = cfg.valuation()?;
    let a = val.generator_multipliers();
    let mu = val.linearization_multipliers(1);
    let rows: Vec<MultiplierRow> = (0..=val.kmax())
        .map(|k| MultiplierRow {
            k,
            multiplier: a[k],
            normalized: a[k] / a[0],
            linearization: mu[k],
        })
        .collect();
    let report = MultipliersReport {
        n: val.dim(),
        i: val.degree(),
        kmax: val.kmax(),
        a0: a[0],
        decay_exponent: val.gap_check().decay_exponent,
        rows,
    };
    match cfg.format {
        OutputFormat::Json => emit_json(cfg, "multipliers", report)?,
        OutputFormat::Csv => emit_csv(cfg, &report.rows)?,
    }
    Ok(0)
}

/// `gap`: spectral-gap margins; exit 0 iff every contraction margin is
/// strictly positive.
pub fn cmd_gap(cfg: &ExperimentConfig) -> Result<i32> {
    let val = cfg.valuation()?;
    let report = val.gap_check();
    let ok = report.contraction;
    match cfg.format {
        OutputFormat::Json => emit_json(cfg, "gap", &report)?,
        OutputFormat::Csv => emit_csv(cfg, &report.entries)?,
    }
    Ok(if ok { 0 } else { 1 })
}

#[derive(Serialize)]
struct IterateStepRow {
    step: usize,
    gamma: f64,
    sup_distance: f64,
    l2_distance: f64,
    class: SupportClass,
    margin: f64,
}

#[derive(Serialize)]
struct AmplitudeRow {
    amplitude: f64,
    steps_completed: usize,
    final_sup_distance: Option<f64>,
    fitted_ratio: Option<f64>,
    converged: bool,
    stop_reason: Option<String>,
}

#[derive(Serialize)]
struct AmplitudeSweepReport {
    n: usize,
    i: usize,
    perturb_degree: usize,
    squared: bool,
    steps: usize,
    largest_converging_amplitude: Option<f64>,
    rows: Vec<AmplitudeRow>,
}

/// `iterate`: renormalized fixed-point iteration. With a non-empty
/// `amplitudes` list the command probes the basin of attraction over
/// perturbation amplitudes instead of iterating a single body.
pub fn cmd_iterate(cfg: &ExperimentConfig) -> Result<i32> {
    let val = cfg.valuation()?;
    if cfg.amplitudes.is_empty() {
        let body = cfg.resolve_body()?;
        let report = val.iterate(&body, cfg.steps, cfg.squared)?;
        let ok = report.stop_reason.is_none();
        match cfg.format {
            OutputFormat::Json => emit_json(cfg, "iterate", &report)?,
            OutputFormat::Csv => {
                let rows: Vec<IterateStepRow> = report
                    .steps
                    .iter()
                    .map(|s| IterateStepRow {
                        step: s.step,
                        gamma: s.gamma,
                        sup_distance: s.sup_distance,
                        l2_distance: s.l2_distance,
                        class: s.class,
                        margin: s.margin,
                    })
                    .collect();
                emit_csv(cfg, &rows)?;
            }
        }
        return Ok(if ok { 0 } else { 1 });
    }

    let rows: Vec<AmplitudeRow> = cfg
        .amplitudes
        .par_iter()
        .map(|&amplitude| -> Result<AmplitudeRow> {
            let body = RevolutionBody::perturbed_ball(cfg.dim, cfg.perturb_degree, amplitude)?;
            let report = val.iterate(&body, cfg.steps, cfg.squared)?;
            let final_sup = report.final_sup_distance();
            let converged =
                report.stop_reason.is_none() && final_sup.is_some_and(|d| d < CONVERGENCE_SUP);
            Ok(AmplitudeRow {
                amplitude,
                steps_completed: report.steps_completed,
                final_sup_distance: final_sup,
                fitted_ratio: report
                    .fitted_ratios
                    .get(cfg.perturb_degree)
                    .copied()
                    .flatten(),
                converged,
                stop_reason: report.stop_reason,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let largest = rows
        .iter()
        .filter(|r| r.converged)
        .map(|r| r.amplitude)
        .fold(None, |acc: Option<f64>, a| Some(acc.map_or(a, |b| b.max(a))));
    let any_converged = largest.is_some();
    let report = AmplitudeSweepReport {
        n: val.dim(),
        i: val.degree(),
        perturb_degree: cfg.perturb_degree,
        squared: cfg.squared,
        steps: cfg.steps,
        largest_converging_amplitude: largest,
        rows,
    };
    match cfg.format {
        OutputFormat::Json => emit_json(cfg, "iterate", &report)?,
        OutputFormat::Csv => emit_csv(cfg, &report.rows)?,
    }
    Ok(if any_converged { 0 } else { 1 })
}

#[derive(Serialize)]
struct PettyRow {
    index: usize,
    label: String,
    psi_base: f64,
    psi_image: f64,
    reduction_residual: f64,
    identity_lhs: f64,
    identity_rhs: f64,
    identity_residual: f64,
    // Degree-1 columns; empty unless i = 1 (strengthened additionally
    // requires a body-backed generator).
    v2_ratio_residual: Option<f64>,
    min_mode_margin: Option<f64>,
    strengthened_residual: Option<f64>,
}

#[derive(Serialize)]
struct PettyReport {
    n: usize,
    i: usize,
    count: usize,
    violations: usize,
    rows: Vec<PettyRow>,
}

/// `petty`: sweep of the volume-ratio functional `ψ_i` over named and
/// sampled bodies. Exit 1 when any monitored inequality is violated.
pub fn cmd_petty(cfg: &ExperimentConfig) -> Result<i32> {
    let val = cfg.valuation()?;
    let n = cfg.dim;
    let mut bodies: Vec<(String, RevolutionBody)> = vec![
        ("ball".into(), RevolutionBody::ball(n)?),
        ("ellipsoid(a=1.5,b=1)".into(), RevolutionBody::ellipsoid(n, 1.5, 1.0)?),
        ("ellipsoid(a=0.6,b=1)".into(), RevolutionBody::ellipsoid(n, 0.6, 1.0)?),
    ];
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed);
    let opts = RandomBodyOptions {
        amplitude: 0.2,
        ..RandomBodyOptions::default()
    };
    for j in 0..cfg.count {
        bodies.push((format!("random-{j}"), sample_c2plus_body(&mut rng, n, &opts)?));
    }
    let degree1 = cfg.degree == 1;
    let strengthened_applies = degree1 && cfg.body_backed_generator();
    let rows: Vec<PettyRow> = bodies
        .par_iter()
        .enumerate()
        .map(|(index, (label, body))| -> Result<PettyRow> {
            let cr = class_reduction_check(&val, body)?;
            let (mut v2, mut margin, mut strengthened) = (None, None, None);
            if degree1 {
                let d1 = degree1_check(&val, body, 50)?;
                v2 = Some(d1.ratio_residual);
                margin = Some(d1.min_mode_margin);
                if strengthened_applies {
                    strengthened = Some(d1.strengthened_residual);
                }
            }
            Ok(PettyRow {
                index,
                label: label.clone(),
                psi_base: cr.psi_base,
                psi_image: cr.psi_image,
                reduction_residual: cr.reduction_residual,
                identity_lhs: cr.identity_lhs,
                identity_rhs: cr.identity_rhs,
                identity_residual: cr.identity_residual,
                v2_ratio_residual: v2,
                min_mode_margin: margin,
                strengthened_residual: strengthened,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let violations = rows
        .iter()
        .filter(|r| {
            r.reduction_residual < -1e-10
                || r.identity_residual > 1e-8
                || r.v2_ratio_residual.is_some_and(|v| v < -1e-10)
                || r.strengthened_residual.is_some_and(|v| v < -1e-9)
        })
        .count();
    let report = PettyReport {
        n,
        i: cfg.degree,
        count: bodies.len(),
        violations,
        rows,
    };
    let ok = report.violations == 0;
    match cfg.format {
        OutputFormat::Json => emit_json(cfg, "petty", &report)?,
        OutputFormat::Csv => emit_csv(cfg, &report.rows)?,
    }
    Ok(if ok { 0 } else { 1 })
}

#[derive(Serialize)]
struct IntervalRow {
    k: usize,
    support_lo: f64,
    support_hi: f64,
    nonneg_lo: f64,
    nonneg_hi: f64,
    exact: bool,
    empirical_lo: Option<f64>,
    empirical_hi: Option<f64>,
}

#[derive(Serialize)]
struct IntervalsReport {
    n: usize,
    rows: Vec<IntervalRow>,
}

/// Degrees up to this get bisection-measured transitions in `intervals`;
/// higher degrees only report the analytic bounds.
const EMPIRICAL_DEGREE_CAP: usize = 12;

/// `intervals`: per-degree perturbation intervals `1 + λ P_k` stays a
/// support function / stays a nonnegative density, with empirically
/// measured support transitions for low degrees.
pub fn cmd_intervals(cfg: &ExperimentConfig) -> Result<i32> {
    let n = cfg.dim;
    let degrees: Vec<usize> = (2..=cfg.kmax.max(2)).collect();
    let rows: Vec<IntervalRow> = degrees
        .par_iter()
        .map(|&k| -> Result<IntervalRow> {
            let iv = perturbation_intervals(n, k)?;
            let (empirical_lo, empirical_hi) = if k <= EMPIRICAL_DEGREE_CAP {
                let (lo, hi) = empirical_support_transition(n, k)?;
                (Some(lo), Some(hi))
            } else {
                (None, None)
            };
            Ok(IntervalRow {
                k,
                support_lo: iv.support_lo,
                support_hi: iv.support_hi,
                nonneg_lo: iv.nonneg_lo,
                nonneg_hi: iv.nonneg_hi,
                exact: iv.exact,
                empirical_lo,
                empirical_hi,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let report = IntervalsReport { n, rows };
    match cfg.format {
        OutputFormat::Json => emit_json(cfg, "intervals", &report)?,
        OutputFormat::Csv => emit_csv(cfg, &report.rows)?,
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_segment_iteration() {
        let cfg = ExperimentConfig::default();
        assert_eq!(cfg.dim, 4);
        assert_eq!(cfg.degree, 2);
        assert_eq!(cfg.generator, GeneratorSpec::Segment);
        assert!(cfg.squared);
        let val = cfg.valuation().unwrap();
        assert_eq!(val.kmax(), 48);
    }

    #[test]
    fn config_round_trips_and_rejects_unknown_fields() {
        let cfg = ExperimentConfig::default();
        let json = serde_json::to_string(&cfg).unwrap();
        let back: ExperimentConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(back.kmax, cfg.kmax);
        let bad = r#"{"dimension": 4}"#;
        assert!(serde_json::from_str::<ExperimentConfig>(bad).is_err());
    }

    #[test]
    fn generator_and_body_shorthands() {
        assert_eq!(parse_generator("segment").unwrap(), GeneratorSpec::Segment);
        assert_eq!(
            parse_generator("projection").unwrap(),
            GeneratorSpec::Projection
        );
        let g = parse_generator(r#"{"kind":"multipliers","values":[1.0,0.0,0.1]}"#).unwrap();
        assert!(matches!(g, GeneratorSpec::Multipliers { .. }));
        assert!(parse_generator("nonsense").is_err());

        let b = parse_body("ball", 5).unwrap();
        let body: RevolutionBody = serde_json::from_value(b).unwrap();
        assert_eq!(body.dim(), 5);
    }

    #[test]
    fn body_dimension_mismatch_is_config_error() {
        let mut cfg = ExperimentConfig::default();
        cfg.body = Some(serde_json::json!({"kind": "ball", "n": 3}));
        assert!(matches!(cfg.resolve_body(), Err(Error::Config(_))));
    }

    #[test]
    fn gap_exit_codes_track_contraction() {
        let mut cfg = ExperimentConfig {
            kmax: 24,
            out: Some(std::env::temp_dir().join("mvlab-gap-test.json")),
            ..ExperimentConfig::default()
        };
        assert_eq!(cmd_gap(&cfg).unwrap(), 0);
        cfg.dim = 3;
        assert_eq!(cmd_gap(&cfg).unwrap(), 1);
    }
}
