//! Convexity of perturbed balls: for which λ is `1 + λ P_k^n` still the
//! support function of a convex body?  Analytic bounds vs. the classifier.
//!
//! Run with: cargo run --example support_intervals

use mvlab::body::{empirical_support_transition, perturbation_intervals};
use mvlab::RevolutionBody;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("== 1. Degree-2 interval is exact ==");
    for n in 3..=6 {
        let iv = perturbation_intervals(n, 2)?;
        let (lo, hi) = empirical_support_transition(n, 2)?;
        println!(
            "n = {n}: stated [{:>11.8}, {:>10.8}]   measured [{lo:>11.8}, {hi:>10.8}]",
            iv.support_lo, iv.support_hi
        );
    }
    println!();

    println!("== 2. Degree-4 bounds contain the true transitions ==");
    for n in 3..=6 {
        let iv = perturbation_intervals(n, 4)?;
        let (lo, hi) = empirical_support_transition(n, 4)?;
        println!(
            "n = {n}: stated [{:>11.8}, {:>10.8}] ⊇ measured [{lo:>11.8}, {hi:>10.8}]",
            iv.support_lo, iv.support_hi
        );
    }
    println!();

    println!("== 3. Classifier at work (n = 4, k = 2) ==");
    let iv = perturbation_intervals(4, 2)?;
    for lambda in [
        0.0,
        0.9 * iv.support_hi,
        iv.support_hi,   // boundary: convex but the curvature degenerates
        1.1 * iv.support_hi,
        1.05 * iv.support_lo,
    ] {
        let report = RevolutionBody::perturbed_ball(4, 2, lambda)?.classify_support();
        println!(
            "λ = {lambda:>11.6}: {:?} (margin {:>10.3e} at t = {:+.4})",
            report.class, report.margin, report.worst_t
        );
    }
    println!();

    println!("== 4. Nonnegativity persists past convexity ==");
    // Between support_hi and nonneg_hi the profile stays positive but stops
    // being a support function.
    let iv = perturbation_intervals(4, 4)?;
    println!(
        "n = 4, k = 4: support ⊆ [{:.6}, {:.6}], nonnegativity = [{:.6}, {:.6}]",
        iv.support_lo, iv.support_hi, iv.nonneg_lo, iv.nonneg_hi
    );
    Ok(())
}
