//! Fixed-point iteration: renormalized squares of the valuation drive a
//! perturbed ball back to the ball whenever the spectral gap is strict,
//! at the rate predicted by the degree-2 multiplier.
//!
//! Run with: cargo run --example fixed_point

use mvlab::{MinkowskiValuation, RevolutionBody};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("== 1. Contracting case: n = 4, i = 2 ==");
    let val = MinkowskiValuation::segment_generated(4, 2, 32)?;
    let start = RevolutionBody::perturbed_ball(4, 2, 0.05)?;
    let report = val.iterate(&start, 30, true)?;
    println!("{:>4}  {:>13}  {:>13}  {:>9}", "step", "sup distance", "L2 distance", "class");
    for s in report.steps.iter().step_by(3) {
        println!(
            "{:>4}  {:>13.4e}  {:>13.4e}  {:>9?}",
            s.step, s.sup_distance, s.l2_distance, s.class
        );
    }
    let predicted = report.predicted_ratios[2];
    let fitted = report.fitted_ratios[2].unwrap_or(f64::NAN);
    println!("degree-2 decay per step: predicted {predicted:.6}, fitted {fitted:.6}");
    println!();

    println!("== 2. Borderline case: n = 3, i = 2 ==");
    // The degree-2 multiplier is -1: squaring gives rate 1, so the
    // perturbation survives indefinitely.
    let val = MinkowskiValuation::segment_generated(3, 2, 32)?;
    let start = RevolutionBody::perturbed_ball(3, 2, 0.05)?;
    let report = val.iterate(&start, 30, true)?;
    let first = &report.steps[0];
    let last = report.steps.last().unwrap();
    println!(
        "sup distance: step 1 = {:.6e}, step {} = {:.6e}",
        first.sup_distance, last.step, last.sup_distance
    );
    println!(
        "fitted degree-2 ratio {:.6} (no decay)",
        report.fitted_ratios[2].unwrap_or(f64::NAN)
    );
    println!();

    println!("== 3. Mixed-mode start under an ellipsoid generator ==");
    let gen = RevolutionBody::ellipsoid(4, 1.5, 1.0)?;
    let val = MinkowskiValuation::body_generated(4, 2, &gen, 32)?;
    let start = RevolutionBody::from_series(4, vec![1.0, 0.0, 0.03, 0.02, 0.01])?;
    let report = val.iterate(&start, 40, true)?;
    for k in 2..=4 {
        println!(
            "degree {k}: predicted {:.6}, fitted {:.6}",
            report.predicted_ratios[k],
            report.fitted_ratios[k].unwrap_or(f64::NAN)
        );
    }
    println!(
        "final sup distance {:.3e} after {} steps",
        report.final_sup_distance().unwrap(),
        report.steps_completed
    );
    Ok(())
}
