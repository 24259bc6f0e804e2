//! First-order calculus of the valuation: the analytic derivative against
//! central finite differences, the ball-centred residual map, and its
//! resolvent on mean-zero perturbations.
//!
//! Run with: cargo run --example derivative_check

use mvlab::{MinkowskiValuation, RevolutionBody, ZonalFunction};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 4;
    let val = MinkowskiValuation::segment_generated(n, 2, 32)?;
    let dir = RevolutionBody::from_series(n, vec![0.0, 0.0, 1.0, 0.5, 0.25])?;

    println!("== 1. Finite-difference validation of the derivative ==");
    for (label, base) in [
        ("ball", RevolutionBody::ball(n)?),
        ("ellipsoid 1.5:1", RevolutionBody::ellipsoid(n, 1.5, 1.0)?),
        ("random-ish body", RevolutionBody::from_series(n, vec![1.0, 0.0, 0.08, 0.0, 0.02])?),
    ] {
        let check = val.derivative_fd_check(&base, &dir, 1e-4)?;
        println!(
            "{label:>16}: |analytic| = {:>10.4e}, |difference| = {:>10.4e}, relative {:.2e}",
            check.sup_norm_analytic, check.sup_norm_difference, check.relative_error
        );
    }
    println!();

    println!("== 2. Residual of the renormalized squared map at the ball ==");
    // The residual vanishes on balls and its linearization at the ball acts
    // degree-wise by mu_k^2 - 1.
    let ball = RevolutionBody::ball(n)?;
    let res_ball = val.fm_residual(&ball, 1)?;
    let eps = 1e-4;
    let perturbed = RevolutionBody::perturbed_ball(n, 2, eps)?;
    let res_pert = val.fm_residual(&perturbed, 1)?;
    let mu = val.linearization_multipliers(1);
    println!(
        "residual at ball: sup |coeff| = {:.3e}",
        res_ball.coeffs().iter().fold(0.0f64, |m, c| m.max(c.abs()))
    );
    println!(
        "degree-2 response: {:>12.8} vs mu_2^2 - 1 = {:>12.8}",
        res_pert.coeff(2) / eps,
        mu[2] * mu[2] - 1.0
    );
    println!();

    println!("== 3. Resolvent inverts the linearized residual ==");
    let rhs = ZonalFunction::new(n, vec![0.0, 0.0, 0.7, -0.2, 0.05])?;
    let sol = val.resolvent(&rhs, 1)?;
    println!("{:>3}  {:>12}  {:>12}", "k", "rhs", "solution");
    for k in 2..=4 {
        println!("{k:>3}  {:>12.6}  {:>12.6}", rhs.coeff(k), sol.coeff(k));
    }
    for k in 2..=4 {
        let back = sol.coeff(k) * (mu[k] * mu[k] - 1.0);
        assert!((back - rhs.coeff(k)).abs() < 1e-12);
    }
    println!("multiplying back by mu_k^2 - 1 recovers the data (checked to 1e-12)");
    println!();

    // In dimension 3 the degree-2 kernel multiplier equals 1, so the
    // resolvent must refuse degree-2 data.
    println!("== 4. Kernel degrees are rejected ==");
    let borderline = MinkowskiValuation::segment_generated(3, 2, 16)?;
    let bad = ZonalFunction::new(3, vec![0.0, 0.0, 1.0])?;
    match borderline.resolvent(&bad, 1) {
        Err(e) => println!("n = 3, degree 2: {e}"),
        Ok(_) => unreachable!("degree-2 data sits in the kernel"),
    }
    Ok(())
}
