//! Mixed and intrinsic volumes of bodies of revolution, computed by
//! one-dimensional quadrature of curvature densities.
//!
//! Run with: cargo run --example volumes

use mvlab::geometry::{intrinsic_volume, mean_width, mixed_volume, volume};
use mvlab::quadrature::{ball_volume, sphere_area};
use mvlab::{MinkowskiValuation, QuadratureRule, RevolutionBody};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 4;
    let rule = QuadratureRule::for_truncation(n, 48)?;

    println!("== 1. Ball sanity: V_i(B^n) against closed forms ==");
    let ball = RevolutionBody::ball(n)?;
    for i in 0..=n {
        println!("V_{i}(B^4) = {:.12}", intrinsic_volume(&rule, &ball, i)?);
    }
    println!("κ_4 = {:.12}, ω_4 = {:.12}", ball_volume(n), sphere_area(n));
    println!();

    println!("== 2. Ellipsoid volumes are exact for the quadrature ==");
    for (a, b) in [(2.0, 1.0), (1.0, 2.0), (0.5, 0.75)] {
        let e = RevolutionBody::ellipsoid(n, a, b)?;
        let got = volume(&rule, &e)?;
        let want = ball_volume(n) * a * b.powi(n as i32 - 1);
        println!("a = {a}, b = {b}: V = {got:.12} (closed form {want:.12})");
    }
    println!();

    println!("== 3. Mixed volumes interpolate monotonically ==");
    let k = RevolutionBody::ellipsoid(n, 2.0, 1.0)?;
    for i in 0..n {
        // V(K, K[i], B[n-1-i]) sweeps from mean-width data to volume.
        println!("i = {i}: V(K, K[{i}], B[{}]) = {:.10}", n - 1 - i, mixed_volume(&rule, &k, &k, i)?);
    }
    println!("mean width of K: {:.10}", mean_width(&rule, &k)?);
    println!();

    println!("== 4. The projection-body map sends balls to balls ==");
    let pb = MinkowskiValuation::projection_body(n, 24)?;
    let image = pb.apply_body(&ball)?;
    println!(
        "radius of Π B^4: {:.12} (κ_3 = {:.12})",
        image.support(1.0),
        ball_volume(n - 1)
    );
    Ok(())
}
