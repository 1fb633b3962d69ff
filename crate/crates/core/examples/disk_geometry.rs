//! The constant-curvature geometry behind the operator family: metric and
//! embedding, measure weights, the Higgs potential, and the Laplace-Beltrami
//! operator on polynomials.
//!
//! Run with: cargo run --example disk_geometry

use zernike_higgs::geometry::{
    embed, higgs_potential, laplace_beltrami_apply, measure_weight, metric_at, WeightKind,
};
use zernike_higgs::poly::GradedPoly2;
use zernike_higgs::Params;

fn main() {
    println!("sphere chart (alpha = -1) along the x-axis:");
    let sphere = Params::new(-1.0, -0.7, 1.0).unwrap();
    println!(
        "{:>5} {:>10} {:>10} {:>10} {:>12} {:>12}",
        "r", "g_rr", "det g", "x0", "w_transform", "w_invariant"
    );
    for &r in &[0.0, 0.3, 0.6, 0.9] {
        let pt = [r, 0.0];
        let m = metric_at(&sphere, pt).unwrap();
        let e = embed(&sphere, pt).unwrap();
        println!(
            "{r:>5.2} {:>10.5} {:>10.5} {:>10.5} {:>12.6} {:>12.6}",
            m.g[(0, 0)],
            m.det_g,
            e[2],
            measure_weight(&sphere, WeightKind::Transform, pt).unwrap(),
            measure_weight(&sphere, WeightKind::Invariant, pt).unwrap(),
        );
    }
    println!("(the rim r = 1 is excluded: the metric degenerates there)");

    let pseudo = Params::new(1.0, 0.7, 1.0).unwrap();
    println!("\npseudosphere chart (alpha = +1): x0 = sqrt(r^2 + 1), any r");
    for &r in &[0.0, 1.0, 3.0] {
        let e = embed(&pseudo, [r, 0.0]).unwrap();
        println!("  r = {r}: x0 = {:.6}", e[2]);
    }

    // Higgs potential: confining on the sphere, bounded on the pseudosphere.
    let omega2 = 1.0;
    println!("\nHiggs potential omega^2 r^2 / (1 + alpha r^2) at r = 0.9:");
    println!("  sphere:      {:.4}", higgs_potential(&sphere, omega2, [0.9, 0.0]).unwrap());
    println!("  pseudosphere: {:.4}", higgs_potential(&pseudo, omega2, [0.9, 0.0]).unwrap());

    // Laplace-Beltrami acts exactly on polynomial coefficients.
    let f = GradedPoly2::r2_pow(1);
    let lb = laplace_beltrami_apply(&sphere, &f).unwrap();
    let terms: Vec<String> =
        lb.terms().map(|(a, b, c)| format!("{:+.1} z^{a} zb^{b}", c.re)).collect();
    println!("\nDelta_g r^2 at alpha = -1:  {}", terms.join("  "));
}
