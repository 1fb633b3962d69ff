//! Superintegrability in action: every bounded orbit of the Higgs oscillator
//! closes. Detects return times for a grid of sphere orbits, checks the flat
//! limit against the exact period pi/omega, and shows an unbounded
//! pseudosphere orbit that never returns.
//!
//! Run with: cargo run --example closed_orbits

use zernike_higgs::classical::{
    closure_detect, integrate, IntegrateOptions, PhaseState, Variant,
};
use zernike_higgs::Params;

fn main() {
    let opts = IntegrateOptions { n_samples: 4000, max_steps: 2_000_000 };

    println!("sphere (alpha = -1), beta_tilde = 2:");
    let params = Params::new(-1.0, 2.0, 1.0).unwrap();
    for (x, p) in [
        ([0.20, 0.00], [0.00, 0.30]),
        ([0.40, 0.10], [0.00, 0.30]),
        ([0.10, 0.30], [0.20, -0.10]),
        ([0.30, 0.05], [0.10, 0.25]),
    ] {
        let traj =
            integrate(Variant::HiggsReal, &params, &PhaseState::real(x, p), 60.0, 1e-11, &opts)
                .unwrap();
        let inv = traj.invariant_samples[0];
        match closure_detect(&traj, 1e-6) {
            Some(t) => println!(
                "  x0 = {x:?}, p0 = {p:?}: closed, period {t:.6}  (E = {:.4}, L = {:.4})",
                inv.e, inv.l
            ),
            None => println!("  x0 = {x:?}, p0 = {p:?}: no return detected"),
        }
    }

    // Flat limit: the isotropic oscillator with doubled kinetic convention
    // has period pi / omega exactly.
    let omega = 1.0;
    let flat = Params::new(0.0, 2.0 * omega, 1.0).unwrap();
    let traj = integrate(
        Variant::HiggsReal,
        &flat,
        &PhaseState::real([0.3, 0.0], [0.0, 0.25]),
        10.0,
        1e-11,
        &opts,
    )
    .unwrap();
    let t = closure_detect(&traj, 1e-6).unwrap();
    println!(
        "\nflat oscillator: period {t:.9} vs pi/omega = {:.9} (diff {:.1e})",
        std::f64::consts::PI / omega,
        (t - std::f64::consts::PI / omega).abs()
    );

    // High-energy pseudosphere orbit: runs off to infinity.
    let pseudo = Params::new(1.0, 0.1, 1.0).unwrap();
    let traj = integrate(
        Variant::HiggsReal,
        &pseudo,
        &PhaseState::real([0.3, 0.0], [0.5, 0.1]),
        30.0,
        1e-10,
        &opts,
    )
    .unwrap();
    let far = traj.samples.last().unwrap().1;
    println!(
        "\npseudosphere (alpha = +1, fast start): closure = {:?}, |x(30)| = {:.2}",
        closure_detect(&traj, 1e-6),
        (far.x[0].norm_sqr() + far.x[1].norm_sqr()).sqrt()
    );
}
