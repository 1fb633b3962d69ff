//! The Weyl-ordered Hamiltonian has two meaningful hbar -> 0 limits: with
//! beta_tilde = hbar beta held fixed it contracts to the complex Zernike
//! Hamiltonian; with (alpha, beta) fixed it contracts to a free particle on
//! the (pseudo)sphere. Both gaps shrink linearly in hbar.
//!
//! Run with: cargo run --example weyl_contraction

use num_complex::Complex64;
use zernike_higgs::classical::{hamiltonian, PhaseState, Variant};
use zernike_higgs::verify::log_log_slope;
use zernike_higgs::Params;

fn main() {
    let s = PhaseState::real([0.3, -0.2], [0.5, 0.4]);
    let alpha = -1.0;
    let bt = 0.9;
    let beta_fixed = -0.7;
    let hbars = [1e-1, 1e-2, 1e-3, 1e-4];

    println!("{:>8} | {:>22} | {:>22}", "hbar", "|H_weyl - H_zernike|", "|H_weyl - kinetic|");
    let mut d1 = Vec::new();
    let mut d2 = Vec::new();
    for &h in &hbars {
        let p1 = Params::new(alpha, bt / h, h).unwrap();
        let gap1 = (hamiltonian(Variant::Weyl, &p1, &s).unwrap()
            - hamiltonian(Variant::ZernikeComplex, &p1, &s).unwrap())
        .norm();

        let p2 = Params::new(alpha, beta_fixed, h).unwrap();
        let rp = s.x[0].re * s.p[0].re + s.x[1].re * s.p[1].re;
        let kinetic = s.p[0].re * s.p[0].re + s.p[1].re * s.p[1].re + alpha * rp * rp;
        let gap2 =
            (hamiltonian(Variant::Weyl, &p2, &s).unwrap() - Complex64::from(kinetic)).norm();

        println!("{h:>8.0e} | {gap1:>22.6e} | {gap2:>22.6e}");
        d1.push(gap1);
        d2.push(gap2);
    }
    println!(
        "\nlog-log slopes: {:.4} (fixed beta_tilde), {:.4} (fixed alpha, beta) - both ~ 1",
        log_log_slope(&hbars, &d1),
        log_log_slope(&hbars, &d2)
    );
}
