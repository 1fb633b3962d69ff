//! Builds polynomial eigenfunctions by degree back-substitution. At the
//! classical point (alpha, beta) = (-1, -2) with rim normalization these are
//! the textbook radial Zernike polynomials R_n^m.
//!
//! Run with: cargo run --example zernike_polynomials

use zernike_higgs::poly::{build_eigenfunction, Normalization};
use zernike_higgs::quadrature::residual_norm;
use zernike_higgs::Params;

fn main() {
    let params = Params::new(-1.0, -2.0, 1.0).unwrap();
    println!("radial polynomials at the classical point, R_n^m(1) = 1:");
    for n in 0..=4u32 {
        let mut m = 0i32;
        while m <= n as i32 {
            if (n as i32 - m) % 2 == 0 {
                let pair = build_eigenfunction(&params, n, m, Normalization::Rim).unwrap();
                let res = residual_norm(&params, &pair, 0.0).unwrap();
                let terms: Vec<String> = pair
                    .poly
                    .terms()
                    .map(|(a, b, c)| format!("{:+.4} z^{a} zb^{b}", c.re))
                    .collect();
                println!(
                    "  (n={n}, m={m})  E = {:>5.1}  residual {:.1e}   {}",
                    pair.energy,
                    res,
                    terms.join("  ")
                );
            }
            m += 1;
        }
    }

    // Generic parameters: the construction works wherever no back-substitution
    // denominator degenerates; resonance is refused with its locus.
    let generic = Params::new(-1.3, 0.4, 1.0).unwrap();
    let pair = build_eigenfunction(&generic, 6, 2, Normalization::MonicTop).unwrap();
    println!(
        "\ngeneric (alpha, beta) = (-1.3, 0.4): (n=6, m=2) has E = {:.6} with {} terms",
        pair.energy,
        pair.poly.num_terms()
    );

    let resonant = Params::new(-1.0, 2.0, 1.0).unwrap();
    match build_eigenfunction(&resonant, 2, 0, Normalization::MonicTop) {
        Err(e) => println!("resonant (alpha, beta) = (-1, 2): {e}"),
        Ok(_) => unreachable!(),
    }
}
