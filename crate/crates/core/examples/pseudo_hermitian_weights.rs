//! The Zernike operator is non-Hermitian under the flat disk measure away
//! from beta = 2 alpha, but Hermitian under a parameter-dependent weight
//! (1 + alpha r^2)^w: a pseudo-Hermitian operator. This example measures the
//! symmetry defect of the assembled matrix under both candidate weight
//! conventions and under the flat measure.
//!
//! Run with: cargo run --example pseudo_hermitian_weights

use zernike_higgs::spectral::{
    assemble, hermiticity_weight_search, symmetry_defect, BasisGauge, BasisSpec, OperatorTag,
};
use zernike_higgs::Params;

fn main() {
    println!(
        "{:>6} {:>6} | {:>12} | {:>24} | {:>24}",
        "alpha", "beta", "flat defect", "w = (a-b)/(2a) - 1/2", "w = (b-a)/(2a) - 1/2"
    );
    for (alpha, beta) in [(-1.0, -2.0), (-1.0, -0.7), (-1.0, -1.5), (-0.5, -1.0), (-2.0, -1.0)] {
        let params = Params::new(alpha, beta, 1.0).unwrap();
        let basis = BasisSpec { max_degree: 8, m_sector: None, gauge: BasisGauge::Raw };
        let flat = assemble(&params, OperatorTag::Zernike, &basis, 0.0).unwrap();
        let outcome = hermiticity_weight_search(&params, 8).unwrap();
        let fmt = |i: usize| match outcome.candidates[i].defect {
            Some(d) => format!("{:>24.3e}", d),
            None => format!("{:>24}", "not integrable"),
        };
        println!(
            "{:>6} {:>6} | {:>12.3e} | {} | {}",
            alpha,
            beta,
            symmetry_defect(&flat.entries),
            fmt(0),
            fmt(1)
        );
        if let Some(w) = outcome.winner {
            println!("{:>15} symmetrizing weight exponent: {w:.6}", "");
        }
    }
    println!(
        "\nthe weight (1+alpha r^2)^((beta-alpha)/(2 alpha) - 1/2) symmetrizes the operator;\n\
         it reduces to the flat measure at the classical point beta = 2 alpha."
    );
}
