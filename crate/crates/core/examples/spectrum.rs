//! Assembles the Zernike operator, solves the dense eigenproblem, and
//! compares against the closed-form spectrum E_n = -n (alpha n + beta).
//!
//! Run with: cargo run --example spectrum

use zernike_higgs::spectral::{assemble, compare_to_exact, eigen, spectrum_rows, BasisSpec, OperatorTag};
use zernike_higgs::Params;

fn main() {
    for (alpha, beta) in [(-1.0, -2.0), (-1.0, -0.7)] {
        let params = Params::new(alpha, beta, 1.0).unwrap();
        let matrix =
            assemble(&params, OperatorTag::Zernike, &BasisSpec::full(6), 0.0).unwrap();
        let mut report = eigen(&matrix).unwrap();
        compare_to_exact(&params, &matrix, &mut report);

        println!("(alpha, beta) = ({alpha}, {beta})");
        println!("{:>3} {:>3} {:>14} {:>14} {:>10}", "n", "m", "E_exact", "E_numeric", "abs err");
        for row in spectrum_rows(&params, &matrix, &report) {
            println!(
                "{:>3} {:>3} {:>14.8} {:>14.8} {:>10.2e}",
                row.n, row.m, row.e_exact, row.e_numeric_re, row.abs_err
            );
        }
        println!(
            "max deviation {:.3e}, max |Im| {:.3e}\n",
            report.max_abs_deviation.unwrap(),
            report.max_imag
        );
    }
}
