//! Gauss-Jacobi quadrature and weighted inner products on the disk.
//!
//! Radial integrals are taken in the variable `t = r^2 / r0^2` on [0, 1],
//! where the weight `(1 + alpha r^2)^w` becomes `(1 - t)^w` for alpha < 0.
//! Angular integrals are exact by circular-harmonic orthogonality, so a disk
//! inner product of polynomials reduces to Gauss-Jacobi sums that are exact
//! for polynomial integrands.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::Params;
use crate::poly::{apply_zernike, EigenPair, GradedPoly2};

/// Hard cap on quadrature size; beyond this a `Precision` error is raised.
pub const MAX_NODES: usize = 512;

/// Quadrature rule on [0, 1] against the weight `(1 - t)^exponent`.
#[derive(Debug, Clone)]
pub struct GaussJacobi01 {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub exponent: f64,
}

/// Builds the n-point rule by the Golub-Welsch algorithm: eigenvalues of the
/// symmetric Jacobi recurrence matrix for weight `(1-x)^a (1+x)^0` on [-1,1],
/// mapped to [0, 1].
pub fn gauss_jacobi_01(n: usize, exponent: f64) -> Result<GaussJacobi01> {
    if exponent <= -1.0 {
        return Err(Error::Domain(format!(
            "Gauss-Jacobi exponent must be > -1, got {exponent}"
        )));
    }
    if n == 0 {
        return Err(Error::Domain("quadrature needs at least one node".into()));
    }
    if n > MAX_NODES {
        return Err(Error::Precision(format!(
            "requested {n} quadrature nodes exceeds capacity {MAX_NODES}"
        )));
    }

    let a = exponent;
    let b = 0.0f64;
    let mut mat = nalgebra::DMatrix::<f64>::zeros(n, n);
    let mut diag = (b - a) / (2.0 + a + b);
    for idx in 0..n - 1 {
        let k = idx as f64 + 1.0;
        let denom = 2.0 * k + a + b;
        let off = 2.0 / denom
            * (k * (k + a) * (k + b) * (k + a + b) / ((denom + 1.0) * (denom - 1.0))).sqrt();
        mat[(idx, idx)] = diag;
        mat[(idx, idx + 1)] = off;
        mat[(idx + 1, idx)] = off;
        diag = (b * b - a * a) / (denom * (denom + 2.0));
    }
    mat[(n - 1, n - 1)] = diag;

    // mu0 = int_{-1}^{1} (1-x)^a dx = 2^{a+1} / (a+1) since b = 0.
    let mu0 = 2.0f64.powf(a + 1.0) / (a + 1.0);
    let eigen = nalgebra::SymmetricEigen::new(mat);
    let mut pairs: Vec<(f64, f64)> = eigen
        .eigenvalues
        .iter()
        .zip(eigen.eigenvectors.row(0).iter())
        .map(|(&x, &v0)| (x, v0 * v0 * mu0))
        .collect();
    pairs.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap());

    // Map x in [-1,1] to t = (x+1)/2; the weight picks up 2^{-(a+1)}.
    let scale = 2.0f64.powf(-(a + 1.0));
    Ok(GaussJacobi01 {
        nodes: pairs.iter().map(|p| (p.0 + 1.0) / 2.0).collect(),
        weights: pairs.iter().map(|p| p.1 * scale).collect(),
        exponent,
    })
}

impl GaussJacobi01 {
    /// Integrates `(1-t)^exponent f(t)` over [0, 1].
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&t, &w)| w * f(t)).sum()
    }

    /// Power moments `int (1-t)^exponent t^k dt` for k = 0..=max_k.
    pub fn moments(&self, max_k: usize) -> Vec<f64> {
        let mut out = vec![0.0; max_k + 1];
        for (&t, &w) in self.nodes.iter().zip(&self.weights) {
            let mut tk = 1.0;
            for slot in out.iter_mut() {
                *slot += w * tk;
                tk *= t;
            }
        }
        out
    }
}

/// Weighted inner product on the disk |r| < r0 (alpha < 0):
/// `int (1 + alpha r^2)^w conj(f) g d^2r`, exact for polynomials.
pub fn inner_product(
    f: &GradedPoly2,
    g: &GradedPoly2,
    weight_exponent: f64,
    params: &Params,
) -> Result<Complex64> {
    if params.alpha >= 0.0 {
        return Err(Error::Domain(format!(
            "disk inner product requires alpha < 0, got {}",
            params.alpha
        )));
    }
    if weight_exponent <= -1.0 {
        return Err(Error::Domain(format!(
            "weight exponent must be > -1 for an integrable rim, got {weight_exponent}"
        )));
    }
    if f.is_zero() || g.is_zero() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let deg_f = f.degree().unwrap_or(0) as usize;
    let deg_g = g.degree().unwrap_or(0) as usize;
    let n_nodes = (deg_f + deg_g) / 2 + 2;
    let rule = gauss_jacobi_01(n_nodes, weight_exponent)?;
    let moments = rule.moments((deg_f + deg_g) / 2);

    let r0_sq = 1.0 / (-params.alpha);
    let mut acc = Complex64::new(0.0, 0.0);
    for (af, bf, cf) in f.terms() {
        for (ag, bg, cg) in g.terms() {
            // conj(z^af zbar^bf) z^ag zbar^bg integrates to zero unless the
            // angular indices match.
            if af as i64 - bf as i64 != ag as i64 - bg as i64 {
                continue;
            }
            let n_sum = (af + bf + ag + bg) as usize;
            debug_assert!(n_sum.is_multiple_of(2));
            let k = n_sum / 2;
            // 2 pi * (r0^2/2) * r0^{n_sum} * moment_k
            let radial = std::f64::consts::PI * r0_sq.powi(k as i32 + 1) * moments[k];
            acc += cf.conj() * cg * radial;
        }
    }
    Ok(acc)
}

/// Weighted L2 norm of a polynomial on the disk.
pub fn weighted_norm(f: &GradedPoly2, weight_exponent: f64, params: &Params) -> Result<f64> {
    let n2 = inner_product(f, f, weight_exponent, params)?;
    Ok(n2.re.max(0.0).sqrt())
}

/// `||(Z + E) poly||` in the weighted norm; small for a valid EigenPair.
pub fn residual_norm(params: &Params, pair: &EigenPair, weight_exponent: f64) -> Result<f64> {
    let res = apply_zernike(params, &pair.poly)
        .add(&pair.poly.scale(Complex64::new(pair.energy, 0.0)));
    weighted_norm(&res, weight_exponent, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{build_eigenfunction, Normalization};
    use approx::assert_abs_diff_eq;

    /// Exact Beta-moment oracle: int_0^1 (1-t)^a t^k dt = k! / prod_{j=1..k+1}(a+j).
    fn beta_moment(a: f64, k: usize) -> f64 {
        let mut v = 1.0 / (a + 1.0);
        for j in 1..=k {
            v *= j as f64 / (a + 1.0 + j as f64);
        }
        v
    }

    fn zernike_params() -> Params {
        Params::new(-1.0, -2.0, 1.0).unwrap()
    }

    #[test]
    fn legendre_nodes_match_known_values() {
        // exponent 0 and n = 5 is the Gauss-Legendre rule mapped to [0,1].
        let rule = gauss_jacobi_01(5, 0.0).unwrap();
        let x_ref = [-0.906179845938664, -0.5384693101056831, 0.0, 0.5384693101056831, 0.906179845938664];
        let w_ref = [0.23692688505618908, 0.47862867049936647, 0.5688888888888889, 0.47862867049936647, 0.23692688505618908];
        for i in 0..5 {
            assert_abs_diff_eq!(rule.nodes[i], (x_ref[i] + 1.0) / 2.0, epsilon = 1e-13);
            assert_abs_diff_eq!(rule.weights[i], w_ref[i] / 2.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn moments_match_beta_oracle() {
        for &a in &[0.0, -0.5, 0.7, -0.65, 2.3] {
            let rule = gauss_jacobi_01(12, a).unwrap();
            let moments = rule.moments(10);
            for (k, &m) in moments.iter().enumerate() {
                assert_abs_diff_eq!(m, beta_moment(a, k), epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn invalid_rules_are_rejected() {
        assert!(gauss_jacobi_01(5, -1.0).is_err());
        assert!(gauss_jacobi_01(0, 0.0).is_err());
        assert!(matches!(gauss_jacobi_01(MAX_NODES + 1, 0.0), Err(Error::Precision(_))));
    }

    #[test]
    fn disk_area() {
        let one = GradedPoly2::one();
        let area = inner_product(&one, &one, 0.0, &zernike_params()).unwrap();
        assert_abs_diff_eq!(area.re, std::f64::consts::PI, epsilon = 1e-13);
        assert_abs_diff_eq!(area.im, 0.0, epsilon = 1e-15);

        // r0 = 2 for alpha = -1/4: area pi r0^2 = 4 pi.
        let p = Params::new(-0.25, 0.0, 1.0).unwrap();
        let area = inner_product(&one, &one, 0.0, &p).unwrap();
        assert_abs_diff_eq!(area.re, 4.0 * std::f64::consts::PI, epsilon = 1e-12);
    }

    #[test]
    fn classical_orthogonality_frozen() {
        // <1, 2r^2 - 1> = 2 pi int_0^1 (2 r^3 - r) dr = 0.
        let one = GradedPoly2::one();
        let mut radial = GradedPoly2::r2_pow(1).scale(Complex64::new(2.0, 0.0));
        radial.add_term(0, 0, Complex64::new(-1.0, 0.0));
        let ip = inner_product(&one, &radial, 0.0, &zernike_params()).unwrap();
        assert_abs_diff_eq!(ip.norm(), 0.0, epsilon = 1e-13);
    }

    #[test]
    fn angular_orthogonality() {
        let z = GradedPoly2::monomial(1, 0, Complex64::new(1.0, 0.0));
        let zb = GradedPoly2::monomial(0, 1, Complex64::new(1.0, 0.0));
        for &w in &[0.0, -0.5, 1.3] {
            let ip = inner_product(&z, &zb, w, &zernike_params()).unwrap();
            assert_abs_diff_eq!(ip.norm(), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn domain_guards() {
        let one = GradedPoly2::one();
        let p = Params::new(1.0, 0.0, 1.0).unwrap();
        assert!(inner_product(&one, &one, 0.0, &p).is_err());
        assert!(inner_product(&one, &one, -1.0, &zernike_params()).is_err());
    }

    #[test]
    fn zernike_eigenfunctions_orthogonal_at_classical_point() {
        // Distinct (n, m) pairs orthogonal under the flat weight to 1e-10.
        let params = zernike_params();
        let mut pairs = Vec::new();
        for n in 0..=6u32 {
            let mut m = -(n as i32);
            while m <= n as i32 {
                pairs.push(build_eigenfunction(&params, n, m, Normalization::MonicTop).unwrap());
                m += 2;
            }
        }
        for (i, p1) in pairs.iter().enumerate() {
            for p2 in pairs.iter().skip(i + 1) {
                let ip = inner_product(&p1.poly, &p2.poly, 0.0, &params).unwrap();
                let scale = weighted_norm(&p1.poly, 0.0, &params).unwrap()
                    * weighted_norm(&p2.poly, 0.0, &params).unwrap();
                assert!(
                    ip.norm() <= 1e-10 * scale,
                    "pairs ({},{}) and ({},{}) not orthogonal: {}",
                    p1.n,
                    p1.m,
                    p2.n,
                    p2.m,
                    ip.norm() / scale
                );
            }
        }
    }

    #[test]
    fn residual_norm_contract() {
        let params = zernike_params();
        let pair = build_eigenfunction(&params, 4, 2, Normalization::MonicTop).unwrap();
        let norm = weighted_norm(&pair.poly, 0.0, &params).unwrap();
        assert!(residual_norm(&params, &pair, 0.0).unwrap() < 1e-10 * norm);

        // poly = z with the wrong eigenvalue is strictly positive.
        let wrong = EigenPair {
            n: 1,
            m: 1,
            energy: 0.0,
            poly: GradedPoly2::monomial(1, 0, Complex64::new(1.0, 0.0)),
        };
        let p_generic = Params::new(-1.0, -0.7, 1.0).unwrap();
        assert!(residual_norm(&p_generic, &wrong, 0.0).unwrap() > 1e-3);

        // (alpha, beta) = (-1, -2), poly = 2r^2 - 1, E = 8: residual 0 to 1e-12.
        let mut radial = GradedPoly2::r2_pow(1).scale(Complex64::new(2.0, 0.0));
        radial.add_term(0, 0, Complex64::new(-1.0, 0.0));
        let exact = EigenPair { n: 2, m: 0, energy: 8.0, poly: radial };
        assert!(residual_norm(&params, &exact, 0.0).unwrap() < 1e-12);
    }
}
