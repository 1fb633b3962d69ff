//! Constant-curvature geometry behind the Zernike/Higgs correspondence:
//! the two-parameter metric family, its sphere/hyperboloid embedding, the
//! imaginary gauge function, integration-measure weights, the Higgs
//! potential, and the Laplace-Beltrami operator on polynomials.
//!
//! Conventions: `u := 1 + alpha r^2` is the metric determinant reciprocal,
//! positive on the configuration domain. For `alpha < 0` the domain is the
//! open disk of radius `r0 = 1/sqrt(|alpha|)` (a hemisphere in the ambient
//! picture); for `alpha > 0` it is the whole plane (hyperboloid upper sheet).

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::GradedPoly2;

/// The parameter triple (alpha, beta, hbar) with derived quantities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub alpha: f64,
    pub beta: f64,
    pub hbar: f64,
}

impl Params {
    pub fn new(alpha: f64, beta: f64, hbar: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() || !hbar.is_finite() {
            return Err(Error::Domain("alpha, beta, hbar must be finite".into()));
        }
        if hbar <= 0.0 {
            return Err(Error::Domain(format!("hbar must be positive, got {hbar}")));
        }
        Ok(Self { alpha, beta, hbar })
    }

    /// `beta_tilde = hbar * beta`.
    pub fn beta_tilde(&self) -> f64 {
        self.hbar * self.beta
    }

    /// Curvature radius `r0 = 1/sqrt(|alpha|)`; undefined in the flat limit.
    pub fn r0(&self) -> Option<f64> {
        (self.alpha != 0.0).then(|| 1.0 / self.alpha.abs().sqrt())
    }

    /// `u = 1 + alpha r^2`, the reciprocal metric determinant.
    pub fn u_at(&self, r_sq: f64) -> f64 {
        1.0 + self.alpha * r_sq
    }

    fn require_curved(&self) -> Result<()> {
        if self.alpha == 0.0 {
            return Err(Error::Domain("geometry operations require alpha != 0".into()));
        }
        Ok(())
    }

    fn require_interior(&self, r_sq: f64) -> Result<f64> {
        self.require_curved()?;
        let u = self.u_at(r_sq);
        if u <= 0.0 {
            return Err(Error::Domain(format!(
                "point with r^2 = {r_sq} outside the metric domain (1 + alpha r^2 = {u} <= 0)"
            )));
        }
        Ok(u)
    }
}

/// Metric data at a point: covariant tensor, determinant, inverse.
#[derive(Debug, Clone)]
pub struct Metric2 {
    pub g: Matrix2<f64>,
    pub det_g: f64,
    pub g_inv: Matrix2<f64>,
}

/// Metric tensor `g_ij = delta_ij - alpha x_i x_j / (1 + alpha r^2)` with
/// inverse `g^ij = delta_ij + alpha x_i x_j` and `det g = 1/(1 + alpha r^2)`.
pub fn metric_at(params: &Params, r: [f64; 2]) -> Result<Metric2> {
    let r_sq = r[0] * r[0] + r[1] * r[1];
    let u = params.require_interior(r_sq)?;
    let mut g = Matrix2::identity();
    let mut g_inv = Matrix2::identity();
    for i in 0..2 {
        for j in 0..2 {
            g[(i, j)] -= params.alpha * r[i] * r[j] / u;
            g_inv[(i, j)] += params.alpha * r[i] * r[j];
        }
    }
    Ok(Metric2 { g, det_g: 1.0 / u, g_inv })
}

/// Embeds a point of the disk/plane into the ambient Euclidean (alpha < 0) or
/// Minkowski (alpha > 0) 3-space: returns (r1, r2, x0) with x0 > 0 solving
/// `r^2 - sgn(alpha) (x0)^2 = -1/alpha`.
pub fn embed(params: &Params, r: [f64; 2]) -> Result<[f64; 3]> {
    params.require_curved()?;
    let r_sq = r[0] * r[0] + r[1] * r[1];
    // sgn(alpha) (x0)^2 = r^2 + 1/alpha
    let x0_sq = params.alpha.signum() * (r_sq + 1.0 / params.alpha);
    if x0_sq <= 0.0 {
        return Err(Error::Domain(format!(
            "embedding undefined at |r| = {} >= r0 = {}",
            r_sq.sqrt(),
            params.r0().unwrap()
        )));
    }
    Ok([r[0], r[1], x0_sq.sqrt()])
}

/// The purely imaginary gauge function
/// `phi_beta_eff(r) = i (beta_eff / 4 alpha) log(1 + alpha r^2)`.
///
/// `beta_eff` is the subscript parameter: `beta_tilde` classically,
/// `beta_tilde - hbar alpha` in the quantum similarity transform.
pub fn gauge_phi(params: &Params, beta_eff: f64, r: [f64; 2]) -> Result<Complex64> {
    let r_sq = r[0] * r[0] + r[1] * r[1];
    let u = params.require_interior(r_sq)?;
    Ok(Complex64::new(0.0, beta_eff / (4.0 * params.alpha) * u.ln()))
}

/// Which integration-measure weight to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    /// Measure exponent `(alpha - beta)/(2 alpha)` produced by the similarity
    /// transform of the flat disk measure.
    Transform,
    /// The sign-flipped variant `(beta - alpha)/(2 alpha)`; kept selectable so
    /// the pseudo-Hermiticity test can decide between the two conventions
    /// numerically.
    TransformNegated,
    /// Invariant measure `sqrt(det g) = (1 + alpha r^2)^(-1/2)`.
    Invariant,
}

/// Exponent of `(1 + alpha r^2)` for the requested weight.
pub fn measure_exponent(params: &Params, which: WeightKind) -> f64 {
    match which {
        WeightKind::Transform => (params.alpha - params.beta) / (2.0 * params.alpha),
        WeightKind::TransformNegated => (params.beta - params.alpha) / (2.0 * params.alpha),
        WeightKind::Invariant => -0.5,
    }
}

/// Pointwise measure weight `(1 + alpha r^2)^exponent`. At `beta = 2 alpha`
/// the transform weight coincides with the invariant one.
pub fn measure_weight(params: &Params, which: WeightKind, r: [f64; 2]) -> Result<f64> {
    let r_sq = r[0] * r[0] + r[1] * r[1];
    let u = params.require_interior(r_sq)?;
    Ok(u.powf(measure_exponent(params, which)))
}

/// Higgs oscillator potential `omega2 * r^2 / (1 + alpha r^2)`.
///
/// The caller supplies `omega2`: `beta_tilde^2/4` classically,
/// `(beta_tilde - 2 hbar alpha)^2/4` for the quantum operator.
pub fn higgs_potential(params: &Params, omega2: f64, r: [f64; 2]) -> Result<f64> {
    if omega2 < 0.0 {
        return Err(Error::Domain(format!("omega2 must be nonnegative, got {omega2}")));
    }
    let r_sq = r[0] * r[0] + r[1] * r[1];
    let u = params.require_interior(r_sq)?;
    Ok(omega2 * r_sq / u)
}

/// Laplace-Beltrami operator on polynomials,
/// `Delta_g f = lap f + alpha (r.grad)^2 f + alpha (r.grad) f`,
/// exact on coefficients.
pub fn laplace_beltrami_apply(params: &Params, f: &GradedPoly2) -> Result<GradedPoly2> {
    params.require_curved()?;
    let d = f.euler_d();
    let d2 = d.euler_d();
    Ok(f.laplacian()
        .add(&d2.scale(Complex64::new(params.alpha, 0.0)))
        .add(&d.scale(Complex64::new(params.alpha, 0.0))))
}
