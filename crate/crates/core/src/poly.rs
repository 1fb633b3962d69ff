//! Exact bivariate-polynomial arithmetic in the circular-harmonic monomial
//! basis `z^a zbar^b` (z = x1 + i x2), the action of the generalized Zernike
//! operator, its closed-form point spectrum, and eigenfunction construction
//! by degree back-substitution.
//!
//! The monomial `z^a zbar^b` is homogeneous of degree `n = a + b` and carries
//! angular index `m = a - b`. Both building blocks of the operator act
//! sparsely here: the Euler operator `D = r.grad` is diagonal,
//! `D(z^a zbar^b) = (a+b) z^a zbar^b`, and the flat Laplacian
//! `lap = 4 d_z d_zbar` shifts `(a,b) -> (a-1,b-1)` with coefficient `4ab`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Params;

/// Bivariate polynomial stored as a sparse map `(a, b) -> coefficient` over
/// monomials `z^a zbar^b`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GradedPoly2 {
    terms: BTreeMap<(u32, u32), Complex64>,
}

/// One term of the JSON wire format `{"terms": [{"a", "b", "re", "im"}]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub a: u32,
    pub b: u32,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyJson {
    pub terms: Vec<TermJson>,
}

impl GradedPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, Complex64::new(1.0, 0.0))
    }

    pub fn monomial(a: u32, b: u32, coeff: Complex64) -> Self {
        let mut p = Self::default();
        p.add_term(a, b, coeff);
        p
    }

    /// `r^2 = z zbar` raised to the k-th power.
    pub fn r2_pow(k: u32) -> Self {
        Self::monomial(k, k, Complex64::new(1.0, 0.0))
    }

    pub fn add_term(&mut self, a: u32, b: u32, coeff: Complex64) {
        if coeff == Complex64::new(0.0, 0.0) {
            return;
        }
        let entry = self.terms.entry((a, b)).or_insert(Complex64::new(0.0, 0.0));
        *entry += coeff;
        if *entry == Complex64::new(0.0, 0.0) {
            self.terms.remove(&(a, b));
        }
    }

    pub fn coeff(&self, a: u32, b: u32) -> Complex64 {
        self.terms.get(&(a, b)).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, Complex64)> + '_ {
        self.terms.iter().map(|(&(a, b), &c)| (a, b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree `max(a+b)`, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    /// Largest coefficient magnitude.
    pub fn coeff_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = Self::default();
        for (&(a, b), &c) in &self.terms {
            out.add_term(a, b, c * s);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), &c) in &other.terms {
            out.add_term(a, b, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (&(a1, b1), &c1) in &self.terms {
            for (&(a2, b2), &c2) in &other.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }

    /// Euler operator `D = r.grad`; diagonal on monomials with eigenvalue `a+b`.
    pub fn euler_d(&self) -> Self {
        let mut out = Self::default();
        for (&(a, b), &c) in &self.terms {
            out.add_term(a, b, c * ((a + b) as f64));
        }
        out
    }

    /// Flat Laplacian `lap = 4 d_z d_zbar`; maps `(a,b) -> (a-1,b-1)` with
    /// coefficient `4ab`.
    pub fn laplacian(&self) -> Self {
        let mut out = Self::default();
        for (&(a, b), &c) in &self.terms {
            if a > 0 && b > 0 {
                out.add_term(a - 1, b - 1, c * (4.0 * a as f64 * b as f64));
            }
        }
        out
    }

    /// Complex conjugate of the polynomial as a function of (x1, x2): swaps
    /// (a, b) and conjugates coefficients.
    pub fn conj(&self) -> Self {
        let mut out = Self::default();
        for (&(a, b), &c) in &self.terms {
            out.add_term(b, a, c.conj());
        }
        out
    }

    /// True when the polynomial takes real values on the plane:
    /// `coeff(a,b) = conj(coeff(b,a))` within `tol`.
    pub fn is_real_valued(&self, tol: f64) -> bool {
        self.terms
            .iter()
            .all(|(&(a, b), &c)| (c - self.coeff(b, a).conj()).norm() <= tol)
    }

    pub fn eval(&self, x: [f64; 2]) -> Complex64 {
        let z = Complex64::new(x[0], x[1]);
        let zb = z.conj();
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(a, b), &c) in &self.terms {
            acc += c * z.powu(a) * zb.powu(b);
        }
        acc
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), &c)| TermJson { a, b, re: c.re, im: c.im })
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Self {
        let mut p = Self::default();
        for t in &json.terms {
            p.add_term(t.a, t.b, Complex64::new(t.re, t.im));
        }
        p
    }
}

/// Applies the generalized Zernike operator
/// `Z = lap + alpha (r.grad)^2 + beta (r.grad)` exactly on coefficients.
///
/// Preserves every term's angular index and maps degree-n terms into
/// degrees {n, n-2}.
pub fn apply_zernike(params: &Params, f: &GradedPoly2) -> GradedPoly2 {
    let mut out = GradedPoly2::default();
    for (a, b, c) in f.terms() {
        let n = (a + b) as f64;
        out.add_term(a, b, c * (params.alpha * n * n + params.beta * n));
        if a > 0 && b > 0 {
            out.add_term(a - 1, b - 1, c * (4.0 * a as f64 * b as f64));
        }
    }
    out
}

/// Degree-block diagonal value `lambda_n = alpha n^2 + beta n` of the Zernike
/// operator on homogeneous degree-n polynomials.
pub fn degree_eigenvalue(params: &Params, n: u32) -> f64 {
    let nf = n as f64;
    params.alpha * nf * nf + params.beta * nf
}

/// Exact point eigenvalue in the convention `Z psi = -E psi`:
/// `E_n = -n (alpha n + beta)`.
///
/// The operator maps homogeneous degree-n polynomials to themselves plus a
/// degree-(n-2) remainder, with the degree-n part scaled by
/// `lambda_n = alpha n^2 + beta n`; its polynomial spectrum is therefore
/// exactly the set of those scalars, each with multiplicity n+1.
pub fn exact_eigenvalue(params: &Params, n: u32) -> f64 {
    -degree_eigenvalue(params, n)
}

/// Relative tolerance below which a back-substitution denominator counts as
/// resonant.
pub const RESONANCE_TOL: f64 = 1e-10;

/// Polynomial eigenfunction of the Zernike operator together with its indices
/// and eigenvalue.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub n: u32,
    pub m: i32,
    /// Eigenvalue in the convention `Z poly = -energy * poly`.
    pub energy: f64,
    pub poly: GradedPoly2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// Coefficient of the top monomial is 1; defined for all parameters.
    #[default]
    MonicTop,
    /// Value 1 at the point (r0, 0); the classical convention R_n^m(1) = 1
    /// at (alpha, beta) = (-1, -2).
    Rim,
    /// Unit weighted L2 norm on the disk under the flat weight (alpha < 0).
    UnitNorm,
}

/// Constructs the eigenfunction with top monomial `z^a zbar^b`,
/// `a = (n+m)/2`, `b = (n-m)/2`, by back-substitution
/// `P_{k-2} = -lap P_k / (lambda_{k-2} - lambda_n)`.
pub fn build_eigenfunction(
    params: &Params,
    n: u32,
    m: i32,
    normalization: Normalization,
) -> Result<EigenPair> {
    if m.unsigned_abs() > n || (n as i64 - m as i64) % 2 != 0 {
        return Err(Error::Domain(format!(
            "invalid index pair (n={n}, m={m}): need |m| <= n and n-m even"
        )));
    }
    let a0 = ((n as i64 + m as i64) / 2) as u32;
    let b0 = ((n as i64 - m as i64) / 2) as u32;
    let lambda_n = degree_eigenvalue(params, n);

    let mut poly = GradedPoly2::monomial(a0, b0, Complex64::new(1.0, 0.0));
    let mut current = poly.clone();
    let mut deg = n;
    loop {
        let num = current.laplacian();
        if num.is_zero() {
            break;
        }
        deg -= 2;
        let denom = degree_eigenvalue(params, deg) - lambda_n;
        if denom.abs() < RESONANCE_TOL * (1.0 + lambda_n.abs()) {
            let k = (n - deg) / 2;
            return Err(Error::Resonance { n, degree: deg, k, gap: denom.abs() });
        }
        current = num.scale(Complex64::new(-1.0 / denom, 0.0));
        poly = poly.add(&current);
    }

    let poly = match normalization {
        Normalization::MonicTop => poly,
        Normalization::Rim => {
            let r0 = params.r0().ok_or_else(|| {
                Error::Domain("rim normalization undefined for alpha = 0".into())
            })?;
            let v = poly.eval([r0, 0.0]);
            if v.norm() < 1e-12 * (1.0 + poly.coeff_norm()) {
                return Err(Error::Precision(format!(
                    "rim normalization degenerate: |poly(r0,0)| = {:.3e}",
                    v.norm()
                )));
            }
            poly.scale(v.inv())
        }
        Normalization::UnitNorm => {
            let norm_sq = crate::quadrature::inner_product(&poly, &poly, 0.0, params)?;
            poly.scale(Complex64::new(1.0 / norm_sq.re.sqrt(), 0.0))
        }
    };

    Ok(EigenPair { n, m, energy: exact_eigenvalue(params, n), poly })
}

/// Coefficient-space residual `max |(Z + E) poly|` relative to the coefficient
/// scale; the EigenPair contract keeps this below ~1e-12.
pub fn coefficient_residual(params: &Params, pair: &EigenPair) -> f64 {
    let r = apply_zernike(params, &pair.poly)
        .add(&pair.poly.scale(Complex64::new(pair.energy, 0.0)));
    r.coeff_norm() / (1.0 + pair.poly.coeff_norm())
}

/// Random polynomial of total degree <= `max_degree` with coefficients in the
/// complex unit box, used by randomized property checks.
pub fn random_poly<R: rand::Rng>(rng: &mut R, max_degree: u32) -> GradedPoly2 {
    let mut p = GradedPoly2::default();
    for a in 0..=max_degree {
        for b in 0..=(max_degree - a) {
            let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            p.add_term(a, b, c);
        }
    }
    p
}
