//! Dense matrices of the Zernike- and Higgs-representation Hamiltonians,
//! eigensolves, Hermiticity/pseudo-Hermiticity diagnostics, and pointwise
//! operator identities.
//!
//! Matrices are assembled per angular sector in a basis that is orthonormal
//! under the declared weight `(1 + alpha r^2)^w`: radial functions
//! `r^|m| P_k^{(A, |m|)}(2t - 1)` (shifted Jacobi, `t = r^2/r0^2`) times an
//! optional gauge factor `u^kappa`. With the gauge factor matched to the
//! similarity transform the Higgs-representation entries are convergent
//! integrals and the assembled matrix is exactly similar to the Zernike one;
//! in the raw polynomial basis the rational potential terms are outside the
//! operator's form domain at the rim, which the node-doubling guard reports
//! as a `Quadrature` error.
//!
//! All operators commute with rotations, so entries between different
//! angular sectors vanish identically and assembly is block-diagonal in m.

use std::collections::BTreeMap;
use std::io::Write;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{gauge_phi, Params};
use crate::poly::{exact_eigenvalue, GradedPoly2};
use crate::quadrature::gauss_jacobi_01;

/// Which Hamiltonian to assemble / apply. All tags represent `H = -hbar^2 Z`
/// in different operator forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OperatorTag {
    /// `H = p^2 + alpha (r.p)^2 - i beta_tilde r.p` with `p = -i hbar grad`.
    Zernike,
    /// Higgs-oscillator form built from symmetrized momenta:
    /// `H = p^2 + alpha (p.r)(r.p) + V + hbar (beta_tilde - 2 hbar alpha)`.
    HiggsPq,
    /// Laplace-Beltrami form:
    /// `H = -hbar^2 Delta_g + (bt-ha)(bt-3ha) r^2/(4u) + hbar (bt - ha)`.
    HiggsLaplacian,
    /// `HiggsPq` at the Hermitian point `beta = 2 alpha`: vanishing potential
    /// and constant shift, a free particle on the (pseudo)sphere.
    FreeParticle,
}

impl OperatorTag {
    /// The Zernike drift parameter this tag's operator is similar to.
    pub fn effective_beta(self, params: &Params) -> f64 {
        match self {
            OperatorTag::FreeParticle => 2.0 * params.alpha,
            _ => params.beta,
        }
    }
}

/// Basis gauge: `Raw` uses plain polynomials, `Adapted` multiplies them by
/// `u^kappa` with `kappa = (beta_eff - alpha)/(4 alpha)`, the exponent of the
/// similarity factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum BasisGauge {
    Raw,
    #[default]
    Adapted,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct BasisSpec {
    pub max_degree: u32,
    pub m_sector: Option<i32>,
    pub gauge: BasisGauge,
}

impl BasisSpec {
    pub fn full(max_degree: u32) -> Self {
        Self { max_degree, m_sector: None, gauge: BasisGauge::Adapted }
    }

    pub fn sector(max_degree: u32, m: i32) -> Self {
        Self { max_degree, m_sector: Some(m), gauge: BasisGauge::Adapted }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BasisLabel {
    pub n: u32,
    pub m: i32,
}

/// Dense real matrix of an operator in the declared weight-orthonormal basis.
#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    pub entries: DMatrix<f64>,
    pub labels: Vec<BasisLabel>,
    pub basis: BasisSpec,
    pub weight_exponent: f64,
    pub tag: OperatorTag,
}

/// Gauge exponent used by `Adapted` bases: kappa = (beta_eff - alpha)/(4 alpha).
pub fn gauge_kappa(tag: OperatorTag, params: &Params, gauge: BasisGauge) -> f64 {
    match (gauge, tag) {
        (BasisGauge::Raw, _) | (_, OperatorTag::Zernike) => 0.0,
        (BasisGauge::Adapted, _) => {
            (tag.effective_beta(params) - params.alpha) / (4.0 * params.alpha)
        }
    }
}

/// Similarity factor `W(r) = exp(-(i/hbar) phi_{bt - hbar alpha})
/// = (1 + alpha r^2)^{(beta - alpha)/(4 alpha)}`, the real multiplicative
/// map with `W * (H_zernike f) = H_higgs (W f)`.
pub fn similarity_factor(params: &Params, r: [f64; 2]) -> Result<f64> {
    let beta_eff = params.beta_tilde() - params.hbar * params.alpha;
    let phi = gauge_phi(params, beta_eff, r)?;
    let w = (Complex64::new(0.0, -1.0 / params.hbar) * phi).exp();
    debug_assert!(w.im.abs() < 1e-14 * (1.0 + w.re.abs()));
    Ok(w.re)
}

/// Function value together with the derivative combinations the operators
/// need: `f`, `D f = r.grad f`, `D^2 f`, and `lap f`.
#[derive(Debug, Clone, Copy)]
pub struct Jet {
    pub f: Complex64,
    pub df: Complex64,
    pub d2f: Complex64,
    pub lap: Complex64,
}

/// Pre-differentiated polynomial for cheap jet evaluation at many points.
#[derive(Debug, Clone)]
pub struct PolyJets {
    pub f: GradedPoly2,
    df: GradedPoly2,
    d2f: GradedPoly2,
    lap: GradedPoly2,
}

impl PolyJets {
    pub fn new(f: &GradedPoly2) -> Self {
        let df = f.euler_d();
        let d2f = df.euler_d();
        let lap = f.laplacian();
        Self { f: f.clone(), df, d2f, lap }
    }

    pub fn at(&self, r: [f64; 2]) -> Jet {
        Jet {
            f: self.f.eval(r),
            df: self.df.eval(r),
            d2f: self.d2f.eval(r),
            lap: self.lap.eval(r),
        }
    }
}

/// Evaluates `u^{-kappa} H_tag (u^kappa f)` at a point from the jet of `f`.
///
/// The gauge conjugation only shifts the derivative data:
/// `u^{-k} D (u^k f) = D f + s f` with `s = 2 alpha kappa r^2 / u`, and
/// similarly for `D^2` and the Laplacian. The three Hamiltonian forms are
/// then evaluated verbatim from their momentum expansions.
pub fn gauged_apply(
    tag: OperatorTag,
    params: &Params,
    kappa: f64,
    jet: &Jet,
    r_sq: f64,
) -> Complex64 {
    let alpha = params.alpha;
    let hbar = params.hbar;
    let h2 = hbar * hbar;
    let u = 1.0 + alpha * r_sq;

    let s = 2.0 * alpha * kappa * r_sq / u;
    let ds = 4.0 * alpha * kappa * r_sq / (u * u);
    let dk = jet.df + jet.f * s;
    let d2k = jet.d2f + jet.df * (2.0 * s) + jet.f * (ds + s * s);
    let lk = jet.lap
        + jet.df * (4.0 * alpha * kappa / u)
        + jet.f * (4.0 * alpha * kappa * (kappa / u - (kappa - 1.0) / (u * u)));

    match tag {
        OperatorTag::Zernike => -(lk + d2k * alpha + dk * params.beta) * h2,
        OperatorTag::HiggsPq | OperatorTag::FreeParticle => {
            let bt = match tag {
                OperatorTag::FreeParticle => 2.0 * hbar * alpha,
                _ => params.beta_tilde(),
            };
            let freq = bt - 2.0 * hbar * alpha;
            // p^2 = -h^2 [lap - (alpha/u) D + alpha (u-5)/(4u^2)]
            let p_sq =
                -(lk - dk * (alpha / u) + jet.f * (alpha * (u - 5.0) / (4.0 * u * u))) * h2;
            // (p.r)(r.p) = -h^2 [D^2 + (1 + 1/u) D - (3u+5)(u-1)/(4u^2)]
            let prrp = -(d2k + dk * (1.0 + 1.0 / u)
                - jet.f * ((3.0 * u + 5.0) * (u - 1.0) / (4.0 * u * u)))
                * h2;
            p_sq + prrp * alpha + jet.f * (freq * freq / 4.0 * r_sq / u + hbar * freq)
        }
        OperatorTag::HiggsLaplacian => {
            let bt = params.beta_tilde();
            let pot = (bt - hbar * alpha) * (bt - 3.0 * hbar * alpha) * r_sq / (4.0 * u);
            -(lk + d2k * alpha + dk * alpha) * h2 + jet.f * (pot + hbar * (bt - hbar * alpha))
        }
    }
}

// ---------------------------------------------------------------------------
// Jacobi radial basis
// ---------------------------------------------------------------------------

/// Values of P_0..P_kmax^{(a,b)} at x via the three-term recurrence.
fn jacobi_values(k_max: usize, a: f64, b: f64, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(k_max + 1);
    out.push(1.0);
    if k_max == 0 {
        return out;
    }
    out.push(((a + b + 2.0) * x + (a - b)) / 2.0);
    for k in 2..=k_max {
        let kf = k as f64;
        let c = 2.0 * kf + a + b;
        let a1 = 2.0 * kf * (kf + a + b) * (c - 2.0);
        let a2 = (c - 1.0) * (a * a - b * b);
        let a3 = (c - 1.0) * c * (c - 2.0);
        let a4 = 2.0 * (kf + a - 1.0) * (kf + b - 1.0) * c;
        out.push(((a2 + a3 * x) * out[k - 1] - a4 * out[k - 2]) / a1);
    }
    out
}

/// Radial sector basis: jets of the orthonormal radial functions (without the
/// gauge factor) at the Gauss-Jacobi nodes, plus the matching disk measure.
struct SectorBasis {
    /// jets[k][i]: k-th normalized radial function at node i, on the x1-axis.
    jets: Vec<Vec<Jet>>,
    /// r^2 at each node.
    r_sq: Vec<f64>,
    /// Quadrature weights including the 2 pi r0^2 / 2 disk measure.
    measure: Vec<f64>,
}

fn sector_basis(
    params: &Params,
    mu: u32,
    count: usize,
    gram_exponent: f64,
    n_nodes: usize,
) -> Result<SectorBasis> {
    let rule = gauss_jacobi_01(n_nodes, gram_exponent)?;
    let r0_sq = 1.0 / (-params.alpha);
    let muf = mu as f64;
    let a = gram_exponent;
    let b = muf;

    let mut jets: Vec<Vec<Jet>> = vec![Vec::with_capacity(n_nodes); count];
    for &t in &rule.nodes {
        let x = 2.0 * t - 1.0;
        let rho_sq = r0_sq * t;
        let rho_mu = rho_sq.powf(muf / 2.0);
        let p0 = jacobi_values(count.saturating_sub(1), a, b, x);
        let p1 = jacobi_values(count.saturating_sub(1), a + 1.0, b + 1.0, x);
        let p2 = jacobi_values(count.saturating_sub(1), a + 2.0, b + 2.0, x);
        for (k, jets_k) in jets.iter_mut().enumerate() {
            let kf = k as f64;
            let q = p0[k];
            // d/dt = 2 d/dx on P(2t-1); the Jacobi derivative lowers k and
            // bumps both exponents.
            let qt = if k >= 1 { (kf + a + b + 1.0) * p1[k - 1] } else { 0.0 };
            let qtt = if k >= 2 {
                (kf + a + b + 1.0) * (kf + a + b + 2.0) * p2[k - 2]
            } else {
                0.0
            };
            let f = rho_mu * q;
            let df = rho_mu * (muf * q + 2.0 * t * qt);
            let d2f = rho_mu * (muf * muf * q + (4.0 * muf + 4.0) * t * qt + 4.0 * t * t * qtt);
            let lap = (4.0 / r0_sq) * rho_mu * (t * qtt + (muf + 1.0) * qt);
            jets_k.push(Jet {
                f: Complex64::new(f, 0.0),
                df: Complex64::new(df, 0.0),
                d2f: Complex64::new(d2f, 0.0),
                lap: Complex64::new(lap, 0.0),
            });
        }
    }

    let r_sq: Vec<f64> = rule.nodes.iter().map(|&t| r0_sq * t).collect();
    let measure: Vec<f64> =
        rule.weights.iter().map(|&w| w * std::f64::consts::PI * r0_sq).collect();

    // The Jacobi family is orthogonal under exactly this measure, so only the
    // norms need fixing.
    for jets_k in jets.iter_mut() {
        let norm_sq: f64 =
            jets_k.iter().zip(&measure).map(|(jet, &w)| w * jet.f.re * jet.f.re).sum();
        let scale = 1.0 / norm_sq.sqrt();
        for jet in jets_k.iter_mut() {
            jet.f *= scale;
            jet.df *= scale;
            jet.d2f *= scale;
            jet.lap *= scale;
        }
    }
    Ok(SectorBasis { jets, r_sq, measure })
}

fn sector_block(
    params: &Params,
    tag: OperatorTag,
    kappa: f64,
    mu: u32,
    count: usize,
    gram_exponent: f64,
    n_nodes: usize,
) -> Result<DMatrix<f64>> {
    let basis = sector_basis(params, mu, count, gram_exponent, n_nodes)?;
    let mut block = DMatrix::<f64>::zeros(count, count);
    let n_pts = basis.measure.len();
    let mut applied = vec![vec![0.0f64; n_pts]; count];
    for (kb, row) in applied.iter_mut().enumerate() {
        for (i, slot) in row.iter_mut().enumerate() {
            let v = gauged_apply(tag, params, kappa, &basis.jets[kb][i], basis.r_sq[i]);
            debug_assert!(v.im.abs() <= 1e-12 * (1.0 + v.re.abs()));
            *slot = v.re;
        }
    }
    for ka in 0..count {
        for (kb, applied_kb) in applied.iter().enumerate() {
            let acc: f64 = basis
                .measure
                .iter()
                .zip(&basis.jets[ka])
                .zip(applied_kb)
                .map(|((&w, jet), &hv)| w * jet.f.re * hv)
                .sum();
            block[(ka, kb)] = acc;
        }
    }
    Ok(block)
}

/// Tolerance of the node-doubling validation of assembled entries.
pub const NODE_DOUBLING_TOL: f64 = 1e-8;

/// Assembles the dense matrix of the tagged operator in the weight-orthonormal
/// (optionally gauge-adapted) graded basis. Entries are validated by node
/// doubling; integrands that do not converge under refinement (raw-basis
/// Higgs forms at rim-singular weights) raise a `Quadrature` error.
pub fn assemble(
    params: &Params,
    tag: OperatorTag,
    basis: &BasisSpec,
    weight_exponent: f64,
) -> Result<OperatorMatrix> {
    assemble_impl(params, tag, basis, weight_exponent, true)
}

/// Assembly without the node-doubling guard; used to record the empirical
/// behaviour of non-convergent raw-basis integrands.
pub fn assemble_unvalidated(
    params: &Params,
    tag: OperatorTag,
    basis: &BasisSpec,
    weight_exponent: f64,
) -> Result<OperatorMatrix> {
    assemble_impl(params, tag, basis, weight_exponent, false)
}

fn assemble_impl(
    params: &Params,
    tag: OperatorTag,
    basis: &BasisSpec,
    weight_exponent: f64,
    validate: bool,
) -> Result<OperatorMatrix> {
    if params.alpha >= 0.0 {
        return Err(Error::Domain(format!(
            "matrix assembly requires alpha < 0 (compact disk), got {}",
            params.alpha
        )));
    }
    let kappa = gauge_kappa(tag, params, basis.gauge);
    let gram_exponent = weight_exponent + 2.0 * kappa;
    if weight_exponent <= -1.0 || gram_exponent <= -1.0 {
        return Err(Error::Domain(format!(
            "weight exponent {weight_exponent} (basis gram exponent {gram_exponent}) must be > -1"
        )));
    }

    let labels = basis_labels(basis)?;
    let dim = labels.len();
    let index: BTreeMap<(u32, i32), usize> =
        labels.iter().enumerate().map(|(i, l)| ((l.n, l.m), i)).collect();

    let sectors: Vec<i32> = match basis.m_sector {
        Some(m) => vec![m],
        None => (-(basis.max_degree as i32)..=basis.max_degree as i32).collect(),
    };

    let n_nodes = basis.max_degree as usize + 4;
    let mut entries = DMatrix::<f64>::zeros(dim, dim);
    let mut block_cache: BTreeMap<u32, DMatrix<f64>> = BTreeMap::new();

    for &m in &sectors {
        let mu = m.unsigned_abs();
        let count = ((basis.max_degree - mu) / 2 + 1) as usize;
        if let std::collections::btree_map::Entry::Vacant(slot) = block_cache.entry(mu) {
            let b = sector_block(params, tag, kappa, mu, count, gram_exponent, n_nodes)?;
            if validate {
                let b2 = sector_block(params, tag, kappa, mu, count, gram_exponent, 2 * n_nodes)?;
                let scale = 1.0 + b.amax();
                let drift = (&b2 - &b).amax();
                if drift > NODE_DOUBLING_TOL * scale {
                    return Err(Error::Quadrature(format!(
                        "entries for {tag:?} under weight {weight_exponent} (gauge {:?}) do not \
                         converge: node doubling moved them by {drift:.3e}",
                        basis.gauge
                    )));
                }
            }
            slot.insert(b);
        }
        let block = &block_cache[&mu];
        for ka in 0..count {
            for kb in 0..count {
                let na = mu + 2 * ka as u32;
                let nb = mu + 2 * kb as u32;
                entries[(index[&(na, m)], index[&(nb, m)])] = block[(ka, kb)];
            }
        }
    }

    Ok(OperatorMatrix { entries, labels, basis: *basis, weight_exponent, tag })
}

/// Basis labels (n, m) in canonical (n ascending, m ascending) order.
pub fn basis_labels(basis: &BasisSpec) -> Result<Vec<BasisLabel>> {
    let mut labels = Vec::new();
    match basis.m_sector {
        Some(m) => {
            if m.unsigned_abs() > basis.max_degree {
                return Err(Error::Domain(format!(
                    "m sector {m} exceeds max degree {}",
                    basis.max_degree
                )));
            }
            let mut n = m.unsigned_abs();
            while n <= basis.max_degree {
                labels.push(BasisLabel { n, m });
                n += 2;
            }
        }
        None => {
            for n in 0..=basis.max_degree {
                let mut m = -(n as i32);
                while m <= n as i32 {
                    labels.push(BasisLabel { n, m });
                    m += 2;
                }
            }
        }
    }
    labels.sort_by_key(|l| (l.n, l.m));
    Ok(labels)
}

// ---------------------------------------------------------------------------
// Eigenvalues
// ---------------------------------------------------------------------------

/// Dimension cap for the dense eigensolver.
pub const EIGEN_DIM_CAP: usize = 600;

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    /// All matrix eigenvalues, sorted by real part then imaginary part.
    pub eigenvalues: Vec<Complex64>,
    pub max_imag: f64,
    /// Reference eigenvalues (sorted) when a comparison was requested.
    pub compared_to: Option<Vec<f64>>,
    pub max_abs_deviation: Option<f64>,
}

/// All eigenvalues of the matrix via the real Schur decomposition.
pub fn eigen(matrix: &OperatorMatrix) -> Result<SpectrumReport> {
    eigen_entries(&matrix.entries)
}

pub fn eigen_entries(entries: &DMatrix<f64>) -> Result<SpectrumReport> {
    if entries.nrows() > EIGEN_DIM_CAP {
        return Err(Error::Domain(format!(
            "matrix dimension {} exceeds the eigensolver cap {EIGEN_DIM_CAP}",
            entries.nrows()
        )));
    }
    // Deflation thresholds below ~1e-14 can stall the QR iteration on
    // block-triangular matrices with repeated eigenvalues; step the threshold
    // up before giving up. The truncation it introduces is O(eps * |M|),
    // far below the 1e-9 eigenvalue contracts.
    let schur = [1e-14, 1e-13, 1e-12]
        .iter()
        .find_map(|&eps| nalgebra::linalg::Schur::try_new(entries.clone(), eps, 100_000))
        .ok_or_else(|| Error::Convergence("real Schur iteration stalled".into()))?;
    let mut eigenvalues: Vec<Complex64> = schur.complex_eigenvalues().iter().copied().collect();
    eigenvalues.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    let max_imag = eigenvalues.iter().map(|l| l.im.abs()).fold(0.0, f64::max);
    Ok(SpectrumReport { eigenvalues, max_imag, compared_to: None, max_abs_deviation: None })
}

/// Expected matrix eigenvalues `hbar^2 E_n` for the labels of an assembled
/// operator.
pub fn expected_eigenvalues(params: &Params, matrix: &OperatorMatrix) -> Vec<f64> {
    let h2 = params.hbar * params.hbar;
    matrix.labels.iter().map(|l| h2 * exact_eigenvalue(params, l.n)).collect()
}

/// Fills `compared_to` / `max_abs_deviation` against the exact spectrum.
pub fn compare_to_exact(params: &Params, matrix: &OperatorMatrix, report: &mut SpectrumReport) {
    let mut expected = expected_eigenvalues(params, matrix);
    expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let dev = report
        .eigenvalues
        .iter()
        .zip(&expected)
        .map(|(l, &e)| (l - Complex64::new(e, 0.0)).norm())
        .fold(0.0, f64::max);
    report.compared_to = Some(expected);
    report.max_abs_deviation = Some(dev);
}

/// Relative Hermiticity defect `max |M_ab - conj(M_ba)| / (1 + max |M|)`.
/// Zero means the operator is Hermitian in the basis' weighted inner product.
pub fn symmetry_defect(entries: &DMatrix<f64>) -> f64 {
    let scale = 1.0 + entries.amax();
    let mut defect: f64 = 0.0;
    for i in 0..entries.nrows() {
        for j in 0..i {
            defect = defect.max((entries[(i, j)] - entries[(j, i)]).abs());
        }
    }
    defect / scale
}

// ---------------------------------------------------------------------------
// Pointwise operator identities
// ---------------------------------------------------------------------------

/// Maximum relative pointwise deviation of `W (H_zernike f)` from
/// `H_tag (W f)`, with `W = u^{(beta_eff - alpha)/(4 alpha)}` the similarity
/// factor. Verifying this identity pointwise is stronger than matching
/// spectra.
pub fn similarity_check(
    params: &Params,
    tag: OperatorTag,
    polys: &[GradedPoly2],
    points: &[[f64; 2]],
) -> Result<f64> {
    similarity_check_with_exponent_sign(params, tag, polys, points, 1.0)
}

/// Same check with the gauge exponent scaled by `sign`; `sign = -1` probes
/// the opposite convention and is expected to fail loudly away from
/// `beta = 2 alpha`... where both coincide with +-1/4 only at beta = alpha.
pub fn similarity_check_with_exponent_sign(
    params: &Params,
    tag: OperatorTag,
    polys: &[GradedPoly2],
    points: &[[f64; 2]],
    sign: f64,
) -> Result<f64> {
    if params.alpha == 0.0 {
        return Err(Error::Domain("similarity check requires alpha != 0".into()));
    }
    let beta_eff = tag.effective_beta(params);
    let zparams = Params::new(params.alpha, beta_eff, params.hbar)?;
    let kappa = sign * (beta_eff - params.alpha) / (4.0 * params.alpha);
    let h2 = params.hbar * params.hbar;

    let mut max_dev: f64 = 0.0;
    for f in polys {
        let jets = PolyJets::new(f);
        let zf = crate::poly::apply_zernike(&zparams, f);
        for &r in points {
            let r_sq = r[0] * r[0] + r[1] * r[1];
            if params.u_at(r_sq) <= 0.0 {
                return Err(Error::Domain(format!("sample point {r:?} outside the domain")));
            }
            let lhs = zf.eval(r) * (-h2);
            let rhs = gauged_apply(tag, params, kappa, &jets.at(r), r_sq);
            let dev = (rhs - lhs).norm() / (1.0 + lhs.norm());
            max_dev = max_dev.max(dev);
        }
    }
    Ok(max_dev)
}

/// Maximum relative pointwise deviation between the momentum-form and
/// Laplace-Beltrami-form Higgs Hamiltonians applied to test polynomials.
pub fn operator_form_consistency(
    params: &Params,
    polys: &[GradedPoly2],
    points: &[[f64; 2]],
) -> Result<f64> {
    if params.alpha == 0.0 {
        return Err(Error::Domain("operator comparison requires alpha != 0".into()));
    }
    let mut max_dev: f64 = 0.0;
    for f in polys {
        let jets = PolyJets::new(f);
        for &r in points {
            let r_sq = r[0] * r[0] + r[1] * r[1];
            if params.u_at(r_sq) <= 0.0 {
                return Err(Error::Domain(format!("sample point {r:?} outside the domain")));
            }
            let jet = jets.at(r);
            let a = gauged_apply(OperatorTag::HiggsPq, params, 0.0, &jet, r_sq);
            let b = gauged_apply(OperatorTag::HiggsLaplacian, params, 0.0, &jet, r_sq);
            max_dev = max_dev.max((a - b).norm() / (1.0 + a.norm().max(b.norm())));
        }
    }
    Ok(max_dev)
}

// ---------------------------------------------------------------------------
// Pseudo-Hermiticity weight search
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct WeightCandidate {
    pub exponent: f64,
    /// Symmetry defect of the Zernike matrix under this weight, when the
    /// weight is integrable.
    pub defect: Option<f64>,
    pub note: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightSearchOutcome {
    pub candidates: Vec<WeightCandidate>,
    /// The exponent that symmetrizes the operator (defect < 1e-8), if any.
    pub winner: Option<f64>,
}

/// Tries both sign conventions of the transform-measure exponent,
/// `(alpha-beta)/(2 alpha) - 1/2` and `(beta-alpha)/(2 alpha) - 1/2`, and
/// reports which weight renders the Zernike matrix symmetric.
pub fn hermiticity_weight_search(params: &Params, max_degree: u32) -> Result<WeightSearchOutcome> {
    let w1 = (params.alpha - params.beta) / (2.0 * params.alpha) - 0.5;
    let w2 = (params.beta - params.alpha) / (2.0 * params.alpha) - 0.5;
    let mut outcome = WeightSearchOutcome { candidates: Vec::new(), winner: None };
    for w in [w1, w2] {
        if w <= -1.0 {
            outcome.candidates.push(WeightCandidate {
                exponent: w,
                defect: None,
                note: "weight not integrable on the disk (exponent <= -1)".into(),
            });
            continue;
        }
        let basis = BasisSpec { max_degree, m_sector: None, gauge: BasisGauge::Raw };
        let matrix = assemble(params, OperatorTag::Zernike, &basis, w)?;
        let defect = symmetry_defect(&matrix.entries);
        let note = if defect < 1e-8 {
            if outcome.winner.is_none() {
                outcome.winner = Some(w);
            }
            "symmetrizes the operator".into()
        } else {
            "does not symmetrize the operator".into()
        };
        outcome.candidates.push(WeightCandidate { exponent: w, defect: Some(defect), note });
    }
    Ok(outcome)
}

// ---------------------------------------------------------------------------
// Report output
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumRow {
    pub n: u32,
    pub m: i32,
    pub e_exact: f64,
    pub e_numeric_re: f64,
    pub e_numeric_im: f64,
    pub abs_err: f64,
}

/// Pairs numeric eigenvalues with (n, m) labels by sorted order and expresses
/// them in the `H psi = hbar^2 E psi` convention. For Higgs tags only degrees
/// `n <= max_degree - 2` are reported (truncation tail guard).
pub fn spectrum_rows(
    params: &Params,
    matrix: &OperatorMatrix,
    report: &SpectrumReport,
) -> Vec<SpectrumRow> {
    let h2 = params.hbar * params.hbar;
    let mut order: Vec<usize> = (0..matrix.labels.len()).collect();
    order.sort_by(|&i, &j| {
        let ei = exact_eigenvalue(params, matrix.labels[i].n);
        let ej = exact_eigenvalue(params, matrix.labels[j].n);
        (ei, matrix.labels[i].n, matrix.labels[i].m)
            .partial_cmp(&(ej, matrix.labels[j].n, matrix.labels[j].m))
            .unwrap()
    });
    let guard = match matrix.tag {
        OperatorTag::Zernike => matrix.basis.max_degree,
        _ => matrix.basis.max_degree.saturating_sub(2),
    };
    let mut rows = Vec::new();
    for (rank, &i) in order.iter().enumerate() {
        let label = matrix.labels[i];
        if label.n > guard {
            continue;
        }
        let e_exact = exact_eigenvalue(params, label.n);
        let numeric = report.eigenvalues[rank] / h2;
        rows.push(SpectrumRow {
            n: label.n,
            m: label.m,
            e_exact,
            e_numeric_re: numeric.re,
            e_numeric_im: numeric.im,
            abs_err: (numeric - Complex64::new(e_exact, 0.0)).norm(),
        });
    }
    rows.sort_by_key(|r| (r.n, r.m));
    rows
}

/// CSV schema: n, m, E_exact, E_numeric_re, E_numeric_im, abs_err.
pub fn write_spectrum_csv<W: Write>(rows: &[SpectrumRow], out: &mut W) -> Result<()> {
    writeln!(out, "n,m,E_exact,E_numeric_re,E_numeric_im,abs_err")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{:.16e},{:.16e},{:.16e},{:.16e}",
            r.n, r.m, r.e_exact, r.e_numeric_re, r.e_numeric_im, r.abs_err
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::random_poly;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn zernike_point() -> Params {
        Params::new(-1.0, -2.0, 1.0).unwrap()
    }

    fn generic_point() -> Params {
        Params::new(-1.0, -0.7, 1.0).unwrap()
    }

    fn interior_points(rng: &mut ChaCha8Rng, n: usize, lim: f64) -> Vec<[f64; 2]> {
        (0..n)
            .map(|_| {
                let ang = rng.gen_range(0.0..std::f64::consts::TAU);
                let rad = lim * rng.gen_range(0.0f64..1.0).sqrt();
                [rad * ang.cos(), rad * ang.sin()]
            })
            .collect()
    }

    #[test]
    fn jacobi_recurrence_matches_legendre() {
        // P_k^{(0,0)} are the Legendre polynomials.
        let x = 0.37;
        let v = jacobi_values(3, 0.0, 0.0, x);
        assert_abs_diff_eq!(v[1], x, epsilon = 1e-15);
        assert_abs_diff_eq!(v[2], 0.5 * (3.0 * x * x - 1.0), epsilon = 1e-14);
        assert_abs_diff_eq!(v[3], 0.5 * (5.0 * x * x * x - 3.0 * x), epsilon = 1e-14);
    }

    #[test]
    fn jacobi_derivative_identity() {
        // d/dx P_k^{(a,b)} = (k+a+b+1)/2 P_{k-1}^{(a+1,b+1)} via central diff.
        let (a, b) = (-0.3, 2.0);
        let h = 1e-6;
        for k in 1..6usize {
            for &x in &[-0.6, 0.1, 0.8] {
                let fd = (jacobi_values(k, a, b, x + h)[k] - jacobi_values(k, a, b, x - h)[k])
                    / (2.0 * h);
                let exact = (k as f64 + a + b + 1.0) / 2.0
                    * jacobi_values(k - 1, a + 1.0, b + 1.0, x)[k - 1];
                assert!((fd - exact).abs() < 1e-7 * (1.0 + exact.abs()));
            }
        }
    }

    #[test]
    fn sector_basis_is_orthonormal() {
        let params = generic_point();
        for &(mu, w) in &[(0u32, 0.0), (1, -0.5), (2, 0.7), (0, -0.65)] {
            let count = 5;
            let basis = sector_basis(&params, mu, count, w, 16).unwrap();
            for i in 0..count {
                for j in 0..count {
                    let ip: f64 = (0..basis.measure.len())
                        .map(|q| basis.measure[q] * basis.jets[i][q].f.re * basis.jets[j][q].f.re)
                        .sum();
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((ip - want).abs() < 1e-12, "gram[{i},{j}] = {ip} for mu={mu}, w={w}");
                }
            }
        }
    }

    #[test]
    fn zernike_block_structure_and_diagonal() {
        // Degree <= 2 basis is 6-dimensional; the matrix is triangular in the
        // degree grading with diagonal -hbar^2 (alpha n^2 + beta n).
        let params = Params::new(-0.8, 0.3, 1.3).unwrap();
        let basis = BasisSpec { max_degree: 2, m_sector: None, gauge: BasisGauge::Raw };
        let m = assemble(&params, OperatorTag::Zernike, &basis, 0.0).unwrap();
        assert_eq!(m.entries.nrows(), 6);
        let h2 = params.hbar * params.hbar;
        for (i, l) in m.labels.iter().enumerate() {
            let lam = params.alpha * (l.n as f64).powi(2) + params.beta * l.n as f64;
            assert_abs_diff_eq!(m.entries[(i, i)], -h2 * lam, epsilon = 1e-10);
        }
        for (i, li) in m.labels.iter().enumerate() {
            for (j, lj) in m.labels.iter().enumerate() {
                if li.n > lj.n {
                    assert!(
                        m.entries[(i, j)].abs() < 1e-10,
                        "unexpected upward coupling {} -> {}",
                        lj.n,
                        li.n
                    );
                }
            }
        }
    }

    #[test]
    fn eigen_diagonal_matrix() {
        let entries = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 2.0, 3.0]));
        let report = eigen_entries(&entries).unwrap();
        let re: Vec<f64> = report.eigenvalues.iter().map(|l| l.re).collect();
        assert_eq!(re, vec![1.0, 2.0, 3.0]);
        assert_abs_diff_eq!(report.max_imag, 0.0, epsilon = 0.0);
    }

    #[test]
    fn eigen_zernike_classical_spectrum() {
        // Degree <= 8 at (-1, -2): eigenvalues n(n+2) with multiplicity n+1.
        let params = zernike_point();
        let m = assemble(&params, OperatorTag::Zernike, &BasisSpec::full(8), 0.0).unwrap();
        let mut report = eigen(&m).unwrap();
        compare_to_exact(&params, &m, &mut report);
        assert!(report.max_abs_deviation.unwrap() < 1e-9);
        assert!(report.max_imag < 1e-9);
    }

    #[test]
    fn eigen_similarity_invariance_random_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let n = 8;
        let a = DMatrix::<f64>::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
        let mut g = DMatrix::<f64>::identity(n, n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    g[(i, j)] = 0.3 * rng.gen_range(-1.0..1.0);
                }
            }
        }
        let g_inv = g.clone().try_inverse().unwrap();
        let conj = &g * &a * &g_inv;
        let ea = eigen_entries(&a).unwrap();
        let ec = eigen_entries(&conj).unwrap();
        for (x, y) in ea.eigenvalues.iter().zip(&ec.eigenvalues) {
            assert!((x - y).norm() < 1e-8);
        }
    }

    #[test]
    fn symmetry_defect_basics() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let a = DMatrix::<f64>::from_fn(5, 5, |_, _| rng.gen_range(-1.0..1.0));
        let sym = &a + &a.transpose();
        assert_abs_diff_eq!(symmetry_defect(&sym), 0.0, epsilon = 1e-16);
        assert!(symmetry_defect(&a) > 1e-3);
    }

    #[test]
    fn zernike_point_is_flat_hermitian() {
        // (-1, -2) under the flat weight: defect < 1e-10.
        let params = zernike_point();
        let basis = BasisSpec { max_degree: 8, m_sector: None, gauge: BasisGauge::Raw };
        let m = assemble(&params, OperatorTag::Zernike, &basis, 0.0).unwrap();
        assert!(symmetry_defect(&m.entries) < 1e-10, "defect {}", symmetry_defect(&m.entries));
    }

    #[test]
    fn generic_zernike_is_not_flat_hermitian() {
        let params = generic_point();
        let basis = BasisSpec { max_degree: 6, m_sector: None, gauge: BasisGauge::Raw };
        let m = assemble(&params, OperatorTag::Zernike, &basis, 0.0).unwrap();
        assert!(symmetry_defect(&m.entries) > 1e-3);
    }

    #[test]
    fn free_particle_hermitian_under_invariant_weight() {
        // beta = 2 alpha point: the (pseudo)spherical free particle is
        // symmetric under sqrt(g), in the gauge-adapted basis.
        for params in [zernike_point(), Params::new(-0.5, -1.0, 1.0).unwrap()] {
            let m =
                assemble(&params, OperatorTag::FreeParticle, &BasisSpec::full(8), -0.5).unwrap();
            let defect = symmetry_defect(&m.entries);
            assert!(defect < 1e-10, "free particle defect {defect} at {params:?}");
        }
    }

    #[test]
    fn higgs_matrix_spectrum_matches_zernike() {
        // Spectral invariance under the similarity transform, degrees <= 10.
        for params in [zernike_point(), generic_point()] {
            let mz = assemble(&params, OperatorTag::Zernike, &BasisSpec::full(10), 0.0).unwrap();
            let mh = assemble(&params, OperatorTag::HiggsPq, &BasisSpec::full(10), -0.5).unwrap();
            let ez = eigen(&mz).unwrap();
            let eh = eigen(&mh).unwrap();
            for (a, b) in ez.eigenvalues.iter().zip(&eh.eigenvalues) {
                assert!((a - b).norm() < 1e-7, "{a} vs {b} at {params:?}");
            }
        }
    }

    #[test]
    fn m_sector_matches_full_assembly() {
        let params = generic_point();
        let full = assemble(&params, OperatorTag::Zernike, &BasisSpec::full(8), 0.0).unwrap();
        let full_eig = eigen(&full).unwrap();
        let mut sector_eigs: Vec<Complex64> = Vec::new();
        for m in -8i32..=8 {
            let sec =
                assemble(&params, OperatorTag::Zernike, &BasisSpec::sector(8, m), 0.0).unwrap();
            sector_eigs.extend(eigen(&sec).unwrap().eigenvalues);
        }
        sector_eigs.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        assert_eq!(sector_eigs.len(), full_eig.eigenvalues.len());
        for (a, b) in sector_eigs.iter().zip(&full_eig.eigenvalues) {
            assert!((a - b).norm() < 1e-9);
        }
    }

    #[test]
    fn similarity_identity_pointwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for params in [zernike_point(), generic_point(), Params::new(1.0, 0.5, 1.0).unwrap()] {
            let lim = if params.alpha < 0.0 { 0.8 } else { 1.4 };
            let points = interior_points(&mut rng, 50, lim);
            let polys: Vec<_> = (0..4).map(|_| random_poly(&mut rng, 4)).collect();
            let dev = similarity_check(&params, OperatorTag::HiggsPq, &polys, &points).unwrap();
            assert!(dev < 1e-8, "similarity deviation {dev} at {params:?}");

            // The opposite exponent sign must fail away from beta = alpha.
            let dev_wrong = similarity_check_with_exponent_sign(
                &params,
                OperatorTag::HiggsPq,
                &polys,
                &points,
                -1.0,
            )
            .unwrap();
            assert!(dev_wrong > 1e-3, "wrong-sign deviation {dev_wrong} at {params:?}");
        }
    }

    #[test]
    fn similarity_identity_constant_poly() {
        // Constants: both sides equal W * H_Z(1) = 0 identically.
        let params = generic_point();
        let one = vec![GradedPoly2::one()];
        let points = vec![[0.3, 0.1], [0.0, 0.5]];
        let dev = similarity_check(&params, OperatorTag::HiggsPq, &one, &points).unwrap();
        assert!(dev < 1e-13, "constant deviation {dev}");
    }

    #[test]
    fn free_particle_reduction_pointwise() {
        // At beta = 2 alpha the gauge factor turns H_Z into the pure kinetic
        // operator; FreeParticle checks against beta_eff = 2 alpha directly.
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let params = Params::new(-0.5, -1.0, 1.0).unwrap();
        let points = interior_points(&mut rng, 30, 1.1);
        let polys: Vec<_> = (0..3).map(|_| random_poly(&mut rng, 4)).collect();
        let dev = similarity_check(&params, OperatorTag::FreeParticle, &polys, &points).unwrap();
        assert!(dev < 1e-8);
    }

    #[test]
    fn operator_forms_agree() {
        // Constants isolate the additive constants of the two forms; the
        // measured deviation is recorded rather than assumed zero.
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        for params in [zernike_point(), generic_point(), Params::new(0.9, 0.4, 0.7).unwrap()] {
            let lim = if params.alpha < 0.0 { 0.8 } else { 1.3 };
            let points = interior_points(&mut rng, 50, lim);
            let mut polys: Vec<_> = (0..4).map(|_| random_poly(&mut rng, 4)).collect();
            polys.push(GradedPoly2::one());
            let dev = operator_form_consistency(&params, &polys, &points).unwrap();
            assert!(dev < 1e-8, "operator forms disagree by {dev} at {params:?}");
        }
    }

    #[test]
    fn weight_search_finds_symmetrizer() {
        let params = generic_point();
        let outcome = hermiticity_weight_search(&params, 8).unwrap();
        // (beta - alpha)/(2 alpha) - 1/2 = -0.65 is the symmetrizing weight.
        let winner = outcome.winner.expect("a weight should symmetrize");
        assert_abs_diff_eq!(winner, -0.65, epsilon = 1e-12);
        let loser =
            outcome.candidates.iter().find(|c| (c.exponent - winner).abs() > 1e-9).unwrap();
        assert!(loser.defect.unwrap() > 1e-3);
    }

    #[test]
    fn raw_basis_higgs_fails_node_doubling() {
        // Rational potential terms are outside the form domain of the raw
        // polynomial basis under sqrt(g): entries do not converge.
        let params = generic_point();
        let basis = BasisSpec { max_degree: 6, m_sector: None, gauge: BasisGauge::Raw };
        match assemble(&params, OperatorTag::HiggsPq, &basis, -0.5) {
            Err(Error::Quadrature(_)) => {}
            other => panic!("expected quadrature error, got {other:?}"),
        }
        // ... yet at any fixed node count the defect cancels exactly: the
        // non-convergent part is a multiplication operator.
        let m = assemble_unvalidated(&params, OperatorTag::HiggsPq, &basis, -0.5).unwrap();
        assert!(symmetry_defect(&m.entries) < 1e-10);
    }

    #[test]
    fn spectrum_rows_and_csv() {
        let params = zernike_point();
        let m = assemble(&params, OperatorTag::Zernike, &BasisSpec::full(4), 0.0).unwrap();
        let mut report = eigen(&m).unwrap();
        compare_to_exact(&params, &m, &mut report);
        let rows = spectrum_rows(&params, &m, &report);
        assert_eq!(rows.len(), m.labels.len());
        for r in &rows {
            assert_abs_diff_eq!(r.e_exact, (r.n * (r.n + 2)) as f64, epsilon = 1e-12);
            assert!(r.abs_err < 1e-10);
        }
        let mut buf = Vec::new();
        write_spectrum_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("n,m,E_exact,E_numeric_re,E_numeric_im,abs_err\n"));
        assert_eq!(text.lines().count(), rows.len() + 1);
    }

    #[test]
    fn assembly_guards() {
        let pos = Params::new(1.0, 0.5, 1.0).unwrap();
        assert!(assemble(&pos, OperatorTag::Zernike, &BasisSpec::full(4), 0.0).is_err());
        let params = zernike_point();
        assert!(assemble(&params, OperatorTag::Zernike, &BasisSpec::full(4), -1.0).is_err());
        assert!(basis_labels(&BasisSpec::sector(4, 6)).is_err());
    }
}
