//! One-shot verification suite: runs every checkable claim of the library
//! (geometry identities, the exact spectrum, reality, similarity equivalence,
//! Hermitian points, measure conventions, classical gauge equivalence,
//! conservation laws, orbit closure, contraction limits) and produces a
//! reproducible report.
//!
//! Checks are pass/fail against pinned tolerances. Outcomes of convention
//! ambiguities (measure exponent sign, additive constants of the two Higgs
//! operator forms, rim behaviour of the raw polynomial basis) are recorded as
//! findings rather than failures.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classical::{
    self, closure_detect, gauge_profile, gauge_shift, integrate, GaugeDirection,
    IntegrateOptions, PhaseState, Variant,
};
use crate::error::Result;
use crate::geometry::{
    embed, gauge_phi, laplace_beltrami_apply, measure_weight, metric_at, Params, WeightKind,
};
use crate::poly::{
    apply_zernike, build_eigenfunction, degree_eigenvalue, random_poly, GradedPoly2,
    Normalization,
};
use crate::quadrature::{inner_product, weighted_norm};
use crate::spectral::{
    assemble, assemble_unvalidated, eigen, eigen_entries, hermiticity_weight_search,
    operator_form_consistency, similarity_check, similarity_check_with_exponent_sign,
    symmetry_defect, BasisGauge, BasisSpec, OperatorTag,
};

#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    pub alpha: f64,
    pub beta: f64,
    pub hbar: f64,
    pub max_degree: u32,
    pub seed: u64,
    pub tol_ode: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { alpha: -1.0, beta: -2.0, hbar: 1.0, max_degree: 8, seed: 42, tol_ode: 1e-10 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub tolerance: f64,
    pub details: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Finding {
    pub name: String,
    pub details: String,
    pub values: Vec<(String, f64)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub checks: Vec<CheckResult>,
    pub findings: Vec<Finding>,
    pub all_passed: bool,
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("verification report\n");
        out.push_str(&format!(
            "parameters: alpha={}, beta={}, hbar={}, max_degree={}, seed={}\n\n",
            self.config.alpha,
            self.config.beta,
            self.config.hbar,
            self.config.max_degree,
            self.config.seed
        ));
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {:<40} measured {:.3e}  tol {:.1e}  {}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.measured,
                c.tolerance,
                c.details
            ));
        }
        out.push_str("\nfindings\n");
        for f in &self.findings {
            out.push_str(&format!("- {}: {}\n", f.name, f.details));
            for (k, v) in &f.values {
                out.push_str(&format!("    {k} = {v:.6e}\n"));
            }
        }
        out.push_str(&format!(
            "\nresult: {}\n",
            if self.all_passed { "all checks passed" } else { "CHECK FAILURES PRESENT" }
        ));
        out
    }
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

fn check(name: &str, measured: f64, tolerance: f64, details: String) -> CheckResult {
    CheckResult {
        name: name.into(),
        passed: measured.is_finite() && measured <= tolerance,
        measured,
        tolerance,
        details,
    }
}

/// Least-squares slope of log10(y) against log10(x).
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|v| v.log10()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.log10()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let num: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let den: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    num / den
}

// ---------------------------------------------------------------------------
// Geometry checks
// ---------------------------------------------------------------------------

fn metric_pullback_deviation(rng: &mut ChaCha8Rng) -> Result<f64> {
    let h = 1e-6;
    let mut max_dev: f64 = 0.0;
    for &alpha in &[-1.0, 1.0] {
        let params = Params::new(alpha, 0.0, 1.0)?;
        let lim = if alpha < 0.0 { 0.85 } else { 1.5 };
        for r in interior_points(rng, 100, lim) {
            let mut jac = [[0.0f64; 3]; 2];
            for i in 0..2 {
                let mut rp = r;
                let mut rm = r;
                rp[i] += h;
                rm[i] -= h;
                let ep = embed(&params, rp)?;
                let em = embed(&params, rm)?;
                for k in 0..3 {
                    jac[i][k] = (ep[k] - em[k]) / (2.0 * h);
                }
            }
            let eta3 = -alpha.signum();
            let g = metric_at(&params, r)?.g;
            for i in 0..2 {
                for j in 0..2 {
                    let pullback = jac[i][0] * jac[j][0]
                        + jac[i][1] * jac[j][1]
                        + eta3 * jac[i][2] * jac[j][2];
                    max_dev = max_dev.max((pullback - g[(i, j)]).abs());
                }
            }
        }
    }
    Ok(max_dev)
}

fn gauge_gradient_deviation(rng: &mut ChaCha8Rng) -> Result<f64> {
    let h = 1e-5;
    let mut max_dev: f64 = 0.0;
    for &alpha in &[-1.0, 0.8] {
        let params = Params::new(alpha, 0.0, 1.0)?;
        let lim = if alpha < 0.0 { 0.8 } else { 1.4 };
        for r in interior_points(rng, 60, lim) {
            let beta_eff = rng.gen_range(-2.0..2.0);
            let u = params.u_at(r[0] * r[0] + r[1] * r[1]);
            for i in 0..2 {
                let mut rp = r;
                let mut rm = r;
                rp[i] += h;
                rm[i] -= h;
                let grad = (gauge_phi(&params, beta_eff, rp)? - gauge_phi(&params, beta_eff, rm)?)
                    / (2.0 * h);
                let expect = Complex64::new(0.0, beta_eff * r[i] / (2.0 * u));
                max_dev = max_dev.max((grad - expect).norm());
            }
        }
    }
    Ok(max_dev)
}

fn laplace_beltrami_coordinate_deviation(rng: &mut ChaCha8Rng) -> Result<f64> {
    let h = 1e-5;
    let mut max_dev: f64 = 0.0;
    for &alpha in &[-1.0, 1.0] {
        let params = Params::new(alpha, 0.0, 1.0)?;
        let f = random_poly(rng, 4);
        let lb = laplace_beltrami_apply(&params, &f)?;
        // Exact Cartesian gradient of the polynomial.
        let mut fx = GradedPoly2::zero();
        let mut fy = GradedPoly2::zero();
        for (a, b, c) in f.terms() {
            if a > 0 {
                fx.add_term(a - 1, b, c * a as f64);
                fy.add_term(a - 1, b, c * Complex64::new(0.0, a as f64));
            }
            if b > 0 {
                fx.add_term(a, b - 1, c * b as f64);
                fy.add_term(a, b - 1, c * Complex64::new(0.0, -(b as f64)));
            }
        }
        let field = |r: [f64; 2], i: usize| -> Result<Complex64> {
            let m = metric_at(&params, r)?;
            let sg = m.det_g.sqrt();
            let grad = [fx.eval(r), fy.eval(r)];
            Ok(sg * (m.g_inv[(i, 0)] * grad[0] + m.g_inv[(i, 1)] * grad[1]))
        };
        let lim = if alpha < 0.0 { 0.8 } else { 1.3 };
        for r in interior_points(rng, 50, lim) {
            let mut div = Complex64::new(0.0, 0.0);
            for i in 0..2 {
                let mut rp = r;
                let mut rm = r;
                rp[i] += h;
                rm[i] -= h;
                div += (field(rp, i)? - field(rm, i)?) / (2.0 * h);
            }
            let sg = metric_at(&params, r)?.det_g.sqrt();
            let exact = lb.eval(r);
            max_dev = max_dev.max((div / sg - exact).norm() / (1.0 + exact.norm()));
        }
    }
    Ok(max_dev)
}

fn weight_coincidence_deviation(rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut max_dev: f64 = 0.0;
    for &alpha in &[-1.0, -0.5, 1.3] {
        let params = Params::new(alpha, 2.0 * alpha, 1.0)?;
        let lim = if alpha < 0.0 { 0.9 / (-alpha).sqrt() } else { 1.5 };
        for r in interior_points(rng, 50, lim * 0.9) {
            let a = measure_weight(&params, WeightKind::Transform, r)?;
            let b = measure_weight(&params, WeightKind::Invariant, r)?;
            max_dev = max_dev.max((a - b).abs());
        }
    }
    Ok(max_dev)
}

// ---------------------------------------------------------------------------
// Spectrum checks
// ---------------------------------------------------------------------------

/// Independent spectrum oracle: dense diagonalization of the coefficient
/// matrix of `apply_zernike` on raw monomials of degree <= `max_degree`,
/// compared against the closed-form block-diagonal values.
pub fn dense_spectrum_oracle_deviation(params: &Params, max_degree: u32) -> Result<f64> {
    let mut basis = Vec::new();
    for n in 0..=max_degree {
        for a in 0..=n {
            basis.push((a, n - a));
        }
    }
    let dim = basis.len();
    let index: std::collections::HashMap<(u32, u32), usize> =
        basis.iter().copied().zip(0..).collect();
    let mut mat = nalgebra::DMatrix::<f64>::zeros(dim, dim);
    for (col, &(a, b)) in basis.iter().enumerate() {
        let out = apply_zernike(params, &GradedPoly2::monomial(a, b, Complex64::new(1.0, 0.0)));
        for (oa, ob, coeff) in out.terms() {
            mat[(index[&(oa, ob)], col)] = coeff.re;
        }
    }
    let numeric = eigen_entries(&mat)?;
    let mut expected: Vec<f64> = (0..=max_degree)
        .flat_map(|n| std::iter::repeat_n(degree_eigenvalue(params, n), n as usize + 1))
        .collect();
    expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(numeric
        .eigenvalues
        .iter()
        .zip(&expected)
        .map(|(l, &e)| (l - Complex64::new(e, 0.0)).norm())
        .fold(0.0, f64::max))
}

fn zernike_orthogonality_deviation() -> Result<f64> {
    let params = Params::new(-1.0, -2.0, 1.0)?;
    let mut pairs = Vec::new();
    for n in 0..=6u32 {
        let mut m = -(n as i32);
        while m <= n as i32 {
            pairs.push(build_eigenfunction(&params, n, m, Normalization::MonicTop)?);
            m += 2;
        }
    }
    let mut max_dev: f64 = 0.0;
    for (i, p1) in pairs.iter().enumerate() {
        for p2 in pairs.iter().skip(i + 1) {
            let ip = inner_product(&p1.poly, &p2.poly, 0.0, &params)?;
            let scale =
                weighted_norm(&p1.poly, 0.0, &params)? * weighted_norm(&p2.poly, 0.0, &params)?;
            max_dev = max_dev.max(ip.norm() / scale);
        }
    }
    Ok(max_dev)
}

/// Exact resonance locus: beta = -2 alpha j for an integer j in
/// [1, max_degree). At such points the operator has nontrivial Jordan blocks
/// and finite-precision eigensolvers split the defective eigenvalues by
/// ~sqrt(machine epsilon), so reality sweeps skip them.
pub fn is_resonant(alpha: f64, beta: f64, max_degree: u32) -> bool {
    (1..max_degree).any(|j| (beta + 2.0 * alpha * j as f64).abs() < 1e-12 * (1.0 + beta.abs()))
}

struct RealitySweep {
    max_imag: f64,
    cells: usize,
    skipped: Vec<(f64, f64)>,
}

fn reality_sweep(max_degree: u32) -> Result<RealitySweep> {
    let mut sweep = RealitySweep { max_imag: 0.0, cells: 0, skipped: Vec::new() };
    for i in 0..20 {
        for j in 0..20 {
            let alpha = -2.0 + 1.75 * i as f64 / 19.0;
            let beta = -3.0 + 4.0 * j as f64 / 19.0;
            if is_resonant(alpha, beta, max_degree) {
                sweep.skipped.push((alpha, beta));
                continue;
            }
            let params = Params::new(alpha, beta, 1.0)?;
            let basis = BasisSpec { max_degree, m_sector: None, gauge: BasisGauge::Raw };
            let matrix = assemble(&params, OperatorTag::Zernike, &basis, 0.0)?;
            let report = eigen(&matrix)?;
            sweep.max_imag = sweep.max_imag.max(report.max_imag);
            sweep.cells += 1;
        }
    }
    Ok(sweep)
}

// ---------------------------------------------------------------------------
// Classical checks
// ---------------------------------------------------------------------------

/// Initial states for the equivalence/conservation suites: bounded orbits for
/// both curvature signs (for alpha > 0 the potential ceiling omega^2 bounds
/// only low-energy orbits).
fn equivalence_states(rng: &mut ChaCha8Rng, alpha: f64, bt: f64, count: usize) -> Vec<PhaseState> {
    let (x_lim, p_lim) = if alpha < 0.0 {
        (0.4, 0.4)
    } else if bt >= 1.0 {
        (0.4, 0.25)
    } else {
        (0.3, 0.07)
    };
    (0..count)
        .map(|_| {
            PhaseState::real(
                [rng.gen_range(-x_lim..x_lim), rng.gen_range(-x_lim..x_lim)],
                [rng.gen_range(-p_lim..p_lim), rng.gen_range(-p_lim..p_lim)],
            )
        })
        .collect()
}

struct EquivalenceOutcome {
    max_im_x: f64,
    max_gauge_dev: f64,
    max_pos_dev: f64,
}

fn trajectory_equivalence(rng: &mut ChaCha8Rng, tol_ode: f64) -> Result<EquivalenceOutcome> {
    let mut out = EquivalenceOutcome { max_im_x: 0.0, max_gauge_dev: 0.0, max_pos_dev: 0.0 };
    let opts = IntegrateOptions { n_samples: 200, max_steps: 400_000 };
    for &alpha in &[-1.0, 1.0] {
        for &bt in &[0.5, 2.0] {
            let params = Params::new(alpha, bt, 1.0)?;
            for s in equivalence_states(rng, alpha, bt, 5) {
                let real = integrate(Variant::HiggsReal, &params, &s, 20.0, tol_ode, &opts)?;
                let seed = gauge_shift(&params, &s, GaugeDirection::ToComplex)?;
                let cplx =
                    integrate(Variant::ZernikeComplex, &params, &seed, 20.0, tol_ode, &opts)?;
                if !real.is_complete() || !cplx.is_complete() {
                    out.max_pos_dev = f64::INFINITY;
                    continue;
                }
                for (t, state) in &cplx.samples {
                    out.max_im_x = out.max_im_x.max(state.max_im_x());
                    let twin = real.state_at(*t);
                    let profile = gauge_profile(&params, twin.x_re())?;
                    for (i, &prof) in profile.iter().enumerate() {
                        out.max_pos_dev =
                            out.max_pos_dev.max((state.x[i].re - twin.x[i].re).abs());
                        out.max_gauge_dev =
                            out.max_gauge_dev.max((state.p[i].im - prof).abs());
                    }
                }
            }
        }
    }
    Ok(out)
}

fn energy_bridge_deviation(rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut max_dev: f64 = 0.0;
    for &(alpha, bt) in &[(-1.0, 0.5), (-1.0, 2.0), (1.0, 0.5), (1.0, 2.0)] {
        let params = Params::new(alpha, bt, 1.0)?;
        for s in equivalence_states(rng, alpha, bt, 8) {
            let e_h = classical::hamiltonian(Variant::HiggsReal, &params, &s)?;
            let shifted = gauge_shift(&params, &s, GaugeDirection::ToComplex)?;
            let e_z = classical::hamiltonian(Variant::ZernikeComplex, &params, &shifted)?;
            max_dev = max_dev.max((e_z - e_h).norm() / (1.0 + e_h.norm()));
        }
    }
    Ok(max_dev)
}

fn conservation_drift(rng: &mut ChaCha8Rng, tol_ode: f64) -> Result<f64> {
    let mut max_drift: f64 = 0.0;
    for &(alpha, bt) in &[(-1.0, 0.5), (-1.0, 2.0), (1.0, 2.0)] {
        let params = Params::new(alpha, bt, 1.0)?;
        let t_char = std::f64::consts::PI / (bt / 2.0);
        let t_end = 50.0 * t_char;
        for s in equivalence_states(rng, alpha, bt, 3) {
            let traj = integrate(
                Variant::HiggsReal,
                &params,
                &s,
                t_end,
                tol_ode,
                &IntegrateOptions { n_samples: 500, max_steps: 2_000_000 },
            )?;
            if !traj.is_complete() {
                return Ok(f64::INFINITY);
            }
            let first = traj.invariant_samples[0];
            for inv in &traj.invariant_samples {
                for (a, b) in [
                    (first.e, inv.e),
                    (first.l, inv.l),
                    (first.s11, inv.s11),
                    (first.s12, inv.s12),
                    (first.s22, inv.s22),
                ] {
                    max_drift = max_drift.max((a - b).abs() / (1.0 + a.abs()));
                }
            }
        }
    }
    Ok(max_drift)
}

struct ClosureOutcome {
    closed: usize,
    total: usize,
}

fn closure_suite(tol_ode: f64) -> Result<ClosureOutcome> {
    // 12 bounded orbits on the sphere (alpha = -1): 6 initial conditions at
    // each of two oscillator strengths.
    let states = [
        ([0.20, 0.00], [0.00, 0.30]),
        ([0.40, 0.10], [0.00, 0.30]),
        ([0.10, 0.30], [0.00, 0.30]),
        ([0.20, 0.00], [0.20, -0.10]),
        ([0.40, 0.10], [0.20, -0.10]),
        ([0.10, 0.30], [0.20, -0.10]),
    ];
    let mut outcome = ClosureOutcome { closed: 0, total: 0 };
    for &bt in &[1.0, 2.0] {
        let params = Params::new(-1.0, bt, 1.0)?;
        let t_end = 60.0 / (bt / 2.0);
        for &(x, p) in &states {
            outcome.total += 1;
            let traj = integrate(
                Variant::HiggsReal,
                &params,
                &PhaseState::real(x, p),
                t_end,
                tol_ode,
                &IntegrateOptions { n_samples: 4000, max_steps: 2_000_000 },
            )?;
            if traj.is_complete() && closure_detect(&traj, 1e-6).is_some() {
                outcome.closed += 1;
            }
        }
    }
    Ok(outcome)
}

fn flat_period_deviation(tol_ode: f64) -> Result<f64> {
    let omega = 1.0;
    let params = Params::new(0.0, 2.0 * omega, 1.0)?;
    let s = PhaseState::real([0.3, 0.0], [0.0, 0.25]);
    let traj = integrate(
        Variant::HiggsReal,
        &params,
        &s,
        10.0,
        tol_ode,
        &IntegrateOptions { n_samples: 2000, max_steps: 200_000 },
    )?;
    match closure_detect(&traj, 1e-6) {
        Some(t_star) => Ok((t_star - std::f64::consts::PI / omega).abs()),
        None => Ok(f64::INFINITY),
    }
}

struct WeylSlopes {
    fixed_beta_tilde: f64,
    fixed_beta: f64,
}

fn weyl_contraction_slopes(rng: &mut ChaCha8Rng) -> Result<WeylSlopes> {
    let hbars = [1e-1, 1e-2, 1e-3, 1e-4];
    let alpha = -1.0;
    let bt = 0.9;
    let beta_fixed = -0.7;
    let mut worst1 = 1.0f64;
    let mut worst2 = 1.0f64;
    for _ in 0..5 {
        let s = PhaseState::real(
            [rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)],
            [rng.gen_range(0.1..0.6), rng.gen_range(-0.6..-0.1)],
        );
        let mut d1 = Vec::new();
        let mut d2 = Vec::new();
        for &h in &hbars {
            let p1 = Params::new(alpha, bt / h, h)?;
            let hz = classical::hamiltonian(Variant::ZernikeComplex, &p1, &s)?;
            let hw = classical::hamiltonian(Variant::Weyl, &p1, &s)?;
            d1.push((hw - hz).norm());

            let p2 = Params::new(alpha, beta_fixed, h)?;
            let hw = classical::hamiltonian(Variant::Weyl, &p2, &s)?;
            let rp = s.x[0].re * s.p[0].re + s.x[1].re * s.p[1].re;
            let kinetic = s.p[0].re * s.p[0].re + s.p[1].re * s.p[1].re + alpha * rp * rp;
            d2.push((hw - Complex64::new(kinetic, 0.0)).norm());
        }
        let s1 = log_log_slope(&hbars, &d1);
        let s2 = log_log_slope(&hbars, &d2);
        if (s1 - 1.0).abs() > (worst1 - 1.0).abs() {
            worst1 = s1;
        }
        if (s2 - 1.0).abs() > (worst2 - 1.0).abs() {
            worst2 = s2;
        }
    }
    Ok(WeylSlopes { fixed_beta_tilde: worst1, fixed_beta: worst2 })
}

// ---------------------------------------------------------------------------
// Suite driver
// ---------------------------------------------------------------------------

pub fn run(config: &VerifyConfig) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut checks = Vec::new();
    let mut findings = Vec::new();

    let primary = Params::new(config.alpha, config.beta, config.hbar)?;
    // Parameter sets exercised beyond the primary point: the classical
    // aberration point (Hermitian under the flat measure), a generic
    // pseudo-Hermitian point, and a beta = 2 alpha point away from it.
    let zernike_pt = Params::new(-1.0, -2.0, 1.0)?;
    let generic_pt = Params::new(-1.0, -0.7, 1.0)?;
    let free_pt = Params::new(-0.5, -1.0, 1.0)?;
    let pseudo_pt = Params::new(1.0, 0.5, 1.0)?;

    // --- geometry ---
    checks.push(check(
        "geometry/metric-pullback",
        metric_pullback_deviation(&mut rng)?,
        1e-8,
        "embedding pullback vs closed-form metric, 200 points, alpha = +-1".into(),
    ));
    checks.push(check(
        "geometry/gauge-gradient",
        gauge_gradient_deviation(&mut rng)?,
        1e-8,
        "finite-difference grad phi vs i beta_eff r / (2u)".into(),
    ));
    checks.push(check(
        "geometry/laplace-beltrami",
        laplace_beltrami_coordinate_deviation(&mut rng)?,
        1e-6,
        "divergence-form Laplacian vs polynomial formula".into(),
    ));
    checks.push(check(
        "geometry/weight-coincidence",
        weight_coincidence_deviation(&mut rng)?,
        0.0,
        "transform weight equals invariant weight at beta = 2 alpha".into(),
    ));

    // --- spectrum ---
    checks.push(check(
        "spectrum/dense-oracle",
        dense_spectrum_oracle_deviation(&generic_pt, 12)?,
        1e-9,
        "dense monomial-basis diagonalization vs -n(alpha n + beta), degree <= 12".into(),
    ));
    checks.push(check(
        "spectrum/zernike-orthogonality",
        zernike_orthogonality_deviation()?,
        1e-10,
        "eigenfunction orthogonality under the flat weight at (-1, -2)".into(),
    ));
    let sweep = reality_sweep(8)?;
    checks.push(check(
        "spectrum/reality-sweep",
        sweep.max_imag,
        1e-8,
        format!(
            "max |Im lambda| over a 20x20 grid in [-2,-0.25]x[-3,1], degree <= 8; \
             {} cells, {} resonant cells skipped {:?}",
            sweep.cells,
            sweep.skipped.len(),
            sweep.skipped
        ),
    ));

    // --- operator identities ---
    let mut sim_dev: f64 = 0.0;
    let mut sim_dev_wrong_sign = f64::INFINITY;
    for params in [&zernike_pt, &generic_pt, &pseudo_pt] {
        let lim = if params.alpha < 0.0 { 0.8 } else { 1.4 };
        let points = interior_points(&mut rng, 50, lim);
        let polys: Vec<_> = (0..4).map(|_| random_poly(&mut rng, 4)).collect();
        sim_dev = sim_dev.max(similarity_check(params, OperatorTag::HiggsPq, &polys, &points)?);
        sim_dev_wrong_sign = sim_dev_wrong_sign.min(similarity_check_with_exponent_sign(
            params,
            OperatorTag::HiggsPq,
            &polys,
            &points,
            -1.0,
        )?);
    }
    checks.push(check(
        "operator/similarity-pointwise",
        sim_dev,
        1e-8,
        "W (H_Z f) = H_higgs (W f) at (-1,-2), (-1,-0.7), (+1,0.5)".into(),
    ));
    findings.push(Finding {
        name: "similarity-factor sign".into(),
        details: "the verified similarity factor is (1+alpha r^2)^(+(beta-alpha)/(4 alpha)); \
                  the sign-flipped exponent fails the pointwise identity"
            .into(),
        values: vec![
            ("deviation_with_verified_sign".into(), sim_dev),
            ("deviation_with_flipped_sign".into(), sim_dev_wrong_sign),
        ],
    });

    let mut spectra_dev: f64 = 0.0;
    for params in [&zernike_pt, &generic_pt] {
        let mz = assemble(params, OperatorTag::Zernike, &BasisSpec::full(10), 0.0)?;
        let mh = assemble(params, OperatorTag::HiggsPq, &BasisSpec::full(10), -0.5)?;
        let ez = eigen(&mz)?;
        let eh = eigen(&mh)?;
        for (a, b) in ez.eigenvalues.iter().zip(&eh.eigenvalues) {
            spectra_dev = spectra_dev.max((a - b).norm());
        }
    }
    checks.push(check(
        "operator/similarity-spectra",
        spectra_dev,
        1e-7,
        "Zernike vs Higgs matrix spectra, degree <= 10, alpha < 0".into(),
    ));

    let mut free_defect: f64 = 0.0;
    let mut free_pointwise: f64 = 0.0;
    for params in [&zernike_pt, &free_pt] {
        let m = assemble(params, OperatorTag::FreeParticle, &BasisSpec::full(8), -0.5)?;
        free_defect = free_defect.max(symmetry_defect(&m.entries));
        let points = interior_points(&mut rng, 30, 0.8 / (-params.alpha).sqrt());
        let polys: Vec<_> = (0..3).map(|_| random_poly(&mut rng, 4)).collect();
        free_pointwise = free_pointwise
            .max(similarity_check(params, OperatorTag::FreeParticle, &polys, &points)?);
    }
    checks.push(check(
        "operator/free-particle-hermitian",
        free_defect,
        1e-10,
        "symmetry defect of the beta = 2 alpha Higgs matrix under sqrt(g)".into(),
    ));
    checks.push(check(
        "operator/free-particle-reduction",
        free_pointwise,
        1e-8,
        "gauge factor reduces H_Z to the pure kinetic operator at beta = 2 alpha".into(),
    ));

    let zernike_flat = assemble(
        &zernike_pt,
        OperatorTag::Zernike,
        &BasisSpec { max_degree: 8, m_sector: None, gauge: BasisGauge::Raw },
        0.0,
    )?;
    checks.push(check(
        "operator/zernike-point-hermitian",
        symmetry_defect(&zernike_flat.entries),
        1e-10,
        "flat-measure symmetry defect at the classical point (-1, -2)".into(),
    ));

    let mut form_dev: f64 = 0.0;
    for params in [&zernike_pt, &generic_pt, &pseudo_pt] {
        let lim = if params.alpha < 0.0 { 0.8 } else { 1.3 };
        let points = interior_points(&mut rng, 50, lim);
        let polys: Vec<_> = (0..4).map(|_| random_poly(&mut rng, 4)).collect();
        form_dev = form_dev.max(operator_form_consistency(params, &polys, &points)?);
    }
    checks.push(check(
        "operator/form-consistency",
        form_dev,
        1e-8,
        "momentum form vs Laplace-Beltrami form of the Higgs Hamiltonian".into(),
    ));
    findings.push(Finding {
        name: "operator-form consistency".into(),
        details: "the two operator forms (potential (bt-2ha)^2/4 with shift hbar(bt-2ha) vs \
                  (bt-ha)(bt-3ha)/4 with shift hbar(bt-ha)) agree as operators; measured at \
                  (-1,-2), (-1,-0.7), (+1,0.5), hbar = 1, degree <= 4 polynomials, 50 points \
                  per parameter set"
            .into(),
        values: vec![("max_relative_deviation".into(), form_dev)],
    });

    // --- pseudo-Hermiticity weight search ---
    let search_pt = if primary.alpha < 0.0 && primary.beta / primary.alpha > 0.0 {
        primary
    } else {
        generic_pt
    };
    let outcome = hermiticity_weight_search(&search_pt, 8)?;
    let winner_dev =
        outcome.candidates.iter().filter_map(|c| c.defect).fold(f64::INFINITY, f64::min);
    checks.push(check(
        "operator/weight-search",
        if outcome.winner.is_some() { winner_dev } else { f64::INFINITY },
        1e-8,
        format!(
            "pseudo-Hermiticity weight search at (alpha, beta) = ({}, {})",
            search_pt.alpha, search_pt.beta
        ),
    ));
    let mut values: Vec<(String, f64)> = outcome
        .candidates
        .iter()
        .map(|c| (format!("defect_at_exponent_{:.6}", c.exponent), c.defect.unwrap_or(f64::NAN)))
        .collect();
    if let Some(w) = outcome.winner {
        values.push(("winning_exponent".into(), w));
    }
    findings.push(Finding {
        name: "measure exponent".into(),
        details: format!(
            "of the two transform-measure conventions, the weight \
             (1+alpha r^2)^((beta-alpha)/(2 alpha) - 1/2) symmetrizes the Zernike operator \
             (checked at alpha={}, beta={}); the exponent (alpha-beta)/(2 alpha) is the \
             transformed-space measure: it equals the squared similarity factor and reduces \
             to the invariant weight at beta = 2 alpha",
            search_pt.alpha, search_pt.beta
        ),
        values,
    });

    // Raw polynomial basis under sqrt(g): entries are non-convergent rim
    // integrals but the defect cancels at fixed resolution.
    let raw_basis = BasisSpec { max_degree: 6, m_sector: None, gauge: BasisGauge::Raw };
    let raw_a = assemble_unvalidated(&generic_pt, OperatorTag::HiggsPq, &raw_basis, -0.5)?;
    let raw_converges = assemble(&generic_pt, OperatorTag::HiggsPq, &raw_basis, -0.5).is_ok();
    findings.push(Finding {
        name: "raw basis under sqrt(g)".into(),
        details: format!(
            "Higgs-form matrix entries in the raw polynomial basis under the invariant weight \
             do not converge under node doubling (rational potential terms are outside the \
             form domain at the rim); node-doubling validation {}. The symmetry defect at \
             fixed resolution nevertheless cancels exactly because the offending terms are \
             multiplication operators. The gauge-adapted basis resolves both.",
            if raw_converges { "unexpectedly passed" } else { "fails as expected" }
        ),
        values: vec![("fixed_resolution_defect".into(), symmetry_defect(&raw_a.entries))],
    });

    // --- classical ---
    checks.push(check(
        "classical/energy-bridge",
        energy_bridge_deviation(&mut rng)?,
        1e-12,
        "H_zernike(gauge-shifted state) = H_higgs(state)".into(),
    ));
    let eq = trajectory_equivalence(&mut rng, config.tol_ode)?;
    checks.push(check(
        "classical/equivalence-im-x",
        eq.max_im_x,
        1e-8,
        "Im x(t) of the complexified flow seeded from real Higgs states".into(),
    ));
    checks.push(check(
        "classical/equivalence-positions",
        eq.max_pos_dev,
        1e-7,
        "paired real/complex positions over T = 20 (20 initial states)".into(),
    ));
    checks.push(check(
        "classical/equivalence-gauge-profile",
        eq.max_gauge_dev,
        1e-7,
        "Im p(t) tracks beta_tilde x / (2 (1 + alpha r^2))".into(),
    ));
    checks.push(check(
        "classical/conservation",
        conservation_drift(&mut rng, config.tol_ode)?,
        1e-7,
        "E, L, Fradkin tensor drift over 50 characteristic times".into(),
    ));
    let closure = closure_suite(config.tol_ode)?;
    checks.push(check(
        "classical/closure",
        (closure.total - closure.closed) as f64,
        0.0,
        format!("{}/{} bounded sphere orbits closed at tol 1e-6", closure.closed, closure.total),
    ));
    checks.push(check(
        "classical/flat-oscillator-period",
        flat_period_deviation(config.tol_ode)?,
        1e-5,
        "closure period of the flat isotropic oscillator vs pi/omega".into(),
    ));
    let slopes = weyl_contraction_slopes(&mut rng)?;
    checks.push(check(
        "classical/weyl-contraction-fixed-bt",
        (slopes.fixed_beta_tilde - 1.0).abs(),
        0.1,
        format!("|H_weyl - H_zernike| ~ hbar, log-log slope {:.4}", slopes.fixed_beta_tilde),
    ));
    checks.push(check(
        "classical/weyl-contraction-fixed-beta",
        (slopes.fixed_beta - 1.0).abs(),
        0.1,
        format!("|H_weyl - kinetic| ~ hbar, log-log slope {:.4}", slopes.fixed_beta),
    ));

    let all_passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport { config: config.clone(), checks, findings, all_passed })
}
