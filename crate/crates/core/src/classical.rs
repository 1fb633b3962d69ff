//! Classical dynamics: the complex Zernike Hamiltonian, the real Higgs
//! oscillator it is gauge-equivalent to, the Weyl-ordered variant, an
//! adaptive Dormand-Prince 5(4) integrator with dense output, the
//! imaginary-gauge shift between the two pictures, conserved quantities
//! (energy, angular momentum, Fradkin tensor), and closed-orbit detection.
//!
//! The flow is the holomorphic extension of Hamilton's equations: positions
//! and momenta are complex 2-vectors throughout. Real Higgs states stay real
//! under the flow; for complexified runs the imaginary part of the position
//! is a monitored error channel, not a constraint.

use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::Params;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Variant {
    /// `H = p^2 + alpha (r.p)^2 - i beta_tilde (r.p)`; flat limit allowed.
    ZernikeComplex,
    /// `H = p^2 + alpha (r.p)^2 + beta_tilde^2 r^2 / (4 (1 + alpha r^2))`,
    /// real states only.
    HiggsReal,
    /// Weyl-ordered variant
    /// `H = p^2 + alpha (r.p)^2 + i hbar (2 alpha - beta)(r.p) + hbar^2 (beta - alpha)`.
    Weyl,
}

/// Planar position and momentum, both complexified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseState {
    pub x: [Complex64; 2],
    pub p: [Complex64; 2],
}

impl PhaseState {
    pub fn real(x: [f64; 2], p: [f64; 2]) -> Self {
        Self {
            x: [Complex64::new(x[0], 0.0), Complex64::new(x[1], 0.0)],
            p: [Complex64::new(p[0], 0.0), Complex64::new(p[1], 0.0)],
        }
    }

    pub fn x_re(&self) -> [f64; 2] {
        [self.x[0].re, self.x[1].re]
    }

    pub fn p_re(&self) -> [f64; 2] {
        [self.p[0].re, self.p[1].re]
    }

    /// Largest imaginary part across position components.
    pub fn max_im_x(&self) -> f64 {
        self.x[0].im.abs().max(self.x[1].im.abs())
    }

    pub fn max_im(&self) -> f64 {
        self.max_im_x().max(self.p[0].im.abs()).max(self.p[1].im.abs())
    }

    fn is_real(&self, tol: f64) -> bool {
        self.max_im() <= tol
    }
}

fn dot(a: &[Complex64; 2], b: &[Complex64; 2]) -> Complex64 {
    a[0] * b[0] + a[1] * b[1]
}

fn require_higgs_state(params: &Params, state: &PhaseState) -> Result<f64> {
    if !state.is_real(1e-12) {
        return Err(Error::Domain(format!(
            "higgs_real requires a real phase state (max |Im| = {:.3e})",
            state.max_im()
        )));
    }
    let x = state.x_re();
    let u = params.u_at(x[0] * x[0] + x[1] * x[1]);
    if u <= 0.0 {
        return Err(Error::Domain(format!(
            "position {x:?} outside the metric domain (1 + alpha r^2 = {u})"
        )));
    }
    Ok(u)
}

/// Value of the chosen Hamiltonian. The flat limit alpha = 0 is permitted for
/// every variant (for `HiggsReal` the potential degenerates to the flat
/// isotropic oscillator `beta_tilde^2 r^2 / 4`).
pub fn hamiltonian(variant: Variant, params: &Params, state: &PhaseState) -> Result<Complex64> {
    let rp = dot(&state.x, &state.p);
    let p_sq = dot(&state.p, &state.p);
    let alpha = params.alpha;
    let bt = params.beta_tilde();
    match variant {
        Variant::ZernikeComplex => Ok(p_sq + rp * rp * alpha - Complex64::new(0.0, bt) * rp),
        Variant::HiggsReal => {
            let u = require_higgs_state(params, state)?;
            let x = state.x_re();
            let r_sq = x[0] * x[0] + x[1] * x[1];
            Ok(p_sq + rp * rp * alpha + bt * bt * r_sq / (4.0 * u))
        }
        Variant::Weyl => {
            let h = params.hbar;
            Ok(p_sq
                + rp * rp * alpha
                + Complex64::new(0.0, h * (2.0 * alpha - params.beta)) * rp
                + h * h * (params.beta - alpha))
        }
    }
}

/// Canonical equations `xdot_i = dH/dp_i`, `pdot_i = -dH/dx_i`, holomorphic
/// in the complexified variables.
pub fn flow_derivative(
    variant: Variant,
    params: &Params,
    state: &PhaseState,
) -> Result<([Complex64; 2], [Complex64; 2])> {
    let rp = dot(&state.x, &state.p);
    let alpha = params.alpha;
    let bt = params.beta_tilde();
    let mut x_dot = [Complex64::default(); 2];
    let mut p_dot = [Complex64::default(); 2];
    match variant {
        Variant::ZernikeComplex => {
            let ib = Complex64::new(0.0, bt);
            for i in 0..2 {
                x_dot[i] = 2.0 * state.p[i] + 2.0 * alpha * rp * state.x[i] - ib * state.x[i];
                p_dot[i] = -2.0 * alpha * rp * state.p[i] + ib * state.p[i];
            }
        }
        Variant::HiggsReal => {
            let u = require_higgs_state(params, state)?;
            let omega_sq = bt * bt / 4.0;
            for i in 0..2 {
                x_dot[i] = 2.0 * state.p[i] + 2.0 * alpha * rp * state.x[i];
                p_dot[i] = -2.0 * alpha * rp * state.p[i] - 2.0 * omega_sq * state.x[i] / (u * u);
            }
        }
        Variant::Weyl => {
            let ig = Complex64::new(0.0, params.hbar * (2.0 * alpha - params.beta));
            for i in 0..2 {
                x_dot[i] = 2.0 * state.p[i] + 2.0 * alpha * rp * state.x[i] + ig * state.x[i];
                p_dot[i] = -2.0 * alpha * rp * state.p[i] - ig * state.p[i];
            }
        }
    }
    Ok((x_dot, p_dot))
}

// ---------------------------------------------------------------------------
// Gauge shift between the Higgs and complex-Zernike pictures
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaugeDirection {
    /// Real Higgs momentum -> complex Zernike momentum:
    /// `p -> p + i beta_tilde x / (2 (1 + alpha r^2))`.
    ToComplex,
    /// Inverse shift; requires `Im p` to match the gauge profile.
    ToReal,
}

/// Imaginary gauge profile `beta_tilde x / (2 (1 + alpha r^2))` at a real
/// position.
pub fn gauge_profile(params: &Params, x: [f64; 2]) -> Result<[f64; 2]> {
    let u = params.u_at(x[0] * x[0] + x[1] * x[1]);
    if u <= 0.0 {
        return Err(Error::Domain(format!("position {x:?} outside the metric domain")));
    }
    let bt = params.beta_tilde();
    Ok([bt * x[0] / (2.0 * u), bt * x[1] / (2.0 * u)])
}

/// Shifts the momentum by the imaginary gauge profile. Round-trips are exact.
pub fn gauge_shift(
    params: &Params,
    state: &PhaseState,
    direction: GaugeDirection,
) -> Result<PhaseState> {
    if state.max_im_x() > 1e-9 {
        return Err(Error::Domain(format!(
            "gauge shift is defined at real positions (max |Im x| = {:.3e})",
            state.max_im_x()
        )));
    }
    let profile = gauge_profile(params, state.x_re())?;
    let mut out = *state;
    match direction {
        GaugeDirection::ToComplex => {
            for (p, &prof) in out.p.iter_mut().zip(&profile) {
                *p += Complex64::new(0.0, prof);
            }
        }
        GaugeDirection::ToReal => {
            let deviation =
                (state.p[0].im - profile[0]).abs().max((state.p[1].im - profile[1]).abs());
            if deviation > 1e-6 {
                return Err(Error::GaugeMismatch { deviation });
            }
            for (p, &prof) in out.p.iter_mut().zip(&profile) {
                *p -= Complex64::new(0.0, prof);
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Conserved quantities
// ---------------------------------------------------------------------------

/// Energy, angular momentum and the curved Fradkin tensor of the real Higgs
/// flow: `S_ij = pi_i pi_j + (omega^2 - alpha E) x_i x_j` with
/// `pi_i = p_i + alpha (r.p) x_i` (half the velocity).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Invariants {
    pub e: f64,
    pub l: f64,
    pub s11: f64,
    pub s12: f64,
    pub s22: f64,
}

pub fn invariants(params: &Params, state: &PhaseState) -> Result<Invariants> {
    require_higgs_state(params, state)?;
    Ok(invariants_unchecked(params, state, Variant::HiggsReal))
}

/// Invariant samples for trajectory monitoring; for complex variants the real
/// parts of the same expressions are recorded.
fn invariants_unchecked(params: &Params, state: &PhaseState, variant: Variant) -> Invariants {
    let e = hamiltonian(variant, params, state).map(|v| v.re).unwrap_or(f64::NAN);
    let x = state.x_re();
    let p = state.p_re();
    let rp = x[0] * p[0] + x[1] * p[1];
    let l = x[0] * p[1] - x[1] * p[0];
    let alpha = params.alpha;
    let bt = params.beta_tilde();
    let omega_sq = bt * bt / 4.0;
    let pi = [p[0] + alpha * rp * x[0], p[1] + alpha * rp * x[1]];
    let c = omega_sq - alpha * e;
    Invariants {
        e,
        l,
        s11: pi[0] * pi[0] + c * x[0] * x[0],
        s12: pi[0] * pi[1] + c * x[0] * x[1],
        s22: pi[1] * pi[1] + c * x[1] * x[1],
    }
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4) with dense output
// ---------------------------------------------------------------------------

const DP_A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const DP_E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];
const DP_D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

type StateVec = [Complex64; 4];

fn pack(state: &PhaseState) -> StateVec {
    [state.x[0], state.x[1], state.p[0], state.p[1]]
}

fn unpack(y: &StateVec) -> PhaseState {
    PhaseState { x: [y[0], y[1]], p: [y[2], y[3]] }
}

fn deriv(variant: Variant, params: &Params, y: &StateVec) -> Result<StateVec> {
    let (x_dot, p_dot) = flow_derivative(variant, params, &unpack(y))?;
    Ok([x_dot[0], x_dot[1], p_dot[0], p_dot[1]])
}

/// One accepted integration step with everything needed for dense output.
#[derive(Debug, Clone)]
struct DenseSegment {
    t0: f64,
    h: f64,
    cont: [StateVec; 5],
}

impl DenseSegment {
    /// Quartic interpolant of the 5(4) pair:
    /// `y(t0 + th) = c1 + th (c2 + (1-th)(c3 + th (c4 + (1-th) c5)))`.
    fn eval(&self, t: f64) -> StateVec {
        let theta = ((t - self.t0) / self.h).clamp(0.0, 1.0);
        let mut out = [Complex64::default(); 4];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.cont[0][i]
                + theta
                    * (self.cont[1][i]
                        + (1.0 - theta)
                            * (self.cont[2][i]
                                + theta * (self.cont[3][i] + (1.0 - theta) * self.cont[4][i])));
        }
        out
    }
}

/// Why an integration run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Termination {
    Completed,
    /// |x| approached the coordinate rim r0 (alpha < 0, real Higgs flow).
    Boundary { t: f64, radius: f64 },
    /// Step-size control collapsed (stiffness).
    StepSizeCollapse { t: f64, h: f64 },
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct IntegratorStats {
    pub steps: usize,
    pub rejected_steps: usize,
    /// max over samples of |E(t) - E(0)| / (1 + |E(0)|).
    pub max_energy_drift: f64,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub variant: Variant,
    pub params: Params,
    pub samples: Vec<(f64, PhaseState)>,
    pub invariant_samples: Vec<Invariants>,
    pub stats: IntegratorStats,
    pub termination: Termination,
    segments: Vec<DenseSegment>,
}

impl Trajectory {
    /// Dense-output evaluation anywhere inside the integrated span.
    pub fn state_at(&self, t: f64) -> PhaseState {
        if self.segments.is_empty() || t <= self.segments[0].t0 {
            return self.samples[0].1;
        }
        let idx =
            self.segments.partition_point(|seg| seg.t0 + seg.h < t).min(self.segments.len() - 1);
        unpack(&self.segments[idx].eval(t))
    }

    pub fn t_end(&self) -> f64 {
        self.samples.last().map(|s| s.0).unwrap_or(0.0)
    }

    pub fn is_complete(&self) -> bool {
        matches!(self.termination, Termination::Completed)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct IntegrateOptions {
    /// Number of equally spaced output samples (in addition to t = 0).
    pub n_samples: usize,
    pub max_steps: usize,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        Self { n_samples: 400, max_steps: 200_000 }
    }
}

fn error_norm(err: &StateVec, y0: &StateVec, y1: &StateVec, tol: f64) -> f64 {
    let mut acc = 0.0;
    for i in 0..4 {
        let sc = tol + tol * y0[i].norm().max(y1[i].norm());
        let e = err[i].norm() / sc;
        acc += e * e;
    }
    (acc / 4.0).sqrt()
}

/// Integrates the chosen flow from `state0` over [0, t_end] with adaptive
/// Dormand-Prince 5(4) steps, per-step error `<= tol`, dense output, and
/// invariant monitoring. The real Higgs flow halts with a `Boundary`
/// termination when |x| comes within `10 tol` of the rim; step-size collapse
/// is reported as `StepSizeCollapse`. Both leave the partial trajectory
/// available.
pub fn integrate(
    variant: Variant,
    params: &Params,
    state0: &PhaseState,
    t_end: f64,
    tol: f64,
    opts: &IntegrateOptions,
) -> Result<Trajectory> {
    if !(1e-13..=1e-4).contains(&tol) {
        return Err(Error::Domain(format!("tol must lie in [1e-13, 1e-4], got {tol}")));
    }
    if t_end < 0.0 || !t_end.is_finite() {
        return Err(Error::Domain(format!("t_end must be finite and nonnegative, got {t_end}")));
    }
    // Validate the initial state for the variant.
    hamiltonian(variant, params, state0)?;

    let mut segments: Vec<DenseSegment> = Vec::new();
    let mut steps = 0usize;
    let mut rejected = 0usize;
    let mut termination = Termination::Completed;

    let boundary_guard = |y: &StateVec| -> Option<f64> {
        if variant != Variant::HiggsReal || params.alpha >= 0.0 {
            return None;
        }
        let r0 = 1.0 / (-params.alpha).sqrt();
        let radius = (y[0].re * y[0].re + y[1].re * y[1].re).sqrt();
        (r0 - radius <= 10.0 * tol).then_some(radius)
    };

    if t_end > 0.0 {
        let mut t = 0.0;
        let mut y = pack(state0);
        let mut k1 = deriv(variant, params, &y)?;
        // Conservative starting step from the first derivative scale.
        let y_scale: f64 = 1.0 + y.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let f_scale: f64 = 1e-6 + k1.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut h = (0.01 * y_scale / f_scale).min(t_end);
        let min_step = 1e-14 * t_end.max(1.0);

        'outer: while t < t_end {
            if steps + rejected >= opts.max_steps {
                return Err(Error::Precision(format!(
                    "integration exceeded {} steps at t = {t:.6e}",
                    opts.max_steps
                )));
            }
            h = h.min(t_end - t);
            let mut k = [[Complex64::default(); 4]; 7];
            k[0] = k1;
            for stage in 0..6 {
                let mut ys = y;
                for (j, kj) in k.iter().enumerate().take(stage + 1) {
                    let a = DP_A[stage][j];
                    if a != 0.0 {
                        for i in 0..4 {
                            ys[i] += kj[i] * (a * h);
                        }
                    }
                }
                match deriv(variant, params, &ys) {
                    Ok(d) => k[stage + 1] = d,
                    Err(Error::Domain(_)) => {
                        // A stage left the domain: retry with a smaller step.
                        h *= 0.25;
                        rejected += 1;
                        if h < min_step {
                            termination = Termination::StepSizeCollapse { t, h };
                            break 'outer;
                        }
                        continue 'outer;
                    }
                    Err(e) => return Err(e),
                }
            }
            // The 5th-order solution reuses stage row 6 of A.
            let mut y1 = y;
            for (j, kj) in k.iter().enumerate().take(6) {
                let a = DP_A[5][j];
                if a != 0.0 {
                    for i in 0..4 {
                        y1[i] += kj[i] * (a * h);
                    }
                }
            }
            let mut err = [Complex64::default(); 4];
            for (j, kj) in k.iter().enumerate() {
                if DP_E[j] != 0.0 {
                    for i in 0..4 {
                        err[i] += kj[i] * (DP_E[j] * h);
                    }
                }
            }
            let err_norm = error_norm(&err, &y, &y1, tol);
            if err_norm <= 1.0 {
                // Accept; store the dense-output interpolant.
                let k7 = k[6];
                let mut cont = [[Complex64::default(); 4]; 5];
                for i in 0..4 {
                    let ydiff = y1[i] - y[i];
                    let bspl = k[0][i] * h - ydiff;
                    cont[0][i] = y[i];
                    cont[1][i] = ydiff;
                    cont[2][i] = bspl;
                    cont[3][i] = ydiff - k7[i] * h - bspl;
                    let mut c4 = Complex64::default();
                    for (j, kj) in k.iter().enumerate() {
                        if DP_D[j] != 0.0 {
                            c4 += kj[i] * DP_D[j];
                        }
                    }
                    cont[4][i] = c4 * h;
                }
                segments.push(DenseSegment { t0: t, h, cont });
                t += h;
                y = y1;
                k1 = k7;
                steps += 1;
                if let Some(radius) = boundary_guard(&y) {
                    termination = Termination::Boundary { t, radius };
                    break;
                }
                let factor = if err_norm == 0.0 { 5.0 } else { 0.9 * err_norm.powf(-0.2) };
                h *= factor.clamp(0.2, 5.0);
            } else {
                rejected += 1;
                h *= (0.9 * err_norm.powf(-0.2)).clamp(0.1, 0.9);
                if h < min_step {
                    termination = Termination::StepSizeCollapse { t, h };
                    break;
                }
            }
        }
    }

    // Sample at a uniform stride over the integrated span via dense output.
    let reached = segments.last().map(|s| s.t0 + s.h).unwrap_or(0.0);
    let mut samples = Vec::with_capacity(opts.n_samples + 1);
    samples.push((0.0, *state0));
    if reached > 0.0 && opts.n_samples > 0 {
        let mut seg_idx = 0usize;
        for q in 1..=opts.n_samples {
            let t = reached * q as f64 / opts.n_samples as f64;
            while seg_idx + 1 < segments.len() && segments[seg_idx].t0 + segments[seg_idx].h < t {
                seg_idx += 1;
            }
            samples.push((t, unpack(&segments[seg_idx].eval(t))));
        }
    }

    let invariant_samples: Vec<Invariants> =
        samples.iter().map(|(_, s)| invariants_unchecked(params, s, variant)).collect();
    let e0 = hamiltonian(variant, params, state0)?;
    let max_energy_drift = samples
        .iter()
        .map(|(_, s)| {
            hamiltonian(variant, params, s)
                .map(|e| (e - e0).norm() / (1.0 + e0.norm()))
                .unwrap_or(f64::INFINITY)
        })
        .fold(0.0, f64::max);

    Ok(Trajectory {
        variant,
        params: *params,
        samples,
        invariant_samples,
        stats: IntegratorStats { steps, rejected_steps: rejected, max_energy_drift },
        termination,
        segments,
    })
}

// ---------------------------------------------------------------------------
// Closed-orbit detection
// ---------------------------------------------------------------------------

/// Phase-space distance with momenta scaled by `max(|p(0)|, 1)`.
fn phase_distance(a: &PhaseState, b: &PhaseState, p_scale: f64) -> f64 {
    let mut acc = 0.0;
    for i in 0..2 {
        acc += (a.x[i] - b.x[i]).norm_sqr();
        acc += (a.p[i] - b.p[i]).norm_sqr() / (p_scale * p_scale);
    }
    acc.sqrt()
}

/// Smallest `t* > 0` with phase distance to the initial state below `tol`,
/// located on trajectory samples and refined on the dense output by golden
/// section. Returns `None` if the orbit does not return within the span
/// (or for non-Higgs trajectories).
pub fn closure_detect(traj: &Trajectory, tol: f64) -> Option<f64> {
    if traj.variant != Variant::HiggsReal || traj.samples.len() < 3 {
        return None;
    }
    let s0 = traj.samples[0].1;
    let p_scale = (s0.p[0].norm_sqr() + s0.p[1].norm_sqr()).sqrt().max(1.0);
    let d = |t: f64| phase_distance(&traj.state_at(t), &s0, p_scale);

    // Arm detection only after the orbit has genuinely left the start, then
    // refine every sampled local minimum of the distance: coarse sampling can
    // miss the true minimum by O(speed * stride), so the gate is applied to
    // the refined value only.
    let leave = 50.0 * tol;
    let mut armed = false;
    let samples = &traj.samples;
    for w in 1..samples.len() - 1 {
        let dm = phase_distance(&samples[w].1, &s0, p_scale);
        if !armed {
            if dm > leave {
                armed = true;
            }
            continue;
        }
        let dl = phase_distance(&samples[w - 1].1, &s0, p_scale);
        let dr = phase_distance(&samples[w + 1].1, &s0, p_scale);
        if dm <= dl && dm <= dr {
            // Refine the local minimum by golden-section search.
            let (mut a, mut b) = (samples[w - 1].0, samples[w + 1].0);
            let inv_phi = 0.5 * (5.0f64.sqrt() - 1.0);
            let (mut c, mut e) = (b - inv_phi * (b - a), a + inv_phi * (b - a));
            let (mut fc, mut fe) = (d(c), d(e));
            for _ in 0..80 {
                if fc < fe {
                    b = e;
                    e = c;
                    fe = fc;
                    c = b - inv_phi * (b - a);
                    fc = d(c);
                } else {
                    a = c;
                    c = e;
                    fc = fe;
                    e = a + inv_phi * (b - a);
                    fe = d(e);
                }
            }
            let t_star = 0.5 * (a + b);
            if d(t_star) < tol {
                return Some(t_star);
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// CSV output
// ---------------------------------------------------------------------------

/// Trajectory CSV schema:
/// `t,x1,x2,re_p1,im_p1,re_p2,im_p2,E,L,S11,S12,S22` with 17 significant
/// digits. `E`, `L`, `S` columns record the real parts of the invariant
/// expressions (exact for the real Higgs flow).
pub fn write_trajectory_csv<W: Write>(traj: &Trajectory, out: &mut W) -> Result<()> {
    writeln!(out, "t,x1,x2,re_p1,im_p1,re_p2,im_p2,E,L,S11,S12,S22")?;
    for ((t, s), inv) in traj.samples.iter().zip(&traj.invariant_samples) {
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            t,
            s.x[0].re,
            s.x[1].re,
            s.p[0].re,
            s.p[0].im,
            s.p[1].re,
            s.p[1].im,
            inv.e,
            inv.l,
            inv.s11,
            inv.s12,
            inv.s22
        )?;
    }
    Ok(())
}
