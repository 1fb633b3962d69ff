//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A point or parameter set lies outside the domain of the requested
    /// operation (metric degenerate, wrong curvature sign, invalid index, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Eigenfunction back-substitution hit a (near-)degenerate denominator
    /// `lambda_{n-2k} = lambda_n`, i.e. beta = -2 alpha (n - k). The
    /// eigen-structure is non-diagonalizable there and construction refuses.
    #[error("resonance at n={n}, degree={degree}: beta = -2*alpha*(n-k) with k={k} (gap {gap:.3e})")]
    Resonance { n: u32, degree: u32, k: u32, gap: f64 },

    /// Requested polynomial degree exceeds the configured quadrature capacity.
    #[error("precision error: {0}")]
    Precision(String),

    /// Node-doubling validation of a quadrature-assembled matrix failed: the
    /// integrand does not converge under refinement.
    #[error("quadrature error: {0}")]
    Quadrature(String),

    /// Dense eigenvalue iteration failed to converge.
    #[error("eigensolver failed to converge: {0}")]
    Convergence(String),

    /// Adaptive step-size control collapsed below the minimum step.
    #[error("step size collapse at t={t:.6e} (h={h:.3e})")]
    StepSize { t: f64, h: f64 },

    /// Trajectory approached the coordinate rim |x| -> r0 (alpha < 0).
    #[error("trajectory reached the disk boundary at t={t:.6e} (|x|={radius:.12})")]
    Boundary { t: f64, radius: f64 },

    /// `gauge_shift(to_real)` on a momentum whose imaginary part does not
    /// match the gauge profile.
    #[error("gauge mismatch: |Im p - profile| = {deviation:.3e} exceeds 1e-6")]
    GaugeMismatch { deviation: f64 },

    /// Configuration file / CLI argument problem.
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 domain/config, 3 numerical, 4 resonance.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Config(_) | Error::Boundary { .. } | Error::Io(_) => 2,
            Error::Precision(_)
            | Error::Quadrature(_)
            | Error::Convergence(_)
            | Error::StepSize { .. }
            | Error::GaugeMismatch { .. } => 3,
            Error::Resonance { .. } => 4,
        }
    }

    /// Short machine-readable kind tag used in JSON error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Resonance { .. } => "resonance",
            Error::Precision(_) => "precision",
            Error::Quadrature(_) => "quadrature",
            Error::Convergence(_) => "convergence",
            Error::StepSize { .. } => "step_size",
            Error::Boundary { .. } => "boundary",
            Error::GaugeMismatch { .. } => "gauge_mismatch",
            Error::Config(_) => "config",
            Error::Io(_) => "io",
        }
    }
}
