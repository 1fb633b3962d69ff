//! Command-line front end: configuration handling, the four subcommands
//! (`spectrum`, `eigenfunctions`, `evolve`, `verify`), report files, and
//! exit-code discipline (0 success, 2 domain/config error, 3 numerical
//! failure, 4 resonance).

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::classical::{
    gauge_profile, gauge_shift, integrate, write_trajectory_csv, GaugeDirection,
    IntegrateOptions, PhaseState, Termination, Variant,
};
use crate::error::{Error, Result};
use crate::geometry::Params;
use crate::poly::{build_eigenfunction, Normalization, PolyJson};
use crate::quadrature::residual_norm;
use crate::spectral::{
    assemble, compare_to_exact, eigen, spectrum_rows, write_spectrum_csv, BasisGauge, BasisSpec,
    OperatorTag, SpectrumReport, SpectrumRow,
};
use crate::verify::{self, VerifyConfig};

/// Runtime configuration; file values override defaults, CLI flags override
/// file values.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub alpha: f64,
    pub beta: f64,
    pub hbar: f64,
    pub max_degree: u32,
    pub m_sector: Option<i32>,
    pub tol_quad: f64,
    pub tol_eig: f64,
    pub tol_ode: f64,
    pub output_dir: PathBuf,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            alpha: -1.0,
            beta: -2.0,
            hbar: 1.0,
            max_degree: 8,
            m_sector: None,
            tol_quad: 1e-10,
            tol_eig: 1e-8,
            tol_ode: 1e-10,
            output_dir: PathBuf::from("out"),
            seed: 42,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.tol_quad <= 0.0 || self.tol_eig <= 0.0 || self.tol_ode <= 0.0 {
            return Err(Error::Config("all tolerances must be positive".into()));
        }
        if self.max_degree > 40 {
            return Err(Error::Config(format!(
                "max_degree {} exceeds the supported cap 40",
                self.max_degree
            )));
        }
        Params::new(self.alpha, self.beta, self.hbar).map_err(|e| Error::Config(e.to_string()))?;
        Ok(())
    }

    pub fn params(&self) -> Result<Params> {
        Params::new(self.alpha, self.beta, self.hbar)
    }

    /// Flat key = value config file; '#' starts a comment.
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
            let key = key.trim();
            let value = value.trim();
            let bad = |e: String| Error::Config(format!("line {}: {e}", lineno + 1));
            match key {
                "alpha" => self.alpha = value.parse().map_err(|e| bad(format!("{e}")))?,
                "beta" => self.beta = value.parse().map_err(|e| bad(format!("{e}")))?,
                "hbar" => self.hbar = value.parse().map_err(|e| bad(format!("{e}")))?,
                "max_degree" => self.max_degree = value.parse().map_err(|e| bad(format!("{e}")))?,
                "m_sector" => self.m_sector = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
                "tol_quad" => self.tol_quad = value.parse().map_err(|e| bad(format!("{e}")))?,
                "tol_eig" => self.tol_eig = value.parse().map_err(|e| bad(format!("{e}")))?,
                "tol_ode" => self.tol_ode = value.parse().map_err(|e| bad(format!("{e}")))?,
                "output_dir" => self.output_dir = PathBuf::from(value),
                "seed" => self.seed = value.parse().map_err(|e| bad(format!("{e}")))?,
                other => return Err(Error::Config(format!("unknown config key '{other}'"))),
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TagArg {
    Zernike,
    HiggsPq,
    HiggsLaplacian,
    FreeParticle,
}

impl From<TagArg> for OperatorTag {
    fn from(t: TagArg) -> Self {
        match t {
            TagArg::Zernike => OperatorTag::Zernike,
            TagArg::HiggsPq => OperatorTag::HiggsPq,
            TagArg::HiggsLaplacian => OperatorTag::HiggsLaplacian,
            TagArg::FreeParticle => OperatorTag::FreeParticle,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    MonicTop,
    Rim,
    UnitNorm,
}

impl From<NormArg> for Normalization {
    fn from(n: NormArg) -> Self {
        match n {
            NormArg::MonicTop => Normalization::MonicTop,
            NormArg::Rim => Normalization::Rim,
            NormArg::UnitNorm => Normalization::UnitNorm,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    ZernikeComplex,
    HiggsReal,
    Weyl,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::ZernikeComplex => Variant::ZernikeComplex,
            VariantArg::HiggsReal => Variant::HiggsReal,
            VariantArg::Weyl => Variant::Weyl,
        }
    }
}

fn parse_pair(s: &str) -> std::result::Result<Pair, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected 'a,b', got '{s}'"));
    }
    let a: f64 = parts[0].trim().parse().map_err(|e| format!("{e}"))?;
    let b: f64 = parts[1].trim().parse().map_err(|e| format!("{e}"))?;
    Ok(Pair([a, b]))
}

#[derive(Debug, Clone, Copy)]
pub struct Pair(pub [f64; 2]);

#[derive(Parser, Debug)]
#[command(
    name = "zernike-higgs",
    about = "Spectra, eigenfunctions, classical flows and verification for the \
             generalized Zernike operator / Higgs oscillator correspondence",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Flat key = value configuration file; CLI flags override file values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    #[arg(long, global = true)]
    pub beta: Option<f64>,
    #[arg(long, global = true)]
    pub hbar: Option<f64>,
    #[arg(long = "max-degree", global = true)]
    pub max_degree: Option<u32>,
    /// Restrict to a single angular sector.
    #[arg(long = "m", global = true)]
    pub m_sector: Option<i32>,
    #[arg(long = "tol-eig", global = true)]
    pub tol_eig: Option<f64>,
    #[arg(long = "tol-ode", global = true)]
    pub tol_ode: Option<f64>,
    #[arg(long = "tol-quad", global = true)]
    pub tol_quad: Option<f64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output directory for CSV/JSON reports.
    #[arg(long = "out", global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Assemble the chosen operator, solve the eigenproblem, and compare
    /// against the exact spectrum E_n = -n (alpha n + beta).
    Spectrum {
        #[arg(long, value_enum, default_value = "zernike")]
        tag: TagArg,
    },
    /// Emit polynomial eigenfunctions with residual norms for all (n, m)
    /// up to max-degree.
    Eigenfunctions {
        #[arg(long, value_enum, default_value = "monic-top")]
        normalization: NormArg,
    },
    /// Integrate a classical trajectory and write it as CSV.
    Evolve {
        #[arg(long, value_enum, default_value = "higgs-real")]
        variant: VariantArg,
        /// Initial position "x1,x2".
        #[arg(long, value_parser = parse_pair, default_value = "0.2,0.0", allow_hyphen_values = true)]
        x0: Pair,
        /// Initial momentum "p1,p2".
        #[arg(long, value_parser = parse_pair, default_value = "0.0,0.3", allow_hyphen_values = true)]
        p0: Pair,
        /// Integration time.
        #[arg(long = "T", default_value_t = 10.0)]
        t_end: f64,
        /// Also integrate the gauge-shifted complex twin and report the
        /// deviation channels.
        #[arg(long)]
        paired: bool,
    },
    /// Run the full verification suite and write a JSON + text report.
    Verify,
}

/// Assembles the effective RunConfig: defaults < config file < CLI flags.
pub fn resolve_config(cli: &Cli) -> Result<RunConfig> {
    let mut config = RunConfig::default();
    if let Some(path) = &cli.config {
        config.apply_file(path)?;
    }
    if let Some(v) = cli.alpha {
        config.alpha = v;
    }
    if let Some(v) = cli.beta {
        config.beta = v;
    }
    if let Some(v) = cli.hbar {
        config.hbar = v;
    }
    if let Some(v) = cli.max_degree {
        config.max_degree = v;
    }
    if let Some(v) = cli.m_sector {
        config.m_sector = Some(v);
    }
    if let Some(v) = cli.tol_eig {
        config.tol_eig = v;
    }
    if let Some(v) = cli.tol_ode {
        config.tol_ode = v;
    }
    if let Some(v) = cli.tol_quad {
        config.tol_quad = v;
    }
    if let Some(v) = cli.seed {
        config.seed = v;
    }
    if let Some(v) = &cli.out {
        config.output_dir = v.clone();
    }
    config.validate()?;
    Ok(config)
}

/// Runs the parsed command; the returned integer is the process exit code.
pub fn run(cli: &Cli) -> Result<i32> {
    let config = resolve_config(cli)?;
    fs::create_dir_all(&config.output_dir)?;
    match &cli.command {
        Command::Spectrum { tag } => cmd_spectrum(&config, (*tag).into()),
        Command::Eigenfunctions { normalization } => {
            cmd_eigenfunctions(&config, (*normalization).into())
        }
        Command::Evolve { variant, x0, p0, t_end, paired } => {
            cmd_evolve(&config, (*variant).into(), x0.0, p0.0, *t_end, *paired)
        }
        Command::Verify => cmd_verify(&config),
    }
}

/// Serializes any error as machine-readable JSON for stderr.
pub fn error_json(err: &Error) -> String {
    serde_json::json!({ "error": { "kind": err.kind(), "message": err.to_string() } }).to_string()
}

fn resonance_witness(params: &Params, max_degree: u32) -> Option<Error> {
    for j in 1..max_degree {
        if (params.beta + 2.0 * params.alpha * j as f64).abs() < 1e-12 * (1.0 + params.beta.abs())
        {
            // beta = -2 alpha j couples degrees n = j+1, ..., 2j; report the
            // smallest witness.
            return Some(Error::Resonance { n: j + 1, degree: j - 1, k: 1, gap: 0.0 });
        }
    }
    None
}

#[derive(Serialize)]
struct SpectrumJson<'a> {
    config: &'a RunConfig,
    tag: String,
    weight_exponent: f64,
    report: &'a SpectrumReport,
    rows: &'a [SpectrumRow],
}

fn cmd_spectrum(config: &RunConfig, tag: OperatorTag) -> Result<i32> {
    let params = config.params()?;
    if params.alpha >= 0.0 {
        return Err(Error::Domain("spectrum command requires alpha < 0".into()));
    }
    if let Some(err) = resonance_witness(&params, config.max_degree) {
        return Err(err);
    }
    let weight = match tag {
        OperatorTag::Zernike => 0.0,
        _ => -0.5,
    };
    let basis = BasisSpec {
        max_degree: config.max_degree,
        m_sector: config.m_sector,
        gauge: BasisGauge::Adapted,
    };
    let matrix = assemble(&params, tag, &basis, weight)?;
    let mut report = eigen(&matrix)?;
    compare_to_exact(&params, &matrix, &mut report);
    let rows = spectrum_rows(&params, &matrix, &report);

    let mut csv = Vec::new();
    write_spectrum_csv(&rows, &mut csv)?;
    fs::write(config.output_dir.join("spectrum.csv"), csv)?;
    let json = SpectrumJson {
        config,
        tag: format!("{tag:?}"),
        weight_exponent: weight,
        report: &report,
        rows: &rows,
    };
    fs::write(
        config.output_dir.join("spectrum.json"),
        serde_json::to_string_pretty(&json).map_err(|e| Error::Config(e.to_string()))?,
    )?;

    let max_err = rows.iter().map(|r| r.abs_err).fold(0.0, f64::max);
    println!(
        "spectrum: {} rows, max |E_numeric - E_exact| = {:.3e} (tol {:.1e}), max |Im| = {:.3e}",
        rows.len(),
        max_err,
        config.tol_eig,
        report.max_imag
    );
    Ok(if max_err < config.tol_eig { 0 } else { 3 })
}

#[derive(Serialize)]
struct EigenfunctionRow {
    n: u32,
    m: i32,
    energy: f64,
    residual: f64,
    poly: PolyJson,
}

fn cmd_eigenfunctions(config: &RunConfig, normalization: Normalization) -> Result<i32> {
    let params = config.params()?;
    if params.alpha >= 0.0 && normalization == Normalization::UnitNorm {
        return Err(Error::Domain("unit-norm normalization requires alpha < 0".into()));
    }
    let mut rows = Vec::new();
    for n in 0..=config.max_degree {
        let mut m = -(n as i32);
        while m <= n as i32 {
            if config.m_sector.is_none_or(|sector| sector == m) {
                let pair = build_eigenfunction(&params, n, m, normalization)?;
                let residual = if params.alpha < 0.0 {
                    residual_norm(&params, &pair, 0.0)?
                } else {
                    crate::poly::coefficient_residual(&params, &pair)
                };
                rows.push(EigenfunctionRow {
                    n,
                    m,
                    energy: pair.energy,
                    residual,
                    poly: pair.poly.to_json(),
                });
            }
            m += 2;
        }
    }
    let payload = serde_json::json!({ "config": config, "eigenfunctions": rows });
    fs::write(
        config.output_dir.join("eigenfunctions.json"),
        serde_json::to_string_pretty(&payload).map_err(|e| Error::Config(e.to_string()))?,
    )?;
    println!("eigenfunctions: {} pairs written", rows.len());
    Ok(0)
}

fn termination_error(term: &Termination) -> Option<Error> {
    match *term {
        Termination::Completed => None,
        Termination::Boundary { t, radius } => Some(Error::Boundary { t, radius }),
        Termination::StepSizeCollapse { t, h } => Some(Error::StepSize { t, h }),
    }
}

fn cmd_evolve(
    config: &RunConfig,
    variant: Variant,
    x0: [f64; 2],
    p0: [f64; 2],
    t_end: f64,
    paired: bool,
) -> Result<i32> {
    let params = config.params()?;
    let state0 = PhaseState::real(x0, p0);
    let opts = IntegrateOptions::default();

    if paired {
        let real = integrate(Variant::HiggsReal, &params, &state0, t_end, config.tol_ode, &opts)?;
        let seed = gauge_shift(&params, &state0, GaugeDirection::ToComplex)?;
        let cplx =
            integrate(Variant::ZernikeComplex, &params, &seed, t_end, config.tol_ode, &opts)?;

        let mut buf = Vec::new();
        write_trajectory_csv(&real, &mut buf)?;
        fs::write(config.output_dir.join("trajectory_higgs.csv"), buf)?;
        let mut buf = Vec::new();
        write_trajectory_csv(&cplx, &mut buf)?;
        fs::write(config.output_dir.join("trajectory_zernike.csv"), buf)?;

        // Deviation channels of the gauge equivalence: |Im x|, the distance
        // of Im p from the gauge profile, and the position mismatch.
        let mut buf = Vec::new();
        use std::io::Write;
        writeln!(buf, "t,im_x_abs,gauge_profile_dev,position_dev")?;
        let mut worst = (0.0f64, 0.0f64, 0.0f64);
        for (t, state) in &cplx.samples {
            let twin = real.state_at(*t);
            let profile = gauge_profile(&params, twin.x_re())?;
            let im_x = state.max_im_x();
            let gauge_dev = (state.p[0].im - profile[0])
                .abs()
                .max((state.p[1].im - profile[1]).abs());
            let pos_dev = (state.x[0].re - twin.x[0].re)
                .abs()
                .max((state.x[1].re - twin.x[1].re).abs());
            writeln!(buf, "{:.16e},{:.16e},{:.16e},{:.16e}", t, im_x, gauge_dev, pos_dev)?;
            worst = (worst.0.max(im_x), worst.1.max(gauge_dev), worst.2.max(pos_dev));
        }
        fs::write(config.output_dir.join("pair_deviation.csv"), buf)?;
        println!(
            "paired run: max |Im x| = {:.3e}, max gauge deviation = {:.3e}, \
             max position deviation = {:.3e}",
            worst.0, worst.1, worst.2
        );
        if let Some(e) = termination_error(&real.termination).or(termination_error(&cplx.termination)) {
            return Err(e);
        }
        return Ok(0);
    }

    let traj = integrate(variant, &params, &state0, t_end, config.tol_ode, &opts)?;
    let mut buf = Vec::new();
    write_trajectory_csv(&traj, &mut buf)?;
    fs::write(config.output_dir.join("trajectory.csv"), buf)?;
    println!(
        "evolve: {} samples to t = {:.6}, {} steps ({} rejected), energy drift {:.3e}",
        traj.samples.len(),
        traj.t_end(),
        traj.stats.steps,
        traj.stats.rejected_steps,
        traj.stats.max_energy_drift
    );
    // Partial trajectories are flushed above before the error is raised.
    if let Some(e) = termination_error(&traj.termination) {
        return Err(e);
    }
    Ok(0)
}

fn cmd_verify(config: &RunConfig) -> Result<i32> {
    let vconfig = VerifyConfig {
        alpha: config.alpha,
        beta: config.beta,
        hbar: config.hbar,
        max_degree: config.max_degree,
        seed: config.seed,
        tol_ode: config.tol_ode,
    };
    let report = verify::run(&vconfig)?;
    fs::write(
        config.output_dir.join("verify.json"),
        serde_json::to_string_pretty(&report).map_err(|e| Error::Config(e.to_string()))?,
    )?;
    let text = report.to_text();
    fs::write(config.output_dir.join("verify.txt"), &text)?;
    print!("{text}");
    Ok(if report.all_passed { 0 } else { 3 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_file_round_trip() {
        let dir = std::env::temp_dir().join("zh-config-test");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.conf");
        fs::write(
            &path,
            "# comment\nalpha = -0.5\nbeta = -1.0\nmax_degree = 6\nseed = 7\ntol_eig = 1e-9\n",
        )
        .unwrap();
        let mut config = RunConfig::default();
        config.apply_file(&path).unwrap();
        assert_eq!(config.alpha, -0.5);
        assert_eq!(config.beta, -1.0);
        assert_eq!(config.max_degree, 6);
        assert_eq!(config.seed, 7);
        assert_eq!(config.tol_eig, 1e-9);
        // untouched defaults survive
        assert_eq!(config.hbar, 1.0);
    }

    #[test]
    fn unknown_config_key_is_rejected() {
        let dir = std::env::temp_dir().join("zh-config-test2");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.conf");
        fs::write(&path, "gamma = 3\n").unwrap();
        let mut config = RunConfig::default();
        assert!(matches!(config.apply_file(&path), Err(Error::Config(_))));
    }

    #[test]
    fn validation_catches_bad_values() {
        let mut config = RunConfig { max_degree: 50, ..RunConfig::default() };
        assert!(config.validate().is_err());
        config.max_degree = 8;
        config.tol_eig = -1.0;
        assert!(config.validate().is_err());
    }

    #[test]
    fn pair_parser() {
        assert_eq!(parse_pair("0.1,-0.2").unwrap().0, [0.1, -0.2]);
        assert!(parse_pair("0.1").is_err());
        assert!(parse_pair("a,b").is_err());
    }

    #[test]
    fn resonance_witness_detects_locus() {
        // beta = -2 alpha j with j = 2: (alpha, beta) = (-0.25, 1).
        let params = Params::new(-0.25, 1.0, 1.0).unwrap();
        assert!(resonance_witness(&params, 8).is_some());
        let params = Params::new(-1.0, -2.0, 1.0).unwrap();
        assert!(resonance_witness(&params, 8).is_none());
    }
}
