//! Configuration intake: command-line flags merged over an optional JSON
//! config file, flags winning field by field.

use std::path::PathBuf;

use clap::ValueEnum;
use serde::Deserialize;

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Closed forms only; errors on members/depths without one
    Analytic,
    /// Scan-and-bisect shooting in the angle variable (the primary solver)
    Shooting,
    /// Richardson-extrapolated finite-difference matrix
    Oracle,
    /// Every method available for the member, one row block each
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Flags shared by the computing subcommands. Every field is optional here;
/// defaults are applied after the config-file merge.
#[derive(Debug, clap::Args)]
pub struct CommonArgs {
    /// Family member exponents as "p,q" (supported: 0,0  -2,0  2,0  1,1  0,2  2,4)
    #[arg(long, value_parser = parse_member, allow_hyphen_values = true)]
    pub member: Option<(i32, i32)>,

    /// Dimensionless well depth Vcal0 = 2 m0 d^2 V0 / hbar^2 [default: 0]
    #[arg(long, allow_hyphen_values = true)]
    pub vcal0: Option<f64>,

    /// JSON config file supplying any omitted flags
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Output format [default: csv]
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Output file (stdout when omitted)
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Length scale d; overriding any scale populates the physical columns
    #[arg(long)]
    pub d: Option<f64>,

    /// Mass scale m0
    #[arg(long)]
    pub m0: Option<f64>,

    /// Reduced Planck constant
    #[arg(long)]
    pub hbar: Option<f64>,
}

pub fn parse_member(s: &str) -> Result<(i32, i32), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected \"p,q\" (e.g. 0,2), got {s:?}"))?;
    let p = a.trim().parse::<i32>().map_err(|e| format!("bad p in {s:?}: {e}"))?;
    let q = b.trim().parse::<i32>().map_err(|e| format!("bad q in {s:?}: {e}"))?;
    Ok((p, q))
}

/// JSON config file. Unknown keys are rejected so typos cannot silently
/// fall back to defaults.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub member: Option<[i32; 2]>,
    pub vcal0: Option<f64>,
    pub levels: Option<usize>,
    pub level: Option<usize>,
    pub method: Option<String>,
    pub format: Option<String>,
    pub output: Option<PathBuf>,
    pub d: Option<f64>,
    pub m0: Option<f64>,
    pub hbar: Option<f64>,
    pub x_max: Option<f64>,
    pub samples: Option<usize>,
    pub e_min: Option<f64>,
    pub e_max: Option<f64>,
}

impl FileConfig {
    pub fn load(path: Option<&PathBuf>) -> Result<Self, Failure> {
        let Some(path) = path else { return Ok(Self::default()) };
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Failure::usage(format!("bad config {}: {e}", path.display())))
    }
}

/// Which subcommand a [`RunConfig`] is being resolved for; fixes the grid
/// defaults.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Spectrum,
    Wavefunction,
    Potential,
}

/// Fully resolved run parameters: flags over config file over defaults.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub p: i32,
    pub q: i32,
    pub vcal0: f64,
    pub levels: usize,
    pub level: usize,
    pub method: Method,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub d: f64,
    pub m0: f64,
    pub hbar: f64,
    pub x_max: f64,
    pub samples: usize,
    /// Explicit energy scan window (dimensionless); `None` lets the solver
    /// widen its own window until the requested levels appear.
    pub window: Option<(f64, f64)>,
}

impl RunConfig {
    #[allow(clippy::too_many_arguments)]
    pub fn resolve(
        kind: CommandKind,
        common: &CommonArgs,
        levels: Option<usize>,
        level: Option<usize>,
        method: Option<Method>,
        x_max: Option<f64>,
        samples: Option<usize>,
        e_min: Option<f64>,
        e_max: Option<f64>,
    ) -> Result<Self, Failure> {
        let file = FileConfig::load(common.config.as_ref())?;

        let member = common
            .member
            .or(file.member.map(|[p, q]| (p, q)))
            .ok_or_else(|| Failure::usage("missing --member (e.g. --member 0,2)".into()))?;
        let method = match (method, file.method.as_deref()) {
            (Some(m), _) => m,
            (None, Some(s)) => Method::from_str(s, true)
                .map_err(|_| Failure::usage(format!("bad method {s:?} in config file")))?,
            (None, None) => Method::Shooting,
        };
        let format = match (common.format, file.format.as_deref()) {
            (Some(f), _) => f,
            (None, Some(s)) => Format::from_str(s, true)
                .map_err(|_| Failure::usage(format!("bad format {s:?} in config file")))?,
            (None, None) => Format::Csv,
        };

        let levels = levels.or(file.levels).unwrap_or(4);
        if levels == 0 {
            return Err(Failure::usage("--levels must be at least 1".into()));
        }
        let (x_max_default, samples_default) = match kind {
            CommandKind::Wavefunction => (12.0, 1201),
            _ => (6.0, 601),
        };
        let window = match (e_min.or(file.e_min), e_max.or(file.e_max)) {
            (Some(lo), Some(hi)) if lo < hi => Some((lo, hi)),
            (Some(_), Some(_)) => {
                return Err(Failure::usage("--e-min must be below --e-max".into()))
            }
            (None, None) => None,
            _ => {
                return Err(Failure::usage(
                    "--e-min and --e-max bound the scan window together; pass both or neither"
                        .into(),
                ))
            }
        };

        let cfg = RunConfig {
            p: member.0,
            q: member.1,
            vcal0: common.vcal0.or(file.vcal0).unwrap_or(0.0),
            levels,
            level: level.or(file.level).unwrap_or(0),
            method,
            format,
            output: common.output.clone().or(file.output),
            d: common.d.or(file.d).unwrap_or(1.0),
            m0: common.m0.or(file.m0).unwrap_or(1.0),
            hbar: common.hbar.or(file.hbar).unwrap_or(1.0),
            x_max: x_max.or(file.x_max).unwrap_or(x_max_default),
            samples: samples.or(file.samples).unwrap_or(samples_default),
            window,
        };
        if !cfg.vcal0.is_finite() {
            return Err(Failure::usage(format!("--vcal0 must be finite, got {}", cfg.vcal0)));
        }
        Ok(cfg)
    }

    pub fn natural_units(&self) -> bool {
        self.d == 1.0 && self.m0 == 1.0 && self.hbar == 1.0
    }

    /// Energy unit hbar^2 / (2 m0 d^2) that converts dimensionless
    /// eigenvalues to physical ones.
    pub fn energy_scale(&self) -> f64 {
        self.hbar * self.hbar / (2.0 * self.m0 * self.d * self.d)
    }
}
