//! `pdmwell` — bound states of a particle with the soliton mass profile
//! `m(x) = m0 sech^2(x/d)` in the well family
//! `V_{p,q}(x) = -V0 sinh^p(x/d) / cosh^q(x/d)`.
//!
//! Subcommands: `spectrum` (eigenvalue tables by closed form, shooting, or
//! matrix oracle), `wavefunction` (normalized eigenfunction samples),
//! `potential` (profiles in both coordinate systems), and `verify` (recompute
//! every frozen reference spectrum and report deviations).
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 partial result
//! (fewer levels than requested in a bounded window, a level index beyond
//! the computed spectrum, or failed verification fixtures).

mod config;
mod output;

use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use pdmwell::model::vcal_x;
use pdmwell::reference::{self, SpectrumFixture};
use pdmwell::{
    analytic, effective_potential, eigenfunction_on_grid, find_spectrum, make_problem,
    oracle_spectrum, x_to_z, DimensionlessProblem, Eigenpair, Error as SolverError, OracleConfig,
    PotentialSpec, ShootingConfig,
};

use config::{CommandKind, CommonArgs, Method, RunConfig};
use output::{deliver, Cell, Table};

/// Error carrying its process exit code (1 usage, 2 partial result).
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub msg: String,
}

impl Failure {
    pub fn usage(msg: String) -> Self {
        Failure { code: 1, msg }
    }

    pub fn partial(msg: String) -> Self {
        Failure { code: 2, msg }
    }
}

impl From<SolverError> for Failure {
    fn from(e: SolverError) -> Self {
        let code = match &e {
            SolverError::IncompleteSpectrum { .. } => 2,
            _ => 1,
        };
        Failure { code, msg: e.to_string() }
    }
}

#[derive(Parser)]
#[command(
    name = "pdmwell",
    version,
    about = "Bound states for a sech^2 mass profile in hyperbolic wells V = -V0 sinh^p/cosh^q"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lowest energy levels of one family member
    Spectrum(SpectrumArgs),
    /// Normalized eigenfunction samples for one level
    Wavefunction(WavefunctionArgs),
    /// Potential profiles V(x) and V(z) on a sampling grid
    Potential(PotentialArgs),
    /// Recompute the frozen reference spectra and report deviations
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Number of levels, counted from the ground state [default: 4]
    #[arg(long)]
    levels: Option<usize>,
    /// analytic | shooting | oracle | all [default: shooting]
    #[arg(long, value_enum)]
    method: Option<Method>,
    /// Lower edge of an explicit dimensionless scan window
    #[arg(long, allow_hyphen_values = true, requires = "e_max")]
    e_min: Option<f64>,
    /// Upper edge of an explicit dimensionless scan window
    #[arg(long, allow_hyphen_values = true, requires = "e_min")]
    e_max: Option<f64>,
}

#[derive(Args)]
struct WavefunctionArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Level index n (ground state 0) [default: 0]
    #[arg(long)]
    level: Option<usize>,
    /// Half-width of the x sampling grid, in units of d [default: 12]
    #[arg(long)]
    x_max: Option<f64>,
    /// Number of samples across the grid [default: 1201]
    #[arg(long)]
    samples: Option<usize>,
    /// Lower edge of an explicit dimensionless scan window
    #[arg(long, allow_hyphen_values = true, requires = "e_max")]
    e_min: Option<f64>,
    /// Upper edge of an explicit dimensionless scan window
    #[arg(long, allow_hyphen_values = true, requires = "e_min")]
    e_max: Option<f64>,
}

#[derive(Args)]
struct PotentialArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Half-width of the x sampling grid, in units of d [default: 6]
    #[arg(long)]
    x_max: Option<f64>,
    /// Number of samples across the grid [default: 601]
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Machine-readable report instead of per-fixture lines
    #[arg(long)]
    json: bool,
    /// Override every fixture's relative tolerance
    #[arg(long)]
    tol: Option<f64>,
    /// Only run fixtures for one member, as "p,q"
    #[arg(long, value_parser = config::parse_member, allow_hyphen_values = true)]
    member: Option<(i32, i32)>,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are successful outcomes; everything else is usage
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                0
            } else {
                eprint!("{e}");
                1
            };
        }
    };
    let result = match cli.cmd {
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Wavefunction(args) => cmd_wavefunction(args),
        Command::Potential(args) => cmd_potential(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            f.code
        }
    }
}

/// Build the dimensionless problem for a resolved config. Natural units take
/// the exact constructor; explicit scales go through the physical depth
/// V0 = Vcal0 * hbar^2 / (2 m0 d^2).
fn problem(cfg: &RunConfig) -> Result<DimensionlessProblem, Failure> {
    if cfg.natural_units() {
        Ok(DimensionlessProblem::natural(cfg.p, cfg.q, cfg.vcal0)?)
    } else {
        let v0 = cfg.vcal0 * cfg.energy_scale();
        let spec = PotentialSpec::with_scales(cfg.p, cfg.q, v0, cfg.d, cfg.m0, cfg.hbar)?;
        Ok(make_problem(&spec)?)
    }
}

fn shooting_config(cfg: &RunConfig) -> ShootingConfig {
    match cfg.window {
        Some((lo, hi)) => ShootingConfig { e_min: lo, e_max: hi, ..Default::default() },
        None => ShootingConfig::default(),
    }
}

/// Closed-form spectrum when the member/depth has one; `Ok(None)` when it
/// does not (so `--method all` can skip it gracefully).
fn analytic_spectrum(cfg: &RunConfig) -> Result<Option<Vec<Eigenpair>>, Failure> {
    match (cfg.p, cfg.q) {
        (0, 0) => {
            // the (0,0) potential term is the constant -Vcal0, which shifts
            // the depth-zero ladder rigidly: E_n = n(n+1) - Vcal0
            let mut levels = analytic::spectrum_00(cfg.levels);
            for pair in &mut levels {
                pair.energy -= cfg.vcal0;
            }
            Ok(Some(levels))
        }
        (-2, 0) => Ok(Some(analytic::spectrum_m20(cfg.vcal0, cfg.levels - 1)?)),
        (2, 0) if cfg.vcal0 == 0.75 => Ok(Some(analytic::spectrum_20_special(cfg.levels))),
        _ => Ok(None),
    }
}

fn member_meta(table: &mut Table, cfg: &RunConfig) {
    table.meta_str("member", format!("({},{})", cfg.p, cfg.q));
    table.meta_num("vcal0", cfg.vcal0);
    table.meta_num("energy_scale", cfg.energy_scale());
    table.meta_str("units", if cfg.natural_units() { "natural" } else { "scaled" });
}

fn spectrum_columns() -> Vec<&'static str> {
    vec!["n", "parity", "E_dimensionless", "E_physical", "method", "err"]
}

fn spectrum_row(pair: &Eigenpair, cfg: &RunConfig) -> Vec<Cell> {
    let physical = if cfg.natural_units() {
        Cell::Missing
    } else {
        Cell::Num(pair.energy * cfg.energy_scale())
    };
    vec![
        Cell::Int(pair.n as i64),
        Cell::Str(pair.parity.as_str()),
        Cell::Num(pair.energy),
        physical,
        Cell::Str(pair.provenance.as_str()),
        Cell::Num(pair.err),
    ]
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<(), Failure> {
    let cfg = RunConfig::resolve(
        CommandKind::Spectrum,
        &args.common,
        args.levels,
        None,
        args.method,
        None,
        None,
        args.e_min,
        args.e_max,
    )?;
    let prob = problem(&cfg)?;
    let mut table = Table::new(spectrum_columns());
    member_meta(&mut table, &cfg);
    table.meta_int("levels_requested", cfg.levels as i64);

    let mut partial: Option<String> = None;
    let methods: &[Method] = match cfg.method {
        Method::All => &[Method::Analytic, Method::Shooting, Method::Oracle],
        Method::Analytic => &[Method::Analytic],
        Method::Shooting => &[Method::Shooting],
        Method::Oracle => &[Method::Oracle],
    };
    for &method in methods {
        let levels = match method {
            Method::Analytic => match analytic_spectrum(&cfg)? {
                Some(levels) => levels,
                None if cfg.method == Method::All => {
                    table.meta_str(
                        "note",
                        format!(
                            "no closed-form spectrum for ({},{}) at this depth; analytic rows omitted",
                            cfg.p, cfg.q
                        ),
                    );
                    continue;
                }
                None => {
                    return Err(Failure::usage(format!(
                        "no closed-form spectrum for member ({},{}) at depth {}; try --method shooting",
                        cfg.p, cfg.q, cfg.vcal0
                    )))
                }
            },
            Method::Shooting => match find_spectrum(&prob, cfg.levels, &shooting_config(&cfg)) {
                Ok(levels) => levels,
                // a bounded window may legitimately hold fewer levels:
                // emit what was found, then exit 2
                Err(SolverError::IncompleteSpectrum { requested, found }) => {
                    partial =
                        Some(format!("found {} of {requested} requested levels", found.len()));
                    table.meta_str("note", partial.clone().unwrap());
                    found
                }
                Err(e) => return Err(e.into()),
            },
            Method::Oracle => oracle_spectrum(&prob, cfg.levels, &OracleConfig::default())?,
            Method::All => unreachable!(),
        };
        for pair in &levels {
            table.push(spectrum_row(pair, &cfg));
        }
    }

    deliver(&table.render(cfg.format), cfg.output.as_deref())?;
    match partial {
        Some(msg) => Err(Failure::partial(msg)),
        None => Ok(()),
    }
}

fn cmd_wavefunction(args: WavefunctionArgs) -> Result<(), Failure> {
    let cfg = RunConfig::resolve(
        CommandKind::Wavefunction,
        &args.common,
        None,
        args.level,
        None,
        args.x_max,
        args.samples,
        args.e_min,
        args.e_max,
    )?;
    let prob = problem(&cfg)?;
    let shoot = shooting_config(&cfg);
    let pairs = match find_spectrum(&prob, cfg.level + 1, &shoot) {
        Ok(pairs) => pairs,
        Err(SolverError::IncompleteSpectrum { found, .. }) => {
            return Err(Failure::partial(format!(
                "level {} is beyond the computed spectrum ({} levels found in the window)",
                cfg.level,
                found.len()
            )))
        }
        Err(e) => return Err(e.into()),
    };
    let pair = pairs[cfg.level];
    let samples = eigenfunction_on_grid(&prob, &pair, &shoot, cfg.x_max, cfg.samples)?;

    let mut table =
        Table::new(vec!["x", "z", "psi", "phi", "psi_sq_normalized"]);
    member_meta(&mut table, &cfg);
    table.meta_int("level", pair.n as i64);
    table.meta_str("parity", pair.parity.as_str());
    table.meta_num("E_dimensionless", pair.energy);
    if !cfg.natural_units() {
        table.meta_num("E_physical", pair.energy * cfg.energy_scale());
    }
    table.meta_num("err", pair.err);
    table.meta_int("nodes", samples.nodes as i64);
    // unit L2 norm on the sampling grid by construction
    table.meta_num("norm", 1.0);

    for i in 0..samples.grid_x.len() {
        let psi = samples.psi[i];
        table.push(vec![
            Cell::Num(samples.grid_x[i]),
            Cell::Num(samples.grid_z[i]),
            Cell::Num(psi),
            Cell::Num(samples.phi[i]),
            Cell::Num(psi * psi),
        ]);
    }
    deliver(&table.render(cfg.format), cfg.output.as_deref())
}

fn cmd_potential(args: PotentialArgs) -> Result<(), Failure> {
    let cfg = RunConfig::resolve(
        CommandKind::Potential,
        &args.common,
        None,
        None,
        None,
        args.x_max,
        args.samples,
        None,
        None,
    )?;
    let prob = problem(&cfg)?;

    let mut table = Table::new(vec!["x", "Vcal_x", "V_physical", "z", "Vcal_z"]);
    member_meta(&mut table, &cfg);
    table.meta_str("well_shape", pdmwell::classify_well(&prob).as_str());

    let n = cfg.samples.max(2);
    // half-line members diverge at the origin; sample (0, x_max] instead
    let grid: Vec<f64> = if cfg.p < 0 {
        (1..=n).map(|i| cfg.x_max * i as f64 / n as f64).collect()
    } else {
        (0..n).map(|i| -cfg.x_max + 2.0 * cfg.x_max * i as f64 / (n - 1) as f64).collect()
    };
    for &x in &grid {
        let vx = vcal_x(&prob, x);
        let zp = x_to_z(x);
        let vz = effective_potential(&prob, &zp)?;
        let physical = if cfg.natural_units() {
            Cell::Missing
        } else {
            Cell::Num(vx * cfg.energy_scale())
        };
        table.push(vec![
            Cell::Num(x),
            Cell::Num(vx),
            physical,
            Cell::Num(zp.value()),
            Cell::Num(vz),
        ]);
    }
    deliver(&table.render(cfg.format), cfg.output.as_deref())
}

/// Result of re-running one frozen fixture.
struct FixtureOutcome {
    tier: &'static str,
    fx: &'static SpectrumFixture,
    max_rel_dev: f64,
    tol: f64,
    seconds: f64,
    pass: bool,
    error: Option<String>,
}

fn run_fixture(
    tier: &'static str,
    fx: &'static SpectrumFixture,
    tol_override: Option<f64>,
) -> FixtureOutcome {
    let tol = tol_override.unwrap_or(fx.rel_tol);
    let t0 = Instant::now();
    let n_levels = fx.levels.iter().map(|&(n, _)| n).max().unwrap() + 1;
    let outcome = DimensionlessProblem::natural(fx.p, fx.q, fx.vcal0)
        .and_then(|prob| find_spectrum(&prob, n_levels, &ShootingConfig::default()));
    match outcome {
        Ok(pairs) => {
            let mut dev = 0.0f64;
            for &(n, e_ref) in fx.levels {
                dev = dev.max((pairs[n].energy - e_ref).abs() / e_ref.abs());
            }
            FixtureOutcome {
                tier,
                fx,
                max_rel_dev: dev,
                tol,
                seconds: t0.elapsed().as_secs_f64(),
                pass: dev <= tol,
                error: None,
            }
        }
        Err(e) => FixtureOutcome {
            tier,
            fx,
            max_rel_dev: f64::NAN,
            tol,
            seconds: t0.elapsed().as_secs_f64(),
            pass: false,
            error: Some(e.to_string()),
        },
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let mut outcomes = Vec::new();
    for (tier, set) in
        [("benchmark", reference::BENCHMARKS), ("regression", reference::REGRESSION)]
    {
        for fx in set {
            if let Some((p, q)) = args.member {
                if fx.p != p || fx.q != q {
                    continue;
                }
            }
            outcomes.push(run_fixture(tier, fx, args.tol));
        }
    }
    if outcomes.is_empty() {
        return Err(Failure::usage("no fixtures match the requested member".into()));
    }
    let failed = outcomes.iter().filter(|o| !o.pass).count();

    if args.json {
        let rows: Vec<Value> = outcomes
            .iter()
            .map(|o| {
                json!({
                    "tier": o.tier,
                    "p": o.fx.p,
                    "q": o.fx.q,
                    "vcal0": o.fx.vcal0,
                    "levels": o.fx.levels.len(),
                    "max_rel_dev": if o.max_rel_dev.is_nan() { Value::Null } else { json!(o.max_rel_dev) },
                    "tol": o.tol,
                    "seconds": o.seconds,
                    "pass": o.pass,
                    "error": o.error,
                })
            })
            .collect();
        let report = json!({
            "meta": {
                "command": "verify",
                "fixtures": outcomes.len(),
                "failed": failed,
                "all_pass": failed == 0,
            },
            "rows": rows,
        });
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        for o in &outcomes {
            let verdict = if o.pass { "PASS" } else { "FAIL" };
            match &o.error {
                Some(msg) => println!(
                    "[{verdict}] {} ({},{}) vcal0={}: solver error: {msg}",
                    o.tier, o.fx.p, o.fx.q, o.fx.vcal0
                ),
                None => println!(
                    "[{verdict}] {} ({},{}) vcal0={}: {} levels, max rel dev {:.2e} (tol {:.1e}, {:.2}s)",
                    o.tier,
                    o.fx.p,
                    o.fx.q,
                    o.fx.vcal0,
                    o.fx.levels.len(),
                    o.max_rel_dev,
                    o.tol,
                    o.seconds
                ),
            }
        }
        println!(
            "{} fixtures, {} failed",
            outcomes.len(),
            failed
        );
    }
    if failed > 0 {
        return Err(Failure::partial(format!("{failed} fixture(s) failed")));
    }
    Ok(())
}
