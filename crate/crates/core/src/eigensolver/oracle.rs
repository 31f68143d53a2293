//! Independent finite-difference oracles for the dimensionless spectra.
//!
//! Two discretizations certify the shooting results against each other:
//!
//! * `ZSpace` — the transformed constant-mass problem
//!   -phi'' + V(z) phi = E phi on (-pi/2, pi/2) with Dirichlet walls, plain
//!   three-point Laplacian.
//! * `XSpacePdm` — the original variable-mass problem in Sturm-Liouville
//!   form -(w psi')' + V(x) psi = E psi with w = 1/m = cosh^2 x, discretized
//!   with harmonic averaging of the mass at half-points,
//!   w_{i+1/2} = 2/(m_i + m_{i+1}), which keeps the matrix symmetric and
//!   second-order accurate.
//!
//! Both run at two resolutions (n and 2n+1 interior points, so the mesh
//! halves exactly) and Richardson-extrapolate the h^2 error model:
//! lambda = lambda_2 + (lambda_2 - lambda_1)/3, with |lambda_2 - lambda_1|
//! kept as a conservative error estimate.

use crate::error::{Error, Result};
use crate::model::{make_problem, sech, DimensionlessProblem, Eigenpair, Parity, Provenance};
use crate::transforms::vz_raw;

use super::tridiag::SymTridiag;

/// Discretization family used by [`oracle_spectrum`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleScheme {
    /// Uniform grid in the angle variable z.
    ZSpace,
    /// Uniform grid in x with position-dependent-mass weights.
    XSpacePdm,
}

/// Configuration for the matrix oracles.
#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    /// Half-width of the x-space box (ignored by the z scheme, whose domain
    /// is fixed by the map).
    pub domain_half_width_x: f64,
    /// Interior points at the coarse resolution. The fine pass uses 2n+1.
    pub n_points: usize,
    pub scheme: OracleScheme,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { domain_half_width_x: 20.0, n_points: 4000, scheme: OracleScheme::ZSpace }
    }
}

fn validate(cfg: &OracleConfig) -> Result<()> {
    if cfg.n_points < 100 {
        return Err(Error::InvalidParams {
            reason: format!("oracle needs at least 100 grid points, got {}", cfg.n_points),
        });
    }
    if !(cfg.domain_half_width_x.is_finite() && cfg.domain_half_width_x > 1.0) {
        return Err(Error::InvalidParams {
            reason: format!("x-domain half-width must exceed 1, got {}", cfg.domain_half_width_x),
        });
    }
    Ok(())
}

/// Interior z-grid and matrix for the transformed problem.
///
/// Walls sit at +/-(pi/2 - 1e-4): the centrifugal 3/4 tan^2 z term blows up
/// at the true wall, and pulling in by 1e-4 changes the low spectrum by far
/// less than the h^2 truncation error while keeping entries finite. The one
/// member with no centrifugal growth after cancellation, (2,0) at depth 3/4,
/// keeps its exact walls. Negative-p members live on the half-line and get a
/// hard wall at z = 1e-6 standing in for the inverse-square origin.
fn build_z(prob: &DimensionlessProblem, n: usize) -> (Vec<f64>, SymTridiag) {
    let (p, q, v0) = (prob.spec.p, prob.spec.q, prob.vcal0);
    let edge = if p == 2 && q == 0 && v0 == 0.75 { 0.0 } else { 1e-4 };
    let b = std::f64::consts::FRAC_PI_2 - edge;
    let a = if p < 0 { 1e-6 } else { -b };
    let h = (b - a) / (n as f64 + 1.0);
    let grid: Vec<f64> = (1..=n).map(|j| a + h * j as f64).collect();
    let diag: Vec<f64> = grid.iter().map(|&z| 2.0 / (h * h) + vz_raw(p, q, v0, z)).collect();
    let off = vec![-1.0 / (h * h); n - 1];
    (grid, SymTridiag { diag, off })
}

/// Interior x-grid and matrix for the variable-mass problem.
fn build_x(prob: &DimensionlessProblem, n: usize, half_width: f64) -> (Vec<f64>, SymTridiag) {
    let (p, q, v0) = (prob.spec.p, prob.spec.q, prob.vcal0);
    let b = half_width;
    // Half-line members get a hard wall at x = a standing in for the
    // inverse-square origin. Near x = 0 the admissible solution goes like
    // x^s with s = (1 + sqrt(1 - 4 V0))/2; clamping at a instead admixes
    // the rejected branch at relative size a^(2s-1), a fixed bias that grid
    // refinement cannot see. a = 1e-6 keeps it under 3e-6 for every depth
    // with 2s - 1 >= 0.9.
    let a = if p < 0 { 1e-6 } else { -b };
    let h = (b - a) / (n as f64 + 1.0);
    let m = |x: f64| {
        let s = sech(x);
        s * s
    };
    let pot = |x: f64| {
        let (s, sh) = (sech(x), x.sinh());
        let t = sh * s; // tanh x
        // -V0 sinh^p / cosh^q = -V0 tanh^p sech^(q-p)
        let tp = match p {
            0 => 1.0,
            2 => t * t,
            -2 => 1.0 / (t * t),
            1 => t,
            other => t.powi(other),
        };
        let sq = s.powi(q - p);
        -v0 * tp * sq
    };
    let grid: Vec<f64> = (1..=n).map(|j| a + h * j as f64).collect();
    // node masses including the two wall nodes
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n - 1);
    let mass_at = |j: usize| m(a + h * j as f64); // j = 0..=n+1
    for j in 1..=n {
        let w_lo = 2.0 / (mass_at(j - 1) + mass_at(j));
        let w_hi = 2.0 / (mass_at(j) + mass_at(j + 1));
        diag.push((w_lo + w_hi) / (h * h) + pot(grid[j - 1]));
        if j < n {
            off.push(-w_hi / (h * h));
        }
    }
    (grid, SymTridiag { diag, off })
}

pub(crate) fn build_matrix(
    prob: &DimensionlessProblem,
    cfg: &OracleConfig,
    n: usize,
) -> (Vec<f64>, SymTridiag) {
    match cfg.scheme {
        OracleScheme::ZSpace => build_z(prob, n),
        OracleScheme::XSpacePdm => build_x(prob, n, cfg.domain_half_width_x),
    }
}

/// Lowest `n_levels` dimensionless eigenvalues from the configured matrix
/// oracle, Richardson-extrapolated, with `err` the (conservative) two-grid
/// difference. Parity labels follow the node-count alternation; the
/// half-line members p < 0 are all labeled `Even` because their densities
/// are built symmetric.
pub fn oracle_spectrum(
    prob: &DimensionlessProblem,
    n_levels: usize,
    cfg: &OracleConfig,
) -> Result<Vec<Eigenpair>> {
    validate(cfg)?;
    if n_levels == 0 {
        return Err(Error::InvalidParams { reason: "n_levels must be at least 1".into() });
    }
    make_problem(&prob.spec)?; // re-check membership
    let (_, coarse) = build_matrix(prob, cfg, cfg.n_points);
    let (_, fine) = build_matrix(prob, cfg, 2 * cfg.n_points + 1);
    let lo1 = coarse.lowest(n_levels);
    let lo2 = fine.lowest(n_levels);
    let mut out = Vec::with_capacity(n_levels);
    for i in 0..n_levels {
        let extrap = lo2[i] + (lo2[i] - lo1[i]) / 3.0;
        let parity = if prob.spec.p < 0 { Parity::Even } else { Parity::for_level(i) };
        out.push(Eigenpair {
            n: i,
            parity,
            energy: extrap,
            provenance: Provenance::Oracle,
            err: (lo2[i] - lo1[i]).abs(),
        });
    }
    Ok(out)
}
