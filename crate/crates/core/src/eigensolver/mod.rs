//! Shooting solver for the transformed problem, with matrix oracles for
//! independent certification.
//!
//! All integration happens in the angle variable z, where the equation is
//! the constant-mass form -phi'' + V(z) phi = E phi on (-pi/2, pi/2) with
//! Dirichlet walls. The wall behaviour is universal: the centrifugal
//! (3/4) tan^2 z term forces phi ~ (pi/2 - |z|)^{3/2}, so integrations stop
//! a distance `delta` short of the wall and the endpoint value of the
//! renormalized solution serves as the quantization residual. Segmented
//! renormalization keeps the state O(1) without changing the residual's
//! sign, which is all bisection needs.

pub(crate) mod ode;
pub(crate) mod oracle;
pub(crate) mod tridiag;

pub use oracle::{oracle_spectrum, OracleConfig, OracleScheme};

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::model::{sech, DimensionlessProblem, Eigenpair, Parity, Provenance, WavefunctionSamples};
use crate::transforms::{vz_raw, x_to_z};
use ode::{integrate2, StepOpts};

/// Controls for [`shoot_parity`], [`find_spectrum`] and
/// [`eigenfunction_numeric`].
#[derive(Debug, Clone, Copy)]
pub struct ShootingConfig {
    /// Wall offset in z: integrations run to pi/2 - delta.
    pub delta: f64,
    /// Adaptive-step budget per integration segment.
    pub grid_n: usize,
    /// Energy scan window; `e_min == e_max` (the default) selects an
    /// automatic window that is widened until enough levels appear.
    pub e_min: f64,
    pub e_max: f64,
    /// Scan resolution; 0 means 1e-3 of the window span.
    pub scan_step: f64,
    /// Bisection width target on the dimensionless energy.
    pub tol: f64,
}

impl Default for ShootingConfig {
    fn default() -> Self {
        ShootingConfig {
            delta: 1e-6,
            grid_n: 20_000,
            e_min: 0.0,
            e_max: 0.0,
            scan_step: 0.0,
            tol: 1e-10,
        }
    }
}

impl ShootingConfig {
    fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta < 1e-2) {
            return Err(Error::InvalidParams {
                reason: format!("wall offset delta must lie in (0, 1e-2), got {:e}", self.delta),
            });
        }
        if self.grid_n < 100 {
            return Err(Error::InvalidParams {
                reason: format!("step budget too small: {}", self.grid_n),
            });
        }
        if !(self.e_min.is_finite() && self.e_max.is_finite() && self.e_min <= self.e_max) {
            return Err(Error::InvalidParams {
                reason: format!("bad energy window [{}, {}]", self.e_min, self.e_max),
            });
        }
        if !(self.scan_step >= 0.0 && self.scan_step.is_finite()) {
            return Err(Error::InvalidParams {
                reason: format!("bad scan step {}", self.scan_step),
            });
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidParams { reason: format!("bad tolerance {:e}", self.tol) });
        }
        Ok(())
    }
}

/// Parameter regimes where the boundary-value problem itself degenerates.
fn guard_member(prob: &DimensionlessProblem) -> Result<()> {
    let (p, q, v0) = (prob.spec.p, prob.spec.q, prob.vcal0);
    if p == 2 && q == 0 && v0 > 0.75 {
        // V(z) = 1/2 + (3/4 - V0) tan^2 z: beyond depth 3/4 the walls turn
        // into supercritical attractive inverse-square tails and the
        // spectrum loses its bottom
        return Err(Error::InvalidParams {
            reason: format!(
                "member (2,0) is only self-adjoint up to depth 3/4; got {v0} (wall collapse)"
            ),
        });
    }
    if p == -2 && v0 > 0.25 {
        // -V0/tan^2 z core: attraction beyond the 1/4 bound makes the
        // origin supercritical (fall to the center)
        return Err(Error::SingularOrigin {
            detail: format!(
                "inverse-square core with depth {v0} exceeds the 1/4 stability bound"
            ),
        });
    }
    Ok(())
}

/// Splitting point between the smooth interior and the wall refinement.
const WALL_SPLIT: f64 = 1e-2;

/// Integration breakpoints from `z_from` to the wall: 20 uniform segments up
/// to pi/2 - 1e-2, then 20 segments log-spaced in the wall gap down to
/// `delta` (or uniformly to the exact wall for the one member whose
/// centrifugal term cancels identically).
fn wall_points(z_from: f64, delta: f64, exact_wall: bool) -> Vec<f64> {
    let zm = FRAC_PI_2 - WALL_SPLIT;
    let n_seg = 20;
    let mut pts = Vec::with_capacity(2 * n_seg + 1);
    for i in 0..=n_seg {
        pts.push(z_from + (zm - z_from) * i as f64 / n_seg as f64);
    }
    if exact_wall {
        for i in 1..=n_seg {
            pts.push(zm + WALL_SPLIT * i as f64 / n_seg as f64);
        }
        *pts.last_mut().unwrap() = FRAC_PI_2;
    } else {
        let (l0, l1) = (WALL_SPLIT.ln(), delta.ln());
        for i in 1..=n_seg {
            pts.push(FRAC_PI_2 - (l0 + (l1 - l0) * i as f64 / n_seg as f64).exp());
        }
    }
    pts
}

/// Integrate through consecutive breakpoints, renormalizing the state after
/// each segment. Rescaling by a positive factor preserves the sign of every
/// component, so the endpoint is still a valid quantization residual.
fn sweep_renorm(
    f: &impl Fn(f64, [f64; 2]) -> [f64; 2],
    pts: &[f64],
    mut y: [f64; 2],
    opts: &StepOpts,
    ecal: f64,
) -> Result<[f64; 2]> {
    for w in pts.windows(2) {
        y = integrate2(f, w[0], w[1], y, opts)
            .map_err(|fail| Error::NumericalOverflow { z: fail.t, ecal })?;
        let s = y[0].abs().max(y[1].abs());
        if !s.is_finite() {
            return Err(Error::NumericalOverflow { z: w[1], ecal });
        }
        if s > 0.0 {
            y[0] /= s;
            y[1] /= s;
        }
    }
    Ok(y)
}

/// Scale-invariant start vector for the half-line members at z0, from the
/// Frobenius expansion about the inverse-square origin.
///
/// With V(z) = -V0/tan^2 z + (1/2 + 2 V0/3) + O(z^2) near zero, inserting
/// phi = z^mu (1 + a2 z^2) into -phi'' + V phi = E phi gives, order by
/// order:
///   z^(mu-2):  mu(mu - 1) = -V0, so mu = 1/2 + sqrt(1/4 - V0) (regular root)
///   z^mu:      a2 (mu+2)(mu+1) = -V0 a2 + c0  with c0 = 1/2 + 2 V0/3 - E,
/// and since mu^2 + V0 = mu the bracket collapses to a2 = c0 / (4 mu + 2).
/// Returning [1, phi'/phi] normalized avoids the z0^mu underflow for deep
/// repulsive cores.
fn frobenius_ray(v0: f64, ecal: f64, z0: f64) -> [f64; 2] {
    let w = (0.25 - v0).sqrt();
    let mu = 0.5 + w;
    let c0 = 0.5 + 2.0 * v0 / 3.0 - ecal;
    let a2 = c0 / (4.0 * mu + 2.0);
    let ratio = mu / z0 + 2.0 * a2 * z0 / (1.0 + a2 * z0 * z0);
    let s = ratio.abs().max(1.0);
    [1.0 / s, ratio / s]
}

/// Quantization residual at trial energy `ecal`.
///
/// * Symmetric members launch from the midpoint with the parity's initial
///   data ([1,0] even, [0,1] odd) and return the renormalized wall value.
/// * The asymmetric member (1,1) ignores `parity` and returns the Wronskian
///   at z = 0 of the two wall-regular solutions: it vanishes exactly when
///   they are proportional, i.e. at eigenvalues of either node count.
/// * The half-line members p < 0 ignore `parity` (their densities are
///   symmetric by construction) and launch from the Frobenius ray at
///   z = delta.
///
/// The residual is continuous in `ecal` and changes sign at each simple
/// eigenvalue, which is what the scan-and-bisect driver relies on.
pub fn shoot_parity(
    prob: &DimensionlessProblem,
    ecal: f64,
    parity: Parity,
    cfg: &ShootingConfig,
) -> Result<f64> {
    cfg.validate()?;
    guard_member(prob)?;
    let (p, q, v0) = (prob.spec.p, prob.spec.q, prob.vcal0);
    let f = |z: f64, y: [f64; 2]| [y[1], (vz_raw(p, q, v0, z) - ecal) * y[0]];
    let opts = StepOpts { rtol: 1e-11, atol: 1e-14, max_steps: cfg.grid_n.max(1000) };
    match (p, q) {
        (1, 1) => {
            let right = wall_points(0.0, cfg.delta, false);
            // mirror the breakpoint ladder to the left wall
            let left: Vec<f64> = right.iter().rev().map(|&z| -z).collect();
            let yl = sweep_renorm(&f, &left, [0.0, 1.0], &opts, ecal)?;
            let right_in: Vec<f64> = right.iter().rev().copied().collect();
            let yr = sweep_renorm(&f, &right_in, [0.0, -1.0], &opts, ecal)?;
            Ok(yl[0] * yr[1] - yr[0] * yl[1])
        }
        (-2, 0) => {
            let y0 = frobenius_ray(v0, ecal, cfg.delta);
            let pts = wall_points(cfg.delta, cfg.delta, false);
            Ok(sweep_renorm(&f, &pts, y0, &opts, ecal)?[0])
        }
        _ => {
            let exact_wall = p == 2 && q == 0 && v0 == 0.75;
            let pts = wall_points(0.0, cfg.delta, exact_wall);
            let y0 = match parity {
                Parity::Even => [1.0, 0.0],
                Parity::Odd => [0.0, 1.0],
            };
            Ok(sweep_renorm(&f, &pts, y0, &opts, ecal)?[0])
        }
    }
}

fn is_two_channel(prob: &DimensionlessProblem) -> bool {
    prob.spec.p >= 0 && prob.spec.p != 1
}

/// Automatic scan window: from just below the minimum of the transformed
/// potential (the half-line members are bounded below by 0) up to a span
/// generous enough for the requested level count; `find_spectrum` doubles
/// the span if levels are missing.
fn auto_window(prob: &DimensionlessProblem, n_levels: usize) -> (f64, f64) {
    let lo = if prob.spec.p < 0 {
        0.0
    } else {
        let mut vmin = f64::INFINITY;
        let n = 4001;
        let zmax = FRAC_PI_2 - 1e-3;
        for i in 0..n {
            let z = -zmax + 2.0 * zmax * i as f64 / (n - 1) as f64;
            vmin = vmin.min(vz_raw(prob.spec.p, prob.spec.q, prob.vcal0, z));
        }
        vmin - 1.0
    };
    let span = 60.0f64.max(12.0 * n_levels as f64);
    (lo, lo + span)
}

fn bisect_level(
    prob: &DimensionlessProblem,
    ch: Parity,
    mut a: f64,
    mut b: f64,
    mut ra: f64,
    cfg: &ShootingConfig,
) -> Result<(f64, f64)> {
    for _ in 0..200 {
        if b - a <= cfg.tol {
            break;
        }
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let rm = shoot_parity(prob, m, ch, cfg)?;
        if rm == 0.0 {
            return Ok((m, 0.0));
        }
        if rm.signum() == ra.signum() {
            a = m;
            ra = rm;
        } else {
            b = m;
        }
    }
    Ok((0.5 * (a + b), 0.5 * (b - a)))
}

fn collect_roots(
    prob: &DimensionlessProblem,
    lo: f64,
    hi: f64,
    step: f64,
    cfg: &ShootingConfig,
) -> Result<Vec<Eigenpair>> {
    let channels: &[Parity] = if is_two_channel(prob) {
        &[Parity::Even, Parity::Odd]
    } else {
        &[Parity::Even] // the parity argument is ignored by these members
    };
    let mut roots: Vec<(f64, f64, Parity)> = Vec::new();
    for &ch in channels {
        let mut prev: Option<(f64, f64)> = None;
        let n_steps = ((hi - lo) / step).ceil() as usize;
        for k in 0..=n_steps {
            let e = (lo + step * k as f64).min(hi);
            let r = shoot_parity(prob, e, ch, cfg)?;
            if r == 0.0 {
                roots.push((e, 0.0, ch));
            } else if let Some((ep, rp)) = prev {
                if rp != 0.0 && rp.signum() != r.signum() {
                    let (root, half_width) = bisect_level(prob, ch, ep, e, rp, cfg)?;
                    roots.push((root, half_width, ch));
                }
            }
            prev = Some((e, r));
        }
    }
    roots.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(roots
        .into_iter()
        .enumerate()
        .map(|(i, (energy, err, ch))| {
            let parity = if prob.spec.p < 0 {
                Parity::Even
            } else if prob.spec.p == 1 {
                // single-channel member: labels follow node-count alternation
                Parity::for_level(i)
            } else {
                ch
            };
            Eigenpair { n: i, parity, energy, provenance: Provenance::Shooting, err }
        })
        .collect())
}

fn alternates(pairs: &[Eigenpair]) -> bool {
    pairs.iter().enumerate().all(|(i, p)| p.parity == Parity::for_level(i))
}

/// Lowest `n_levels` dimensionless eigenvalues by scan-and-bisect shooting.
///
/// Symmetric members are scanned per parity channel, which resolves the
/// near-degenerate doublets of deep double wells without any extra work:
/// the doublet partners live in different channels. After merging, the
/// parity sequence must alternate even/odd; a failure triggers one rescan
/// at a quarter of the step before giving up with `AnomalousOrdering`.
pub fn find_spectrum(
    prob: &DimensionlessProblem,
    n_levels: usize,
    cfg: &ShootingConfig,
) -> Result<Vec<Eigenpair>> {
    cfg.validate()?;
    guard_member(prob)?;
    if n_levels == 0 {
        return Err(Error::InvalidParams { reason: "n_levels must be at least 1".into() });
    }
    let auto = cfg.e_min == cfg.e_max;
    let (lo, mut hi) = if auto { auto_window(prob, n_levels) } else { (cfg.e_min, cfg.e_max) };
    let mut attempt = 0;
    loop {
        let step = if cfg.scan_step > 0.0 { cfg.scan_step } else { 1e-3 * (hi - lo) };
        let mut found = collect_roots(prob, lo, hi, step, cfg)?;
        if found.len() >= n_levels {
            found.truncate(n_levels);
            if is_two_channel(prob) && !alternates(&found) {
                let mut refined = collect_roots(prob, lo, hi, step / 4.0, cfg)?;
                refined.truncate(n_levels);
                if refined.len() < n_levels || !alternates(&refined) {
                    return Err(Error::AnomalousOrdering { found: refined });
                }
                found = refined;
            }
            return Ok(found);
        }
        if !auto || attempt >= 20 {
            return Err(Error::IncompleteSpectrum { requested: n_levels, found });
        }
        attempt += 1;
        hi = lo + 2.0 * (hi - lo);
    }
}

const SAMPLE_XMAX: f64 = 12.0;
const SAMPLE_N: usize = 6001;

/// Count strict sign changes, ignoring samples below a relative floor so
/// the exponentially small tails cannot contribute spurious crossings.
fn count_nodes(vals: &[f64]) -> usize {
    let mx = vals.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    let thr = 1e-8 * mx;
    let mut count = 0;
    let mut last = 0.0f64;
    for &v in vals {
        if v.abs() <= thr {
            continue;
        }
        if last != 0.0 && v.signum() != last.signum() {
            count += 1;
        }
        last = v;
    }
    count
}

/// Sampled eigenfunction on the default grid (6001 points on [-12, 12]).
/// `pair` may come from any of the three solvers; only its energy, parity
/// and level index are used.
pub fn eigenfunction_numeric(
    prob: &DimensionlessProblem,
    pair: &Eigenpair,
    cfg: &ShootingConfig,
) -> Result<WavefunctionSamples> {
    eigenfunction_on_grid(prob, pair, cfg, SAMPLE_XMAX, SAMPLE_N)
}

/// Sampled eigenfunction on a caller-chosen symmetric grid.
///
/// The samples are normalized so the trapezoid rule on the returned grid
/// gives exactly unit probability; because the angle map preserves the
/// norm, the phi samples then integrate to one in z as well. The node
/// count must reproduce the level index or `QuantizationMisindex` is
/// returned (half-line members count nodes on the open half-line).
pub fn eigenfunction_on_grid(
    prob: &DimensionlessProblem,
    pair: &Eigenpair,
    cfg: &ShootingConfig,
    x_max: f64,
    n_samples: usize,
) -> Result<WavefunctionSamples> {
    cfg.validate()?;
    guard_member(prob)?;
    if !(x_max.is_finite() && x_max > 0.5) || n_samples < 16 {
        return Err(Error::InvalidParams {
            reason: format!("bad sampling grid: x_max={x_max}, n={n_samples}"),
        });
    }
    let n = if n_samples % 2 == 0 { n_samples + 1 } else { n_samples };
    let mid = (n - 1) / 2;
    let h = 2.0 * x_max / (n - 1) as f64;
    let grid_x: Vec<f64> = (0..n).map(|i| (i as f64 - mid as f64) * h).collect();
    let zpts: Vec<_> = grid_x.iter().map(|&x| x_to_z(x)).collect();
    let grid_z: Vec<f64> = zpts.iter().map(|zp| zp.value()).collect();

    let (p, q, v0) = (prob.spec.p, prob.spec.q, prob.vcal0);
    let ecal = pair.energy;
    let f = |z: f64, y: [f64; 2]| [y[1], (vz_raw(p, q, v0, z) - ecal) * y[0]];
    let opts = StepOpts { rtol: 1e-12, atol: 1e-15, max_steps: cfg.grid_n.max(1000) };
    let overflow = |z: f64| Error::NumericalOverflow { z, ecal };

    let mut phi = vec![0.0f64; n];
    match (p, q) {
        (-2, 0) => {
            // half-line solution, extended evenly; phi(0) = 0 since mu > 0
            let z0 = cfg.delta;
            let w = (0.25 - v0).sqrt();
            let mu = 0.5 + w;
            let c0 = 0.5 + 2.0 * v0 / 3.0 - ecal;
            let a2 = c0 / (4.0 * mu + 2.0);
            let mut y = frobenius_ray(v0, ecal, z0);
            let start_val = y[0];
            let mut cur = z0;
            for i in mid + 1..n {
                let zt = grid_z[i];
                if zt <= z0 {
                    // below the launch point the Frobenius series itself is
                    // the solution, scaled to match the launch ray
                    phi[i] = start_val
                        * (zt / z0).powf(mu)
                        * (1.0 + a2 * zt * zt)
                        / (1.0 + a2 * z0 * z0);
                    continue;
                }
                y = integrate2(&f, cur, zt, y, &opts).map_err(|fail| overflow(fail.t))?;
                cur = zt;
                if !(y[0].is_finite() && y[1].is_finite()) {
                    return Err(overflow(zt));
                }
                // deep repulsive cores grow phi by many orders of magnitude;
                // rescale everything recorded so far to stay inside f64
                if y[0].abs().max(y[1].abs()) > 1e200 {
                    y[0] *= 1e-200;
                    y[1] *= 1e-200;
                    for v in phi.iter_mut() {
                        *v *= 1e-200;
                    }
                }
                phi[i] = y[0];
            }
            for i in 0..mid {
                phi[i] = phi[n - 1 - i];
            }
        }
        (1, 1) => {
            // two one-sided sweeps from the walls, glued at the midpoint
            let ladder = wall_points(0.0, cfg.delta, false);
            let run = |targets: Vec<(f64, usize)>,
                       pts: Vec<f64>,
                       y0: [f64; 2]|
             -> Result<(Vec<(usize, f64)>, [f64; 2])> {
                // merge ladder breakpoints and sample targets along the
                // direction of travel, then integrate piecewise from the
                // wall anchor where y0 is imposed
                let anchor = pts[0];
                let inward = pts.last().copied().unwrap_or(0.0) > anchor;
                let mut way: Vec<(f64, Option<usize>)> =
                    pts.into_iter().map(|z| (z, None)).collect();
                way.extend(targets.into_iter().map(|(z, i)| (z, Some(i))));
                way.push((0.0, None));
                if inward {
                    way.sort_by(|a, b| a.0.total_cmp(&b.0));
                } else {
                    way.sort_by(|a, b| b.0.total_cmp(&a.0));
                }
                let mut out = Vec::new();
                let mut y = y0;
                let mut cur = anchor;
                for &(z, tag) in &way {
                    // targets outside the sweep start sit deeper in the wall
                    // than the integration reaches: their weight is below
                    // resolution, record zero
                    let beyond = if inward { z < cur } else { z > cur };
                    if beyond {
                        if let Some(i) = tag {
                            out.push((i, 0.0));
                        }
                        continue;
                    }
                    if z != cur {
                        y = integrate2(&f, cur, z, y, &opts).map_err(|fail| overflow(fail.t))?;
                        cur = z;
                    }
                    if !(y[0].is_finite() && y[1].is_finite()) {
                        return Err(overflow(z));
                    }
                    if let Some(i) = tag {
                        out.push((i, y[0]));
                    }
                }
                Ok((out, y))
            };

            let left_targets: Vec<(f64, usize)> =
                (0..mid).map(|i| (grid_z[i], i)).collect();
            let left_pts: Vec<f64> = ladder.iter().rev().map(|&z| -z).collect();
            let (left_vals, yl) = run(left_targets, left_pts, [0.0, 1.0])?;

            let right_targets: Vec<(f64, usize)> =
                (mid + 1..n).map(|i| (grid_z[i], i)).collect();
            let right_pts: Vec<f64> = ladder.iter().rev().copied().collect();
            let (right_vals, yr) = run(right_targets, right_pts, [0.0, -1.0])?;

            // glue: match values at z = 0, falling back to derivatives when
            // the state is odd-like and both midpoint values are negligible
            let max_l = left_vals.iter().fold(yl[0].abs(), |a, &(_, v)| a.max(v.abs()));
            let max_r = right_vals.iter().fold(yr[0].abs(), |a, &(_, v)| a.max(v.abs()));
            let scale = if yl[0].abs() > 1e-8 * max_l && yr[0].abs() > 1e-8 * max_r {
                yl[0] / yr[0]
            } else {
                yl[1] / yr[1]
            };
            for (i, v) in left_vals {
                phi[i] = v;
            }
            phi[mid] = yl[0];
            for (i, v) in right_vals {
                phi[i] = scale * v;
            }
        }
        _ => {
            let y0 = match pair.parity {
                Parity::Even => [1.0, 0.0],
                Parity::Odd => [0.0, 1.0],
            };
            let mut y = y0;
            let mut cur = 0.0;
            phi[mid] = y0[0];
            for i in mid + 1..n {
                let zt = grid_z[i];
                y = integrate2(&f, cur, zt, y, &opts).map_err(|fail| overflow(fail.t))?;
                cur = zt;
                if !(y[0].is_finite() && y[1].is_finite()) {
                    return Err(overflow(zt));
                }
                phi[i] = y[0];
            }
            let sigma = match pair.parity {
                Parity::Even => 1.0,
                Parity::Odd => -1.0,
            };
            for i in 0..mid {
                phi[i] = sigma * phi[n - 1 - i];
            }
        }
    }

    let mut psi: Vec<f64> =
        grid_x.iter().zip(&phi).map(|(&x, &ph)| sech(x).sqrt() * ph).collect();

    // trapezoid normalization in x; the angle map makes the phi samples
    // unit-normalized in z by the same constant
    let mut s: f64 = psi.iter().map(|v| v * v).sum();
    s -= 0.5 * (psi[0] * psi[0] + psi[n - 1] * psi[n - 1]);
    let integral = s * h;
    if !(integral.is_finite() && integral > 0.0) {
        return Err(overflow(grid_z[n - 1]));
    }
    let c = 1.0 / integral.sqrt();
    for v in psi.iter_mut() {
        *v *= c;
    }
    for v in phi.iter_mut() {
        *v *= c;
    }

    let counted =
        if p < 0 { count_nodes(&psi[mid + 1..]) } else { count_nodes(&psi) };
    if counted != pair.n {
        return Err(Error::QuantizationMisindex { level: pair.n, counted });
    }

    Ok(WavefunctionSamples { grid_x, grid_z, psi, phi, norm_const: c, nodes: counted })
}
