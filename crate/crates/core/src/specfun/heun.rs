//! Local solutions of the confluent and general Heun equations by Frobenius
//! series, with adaptive ODE continuation beyond the series' comfort zone.
//!
//! Confluent Heun convention used throughout (pinned by the ODE, not by any
//! library's argument order): Hc(alpha, beta, gamma, delta, eta; xi) is the
//! solution analytic at xi = 0 with Hc(0) = 1 of
//!
//! ```text
//! H'' + (alpha + (beta+1)/xi + (gamma+1)/(xi-1)) H' + (mu/xi + nu/(xi-1)) H = 0,
//! mu = (alpha - beta - gamma + alpha*beta - beta*gamma)/2 - eta,
//! nu = (alpha + beta + gamma + alpha*gamma + beta*gamma)/2 + delta + eta.
//! ```
//!
//! Regular singular points at 0 and 1, irregular at infinity; the series
//! about 0 has radius 1. The general Heun equation
//!
//! ```text
//! H'' + (gamma/y + delta/(y-1) + epsilon/(y-d)) H'
//!     + (alpha*beta*y - q) / (y(y-1)(y-d)) H = 0
//! ```
//!
//! is handled only through its exponent-zero local solutions at y = 0 and
//! y = 1, which is all the closed-form reductions need.

use crate::eigensolver::ode::{integrate2, OdeFail, StepOpts};
use crate::error::{Error, Result};

/// Parameters of Hc(alpha, beta, gamma, delta, eta; xi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfluentHeunParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub eta: f64,
}

impl ConfluentHeunParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64, eta: f64) -> Result<Self> {
        let p = Self { alpha, beta, gamma, delta, eta };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let b = self.beta;
        if b <= -0.5 && (b - b.round()).abs() < 1e-9 {
            return Err(Error::InvalidParams {
                reason: format!("confluent Heun series undefined for beta = {b} (negative integer)"),
            });
        }
        for v in [self.alpha, self.beta, self.gamma, self.delta, self.eta] {
            if !v.is_finite() {
                return Err(Error::InvalidParams { reason: "Heun parameters must be finite".into() });
            }
        }
        Ok(())
    }

    /// ODE residue coefficients (mu, nu) fixed by the parameter set.
    pub fn munu(&self) -> (f64, f64) {
        let Self { alpha: al, beta: be, gamma: ga, delta: de, eta } = *self;
        let mu = 0.5 * (al - be - ga + al * be - be * ga) - eta;
        let nu = 0.5 * (al + be + ga + al * ga + be * ga) + de + eta;
        (mu, nu)
    }
}

const HEUN_MAX_TERMS: usize = 10_000;

/// Frobenius series about 0 returning (H, H', H'').
fn heun_c_series_full(p: &ConfluentHeunParams, xi: f64) -> Result<[f64; 3]> {
    let (mu, nu) = p.munu();
    let (al, be, ga) = (p.alpha, p.beta, p.gamma);
    let (mut c_km1, mut c_k) = (0.0f64, 1.0f64);
    let (mut s, mut d1, mut d2) = (1.0f64, 0.0f64, 0.0f64);
    let mut xp = 1.0; // xi^k
    let mut xpm1 = 0.0; // xi^(k-1); the k = 0 slot is never read
    let mut small = 0;
    for k in 0..HEUN_MAX_TERMS {
        let kf = k as f64;
        // three-term recurrence from substituting sum c_k xi^k into the ODE
        let c_kp1 = (c_k * (kf * (kf - 1.0) + kf * (-al + be + ga + 2.0) - mu)
            + c_km1 * (al * (kf - 1.0) + mu + nu))
            / ((kf + 1.0) * (kf + be + 1.0));
        let term = c_kp1 * xp * xi;
        s += term;
        d1 += (kf + 1.0) * c_kp1 * xp;
        if k >= 1 {
            d2 += (kf + 1.0) * kf * c_kp1 * xpm1;
        }
        if term.abs() < 1e-16 * s.abs() {
            small += 1;
            if small >= 3 {
                return Ok([s, d1, d2]);
            }
        } else {
            small = 0;
        }
        c_km1 = c_k;
        c_k = c_kp1;
        xpm1 = xp;
        xp *= xi;
    }
    Err(Error::ConvergenceFailure { max_terms: HEUN_MAX_TERMS, last_term: c_k * xp })
}

/// Local solution Hc(...; xi) about xi = 0, normalized to 1.
pub fn heun_c_series(params: &ConfluentHeunParams, xi: f64) -> Result<f64> {
    Ok(heun_c_series_jet(params, xi)?[0])
}

/// Series solution together with its first two derivatives, `[H, H', H'']`,
/// for residual checks against the defining ODE.
pub fn heun_c_series_jet(params: &ConfluentHeunParams, xi: f64) -> Result<[f64; 3]> {
    params.validate()?;
    if !(0.0..1.0).contains(&xi) {
        return Err(Error::OutOfRadius { xi, radius: 1.0 });
    }
    heun_c_series_full(params, xi)
}

/// Value and first derivative via series plus adaptive continuation of the
/// defining ODE from the matching point 0.45 (safely inside the series
/// radius, safely away from the xi = 1 singularity).
pub fn heun_c_continue(params: &ConfluentHeunParams, xi_target: f64) -> Result<(f64, f64)> {
    params.validate()?;
    if !(0.0..1.0).contains(&xi_target) {
        return Err(Error::OutOfRadius { xi: xi_target, radius: 1.0 });
    }
    const MATCH: f64 = 0.45;
    if xi_target <= MATCH {
        let v = heun_c_series_full(params, xi_target)?;
        return Ok((v[0], v[1]));
    }
    let start = heun_c_series_full(params, MATCH)?;
    let (mu, nu) = params.munu();
    let (al, be, ga) = (params.alpha, params.beta, params.gamma);
    let rhs = move |x: f64, y: [f64; 2]| {
        [
            y[1],
            -(al + (be + 1.0) / x + (ga + 1.0) / (x - 1.0)) * y[1]
                - (mu / x + nu / (x - 1.0)) * y[0],
        ]
    };
    let opts = StepOpts { rtol: 1e-12, atol: 1e-14, max_steps: 200_000 };
    match integrate2(&rhs, MATCH, xi_target, [start[0], start[1]], &opts) {
        Ok(y) => Ok((y[0], y[1])),
        Err(OdeFail { kind, t, y }) => Err(Error::ContinuationFailure {
            last_xi: t,
            target: xi_target,
            value: y[0],
            derivative: y[1],
            reason: kind.as_str(),
        }),
    }
}

/// Parameters of the general Heun equation (singularities 0, 1, d_sing;
/// accessory parameter q_acc).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralHeunParams {
    pub d_sing: f64,
    pub q_acc: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub epsilon: f64,
}

impl GeneralHeunParams {
    pub fn new(
        d_sing: f64,
        q_acc: f64,
        alpha: f64,
        beta: f64,
        gamma: f64,
        delta: f64,
        epsilon: f64,
    ) -> Result<Self> {
        let p = Self { d_sing, q_acc, alpha, beta, gamma, delta, epsilon };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let fuchs = self.alpha + self.beta + 1.0 - self.gamma - self.delta - self.epsilon;
        if fuchs.abs() > 1e-12 {
            return Err(Error::InvalidParams {
                reason: format!("fuchsian relation alpha+beta+1 = gamma+delta+epsilon violated by {fuchs:e}"),
            });
        }
        if self.d_sing == 0.0 || self.d_sing == 1.0 {
            return Err(Error::InvalidParams {
                reason: "general Heun singularity d must differ from 0 and 1".into(),
            });
        }
        Ok(())
    }

    /// Parameter set seen from y = 1 (substitution y -> 1-y): singularities
    /// move to {1, 0, 1-d}, gamma and delta trade places, and the accessory
    /// parameter becomes alpha*beta - q. Epsilon is untouched (fuchsian sum
    /// is symmetric in the swap).
    fn from_point_one(&self) -> Self {
        Self {
            d_sing: 1.0 - self.d_sing,
            q_acc: self.alpha * self.beta - self.q_acc,
            alpha: self.alpha,
            beta: self.beta,
            gamma: self.delta,
            delta: self.gamma,
            epsilon: self.epsilon,
        }
    }
}

/// Exponent-zero Frobenius solution about y = 0 (`around = 0`) or y = 1
/// (`around = 1`), evaluated at local coordinate t (= y, resp. 1 - y),
/// normalized to 1 at the expansion point.
pub fn heun_general_local(params: &GeneralHeunParams, around: u8, t: f64) -> Result<f64> {
    params.validate()?;
    let p = match around {
        0 => *params,
        1 => params.from_point_one(),
        _ => {
            return Err(Error::InvalidParams {
                reason: format!("expansion point must be 0 or 1, got {around}"),
            })
        }
    };
    let radius = p.d_sing.abs().min(1.0);
    if t < 0.0 || t >= radius {
        return Err(Error::OutOfRadius { xi: t, radius });
    }
    if p.gamma <= 0.5 && (p.gamma - p.gamma.round()).abs() < 1e-9 {
        return Err(Error::InvalidParams {
            reason: format!(
                "exponent-zero series about this point needs gamma not a non-positive integer (gamma = {})",
                p.gamma
            ),
        });
    }
    let GeneralHeunParams { d_sing: d, q_acc: q, alpha: al, beta: be, gamma: ga, delta: de, epsilon: ep } = p;
    let (mut c_km1, mut c_k) = (0.0f64, 1.0f64);
    let mut s = 1.0;
    let mut tp = 1.0; // t^k
    let mut small = 0;
    for k in 0..HEUN_MAX_TERMS {
        let kf = k as f64;
        let num = c_k * ((1.0 + d) * kf * (kf - 1.0) + (ga * (1.0 + d) + de * d + ep) * kf + q)
            - c_km1 * (kf - 1.0 + al) * (kf - 1.0 + be);
        let c_kp1 = num / (d * (kf + 1.0) * (kf + ga));
        let term = c_kp1 * tp * t;
        s += term;
        if term.abs() < 1e-16 * s.abs() {
            small += 1;
            if small >= 3 {
                return Ok(s);
            }
        } else {
            small = 0;
        }
        c_km1 = c_k;
        c_k = c_kp1;
        tp *= t;
    }
    Err(Error::ConvergenceFailure { max_terms: HEUN_MAX_TERMS, last_term: c_k * tp })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::hyp2f1::{gauss_2f1, Hypergeometric2F1Params};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn chc(al: f64, be: f64, ga: f64, de: f64, eta: f64) -> ConfluentHeunParams {
        ConfluentHeunParams::new(al, be, ga, de, eta).unwrap()
    }

    #[test]
    fn normalized_at_origin() {
        let p = chc(0.0, -0.5, 1.0, 0.25, -0.3);
        assert_eq!(heun_c_series(&p, 0.0).unwrap(), 1.0);
        // initial slope from the indicial relation: (beta+1) H'(0) + mu H(0) = 0
        let (mu, _) = p.munu();
        let h = 1e-6;
        let d = (heun_c_series(&p, h).unwrap() - 1.0) / h;
        assert_abs_diff_eq!(d, -mu / (p.beta + 1.0), epsilon = 1e-5);
    }

    #[test]
    fn series_satisfies_defining_ode() {
        // residual of the ODE with all derivatives taken termwise
        let cases = [
            chc(0.0, -0.5, 1.0, 1.0 / 128.0, 0.5 - (1.975 + 1.0 / 32.0) / 4.0),
            chc(0.0, 0.5, 1.0, -12.5, 0.5 - (26.0 - 50.0) / 4.0),
            chc(-(50.0f64).sqrt(), -0.5, 1.0, 0.0, 0.5 - 6.46 / 4.0),
            chc(0.0, 1.0, -1.0, -2.0, 0.5 + 1.0 - 1.95),
        ];
        for p in cases {
            let (mu, nu) = p.munu();
            let mut hmax = 0.0f64;
            let mut rmax = 0.0f64;
            for i in 1..=40 {
                let xi = 0.4 * (i as f64) / 40.0;
                let [h, d1, d2] = super::heun_c_series_full(&p, xi).unwrap();
                let resid = d2
                    + (p.alpha + (p.beta + 1.0) / xi + (p.gamma + 1.0) / (xi - 1.0)) * d1
                    + (mu / xi + nu / (xi - 1.0)) * h;
                hmax = hmax.max(h.abs());
                rmax = rmax.max(resid.abs());
            }
            assert!(rmax < 1e-9 * hmax, "residual {rmax:e} vs scale {hmax:e}");
        }
    }

    #[test]
    fn continuation_consistent_with_series() {
        let p = chc(0.0, -0.5, 1.0, 0.0078125, -0.0048);
        let (v, _) = heun_c_continue(&p, 0.5).unwrap();
        // pure series still converges comfortably at 0.5
        assert_relative_eq!(v, heun_c_series(&p, 0.5).unwrap(), max_relative = 1e-10);
        // derivative against central difference of continued values
        let h = 1e-6;
        let (_, dv) = heun_c_continue(&p, 0.7).unwrap();
        let (vp, _) = heun_c_continue(&p, 0.7 + h).unwrap();
        let (vm, _) = heun_c_continue(&p, 0.7 - h).unwrap();
        assert_abs_diff_eq!(dv, (vp - vm) / (2.0 * h), epsilon = 1e-7);
    }

    #[test]
    fn wronskian_follows_abel_identity() {
        // two numerical solutions launched at xi0 with independent data; their
        // Wronskian must track exp(-alpha(xi-xi0)) (xi/xi0)^-(beta+1)
        // ((1-xi)/(1-xi0))^-(gamma+1)
        let mut rng = StdRng::seed_from_u64(0xabe1);
        for _ in 0..12 {
            let al: f64 = rng.gen_range(-2.0..2.0);
            let be: f64 = rng.gen_range(-0.9..2.0);
            let ga: f64 = rng.gen_range(-2.0..2.0);
            let de: f64 = rng.gen_range(-3.0..3.0);
            let eta: f64 = rng.gen_range(-3.0..3.0);
            let p = chc(al, be, ga, de, eta);
            let (mu, nu) = p.munu();
            let rhs = |x: f64, y: [f64; 2]| {
                [
                    y[1],
                    -(al + (be + 1.0) / x + (ga + 1.0) / (x - 1.0)) * y[1]
                        - (mu / x + nu / (x - 1.0)) * y[0],
                ]
            };
            let xi0 = 0.3;
            let opts = StepOpts::default();
            for xi in [0.5, 0.7, 0.9] {
                let y1 = integrate2(&rhs, xi0, xi, [1.0, 0.0], &opts).unwrap();
                let y2 = integrate2(&rhs, xi0, xi, [0.0, 1.0], &opts).unwrap();
                let w = y1[0] * y2[1] - y2[0] * y1[1];
                let w_expect = (-al * (xi - xi0)).exp()
                    * (xi / xi0).powf(-(be + 1.0))
                    * ((1.0 - xi) / (1.0 - xi0)).powf(-(ga + 1.0));
                assert_relative_eq!(w, w_expect, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn rejects_negative_integer_beta_and_bad_domain() {
        assert!(ConfluentHeunParams::new(0.0, -1.0, 1.0, 0.0, 0.0).is_err());
        assert!(ConfluentHeunParams::new(0.0, -2.0, 1.0, 0.0, 0.0).is_err());
        let p = chc(0.0, -0.5, 1.0, 0.0, 0.0);
        assert!(matches!(heun_c_series(&p, 1.0), Err(Error::OutOfRadius { .. })));
        assert!(matches!(heun_c_continue(&p, -0.1), Err(Error::OutOfRadius { .. })));
    }

    #[test]
    fn general_heun_reduces_to_2f1_for_box_levels() {
        // exponent-zero solution about y=1 versus the hypergeometric forms;
        // local coordinate t = 1-y, hypergeometric argument 1-(1-t)^2
        for (k2, even) in [(2.0f64, true), (6.0, false), (12.0, true)] {
            let rt = (1.0 + 4.0 * k2).sqrt();
            let (de, c2f1, a2f1, b2f1) = if even {
                (0.5, 0.5, (-1.0 + rt) / 4.0, (-1.0 - rt) / 4.0)
            } else {
                (1.5, 1.5, (1.0 + rt) / 4.0, (1.0 - rt) / 4.0)
            };
            let (al, be) = if even { ((-1.0 + rt) / 2.0, (-1.0 - rt) / 2.0) } else { ((1.0 + rt) / 2.0, (1.0 - rt) / 2.0) };
            let ep = al + be + 1.0 + 1.0 - de; // gamma = -1
            let p = GeneralHeunParams::new(-1.0, 0.0, al, be, -1.0, de, ep).unwrap();
            let f = Hypergeometric2F1Params { a: a2f1, b: b2f1, c: c2f1 };
            for i in 1..=8 {
                let t = 0.4 * (i as f64) / 8.0;
                let hval = heun_general_local(&p, 1, t).unwrap();
                let fval = gauss_2f1(&f, 1.0 - (1.0 - t) * (1.0 - t)).unwrap();
                assert_abs_diff_eq!(hval, fval, epsilon = 1e-10 * fval.abs().max(1.0));
            }
        }
    }

    #[test]
    fn general_heun_guards() {
        // fuchsian violation
        assert!(GeneralHeunParams::new(2.0, 0.0, 1.0, 1.0, 1.0, 1.0, 0.5).is_err());
        // expansion about 0 with gamma = -1 has no exponent-zero series
        let p = GeneralHeunParams::new(-1.0, 0.0, 1.0, -2.0, -1.0, 0.5, 0.5).unwrap();
        assert!(heun_general_local(&p, 0, 0.1).is_err());
        assert!(heun_general_local(&p, 2, 0.1).is_err());
        // t = 0 normalization through the around-1 route
        assert_eq!(heun_general_local(&p, 1, 0.0).unwrap(), 1.0);
    }
}
