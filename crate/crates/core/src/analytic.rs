//! Closed-form spectra and eigenfunctions for the exactly solvable members.
//!
//! Everything here lives in dimensionless variables: energies are
//! `Ecal = 2 m0 d^2 E / hbar^2` and x is measured in units of d. The
//! transformed picture -phi'' + V(z) phi = Ecal phi on (-pi/2, pi/2),
//! z = arcsin(tanh x), is the workhorse: each solvable member reduces to a
//! classical equation there (trigonometric Poschl-Teller, hypergeometric,
//! or confluent Heun), and psi(x) = sech^(1/2)x phi(z(x)) carries the
//! result back.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{sech, Eigenpair, Parity, Provenance};
use crate::specfun::{
    gauss_2f1, heun_c_continue, heun_c_series, ConfluentHeunParams, Hypergeometric2F1Params,
};
use crate::transforms::x_to_z;

fn analytic_pair(n: usize, parity: Parity, energy: f64) -> Eigenpair {
    Eigenpair { n, parity, energy, provenance: Provenance::Analytic, err: 0.0 }
}

/// Reflectionless-member ladder at zero depth: `Ecal_n = n(n+1)`,
/// n = 1..=n_max, even parity for odd n.
///
/// The transformed potential is 1/2 + (3/4) tan^2 z, a trigonometric
/// Poschl-Teller well with lambda(lambda-1) = 3/4, i.e. lambda = 3/2, whose
/// levels are 1/2 + (k + 3/2)^2 - 1/4 = (k+1)(k+2); relabeling n = k+1
/// starts the ladder at 2. The would-be n = 0 solution is tanh x, which
/// tends to +/-1 and is not normalizable, so the ladder begins at n = 1
/// (see [`diagnostics::second_solution_00`] for why no even partner exists
/// below it).
pub fn spectrum_00(n_max: usize) -> Vec<Eigenpair> {
    (1..=n_max)
        .map(|n| analytic_pair(n - 1, Parity::for_level(n - 1), (n * (n + 1)) as f64))
        .collect()
}

/// Unnormalized closed-form eigenfunction for the reflectionless member.
///
/// Odd n (even states):  psi_n = 2F1(n/2, -(n+1)/2; 1/2; tanh^2 x)
/// Even n (odd states):  psi_n = tanh x 2F1((n+1)/2, -n/2; 3/2; tanh^2 x)
///
/// One upper parameter is a nonpositive integer, so both series terminate:
/// n = 1 gives 1 - tanh^2 = sech^2 x, n = 2 gives tanh x sech^2 x, and so
/// on up the ladder.
pub fn eigenfunction_00(n: usize, x: f64) -> f64 {
    assert!(n >= 1, "ladder starts at n = 1");
    let t = x.tanh();
    let xi = t * t;
    if n % 2 == 1 {
        let p = Hypergeometric2F1Params::new(n as f64 / 2.0, -((n + 1) as f64) / 2.0, 0.5)
            .expect("valid lower parameter");
        gauss_2f1(&p, xi).expect("terminating series")
    } else {
        let p = Hypergeometric2F1Params::new((n + 1) as f64 / 2.0, -(n as f64) / 2.0, 1.5)
            .expect("valid lower parameter");
        t * gauss_2f1(&p, xi).expect("terminating series")
    }
}

/// Half-line member spectrum: `Ecal_n = 4 (n+1) (n+1+w)`, w = sqrt(1/4 - V0),
/// for n = 0..=n_max.
///
/// In z the potential splits into two inverse-square arms,
///   V(z) = (-V0)/sin^2 z + (3/4)/cos^2 z + V0 - 1/4,
/// a Poschl-Teller pair with indicial roots mu = 1/2 + w at the origin and
/// nu = 3/2 at the wall. Its exact levels are (2n + mu + nu)^2 shifted by
/// the constant: (2n + 2 + w)^2 - w^2 = 4(n+1)(n+1+w). Depths beyond 1/4
/// drive w imaginary (fall to the center) and are rejected.
pub fn spectrum_m20(vcal0: f64, n_max: usize) -> Result<Vec<Eigenpair>> {
    if vcal0 > 0.25 {
        return Err(Error::ComplexSpectrum { vcal0 });
    }
    let w = (0.25 - vcal0).sqrt();
    Ok((0..=n_max)
        .map(|n| {
            let k = (n + 1) as f64;
            // half-line problem: the density is built symmetric, so every
            // level is labeled even
            analytic_pair(n, Parity::Even, 4.0 * k * (k + w))
        })
        .collect())
}

/// Indicial and hypergeometric data for the regular branch of the half-line
/// member: psi = |tanh x|^mu sech^2 x 2F1(a, b; c; tanh^2 x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchParams {
    /// Origin exponent mu = 1/2 + w.
    pub mu: f64,
    /// Wall exponent (universal 3/2).
    pub nu: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl BranchParams {
    /// Branch data at an arbitrary trial energy. With s = sqrt(Ecal + w^2)
    /// the hypergeometric indices are a = (2 + w - s)/2, b = (2 + w + s)/2,
    /// c = 1 + w; at the exact levels s = 2n + 2 + w, so a = -n and the
    /// series terminates.
    pub fn new(vcal0: f64, ecal: f64) -> Result<Self> {
        if vcal0 > 0.25 {
            return Err(Error::ComplexSpectrum { vcal0 });
        }
        let w = (0.25 - vcal0).sqrt();
        let s2 = ecal + w * w;
        if s2 < 0.0 {
            return Err(Error::InvalidParams {
                reason: format!("trial energy {ecal} makes the index sqrt({s2}) imaginary"),
            });
        }
        let s = s2.sqrt();
        Ok(BranchParams {
            mu: 0.5 + w,
            nu: 1.5,
            a: (2.0 + w - s) / 2.0,
            b: (2.0 + w + s) / 2.0,
            c: 1.0 + w,
        })
    }

    /// Branch data at the exact n-th level, with `a = -n` by construction.
    pub fn for_level(vcal0: f64, n: usize) -> Result<Self> {
        if vcal0 > 0.25 {
            return Err(Error::ComplexSpectrum { vcal0 });
        }
        let w = (0.25 - vcal0).sqrt();
        Ok(BranchParams {
            mu: 0.5 + w,
            nu: 1.5,
            a: -(n as f64),
            b: n as f64 + 2.0 + w,
            c: 1.0 + w,
        })
    }
}

/// Closed-form eigenfunction of the half-line member at level `n`,
/// extended evenly through the origin (the inverse-square core splits the
/// line into independent halves; the even extension matches the symmetric
/// densities, and the odd one carries the same spectrum). Unnormalized.
pub fn eigenfunction_m20(branch: &BranchParams, n: usize, x: f64) -> Result<f64> {
    if !(branch.c >= 1.0 && branch.mu >= 0.5) {
        return Err(Error::InvalidParams {
            reason: format!("branch (mu={}, c={}) carries an imaginary index", branch.mu, branch.c),
        });
    }
    if (branch.a + n as f64).abs() > 1e-9 {
        return Err(Error::InvalidParams {
            reason: format!("branch a={} does not terminate at level {n}", branch.a),
        });
    }
    let t = x.tanh().abs();
    if t == 0.0 {
        return Ok(0.0); // mu > 0 forces a zero at the origin
    }
    let p = Hypergeometric2F1Params::new(branch.a, branch.b, branch.c)?;
    let f = gauss_2f1(&p, t * t)?;
    let s = sech(x);
    Ok(t.powf(branch.mu) * s * s * f)
}

/// Spectrum of the depth-3/4 special case of the (2,0) member, where the
/// transformed potential collapses to the constant 1/2: a particle in a box
/// of width pi, `Ecal_m = m^2 + 1/2` for m = 1..=n_max.
pub fn spectrum_20_special(n_max: usize) -> Vec<Eigenpair> {
    (1..=n_max)
        .map(|m| analytic_pair(m - 1, Parity::for_level(m - 1), (m * m) as f64 + 0.5))
        .collect()
}

/// Normalized eigenfunction for the depth-3/4 special case:
/// psi_m = sqrt(2/pi) sech^(1/2)x cos(m z) for odd m (even states) and
/// sin(m z) for even m, with z = arcsin(tanh x). The angle map preserves
/// the norm, so the box normalization sqrt(2/pi) carries over to x space.
pub fn eigenfunction_20_special(m: usize, x: f64) -> f64 {
    assert!(m >= 1, "box levels start at m = 1");
    let z = x_to_z(x).value();
    let trig = if m % 2 == 1 { (m as f64 * z).cos() } else { (m as f64 * z).sin() };
    (2.0 / PI).sqrt() * sech(x).sqrt() * trig
}

/// Closed-form wavefunction of the asymmetric member at trial energy
/// `ecal`, in terms of u = (1 + tanh x)/2. Unnormalized; decays like u as
/// x -> -infinity and is a bound state exactly when `ecal` is quantized.
///
/// Derivation: in u the dimensionless equation collapses to
///   u(1-u) psi'' + [Ecal + V0 (2u-1)] psi = 0,
/// whose origin exponents are 0 and 1; the decaying branch is psi = u H(u)
/// with H regular, H(0) = 1. Partial fractions give
///   H'' + (2/u) H' + [(Ecal - V0)/u + (Ecal + V0)/(1-u)] H = 0,
/// the confluent-Heun normal form with alpha = 0, beta = 1, gamma = -1 and
/// singular-part coefficients mu = Ecal - V0, nu = -(Ecal + V0); solving
/// mu = (alpha - beta - gamma + alpha beta - beta gamma)/2 - eta and
/// nu = (alpha + beta + gamma + alpha gamma + beta gamma)/2 + delta + eta
/// for the canonical parameters yields delta = -2 V0 and
/// eta = 1/2 + V0 - Ecal.
pub fn eigenfunction_11(vcal0: f64, ecal: f64, x: f64) -> Result<f64> {
    let u = 0.5 + 0.5 * x.tanh();
    if u <= 0.0 {
        return Ok(0.0);
    }
    if u >= 1.0 - 1e-8 {
        // inside 1e-8 of the far singular point the bound state has decayed
        // below ~1e-7 of its peak; the series representation ends at its
        // radius, so report the tail as zero rather than extrapolate
        return Ok(0.0);
    }
    let params = ConfluentHeunParams::new(0.0, 1.0, -1.0, -2.0 * vcal0, 0.5 + vcal0 - ecal)?;
    let h = if u <= 0.45 { heun_c_series(&params, u)? } else { heun_c_continue(&params, u)?.0 };
    Ok(u * h)
}

/// Closed-form wavefunction of the sech^2 member (0,2) at trial energy
/// `ecal`, split by parity. Unnormalized.
///
/// Substituting phi = cos^(3/2)z H(xi), xi = sin^2 z, into
/// -phi'' + [1/2 + (3/4) tan^2 z - V0 cos^2 z] phi = Ecal phi gives
///   H'' + ((1/2)/xi + 2/(xi-1)) H' + [A/xi + B/(xi-1)] H = 0
/// with A = (Ecal + V0)/4 - 1/2 and B = 1/2 - Ecal/4: a confluent Heun
/// equation with alpha = 0, beta = -1/2, gamma = 1, delta = V0/4,
/// eta = 1/2 - (Ecal + V0)/4 (these reproduce A and B through the standard
/// mu/nu combinations). The origin exponents in xi are 0 and 1/2; the even
/// family takes the regular branch, the odd family the xi^(1/2) one, whose
/// series is the same Hc with beta = +1/2. Back in x (sin z = tanh x):
///   even: psi = sech^2 x Hc(0, -1/2, 1, V0/4, eta; tanh^2 x)
///   odd:  psi = tanh x sech^2 x Hc(0, +1/2, 1, V0/4, eta; tanh^2 x).
pub fn eigenfunction_02(vcal0: f64, ecal: f64, parity: Parity, x: f64) -> Result<f64> {
    let t = x.tanh();
    let xi = t * t;
    if xi >= 1.0 - 1e-10 {
        return Ok(0.0); // bound-state tail below resolution
    }
    let beta = match parity {
        Parity::Even => -0.5,
        Parity::Odd => 0.5,
    };
    let params =
        ConfluentHeunParams::new(0.0, beta, 1.0, vcal0 / 4.0, 0.5 - (ecal + vcal0) / 4.0)?;
    let h = if xi <= 0.45 { heun_c_series(&params, xi)? } else { heun_c_continue(&params, xi)?.0 };
    let s = sech(x);
    Ok(match parity {
        Parity::Even => s * s * h,
        Parity::Odd => t * s * s * h,
    })
}

/// Companion solutions that are excluded from the physical spectra, kept
/// for inspection because each one documents a boundary-condition choice.
pub mod diagnostics {
    use super::*;

    /// The E = 0 companion of the reflectionless ladder. tanh x solves the
    /// equation but tends to +/-1 (not normalizable); the even continuation
    /// |tanh x| solves it on each half-line yet its derivative jumps by 2
    /// at the origin, so no even state exists below Ecal = 2.
    pub fn second_solution_00(x: f64) -> f64 {
        x.tanh().abs()
    }

    /// The mu_- = 1/2 - w branch of the half-line member. For repulsive
    /// cores (w > 1/2) it diverges at the origin; for weakly attractive
    /// ones (0 < V0 <= 1/4, so 0 <= w < 1/2) it stays square-integrable
    /// but its kinetic integrand ~ x^(2 mu_- - 2) is not, which is exactly
    /// the boundary condition that the regular mu_+ branch enforces.
    /// Unnormalized; x = 0 itself is rejected since the branch can blow up
    /// there.
    pub fn second_solution_m20(vcal0: f64, ecal: f64, x: f64) -> Result<f64> {
        if vcal0 > 0.25 {
            return Err(Error::ComplexSpectrum { vcal0 });
        }
        if x == 0.0 {
            return Err(Error::SingularPoint { p: -2, coordinate: "x" });
        }
        let w = (0.25 - vcal0).sqrt();
        let s2 = ecal + w * w;
        if s2 < 0.0 {
            return Err(Error::InvalidParams {
                reason: format!("trial energy {ecal} makes the index sqrt({s2}) imaginary"),
            });
        }
        let s = s2.sqrt();
        // swapping mu_+ -> mu_- shifts the hypergeometric data to
        // a' = (2 - w - s)/2, b' = (2 - w + s)/2, c' = 1 - w; when w is a
        // positive integer c' hits a pole of the 2F1 and the second
        // solution picks up logarithms — the parameter validation reports
        // that case as an error
        let p = Hypergeometric2F1Params::new((2.0 - w - s) / 2.0, (2.0 - w + s) / 2.0, 1.0 - w)?;
        let t = x.tanh().abs();
        let f = gauss_2f1(&p, t * t)?;
        let sch = sech(x);
        Ok(t.powf(0.5 - w) * sch * sch * f)
    }
}
