//! Gauss hypergeometric function 2F1(a,b;c;xi) on the real interval [0,1),
//! plus its xi -> 1 limit.
//!
//! Strategy by region:
//! * a or b a non-positive integer: the series terminates — evaluate the
//!   polynomial anywhere in [0,1).
//! * xi <= 1/2: plain power series (geometric-rate convergence).
//! * xi > 1/2: connect to argument w = 1-xi. With m = c-a-b the standard
//!   linear-transformation formulas apply: the generic two-Gamma form for
//!   non-integer m, the log-series forms for integer m >= 0, and the Euler
//!   transform 2F1(a,b;c;xi) = w^(c-a-b) 2F1(c-a,c-b;c;xi) to lift negative
//!   integer m to the positive case.
//!
//! The limit at xi=1 is Gamma(c)Gamma(c-a-b)/(Gamma(c-a)Gamma(c-b)) when
//! c-a-b > 0; a pole of Gamma(c-a) or Gamma(c-b) drives the limit to zero,
//! which is exactly the Dirichlet quantization signal the analytic spectra
//! are built on.

use super::gamma::{digamma, gamma};
use crate::error::{Error, Result};

/// Parameters of 2F1(a, b; c; xi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hypergeometric2F1Params {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Hypergeometric2F1Params {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if is_nonpos_int(c) {
            return Err(Error::InvalidParams {
                reason: format!("2F1 undefined for c = {c} (non-positive integer)"),
            });
        }
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::InvalidParams { reason: "2F1 parameters must be finite".into() });
        }
        Ok(Self { a, b, c })
    }
}

/// Integer detection tolerance: quantized parameters emerge from closed-form
/// arithmetic and sit within a few ulp of the integer; 1e-12 separates them
/// cleanly from deliberately non-integer values.
fn is_nonpos_int(x: f64) -> bool {
    x <= 0.5 && (x - x.round()).abs() < 1e-12
}

const MAX_TERMS: usize = 3000;

/// Plain power series; caller guarantees convergence (|arg| <= 1/2 or
/// terminating numerator).
fn series(a: f64, b: f64, c: f64, xi: f64) -> Result<f64> {
    let mut sum = 1.0;
    let mut term = 1.0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * xi;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::ConvergenceFailure { max_terms: MAX_TERMS, last_term: term })
}

/// Terminating case: a (after a possible swap) is a non-positive integer.
fn polynomial(mut a: f64, mut b: f64, c: f64, xi: f64) -> f64 {
    // pick the parameter giving the shorter polynomial as the terminator
    if is_nonpos_int(b) && (!is_nonpos_int(a) || -b < -a) {
        std::mem::swap(&mut a, &mut b);
    }
    let n = (-a).round() as usize;
    let mut sum = 1.0;
    let mut term = 1.0;
    for k in 0..n {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * xi;
        sum += term;
    }
    sum
}

pub fn gauss_2f1(params: &Hypergeometric2F1Params, xi: f64) -> Result<f64> {
    let Hypergeometric2F1Params { a, b, c } = *params;
    if is_nonpos_int(c) {
        return Err(Error::InvalidParams {
            reason: format!("2F1 undefined for c = {c} (non-positive integer)"),
        });
    }
    // terminating series are polynomials and evaluate anywhere, including
    // xi = 1 (which tanh^2 x reaches in floating point by |x| ~ 20)
    if is_nonpos_int(a) || is_nonpos_int(b) {
        if !(xi.is_finite() && xi >= 0.0) {
            return Err(Error::OutOfRadius { xi, radius: 1.0 });
        }
        return Ok(polynomial(a, b, c, xi));
    }
    if !(0.0..1.0).contains(&xi) {
        return Err(Error::OutOfRadius { xi, radius: 1.0 });
    }
    if xi <= 0.5 {
        return series(a, b, c, xi);
    }

    let w = 1.0 - xi;
    let m = c - a - b;
    let mi = m.round();
    if (m - mi).abs() > 1e-7 {
        // generic connection (non-integer m)
        let t1 = if is_nonpos_int(c - a) || is_nonpos_int(c - b) {
            0.0 // 1/Gamma at a pole
        } else {
            gamma(c) * gamma(m) / (gamma(c - a) * gamma(c - b)) * series(a, b, 1.0 - m, w)?
        };
        let t2 = w.powf(m) * gamma(c) * gamma(-m) / (gamma(a) * gamma(b))
            * series(c - a, c - b, 1.0 + m, w)?;
        return Ok(t1 + t2);
    }
    let mi = mi as i64;
    if mi < 0 {
        // Euler transform lifts to the m > 0 integer case
        let lifted = gauss_2f1(&Hypergeometric2F1Params { a: c - a, b: c - b, c }, xi)?;
        return Ok(w.powf(m) * lifted);
    }
    let mm = mi as usize;
    let lw = w.ln();
    if mm == 0 {
        // logarithmic case c = a + b
        let pre = gamma(c) / (gamma(a) * gamma(b));
        let mut sum = 0.0;
        let (mut pa, mut pb, mut nfac2, mut wn) = (1.0, 1.0, 1.0, 1.0);
        for n in 0..MAX_TERMS {
            let nf = n as f64;
            let hn = 2.0 * digamma(nf + 1.0) - digamma(a + nf) - digamma(b + nf) - lw;
            let term = pa * pb / nfac2 * hn * wn;
            sum += term;
            if n > 3 && term.abs() < 1e-17 * sum.abs() {
                return Ok(pre * sum);
            }
            pa *= a + nf;
            pb *= b + nf;
            nfac2 *= (nf + 1.0) * (nf + 1.0);
            wn *= w;
        }
        return Err(Error::ConvergenceFailure { max_terms: MAX_TERMS, last_term: f64::NAN });
    }
    // integer m >= 1: finite prefix plus logarithmic tail
    let mf = mm as f64;
    let mut s1 = 0.0;
    let (mut pa, mut pb, mut nfac, mut p1m, mut wn) = (1.0, 1.0, 1.0, 1.0, 1.0);
    for n in 0..mm {
        let nf = n as f64;
        s1 += pa * pb / (nfac * p1m) * wn;
        pa *= a + nf;
        pb *= b + nf;
        nfac *= nf + 1.0;
        p1m *= 1.0 - mf + nf;
        wn *= w;
    }
    let t1 = gamma(mf) * gamma(c) / (gamma(a + mf) * gamma(b + mf)) * s1;

    let mut s2 = 0.0;
    let mut nmfac = 1.0;
    for k in 2..=mm {
        nmfac *= k as f64;
    }
    let (mut pam, mut pbm, mut nfac, mut wn) = (1.0, 1.0, 1.0, 1.0);
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let hn = lw - digamma(nf + 1.0) - digamma(nf + mf + 1.0)
            + digamma(a + mf + nf)
            + digamma(b + mf + nf);
        let term = pam * pbm / (nfac * nmfac) * hn * wn;
        s2 += term;
        if n > 3 && term.abs() < 1e-17 * s2.abs() {
            let sign = if mm % 2 == 0 { 1.0 } else { -1.0 };
            let t2 = -sign * gamma(c) / (gamma(a) * gamma(b)) * w.powi(mm as i32) * s2;
            return Ok(t1 + t2);
        }
        pam *= a + mf + nf;
        pbm *= b + mf + nf;
        nfac *= nf + 1.0;
        nmfac *= nf + mf + 1.0;
        wn *= w;
    }
    Err(Error::ConvergenceFailure { max_terms: MAX_TERMS, last_term: f64::NAN })
}

/// Limit of 2F1(a,b;c;xi) as xi -> 1^-.
///
/// Returns 0 when Gamma(c-a) or Gamma(c-b) sits at a pole — the vanishing
/// condition that quantizes the closed-form spectra.
pub fn gauss_2f1_limit_at_1(params: &Hypergeometric2F1Params) -> Result<f64> {
    let Hypergeometric2F1Params { a, b, c } = *params;
    let cab = c - a - b;
    if cab <= 0.0 {
        return Err(Error::DivergentLimit { cab });
    }
    if is_nonpos_int(c - a) || is_nonpos_int(c - b) {
        return Ok(0.0);
    }
    Ok(gamma(c) * gamma(cab) / (gamma(c - a) * gamma(c - b)))
}
