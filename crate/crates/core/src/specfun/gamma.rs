//! Gamma and digamma, the scaffolding under the hypergeometric connection
//! formulas. Lanczos approximation (g = 7, 9 terms), reflection for the
//! left half-line.
//!
//! Poles at non-positive integers are *not* special-cased here: `gamma`
//! returns a large finite garbage value there because `sin(pi*x)` never hits
//! an exact zero in floating point. Every caller detects integer parameters
//! with an explicit tolerance first and never evaluates at a pole.

use std::f64::consts::PI;

const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

pub(crate) fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let xm = x - 1.0;
    let mut acc = LANCZOS_COEF[0];
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (xm + i as f64);
    }
    let t = xm + 7.5;
    (2.0 * PI).sqrt() * t.powf(xm + 0.5) * (-t).exp() * acc
}

pub(crate) fn digamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection: psi(1-x) - psi(x) = pi cot(pi x)
        return digamma(1.0 - x) - PI / (PI * x).tan();
    }
    let mut x = x;
    let mut acc = 0.0;
    // recurrence psi(x) = psi(x+1) - 1/x until the asymptotic series is
    // safe: the first dropped term is 691/(32760 x^12), below 3e-15 once
    // x >= 12
    while x < 12.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    // psi(x) ~ ln x - 1/(2x) - 1/(12x^2) + 1/(120x^4) - 1/(252x^6) + ...
    let tail = inv2
        * (1.0 / 12.0
            - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 / 132.0))));
    acc + x.ln() - 0.5 * inv - tail
}
