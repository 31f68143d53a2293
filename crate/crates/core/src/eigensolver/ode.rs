//! Adaptive Dormand–Prince 5(4) for the two-component first-order systems
//! behind both the z-space shooting and the Heun continuation. Fixed-size
//! state keeps the hot loop allocation-free.

/// Tolerances and budget for one integration run.
#[derive(Debug, Clone, Copy)]
pub(crate) struct StepOpts {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for StepOpts {
    fn default() -> Self {
        StepOpts { rtol: 1e-12, atol: 1e-14, max_steps: 1_000_000 }
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum OdeFailKind {
    StepUnderflow,
    NonFinite,
    MaxSteps,
}

impl OdeFailKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OdeFailKind::StepUnderflow => "step size underflow",
            OdeFailKind::NonFinite => "non-finite state",
            OdeFailKind::MaxSteps => "step budget exhausted",
        }
    }
}

/// Failure report carrying the last good state so callers can surface it.
#[derive(Debug, Clone, Copy)]
pub(crate) struct OdeFail {
    pub kind: OdeFailKind,
    pub t: f64,
    pub y: [f64; 2],
}

type S2 = [f64; 2];

#[inline]
fn axpy(a: f64, x: S2, y: S2) -> S2 {
    [a * x[0] + y[0], a * x[1] + y[1]]
}

/// Integrate y' = f(t, y) from t0 to t1 (either direction).
pub(crate) fn integrate2<F>(f: &F, t0: f64, t1: f64, y0: S2, opts: &StepOpts) -> Result<S2, OdeFail>
where
    F: Fn(f64, S2) -> S2,
{
    let span = t1 - t0;
    if span == 0.0 {
        return Ok(y0);
    }
    let dir = span.signum();
    let h_floor = 1e-14 * t0.abs().max(t1.abs()).max(1.0);

    let mut t = t0;
    let mut y = y0;
    let mut h = (span.abs() / 64.0).min(0.05).max(h_floor) * dir;
    let mut k1 = f(t, y); // FSAL slot

    for _ in 0..opts.max_steps {
        if (t1 - t) * dir <= 0.0 {
            return Ok(y);
        }
        if (t + h - t1) * dir > 0.0 {
            h = t1 - t;
        }

        // Dormand-Prince 5(4) tableau
        let k2 = f(t + 0.2 * h, axpy(h * 0.2, k1, y));
        let y3 = axpy(h * 3.0 / 40.0, k1, axpy(h * 9.0 / 40.0, k2, y));
        let k3 = f(t + 0.3 * h, y3);
        let y4 = axpy(
            h * 44.0 / 45.0,
            k1,
            axpy(h * (-56.0 / 15.0), k2, axpy(h * 32.0 / 9.0, k3, y)),
        );
        let k4 = f(t + 0.8 * h, y4);
        let y5 = axpy(
            h * 19372.0 / 6561.0,
            k1,
            axpy(
                h * (-25360.0 / 2187.0),
                k2,
                axpy(h * 64448.0 / 6561.0, k3, axpy(h * (-212.0 / 729.0), k4, y)),
            ),
        );
        let k5 = f(t + 8.0 / 9.0 * h, y5);
        let y6 = axpy(
            h * 9017.0 / 3168.0,
            k1,
            axpy(
                h * (-355.0 / 33.0),
                k2,
                axpy(
                    h * 46732.0 / 5247.0,
                    k3,
                    axpy(h * 49.0 / 176.0, k4, axpy(h * (-5103.0 / 18656.0), k5, y)),
                ),
            ),
        );
        let k6 = f(t + h, y6);
        // 5th-order solution (also the FSAL stage argument)
        let ynew = axpy(
            h * 35.0 / 384.0,
            k1,
            axpy(
                h * 500.0 / 1113.0,
                k3,
                axpy(
                    h * 125.0 / 192.0,
                    k4,
                    axpy(h * (-2187.0 / 6784.0), k5, axpy(h * 11.0 / 84.0, k6, y)),
                ),
            ),
        );
        let k7 = f(t + h, ynew);

        // embedded 4th-order error estimate
        let e = [
            h * (71.0 / 57600.0 * k1[0] - 71.0 / 16695.0 * k3[0] + 71.0 / 1920.0 * k4[0]
                - 17253.0 / 339200.0 * k5[0]
                + 22.0 / 525.0 * k6[0]
                - 1.0 / 40.0 * k7[0]),
            h * (71.0 / 57600.0 * k1[1] - 71.0 / 16695.0 * k3[1] + 71.0 / 1920.0 * k4[1]
                - 17253.0 / 339200.0 * k5[1]
                + 22.0 / 525.0 * k6[1]
                - 1.0 / 40.0 * k7[1]),
        ];
        let mut err = 0.0f64;
        for i in 0..2 {
            let sc = opts.atol + opts.rtol * y[i].abs().max(ynew[i].abs());
            err += (e[i] / sc) * (e[i] / sc);
        }
        err = (err / 2.0).sqrt();

        if !ynew[0].is_finite() || !ynew[1].is_finite() || !err.is_finite() {
            // halve and retry from the same point; give up at the floor
            h *= 0.5;
            if h.abs() < h_floor {
                return Err(OdeFail { kind: OdeFailKind::NonFinite, t, y });
            }
            k1 = f(t, y);
            continue;
        }

        if err <= 1.0 {
            t += h;
            y = ynew;
            k1 = k7; // first-same-as-last
        }
        let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h *= fac;
        if h.abs() < h_floor {
            return Err(OdeFail { kind: OdeFailKind::StepUnderflow, t, y });
        }
    }
    Err(OdeFail { kind: OdeFailKind::MaxSteps, t, y })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn harmonic_oscillator_full_period() {
        let f = |_t: f64, y: [f64; 2]| [y[1], -y[0]];
        let y = integrate2(&f, 0.0, 2.0 * std::f64::consts::PI, [1.0, 0.0], &StepOpts::default())
            .unwrap();
        assert_abs_diff_eq!(y[0], 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(y[1], 0.0, epsilon = 1e-10);
    }

    #[test]
    fn exponential_growth_and_backward_run() {
        let f = |_t: f64, y: [f64; 2]| [y[0], -y[1]];
        let y = integrate2(&f, 0.0, 3.0, [1.0, 1.0], &StepOpts::default()).unwrap();
        assert_relative_eq!(y[0], 3.0f64.exp(), max_relative = 1e-10);
        assert_relative_eq!(y[1], (-3.0f64).exp(), max_relative = 1e-9);
        // integrate back: recover initial data
        let back = integrate2(&f, 3.0, 0.0, y, &StepOpts::default()).unwrap();
        assert_relative_eq!(back[0], 1.0, max_relative = 1e-9);
        assert_relative_eq!(back[1], 1.0, max_relative = 1e-9);
    }

    #[test]
    fn airy_like_stiffening_coefficient() {
        // y'' = t y: compare two tolerance levels against each other
        let f = |t: f64, y: [f64; 2]| [y[1], t * y[0]];
        let tight = integrate2(&f, 0.0, 4.0, [1.0, 0.0], &StepOpts::default()).unwrap();
        let loose =
            integrate2(&f, 0.0, 4.0, [1.0, 0.0], &StepOpts { rtol: 1e-9, atol: 1e-12, max_steps: 100_000 })
                .unwrap();
        assert_relative_eq!(tight[0], loose[0], max_relative = 1e-7);
    }

    #[test]
    fn zero_span_is_identity() {
        let f = |_t: f64, y: [f64; 2]| [y[1], -y[0]];
        let y = integrate2(&f, 1.0, 1.0, [2.0, 3.0], &StepOpts::default()).unwrap();
        assert_eq!(y, [2.0, 3.0]);
    }
}
