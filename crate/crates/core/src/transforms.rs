//! Coordinate transform x <-> z and the constant-mass picture.
//!
//! Substituting `psi(x) = sech^(1/2)(x) phi(z)` with `z = arcsin(tanh x)`
//! turns the position-dependent-mass equation into a constant-mass
//! Schrödinger problem on the finite interval (-pi/2, pi/2):
//!
//! ```text
//! -phi'' + Vcal_{p,q}(z) phi = Ecal phi,      phi(+-pi/2) = 0,
//! Vcal_{p,q}(z) = 1/2 + (3/4) tan^2 z - Vcal0 tan^p(z) cos^q(z).
//! ```
//!
//! Useful identities: `dz/dx = cos z = sech x`, `sin z = tanh x`,
//! `tan z = sinh x`. The map preserves the L2 norm exactly:
//! `∫ psi^2 dx = ∫ phi^2 dz`.
//!
//! Numerically the delicate region is the wall `|z| -> pi/2`, where the
//! gap `g = pi/2 - |z|` shrinks like `sech x` (4e-9 at x = 20) while `z`
//! itself is stuck at resolution ~2e-16. [`ZPoint`] therefore carries the
//! gap as a second field, computed to full *relative* precision by
//! [`x_to_z`], so round trips and wall potentials do not lose digits to
//! cancellation.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::model::{sech, DimensionlessProblem};

/// User-constructed points must keep this distance from the walls: below it
/// the subtraction `pi/2 - |z|` in f64 has lost every meaningful digit.
pub const Z_WALL_MARGIN: f64 = 1e-8;

/// A point of the open interval (-pi/2, pi/2), stored together with its
/// distance to the nearest wall.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZPoint {
    z: f64,
    /// `pi/2 - |z|`, always positive; held to full relative precision when
    /// the point came from [`x_to_z`].
    gap: f64,
}

impl ZPoint {
    /// Construct from a raw coordinate. Rejects points on or beyond the
    /// walls and points inside the [`Z_WALL_MARGIN`] band, where the wall
    /// distance is no longer resolvable from `z` alone (map images from
    /// [`x_to_z`] may live inside the band because they carry an exact gap).
    pub fn new(z: f64) -> Result<Self> {
        if !z.is_finite() || z.abs() > FRAC_PI_2 - Z_WALL_MARGIN {
            return Err(Error::InvalidParams {
                reason: format!("z = {z} outside [-pi/2 + {Z_WALL_MARGIN:e}, pi/2 - {Z_WALL_MARGIN:e}]"),
            });
        }
        Ok(ZPoint { z, gap: FRAC_PI_2 - z.abs() })
    }

    pub fn value(&self) -> f64 {
        self.z
    }

    /// Distance to the nearest wall, `pi/2 - |z|`.
    pub fn wall_gap(&self) -> f64 {
        self.gap
    }
}

/// Image of x under `z = arcsin(tanh x)`; total on finite x.
pub fn x_to_z(x: f64) -> ZPoint {
    if x == 0.0 {
        return ZPoint { z: 0.0, gap: FRAC_PI_2 };
    }
    // gap = pi/2 - |z| = arcsin(sech x): small-gap-accurate since asin is
    // well conditioned near 0. Clamp keeps the point strictly interior even
    // when sech underflows (|x| > ~745).
    let gap = sech(x).asin().max(1e-300);
    let z = (FRAC_PI_2 - gap).copysign(x);
    ZPoint { z, gap }
}

/// Inverse map `x = arctanh(sin z)`, evaluated through the wall gap so that
/// large |x| survive the round trip: with g the gap,
/// `|x| = ln((1 + cos g)/ sin g)`, exact at both ends of the interval.
pub fn z_to_x(z: &ZPoint) -> f64 {
    if z.z == 0.0 {
        return 0.0;
    }
    let xa = ((1.0 + z.gap.cos()) / z.gap.sin()).ln();
    xa.copysign(z.z)
}

/// Shape of the effective z-space well.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WellShape {
    Single,
    Double,
    Triple,
    /// Attractive inverse-square funnel at z = 0 ((-2,0) with Vcal0 > 0).
    Funnel,
    /// Repulsive inverse-square core splitting the interval in two.
    InfiniteDouble,
}

impl WellShape {
    pub fn as_str(self) -> &'static str {
        match self {
            WellShape::Single => "single",
            WellShape::Double => "double",
            WellShape::Triple => "triple",
            WellShape::Funnel => "funnel",
            WellShape::InfiniteDouble => "infinite_double",
        }
    }
}

/// Effective z-space potential `Vcal_{p,q}(z)` for the problem's member.
pub fn effective_potential(prob: &DimensionlessProblem, z: &ZPoint) -> Result<f64> {
    if prob.spec.p < 0 && z.z == 0.0 {
        return Err(Error::SingularPoint { p: prob.spec.p, coordinate: "z" });
    }
    Ok(vz_from_gap(prob.spec.p, prob.spec.q, prob.vcal0, z.z.signum(), z.gap))
}

/// Core evaluation in terms of the wall gap g = pi/2 - |z|:
/// `cos z = sin g`, `|sin z| = cos g`, `tan^2 z = cos^2 g / sin^2 g`.
pub(crate) fn vz_from_gap(p: i32, q: i32, vcal0: f64, sign: f64, gap: f64) -> f64 {
    let sg = gap.sin(); // = cos z > 0
    let cg = gap.cos(); // = |sin z|
    let t2 = cg * cg / (sg * sg); // tan^2 z
    if p == 2 && q == 0 {
        // combine the two tan^2 terms analytically: at the self-adjointness
        // boundary Vcal0 = 3/4 they cancel exactly, and the combined form
        // stays finite (0.5) even at the wall itself, where t2 overflows
        let k = 0.75 - vcal0;
        return if k == 0.0 { 0.5 } else { 0.5 + k * t2 };
    }
    let centrifugal = 0.5 + 0.75 * t2;
    let well = match (p, q) {
        (0, 0) => 1.0,
        (0, 2) => sg * sg,
        (2, 4) => t2 * sg.powi(4),
        (-2, 0) => 1.0 / t2,
        (1, 1) => sign * cg, // tan z cos z = sin z
        _ => unreachable!("constructors only admit supported members"),
    };
    centrifugal - vcal0 * well
}

/// Same, for a raw z coordinate (plain subtraction for the gap): the
/// eigensolver's inner loop, where z comes from our own grids and never
/// sits closer than ~1e-6 to a wall.
pub(crate) fn vz_raw(p: i32, q: i32, vcal0: f64, z: f64) -> f64 {
    vz_from_gap(p, q, vcal0, z.signum(), FRAC_PI_2 - z.abs())
}

/// Classify the landscape of `Vcal_{p,q}` on (-pi/2, pi/2).
///
/// Boundary depths are folded into the simpler shape. The thresholds come
/// from the critical-point structure of `1/2 + (3/4)t^2 - Vcal0 f(t)` in
/// t = tan z:
/// * (2,4): minima off-axis once the quartic dip beats the centrifugal
///   curvature at 0 (Vcal0 > 3/4 -> double); for very negative Vcal0 the
///   barrier term sculpts side minima beyond the central one
///   (Vcal0 < -81/4 -> triple).
/// * (0,2): the cos^2 bump flips the origin from minimum to local maximum
///   when Vcal0 < -3/4 (double).
/// * (-2,0): cot^2 core, attractive for Vcal0 > 0 (funnel), otherwise an
///   impenetrable repulsive core (infinite double).
/// * (0,0), (2,0), (1,1): single by convention ((1,1) is a tilted single
///   well; (2,0) only shifts the wall steepness).
pub fn classify_well(prob: &DimensionlessProblem) -> WellShape {
    let v = prob.vcal0;
    match (prob.spec.p, prob.spec.q) {
        (2, 4) => {
            if v > 0.75 {
                WellShape::Double
            } else if v < -81.0 / 4.0 {
                WellShape::Triple
            } else {
                WellShape::Single
            }
        }
        (0, 2) => {
            if v < -0.75 {
                WellShape::Double
            } else {
                WellShape::Single
            }
        }
        (-2, 0) => {
            if v > 0.0 {
                WellShape::Funnel
            } else {
                WellShape::InfiniteDouble
            }
        }
        _ => WellShape::Single,
    }
}

/// Pull a z-space solution back to the line: `psi(x) = sech^(1/2)(x) phi(z(x))`.
pub fn phi_to_psi(phi: impl Fn(f64) -> f64, x: f64) -> f64 {
    let z = x_to_z(x);
    sech(x).sqrt() * phi(z.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn zpoint_rejects_walls() {
        assert!(ZPoint::new(FRAC_PI_2).is_err());
        assert!(ZPoint::new(-FRAC_PI_2 - 0.1).is_err());
        assert!(ZPoint::new(FRAC_PI_2 - 1e-9).is_err()); // inside the margin band
        assert!(ZPoint::new(f64::NAN).is_err());
        assert!(ZPoint::new(FRAC_PI_2 - 1e-7).is_ok());
        assert_eq!(ZPoint::new(0.25).unwrap().value(), 0.25);
    }

    #[test]
    fn map_values() {
        // z(1) = arcsin(tanh 1), frozen from high-precision evaluation
        assert_relative_eq!(x_to_z(1.0).value(), 0.8657694832396586, max_relative = 1e-15);
        assert_eq!(x_to_z(0.0).value(), 0.0);
        // deep in the tail the gap (~4e-22) is far below one ulp of pi/2, so
        // value() saturates while the carried gap keeps the wall distance
        assert!(x_to_z(50.0).value() <= FRAC_PI_2);
        assert!(x_to_z(50.0).wall_gap() > 0.0);
        assert!(x_to_z(-3.0).value() == -x_to_z(3.0).value());
        // identities sin z = tanh x, dz/dx = sech x = cos z
        for &x in &[0.1, 0.7, 2.0, 8.0] {
            let z = x_to_z(x);
            assert_relative_eq!(z.value().sin(), x.tanh(), max_relative = 1e-14);
            let h = 1e-6;
            let dz = (x_to_z(x + h).value() - x_to_z(x - h).value()) / (2.0 * h);
            assert_abs_diff_eq!(dz, crate::model::sech(x), epsilon = 1e-9);
        }
    }

    #[test]
    fn round_trip_x_to_z_to_x() {
        // tight even deep in the wall region thanks to the carried gap
        for i in 0..=400 {
            let x = -20.0 + 40.0 * (i as f64) / 400.0;
            let back = z_to_x(&x_to_z(x));
            assert_abs_diff_eq!(back, x, epsilon = 1e-10);
        }
    }

    #[test]
    fn round_trip_z_to_x_to_z() {
        for i in 0..=400 {
            let z = (-FRAC_PI_2 + 1e-6) + (std::f64::consts::PI - 2e-6) * (i as f64) / 400.0;
            let z = ZPoint::new(z).unwrap();
            let there = x_to_z(z_to_x(&z));
            assert_abs_diff_eq!(there.value(), z.value(), epsilon = 1e-12);
        }
    }

    #[test]
    fn effective_potential_wall_growth_and_floor() {
        let prob = DimensionlessProblem::natural(0, 0, 0.0).unwrap();
        let near_wall = ZPoint::new(FRAC_PI_2 - 1e-4).unwrap();
        let v = effective_potential(&prob, &near_wall).unwrap();
        // 3/4 / gap^2 dominates
        assert_relative_eq!(v, 0.75 / 1e-8, max_relative = 1e-3);
        // bottom of the bare well: 1/2 - Vcal0 at z = 0
        let prob = DimensionlessProblem::natural(0, 2, 2.0).unwrap();
        let v0 = effective_potential(&prob, &ZPoint::new(0.0).unwrap()).unwrap();
        assert_relative_eq!(v0, 0.5 - 2.0, max_relative = 1e-14);
    }

    #[test]
    fn effective_potential_member_structure() {
        // (0,2) at the double-well boundary Vcal0 = -3/4: flat quartic origin,
        // value 1/2 + 3/4 = 5/4 at z = 0 and positive curvature restored only
        // at fourth order.
        let prob = DimensionlessProblem::natural(0, 2, -0.75).unwrap();
        let at = |z: f64| effective_potential(&prob, &ZPoint::new(z).unwrap()).unwrap();
        assert_relative_eq!(at(0.0), 1.25, max_relative = 1e-14);
        let h = 1e-2;
        let d2 = (at(h) - 2.0 * at(0.0) + at(-h)) / (h * h);
        assert_abs_diff_eq!(d2, 0.0, epsilon = 1e-3); // second derivative cancels exactly
        assert!(at(0.3) > at(0.0)); // still a single well at the boundary

        // just past the boundary the origin becomes a local max
        let prob = DimensionlessProblem::natural(0, 2, -1.5).unwrap();
        let at = |z: f64| effective_potential(&prob, &ZPoint::new(z).unwrap()).unwrap();
        assert!(at(0.2) < at(0.0));

        // (1,1): the well term is odd in z, the centrifugal part even
        let prob = DimensionlessProblem::natural(1, 1, 2.0).unwrap();
        let at = |z: f64| effective_potential(&prob, &ZPoint::new(z).unwrap()).unwrap();
        for &z in &[0.2, 0.8, 1.4] {
            let even = 0.5 * (at(z) + at(-z));
            let odd = 0.5 * (at(z) - at(-z));
            assert_relative_eq!(even, 0.5 + 0.75 * (z.tan()).powi(2), max_relative = 1e-12);
            assert_relative_eq!(odd, -2.0 * z.sin(), max_relative = 1e-12);
        }

        // (-2,0): singular at the origin
        let prob = DimensionlessProblem::natural(-2, 0, 1.0).unwrap();
        assert!(matches!(
            effective_potential(&prob, &ZPoint::new(0.0).unwrap()),
            Err(Error::SingularPoint { .. })
        ));
        assert!(effective_potential(&prob, &ZPoint::new(1e-5).unwrap()).unwrap() < -1e9);
    }

    #[test]
    fn classify_well_thresholds() {
        let shape = |p, q, v| classify_well(&DimensionlessProblem::natural(p, q, v).unwrap());
        assert_eq!(shape(2, 4, 50.0), WellShape::Double);
        assert_eq!(shape(2, 4, 0.75), WellShape::Single); // boundary folds down
        assert_eq!(shape(2, 4, 0.0), WellShape::Single);
        assert_eq!(shape(2, 4, -81.0 / 4.0), WellShape::Single);
        assert_eq!(shape(2, 4, -25.0), WellShape::Triple);
        assert_eq!(shape(0, 2, 1.0), WellShape::Single);
        assert_eq!(shape(0, 2, -0.75), WellShape::Single);
        assert_eq!(shape(0, 2, -50.0), WellShape::Double);
        assert_eq!(shape(-2, 0, 0.125), WellShape::Funnel);
        assert_eq!(shape(-2, 0, -32.0), WellShape::InfiniteDouble);
        assert_eq!(shape(0, 0, 5.0), WellShape::Single);
        assert_eq!(shape(1, 1, 1.0), WellShape::Single);
        assert_eq!(shape(2, 0, 0.75), WellShape::Single);
    }

    #[test]
    fn phi_to_psi_prefactor() {
        // phi = 1 pulls back to sech^(1/2)
        let v = phi_to_psi(|_| 1.0, 1.0);
        assert_relative_eq!(v, crate::model::sech(1.0).sqrt(), max_relative = 1e-14);
        // phi = cos z (ground state of the empty box up to the 1/2 shift)
        // pulls back to sech^(3/2) since cos z = sech x
        let v = phi_to_psi(|z| z.cos(), 0.8);
        assert_relative_eq!(v, crate::model::sech(0.8).powf(1.5), max_relative = 1e-13);
    }
}
