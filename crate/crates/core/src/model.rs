//! Problem definition: the hyperbolic potential family, the solitonic mass
//! profile, and the dimensionless descriptor shared by every solver.
//!
//! The model is a particle with position-dependent mass
//! `m(x) = m0 sech^2(x/d)` in the well
//! `V_{p,q}(x) = -V0 sinh^p(x/d) / cosh^q(x/d)`.
//! With the Ben-Daniel–Duke kinetic operator `-(hbar^2/2) d/dx (1/m) d/dx`
//! the stationary equation in units of `d` reads
//!
//! ```text
//! psi'' + 2 tanh(x) psi' + (Ecal - Vcal(x)) sech^2(x) psi = 0,
//! ```
//!
//! with `Ecal = 2 m0 d^2 E / hbar^2` and `Vcal = 2 m0 d^2 V / hbar^2`.
//! Multiplying by `-cosh^2 x` puts it in Sturm–Liouville form
//! `-(cosh^2 x psi')' + Vcal psi = Ecal psi` with *unit* weight, so the
//! physical inner product is the plain `∫ psi^2 dx` with no mass factor.

use crate::error::{Error, Result};

/// Family members with solver support.
pub const SUPPORTED_MEMBERS: [(i32, i32); 6] =
    [(0, 0), (-2, 0), (0, 2), (2, 0), (2, 4), (1, 1)];

/// Physical description of one family member.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSpec {
    /// Power of sinh(x/d) in the numerator.
    pub p: i32,
    /// Power of cosh(x/d) in the denominator.
    pub q: i32,
    /// Well depth (energy units; sign convention `V = -V0 ...`).
    pub v0: f64,
    /// Length scale of both the mass profile and the well.
    pub d: f64,
    /// Mass-profile peak value.
    pub m0: f64,
    /// Planck constant.
    pub hbar: f64,
}

impl PotentialSpec {
    /// Spec in natural units (d = m0 = hbar = 1).
    pub fn new(p: i32, q: i32, v0: f64) -> Result<Self> {
        Self::with_scales(p, q, v0, 1.0, 1.0, 1.0)
    }

    pub fn with_scales(p: i32, q: i32, v0: f64, d: f64, m0: f64, hbar: f64) -> Result<Self> {
        if !SUPPORTED_MEMBERS.contains(&(p, q)) {
            return Err(Error::UnsupportedFamilyMember { p, q });
        }
        if !(d > 0.0) || !(m0 > 0.0) || !(hbar > 0.0) || !v0.is_finite() {
            return Err(Error::InvalidParams {
                reason: format!("scales must be positive and finite (d={d}, m0={m0}, hbar={hbar}, v0={v0})"),
            });
        }
        Ok(Self { p, q, v0, d, m0, hbar })
    }

    /// True when every scale is 1, i.e. energies are already dimensionless.
    pub fn is_natural_units(&self) -> bool {
        self.d == 1.0 && self.m0 == 1.0 && self.hbar == 1.0
    }
}

/// Parity label of an eigenstate (for the asymmetric (1,1) member the label
/// follows the node-count convention, not a symmetry of the state).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }

    /// Label for level index `n` under the alternation convention.
    pub fn for_level(n: usize) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// How an eigenvalue was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Closed form; `err` is zero.
    Analytic,
    /// z-space shooting; `err` is the final bisection half-width.
    Shooting,
    /// Finite-difference matrix oracle; `err` is a Richardson bound.
    Oracle,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Analytic => "analytic",
            Provenance::Shooting => "shooting",
            Provenance::Oracle => "oracle",
        }
    }
}

/// One bound state: 0-based index by increasing energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenpair {
    pub n: usize,
    pub parity: Parity,
    /// Dimensionless energy `Ecal_n`.
    pub energy: f64,
    pub provenance: Provenance,
    /// Certified half-width of the bracketing interval (0 for analytic).
    pub err: f64,
}

/// Sampled eigenfunction in both coordinate systems.
///
/// `psi` is normalized so that the trapezoid rule on `grid_x` gives
/// `∫ psi^2 dx = 1`; `phi` is the z-space factor with the same scaling, so
/// `psi(x) = sech^(1/2)(x) phi(z(x))` holds pointwise.
#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionSamples {
    pub grid_x: Vec<f64>,
    pub grid_z: Vec<f64>,
    pub psi: Vec<f64>,
    pub phi: Vec<f64>,
    /// Multiplier applied to the raw integration output during normalization.
    pub norm_const: f64,
    /// Count of interior sign changes; equals the level index.
    pub nodes: usize,
}

/// Dimensionless problem descriptor consumed by all solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessProblem {
    pub spec: PotentialSpec,
    /// `Vcal0 = 2 m0 d^2 V0 / hbar^2`.
    pub vcal0: f64,
    /// `hbar^2 / (2 m0 d^2)`: multiply a dimensionless eigenvalue by this to
    /// recover the physical energy.
    pub energy_scale: f64,
}

/// Build the dimensionless descriptor for a supported member.
pub fn make_problem(spec: &PotentialSpec) -> Result<DimensionlessProblem> {
    if !SUPPORTED_MEMBERS.contains(&(spec.p, spec.q)) {
        return Err(Error::UnsupportedFamilyMember { p: spec.p, q: spec.q });
    }
    let energy_scale = spec.hbar * spec.hbar / (2.0 * spec.m0 * spec.d * spec.d);
    Ok(DimensionlessProblem {
        spec: *spec,
        vcal0: spec.v0 / energy_scale,
        energy_scale,
    })
}

impl DimensionlessProblem {
    /// Problem with the given dimensionless depth, carried by a
    /// natural-units spec: d = m0 = hbar = 1 makes the energy scale 1/2,
    /// so the physical depth realizing `vcal0` is `vcal0 / 2`.
    pub fn natural(p: i32, q: i32, vcal0: f64) -> Result<Self> {
        make_problem(&PotentialSpec::new(p, q, vcal0 / 2.0)?)
    }
}

/// Mass profile `m(x) = m0 sech^2(x/d)` with analytic derivatives.
#[derive(Debug, Clone, Copy)]
pub struct SolitonicMass {
    pub m0: f64,
    pub d: f64,
}

/// A twice-differentiable mass profile, as needed by the ordering
/// diagnostic [`kinematic_potential`].
pub trait MassProfile {
    fn m(&self, x: f64) -> f64;
    fn m1(&self, x: f64) -> f64;
    fn m2(&self, x: f64) -> f64;
}

impl MassProfile for SolitonicMass {
    fn m(&self, x: f64) -> f64 {
        let s = sech(x / self.d);
        self.m0 * s * s
    }

    fn m1(&self, x: f64) -> f64 {
        // m' = -(2/d) m tanh(x/d)
        -2.0 / self.d * self.m(x) * (x / self.d).tanh()
    }

    fn m2(&self, x: f64) -> f64 {
        // m'' = (2 m / d^2) (2 tanh^2 - sech^2)
        let u = x / self.d;
        let t = u.tanh();
        let s = sech(u);
        2.0 * self.m(x) / (self.d * self.d) * (2.0 * t * t - s * s)
    }
}

pub(crate) fn sech(u: f64) -> f64 {
    // 2 e^{-|u|} / (1 + e^{-2|u|}) never overflows.
    let e = (-u.abs()).exp();
    2.0 * e / (1.0 + e * e)
}

/// `m(x) = m0 sech^2(x/d)` with the scales carried by `spec`.
pub fn mass_profile(spec: &PotentialSpec, x: f64) -> f64 {
    SolitonicMass { m0: spec.m0, d: spec.d }.m(x)
}

/// `V_{p,q}(x) = -V0 sinh^p(x/d) / cosh^q(x/d)` in physical units.
pub fn potential_x(spec: &PotentialSpec, x: f64) -> Result<f64> {
    if spec.p < 0 && x == 0.0 {
        return Err(Error::SingularPoint { p: spec.p, coordinate: "x" });
    }
    let u = x / spec.d;
    Ok(-spec.v0 * u.sinh().powi(spec.p) * u.cosh().powi(-spec.q))
}

/// Dimensionless potential `Vcal(x) = 2 m0 d^2 V(x d) / hbar^2` on the
/// rescaled axis (x in units of d).
pub fn vcal_x(prob: &DimensionlessProblem, x: f64) -> f64 {
    let (p, q) = (prob.spec.p, prob.spec.q);
    -prob.vcal0 * x.sinh().powi(p) * x.cosh().powi(-q)
}

/// Ordering-dependent kinematic potential
/// `U_K = -hbar^2/(4 m^3) [ (a+g-1)(m/2) m'' + (1 - a g - a - g)(m')^2 ]`.
///
/// Both coefficients vanish for the Ben-Daniel–Duke orderings
/// (alpha, gamma) = (0, 1) or (1, 0), which is why that ordering needs no
/// correction term anywhere else in this crate. Exposed as a diagnostic.
pub fn kinematic_potential<M: MassProfile>(
    mass: &M,
    hbar: f64,
    alpha: f64,
    gamma: f64,
    x: f64,
) -> f64 {
    let m = mass.m(x);
    let m1 = mass.m1(x);
    let m2 = mass.m2(x);
    let c1 = alpha + gamma - 1.0;
    let c2 = 1.0 - alpha * gamma - alpha - gamma;
    -hbar * hbar / (4.0 * m * m * m) * (c1 * 0.5 * m * m2 + c2 * m1 * m1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn rejects_unsupported_members() {
        assert!(matches!(
            PotentialSpec::new(3, 3, 1.0),
            Err(Error::UnsupportedFamilyMember { p: 3, q: 3 })
        ));
        assert!(matches!(
            make_problem(&PotentialSpec { p: 0, q: 4, v0: 1.0, d: 1.0, m0: 1.0, hbar: 1.0 }),
            Err(Error::UnsupportedFamilyMember { .. })
        ));
    }

    #[test]
    fn dimensionless_depth_and_scale() {
        // the natural constructor pins the dimensionless depth itself
        let prob = DimensionlessProblem::natural(0, 2, 1.0 / 32.0).unwrap();
        assert_eq!(prob.vcal0, 1.0 / 32.0);
        assert_eq!(prob.energy_scale, 0.5);

        // zero depth stays zero for any member
        for (p, q) in SUPPORTED_MEMBERS {
            assert_eq!(DimensionlessProblem::natural(p, q, 0.0).unwrap().vcal0, 0.0);
        }

        // explicit scales: Vcal0 = 2 m0 d^2 V0 / hbar^2
        let spec = PotentialSpec::with_scales(0, 2, -50.0, 2.0, 3.0, 0.5).unwrap();
        let prob = make_problem(&spec).unwrap();
        assert_relative_eq!(prob.vcal0, 2.0 * 3.0 * 4.0 * (-50.0) / 0.25, max_relative = 1e-15);
        // round trip physical <-> dimensionless energy
        let e_phys = prob.energy_scale * prob.vcal0;
        assert_relative_eq!(e_phys / prob.energy_scale, prob.vcal0, max_relative = 1e-12);
        assert_relative_eq!(e_phys, spec.v0, max_relative = 1e-12);
    }

    #[test]
    fn mass_profile_values() {
        let spec = PotentialSpec::new(0, 0, 0.0).unwrap();
        assert_eq!(mass_profile(&spec, 0.0), 1.0);
        // m0 = 2: value at x = 1 frozen from high-precision evaluation
        let spec2 = PotentialSpec::with_scales(0, 0, 0.0, 1.0, 2.0, 1.0).unwrap();
        assert_relative_eq!(mass_profile(&spec2, 1.0), 0.839948683228052, max_relative = 1e-14);
        // decays, even, max at origin
        let spec = PotentialSpec::new(0, 2, 1.0).unwrap();
        assert!(mass_profile(&spec, 10.0) < 1e-8);
        assert_eq!(mass_profile(&spec, -3.0), mass_profile(&spec, 3.0));
        assert!(mass_profile(&spec, 0.1) < mass_profile(&spec, 0.0));
        // no overflow far out
        assert_eq!(mass_profile(&spec, 1e6), 0.0);
    }

    #[test]
    fn potential_values_and_symmetry() {
        let c = PotentialSpec::new(0, 0, 3.5).unwrap();
        assert_eq!(potential_x(&c, 2.0).unwrap(), -3.5); // constant member

        let pt = PotentialSpec::new(0, 2, 2.0).unwrap();
        assert_relative_eq!(potential_x(&pt, 1.0).unwrap(), -0.839948683228052, max_relative = 1e-14);

        // (2,4) with V0 > 0: zero at origin, minima away from it
        let dw = PotentialSpec::new(2, 4, 50.0).unwrap();
        assert_eq!(potential_x(&dw, 0.0).unwrap(), 0.0);
        assert!(potential_x(&dw, 0.9).unwrap() < potential_x(&dw, 0.0).unwrap());
        assert!(potential_x(&dw, 0.9).unwrap() < potential_x(&dw, 5.0).unwrap());

        // singular member
        let sg = PotentialSpec::new(-2, 0, 1.0).unwrap();
        assert!(matches!(potential_x(&sg, 0.0), Err(Error::SingularPoint { .. })));
        assert!(potential_x(&sg, 1e-6).unwrap() < -1e11); // ~ -V0/x^2

        // parity in x: even for even p, odd for p = 1
        let odd = PotentialSpec::new(1, 1, 1.0).unwrap();
        for &x in &[0.3, 1.0, 2.7] {
            assert_relative_eq!(
                potential_x(&odd, -x).unwrap(),
                -potential_x(&odd, x).unwrap(),
                max_relative = 1e-14
            );
            assert_relative_eq!(
                potential_x(&dw, -x).unwrap(),
                potential_x(&dw, x).unwrap(),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn kinematic_potential_bdd_is_zero() {
        let mass = SolitonicMass { m0: 1.0, d: 1.0 };
        // both Ben-Daniel-Duke orderings vanish identically
        for i in 0..1000 {
            let x = -8.0 + 16.0 * (i as f64) / 999.0;
            assert_eq!(kinematic_potential(&mass, 1.0, 0.0, 1.0, x), 0.0);
            assert_eq!(kinematic_potential(&mass, 1.0, 1.0, 0.0, x), 0.0);
        }
    }

    #[test]
    fn kinematic_potential_weyl_matches_finite_differences() {
        let mass = SolitonicMass { m0: 1.0, d: 1.0 };
        // alpha = gamma = 0 at the origin: m'(0) = 0 so
        // U_K(0) = hbar^2 m''(0) / (8 m^2) with m''(0) from central differences
        let h = 1e-4;
        let m2_fd = (mass.m(h) - 2.0 * mass.m(0.0) + mass.m(-h)) / (h * h);
        let expect = -1.0 / (4.0 * 1.0f64) * (-0.5 * m2_fd);
        let got = kinematic_potential(&mass, 1.0, 0.0, 0.0, 0.0);
        assert_abs_diff_eq!(got, expect, epsilon = 1e-7);
        // frozen closed form: m''(0) = -2 m0/d^2 so U_K(0) = -1/4 in natural units
        assert_relative_eq!(got, -0.25, max_relative = 1e-12);
        // constant mass: zero for any ordering
        struct Flat;
        impl MassProfile for Flat {
            fn m(&self, _: f64) -> f64 { 1.7 }
            fn m1(&self, _: f64) -> f64 { 0.0 }
            fn m2(&self, _: f64) -> f64 { 0.0 }
        }
        assert_eq!(kinematic_potential(&Flat, 1.0, 0.3, -0.9, 2.0), 0.0);
    }

    #[test]
    fn solitonic_derivatives_match_finite_differences() {
        let mass = SolitonicMass { m0: 1.3, d: 0.7 };
        let h = 1e-5;
        for &x in &[-2.2, -0.4, 0.0, 0.9, 3.1] {
            let m1_fd = (mass.m(x + h) - mass.m(x - h)) / (2.0 * h);
            let m2_fd = (mass.m(x + h) - 2.0 * mass.m(x) + mass.m(x - h)) / (h * h);
            assert_abs_diff_eq!(mass.m1(x), m1_fd, epsilon = 1e-8);
            assert_abs_diff_eq!(mass.m2(x), m2_fd, epsilon = 1e-5);
        }
    }
}
