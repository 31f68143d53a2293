//! Bound states of a particle whose mass falls off as a soliton profile,
//! `m(x) = m0 sech^2(x/d)`, inside the potential family
//! `V_{p,q}(x) = -V0 sinh^p(x/d) / cosh^q(x/d)`.
//!
//! The position-dependent mass turns the eigenvalue problem into the
//! Sturm-Liouville form `-(cosh^2 x psi')' + Vcal_x psi = Ecal psi` (with
//! unit weight, in units of d and of the energy scale hbar^2 / 2 m0 d^2).
//! The point substitution `z = arcsin(tanh x)`, `psi = sech^(1/2)x phi(z)`
//! maps it onto a fixed-mass problem on the finite box (-pi/2, pi/2) with
//! Dirichlet walls — the vanishing mass at |x| -> infinity acts as an
//! impenetrable barrier, so every member has a purely discrete spectrum.
//!
//! What lives where:
//! - [`model`]: the potential family, scales, and shared result types;
//! - [`transforms`]: the x <-> z map, the transformed potential, and the
//!   wall-gap bookkeeping that keeps it accurate to the last bit;
//! - [`specfun`]: Gauss and confluent-Heun functions for the closed forms;
//! - [`analytic`]: exact spectra and eigenfunctions where they exist;
//! - [`eigensolver`]: the shooting integrator (primary numerics) and two
//!   independent finite-difference oracles that certify it;
//! - [`reference`]: frozen benchmark spectra.

pub mod analytic;
pub mod eigensolver;
pub mod error;
pub mod model;
pub mod reference;
pub mod specfun;
pub mod transforms;

pub use error::{Error, Result};
pub use model::{
    make_problem, DimensionlessProblem, Eigenpair, Parity, PotentialSpec, Provenance,
    WavefunctionSamples,
};
pub use eigensolver::{
    eigenfunction_numeric, eigenfunction_on_grid, find_spectrum, oracle_spectrum, shoot_parity,
    OracleConfig, OracleScheme, ShootingConfig,
};
pub use transforms::{classify_well, effective_potential, x_to_z, z_to_x, WellShape, ZPoint};
