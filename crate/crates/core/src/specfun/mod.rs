//! Special functions needed by the closed-form solutions: Gauss 2F1 with its
//! connection formulas and xi -> 1 limit, and local Heun solutions
//! (confluent and general) with ODE continuation.

pub(crate) mod gamma;
mod heun;
mod hyp2f1;

pub use heun::{
    heun_c_continue, heun_c_series, heun_c_series_jet, heun_general_local, ConfluentHeunParams,
    GeneralHeunParams,
};
pub use hyp2f1::{gauss_2f1, gauss_2f1_limit_at_1, Hypergeometric2F1Params};
