//! Planning and verification toolkit for moving-trap harmonic transport.
//!
//! A particle held in a harmonic trap of constant frequency `omega0` must be
//! carried over a distance `d` without ending up vibrationally excited. The
//! center-of-mass path `q_c(t)` is designed first and the trap path `q_0(t)`
//! is inverse-engineered from Newton's equation for the trapped particle,
//! `q̈_c + omega0² (q_c − q_0) = 0`. The relative displacement
//! `u = q_c − q_0` acts as the control input and is kept within a bound
//! `delta` that models the finite harmonic region of a real trap.
//!
//! Three optimal protocols are built in closed form:
//!
//! * [`protocols::plan_time_optimal`] — bang-bang control, shortest horizon,
//! * [`protocols::plan_displacement_optimal`] — bang-off-bang control,
//!   smallest time-integrated |u|,
//! * [`protocols::plan_energy_optimal`] — bang-linear-bang (or pure linear)
//!   control, smallest time-averaged potential energy,
//!
//! plus a smooth quintic baseline ([`trajectory::polynomial_ansatz`]). Each
//! closed form can be checked against independent machinery: fixed-step RK4
//! integration of the classical motion ([`dynamics`]), switching-structure
//! certificates from the maximum principle ([`protocols::pmp_certificate`]),
//! brute-force and convex re-derivations of the optima, and split-step
//! quantum propagation of the ground transport mode ([`oracle`]).

pub mod constants;
pub mod dynamics;
mod error;
pub mod oracle;
pub mod protocols;
pub mod spec;
pub mod trajectory;

pub use error::{Error, Result};
pub use spec::TransportSpec;
