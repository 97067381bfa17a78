//! Physical constants used across the crate.

/// Reduced Planck constant, J·s (2019 SI exact value).
pub const HBAR: f64 = 1.054_571_817e-34;

/// Mass of a rubidium-87 atom, kg.
pub const MASS_RB87: f64 = 1.443_16e-25;
