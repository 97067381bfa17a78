//! Physical problem statement for a single transport task.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Statement of a transport problem: carry a particle of mass `mass` held in
/// a harmonic trap of angular frequency `omega0` over a distance `d`.
///
/// `tf` (horizon) is optional because pure time-minimization produces it as
/// an output; `delta` (bound on the relative displacement |q_c − q_0|) is
/// optional because unbounded energy minimization does not need one.
/// All quantities are SI.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransportSpec {
    /// Particle mass, kg.
    pub mass: f64,
    /// Trap angular frequency, rad/s.
    pub omega0: f64,
    /// Target displacement, m.
    pub d: f64,
    /// Transport horizon, s.
    pub tf: Option<f64>,
    /// Bound on |q_c − q_0|, m.
    pub delta: Option<f64>,
}

fn positive(field: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidSpec {
            field,
            reason: format!("must be finite and > 0, got {value}"),
        })
    }
}

impl TransportSpec {
    pub fn new(mass: f64, omega0: f64, d: f64) -> Result<Self> {
        Ok(Self {
            mass: positive("mass", mass)?,
            omega0: positive("omega0", omega0)?,
            d: positive("d", d)?,
            tf: None,
            delta: None,
        })
    }

    pub fn with_tf(mut self, tf: f64) -> Result<Self> {
        self.tf = Some(positive("tf", tf)?);
        Ok(self)
    }

    pub fn with_delta(mut self, delta: f64) -> Result<Self> {
        self.delta = Some(positive("delta", delta)?);
        Ok(self)
    }

    /// Sets the displacement bound to `9d / (2 omega0² tf²)`, the choice for
    /// which displacement minimization reproduces the classic
    /// accelerate–coast–decelerate shuttle with switches at d/4 and 3d/4.
    pub fn with_hansch_delta(self) -> Result<Self> {
        let tf = self.tf()?;
        let delta = 4.5 * self.d / (self.omega0 * self.omega0 * tf * tf);
        self.with_delta(delta)
    }

    pub fn tf(&self) -> Result<f64> {
        self.tf.ok_or(Error::Missing("tf"))
    }

    pub fn delta(&self) -> Result<f64> {
        self.delta.ok_or(Error::Missing("delta"))
    }

    /// Dimensionless feasibility group `gamma = 4d / (omega0² tf² delta)`.
    ///
    /// `gamma > 1` means no protocol fits inside the bound, `gamma = 1` is
    /// the degenerate bang-bang limit, and `gamma <= 2/3` puts energy
    /// minimization in the unbounded regime.
    pub fn gamma(&self) -> Result<f64> {
        let tf = self.tf()?;
        let delta = self.delta()?;
        Ok(4.0 * self.d / (self.omega0 * self.omega0 * tf * tf * delta))
    }

    /// Shortest feasible horizon for the stored bound, `(2/omega0)·sqrt(d/delta)`.
    pub fn tf_min(&self) -> Result<f64> {
        let delta = self.delta()?;
        Ok(2.0 / self.omega0 * (self.d / delta).sqrt())
    }

    /// Peak relative displacement of the unbounded energy-optimal ramp,
    /// `6d / (omega0² tf²)`. Bounds at or above this value are inactive.
    pub fn delta_unbounded(&self) -> Result<f64> {
        let tf = self.tf()?;
        Ok(6.0 * self.d / (self.omega0 * self.omega0 * tf * tf))
    }
}
