//! Classical simulation of the driven oscillator, cost functionals, energy
//! bookkeeping and the Lewis-Riesenfeld phase.

use serde::{Deserialize, Serialize};

use crate::constants::HBAR;
use crate::trajectory::PiecewiseTrajectory;
use crate::{Error, Result, TransportSpec};

/// Center-of-mass state `(q_c, q̇_c)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    /// Position, m.
    pub position: f64,
    /// Velocity, m/s.
    pub velocity: f64,
}

/// Cost values of a trajectory or simulation run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostSummary {
    /// Transport time, s.
    pub time: f64,
    /// Time-integrated |u|, m·s.
    pub displacement: f64,
    /// Time-integrated potential energy `∫ ½ m omega0² u² dt`, J·s.
    pub energy: f64,
    /// Time-averaged potential energy `energy / time`, J.
    pub mean_potential: f64,
}

/// Trap drive for the simulator: either an exact piecewise trajectory (the
/// integrator then aligns its grid with the control breakpoints and
/// evaluates every Runge-Kutta stage on the segment owning the step, so no
/// stage ever reads across a control jump) or a black-box function of time.
pub enum TrapDrive<'a> {
    Trajectory(&'a PiecewiseTrajectory),
    Function {
        f: &'a dyn Fn(f64) -> f64,
        tf: f64,
    },
}

impl<'a> TrapDrive<'a> {
    pub fn horizon(&self) -> f64 {
        match self {
            TrapDrive::Trajectory(t) => t.tf(),
            TrapDrive::Function { tf, .. } => *tf,
        }
    }

    fn interior_breakpoints(&self) -> Vec<f64> {
        match self {
            TrapDrive::Trajectory(t) => {
                let b = t.breakpoints();
                b[1..b.len() - 1].to_vec()
            }
            TrapDrive::Function { .. } => Vec::new(),
        }
    }

    /// Trap position for a Runge-Kutta stage inside the step whose midpoint
    /// is `mid`.
    fn stage_position(&self, t: f64, mid: f64) -> f64 {
        match self {
            TrapDrive::Trajectory(traj) => {
                let seg = traj.segment_index(mid);
                let m = traj.eval_in_segment(seg, t);
                m.position + m.acceleration / (traj.omega0() * traj.omega0())
            }
            TrapDrive::Function { f, .. } => f(t),
        }
    }
}

/// Control/trap samples taken from the left side of an interior jump, keyed
/// by grid index. Stored values in [`SimulationRecord`] are right-sided, so
/// these complete the picture for piecewise integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JumpSample {
    pub index: usize,
    pub u_left: f64,
    pub trap_left: f64,
    pub ep_left: f64,
}

/// Time series produced by [`simulate`].
///
/// `controls[i] = states[i].position − trap_positions[i]` is the realized
/// relative displacement. Samples at interior control jumps carry the
/// right-sided trap value; the final sample carries the left-sided one (its
/// cell lies to the left), and `jumps` records left-sided values at interior
/// jump indices for exact piecewise quadrature.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimulationRecord {
    pub times: Vec<f64>,
    pub states: Vec<StateVector>,
    pub controls: Vec<f64>,
    pub trap_positions: Vec<f64>,
    pub ep_series: Vec<f64>,
    /// `½ m q̇(tf)² + ½ m omega0² (q(tf) − d)²`, J.
    pub final_excitation: f64,
    pub jumps: Vec<JumpSample>,
}

/// Fixed-step classical RK4 integration of
/// `q̈ = −omega0² (q − q_0(t))` from rest at the origin.
///
/// The base grid has `steps` uniform intervals; trajectory drives get their
/// interior breakpoints spliced in so that no step straddles a control
/// discontinuity, preserving fourth-order accuracy.
pub fn simulate(
    spec: &TransportSpec,
    drive: &TrapDrive,
    steps: usize,
) -> Result<SimulationRecord> {
    if steps < 100 {
        return Err(Error::Argument(format!(
            "steps must be >= 100, got {steps}"
        )));
    }
    let tf = drive.horizon();
    let w2 = spec.omega0 * spec.omega0;

    // merged grid: uniform base plus interior control breakpoints
    let mut grid: Vec<f64> = (0..=steps).map(|i| tf * i as f64 / steps as f64).collect();
    let mut jump_times = Vec::new();
    for &b in &drive.interior_breakpoints() {
        jump_times.push(b);
        let near = grid.iter().any(|&g| (g - b).abs() <= 1e-12 * tf);
        if !near {
            grid.push(b);
        }
    }
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let n = grid.len();
    let mut states = Vec::with_capacity(n);
    let mut x = StateVector { position: 0.0, velocity: 0.0 };
    states.push(x);

    for i in 0..n - 1 {
        let (a, b) = (grid[i], grid[i + 1]);
        let h = b - a;
        let mid = 0.5 * (a + b);
        let q0 = |t: f64| -> Result<f64> {
            let v = drive.stage_position(t, mid);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::NonFiniteTrap { t })
            }
        };
        let accel = |q: f64, trap: f64| -w2 * (q - trap);

        let (qa, qm, qb) = (q0(a)?, q0(mid)?, q0(b)?);
        let k1v = accel(x.position, qa);
        let k1p = x.velocity;
        let k2v = accel(x.position + 0.5 * h * k1p, qm);
        let k2p = x.velocity + 0.5 * h * k1v;
        let k3v = accel(x.position + 0.5 * h * k2p, qm);
        let k3p = x.velocity + 0.5 * h * k2v;
        let k4v = accel(x.position + h * k3p, qb);
        let k4p = x.velocity + h * k3v;
        x = StateVector {
            position: x.position + h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p),
            velocity: x.velocity + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v),
        };
        states.push(x);
    }

    // record columns; values face the cell they integrate over
    let mut controls = Vec::with_capacity(n);
    let mut trap_positions = Vec::with_capacity(n);
    let mut ep_series = Vec::with_capacity(n);
    for (i, &t) in grid.iter().enumerate() {
        let anchor = if i + 1 < n { 0.5 * (t + grid[i + 1]) } else { 0.5 * (grid[i - 1] + t) };
        let trap = drive.stage_position(t, anchor);
        if !trap.is_finite() {
            return Err(Error::NonFiniteTrap { t });
        }
        let u = states[i].position - trap;
        controls.push(u);
        trap_positions.push(trap);
        ep_series.push(0.5 * spec.mass * w2 * u * u);
    }

    let mut jumps = Vec::new();
    for &bt in &jump_times {
        if let Some(index) = grid.iter().position(|&g| (g - bt).abs() <= 1e-12 * tf) {
            if index == 0 || index == n - 1 {
                continue;
            }
            let trap_left = drive.stage_position(grid[index], 0.5 * (grid[index - 1] + grid[index]));
            let u_left = states[index].position - trap_left;
            jumps.push(JumpSample {
                index,
                u_left,
                trap_left,
                ep_left: 0.5 * spec.mass * w2 * u_left * u_left,
            });
        }
    }
    jumps.sort_by_key(|j| j.index);
    jumps.dedup_by_key(|j| j.index);

    let last = *states.last().unwrap();
    let final_excitation = 0.5 * spec.mass * last.velocity * last.velocity
        + 0.5 * spec.mass * w2 * (last.position - spec.d) * (last.position - spec.d);

    Ok(SimulationRecord {
        times: grid,
        states,
        controls,
        trap_positions,
        ep_series,
        final_excitation,
        jumps,
    })
}

/// Exact per-segment cost evaluation for a piecewise trajectory. The control
/// is linear on each segment, so `∫|u|` and `∫u²` have closed forms.
pub fn trajectory_costs(traj: &PiecewiseTrajectory, mass: f64) -> CostSummary {
    let w2 = traj.omega0() * traj.omega0();
    let mut jd = 0.0;
    let mut je_raw = 0.0; // ∫ u² dt
    for (i, seg) in traj.segments().iter().enumerate() {
        let h = traj.breakpoints()[i + 1] - traj.breakpoints()[i];
        let alpha = -2.0 * seg.coeffs[2] / w2;
        let beta = -6.0 * seg.coeffs[3] / w2;
        // ∫₀ʰ |alpha + beta x| dx, splitting at an interior sign change
        let antider = |x: f64| alpha * x + 0.5 * beta * x * x;
        let root = if beta != 0.0 { -alpha / beta } else { -1.0 };
        jd += if root > 0.0 && root < h {
            antider(root).abs() + (antider(h) - antider(root)).abs()
        } else {
            antider(h).abs()
        };
        je_raw += alpha * alpha * h + alpha * beta * h * h + beta * beta * h * h * h / 3.0;
    }
    let time = traj.tf();
    let energy = 0.5 * mass * w2 * je_raw;
    CostSummary { time, displacement: jd, energy, mean_potential: energy / time }
}

/// Integral of the quadratic through `(x0,f0) (x1,f1) (x2,f2)` over `[a, b]`.
fn quadratic_integral(x: [f64; 3], f: [f64; 3], a: f64, b: f64) -> f64 {
    // Newton divided differences: f0 + d1 (x−x0) + d2 (x−x0)(x−x1)
    let d1 = (f[1] - f[0]) / (x[1] - x[0]);
    let d2 = (((f[2] - f[1]) / (x[2] - x[1])) - d1) / (x[2] - x[0]);
    let prim = |t: f64| {
        let u = t - x[0];
        let v = t - x[1];
        f[0] * t + 0.5 * d1 * u * u + d2 * (t * (u * v) / 3.0 - (x[0] * v + x[1] * u) * u / 6.0)
    };
    // integrate the expanded polynomial instead: c0 + c1 t + c2 t²
    let c2 = d2;
    let c1 = d1 - d2 * (x[0] + x[1]);
    let c0 = f[0] - d1 * x[0] + d2 * x[0] * x[1];
    let _ = prim;
    let ev = |t: f64| t * (c0 + t * (0.5 * c1 + t * c2 / 3.0));
    ev(b) - ev(a)
}

/// Composite quadrature of sampled values over one smooth piece
/// `times[lo..=hi]`, pairing cells and fitting quadratics (exact for the
/// piecewise-quadratic integrands produced by linear controls).
fn piece_quadrature(times: &[f64], values: &[f64], lo: usize, hi: usize) -> f64 {
    let mut total = 0.0;
    let mut i = lo;
    while i + 2 <= hi {
        let x = [times[i], times[i + 1], times[i + 2]];
        let f = [values[i], values[i + 1], values[i + 2]];
        total += quadratic_integral(x, f, x[0], x[2]);
        i += 2;
    }
    if i + 1 == hi {
        // odd cell count: close with a quadratic through the last three points
        let x = [times[hi - 2], times[hi - 1], times[hi]];
        let f = [values[hi - 2], values[hi - 1], values[hi]];
        total += quadratic_integral(x, f, times[hi - 1], times[hi]);
    }
    total
}

/// Quadrature-based costs for a simulation record, using the piecewise grid
/// (no integration window crosses a control jump).
pub fn record_costs(record: &SimulationRecord, mass: f64, omega0: f64) -> CostSummary {
    let n = record.times.len();
    let time = *record.times.last().unwrap();
    let w2 = omega0 * omega0;

    let mut boundaries = vec![0usize];
    boundaries.extend(record.jumps.iter().map(|j| j.index));
    boundaries.push(n - 1);
    boundaries.dedup();

    let mut jd = 0.0;
    let mut je = 0.0;
    for w in boundaries.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        // swap in left-sided values at this piece's right end if it is a jump
        let mut abs_u: Vec<f64> = record.controls[lo..=hi].iter().map(|u| u.abs()).collect();
        let mut ep: Vec<f64> = record.ep_series[lo..=hi].to_vec();
        if let Some(j) = record.jumps.iter().find(|j| j.index == hi) {
            *abs_u.last_mut().unwrap() = j.u_left.abs();
            *ep.last_mut().unwrap() = j.ep_left;
        }
        let t = &record.times[lo..=hi];
        jd += piece_quadrature(t, &abs_u, 0, hi - lo);
        je += piece_quadrature(t, &ep, 0, hi - lo);
    }
    let _ = (mass, w2);
    CostSummary { time, displacement: jd, energy: je, mean_potential: je / time }
}

/// Energy bookkeeping of transport mode `n` at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub n: usize,
    /// Internal contribution `ħ omega0 (n + ½)`, constant in time, J.
    pub internal: f64,
    /// Center-of-mass kinetic energy `½ m q̇_c²`, J.
    pub kinetic: f64,
    /// Potential-like term `½ m omega0² u²`, J.
    pub potential: f64,
    /// Instantaneous average potential `(ħ omega0/2)(n + ½) + potential`, J.
    pub mean_potential: f64,
    /// Time average of `potential` over the whole transport, J.
    pub ep_bar: f64,
}

/// Evaluates the transport-mode energies at time `t` (control taken
/// right-continuously, so `t = 0` reports the interior value `u(0⁺)`).
pub fn energy_report(
    trajectory: &PiecewiseTrajectory,
    spec: &TransportSpec,
    n: usize,
    t: f64,
) -> Result<EnergyReport> {
    let m = trajectory.eval(t)?;
    let w2 = spec.omega0 * spec.omega0;
    let u = -m.acceleration / w2;
    let internal = HBAR * spec.omega0 * (n as f64 + 0.5);
    let kinetic = 0.5 * spec.mass * m.velocity * m.velocity;
    let potential = 0.5 * spec.mass * w2 * u * u;
    let costs = trajectory_costs(trajectory, spec.mass);
    Ok(EnergyReport {
        n,
        internal,
        kinetic,
        potential,
        mean_potential: 0.5 * internal + potential,
        ep_bar: costs.mean_potential,
    })
}

/// Lewis-Riesenfeld phase of transport mode `n`,
/// `α_n(t) = −(1/ħ) ∫₀ᵗ (λ_n + m q̇_c²/2) dt′` with `λ_n = (n+½) ħ omega0`,
/// evaluated per segment in closed form (`q̇_c²` is quartic on a segment).
pub fn lr_phase(
    trajectory: &PiecewiseTrajectory,
    spec: &TransportSpec,
    n: usize,
    t: f64,
) -> Result<f64> {
    let tf = trajectory.tf();
    if !(0.0..=tf).contains(&t) {
        return Err(Error::OutOfDomain { t, tf });
    }
    let mut v2_integral = 0.0;
    for (i, seg) in trajectory.segments().iter().enumerate() {
        let start = trajectory.breakpoints()[i];
        if start >= t {
            break;
        }
        let x_end = (t - start).min(trajectory.breakpoints()[i + 1] - start);
        let [_, c1, c2, c3] = seg.coeffs;
        // q̇ = c1 + 2 c2 x + 3 c3 x²; integrate its square
        let a0 = c1 * c1;
        let a1 = 4.0 * c1 * c2;
        let a2 = 4.0 * c2 * c2 + 6.0 * c1 * c3;
        let a3 = 12.0 * c2 * c3;
        let a4 = 9.0 * c3 * c3;
        let x = x_end;
        v2_integral += x
            * (a0 + x * (a1 / 2.0 + x * (a2 / 3.0 + x * (a3 / 4.0 + x * a4 / 5.0))));
    }
    let lambda_n = (n as f64 + 0.5) * HBAR * spec.omega0;
    Ok(-(lambda_n * t + 0.5 * spec.mass * v2_integral) / HBAR)
}

/// Scale factors relating an SI problem to its natural-unit counterpart
/// (`m = ħ = omega0 = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitScales {
    /// Oscillator length `sqrt(ħ / (m omega0))`, m.
    pub length: f64,
    /// `1 / omega0`, s.
    pub time: f64,
    /// `ħ omega0`, J.
    pub energy: f64,
    /// Particle mass, kg.
    pub mass: f64,
}

impl UnitScales {
    /// Maps a scaled problem statement back to SI.
    pub fn restore(&self, scaled: &TransportSpec) -> Result<TransportSpec> {
        let mut spec = TransportSpec::new(self.mass, 1.0 / self.time, scaled.d * self.length)?;
        if let Some(tf) = scaled.tf {
            spec = spec.with_tf(tf * self.time)?;
        }
        if let Some(delta) = scaled.delta {
            spec = spec.with_delta(delta * self.length)?;
        }
        Ok(spec)
    }
}

/// Rewrites the problem in natural units `m = ħ = omega0 = 1`. Lengths are
/// divided by the oscillator length `sqrt(ħ/(m omega0))`, times multiplied
/// by `omega0`. The feasibility group `gamma` is invariant under this map.
pub fn nondimensionalize(spec: &TransportSpec) -> Result<(TransportSpec, UnitScales)> {
    let length = (HBAR / (spec.mass * spec.omega0)).sqrt();
    let scales = UnitScales {
        length,
        time: 1.0 / spec.omega0,
        energy: HBAR * spec.omega0,
        mass: spec.mass,
    };
    let mut scaled = TransportSpec::new(1.0, 1.0, spec.d / length)?;
    if let Some(tf) = spec.tf {
        scaled = scaled.with_tf(tf * spec.omega0)?;
    }
    if let Some(delta) = spec.delta {
        scaled = scaled.with_delta(delta / length)?;
    }
    Ok((scaled, scales))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::MASS_RB87;
    use crate::trajectory::{PiecewiseTrajectory, Representation, Segment, TrajectoryBuilder};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::PI;

    fn fig1_spec() -> TransportSpec {
        TransportSpec::new(MASS_RB87, 2.0 * PI * 50.0, 1.6e-3)
            .unwrap()
            .with_delta(1.6e-4)
            .unwrap()
    }

    fn bang_bang(spec: &TransportSpec) -> PiecewiseTrajectory {
        let delta = spec.delta().unwrap();
        let t1 = spec.tf_min().unwrap() / 2.0;
        TrajectoryBuilder::new(spec.omega0)
            .constant_control(t1, -delta)
            .constant_control(t1, delta)
            .finish()
    }

    #[test]
    fn static_trap_stays_at_equilibrium() {
        let spec = fig1_spec();
        let f = |_: f64| 0.0;
        let drive = TrapDrive::Function { f: &f, tf: 0.02 };
        let rec = simulate(&spec, &drive, 500).unwrap();
        for s in &rec.states {
            assert_eq!(s.position, 0.0);
            assert_eq!(s.velocity, 0.0);
        }
    }

    #[test]
    fn sudden_jump_matches_driven_oscillator() {
        let spec = fig1_spec();
        let (d, w) = (spec.d, spec.omega0);
        let tf = 0.02;
        let f = move |t: f64| if t >= 0.0 { d } else { 0.0 };
        let drive = TrapDrive::Function { f: &f, tf };
        let rec = simulate(&spec, &drive, 10_000).unwrap();
        for (i, &t) in rec.times.iter().enumerate().step_by(500) {
            let exact = d * (1.0 - (w * t).cos());
            assert_abs_diff_eq!(rec.states[i].position, exact, epsilon = 1e-10 * d);
        }
    }

    #[test]
    fn rk4_error_shrinks_at_fourth_order() {
        let spec = fig1_spec();
        let (d, w) = (spec.d, spec.omega0);
        let tf = 0.02;
        let f = move |t: f64| if t >= 0.0 { d } else { 0.0 };
        let endpoint_err = |steps: usize| {
            let drive = TrapDrive::Function { f: &f, tf };
            let rec = simulate(&spec, &drive, steps).unwrap();
            let last = rec.states.last().unwrap();
            let pe = last.position - d * (1.0 - (w * tf).cos());
            let ve = last.velocity - d * w * (w * tf).sin();
            (pe * pe + (ve / w) * (ve / w)).sqrt()
        };
        let ratio = endpoint_err(200) / endpoint_err(400);
        assert!(ratio >= 12.0, "step halving only improved error {ratio:.2}x");
    }

    #[test]
    fn bang_bang_transport_leaves_no_excitation() {
        let spec = fig1_spec();
        let traj = bang_bang(&spec);
        let rec = simulate(&spec, &TrapDrive::Trajectory(&traj), 10_000).unwrap();
        let budget = 1e-8 * 0.5 * spec.mass * spec.omega0.powi(2) * spec.d * spec.d;
        assert!(rec.final_excitation <= budget, "{:e}", rec.final_excitation);
    }

    #[test]
    fn record_quadrature_matches_segment_integration() {
        let spec = fig1_spec();
        let traj = bang_bang(&spec);
        let exact = trajectory_costs(&traj, spec.mass);
        let rec = simulate(&spec, &TrapDrive::Trajectory(&traj), 10_000).unwrap();
        let approx_costs = record_costs(&rec, spec.mass, spec.omega0);
        assert_relative_eq!(approx_costs.energy, exact.energy, max_relative = 1e-6);
        assert_relative_eq!(approx_costs.displacement, exact.displacement, max_relative = 1e-6);
    }

    #[test]
    fn bang_bang_costs_match_constant_control() {
        let spec = fig1_spec();
        let traj = bang_bang(&spec);
        let delta = spec.delta().unwrap();
        let tf = traj.tf();
        let costs = trajectory_costs(&traj, spec.mass);
        assert_relative_eq!(costs.displacement, delta * tf, max_relative = 1e-12);
        let ep = 0.5 * spec.mass * spec.omega0.powi(2) * delta * delta;
        assert_relative_eq!(costs.mean_potential, ep, max_relative = 1e-12);
    }

    #[test]
    fn simulate_rejects_coarse_grids_and_bad_traps() {
        let spec = fig1_spec();
        let f = |_: f64| 0.0;
        let drive = TrapDrive::Function { f: &f, tf: 0.02 };
        assert!(matches!(
            simulate(&spec, &drive, 50),
            Err(Error::Argument(_))
        ));
        let bad = |t: f64| if t > 0.01 { f64::NAN } else { 0.0 };
        let drive = TrapDrive::Function { f: &bad, tf: 0.02 };
        assert!(matches!(
            simulate(&spec, &drive, 500),
            Err(Error::NonFiniteTrap { .. })
        ));
    }

    #[test]
    fn energy_report_at_start_has_no_kinetic_term() {
        let spec = fig1_spec();
        let traj = bang_bang(&spec);
        let delta = spec.delta().unwrap();
        let rep = energy_report(&traj, &spec, 0, 0.0).unwrap();
        assert_eq!(rep.kinetic, 0.0);
        // right-continuous control at t = 0 is the interior bang value
        let ep0 = 0.5 * spec.mass * spec.omega0.powi(2) * delta * delta;
        assert_relative_eq!(rep.potential, ep0, max_relative = 1e-12);
    }

    #[test]
    fn energy_report_is_constant_for_bang_bang_and_linear_in_n() {
        let spec = fig1_spec();
        let traj = bang_bang(&spec);
        let delta = spec.delta().unwrap();
        let ep = 0.5 * spec.mass * spec.omega0.powi(2) * delta * delta;
        for &t in &[1e-4, 0.005, 0.012, 0.019] {
            let rep = energy_report(&traj, &spec, 0, t).unwrap();
            assert_relative_eq!(rep.potential, ep, max_relative = 1e-12);
        }
        let r0 = energy_report(&traj, &spec, 0, 0.004).unwrap();
        let r1 = energy_report(&traj, &spec, 1, 0.004).unwrap();
        assert_relative_eq!(
            r1.mean_potential - r0.mean_potential,
            0.5 * HBAR * spec.omega0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn lr_phase_of_static_mode_is_linear() {
        let spec = fig1_spec();
        let traj = PiecewiseTrajectory::from_segments(
            spec.omega0,
            vec![0.0, 0.02],
            vec![Segment { coeffs: [0.0; 4] }],
            Representation::Exact,
        )
        .unwrap();
        for n in 0..3 {
            let got = lr_phase(&traj, &spec, n, 0.015).unwrap();
            let expect = -(n as f64 + 0.5) * spec.omega0 * 0.015;
            assert_relative_eq!(got, expect, max_relative = 1e-13);
        }
    }

    #[test]
    fn lr_phase_closed_form_matches_quadrature_for_bang_bang() {
        let spec = fig1_spec();
        let traj = bang_bang(&spec);
        let (tf, delta) = (traj.tf(), spec.delta().unwrap());
        let got = lr_phase(&traj, &spec, 0, tf).unwrap();
        let kinetic_term = spec.omega0.powi(4) * delta * delta * tf.powi(3) / 12.0;
        let expect = -0.5 * spec.omega0 * tf - 0.5 * spec.mass / HBAR * kinetic_term;
        assert_relative_eq!(got, expect, max_relative = 1e-12);
        // independent check: dense trapezoid quadrature of the integrand
        let n = 200_001;
        let mut acc = 0.0;
        let lambda0 = 0.5 * HBAR * spec.omega0;
        let integrand = |t: f64| {
            let v = traj.eval(t).unwrap().velocity;
            lambda0 + 0.5 * spec.mass * v * v
        };
        for i in 0..n - 1 {
            let (a, b) = (tf * i as f64 / (n - 1) as f64, tf * (i + 1) as f64 / (n - 1) as f64);
            acc += 0.5 * (integrand(a) + integrand(b)) * (b - a);
        }
        assert_relative_eq!(got, -acc / HBAR, max_relative = 1e-8);
    }

    #[test]
    fn lr_phase_decreases_monotonically() {
        let spec = fig1_spec();
        let traj = bang_bang(&spec);
        let tf = traj.tf();
        let mut prev = 0.0;
        for k in 1..=50 {
            let t = tf * k as f64 / 50.0;
            let a = lr_phase(&traj, &spec, 1, t).unwrap();
            assert!(a < prev);
            prev = a;
        }
    }

    #[test]
    fn natural_units_round_trip_and_keep_gamma() {
        let spec = fig1_spec().with_tf(0.03).unwrap();
        let (scaled, scales) = nondimensionalize(&spec).unwrap();
        assert_eq!(scaled.mass, 1.0);
        assert_eq!(scaled.omega0, 1.0);
        assert_relative_eq!(
            scaled.gamma().unwrap(),
            spec.gamma().unwrap(),
            max_relative = 1e-13
        );
        let back = scales.restore(&scaled).unwrap();
        assert_relative_eq!(back.mass, spec.mass, max_relative = 1e-14);
        assert_relative_eq!(back.omega0, spec.omega0, max_relative = 1e-14);
        assert_relative_eq!(back.d, spec.d, max_relative = 1e-14);
        assert_relative_eq!(back.tf.unwrap(), 0.03, max_relative = 1e-14);
        assert_relative_eq!(back.delta.unwrap(), spec.delta().unwrap(), max_relative = 1e-14);
    }

    #[test]
    fn oscillator_length_for_rubidium() {
        let spec = fig1_spec();
        let (_, scales) = nondimensionalize(&spec).unwrap();
        // sqrt(ħ/(m omega0)) evaluated by hand for Rb-87 at 2π·50 rad/s
        assert_relative_eq!(scales.length, 1.5251e-6, max_relative = 1e-4);
    }
}
