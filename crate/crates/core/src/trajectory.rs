//! Piecewise-polynomial center-of-mass trajectories and the inverse map to
//! trap trajectories.
//!
//! A trajectory stores exact per-segment cubic coefficients for `q_c(t)`;
//! the control `u(t) = −q̈_c/omega0²` and the trap path
//! `q_0(t) = q_c(t) − u(t)` are derived on evaluation, never sampled into
//! arrays. Position and velocity are continuous across every breakpoint;
//! acceleration (and therefore `u` and `q_0`) may jump there.

use serde::{Deserialize, Serialize};

use crate::{Error, Result, TransportSpec};

/// Position, velocity and acceleration of the center of mass at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Motion {
    pub position: f64,
    pub velocity: f64,
    pub acceleration: f64,
}

/// One cubic piece of `q_c` in local time `x = t − start`:
/// `q_c = c[0] + c[1] x + c[2] x² + c[3] x³`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub coeffs: [f64; 4],
}

impl Segment {
    fn eval(&self, x: f64) -> Motion {
        let [c0, c1, c2, c3] = self.coeffs;
        Motion {
            position: c0 + x * (c1 + x * (c2 + x * c3)),
            velocity: c1 + x * (2.0 * c2 + x * 3.0 * c3),
            acceleration: 2.0 * c2 + 6.0 * c3 * x,
        }
    }
}

/// How the stored segments relate to the designed curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Representation {
    /// Segments are the closed form itself.
    Exact,
    /// Dense cubic Hermite interpolant of a higher-degree curve; positions
    /// are within `position_error_bound` of the exact curve everywhere.
    CubicHermite { nodes: usize, position_error_bound: f64 },
}

/// One sample of the control signal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ControlSample {
    /// Time, s.
    pub t: f64,
    /// Relative displacement `q_c − q_0`, m.
    pub u: f64,
}

/// Breakpointed polynomial representation of `q_c(t)` on `[0, tf]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseTrajectory {
    breakpoints: Vec<f64>,
    segments: Vec<Segment>,
    omega0: f64,
    representation: Representation,
}

impl PiecewiseTrajectory {
    /// Builds a trajectory from raw pieces, validating breakpoint ordering
    /// and position/velocity continuity at every interior breakpoint.
    pub fn from_segments(
        omega0: f64,
        breakpoints: Vec<f64>,
        segments: Vec<Segment>,
        representation: Representation,
    ) -> Result<Self> {
        if !(omega0.is_finite() && omega0 > 0.0) {
            return Err(Error::InvalidSpec {
                field: "omega0",
                reason: format!("must be finite and > 0, got {omega0}"),
            });
        }
        if breakpoints.len() < 2 || segments.len() + 1 != breakpoints.len() {
            return Err(Error::Argument(format!(
                "need k >= 1 segments and k+1 breakpoints, got {} and {}",
                segments.len(),
                breakpoints.len()
            )));
        }
        if breakpoints[0] != 0.0 {
            return Err(Error::Argument("breakpoints must start at 0".into()));
        }
        for w in breakpoints.windows(2) {
            if !(w[1].is_finite() && w[1] > w[0]) {
                return Err(Error::Argument(format!(
                    "breakpoints must be finite and strictly increasing, got {} then {}",
                    w[0], w[1]
                )));
            }
        }
        let traj = Self { breakpoints, segments, omega0, representation };
        let scale = traj
            .segments
            .iter()
            .flat_map(|s| s.coeffs)
            .fold(0.0_f64, |m, c| m.max(c.abs()))
            .max(f64::MIN_POSITIVE);
        let vscale = scale / traj.tf().max(f64::MIN_POSITIVE);
        for i in 1..traj.segments.len() {
            let left = traj.eval_in_segment(i - 1, traj.breakpoints[i]);
            let right = traj.eval_in_segment(i, traj.breakpoints[i]);
            if (left.position - right.position).abs() > 1e-9 * scale
                || (left.velocity - right.velocity).abs() > 1e-9 * vscale.max(scale)
            {
                return Err(Error::Argument(format!(
                    "position/velocity discontinuity at breakpoint t = {}",
                    traj.breakpoints[i]
                )));
            }
        }
        Ok(traj)
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn tf(&self) -> f64 {
        *self.breakpoints.last().unwrap()
    }

    /// Final position `q_c(tf)`.
    pub fn target(&self) -> f64 {
        self.eval_in_segment(self.segments.len() - 1, self.tf()).position
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn representation(&self) -> Representation {
        self.representation
    }

    /// Index of the segment containing `t`, right-continuous at interior
    /// breakpoints; `t = tf` maps onto the last segment.
    pub fn segment_index(&self, t: f64) -> usize {
        let idx = self.breakpoints.partition_point(|&b| b <= t);
        idx.saturating_sub(1).min(self.segments.len() - 1)
    }

    /// Evaluates the stated segment at absolute time `t` (no domain check),
    /// giving access to one-sided limits at breakpoints.
    pub fn eval_in_segment(&self, seg: usize, t: f64) -> Motion {
        self.segments[seg].eval(t - self.breakpoints[seg])
    }

    /// Position, velocity and acceleration at `t ∈ [0, tf]`. At interior
    /// breakpoints the acceleration comes from the right-hand segment;
    /// position and velocity are identical from both sides.
    pub fn eval(&self, t: f64) -> Result<Motion> {
        let tf = self.tf();
        if !(0.0..=tf).contains(&t) {
            return Err(Error::OutOfDomain { t, tf });
        }
        Ok(self.eval_in_segment(self.segment_index(t), t))
    }

    /// Control `u(t) = −q̈_c(t)/omega0²` on `[0, tf]`, right-continuous at
    /// jumps. The interior value at `t = 0` is the right limit `u(0⁺)`; the
    /// conventional outside values `u = 0` for `t <= 0`, `t >= tf` are the
    /// business of [`Self::trap_position`] sampling.
    pub fn control(&self, t: f64) -> Result<f64> {
        Ok(-self.eval(t)?.acceleration / (self.omega0 * self.omega0))
    }

    /// Trap center position for any `t`: `0` for `t <= 0`, `d` for
    /// `t >= tf`, and `q_c + q̈_c/omega0²` in between (right-continuous).
    pub fn trap_position(&self, t: f64) -> f64 {
        if t <= 0.0 {
            0.0
        } else if t >= self.tf() {
            self.target()
        } else {
            let m = self.eval_in_segment(self.segment_index(t), t);
            m.position + m.acceleration / (self.omega0 * self.omega0)
        }
    }

    /// Largest |u| over the stored representation. Control is linear on each
    /// segment, so the extremum sits at a segment end.
    pub fn peak_control(&self) -> f64 {
        let w2 = self.omega0 * self.omega0;
        let mut peak = 0.0_f64;
        for (i, seg) in self.segments.iter().enumerate() {
            let a = seg.eval(0.0).acceleration.abs();
            let b = seg
                .eval(self.breakpoints[i + 1] - self.breakpoints[i])
                .acceleration
                .abs();
            peak = peak.max(a).max(b);
        }
        peak / w2
    }
}

/// Builds a trajectory from consecutive control pieces, integrating
/// `q̈_c = −omega0² u` from rest at the origin. Position and velocity are
/// chained across pieces, so continuity is exact by construction.
pub struct TrajectoryBuilder {
    omega0: f64,
    breakpoints: Vec<f64>,
    segments: Vec<Segment>,
    position: f64,
    velocity: f64,
}

impl TrajectoryBuilder {
    pub fn new(omega0: f64) -> Self {
        Self {
            omega0,
            breakpoints: vec![0.0],
            segments: Vec::new(),
            position: 0.0,
            velocity: 0.0,
        }
    }

    /// Appends a piece of duration `len` with constant control `u`.
    pub fn constant_control(self, len: f64, u: f64) -> Self {
        self.linear_control(len, u, u)
    }

    /// Appends a piece of duration `len` over which the control ramps
    /// linearly from `u_start` to `u_end`.
    pub fn linear_control(mut self, len: f64, u_start: f64, u_end: f64) -> Self {
        assert!(len > 0.0, "piece duration must be positive");
        let w2 = self.omega0 * self.omega0;
        let slope = (u_end - u_start) / len;
        let seg = Segment {
            coeffs: [
                self.position,
                self.velocity,
                -w2 * u_start / 2.0,
                -w2 * slope / 6.0,
            ],
        };
        let end = seg.eval(len);
        self.position = end.position;
        self.velocity = end.velocity;
        let t_end = self.breakpoints.last().unwrap() + len;
        self.breakpoints.push(t_end);
        self.segments.push(seg);
        self
    }

    pub fn finish(self) -> PiecewiseTrajectory {
        assert!(!self.segments.is_empty(), "at least one piece required");
        PiecewiseTrajectory {
            breakpoints: self.breakpoints,
            segments: self.segments,
            omega0: self.omega0,
            representation: Representation::Exact,
        }
    }
}

/// Number of Hermite pieces used to represent the quintic baseline.
const ANSATZ_SEGMENTS: usize = 1024;

/// Smooth polynomial baseline: the unique quintic satisfying all six rest
/// conditions at both ends, `q_c(s) = d (10 s³ − 15 s⁴ + 6 s⁵)`, `s = t/tf`.
///
/// Stored as a 1024-piece cubic Hermite interpolant (the trajectory type is
/// capped at cubic segments); the interpolation error is below
/// `h⁴/384 · max|q_c⁗| ≈ 0.9 d / 1024⁴ < 1e−12 d` in position.
pub fn polynomial_ansatz(spec: &TransportSpec) -> Result<PiecewiseTrajectory> {
    let tf = spec.tf()?;
    let d = spec.d;
    let n = ANSATZ_SEGMENTS;

    let pos = |s: f64| d * s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
    let vel = |s: f64| d / tf * s * s * (30.0 + s * (-60.0 + 30.0 * s));

    let mut breakpoints = Vec::with_capacity(n + 1);
    let mut segments = Vec::with_capacity(n);
    let h = tf / n as f64;
    let mut p0 = pos(0.0);
    let mut v0 = vel(0.0);
    breakpoints.push(0.0);
    for i in 0..n {
        let s1 = (i + 1) as f64 / n as f64;
        let (p1, v1) = (pos(s1), vel(s1));
        let dp = p1 - p0;
        // Hermite cubic on [0, h] matching (p0, v0) and (p1, v1).
        let c2 = (3.0 * dp - (2.0 * v0 + v1) * h) / (h * h);
        let c3 = (-2.0 * dp + (v0 + v1) * h) / (h * h * h);
        segments.push(Segment { coeffs: [p0, v0, c2, c3] });
        breakpoints.push(s1 * tf);
        p0 = p1;
        v0 = v1;
    }
    *breakpoints.last_mut().unwrap() = tf;

    Ok(PiecewiseTrajectory {
        breakpoints,
        segments,
        omega0: spec.omega0,
        representation: Representation::CubicHermite {
            nodes: n + 1,
            position_error_bound: 1e-12 * d,
        },
    })
}

/// Outcome of one boundary or continuity check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub name: &'static str,
    /// Measured residual, in the quantity's own units.
    pub value: f64,
    /// Scale the tolerance multiplies.
    pub scale: f64,
    pub pass: bool,
}

/// Structured verdict of [`check_boundary_conditions`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundaryReport {
    pub pass: bool,
    pub checks: Vec<ConditionCheck>,
    /// Interior control value `u(0⁺)`; a nonzero value is the permitted
    /// sudden trap offset at the start, reported rather than failed.
    pub edge_control_start: f64,
    /// Interior control value `u(tf⁻)`.
    pub edge_control_end: f64,
}

/// Verifies the rest-to-rest conditions `q_c(0) = 0`, `q̇_c(0) = 0`,
/// `q_c(tf) = d`, `q̇_c(tf) = 0` and interior position/velocity continuity,
/// each within `tol` times a per-quantity scale (`d` for positions, `d/tf`
/// for velocities). Acceleration is only required to be integrable: edge and
/// interior jumps of `q̈_c` are legal, and the edge control values are noted
/// in the report.
pub fn check_boundary_conditions(
    trajectory: &PiecewiseTrajectory,
    spec: &TransportSpec,
    tol: f64,
) -> BoundaryReport {
    let tf = trajectory.tf();
    let d = spec.d;
    let pos_scale = d;
    let vel_scale = d / tf;
    let w2 = trajectory.omega0() * trajectory.omega0();

    let start = trajectory.eval_in_segment(0, 0.0);
    let last = trajectory.segments().len() - 1;
    let end = trajectory.eval_in_segment(last, tf);

    let mut checks = vec![
        ConditionCheck {
            name: "start_position",
            value: start.position.abs(),
            scale: pos_scale,
            pass: start.position.abs() <= tol * pos_scale,
        },
        ConditionCheck {
            name: "start_velocity",
            value: start.velocity.abs(),
            scale: vel_scale,
            pass: start.velocity.abs() <= tol * vel_scale,
        },
        ConditionCheck {
            name: "end_position",
            value: (end.position - d).abs(),
            scale: pos_scale,
            pass: (end.position - d).abs() <= tol * pos_scale,
        },
        ConditionCheck {
            name: "end_velocity",
            value: end.velocity.abs(),
            scale: vel_scale,
            pass: end.velocity.abs() <= tol * vel_scale,
        },
    ];

    let mut max_pos_jump = 0.0_f64;
    let mut max_vel_jump = 0.0_f64;
    for i in 1..trajectory.segments().len() {
        let t = trajectory.breakpoints()[i];
        let l = trajectory.eval_in_segment(i - 1, t);
        let r = trajectory.eval_in_segment(i, t);
        max_pos_jump = max_pos_jump.max((l.position - r.position).abs());
        max_vel_jump = max_vel_jump.max((l.velocity - r.velocity).abs());
    }
    checks.push(ConditionCheck {
        name: "interior_position_continuity",
        value: max_pos_jump,
        scale: pos_scale,
        pass: max_pos_jump <= tol * pos_scale,
    });
    checks.push(ConditionCheck {
        name: "interior_velocity_continuity",
        value: max_vel_jump,
        scale: vel_scale,
        pass: max_vel_jump <= tol * vel_scale,
    });

    BoundaryReport {
        pass: checks.iter().all(|c| c.pass),
        checks,
        edge_control_start: -start.acceleration / w2,
        edge_control_end: -end.acceleration / w2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::MASS_RB87;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::PI;

    fn fig1_spec() -> TransportSpec {
        TransportSpec::new(MASS_RB87, 2.0 * PI * 50.0, 1.6e-3)
            .unwrap()
            .with_delta(1.6e-4)
            .unwrap()
    }

    /// Unbounded energy-optimal curve `q_c = d t²/tf² (3 − 2 t/tf)` as a
    /// single exact cubic piece.
    fn smooth_cubic(omega0: f64, d: f64, tf: f64) -> PiecewiseTrajectory {
        PiecewiseTrajectory::from_segments(
            omega0,
            vec![0.0, tf],
            vec![Segment { coeffs: [0.0, 0.0, 3.0 * d / (tf * tf), -2.0 * d / (tf * tf * tf)] }],
            Representation::Exact,
        )
        .unwrap()
    }

    #[test]
    fn smooth_cubic_midpoint_is_half_distance() {
        let traj = smooth_cubic(100.0, 1.6e-3, 0.03);
        let m = traj.eval(0.015).unwrap();
        assert_relative_eq!(m.position, 0.8e-3, max_relative = 1e-14);
    }

    #[test]
    fn eval_at_zero_is_at_rest() {
        let traj = smooth_cubic(100.0, 2.0e-3, 0.05);
        let m = traj.eval(0.0).unwrap();
        assert_eq!(m.position, 0.0);
        assert_eq!(m.velocity, 0.0);
    }

    #[test]
    fn eval_rejects_times_outside_domain() {
        let traj = smooth_cubic(100.0, 1.0e-3, 0.02);
        assert!(matches!(traj.eval(-1e-9), Err(Error::OutOfDomain { .. })));
        assert!(matches!(traj.eval(0.02 + 1e-9), Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn smooth_cubic_control_matches_linear_ramp() {
        let (omega0, d, tf) = (2.0 * PI * 50.0, 1.6e-3, 0.03);
        let traj = smooth_cubic(omega0, d, tf);
        let ramp = |t: f64| 6.0 * d / (omega0 * omega0 * tf * tf) * (2.0 * t / tf - 1.0);
        for &t in &[1e-6, 0.01, 0.015, 0.0299] {
            assert_relative_eq!(traj.control(t).unwrap(), ramp(t), max_relative = 1e-12);
        }
    }

    #[test]
    fn coasting_piece_has_zero_control() {
        let traj = TrajectoryBuilder::new(100.0)
            .constant_control(0.01, -1e-4)
            .constant_control(0.01, 0.0)
            .constant_control(0.01, 1e-4)
            .finish();
        assert_abs_diff_eq!(traj.control(0.015).unwrap(), 0.0);
    }

    #[test]
    fn bang_segments_saturate_control() {
        let spec = fig1_spec();
        let delta = spec.delta().unwrap();
        let traj = TrajectoryBuilder::new(spec.omega0)
            .constant_control(0.01, -delta)
            .constant_control(0.01, delta)
            .finish();
        assert_relative_eq!(traj.control(0.003).unwrap(), -delta, max_relative = 1e-14);
        // right-continuous at the switch
        assert_relative_eq!(traj.control(0.01).unwrap(), delta, max_relative = 1e-14);
    }

    #[test]
    fn trap_position_outside_window_is_clamped() {
        let traj = smooth_cubic(100.0, 1.6e-3, 0.03);
        assert_eq!(traj.trap_position(-0.5), 0.0);
        assert_eq!(traj.trap_position(0.0), 0.0);
        assert_relative_eq!(traj.trap_position(0.5), 1.6e-3, max_relative = 1e-14);
    }

    #[test]
    fn bang_start_trap_jumps_to_bound() {
        // A protocol starting with u = −delta puts the trap at +delta just
        // after t = 0.
        let delta = 1.6e-4;
        let traj = TrajectoryBuilder::new(100.0)
            .constant_control(0.01, -delta)
            .constant_control(0.01, delta)
            .finish();
        assert_relative_eq!(traj.trap_position(1e-12), delta, max_relative = 1e-9);
    }

    #[test]
    fn ansatz_tracks_quintic_within_bound() {
        let spec = fig1_spec().with_tf(0.03).unwrap();
        let traj = polynomial_ansatz(&spec).unwrap();
        let (d, tf) = (spec.d, 0.03);
        let quintic =
            |s: f64| d * s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
        let mut worst = 0.0_f64;
        for k in 0..=20_000 {
            let t = tf * k as f64 / 20_000.0;
            let got = traj.eval(t).unwrap().position;
            worst = worst.max((got - quintic(t / tf)).abs());
        }
        assert!(worst <= 1e-12 * d, "position error {worst:e} above bound");
        match traj.representation() {
            Representation::CubicHermite { position_error_bound, .. } => {
                assert!(worst <= position_error_bound)
            }
            _ => panic!("ansatz must record its interpolated representation"),
        }
    }

    #[test]
    fn ansatz_midpoint_and_edge_accelerations() {
        let spec = fig1_spec().with_tf(0.03).unwrap();
        let tf = 0.03;
        let traj = polynomial_ansatz(&spec).unwrap();
        assert_relative_eq!(
            traj.eval(tf / 2.0).unwrap().position,
            spec.d / 2.0,
            max_relative = 1e-11
        );
        // The quintic has zero end accelerations; the Hermite representation
        // reproduces them to its O(h²) second-derivative accuracy.
        let acc_scale = spec.d / (tf * tf);
        assert!(traj.eval(0.0).unwrap().acceleration.abs() <= 1e-4 * acc_scale);
        assert!(traj.eval(tf).unwrap().acceleration.abs() <= 1e-4 * acc_scale);
    }

    #[test]
    fn ansatz_peak_control_matches_quintic_maximum() {
        let spec = fig1_spec().with_tf(0.03).unwrap();
        let traj = polynomial_ansatz(&spec).unwrap();
        // max |q̈| of the quintic is 10 d / (sqrt(3) tf²); dense sampling of
        // the stored control must agree.
        let predicted =
            10.0 * spec.d / (3.0_f64.sqrt() * spec.omega0.powi(2) * 0.03_f64.powi(2));
        assert_relative_eq!(traj.peak_control(), predicted, max_relative = 1e-5);
        let mut sampled = 0.0_f64;
        for k in 1..100_000 {
            let t = 0.03 * k as f64 / 100_000.0;
            sampled = sampled.max(traj.control(t).unwrap().abs());
        }
        assert_relative_eq!(sampled, predicted, max_relative = 1e-5);
    }

    #[test]
    fn ansatz_requires_horizon() {
        let spec = fig1_spec();
        assert!(matches!(polynomial_ansatz(&spec), Err(Error::Missing("tf"))));
    }

    #[test]
    fn boundary_check_passes_for_ansatz() {
        let spec = fig1_spec().with_tf(0.03).unwrap();
        let traj = polynomial_ansatz(&spec).unwrap();
        let report = check_boundary_conditions(&traj, &spec, 1e-9);
        assert!(report.pass, "{report:#?}");
        // no trap jump at the edges for the smooth baseline
        assert!(report.edge_control_start.abs() <= 1e-7 * spec.d);
    }

    #[test]
    fn boundary_check_notes_edge_jumps_for_bang_bang() {
        let spec = fig1_spec();
        let delta = spec.delta().unwrap();
        let t1 = spec.tf_min().unwrap() / 2.0;
        let traj = TrajectoryBuilder::new(spec.omega0)
            .constant_control(t1, -delta)
            .constant_control(t1, delta)
            .finish();
        let report = check_boundary_conditions(&traj, &spec, 1e-9);
        assert!(report.pass, "{report:#?}");
        assert_relative_eq!(report.edge_control_start, -delta, max_relative = 1e-12);
        assert_relative_eq!(report.edge_control_end, delta, max_relative = 1e-12);
    }

    #[test]
    fn boundary_check_fails_on_leftover_velocity() {
        let spec = fig1_spec().with_tf(0.03).unwrap();
        let (d, tf, omega0) = (spec.d, 0.03, spec.omega0);
        // single cubic with q(tf) = d but q̇(tf) = 0.1 omega0 d
        let v_end = 0.1 * omega0 * d;
        let c3 = (v_end * tf - 2.0 * d) / (tf * tf * tf);
        let c2 = (d - c3 * tf * tf * tf) / (tf * tf);
        let traj = PiecewiseTrajectory::from_segments(
            omega0,
            vec![0.0, tf],
            vec![Segment { coeffs: [0.0, 0.0, c2, c3] }],
            Representation::Exact,
        )
        .unwrap();
        let report = check_boundary_conditions(&traj, &spec, 1e-9);
        assert!(!report.pass);
        let vel = report.checks.iter().find(|c| c.name == "end_velocity").unwrap();
        assert!(!vel.pass);
        let pos = report.checks.iter().find(|c| c.name == "end_position").unwrap();
        assert!(pos.pass);
    }

    #[test]
    fn from_segments_rejects_discontinuous_pieces() {
        let seg_a = Segment { coeffs: [0.0, 0.0, 1.0, 0.0] };
        let seg_b = Segment { coeffs: [99.0, 0.0, 1.0, 0.0] };
        let out = PiecewiseTrajectory::from_segments(
            100.0,
            vec![0.0, 1.0, 2.0],
            vec![seg_a, seg_b],
            Representation::Exact,
        );
        assert!(out.is_err());
    }

    #[test]
    fn from_segments_rejects_unordered_breakpoints() {
        let seg = Segment { coeffs: [0.0; 4] };
        let out = PiecewiseTrajectory::from_segments(
            100.0,
            vec![0.0, 2.0, 1.0],
            vec![seg, seg],
            Representation::Exact,
        );
        assert!(out.is_err());
    }
}
