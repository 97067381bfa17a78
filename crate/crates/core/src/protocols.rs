//! Closed-form construction of the optimal transport protocols, feasibility
//! classification, and switching-structure certificates from the maximum
//! principle.
//!
//! With state `(q_c, q̇_c)`, dynamics `q̈_c = −omega0² u` and bound
//! `|u| <= delta`, the costate component `p₂(t) = −c₁ t + c₂` is affine in
//! time for every cost considered here, which pins the optimal control to
//! one of three shapes:
//!
//! * minimum time — `u` saturates the bound with a single switch
//!   (bang-bang), giving the shortest horizon `tf = (2/omega0)·sqrt(d/delta)`;
//! * minimum time-integrated |u| — saturate, coast at `u = 0`, saturate
//!   (bang-off-bang);
//! * minimum time-averaged potential energy — saturate, ramp linearly
//!   through zero, saturate (bang-linear-bang), falling back to a pure
//!   linear ramp once the bound is slack (`delta >= 6d/(omega0² tf²)`).

use serde::{Deserialize, Serialize};

use crate::dynamics::{trajectory_costs, CostSummary};
use crate::trajectory::{polynomial_ansatz, PiecewiseTrajectory, TrajectoryBuilder};
use crate::{Error, Result, TransportSpec};

/// Relative tolerance on `gamma` for detecting the degenerate bang-bang
/// boundary; `1 − gamma` within `[−GAMMA_TOL, GAMMA_TOL]` is clamped to 0.
pub const GAMMA_TOL: f64 = 1e-12;

/// Which protocol a result implements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProtocolKind {
    TimeOptimal,
    DisplacementOptimal,
    EnergyOptimalBounded,
    EnergyOptimalUnbounded,
    PolynomialAnsatz,
}

impl ProtocolKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProtocolKind::TimeOptimal => "time-optimal",
            ProtocolKind::DisplacementOptimal => "displacement-optimal",
            ProtocolKind::EnergyOptimalBounded => "energy-optimal-bounded",
            ProtocolKind::EnergyOptimalUnbounded => "energy-optimal-unbounded",
            ProtocolKind::PolynomialAnsatz => "polynomial-ansatz",
        }
    }
}

/// Position of a problem relative to the feasibility boundaries, determined
/// solely by `gamma = 4d/(omega0² tf² delta)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FeasibilityClass {
    /// `gamma > 1`: the horizon is below the bang-bang minimum.
    Infeasible,
    /// `gamma = 1` within tolerance: every protocol collapses to bang-bang.
    DegenerateBangBang,
    /// Strictly feasible with an active bound.
    Interior,
    /// Energy planning with `gamma <= 2/3`: the bound is slack and the
    /// unbounded linear-ramp solution applies.
    UnboundedRegime,
}

/// Alternate roots discarded during planning, kept for inspection.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct PlanDiagnostics {
    pub gamma: Option<f64>,
    /// Larger root of the peak-velocity equation (displacement planning);
    /// it would need `2 t₁ > tf`.
    pub rejected_v0: Option<f64>,
    /// Larger root of the first switching time (energy planning); it would
    /// put the switch past the midpoint mirror.
    pub rejected_t1: Option<f64>,
}

/// A planned protocol: trajectory plus its switching data and costs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProtocolResult {
    /// Problem statement the plan answers, with `tf` filled in.
    pub spec: TransportSpec,
    pub kind: ProtocolKind,
    pub trajectory: PiecewiseTrajectory,
    /// Interior control switching times, strictly inside `(0, tf)`.
    pub switch_times: Vec<f64>,
    /// Peak speed `max_t |q̇_c|`, m/s.
    pub v0: f64,
    pub costs: CostSummary,
    pub feasibility: FeasibilityClass,
    /// Largest |u| realized by the plan (`delta` for saturating protocols,
    /// `6d/(omega0² tf²)` for the unbounded ramp).
    pub peak_control: f64,
    pub diagnostics: PlanDiagnostics,
}

impl ProtocolResult {
    pub fn tf(&self) -> f64 {
        self.trajectory.tf()
    }
}

fn classify_gamma(gamma: f64, energy_planning: bool) -> FeasibilityClass {
    if gamma > 1.0 + GAMMA_TOL {
        FeasibilityClass::Infeasible
    } else if (gamma - 1.0).abs() <= GAMMA_TOL {
        FeasibilityClass::DegenerateBangBang
    } else if energy_planning && gamma <= 2.0 / 3.0 {
        FeasibilityClass::UnboundedRegime
    } else {
        FeasibilityClass::Interior
    }
}

/// Classifies a problem for the given protocol kind. Requires both `tf` and
/// `delta`; equality with the boundaries is tested at [`GAMMA_TOL`].
pub fn classify_feasibility(spec: &TransportSpec, kind: ProtocolKind) -> Result<FeasibilityClass> {
    let gamma = spec.gamma()?;
    Ok(classify_gamma(
        gamma,
        matches!(
            kind,
            ProtocolKind::EnergyOptimalBounded | ProtocolKind::EnergyOptimalUnbounded
        ),
    ))
}

fn infeasible(spec: &TransportSpec, gamma: f64) -> Error {
    Error::Infeasible { gamma, tf_min: spec.tf_min().expect("delta checked") }
}

/// Bang-bang trajectory over a given horizon: `u = −delta` then `+delta`
/// with the switch at `tf/2`.
fn bang_bang_trajectory(omega0: f64, delta: f64, tf: f64) -> PiecewiseTrajectory {
    let t1 = tf / 2.0;
    TrajectoryBuilder::new(omega0)
        .constant_control(t1, -delta)
        .constant_control(tf - t1, delta)
        .finish()
}

/// Minimum-time protocol. Ignores any stored `tf` (the horizon is the
/// output) and returns the bang-bang plan with
/// `tf = (2/omega0)·sqrt(d/delta)`, switch at `tf/2`, and constant
/// instantaneous potential energy `½ m omega0² delta²`.
pub fn plan_time_optimal(spec: &TransportSpec) -> Result<ProtocolResult> {
    let delta = spec.delta()?;
    let tf = spec.tf_min()?;
    let trajectory = bang_bang_trajectory(spec.omega0, delta, tf);
    let costs = trajectory_costs(&trajectory, spec.mass);
    let out_spec = spec.with_tf(tf)?;
    Ok(ProtocolResult {
        spec: out_spec,
        kind: ProtocolKind::TimeOptimal,
        switch_times: vec![tf / 2.0],
        v0: spec.omega0 * (spec.d * delta).sqrt(),
        costs,
        feasibility: FeasibilityClass::DegenerateBangBang,
        peak_control: delta,
        diagnostics: PlanDiagnostics { gamma: Some(1.0), ..Default::default() },
        trajectory,
    })
}

fn degenerate_result(
    spec: &TransportSpec,
    kind: ProtocolKind,
    gamma: f64,
) -> Result<ProtocolResult> {
    let delta = spec.delta()?;
    let tf = spec.tf()?;
    let trajectory = bang_bang_trajectory(spec.omega0, delta, tf);
    let costs = trajectory_costs(&trajectory, spec.mass);
    Ok(ProtocolResult {
        spec: *spec,
        kind,
        switch_times: vec![tf / 2.0],
        v0: spec.omega0 * spec.omega0 * delta * tf / 2.0,
        costs,
        feasibility: FeasibilityClass::DegenerateBangBang,
        peak_control: delta,
        diagnostics: PlanDiagnostics { gamma: Some(gamma), ..Default::default() },
        trajectory,
    })
}

/// Minimum time-integrated |u| over a fixed horizon: bang-off-bang with
/// peak velocity `v₀ = (omega0² delta tf/2)(1 − sqrt(1 − gamma))` (the
/// larger root is rejected), first switch `t₁ = v₀/(omega0² delta)` and
/// coast length `t₂ = d/v₀ − t₁`.
///
/// Degenerates to the bang-bang plan at `gamma = 1`; `gamma > 1` is a
/// structured [`Error::Infeasible`] carrying the minimum feasible horizon.
pub fn plan_displacement_optimal(spec: &TransportSpec) -> Result<ProtocolResult> {
    let tf = spec.tf()?;
    let delta = spec.delta()?;
    let gamma = spec.gamma()?;
    match classify_gamma(gamma, false) {
        FeasibilityClass::Infeasible => Err(infeasible(spec, gamma)),
        FeasibilityClass::DegenerateBangBang => {
            degenerate_result(spec, ProtocolKind::DisplacementOptimal, gamma)
        }
        _ => {
            let w2 = spec.omega0 * spec.omega0;
            let root = (1.0 - gamma).sqrt();
            let v0 = 0.5 * w2 * delta * tf * (1.0 - root);
            let rejected_v0 = 0.5 * w2 * delta * tf * (1.0 + root);
            let t1 = v0 / (w2 * delta);
            let t2 = spec.d / v0 - t1;
            let trajectory = TrajectoryBuilder::new(spec.omega0)
                .constant_control(t1, -delta)
                .constant_control(t2, 0.0)
                .constant_control(tf - t1 - t2, delta)
                .finish();
            let costs = trajectory_costs(&trajectory, spec.mass);
            Ok(ProtocolResult {
                spec: *spec,
                kind: ProtocolKind::DisplacementOptimal,
                switch_times: vec![t1, t1 + t2],
                v0,
                costs,
                feasibility: FeasibilityClass::Interior,
                peak_control: delta,
                diagnostics: PlanDiagnostics {
                    gamma: Some(gamma),
                    rejected_v0: Some(rejected_v0),
                    rejected_t1: None,
                },
                trajectory,
            })
        }
    }
}

fn unbounded_energy_result(spec: &TransportSpec, gamma: Option<f64>) -> Result<ProtocolResult> {
    let tf = spec.tf()?;
    let delta0 = spec.delta_unbounded()?;
    let trajectory = TrajectoryBuilder::new(spec.omega0)
        .linear_control(tf, -delta0, delta0)
        .finish();
    let costs = trajectory_costs(&trajectory, spec.mass);
    Ok(ProtocolResult {
        spec: *spec,
        kind: ProtocolKind::EnergyOptimalUnbounded,
        switch_times: Vec::new(),
        v0: 1.5 * spec.d / tf,
        costs,
        feasibility: FeasibilityClass::UnboundedRegime,
        peak_control: delta0,
        diagnostics: PlanDiagnostics { gamma, ..Default::default() },
        trajectory,
    })
}

/// Minimum time-averaged potential energy over a fixed horizon.
///
/// With no bound, or a slack one (`delta >= 6d/(omega0² tf²)`, i.e.
/// `gamma <= 2/3`), the control is the linear ramp
/// `u = 6d/(omega0² tf²)(2t/tf − 1)`. With an active bound
/// (`2/3 < gamma < 1`) it is bang-linear-bang with
/// `t₁ = (tf/2)(1 − sqrt(3)·sqrt(1 − gamma))` (the plus root is rejected)
/// and a central ramp of slope `2 delta/t₂` through zero at `tf/2`.
pub fn plan_energy_optimal(spec: &TransportSpec) -> Result<ProtocolResult> {
    let tf = spec.tf()?;
    let Some(delta) = spec.delta else {
        return unbounded_energy_result(spec, None);
    };
    let gamma = spec.gamma()?;
    match classify_gamma(gamma, true) {
        FeasibilityClass::Infeasible => Err(infeasible(spec, gamma)),
        FeasibilityClass::DegenerateBangBang => {
            degenerate_result(spec, ProtocolKind::EnergyOptimalBounded, gamma)
        }
        FeasibilityClass::UnboundedRegime => unbounded_energy_result(spec, Some(gamma)),
        _ => {
            let w2 = spec.omega0 * spec.omega0;
            let root3 = 3.0_f64.sqrt();
            let s = (1.0 - gamma).sqrt();
            let t1 = 0.5 * tf * (1.0 - root3 * s);
            if t1 <= tf * 1e-15 {
                // floating-point shadow of the gamma = 2/3 boundary
                return unbounded_energy_result(spec, Some(gamma));
            }
            let rejected_t1 = 0.5 * tf * (1.0 + root3 * s);
            let t2 = tf - 2.0 * t1;
            let trajectory = TrajectoryBuilder::new(spec.omega0)
                .constant_control(t1, -delta)
                .linear_control(t2, -delta, delta)
                .constant_control(tf - t1 - t2, delta)
                .finish();
            let costs = trajectory_costs(&trajectory, spec.mass);
            Ok(ProtocolResult {
                spec: *spec,
                kind: ProtocolKind::EnergyOptimalBounded,
                switch_times: vec![t1, t1 + t2],
                v0: 0.5 * w2 * delta * tf * (1.0 - 0.5 * root3 * s),
                costs,
                feasibility: FeasibilityClass::Interior,
                peak_control: delta,
                diagnostics: PlanDiagnostics {
                    gamma: Some(gamma),
                    rejected_v0: None,
                    rejected_t1: Some(rejected_t1),
                },
                trajectory,
            })
        }
    }
}

/// Smooth quintic baseline wrapped as a protocol result. Carries no
/// optimality claim; its feasibility class is informational only.
pub fn plan_polynomial(spec: &TransportSpec) -> Result<ProtocolResult> {
    let tf = spec.tf()?;
    let trajectory = polynomial_ansatz(spec)?;
    let costs = trajectory_costs(&trajectory, spec.mass);
    let (feasibility, gamma) = match spec.delta {
        Some(_) => {
            let g = spec.gamma()?;
            (classify_gamma(g, false), Some(g))
        }
        None => (FeasibilityClass::Interior, None),
    };
    let peak_control = trajectory.peak_control();
    Ok(ProtocolResult {
        spec: *spec,
        kind: ProtocolKind::PolynomialAnsatz,
        switch_times: Vec::new(),
        v0: 15.0 * spec.d / (8.0 * tf),
        costs,
        feasibility,
        peak_control,
        diagnostics: PlanDiagnostics { gamma, ..Default::default() },
        trajectory,
    })
}

/// Lower bound on the time-averaged potential energy over all rest-to-rest
/// trajectories, `6 m d² / (omega0² tf⁴)`, attained by the unbounded
/// energy-optimal ramp.
pub fn ep_lower_bound(spec: &TransportSpec) -> Result<f64> {
    let tf = spec.tf()?;
    Ok(6.0 * spec.mass * spec.d * spec.d / (spec.omega0 * spec.omega0 * tf.powi(4)))
}

/// Time-averaged potential energy of the displacement-optimal protocol,
/// `½ m omega0² delta² (1 − sqrt(1 − gamma))`.
pub fn displacement_mean_ep(spec: &TransportSpec) -> Result<f64> {
    let delta = spec.delta()?;
    let gamma = spec.gamma()?;
    if classify_gamma(gamma, false) == FeasibilityClass::Infeasible {
        return Err(infeasible(spec, gamma));
    }
    let s = (1.0 - gamma).max(0.0).sqrt();
    Ok(0.5 * spec.mass * spec.omega0 * spec.omega0 * delta * delta * (1.0 - s))
}

/// Time-averaged potential energy of the energy-optimal protocol:
/// the lower bound when `gamma <= 2/3`, otherwise
/// `½ m omega0² delta² (1 − (2·sqrt(3)/3)·sqrt(1 − gamma))`.
pub fn energy_mean_ep(spec: &TransportSpec) -> Result<f64> {
    let delta = spec.delta()?;
    let gamma = spec.gamma()?;
    match classify_gamma(gamma, true) {
        FeasibilityClass::Infeasible => Err(infeasible(spec, gamma)),
        FeasibilityClass::UnboundedRegime => ep_lower_bound(spec),
        _ => {
            let s = (1.0 - gamma).max(0.0).sqrt();
            let w2 = spec.omega0 * spec.omega0;
            Ok(0.5 * spec.mass * w2 * delta * delta * (1.0 - 2.0 / 3.0_f64.sqrt() * s))
        }
    }
}

/// Switching structure certified by the costate reconstruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SwitchingStructure {
    BangBang,
    BangOffBang,
    BangLinearBang,
    Linear,
}

/// Cost normalization the costate scale refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CostateNormalization {
    /// `p₀ = −1` (time cost); the control Hamiltonian vanishes on the
    /// optimal arc.
    Time,
    /// `p₀ = −omega0²` (displacement cost); switching thresholds at
    /// `p₂ = ±1`.
    Displacement,
    /// `p₀ = −1/m` (energy cost); interior control `u = −p₂`, switching
    /// thresholds at `p₂ = ±delta`.
    Energy,
}

/// Reconstructed costate line `p₂(t) = −c₁ t + c₂` and the verdict on
/// whether it reproduces the protocol's switching pattern.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PmpCertificate {
    pub c1: f64,
    pub c2: f64,
    pub predicted_switches: Vec<f64>,
    pub structure: SwitchingStructure,
    pub normalization: CostateNormalization,
    pub valid: bool,
    /// Largest |u_rule − u_plan| over the sampled interior, relative to the
    /// control scale.
    pub max_control_mismatch: f64,
}

const CERT_SAMPLES: usize = 2000;
const CERT_TOL: f64 = 1e-9;

fn control_rule(
    structure: SwitchingStructure,
    normalization: CostateNormalization,
    p2: f64,
    delta: f64,
) -> f64 {
    match (structure, normalization) {
        (SwitchingStructure::BangBang, _) => {
            if p2 > 0.0 {
                -delta
            } else {
                delta
            }
        }
        (SwitchingStructure::BangOffBang, _) => {
            if p2 > 1.0 {
                -delta
            } else if p2 < -1.0 {
                delta
            } else {
                0.0
            }
        }
        (SwitchingStructure::BangLinearBang, _) => (-p2).clamp(-delta, delta),
        (SwitchingStructure::Linear, _) => -p2,
    }
}

/// Rebuilds the affine costate consistent with a planned protocol and checks
/// that the maximum-principle control rule reproduces the planned control
/// and switch times. The polynomial baseline is rejected: it makes no
/// optimality claim.
pub fn pmp_certificate(result: &ProtocolResult) -> Result<PmpCertificate> {
    let tf = result.tf();
    let w2 = result.spec.omega0 * result.spec.omega0;
    let delta = result.spec.delta.unwrap_or(result.peak_control);

    let (c1, c2, structure, normalization) = match result.kind {
        ProtocolKind::PolynomialAnsatz => {
            return Err(Error::UnsupportedKind(result.kind.as_str()))
        }
        ProtocolKind::TimeOptimal => {
            // H_c = 0 on a free-horizon optimal arc fixes the scale:
            // p₂(0) = 1/(omega0² delta), and the sign change sits at t₁.
            let t1 = result.switch_times[0];
            let c2 = 1.0 / (w2 * delta);
            (c2 / t1, c2, SwitchingStructure::BangBang, CostateNormalization::Time)
        }
        _ if result.feasibility == FeasibilityClass::DegenerateBangBang => {
            // the fixed-horizon problems collapse to the bang-bang plan;
            // certify the single sign change with a unit-scale costate
            let t1 = result.switch_times[0];
            let c1 = 2.0 / tf;
            (c1, c1 * t1, SwitchingStructure::BangBang, CostateNormalization::Time)
        }
        ProtocolKind::DisplacementOptimal => {
            // p₂ crosses +1 at t₁ and −1 at t₁+t₂
            let (t1, t12) = (result.switch_times[0], result.switch_times[1]);
            let c1 = 2.0 / (t12 - t1);
            let c2 = 1.0 + c1 * t1;
            (c1, c2, SwitchingStructure::BangOffBang, CostateNormalization::Displacement)
        }
        ProtocolKind::EnergyOptimalBounded => {
            // interior control u = −p₂ matches the stored ramp slope
            let (t1, t12) = (result.switch_times[0], result.switch_times[1]);
            let slope = 2.0 * delta / (t12 - t1);
            (slope, slope * tf / 2.0, SwitchingStructure::BangLinearBang, CostateNormalization::Energy)
        }
        ProtocolKind::EnergyOptimalUnbounded => {
            let delta0 = result.peak_control;
            let c1 = 2.0 * delta0 / tf;
            (c1, delta0, SwitchingStructure::Linear, CostateNormalization::Energy)
        }
    };

    let p2 = |t: f64| -c1 * t + c2;

    // crossing times of the relevant thresholds, kept if strictly interior
    let threshold = match structure {
        SwitchingStructure::BangBang => vec![0.0],
        SwitchingStructure::BangOffBang => vec![1.0, -1.0],
        SwitchingStructure::BangLinearBang => vec![delta, -delta],
        SwitchingStructure::Linear => Vec::new(),
    };
    let mut predicted_switches: Vec<f64> = threshold
        .iter()
        .filter_map(|&level| {
            if c1 == 0.0 {
                return None;
            }
            let t = (c2 - level) / c1;
            (t > tf * 1e-12 && t < tf * (1.0 - 1e-12)).then_some(t)
        })
        .collect();
    predicted_switches.sort_by(|a, b| a.partial_cmp(b).unwrap());

    // the costate must decrease (first bang pushes backward) and the
    // predicted switches must land on the planned ones
    let mut valid = c1 > 0.0 || structure == SwitchingStructure::Linear;
    valid &= predicted_switches.len() == result.switch_times.len();
    if valid {
        for (p, a) in predicted_switches.iter().zip(&result.switch_times) {
            valid &= (p - a).abs() <= CERT_TOL * tf;
        }
    }

    // replay the control rule against the stored trajectory
    let scale = result.peak_control.max(f64::MIN_POSITIVE);
    let guard = tf * 1e-9;
    let mut max_control_mismatch = 0.0_f64;
    for k in 0..=CERT_SAMPLES {
        let t = tf * k as f64 / CERT_SAMPLES as f64;
        if t < guard || t > tf - guard {
            continue;
        }
        if result.switch_times.iter().any(|s| (t - s).abs() <= guard) {
            continue;
        }
        let u_rule = control_rule(structure, normalization, p2(t), delta);
        let u_plan = result.trajectory.control(t)?;
        max_control_mismatch = max_control_mismatch.max((u_rule - u_plan).abs() / scale);
    }
    valid &= max_control_mismatch <= CERT_TOL;

    Ok(PmpCertificate {
        c1,
        c2,
        predicted_switches,
        structure,
        normalization,
        valid,
        max_control_mismatch,
    })
}
