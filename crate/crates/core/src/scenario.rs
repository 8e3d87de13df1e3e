//! End-to-end scenario runs: basis tables through windings, faults, the
//! electrical solve, demodulation, and accuracy metrics.
//!
//! [`simulate`] wires the whole chain for one run. Its inputs pick one
//! of three inductance sources:
//!
//! * **Synthetic** — tables generated from a machine geometry by the
//!   permeance-network stand-in ([`generate_synthetic_basis`]);
//! * **Provided** — tables computed elsewhere (typically finite-element
//!   results loaded from a file by a front end);
//! * **Ideal** — a textbook resolver with perfectly sinusoidal coupling
//!   and constant excitation self-inductance, useful as a noise floor
//!   for the chain itself. Faults are meaningless here and rejected.
//!
//! For the physical modes the winding profiles are assembled onto the
//! tables per tooth, faults rescale turns and airgaps via
//! [`apply_faults`], and the three inductance profiles are built one of
//! two ways:
//!
//! * **grid path** (healthy machines, shorted turns, static
//!   eccentricity): every effect is a function of the rotor angle alone,
//!   so the profiles are assembled on the angle grid — eccentricity
//!   factors included — and fitted once as Fourier series;
//! * **runtime path** (any dynamic eccentricity): the airgap factors
//!   depend on time as well as angle, so the fits must stop short of
//!   them. The contribution routed through each excitation tooth's basis
//!   column is fitted separately, and the per-tooth gap factors multiply
//!   the fitted groups at every time step, with the whirl angle advancing
//!   at the mechanical speed from zero at `t = 0`.
//!
//! The angle alignment is always commissioned from the *healthy*
//! profiles — fault detection presumes a sensor calibrated before the
//! fault — and the same alignment then decodes the faulted run.

use alloc::vec::Vec;

use crate::assembly::{
    assemble_mutual, assemble_self_excitation, fit_fourier, AssemblyError, FourierSeries,
};
use crate::basis::{generate_synthetic_basis, BasisError, BasisSet};
use crate::circuit::{
    induced_voltage, solve_excitation_current, CircuitError, ConstantInductance,
    ExcitationSource, InductanceModel, Timebase, TimebaseWarning, WaveRecord,
};
use crate::demod::{
    demodulate, estimate_angle, position_metrics, AngleAlignment, AngleEstimate, DemodError,
    Envelopes, PositionMetrics,
};
use crate::fault::{apply_faults, FaultError, FaultSpec, FaultedBasisView};
use crate::geometry::Geometry;
use crate::math;
use crate::winding::{
    alternating_excitation_turns, non_overlapping_preset, overlapping_signal_turns,
    validate_winding, TurnVector, WindingError,
};

/// Smallest healthy fundamental coupling, relative to the largest value
/// the basis tables and turn counts could produce, that counts as a real
/// signal path. Fits below this are rounding residue of a layout that
/// does not couple at the electrical order, and alignment refuses them.
pub const COUPLING_FLOOR_RELATIVE: f64 = 1e-9;

/// Where the inductance tables of a run come from.
#[derive(Debug, Clone, PartialEq)]
pub enum BasisMode {
    /// Generate tables from the geometry with the permeance-network
    /// stand-in, on a grid of `samples_per_rev` rotor angles.
    Synthetic {
        /// Machine to model.
        geometry: Geometry,
        /// Rotor grid resolution `K`.
        samples_per_rev: usize,
    },
    /// Use tables computed elsewhere.
    Provided(BasisSet),
    /// Skip the tables: sinusoidal coupling `amplitude_h *
    /// sin(pole_pairs * theta)` (sine channel; cosine in exact
    /// quadrature) and a constant excitation self-inductance `l_ee_h`.
    Ideal {
        /// Peak mutual inductance, henries.
        amplitude_h: f64,
        /// Excitation self-inductance, henries.
        l_ee_h: f64,
        /// Electrical cycles per mechanical revolution.
        pole_pairs: u32,
    },
}

/// Winding layout of a physical run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WindingSpec {
    /// Sinusoidally distributed signal windings (peak `signal_turns`,
    /// spatial order from the geometry's winding pole pairs) with an
    /// alternating excitation winding of `excitation_turns` per tooth.
    Overlapping {
        /// Peak signal turns per tooth.
        signal_turns: f64,
        /// Excitation turns per tooth.
        excitation_turns: f64,
    },
    /// The fixed 12-tooth layout with disjoint winding groups.
    NonOverlappingPreset {
        /// Signal turns per wound tooth.
        signal_turns: f64,
        /// Excitation turns per wound tooth.
        excitation_turns: f64,
    },
}

/// Everything one run needs.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioInputs {
    /// Inductance source.
    pub basis: BasisMode,
    /// Winding layout; ignored in ideal mode.
    pub winding: WindingSpec,
    /// Faults to inject, applied in order; empty for a healthy run.
    pub faults: Vec<FaultSpec>,
    /// Excitation source.
    pub source: ExcitationSource,
    /// Sampling clock and mechanical trajectory.
    pub timebase: Timebase,
    /// Excitation winding resistance, ohms.
    pub winding_resistance_ohm: f64,
    /// Highest spatial order kept by the profile fits; silently capped
    /// to what the rotor grid can resolve, `(K - 2) / 2`.
    pub fit_order_max: usize,
    /// Accept a sample rate below the recommended sixteen times the
    /// carrier (a warning instead of an error).
    pub allow_low_sample_rate: bool,
}

impl ScenarioInputs {
    /// The demonstration machine running healthy: twelve-tooth salient
    /// geometry, overlapping windings (70-turn peak signal, 30-turn
    /// excitation, 2 ohm), 5 V / 5 kHz excitation sampled at 80 kHz for
    /// 125 ms, rotor at 50.27 rad/s.
    pub fn demo() -> Self {
        ScenarioInputs {
            basis: BasisMode::Synthetic {
                geometry: Geometry::twelve_slot_demo(),
                samples_per_rev: 1000,
            },
            winding: WindingSpec::Overlapping { signal_turns: 70.0, excitation_turns: 30.0 },
            faults: Vec::new(),
            source: ExcitationSource { amplitude_volt: 5.0, frequency_hz: 5000.0 },
            timebase: Timebase {
                sample_rate_hz: 80_000.0,
                duration_s: 0.125,
                omega_rad_s: 50.27,
                theta0_rad: 0.0,
            },
            winding_resistance_ohm: 2.0,
            fit_order_max: 500,
            allow_low_sample_rate: false,
        }
    }

    /// The ideal-mode counterpart of [`ScenarioInputs::demo`]: same
    /// drive and clock, with the coupling amplitude and self-inductance
    /// the demonstration machine would have ([`demo_mutual_amplitude_h`],
    /// [`demo_excitation_self_h`]).
    pub fn ideal_demo() -> Self {
        let mut inputs = Self::demo();
        inputs.basis = BasisMode::Ideal {
            amplitude_h: demo_mutual_amplitude_h(),
            l_ee_h: demo_excitation_self_h(),
            pole_pairs: 1,
        };
        inputs
    }
}

/// Peak signal-to-excitation mutual inductance of the demonstration
/// machine, henries (about 0.711 mH).
///
/// For sinusoidal signal windings on the star permeance network the
/// coupling reduces to `(N/2) * mu0 * A_tooth * (g_max - g_min) /
/// (g_min * g_max) * T_s * T_e`.
pub fn demo_mutual_amplitude_h() -> f64 {
    let g = Geometry::twelve_slot_demo();
    let n = g.slot_count as f64;
    let tooth_area_m2 = g.stack_length_mm * 1e-3
        * g.tooth_span_fraction
        * (math::PI * g.stator_inner_diameter_mm * 1e-3 / n);
    let gap_swing_per_m = (g.g_max_mm - g.g_min_mm) / (g.g_min_mm * g.g_max_mm * 1e-3);
    (n / 2.0) * crate::basis::VACUUM_PERMEABILITY * tooth_area_m2 * gap_swing_per_m * 70.0 * 30.0
}

/// Excitation self-inductance of the demonstration machine, henries
/// (about 1.016 mH): `T_e^2` times the total permeance
/// `N * mu0 * A_tooth * (g_min + g_max) / (g_min * g_max)`, which the
/// salient gap keeps independent of the rotor angle.
pub fn demo_excitation_self_h() -> f64 {
    let g = Geometry::twelve_slot_demo();
    let n = g.slot_count as f64;
    let tooth_area_m2 = g.stack_length_mm * 1e-3
        * g.tooth_span_fraction
        * (math::PI * g.stator_inner_diameter_mm * 1e-3 / n);
    let gap_sum_per_m = (g.g_min_mm + g.g_max_mm) / (g.g_min_mm * g.g_max_mm * 1e-3);
    30.0 * 30.0 * n * crate::basis::VACUUM_PERMEABILITY * tooth_area_m2 * gap_sum_per_m
}

/// Angle grid used for the profile snapshot in ideal mode, which has no
/// basis grid of its own.
const IDEAL_PROFILE_SAMPLES: usize = 360;

/// The three terminal inductance profiles sampled over one revolution.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileTrace {
    /// Rotor angles, radians.
    pub angle_grid: Vec<f64>,
    /// Sine-channel mutual inductance, henries, per grid angle.
    pub l_se_h: Vec<f64>,
    /// Cosine-channel mutual inductance, henries, per grid angle.
    pub l_ce_h: Vec<f64>,
    /// Excitation self-inductance, henries, per grid angle.
    pub l_ee_h: Vec<f64>,
    /// True when dynamic eccentricity makes the real profiles depend on
    /// time as well as angle; the samples are then the `t = 0` snapshot.
    pub time_varying: bool,
}

/// Everything one run produces.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioOutputs {
    /// Electrical traces.
    pub wave: WaveRecord,
    /// Demodulated envelope streams.
    pub envelopes: Envelopes,
    /// Per-sample angle estimates and errors.
    pub estimate: AngleEstimate,
    /// Accuracy summary over the settled, valid samples.
    pub metrics: PositionMetrics,
    /// Alignment commissioned from the healthy profiles (identity in
    /// ideal mode).
    pub alignment: AngleAlignment,
    /// The three inductance profiles the run stepped through.
    pub profiles: ProfileTrace,
    /// Non-fatal clock observations.
    pub timebase_warnings: Vec<TimebaseWarning>,
    /// The faults that actually altered the machine, zero-intensity
    /// entries dropped — the ground-truth label of the run.
    pub effective_faults: Vec<FaultSpec>,
}

/// Failure anywhere along the chain.
#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioError {
    /// Building or validating the basis tables failed.
    Basis(BasisError),
    /// The winding layout is inadmissible for the geometry.
    Winding(WindingError),
    /// A fault specification is out of range or inconsistent.
    Fault(FaultError),
    /// Profile assembly or fitting failed.
    Assembly(AssemblyError),
    /// The source, clock, or electrical solve failed.
    Circuit(CircuitError),
    /// Demodulation or alignment failed.
    Demod(DemodError),
    /// Fault injection was requested in ideal mode, which has no
    /// machine to fault.
    FaultsInIdealMode,
    /// Ideal-mode parameters must be positive and finite with at least
    /// one pole pair.
    InvalidIdealParameters,
}

impl core::fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::Basis(e) => write!(f, "basis stage: {e}"),
            Self::Winding(e) => write!(f, "winding stage: {e}"),
            Self::Fault(e) => write!(f, "fault stage: {e}"),
            Self::Assembly(e) => write!(f, "assembly stage: {e}"),
            Self::Circuit(e) => write!(f, "electrical stage: {e}"),
            Self::Demod(e) => write!(f, "demodulation stage: {e}"),
            Self::FaultsInIdealMode => {
                write!(f, "ideal mode models no machine, so faults cannot be injected")
            }
            Self::InvalidIdealParameters => write!(
                f,
                "ideal-mode inductances must be positive and finite with at least one pole pair"
            ),
        }
    }
}

impl core::error::Error for ScenarioError {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            Self::Basis(e) => Some(e),
            Self::Winding(e) => Some(e),
            Self::Fault(e) => Some(e),
            Self::Assembly(e) => Some(e),
            Self::Circuit(e) => Some(e),
            Self::Demod(e) => Some(e),
            _ => None,
        }
    }
}

impl From<BasisError> for ScenarioError {
    fn from(e: BasisError) -> Self {
        Self::Basis(e)
    }
}
impl From<WindingError> for ScenarioError {
    fn from(e: WindingError) -> Self {
        Self::Winding(e)
    }
}
impl From<FaultError> for ScenarioError {
    fn from(e: FaultError) -> Self {
        Self::Fault(e)
    }
}
impl From<AssemblyError> for ScenarioError {
    fn from(e: AssemblyError) -> Self {
        Self::Assembly(e)
    }
}
impl From<CircuitError> for ScenarioError {
    fn from(e: CircuitError) -> Self {
        Self::Circuit(e)
    }
}
impl From<DemodError> for ScenarioError {
    fn from(e: DemodError) -> Self {
        Self::Demod(e)
    }
}

/// An inductance profile ready for time stepping: either a plain fit in
/// the rotor angle, or per-tooth fitted groups scaled at runtime by the
/// (possibly whirling) airgap factors.
enum ProfileModel<'a> {
    Fitted(FourierSeries),
    ScaledGroups {
        /// `(tooth, fitted contribution)` per excitation tooth.
        groups: Vec<(usize, FourierSeries)>,
        view: &'a FaultedBasisView<'a>,
        omega_rad_s: f64,
    },
}

impl InductanceModel for ProfileModel<'_> {
    fn inductance(&self, theta_rad: f64, t_s: f64) -> f64 {
        match self {
            Self::Fitted(series) => series.value(theta_rad),
            Self::ScaledGroups { groups, view, omega_rad_s } => {
                let whirl = omega_rad_s * t_s;
                groups
                    .iter()
                    .map(|(tooth, series)| {
                        view.gap_scale(*tooth, theta_rad, whirl) * series.value(theta_rad)
                    })
                    .sum()
            }
        }
    }
}

/// Runs one complete scenario.
pub fn simulate(inputs: &ScenarioInputs) -> Result<ScenarioOutputs, ScenarioError> {
    let warnings = inputs.timebase.validate(&inputs.source, inputs.allow_low_sample_rate)?;
    match &inputs.basis {
        BasisMode::Ideal { amplitude_h, l_ee_h, pole_pairs } => {
            if !inputs.faults.is_empty() {
                return Err(ScenarioError::FaultsInIdealMode);
            }
            if !(amplitude_h.is_finite() && *amplitude_h > 0.0)
                || !(l_ee_h.is_finite() && *l_ee_h > 0.0)
                || *pole_pairs == 0
            {
                return Err(ScenarioError::InvalidIdealParameters);
            }
            let l_se = FourierSeries::harmonic(*pole_pairs, *amplitude_h, 0.0);
            let l_ce = FourierSeries::harmonic(*pole_pairs, *amplitude_h, math::PI / 2.0);
            let l_ee = ConstantInductance(*l_ee_h);
            let grid: Vec<f64> = (0..IDEAL_PROFILE_SAMPLES)
                .map(|k| math::TAU * k as f64 / IDEAL_PROFILE_SAMPLES as f64)
                .collect();
            let profiles = sample_profiles(grid, &l_se, &l_ce, &l_ee, false);
            run_electrical(
                inputs,
                &l_ee,
                &l_se,
                &l_ce,
                AngleAlignment::identity(),
                *pole_pairs,
                profiles,
                warnings,
                Vec::new(),
            )
        }
        BasisMode::Synthetic { geometry, samples_per_rev } => {
            let basis = generate_synthetic_basis(geometry, *samples_per_rev)?;
            simulate_physical(inputs, &basis, warnings)
        }
        BasisMode::Provided(basis) => {
            basis.validate()?;
            simulate_physical(inputs, basis, warnings)
        }
    }
}

fn simulate_physical(
    inputs: &ScenarioInputs,
    basis: &BasisSet,
    warnings: Vec<TimebaseWarning>,
) -> Result<ScenarioOutputs, ScenarioError> {
    let geometry = &basis.geometry;
    let slot_count = geometry.slot_count;
    let (sine, cosine, excitation) = match inputs.winding {
        WindingSpec::Overlapping { signal_turns, excitation_turns } => {
            validate_winding(geometry)?;
            let (sine, cosine) =
                overlapping_signal_turns(signal_turns, geometry.winding_pole_pairs, slot_count);
            let excitation = alternating_excitation_turns(excitation_turns, slot_count)?;
            (sine, cosine, excitation)
        }
        WindingSpec::NonOverlappingPreset { signal_turns, excitation_turns } => {
            let layout = non_overlapping_preset(signal_turns, excitation_turns, slot_count)?;
            (layout.sine, layout.cosine, layout.excitation)
        }
    };
    let view = apply_faults(
        basis,
        &sine,
        &cosine,
        &excitation,
        inputs.winding_resistance_ohm,
        &inputs.faults,
    )?;

    let fit_order = inputs.fit_order_max.min((basis.angle_count() - 2) / 2);
    let pole_pairs = geometry.pole_count / 2;

    // Alignment comes from the machine as commissioned: healthy turns,
    // centred rotor.
    let healthy_sine = assemble_mutual(&basis.sig, &sine, &excitation, |_, _| 1.0)?;
    let healthy_cosine = assemble_mutual(&basis.sig, &cosine, &excitation, |_, _| 1.0)?;
    let sine_fit = fit_fourier(&basis.angle_grid, &healthy_sine, fit_order)?;
    let cosine_fit = fit_fourier(&basis.angle_grid, &healthy_cosine, fit_order)?;

    // A layout that genuinely couples nothing at the electrical order
    // still produces rounding-level fit residue; measure the fundamental
    // against the largest coupling the turns could possibly produce and
    // refuse to align on noise.
    let turn_sum = |turns: &TurnVector| (0..turns.len()).map(|i| math::abs(turns.get(i))).sum();
    let signal_sum: f64 = f64::max(turn_sum(&sine), turn_sum(&cosine));
    let excitation_sum: f64 = turn_sum(&excitation);
    let coupling_ceiling = basis.sig.max_abs() * signal_sum * excitation_sum;
    let fundamental = |fit: &FourierSeries| fit.term(pole_pairs).map_or(0.0, |t| t.amplitude);
    if fundamental(&sine_fit) <= COUPLING_FLOOR_RELATIVE * coupling_ceiling
        || fundamental(&cosine_fit) <= COUPLING_FLOOR_RELATIVE * coupling_ceiling
    {
        return Err(ScenarioError::Demod(DemodError::NoFundamental { order: pole_pairs }));
    }
    let alignment = AngleAlignment::from_healthy_profiles(&sine_fit, &cosine_fit, pole_pairs)?;

    let (l_se, l_ce, l_ee);
    if view.is_time_varying() {
        // Dynamic eccentricity: fit each excitation tooth's contribution
        // and leave the gap factors for runtime.
        let omega_rad_s = inputs.timebase.omega_rad_s;
        l_se = ProfileModel::ScaledGroups {
            groups: mutual_tooth_groups(basis, &view.sine_eff, &view.excitation_eff, fit_order)?,
            view: &view,
            omega_rad_s,
        };
        l_ce = ProfileModel::ScaledGroups {
            groups: mutual_tooth_groups(basis, &view.cosine_eff, &view.excitation_eff, fit_order)?,
            view: &view,
            omega_rad_s,
        };
        l_ee = ProfileModel::ScaledGroups {
            groups: self_tooth_groups(basis, &view.excitation_eff, fit_order)?,
            view: &view,
            omega_rad_s,
        };
    } else {
        // Everything is a function of the rotor angle alone: fold the
        // gap factors into the grid profiles and fit once.
        let gap = |k: usize, tooth: usize| view.gap_scale(tooth, basis.angle_grid[k], 0.0);
        let se = assemble_mutual(&basis.sig, &view.sine_eff, &view.excitation_eff, gap)?;
        let ce = assemble_mutual(&basis.sig, &view.cosine_eff, &view.excitation_eff, gap)?;
        let ee = assemble_self_excitation(&basis.exc, &view.excitation_eff, gap)?;
        l_se = ProfileModel::Fitted(fit_fourier(&basis.angle_grid, &se, fit_order)?);
        l_ce = ProfileModel::Fitted(fit_fourier(&basis.angle_grid, &ce, fit_order)?);
        l_ee = ProfileModel::Fitted(fit_fourier(&basis.angle_grid, &ee, fit_order)?);
    }

    let effective_faults = view.effective_faults.clone();
    let profiles = sample_profiles(
        basis.angle_grid.clone(),
        &l_se,
        &l_ce,
        &l_ee,
        view.is_time_varying(),
    );
    run_electrical(
        inputs,
        &l_ee,
        &l_se,
        &l_ce,
        alignment,
        pole_pairs,
        profiles,
        warnings,
        effective_faults,
    )
}

/// Fits the signal coupling contributed through each excitation tooth,
/// one series per tooth with nonzero turns.
fn mutual_tooth_groups(
    basis: &BasisSet,
    signal_turns: &TurnVector,
    excitation_turns: &TurnVector,
    fit_order: usize,
) -> Result<Vec<(usize, FourierSeries)>, AssemblyError> {
    let mut groups = Vec::new();
    for tooth in 0..basis.geometry.slot_count {
        if excitation_turns.get(tooth) == 0.0 {
            continue;
        }
        let values = assemble_mutual(&basis.sig, signal_turns, excitation_turns, |_, j| {
            if j == tooth {
                1.0
            } else {
                0.0
            }
        })?;
        groups.push((tooth, fit_fourier(&basis.angle_grid, &values, fit_order)?));
    }
    Ok(groups)
}

/// Fits the excitation self-inductance contributed through each tooth's
/// basis column, one series per tooth with nonzero turns.
fn self_tooth_groups(
    basis: &BasisSet,
    excitation_turns: &TurnVector,
    fit_order: usize,
) -> Result<Vec<(usize, FourierSeries)>, AssemblyError> {
    let mut groups = Vec::new();
    for tooth in 0..basis.geometry.slot_count {
        if excitation_turns.get(tooth) == 0.0 {
            continue;
        }
        let values = assemble_self_excitation(&basis.exc, excitation_turns, |_, t| {
            if t == tooth {
                1.0
            } else {
                0.0
            }
        })?;
        groups.push((tooth, fit_fourier(&basis.angle_grid, &values, fit_order)?));
    }
    Ok(groups)
}

/// Samples the three models over `angle_grid` at `t = 0`.
fn sample_profiles(
    angle_grid: Vec<f64>,
    l_se: &dyn InductanceModel,
    l_ce: &dyn InductanceModel,
    l_ee: &dyn InductanceModel,
    time_varying: bool,
) -> ProfileTrace {
    let sample = |model: &dyn InductanceModel| -> Vec<f64> {
        angle_grid.iter().map(|&a| model.inductance(a, 0.0)).collect()
    };
    ProfileTrace {
        l_se_h: sample(l_se),
        l_ce_h: sample(l_ce),
        l_ee_h: sample(l_ee),
        angle_grid,
        time_varying,
    }
}

#[allow(clippy::too_many_arguments)]
fn run_electrical(
    inputs: &ScenarioInputs,
    l_ee: &dyn InductanceModel,
    l_se: &dyn InductanceModel,
    l_ce: &dyn InductanceModel,
    alignment: AngleAlignment,
    pole_pairs: u32,
    profiles: ProfileTrace,
    timebase_warnings: Vec<TimebaseWarning>,
    effective_faults: Vec<FaultSpec>,
) -> Result<ScenarioOutputs, ScenarioError> {
    let timebase = &inputs.timebase;
    let current =
        solve_excitation_current(l_ee, inputs.winding_resistance_ohm, &inputs.source, timebase)?;
    let count = current.len();
    let wave = WaveRecord {
        sample_rate_hz: timebase.sample_rate_hz,
        theta_ref_rad: (0..count).map(|k| timebase.rotor_angle_at(k)).collect(),
        v_e_volt: (0..count).map(|k| inputs.source.voltage(timebase.time_at(k))).collect(),
        v_s_volt: induced_voltage(l_se, &current, timebase),
        v_c_volt: induced_voltage(l_ce, &current, timebase),
        i_e_amp: current,
        transient_end: timebase.transient_end(&inputs.source),
    };
    let envelopes = demodulate(&wave, &inputs.source)?;
    let estimate = estimate_angle(&envelopes, &wave.theta_ref_rad, pole_pairs, &alignment);
    let metrics = position_metrics(&estimate.error_deg, &estimate.metrics_mask());
    Ok(ScenarioOutputs {
        wave,
        envelopes,
        estimate,
        metrics,
        alignment,
        profiles,
        timebase_warnings,
        effective_faults,
    })
}
