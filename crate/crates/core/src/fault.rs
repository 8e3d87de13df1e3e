//! Fault injection: shorted turns and rotor eccentricity.
//!
//! Faults are modelled without touching the underlying basis tables:
//!
//! * **Shorted turns** reduce the *effective* turn count of one coil. A
//!   dead short cancels the flux contribution of the shorted turns, so
//!   `T_eff = T - sign(T) * T_short` ([`effective_turns_signal`]). On the
//!   excitation side the short circulates current through a contact
//!   resistance, which lets a fraction of the shorted turns keep working:
//!   `|T_eff| = |T| - T_short + T_short * R_sc / (R_e + R_sc)`
//!   ([`effective_turns_excitation`]). With `R_sc = 0` this collapses to
//!   the dead-short rule; with `R_sc -> inf` the fault vanishes.
//!
//! * **Eccentricity** displaces the rotor centre, which perturbs every
//!   tooth's gap length and therefore its permeance. A displacement `e`
//!   toward direction `delta` changes tooth `i`'s gap from `g_i` to
//!   `g_i + e * cos(phi_i - delta)`, scaling its permeance — and with it
//!   every basis entry driven through that tooth — by
//!   `f_i = g_i / (g_i + e * cos(phi_i - delta))`. Static eccentricity
//!   keeps `delta` fixed in the stator frame; dynamic eccentricity whirls
//!   it at the rotation frequency (`delta = omega * t`). Both kinds may
//!   coexist; their displacement contributions add inside the gap before
//!   the ratio is formed.
//!
//! [`apply_faults`] validates a fault list against a basis and winding
//! set and produces a [`FaultedBasisView`]: effective turn vectors plus
//! the eccentricity state, with zero-intensity faults (no shorted turns,
//! zero displacement) silently dropped so that a degenerate fault list
//! and an empty one produce identical downstream results. The retained
//! faults are reported back for labelling.
//!
//! The scale factor attaches at the tooth whose coil *drives* the flux:
//! every basis entry `(i, j)` — mutual and excitation-self alike — scales
//! by the factor of the excitation tooth `j` in its column index, so one
//! uniform column rule covers all three terminal inductances.

use alloc::vec::Vec;

use crate::basis::BasisSet;
use crate::math;
use crate::winding::TurnVector;

/// Which signal winding a shorted-turn fault sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignalWinding {
    /// The sine-phase signal winding.
    Sine,
    /// The cosine-phase signal winding.
    Cosine,
}

/// One injectable fault.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FaultSpec {
    /// `shorted_turns` of the coil on `tooth` of one signal winding are
    /// dead-shorted.
    SignalShort {
        /// Tooth carrying the faulted coil (zero-based).
        tooth: usize,
        /// Which signal winding is hit.
        winding: SignalWinding,
        /// Number of shorted turns, `0 <= shorted_turns <= |turns|`.
        shorted_turns: f64,
    },
    /// `shorted_turns` of the excitation coil on `tooth` are shorted
    /// through a contact resistance.
    ExcitationShort {
        /// Tooth carrying the faulted coil (zero-based).
        tooth: usize,
        /// Number of shorted turns, `0 <= shorted_turns <= |turns|`.
        shorted_turns: f64,
        /// Contact resistance of the short, ohms (`0` = dead short).
        short_resistance_ohm: f64,
    },
    /// Rotor displaced by a fixed vector in the stator frame.
    StaticEccentricity {
        /// Displacement magnitude, mm; must stay below the minimum gap.
        magnitude_mm: f64,
        /// Displacement direction in the stator frame, radians.
        direction_rad: f64,
    },
    /// Rotor centre whirling at the rotation frequency.
    DynamicEccentricity {
        /// Whirl radius, mm; must stay below the minimum gap.
        magnitude_mm: f64,
    },
}

/// Fault-validation failure.
#[derive(Debug, Clone, PartialEq)]
pub enum FaultError {
    /// Fault addresses a tooth the stator does not have.
    ToothOutOfRange {
        /// The offending tooth index.
        tooth: usize,
        /// Number of teeth available.
        slot_count: usize,
    },
    /// Shorted-turn count is negative or exceeds the turns present.
    ShortedTurnsOutOfRange {
        /// Turns requested to short.
        requested: f64,
        /// Absolute turn count actually on the coil.
        available: f64,
    },
    /// Contact resistance must be non-negative.
    NegativeShortResistance,
    /// The excitation winding resistance must be positive for the
    /// leak-through divider to be defined.
    NonPositiveWindingResistance,
    /// Combined eccentricity displacement reaches the minimum gap.
    EccentricityOutOfRange {
        /// Sum of displacement magnitudes, mm.
        total_mm: f64,
        /// Minimum gap of the geometry, mm.
        limit_mm: f64,
    },
    /// More than one eccentricity fault of the same kind.
    DuplicateEccentricity,
    /// Turn vectors do not span the stator's teeth.
    DimensionMismatch,
}

impl core::fmt::Display for FaultError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::ToothOutOfRange { tooth, slot_count } => {
                write!(f, "fault addresses tooth {tooth}, stator has {slot_count} teeth")
            }
            Self::ShortedTurnsOutOfRange { requested, available } => {
                write!(f, "cannot short {requested} turns of a coil with |{available}| turns")
            }
            Self::NegativeShortResistance => write!(f, "short contact resistance must be >= 0"),
            Self::NonPositiveWindingResistance => {
                write!(f, "excitation winding resistance must be > 0")
            }
            Self::EccentricityOutOfRange { total_mm, limit_mm } => write!(
                f,
                "eccentricity displacement {total_mm} mm reaches the minimum gap {limit_mm} mm"
            ),
            Self::DuplicateEccentricity => {
                write!(f, "at most one static and one dynamic eccentricity fault are allowed")
            }
            Self::DimensionMismatch => {
                write!(f, "turn vectors do not match the stator tooth count")
            }
        }
    }
}

impl core::error::Error for FaultError {}

/// Effective turns of a signal coil with `shorted_turns` dead-shorted:
/// the shorted turns' flux contribution cancels, shrinking the count
/// toward zero from either sign.
pub fn effective_turns_signal(turns: f64, shorted_turns: f64) -> Result<f64, FaultError> {
    let available = math::abs(turns);
    if !(0.0..=available).contains(&shorted_turns) {
        return Err(FaultError::ShortedTurnsOutOfRange { requested: shorted_turns, available });
    }
    let sign = if turns < 0.0 { -1.0 } else { 1.0 };
    Ok(turns - sign * shorted_turns)
}

/// Effective turns of an excitation coil with `shorted_turns` shorted
/// through `short_resistance_ohm`, given the winding's series resistance
/// `winding_resistance_ohm`: the contact resistance lets the fraction
/// `R_sc / (R_e + R_sc)` of the shorted turns keep contributing.
pub fn effective_turns_excitation(
    turns: f64,
    shorted_turns: f64,
    short_resistance_ohm: f64,
    winding_resistance_ohm: f64,
) -> Result<f64, FaultError> {
    let available = math::abs(turns);
    if !(0.0..=available).contains(&shorted_turns) {
        return Err(FaultError::ShortedTurnsOutOfRange { requested: shorted_turns, available });
    }
    if short_resistance_ohm < 0.0 || !short_resistance_ohm.is_finite() {
        return Err(FaultError::NegativeShortResistance);
    }
    if !(winding_resistance_ohm > 0.0) {
        return Err(FaultError::NonPositiveWindingResistance);
    }
    let leak_through = short_resistance_ohm / (winding_resistance_ohm + short_resistance_ohm);
    let sign = if turns < 0.0 { -1.0 } else { 1.0 };
    Ok(sign * (available - shorted_turns + leak_through * shorted_turns))
}

/// Permeance scale factor of a tooth with gap `gap_mm` under a static
/// displacement of `magnitude_mm` toward `direction_rad`, for the tooth
/// centred at `tooth_angle_rad`.
pub fn static_ecc_factor(
    gap_mm: f64,
    magnitude_mm: f64,
    tooth_angle_rad: f64,
    direction_rad: f64,
) -> f64 {
    gap_mm / (gap_mm + magnitude_mm * math::cos(tooth_angle_rad - direction_rad))
}

/// Permeance scale factor of a tooth under a whirl of `magnitude_mm`
/// currently pointing toward `whirl_angle_rad` (`omega * t` for a rotor
/// turning at `omega`).
pub fn dynamic_ecc_factor(
    gap_mm: f64,
    magnitude_mm: f64,
    tooth_angle_rad: f64,
    whirl_angle_rad: f64,
) -> f64 {
    gap_mm / (gap_mm + magnitude_mm * math::cos(tooth_angle_rad - whirl_angle_rad))
}

/// A basis set seen through a fault list: effective turn vectors plus the
/// eccentricity state needed to scale entries on the fly.
#[derive(Debug, Clone, PartialEq)]
pub struct FaultedBasisView<'a> {
    /// The unmodified basis tables.
    pub basis: &'a BasisSet,
    /// Sine signal turns after shorted-turn faults.
    pub sine_eff: TurnVector,
    /// Cosine signal turns after shorted-turn faults.
    pub cosine_eff: TurnVector,
    /// Excitation turns after shorted-turn faults.
    pub excitation_eff: TurnVector,
    /// Static displacement as `(magnitude_mm, direction_rad)`, if any.
    pub static_ecc: Option<(f64, f64)>,
    /// Whirl radius in mm, if any.
    pub dynamic_ecc: Option<f64>,
    /// The faults that survived zero-intensity pruning, in input order.
    pub effective_faults: Vec<FaultSpec>,
}

impl FaultedBasisView<'_> {
    /// Combined permeance scale factor of `tooth` with the rotor at
    /// `rotor_angle_rad` and the whirl pointing toward `whirl_angle_rad`.
    ///
    /// Static and dynamic displacements add inside the gap, so the
    /// combined factor is `g / (g + d_static + d_dynamic)`, not a product
    /// of per-fault factors. Returns exactly 1 with no eccentricity.
    pub fn gap_scale(&self, tooth: usize, rotor_angle_rad: f64, whirl_angle_rad: f64) -> f64 {
        if self.static_ecc.is_none() && self.dynamic_ecc.is_none() {
            return 1.0;
        }
        let geometry = &self.basis.geometry;
        let phi = geometry.tooth_angle(tooth);
        let gap = geometry.airgap_length_mm(phi, rotor_angle_rad);
        let mut displacement = 0.0;
        if let Some((magnitude, direction)) = self.static_ecc {
            displacement += magnitude * math::cos(phi - direction);
        }
        if let Some(magnitude) = self.dynamic_ecc {
            displacement += magnitude * math::cos(phi - whirl_angle_rad);
        }
        gap / (gap + displacement)
    }

    /// True when the view's inductances depend on time beyond the rotor
    /// angle — i.e. a whirling (dynamic) eccentricity is present.
    pub fn is_time_varying(&self) -> bool {
        self.dynamic_ecc.is_some()
    }

    /// True when no effective fault is present at all.
    pub fn is_healthy(&self) -> bool {
        self.effective_faults.is_empty()
    }
}

/// Validates `faults` against the basis and windings and builds the
/// faulted view.
///
/// Faults apply in list order; successive shorts on the same coil
/// compound, each range-checked against the turns remaining.
/// `winding_resistance_ohm` is the excitation winding's series
/// resistance, used only by the excitation-short leak-through divider.
/// Zero-intensity faults are dropped rather than recorded, so scenarios
/// that list only degenerate faults are bit-identical to healthy runs.
pub fn apply_faults<'a>(
    basis: &'a BasisSet,
    sine: &TurnVector,
    cosine: &TurnVector,
    excitation: &TurnVector,
    winding_resistance_ohm: f64,
    faults: &[FaultSpec],
) -> Result<FaultedBasisView<'a>, FaultError> {
    let n = basis.geometry.slot_count;
    if sine.len() != n || cosine.len() != n || excitation.len() != n {
        return Err(FaultError::DimensionMismatch);
    }

    let mut view = FaultedBasisView {
        basis,
        sine_eff: sine.clone(),
        cosine_eff: cosine.clone(),
        excitation_eff: excitation.clone(),
        static_ecc: None,
        dynamic_ecc: None,
        effective_faults: Vec::new(),
    };

    for &fault in faults {
        match fault {
            FaultSpec::SignalShort { tooth, winding, shorted_turns } => {
                if tooth >= n {
                    return Err(FaultError::ToothOutOfRange { tooth, slot_count: n });
                }
                let target = match winding {
                    SignalWinding::Sine => &mut view.sine_eff,
                    SignalWinding::Cosine => &mut view.cosine_eff,
                };
                let updated = effective_turns_signal(target.0[tooth], shorted_turns)?;
                if shorted_turns == 0.0 {
                    continue;
                }
                target.0[tooth] = updated;
            }
            FaultSpec::ExcitationShort { tooth, shorted_turns, short_resistance_ohm } => {
                if tooth >= n {
                    return Err(FaultError::ToothOutOfRange { tooth, slot_count: n });
                }
                let updated = effective_turns_excitation(
                    view.excitation_eff.0[tooth],
                    shorted_turns,
                    short_resistance_ohm,
                    winding_resistance_ohm,
                )?;
                if shorted_turns == 0.0 {
                    continue;
                }
                view.excitation_eff.0[tooth] = updated;
            }
            FaultSpec::StaticEccentricity { magnitude_mm, direction_rad } => {
                if !(magnitude_mm >= 0.0) {
                    return Err(FaultError::EccentricityOutOfRange {
                        total_mm: magnitude_mm,
                        limit_mm: basis.geometry.min_airgap_mm(),
                    });
                }
                if magnitude_mm == 0.0 {
                    continue;
                }
                if view.static_ecc.is_some() {
                    return Err(FaultError::DuplicateEccentricity);
                }
                view.static_ecc = Some((magnitude_mm, direction_rad));
            }
            FaultSpec::DynamicEccentricity { magnitude_mm } => {
                if !(magnitude_mm >= 0.0) {
                    return Err(FaultError::EccentricityOutOfRange {
                        total_mm: magnitude_mm,
                        limit_mm: basis.geometry.min_airgap_mm(),
                    });
                }
                if magnitude_mm == 0.0 {
                    continue;
                }
                if view.dynamic_ecc.is_some() {
                    return Err(FaultError::DuplicateEccentricity);
                }
                view.dynamic_ecc = Some(magnitude_mm);
            }
        }
        view.effective_faults.push(fault);
    }

    let total_displacement = view.static_ecc.map_or(0.0, |(m, _)| m)
        + view.dynamic_ecc.unwrap_or(0.0);
    let limit = basis.geometry.min_airgap_mm();
    if total_displacement >= limit {
        return Err(FaultError::EccentricityOutOfRange { total_mm: total_displacement, limit_mm: limit });
    }

    Ok(view)
}
