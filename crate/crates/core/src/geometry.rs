//! Stator/rotor geometry and the radial air-gap model.
//!
//! All angles are mechanical radians measured in the stator frame. The
//! stator carries `slot_count` identical teeth; tooth `i` (zero-based) is
//! centred on
//!
//! ```text
//! phi_i = 2*pi * i / slot_count
//! ```
//!
//! Two rotor variants are supported:
//!
//! * **Sinusoidally salient** — a salient rotor shaped so that the radial
//!   gap length seen at stator angle `phi` while the rotor sits at
//!   `theta_rotor` is
//!
//!   ```text
//!   g(phi) = g_min*g_max / [ (g_min + g_max)
//!                            + (g_min - g_max) * cos((P/2)*(phi - theta_rotor)) ]
//!   ```
//!
//!   which swings between `g_min/2` (narrowest gap, under a pole) and
//!   `g_max/2` (widest gap, between poles) with spatial period
//!   `2*pi/(P/2)`. `P` is the rotor pole count, so `P/2` salient pole
//!   pairs pass a fixed stator angle per revolution.
//!
//! * **Uniform** — a plain cylindrical rotor; the gap is the constant
//!   `(stator_inner_diameter - rotor_outer_diameter) / 2` at every angle.
//!
//! Lengths are kept in millimetres throughout this module; the inductance
//! basis generator converts to SI units at the point where permeances are
//! formed.

use crate::math;

/// Shape of the rotor surface facing the stator bore.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AirgapKind {
    /// Salient rotor with a sinusoidal gap modulation between
    /// `g_min/2` and `g_max/2`.
    SinusoidalSalient,
    /// Cylindrical rotor with a constant gap.
    Uniform,
}

/// Machine cross-section description.
///
/// Fields are public so the struct can be written literally in
/// configuration code and tests; call [`Geometry::validate`] before
/// feeding an instance to the basis generator or the scenario pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct Geometry {
    /// Number of stator teeth (equally spaced). At least 4.
    pub slot_count: usize,
    /// Rotor surface variant.
    pub airgap_kind: AirgapKind,
    /// Salient-gap parameter: twice the narrowest gap, in mm.
    /// Unused for [`AirgapKind::Uniform`].
    pub g_min_mm: f64,
    /// Salient-gap parameter: twice the widest gap, in mm.
    /// Unused for [`AirgapKind::Uniform`].
    pub g_max_mm: f64,
    /// Rotor pole count `P` (even, at least 2); `P/2` pole pairs.
    pub pole_count: u32,
    /// Pole pairs of the signal-winding spatial pattern. Carried with the
    /// geometry because admissible values are tied to `slot_count` and
    /// `pole_count`; see [`crate::winding::validate_winding`].
    pub winding_pole_pairs: u32,
    /// Active axial stack length, mm.
    pub stack_length_mm: f64,
    /// Stator bore diameter, mm.
    pub stator_inner_diameter_mm: f64,
    /// Rotor outer diameter, mm. Required for [`AirgapKind::Uniform`],
    /// ignored for the salient variant.
    pub rotor_outer_diameter_mm: Option<f64>,
    /// Fraction of the slot pitch occupied by the tooth face, in `(0, 1]`.
    pub tooth_span_fraction: f64,
}

/// Validation failure for a [`Geometry`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeometryError {
    /// Fewer than four stator teeth.
    SlotCountTooSmall,
    /// `pole_count` must be even and at least 2.
    InvalidPoleCount,
    /// Salient variant needs `0 < g_min_mm <= g_max_mm`.
    InvalidGapRange,
    /// Uniform variant needs `0 < rotor_outer_diameter_mm < stator_inner_diameter_mm`.
    InvalidDiameters,
    /// `stack_length_mm` and `stator_inner_diameter_mm` must be positive.
    NonPositiveLength,
    /// `tooth_span_fraction` must lie in `(0, 1]`.
    InvalidToothSpan,
    /// `winding_pole_pairs` must be at least 1.
    InvalidWindingPolePairs,
}

impl core::fmt::Display for GeometryError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::SlotCountTooSmall => write!(f, "slot_count must be at least 4"),
            Self::InvalidPoleCount => write!(f, "pole_count must be even and at least 2"),
            Self::InvalidGapRange => write!(f, "salient air gap needs 0 < g_min_mm <= g_max_mm"),
            Self::InvalidDiameters => {
                write!(f, "uniform air gap needs 0 < rotor diameter < stator bore diameter")
            }
            Self::NonPositiveLength => {
                write!(f, "stack_length_mm and stator_inner_diameter_mm must be positive")
            }
            Self::InvalidToothSpan => write!(f, "tooth_span_fraction must lie in (0, 1]"),
            Self::InvalidWindingPolePairs => write!(f, "winding_pole_pairs must be at least 1"),
        }
    }
}

impl core::error::Error for GeometryError {}

impl Geometry {
    /// Checks the structural invariants listed on each field.
    pub fn validate(&self) -> Result<(), GeometryError> {
        if self.slot_count < 4 {
            return Err(GeometryError::SlotCountTooSmall);
        }
        if self.pole_count < 2 || !self.pole_count.is_multiple_of(2) {
            return Err(GeometryError::InvalidPoleCount);
        }
        if self.winding_pole_pairs < 1 {
            return Err(GeometryError::InvalidWindingPolePairs);
        }
        if !(self.stack_length_mm > 0.0) || !(self.stator_inner_diameter_mm > 0.0) {
            return Err(GeometryError::NonPositiveLength);
        }
        if !(self.tooth_span_fraction > 0.0 && self.tooth_span_fraction <= 1.0) {
            return Err(GeometryError::InvalidToothSpan);
        }
        match self.airgap_kind {
            AirgapKind::SinusoidalSalient => {
                if !(self.g_min_mm > 0.0 && self.g_min_mm <= self.g_max_mm) {
                    return Err(GeometryError::InvalidGapRange);
                }
            }
            AirgapKind::Uniform => match self.rotor_outer_diameter_mm {
                Some(d_r) if d_r > 0.0 && d_r < self.stator_inner_diameter_mm => {}
                _ => return Err(GeometryError::InvalidDiameters),
            },
        }
        Ok(())
    }

    /// Mechanical angle of the centre of tooth `tooth` (zero-based).
    pub fn tooth_angle(&self, tooth: usize) -> f64 {
        debug_assert!(tooth < self.slot_count);
        math::TAU * tooth as f64 / self.slot_count as f64
    }

    /// Radial air-gap length in mm at stator angle `phi` with the rotor at
    /// `theta_rotor`.
    ///
    /// For the salient variant the value stays inside
    /// `[g_min/2, g_max/2]` and is periodic in `phi - theta_rotor` with
    /// period `2*pi/(P/2)`. For the uniform variant the arguments are
    /// ignored and the constant gap is returned.
    pub fn airgap_length_mm(&self, phi: f64, theta_rotor: f64) -> f64 {
        match self.airgap_kind {
            AirgapKind::SinusoidalSalient => {
                let order = f64::from(self.pole_count / 2);
                let den = (self.g_min_mm + self.g_max_mm)
                    + (self.g_min_mm - self.g_max_mm) * math::cos(order * (phi - theta_rotor));
                self.g_min_mm * self.g_max_mm / den
            }
            AirgapKind::Uniform => {
                (self.stator_inner_diameter_mm - self.rotor_outer_diameter_mm.unwrap_or(0.0)) / 2.0
            }
        }
    }

    /// Narrowest gap the rotor can present at any angle, in mm.
    ///
    /// This is the feasibility bound for eccentricity magnitudes: a rotor
    /// displaced by more than the minimum gap would touch the stator, so
    /// the fault module rejects magnitudes at or beyond this value.
    pub fn min_airgap_mm(&self) -> f64 {
        match self.airgap_kind {
            AirgapKind::SinusoidalSalient => self.g_min_mm / 2.0,
            AirgapKind::Uniform => self.airgap_length_mm(0.0, 0.0),
        }
    }

    /// The 12-slot, 2-pole demonstration machine used throughout the
    /// documentation and test-suite: salient rotor with gap swing
    /// 0.25 mm – 1.0 mm, 6.7 mm stack, 34.13 mm bore, 5-pole-pair signal
    /// winding pattern.
    pub fn twelve_slot_demo() -> Self {
        Geometry {
            slot_count: 12,
            airgap_kind: AirgapKind::SinusoidalSalient,
            g_min_mm: 0.5,
            g_max_mm: 2.0,
            pole_count: 2,
            winding_pole_pairs: 5,
            stack_length_mm: 6.7,
            stator_inner_diameter_mm: 34.13,
            rotor_outer_diameter_mm: None,
            tooth_span_fraction: 0.5,
        }
    }
}
