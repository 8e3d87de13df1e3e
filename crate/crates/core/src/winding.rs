//! Turn-count profiles: how coils are distributed over the stator teeth.
//!
//! A winding is described by one signed turn count per tooth — positive
//! for one coil orientation, negative for the reverse. Turn counts are
//! kept as `f64` because fault injection produces fractional effective
//! turns (a partial short with a non-zero contact resistance leaves a
//! fractional fraction of the shorted turns active).
//!
//! Three layouts are provided:
//!
//! * [`alternating_excitation_turns`] — the excitation winding: every
//!   tooth carries the same coil, wound in alternating directions, so the
//!   excitation MMF has spatial order `N/2`;
//! * [`overlapping_signal_turns`] — sinusoidally distributed sine/cosine
//!   signal windings with `P_w` pole pairs: tooth `i` carries
//!   `T_s * sin(P_w * phi_i)` (resp. `cos`) turns. All teeth carry both
//!   windings; the two are spatially in quadrature;
//! * [`non_overlapping_preset`] — a 12-tooth layout in which excitation,
//!   sine, and cosine coils occupy disjoint teeth, four teeth each, with
//!   alternating orientations inside each group.
//!
//! Not every pole-pair count `P_w` lets the signal winding couple to the
//! excitation field modulated by a `P/2`-pole-pair salient rotor: the
//! usable values are `P/2`, `(N - P) / 2`, and `(N + P) / 2` (the
//! excitation order `N/2` mixed with the gap order `P/2` lands on the
//! two side orders; `P/2` couples directly). [`validate_winding`] checks
//! a geometry's choice against this set and reports the admissible values
//! on failure.

use alloc::vec::Vec;

use crate::geometry::Geometry;
use crate::math;

/// Signed turn count per tooth, indexed by tooth number.
#[derive(Debug, Clone, PartialEq)]
pub struct TurnVector(pub Vec<f64>);

impl TurnVector {
    /// Number of teeth the profile spans.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True when the profile spans no teeth.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Turn count on tooth `i`.
    #[inline]
    pub fn get(&self, i: usize) -> f64 {
        self.0[i]
    }
}

/// Winding-layout validation failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WindingError {
    /// Alternating excitation needs an even tooth count.
    OddSlotCount,
    /// The preset layout only exists for a 12-tooth stator.
    PresetNeedsTwelveSlots,
    /// The signal pole-pair count cannot couple with the modulated
    /// excitation field; the payload lists the values that can.
    InadmissiblePolePairs {
        /// The rejected `winding_pole_pairs`.
        requested: u32,
        /// Pole-pair counts that do couple for this geometry.
        admissible: Vec<u32>,
    },
}

impl core::fmt::Display for WindingError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::OddSlotCount => {
                write!(f, "alternating excitation winding needs an even slot count")
            }
            Self::PresetNeedsTwelveSlots => {
                write!(f, "the non-overlapping preset is defined for 12 slots only")
            }
            Self::InadmissiblePolePairs { requested, admissible } => {
                write!(
                    f,
                    "signal winding with {requested} pole pairs cannot sense this rotor; \
                     admissible pole-pair counts:"
                )?;
                for value in admissible {
                    write!(f, " {value}")?;
                }
                Ok(())
            }
        }
    }
}

impl core::error::Error for WindingError {}

/// Excitation layout: `turns_per_tooth` coils on every tooth with
/// alternating orientation, `+T, -T, +T, ...` around the bore.
///
/// Requires an even `slot_count` so the pattern closes on itself.
pub fn alternating_excitation_turns(
    turns_per_tooth: f64,
    slot_count: usize,
) -> Result<TurnVector, WindingError> {
    if !slot_count.is_multiple_of(2) {
        return Err(WindingError::OddSlotCount);
    }
    Ok(TurnVector(
        (0..slot_count)
            .map(|i| if i % 2 == 0 { turns_per_tooth } else { -turns_per_tooth })
            .collect(),
    ))
}

/// Sinusoidally distributed signal windings with `pole_pairs` spatial
/// pole pairs: returns `(sine, cosine)` profiles where tooth `i` carries
/// `peak_turns * sin(pole_pairs * phi_i)` and `peak_turns *
/// cos(pole_pairs * phi_i)` turns respectively.
///
/// Turn counts are left unrounded; the layouts are the ideal
/// distributions, exactly in spatial quadrature.
pub fn overlapping_signal_turns(
    peak_turns: f64,
    pole_pairs: u32,
    slot_count: usize,
) -> (TurnVector, TurnVector) {
    let order = f64::from(pole_pairs);
    let mut sine = Vec::with_capacity(slot_count);
    let mut cosine = Vec::with_capacity(slot_count);
    for i in 0..slot_count {
        let phi = math::TAU * i as f64 / slot_count as f64;
        sine.push(peak_turns * math::sin(order * phi));
        cosine.push(peak_turns * math::cos(order * phi));
    }
    (TurnVector(sine), TurnVector(cosine))
}

/// The excitation, sine, and cosine profiles of a 12-tooth layout with
/// disjoint winding groups.
#[derive(Debug, Clone, PartialEq)]
pub struct NonOverlappingLayout {
    /// Excitation profile: teeth 0, 3, 6, 9 with alternating orientation.
    pub excitation: TurnVector,
    /// Sine profile: teeth 1, 5, 7, 11 with alternating orientation.
    pub sine: TurnVector,
    /// Cosine profile: teeth 2, 4, 8, 10 with alternating orientation.
    pub cosine: TurnVector,
}

/// A 12-tooth layout in which each winding owns four dedicated teeth:
/// excitation on teeth {0, 3, 6, 9}, sine on {1, 5, 7, 11}, cosine on
/// {2, 4, 8, 10}, each group wound `+, -, +, -` in listed order.
///
/// Fails with [`WindingError::PresetNeedsTwelveSlots`] for any other
/// tooth count.
pub fn non_overlapping_preset(
    signal_turns: f64,
    excitation_turns: f64,
    slot_count: usize,
) -> Result<NonOverlappingLayout, WindingError> {
    if slot_count != 12 {
        return Err(WindingError::PresetNeedsTwelveSlots);
    }
    let place = |teeth: [usize; 4], magnitude: f64| {
        let mut turns = alloc::vec![0.0; 12];
        for (rank, &tooth) in teeth.iter().enumerate() {
            turns[tooth] = if rank % 2 == 0 { magnitude } else { -magnitude };
        }
        TurnVector(turns)
    };
    Ok(NonOverlappingLayout {
        excitation: place([0, 3, 6, 9], excitation_turns),
        sine: place([1, 5, 7, 11], signal_turns),
        cosine: place([2, 4, 8, 10], signal_turns),
    })
}

/// Signal-winding pole-pair counts able to couple with the excitation
/// field of an `slot_count`-tooth stator modulated by a rotor with
/// `rotor_pole_pairs` salient pole pairs: `p`, `(N - 2p) / 2`, and
/// `(N + 2p) / 2`, kept when they are positive integers, deduplicated
/// and sorted.
pub fn admissible_signal_pole_pairs(slot_count: usize, rotor_pole_pairs: u32) -> Vec<u32> {
    let n = slot_count as i64;
    let p = i64::from(rotor_pole_pairs);
    let mut values = Vec::new();
    for candidate in [2 * p, n - 2 * p, n + 2 * p] {
        if candidate > 0 && candidate % 2 == 0 {
            let halved = (candidate / 2) as u32;
            if !values.contains(&halved) {
                values.push(halved);
            }
        }
    }
    values.sort_unstable();
    values
}

/// Checks that the geometry's `winding_pole_pairs` belongs to the
/// admissible set for its slot and pole counts.
pub fn validate_winding(geometry: &Geometry) -> Result<(), WindingError> {
    let admissible =
        admissible_signal_pole_pairs(geometry.slot_count, geometry.pole_count / 2);
    if admissible.contains(&geometry.winding_pole_pairs) {
        Ok(())
    } else {
        Err(WindingError::InadmissiblePolePairs {
            requested: geometry.winding_pole_pairs,
            admissible,
        })
    }
}
