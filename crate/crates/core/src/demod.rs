//! Envelope demodulation, angle estimation, and accuracy metrics.
//!
//! The signal voltages are amplitude-modulated carriers: with excitation
//! current `i(t) ~ I*cos(omega_e*t - phi_z)`, each signal winding sees
//! `v(t) ~ -L_mut(theta(t)) * I * omega_e * sin(omega_e*t - phi_z)` plus
//! a small rotation-induced component. Sampling synchronously at every
//! carrier half-period and flipping alternate samples strips the carrier
//! and leaves the modulation envelopes — one proportional to the sine
//! profile, one to the cosine profile, with a common positive gain:
//!
//! * the stride is `q = f_sample / (2 * f_excitation)` samples, which is
//!   why the timebase demands an even integer rate ratio;
//! * the carrier phase is measured, not assumed: the post-transient
//!   current is projected onto `cos`/`sin` at the carrier frequency and
//!   the sampling comb is shifted by `round(delta * q / pi)` samples,
//!   `delta = wrap(phase - pi/2)`, so the comb lands on the envelope
//!   peaks whether the branch is inductive (shift ~ 0) or resistive
//!   (shift ~ -q/2). The residual off-peak attenuation is common to both
//!   channels and cancels in the ratio below.
//!
//! The shaft angle then comes from the envelope ratio,
//! `atan2(env_s, env_c)`, which a healthy machine maps to the electrical
//! angle only up to a sense and offset fixed by winding polarity and
//! layout. [`AngleAlignment`] captures that commissioning constant from
//! the healthy profile fits; [`estimate_angle`] applies it, unwraps the
//! electrical angle (anchoring the first valid sample to the reference's
//! branch), divides by the electrical order, and reports per-sample
//! errors wrapped to `(-180, 180]` degrees. [`position_metrics`]
//! averages those errors over a caller-supplied inclusion mask —
//! normally "settled and valid".

use alloc::vec::Vec;

use crate::assembly::FourierSeries;
use crate::circuit::{ExcitationSource, WaveRecord};
use crate::math;

/// Envelope magnitude (volts) below which a sample pair carries no
/// usable angle information and is marked invalid.
pub const ENVELOPE_FLOOR_VOLT: f64 = 1e-9;

/// Smallest `|sin(phase_c - phase_s)|` accepted when deriving an
/// alignment: below this the two profiles are too far from quadrature to
/// decode an angle at all.
pub const QUADRATURE_FLOOR: f64 = 0.5;

/// Demodulation or estimation failure.
#[derive(Debug, Clone, PartialEq)]
pub enum DemodError {
    /// `sample_rate / (2 * carrier)` is not a positive integer.
    NonIntegerStride {
        /// The offending ratio.
        ratio: f64,
    },
    /// Traces differ in length, are too short, or carry a bad settling
    /// mark.
    MalformedRecord,
    /// Not even one full carrier period lies past the settling window.
    RecordTooShort,
    /// A profile fit lacks the electrical-order component needed for
    /// alignment (e.g. a layout with no rotor-angle coupling).
    NoFundamental {
        /// The electrical order that was looked for.
        order: u32,
    },
    /// Profile phases too far from quadrature to decode.
    NotInQuadrature {
        /// Measured `sin(phase_c - phase_s)`.
        quadrature: f64,
    },
}

impl core::fmt::Display for DemodError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::NonIntegerStride { ratio } => write!(
                f,
                "sample rate over twice the carrier frequency must be a positive integer, \
                 got {ratio}"
            ),
            Self::MalformedRecord => write!(f, "waveform record traces are inconsistent"),
            Self::RecordTooShort => {
                write!(f, "record holds no full carrier period past the settling window")
            }
            Self::NoFundamental { order } => write!(
                f,
                "profile fit has no order-{order} component; the machine cannot encode \
                 the rotor angle through these windings"
            ),
            Self::NotInQuadrature { quadrature } => write!(
                f,
                "signal profiles are not in quadrature (sin of phase difference = \
                 {quadrature}, need magnitude >= {QUADRATURE_FLOOR})"
            ),
        }
    }
}

impl core::error::Error for DemodError {}

/// Demodulated envelope streams, one entry per carrier half-period.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelopes {
    /// Index into the wave record each envelope entry was read from.
    pub sample_indices: Vec<usize>,
    /// Time of each entry, seconds.
    pub times_s: Vec<f64>,
    /// Sine-channel envelope, volts (positive gain times the sine
    /// profile).
    pub env_s: Vec<f64>,
    /// Cosine-channel envelope, volts.
    pub env_c: Vec<f64>,
    /// Wave-record sample index of the first settled sample, copied from
    /// the record for downstream masking.
    pub transient_end: usize,
    /// Measured carrier phase of the excitation current, radians
    /// (impedance angle of the branch).
    pub current_phase_rad: f64,
    /// Comb shift applied to centre samples on the envelope peaks.
    pub shift: isize,
}

/// Strips the carrier from a wave record by synchronous half-period
/// sampling with sign alternation, as described in the module docs.
pub fn demodulate(wave: &WaveRecord, source: &ExcitationSource) -> Result<Envelopes, DemodError> {
    if !wave.is_consistent() {
        return Err(DemodError::MalformedRecord);
    }
    let ratio = wave.sample_rate_hz / (2.0 * source.frequency_hz);
    let rounded = math::round(ratio);
    if math::abs(ratio - rounded) > 1e-6 || rounded < 1.0 {
        return Err(DemodError::NonIntegerStride { ratio });
    }
    let stride = rounded as usize;
    let count = wave.sample_count();

    // Measure the carrier phase of the excitation current over the
    // largest whole number of carrier periods past the settling window.
    let per_period = 2 * stride;
    let whole_periods = (count - wave.transient_end) / per_period;
    if whole_periods == 0 {
        return Err(DemodError::RecordTooShort);
    }
    let window = wave.transient_end..wave.transient_end + whole_periods * per_period;
    let omega = source.omega();
    let (mut cos_proj, mut sin_proj) = (0.0_f64, 0.0_f64);
    for k in window {
        let t = k as f64 / wave.sample_rate_hz;
        cos_proj += wave.i_e_amp[k] * math::cos(omega * t);
        sin_proj += wave.i_e_amp[k] * math::sin(omega * t);
    }
    let current_phase = math::atan2(sin_proj, cos_proj);

    // Shift the sampling comb onto the envelope peaks: the signal
    // carrier peaks lag the comb's natural position by
    // delta = wrap(current_phase - pi/2).
    let delta = math::wrap_angle(current_phase - math::PI / 2.0);
    let shift = math::round(delta * stride as f64 / math::PI) as isize;

    let mut envelopes = Envelopes {
        sample_indices: Vec::new(),
        times_s: Vec::new(),
        env_s: Vec::new(),
        env_c: Vec::new(),
        transient_end: wave.transient_end,
        current_phase_rad: current_phase,
        shift,
    };
    let mut m = 0usize;
    loop {
        let k = (m * stride) as isize + shift;
        m += 1;
        if k < 0 {
            continue;
        }
        let k = k as usize;
        if k >= count {
            break;
        }
        let polarity = if (m - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
        envelopes.sample_indices.push(k);
        envelopes.times_s.push(k as f64 / wave.sample_rate_hz);
        envelopes.env_s.push(polarity * wave.v_s_volt[k]);
        envelopes.env_c.push(polarity * wave.v_c_volt[k]);
    }
    Ok(envelopes)
}

/// The commissioning constants mapping the raw envelope-ratio angle onto
/// the electrical angle: `electrical = sense * (raw - offset_rad)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleAlignment {
    /// `+1` or `-1`: whether the raw angle runs with or against the
    /// rotor.
    pub sense: f64,
    /// Raw-angle offset, radians.
    pub offset_rad: f64,
}

impl AngleAlignment {
    /// The no-op alignment of an ideally wired machine.
    pub fn identity() -> Self {
        AngleAlignment { sense: 1.0, offset_rad: 0.0 }
    }

    /// Derives the alignment from healthy profile fits.
    ///
    /// With profiles `A_s*sin(n*theta + phi_s)` and
    /// `A_c*sin(n*theta + phi_c)` at the electrical order `n`, the sense
    /// is `sign(sin(phi_c - phi_s))` and the offset is
    /// `sense * (phi_c - pi/2)`, wrapped. This reproduces the identity
    /// for the ideal pair (`phi_s = 0`, `phi_c = pi/2`) and corrects any
    /// healthy machine whose layout decodes shifted or backwards.
    pub fn from_healthy_profiles(
        sine_fit: &FourierSeries,
        cosine_fit: &FourierSeries,
        electrical_order: u32,
    ) -> Result<Self, DemodError> {
        let sine_term = sine_fit
            .term(electrical_order)
            .ok_or(DemodError::NoFundamental { order: electrical_order })?;
        let cosine_term = cosine_fit
            .term(electrical_order)
            .ok_or(DemodError::NoFundamental { order: electrical_order })?;
        let quadrature = math::sin(cosine_term.phase - sine_term.phase);
        if math::abs(quadrature) < QUADRATURE_FLOOR {
            return Err(DemodError::NotInQuadrature { quadrature });
        }
        let sense = if quadrature < 0.0 { -1.0 } else { 1.0 };
        let offset_rad = math::wrap_angle(sense * (cosine_term.phase - math::PI / 2.0));
        Ok(AngleAlignment { sense, offset_rad })
    }

    /// Maps a raw envelope-ratio angle to the electrical angle (both
    /// modulo one electrical cycle).
    pub fn apply(&self, raw_rad: f64) -> f64 {
        self.sense * (raw_rad - self.offset_rad)
    }
}

/// Per-sample angle estimates and errors for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleEstimate {
    /// Wave-record sample index of each estimate.
    pub sample_indices: Vec<usize>,
    /// Time of each estimate, seconds.
    pub times_s: Vec<f64>,
    /// Estimated mechanical angle, radians, unwrapped; NaN when invalid.
    pub theta_est_rad: Vec<f64>,
    /// Reference mechanical angle at the same samples, radians.
    pub theta_ref_rad: Vec<f64>,
    /// Estimation error wrapped to `(-180, 180]` degrees; NaN when
    /// invalid.
    pub error_deg: Vec<f64>,
    /// Whether each envelope pair cleared [`ENVELOPE_FLOOR_VOLT`].
    pub valid: Vec<bool>,
    /// Whether each sample lies past the settling window.
    pub steady: Vec<bool>,
    /// Electrical order used for the division.
    pub pole_pairs: u32,
}

impl AngleEstimate {
    /// The default metrics mask: settled and valid.
    pub fn metrics_mask(&self) -> Vec<bool> {
        self.valid.iter().zip(&self.steady).map(|(&v, &s)| v && s).collect()
    }
}

/// Converts envelope streams to mechanical-angle estimates.
///
/// `theta_ref` is the full per-sample reference trace of the wave record
/// (indexed through the envelopes' sample indices). The electrical angle
/// is unwrapped sample-to-sample by nearest branch; the first valid
/// sample is anchored to the branch nearest `pole_pairs * theta_ref`, so
/// estimates track the reference's revolution count. Between consecutive
/// envelope samples the electrical angle must advance by less than half
/// a cycle for the unwrap to hold — amply true for any rotor speed the
/// carrier can track.
pub fn estimate_angle(
    envelopes: &Envelopes,
    theta_ref: &[f64],
    pole_pairs: u32,
    alignment: &AngleAlignment,
) -> AngleEstimate {
    let order = f64::from(pole_pairs.max(1));
    let count = envelopes.sample_indices.len();
    let mut estimate = AngleEstimate {
        sample_indices: envelopes.sample_indices.clone(),
        times_s: envelopes.times_s.clone(),
        theta_est_rad: Vec::with_capacity(count),
        theta_ref_rad: Vec::with_capacity(count),
        error_deg: Vec::with_capacity(count),
        valid: Vec::with_capacity(count),
        steady: Vec::with_capacity(count),
        pole_pairs,
    };
    let mut previous_electrical: Option<f64> = None;
    for (idx, &k) in envelopes.sample_indices.iter().enumerate() {
        let reference = theta_ref[k];
        let env_s = envelopes.env_s[idx];
        let env_c = envelopes.env_c[idx];
        let valid = math::hypot(env_s, env_c) > ENVELOPE_FLOOR_VOLT;
        estimate.theta_ref_rad.push(reference);
        estimate.valid.push(valid);
        estimate.steady.push(k >= envelopes.transient_end);
        if !valid {
            estimate.theta_est_rad.push(f64::NAN);
            estimate.error_deg.push(f64::NAN);
            continue;
        }
        let electrical_wrapped = alignment.apply(math::atan2(env_s, env_c));
        let target = previous_electrical.unwrap_or(order * reference);
        let branch = math::round((target - electrical_wrapped) / math::TAU);
        let electrical = electrical_wrapped + math::TAU * branch;
        previous_electrical = Some(electrical);
        let theta_est = electrical / order;
        estimate.theta_est_rad.push(theta_est);
        estimate
            .error_deg
            .push(math::wrap_degrees((theta_est - reference) * 180.0 / math::PI));
    }
    estimate
}

/// Accuracy summary over an inclusion mask.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositionMetrics {
    /// Average absolute position error, degrees; NaN when nothing is
    /// included.
    pub aape_deg: f64,
    /// Maximum absolute position error, degrees; NaN when nothing is
    /// included.
    pub mpe_deg: f64,
    /// Number of samples included.
    pub n_samples: usize,
    /// Number of samples masked out.
    pub n_excluded: usize,
}

/// Averages per-sample errors over the samples where `include` is true.
/// Panics if the slices differ in length.
pub fn position_metrics(error_deg: &[f64], include: &[bool]) -> PositionMetrics {
    assert_eq!(error_deg.len(), include.len(), "mask and error lengths differ");
    let mut sum = 0.0;
    let mut peak = 0.0_f64;
    let mut n_samples = 0usize;
    for (&e, &keep) in error_deg.iter().zip(include) {
        if !keep {
            continue;
        }
        let magnitude = math::abs(e);
        sum += magnitude;
        peak = peak.max(magnitude);
        n_samples += 1;
    }
    if n_samples == 0 {
        return PositionMetrics {
            aape_deg: f64::NAN,
            mpe_deg: f64::NAN,
            n_samples: 0,
            n_excluded: error_deg.len(),
        };
    }
    PositionMetrics {
        aape_deg: sum / n_samples as f64,
        mpe_deg: peak,
        n_samples,
        n_excluded: error_deg.len() - n_samples,
    }
}

/// Mean absolute difference between two equal-length traces.
/// Panics if the lengths differ or the slices are empty.
pub fn mae(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "trace lengths differ");
    assert!(!a.is_empty(), "empty traces have no mean error");
    let sum: f64 = a.iter().zip(b).map(|(&x, &y)| math::abs(x - y)).sum();
    sum / a.len() as f64
}
