//! Winding assembly: from single-turn tables to terminal inductances.
//!
//! A winding with turn profile `T` sees the single-turn basis through
//! turn-weighted sums. For the mutual inductance between a signal
//! profile `S` and the excitation profile `E`:
//!
//! ```text
//! L_mut(theta) = sum_i sum_j S[i] * E[j] * L_sig[theta][i][j]
//! ```
//!
//! and for the excitation winding's self-inductance the same double sum
//! with the excitation profile on both sides:
//!
//! ```text
//! L_self(theta) = sum_i sum_j E[i] * E[j] * L_exc[theta][i][j]
//! ```
//!
//! Reciprocity makes a sound excitation table symmetric, so
//! [`assemble_self_excitation`] measures the worst relative asymmetry
//! first and refuses tables beyond [`SELF_SYMMETRY_LIMIT`] rather than
//! silently averaging them.
//!
//! Both assemblers accept a per-sample, per-column scale callback
//! carrying the eccentricity factors: entry `(i, j)` is scaled by the
//! factor of the excitation tooth `j` whose coil drives the flux through
//! the perturbed gap — one uniform column rule for mutual and self
//! profiles alike, so a single factor convention covers all three
//! terminal inductances.
//!
//! Assembled profiles are then condensed to closed form by
//! [`fit_fourier`], which projects the sampled profile onto
//! `offset + sum_n amp_n * sin(n*theta + phase_n)` with a rectangle-rule
//! DFT — exact for profiles band-limited below the grid's alias order.

use alloc::vec::Vec;

use crate::basis::MatrixSeries;
use crate::math;
use crate::winding::TurnVector;

/// Largest relative asymmetry `|a_ij - a_ji| / max|a|` the self-assembly
/// accepts. Synthetic tables are exactly symmetric; externally supplied
/// tables should be reciprocal to solver precision, so anything beyond
/// one part in 1e9 indicates a corrupted or mislabelled table.
pub const SELF_SYMMETRY_LIMIT: f64 = 1e-9;

/// Assembly or fitting failure.
#[derive(Debug, Clone, PartialEq)]
pub enum AssemblyError {
    /// Turn vectors do not match the table dimensions.
    DimensionMismatch,
    /// The excitation table violates reciprocity beyond tolerance.
    AsymmetricBasis {
        /// Measured worst relative asymmetry.
        measured: f64,
    },
    /// A Fourier fit of order `n_max` needs at least `2*n_max + 2` grid
    /// samples.
    TooFewSamplesForFit {
        /// Minimum sample count for the requested order.
        required: usize,
        /// Samples actually supplied.
        actual: usize,
    },
    /// The angle grid is not the canonical uniform grid `2*pi*k/K`.
    NonUniformGrid,
}

impl core::fmt::Display for AssemblyError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::DimensionMismatch => {
                write!(f, "turn vectors do not match the basis table dimensions")
            }
            Self::AsymmetricBasis { measured } => write!(
                f,
                "excitation table asymmetry {measured:e} exceeds the reciprocity limit {SELF_SYMMETRY_LIMIT:e}"
            ),
            Self::TooFewSamplesForFit { required, actual } => {
                write!(f, "Fourier fit needs at least {required} samples, got {actual}")
            }
            Self::NonUniformGrid => {
                write!(f, "angle grid must be the uniform grid 2*pi*k/K starting at zero")
            }
        }
    }
}

impl core::error::Error for AssemblyError {}

/// Mutual inductance profile of a signal winding against the excitation
/// winding, one value per grid sample.
///
/// `column_scale(k, j)` multiplies every entry of excitation-tooth column
/// `j` at grid sample `k`; pass `|_, _| 1.0` for a healthy machine.
pub fn assemble_mutual(
    series: &MatrixSeries,
    signal_turns: &TurnVector,
    excitation_turns: &TurnVector,
    column_scale: impl Fn(usize, usize) -> f64,
) -> Result<Vec<f64>, AssemblyError> {
    if signal_turns.len() != series.rows() || excitation_turns.len() != series.cols() {
        return Err(AssemblyError::DimensionMismatch);
    }
    let mut profile = Vec::with_capacity(series.samples());
    for k in 0..series.samples() {
        let mut total = 0.0;
        for j in 0..series.cols() {
            let weight = excitation_turns.get(j);
            if weight == 0.0 {
                continue;
            }
            let scale = column_scale(k, j);
            let mut column = 0.0;
            for i in 0..series.rows() {
                column += signal_turns.get(i) * series.get(k, i, j);
            }
            total += weight * scale * column;
        }
        profile.push(total);
    }
    Ok(profile)
}

/// Self-inductance profile of the excitation winding, one value per grid
/// sample.
///
/// `column_scale(k, j)` multiplies every entry of excitation-tooth column
/// `j` at grid sample `k` — the same column rule as [`assemble_mutual`];
/// pass `|_, _| 1.0` for a healthy machine.
pub fn assemble_self_excitation(
    series: &MatrixSeries,
    excitation_turns: &TurnVector,
    column_scale: impl Fn(usize, usize) -> f64,
) -> Result<Vec<f64>, AssemblyError> {
    if series.rows() != series.cols() || excitation_turns.len() != series.rows() {
        return Err(AssemblyError::DimensionMismatch);
    }
    let asymmetry = series.max_relative_asymmetry();
    if asymmetry > SELF_SYMMETRY_LIMIT {
        return Err(AssemblyError::AsymmetricBasis { measured: asymmetry });
    }
    let n = series.rows();
    let mut profile = Vec::with_capacity(series.samples());
    for k in 0..series.samples() {
        let mut total = 0.0;
        for j in 0..n {
            let t_j = excitation_turns.get(j);
            if t_j == 0.0 {
                continue;
            }
            let mut column = 0.0;
            for i in 0..n {
                column += excitation_turns.get(i) * series.get(k, i, j);
            }
            total += t_j * column_scale(k, j) * column;
        }
        profile.push(total);
    }
    Ok(profile)
}

/// One sinusoidal component `amplitude * sin(order * theta + phase)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierTerm {
    /// Spatial order (cycles per mechanical revolution).
    pub order: u32,
    /// Component amplitude, same unit as the fitted profile.
    pub amplitude: f64,
    /// Phase in radians of the `sin(order*theta + phase)` form.
    pub phase: f64,
}

/// A profile in closed form: `offset + sum_n amp_n * sin(n*theta + phase_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierSeries {
    /// Mean value of the profile.
    pub offset: f64,
    /// Harmonic terms, ascending order, negligible ones pruned.
    pub terms: Vec<FourierTerm>,
}

impl FourierSeries {
    /// A constant profile.
    pub fn constant(offset: f64) -> Self {
        FourierSeries { offset, terms: Vec::new() }
    }

    /// A single pure harmonic.
    pub fn harmonic(order: u32, amplitude: f64, phase: f64) -> Self {
        FourierSeries { offset: 0.0, terms: alloc::vec![FourierTerm { order, amplitude, phase }] }
    }

    /// Evaluates the series at `theta`.
    pub fn value(&self, theta: f64) -> f64 {
        let mut total = self.offset;
        for term in &self.terms {
            total += term.amplitude * math::sin(f64::from(term.order) * theta + term.phase);
        }
        total
    }

    /// The component of a given order, if the fit retained one.
    pub fn term(&self, order: u32) -> Option<&FourierTerm> {
        self.terms.iter().find(|t| t.order == order)
    }
}

/// Relative amplitude below which a fitted harmonic is considered
/// numerical noise and pruned from the series.
pub const FIT_PRUNE_RELATIVE: f64 = 1e-14;

/// Projects a sampled profile onto harmonics `1..=n_max` plus a constant.
///
/// `angle_grid` must be the canonical uniform grid `theta_k = 2*pi*k/K`
/// and must hold at least `2*n_max + 2` samples so that order `n_max` is
/// still alias-free with margin. Components with amplitude below
/// [`FIT_PRUNE_RELATIVE`] times the profile's largest magnitude are
/// dropped.
pub fn fit_fourier(
    angle_grid: &[f64],
    values: &[f64],
    n_max: usize,
) -> Result<FourierSeries, AssemblyError> {
    let k_count = angle_grid.len();
    if values.len() != k_count {
        return Err(AssemblyError::DimensionMismatch);
    }
    let required = 2 * n_max + 2;
    if k_count < required {
        return Err(AssemblyError::TooFewSamplesForFit { required, actual: k_count });
    }
    for (k, &theta) in angle_grid.iter().enumerate() {
        let expected = math::TAU * k as f64 / k_count as f64;
        if math::abs(theta - expected) > 1e-9 {
            return Err(AssemblyError::NonUniformGrid);
        }
    }

    let scale = values.iter().fold(0.0_f64, |m, &v| m.max(math::abs(v)));
    let offset = values.iter().sum::<f64>() / k_count as f64;

    // On the canonical grid every kernel angle is a multiple of 2*pi/K, so
    // one period of cos/sin tables indexed by (order * k) mod K replaces
    // per-sample trig of large arguments — faster and free of the argument
    // growth that erodes precision at high orders.
    let mut cos_table = Vec::with_capacity(k_count);
    let mut sin_table = Vec::with_capacity(k_count);
    for m in 0..k_count {
        let angle = math::TAU * m as f64 / k_count as f64;
        cos_table.push(math::cos(angle));
        sin_table.push(math::sin(angle));
    }

    let mut terms = Vec::new();
    for order in 1..=n_max {
        let (mut a, mut b) = (0.0_f64, 0.0_f64);
        let mut index = 0usize;
        for &value in values {
            a += value * cos_table[index];
            b += value * sin_table[index];
            index += order;
            if index >= k_count {
                index %= k_count;
            }
        }
        a *= 2.0 / k_count as f64;
        b *= 2.0 / k_count as f64;
        // a*cos + b*sin  ==  amplitude * sin(arg + phase)
        let amplitude = math::hypot(a, b);
        if amplitude > FIT_PRUNE_RELATIVE * scale {
            terms.push(FourierTerm { order: order as u32, amplitude, phase: math::atan2(a, b) });
        }
    }
    Ok(FourierSeries { offset, terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{generate_synthetic_basis, BasisSet, VACUUM_PERMEABILITY};
    use crate::geometry::Geometry;
    use crate::math::{PI, TAU};
    use crate::winding::{
        alternating_excitation_turns, non_overlapping_preset, overlapping_signal_turns,
    };
    use proptest::prelude::*;

    fn demo_basis(samples: usize) -> BasisSet {
        generate_synthetic_basis(&Geometry::twelve_slot_demo(), samples).unwrap()
    }

    fn unit_scale(_: usize, _: usize) -> f64 {
        1.0
    }

    /// Closed-form amplitude of the demo machine's mutual profiles: the
    /// turn-weighted sum collapses analytically to
    /// `6 * mu0 * A * (g_max - g_min) / (g_min * g_max) * T_s * T_e`
    /// (lengths in metres).
    fn demo_mutual_amplitude() -> f64 {
        let geometry = Geometry::twelve_slot_demo();
        let pitch_m = PI * geometry.stator_inner_diameter_mm * 1e-3 / 12.0;
        let area = geometry.stack_length_mm * 1e-3 * geometry.tooth_span_fraction * pitch_m;
        let g_min = geometry.g_min_mm * 1e-3;
        let g_max = geometry.g_max_mm * 1e-3;
        6.0 * VACUUM_PERMEABILITY * area * (g_max - g_min) / (g_min * g_max) * 70.0 * 30.0
    }

    #[test]
    fn test_sine_mutual_is_a_positive_fundamental_sine() {
        let basis = demo_basis(360);
        let (sine, _) = overlapping_signal_turns(70.0, 5, 12);
        let excitation = alternating_excitation_turns(30.0, 12).unwrap();
        let profile = assemble_mutual(&basis.sig, &sine, &excitation, unit_scale).unwrap();
        let fit = fit_fourier(&basis.angle_grid, &profile, 6).unwrap();

        let expected = demo_mutual_amplitude();
        assert!(fit.offset.abs() < 1e-12 * expected, "offset {} not ~0", fit.offset);
        assert_eq!(fit.terms.len(), 1, "exactly one harmonic expected: {:?}", fit.terms);
        let term = fit.term(1).expect("fundamental present");
        assert!(
            ((term.amplitude - expected) / expected).abs() < 1e-9,
            "amplitude {} vs analytic {}",
            term.amplitude,
            expected
        );
        assert!(term.phase.abs() < 1e-9, "sine profile phase {} not ~0", term.phase);
    }

    #[test]
    fn test_cosine_mutual_is_a_negative_fundamental_cosine() {
        let basis = demo_basis(360);
        let (_, cosine) = overlapping_signal_turns(70.0, 5, 12);
        let excitation = alternating_excitation_turns(30.0, 12).unwrap();
        let profile = assemble_mutual(&basis.sig, &cosine, &excitation, unit_scale).unwrap();
        let fit = fit_fourier(&basis.angle_grid, &profile, 6).unwrap();

        let term = fit.term(1).expect("fundamental present");
        let expected = demo_mutual_amplitude();
        assert!(((term.amplitude - expected) / expected).abs() < 1e-9);
        // -A*cos(theta) == A*sin(theta - pi/2)
        assert!((term.phase + PI / 2.0).abs() < 1e-9, "cosine profile phase {}", term.phase);
    }

    #[test]
    fn test_mutual_profiles_are_in_quadrature_with_sine_leading() {
        let basis = demo_basis(180);
        let (sine, cosine) = overlapping_signal_turns(70.0, 5, 12);
        let excitation = alternating_excitation_turns(30.0, 12).unwrap();
        let s = assemble_mutual(&basis.sig, &sine, &excitation, unit_scale).unwrap();
        let c = assemble_mutual(&basis.sig, &cosine, &excitation, unit_scale).unwrap();
        let fs = fit_fourier(&basis.angle_grid, &s, 3).unwrap();
        let fc = fit_fourier(&basis.angle_grid, &c, 3).unwrap();
        let delta = fc.term(1).unwrap().phase - fs.term(1).unwrap().phase;
        // sin(delta) = -1: the cosine profile trails by a quarter cycle.
        assert!((math::sin(delta) + 1.0).abs() < 1e-9, "quadrature defect: sin(delta)={}", math::sin(delta));
    }

    #[test]
    fn test_self_inductance_is_constant_at_analytic_value() {
        let basis = demo_basis(200);
        let excitation = alternating_excitation_turns(30.0, 12).unwrap();
        let profile = assemble_self_excitation(&basis.exc, &excitation, unit_scale).unwrap();
        let fit = fit_fourier(&basis.angle_grid, &profile, 6).unwrap();

        // Alternating turns cancel the rank-1 part entirely, leaving
        // T_e^2 * sum(P), and the total permeance is angle-independent:
        // sum(P) = N * mu0 * A * (g_min + g_max) / (g_min * g_max).
        let geometry = Geometry::twelve_slot_demo();
        let pitch_m = PI * geometry.stator_inner_diameter_mm * 1e-3 / 12.0;
        let area = geometry.stack_length_mm * 1e-3 * geometry.tooth_span_fraction * pitch_m;
        let g_min = geometry.g_min_mm * 1e-3;
        let g_max = geometry.g_max_mm * 1e-3;
        let expected = 30.0 * 30.0
            * 12.0 * VACUUM_PERMEABILITY * area * (g_min + g_max) / (g_min * g_max);

        assert!(fit.terms.is_empty(), "self profile has harmonics: {:?}", fit.terms);
        assert!(
            ((fit.offset - expected) / expected).abs() < 1e-9,
            "self inductance {} vs analytic {}",
            fit.offset,
            expected
        );
        // Every raw sample equals the mean: constant to rounding error.
        for &v in &profile {
            assert!(((v - expected) / expected).abs() < 1e-12);
        }
    }

    #[test]
    fn test_self_assembly_matches_explicit_double_sum() {
        // Independent route: spell out the double sum without any of the
        // assembler's skip-zero shortcuts.
        let basis = demo_basis(24);
        let excitation = alternating_excitation_turns(30.0, 12).unwrap();
        let assembled = assemble_self_excitation(&basis.exc, &excitation, unit_scale).unwrap();
        for (k, &value) in assembled.iter().enumerate() {
            let mut full = 0.0;
            for i in 0..12 {
                for j in 0..12 {
                    full += excitation.get(i) * excitation.get(j) * basis.exc.get(k, i, j);
                }
            }
            assert!(
                ((value - full) / full).abs() < 1e-12,
                "sample {k}: assembled {value} vs double sum {full}"
            );
        }
    }

    #[test]
    fn test_self_column_scale_reaches_one_column() {
        // Scaling excitation column 4 by 3 must add exactly twice that
        // column's turn-weighted contribution, rows included in full.
        let basis = demo_basis(12);
        let excitation = alternating_excitation_turns(30.0, 12).unwrap();
        let baseline = assemble_self_excitation(&basis.exc, &excitation, unit_scale).unwrap();
        let scaled = assemble_self_excitation(&basis.exc, &excitation, |_, j| {
            if j == 4 {
                3.0
            } else {
                1.0
            }
        })
        .unwrap();
        for k in 0..basis.angle_count() {
            let column4: f64 = (0..12)
                .map(|i| excitation.get(i) * excitation.get(4) * basis.exc.get(k, i, 4))
                .sum();
            let expected = baseline[k] + 2.0 * column4;
            assert!(
                (scaled[k] - expected).abs() < 1e-12 * baseline[k].abs().max(column4.abs()),
                "sample {k}"
            );
        }
    }

    #[test]
    fn test_asymmetric_table_is_refused() {
        let mut basis = demo_basis(12);
        let peak = basis.exc.max_abs();
        let bumped = basis.exc.get(0, 1, 2) + 1e-6 * peak;
        basis.exc.set(0, 1, 2, bumped);
        let excitation = alternating_excitation_turns(30.0, 12).unwrap();
        match assemble_self_excitation(&basis.exc, &excitation, unit_scale) {
            Err(AssemblyError::AsymmetricBasis { measured }) => {
                assert!(measured > SELF_SYMMETRY_LIMIT);
            }
            other => panic!("expected asymmetry rejection, got {other:?}"),
        }
    }

    #[test]
    fn test_column_scale_reaches_the_right_column() {
        let basis = demo_basis(12);
        let (sine, _) = overlapping_signal_turns(70.0, 5, 12);
        let excitation = alternating_excitation_turns(30.0, 12).unwrap();
        // Scaling every column by 1 except column 4 by 3 must change the
        // profile by exactly twice column 4's contribution.
        let baseline = assemble_mutual(&basis.sig, &sine, &excitation, unit_scale).unwrap();
        let scaled = assemble_mutual(&basis.sig, &sine, &excitation, |_, j| {
            if j == 4 {
                3.0
            } else {
                1.0
            }
        })
        .unwrap();
        for k in 0..basis.angle_count() {
            let column4: f64 =
                (0..12).map(|i| sine.get(i) * excitation.get(4) * basis.sig.get(k, i, 4)).sum();
            let expected = baseline[k] + 2.0 * column4;
            assert!(
                (scaled[k] - expected).abs() < 1e-12 * baseline[k].abs().max(column4.abs()),
                "sample {k}"
            );
        }
    }

    #[test]
    fn test_non_overlapping_layout_couples_nothing_in_this_network() {
        // The star permeance network has no tooth-local leakage paths, so
        // windings on disjoint teeth see each other only through the
        // rank-1 shared-node term — and the preset's alternating groups
        // annihilate it. This is a recorded limitation of the synthetic
        // basis, not of the layout: keep the profile pinned at zero so a
        // change in behaviour is noticed.
        let basis = demo_basis(90);
        let layout = non_overlapping_preset(70.0, 30.0, 12).unwrap();
        let s = assemble_mutual(&basis.sig, &layout.sine, &layout.excitation, unit_scale).unwrap();
        let c =
            assemble_mutual(&basis.sig, &layout.cosine, &layout.excitation, unit_scale).unwrap();
        for k in 0..basis.angle_count() {
            assert!(s[k].abs() < 1e-15, "sine coupling {} at sample {k}", s[k]);
            assert!(c[k].abs() < 1e-15, "cosine coupling {} at sample {k}", c[k]);
        }
    }

    #[test]
    fn test_fit_recovers_a_known_series() {
        let k_count = 64;
        let grid: Vec<f64> = (0..k_count).map(|k| TAU * k as f64 / k_count as f64).collect();
        let values: Vec<f64> =
            grid.iter().map(|&t| 3.0 + 2.0 * math::sin(4.0 * t + 0.7)).collect();
        let fit = fit_fourier(&grid, &values, 8).unwrap();
        assert!((fit.offset - 3.0).abs() < 1e-12);
        assert_eq!(fit.terms.len(), 1);
        let term = fit.term(4).unwrap();
        assert!((term.amplitude - 2.0).abs() < 1e-12);
        assert!((term.phase - 0.7).abs() < 1e-12);
    }

    #[test]
    fn test_fit_phase_convention_for_pure_cosine() {
        let k_count = 32;
        let grid: Vec<f64> = (0..k_count).map(|k| TAU * k as f64 / k_count as f64).collect();
        let values: Vec<f64> = grid.iter().map(|&t| 5.0 * math::cos(2.0 * t)).collect();
        let fit = fit_fourier(&grid, &values, 4).unwrap();
        let term = fit.term(2).unwrap();
        // 5*cos(2t) == 5*sin(2t + pi/2)
        assert!((term.amplitude - 5.0).abs() < 1e-12);
        assert!((term.phase - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn test_fit_preconditions() {
        let k_count = 10;
        let grid: Vec<f64> = (0..k_count).map(|k| TAU * k as f64 / k_count as f64).collect();
        let values = alloc::vec![1.0; k_count];
        assert_eq!(
            fit_fourier(&grid, &values, 5),
            Err(AssemblyError::TooFewSamplesForFit { required: 12, actual: 10 })
        );
        let mut crooked = grid.clone();
        crooked[2] += 0.3;
        assert_eq!(fit_fourier(&crooked, &values, 2), Err(AssemblyError::NonUniformGrid));
        assert_eq!(
            fit_fourier(&grid, &values[..9], 2),
            Err(AssemblyError::DimensionMismatch)
        );
    }

    #[test]
    fn test_series_evaluation() {
        let series = FourierSeries {
            offset: 1.5,
            terms: alloc::vec![
                FourierTerm { order: 1, amplitude: 2.0, phase: 0.0 },
                FourierTerm { order: 3, amplitude: 0.5, phase: -0.9 },
            ],
        };
        let theta = 0.823;
        let expected =
            1.5 + 2.0 * math::sin(theta) + 0.5 * math::sin(3.0 * theta - 0.9);
        assert!((series.value(theta) - expected).abs() < 1e-15);
        assert_eq!(FourierSeries::constant(4.0).value(0.3), 4.0);
        let h = FourierSeries::harmonic(2, 1.0, PI / 2.0);
        assert!((h.value(0.0) - 1.0).abs() < 1e-15);
    }

    proptest! {
        /// Fit-then-evaluate reproduces any band-limited profile.
        #[test]
        fn prop_fit_round_trips_band_limited_profiles(
            offset in -10.0f64..10.0,
            a1 in -5.0f64..5.0,
            p1 in -3.0f64..3.0,
            a3 in -5.0f64..5.0,
            p3 in -3.0f64..3.0,
            probe in 0.0f64..TAU,
        ) {
            let k_count = 32;
            let grid: Vec<f64> = (0..k_count).map(|k| TAU * k as f64 / k_count as f64).collect();
            let truth = |t: f64| offset + a1 * math::sin(t + p1) + a3 * math::sin(3.0 * t + p3);
            let values: Vec<f64> = grid.iter().map(|&t| truth(t)).collect();
            let fit = fit_fourier(&grid, &values, 5).unwrap();
            let tolerance = 1e-9 * (1.0 + offset.abs() + a1.abs() + a3.abs());
            prop_assert!((fit.value(probe) - truth(probe)).abs() < tolerance);
        }
    }
}
