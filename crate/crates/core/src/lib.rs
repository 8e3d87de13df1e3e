#![cfg_attr(not(test), no_std)]
// Validation guards are written `!(x > 0.0)` on purpose: unlike
// `x <= 0.0`, the negated form also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
//! Hybrid lumped-parameter model of a variable-reluctance resolver.
//!
//! The crate turns a machine geometry into labelled angle-sensing
//! behaviour in five stages, each with its own module:
//!
//! 1. [`geometry`] — stator/rotor cross-section and the air-gap law;
//! 2. [`basis`] — single-turn inductance tables over one revolution,
//!    either synthesised from a permeance network or supplied externally;
//! 3. winding assembly and fault injection — turn-count profiles combine
//!    basis entries into terminal inductances, with shorted-turn and
//!    eccentricity faults applied as turn/permeance modifications;
//! 4. excitation circuit and induced voltages — a trapezoidal
//!    time-stepper drives the excitation winding and differentiates the
//!    signal flux linkages;
//! 5. envelope demodulation and angle estimation — synchronous sampling
//!    recovers the modulation envelopes and the shaft angle, with
//!    accuracy metrics over the steady-state window.
//!
//! # Example
//!
//! Simulate the bundled demonstration machine with the rotor pulled
//! 0.1 mm off centre and read back the accuracy metrics:
//!
//! ```
//! use resolver_core::{simulate, FaultSpec, ScenarioInputs};
//!
//! let mut inputs = ScenarioInputs::demo();
//! // Park the rotor and keep the capture short so the example is quick.
//! inputs.timebase.duration_s = 0.0015;
//! inputs.timebase.omega_rad_s = 0.0;
//! inputs.timebase.theta0_rad = 0.4;
//! // Pull the rotor 0.1 mm toward the first tooth.
//! inputs.faults.push(FaultSpec::StaticEccentricity {
//!     magnitude_mm: 0.1,
//!     direction_rad: 0.0,
//! });
//! let outputs = simulate(&inputs).unwrap();
//! // The bent flux paths show up directly as angle error.
//! assert!(outputs.metrics.aape_deg > 1.0);
//! assert_eq!(outputs.effective_faults.len(), 1);
//! ```
//!
//! The crate is `no_std` (with `alloc`) so the model can run inside
//! embedded commissioning tools; all file formats, CLI handling, and
//! parallel sweeps live in the companion `resolver-sim` crate.

extern crate alloc;

mod math;

pub mod assembly;
pub mod basis;
pub mod circuit;
pub mod demod;
pub mod fault;
pub mod geometry;
pub mod scenario;
pub mod winding;

pub use assembly::{
    assemble_mutual, assemble_self_excitation, fit_fourier, AssemblyError, FourierSeries,
    FourierTerm,
};
pub use basis::{
    generate_synthetic_basis, BasisError, BasisSet, MatrixSeries, VACUUM_PERMEABILITY,
};
pub use circuit::{
    induced_voltage, solve_excitation_current, CircuitError, ConstantInductance,
    ExcitationSource, InductanceModel, Timebase, TimebaseWarning, WaveRecord,
};
pub use demod::{
    demodulate, estimate_angle, mae, position_metrics, AngleAlignment, AngleEstimate,
    DemodError, Envelopes, PositionMetrics,
};
pub use fault::{apply_faults, FaultError, FaultSpec, FaultedBasisView, SignalWinding};
pub use geometry::{AirgapKind, Geometry, GeometryError};
pub use scenario::{
    simulate, BasisMode, ProfileTrace, ScenarioError, ScenarioInputs, ScenarioOutputs, WindingSpec,
};
pub use winding::{
    admissible_signal_pole_pairs, alternating_excitation_turns, non_overlapping_preset,
    overlapping_signal_turns, validate_winding, NonOverlappingLayout, TurnVector, WindingError,
};
