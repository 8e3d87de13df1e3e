// Validation guards are written `!(x > 0.0)` on purpose: unlike
// `x <= 0.0`, the negated form also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
//! Files, configuration, and dataset sweeps around the `resolver-core`
//! model.
//!
//! The core crate is `no_std` and knows nothing about paths or text; this
//! companion supplies everything a command line needs:
//!
//! * [`basis_file`] — save/load of single-turn inductance tables in a
//!   line-oriented text format;
//! * [`config`] — the `key = value` scenario configuration with defaults,
//!   overrides, and a canonical re-emitter;
//! * [`emit`] — CSV and metrics writers for one run's outputs;
//! * [`runner`] — one-scenario execution with file emission, and
//!   multi-worker sweeps over parameter axes with a deterministic
//!   manifest.
//!
//! The binary target wires these into the `gen-basis`, `run`, `sweep`,
//! and `metrics` subcommands.

pub mod basis_file;
pub mod config;
pub mod emit;
pub mod runner;
