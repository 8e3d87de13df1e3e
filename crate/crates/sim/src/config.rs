//! Scenario configuration: flat `key = value` text with dotted section
//! prefixes.
//!
//! The format is deliberately plain — one assignment per line, `#` for
//! comment lines — so configs diff cleanly and parse in any language.
//! Every key has a default drawn from the demonstration fixture, so an
//! empty file is the healthy reference run and a config only states what
//! it changes.
//!
//! Fault blocks are repeatable: each `fault.kind` line opens a new block
//! and the following `fault.*` keys configure it, so several faults can
//! overlap in one scenario. Tooth numbers in configs are **one-based**
//! (tooth 1 sits at stator angle zero), matching how machine winding
//! diagrams are labelled; the conversion to the core crate's zero-based
//! indices happens in [`ScenarioConfig::build`].
//!
//! [`ScenarioConfig::emit`] writes the canonical form with all defaults
//! materialised; parse-then-emit is idempotent, which keeps generated
//! datasets self-describing.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use resolver_core::scenario::{demo_excitation_self_h, demo_mutual_amplitude_h};
use resolver_core::{
    AirgapKind, BasisMode, ExcitationSource, FaultSpec, Geometry, ScenarioInputs, SignalWinding,
    Timebase, WindingSpec,
};

use crate::basis_file::{self, BasisFileError, BasisFileWarning};

/// Which of the three inductance sources a run uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    /// Generate tables from the `geometry.*` block.
    Synthetic,
    /// Load tables from the file at `basis.path`.
    File,
    /// Pure quadrature harmonics, no tables at all.
    Ideal,
}

/// Winding layout selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindingKind {
    /// Sinusoidally distributed signal windings on every tooth.
    Overlapping,
    /// The fixed twelve-tooth layout with disjoint winding groups.
    NonOverlapping,
}

/// One configured fault block. Teeth are one-based here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FaultConfig {
    /// Dead short across part of one signal coil.
    SignalShort {
        /// Tooth carrying the coil, 1-based.
        tooth: usize,
        /// Which signal winding is hit.
        winding: SignalWinding,
        /// Shorted turns.
        turns: f64,
    },
    /// Resistive short across part of one excitation coil.
    ExcitationShort {
        /// Tooth carrying the coil, 1-based.
        tooth: usize,
        /// Shorted turns.
        turns: f64,
        /// Contact resistance of the short, ohms.
        r_sc_ohm: f64,
    },
    /// Rotor displaced by a fixed vector.
    StaticEcc {
        /// Displacement magnitude, mm.
        e_mm: f64,
        /// Displacement direction, radians in the stator frame.
        theta_ecc_rad: f64,
    },
    /// Rotor centre whirling at the rotation frequency.
    DynamicEcc {
        /// Whirl radius, mm.
        e_d_mm: f64,
    },
}

/// A fully resolved scenario configuration (defaults materialised).
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    /// Name used in file names and the sweep manifest;
    /// `[A-Za-z0-9_-]` only.
    pub scenario_id: String,
    /// Output directory for this scenario's files, relative to the
    /// working directory unless absolute. The CLI `--out` flag overrides
    /// it.
    pub out_dir: String,
    /// Inductance source selector.
    pub basis_kind: BasisKind,
    /// Rotor grid resolution `K` for the synthetic generator.
    pub samples_per_rev: usize,
    /// Basis file path for [`BasisKind::File`], relative to the config
    /// file's directory unless absolute.
    pub basis_path: Option<String>,
    /// Ideal-mode coupling amplitude, henries.
    pub ideal_amplitude_h: f64,
    /// Ideal-mode excitation self-inductance, henries.
    pub ideal_l_ee_h: f64,
    /// Ideal-mode electrical cycles per revolution.
    pub ideal_pole_pairs: u32,
    /// Machine cross-section for the synthetic generator;
    /// `winding_pole_pairs` mirrors `winding.P_w`.
    pub geometry: Geometry,
    /// Winding layout selector.
    pub winding_kind: WindingKind,
    /// Peak signal turns per tooth (`winding.T_s`).
    pub signal_turns: f64,
    /// Excitation turns per tooth (`winding.T_e`).
    pub excitation_turns: f64,
    /// Excitation winding resistance, ohms (`winding.R_e_ohm`).
    pub winding_resistance_ohm: f64,
    /// Excitation drive.
    pub source: ExcitationSource,
    /// Sampling clock and mechanical trajectory.
    pub timebase: Timebase,
    /// Highest spatial order kept by the profile fits (`fit.n_max`).
    pub fit_order_max: usize,
    /// Fault blocks in file order.
    pub faults: Vec<FaultConfig>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            scenario_id: "scenario".to_owned(),
            out_dir: "out".to_owned(),
            basis_kind: BasisKind::Synthetic,
            samples_per_rev: 1000,
            basis_path: None,
            ideal_amplitude_h: demo_mutual_amplitude_h(),
            ideal_l_ee_h: demo_excitation_self_h(),
            ideal_pole_pairs: 1,
            geometry: Geometry::twelve_slot_demo(),
            winding_kind: WindingKind::Overlapping,
            signal_turns: 70.0,
            excitation_turns: 30.0,
            winding_resistance_ohm: 2.0,
            source: ExcitationSource { amplitude_volt: 5.0, frequency_hz: 5000.0 },
            timebase: Timebase {
                sample_rate_hz: 80_000.0,
                duration_s: 0.125,
                omega_rad_s: 50.27,
                theta0_rad: 0.0,
            },
            fit_order_max: 500,
            faults: Vec::new(),
        }
    }
}

/// Configuration parse or consistency failure.
#[derive(Debug, Clone, PartialEq)]
pub enum ConfigError {
    /// A non-comment line has no `=`.
    Syntax {
        /// 1-based line number.
        line: usize,
    },
    /// The key is not part of the configuration schema.
    UnknownKey {
        /// The unrecognised key.
        key: String,
        /// 1-based line number.
        line: usize,
    },
    /// The value does not parse as the key's type.
    BadValue {
        /// The key whose value is malformed.
        key: String,
        /// 1-based line number.
        line: usize,
    },
    /// A scalar key was assigned twice in one file.
    DuplicateKey {
        /// The repeated key.
        key: String,
        /// 1-based line number of the second assignment.
        line: usize,
    },
    /// A `fault.*` key appeared before any `fault.kind` line.
    NoFaultBlock {
        /// The offending key.
        key: String,
        /// 1-based line number.
        line: usize,
    },
    /// A `fault.*` key does not belong to the current block's kind.
    MisplacedFaultKey {
        /// The offending key.
        key: String,
        /// 1-based line number.
        line: usize,
    },
    /// A key was set that the selected `basis.kind` never reads.
    MisplacedKey {
        /// The irrelevant key.
        key: String,
        /// 1-based line number.
        line: usize,
    },
    /// `scenario.id` must be non-empty `[A-Za-z0-9_-]`.
    BadScenarioId {
        /// 1-based line number.
        line: usize,
    },
    /// An `--override` argument is not of the form `key=value`.
    BadOverride {
        /// The argument as given.
        argument: String,
    },
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Syntax { line } => write!(f, "line {line}: expected `key = value`"),
            Self::UnknownKey { key, line } => {
                write!(f, "line {line}: unknown configuration key `{key}`")
            }
            Self::BadValue { key, line } => {
                write!(f, "line {line}: malformed value for `{key}`")
            }
            Self::DuplicateKey { key, line } => {
                write!(f, "line {line}: `{key}` was already set")
            }
            Self::NoFaultBlock { key, line } => write!(
                f,
                "line {line}: `{key}` needs a fault block; start one with `fault.kind = ...`"
            ),
            Self::MisplacedFaultKey { key, line } => write!(
                f,
                "line {line}: `{key}` does not apply to the current fault block's kind"
            ),
            Self::MisplacedKey { key, line } => write!(
                f,
                "line {line}: `{key}` is never read under the selected `basis.kind`"
            ),
            Self::BadScenarioId { line } => write!(
                f,
                "line {line}: scenario.id must be non-empty letters, digits, `_`, or `-`"
            ),
            Self::BadOverride { argument } => {
                write!(f, "override `{argument}` is not of the form key=value")
            }
        }
    }
}

impl std::error::Error for ConfigError {}

fn parse_value<T: std::str::FromStr>(
    value: &str,
    key: &str,
    line: usize,
) -> Result<T, ConfigError> {
    value
        .parse()
        .map_err(|_| ConfigError::BadValue { key: key.to_owned(), line })
}

impl ScenarioConfig {
    /// Parses a configuration file's text.
    ///
    /// Unset keys keep their fixture defaults. Scalar keys may appear at
    /// most once; `fault.kind` may repeat, opening a new block each time.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = ScenarioConfig::default();
        // Key -> first line, for duplicate detection and the relevance
        // check that runs once the final basis kind is known.
        let mut seen: BTreeMap<String, usize> = BTreeMap::new();
        let mut block_seen: BTreeMap<String, usize> = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = match line.split_once('=') {
                Some((k, v)) => (k.trim(), v.trim()),
                None => return Err(ConfigError::Syntax { line: line_no }),
            };
            if key == "fault.kind" {
                block_seen.clear();
            }
            let tracker = if key.starts_with("fault.") { &mut block_seen } else { &mut seen };
            if tracker.insert(key.to_owned(), line_no).is_some() && key != "fault.kind" {
                return Err(ConfigError::DuplicateKey { key: key.to_owned(), line: line_no });
            }
            cfg.apply(key, value, line_no)?;
        }
        for (key, &line) in &seen {
            if !key_is_read(key, cfg.basis_kind) {
                return Err(ConfigError::MisplacedKey { key: key.clone(), line });
            }
        }
        Ok(cfg)
    }

    /// Applies one `key=value` override, as given on the command line.
    ///
    /// Overrides may reassign keys the file already set. A `fault.*`
    /// override targets the last fault block; `fault.kind` appends a new
    /// block.
    pub fn apply_override(&mut self, argument: &str) -> Result<(), ConfigError> {
        let (key, value) = argument
            .split_once('=')
            .ok_or_else(|| ConfigError::BadOverride { argument: argument.to_owned() })?;
        self.apply(key.trim(), value.trim(), 0)
    }

    fn apply(&mut self, key: &str, value: &str, line: usize) -> Result<(), ConfigError> {
        match key {
            "scenario.id" => {
                let ok = !value.is_empty()
                    && value
                        .chars()
                        .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
                if !ok {
                    return Err(ConfigError::BadScenarioId { line });
                }
                self.scenario_id = value.to_owned();
            }
            "scenario.out_dir" => self.out_dir = value.to_owned(),
            "basis.kind" => {
                self.basis_kind = match value {
                    "synthetic" => BasisKind::Synthetic,
                    "file" => BasisKind::File,
                    "ideal" => BasisKind::Ideal,
                    _ => return Err(ConfigError::BadValue { key: key.to_owned(), line }),
                }
            }
            "basis.K" => self.samples_per_rev = parse_value(value, key, line)?,
            "basis.path" => self.basis_path = Some(value.to_owned()),
            "basis.amplitude_H" => self.ideal_amplitude_h = parse_value(value, key, line)?,
            "basis.L_ee_H" => self.ideal_l_ee_h = parse_value(value, key, line)?,
            "basis.pole_pairs" => self.ideal_pole_pairs = parse_value(value, key, line)?,
            "geometry.N" => self.geometry.slot_count = parse_value(value, key, line)?,
            "geometry.airgap_kind" => {
                self.geometry.airgap_kind = match value {
                    "sinusoidal_salient" => AirgapKind::SinusoidalSalient,
                    "uniform" => AirgapKind::Uniform,
                    _ => return Err(ConfigError::BadValue { key: key.to_owned(), line }),
                }
            }
            "geometry.G_min_mm" => self.geometry.g_min_mm = parse_value(value, key, line)?,
            "geometry.G_max_mm" => self.geometry.g_max_mm = parse_value(value, key, line)?,
            "geometry.P" => self.geometry.pole_count = parse_value(value, key, line)?,
            "geometry.stack_length_mm" => {
                self.geometry.stack_length_mm = parse_value(value, key, line)?
            }
            "geometry.D_s_mm" => {
                self.geometry.stator_inner_diameter_mm = parse_value(value, key, line)?
            }
            "geometry.D_r_mm" => {
                self.geometry.rotor_outer_diameter_mm = Some(parse_value(value, key, line)?)
            }
            "geometry.tooth_span_fraction" => {
                self.geometry.tooth_span_fraction = parse_value(value, key, line)?
            }
            "winding.kind" => {
                self.winding_kind = match value {
                    "overlapping" => WindingKind::Overlapping,
                    "non_overlapping" => WindingKind::NonOverlapping,
                    _ => return Err(ConfigError::BadValue { key: key.to_owned(), line }),
                }
            }
            "winding.T_s" => self.signal_turns = parse_value(value, key, line)?,
            "winding.T_e" => self.excitation_turns = parse_value(value, key, line)?,
            "winding.P_w" => self.geometry.winding_pole_pairs = parse_value(value, key, line)?,
            "winding.R_e_ohm" => self.winding_resistance_ohm = parse_value(value, key, line)?,
            "source.v_m_V" => self.source.amplitude_volt = parse_value(value, key, line)?,
            "source.f_e_Hz" => self.source.frequency_hz = parse_value(value, key, line)?,
            "timebase.f_s_Hz" => self.timebase.sample_rate_hz = parse_value(value, key, line)?,
            "timebase.duration_s" => self.timebase.duration_s = parse_value(value, key, line)?,
            "timebase.omega_rad_s" => self.timebase.omega_rad_s = parse_value(value, key, line)?,
            "timebase.theta0_rad" => self.timebase.theta0_rad = parse_value(value, key, line)?,
            "fit.n_max" => self.fit_order_max = parse_value(value, key, line)?,
            "fault.kind" => {
                let block = match value {
                    "signal_short" => FaultConfig::SignalShort {
                        tooth: 1,
                        winding: SignalWinding::Sine,
                        turns: 0.0,
                    },
                    "excitation_short" => {
                        FaultConfig::ExcitationShort { tooth: 1, turns: 0.0, r_sc_ohm: 0.0 }
                    }
                    "static_ecc" => FaultConfig::StaticEcc { e_mm: 0.0, theta_ecc_rad: 0.0 },
                    "dynamic_ecc" => FaultConfig::DynamicEcc { e_d_mm: 0.0 },
                    _ => return Err(ConfigError::BadValue { key: key.to_owned(), line }),
                };
                self.faults.push(block);
            }
            _ if key.starts_with("fault.") => self.apply_fault_key(key, value, line)?,
            _ => return Err(ConfigError::UnknownKey { key: key.to_owned(), line }),
        }
        Ok(())
    }

    fn apply_fault_key(&mut self, key: &str, value: &str, line: usize) -> Result<(), ConfigError> {
        let block = self
            .faults
            .last_mut()
            .ok_or_else(|| ConfigError::NoFaultBlock { key: key.to_owned(), line })?;
        let misplaced = || ConfigError::MisplacedFaultKey { key: key.to_owned(), line };
        match key {
            "fault.winding" => match block {
                FaultConfig::SignalShort { winding, .. } => {
                    *winding = match value {
                        "sine" => SignalWinding::Sine,
                        "cosine" => SignalWinding::Cosine,
                        _ => return Err(ConfigError::BadValue { key: key.to_owned(), line }),
                    }
                }
                _ => return Err(misplaced()),
            },
            "fault.tooth" => match block {
                FaultConfig::SignalShort { tooth: t, .. }
                | FaultConfig::ExcitationShort { tooth: t, .. } => {
                    let tooth: usize = parse_value(value, key, line)?;
                    if tooth == 0 {
                        return Err(ConfigError::BadValue { key: key.to_owned(), line });
                    }
                    *t = tooth;
                }
                _ => return Err(misplaced()),
            },
            "fault.turns" => match block {
                FaultConfig::SignalShort { turns, .. }
                | FaultConfig::ExcitationShort { turns, .. } => {
                    *turns = parse_value(value, key, line)?
                }
                _ => return Err(misplaced()),
            },
            "fault.R_sc_ohm" => match block {
                FaultConfig::ExcitationShort { r_sc_ohm, .. } => {
                    *r_sc_ohm = parse_value(value, key, line)?
                }
                _ => return Err(misplaced()),
            },
            "fault.e_mm" => match block {
                FaultConfig::StaticEcc { e_mm, .. } => *e_mm = parse_value(value, key, line)?,
                _ => return Err(misplaced()),
            },
            "fault.theta_ecc_rad" => match block {
                FaultConfig::StaticEcc { theta_ecc_rad, .. } => {
                    *theta_ecc_rad = parse_value(value, key, line)?
                }
                _ => return Err(misplaced()),
            },
            "fault.e_d_mm" => match block {
                FaultConfig::DynamicEcc { e_d_mm } => *e_d_mm = parse_value(value, key, line)?,
                _ => return Err(misplaced()),
            },
            _ => return Err(ConfigError::UnknownKey { key: key.to_owned(), line }),
        }
        Ok(())
    }

    /// Writes the canonical text form with every default materialised.
    pub fn emit(&self) -> String {
        let mut out = String::new();
        let g = &self.geometry;
        out.push_str(&format!("scenario.id = {}\n", self.scenario_id));
        out.push_str(&format!("scenario.out_dir = {}\n\n", self.out_dir));
        match self.basis_kind {
            BasisKind::Synthetic => {
                out.push_str("basis.kind = synthetic\n");
                out.push_str(&format!("basis.K = {}\n\n", self.samples_per_rev));
                out.push_str(&format!("geometry.N = {}\n", g.slot_count));
                out.push_str(&format!(
                    "geometry.airgap_kind = {}\n",
                    basis_file::airgap_kind_name(g.airgap_kind)
                ));
                out.push_str(&format!("geometry.G_min_mm = {}\n", g.g_min_mm));
                out.push_str(&format!("geometry.G_max_mm = {}\n", g.g_max_mm));
                out.push_str(&format!("geometry.P = {}\n", g.pole_count));
                out.push_str(&format!("geometry.stack_length_mm = {}\n", g.stack_length_mm));
                out.push_str(&format!("geometry.D_s_mm = {}\n", g.stator_inner_diameter_mm));
                if let Some(d_r) = g.rotor_outer_diameter_mm {
                    out.push_str(&format!("geometry.D_r_mm = {d_r}\n"));
                }
                out.push_str(&format!(
                    "geometry.tooth_span_fraction = {}\n\n",
                    g.tooth_span_fraction
                ));
            }
            BasisKind::File => {
                out.push_str("basis.kind = file\n");
                out.push_str(&format!(
                    "basis.path = {}\n\n",
                    self.basis_path.as_deref().unwrap_or("")
                ));
            }
            BasisKind::Ideal => {
                out.push_str("basis.kind = ideal\n");
                out.push_str(&format!("basis.amplitude_H = {}\n", self.ideal_amplitude_h));
                out.push_str(&format!("basis.L_ee_H = {}\n", self.ideal_l_ee_h));
                out.push_str(&format!("basis.pole_pairs = {}\n\n", self.ideal_pole_pairs));
            }
        }
        out.push_str(&format!(
            "winding.kind = {}\n",
            match self.winding_kind {
                WindingKind::Overlapping => "overlapping",
                WindingKind::NonOverlapping => "non_overlapping",
            }
        ));
        out.push_str(&format!("winding.T_s = {}\n", self.signal_turns));
        out.push_str(&format!("winding.T_e = {}\n", self.excitation_turns));
        out.push_str(&format!("winding.P_w = {}\n", g.winding_pole_pairs));
        out.push_str(&format!("winding.R_e_ohm = {}\n\n", self.winding_resistance_ohm));
        out.push_str(&format!("source.v_m_V = {}\n", self.source.amplitude_volt));
        out.push_str(&format!("source.f_e_Hz = {}\n\n", self.source.frequency_hz));
        out.push_str(&format!("timebase.f_s_Hz = {}\n", self.timebase.sample_rate_hz));
        out.push_str(&format!("timebase.duration_s = {}\n", self.timebase.duration_s));
        out.push_str(&format!("timebase.omega_rad_s = {}\n", self.timebase.omega_rad_s));
        out.push_str(&format!("timebase.theta0_rad = {}\n\n", self.timebase.theta0_rad));
        out.push_str(&format!("fit.n_max = {}\n", self.fit_order_max));
        for fault in &self.faults {
            out.push('\n');
            match fault {
                FaultConfig::SignalShort { tooth, winding, turns } => {
                    out.push_str("fault.kind = signal_short\n");
                    out.push_str(&format!(
                        "fault.winding = {}\n",
                        match winding {
                            SignalWinding::Sine => "sine",
                            SignalWinding::Cosine => "cosine",
                        }
                    ));
                    out.push_str(&format!("fault.tooth = {tooth}\n"));
                    out.push_str(&format!("fault.turns = {turns}\n"));
                }
                FaultConfig::ExcitationShort { tooth, turns, r_sc_ohm } => {
                    out.push_str("fault.kind = excitation_short\n");
                    out.push_str(&format!("fault.tooth = {tooth}\n"));
                    out.push_str(&format!("fault.turns = {turns}\n"));
                    out.push_str(&format!("fault.R_sc_ohm = {r_sc_ohm}\n"));
                }
                FaultConfig::StaticEcc { e_mm, theta_ecc_rad } => {
                    out.push_str("fault.kind = static_ecc\n");
                    out.push_str(&format!("fault.e_mm = {e_mm}\n"));
                    out.push_str(&format!("fault.theta_ecc_rad = {theta_ecc_rad}\n"));
                }
                FaultConfig::DynamicEcc { e_d_mm } => {
                    out.push_str("fault.kind = dynamic_ecc\n");
                    out.push_str(&format!("fault.e_d_mm = {e_d_mm}\n"));
                }
            }
        }
        out
    }

    /// Converts the one-based configured faults to core fault specs.
    pub fn fault_specs(&self) -> Vec<FaultSpec> {
        self.faults
            .iter()
            .map(|f| match *f {
                FaultConfig::SignalShort { tooth, winding, turns } => FaultSpec::SignalShort {
                    tooth: tooth - 1,
                    winding,
                    shorted_turns: turns,
                },
                FaultConfig::ExcitationShort { tooth, turns, r_sc_ohm } => {
                    FaultSpec::ExcitationShort {
                        tooth: tooth - 1,
                        shorted_turns: turns,
                        short_resistance_ohm: r_sc_ohm,
                    }
                }
                FaultConfig::StaticEcc { e_mm, theta_ecc_rad } => FaultSpec::StaticEccentricity {
                    magnitude_mm: e_mm,
                    direction_rad: theta_ecc_rad,
                },
                FaultConfig::DynamicEcc { e_d_mm } => {
                    FaultSpec::DynamicEccentricity { magnitude_mm: e_d_mm }
                }
            })
            .collect()
    }

    /// Resolves the configuration into runnable scenario inputs.
    ///
    /// `config_dir` anchors a relative `basis.path`. Loading a basis file
    /// may produce integrity warnings, which are passed through.
    pub fn build(
        &self,
        config_dir: &Path,
        allow_low_sample_rate: bool,
    ) -> Result<BuiltScenario, BuildError> {
        let mut basis_warnings = Vec::new();
        let basis = match self.basis_kind {
            BasisKind::Synthetic => BasisMode::Synthetic {
                geometry: self.geometry.clone(),
                samples_per_rev: self.samples_per_rev,
            },
            BasisKind::File => {
                let raw = self.basis_path.as_deref().ok_or(BuildError::MissingBasisPath)?;
                let path = config_dir.join(raw);
                let (mut basis, warnings) = basis_file::load_basis(&path)
                    .map_err(|e| BuildError::BasisFile { path: path.clone(), source: e })?;
                // The winding block owns the signal layout, so its pole
                // pairs take precedence over what the file recorded.
                basis.geometry.winding_pole_pairs = self.geometry.winding_pole_pairs;
                basis_warnings = warnings;
                BasisMode::Provided(basis)
            }
            BasisKind::Ideal => BasisMode::Ideal {
                amplitude_h: self.ideal_amplitude_h,
                l_ee_h: self.ideal_l_ee_h,
                pole_pairs: self.ideal_pole_pairs,
            },
        };
        let winding = match self.winding_kind {
            WindingKind::Overlapping => WindingSpec::Overlapping {
                signal_turns: self.signal_turns,
                excitation_turns: self.excitation_turns,
            },
            WindingKind::NonOverlapping => WindingSpec::NonOverlappingPreset {
                signal_turns: self.signal_turns,
                excitation_turns: self.excitation_turns,
            },
        };
        Ok(BuiltScenario {
            inputs: ScenarioInputs {
                basis,
                winding,
                faults: self.fault_specs(),
                source: self.source,
                timebase: self.timebase,
                winding_resistance_ohm: self.winding_resistance_ohm,
                fit_order_max: self.fit_order_max,
                allow_low_sample_rate,
            },
            basis_warnings,
        })
    }
}

/// Whether a configuration key is consumed under the given basis kind.
fn key_is_read(key: &str, kind: BasisKind) -> bool {
    match key {
        _ if key.starts_with("geometry.") => kind == BasisKind::Synthetic,
        "basis.K" => kind == BasisKind::Synthetic,
        "basis.path" => kind == BasisKind::File,
        "basis.amplitude_H" | "basis.L_ee_H" | "basis.pole_pairs" => kind == BasisKind::Ideal,
        _ => true,
    }
}

/// A configuration resolved against the filesystem, ready to simulate.
#[derive(Debug, Clone, PartialEq)]
pub struct BuiltScenario {
    /// Inputs for [`resolver_core::simulate`].
    pub inputs: ScenarioInputs,
    /// Integrity warnings from a loaded basis file, if any.
    pub basis_warnings: Vec<BasisFileWarning>,
}

/// Failure to resolve a configuration into scenario inputs.
#[derive(Debug)]
pub enum BuildError {
    /// `basis.kind = file` without a `basis.path`.
    MissingBasisPath,
    /// The referenced basis file failed to load.
    BasisFile {
        /// Path that was tried.
        path: PathBuf,
        /// What went wrong.
        source: BasisFileError,
    },
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MissingBasisPath => {
                write!(f, "basis.kind = file requires a basis.path")
            }
            Self::BasisFile { path, source } => {
                write!(f, "loading basis file {}: {source}", path.display())
            }
        }
    }
}

impl std::error::Error for BuildError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Self::BasisFile { source, .. } => Some(source),
            _ => None,
        }
    }
}
