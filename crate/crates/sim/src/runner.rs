//! Scenario execution and dataset sweeps.
//!
//! [`run_scenario`] resolves one configuration, simulates it, and writes
//! its three output files. [`run_sweep`] expands a cross-product of
//! configuration overrides into many scenarios, runs them on a small
//! worker pool, and writes a manifest that doubles as the dataset's
//! label file.
//!
//! Sweeps are deterministic by construction: case order is the
//! cross-product order (first axis varies slowest), scenario ids are
//! derived from the case index, artifact paths in the manifest are
//! relative to the manifest itself, and the manifest is written once,
//! in case order, after all workers finish. Rerunning a sweep therefore
//! reproduces every byte, regardless of worker count.

use std::fmt;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use resolver_core::{simulate, PositionMetrics, ScenarioError, ScenarioOutputs};

use crate::basis_file::BasisFileWarning;
use crate::config::{BuildError, ScenarioConfig};
use crate::emit;

/// What one scenario run produced on disk.
#[derive(Debug)]
pub struct RunArtifacts {
    /// The scenario's name.
    pub scenario_id: String,
    /// Electrical traces CSV.
    pub wave_csv: PathBuf,
    /// Inductance profiles CSV.
    pub profile_csv: PathBuf,
    /// Metrics summary text file.
    pub metrics_txt: PathBuf,
    /// The full in-memory outputs, for callers that keep computing.
    pub outputs: ScenarioOutputs,
    /// Integrity warnings from a loaded basis file.
    pub basis_warnings: Vec<BasisFileWarning>,
}

/// Failure of a single scenario run.
#[derive(Debug)]
pub enum RunError {
    /// The configuration could not be resolved against the filesystem.
    Build(BuildError),
    /// The simulation itself refused the inputs.
    Scenario(ScenarioError),
    /// Writing an output file failed.
    Io(io::Error),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Build(e) => write!(f, "{e}"),
            Self::Scenario(e) => write!(f, "{e}"),
            Self::Io(e) => write!(f, "writing outputs: {e}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<BuildError> for RunError {
    fn from(e: BuildError) -> Self {
        Self::Build(e)
    }
}

impl From<ScenarioError> for RunError {
    fn from(e: ScenarioError) -> Self {
        Self::Scenario(e)
    }
}

impl From<io::Error> for RunError {
    fn from(e: io::Error) -> Self {
        Self::Io(e)
    }
}

/// Runs one scenario and writes `<id>_wave.csv`, `<id>_profiles.csv`,
/// and `<id>_metrics.txt` into `out_dir`.
///
/// All validation happens before any file is touched; a refused
/// configuration leaves the output directory untouched. `config_dir`
/// anchors a relative `basis.path`.
pub fn run_scenario(
    config: &ScenarioConfig,
    config_dir: &Path,
    out_dir: &Path,
    allow_low_sample_rate: bool,
) -> Result<RunArtifacts, RunError> {
    let built = config.build(config_dir, allow_low_sample_rate)?;
    let outputs = simulate(&built.inputs)?;
    fs::create_dir_all(out_dir)?;
    let id = &config.scenario_id;
    let wave_csv = out_dir.join(format!("{id}_wave.csv"));
    let profile_csv = out_dir.join(format!("{id}_profiles.csv"));
    let metrics_txt = out_dir.join(format!("{id}_metrics.txt"));
    emit::write_wave_csv(&wave_csv, &outputs.wave)?;
    emit::write_profile_csv(&profile_csv, &outputs.profiles)?;
    fs::write(&metrics_txt, emit::metrics_text(id, &outputs))?;
    Ok(RunArtifacts {
        scenario_id: id.clone(),
        wave_csv,
        profile_csv,
        metrics_txt,
        outputs,
        basis_warnings: built.basis_warnings,
    })
}

/// Default ceiling on the number of scenarios one sweep may expand to.
pub const DEFAULT_SWEEP_CAP: usize = 10_000;

/// A parsed sweep: a base configuration plus override axes.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    /// Configuration every case starts from.
    pub base: ScenarioConfig,
    /// Directory relative basis paths resolve against.
    pub base_dir: PathBuf,
    /// Refuse to expand beyond this many cases.
    pub cap: usize,
    /// Reserved for future randomised axes; recorded, not yet used.
    pub seed: u64,
    /// Override axes in file order: key and the values it steps through.
    pub axes: Vec<(String, Vec<String>)>,
}

/// Sweep file or expansion failure.
#[derive(Debug)]
pub enum SweepError {
    /// Reading a file failed.
    Io(io::Error),
    /// A non-comment line has no `=`.
    Syntax {
        /// 1-based line number.
        line: usize,
    },
    /// The key is not `sweep.base`, `sweep.cap`, `sweep.seed`, or
    /// `axis.*`.
    UnknownKey {
        /// The unrecognised key.
        key: String,
        /// 1-based line number.
        line: usize,
    },
    /// The value does not parse.
    BadValue {
        /// The key whose value is malformed.
        key: String,
        /// 1-based line number.
        line: usize,
    },
    /// A key was given twice.
    DuplicateKey {
        /// The repeated key.
        key: String,
        /// 1-based line number of the second assignment.
        line: usize,
    },
    /// An axis was declared with no values.
    EmptyAxis {
        /// The axis key.
        key: String,
        /// 1-based line number.
        line: usize,
    },
    /// The base configuration file failed to load or parse.
    BaseConfig {
        /// Path that was tried.
        path: PathBuf,
        /// What went wrong.
        message: String,
    },
    /// An axis value was rejected when test-applied to the base.
    BadAxisValue {
        /// The axis key.
        key: String,
        /// The offending value.
        value: String,
        /// The configuration error it produced.
        message: String,
    },
    /// The cross product exceeds the cap.
    TooManyCases {
        /// Expanded case count.
        count: usize,
        /// Configured ceiling.
        cap: usize,
    },
}

impl fmt::Display for SweepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Io(e) => write!(f, "{e}"),
            Self::Syntax { line } => write!(f, "sweep line {line}: expected `key = value`"),
            Self::UnknownKey { key, line } => {
                write!(f, "sweep line {line}: unknown key `{key}`")
            }
            Self::BadValue { key, line } => {
                write!(f, "sweep line {line}: malformed value for `{key}`")
            }
            Self::DuplicateKey { key, line } => {
                write!(f, "sweep line {line}: `{key}` was already set")
            }
            Self::EmptyAxis { key, line } => {
                write!(f, "sweep line {line}: axis `{key}` has no values")
            }
            Self::BaseConfig { path, message } => {
                write!(f, "base configuration {}: {message}", path.display())
            }
            Self::BadAxisValue { key, value, message } => {
                write!(f, "axis `{key}` value `{value}`: {message}")
            }
            Self::TooManyCases { count, cap } => write!(
                f,
                "sweep expands to {count} cases, above the cap of {cap}; raise sweep.cap \
                 if this is intended"
            ),
        }
    }
}

impl std::error::Error for SweepError {}

impl From<io::Error> for SweepError {
    fn from(e: io::Error) -> Self {
        Self::Io(e)
    }
}

/// Parses a sweep file's text.
///
/// Keys: `sweep.base` (path to a scenario configuration, relative to
/// `sweep_dir`; defaults apply when omitted), `sweep.cap`, `sweep.seed`,
/// and any number of `axis.<configuration key>` lines whose values list
/// the steps separated by `|`. Axis order in the file is the nesting
/// order of the expansion, first axis slowest.
pub fn parse_sweep(text: &str, sweep_dir: &Path) -> Result<SweepSpec, SweepError> {
    let mut base: Option<(PathBuf, ScenarioConfig)> = None;
    let mut cap = DEFAULT_SWEEP_CAP;
    let mut seed = 0u64;
    let mut axes: Vec<(String, Vec<String>)> = Vec::new();
    let mut seen: Vec<String> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = match line.split_once('=') {
            Some((k, v)) => (k.trim(), v.trim()),
            None => return Err(SweepError::Syntax { line: line_no }),
        };
        if seen.iter().any(|s| s == key) {
            return Err(SweepError::DuplicateKey { key: key.to_owned(), line: line_no });
        }
        seen.push(key.to_owned());
        match key {
            "sweep.base" => {
                let path = sweep_dir.join(value);
                let text = fs::read_to_string(&path).map_err(|e| SweepError::BaseConfig {
                    path: path.clone(),
                    message: e.to_string(),
                })?;
                let cfg = ScenarioConfig::parse(&text).map_err(|e| SweepError::BaseConfig {
                    path: path.clone(),
                    message: e.to_string(),
                })?;
                base = Some((path, cfg));
            }
            "sweep.cap" => {
                cap = value
                    .parse()
                    .map_err(|_| SweepError::BadValue { key: key.to_owned(), line: line_no })?;
            }
            "sweep.seed" => {
                seed = value
                    .parse()
                    .map_err(|_| SweepError::BadValue { key: key.to_owned(), line: line_no })?;
            }
            _ => match key.strip_prefix("axis.") {
                Some(axis_key) => {
                    let values: Vec<String> = value
                        .split('|')
                        .map(|v| v.trim().to_owned())
                        .filter(|v| !v.is_empty())
                        .collect();
                    if values.is_empty() {
                        return Err(SweepError::EmptyAxis {
                            key: axis_key.to_owned(),
                            line: line_no,
                        });
                    }
                    axes.push((axis_key.to_owned(), values));
                }
                None => {
                    return Err(SweepError::UnknownKey {
                        key: key.to_owned(),
                        line: line_no,
                    })
                }
            },
        }
    }
    let (base_dir, base) = match base {
        Some((path, cfg)) => {
            (path.parent().map_or_else(|| sweep_dir.to_owned(), Path::to_owned), cfg)
        }
        None => (sweep_dir.to_owned(), ScenarioConfig::default()),
    };
    // Test-apply every axis value so bad keys surface before any case
    // runs. The probe accumulates, which keeps appended fault blocks
    // available to their follow-up keys.
    let mut probe = base.clone();
    for (key, values) in &axes {
        for value in values {
            probe.apply_override(&format!("{key}={value}")).map_err(|e| {
                SweepError::BadAxisValue {
                    key: key.clone(),
                    value: value.clone(),
                    message: e.to_string(),
                }
            })?;
        }
    }
    Ok(SweepSpec { base, base_dir, cap, seed, axes })
}

/// One manifest row.
#[derive(Debug)]
struct SweepRow {
    scenario_id: String,
    axis_values: Vec<String>,
    label: String,
    metrics: Option<PositionMetrics>,
    error: Option<String>,
}

/// What a sweep produced.
#[derive(Debug)]
pub struct SweepSummary {
    /// Number of cases expanded.
    pub cases: usize,
    /// Number of cases that failed (their rows carry the error text).
    pub failed: usize,
    /// Where the manifest was written.
    pub manifest_path: PathBuf,
}

/// Expands and runs a sweep, writing all artifacts and `manifest.csv`
/// into `out_dir`.
///
/// A failing case does not stop the sweep: its manifest row carries the
/// error text and empty metrics, and every other case still runs.
pub fn run_sweep(
    spec: &SweepSpec,
    out_dir: &Path,
    allow_low_sample_rate: bool,
    workers: usize,
) -> Result<SweepSummary, SweepError> {
    let lens: Vec<usize> = spec.axes.iter().map(|(_, v)| v.len()).collect();
    // An empty product is one: no axes still means one (base) case.
    let cases: usize = lens.iter().product();
    if cases > spec.cap {
        return Err(SweepError::TooManyCases { count: cases, cap: spec.cap });
    }
    fs::create_dir_all(out_dir)?;

    // Case index -> per-axis value index, first axis varying slowest.
    let strides: Vec<usize> = (0..lens.len())
        .map(|a| lens[a + 1..].iter().product())
        .collect();
    let pick = |case: usize, axis: usize| (case / strides[axis]) % lens[axis];

    let next = AtomicUsize::new(0);
    let rows: Mutex<Vec<Option<SweepRow>>> = Mutex::new((0..cases).map(|_| None).collect());
    let worker_count = workers.max(1).min(cases.max(1));
    std::thread::scope(|scope| {
        for _ in 0..worker_count {
            scope.spawn(|| loop {
                let case = next.fetch_add(1, Ordering::Relaxed);
                if case >= cases {
                    break;
                }
                let row = run_case(spec, case, &pick, out_dir, allow_low_sample_rate);
                rows.lock().unwrap()[case] = Some(row);
            });
        }
    });
    let rows = rows.into_inner().unwrap();

    let manifest_path = out_dir.join("manifest.csv");
    let mut out = BufWriter::new(fs::File::create(&manifest_path)?);
    let mut header = vec!["scenario_id".to_owned()];
    header.extend(spec.axes.iter().map(|(k, _)| k.clone()));
    header.extend(
        ["faults", "aape_deg", "mpe_deg", "n_samples", "n_excluded", "wave_csv",
         "profile_csv", "metrics_txt", "error"]
            .map(str::to_owned),
    );
    writeln!(out, "{}", header.iter().map(|h| emit::csv_field(h)).collect::<Vec<_>>().join(","))?;
    let mut failed = 0usize;
    for row in rows.iter().flatten() {
        let mut fields = vec![row.scenario_id.clone()];
        fields.extend(row.axis_values.iter().cloned());
        fields.push(row.label.clone());
        match (&row.metrics, &row.error) {
            (Some(m), None) => {
                fields.push(m.aape_deg.to_string());
                fields.push(m.mpe_deg.to_string());
                fields.push(m.n_samples.to_string());
                fields.push(m.n_excluded.to_string());
                fields.push(format!("{}_wave.csv", row.scenario_id));
                fields.push(format!("{}_profiles.csv", row.scenario_id));
                fields.push(format!("{}_metrics.txt", row.scenario_id));
                fields.push(String::new());
            }
            (_, Some(message)) => {
                failed += 1;
                fields.extend(std::iter::repeat_n(String::new(), 7));
                fields.push(message.clone());
            }
            _ => unreachable!("every case writes a row"),
        }
        writeln!(
            out,
            "{}",
            fields.iter().map(|f| emit::csv_field(f)).collect::<Vec<_>>().join(",")
        )?;
    }
    out.flush()?;
    Ok(SweepSummary { cases, failed, manifest_path })
}

/// Builds and runs one sweep case; never panics on scenario failure.
fn run_case(
    spec: &SweepSpec,
    case: usize,
    pick: &dyn Fn(usize, usize) -> usize,
    out_dir: &Path,
    allow_low_sample_rate: bool,
) -> SweepRow {
    let mut config = spec.base.clone();
    let mut axis_values = Vec::with_capacity(spec.axes.len());
    let mut apply_error = None;
    for (axis, (key, values)) in spec.axes.iter().enumerate() {
        let value = &values[pick(case, axis)];
        axis_values.push(value.clone());
        if apply_error.is_none() {
            if let Err(e) = config.apply_override(&format!("{key}={value}")) {
                apply_error = Some(e.to_string());
            }
        }
    }
    config.scenario_id = format!("{}_case{case:04}", spec.base.scenario_id);
    if let Some(message) = apply_error {
        return SweepRow {
            scenario_id: config.scenario_id,
            axis_values,
            label: String::new(),
            metrics: None,
            error: Some(message),
        };
    }
    match run_scenario(&config, &spec.base_dir, out_dir, allow_low_sample_rate) {
        Ok(artifacts) => SweepRow {
            scenario_id: artifacts.scenario_id,
            axis_values,
            label: emit::run_label(&artifacts.outputs.effective_faults),
            metrics: Some(artifacts.outputs.metrics),
            error: None,
        },
        Err(e) => SweepRow {
            scenario_id: config.scenario_id,
            axis_values,
            label: String::new(),
            metrics: None,
            error: Some(e.to_string()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// A parked-rotor ideal-basis configuration that simulates in
    /// milliseconds.
    fn quick_ideal() -> ScenarioConfig {
        let text = "\
basis.kind = ideal
timebase.duration_s = 0.0015
timebase.omega_rad_s = 0
timebase.theta0_rad = 0.4
";
        ScenarioConfig::parse(text).unwrap()
    }

    #[test]
    fn test_run_scenario_writes_three_files() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("out");
        let mut config = quick_ideal();
        config.scenario_id = "quick".to_owned();
        let artifacts = run_scenario(&config, dir.path(), &out, false).unwrap();
        assert!(artifacts.wave_csv.ends_with("quick_wave.csv"));
        assert!(artifacts.wave_csv.exists());
        assert!(artifacts.profile_csv.exists());
        assert!(artifacts.metrics_txt.exists());
        let metrics = fs::read_to_string(&artifacts.metrics_txt).unwrap();
        assert!(metrics.contains("scenario_id = quick\n"));
        assert!(metrics.contains("faults = healthy\n"));
        assert!(metrics.contains("aape_deg = "));
        let wave = fs::read_to_string(&artifacts.wave_csv).unwrap();
        assert_eq!(
            wave.lines().next().unwrap(),
            "t_s,theta_ref_rad,i_e_A,v_e_V,v_s_V,v_c_V"
        );
        assert_eq!(
            wave.lines().count() - 1,
            artifacts.outputs.wave.sample_count()
        );
    }

    #[test]
    fn test_refused_config_writes_nothing() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("out");
        let mut config = quick_ideal();
        config.timebase.duration_s = 0.0;
        let err = run_scenario(&config, dir.path(), &out, false).unwrap_err();
        assert!(matches!(err, RunError::Scenario(_)));
        assert!(!out.exists(), "a refused run must not create outputs");
    }

    #[test]
    fn test_sweep_cross_product_order_and_manifest() {
        let dir = tempfile::tempdir().unwrap();
        let sweep_text = "\
axis.source.v_m_V = 5 | 4
axis.timebase.theta0_rad = 0.1 | 0.2 | 0.3
";
        let mut spec = parse_sweep(sweep_text, dir.path()).unwrap();
        spec.base = quick_ideal();
        let out = dir.path().join("sweep");
        let summary = run_sweep(&spec, &out, false, 2).unwrap();
        assert_eq!(summary.cases, 6);
        assert_eq!(summary.failed, 0);
        let manifest = fs::read_to_string(&summary.manifest_path).unwrap();
        let lines: Vec<_> = manifest.lines().collect();
        assert_eq!(lines.len(), 7);
        assert_eq!(
            lines[0],
            "scenario_id,source.v_m_V,timebase.theta0_rad,faults,aape_deg,mpe_deg,\
             n_samples,n_excluded,wave_csv,profile_csv,metrics_txt,error"
        );
        // First axis varies slowest: v=5 rows come first, theta cycling.
        assert!(lines[1].starts_with("scenario_case0000,5,0.1,healthy,"));
        assert!(lines[3].starts_with("scenario_case0002,5,0.3,healthy,"));
        assert!(lines[4].starts_with("scenario_case0003,4,0.1,healthy,"));
        // Artifact paths are relative to the manifest's directory.
        assert!(lines[1].contains(",scenario_case0000_wave.csv,"));
        assert!(out.join("scenario_case0005_metrics.txt").exists());
    }

    #[test]
    fn test_sweep_is_byte_identical_across_worker_counts() {
        let sweep_text = "axis.timebase.theta0_rad = 0.1 | 0.2 | 0.3 | 0.4\n";
        let mut read_back = Vec::new();
        for workers in [1, 3] {
            let dir = tempfile::tempdir().unwrap();
            let mut spec = parse_sweep(sweep_text, dir.path()).unwrap();
            spec.base = quick_ideal();
            let out = dir.path().join("sweep");
            run_sweep(&spec, &out, false, workers).unwrap();
            let mut bundle = fs::read(out.join("manifest.csv")).unwrap();
            for case in 0..4 {
                bundle.extend(
                    fs::read(out.join(format!("scenario_case{case:04}_wave.csv"))).unwrap(),
                );
            }
            read_back.push(bundle);
        }
        assert_eq!(read_back[0], read_back[1]);
    }

    #[test]
    fn test_sweep_row_failure_is_contained() {
        let dir = tempfile::tempdir().unwrap();
        // 0.5 mm exceeds what the narrowest gap can absorb, so that
        // case must fail while its neighbours succeed.
        let sweep_text = "axis.fault.e_mm = 0.01 | 0.5\n";
        let base_text = "\
basis.K = 100
fit.n_max = 49
timebase.duration_s = 0.0015
timebase.omega_rad_s = 0
fault.kind = static_ecc
";
        fs::write(dir.path().join("base.cfg"), base_text).unwrap();
        let full = format!("sweep.base = base.cfg\n{sweep_text}");
        let spec = parse_sweep(&full, dir.path()).unwrap();
        let out = dir.path().join("sweep");
        let summary = run_sweep(&spec, &out, false, 2).unwrap();
        assert_eq!(summary.cases, 2);
        assert_eq!(summary.failed, 1);
        let manifest = fs::read_to_string(&summary.manifest_path).unwrap();
        let lines: Vec<_> = manifest.lines().collect();
        assert!(lines[1].contains("static_ecc"));
        assert!(lines[1].ends_with(','), "healthy row has empty error field");
        assert!(lines[2].contains("eccentricity"), "failing row names the cause");
        assert!(!out.join("scenario_case0001_wave.csv").exists());
    }

    #[test]
    fn test_sweep_parse_errors() {
        let dir = Path::new(".");
        assert!(matches!(
            parse_sweep("axis.fault.e_mm =\n", dir),
            Err(SweepError::EmptyAxis { .. })
        ));
        assert!(matches!(
            parse_sweep("unknown.key = 3\n", dir),
            Err(SweepError::UnknownKey { .. })
        ));
        assert!(matches!(
            parse_sweep("axis.winding.T_s = seventy\n", dir),
            Err(SweepError::BadAxisValue { .. })
        ));
        assert!(matches!(
            parse_sweep("sweep.cap = -1\n", dir),
            Err(SweepError::BadValue { .. })
        ));
        assert!(matches!(
            parse_sweep("sweep.base = nowhere.cfg\n", dir),
            Err(SweepError::BaseConfig { .. })
        ));
        let spec =
            parse_sweep("sweep.cap = 3\naxis.timebase.theta0_rad = 1 | 2 | 3 | 4\n", dir)
                .unwrap();
        assert!(matches!(
            run_sweep(&spec, Path::new("/nonexistent-never-created"), false, 1),
            Err(SweepError::TooManyCases { count: 4, cap: 3 })
        ));
    }

    #[test]
    fn test_empty_axes_run_exactly_one_case() {
        let dir = tempfile::tempdir().unwrap();
        let mut spec = parse_sweep("", dir.path()).unwrap();
        spec.base = quick_ideal();
        let out = dir.path().join("sweep");
        let summary = run_sweep(&spec, &out, false, 4).unwrap();
        assert_eq!(summary.cases, 1);
        assert_eq!(summary.failed, 0);
        let manifest = fs::read_to_string(&summary.manifest_path).unwrap();
        assert_eq!(manifest.lines().count(), 2);
        assert!(out.join("scenario_case0000_wave.csv").exists());
    }
}
