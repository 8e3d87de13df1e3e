// Validation guards are written `!(x > 0.0)` on purpose: unlike
// `x <= 0.0`, the negated form also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
//! Command-line front end for the resolver simulation engine.
//!
//! Subcommands: `gen-basis` precomputes inductance tables, `run`
//! simulates one scenario, `sweep` expands a parameter grid into a
//! labelled dataset, and `metrics` re-scores a previously written
//! waveform file.
//!
//! Exit codes: 0 on full success, 1 on any validation or IO error, 2
//! when a sweep completed but some of its cases failed (the manifest
//! records which).

use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use resolver_core::{
    demodulate, estimate_angle, generate_synthetic_basis, position_metrics, AngleAlignment,
    ExcitationSource, Timebase, WaveRecord,
};
use resolver_sim::basis_file;
use resolver_sim::config::ScenarioConfig;
use resolver_sim::emit;
use resolver_sim::runner;

#[derive(Parser)]
#[command(
    name = "resolver-sim",
    version,
    about = "Resolver fault simulation: scenarios, sweeps, and datasets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate synthetic inductance tables and save them to a file.
    GenBasis {
        /// Scenario configuration supplying the geometry block.
        #[arg(long)]
        config: PathBuf,
        /// Output directory (default: the configuration's out_dir).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Configuration override, repeatable.
        #[arg(long = "override", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// Run one scenario and write its waveform, profile, and metrics
    /// files.
    Run {
        /// Scenario configuration file.
        #[arg(long)]
        config: PathBuf,
        /// Output directory (default: the configuration's out_dir).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Configuration override, repeatable.
        #[arg(long = "override", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        /// Accept a sample rate below the recommended floor.
        #[arg(long = "allow-low-fs")]
        allow_low_fs: bool,
    },
    /// Expand a sweep file into many scenarios and write a manifest.
    Sweep {
        /// Sweep description file.
        #[arg(long)]
        config: PathBuf,
        /// Output directory (default: the base configuration's out_dir).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (default: available cores, capped at 8).
        #[arg(long)]
        workers: Option<usize>,
        /// Accept a sample rate below the recommended floor.
        #[arg(long = "allow-low-fs")]
        allow_low_fs: bool,
    },
    /// Recompute accuracy metrics from a waveform CSV.
    Metrics {
        /// Waveform CSV written by `run` or `sweep`.
        #[arg(long)]
        wave: PathBuf,
        /// Excitation carrier frequency the waveform was driven at.
        #[arg(long = "f-e-hz", default_value_t = 5000.0)]
        f_e_hz: f64,
        /// Electrical cycles per mechanical revolution of the decode.
        #[arg(long = "pole-pairs", default_value_t = 1)]
        pole_pairs: u32,
        /// Alignment sense, +1 or -1.
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        sense: f64,
        /// Alignment offset, radians.
        #[arg(long = "offset-rad", default_value_t = 0.0, allow_hyphen_values = true)]
        offset_rad: f64,
        /// Also write the metrics to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::GenBasis { config, out, overrides } => cmd_gen_basis(&config, out, &overrides),
        Command::Run { config, out, overrides, allow_low_fs } => {
            cmd_run(&config, out, &overrides, allow_low_fs)
        }
        Command::Sweep { config, out, workers, allow_low_fs } => {
            cmd_sweep(&config, out, workers, allow_low_fs)
        }
        Command::Metrics { wave, f_e_hz, pole_pairs, sense, offset_rad, out } => {
            cmd_metrics(&wave, f_e_hz, pole_pairs, sense, offset_rad, out)
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

/// Loads a scenario configuration and applies command-line overrides.
fn load_config(path: &Path, overrides: &[String]) -> Result<ScenarioConfig, Box<dyn Error>> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("reading {}: {e}", path.display()))?;
    let mut cfg = ScenarioConfig::parse(&text)?;
    for argument in overrides {
        cfg.apply_override(argument)?;
    }
    Ok(cfg)
}

/// The directory a configuration file's relative paths resolve against.
fn dir_of(path: &Path) -> PathBuf {
    match path.parent() {
        Some(parent) if parent != Path::new("") => parent.to_owned(),
        _ => PathBuf::from("."),
    }
}

fn cmd_gen_basis(
    config: &Path,
    out: Option<PathBuf>,
    overrides: &[String],
) -> Result<ExitCode, Box<dyn Error>> {
    let cfg = load_config(config, overrides)?;
    let basis = generate_synthetic_basis(&cfg.geometry, cfg.samples_per_rev)?;
    let out_dir = out.unwrap_or_else(|| PathBuf::from(&cfg.out_dir));
    fs::create_dir_all(&out_dir)?;
    let path = out_dir.join(format!("{}_basis.txt", cfg.scenario_id));
    basis_file::save_basis(&basis, &path)?;
    println!("basis = {}", path.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_run(
    config: &Path,
    out: Option<PathBuf>,
    overrides: &[String],
    allow_low_fs: bool,
) -> Result<ExitCode, Box<dyn Error>> {
    let cfg = load_config(config, overrides)?;
    let out_dir = out.unwrap_or_else(|| PathBuf::from(&cfg.out_dir));
    let artifacts = runner::run_scenario(&cfg, &dir_of(config), &out_dir, allow_low_fs)?;
    for warning in &artifacts.basis_warnings {
        eprintln!("warning: {warning}");
    }
    for warning in &artifacts.outputs.timebase_warnings {
        eprintln!("warning: {warning}");
    }
    println!("wave_csv = {}", artifacts.wave_csv.display());
    println!("profile_csv = {}", artifacts.profile_csv.display());
    println!("metrics_txt = {}", artifacts.metrics_txt.display());
    print!("{}", emit::metrics_text(&artifacts.scenario_id, &artifacts.outputs));
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(
    config: &Path,
    out: Option<PathBuf>,
    workers: Option<usize>,
    allow_low_fs: bool,
) -> Result<ExitCode, Box<dyn Error>> {
    let text = fs::read_to_string(config)
        .map_err(|e| format!("reading {}: {e}", config.display()))?;
    let spec = runner::parse_sweep(&text, &dir_of(config))?;
    let out_dir = out.unwrap_or_else(|| PathBuf::from(&spec.base.out_dir));
    let workers = workers.unwrap_or_else(|| {
        std::thread::available_parallelism().map_or(1, usize::from).min(8)
    });
    let summary = runner::run_sweep(&spec, &out_dir, allow_low_fs, workers)?;
    println!("manifest = {}", summary.manifest_path.display());
    println!("cases = {}", summary.cases);
    println!("failed = {}", summary.failed);
    if summary.failed > 0 {
        eprintln!(
            "warning: {} of {} cases failed; see the manifest's error column",
            summary.failed, summary.cases
        );
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

/// Reads a waveform CSV back into a record, inferring the sample rate
/// from the time column.
fn read_wave_csv(path: &Path, f_e_hz: f64) -> Result<WaveRecord, Box<dyn Error>> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("reading {}: {e}", path.display()))?;
    let mut lines = text.lines();
    let header = lines.next().ok_or("wave CSV is empty")?;
    if header != "t_s,theta_ref_rad,i_e_A,v_e_V,v_s_V,v_c_V" {
        return Err(format!("unexpected wave CSV header `{header}`").into());
    }
    let mut columns: [Vec<f64>; 6] = Default::default();
    for (idx, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(format!("wave CSV line {}: expected 6 fields", idx + 2).into());
        }
        for (col, field) in columns.iter_mut().zip(&fields) {
            let value: f64 = field
                .parse()
                .map_err(|_| format!("wave CSV line {}: malformed number", idx + 2))?;
            col.push(value);
        }
    }
    let n = columns[0].len();
    if n < 2 {
        return Err("wave CSV needs at least two samples".into());
    }
    let t_last = columns[0][n - 1];
    if !(t_last > 0.0) {
        return Err("wave CSV time column does not advance".into());
    }
    let sample_rate_hz = (n - 1) as f64 / t_last;
    // Only the rate and carrier matter for the settling window.
    let timebase = Timebase {
        sample_rate_hz,
        duration_s: t_last,
        omega_rad_s: 0.0,
        theta0_rad: 0.0,
    };
    let source = ExcitationSource { amplitude_volt: 1.0, frequency_hz: f_e_hz };
    let [_, theta_ref_rad, i_e_amp, v_e_volt, v_s_volt, v_c_volt] = columns;
    Ok(WaveRecord {
        sample_rate_hz,
        theta_ref_rad,
        i_e_amp,
        v_e_volt,
        v_s_volt,
        v_c_volt,
        transient_end: timebase.transient_end(&source),
    })
}

fn cmd_metrics(
    wave_path: &Path,
    f_e_hz: f64,
    pole_pairs: u32,
    sense: f64,
    offset_rad: f64,
    out: Option<PathBuf>,
) -> Result<ExitCode, Box<dyn Error>> {
    let wave = read_wave_csv(wave_path, f_e_hz)?;
    let source = ExcitationSource { amplitude_volt: 1.0, frequency_hz: f_e_hz };
    let envelopes = demodulate(&wave, &source)?;
    let alignment = AngleAlignment { sense, offset_rad };
    let estimate = estimate_angle(&envelopes, &wave.theta_ref_rad, pole_pairs, &alignment);
    let metrics = position_metrics(&estimate.error_deg, &estimate.metrics_mask());
    let mut text = String::new();
    text.push_str(&format!("wave_csv = {}\n", wave_path.display()));
    text.push_str(&format!("sample_rate_hz = {}\n", wave.sample_rate_hz));
    text.push_str(&format!("aape_deg = {}\n", metrics.aape_deg));
    text.push_str(&format!("mpe_deg = {}\n", metrics.mpe_deg));
    text.push_str(&format!("n_samples = {}\n", metrics.n_samples));
    text.push_str(&format!("n_excluded = {}\n", metrics.n_excluded));
    print!("{text}");
    if let Some(out_path) = out {
        fs::write(&out_path, &text)?;
    }
    Ok(ExitCode::SUCCESS)
}
