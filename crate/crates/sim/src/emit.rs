//! Writers for the per-scenario output files.
//!
//! Every writer is deterministic: the same simulation outputs produce the
//! same bytes, which is what makes rerun datasets diffable. Waveform and
//! profile samples use 15-significant-digit scientific notation so the
//! files round-trip through standard float parsing; scalar summaries use
//! Rust's shortest round-tripping float form.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use resolver_core::scenario::ProfileTrace;
use resolver_core::{FaultSpec, ScenarioOutputs, SignalWinding, WaveRecord};

/// Dataset label for a fault kind.
pub fn fault_label(fault: &FaultSpec) -> &'static str {
    match fault {
        FaultSpec::SignalShort { .. } => "signal_short",
        FaultSpec::ExcitationShort { .. } => "excitation_short",
        FaultSpec::StaticEccentricity { .. } => "static_ecc",
        FaultSpec::DynamicEccentricity { .. } => "dynamic_ecc",
    }
}

/// Combined label for a run: fault labels joined with `+`, or `healthy`.
pub fn run_label(faults: &[FaultSpec]) -> String {
    if faults.is_empty() {
        "healthy".to_owned()
    } else {
        faults.iter().map(fault_label).collect::<Vec<_>>().join("+")
    }
}

/// One-line description of a fault with its parameters (teeth 1-based,
/// as in configs).
fn fault_detail(fault: &FaultSpec) -> String {
    match *fault {
        FaultSpec::SignalShort { tooth, winding, shorted_turns } => format!(
            "signal_short tooth={} winding={} turns={}",
            tooth + 1,
            match winding {
                SignalWinding::Sine => "sine",
                SignalWinding::Cosine => "cosine",
            },
            shorted_turns
        ),
        FaultSpec::ExcitationShort { tooth, shorted_turns, short_resistance_ohm } => format!(
            "excitation_short tooth={} turns={} R_sc_ohm={}",
            tooth + 1,
            shorted_turns,
            short_resistance_ohm
        ),
        FaultSpec::StaticEccentricity { magnitude_mm, direction_rad } => {
            format!("static_ecc e_mm={magnitude_mm} theta_ecc_rad={direction_rad}")
        }
        FaultSpec::DynamicEccentricity { magnitude_mm } => {
            format!("dynamic_ecc e_d_mm={magnitude_mm}")
        }
    }
}

/// Writes the electrical traces as CSV.
///
/// Columns: `t_s,theta_ref_rad,i_e_A,v_e_V,v_s_V,v_c_V`, one row per
/// sample, time reconstructed from the record's sample rate.
pub fn write_wave_csv(path: &Path, wave: &WaveRecord) -> io::Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "t_s,theta_ref_rad,i_e_A,v_e_V,v_s_V,v_c_V")?;
    for k in 0..wave.sample_count() {
        let t = k as f64 / wave.sample_rate_hz;
        writeln!(
            out,
            "{:.14e},{:.14e},{:.14e},{:.14e},{:.14e},{:.14e}",
            t,
            wave.theta_ref_rad[k],
            wave.i_e_amp[k],
            wave.v_e_volt[k],
            wave.v_s_volt[k],
            wave.v_c_volt[k]
        )?;
    }
    out.flush()
}

/// Writes the three inductance profiles as CSV.
///
/// Columns: `theta_rad,l_se_H,l_ce_H,l_ee_H`, one row per grid angle.
pub fn write_profile_csv(path: &Path, profiles: &ProfileTrace) -> io::Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "theta_rad,l_se_H,l_ce_H,l_ee_H")?;
    for k in 0..profiles.angle_grid.len() {
        writeln!(
            out,
            "{:.14e},{:.14e},{:.14e},{:.14e}",
            profiles.angle_grid[k],
            profiles.l_se_h[k],
            profiles.l_ce_h[k],
            profiles.l_ee_h[k]
        )?;
    }
    out.flush()
}

/// Renders the run summary as `key = value` text.
///
/// Carries the scenario name, the ground-truth fault labels (with one
/// detail line per effective fault), the accuracy metrics, and the
/// commissioned alignment.
pub fn metrics_text(scenario_id: &str, outputs: &ScenarioOutputs) -> String {
    let mut text = String::new();
    text.push_str(&format!("scenario_id = {scenario_id}\n"));
    text.push_str(&format!("faults = {}\n", run_label(&outputs.effective_faults)));
    for (i, fault) in outputs.effective_faults.iter().enumerate() {
        text.push_str(&format!("fault.{} = {}\n", i + 1, fault_detail(fault)));
    }
    let m = &outputs.metrics;
    text.push_str(&format!("aape_deg = {}\n", m.aape_deg));
    text.push_str(&format!("mpe_deg = {}\n", m.mpe_deg));
    text.push_str(&format!("n_samples = {}\n", m.n_samples));
    text.push_str(&format!("n_excluded = {}\n", m.n_excluded));
    text.push_str(&format!("alignment_sense = {}\n", outputs.alignment.sense));
    text.push_str(&format!("alignment_offset_rad = {}\n", outputs.alignment.offset_rad));
    text.push_str(&format!(
        "profiles_time_varying = {}\n",
        outputs.profiles.time_varying
    ));
    text
}

/// Quotes a manifest CSV field when it contains a delimiter, quote, or
/// newline; otherwise returns it untouched.
pub fn csv_field(value: &str) -> String {
    if value.contains(',') || value.contains('"') || value.contains('\n') {
        format!("\"{}\"", value.replace('"', "\"\""))
    } else {
        value.to_owned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_fault_labels_cover_all_kinds() {
        let faults = [
            FaultSpec::SignalShort {
                tooth: 8,
                winding: SignalWinding::Sine,
                shorted_turns: 21.0,
            },
            FaultSpec::ExcitationShort {
                tooth: 0,
                shorted_turns: 5.0,
                short_resistance_ohm: 0.2,
            },
            FaultSpec::StaticEccentricity { magnitude_mm: 0.1, direction_rad: 0.0 },
            FaultSpec::DynamicEccentricity { magnitude_mm: 0.1 },
        ];
        let labels: Vec<_> = faults.iter().map(fault_label).collect();
        assert_eq!(
            labels,
            ["signal_short", "excitation_short", "static_ecc", "dynamic_ecc"]
        );
        assert_eq!(run_label(&[]), "healthy");
        assert_eq!(run_label(&faults[..2]), "signal_short+excitation_short");
        // Detail lines show the tooth as configured, one-based.
        assert_eq!(
            fault_detail(&faults[0]),
            "signal_short tooth=9 winding=sine turns=21"
        );
    }

    #[test]
    fn test_csv_field_quotes_only_when_needed() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
        assert_eq!(csv_field(""), "");
    }

    #[test]
    fn test_wave_csv_shape() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("wave.csv");
        let wave = WaveRecord {
            sample_rate_hz: 2.0,
            theta_ref_rad: vec![0.0, 0.1, 0.2],
            i_e_amp: vec![0.0, 1.0, 2.0],
            v_e_volt: vec![5.0, 4.0, 3.0],
            v_s_volt: vec![0.0, 0.5, 1.0],
            v_c_volt: vec![1.0, 0.5, 0.0],
            transient_end: 1,
        };
        write_wave_csv(&path, &wave).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "t_s,theta_ref_rad,i_e_A,v_e_V,v_s_V,v_c_V");
        let second: Vec<f64> =
            lines[2].split(',').map(|f| f.parse().unwrap()).collect();
        assert_eq!(second[0], 0.5); // k = 1 at 2 Hz
        assert_eq!(second[3], 4.0);
    }
}
