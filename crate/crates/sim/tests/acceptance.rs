//! End-to-end acceptance checks for the whole engine.
//!
//! Each test covers one numbered criterion, carries its tolerances as
//! named constants, and prints a single `ACCEPTANCE <n> PASS` line with
//! the measured values once its assertions hold. Run with
//! `cargo test --test acceptance -- --nocapture` to see every line.

use std::f64::consts::{PI, TAU};
use std::time::{Duration, Instant};

use resolver_core::fault::effective_turns_excitation;
use resolver_core::{
    assemble_mutual, assemble_self_excitation, fit_fourier, generate_synthetic_basis, mae,
    simulate, alternating_excitation_turns, overlapping_signal_turns, ConstantInductance,
    ExcitationSource, FaultSpec, Geometry, ScenarioInputs, SignalWinding, Timebase,
    solve_excitation_current,
};
use resolver_sim::runner::{parse_sweep, run_sweep};

/// Fixture machine: twelve teeth, two salient poles, five-pole-pair
/// signal windings.
fn fixture() -> Geometry {
    Geometry::twelve_slot_demo()
}

/// Runs the demonstration scenario with the given faults and start
/// angle, returning the average absolute position error in degrees.
fn demo_aape(faults: Vec<FaultSpec>, theta0_rad: f64) -> f64 {
    let mut inputs = ScenarioInputs::demo();
    inputs.faults = faults;
    inputs.timebase.theta0_rad = theta0_rad;
    let outputs = simulate(&inputs).expect("demo scenario must run");
    assert!(outputs.metrics.n_samples > 0);
    outputs.metrics.aape_deg
}

#[test]
fn criterion_01_airgap_extremes() {
    const SWEEP_POINTS: usize = 10_000;
    const TOL_MM: f64 = 1e-6;
    const BUDGET: Duration = Duration::from_secs(1);
    let started = Instant::now();
    let geometry = fixture();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for k in 0..SWEEP_POINTS {
        let phi = TAU * k as f64 / SWEEP_POINTS as f64;
        let gap = geometry.airgap_length_mm(phi, 0.0);
        lo = lo.min(gap);
        hi = hi.max(gap);
    }
    assert!((lo - 0.25).abs() < TOL_MM, "min gap {lo} mm, expected 0.25 mm");
    assert!((hi - 1.0).abs() < TOL_MM, "max gap {hi} mm, expected 1.0 mm");
    let elapsed = started.elapsed();
    assert!(elapsed < BUDGET, "airgap sweep took {elapsed:?}");
    println!(
        "ACCEPTANCE 1 PASS — airgap extremes {lo:.9}/{hi:.9} mm over {SWEEP_POINTS} angles \
         in {elapsed:?}"
    );
}

#[test]
fn criterion_02_resistive_short_limits() {
    const TURNS: f64 = 30.0;
    const SHORTED: f64 = 5.0;
    const R_E: f64 = 2.0;
    const TOL_DEAD: f64 = 1e-12;
    const TOL_OPEN: f64 = 1e-3;
    const GRID_POINTS: usize = 100;
    let dead = effective_turns_excitation(TURNS, SHORTED, 0.0, R_E).unwrap();
    assert!(
        (dead - 25.0).abs() < TOL_DEAD,
        "dead short leaves {dead} turns, expected 25"
    );
    let open = effective_turns_excitation(TURNS, SHORTED, 1e5 * R_E, R_E).unwrap();
    assert!(
        (open - TURNS).abs() < TOL_OPEN,
        "high-resistance short leaves {open} turns, expected ~{TURNS}"
    );
    let mut previous = f64::NEG_INFINITY;
    for i in 0..GRID_POINTS {
        let r_sc = 1e5 * R_E * (i as f64 / (GRID_POINTS - 1) as f64).powi(2);
        let t_eff = effective_turns_excitation(TURNS, SHORTED, r_sc, R_E).unwrap();
        assert!(
            t_eff > previous,
            "effective turns not strictly increasing at R_sc = {r_sc} ohm"
        );
        previous = t_eff;
    }
    println!(
        "ACCEPTANCE 2 PASS — effective excitation turns: {dead:.15} at a dead short, \
         {open:.6} near open, strictly monotone over {GRID_POINTS} contact resistances"
    );
}

#[test]
fn criterion_03_assembly_matches_brute_force() {
    const SAMPLES: usize = 1000;
    const REL_TOL: f64 = 1e-12;
    const BUDGET: Duration = Duration::from_secs(5);
    let started = Instant::now();
    let basis = generate_synthetic_basis(&fixture(), SAMPLES).unwrap();
    let n = basis.geometry.slot_count;
    let (sine, cosine) =
        overlapping_signal_turns(70.0, basis.geometry.winding_pole_pairs, n);
    let excitation = alternating_excitation_turns(30.0, n).unwrap();

    let unity = |_: usize, _: usize| 1.0;
    let l_se = assemble_mutual(&basis.sig, &sine, &excitation, unity).unwrap();
    let l_ce = assemble_mutual(&basis.sig, &cosine, &excitation, unity).unwrap();
    let l_ee = assemble_self_excitation(&basis.exc, &excitation, unity).unwrap();

    let peak = |profile: &[f64]| profile.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let (scale_se, scale_ce, scale_ee) = (peak(&l_se), peak(&l_ce), peak(&l_ee));
    let mut worst: f64 = 0.0;
    for k in 0..SAMPLES {
        let mut brute_se = 0.0;
        let mut brute_ce = 0.0;
        let mut brute_ee = 0.0;
        for i in 0..n {
            for j in 0..n {
                brute_se += sine.get(i) * excitation.get(j) * basis.sig.get(k, i, j);
                brute_ce += cosine.get(i) * excitation.get(j) * basis.sig.get(k, i, j);
                brute_ee += excitation.get(i) * excitation.get(j) * basis.exc.get(k, i, j);
            }
        }
        worst = worst
            .max((l_se[k] - brute_se).abs() / scale_se)
            .max((l_ce[k] - brute_ce).abs() / scale_ce)
            .max((l_ee[k] - brute_ee).abs() / scale_ee);
    }
    assert!(
        worst < REL_TOL,
        "assembled profiles deviate from the explicit double sums by {worst:.3e} relative"
    );
    let elapsed = started.elapsed();
    assert!(elapsed < BUDGET, "assembly comparison took {elapsed:?}");
    println!(
        "ACCEPTANCE 3 PASS — both assemblies match explicit double sums over {SAMPLES} \
         angles within {worst:.3e} relative, in {elapsed:?}"
    );
}

#[test]
fn criterion_04_circuit_solver_accuracy_and_order() {
    const RESISTANCE: f64 = 2.0;
    const INDUCTANCE: f64 = 1e-3;
    const AMPLITUDE: f64 = 5.0;
    const CARRIER_HZ: f64 = 5000.0;
    const BASE_RATE_HZ: f64 = 80_000.0;
    const REL_TOL: f64 = 1e-3;
    const RATIO_LOW: f64 = 3.0;
    const RATIO_HIGH: f64 = 5.0;
    const BUDGET: Duration = Duration::from_secs(5);
    let started = Instant::now();
    let source = ExcitationSource { amplitude_volt: AMPLITUDE, frequency_hz: CARRIER_HZ };
    let omega = TAU * CARRIER_HZ;
    let reactance = omega * INDUCTANCE;
    let amp_exact = AMPLITUDE / reactance.hypot(RESISTANCE);
    let phase_exact = reactance.atan2(RESISTANCE);

    // Accuracy: project the settled tail onto the carrier and compare
    // amplitude and phase against the analytic steady state.
    let timebase = Timebase {
        sample_rate_hz: BASE_RATE_HZ,
        duration_s: 0.1,
        omega_rad_s: 0.0,
        theta0_rad: 0.0,
    };
    let current =
        solve_excitation_current(&ConstantInductance(INDUCTANCE), RESISTANCE, &source, &timebase)
            .unwrap();
    let skip = timebase.transient_end(&source);
    let per_period = (BASE_RATE_HZ / CARRIER_HZ) as usize;
    let m = (current.len() - 1 - skip) / per_period * per_period;
    let (mut a, mut b) = (0.0, 0.0);
    for (k, &i_k) in current.iter().enumerate().skip(skip).take(m) {
        let t = k as f64 / BASE_RATE_HZ;
        a += i_k * (omega * t).cos();
        b += i_k * (omega * t).sin();
    }
    let amp_meas = (2.0 / m as f64) * a.hypot(b);
    let phase_meas = b.atan2(a);
    let amp_err = (amp_meas - amp_exact).abs() / amp_exact;
    let phase_err = (phase_meas - phase_exact).abs() / phase_exact.abs();
    assert!(amp_err < REL_TOL, "amplitude off by {amp_err:.3e} relative");
    assert!(phase_err < REL_TOL, "phase off by {phase_err:.3e} relative");

    // Order: against the full analytic solution (transient included),
    // halving the step must shrink the settled RMS residual about
    // four-fold.
    let exact = |t: f64| {
        amp_exact * (omega * t - phase_exact).cos()
            - amp_exact * phase_exact.cos() * (-RESISTANCE / INDUCTANCE * t).exp()
    };
    let rms_residual = |rate: f64| {
        let tb = Timebase {
            sample_rate_hz: rate,
            duration_s: 0.02,
            omega_rad_s: 0.0,
            theta0_rad: 0.0,
        };
        let i_num =
            solve_excitation_current(&ConstantInductance(INDUCTANCE), RESISTANCE, &source, &tb)
                .unwrap();
        let skip = tb.transient_end(&source);
        let mut sum = 0.0;
        for (k, i_k) in i_num.iter().enumerate().skip(skip) {
            sum += (i_k - exact(k as f64 / rate)).powi(2);
        }
        (sum / (i_num.len() - skip) as f64).sqrt()
    };
    let coarse = rms_residual(BASE_RATE_HZ);
    let fine = rms_residual(2.0 * BASE_RATE_HZ);
    let ratio = coarse / fine;
    assert!(
        (RATIO_LOW..=RATIO_HIGH).contains(&ratio),
        "halving the step changed the residual by {ratio:.2}x, expected about 4x"
    );
    let elapsed = started.elapsed();
    assert!(elapsed < BUDGET, "circuit checks took {elapsed:?}");
    println!(
        "ACCEPTANCE 4 PASS — steady state within {amp_err:.2e} (amplitude) and \
         {phase_err:.2e} (phase) relative; residual ratio {ratio:.2}x per step halving, \
         in {elapsed:?}"
    );
}

#[test]
fn criterion_05_ideal_chain_noise_floor() {
    const AAPE_LIMIT_DEG: f64 = 0.01;
    const MPE_LIMIT_DEG: f64 = 0.05;
    const BUDGET: Duration = Duration::from_secs(10);
    let started = Instant::now();
    let outputs = simulate(&ScenarioInputs::ideal_demo()).unwrap();
    let m = &outputs.metrics;
    assert!(m.n_samples > 0);
    assert!(
        m.aape_deg < AAPE_LIMIT_DEG,
        "ideal average error {} deg exceeds {AAPE_LIMIT_DEG} deg",
        m.aape_deg
    );
    assert!(
        m.mpe_deg < MPE_LIMIT_DEG,
        "ideal peak error {} deg exceeds {MPE_LIMIT_DEG} deg",
        m.mpe_deg
    );
    let elapsed = started.elapsed();
    assert!(elapsed < BUDGET, "ideal run took {elapsed:?}");
    println!(
        "ACCEPTANCE 5 PASS — ideal machine decodes to AAPE {:.6} deg, MPE {:.6} deg \
         over {} samples in {elapsed:?}",
        m.aape_deg, m.mpe_deg, m.n_samples
    );
}

#[test]
fn criterion_06_every_fault_degrades_accuracy() {
    // The dynamic case starts the rotor away from the saliency axis;
    // whirl locked to that axis scales both channels equally and hides
    // from the envelope ratio.
    const DYNAMIC_THETA0_RAD: f64 = 0.5;
    let healthy_parked = demo_aape(Vec::new(), 0.0);
    let healthy_offset = demo_aape(Vec::new(), DYNAMIC_THETA0_RAD);
    let signal_short = demo_aape(
        vec![FaultSpec::SignalShort {
            tooth: 8,
            winding: SignalWinding::Sine,
            shorted_turns: 21.0,
        }],
        0.0,
    );
    let excitation_short = demo_aape(
        vec![FaultSpec::ExcitationShort {
            tooth: 0,
            shorted_turns: 5.0,
            short_resistance_ohm: 0.2,
        }],
        0.0,
    );
    let static_ecc = demo_aape(
        vec![FaultSpec::StaticEccentricity { magnitude_mm: 0.1, direction_rad: PI }],
        0.0,
    );
    let dynamic_ecc = demo_aape(
        vec![FaultSpec::DynamicEccentricity { magnitude_mm: 0.1 }],
        DYNAMIC_THETA0_RAD,
    );
    for (label, faulted, healthy) in [
        ("signal_short", signal_short, healthy_parked),
        ("excitation_short", excitation_short, healthy_parked),
        ("static_ecc", static_ecc, healthy_parked),
        ("dynamic_ecc", dynamic_ecc, healthy_offset),
    ] {
        assert!(
            healthy < faulted,
            "{label}: healthy AAPE {healthy:.6} deg is not below faulted {faulted:.6} deg"
        );
    }
    println!(
        "ACCEPTANCE 6 PASS — healthy AAPE {healthy_parked:.5} deg below signal short \
         {signal_short:.5}, excitation short {excitation_short:.5}, static \
         eccentricity {static_ecc:.5}, dynamic eccentricity {dynamic_ecc:.5} \
         (healthy at its start angle {healthy_offset:.5}) deg"
    );
}

#[test]
fn criterion_07_error_grows_with_eccentricity() {
    const GRID_MM: [f64; 4] = [0.0, 0.05, 0.1, 0.15];
    const DYNAMIC_THETA0_RAD: f64 = 0.5;
    const BUDGET: Duration = Duration::from_secs(120);
    let started = Instant::now();
    let static_aape: Vec<f64> = GRID_MM
        .iter()
        .map(|&e_mm| {
            demo_aape(
                vec![FaultSpec::StaticEccentricity { magnitude_mm: e_mm, direction_rad: PI }],
                0.0,
            )
        })
        .collect();
    let dynamic_aape: Vec<f64> = GRID_MM
        .iter()
        .map(|&e_mm| {
            demo_aape(
                vec![FaultSpec::DynamicEccentricity { magnitude_mm: e_mm }],
                DYNAMIC_THETA0_RAD,
            )
        })
        .collect();
    for series in [&static_aape, &dynamic_aape] {
        for pair in series.windows(2) {
            assert!(
                pair[0] < pair[1],
                "error is not strictly increasing along the grid: {series:?}"
            );
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed < BUDGET, "severity sweeps took {elapsed:?}");
    println!(
        "ACCEPTANCE 7 PASS — AAPE strictly increases with severity: static \
         {static_aape:?} deg, dynamic {dynamic_aape:?} deg, in {elapsed:?}"
    );
}

#[test]
fn criterion_08_zero_intensity_faults_are_healthy() {
    let healthy = simulate(&ScenarioInputs::demo()).unwrap();
    let zero_faults = [
        FaultSpec::SignalShort { tooth: 8, winding: SignalWinding::Sine, shorted_turns: 0.0 },
        FaultSpec::ExcitationShort { tooth: 0, shorted_turns: 0.0, short_resistance_ohm: 0.2 },
        FaultSpec::StaticEccentricity { magnitude_mm: 0.0, direction_rad: PI },
        FaultSpec::DynamicEccentricity { magnitude_mm: 0.0 },
    ];
    for fault in zero_faults {
        let mut inputs = ScenarioInputs::demo();
        inputs.faults = vec![fault];
        let outputs = simulate(&inputs).unwrap();
        assert_eq!(
            outputs.wave, healthy.wave,
            "zero-intensity {fault:?} changed the waveform"
        );
        assert!(
            outputs.effective_faults.is_empty(),
            "zero-intensity {fault:?} kept a ground-truth label"
        );
    }
    println!(
        "ACCEPTANCE 8 PASS — all four fault kinds at zero intensity reproduce the \
         healthy waveform bit for bit and carry no label"
    );
}

#[test]
fn criterion_09_profile_fit_round_trip() {
    const SAMPLES: usize = 2000;
    const FIT_ORDER_MAX: usize = 500;
    const REL_TOL: f64 = 1e-9;
    let basis = generate_synthetic_basis(&fixture(), SAMPLES).unwrap();
    let n = basis.geometry.slot_count;
    let (sine, cosine) =
        overlapping_signal_turns(70.0, basis.geometry.winding_pole_pairs, n);
    let excitation = alternating_excitation_turns(30.0, n).unwrap();
    let unity = |_: usize, _: usize| 1.0;
    let profiles = [
        assemble_mutual(&basis.sig, &sine, &excitation, unity).unwrap(),
        assemble_mutual(&basis.sig, &cosine, &excitation, unity).unwrap(),
        assemble_self_excitation(&basis.exc, &excitation, unity).unwrap(),
    ];
    let mut worst: f64 = 0.0;
    for profile in &profiles {
        let series = fit_fourier(&basis.angle_grid, profile, FIT_ORDER_MAX).unwrap();
        let reconstructed: Vec<f64> =
            basis.angle_grid.iter().map(|&theta| series.value(theta)).collect();
        let scale = profile.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        worst = worst.max(mae(&reconstructed, profile) / scale);
    }
    assert!(
        worst < REL_TOL,
        "fit round-trip error {worst:.3e} relative exceeds {REL_TOL:.0e}"
    );
    println!(
        "ACCEPTANCE 9 PASS — fitting and re-evaluating all three profiles over \
         {SAMPLES} angles round-trips within {worst:.3e} relative"
    );
}

#[test]
fn criterion_10_sweeps_are_deterministic() {
    const WORKER_SCHEDULES: [usize; 2] = [1, 8];
    const CASES: usize = 4;
    let base_text = "\
scenario.id = det
basis.K = 300
fit.n_max = 149
timebase.duration_s = 0.005
timebase.omega_rad_s = 0
timebase.theta0_rad = 0.7
fault.kind = static_ecc
fault.theta_ecc_rad = 3.141592653589793
";
    let sweep_text = "sweep.base = base.cfg\naxis.fault.e_mm = 0 | 0.05 | 0.1 | 0.15\n";
    let mut bundles: Vec<Vec<u8>> = Vec::new();
    for workers in WORKER_SCHEDULES {
        for _rerun in 0..2 {
            let dir = tempfile::tempdir().unwrap();
            std::fs::write(dir.path().join("base.cfg"), base_text).unwrap();
            let spec = parse_sweep(sweep_text, dir.path()).unwrap();
            let out = dir.path().join("sweep");
            let summary = run_sweep(&spec, &out, false, workers).unwrap();
            assert_eq!(summary.cases, CASES);
            assert_eq!(summary.failed, 0);
            let mut bundle = std::fs::read(out.join("manifest.csv")).unwrap();
            for case in 0..CASES {
                for suffix in ["wave.csv", "profiles.csv", "metrics.txt"] {
                    bundle.extend(
                        std::fs::read(out.join(format!("det_case{case:04}_{suffix}")))
                            .unwrap(),
                    );
                }
            }
            bundles.push(bundle);
        }
    }
    for other in &bundles[1..] {
        assert_eq!(
            &bundles[0], other,
            "sweep outputs differ between reruns or worker schedules"
        );
    }
    println!(
        "ACCEPTANCE 10 PASS — a {CASES}-case sweep reproduces manifest and artifacts \
         byte for byte across reruns and worker schedules {WORKER_SCHEDULES:?}"
    );
}
