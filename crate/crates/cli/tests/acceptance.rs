//! Acceptance suite: every exit criterion of the simulator, one test per
//! criterion, each printing a PASS line with the measured figure.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};
use std::time::Instant;

use beamsplit::{
    apply_bs_analytic, apply_bs_numeric, bch_series_check, detection_distribution, fidelity,
    fock_ladder_protocol, heisenberg_conjugate_creation, measure_mode, oracle, photon_stats,
    run_circuit, schmidt_decompose, thermal_distribution, CatSign, CatSpec, Circuit, CoherentSpec,
    FockCutoff, Mode, SplitterParams, TwoModeState,
};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cutoff(n: usize) -> FockCutoff {
    FockCutoff::new(n).unwrap()
}

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pass(criterion: &str, detail: String) {
    println!("PASS {criterion}: {detail}");
}

/// Random normalized state supported on total photon number ≤ n_max.
fn random_conserved_state(rng: &mut ChaCha8Rng, cut: FockCutoff) -> TwoModeState {
    let dim = cut.dim();
    let mut amps = DMatrix::zeros(dim, dim);
    for n in 0..dim {
        for m in 0..dim {
            if n + m <= cut.n_max() {
                amps[(n, m)] = c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            }
        }
    }
    TwoModeState::from_matrix(cut, amps)
        .unwrap()
        .normalize()
        .unwrap()
}

#[test]
fn criterion_01_single_splitter_fock_amplitudes() {
    let start = Instant::now();
    let cut = cutoff(12);
    let input = TwoModeState::fock(1, 0, cut).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let params = SplitterParams::new(rng.random_range(0.0..PI));
        let out = apply_bs_numeric(&input, params);
        let expected = oracle::case1(params, cut).unwrap();
        worst = worst.max(out.max_abs_diff(&expected).unwrap());
    }
    let elapsed = start.elapsed();
    assert!(worst < 1e-12, "worst deviation {worst}");
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    pass(
        "criterion 01 (single-splitter amplitudes)",
        format!("max deviation {worst:.3e} over 50 angles in {elapsed:?}"),
    );
}

#[test]
fn criterion_02_heisenberg_identities() {
    let cut = cutoff(12);
    let mut worst = 0.0f64;
    for theta in [0.0, 0.2, FRAC_PI_8, FRAC_PI_4, 1.0, FRAC_PI_2] {
        let params = SplitterParams::new(theta);
        for mode in [Mode::A, Mode::B] {
            let conjugated = heisenberg_conjugate_creation(params, mode, cut);
            let expected = beamsplit::splitter::heisenberg_expected(params, mode, cut);
            worst = worst.max(conjugated.max_abs_diff_interior(&expected));
        }
    }
    assert!(worst < 1e-10, "worst deviation {worst}");
    pass(
        "criterion 02 (conjugation identities)",
        format!("max interior deviation {worst:.3e} at cutoff 12"),
    );
}

#[test]
fn criterion_03_commutator_series_convergence() {
    let cut = cutoff(6);
    let mut worst = 0.0f64;
    for theta in [0.1, FRAC_PI_8, FRAC_PI_4, FRAC_PI_2] {
        worst = worst.max(bch_series_check(SplitterParams::new(theta), 20, cut));
    }
    assert!(worst < 1e-8, "worst deviation {worst}");
    pass(
        "criterion 03 (series convergence at order 20)",
        format!("max deviation {worst:.3e}"),
    );
}

#[test]
fn criterion_04_coherent_splitting() {
    let cut = cutoff(35);
    let mut worst_deficit = 0.0f64;
    let mut worst_mean = 0.0f64;
    for alpha in [c64(1.0, 0.0), c64(2.0, 0.0), c64(1.0, 1.0)] {
        let input = TwoModeState::coherent(&CoherentSpec::new(alpha), Mode::A, cut).unwrap();
        let total_in = photon_stats(&input, Mode::A).mean + photon_stats(&input, Mode::B).mean;
        for theta in [FRAC_PI_8, FRAC_PI_4] {
            let params = SplitterParams::new(theta);
            let out = apply_bs_numeric(&input, params);
            let expected = oracle::case2(params, alpha, cut).unwrap();
            worst_deficit = worst_deficit.max(1.0 - fidelity(&out, &expected).unwrap());
            let total_out = photon_stats(&out, Mode::A).mean + photon_stats(&out, Mode::B).mean;
            worst_mean = worst_mean.max((total_out - total_in).abs());
        }
    }
    assert!(worst_deficit < 1e-10, "fidelity deficit {worst_deficit}");
    assert!(worst_mean < 1e-12, "mean drift {worst_mean}");
    pass(
        "criterion 04 (coherent splitting)",
        format!("fidelity deficit {worst_deficit:.3e}, mean drift {worst_mean:.3e}"),
    );
}

#[test]
fn criterion_05_mach_zehnder_single_photon() {
    let cut = cutoff(12);
    let input = TwoModeState::fock(1, 0, cut).unwrap();

    let mut worst = 0.0f64;
    for i in 0..=100 {
        let theta = FRAC_PI_2 * i as f64 / 100.0;
        let p = SplitterParams::new(theta);
        let out = run_circuit(&input, &Circuit::mach_zehnder(p, p, cut)).unwrap();
        let p_a1 = detection_distribution(&out, Mode::A)[1];
        worst = worst.max((p_a1 - (2.0 * theta).cos().powi(2)).abs());
    }
    assert!(worst < 1e-12, "grid deviation {worst}");

    let p = SplitterParams::balanced();
    let out = run_circuit(&input, &Circuit::mach_zehnder(p, p, cut)).unwrap();
    let null = detection_distribution(&out, Mode::A)[1];
    assert!(null < 1e-20, "null probability {null}");

    let p = SplitterParams::new(FRAC_PI_8);
    let out = run_circuit(&input, &Circuit::mach_zehnder(p, p, cut)).unwrap();
    let entropy = schmidt_decompose(&out).entropy_bits;
    assert!((entropy - 1.0).abs() < 1e-12, "entropy {entropy}");

    pass(
        "criterion 05 (pair probability law)",
        format!(
            "grid deviation {worst:.3e}, null {null:.3e}, entropy error {:.3e}",
            (entropy - 1.0).abs()
        ),
    );
}

#[test]
fn criterion_06_general_pair_formulas() {
    let cut = cutoff(12);
    let two_photon = TwoModeState::fock(2, 0, cut).unwrap();
    let coincident = TwoModeState::fock(1, 1, cut).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(106);

    let mut pairs = Vec::new();
    for theta in [0.0, FRAC_PI_8, FRAC_PI_4, FRAC_PI_2, PI] {
        pairs.push((SplitterParams::new(theta), SplitterParams::new(theta)));
    }
    for _ in 0..50 {
        pairs.push((
            SplitterParams::new(rng.random_range(0.0..PI)),
            SplitterParams::new(rng.random_range(0.0..PI)),
        ));
    }

    let mut worst = 0.0f64;
    for (p1, p2) in pairs {
        let circuit = Circuit::mach_zehnder(p1, p2, cut);
        let out = run_circuit(&two_photon, &circuit).unwrap();
        worst = worst.max(1.0 - fidelity(&out, &oracle::case5(p1, p2, cut).unwrap()).unwrap());
        let out = run_circuit(&coincident, &circuit).unwrap();
        worst = worst.max(1.0 - fidelity(&out, &oracle::case6(p1, p2, cut).unwrap()).unwrap());
    }
    assert!(worst < 1e-10, "fidelity deficit {worst}");
    pass(
        "criterion 06 (photon-pair closed forms)",
        format!("fidelity deficit {worst:.3e} over 55 angle pairs, two inputs"),
    );
}

#[test]
fn criterion_07_heralded_fock_generation() {
    let cut = cutoff(10);
    let p = SplitterParams::new(FRAC_PI_8);
    let bunched = oracle::case6(p, p, cut).unwrap();
    let record = measure_mode(&bunched, Mode::A, 0).unwrap();
    assert!((record.probability - 0.5).abs() < 1e-12);
    let conditional = record.conditional.unwrap();
    let expected = TwoModeState::fock(0, 2, cut).unwrap();
    let f = fidelity(&conditional, &expected).unwrap();
    assert!((f - 1.0).abs() < 1e-12);

    let mut worst_excess = 0.0f64;
    for stages in 1..=4usize {
        let outcome = fock_ladder_protocol(stages, FRAC_PI_8, cut).unwrap();
        let bound = 0.5f64.powi(stages as i32);
        worst_excess = worst_excess.max(outcome.success_probability - bound);
    }
    assert!(worst_excess <= 1e-12, "bound excess {worst_excess}");
    pass(
        "criterion 07 (heralded generation)",
        format!(
            "herald probability error {:.3e}, conditional fidelity error {:.3e}, ladder bound excess {:.3e}",
            (record.probability - 0.5).abs(),
            (f - 1.0).abs(),
            worst_excess
        ),
    );
}

#[test]
fn criterion_08_cat_state_entanglement() {
    // cutoff from the tail rule: |alpha| = 2 needs n_max 25 at the default
    // tail, run with headroom
    let required = beamsplit::required_cutoff(c64(2.0, 0.0), CoherentSpec::DEFAULT_TAIL);
    let cut = cutoff(required + 10);
    let mut worst = 0.0f64;
    for sign in [CatSign::Plus, CatSign::Minus] {
        let spec = CatSpec::new(c64(2.0, 0.0), c64(-2.0, 0.0), sign);
        let (input, _) = TwoModeState::cat(&spec, Mode::A, cut).unwrap();
        for theta in [0.0, FRAC_PI_8, FRAC_PI_4] {
            let p = SplitterParams::new(theta);
            let out = run_circuit(&input, &Circuit::mach_zehnder(p, p, cut)).unwrap();
            let expected = oracle::case8(p, p, &spec, cut).unwrap();
            worst = worst.max(1.0 - fidelity(&out, &expected).unwrap());
        }
    }
    assert!(worst < 1e-9, "fidelity deficit {worst}");
    pass(
        "criterion 08 (coherent-superposition pair)",
        format!("fidelity deficit {worst:.3e} at cutoff {}", cut.n_max()),
    );
}

#[test]
fn criterion_09_cross_method_equivalence() {
    let cut = cutoff(12);
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let state = random_conserved_state(&mut rng, cut);
        let params = SplitterParams::new(rng.random_range(0.0..PI));
        let analytic = apply_bs_analytic(&state, params);
        let numeric = apply_bs_numeric(&state, params);
        worst = worst.max(analytic.max_abs_diff(&numeric).unwrap());
    }
    assert!(worst < 1e-10, "worst deviation {worst}");
    pass(
        "criterion 09 (route equivalence)",
        format!("max amplitude deviation {worst:.3e} over 200 states"),
    );
}

#[test]
fn criterion_10_thermal_formula() {
    let cut = cutoff(30);
    let dist = thermal_distribution(1.0, cut);
    assert_eq!(dist.probabilities[0], 0.5);
    assert_eq!(dist.probabilities[1], 0.25);
    let missing = (1.0 - dist.mean()).abs();
    let bound = dist.tail * (cut.n_max() as f64 + 2.0) * 1.000001;
    assert!(missing <= bound, "missing mean {missing} > {bound}");
    pass(
        "criterion 10 (thermal distribution)",
        format!("p0 = 0.5 and p1 = 0.25 exactly; missing mean {missing:.3e} <= {bound:.3e}"),
    );
}

#[test]
fn criterion_11_phase_shifter_scenario() {
    let cut = cutoff(12);
    let input = TwoModeState::fock(1, 0, cut).unwrap();
    let p = SplitterParams::balanced();

    let dark = run_circuit(&input, &Circuit::mach_zehnder(p, p, cut)).unwrap();
    let null = detection_distribution(&dark, Mode::A)[1];
    assert!(null < 1e-20, "null {null}");

    let circuit = Circuit::mach_zehnder_with_phase(p, p, Mode::A, PI, cut);
    let bright = run_circuit(&input, &circuit).unwrap();
    let restored = detection_distribution(&bright, Mode::A)[1];
    assert!(restored > 0.99, "restored {restored}");
    pass(
        "criterion 11 (phase shifter)",
        format!("null {null:.3e} -> restored {restored:.12}"),
    );
}

#[test]
fn criterion_12_full_verify_suite() {
    let start = Instant::now();
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_beamsplit"))
        .arg("verify")
        .output()
        .expect("verify subprocess runs");
    let elapsed = start.elapsed();
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(
        output.status.success(),
        "verify exited with {:?}\n{stdout}",
        output.status.code()
    );
    assert!(stdout.contains("0 failed"), "unexpected output:\n{stdout}");
    assert!(
        elapsed.as_secs_f64() <= 60.0,
        "verify took {elapsed:?}, budget is 60 s"
    );
    pass(
        "criterion 12 (verification suite)",
        format!("exit 0 in {elapsed:?}"),
    );
}
