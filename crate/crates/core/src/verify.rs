//! The cross-check suite: every closed-form fixture, algebraic identity, and
//! engine invariant, bundled as named checks with explicit tolerances.
//!
//! Random angles and states come from a seeded generator so two runs with
//! the same seed produce identical reports.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fock::{
    coherent_amplitudes, CatSign, CatSpec, CoherentSpec, FockCutoff, Mode, TwoModeState,
};
use crate::interferometer::{
    detection_distribution, fock_ladder_protocol, measure_mode, run_circuit, Circuit,
};
use crate::metrics::{photon_stats, schmidt_decompose, thermal_distribution};
use crate::ops::{bs_hamiltonian, ModeOperator};
use crate::oracle;
use crate::splitter::{
    apply_bs_analytic, apply_bs_numeric, bch_series_check, exponent_sign,
    heisenberg_conjugate_creation, heisenberg_conjugate_creation_signed, heisenberg_expected,
    scattering_roundtrip, SplitterParams,
};

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 17;

/// One named check: largest observed deviation against its tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
}

impl CheckReport {
    fn new(name: &str, deviation: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            deviation,
            tolerance,
        }
    }

    pub fn passed(&self) -> bool {
        self.deviation <= self.tolerance && self.deviation.is_finite()
    }
}

/// Outcome of the full suite.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub seed: u64,
    pub checks: Vec<CheckReport>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

fn cutoff(n: usize) -> FockCutoff {
    FockCutoff::new(n).expect("verification cutoffs are valid")
}

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Random normalized state supported on total photon number ≤ n_max, the
/// domain on which splitter evolution is exactly unitary.
fn random_conserved_state(rng: &mut ChaCha8Rng, cut: FockCutoff) -> TwoModeState {
    let dim = cut.dim();
    let mut amps = DMatrix::zeros(dim, dim);
    loop {
        for n in 0..dim {
            for m in 0..dim {
                if n + m <= cut.n_max() {
                    amps[(n, m)] = c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                }
            }
        }
        let state = TwoModeState::from_matrix(cut, amps.clone()).expect("dimensions match");
        if let Ok(normalized) = state.normalize() {
            return normalized;
        }
    }
}

fn coherent_product_state(alpha_a: Complex64, alpha_b: Complex64, cut: FockCutoff) -> TwoModeState {
    let col_a = coherent_amplitudes(alpha_a, cut);
    let col_b = coherent_amplitudes(alpha_b, cut);
    let dim = cut.dim();
    let mut amps = DMatrix::zeros(dim, dim);
    for n in 0..dim {
        for m in 0..dim {
            amps[(n, m)] = col_a[n] * col_b[m];
        }
    }
    TwoModeState::from_matrix(cut, amps)
        .expect("dimensions match")
        .normalize()
        .expect("coherent product has positive norm")
}

fn fidelity_deficit(x: &TwoModeState, y: &TwoModeState) -> f64 {
    1.0 - x.inner_product(y).expect("matching cutoffs").norm_sqr()
}

/// Runs every check and returns the report. Deterministic for a fixed seed.
pub fn run_verification_suite(seed: u64) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    single_splitter_checks(&mut rng, &mut checks);
    heisenberg_checks(&mut checks);
    bch_checks(&mut checks);
    scattering_checks(&mut checks);
    coherent_splitting_checks(&mut checks);
    mach_zehnder_checks(&mut rng, &mut checks);
    case_formula_checks(&mut rng, &mut checks);
    heralding_checks(&mut checks);
    cat_checks(&mut checks);
    cross_method_checks(&mut rng, &mut checks);
    thermal_checks(&mut checks);
    phase_shifter_checks(&mut checks);
    state_construction_checks(&mut checks);
    operator_algebra_checks(&mut checks);
    unitarity_checks(&mut rng, &mut checks);
    measurement_checks(&mut checks);
    entanglement_checks(&mut checks);

    VerificationReport { seed, checks }
}

fn single_splitter_checks(rng: &mut ChaCha8Rng, checks: &mut Vec<CheckReport>) {
    let cut = cutoff(12);
    let input = TwoModeState::fock(1, 0, cut).expect("fits");
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let theta = rng.random_range(0.0..PI);
        let params = SplitterParams::new(theta);
        let expected = oracle::case1(params, cut).expect("fits");
        for state in [
            apply_bs_analytic(&input, params),
            apply_bs_numeric(&input, params),
        ] {
            worst = worst.max(state.max_abs_diff(&expected).expect("matching cutoffs"));
        }
    }
    checks.push(CheckReport::new(
        "single splitter |1,0> amplitudes (50 random angles)",
        worst,
        1e-12,
    ));
}

fn heisenberg_checks(checks: &mut Vec<CheckReport>) {
    let cut = cutoff(12);
    for (mode, name) in [
        (Mode::A, "heisenberg conjugation of a-mode creation"),
        (Mode::B, "heisenberg conjugation of b-mode creation"),
    ] {
        let mut worst = 0.0f64;
        for theta in [0.0, FRAC_PI_8, FRAC_PI_4, 0.9, FRAC_PI_2] {
            let params = SplitterParams::new(theta);
            let conjugated = heisenberg_conjugate_creation(params, mode, cut);
            let expected = heisenberg_expected(params, mode, cut);
            worst = worst.max(conjugated.max_abs_diff_interior(&expected));
        }
        checks.push(CheckReport::new(name, worst, 1e-10));
    }

    // fault injection: the flipped exponent sign must break the rule by 2R
    // on the single-photon entries
    let theta = 0.3;
    let params = SplitterParams::new(theta);
    let small = cutoff(3);
    let flipped = heisenberg_conjugate_creation_signed(params, Mode::A, small, -exponent_sign());
    let expected = heisenberg_expected(params, Mode::A, small);
    let dim = small.dim();
    let dev = (flipped.matrix()[(1, 0)] - expected.matrix()[(1, 0)])
        .norm()
        .max((flipped.matrix()[(dim, 0)] - expected.matrix()[(dim, 0)]).norm());
    checks.push(CheckReport::new(
        "flipped-sign fault is detected at 2R",
        (dev - 2.0 * params.reflection()).abs(),
        1e-12,
    ));
}

fn bch_checks(checks: &mut Vec<CheckReport>) {
    // small cutoff: rounding injected into the commutator cascade is
    // amplified like (2 n_max)^order, so large blocks raise the convergence
    // floor above the factorial decay of the series terms
    let cut = cutoff(6);
    let mut worst = 0.0f64;
    for theta in [0.1, FRAC_PI_8, FRAC_PI_4, FRAC_PI_2] {
        worst = worst.max(bch_series_check(SplitterParams::new(theta), 20, cut));
    }
    checks.push(CheckReport::new(
        "commutator series at order 20 matches conjugation",
        worst,
        1e-8,
    ));

    // deviation shrinks as the order grows
    let params = SplitterParams::new(FRAC_PI_4);
    let coarse = bch_series_check(params, 4, cut);
    let fine = bch_series_check(params, 12, cut);
    let finest = bch_series_check(params, 24, cut);
    let monotone_violation = (fine - coarse).max(finest - fine).max(0.0);
    checks.push(CheckReport::new(
        "commutator series deviation decreases with order",
        monotone_violation,
        0.0,
    ));
}

fn scattering_checks(checks: &mut Vec<CheckReport>) {
    let mut worst = 0.0f64;
    for theta in [0.0, FRAC_PI_8, FRAC_PI_4, 1.1, FRAC_PI_2, PI] {
        let params = SplitterParams::new(theta);
        worst = worst.max(scattering_roundtrip(params));
        worst = worst.max(crate::splitter::ScatteringMatrix::forward(params).unitarity_deviation());
    }
    checks.push(CheckReport::new(
        "scattering matrix round trip and unitarity",
        worst,
        1e-15,
    ));
}

fn coherent_splitting_checks(checks: &mut Vec<CheckReport>) {
    let cut = cutoff(35);
    let mut worst_fidelity = 0.0f64;
    let mut worst_mean = 0.0f64;
    for alpha in [c64(1.0, 0.0), c64(2.0, 0.0), c64(1.0, 1.0)] {
        let input = TwoModeState::coherent(&CoherentSpec::new(alpha), Mode::A, cut)
            .expect("cutoff 35 holds |alpha| <= 2");
        let input_mean = photon_stats(&input, Mode::A).mean + photon_stats(&input, Mode::B).mean;
        for theta in [FRAC_PI_8, FRAC_PI_4] {
            let params = SplitterParams::new(theta);
            let out = apply_bs_numeric(&input, params);
            let expected = coherent_product_state(
                alpha * params.transmission(),
                alpha * c64(0.0, params.reflection()),
                cut,
            );
            worst_fidelity = worst_fidelity.max(fidelity_deficit(&out, &expected));
            let out_mean = photon_stats(&out, Mode::A).mean + photon_stats(&out, Mode::B).mean;
            worst_mean = worst_mean.max((out_mean - input_mean).abs());
        }
    }
    checks.push(CheckReport::new(
        "coherent input factorizes into |T alpha>|iR alpha>",
        worst_fidelity,
        1e-10,
    ));
    checks.push(CheckReport::new(
        "coherent splitting conserves the mean photon total",
        worst_mean,
        1e-12,
    ));
}

fn mach_zehnder_checks(rng: &mut ChaCha8Rng, checks: &mut Vec<CheckReport>) {
    let cut = cutoff(12);
    let input = TwoModeState::fock(1, 0, cut).expect("fits");

    // P(photon in mode a) = cos²(2θ) across a 101-point grid
    let mut worst = 0.0f64;
    for i in 0..=100 {
        let theta = FRAC_PI_2 * i as f64 / 100.0;
        let p = SplitterParams::new(theta);
        let out = run_circuit(&input, &Circuit::mach_zehnder(p, p, cut)).expect("cutoffs match");
        let p_a1 = detection_distribution(&out, Mode::A)[1];
        worst = worst.max((p_a1 - (2.0 * theta).cos().powi(2)).abs());
    }
    checks.push(CheckReport::new(
        "equal-angle pair follows cos^2(2 theta) (101-point grid)",
        worst,
        1e-12,
    ));

    let p = SplitterParams::balanced();
    let out = run_circuit(&input, &Circuit::mach_zehnder(p, p, cut)).expect("cutoffs match");
    checks.push(CheckReport::new(
        "destructive null at theta = pi/4",
        detection_distribution(&out, Mode::A)[1],
        1e-20,
    ));

    let p = SplitterParams::new(FRAC_PI_8);
    let out = run_circuit(&input, &Circuit::mach_zehnder(p, p, cut)).expect("cutoffs match");
    checks.push(CheckReport::new(
        "balanced single-photon output carries one bit",
        (schmidt_decompose(&out).entropy_bits - 1.0).abs(),
        1e-12,
    ));

    // grid plus random angles against the closed form
    let mut worst = 0.0f64;
    let mut angles = vec![0.0, FRAC_PI_8, FRAC_PI_4, FRAC_PI_2, PI];
    angles.extend((0..20).map(|_| rng.random_range(0.0..PI)));
    for theta in angles {
        let p = SplitterParams::new(theta);
        let out = run_circuit(&input, &Circuit::mach_zehnder(p, p, cut)).expect("cutoffs match");
        let expected = oracle::case4(p, p, cut).expect("fits");
        worst = worst.max(fidelity_deficit(&out, &expected));
        worst = worst.max(out.max_abs_diff(&expected).expect("matching cutoffs"));
    }
    checks.push(CheckReport::new(
        "single-photon pair output matches the closed form",
        worst,
        1e-10,
    ));
}

fn case_formula_checks(rng: &mut ChaCha8Rng, checks: &mut Vec<CheckReport>) {
    let cut = cutoff(12);
    let two_photon = TwoModeState::fock(2, 0, cut).expect("fits");
    let coincident = TwoModeState::fock(1, 1, cut).expect("fits");

    let mut pairs: Vec<(SplitterParams, SplitterParams)> = Vec::new();
    for theta in [0.0, FRAC_PI_8, FRAC_PI_4, FRAC_PI_2, PI] {
        pairs.push((SplitterParams::new(theta), SplitterParams::new(theta)));
    }
    for _ in 0..50 {
        pairs.push((
            SplitterParams::new(rng.random_range(0.0..PI)),
            SplitterParams::new(rng.random_range(0.0..PI)),
        ));
    }

    let mut worst5 = 0.0f64;
    let mut worst6 = 0.0f64;
    for (p1, p2) in &pairs {
        let circuit = Circuit::mach_zehnder(*p1, *p2, cut);
        let out5 = run_circuit(&two_photon, &circuit).expect("cutoffs match");
        worst5 = worst5.max(fidelity_deficit(
            &out5,
            &oracle::case5(*p1, *p2, cut).expect("fits"),
        ));
        let out6 = run_circuit(&coincident, &circuit).expect("cutoffs match");
        worst6 = worst6.max(fidelity_deficit(
            &out6,
            &oracle::case6(*p1, *p2, cut).expect("fits"),
        ));
    }
    checks.push(CheckReport::new(
        "photon pair |2,0> matches the closed form (independent angles)",
        worst5,
        1e-10,
    ));
    checks.push(CheckReport::new(
        "coincident photons |1,1> match the closed form (independent angles)",
        worst6,
        1e-10,
    ));

    // amplitude-exact comparison (phases included) on the equal-angle grid
    let mut worst_amp = 0.0f64;
    for theta in [0.0, FRAC_PI_8, FRAC_PI_4, FRAC_PI_2, PI] {
        let p = SplitterParams::new(theta);
        let circuit = Circuit::mach_zehnder(p, p, cut);
        let out5 = run_circuit(&two_photon, &circuit).expect("cutoffs match");
        worst_amp = worst_amp.max(
            out5.max_abs_diff(&oracle::case5(p, p, cut).expect("fits"))
                .expect("matching cutoffs"),
        );
        let out6 = run_circuit(&coincident, &circuit).expect("cutoffs match");
        worst_amp = worst_amp.max(
            out6.max_abs_diff(&oracle::case6(p, p, cut).expect("fits"))
                .expect("matching cutoffs"),
        );
    }
    checks.push(CheckReport::new(
        "pair outputs match printed phases on the special angles",
        worst_amp,
        1e-10,
    ));
}

fn heralding_checks(checks: &mut Vec<CheckReport>) {
    let cut = cutoff(10);
    let p = SplitterParams::new(FRAC_PI_8);
    let bunched = oracle::case6(p, p, cut).expect("fits");
    let record = measure_mode(&bunched, Mode::A, 0).expect("outcome fits");
    checks.push(CheckReport::new(
        "vacuum detection on the bunched pair has probability 1/2",
        (record.probability - 0.5).abs(),
        1e-12,
    ));
    let conditional = record.conditional.expect("possible outcome");
    let two_b = TwoModeState::fock(0, 2, cut).expect("fits");
    checks.push(CheckReport::new(
        "heralded state is |2> in mode b",
        fidelity_deficit(&conditional, &two_b),
        1e-12,
    ));

    let mut worst = 0.0f64;
    for stages in 1..=4usize {
        let outcome = fock_ladder_protocol(stages, FRAC_PI_8, cut).expect("cutoff suffices");
        let bound = 0.5f64.powi(stages as i32);
        worst = worst.max(outcome.success_probability - bound);
    }
    checks.push(CheckReport::new(
        "ladder success stays below 2^-n at theta = pi/8",
        worst.max(0.0),
        1e-12,
    ));
}

fn cat_checks(checks: &mut Vec<CheckReport>) {
    let cut = cutoff(35);
    let alpha = c64(2.0, 0.0);
    let beta = c64(-2.0, 0.0);
    let mut worst = 0.0f64;
    for sign in [CatSign::Plus, CatSign::Minus] {
        let spec = CatSpec::new(alpha, beta, sign);
        let (input, _) = TwoModeState::cat(&spec, Mode::A, cut).expect("cutoff 35 holds alpha=2");
        for theta in [0.0, FRAC_PI_8, FRAC_PI_4] {
            let p = SplitterParams::new(theta);
            let out =
                run_circuit(&input, &Circuit::mach_zehnder(p, p, cut)).expect("cutoffs match");
            let expected = oracle::case8(p, p, &spec, cut).expect("cutoff 35 holds alpha=2");
            worst = worst.max(fidelity_deficit(&out, &expected));
        }
    }
    checks.push(CheckReport::new(
        "coherent superposition outputs match the closed form",
        worst,
        1e-9,
    ));
}

fn cross_method_checks(rng: &mut ChaCha8Rng, checks: &mut Vec<CheckReport>) {
    let cut = cutoff(12);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let state = random_conserved_state(rng, cut);
        let params = SplitterParams::new(rng.random_range(0.0..PI));
        let analytic = apply_bs_analytic(&state, params);
        let numeric = apply_bs_numeric(&state, params);
        worst = worst.max(analytic.max_abs_diff(&numeric).expect("matching cutoffs"));
    }
    checks.push(CheckReport::new(
        "binomial and exponential routes agree (200 random states)",
        worst,
        1e-10,
    ));
}

fn thermal_checks(checks: &mut Vec<CheckReport>) {
    let cut = cutoff(30);
    let dist = thermal_distribution(1.0, cut);
    let exact = (dist.probabilities[0] - 0.5)
        .abs()
        .max((dist.probabilities[1] - 0.25).abs());
    checks.push(CheckReport::new(
        "thermal distribution halves at unit mean",
        exact,
        0.0,
    ));
    let missing = (1.0 - dist.mean()).abs();
    checks.push(CheckReport::new(
        "thermal mean matches up to the reported tail",
        missing,
        dist.tail * (cut.n_max() as f64 + 2.0) * 1.000001,
    ));

    let ratio_dist = thermal_distribution(2.7, cut);
    let ratio = 2.7 / 3.7;
    let mut worst = 0.0f64;
    for n in 0..cut.n_max() {
        worst = worst
            .max((ratio_dist.probabilities[n + 1] - ratio_dist.probabilities[n] * ratio).abs());
    }
    checks.push(CheckReport::new(
        "thermal distribution is exactly geometric",
        worst,
        0.0,
    ));
}

fn phase_shifter_checks(checks: &mut Vec<CheckReport>) {
    let cut = cutoff(12);
    let input = TwoModeState::fock(1, 0, cut).expect("fits");
    let p = SplitterParams::balanced();

    let dark = run_circuit(&input, &Circuit::mach_zehnder(p, p, cut)).expect("cutoffs match");
    let null = detection_distribution(&dark, Mode::A)[1];

    let shifted = Circuit::mach_zehnder_with_phase(p, p, Mode::A, PI, cut);
    let bright = run_circuit(&input, &shifted).expect("cutoffs match");
    let restored = detection_distribution(&bright, Mode::A)[1];

    checks.push(CheckReport::new(
        "pi phase shift removes the destructive null",
        (1.0 - restored).max(null * 1e18),
        1e-2,
    ));

    // any nonzero internal phase strictly raises the blocked count
    let mut worst_gain = f64::INFINITY;
    for phi in [0.3, 1.0, 2.0, PI, 4.0, 6.0] {
        let circuit = Circuit::mach_zehnder_with_phase(p, p, Mode::A, phi, cut);
        let out = run_circuit(&input, &circuit).expect("cutoffs match");
        worst_gain = worst_gain.min(detection_distribution(&out, Mode::A)[1] - null);
    }
    checks.push(CheckReport::new(
        "every nonzero internal phase raises the blocked count",
        if worst_gain > 0.0 { 0.0 } else { 1.0 },
        0.0,
    ));
}

fn state_construction_checks(checks: &mut Vec<CheckReport>) {
    let cut = cutoff(6);

    // orthonormality of the number basis
    let mut worst = 0.0f64;
    for n in 0..=2usize {
        for m in 0..=2usize {
            let x = TwoModeState::fock(n, m, cut).expect("fits");
            for n2 in 0..=2usize {
                for m2 in 0..=2usize {
                    let y = TwoModeState::fock(n2, m2, cut).expect("fits");
                    let overlap = x.inner_product(&y).expect("matching cutoffs").norm();
                    let expected = if (n, m) == (n2, m2) { 1.0 } else { 0.0 };
                    worst = worst.max((overlap - expected).abs());
                }
            }
        }
    }
    checks.push(CheckReport::new(
        "number basis is orthonormal",
        worst,
        1e-15,
    ));

    // coherent photon distribution is Poissonian before renormalization
    let cut30 = cutoff(30);
    let alpha = c64(1.2, -0.3);
    let column = coherent_amplitudes(alpha, cut30);
    let lambda = alpha.norm_sqr();
    let mut pmf = (-lambda).exp();
    let mut worst = 0.0f64;
    for n in 0..=30usize {
        if n > 0 {
            pmf *= lambda / n as f64;
        }
        worst = worst.max((column[n].norm_sqr() - pmf).abs());
    }
    checks.push(CheckReport::new(
        "coherent amplitudes follow the Poisson law",
        worst,
        1e-12,
    ));

    // odd superposition kills the even amplitudes
    let (cat, _) = TwoModeState::cat(
        &CatSpec::new(c64(1.0, 0.0), c64(-1.0, 0.0), CatSign::Minus),
        Mode::A,
        cut30,
    )
    .expect("cutoff suffices");
    let mut worst = 0.0f64;
    for k in 0..=15usize {
        worst = worst.max(cat.amp(2 * k, 0).norm());
    }
    checks.push(CheckReport::new(
        "odd superposition has no even amplitudes",
        worst,
        1e-12,
    ));

    // normalization is idempotent
    let state =
        oracle::case6(SplitterParams::new(0.3), SplitterParams::new(0.9), cut).expect("fits");
    let once = state.normalize().expect("unit norm");
    let twice = once.normalize().expect("unit norm");
    checks.push(CheckReport::new(
        "normalization is idempotent",
        once.max_abs_diff(&twice).expect("matching cutoffs"),
        1e-15,
    ));
}

fn operator_algebra_checks(checks: &mut Vec<CheckReport>) {
    let cut = cutoff(8);
    let a = ModeOperator::annihilation(cut);
    let a_dag = ModeOperator::creation(cut);

    let comm = a.matrix() * a_dag.matrix() - a_dag.matrix() * a.matrix();
    let mut worst = 0.0f64;
    for n in 0..cut.n_max() {
        for m in 0..cut.n_max() {
            let expected = if n == m { 1.0 } else { 0.0 };
            worst = worst.max((comm[(n, m)] - c64(expected, 0.0)).norm());
        }
    }
    checks.push(CheckReport::new(
        "[a, a+] is the identity below the cutoff",
        worst,
        1e-13,
    ));

    let a_joint = ModeOperator::annihilation(cut).embed(Mode::A);
    let b_joint = ModeOperator::annihilation(cut).embed(Mode::B);
    checks.push(CheckReport::new(
        "operators on distinct modes commute exactly",
        a_joint
            .compose(&b_joint)
            .max_abs_diff(&b_joint.compose(&a_joint)),
        0.0,
    ));

    let g = bs_hamiltonian(cut);
    checks.push(CheckReport::new(
        "splitter generator is hermitian",
        g.max_abs_diff(&g.adjoint()),
        0.0,
    ));

    // block structure: columns stay on their total-photon-number block
    let dim = cut.dim();
    let mut worst = 0.0f64;
    for cn in 0..dim {
        for cm in 0..dim {
            for rn in 0..dim {
                for rm in 0..dim {
                    if rn + rm != cn + cm {
                        worst = worst.max(g.matrix()[(rn * dim + rm, cn * dim + cm)].norm());
                    }
                }
            }
        }
    }
    checks.push(CheckReport::new(
        "splitter generator conserves total photon number",
        worst,
        1e-15,
    ));

    let image = g
        .apply(&TwoModeState::fock(1, 0, cut).expect("fits"))
        .expect("matching cutoffs");
    let swapped = TwoModeState::fock(0, 1, cut).expect("fits");
    checks.push(CheckReport::new(
        "generator swaps a single photon between the modes",
        image.max_abs_diff(&swapped).expect("matching cutoffs"),
        1e-15,
    ));
}

fn unitarity_checks(rng: &mut ChaCha8Rng, checks: &mut Vec<CheckReport>) {
    let cut = cutoff(10);

    let mut worst_norm = 0.0f64;
    let mut worst_compose = 0.0f64;
    let mut worst_inverse = 0.0f64;
    let mut worst_number = 0.0f64;
    for _ in 0..25 {
        let state = random_conserved_state(rng, cut);
        let t1 = rng.random_range(0.0..PI);
        let t2 = rng.random_range(0.0..PI);
        let p1 = SplitterParams::new(t1);
        let p2 = SplitterParams::new(t2);

        for out in [apply_bs_analytic(&state, p1), apply_bs_numeric(&state, p1)] {
            worst_norm = worst_norm.max((out.norm() - state.norm()).abs());
            worst_number =
                worst_number.max((out.mean_total_photons() - state.mean_total_photons()).abs());
        }

        let sequential = apply_bs_numeric(&apply_bs_numeric(&state, p1), p2);
        let combined = apply_bs_numeric(&state, SplitterParams::new(t1 + t2));
        worst_compose = worst_compose.max(
            sequential
                .max_abs_diff(&combined)
                .expect("matching cutoffs"),
        );

        let round_trip = apply_bs_numeric(&apply_bs_numeric(&state, p1), SplitterParams::new(-t1));
        worst_inverse =
            worst_inverse.max(round_trip.max_abs_diff(&state).expect("matching cutoffs"));
    }
    checks.push(CheckReport::new(
        "splitters preserve the norm",
        worst_norm,
        1e-12,
    ));
    checks.push(CheckReport::new(
        "splitters conserve the mean photon total",
        worst_number,
        1e-12,
    ));
    checks.push(CheckReport::new(
        "consecutive splitters compose by angle addition",
        worst_compose,
        1e-10,
    ));
    checks.push(CheckReport::new(
        "a splitter followed by its inverse is the identity",
        worst_inverse,
        1e-12,
    ));

    let p = ModeOperator::phase(0.77, cut);
    let unit = p.matrix() * p.matrix().adjoint();
    let mut worst = 0.0f64;
    for n in 0..cut.dim() {
        for m in 0..cut.dim() {
            let expected = if n == m { 1.0 } else { 0.0 };
            worst = worst.max((unit[(n, m)] - c64(expected, 0.0)).norm());
        }
    }
    checks.push(CheckReport::new("phase shifter is unitary", worst, 1e-10));

    let cut25 = cutoff(25);
    let d = ModeOperator::displacement(c64(1.0, 0.0), cut25).expect("cutoff suffices");
    let d_inv = ModeOperator::displacement(c64(-1.0, 0.0), cut25).expect("cutoff suffices");
    let product = d.matrix() * d_inv.matrix();
    let mut worst = 0.0f64;
    for n in 0..=12usize {
        for m in 0..=12usize {
            let expected = if n == m { 1.0 } else { 0.0 };
            worst = worst.max((product[(n, m)] - c64(expected, 0.0)).norm());
        }
    }
    checks.push(CheckReport::new(
        "displacement inverse holds on the interior block",
        worst,
        1e-10,
    ));
}

fn measurement_checks(checks: &mut Vec<CheckReport>) {
    let cut = cutoff(8);
    let p1 = SplitterParams::new(0.6);
    let p2 = SplitterParams::new(1.3);
    let state = oracle::case5(p1, p2, cut).expect("fits");

    let mut worst_sum = 0.0f64;
    let mut worst_reconstruction = 0.0f64;
    for mode in [Mode::A, Mode::B] {
        let dist = detection_distribution(&state, mode);
        worst_sum = worst_sum.max((dist.iter().sum::<f64>() - 1.0).abs());
        let total: f64 = (0..cut.dim())
            .map(|k| {
                measure_mode(&state, mode, k)
                    .expect("outcome fits")
                    .probability
            })
            .sum();
        worst_reconstruction = worst_reconstruction.max((total - state.norm().powi(2)).abs());
    }
    checks.push(CheckReport::new(
        "detection distributions sum to one",
        worst_sum,
        1e-12,
    ));
    checks.push(CheckReport::new(
        "measurement probabilities reconstruct the state norm",
        worst_reconstruction,
        1e-12,
    ));

    let p = SplitterParams::new(FRAC_PI_8);
    let bunched = oracle::case6(p, p, cut).expect("fits");
    let dist = detection_distribution(&bunched, Mode::A);
    let dev = (dist[0] - 0.5)
        .abs()
        .max((dist[2] - 0.5).abs())
        .max(dist[1]);
    checks.push(CheckReport::new(
        "bunched pair detects as half vacuum, half two-photon",
        dev,
        1e-12,
    ));
}

fn entanglement_checks(checks: &mut Vec<CheckReport>) {
    let cut = cutoff(8);
    let p = SplitterParams::new(0.4);
    let state = oracle::case6(p, SplitterParams::new(1.0), cut).expect("fits");
    let before = schmidt_decompose(&state).entropy_bits;
    let mut worst = 0.0f64;
    for mode in [Mode::A, Mode::B] {
        let shifted = ModeOperator::phase(2.1, cut)
            .embed(mode)
            .apply(&state)
            .expect("matching cutoffs");
        worst = worst.max((schmidt_decompose(&shifted).entropy_bits - before).abs());
    }
    checks.push(CheckReport::new(
        "entropy is invariant under local phase shifts",
        worst,
        1e-12,
    ));

    let cut25 = cutoff(25);
    let input = coherent_product_state(c64(0.7, 0.2), c64(-0.4, 0.5), cut25);
    let mut worst = 0.0f64;
    for theta in [0.3, FRAC_PI_4, 1.2] {
        let out = apply_bs_numeric(&input, SplitterParams::new(theta));
        worst = worst.max(schmidt_decompose(&out).entropy_bits);
    }
    checks.push(CheckReport::new(
        "coherent products stay unentangled through splitters",
        worst,
        1e-9,
    ));

    // oracle fixtures for the one-splitter cases
    let cut35 = cutoff(35);
    let alpha = c64(1.0, 0.5);
    let params = SplitterParams::new(0.8);
    let input =
        TwoModeState::coherent(&CoherentSpec::new(alpha), Mode::A, cut35).expect("cutoff suffices");
    let out = apply_bs_numeric(&input, params);
    let expected = oracle::case2(params, alpha, cut35).expect("cutoff suffices");
    checks.push(CheckReport::new(
        "coherent one-splitter output matches the closed form",
        fidelity_deficit(&out, &expected),
        1e-10,
    ));

    let p1 = SplitterParams::new(0.5);
    let p2 = SplitterParams::new(1.1);
    let circuit = Circuit::mach_zehnder(p1, p2, cut35);
    let out = run_circuit(&input, &circuit).expect("cutoffs match");
    let expected = oracle::case7(p1, p2, alpha, cut35).expect("cutoff suffices");
    checks.push(CheckReport::new(
        "coherent pair output matches the closed form",
        fidelity_deficit(&out, &expected),
        1e-10,
    ));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_with_default_seed() {
        let report = run_verification_suite(DEFAULT_SEED);
        for check in &report.checks {
            assert!(
                check.passed(),
                "check '{}' failed: deviation {} > tolerance {}",
                check.name,
                check.deviation,
                check.tolerance
            );
        }
    }

    #[test]
    fn suite_is_deterministic_for_a_seed() {
        let a = run_verification_suite(3);
        let b = run_verification_suite(3);
        assert_eq!(a, b);
    }

    #[test]
    fn suite_varies_with_the_seed_but_still_passes() {
        let report = run_verification_suite(99);
        assert!(report.all_passed());
    }
}
