//! Scenario execution: builds the input state and circuit for a case (or a
//! custom element list), runs the engine, and collects the report.

use beamsplit::{
    detection_distribution, fidelity, oracle, photon_stats, run_circuit, schmidt_decompose, CaseId,
    CatSpec, Circuit, CircuitElement, CoherentSpec, FockCutoff, Mode, SplitterParams, TwoModeState,
};
use num_complex::Complex64;
use serde::Serialize;

use crate::config::{ElementSpec, InputSpec, ScenarioConfig};
use crate::AppError;

/// Amplitudes below this are omitted from reports.
pub const AMPLITUDE_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Serialize)]
pub struct AmplitudeEntry {
    pub n: usize,
    pub m: usize,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CountProbability {
    pub k: usize,
    pub p: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModeStats {
    pub mean: f64,
    pub variance: f64,
    pub mandel_q: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub input: String,
    pub cutoff: usize,
    pub theta: f64,
    pub theta2: Option<f64>,
    pub phi: Option<f64>,
    pub amplitudes: Vec<AmplitudeEntry>,
    pub detection_a: Vec<CountProbability>,
    pub detection_b: Vec<CountProbability>,
    pub stats_a: ModeStats,
    pub stats_b: ModeStats,
    pub entropy_bits: f64,
    pub oracle_fidelity: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub theta: f64,
    pub p_a0: f64,
    pub p_a1: f64,
    pub mean_a: f64,
    pub mean_b: f64,
    pub entropy_bits: f64,
    pub oracle_fidelity: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum ScenarioOutput {
    Single(Box<ScenarioReport>),
    Sweep { rows: Vec<SweepRow> },
}

struct PreparedScenario {
    label: String,
    input_label: String,
    input: TwoModeState,
    circuit: Circuit,
    fixture: Option<TwoModeState>,
}

fn splitter_pair(config: &ScenarioConfig, theta: f64) -> (SplitterParams, SplitterParams) {
    let p1 = SplitterParams::new(theta);
    let p2 = SplitterParams::new(config.theta2.unwrap_or(theta));
    (p1, p2)
}

fn mz_circuit(
    config: &ScenarioConfig,
    p1: SplitterParams,
    p2: SplitterParams,
    cutoff: FockCutoff,
) -> Circuit {
    match config.phi {
        Some(phi) => Circuit::mach_zehnder_with_phase(p1, p2, Mode::A, phi, cutoff),
        None => Circuit::mach_zehnder(p1, p2, cutoff),
    }
}

fn prepare_case(
    config: &ScenarioConfig,
    case: CaseId,
    theta: f64,
    cutoff: FockCutoff,
) -> Result<PreparedScenario, AppError> {
    let (p1, p2) = splitter_pair(config, theta);
    // a fixture exists only for the plain arrangement, without the extra
    // internal phase shifter
    let with_fixture = config.phi.is_none();
    let (input_label, input, circuit, fixture) = match case {
        CaseId::Case1SinglePhotonOneBs => (
            "|1,0>".to_string(),
            TwoModeState::fock(1, 0, cutoff)?,
            Circuit::new(cutoff, vec![CircuitElement::Splitter(p1)]),
            Some(oracle::case1(p1, cutoff)?),
        ),
        CaseId::Case2CoherentOneBs => (
            format!("|alpha={},0>", format_complex(config.alpha)),
            TwoModeState::coherent(&CoherentSpec::new(config.alpha), Mode::A, cutoff)?,
            Circuit::new(cutoff, vec![CircuitElement::Splitter(p1)]),
            Some(oracle::case2(p1, config.alpha, cutoff)?),
        ),
        CaseId::Case4SinglePhotonMz => (
            "|1,0>".to_string(),
            TwoModeState::fock(1, 0, cutoff)?,
            mz_circuit(config, p1, p2, cutoff),
            with_fixture
                .then(|| oracle::case4(p1, p2, cutoff))
                .transpose()?,
        ),
        CaseId::Case5TwoPhotonMz => (
            "|2,0>".to_string(),
            TwoModeState::fock(2, 0, cutoff)?,
            mz_circuit(config, p1, p2, cutoff),
            with_fixture
                .then(|| oracle::case5(p1, p2, cutoff))
                .transpose()?,
        ),
        CaseId::Case6OneOneMz => (
            "|1,1>".to_string(),
            TwoModeState::fock(1, 1, cutoff)?,
            mz_circuit(config, p1, p2, cutoff),
            with_fixture
                .then(|| oracle::case6(p1, p2, cutoff))
                .transpose()?,
        ),
        CaseId::Case7CoherentMz => (
            format!("|alpha={},0>", format_complex(config.alpha)),
            TwoModeState::coherent(&CoherentSpec::new(config.alpha), Mode::A, cutoff)?,
            mz_circuit(config, p1, p2, cutoff),
            with_fixture
                .then(|| oracle::case7(p1, p2, config.alpha, cutoff))
                .transpose()?,
        ),
        CaseId::Case8CatMz => {
            let spec = CatSpec::new(config.alpha, config.beta, config.sign);
            let (input, _) = TwoModeState::cat(&spec, Mode::A, cutoff)?;
            (
                format!(
                    "eta(|{}> {} |{}>)|0>",
                    format_complex(config.alpha),
                    match config.sign {
                        beamsplit::CatSign::Plus => "+",
                        beamsplit::CatSign::Minus => "-",
                    },
                    format_complex(config.beta)
                ),
                input,
                mz_circuit(config, p1, p2, cutoff),
                with_fixture
                    .then(|| oracle::case8(p1, p2, &spec, cutoff))
                    .transpose()?,
            )
        }
    };
    Ok(PreparedScenario {
        label: case.name().to_string(),
        input_label,
        input,
        circuit,
        fixture,
    })
}

fn prepare_custom(
    config: &ScenarioConfig,
    theta: f64,
    cutoff: FockCutoff,
) -> Result<PreparedScenario, AppError> {
    let _ = theta;
    let (input_label, input) = match &config.custom_input {
        None | Some(InputSpec::Fock { .. }) => {
            let (n, m) = match &config.custom_input {
                Some(InputSpec::Fock { n, m }) => (*n, *m),
                _ => (1, 0),
            };
            (format!("|{n},{m}>"), TwoModeState::fock(n, m, cutoff)?)
        }
        Some(InputSpec::Coherent { alpha, mode }) => (
            format!(
                "|alpha={}> in mode {}",
                format_complex(*alpha),
                mode.label()
            ),
            TwoModeState::coherent(&CoherentSpec::new(*alpha), *mode, cutoff)?,
        ),
        Some(InputSpec::Cat { mode }) => {
            let spec = CatSpec::new(config.alpha, config.beta, config.sign);
            let (state, _) = TwoModeState::cat(&spec, *mode, cutoff)?;
            (
                format!(
                    "eta(|{}> {} |{}>) in mode {}",
                    format_complex(config.alpha),
                    match config.sign {
                        beamsplit::CatSign::Plus => "+",
                        beamsplit::CatSign::Minus => "-",
                    },
                    format_complex(config.beta),
                    mode.label()
                ),
                state,
            )
        }
    };
    let elements = config
        .custom_elements
        .iter()
        .map(|e| match e {
            ElementSpec::Splitter { theta } => {
                CircuitElement::Splitter(SplitterParams::new(*theta))
            }
            ElementSpec::Phase { mode, phi } => CircuitElement::PhaseShift {
                mode: *mode,
                phi: *phi,
            },
            ElementSpec::Mirror => CircuitElement::Mirror,
        })
        .collect();
    Ok(PreparedScenario {
        label: "custom".to_string(),
        input_label,
        input,
        circuit: Circuit::new(cutoff, elements),
        fixture: None,
    })
}

fn prepare(
    config: &ScenarioConfig,
    theta: f64,
    cutoff: FockCutoff,
) -> Result<PreparedScenario, AppError> {
    match config.case {
        Some(case) => prepare_case(config, case, theta, cutoff),
        None => prepare_custom(config, theta, cutoff),
    }
}

/// Runs the scenario: a single report, or one sweep row per angle.
pub fn run_scenario(config: &ScenarioConfig) -> Result<ScenarioOutput, AppError> {
    let cutoff = FockCutoff::new(config.effective_cutoff())?;
    match &config.sweep {
        None => {
            let prepared = prepare(config, config.theta, cutoff)?;
            let output = run_circuit(&prepared.input, &prepared.circuit)?;
            Ok(ScenarioOutput::Single(Box::new(build_report(
                config, &prepared, &output, cutoff,
            )?)))
        }
        Some(sweep) => {
            let mut rows = Vec::with_capacity(sweep.steps);
            for theta in sweep.values() {
                let prepared = prepare(config, theta, cutoff)?;
                let output = run_circuit(&prepared.input, &prepared.circuit)?;
                let dist_a = detection_distribution(&output, Mode::A);
                let oracle_fidelity = prepared
                    .fixture
                    .as_ref()
                    .map(|f| fidelity(&output, f))
                    .transpose()?;
                rows.push(SweepRow {
                    theta,
                    p_a0: dist_a[0],
                    p_a1: dist_a.get(1).copied().unwrap_or(0.0),
                    mean_a: photon_stats(&output, Mode::A).mean,
                    mean_b: photon_stats(&output, Mode::B).mean,
                    entropy_bits: schmidt_decompose(&output).entropy_bits,
                    oracle_fidelity,
                });
            }
            Ok(ScenarioOutput::Sweep { rows })
        }
    }
}

fn build_report(
    config: &ScenarioConfig,
    prepared: &PreparedScenario,
    output: &TwoModeState,
    cutoff: FockCutoff,
) -> Result<ScenarioReport, AppError> {
    let mut amplitudes = Vec::new();
    for n in 0..cutoff.dim() {
        for m in 0..cutoff.dim() {
            let amp = output.amp(n, m);
            if amp.norm() > AMPLITUDE_FLOOR {
                amplitudes.push(AmplitudeEntry {
                    n,
                    m,
                    re: amp.re,
                    im: amp.im,
                });
            }
        }
    }

    let collect_distribution = |mode: Mode| {
        detection_distribution(output, mode)
            .iter()
            .enumerate()
            .filter(|(_, p)| **p > AMPLITUDE_FLOOR)
            .map(|(k, p)| CountProbability { k, p: *p })
            .collect::<Vec<_>>()
    };

    let stats = |mode: Mode| {
        let s = photon_stats(output, mode);
        ModeStats {
            mean: s.mean,
            variance: s.variance,
            mandel_q: s.mandel_q,
        }
    };

    let oracle_fidelity = prepared
        .fixture
        .as_ref()
        .map(|f| fidelity(output, f))
        .transpose()?;

    Ok(ScenarioReport {
        scenario: prepared.label.clone(),
        input: prepared.input_label.clone(),
        cutoff: cutoff.n_max(),
        theta: config.theta,
        theta2: config.theta2,
        phi: config.phi,
        amplitudes,
        detection_a: collect_distribution(Mode::A),
        detection_b: collect_distribution(Mode::B),
        stats_a: stats(Mode::A),
        stats_b: stats(Mode::B),
        entropy_bits: schmidt_decompose(output).entropy_bits,
        oracle_fidelity,
    })
}

pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}
