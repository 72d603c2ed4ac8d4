//! Circuit composition, projective photon detection, and heralding.
//!
//! A [`Circuit`] is an ordered list of splitters, phase shifters, and
//! mirrors. Mirrors route the internal beams and act as the identity
//! transform (any fixed mirror phase is absorbable into the splitter angle
//! convention). Detectors are ideal photon-number-resolving projectors:
//! [`measure_mode`] projects one mode onto a count and returns the outcome
//! probability together with the conditional state of the other mode.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{FockCutoff, Mode, TwoModeState};
use crate::splitter::{apply_bs_numeric, SplitterParams};

/// Outcomes with probability below this are treated as impossible rather
/// than renormalized, to avoid amplifying numerical noise.
pub const POST_SELECTION_EPSILON: f64 = 1e-15;

/// One element of an interferometer pipeline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircuitElement {
    Splitter(SplitterParams),
    PhaseShift {
        mode: Mode,
        phi: f64,
    },
    /// Identity routing.
    Mirror,
}

/// Ordered pipeline of circuit elements over a fixed cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub elements: Vec<CircuitElement>,
    pub cutoff: FockCutoff,
}

impl Circuit {
    pub fn new(cutoff: FockCutoff, elements: Vec<CircuitElement>) -> Self {
        Self { elements, cutoff }
    }

    /// Two splitters with mirrors routing the internal modes.
    pub fn mach_zehnder(p1: SplitterParams, p2: SplitterParams, cutoff: FockCutoff) -> Self {
        Self::new(
            cutoff,
            vec![
                CircuitElement::Splitter(p1),
                CircuitElement::Mirror,
                CircuitElement::Mirror,
                CircuitElement::Splitter(p2),
            ],
        )
    }

    /// Mach-Zehnder with a phase shifter on one internal arm.
    pub fn mach_zehnder_with_phase(
        p1: SplitterParams,
        p2: SplitterParams,
        mode: Mode,
        phi: f64,
        cutoff: FockCutoff,
    ) -> Self {
        Self::new(
            cutoff,
            vec![
                CircuitElement::Splitter(p1),
                CircuitElement::Mirror,
                CircuitElement::PhaseShift { mode, phi },
                CircuitElement::Mirror,
                CircuitElement::Splitter(p2),
            ],
        )
    }
}

/// Applies `e^{i n φ}` per photon count on the chosen mode.
fn apply_phase(state: &TwoModeState, mode: Mode, phi: f64) -> TwoModeState {
    let dim = state.cutoff().dim();
    let mut amps = DMatrix::zeros(dim, dim);
    for n in 0..dim {
        for m in 0..dim {
            let count = match mode {
                Mode::A => n,
                Mode::B => m,
            };
            amps[(n, m)] = state.amp(n, m) * Complex64::from_polar(1.0, count as f64 * phi);
        }
    }
    TwoModeState::from_matrix(state.cutoff(), amps).expect("dimensions preserved")
}

/// Sequentially applies all elements of the circuit to the input state.
pub fn run_circuit(input: &TwoModeState, circuit: &Circuit) -> Result<TwoModeState> {
    input.cutoff().check_match(circuit.cutoff)?;
    let mut state = input.clone();
    for element in &circuit.elements {
        state = match element {
            CircuitElement::Splitter(params) => apply_bs_numeric(&state, *params),
            CircuitElement::PhaseShift { mode, phi } => apply_phase(&state, *mode, *phi),
            CircuitElement::Mirror => state,
        };
    }
    Ok(state)
}

/// Result of projecting one mode onto a photon count.
///
/// `conditional` keeps the two-mode embedding with the measured mode
/// collapsed to |k⟩; it is `None` when the outcome probability falls below
/// [`POST_SELECTION_EPSILON`].
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord {
    pub mode: Mode,
    pub outcome: usize,
    pub probability: f64,
    pub conditional: Option<TwoModeState>,
}

impl MeasurementRecord {
    pub fn is_possible(&self) -> bool {
        self.conditional.is_some()
    }
}

/// Projects `mode` onto the photon count `outcome`.
pub fn measure_mode(state: &TwoModeState, mode: Mode, outcome: usize) -> Result<MeasurementRecord> {
    let cutoff = state.cutoff();
    cutoff.check_index(outcome)?;
    let dim = cutoff.dim();

    let mut probability = 0.0;
    for k in 0..dim {
        let amp = match mode {
            Mode::A => state.amp(outcome, k),
            Mode::B => state.amp(k, outcome),
        };
        probability += amp.norm_sqr();
    }

    if probability < POST_SELECTION_EPSILON {
        return Ok(MeasurementRecord {
            mode,
            outcome,
            probability,
            conditional: None,
        });
    }

    let scale = Complex64::from(1.0 / probability.sqrt());
    let mut amps = DMatrix::zeros(dim, dim);
    for k in 0..dim {
        match mode {
            Mode::A => amps[(outcome, k)] = state.amp(outcome, k) * scale,
            Mode::B => amps[(k, outcome)] = state.amp(k, outcome) * scale,
        }
    }
    Ok(MeasurementRecord {
        mode,
        outcome,
        probability,
        conditional: Some(TwoModeState::from_matrix(cutoff, amps)?),
    })
}

/// Marginal photon-count distribution of one mode; index is the count.
pub fn detection_distribution(state: &TwoModeState, mode: Mode) -> Vec<f64> {
    state.marginal(mode)
}

/// Result of the heralded photon-number ladder.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderOutcome {
    /// Final heralded state (vacuum in mode a, the climbed number state in
    /// mode b); `None` when some stage post-selected an impossible outcome.
    pub heralded: Option<TwoModeState>,
    /// Heralding probability of each stage.
    pub stage_probabilities: Vec<f64>,
    /// Product of the per-stage heralding probabilities.
    pub success_probability: f64,
}

/// Iterated heralded Fock-state growth.
///
/// Each stage feeds a fresh single photon into mode a alongside the current
/// mode-b state, runs an equal-angle splitter pair, and post-selects vacuum
/// on mode a. Starting from |1⟩ in mode b, a successful stage climbs the
/// mode-b number state by one; the cumulative success probability is the
/// product of the per-stage heralding probabilities (at θ = π/8 each stage
/// heralds with probability at most 1/2).
pub fn fock_ladder_protocol(
    n_stages: usize,
    theta: f64,
    cutoff: FockCutoff,
) -> Result<LadderOutcome> {
    assert!(n_stages >= 1, "protocol needs at least one stage");
    let reachable = n_stages + 1;
    if reachable > cutoff.n_max() {
        return Err(Error::CutoffTooSmall {
            n_max: cutoff.n_max(),
            required: reachable,
        });
    }

    let params = SplitterParams::new(theta);
    let circuit = Circuit::mach_zehnder(params, params, cutoff);
    let dim = cutoff.dim();

    // current mode-b column, starting from |1⟩
    let mut column = vec![Complex64::ZERO; dim];
    column[1] = Complex64::ONE;

    let mut stage_probabilities = Vec::with_capacity(n_stages);
    let mut success_probability = 1.0;

    for _ in 0..n_stages {
        let mut amps = DMatrix::zeros(dim, dim);
        for (m, c) in column.iter().enumerate() {
            amps[(1, m)] = *c;
        }
        let input = TwoModeState::from_matrix(cutoff, amps)?;
        let output = run_circuit(&input, &circuit)?;
        let record = measure_mode(&output, Mode::A, 0)?;
        stage_probabilities.push(record.probability);
        success_probability *= record.probability;
        match record.conditional {
            Some(state) => {
                for (m, c) in column.iter_mut().enumerate() {
                    *c = state.amp(0, m);
                }
            }
            None => {
                return Ok(LadderOutcome {
                    heralded: None,
                    stage_probabilities,
                    success_probability: 0.0,
                });
            }
        }
    }

    let mut amps = DMatrix::zeros(dim, dim);
    for (m, c) in column.iter().enumerate() {
        amps[(0, m)] = *c;
    }
    Ok(LadderOutcome {
        heralded: Some(TwoModeState::from_matrix(cutoff, amps)?),
        stage_probabilities,
        success_probability,
    })
}
