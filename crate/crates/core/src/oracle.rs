//! Closed-form output states for the worked interferometer cases.
//!
//! Each constructor builds the output state directly from its printed
//! amplitude formula — including every `i` and `−` phase, with no
//! canonicalization — so the numeric engine can be checked both by fidelity
//! and by direct amplitude comparison. The generic single-splitter expansion
//! is not a fixture here; it *is* the engine
//! ([`crate::splitter::apply_bs_analytic`]).
//!
//! Case naming: a single splitter acts on one photon (case 1) or a coherent
//! state (case 2); the Mach-Zehnder pair acts on |1,0⟩ (case 4), |2,0⟩
//! (case 5), |1,1⟩ (case 6), a coherent state (case 7), and a superposition
//! of two coherent states (case 8). Equal splitter angles θ₁ = θ₂ = θ make
//! the pair behave like a single splitter of angle 2θ.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{coherent_amplitudes, required_cutoff, CatSpec, FockCutoff, TwoModeState};
use crate::splitter::SplitterParams;

/// Identifier for each closed-form case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseId {
    /// |1,0⟩ through one splitter: T|1,0⟩ + iR|0,1⟩.
    Case1SinglePhotonOneBs,
    /// |α⟩|0⟩ through one splitter: |Tα⟩|iRα⟩.
    Case2CoherentOneBs,
    /// |1,0⟩ through the splitter pair.
    Case4SinglePhotonMz,
    /// |2,0⟩ through the splitter pair.
    Case5TwoPhotonMz,
    /// |1,1⟩ through the splitter pair.
    Case6OneOneMz,
    /// |α⟩|0⟩ through the splitter pair.
    Case7CoherentMz,
    /// η(|α⟩ ± |β⟩)|0⟩ through the splitter pair.
    Case8CatMz,
}

impl CaseId {
    pub const ALL: [CaseId; 7] = [
        CaseId::Case1SinglePhotonOneBs,
        CaseId::Case2CoherentOneBs,
        CaseId::Case4SinglePhotonMz,
        CaseId::Case5TwoPhotonMz,
        CaseId::Case6OneOneMz,
        CaseId::Case7CoherentMz,
        CaseId::Case8CatMz,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CaseId::Case1SinglePhotonOneBs => "case1",
            CaseId::Case2CoherentOneBs => "case2",
            CaseId::Case4SinglePhotonMz => "case4",
            CaseId::Case5TwoPhotonMz => "case5",
            CaseId::Case6OneOneMz => "case6",
            CaseId::Case7CoherentMz => "case7",
            CaseId::Case8CatMz => "case8",
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            CaseId::Case1SinglePhotonOneBs => "single photon |1,0> through one beam splitter",
            CaseId::Case2CoherentOneBs => "coherent state |alpha,0> through one beam splitter",
            CaseId::Case4SinglePhotonMz => "single photon |1,0> through the Mach-Zehnder pair",
            CaseId::Case5TwoPhotonMz => "photon pair |2,0> through the Mach-Zehnder pair",
            CaseId::Case6OneOneMz => "coincident photons |1,1> through the Mach-Zehnder pair",
            CaseId::Case7CoherentMz => "coherent state |alpha,0> through the Mach-Zehnder pair",
            CaseId::Case8CatMz => {
                "coherent superposition eta(|alpha> +/- |beta>)|0> through the Mach-Zehnder pair"
            }
        }
    }

    pub fn parse(name: &str) -> Option<CaseId> {
        CaseId::ALL.iter().copied().find(|c| c.name() == name)
    }

    /// Whether the case runs two splitters (a Mach-Zehnder) or one.
    pub fn is_mach_zehnder(&self) -> bool {
        !matches!(
            self,
            CaseId::Case1SinglePhotonOneBs | CaseId::Case2CoherentOneBs
        )
    }
}

fn state_from_entries(
    cutoff: FockCutoff,
    entries: &[(usize, usize, Complex64)],
) -> Result<TwoModeState> {
    let dim = cutoff.dim();
    let mut amps = DMatrix::zeros(dim, dim);
    for &(n, m, amplitude) in entries {
        cutoff.check_index(n)?;
        cutoff.check_index(m)?;
        amps[(n, m)] = amplitude;
    }
    TwoModeState::from_matrix(cutoff, amps)
}

/// Single splitter on |1,0⟩: `T|1,0⟩ + iR|0,1⟩`.
pub fn case1(params: SplitterParams, cutoff: FockCutoff) -> Result<TwoModeState> {
    let t = params.transmission();
    let r = params.reflection();
    state_from_entries(
        cutoff,
        &[
            (1, 0, Complex64::new(t, 0.0)),
            (0, 1, Complex64::new(0.0, r)),
        ],
    )
}

/// Single splitter on |α⟩|0⟩: the coherent product `|Tα⟩|iRα⟩`.
pub fn case2(params: SplitterParams, alpha: Complex64, cutoff: FockCutoff) -> Result<TwoModeState> {
    coherent_product(
        alpha * params.transmission(),
        alpha * Complex64::new(0.0, params.reflection()),
        alpha,
        cutoff,
    )
}

/// Splitter pair on |1,0⟩:
/// `(T₁T₂ − R₁R₂)|1,0⟩ + i(R₁T₂ + R₂T₁)|0,1⟩`.
pub fn case4(p1: SplitterParams, p2: SplitterParams, cutoff: FockCutoff) -> Result<TwoModeState> {
    let (t1, r1) = (p1.transmission(), p1.reflection());
    let (t2, r2) = (p2.transmission(), p2.reflection());
    state_from_entries(
        cutoff,
        &[
            (1, 0, Complex64::new(t1 * t2 - r1 * r2, 0.0)),
            (0, 1, Complex64::new(0.0, r1 * t2 + r2 * t1)),
        ],
    )
}

/// Splitter pair on |2,0⟩:
/// `(T₁T₂−R₁R₂)²|2,0⟩ − (T₁R₂+T₂R₁)²|0,2⟩ + i√2(T₁²T₂R₂ + T₁T₂²R₁ − T₁R₁R₂² − R₁²R₂T₂)|1,1⟩`.
pub fn case5(p1: SplitterParams, p2: SplitterParams, cutoff: FockCutoff) -> Result<TwoModeState> {
    let (t1, r1) = (p1.transmission(), p1.reflection());
    let (t2, r2) = (p2.transmission(), p2.reflection());
    let quartic = t1 * t1 * t2 * r2 + t1 * t2 * t2 * r1 - t1 * r1 * r2 * r2 - r1 * r1 * r2 * t2;
    state_from_entries(
        cutoff,
        &[
            (2, 0, Complex64::new((t1 * t2 - r1 * r2).powi(2), 0.0)),
            (0, 2, Complex64::new(-(t1 * r2 + t2 * r1).powi(2), 0.0)),
            (1, 1, Complex64::new(0.0, 2.0f64.sqrt() * quartic)),
        ],
    )
}

/// Splitter pair on |1,1⟩:
/// `[(T₁T₂−R₁R₂)² − (T₁R₂+T₂R₁)²]|1,1⟩ + i√2(T₁²T₂R₂ + T₁T₂²R₁ − T₁R₁R₂² − R₁²R₂T₂)(|2,0⟩ + |0,2⟩)`.
pub fn case6(p1: SplitterParams, p2: SplitterParams, cutoff: FockCutoff) -> Result<TwoModeState> {
    let (t1, r1) = (p1.transmission(), p1.reflection());
    let (t2, r2) = (p2.transmission(), p2.reflection());
    let quartic = t1 * t1 * t2 * r2 + t1 * t2 * t2 * r1 - t1 * r1 * r2 * r2 - r1 * r1 * r2 * t2;
    let coincidence = (t1 * t2 - r1 * r2).powi(2) - (t1 * r2 + t2 * r1).powi(2);
    let bunched = Complex64::new(0.0, 2.0f64.sqrt() * quartic);
    state_from_entries(
        cutoff,
        &[
            (1, 1, Complex64::new(coincidence, 0.0)),
            (2, 0, bunched),
            (0, 2, bunched),
        ],
    )
}

/// Splitter pair on |α⟩|0⟩: the coherent product
/// `|(T₁T₂−R₁R₂)α⟩ |(T₁R₂+R₁T₂)iα⟩`.
pub fn case7(
    p1: SplitterParams,
    p2: SplitterParams,
    alpha: Complex64,
    cutoff: FockCutoff,
) -> Result<TwoModeState> {
    let (alpha_a, alpha_b) = mz_coherent_outputs(p1, p2, alpha);
    coherent_product(alpha_a, alpha_b, alpha, cutoff)
}

/// Splitter pair on η(|α⟩ ± |β⟩)|0⟩: the normalized superposition of the two
/// coherent products from [`case7`],
/// `η(|(T₁T₂−R₁R₂)α⟩|(T₁R₂+R₁T₂)iα⟩ ± |(T₁T₂−R₁R₂)β⟩|(T₁R₂+R₁T₂)iβ⟩)`.
pub fn case8(
    p1: SplitterParams,
    p2: SplitterParams,
    cat: &CatSpec,
    cutoff: FockCutoff,
) -> Result<TwoModeState> {
    for component in [cat.alpha, cat.beta] {
        let required = required_cutoff(component, cat.truncation_tail);
        if required > cutoff.n_max() {
            return Err(Error::CutoffTooSmall {
                n_max: cutoff.n_max(),
                required,
            });
        }
    }
    let (a1, b1) = mz_coherent_outputs(p1, p2, cat.alpha);
    let (a2, b2) = mz_coherent_outputs(p1, p2, cat.beta);
    let dim = cutoff.dim();
    let col_a1 = coherent_amplitudes(a1, cutoff);
    let col_b1 = coherent_amplitudes(b1, cutoff);
    let col_a2 = coherent_amplitudes(a2, cutoff);
    let col_b2 = coherent_amplitudes(b2, cutoff);
    let sign = Complex64::from(cat.sign.factor());
    let mut amps = DMatrix::zeros(dim, dim);
    for n in 0..dim {
        for m in 0..dim {
            amps[(n, m)] = col_a1[n] * col_b1[m] + sign * col_a2[n] * col_b2[m];
        }
    }
    TwoModeState::from_matrix(cutoff, amps)?.normalize()
}

/// Coherent amplitudes emerging from the splitter pair for input α in mode a.
fn mz_coherent_outputs(
    p1: SplitterParams,
    p2: SplitterParams,
    alpha: Complex64,
) -> (Complex64, Complex64) {
    let (t1, r1) = (p1.transmission(), p1.reflection());
    let (t2, r2) = (p2.transmission(), p2.reflection());
    let alpha_a = alpha * (t1 * t2 - r1 * r2);
    let alpha_b = alpha * Complex64::new(0.0, t1 * r2 + r1 * t2);
    (alpha_a, alpha_b)
}

fn coherent_product(
    alpha_a: Complex64,
    alpha_b: Complex64,
    input_alpha: Complex64,
    cutoff: FockCutoff,
) -> Result<TwoModeState> {
    let required = required_cutoff(input_alpha, crate::fock::CoherentSpec::DEFAULT_TAIL);
    if required > cutoff.n_max() {
        return Err(Error::CutoffTooSmall {
            n_max: cutoff.n_max(),
            required,
        });
    }
    let dim = cutoff.dim();
    let col_a = coherent_amplitudes(alpha_a, cutoff);
    let col_b = coherent_amplitudes(alpha_b, cutoff);
    let mut amps = DMatrix::zeros(dim, dim);
    for n in 0..dim {
        for m in 0..dim {
            amps[(n, m)] = col_a[n] * col_b[m];
        }
    }
    TwoModeState::from_matrix(cutoff, amps)?.normalize()
}
