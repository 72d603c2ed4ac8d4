//! Two-mode Fock-space states under a photon-number cutoff.
//!
//! A [`TwoModeState`] stores the joint amplitude tensor `c[n][m]`, where `n`
//! counts photons in mode **a** and `m` photons in mode **b**, both truncated
//! at a configurable `n_max`. Constructors are provided for number states,
//! coherent states |α⟩ = D̂(α)|0⟩, and normalized superpositions of two
//! coherent states ("cat" states). Coherent constructors enforce a
//! truncation-tail bound so that downstream unitarity checks are not polluted
//! by lost probability mass.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use once_cell::sync::Lazy;

use crate::error::{Error, Result};

/// Largest supported per-mode photon number; `171!` overflows `f64`.
pub const MAX_CUTOFF: usize = 170;

/// `n!` for `n = 0..=MAX_CUTOFF`.
pub(crate) static FACTORIAL: Lazy<Vec<f64>> = Lazy::new(|| {
    let mut t = Vec::with_capacity(MAX_CUTOFF + 1);
    t.push(1.0);
    for n in 1..=MAX_CUTOFF {
        let prev = t[n - 1];
        t.push(prev * n as f64);
    }
    t
});

/// `sqrt(n!)` for `n = 0..=MAX_CUTOFF`.
pub(crate) static SQRT_FACTORIAL: Lazy<Vec<f64>> =
    Lazy::new(|| FACTORIAL.iter().map(|f| f.sqrt()).collect());

/// Maximum photon number kept per mode (inclusive).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FockCutoff {
    n_max: usize,
}

impl FockCutoff {
    /// Requires `1 <= n_max <= 170`.
    pub fn new(n_max: usize) -> Result<Self> {
        if !(1..=MAX_CUTOFF).contains(&n_max) {
            return Err(Error::InvalidCutoff(n_max));
        }
        Ok(Self { n_max })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Basis dimension per mode, `n_max + 1`.
    pub fn dim(&self) -> usize {
        self.n_max + 1
    }

    /// Joint basis dimension, `(n_max + 1)^2`.
    pub fn joint_dim(&self) -> usize {
        self.dim() * self.dim()
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index > self.n_max {
            Err(Error::CutoffExceeded {
                index,
                n_max: self.n_max,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_match(&self, other: FockCutoff) -> Result<()> {
        if self.n_max != other.n_max {
            Err(Error::CutoffMismatch {
                left: self.n_max,
                right: other.n_max,
            })
        } else {
            Ok(())
        }
    }
}

/// One of the two spatial modes of the arrangement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    A,
    B,
}

impl Mode {
    pub fn other(self) -> Mode {
        match self {
            Mode::A => Mode::B,
            Mode::B => Mode::A,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Mode::A => "a",
            Mode::B => "b",
        }
    }
}

/// Coherent-state parameters: amplitude and the largest probability mass that
/// may be lost above the cutoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentSpec {
    pub alpha: Complex64,
    pub truncation_tail: f64,
}

impl CoherentSpec {
    pub const DEFAULT_TAIL: f64 = 1e-12;

    pub fn new(alpha: Complex64) -> Self {
        Self {
            alpha,
            truncation_tail: Self::DEFAULT_TAIL,
        }
    }

    /// `truncation_tail` must lie strictly between 0 and 1.
    pub fn with_tail(alpha: Complex64, truncation_tail: f64) -> Self {
        assert!(
            truncation_tail > 0.0 && truncation_tail < 1.0,
            "truncation tail must lie in (0, 1)"
        );
        Self {
            alpha,
            truncation_tail,
        }
    }
}

/// Relative sign between the two coherent components of a cat state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatSign {
    Plus,
    Minus,
}

impl CatSign {
    pub fn factor(self) -> f64 {
        match self {
            CatSign::Plus => 1.0,
            CatSign::Minus => -1.0,
        }
    }
}

/// Parameters of a normalized superposition η(|α⟩ ± |β⟩).
///
/// `eta` is the reciprocal norm of the truncated unnormalized superposition;
/// it is `None` until filled in by [`TwoModeState::cat`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatSpec {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub sign: CatSign,
    pub truncation_tail: f64,
    pub eta: Option<f64>,
}

impl CatSpec {
    pub fn new(alpha: Complex64, beta: Complex64, sign: CatSign) -> Self {
        Self {
            alpha,
            beta,
            sign,
            truncation_tail: CoherentSpec::DEFAULT_TAIL,
            eta: None,
        }
    }
}

/// Smallest `n_max` such that the Poisson photon distribution of |α⟩ keeps at
/// least `1 - tail` of its mass at or below `n_max`, found by direct
/// summation of `e^{-|α|²} |α|^{2n} / n!`.
pub fn required_cutoff(alpha: Complex64, tail: f64) -> usize {
    let lambda = alpha.norm_sqr();
    if lambda == 0.0 {
        return 0;
    }
    let mut term = (-lambda).exp();
    let mut cumulative = term;
    let mut n = 0usize;
    while 1.0 - cumulative > tail && n < 100 * MAX_CUTOFF {
        n += 1;
        term *= lambda / n as f64;
        cumulative += term;
    }
    n
}

/// Unnormalized truncated coherent amplitudes `e^{-|α|²/2} αⁿ/√n!`.
pub fn coherent_amplitudes(alpha: Complex64, cutoff: FockCutoff) -> DVector<Complex64> {
    let dim = cutoff.dim();
    let mut column = DVector::zeros(dim);
    let gauss = (-alpha.norm_sqr() / 2.0).exp();
    let mut power = Complex64::new(gauss, 0.0);
    column[0] = power;
    for n in 1..dim {
        power *= alpha / (n as f64).sqrt();
        column[n] = power;
    }
    column
}

/// Joint amplitude tensor over the truncated two-mode Fock basis.
///
/// Immutable after construction; all engine operations return fresh states.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    cutoff: FockCutoff,
    amps: DMatrix<Complex64>,
}

impl TwoModeState {
    /// Number state |n⟩_a |m⟩_b.
    pub fn fock(n: usize, m: usize, cutoff: FockCutoff) -> Result<Self> {
        cutoff.check_index(n)?;
        cutoff.check_index(m)?;
        let mut amps = DMatrix::zeros(cutoff.dim(), cutoff.dim());
        amps[(n, m)] = Complex64::new(1.0, 0.0);
        Ok(Self { cutoff, amps })
    }

    /// Vacuum in both modes.
    pub fn vacuum(cutoff: FockCutoff) -> Self {
        Self::fock(0, 0, cutoff).expect("vacuum always fits")
    }

    /// Coherent state |α⟩ in the chosen mode, vacuum in the other,
    /// renormalized after truncation.
    pub fn coherent(spec: &CoherentSpec, mode: Mode, cutoff: FockCutoff) -> Result<Self> {
        let required = required_cutoff(spec.alpha, spec.truncation_tail);
        if required > cutoff.n_max() {
            return Err(Error::CutoffTooSmall {
                n_max: cutoff.n_max(),
                required,
            });
        }
        let column = coherent_amplitudes(spec.alpha, cutoff);
        Ok(Self::from_single_mode(&column, mode, cutoff)
            .normalize()
            .expect("coherent column has positive norm"))
    }

    /// Normalized superposition η(|α⟩ ± |β⟩) in the chosen mode, vacuum in
    /// the other. Returns the state together with the spec updated with the
    /// computed normalization factor η.
    pub fn cat(spec: &CatSpec, mode: Mode, cutoff: FockCutoff) -> Result<(Self, CatSpec)> {
        for component in [spec.alpha, spec.beta] {
            let required = required_cutoff(component, spec.truncation_tail);
            if required > cutoff.n_max() {
                return Err(Error::CutoffTooSmall {
                    n_max: cutoff.n_max(),
                    required,
                });
            }
        }
        let column = coherent_amplitudes(spec.alpha, cutoff)
            + coherent_amplitudes(spec.beta, cutoff) * Complex64::from(spec.sign.factor());
        let raw = Self::from_single_mode(&column, mode, cutoff);
        let eta = 1.0 / raw.norm();
        let state = raw.normalize()?;
        let mut updated = *spec;
        updated.eta = Some(eta);
        Ok((state, updated))
    }

    /// Embeds a single-mode column against vacuum in the other mode.
    fn from_single_mode(column: &DVector<Complex64>, mode: Mode, cutoff: FockCutoff) -> Self {
        let dim = cutoff.dim();
        let mut amps = DMatrix::zeros(dim, dim);
        for k in 0..dim {
            match mode {
                Mode::A => amps[(k, 0)] = column[k],
                Mode::B => amps[(0, k)] = column[k],
            }
        }
        Self { cutoff, amps }
    }

    /// Wraps a raw amplitude tensor. The tensor need not be normalized.
    pub fn from_matrix(cutoff: FockCutoff, amps: DMatrix<Complex64>) -> Result<Self> {
        if amps.nrows() != cutoff.dim() || amps.ncols() != cutoff.dim() {
            return Err(Error::CutoffMismatch {
                left: cutoff.n_max(),
                right: amps.nrows().max(amps.ncols()).saturating_sub(1),
            });
        }
        Ok(Self { cutoff, amps })
    }

    pub fn cutoff(&self) -> FockCutoff {
        self.cutoff
    }

    /// Amplitude of |n⟩_a |m⟩_b.
    pub fn amp(&self, n: usize, m: usize) -> Complex64 {
        self.amps[(n, m)]
    }

    pub fn amps(&self) -> &DMatrix<Complex64> {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ⟨x|y⟩ = Σ conj(x[n][m]) y[n][m].
    pub fn inner_product(&self, other: &Self) -> Result<Complex64> {
        self.cutoff.check_match(other.cutoff)?;
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(x, y)| x.conj() * y)
            .sum())
    }

    /// Rescales to unit norm by a positive real factor, leaving the global
    /// phase unchanged.
    pub fn normalize(&self) -> Result<Self> {
        let norm = self.norm();
        if norm == 0.0 {
            return Err(Error::ZeroState);
        }
        Ok(Self {
            cutoff: self.cutoff,
            amps: &self.amps * Complex64::from(1.0 / norm),
        })
    }

    /// Largest absolute amplitude difference against another state.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.cutoff.check_match(other.cutoff)?;
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max))
    }

    /// Marginal photon-number distribution of one mode.
    pub fn marginal(&self, mode: Mode) -> Vec<f64> {
        let dim = self.cutoff.dim();
        let mut probs = vec![0.0; dim];
        for n in 0..dim {
            for m in 0..dim {
                let p = self.amps[(n, m)].norm_sqr();
                match mode {
                    Mode::A => probs[n] += p,
                    Mode::B => probs[m] += p,
                }
            }
        }
        probs
    }

    /// Mean total photon number ⟨n̂_a + n̂_b⟩.
    pub fn mean_total_photons(&self) -> f64 {
        let dim = self.cutoff.dim();
        let mut total = 0.0;
        for n in 0..dim {
            for m in 0..dim {
                total += (n + m) as f64 * self.amps[(n, m)].norm_sqr();
            }
        }
        total
    }
}
