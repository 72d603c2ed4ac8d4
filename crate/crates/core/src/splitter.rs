//! Beam-splitter action on two-mode states, by two independent routes.
//!
//! The splitter is parameterized by a single mixing angle θ with transmission
//! `T = cos θ` and reflection `R = sin θ`; the reflected amplitude always
//! carries the phase `i`. The normative algebra is the conjugation rule
//!
//! ```text
//! Ŝ â† Ŝ† = T â† + iR b̂†        Ŝ b̂† Ŝ† = T b̂† + iR â†
//! ```
//!
//! [`apply_bs_analytic`] redistributes each basis amplitude through the
//! double binomial expansion of `(T â† + iR b̂†)ⁿ (T b̂† + iR â†)ᵐ |0,0⟩`,
//! while [`apply_bs_numeric`] exponentiates the generator `â b̂† + â† b̂`
//! block-by-block over total photon number. The two must agree to near
//! machine precision on states whose total photon number stays within the
//! cutoff; their agreement is part of the verification suite.

use nalgebra::DMatrix;
use num_complex::Complex64;
use once_cell::sync::Lazy;

use crate::fock::{FockCutoff, Mode, TwoModeState, FACTORIAL, SQRT_FACTORIAL};
use crate::ops::{bs_hamiltonian, ModeOperator, TwoModeOperator};

/// Mixing angle θ with derived transmission and reflection coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitterParams {
    theta: f64,
    t: f64,
    r: f64,
}

impl SplitterParams {
    pub fn new(theta: f64) -> Self {
        Self {
            theta,
            t: theta.cos(),
            r: theta.sin(),
        }
    }

    /// Balanced splitter, T = R = 1/√2.
    pub fn balanced() -> Self {
        Self::new(std::f64::consts::FRAC_PI_4)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// T = cos θ.
    pub fn transmission(&self) -> f64 {
        self.t
    }

    /// R = sin θ.
    pub fn reflection(&self) -> f64 {
        self.r
    }
}

/// 2×2 mode-scattering form of the splitter, `[[T, iR], [iR, T]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringMatrix {
    entries: [[Complex64; 2]; 2],
}

impl ScatteringMatrix {
    /// Forward map from input to output mode operators.
    pub fn forward(params: SplitterParams) -> Self {
        let t = Complex64::new(params.t, 0.0);
        let ir = Complex64::new(0.0, params.r);
        Self {
            entries: [[t, ir], [ir, t]],
        }
    }

    /// Inverse map, `[[T, -iR], [-iR, T]]`.
    pub fn inverse(params: SplitterParams) -> Self {
        let t = Complex64::new(params.t, 0.0);
        let ir = Complex64::new(0.0, -params.r);
        Self {
            entries: [[t, ir], [ir, t]],
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let mut entries = [[Complex64::ZERO; 2]; 2];
        for (r, row) in entries.iter_mut().enumerate() {
            for (c, e) in row.iter_mut().enumerate() {
                *e = self.entries[r][0] * other.entries[0][c]
                    + self.entries[r][1] * other.entries[1][c];
            }
        }
        Self { entries }
    }

    /// Largest entry deviation from the identity.
    pub fn deviation_from_identity(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                let expected = if r == c {
                    Complex64::ONE
                } else {
                    Complex64::ZERO
                };
                worst = worst.max((self.entries[r][c] - expected).norm());
            }
        }
        worst
    }

    /// Largest entry deviation of `M M†` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        let adjoint = Self {
            entries: [
                [self.entries[0][0].conj(), self.entries[1][0].conj()],
                [self.entries[0][1].conj(), self.entries[1][1].conj()],
            ],
        };
        self.multiply(&adjoint).deviation_from_identity()
    }
}

/// Sign `s` of the propagator exponent `exp(s·iθ(â b̂† + â† b̂))`, resolved
/// once by a startup self-test: the single-photon block is exponentiated for
/// both signs, and the sign kept is the one that sends |1,0⟩ to
/// `cos θ |1,0⟩ + i sin θ |0,1⟩`, i.e. reproduces the conjugation rule
/// `Ŝ â† Ŝ† = T â† + iR b̂†` with a `+i` reflected phase.
static BS_EXPONENT_SIGN: Lazy<f64> = Lazy::new(|| {
    let theta = 0.3f64;
    let block = Block {
        total: 1,
        lo: 0,
        hi: 1,
    };
    for sign in [1.0f64, -1.0] {
        // block basis is {|0,1⟩, |1,0⟩}; the |1,0⟩ → |0,1⟩ amplitude sits at (0, 1)
        let u = block_unitary_signed(&block, theta, sign);
        if (u[(0, 1)] - Complex64::new(0.0, theta.sin())).norm() < 1e-9 {
            return sign;
        }
    }
    unreachable!("one of the two exponent signs must reproduce the conjugation rule");
});

/// The resolved propagator exponent sign (see [`apply_bs_numeric`]).
pub fn exponent_sign() -> f64 {
    *BS_EXPONENT_SIGN
}

/// Indices of one total-photon-number block: states |n, N−n⟩ with
/// `lo ≤ n ≤ hi` inside the per-mode cutoff.
pub(crate) struct Block {
    pub total: usize,
    pub lo: usize,
    pub hi: usize,
}

impl Block {
    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }
}

pub(crate) fn blocks(cutoff: FockCutoff) -> impl Iterator<Item = Block> {
    let n_max = cutoff.n_max();
    (0..=2 * n_max).map(move |total| Block {
        total,
        lo: total.saturating_sub(n_max),
        hi: total.min(n_max),
    })
}

/// Real symmetric tridiagonal restriction of `â b̂† + â† b̂` to one block:
/// coupling √((n+1)(N−n)) between |n, N−n⟩ and |n+1, N−n−1⟩.
fn block_generator(block: &Block) -> DMatrix<f64> {
    let len = block.len();
    let mut g = DMatrix::zeros(len, len);
    for j in 0..len.saturating_sub(1) {
        let n = block.lo + j;
        let coupling = ((n + 1) as f64 * (block.total - n) as f64).sqrt();
        g[(j + 1, j)] = coupling;
        g[(j, j + 1)] = coupling;
    }
    g
}

struct BlockEigen {
    values: Vec<f64>,
    vectors: DMatrix<f64>,
}

type BlockKey = (usize, usize, usize);
type BlockEigenCache = std::collections::HashMap<BlockKey, std::sync::Arc<BlockEigen>>;

/// Block eigendecompositions depend only on (total, lo, hi), never on θ, so
/// they are memoized across applications and sweep points.
static BLOCK_EIGEN_CACHE: Lazy<std::sync::Mutex<BlockEigenCache>> =
    Lazy::new(|| std::sync::Mutex::new(BlockEigenCache::new()));

fn block_eigen(block: &Block) -> std::sync::Arc<BlockEigen> {
    let key = (block.total, block.lo, block.hi);
    let mut cache = BLOCK_EIGEN_CACHE.lock().expect("eigen cache lock");
    cache
        .entry(key)
        .or_insert_with(|| {
            let eigen = nalgebra::SymmetricEigen::new(block_generator(block));
            std::sync::Arc::new(BlockEigen {
                values: eigen.eigenvalues.iter().copied().collect(),
                vectors: eigen.eigenvectors,
            })
        })
        .clone()
}

fn block_unitary(block: &Block, theta: f64) -> DMatrix<Complex64> {
    block_unitary_signed(block, theta, exponent_sign())
}

/// Applies the splitter by block-wise exponentiation of the generator.
///
/// Each fixed total-photon-number block is a real symmetric tridiagonal
/// matrix; the propagator `exp(s·iθ·G)` is assembled from its
/// eigendecomposition, with the exponent sign `s` fixed by the startup
/// self-test (see [`exponent_sign`]). Blocks whose total photon number
/// exceeds `n_max` are truncated but still evolve unitarily, so the norm is
/// always preserved; keep coherent tails controlled when such blocks carry
/// weight.
pub fn apply_bs_numeric(state: &TwoModeState, params: SplitterParams) -> TwoModeState {
    let cutoff = state.cutoff();
    let dim = cutoff.dim();
    let mut out = DMatrix::zeros(dim, dim);
    for block in blocks(cutoff) {
        let u = block_unitary(&block, params.theta);
        let len = block.len();
        for row in 0..len {
            let n_out = block.lo + row;
            let m_out = block.total - n_out;
            let mut sum = Complex64::ZERO;
            for col in 0..len {
                let n_in = block.lo + col;
                sum += u[(row, col)] * state.amp(n_in, block.total - n_in);
            }
            out[(n_out, m_out)] = sum;
        }
    }
    TwoModeState::from_matrix(cutoff, out).expect("dimensions preserved")
}

/// Applies the splitter by the closed-form double binomial expansion.
///
/// Each input basis amplitude `c[n][m]` is redistributed over its total-N
/// block with weights built from `√(n! m!)`, binomial coefficients, and
/// powers of `T` and `iR`. Binomials are taken from double-precision
/// factorial tables (capped at 170!); for nearly balanced blocks with very
/// large `n ≈ m` the alternating sums lose accuracy, so desk-scale cutoffs
/// are the intended domain. Amplitudes that would land above the per-mode
/// cutoff (possible only when `n + m > n_max`) are dropped.
pub fn apply_bs_analytic(state: &TwoModeState, params: SplitterParams) -> TwoModeState {
    let cutoff = state.cutoff();
    let dim = cutoff.dim();
    let n_max = cutoff.n_max();

    // powers of T and iR up to the largest exponent 2·n_max
    let mut t_pow = vec![1.0f64; 2 * n_max + 1];
    for k in 1..t_pow.len() {
        t_pow[k] = t_pow[k - 1] * params.t;
    }
    let ir = Complex64::new(0.0, params.r);
    let mut ir_pow = vec![Complex64::ONE; 2 * n_max + 1];
    for k in 1..ir_pow.len() {
        ir_pow[k] = ir_pow[k - 1] * ir;
    }

    let mut out = DMatrix::zeros(dim, dim);
    for n in 0..dim {
        for m in 0..dim {
            let c = state.amp(n, m);
            if c == Complex64::ZERO {
                continue;
            }
            let prefactor = c / Complex64::from(SQRT_FACTORIAL[n] * SQRT_FACTORIAL[m]);
            for p in 0..=n {
                let choose_n = binomial_f(n, p);
                for q in 0..=m {
                    let j = p + m - q;
                    let k = n - p + q;
                    if j > n_max || k > n_max {
                        continue;
                    }
                    let weight = choose_n
                        * binomial_f(m, q)
                        * t_pow[p + q]
                        * SQRT_FACTORIAL[j]
                        * SQRT_FACTORIAL[k];
                    out[(j, k)] += prefactor * ir_pow[(n - p) + (m - q)] * Complex64::from(weight);
                }
            }
        }
    }
    TwoModeState::from_matrix(cutoff, out).expect("dimensions preserved")
}

fn binomial_f(n: usize, k: usize) -> f64 {
    FACTORIAL[n] / (FACTORIAL[k] * FACTORIAL[n - k])
}

/// Dense joint propagator, assembled from the block unitaries.
pub(crate) fn bs_unitary_matrix(
    params: SplitterParams,
    cutoff: FockCutoff,
    sign: f64,
) -> DMatrix<Complex64> {
    let dim = cutoff.dim();
    let joint = cutoff.joint_dim();
    let mut u = DMatrix::zeros(joint, joint);
    for block in blocks(cutoff) {
        let ub = block_unitary_signed(&block, params.theta, sign);
        let len = block.len();
        for row in 0..len {
            let n_out = block.lo + row;
            let m_out = block.total - n_out;
            for col in 0..len {
                let n_in = block.lo + col;
                let m_in = block.total - n_in;
                u[(n_out * dim + m_out, n_in * dim + m_in)] = ub[(row, col)];
            }
        }
    }
    u
}

fn block_unitary_signed(block: &Block, theta: f64, sign: f64) -> DMatrix<Complex64> {
    let eigen = block_eigen(block);
    let len = block.len();
    let mut u = DMatrix::zeros(len, len);
    for k in 0..len {
        let phase = Complex64::from_polar(1.0, sign * theta * eigen.values[k]);
        let vk = eigen.vectors.column(k);
        for col in 0..len {
            let weighted = phase * vk[col];
            for row in 0..len {
                u[(row, col)] += weighted * vk[row];
            }
        }
    }
    u
}

/// The splitter propagator as a dense two-mode operator.
pub fn bs_unitary(params: SplitterParams, cutoff: FockCutoff) -> TwoModeOperator {
    TwoModeOperator::from_matrix(cutoff, bs_unitary_matrix(params, cutoff, exponent_sign()))
}

/// Conjugates the creation operator of one mode by the splitter propagator,
/// `Ŝ (creation) Ŝ†`, through explicit matrix products.
///
/// On the sub-space unaffected by truncation this equals
/// `T·(creation on the same mode) + iR·(creation on the other mode)`.
pub fn heisenberg_conjugate_creation(
    params: SplitterParams,
    mode: Mode,
    cutoff: FockCutoff,
) -> TwoModeOperator {
    heisenberg_conjugate_creation_signed(params, mode, cutoff, exponent_sign())
}

/// Sign-parameterized variant of [`heisenberg_conjugate_creation`]; lets the
/// verification suite demonstrate that the flipped exponent sign violates
/// the conjugation rule.
pub fn heisenberg_conjugate_creation_signed(
    params: SplitterParams,
    mode: Mode,
    cutoff: FockCutoff,
    sign: f64,
) -> TwoModeOperator {
    let u = bs_unitary_matrix(params, cutoff, sign);
    let creation = ModeOperator::creation(cutoff).embed(mode);
    let conjugated = &u * creation.matrix() * u.adjoint();
    TwoModeOperator::from_matrix(cutoff, conjugated)
}

/// Expected conjugation image `T·(creation on mode) + iR·(creation on the
/// other mode)`.
pub fn heisenberg_expected(
    params: SplitterParams,
    mode: Mode,
    cutoff: FockCutoff,
) -> TwoModeOperator {
    let same = ModeOperator::creation(cutoff).embed(mode);
    let other = ModeOperator::creation(cutoff).embed(mode.other());
    same.scale(Complex64::new(params.t, 0.0))
        .add(&other.scale(Complex64::new(0.0, params.r)))
}

/// Compares the order-truncated commutator series for `Ŝ â† Ŝ†`,
///
/// ```text
/// Σ_{k=0}^{order} (iθ)^k/k! · ad_G^k(â†),   ad_G(X) = G·X − X·G,
/// ```
///
/// against the exact conjugation by matrix products, and returns the largest
/// entry deviation on the sub-space unaffected by truncation (rows and
/// columns with `n + m ≤ n_max`). The commutator cascade alternates between
/// the two creation operators, so the deviation decays factorially with the
/// order.
///
/// The cascade runs in floating point: rounding picked up at low orders is
/// amplified by repeated commutators roughly like `(2 n_max)^order` while
/// the series weights decay like `θ^order/order!`, so small cutoffs give the
/// cleanest convergence floor (about 1e-10 at `n_max = 6`, order 20).
pub fn bch_series_check(params: SplitterParams, order: usize, cutoff: FockCutoff) -> f64 {
    assert!(order >= 1, "series order must be at least 1");
    let g = bs_hamiltonian(cutoff);
    let creation = ModeOperator::creation(cutoff).embed(Mode::A);

    let mut term = creation.matrix().clone();
    let mut series = term.clone();
    let mut coefficient = Complex64::ONE;
    for k in 1..=order {
        term = g.matrix() * &term - &term * g.matrix();
        coefficient *=
            Complex64::new(0.0, exponent_sign() * params.theta) / Complex64::from(k as f64);
        series += &term * coefficient;
    }

    let exact = heisenberg_conjugate_creation(params, Mode::A, cutoff);
    TwoModeOperator::from_matrix(cutoff, series).max_abs_diff_interior(&exact)
}

/// Composes the forward scattering matrix with its inverse and returns the
/// largest deviation from the identity.
pub fn scattering_roundtrip(params: SplitterParams) -> f64 {
    ScatteringMatrix::forward(params)
        .multiply(&ScatteringMatrix::inverse(params))
        .deviation_from_identity()
}
