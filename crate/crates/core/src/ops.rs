//! Dense matrix representations of mode operators on the truncated basis.
//!
//! Single-mode operators ([`ModeOperator`]) act on one `(n_max+1)`-dimensional
//! mode; two-mode operators ([`TwoModeOperator`]) act on the joint basis with
//! row/column index `n·(n_max+1) + m`. The beam-splitter generator
//! `â b̂† + â† b̂` commutes with total photon number, so its joint matrix is
//! block-diagonal over the subspaces of fixed `N = n + m`.
//!
//! Truncation breaks the ladder algebra only at the top of the basis:
//! `[â, â†] = 1` holds on the sub-block `n < n_max`, and operators that can
//! raise photon numbers past the cutoff (creation, displacement) are guarded
//! by tail checks where a guarantee is needed.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{required_cutoff, FockCutoff, Mode, TwoModeState};

fn cplx(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Dense operator on a single truncated mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeOperator {
    cutoff: FockCutoff,
    matrix: DMatrix<Complex64>,
    label: String,
}

impl ModeOperator {
    fn new(cutoff: FockCutoff, matrix: DMatrix<Complex64>, label: impl Into<String>) -> Self {
        Self {
            cutoff,
            matrix,
            label: label.into(),
        }
    }

    /// Creation operator: entry `(n+1, n) = √(n+1)` for `n < n_max`.
    pub fn creation(cutoff: FockCutoff) -> Self {
        let dim = cutoff.dim();
        let mut m = DMatrix::zeros(dim, dim);
        for n in 0..cutoff.n_max() {
            m[(n + 1, n)] = cplx(((n + 1) as f64).sqrt());
        }
        Self::new(cutoff, m, "creation")
    }

    /// Annihilation operator, the adjoint of [`Self::creation`].
    pub fn annihilation(cutoff: FockCutoff) -> Self {
        let creation = Self::creation(cutoff);
        Self::new(cutoff, creation.matrix.adjoint(), "annihilation")
    }

    /// Identity on one mode.
    pub fn identity(cutoff: FockCutoff) -> Self {
        Self::new(
            cutoff,
            DMatrix::identity(cutoff.dim(), cutoff.dim()),
            "identity",
        )
    }

    /// Phase shifter: diagonal `e^{i n φ}`.
    pub fn phase(phi: f64, cutoff: FockCutoff) -> Self {
        let dim = cutoff.dim();
        let mut m = DMatrix::zeros(dim, dim);
        for n in 0..dim {
            m[(n, n)] = Complex64::from_polar(1.0, n as f64 * phi);
        }
        Self::new(cutoff, m, format!("phase({phi})"))
    }

    /// Displacement D̂(α) = exp(α â† − α* â), built by exponentiating the
    /// (anti-Hermitian) generator through an eigendecomposition.
    ///
    /// Errors with the required `n_max` when the cutoff cannot keep the
    /// column-0 tail below 1e-10.
    pub fn displacement(alpha: Complex64, cutoff: FockCutoff) -> Result<Self> {
        let required = required_cutoff(alpha, 1e-10);
        if required > cutoff.n_max() {
            return Err(Error::CutoffTooSmall {
                n_max: cutoff.n_max(),
                required,
            });
        }
        let dim = cutoff.dim();
        // Hermitian H = -i(α a† - α* a), so that D = exp(iH).
        let mut h = DMatrix::zeros(dim, dim);
        for n in 0..cutoff.n_max() {
            let root = ((n + 1) as f64).sqrt();
            h[(n + 1, n)] = -Complex64::i() * alpha * cplx(root);
            h[(n, n + 1)] = Complex64::i() * alpha.conj() * cplx(root);
        }
        let matrix = exp_i_hermitian(&h, 1.0);
        Ok(Self::new(cutoff, matrix, format!("displacement({alpha})")))
    }

    pub fn cutoff(&self) -> FockCutoff {
        self.cutoff
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn adjoint(&self) -> Self {
        Self::new(
            self.cutoff,
            self.matrix.adjoint(),
            format!("{}†", self.label),
        )
    }

    /// Applies the operator to a single-mode column vector.
    pub fn apply(&self, column: &DVector<Complex64>) -> DVector<Complex64> {
        &self.matrix * column
    }

    /// Embeds this operator on the chosen mode of the joint space, acting as
    /// identity on the other mode.
    pub fn embed(&self, mode: Mode) -> TwoModeOperator {
        let dim = self.cutoff.dim();
        let joint = self.cutoff.joint_dim();
        let mut m = DMatrix::zeros(joint, joint);
        for row in 0..dim {
            for col in 0..dim {
                let v = self.matrix[(row, col)];
                if v == Complex64::ZERO {
                    continue;
                }
                for k in 0..dim {
                    match mode {
                        Mode::A => m[(row * dim + k, col * dim + k)] = v,
                        Mode::B => m[(k * dim + row, k * dim + col)] = v,
                    }
                }
            }
        }
        TwoModeOperator {
            cutoff: self.cutoff,
            matrix: m,
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        max_entry_diff(&self.matrix, &other.matrix)
    }
}

/// Dense operator on the joint two-mode basis, index `n·(n_max+1) + m`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeOperator {
    cutoff: FockCutoff,
    matrix: DMatrix<Complex64>,
}

impl TwoModeOperator {
    pub fn from_matrix(cutoff: FockCutoff, matrix: DMatrix<Complex64>) -> Self {
        assert_eq!(matrix.nrows(), cutoff.joint_dim());
        assert_eq!(matrix.ncols(), cutoff.joint_dim());
        Self { cutoff, matrix }
    }

    pub fn cutoff(&self) -> FockCutoff {
        self.cutoff
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn adjoint(&self) -> Self {
        Self {
            cutoff: self.cutoff,
            matrix: self.matrix.adjoint(),
        }
    }

    /// Applies the operator to a state (flatten, matvec, unflatten).
    pub fn apply(&self, state: &TwoModeState) -> Result<TwoModeState> {
        self.cutoff.check_match(state.cutoff())?;
        let dim = self.cutoff.dim();
        let mut flat = DVector::zeros(self.cutoff.joint_dim());
        for n in 0..dim {
            for m in 0..dim {
                flat[n * dim + m] = state.amp(n, m);
            }
        }
        let image = &self.matrix * flat;
        let mut amps = DMatrix::zeros(dim, dim);
        for n in 0..dim {
            for m in 0..dim {
                amps[(n, m)] = image[n * dim + m];
            }
        }
        TwoModeState::from_matrix(self.cutoff, amps)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        max_entry_diff(&self.matrix, &other.matrix)
    }

    /// Largest entry difference restricted to rows and columns whose total
    /// photon number `n + m` stays within `n_max` — the sub-space on which
    /// truncation has no effect.
    pub fn max_abs_diff_interior(&self, other: &Self) -> f64 {
        let dim = self.cutoff.dim();
        let n_max = self.cutoff.n_max();
        let mut worst = 0.0f64;
        for rn in 0..dim {
            for rm in 0..dim {
                if rn + rm > n_max {
                    continue;
                }
                for cn in 0..dim {
                    for cm in 0..dim {
                        if cn + cm > n_max {
                            continue;
                        }
                        let (r, c) = (rn * dim + rm, cn * dim + cm);
                        worst = worst.max((self.matrix[(r, c)] - other.matrix[(r, c)]).norm());
                    }
                }
            }
        }
        worst
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            cutoff: self.cutoff,
            matrix: &self.matrix * factor,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            cutoff: self.cutoff,
            matrix: &self.matrix + &other.matrix,
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            cutoff: self.cutoff,
            matrix: &self.matrix * &other.matrix,
        }
    }
}

/// Dimensionless beam-splitter generator `â b̂† + â† b̂` on the joint basis.
///
/// Hermitian, and block-diagonal over total photon number.
pub fn bs_hamiltonian(cutoff: FockCutoff) -> TwoModeOperator {
    let dim = cutoff.dim();
    let joint = cutoff.joint_dim();
    let mut m = DMatrix::zeros(joint, joint);
    for n in 0..dim {
        for mm in 0..dim {
            // a b† : |n, m⟩ → √(n (m+1)) |n-1, m+1⟩
            if n >= 1 && mm + 1 < dim {
                m[((n - 1) * dim + (mm + 1), n * dim + mm)] +=
                    cplx((n as f64 * (mm + 1) as f64).sqrt());
            }
            // a† b : |n, m⟩ → √((n+1) m) |n+1, m-1⟩
            if mm >= 1 && n + 1 < dim {
                m[((n + 1) * dim + (mm - 1), n * dim + mm)] +=
                    cplx(((n + 1) as f64 * mm as f64).sqrt());
            }
        }
    }
    TwoModeOperator { cutoff, matrix: m }
}

/// `exp(i·scale·H)` for Hermitian `H`, via `SymmetricEigen`.
pub(crate) fn exp_i_hermitian(h: &DMatrix<Complex64>, scale: f64) -> DMatrix<Complex64> {
    let eigen = nalgebra::SymmetricEigen::new(h.clone());
    let phases: Vec<Complex64> = eigen
        .eigenvalues
        .iter()
        .map(|&e| Complex64::from_polar(1.0, scale * e))
        .collect();
    let mut scaled = eigen.eigenvectors.clone();
    for (j, phase) in phases.iter().enumerate() {
        let mut col = scaled.column_mut(j);
        col *= *phase;
    }
    scaled * eigen.eigenvectors.adjoint()
}

fn max_entry_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::coherent_amplitudes;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn creation_entries() {
        let cutoff = FockCutoff::new(2).unwrap();
        let a_dag = ModeOperator::creation(cutoff);
        assert_eq!(a_dag.matrix()[(1, 0)], c(1.0, 0.0));
        assert_abs_diff_eq!(a_dag.matrix()[(2, 1)].re, 2.0f64.sqrt(), epsilon = 1e-15);
        assert_eq!(a_dag.matrix()[(0, 1)], c(0.0, 0.0));
    }

    #[test]
    fn creation_on_vacuum_gives_one_photon() {
        let cutoff = FockCutoff::new(3).unwrap();
        let a_dag = ModeOperator::creation(cutoff);
        let mut vac = DVector::zeros(4);
        vac[0] = c(1.0, 0.0);
        let one = a_dag.apply(&vac);
        assert_eq!(one[1], c(1.0, 0.0));
        assert_eq!(one[0], c(0.0, 0.0));
    }

    #[test]
    fn double_creation_reaches_two_photons_with_sqrt2_norm() {
        // (a†)² |0⟩ = √2 |2⟩ by the ladder rule a†|n⟩ = √(n+1)|n+1⟩
        let cutoff = FockCutoff::new(3).unwrap();
        let a_dag = ModeOperator::creation(cutoff);
        let mut vac = DVector::zeros(4);
        vac[0] = c(1.0, 0.0);
        let two = a_dag.apply(&a_dag.apply(&vac));
        let norm = two.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert_abs_diff_eq!(norm, 2.0f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!((two[2] / norm).re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn annihilation_lowers_and_kills_vacuum() {
        let cutoff = FockCutoff::new(3).unwrap();
        let a = ModeOperator::annihilation(cutoff);
        let mut one = DVector::zeros(4);
        one[1] = c(1.0, 0.0);
        let lowered = a.apply(&one);
        assert_eq!(lowered[0], c(1.0, 0.0));

        let mut vac = DVector::zeros(4);
        vac[0] = c(1.0, 0.0);
        let killed = a.apply(&vac);
        assert!(killed.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn annihilation_eigenstate_property_of_coherent_column() {
        // a |α⟩ = α |α⟩ up to truncation residue
        let cutoff = FockCutoff::new(30).unwrap();
        let alpha = c(1.0, 0.0);
        let column = coherent_amplitudes(alpha, cutoff);
        let lowered = ModeOperator::annihilation(cutoff).apply(&column);
        let expected = &column * alpha;
        let residual: f64 = lowered
            .iter()
            .zip(expected.iter())
            .take(30) // the top entry keeps the truncation residue
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        assert!(residual < 1e-10, "residual {residual}");
    }

    #[test]
    fn commutator_is_identity_below_cutoff() {
        let cutoff = FockCutoff::new(6).unwrap();
        let a = ModeOperator::annihilation(cutoff);
        let a_dag = ModeOperator::creation(cutoff);
        let comm = a.matrix() * a_dag.matrix() - a_dag.matrix() * a.matrix();
        for n in 0..6 {
            for m in 0..6 {
                let expected = if n == m { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(comm[(n, m)].re, expected, epsilon = 1e-13);
                assert_abs_diff_eq!(comm[(n, m)].im, 0.0, epsilon = 1e-13);
            }
        }
        // truncation shows up only in the top corner
        assert_abs_diff_eq!(comm[(6, 6)].re, -6.0, epsilon = 1e-12);
    }

    #[test]
    fn distinct_mode_operators_commute_exactly() {
        let cutoff = FockCutoff::new(4).unwrap();
        let a = ModeOperator::annihilation(cutoff).embed(Mode::A);
        let b = ModeOperator::annihilation(cutoff).embed(Mode::B);
        let ab = a.compose(&b);
        let ba = b.compose(&a);
        assert_eq!(ab.max_abs_diff(&ba), 0.0);
    }

    #[test]
    fn phase_matrix_diagonal_law() {
        let cutoff = FockCutoff::new(4).unwrap();
        let identity = ModeOperator::phase(0.0, cutoff);
        assert_eq!(identity.max_abs_diff(&ModeOperator::identity(cutoff)), 0.0);

        let pi = ModeOperator::phase(std::f64::consts::PI, cutoff);
        assert_abs_diff_eq!(pi.matrix()[(1, 1)].re, -1.0, epsilon = 1e-15);

        let half = ModeOperator::phase(std::f64::consts::FRAC_PI_2, cutoff);
        assert_abs_diff_eq!(half.matrix()[(2, 2)].re, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(half.matrix()[(2, 2)].im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn displacement_zero_is_identity() {
        let cutoff = FockCutoff::new(5).unwrap();
        let d = ModeOperator::displacement(c(0.0, 0.0), cutoff).unwrap();
        assert!(d.max_abs_diff(&ModeOperator::identity(cutoff)) < 1e-14);
    }

    #[test]
    fn displacement_column_zero_is_coherent() {
        let cutoff = FockCutoff::new(25).unwrap();
        let alpha = c(0.9, 0.5);
        let d = ModeOperator::displacement(alpha, cutoff).unwrap();
        let expected = coherent_amplitudes(alpha, cutoff);
        let worst = (0..=25)
            .map(|n| (d.matrix()[(n, 0)] - expected[n]).norm())
            .fold(0.0, f64::max);
        assert!(worst < 1e-12, "worst {worst}");
    }

    #[test]
    fn displacement_inverse_on_interior() {
        let cutoff = FockCutoff::new(25).unwrap();
        let alpha = c(1.0, 0.0);
        let d = ModeOperator::displacement(alpha, cutoff).unwrap();
        let d_inv = ModeOperator::displacement(-alpha, cutoff).unwrap();
        let product = d.matrix() * d_inv.matrix();
        let mut worst = 0.0f64;
        for n in 0..=12 {
            for m in 0..=12 {
                let expected = if n == m { 1.0 } else { 0.0 };
                worst = worst.max((product[(n, m)] - cplx(expected)).norm());
            }
        }
        assert!(worst < 1e-10, "worst {worst}");
    }

    #[test]
    fn displacement_rejects_small_cutoff() {
        let cutoff = FockCutoff::new(3).unwrap();
        assert!(matches!(
            ModeOperator::displacement(c(2.0, 0.0), cutoff),
            Err(Error::CutoffTooSmall { .. })
        ));
    }

    #[test]
    fn hamiltonian_is_hermitian_and_conserves_total_number() {
        let cutoff = FockCutoff::new(5).unwrap();
        let g = bs_hamiltonian(cutoff);
        assert_eq!(g.max_abs_diff(&g.adjoint()), 0.0);

        // every column's support stays on the column's total-N block
        let dim = cutoff.dim();
        for cn in 0..dim {
            for cm in 0..dim {
                let col = g.matrix().column(cn * dim + cm);
                for rn in 0..dim {
                    for rm in 0..dim {
                        if rn + rm != cn + cm {
                            assert!(
                                col[rn * dim + rm].norm() < 1e-15,
                                "off-block entry at ({rn},{rm}) <- ({cn},{cm})"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn hamiltonian_swaps_single_photon() {
        let cutoff = FockCutoff::new(4).unwrap();
        let g = bs_hamiltonian(cutoff);
        let image = g.apply(&TwoModeState::fock(1, 0, cutoff).unwrap()).unwrap();
        assert_eq!(image.amp(0, 1), c(1.0, 0.0));
        assert_abs_diff_eq!(image.norm(), 1.0, epsilon = 1e-15);

        let vac_image = g.apply(&TwoModeState::vacuum(cutoff)).unwrap();
        assert_eq!(vac_image.norm(), 0.0);
    }

    #[test]
    fn phase_is_unitary() {
        let cutoff = FockCutoff::new(8).unwrap();
        let p = ModeOperator::phase(0.73, cutoff);
        let product = p.matrix() * p.matrix().adjoint();
        let identity = DMatrix::<Complex64>::identity(9, 9);
        assert!(max_entry_diff(&product, &identity) < 1e-14);
    }
}
