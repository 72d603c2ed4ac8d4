//! Deterministic input builders shared by the benchmarks.

use beamsplit::{CoherentSpec, FockCutoff, Mode, TwoModeState};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random normalized state supported on total photon number ≤ n_max.
pub fn random_conserved_state(seed: u64, cutoff: FockCutoff) -> TwoModeState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = cutoff.dim();
    let mut amps = DMatrix::zeros(dim, dim);
    for n in 0..dim {
        for m in 0..dim {
            if n + m <= cutoff.n_max() {
                amps[(n, m)] =
                    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            }
        }
    }
    TwoModeState::from_matrix(cutoff, amps)
        .expect("dimensions match")
        .normalize()
        .expect("nonzero with overwhelming probability")
}

/// Coherent input in mode a against vacuum.
pub fn coherent_input(alpha: Complex64, cutoff: FockCutoff) -> TwoModeState {
    TwoModeState::coherent(&CoherentSpec::new(alpha), Mode::A, cutoff)
        .expect("cutoff chosen to fit alpha")
}
