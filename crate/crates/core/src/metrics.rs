//! Photon statistics, state comparison, and entanglement quantities.

use num_complex::Complex64;

use crate::error::Result;
use crate::fock::{FockCutoff, Mode, TwoModeState};

/// Marginal photon statistics of one mode.
///
/// `mandel_q = (variance − mean)/mean`: zero for Poissonian light, negative
/// for sub-Poissonian. Reported as 0 for (near-)vacuum, where the ratio is
/// undefined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonStats {
    pub mean: f64,
    pub variance: f64,
    pub mandel_q: f64,
}

/// Photon statistics of the marginal distribution of `mode`.
pub fn photon_stats(state: &TwoModeState, mode: Mode) -> PhotonStats {
    let probs = state.marginal(mode);
    let mean: f64 = probs.iter().enumerate().map(|(n, p)| n as f64 * p).sum();
    let second: f64 = probs
        .iter()
        .enumerate()
        .map(|(n, p)| (n * n) as f64 * p)
        .sum();
    let variance = (second - mean * mean).max(0.0);
    let mandel_q = if mean > 1e-300 {
        (variance - mean) / mean
    } else {
        0.0
    };
    PhotonStats {
        mean,
        variance,
        mandel_q,
    }
}

/// Bose-Einstein photon-number distribution `pₙ = ⟨n⟩ⁿ/(1+⟨n⟩)ⁿ⁺¹`,
/// truncated at the cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalDistribution {
    /// `pₙ` for `n = 0..=n_max`.
    pub probabilities: Vec<f64>,
    /// Probability mass above the cutoff, `(⟨n⟩/(1+⟨n⟩))^{n_max+1}`.
    pub tail: f64,
}

impl ThermalDistribution {
    pub fn mean(&self) -> f64 {
        self.probabilities
            .iter()
            .enumerate()
            .map(|(n, p)| n as f64 * p)
            .sum()
    }
}

/// Thermal (chaotic) light distribution with the given mean photon number.
///
/// Built iteratively from `p₀ = 1/(1+⟨n⟩)` with the exact geometric ratio
/// `pₙ₊₁/pₙ = ⟨n⟩/(1+⟨n⟩)`.
pub fn thermal_distribution(mean_n: f64, cutoff: FockCutoff) -> ThermalDistribution {
    assert!(mean_n > 0.0, "thermal mean photon number must be positive");
    let ratio = mean_n / (1.0 + mean_n);
    let mut probabilities = Vec::with_capacity(cutoff.dim());
    let mut p = 1.0 / (1.0 + mean_n);
    for _ in 0..cutoff.dim() {
        probabilities.push(p);
        p *= ratio;
    }
    // after the loop `p` is p_{n_max+1}; the geometric tail sums to
    // p_{n_max+1} / (1 - ratio) = ratio^{n_max+1}
    let tail = p / (1.0 - ratio);
    ThermalDistribution {
        probabilities,
        tail,
    }
}

/// |⟨x|y⟩|².
pub fn fidelity(x: &TwoModeState, y: &TwoModeState) -> Result<f64> {
    Ok(x.inner_product(y)?.norm_sqr())
}

/// Closed-form coherent overlap `⟨α|β⟩ = e^{−(|α|²+|β|²)/2 + α*β}`.
pub fn coherent_overlap(alpha: Complex64, beta: Complex64) -> Complex64 {
    (Complex64::from(-(alpha.norm_sqr() + beta.norm_sqr()) / 2.0) + alpha.conj() * beta).exp()
}

/// Schmidt spectrum of a bipartite pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtReport {
    /// Singular values of the amplitude tensor, descending; values below
    /// 1e-12 are dropped.
    pub coefficients: Vec<f64>,
    /// −Σ λᵢ² log₂ λᵢ², the entanglement entropy in bits.
    pub entropy_bits: f64,
}

/// Singular-value decomposition of the amplitude matrix `c[n][m]`.
///
/// The coefficients are the singular values; their squares are the reduced
/// density-matrix eigenvalues of either mode, so a product state reports a
/// single coefficient and zero entropy, and a balanced two-term
/// superposition reports exactly one bit.
pub fn schmidt_decompose(state: &TwoModeState) -> SchmidtReport {
    let svd = state.amps().clone().svd(false, false);
    let mut coefficients: Vec<f64> = svd
        .singular_values
        .iter()
        .copied()
        .filter(|&s| s > 1e-12)
        .collect();
    coefficients.sort_by(|a, b| b.partial_cmp(a).expect("singular values are finite"));
    let entropy_bits = -coefficients
        .iter()
        .map(|&s| {
            let p = s * s;
            p * p.log2()
        })
        .sum::<f64>();
    SchmidtReport {
        coefficients,
        entropy_bits: entropy_bits.max(0.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{CatSign, CatSpec, CoherentSpec};
    use crate::oracle;
    use crate::splitter::{apply_bs_numeric, SplitterParams};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_8;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cutoff(n: usize) -> FockCutoff {
        FockCutoff::new(n).unwrap()
    }

    #[test]
    fn split_coherent_means_conserve_energy() {
        // |α|² = 4 split evenly: two means of 2 summing to the input mean
        let cut = cutoff(35);
        let input = TwoModeState::coherent(&CoherentSpec::new(c(2.0, 0.0)), Mode::A, cut).unwrap();
        let out = apply_bs_numeric(&input, SplitterParams::balanced());
        let stats_a = photon_stats(&out, Mode::A);
        let stats_b = photon_stats(&out, Mode::B);
        assert_abs_diff_eq!(stats_a.mean, 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(stats_b.mean, 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(stats_a.mean + stats_b.mean, 4.0, epsilon = 1e-10);
    }

    #[test]
    fn coherent_light_is_poissonian() {
        let cut = cutoff(30);
        let state = TwoModeState::coherent(&CoherentSpec::new(c(1.0, 0.0)), Mode::A, cut).unwrap();
        let stats = photon_stats(&state, Mode::A);
        assert_abs_diff_eq!(stats.mandel_q, 0.0, epsilon = 1e-9);
    }

    #[test]
    fn number_state_is_maximally_sub_poissonian() {
        let cut = cutoff(4);
        let state = TwoModeState::fock(2, 0, cut).unwrap();
        let stats = photon_stats(&state, Mode::A);
        assert_eq!(stats.mean, 2.0);
        assert_eq!(stats.variance, 0.0);
        assert_eq!(stats.mandel_q, -1.0);
    }

    #[test]
    fn vacuum_mandel_q_is_flagged_zero() {
        let cut = cutoff(4);
        let stats = photon_stats(&TwoModeState::vacuum(cut), Mode::A);
        assert_eq!(stats.mandel_q, 0.0);
    }

    #[test]
    fn thermal_distribution_halving_at_unit_mean() {
        let dist = thermal_distribution(1.0, cutoff(30));
        assert_eq!(dist.probabilities[0], 0.5);
        assert_eq!(dist.probabilities[1], 0.25);
        assert_eq!(dist.probabilities[2], 0.125);
    }

    #[test]
    fn thermal_ratio_is_exactly_geometric() {
        let mean_n = 2.7;
        let dist = thermal_distribution(mean_n, cutoff(25));
        let ratio = mean_n / (1.0 + mean_n);
        for n in 0..25 {
            assert_eq!(dist.probabilities[n + 1], dist.probabilities[n] * ratio);
        }
    }

    #[test]
    fn thermal_mean_within_reported_tail() {
        // the mean mass above the cutoff is (n_max + 2)·tail for ⟨n⟩ = 1,
        // and below ~(n_max + 1/(1-r))·tail generally
        let mean_n = 1.0;
        let cut = cutoff(30);
        let dist = thermal_distribution(mean_n, cut);
        let missing = mean_n - dist.mean();
        assert!(missing >= 0.0);
        assert!(missing <= dist.tail * (cut.n_max() as f64 + 2.0) * 1.000001);
    }

    #[test]
    fn thermal_small_mean_concentrates_on_vacuum() {
        let dist = thermal_distribution(0.01, cutoff(10));
        assert_abs_diff_eq!(dist.probabilities[0], 1.0 / 1.01, epsilon = 1e-15);
    }

    #[test]
    fn fidelity_basics() {
        let cut = cutoff(4);
        let x = TwoModeState::fock(1, 0, cut).unwrap();
        let y = TwoModeState::fock(0, 1, cut).unwrap();
        assert_eq!(fidelity(&x, &x).unwrap(), 1.0);
        assert_eq!(fidelity(&x, &y).unwrap(), 0.0);
    }

    #[test]
    fn fidelity_of_opposite_coherent_states() {
        // |⟨α|−α⟩|² = e^{−4|α|²} = e^{−4} for α = 1
        let cut = cutoff(40);
        let plus = TwoModeState::coherent(&CoherentSpec::new(c(1.0, 0.0)), Mode::A, cut).unwrap();
        let minus = TwoModeState::coherent(&CoherentSpec::new(c(-1.0, 0.0)), Mode::A, cut).unwrap();
        assert_abs_diff_eq!(
            fidelity(&plus, &minus).unwrap(),
            (-4.0f64).exp(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn coherent_overlap_closed_form() {
        assert_abs_diff_eq!(
            coherent_overlap(c(1.3, -0.2), c(1.3, -0.2)).re,
            1.0,
            epsilon = 1e-15
        );
        let beta = c(0.4, 1.1);
        let vac = coherent_overlap(c(0.0, 0.0), beta);
        assert_abs_diff_eq!(vac.norm(), (-beta.norm_sqr() / 2.0).exp(), epsilon = 1e-15);
        assert_abs_diff_eq!(
            coherent_overlap(c(1.0, 0.0), c(-1.0, 0.0)).re,
            (-2.0f64).exp(),
            epsilon = 1e-15
        );

        // closed form matches the truncated inner product
        let cut = cutoff(40);
        let x = TwoModeState::coherent(&CoherentSpec::new(c(1.0, 0.0)), Mode::A, cut).unwrap();
        let y = TwoModeState::coherent(&CoherentSpec::new(c(-1.0, 0.0)), Mode::A, cut).unwrap();
        let truncated = x.inner_product(&y).unwrap();
        assert!((truncated - coherent_overlap(c(1.0, 0.0), c(-1.0, 0.0))).norm() < 1e-12);
    }

    #[test]
    fn product_state_has_no_entanglement() {
        let cut = cutoff(25);
        let state = oracle::case2(SplitterParams::new(0.7), c(1.0, 0.0), cut).unwrap();
        let report = schmidt_decompose(&state);
        assert!(
            report.entropy_bits < 1e-10,
            "entropy {}",
            report.entropy_bits
        );
    }

    #[test]
    fn balanced_single_photon_superposition_is_one_bit() {
        let cut = cutoff(4);
        let p = SplitterParams::new(FRAC_PI_8);
        let state = oracle::case4(p, p, cut).unwrap();
        let report = schmidt_decompose(&state);
        assert_eq!(report.coefficients.len(), 2);
        let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
        assert_abs_diff_eq!(report.coefficients[0], inv_sqrt2, epsilon = 1e-12);
        assert_abs_diff_eq!(report.coefficients[1], inv_sqrt2, epsilon = 1e-12);
        assert_abs_diff_eq!(report.entropy_bits, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn cat_interferometer_entropy_matches_gram_closed_form() {
        // independent oracle: for η(|u⟩|v⟩ ± |u'⟩|v'⟩) with real overlaps
        // a = ⟨u|u'⟩, b = ⟨v|v'⟩, the reduced density matrix is diagonal on
        // the (anti)symmetrized branch combinations with eigenvalues
        // (1+a)(1±b)/(2±2ab) and (1−a)(1∓b)/(2±2ab)
        fn gram_entropy(a: f64, b: f64, sign: f64) -> f64 {
            let norm = 2.0 + 2.0 * sign * a * b;
            let l1 = (1.0 + a) * (1.0 + sign * b) / norm;
            let l2 = (1.0 - a) * (1.0 - sign * b) / norm;
            -(l1 * l1.log2() + l2 * l2.log2())
        }

        let cut = cutoff(40);
        let p = SplitterParams::new(FRAC_PI_8);
        let alpha = c(2.0, 0.0);
        let beta = c(-2.0, 0.0);
        // output components: |±√2⟩ in mode a, |±i√2⟩ in mode b, both with
        // overlap e^{−4} between the ± branches
        let overlap = (-4.0f64).exp();

        for (sign, factor) in [(CatSign::Plus, 1.0), (CatSign::Minus, -1.0)] {
            let spec = CatSpec::new(alpha, beta, sign);
            let state = oracle::case8(p, p, &spec, cut).unwrap();
            let report = schmidt_decompose(&state);
            let expected = gram_entropy(overlap, overlap, factor);
            assert_abs_diff_eq!(report.entropy_bits, expected, epsilon = 1e-9);
        }

        // the odd superposition of equal-overlap branches is exactly balanced
        let spec = CatSpec::new(alpha, beta, CatSign::Minus);
        let state = oracle::case8(p, p, &spec, cut).unwrap();
        let report = schmidt_decompose(&state);
        assert_abs_diff_eq!(report.entropy_bits, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn entropy_invariant_under_local_phase() {
        let cut = cutoff(5);
        let p = SplitterParams::new(0.55);
        let state = oracle::case6(p, SplitterParams::new(0.2), cut).unwrap();
        let before = schmidt_decompose(&state).entropy_bits;
        for mode in [Mode::A, Mode::B] {
            let shifted = crate::ops::ModeOperator::phase(1.234, cut)
                .embed(mode)
                .apply(&state)
                .unwrap();
            let after = schmidt_decompose(&shifted).entropy_bits;
            assert_abs_diff_eq!(before, after, epsilon = 1e-12);
        }
    }

    #[test]
    fn splitters_keep_coherent_products_unentangled() {
        let cut = cutoff(25);
        let input = TwoModeState::coherent(&CoherentSpec::new(c(0.8, 0.1)), Mode::A, cut).unwrap();
        for theta in [0.2, 0.9, 1.4] {
            let out = apply_bs_numeric(&input, SplitterParams::new(theta));
            let report = schmidt_decompose(&out);
            assert!(
                report.entropy_bits < 1e-9,
                "entropy {}",
                report.entropy_bits
            );
        }
    }
}
