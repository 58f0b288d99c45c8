//! BPSK transmission over an AWGN channel and reliability ordering.
//!
//! A codeword bit `c` maps to the symbol `(-1)^c`; the channel adds Gaussian
//! noise of variance `N0/2` per dimension. The SNR convention is symbol
//! energy over noise density, `SNR = 2/N0`, so `N0 = 2 * 10^(-snr_db/10)`.

use crate::gf2::{BitVector, Permutation};
use rand::Rng;
use rand_distr::{Distribution, Normal};

/// One received noisy frame together with its hard decisions.
#[derive(Clone, Debug)]
pub struct ReceivedFrame {
    /// Raw channel outputs.
    pub gamma: Vec<f64>,
    /// Hard decisions: `y[i] = 1` iff `gamma[i] < 0`.
    pub y: BitVector,
    /// Reliabilities `alpha[i] = |gamma[i]|`.
    pub alpha: Vec<f64>,
    /// One-sided noise density.
    pub n0: f64,
}

impl ReceivedFrame {
    /// Builds a frame from raw channel observations, deriving hard decisions
    /// and reliabilities.
    #[must_use]
    pub fn from_observations(gamma: &[f64], n0: f64) -> Self {
        let mut y = BitVector::zeros(gamma.len());
        for (i, &g) in gamma.iter().enumerate() {
            if g < 0.0 {
                y.set(i, true);
            }
        }
        let alpha = gamma.iter().map(|g| g.abs()).collect();
        Self { gamma: gamma.to_vec(), y, alpha, n0 }
    }
}

/// Noise density for a given SNR in dB.
#[must_use]
pub fn snr_db_to_n0(snr_db: f64) -> f64 {
    2.0 * 10f64.powf(-snr_db / 10.0)
}

/// Transmits a codeword at the given SNR and forms hard decisions and
/// reliabilities from the noisy observations.
pub fn transmit<R: Rng>(codeword: &BitVector, snr_db: f64, rng: &mut R) -> ReceivedFrame {
    let n0 = snr_db_to_n0(snr_db);
    let noise = Normal::new(0.0, (n0 / 2.0).sqrt()).expect("valid sigma");
    let n = codeword.len();
    let mut gamma = Vec::with_capacity(n);
    let mut y = BitVector::zeros(n);
    let mut alpha = Vec::with_capacity(n);
    for i in 0..n {
        let s = if codeword.get(i) { -1.0 } else { 1.0 };
        let g = s + noise.sample(rng);
        if g < 0.0 {
            y.set(i, true);
        }
        alpha.push(g.abs());
        gamma.push(g);
    }
    ReceivedFrame { gamma, y, alpha, n0 }
}

/// Probability that the hard decision at a position of reliability `alpha`
/// is wrong: `1 / (1 + exp(4*alpha/n0))`.
#[must_use]
pub fn bit_error_prob(alpha: f64, n0: f64) -> f64 {
    1.0 / (1.0 + (4.0 * alpha / n0).exp())
}

/// Permutation sorting positions by ascending reliability. The sort is
/// stable: equal reliabilities keep their original relative order, so the
/// result is deterministic.
#[must_use]
pub fn sort_ascending(alpha: &[f64]) -> Permutation {
    let mut idx: Vec<usize> = (0..alpha.len()).collect();
    idx.sort_by(|&a, &b| alpha[a].total_cmp(&alpha[b]).then(a.cmp(&b)));
    Permutation::from_mapping(idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn snr_to_n0_convention() {
        assert!((snr_db_to_n0(0.0) - 2.0).abs() < 1e-12);
        assert!((snr_db_to_n0(10.0) - 0.2).abs() < 1e-12);
        assert!((snr_db_to_n0(-3.0) - 2.0 * 10f64.powf(0.3)).abs() < 1e-12);
    }

    #[test]
    fn hard_decisions_and_reliabilities_match_gamma() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = BitVector::from_indices(16, &[0, 3, 9]);
        let frame = transmit(&c, 1.0, &mut rng);
        assert_eq!(frame.gamma.len(), 16);
        for i in 0..16 {
            assert_eq!(frame.y.get(i), frame.gamma[i] < 0.0);
            assert!((frame.alpha[i] - frame.gamma[i].abs()).abs() < 1e-15);
        }
    }

    #[test]
    fn noiseless_limit_recovers_codeword() {
        // At very high SNR the hard decisions equal the codeword.
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let c = BitVector::from_indices(32, &[1, 2, 30]);
        let frame = transmit(&c, 60.0, &mut rng);
        assert_eq!(frame.y, c);
    }

    #[test]
    fn error_prob_is_half_at_zero_reliability() {
        assert!((bit_error_prob(0.0, 2.0) - 0.5).abs() < 1e-15);
        assert!(bit_error_prob(5.0, 2.0) < bit_error_prob(1.0, 2.0));
        assert!(bit_error_prob(50.0, 0.2) >= 0.0);
    }

    #[test]
    fn empirical_error_rate_matches_formula() {
        // Conditional on reliability, the flip probability formula should
        // agree with direct Monte Carlo over the channel.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = BitVector::zeros(1);
        let n0 = snr_db_to_n0(1.0);
        let mut in_bin = 0u32;
        let mut wrong = 0u32;
        for _ in 0..200_000 {
            let f = transmit(&c, 1.0, &mut rng);
            if (f.alpha[0] - 0.8).abs() < 0.05 {
                in_bin += 1;
                if f.y.get(0) {
                    wrong += 1;
                }
            }
        }
        let emp = f64::from(wrong) / f64::from(in_bin);
        let pred = bit_error_prob(0.8, n0);
        assert!(
            (emp - pred).abs() < 0.02,
            "empirical {emp} vs predicted {pred}"
        );
    }

    #[test]
    fn ascending_sort_is_stable() {
        let alpha = [0.5, 0.1, 0.5, 0.0, 0.1];
        let p = sort_ascending(&alpha);
        let sorted = p.apply_slice(&alpha);
        assert_eq!(sorted, vec![0.0, 0.1, 0.1, 0.5, 0.5]);
        assert_eq!(
            (0..5).map(|j| p.source_of(j)).collect::<Vec<_>>(),
            vec![3, 1, 4, 0, 2]
        );
    }
}
