//! Randomized structural checks of the packed GF(2) linear algebra against
//! plain-integer reference computations.

use leosd::gf2::{ge_systematic, BitMatrix, BitVector};
use proptest::prelude::*;

/// Row-reduction rank over u128 masks, written from scratch so it shares no
/// code with the library implementation.
fn rank_oracle(rows: &[u128]) -> usize {
    let mut pivot_for_bit = [0u128; 128];
    let mut rank = 0;
    for &r in rows {
        let mut v = r;
        while v != 0 {
            let high = 127 - v.leading_zeros() as usize;
            if pivot_for_bit[high] == 0 {
                pivot_for_bit[high] = v;
                rank += 1;
                break;
            }
            v ^= pivot_for_bit[high];
        }
    }
    rank
}

fn as_masks(a: &BitMatrix) -> Vec<u128> {
    (0..a.rows())
        .map(|r| {
            (0..a.cols())
                .filter(|&c| a.get(r, c))
                .fold(0u128, |acc, c| acc | 1 << c)
        })
        .collect()
}

fn arb_matrix(max_dim: usize) -> impl Strategy<Value = BitMatrix> {
    (1..=max_dim, 1..=max_dim)
        .prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r)
        })
        .prop_map(|bits| {
            BitMatrix::from_fn(bits.len(), bits[0].len(), |i, j| bits[i][j])
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1024))]

    #[test]
    fn elimination_factorization_holds(a in arb_matrix(64)) {
        let ge = ge_systematic(&a);
        prop_assert_eq!(ge.e.mul(&a.permute_cols(&ge.pi)), ge.r.clone());

        // Reduced echelon shape: identity leading block, zero rows below.
        prop_assert_eq!(
            ge.r.submatrix(0..ge.rank, 0..ge.rank),
            BitMatrix::identity(ge.rank)
        );
        if ge.rank < a.rows() {
            prop_assert!(ge.r.submatrix(ge.rank..a.rows(), 0..a.cols()).is_zero());
        }
    }

    #[test]
    fn row_operations_are_invertible(a in arb_matrix(64)) {
        let ge = ge_systematic(&a);
        prop_assert_eq!(rank_oracle(&as_masks(&ge.e)), a.rows());
    }

    #[test]
    fn rank_matches_reference(a in arb_matrix(64)) {
        prop_assert_eq!(ge_systematic(&a).rank, rank_oracle(&as_masks(&a)));
    }

    #[test]
    fn column_permutation_is_a_bijection(a in arb_matrix(64), seed in any::<u64>()) {
        use rand::SeedableRng;
        let ge = ge_systematic(&a);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let v = BitVector::random(a.cols(), &mut rng);
        prop_assert_eq!(ge.pi.inverse().apply_vec(&ge.pi.apply_vec(&v)), v);
    }

    #[test]
    fn matrix_vector_products_distribute(a in arb_matrix(32), seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let v = BitVector::random(a.cols(), &mut rng);
        let w = BitVector::random(a.cols(), &mut rng);
        prop_assert_eq!(
            a.mul_vec(&v.xor(&w)),
            a.mul_vec(&v).xor(&a.mul_vec(&w))
        );
    }
}
