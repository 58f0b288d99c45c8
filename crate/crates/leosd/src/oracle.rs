//! Brute-force reference implementations for tests: exhaustive
//! maximum-likelihood decoding, exhaustive linear-system solution scans, and
//! exhaustive valid-pattern sets. Deliberately naive; size-guarded so every
//! call stays in the sub-second range.

use std::collections::HashSet;

use crate::channel::ReceivedFrame;
use crate::codes::LinearCode;
use crate::gf2::{BitMatrix, BitVector};
use crate::leosd::Preprocessed;
use crate::osd::{whd, DecodeOutcome, OpCounters};

/// Exhaustive maximum-likelihood decode: scan all 2^k codewords and return
/// the weighted-distance minimizer (first found wins ties). Counters are not
/// modeled; `q_t = q_c = 2^k`.
#[must_use]
pub fn ml_decode(frame: &ReceivedFrame, code: &LinearCode) -> DecodeOutcome {
    assert!(code.k <= 20, "exhaustive ML is limited to k <= 20");
    let total = 1u64 << code.k;
    let mut cw = BitVector::zeros(code.n);
    let mut best = cw.clone();
    let mut best_whd = whd(&cw, &frame.y, &frame.alpha);
    // Gray-code walk: consecutive messages differ in one generator row.
    for i in 1..total {
        let bit = i.trailing_zeros() as usize;
        cw.xor_assign_words(code.g.row_words(bit));
        let d = whd(&cw, &frame.y, &frame.alpha);
        if d < best_whd {
            best_whd = d;
            best = cw.clone();
        }
    }
    DecodeOutcome {
        codeword: best,
        whd: best_whd,
        q_t: total,
        q_c: total,
        counters: OpCounters::default(),
        early_stop: false,
    }
}

/// All solutions x of `a * x^T = target^T` by scanning the full domain.
#[must_use]
pub fn sle_enumerate(a: &BitMatrix, target: &BitVector) -> Vec<BitVector> {
    assert!(a.cols() <= 16, "exhaustive solve is limited to 16 unknowns");
    assert_eq!(a.rows(), target.len(), "target length must match rows");
    let mut out = Vec::new();
    for bits in 0u32..1 << a.cols() {
        let idx: Vec<usize> = (0..a.cols()).filter(|i| bits >> i & 1 == 1).collect();
        let x = BitVector::from_indices(a.cols(), &idx);
        if a.mul_vec(&x) == *target {
            out.push(x);
        }
    }
    out
}

/// Every parity pattern whose induced system is feasible, determined by the
/// augmented-rank test: e is valid iff appending the column `(y_P + e)^T` to
/// `P~^T` does not raise its rank.
#[must_use]
pub fn valid_tep_set(pre: &Preprocessed) -> HashSet<BitVector> {
    let m = pre.n() - pre.k();
    assert!(m <= 16, "exhaustive pattern scan is limited to n-k <= 16");
    let pt = pre.p_tilde.transpose();
    let mut out = HashSet::new();
    for bits in 0u32..1 << m {
        let idx: Vec<usize> = (0..m).filter(|i| bits >> i & 1 == 1).collect();
        let e = BitVector::from_indices(m, &idx);
        let rhs = pre.y_sorted.slice(pre.k(), pre.n()).xor(&e);
        let augmented = pt.hstack(&column(&rhs));
        if augmented.rank() == pre.r_p {
            out.insert(e);
        }
    }
    out
}

fn column(v: &BitVector) -> BitMatrix {
    BitMatrix::from_fn(v.len(), 1, |r, _| v.get(r))
}
