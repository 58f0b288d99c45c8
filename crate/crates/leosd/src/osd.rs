//! Order-m ordered-statistics decoding: sort by descending reliability,
//! reduce the generator to systematic form over the most reliable basis,
//! re-encode every test error pattern of weight at most m, and keep the
//! candidate with minimum weighted Hamming distance.

use crate::analysis::c_ge;
use crate::channel::ReceivedFrame;
use crate::codes::LinearCode;
use crate::gf2::{BitVector, Permutation};
use crate::tep::for_each_support;
use std::ops::ControlFlow;

/// Operation tallies in the accounting units used throughout: one symbolic
/// binary operation is a BOP, one floating-point operation or comparison is
/// a FLOP. Decoders charge the per-stage model costs (sorting, elimination,
/// per-pattern re-encoding/recovery), not machine instructions.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct OpCounters {
    pub bops: f64,
    pub flops: f64,
}

impl OpCounters {
    pub fn add(&mut self, other: OpCounters) {
        self.bops += other.bops;
        self.flops += other.flops;
    }
}

/// Result of one decode.
#[derive(Clone, Debug)]
pub struct DecodeOutcome {
    /// Best candidate codeword, in original (unsorted) bit order.
    pub codeword: BitVector,
    /// Weighted Hamming distance of `codeword` against the hard decisions.
    pub whd: f64,
    /// Test error patterns processed.
    pub q_t: u64,
    /// Candidate codewords generated.
    pub q_c: u64,
    pub counters: OpCounters,
    /// True when a stopping condition ended the decode early.
    pub early_stop: bool,
}

/// Weighted Hamming distance: the sum of `alpha[i]` over positions where
/// the two vectors disagree.
#[must_use]
pub fn whd(a: &BitVector, b: &BitVector, alpha: &[f64]) -> f64 {
    assert!(
        a.len() == b.len() && a.len() == alpha.len(),
        "whd inputs must share one length"
    );
    a.xor(b).ones().map(|i| alpha[i]).sum()
}

/// Permutation sorting positions by descending reliability, ties broken by
/// original index.
#[must_use]
pub(crate) fn sort_descending(alpha: &[f64]) -> Permutation {
    let mut idx: Vec<usize> = (0..alpha.len()).collect();
    idx.sort_by(|&a, &b| alpha[b].total_cmp(&alpha[a]).then(a.cmp(&b)));
    Permutation::from_mapping(idx)
}

/// Order-m OSD. Enumerates all weight-<=m patterns over the k most reliable
/// basis positions (weight order, lexicographic within weight), re-encodes
/// each, and returns the minimum-WHD candidate; ties go to the first found.
#[must_use]
pub fn decode_osd(frame: &ReceivedFrame, code: &LinearCode, order: usize) -> DecodeOutcome {
    let (n, k) = (code.n, code.k);
    assert_eq!(frame.y.len(), n, "frame length must match the code");
    assert!(order <= k, "order must be at most k");

    let pi_d = sort_descending(&frame.alpha);
    let ge = crate::gf2::ge_systematic(&code.g.permute_cols(&pi_d));
    assert_eq!(ge.rank, k, "generator rank is preserved by column permutation");
    let g_sys = &ge.r;
    let perm_total = pi_d.compose(&ge.pi);

    let y_s = perm_total.apply_vec(&frame.y);
    let alpha_s = perm_total.apply_slice(&frame.alpha);

    let mut counters = OpCounters {
        bops: 5.0 * n as f64 + c_ge(k, n),
        flops: n as f64 + n as f64 * (n as f64).log2(),
    };
    let per_tep_bops = (2 * k * n + n) as f64;
    let per_tep_flops = (n + 1) as f64;

    // Base candidate from the most reliable basis bits; each pattern is the
    // base plus the generator rows of its support.
    let y_basis = y_s.slice(0, k);
    let base = g_sys.vec_mul(&y_basis);

    let mut best_whd = f64::INFINITY;
    let mut best = base.clone();
    let mut q_t = 0u64;
    let mut cand = BitVector::zeros(n);
    for_each_support(k, order, |support| {
        q_t += 1;
        counters.bops += per_tep_bops;
        counters.flops += per_tep_flops;
        cand.clone_from(&base);
        for &i in support {
            cand.xor_assign_words(g_sys.row_words(i));
        }
        let d = whd(&cand, &y_s, &alpha_s);
        if d < best_whd {
            best_whd = d;
            best.clone_from(&cand);
        }
        ControlFlow::Continue(())
    });

    DecodeOutcome {
        codeword: perm_total.inverse().apply_vec(&best),
        whd: best_whd,
        q_t,
        q_c: q_t,
        counters,
        early_stop: false,
    }
}
