//! Linear-equation ordered-statistics decoding.
//!
//! Instead of re-encoding test error patterns over the k most reliable
//! positions, this decoder sorts the frame by ascending reliability, reduces
//! the generator to `[I_k | P~]`, and treats the n-k parity positions of the
//! sorted frame as the unknowns of a linear system: every hypothesised parity
//! error pattern `e` that keeps the system `P~^T x^T = (y_P + e)^T` feasible
//! yields solutions x, each of which extends to a codeword estimate. Valid
//! patterns form a coset parameterised by r_P "primary" bits, and the
//! solution set of each pattern by k - r_P "extension" bits, so the search is
//! driven by two nested weight-capped enumerations (caps rho and xi) plus a
//! total-weight cap tau on the pattern itself.

use std::ops::ControlFlow;

use crate::analysis;
use crate::channel::{self, ReceivedFrame};
use crate::codes::LinearCode;
use crate::gf2::{ge_systematic, BitMatrix, BitVector, Permutation};
use crate::ileosd::{ConditionState, Guard, IleosdConfig};
use crate::osd::{DecodeOutcome, OpCounters};
use crate::tep;

/// Frame-independent weight caps. `rho` limits primary-pattern weight, `tau`
/// the weight of the full parity pattern, and `xi` the combined weight of
/// pattern plus extension. Values outside the feasibility box for a frame's
/// r_P are clamped per decode, so any nonnegative triple is usable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LeosdParams {
    pub rho: usize,
    pub tau: usize,
    pub xi: usize,
}

impl LeosdParams {
    #[must_use]
    pub fn new(rho: usize, tau: usize, xi: usize) -> Self {
        Self { rho, tau, xi }
    }

    /// Clamp the caps into the feasible box for a frame with the given r_P:
    /// rho <= r_P, rho <= tau <= rho + (n-k-r_P), tau <= xi <= tau + (k-r_P).
    #[must_use]
    pub fn clamped(&self, r_p: usize, n: usize, k: usize) -> (usize, usize, usize) {
        let rho = self.rho.min(r_p);
        let tau = self.tau.clamp(rho, rho + (n - k - r_p));
        let xi = self.xi.clamp(tau, tau + (k - r_p));
        (rho, tau, xi)
    }
}

/// Everything derived from one received frame before pattern enumeration.
///
/// All vectors and matrices live in the sorted frame: positions permuted by
/// `perm_total` so the generator is `[I_k | P~]` with reliabilities ascending
/// (up to the column swaps Gaussian elimination needed). The first k sorted
/// positions are the basis segment, the last n-k the parity segment.
pub struct Preprocessed {
    /// Systematic generator `[I_k | P~]` of the sorted frame.
    pub g_sys: BitMatrix,
    /// Parity block `P~` (k x (n-k)).
    pub p_tilde: BitMatrix,
    /// Row transform of the elimination over `P~^T`.
    pub e_p: BitMatrix,
    /// Column permutation of the elimination over `P~^T` (size k).
    pub pi_p: Permutation,
    /// Rank of `P~`.
    pub r_p: usize,
    /// Last n-k-r_P rows of `e_p`; annihilates the column space of `P~^T`.
    pub q: BitMatrix,
    /// Row transform of the elimination over `q` (empty when r_P = n-k).
    pub e_q: BitMatrix,
    /// Column permutation of the elimination over `q` (identity when r_P = n-k).
    pub pi_q: Permutation,
    /// Rank of `q`, always n-k-r_P.
    pub r_q: usize,
    /// (n-k) x r_P map from primary bits to parity patterns (in `pi_q` frame).
    pub q_t: BitMatrix,
    /// k x (k-r_P) map from extension bits to solution increments (in `pi_p` frame).
    pub p_t: BitMatrix,
    /// Particular parity pattern for the all-zero primary (in `pi_q` frame).
    pub e0: BitVector,
    /// Hard decisions in the sorted frame.
    pub y_sorted: BitVector,
    /// Reliabilities in the sorted frame.
    pub alpha_sorted: Vec<f64>,
    /// Sorted-frame position j came from received position `perm_total.source_of(j)`.
    pub perm_total: Permutation,
    /// One-sided noise power of the frame.
    pub n0: f64,

    // Hot tables for the enumeration loop, all precomputed once per frame.
    pub(crate) y_parity: BitVector,
    pub(crate) alpha_parity: Vec<f64>,
    /// Parity pattern of primary bit i alone (sorted parity frame).
    pub(crate) u: Vec<BitVector>,
    /// `e0` carried into the sorted parity frame.
    pub(crate) e0_perm: BitVector,
    /// Head r_P bits of `e_p * u[i]`.
    pub(crate) zcol_head: Vec<BitVector>,
    /// Basis-head discrepancy of the (0, 0) pattern pair.
    pub(crate) dbase0: BitVector,
    /// `B^T` where `e_p * P~^T * pi_p = [[I | B], [0]]`.
    pub(crate) bt: BitMatrix,
    pub(crate) y_head_perm: BitVector,
    pub(crate) y_tail_perm: BitVector,
    pub(crate) alpha_head: Vec<f64>,
    pub(crate) alpha_tail: Vec<f64>,
}

impl Preprocessed {
    #[must_use]
    pub fn n(&self) -> usize {
        self.y_sorted.len()
    }

    #[must_use]
    pub fn k(&self) -> usize {
        self.g_sys.rows()
    }
}

/// Sort, reduce, and factor one received frame.
///
/// Three eliminations: the permuted generator down to `[I_k | P~]`, then
/// `P~^T` (yielding `e_p`, `pi_p`, r_P), then the residual rows `q` (yielding
/// `e_q`, `pi_q`). Rank deficiency of `P~` is handled, not an error.
#[must_use]
pub fn preprocess(frame: &ReceivedFrame, code: &LinearCode) -> Preprocessed {
    let n = code.n;
    let k = code.k;
    let m = n - k;
    assert_eq!(frame.alpha.len(), n, "frame length must match the code");

    let pi_a = channel::sort_ascending(&frame.alpha);
    let ge = ge_systematic(&code.g.permute_cols(&pi_a));
    assert_eq!(ge.rank, k, "generator must have full row rank");
    let perm_total = pi_a.compose(&ge.pi);
    let g_sys = ge.r;
    let y_sorted = perm_total.apply_vec(&frame.y);
    let alpha_sorted = perm_total.apply_slice(&frame.alpha);
    let p_tilde = g_sys.submatrix(0..k, k..n);

    let gep = ge_systematic(&p_tilde.transpose());
    let (e_p, pi_p, r_p) = (gep.e, gep.pi, gep.rank);
    let b = gep.r.submatrix(0..r_p, r_p..k);
    debug_assert!(gep.r.submatrix(r_p..m, 0..k).is_zero());

    let q = e_p.submatrix(r_p..m, 0..m);
    let (e_q, pi_q, r_q, q_r) = if r_p == m {
        let (e_q, q_r) = (BitMatrix::zeros(0, 0), BitMatrix::zeros(0, r_p));
        (e_q, Permutation::identity(m), 0, q_r)
    } else {
        let geq = ge_systematic(&q);
        // q sits inside the invertible e_p, so its rows are independent.
        assert_eq!(geq.rank, m - r_p, "residual rows must be independent");
        let q_r = geq.r.submatrix(0..geq.rank, geq.rank..m);
        (geq.e, geq.pi, geq.rank, q_r)
    };
    let q_t = q_r.vstack(&BitMatrix::identity(r_p));
    let p_t = b.vstack(&BitMatrix::identity(k - r_p));

    let y_parity = y_sorted.slice(k, n);
    let alpha_parity = alpha_sorted[k..n].to_vec();
    let e0_head = e_q.mul_vec(&q.mul_vec(&y_parity));
    let e0 = e0_head.concat(&BitVector::zeros(r_p));

    let pi_q_inv = pi_q.inverse();
    let u: Vec<BitVector> = (0..r_p).map(|i| pi_q_inv.apply_vec(&q_t.col(i))).collect();
    let e0_perm = pi_q_inv.apply_vec(&e0);
    let zcol_head: Vec<BitVector> = u.iter().map(|ui| e_p.mul_vec(ui).slice(0, r_p)).collect();
    let z0_head = e_p.mul_vec(&e0_perm.xor(&y_parity)).slice(0, r_p);

    let y_basis = y_sorted.slice(0, k);
    let y_perm = pi_p.apply_vec(&y_basis);
    let alpha_perm = pi_p.apply_slice(&alpha_sorted[0..k]);
    let y_head_perm = y_perm.slice(0, r_p);
    let y_tail_perm = y_perm.slice(r_p, k);
    let bt = b.transpose();
    // Discrepancy of the (0, 0) pair: z-head xor the folded hard decisions.
    let g0 = y_head_perm.xor(&bt.vec_mul(&y_tail_perm));
    let dbase0 = z0_head.xor(&g0);

    Preprocessed {
        g_sys,
        p_tilde,
        e_p,
        pi_p,
        r_p,
        q,
        e_q,
        pi_q,
        r_q,
        q_t,
        p_t,
        e0,
        y_sorted,
        alpha_sorted,
        perm_total,
        n0: frame.n0,
        y_parity,
        alpha_parity,
        u,
        e0_perm,
        zcol_head,
        dbase0,
        bt,
        y_head_perm,
        y_tail_perm,
        alpha_head: alpha_perm[0..r_p].to_vec(),
        alpha_tail: alpha_perm[r_p..k].to_vec(),
    }
}

/// Expand a primary pattern into its full parity pattern in the sorted
/// parity frame. The result is always valid: the linear system it induces is
/// feasible, equivalently `q * e^T = q * y_P^T`.
#[must_use]
pub fn tep_from_primary(e_pri: &BitVector, pre: &Preprocessed) -> BitVector {
    assert_eq!(e_pri.len(), pre.r_p, "primary pattern must have r_P bits");
    pre.pi_q.inverse().apply_vec(&pre.q_t.mul_vec(e_pri).xor(&pre.e0))
}

/// All codeword estimates of one valid parity pattern, in the sorted frame.
///
/// One estimate per extension pattern of weight up to `xi - w(e)`, enumerated
/// weight-then-lexicographic, so the count is `sum_{l<=xi-w(e)} C(k-r_P, l)`.
#[must_use]
pub fn recover_estimates(e: &BitVector, pre: &Preprocessed, xi: usize) -> Vec<BitVector> {
    let (k, r_p) = (pre.k(), pre.r_p);
    assert_eq!(e.len(), pre.n() - k, "pattern must cover the parity segment");
    let z = pre.e_p.mul_vec(&e.xor(&pre.y_parity));
    assert!(z.slice(r_p, z.len()).is_zero(), "pattern is not valid");
    let x_e = z.slice(0, r_p).concat(&BitVector::zeros(k - r_p));
    let parity = pre.y_parity.xor(e);
    let pi_p_inv = pre.pi_p.inverse();

    let budget = xi.saturating_sub(e.weight());
    let mut out = Vec::new();
    tep::for_each_support(k - r_p, budget, |ext| {
        let mut t = pre.y_tail_perm.clone();
        for &j in ext {
            t.flip(j);
        }
        let x = x_e.xor(&pre.p_t.mul_vec(&t));
        out.push(pi_p_inv.apply_vec(&x).concat(&parity));
        ControlFlow::Continue(())
    });
    out
}

/// Decode one frame with plain weight-capped enumeration.
#[must_use]
pub fn decode(frame: &ReceivedFrame, code: &LinearCode, params: LeosdParams) -> DecodeOutcome {
    decode_core(frame, code, params, None)
}

struct BestCandidate {
    whd: f64,
    d_head: BitVector,
    ext: BitVector,
    e: BitVector,
}

/// Shared enumeration loop. `guard_cfg: None` is the plain decoder; `Some`
/// adds the discarding and stopping conditions of the improved decoder.
pub(crate) fn decode_core(
    frame: &ReceivedFrame,
    code: &LinearCode,
    params: LeosdParams,
    guard_cfg: Option<&IleosdConfig>,
) -> DecodeOutcome {
    let pre = preprocess(frame, code);
    let (n, k) = (code.n, code.k);
    let m = n - k;
    let r_p = pre.r_p;
    let ext_len = k - r_p;
    let (rho, tau, xi) = params.clamped(r_p, n, k);

    // Operation model: sorting plus three eliminations plus the residual-row
    // products, then fixed per-pattern and per-estimate charges below.
    let mut counters = preprocessing_cost(n, k, r_p);
    let (nf, kf, mf) = (n as f64, k as f64, m as f64);
    let pri_bops = 2.0 * mf * (r_p as f64 + 2.0);
    let tep_bops = 2.0 * mf * (mf + 1.0);
    let est_bops = 2.0 * (kf - r_p as f64) * (kf + 1.0);

    let guard = guard_cfg.map(|cfg| Guard::new(&pre, &params, cfg));
    let mut state = guard.as_ref().map(ConditionState::new);

    let mut best: Option<BestCandidate> = None;
    let (mut q_t, mut q_c) = (0u64, 0u64);
    let mut stopped = false;

    let mut e_buf = pre.e0_perm.clone();
    let mut d_base = pre.dbase0.clone();
    let mut d_head = BitVector::zeros(r_p);

    tep::for_each_support(r_p, rho, |pri| {
        let ddot_pri = guard
            .as_ref()
            .map_or(0.0, |g| pri.iter().map(|&i| g.alpha_pri[i]).sum::<f64>());
        if let (Some(g), Some(s)) = (guard.as_ref(), state.as_ref()) {
            // Case (a): the primary alone is already no more likely than a
            // discarded pair, so every pair it spawns would be too.
            if g.shortcut_ab && g.c_pri - g.scale * ddot_pri <= s.log_lambda_max {
                return ControlFlow::Continue(());
            }
        }
        counters.bops += pri_bops;
        e_buf.clone_from(&pre.e0_perm);
        for &i in pri {
            e_buf.xor_assign(&pre.u[i]);
        }
        let w_e = e_buf.weight();
        if w_e > tau {
            return ControlFlow::Continue(());
        }
        d_base.clone_from(&pre.dbase0);
        for &i in pri {
            d_base.xor_assign(&pre.zcol_head[i]);
        }
        q_t += 1;
        counters.bops += tep_bops;
        counters.flops += mf + 1.0;
        debug_assert_eq!(
            pre.q.mul_vec(&e_buf),
            pre.q.mul_vec(&pre.y_parity),
            "generated pattern must keep the system feasible"
        );
        let d_parity: f64 = e_buf.ones().map(|i| pre.alpha_parity[i]).sum();

        let mut inner_stop = false;
        tep::for_each_support(ext_len, xi - w_e, |ext| {
            let ext_alpha: f64 = ext.iter().map(|&j| pre.alpha_tail[j]).sum();
            let mut log_lambda = 0.0;
            if let (Some(g), Some(s)) = (guard.as_ref(), state.as_mut()) {
                let ddot = ddot_pri + ext_alpha;
                log_lambda = (g.c_frame - g.scale * ddot).min(0.0);
                // Case (b): no more likely than a discarded pair.
                if g.shortcut_ab && log_lambda <= s.log_lambda_max {
                    return ControlFlow::Continue(());
                }
                // Case (c): not promising enough to beat the current best.
                let d_min = best.as_ref().map_or(f64::INFINITY, |b| b.whd);
                let p_d = crate::ileosd::promising_from_parts(
                    log_lambda.exp(),
                    d_min,
                    ddot,
                    g.p_bar,
                    g.ep_alpha,
                    m,
                    g.pow2_kn,
                );
                if p_d <= s.p_d_prime {
                    if log_lambda > s.log_lambda_max {
                        s.log_lambda_max = log_lambda;
                        s.lambda_max = log_lambda.exp();
                    }
                    return ControlFlow::Continue(());
                }
            }
            q_c += 1;
            counters.bops += est_bops;
            counters.flops += nf + 1.0;
            d_head.clone_from(&d_base);
            for &j in ext {
                d_head.xor_assign_words(pre.bt.row_words(j));
            }
            let whd = d_head.ones().map(|i| pre.alpha_head[i]).sum::<f64>() + ext_alpha + d_parity;
            if best.as_ref().map_or(true, |b| whd < b.whd) {
                best = Some(BestCandidate {
                    whd,
                    d_head: d_head.clone(),
                    ext: BitVector::from_indices(ext_len, ext),
                    e: e_buf.clone(),
                });
                if let (Some(g), Some(s)) = (guard.as_ref(), state.as_mut()) {
                    s.d_min = whd;
                    let log_p_pattern = g.sum_log_1mpe
                        + d_head.ones().map(|i| g.logit_head[i]).sum::<f64>()
                        + ext.iter().map(|&j| g.logit_tail[j]).sum::<f64>()
                        + e_buf.ones().map(|i| g.logit_parity[i]).sum::<f64>();
                    let p_s = crate::ileosd::success_from_parts(log_lambda, log_p_pattern, g.ln2_kn);
                    if p_s >= s.p_s_prime {
                        inner_stop = true;
                        return ControlFlow::Break(());
                    }
                }
            }
            ControlFlow::Continue(())
        });
        if inner_stop {
            stopped = true;
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });

    // Every pattern broke the tau cap: fall back to the unextended estimate
    // of the all-zero primary so the decoder still answers. Not counted.
    let best = best.unwrap_or_else(|| {
        let whd = pre.dbase0.ones().map(|i| pre.alpha_head[i]).sum::<f64>()
            + pre.e0_perm.ones().map(|i| pre.alpha_parity[i]).sum::<f64>();
        BestCandidate {
            whd,
            d_head: pre.dbase0.clone(),
            ext: BitVector::zeros(ext_len),
            e: pre.e0_perm.clone(),
        }
    });

    let x_perm = best.d_head.xor(&pre.y_head_perm).concat(&best.ext.xor(&pre.y_tail_perm));
    let x = pre.pi_p.inverse().apply_vec(&x_perm);
    let parity = pre.p_tilde.vec_mul(&x);
    debug_assert_eq!(parity, pre.y_parity.xor(&best.e), "solution must match its pattern");
    let c_sorted = x.concat(&parity);
    debug_assert!(
        (crate::osd::whd(&c_sorted, &pre.y_sorted, &pre.alpha_sorted) - best.whd).abs()
            <= 1e-9 * (1.0 + best.whd),
        "incremental distance must agree with a direct evaluation"
    );
    let codeword = pre.perm_total.inverse().apply_vec(&c_sorted);
    debug_assert!(code.contains(&codeword));

    DecodeOutcome {
        codeword,
        whd: best.whd,
        q_t,
        q_c,
        counters,
        early_stop: stopped,
    }
}

/// Model cost of sorting and the three eliminations for one frame.
fn preprocessing_cost(n: usize, k: usize, r_p: usize) -> OpCounters {
    let nf = n as f64;
    let mf = (n - k) as f64;
    let free = (n - k - r_p) as f64;
    OpCounters {
        bops: 5.0 * nf
            + analysis::c_ge(k, n)
            + analysis::c_ge(k, n - k)
            + analysis::c_ge(n - k - r_p, n - k)
            + 2.0 * free * mf
            + free * free,
        flops: nf + nf * nf.log2(),
    }
}
