//! Closed-form performance and complexity models: reliability order
//! statistics, error-count pmfs over reliability segments, list-miss bounds,
//! full-rank probability, expected pattern/estimate counts, and BOP/FLOP
//! cost models for both decoders.

use crate::osd::OpCounters;

/// Settings for the formula evaluators that need the code dimensions, the
/// noise level, or numerical integration.
#[derive(Clone, Debug)]
pub struct AnalysisConfig {
    pub n: usize,
    pub k: usize,
    pub n0: f64,
    /// Assumed rank of the parity block; `None` means full rank,
    /// min(k, n−k).
    pub r_p: Option<usize>,
    /// Simpson panels per integral.
    pub panels: usize,
    /// Upper integration limit is 1 + radius_sigmas * sqrt(n0/2); must cover
    /// at least eight standard deviations of the reliability density.
    pub radius_sigmas: f64,
}

impl AnalysisConfig {
    #[must_use]
    pub fn new(n: usize, k: usize, n0: f64) -> Self {
        let cfg = Self {
            n,
            k,
            n0,
            r_p: None,
            panels: 2048,
            radius_sigmas: 12.0,
        };
        cfg.validate();
        cfg
    }

    fn validate(&self) {
        assert!(0 < self.k && self.k < self.n, "need 0 < k < n");
        assert!(self.n0 > 0.0, "noise density must be positive");
        assert!(
            self.radius_sigmas >= 8.0,
            "integration must cover at least 8 sigma"
        );
        assert!(self.panels >= 16, "too few quadrature panels");
    }

    /// Effective parity-block rank under this config's assumption.
    #[must_use]
    pub fn r_p_eff(&self) -> usize {
        let full = self.k.min(self.n - self.k);
        let r = self.r_p.unwrap_or(full);
        assert!(r <= full, "rank cannot exceed min(k, n-k)");
        r
    }

    fn upper_limit(&self) -> f64 {
        1.0 + self.radius_sigmas * (self.n0 / 2.0).sqrt()
    }
}

// ============================================================================
// Elementary pieces
// ============================================================================

/// Gaussian tail probability Q(x).
#[must_use]
pub fn q_func(x: f64) -> f64 {
    0.5 * libm::erfc(x / std::f64::consts::SQRT_2)
}

/// Binomial coefficient as f64 (multiplicative form; exact well past the
/// integer values used here).
#[must_use]
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut c = 1.0f64;
    for i in 1..=k {
        c = c * (n - k + i) as f64 / i as f64;
    }
    c
}

/// Partial binomial sum: sum of C(n, i) for i = 0..=cap.
#[must_use]
pub fn binomial_sum(n: usize, cap: usize) -> f64 {
    (0..=cap.min(n)).map(|i| binomial(n, i)).sum()
}

/// Binomial CDF: P(Bin(n, p) <= cap).
#[must_use]
pub fn binomial_cdf(n: usize, p: f64, cap: usize) -> f64 {
    let cap = cap.min(n);
    let q = 1.0 - p;
    (0..=cap)
        .map(|i| binomial(n, i) * p.powi(i as i32) * q.powi((n - i) as i32))
        .sum()
}

/// Composite Simpson quadrature on [lo, hi].
fn integrate(lo: f64, hi: f64, panels: usize, f: impl Fn(f64) -> f64) -> f64 {
    let m = 2 * panels;
    let h = (hi - lo) / m as f64;
    let mut acc = f(lo) + f(hi);
    for i in 1..m {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(lo + i as f64 * h);
    }
    acc * h / 3.0
}

// ============================================================================
// Reliability densities
// ============================================================================

/// Density of the magnitude |gamma| of a channel output: two Gaussian lobes
/// of variance n0/2 centered at ±1, folded onto alpha >= 0.
#[must_use]
pub fn reliability_pdf(alpha: f64, n0: f64) -> f64 {
    if alpha < 0.0 {
        return 0.0;
    }
    let norm = 1.0 / (std::f64::consts::PI * n0).sqrt();
    norm * ((-(alpha + 1.0).powi(2) / n0).exp() + (-(alpha - 1.0).powi(2) / n0).exp())
}

/// Distribution function matching [`reliability_pdf`].
#[must_use]
pub fn reliability_cdf(alpha: f64, n0: f64) -> f64 {
    if alpha < 0.0 {
        return 0.0;
    }
    let s = (n0 / 2.0).sqrt();
    1.0 - q_func((alpha + 1.0) / s) - q_func((alpha - 1.0) / s)
}

/// Density of the i-th smallest reliability among n i.i.d. draws
/// (1-indexed). Evaluated in log space so the combinatorial factor stays
/// finite up to n = 256.
#[must_use]
pub fn ordered_reliability_pdf(i: usize, n: usize, alpha: f64, n0: f64) -> f64 {
    assert!(1 <= i && i <= n, "order index out of range");
    let f = reliability_pdf(alpha, n0);
    if f == 0.0 {
        return 0.0;
    }
    let cdf = reliability_cdf(alpha, n0).clamp(0.0, 1.0);
    let ln_coeff = libm::lgamma((n + 1) as f64)
        - libm::lgamma(i as f64)
        - libm::lgamma((n - i + 1) as f64);
    let low = if i > 1 {
        if cdf == 0.0 {
            return 0.0;
        }
        (i - 1) as f64 * cdf.ln()
    } else {
        0.0
    };
    let high = if n > i {
        if cdf == 1.0 {
            return 0.0;
        }
        (n - i) as f64 * (1.0 - cdf).ln()
    } else {
        0.0
    };
    (ln_coeff + low + high).exp() * f
}

/// Hard-decision error probability of a position given that its reliability
/// exceeds x.
fn error_prob_above(x: f64, n0: f64) -> f64 {
    let s = (2.0 * n0).sqrt();
    let qa = q_func((2.0 * x + 2.0) / s);
    let qb = q_func((2.0 * x - 2.0) / s);
    if qa + qb == 0.0 {
        0.0
    } else {
        qa / (qa + qb)
    }
}

/// pmf of the number of hard-decision errors among the ordered positions
/// a..=n (ascending reliability): integrates a binomial kernel with success
/// probability p(x) against the density of the (a−1)-th smallest
/// reliability. Requires a >= 2.
#[must_use]
pub fn error_count_pmf(cfg: &AnalysisConfig, a: usize, j: usize) -> f64 {
    cfg.validate();
    let n = cfg.n;
    assert!(2 <= a && a <= n, "segment start must be in 2..=n");
    let m = n - a + 1;
    assert!(j <= m, "error count exceeds segment size");
    let coeff = binomial(m, j);
    let value = integrate(0.0, cfg.upper_limit(), cfg.panels, |x| {
        let p = error_prob_above(x, cfg.n0);
        let kernel = coeff * p.powi(j as i32) * (1.0 - p).powi((m - j) as i32);
        kernel * ordered_reliability_pdf(a - 1, n, x, cfg.n0)
    });
    value.clamp(0.0, 1.0)
}

/// Partial sum of [`error_count_pmf`] over j = 0..=cap.
fn error_count_cdf(cfg: &AnalysisConfig, a: usize, cap: usize) -> f64 {
    let m = cfg.n - a + 1;
    (0..=cap.min(m)).map(|j| error_count_pmf(cfg, a, j)).sum()
}

// ============================================================================
// List-miss bound and rank probability
// ============================================================================

/// Probability bound that the transmitted codeword misses the candidate
/// list: one minus the smallest of the three segment coverage probabilities
/// (primary cap over the n−r_P+1.. tail, total cap over the parity segment
/// k+1.., extended cap over r_P+1..).
#[must_use]
pub fn p_est_bound(cfg: &AnalysisConfig, rho: usize, tau: usize, xi: usize) -> f64 {
    let (n, k) = (cfg.n, cfg.k);
    let r_p = cfg.r_p_eff();
    assert!(r_p >= 1, "rank-0 parity block has no meaningful bound");
    let s_rho = error_count_cdf(cfg, n - r_p + 1, rho);
    let s_tau = error_count_cdf(cfg, k + 1, tau);
    let s_xi = error_count_cdf(cfg, r_p + 1, xi);
    (1.0 - s_rho.min(s_tau).min(s_xi)).clamp(0.0, 1.0)
}

/// Probability that the parity block of a randomly constructed generator
/// matrix reaches its maximal rank min(k, n−k).
#[must_use]
pub fn full_rank_prob(n: usize, k: usize) -> f64 {
    assert!(0 < k && k < n, "need 0 < k < n");
    let (rows, cols) = if k <= n - k {
        (k, n - k)
    } else {
        (n - k, k)
    };
    (1..=rows)
        .map(|l| 1.0 - 2.0f64.powi(l as i32 - 1 - cols as i32))
        .product()
}

/// High-SNR upper bound on the list-miss probability: the largest of the
/// three per-segment exponential terms.
#[must_use]
pub fn asymptotic_pest(
    rho: usize,
    tau: usize,
    xi: usize,
    n: usize,
    k: usize,
    r_p: usize,
    n0: f64,
) -> f64 {
    let term = |len: usize, cap: usize| {
        binomial(len, cap + 1) * (-4.0 * (cap + 1) as f64 / n0).exp()
    };
    term(r_p, rho)
        .max(term(n - k, tau))
        .max(term(n - r_p, xi))
}

/// Real-valued reprocessing order at which OSD approaches ML at noise level
/// n0: d_H / (4 − n0·ln k) − 1. Returns None once n0·ln k >= 4 (the formula
/// leaves its asymptotic regime).
#[must_use]
pub fn osd_ml_order(d_h: usize, k: usize, n0: f64) -> Option<f64> {
    let denom = 4.0 - n0 * (k as f64).ln();
    if denom <= 0.0 {
        None
    } else {
        Some(d_h as f64 / denom - 1.0)
    }
}

/// Parity-cap selection curve: the total-weight cap that balances the
/// primary and parity segment coverages for a given primary cap.
#[must_use]
pub fn m_of_rho(rho: usize, n: usize, k: usize) -> f64 {
    assert!(0 < k && k < n, "need 0 < k < n");
    let nk = (n - k) as f64;
    let kf = k as f64;
    rho as f64 * (nk / kf).sqrt() + 0.5 * (nk - (nk * kf).sqrt())
}

// ============================================================================
// Expected counts
// ============================================================================

/// Expected number of test error patterns passing the total-weight cap per
/// frame, treating the rows mixing the primary bits into the dependent
/// parity positions as uniformly random.
#[must_use]
pub fn expected_teps(rho: usize, tau: usize, n: usize, k: usize, r_p: usize) -> f64 {
    let free = n - k - r_p;
    let scale = 2.0f64.powi(-(free as i32));
    let mut total = 0.0;
    for l in 0..=rho.min(r_p) {
        let inner: f64 = (0..=tau.saturating_sub(l).min(free))
            .map(|j| binomial(free, j))
            .sum();
        total += binomial(r_p, l) * inner * scale;
    }
    total
}

/// Expected number of patterns of total weight exactly j.
fn expected_teps_of_weight(rho: usize, j: usize, n: usize, k: usize, r_p: usize) -> f64 {
    let free = n - k - r_p;
    let scale = 2.0f64.powi(-(free as i32));
    (0..=rho.min(j).min(r_p))
        .map(|l| binomial(r_p, l) * binomial(free, j - l) * scale)
        .sum()
}

/// Expected number of recovered codeword estimates per frame.
#[must_use]
pub fn expected_estimates(
    rho: usize,
    tau: usize,
    xi: usize,
    n: usize,
    k: usize,
    r_p: usize,
) -> f64 {
    let ext = k - r_p;
    let mut total = 0.0;
    for j in 0..=tau.min(n - k) {
        let ext_count: f64 = (0..=xi.saturating_sub(j).min(ext))
            .map(|u| binomial(ext, u))
            .sum();
        total += expected_teps_of_weight(rho, j, n, k, r_p) * ext_count;
    }
    total
}

// ============================================================================
// Complexity models
// ============================================================================

/// BOP cost of Gaussian elimination on an a x b (or b x a) matrix.
#[must_use]
pub fn c_ge(a: usize, b: usize) -> f64 {
    let m = a.min(b) as f64;
    let (a, b) = (a as f64, b as f64);
    (m - 1.0) * a * b - 0.5 * (m - 1.0) * (m - 1.0) * m
}

/// Predicted operation counts for one linear-equation decode with the given
/// caps, split into preprocessing plus per-pattern/per-estimate terms.
#[must_use]
pub fn complexity_leosd(
    rho: usize,
    tau: usize,
    xi: usize,
    n: usize,
    k: usize,
    r_p: usize,
) -> OpCounters {
    let (nf, kf) = (n as f64, k as f64);
    let nk = (n - k) as f64;
    let free = (n - k - r_p) as f64;
    let pre_bops =
        5.0 * nf + c_ge(k, n) + c_ge(k, n - k) + c_ge(n - k - r_p, n - k) + 2.0 * free * nk
            + free * free;
    let primaries = binomial_sum(r_p, rho);
    let mu_t = expected_teps(rho, tau, n, k, r_p);
    let mu_c = expected_estimates(rho, tau, xi, n, k, r_p);
    OpCounters {
        bops: pre_bops
            + 2.0 * primaries * nk * (r_p as f64 + 2.0)
            + 2.0 * mu_t * nk * (nk + 1.0)
            + 2.0 * mu_c * (kf - r_p as f64) * (kf + 1.0),
        flops: nf + nf * nf.log2() + mu_c * (nf + 1.0) + mu_t * (nk + 1.0),
    }
}

/// Predicted operation counts for one order-m re-encoding decode.
#[must_use]
pub fn complexity_osd(order: usize, n: usize, k: usize) -> OpCounters {
    let (nf, kf) = (n as f64, k as f64);
    let teps = binomial_sum(k, order);
    OpCounters {
        bops: 5.0 * nf + c_ge(k, n) + teps * (2.0 * kf * nf + nf),
        flops: nf + nf * nf.log2() + teps * (nf + 1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::snr_db_to_n0;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(0, 0), 1.0);
        assert_eq!(binomial(4, 7), 0.0);
        assert_eq!(binomial_sum(30, 3), 4526.0);
        assert!((binomial(64, 32) - 1.832624140942591e18).abs() / 1.83e18 < 1e-12);
        assert!((binomial_cdf(4, 0.25, 1) - 0.73828125).abs() < 1e-12);
    }

    #[test]
    fn reliability_density_normalizes() {
        for snr_db in [-2.0, 0.0, 4.0] {
            let n0 = snr_db_to_n0(snr_db);
            let hi = 1.0 + 12.0 * (n0 / 2.0).sqrt();
            let total = integrate(0.0, hi, 4096, |a| reliability_pdf(a, n0));
            assert!((total - 1.0).abs() < 1e-9, "snr {snr_db}: {total}");
            assert_eq!(reliability_cdf(0.0, n0), 0.0);
            assert!(reliability_pdf(-0.5, n0) == 0.0);
            // CDF at the upper limit is 1.
            assert!((reliability_cdf(hi, n0) - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn cdf_derivative_matches_pdf() {
        let n0 = snr_db_to_n0(1.0);
        for alpha in [0.1, 0.5, 1.0, 1.7, 2.5] {
            let h = 1e-6;
            let num = (reliability_cdf(alpha + h, n0) - reliability_cdf(alpha - h, n0)) / (2.0 * h);
            assert!(
                (num - reliability_pdf(alpha, n0)).abs() < 1e-6,
                "alpha {alpha}"
            );
        }
    }

    #[test]
    fn ordered_density_normalizes_and_degenerates() {
        let n0 = snr_db_to_n0(2.0);
        let hi = 1.0 + 12.0 * (n0 / 2.0).sqrt();
        for (i, n) in [(1, 1), (1, 5), (3, 5), (31, 64), (64, 64)] {
            let total = integrate(0.0, hi, 4096, |a| ordered_reliability_pdf(i, n, a, n0));
            assert!((total - 1.0).abs() < 1e-6, "i={i} n={n}: {total}");
        }
        for a in [0.2, 0.9, 1.4] {
            assert!(
                (ordered_reliability_pdf(1, 1, a, n0) - reliability_pdf(a, n0)).abs() < 1e-12
            );
        }
    }

    #[test]
    fn error_count_pmf_normalizes_and_orders() {
        let cfg = AnalysisConfig::new(64, 30, snr_db_to_n0(2.0));
        for a in [31, 35, 60] {
            let m = 64 - a + 1;
            let total: f64 = (0..=m).map(|j| error_count_pmf(&cfg, a, j)).sum();
            assert!((total - 1.0).abs() < 1e-6, "a={a}: {total}");
        }
        // Partial sums nondecreasing in j.
        let mut prev = 0.0;
        for j in 0..=10 {
            let s = error_count_cdf(&cfg, 31, j);
            assert!(s >= prev - 1e-12);
            prev = s;
        }
    }

    #[test]
    fn quadrature_is_converged() {
        let coarse = AnalysisConfig::new(64, 30, snr_db_to_n0(2.0));
        let mut fine = coarse.clone();
        fine.panels = coarse.panels * 2;
        for (a, j) in [(31, 0), (31, 2), (35, 1)] {
            let d = (error_count_pmf(&coarse, a, j) - error_count_pmf(&fine, a, j)).abs();
            assert!(d < 1e-7, "a={a} j={j}: {d}");
        }
    }

    #[test]
    fn noisy_limit_is_binomial() {
        // As n0 grows the conditional error probability tends to 1/2 and the
        // count becomes Bin(n−a+1, 1/2).
        let mut cfg = AnalysisConfig::new(16, 8, 5e4);
        cfg.panels = 8192;
        let (a, m) = (9, 8);
        for j in 0..=m {
            let want = binomial(m, j) * 2.0f64.powi(-(m as i32));
            let got = error_count_pmf(&cfg, a, j);
            assert!((got - want).abs() < 5e-3, "j={j}: {got} vs {want}");
        }
    }

    #[test]
    fn full_rank_prob_values() {
        assert!((full_rank_prob(64, 32) - 0.28878809515384113).abs() < 1e-12);
        assert!((full_rank_prob(2, 1) - 0.5).abs() < 1e-15);
        assert!((full_rank_prob(5, 2) - 42.0 / 64.0).abs() < 1e-15);
        // Symmetric in k vs n−k.
        assert_eq!(full_rank_prob(64, 20), full_rank_prob(64, 44));
    }

    #[test]
    fn full_rank_prob_matches_exhaustive_2x3() {
        let mut full = 0;
        for bits in 0u32..64 {
            let m = crate::gf2::BitMatrix::from_fn(2, 3, |r, c| (bits >> (3 * r + c)) & 1 == 1);
            if m.rank() == 2 {
                full += 1;
            }
        }
        assert_eq!(full, 42);
    }

    #[test]
    fn expected_counts_match_hand_values() {
        // Low-rate code: parity block taller than wide, r_P = k.
        assert!((expected_teps(3, 3, 64, 30, 30) - 411.25).abs() < 1e-9);
        assert!((expected_teps(2, 3, 64, 30, 30) - 157.5).abs() < 1e-9);
        assert!((expected_teps(2, 2, 64, 30, 30) - 37.25).abs() < 1e-9);
        // With r_P = k there are no extended patterns.
        assert!(
            (expected_estimates(3, 3, 3, 64, 30, 30) - expected_teps(3, 3, 64, 30, 30)).abs()
                < 1e-12
        );
        // High-rate code: r_P = n−k, every pattern is its own primary.
        assert!((expected_teps(2, 2, 128, 85, 43) - 947.0).abs() < 1e-9);
        assert!((expected_estimates(2, 2, 3, 128, 85, 43) - 90085.0).abs() < 1e-6);
        assert!((expected_estimates(1, 1, 2, 128, 85, 43) - 2753.0).abs() < 1e-9);
        assert!((expected_estimates(1, 1, 1, 128, 85, 43) - 86.0).abs() < 1e-9);
        assert!((expected_teps(1, 1, 128, 85, 43) - 44.0).abs() < 1e-9);
    }

    #[test]
    fn m_of_rho_values() {
        assert!((m_of_rho(3, 64, 30) - 4.2250).abs() < 5e-5);
        assert!((m_of_rho(5, 128, 50) - 14.024).abs() < 5e-3);
        assert!((m_of_rho(4, 32, 16) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn ml_order_condition() {
        // Noiseless limit: d_H/4 − 1.
        assert!((osd_ml_order(14, 30, 1e-9).unwrap() - 2.5).abs() < 1e-6);
        assert!(osd_ml_order(14, 30, 2.0).is_none());
    }

    #[test]
    fn complexity_reproduces_published_totals() {
        let osd = complexity_osd(3, 64, 30);
        assert!((osd.bops - 17_712_889.0).abs() < 0.5);
        assert!((osd.flops - 294_638.0).abs() < 0.5);
        let le = complexity_leosd(3, 3, 3, 64, 30, 30);
        assert!((le.bops - 10_888_379.0).abs() < 0.5);
        assert!((le.flops - 41_573.0).abs() < 0.5);
        // Zero order: preprocessing plus a single re-encode.
        let z = complexity_osd(0, 64, 30);
        let pre = 5.0 * 64.0 + c_ge(30, 64);
        assert!((z.bops - (pre + 2.0 * 30.0 * 64.0 + 64.0)).abs() < 1e-9);
    }

    #[test]
    fn asymptotic_pest_shape() {
        let n0 = snr_db_to_n0(6.0);
        let a = asymptotic_pest(3, 3, 3, 64, 32, 32, n0);
        // With equal caps the largest segment dominates.
        let expect = binomial(32, 4) * (-16.0 / n0).exp();
        assert!((a - expect).abs() / expect < 1e-12);
        // Smaller noise, smaller bound.
        assert!(asymptotic_pest(3, 3, 3, 64, 32, 32, snr_db_to_n0(8.0)) < a);
    }

    #[test]
    fn pest_bound_basics() {
        let cfg = AnalysisConfig::new(64, 30, snr_db_to_n0(2.0));
        let b = p_est_bound(&cfg, 2, 2, 2);
        assert!((0.0..=1.0).contains(&b));
        // List-miss probability alone; ML decoding error is accounted separately.
        assert!((b - 0.014481).abs() < 5e-4, "bound {b}");
        // Maximal caps cover every error pattern.
        let full = p_est_bound(&cfg, 30, 34, 34);
        assert!(full < 1e-6, "maximal caps leave {full}");
        // Monotone nonincreasing in each cap.
        assert!(p_est_bound(&cfg, 3, 3, 3) <= p_est_bound(&cfg, 2, 3, 3) + 1e-12);
        assert!(p_est_bound(&cfg, 2, 3, 3) <= p_est_bound(&cfg, 2, 2, 3) + 1e-12);
        assert!(p_est_bound(&cfg, 2, 3, 4) <= p_est_bound(&cfg, 2, 3, 3) + 1e-12);
    }
}
