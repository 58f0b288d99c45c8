//! Formula evaluation tables: no simulation, just the closed-form analysis
//! surfaced over parameter grids in CSV form.

use anyhow::{bail, Result};
use leosd::analysis::{
    complexity_leosd, expected_estimates, expected_teps, full_rank_prob, m_of_rho, p_est_bound,
    AnalysisConfig,
};
use leosd::channel::snr_db_to_n0;

/// Probability that the low-reliability parity block reaches maximal rank,
/// swept over every dimension `k` of an `n`-bit code.
pub fn full_rank_table(n: usize) -> Result<String> {
    if n < 2 {
        bail!("code length must be at least 2");
    }
    let mut out = String::from("k,rate,full_rank_prob\n");
    for k in 1..n {
        out.push_str(&format!("{},{:.4},{:.6}\n", k, k as f64 / n as f64, full_rank_prob(n, k)));
    }
    Ok(out)
}

/// Expected TEP/estimate counts and the complexity model for each cap
/// triple; appends the list-miss bound when an SNR is supplied.
pub fn counts_table(
    n: usize,
    k: usize,
    triples: &[(usize, usize, usize)],
    snr_db: Option<f64>,
) -> Result<String> {
    if k == 0 || k >= n {
        bail!("need 0 < k < n, got ({n},{k})");
    }
    if triples.is_empty() {
        bail!("no cap triples given");
    }
    let r_p = k.min(n - k);
    let cfg = snr_db.map(|s| AnalysisConfig::new(n, k, snr_db_to_n0(s)));
    let mut out = String::from("rho,tau,xi,mu_t,mu_c,bops_pred,flops_pred");
    if cfg.is_some() {
        out.push_str(",pest_bound");
    }
    out.push('\n');
    for &(rho, tau, xi) in triples {
        let ops = complexity_leosd(rho, tau, xi, n, k, r_p);
        out.push_str(&format!(
            "{},{},{},{:.4},{:.4},{:.6e},{:.6e}",
            rho,
            tau,
            xi,
            expected_teps(rho, tau, n, k, r_p),
            expected_estimates(rho, tau, xi, n, k, r_p),
            ops.bops,
            ops.flops
        ));
        if let Some(cfg) = &cfg {
            out.push_str(&format!(",{:.6e}", p_est_bound(cfg, rho, tau, xi)));
        }
        out.push('\n');
    }
    Ok(out)
}

/// Expected covered error weight `m(ρ)` for Hamming-shell caps 1..=ρ.
pub fn m_of_rho_table(rho: usize, n: usize, k: usize) -> Result<String> {
    if k == 0 || k >= n {
        bail!("need 0 < k < n, got ({n},{k})");
    }
    if rho == 0 {
        bail!("rho must be at least 1");
    }
    let mut out = String::from("rho,m\n");
    for r in 1..=rho {
        out.push_str(&format!("{},{:.4}\n", r, m_of_rho(r, n, k)));
    }
    Ok(out)
}

/// Parses `"3,3,3;2,3,3"` style cap-triple lists.
pub fn parse_triples(text: &str) -> Result<Vec<(usize, usize, usize)>> {
    let mut triples = Vec::new();
    for part in text.split(';').filter(|p| !p.trim().is_empty()) {
        let nums: Vec<usize> = part
            .split(',')
            .map(|f| f.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| anyhow::anyhow!("bad cap triple {part:?}: {e}"))?;
        let [rho, tau, xi] = nums[..] else {
            bail!("cap triple {part:?} must have exactly three fields rho,tau,xi");
        };
        triples.push((rho, tau, xi));
    }
    if triples.is_empty() {
        bail!("no cap triples given");
    }
    Ok(triples)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_rank_sweep_has_the_half_rate_dip() {
        let table = full_rank_table(64).unwrap();
        let row = table.lines().find(|l| l.starts_with("32,")).unwrap();
        let prob: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
        assert!((prob - 0.288788).abs() < 1e-4, "got {prob}");
        let extremes: Vec<f64> = table
            .lines()
            .skip(1)
            .filter(|l| l.starts_with("1,") || l.starts_with("63,"))
            .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
            .collect();
        assert!(extremes.iter().all(|p| *p > 0.49), "dip should be at half rate");
    }

    #[test]
    fn counts_table_matches_reference_parameter_sets() {
        let t = counts_table(64, 30, &[(3, 3, 3), (2, 3, 3), (2, 2, 2)], None).unwrap();
        let mu_t: Vec<f64> = t
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
            .collect();
        for (got, want) in mu_t.iter().zip([411.25, 157.5, 37.25]) {
            assert!((got - want).abs() < 0.01, "mu_t {got} vs {want}");
        }
    }

    #[test]
    fn m_of_rho_reproduces_the_rate_half_example() {
        let t = m_of_rho_table(3, 64, 30).unwrap();
        let last = t.lines().last().unwrap();
        let m: f64 = last.rsplit(',').next().unwrap().parse().unwrap();
        assert!((m - 4.2250).abs() < 5e-4, "m(3) = {m}");
    }

    #[test]
    fn triple_parsing_accepts_lists_and_rejects_garbage() {
        assert_eq!(parse_triples("3,3,3;2,3,3").unwrap(), vec![(3, 3, 3), (2, 3, 3)]);
        assert_eq!(parse_triples(" 1,2,3 ").unwrap(), vec![(1, 2, 3)]);
        assert!(parse_triples("1,2").is_err());
        assert!(parse_triples("a,b,c").is_err());
        assert!(parse_triples("").is_err());
    }
}
