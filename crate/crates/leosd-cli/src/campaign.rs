//! Campaign configuration and the seeded Monte Carlo runner.
//!
//! Frames are numbered per SNR point and each frame derives its RNG seed from
//! (master seed, SNR index, frame index) through SplitMix64, so the noise a
//! frame sees never depends on which worker ran it. Workers process fixed
//! 256-frame chunks and the stop rule is evaluated over chunks in frame
//! order, which makes the counted frame set — and therefore every reported
//! number — independent of the worker count.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use leosd::analysis::{
    binomial_sum, complexity_leosd, complexity_osd, error_count_pmf, expected_estimates,
    expected_teps, p_est_bound, AnalysisConfig,
};
use leosd::channel::{self, snr_db_to_n0};
use leosd::codes::LinearCode;
use leosd::gf2::BitVector;
use leosd::ileosd::{decode_improved_with, IleosdConfig};
use leosd::leosd::{decode, LeosdParams};
use leosd::osd::decode_osd;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

const CHUNK: u64 = 256;

// ============================================================================
// Configuration
// ============================================================================

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecoderSpec {
    Osd {
        order: usize,
    },
    Leosd {
        rho: usize,
        tau: usize,
        xi: usize,
    },
    Ileosd {
        rho: usize,
        tau: usize,
        xi: usize,
        #[serde(default)]
        ps_factor: Option<f64>,
        #[serde(default)]
        pd_factor: Option<f64>,
        #[serde(default)]
        shortcut_ab: Option<bool>,
    },
}

fn default_min_errors() -> u64 {
    200
}
fn default_max_frames() -> u64 {
    1_000_000
}
fn default_workers() -> usize {
    1
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Campaign {
    /// Code specification string, see [`crate::codespec::build_code`].
    pub code: String,
    pub decoder: DecoderSpec,
    pub snr_db: Vec<f64>,
    #[serde(default = "default_min_errors")]
    pub min_errors: u64,
    #[serde(default = "default_max_frames")]
    pub max_frames: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_workers")]
    pub workers: usize,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

impl Campaign {
    pub fn validate(&self) -> Result<()> {
        if self.snr_db.is_empty() {
            bail!("SNR list must not be empty");
        }
        if !self.snr_db.iter().all(|s| s.is_finite()) {
            bail!("SNR values must be finite");
        }
        if self.min_errors == 0 {
            bail!("min_errors must be at least 1");
        }
        if self.max_frames == 0 {
            bail!("max_frames must be at least 1");
        }
        if self.workers == 0 {
            bail!("workers must be at least 1");
        }
        Ok(())
    }
}

#[derive(Clone, Copy)]
enum DecoderKind {
    Osd(usize),
    Le(LeosdParams),
    Ile(LeosdParams, IleosdConfig),
}

impl DecoderKind {
    fn from_spec(spec: &DecoderSpec) -> Self {
        match *spec {
            DecoderSpec::Osd { order } => DecoderKind::Osd(order),
            DecoderSpec::Leosd { rho, tau, xi } => DecoderKind::Le(LeosdParams::new(rho, tau, xi)),
            DecoderSpec::Ileosd {
                rho,
                tau,
                xi,
                ps_factor,
                pd_factor,
                shortcut_ab,
            } => {
                let mut cfg = IleosdConfig::default();
                if let Some(v) = ps_factor {
                    cfg.ps_factor = v;
                }
                if let Some(v) = pd_factor {
                    cfg.pd_factor = v;
                }
                if let Some(v) = shortcut_ab {
                    cfg.shortcut_ab = v;
                }
                DecoderKind::Ile(LeosdParams::new(rho, tau, xi), cfg)
            }
        }
    }
}

// ============================================================================
// Results
// ============================================================================

/// One aggregated SNR point. The CSV row carries the fixed column set;
/// maxima and early-stop counts appear in the human-readable summary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointRow {
    pub snr_db: f64,
    pub frames: u64,
    pub block_errors: u64,
    pub bler: f64,
    pub qt_mean: f64,
    pub qc_mean: f64,
    pub bops_mean: f64,
    pub flops_mean: f64,
    pub mu_t_pred: f64,
    pub mu_c_pred: f64,
    pub pest_bound: f64,
    pub qt_max: u64,
    pub qc_max: u64,
    pub early_stops: u64,
    pub bops_pred: f64,
    pub flops_pred: f64,
}

pub const CSV_HEADER: &str =
    "snr_db,frames,block_errors,bler,qt_mean,qc_mean,bops_mean,flops_mean,mu_t_pred,mu_c_pred,pest_bound";

impl PointRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{:.6e},{:.4},{:.4},{:.6e},{:.6e},{:.4},{:.4},{:.6e}",
            self.snr_db,
            self.frames,
            self.block_errors,
            self.bler,
            self.qt_mean,
            self.qc_mean,
            self.bops_mean,
            self.flops_mean,
            self.mu_t_pred,
            self.mu_c_pred,
            self.pest_bound
        )
    }

    pub fn summary(&self) -> String {
        format!(
            "snr {:+.2} dB: {} frames, {} errors, BLER {:.4e}; TEPs mean {:.1} max {}, estimates mean {:.1} max {}, early stops {}; BOPs {:.3e} (model {:.3e}), FLOPs {:.3e} (model {:.3e}), list-miss bound {:.2e}",
            self.snr_db,
            self.frames,
            self.block_errors,
            self.bler,
            self.qt_mean,
            self.qt_max,
            self.qc_mean,
            self.qc_max,
            self.early_stops,
            self.bops_mean,
            self.bops_pred,
            self.flops_mean,
            self.flops_pred,
            self.pest_bound
        )
    }
}

#[derive(Clone, Copy, Default)]
struct ChunkStats {
    frames: u64,
    errors: u64,
    qt_sum: f64,
    qc_sum: f64,
    qt_max: u64,
    qc_max: u64,
    bops: f64,
    flops: f64,
    early: u64,
}

// ============================================================================
// Seeding
// ============================================================================

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-frame RNG seed. Mixing the SNR index and frame index separately keeps
/// frame streams disjoint across points and independent of worker scheduling.
pub fn frame_seed(master: u64, snr_index: usize, frame: u64) -> u64 {
    splitmix64(splitmix64(master ^ (snr_index as u64).wrapping_mul(0xA24B_AED4_963E_E407)) ^ frame)
}

// ============================================================================
// Runner
// ============================================================================

fn run_chunk(
    code: &LinearCode,
    kind: DecoderKind,
    snr_db: f64,
    snr_idx: usize,
    frames: std::ops::Range<u64>,
    master: u64,
) -> ChunkStats {
    let mut s = ChunkStats::default();
    for f in frames {
        let mut rng = ChaCha8Rng::seed_from_u64(frame_seed(master, snr_idx, f));
        let msg = BitVector::random(code.k, &mut rng);
        let cw = code.encode(&msg);
        let frame = channel::transmit(&cw, snr_db, &mut rng);
        let out = match kind {
            DecoderKind::Osd(order) => decode_osd(&frame, code, order),
            DecoderKind::Le(params) => decode(&frame, code, params),
            DecoderKind::Ile(params, cfg) => decode_improved_with(&frame, code, params, &cfg),
        };
        s.frames += 1;
        s.errors += u64::from(out.codeword != cw);
        s.qt_sum += out.q_t as f64;
        s.qc_sum += out.q_c as f64;
        s.qt_max = s.qt_max.max(out.q_t);
        s.qc_max = s.qc_max.max(out.q_c);
        s.bops += out.counters.bops;
        s.flops += out.counters.flops;
        s.early += u64::from(out.early_stop);
    }
    s
}

fn predictions(code: &LinearCode, kind: DecoderKind, n0: f64) -> (f64, f64, f64, f64, f64) {
    let (n, k) = (code.n, code.k);
    let r_p = k.min(n - k);
    let cfg = AnalysisConfig::new(n, k, n0);
    match kind {
        DecoderKind::Osd(order) => {
            let mu = binomial_sum(k, order);
            let miss: f64 = 1.0
                - (0..=order.min(k))
                    .map(|j| error_count_pmf(&cfg, n - k + 1, j))
                    .sum::<f64>();
            let ops = complexity_osd(order, n, k);
            (mu, mu, miss.clamp(0.0, 1.0), ops.bops, ops.flops)
        }
        DecoderKind::Le(p) | DecoderKind::Ile(p, _) => {
            let mu_t = expected_teps(p.rho, p.tau, n, k, r_p);
            let mu_c = expected_estimates(p.rho, p.tau, p.xi, n, k, r_p);
            let ops = complexity_leosd(p.rho, p.tau, p.xi, n, k, r_p);
            (mu_t, mu_c, p_est_bound(&cfg, p.rho, p.tau, p.xi), ops.bops, ops.flops)
        }
    }
}

/// Runs one SNR point to the stop rule. Deterministic in (campaign, point).
fn run_point(
    code: &LinearCode,
    kind: DecoderKind,
    snr_db: f64,
    snr_idx: usize,
    c: &Campaign,
) -> PointRow {
    let mut included: Vec<ChunkStats> = Vec::new();
    let mut next_start = 0u64;
    let (mut frames, mut errors) = (0u64, 0u64);
    'waves: loop {
        let mut wave = Vec::new();
        for _ in 0..c.workers {
            if next_start >= c.max_frames {
                break;
            }
            let end = (next_start + CHUNK).min(c.max_frames);
            wave.push(next_start..end);
            next_start = end;
        }
        if wave.is_empty() {
            break;
        }
        let results: Vec<ChunkStats> = std::thread::scope(|scope| {
            let handles: Vec<_> = wave
                .into_iter()
                .map(|r| scope.spawn(move || run_chunk(code, kind, snr_db, snr_idx, r, c.seed)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("decode worker panicked"))
                .collect()
        });
        // Merge in frame order and re-evaluate the stop rule after each
        // chunk; surplus chunks computed by the wave are discarded.
        for r in results {
            included.push(r);
            frames += r.frames;
            errors += r.errors;
            if errors >= c.min_errors || frames >= c.max_frames {
                break 'waves;
            }
        }
    }

    let ff = frames as f64;
    let (mu_t, mu_c, pest, bops_pred, flops_pred) = predictions(code, kind, snr_db_to_n0(snr_db));
    PointRow {
        snr_db,
        frames,
        block_errors: errors,
        bler: errors as f64 / ff,
        qt_mean: included.iter().map(|s| s.qt_sum).sum::<f64>() / ff,
        qc_mean: included.iter().map(|s| s.qc_sum).sum::<f64>() / ff,
        bops_mean: included.iter().map(|s| s.bops).sum::<f64>() / ff,
        flops_mean: included.iter().map(|s| s.flops).sum::<f64>() / ff,
        mu_t_pred: mu_t,
        mu_c_pred: mu_c,
        pest_bound: pest,
        qt_max: included.iter().map(|s| s.qt_max).max().unwrap_or(0),
        qc_max: included.iter().map(|s| s.qc_max).max().unwrap_or(0),
        early_stops: included.iter().map(|s| s.early).sum(),
        bops_pred,
        flops_pred,
    }
}

#[derive(Serialize)]
struct Sidecar<'a> {
    tool: &'static str,
    version: &'static str,
    campaign: &'a Campaign,
}

fn open_outputs(c: &Campaign) -> Result<Option<BufWriter<File>>> {
    let Some(path) = &c.out else { return Ok(None) };
    let sidecar_path = sidecar_path(path);
    let sidecar = Sidecar {
        tool: "leosd",
        version: env!("CARGO_PKG_VERSION"),
        campaign: c,
    };
    std::fs::write(&sidecar_path, serde_json::to_string_pretty(&sidecar)?)
        .with_context(|| format!("writing {sidecar_path:?}"))?;
    let file = File::create(path).with_context(|| format!("creating {path:?}"))?;
    Ok(Some(BufWriter::new(file)))
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut os = out.as_os_str().to_owned();
    os.push(".json");
    PathBuf::from(os)
}

/// Runs every SNR point, emitting each CSV row as soon as the point
/// finishes so interrupted sweeps keep their completed points.
pub fn run_campaign(c: &Campaign) -> Result<Vec<PointRow>> {
    c.validate()?;
    let code = crate::codespec::build_code(&c.code)?;
    let kind = DecoderKind::from_spec(&c.decoder);
    if let DecoderKind::Osd(order) = kind {
        if order > code.k {
            bail!("reprocessing order {order} exceeds the code dimension {}", code.k);
        }
    }

    let mut csv = open_outputs(c)?;
    match &mut csv {
        Some(w) => writeln!(w, "{CSV_HEADER}")?,
        None => println!("{CSV_HEADER}"),
    }

    let mut rows = Vec::new();
    for (idx, &snr) in c.snr_db.iter().enumerate() {
        let row = run_point(&code, kind, snr, idx, c);
        match &mut csv {
            Some(w) => {
                writeln!(w, "{}", row.csv_line())?;
                w.flush()?;
                println!("{}", row.summary());
            }
            None => {
                println!("{}", row.csv_line());
                eprintln!("{}", row.summary());
            }
        }
        if row.block_errors == 0 {
            eprintln!(
                "note: no block errors at {:+.2} dB within {} frames; the point is reported as BLER 0",
                snr, row.frames
            );
        }
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_campaign(workers: usize) -> Campaign {
        Campaign {
            code: "random:16,8,7".into(),
            decoder: DecoderSpec::Leosd { rho: 2, tau: 2, xi: 2 },
            snr_db: vec![0.0, 2.0],
            min_errors: 25,
            max_frames: 1500,
            seed: 11,
            workers,
            out: None,
        }
    }

    #[test]
    fn results_do_not_depend_on_worker_count() {
        let a = run_campaign(&small_campaign(1)).unwrap();
        let b = run_campaign(&small_campaign(3)).unwrap();
        assert_eq!(a, b);
        assert!(a[0].frames >= 25);
        assert!(a[0].bler > a[1].bler, "higher SNR should not raise BLER here");
    }

    #[test]
    fn frame_seeds_are_point_and_frame_specific() {
        let s = frame_seed(9, 0, 0);
        assert_ne!(s, frame_seed(9, 0, 1));
        assert_ne!(s, frame_seed(9, 1, 0));
        assert_ne!(s, frame_seed(10, 0, 0));
        assert_eq!(s, frame_seed(9, 0, 0));
    }

    #[test]
    fn config_round_trips_through_json_with_defaults() {
        let text = r#"{
            "code": "ebch:64,30",
            "decoder": {"kind": "ileosd", "rho": 3, "tau": 3, "xi": 3, "pd_factor": 0.001},
            "snr_db": [2.0]
        }"#;
        let c: Campaign = serde_json::from_str(text).unwrap();
        assert_eq!(c.min_errors, 200);
        assert_eq!(c.max_frames, 1_000_000);
        assert_eq!(c.workers, 1);
        match &c.decoder {
            DecoderSpec::Ileosd { pd_factor, ps_factor, .. } => {
                assert_eq!(*pd_factor, Some(0.001));
                assert_eq!(*ps_factor, None);
            }
            other => panic!("wrong decoder spec: {other:?}"),
        }
        let back = serde_json::to_string(&c).unwrap();
        let again: Campaign = serde_json::from_str(&back).unwrap();
        assert_eq!(again.snr_db, c.snr_db);
    }

    #[test]
    fn validation_rejects_degenerate_campaigns() {
        let mut c = small_campaign(1);
        c.snr_db.clear();
        assert!(c.validate().is_err());
        let mut c = small_campaign(1);
        c.min_errors = 0;
        assert!(c.validate().is_err());
        let mut c = small_campaign(0);
        c.workers = 0;
        assert!(c.validate().is_err());
    }
}
