use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use leosd::analysis::{
    complexity_leosd, complexity_osd, expected_teps, full_rank_prob, m_of_rho,
};
use leosd::channel::{snr_db_to_n0, ReceivedFrame};
use leosd::codes::{min_distance_bruteforce, save_code};
use leosd::gf2::BitVector;
use leosd::ileosd::{decode_improved_with, IleosdConfig};
use leosd::leosd::{decode, LeosdParams};
use leosd::oracle::ml_decode;
use leosd::osd::whd;
use leosd_cli::analyze::{counts_table, full_rank_table, m_of_rho_table, parse_triples};
use leosd_cli::campaign::{run_campaign, Campaign, DecoderSpec};
use leosd_cli::codespec::build_code;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(
    name = "leosd",
    version,
    about = "Ordered-statistics decoding simulator and analysis tool"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a Monte Carlo BLER/complexity campaign over an SNR sweep.
    Simulate(SimulateArgs),
    /// Evaluate analysis formulas over a parameter grid (no simulation).
    Analyze(AnalyzeArgs),
    /// Build or inspect code matrix files.
    Codes {
        #[command(subcommand)]
        cmd: CodesCmd,
    },
    /// Run fast internal consistency checks.
    Selftest,
}

#[derive(Args)]
struct SimulateArgs {
    /// Campaign config file (JSON mirroring the campaign fields). Flags
    /// override file values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Code spec: "ebch:n,k", "random:n,k,seed", "file:path", or a path.
    #[arg(long)]
    code: Option<String>,
    /// Decoder family: osd, leosd, or ileosd.
    #[arg(long)]
    decoder: Option<String>,
    /// Reprocessing order (osd).
    #[arg(long)]
    order: Option<usize>,
    /// Primary-block weight cap (leosd/ileosd).
    #[arg(long)]
    rho: Option<usize>,
    /// TEP weight cap (leosd/ileosd).
    #[arg(long)]
    tau: Option<usize>,
    /// Estimate weight cap (leosd/ileosd).
    #[arg(long)]
    xi: Option<usize>,
    /// Success-probability guard factor (ileosd).
    #[arg(long)]
    ps_factor: Option<f64>,
    /// Promising-probability guard factor (ileosd).
    #[arg(long)]
    pd_factor: Option<f64>,
    /// Disable the identical-ancestor TEP shortcut (ileosd).
    #[arg(long)]
    no_shortcut: bool,
    /// Comma-separated SNR list in dB, e.g. "1.0,2.0,3.0".
    #[arg(long)]
    snr_db: Option<String>,
    /// Stop a point after this many block errors.
    #[arg(long)]
    min_errors: Option<u64>,
    /// Hard frame cap per point.
    #[arg(long)]
    max_frames: Option<u64>,
    /// Master seed; same seed reproduces the run bit for bit.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (does not change results).
    #[arg(long)]
    workers: Option<usize>,
    /// CSV output path (sidecar JSON goes to "<out>.json"); stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Table {
    /// Pr(parity block has maximal rank) for every k of an n-bit code.
    FullRank,
    /// Expected TEP/estimate counts and complexity per cap triple.
    Counts,
    /// Expected covered error weight m(rho) for shells 1..=rho.
    MRho,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long, value_enum)]
    table: Table,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: Option<usize>,
    /// Cap triples "rho,tau,xi" separated by ';' (counts table).
    #[arg(long)]
    params: Option<String>,
    /// Adds the list-miss bound column to the counts table.
    #[arg(long)]
    snr_db: Option<f64>,
    /// Largest shell for the m-rho table.
    #[arg(long)]
    rho: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CodesCmd {
    /// Materialize a code spec as a matrix file.
    Build {
        #[arg(long)]
        code: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print code parameters and consistency checks.
    Inspect {
        #[arg(long)]
        code: String,
        /// Also compute the exact minimum distance (k <= 20).
        #[arg(long)]
        check_dmin: bool,
    },
}

fn main() -> Result<()> {
    match Cli::parse().cmd {
        Cmd::Simulate(args) => {
            let campaign = build_campaign(&args)?;
            run_campaign(&campaign)?;
            Ok(())
        }
        Cmd::Analyze(args) => analyze(&args),
        Cmd::Codes { cmd } => codes(cmd),
        Cmd::Selftest => selftest(),
    }
}

// ============================================================================
// simulate
// ============================================================================

fn parse_snr_list(text: &str) -> Result<Vec<f64>> {
    let list: Vec<f64> = text
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("bad SNR list {text:?}"))?;
    if list.is_empty() {
        bail!("SNR list is empty");
    }
    Ok(list)
}

fn require(v: Option<usize>, flag: &str, kind: &str) -> Result<usize> {
    v.with_context(|| format!("--decoder {kind} needs {flag}"))
}

fn resolve_decoder(a: &SimulateArgs, base: Option<&DecoderSpec>) -> Result<DecoderSpec> {
    let mut spec = match (&a.decoder, base) {
        (Some(kind), _) => match kind.as_str() {
            "osd" => DecoderSpec::Osd { order: require(a.order, "--order", "osd")? },
            "leosd" => DecoderSpec::Leosd {
                rho: require(a.rho, "--rho", "leosd")?,
                tau: require(a.tau, "--tau", "leosd")?,
                xi: require(a.xi, "--xi", "leosd")?,
            },
            "ileosd" => DecoderSpec::Ileosd {
                rho: require(a.rho, "--rho", "ileosd")?,
                tau: require(a.tau, "--tau", "ileosd")?,
                xi: require(a.xi, "--xi", "ileosd")?,
                ps_factor: a.ps_factor,
                pd_factor: a.pd_factor,
                shortcut_ab: a.no_shortcut.then_some(false),
            },
            other => bail!("unknown decoder {other:?} (use osd, leosd, or ileosd)"),
        },
        (None, Some(b)) => b.clone(),
        (None, None) => bail!("no decoder given: pass --decoder or a --config file"),
    };
    if a.decoder.is_none() {
        // Per-field overrides on a config-supplied decoder.
        match &mut spec {
            DecoderSpec::Osd { order } => {
                if let Some(o) = a.order {
                    *order = o;
                }
                if a.rho.is_some() || a.tau.is_some() || a.xi.is_some() {
                    bail!("--rho/--tau/--xi apply to leosd/ileosd, config decoder is osd");
                }
            }
            DecoderSpec::Leosd { rho, tau, xi } => {
                apply_caps(rho, tau, xi, a);
                if a.order.is_some() {
                    bail!("--order applies to osd, config decoder is leosd");
                }
            }
            DecoderSpec::Ileosd { rho, tau, xi, ps_factor, pd_factor, shortcut_ab } => {
                apply_caps(rho, tau, xi, a);
                if a.ps_factor.is_some() {
                    *ps_factor = a.ps_factor;
                }
                if a.pd_factor.is_some() {
                    *pd_factor = a.pd_factor;
                }
                if a.no_shortcut {
                    *shortcut_ab = Some(false);
                }
            }
        }
    }
    Ok(spec)
}

fn apply_caps(rho: &mut usize, tau: &mut usize, xi: &mut usize, a: &SimulateArgs) {
    if let Some(v) = a.rho {
        *rho = v;
    }
    if let Some(v) = a.tau {
        *tau = v;
    }
    if let Some(v) = a.xi {
        *xi = v;
    }
}

fn build_campaign(a: &SimulateArgs) -> Result<Campaign> {
    let base: Option<Campaign> = match &a.config {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {path:?}"))?;
            Some(serde_json::from_str(&text).with_context(|| format!("parsing {path:?}"))?)
        }
        None => None,
    };
    let code = a
        .code
        .clone()
        .or_else(|| base.as_ref().map(|c| c.code.clone()))
        .context("no code given: pass --code or a --config file")?;
    let decoder = resolve_decoder(a, base.as_ref().map(|c| &c.decoder))?;
    let snr_db = match &a.snr_db {
        Some(s) => parse_snr_list(s)?,
        None => base
            .as_ref()
            .map(|c| c.snr_db.clone())
            .context("no SNR list: pass --snr-db or a --config file")?,
    };
    let b = base.as_ref();
    Ok(Campaign {
        code,
        decoder,
        snr_db,
        min_errors: a.min_errors.or(b.map(|c| c.min_errors)).unwrap_or(200),
        max_frames: a.max_frames.or(b.map(|c| c.max_frames)).unwrap_or(1_000_000),
        seed: a.seed.or(b.map(|c| c.seed)).unwrap_or(0),
        workers: a.workers.or(b.map(|c| c.workers)).unwrap_or(1),
        out: a.out.clone().or_else(|| b.and_then(|c| c.out.clone())),
    })
}

// ============================================================================
// analyze
// ============================================================================

fn analyze(a: &AnalyzeArgs) -> Result<()> {
    let table = match a.table {
        Table::FullRank => full_rank_table(a.n)?,
        Table::Counts => {
            let k = a.k.context("--table counts needs --k")?;
            let params = a.params.as_deref().context("--table counts needs --params")?;
            counts_table(a.n, k, &parse_triples(params)?, a.snr_db)?
        }
        Table::MRho => {
            let k = a.k.context("--table m-rho needs --k")?;
            let rho = a.rho.context("--table m-rho needs --rho")?;
            m_of_rho_table(rho, a.n, k)?
        }
    };
    match &a.out {
        Some(path) => fs::write(path, table).with_context(|| format!("writing {path:?}"))?,
        None => print!("{table}"),
    }
    Ok(())
}

// ============================================================================
// codes
// ============================================================================

fn codes(cmd: CodesCmd) -> Result<()> {
    match cmd {
        CodesCmd::Build { code, out } => {
            let c = build_code(&code)?;
            save_code(&c, &out).with_context(|| format!("writing {out:?}"))?;
            println!("wrote {} as ({},{}) matrix file to {}", c.name, c.n, c.k, out.display());
            Ok(())
        }
        CodesCmd::Inspect { code, check_dmin } => {
            let c = build_code(&code)?;
            println!("name: {}", c.name);
            println!("n: {}", c.n);
            println!("k: {}", c.k);
            println!("rate: {:.4}", c.k as f64 / c.n as f64);
            println!("generator rank: {}", c.g.rank());
            match &c.h {
                Some(h) => {
                    let ok = c.g.mul(&h.transpose()).is_zero();
                    println!("parity check: {}", if ok { "ok (G·H^T = 0)" } else { "FAILED" });
                    if !ok {
                        bail!("stored parity-check matrix does not annihilate G");
                    }
                }
                None => println!("parity check: none stored"),
            }
            match c.d_min {
                Some(d) => println!("d_min: {d} (stored)"),
                None => println!("d_min: unknown"),
            }
            if check_dmin {
                if c.k > 20 {
                    bail!("--check-dmin needs k <= 20, code has k = {}", c.k);
                }
                let d = min_distance_bruteforce(&c);
                println!("d_min: {d} (exhaustive)");
                if let Some(stored) = c.d_min {
                    if stored != d {
                        bail!("stored d_min {stored} disagrees with exhaustive {d}");
                    }
                }
            }
            Ok(())
        }
    }
}

// ============================================================================
// selftest
// ============================================================================

struct Selftest {
    failures: u32,
}

impl Selftest {
    fn check(&mut self, name: &str, ok: bool, detail: String) {
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("[{tag}] {name}: {detail}");
        self.failures += u32::from(!ok);
    }
}

fn within(got: f64, want: f64, rel: f64) -> bool {
    (got - want).abs() <= rel * want.abs()
}

fn selftest() -> Result<()> {
    let mut t = Selftest { failures: 0 };

    let p = full_rank_prob(64, 32);
    t.check(
        "rank probability at half rate",
        (p - 0.288_788).abs() < 1e-4,
        format!("full_rank_prob(64,32) = {p:.6}, reference 0.288788"),
    );

    let mu = expected_teps(3, 3, 64, 30, 30);
    let m3 = m_of_rho(3, 64, 30);
    t.check(
        "expected counts",
        (mu - 411.25).abs() < 0.01 && (m3 - 4.2250).abs() < 5e-4,
        format!("mu_t(3,3) = {mu:.2} (411.25), m(3) = {m3:.4} (4.2250)"),
    );

    let le = complexity_leosd(3, 3, 3, 64, 30, 30);
    let osd = complexity_osd(3, 64, 30);
    t.check(
        "complexity model",
        within(le.flops, 4.14e4, 0.01)
            && within(le.bops, 1.08e7, 0.01)
            && within(osd.flops, 2.94e5, 0.01)
            && within(osd.bops, 1.77e7, 0.01),
        format!(
            "LE {:.3e} FLOPs / {:.3e} BOPs, OSD {:.3e} FLOPs / {:.3e} BOPs",
            le.flops, le.bops, osd.flops, osd.bops
        ),
    );

    let code = build_code("ebch:64,30")?;
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let cw = code.encode(&BitVector::random(code.k, &mut rng));
    let gamma: Vec<f64> = (0..code.n).map(|i| if cw.get(i) { -1.0 } else { 1.0 }).collect();
    let frame = ReceivedFrame::from_observations(&gamma, snr_db_to_n0(4.0));
    let out = decode(&frame, &code, LeosdParams::new(0, 0, 0));
    t.check(
        "noiseless roundtrip",
        out.codeword == cw && out.whd == 0.0,
        format!("zero-cap decode returned the transmitted word, whd = {}", out.whd.abs()),
    );

    let small = leosd::codes::random_code(16, 8, 5);
    let maximal = LeosdParams::new(small.k, small.n, small.n);
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let cw = small.encode(&BitVector::random(small.k, &mut rng));
        let frame = leosd::channel::transmit(&cw, 0.0, &mut rng);
        let le = decode(&frame, &small, maximal);
        let ml = ml_decode(&frame, &small);
        let scale = 1.0 + whd(&frame.y, &ml.codeword, &frame.alpha).abs();
        worst = worst.max((le.whd - ml.whd).abs() / scale);
    }
    t.check(
        "maximal caps reach the ML decision",
        worst < 1e-9,
        format!("worst relative WHD gap over 50 frames = {worst:.2e}"),
    );

    let params = LeosdParams::new(2, 2, 2);
    let disabled = IleosdConfig::disabled();
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let mut identical = true;
    for _ in 0..25 {
        let cw = code.encode(&BitVector::random(code.k, &mut rng));
        let frame = leosd::channel::transmit(&cw, 2.0, &mut rng);
        let plain = decode(&frame, &code, params);
        let guarded = decode_improved_with(&frame, &code, params, &disabled);
        identical &= plain.codeword == guarded.codeword
            && plain.whd == guarded.whd
            && plain.q_t == guarded.q_t
            && plain.q_c == guarded.q_c
            && plain.counters == guarded.counters;
    }
    t.check(
        "disabled guards are transparent",
        identical,
        "plain and guard-disabled decoders agreed on 25 frames".into(),
    );

    let scratch =
        std::env::temp_dir().join(format!("leosd-selftest-{}.csv", std::process::id()));
    let mini = Campaign {
        code: "random:16,8,7".into(),
        decoder: DecoderSpec::Leosd { rho: 2, tau: 2, xi: 2 },
        snr_db: vec![1.0],
        min_errors: 10,
        max_frames: 600,
        seed: 3,
        workers: 1,
        out: Some(scratch.clone()),
    };
    let one = run_campaign(&mini)?;
    let two = run_campaign(&Campaign { workers: 2, ..mini })?;
    let _ = fs::remove_file(&scratch);
    let _ = fs::remove_file(leosd_cli::campaign::sidecar_path(&scratch));
    t.check(
        "campaign results are worker-independent",
        one == two,
        format!("{} frames, {} errors with 1 and 2 workers", one[0].frames, one[0].block_errors),
    );

    if t.failures > 0 {
        bail!("{} selftest check(s) failed", t.failures);
    }
    println!("all selftest checks passed");
    Ok(())
}
