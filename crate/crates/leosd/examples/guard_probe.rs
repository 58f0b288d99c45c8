//! Splits the guarded decoder's block-error damage between the stopping
//! condition and the discarding condition on the (128,50) code at 0 dB.
//!
//! Run: cargo run --release -p leosd --example guard_probe

use leosd::channel::transmit;
use leosd::codes::build_ebch_by_k;
use leosd::gf2::BitVector;
use leosd::ileosd::{
    decode_improved_with, mean_parity_error_prob, mean_search_error_prob, thresholds, IleosdConfig,
};
use leosd::leosd::{decode, preprocess, LeosdParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Default)]
struct Tally {
    errors: u64,
    qc_sum: u64,
    early: u64,
}

impl Tally {
    fn add(&mut self, wrong: bool, qc: u64, early: bool) {
        self.errors += u64::from(wrong);
        self.qc_sum += qc;
        self.early += u64::from(early);
    }
    fn line(&self, name: &str, frames: u64) {
        println!(
            "{name:<18} bler {:.5}  qc_mean {:8.1}  early_stop {:5.1}%",
            self.errors as f64 / frames as f64,
            self.qc_sum as f64 / frames as f64,
            100.0 * self.early as f64 / frames as f64
        );
    }
}

fn main() {
    let code = build_ebch_by_k(7, 50).unwrap();
    let params = LeosdParams::new(5, 10, 10);
    let frames = 2000u64;
    let snr_db = 0.0;

    let sc_only = IleosdConfig { ps_factor: 0.99, pd_factor: 0.0, shortcut_ab: true };
    let dc_only = IleosdConfig { ps_factor: f64::INFINITY, pd_factor: 0.002, shortcut_ab: true };
    let dc_no_ab = IleosdConfig { ps_factor: f64::INFINITY, pd_factor: 0.002, shortcut_ab: false };
    let both = IleosdConfig::default();

    let mut rng = ChaCha8Rng::seed_from_u64(910);
    let mut t_plain = Tally::default();
    let mut t_sc = Tally::default();
    let mut t_dc = Tally::default();
    let mut t_dc_raw = Tally::default();
    let mut t_both = Tally::default();

    let mut ps_prime_sum = 0.0;
    let mut pd_prime_sum = 0.0;
    let mut p_bar_sum = 0.0;
    let mut p_search_sum = 0.0;

    for f in 0..frames {
        let msg = BitVector::random(code.k, &mut rng);
        let cw = code.encode(&msg);
        let frame = transmit(&cw, snr_db, &mut rng);

        let plain = decode(&frame, &code, params);
        let sc = decode_improved_with(&frame, &code, params, &sc_only);
        let dc = decode_improved_with(&frame, &code, params, &dc_only);
        let dcr = decode_improved_with(&frame, &code, params, &dc_no_ab);
        let b = decode_improved_with(&frame, &code, params, &both);

        t_plain.add(plain.codeword != cw, plain.q_c, plain.early_stop);
        t_sc.add(sc.codeword != cw, sc.q_c, sc.early_stop);
        t_dc.add(dc.codeword != cw, dc.q_c, dc.early_stop);
        t_dc_raw.add(dcr.codeword != cw, dcr.q_c, dcr.early_stop);
        t_both.add(b.codeword != cw, b.q_c, b.early_stop);

        if f < 512 {
            let pre = preprocess(&frame, &code);
            let (p_bar, _) = mean_parity_error_prob(&pre);
            let p_search = mean_search_error_prob(&pre);
            let (ps_p, pd_p) = thresholds(&code, &params, p_search);
            p_bar_sum += p_bar;
            p_search_sum += p_search;
            ps_prime_sum += ps_p;
            pd_prime_sum += pd_p;
        }
    }

    println!(
        "frame means over 512: p_bar {:.4}  p_search {:.4}  P_s' {:.3e}  P_d' {:.3e}\n",
        p_bar_sum / 512.0,
        p_search_sum / 512.0,
        ps_prime_sum / 512.0,
        pd_prime_sum / 512.0
    );
    t_plain.line("plain", frames);
    t_sc.line("sc only", frames);
    t_dc.line("dc only (ab)", frames);
    t_dc_raw.line("dc only (no ab)", frames);
    t_both.line("both (default)", frames);
}
