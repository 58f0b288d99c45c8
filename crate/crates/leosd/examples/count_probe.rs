//! Measures mean TEP/estimate counts and parity-block rank across SNR for
//! the (64,16) regime, against the full-rank count model.

use leosd::analysis::{expected_estimates, expected_teps};
use leosd::channel::transmit;
use leosd::codes::{build_ebch_by_k, random_code};
use leosd::gf2::BitVector;
use leosd::leosd::{decode, preprocess, LeosdParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let params = LeosdParams::new(5, 12, 12);
    let frames = 2000;
    println!(
        "model: mu_t = {:.4}, mu_c = {:.4}",
        expected_teps(5, 12, 64, 16, 16),
        expected_estimates(5, 12, 12, 64, 16, 16)
    );
    for (label, code) in [
        ("ebch(64,16)", build_ebch_by_k(6, 16).unwrap()),
        ("random(64,16)", random_code(64, 16, 99)),
    ] {
        for snr in [-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0] {
            let mut rng = ChaCha8Rng::seed_from_u64(4242);
            let (mut qt, mut qc, mut rp) = (0f64, 0f64, 0f64);
            for _ in 0..frames {
                let cw = code.encode(&BitVector::random(code.k, &mut rng));
                let frame = transmit(&cw, snr, &mut rng);
                rp += preprocess(&frame, &code).r_p as f64;
                let out = decode(&frame, &code, params);
                qt += out.q_t as f64;
                qc += out.q_c as f64;
            }
            let f = frames as f64;
            println!(
                "{label} snr {snr:+.1}: mean r_P {:.3}, q_t {:.2}, q_c {:.2}",
                rp / f,
                qt / f,
                qc / f
            );
        }
    }
}
