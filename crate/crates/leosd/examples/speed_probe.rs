//! Rough per-frame timings for the long acceptance runs. Not part of the
//! test suite; run manually when retuning frame budgets.

use std::time::Instant;

use leosd::channel;
use leosd::codes::build_ebch_by_k;
use leosd::gf2::BitVector;
use leosd::ileosd::decode_improved;
use leosd::leosd::{decode, LeosdParams};
use leosd::osd::decode_osd;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);

    let cases: Vec<(&str, u32, usize, f64, LeosdParams)> = vec![
        ("eBCH(64,30) le(3,3,3) @2dB", 6, 30, 2.0, LeosdParams::new(3, 3, 3)),
        ("eBCH(64,16) le(5,12,12) @-1dB", 6, 16, -1.0, LeosdParams::new(5, 12, 12)),
        ("eBCH(128,85) le(2,2,3) @4dB", 7, 85, 4.0, LeosdParams::new(2, 2, 3)),
        ("eBCH(128,50) le(5,10,10) @0dB", 7, 50, 0.0, LeosdParams::new(5, 10, 10)),
    ];

    for (label, m, k, snr, params) in cases {
        let code = build_ebch_by_k(m, k).unwrap();
        let reps = if code.n == 128 && k == 50 { 8 } else { 40 };
        let mut qc = 0u64;
        let t0 = Instant::now();
        for _ in 0..reps {
            let msg = BitVector::random(code.k, &mut rng);
            let cw = code.encode(&msg);
            let frame = channel::transmit(&cw, snr, &mut rng);
            qc += decode(&frame, &code, params).q_c;
        }
        let plain = t0.elapsed().as_secs_f64() / reps as f64;
        let t1 = Instant::now();
        for _ in 0..reps {
            let msg = BitVector::random(code.k, &mut rng);
            let cw = code.encode(&msg);
            let frame = channel::transmit(&cw, snr, &mut rng);
            qc += decode_improved(&frame, &code, params).q_c;
        }
        let improved = t1.elapsed().as_secs_f64() / reps as f64;
        println!("{label}: plain {:.2} ms, improved {:.2} ms (qc sum {qc})", plain * 1e3, improved * 1e3);
    }

    let code = build_ebch_by_k(6, 30).unwrap();
    let t0 = Instant::now();
    let reps = 40;
    for _ in 0..reps {
        let msg = BitVector::random(code.k, &mut rng);
        let cw = code.encode(&msg);
        let frame = channel::transmit(&cw, 2.0, &mut rng);
        let _ = decode_osd(&frame, &code, 3);
    }
    println!(
        "eBCH(64,30) osd-3 @2dB: {:.2} ms",
        t0.elapsed().as_secs_f64() / reps as f64 * 1e3
    );
}
