//! Feeds byte-derived channel observations and cap triples through both
//! decoders. Any input must produce a finite decision without panicking;
//! out-of-range caps exercise the per-frame clamping.

#![no_main]

use leosd::channel::ReceivedFrame;
use leosd::codes::random_code;
use leosd::ileosd::decode_improved;
use leosd::leosd::{decode, LeosdParams};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() < 4 {
        return;
    }
    let (head, rest) = data.split_at(3);
    let code = random_code(16, 8, 9);
    let mut gamma = [0.0f64; 16];
    for (i, g) in gamma.iter_mut().enumerate() {
        let b = rest.get(i).copied().unwrap_or(0x80);
        *g = (f64::from(b) - 127.5) / 32.0;
    }
    let frame = ReceivedFrame::from_observations(&gamma, 0.5);
    let params = LeosdParams::new(
        usize::from(head[0] % 9),
        usize::from(head[1] % 17),
        usize::from(head[2] % 17),
    );
    let plain = decode(&frame, &code, params);
    assert!(plain.whd.is_finite());
    let improved = decode_improved(&frame, &code, params);
    assert!(improved.whd.is_finite());
    assert!(improved.q_t <= plain.q_t, "guards may only skip work");
    assert!(improved.q_c <= plain.q_c, "guards may only skip work");
});
