//! Drives the campaign JSON deserializer and validator on arbitrary bytes.

#![no_main]

use leosd_cli::campaign::Campaign;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(c) = serde_json::from_slice::<Campaign>(data) {
        let _ = c.validate();
    }
});
