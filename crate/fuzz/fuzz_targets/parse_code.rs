//! Drives the code matrix-file parser on arbitrary bytes. The parser must
//! reject malformed input with an error, never panic or overallocate.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = leosd::codes::parse_code(text, "fuzz");
    }
});
