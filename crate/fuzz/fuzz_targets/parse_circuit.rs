#![no_main]

use libfuzzer_sys::fuzz_target;
use twoq::circuit::parse_circuit;

fuzz_target!(|data: &[u8]| {
    if let Ok(src) = std::str::from_utf8(data) {
        if let Ok(c) = parse_circuit(src) {
            assert!(c.matrix().is_finite());
        }
    }
});
