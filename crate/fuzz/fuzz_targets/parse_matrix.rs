#![no_main]

use libfuzzer_sys::fuzz_target;
use twoq::cli::parse_matrix;
use twoq::invariants::cnot_cost;

fuzz_target!(|data: &[u8]| {
    if let Ok(src) = std::str::from_utf8(data) {
        if let Ok(m) = parse_matrix(src, 1e-8) {
            let _ = cnot_cost(&m);
        }
    }
});
