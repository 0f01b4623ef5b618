#![no_main]

use libfuzzer_sys::fuzz_target;
use twoq::circuit::parse_circuit;

// Anything that parses must print back to text that parses to the same circuit.
fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    let Ok(c) = parse_circuit(src) else { return };
    let again = parse_circuit(&c.to_text()).expect("printed circuit parses");
    assert_eq!(again, c);
});
