#![no_main]

use libfuzzer_sys::fuzz_target;

// The parser must never panic on any input, and anything it accepts must be
// canonical: printing and reparsing gives the same term back.
fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    if let Ok(x) = epswb::parse(&text) {
        let printed = x.to_string();
        let back = epswb::parse(&printed).expect("printer output parses");
        assert_eq!(back, x, "round-trip through {printed}");
    }
});
