#![no_main]

use critvals::exact::{format_rational, parse_rational};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if s.len() > 4096 {
        return;
    }
    if let Ok(q) = parse_rational(s) {
        assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }
});
