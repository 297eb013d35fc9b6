#![no_main]

use critvals::theta::{GramMode, GramTarget};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    for mode in [GramMode::Doubled, GramMode::Halves] {
        if let Ok(t) = GramTarget::parse(s, mode) {
            let again: GramTarget = t.to_string().parse().expect("display re-parses");
            assert_eq!(again, t);
            let _ = t.is_positive_semidefinite();
        }
    }
});
