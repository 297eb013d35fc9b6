#![no_main]

use critvals::exact::FactoredRational;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    // factoring arbitrary large products is not the point here
    if s.len() > 64 {
        return;
    }
    if let Ok(f) = s.parse::<FactoredRational>() {
        let again: FactoredRational = f.to_string().parse().expect("display re-parses");
        assert_eq!(again, f);
    }
});
