#![no_main]

use critvals::report::ReportDocument;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(doc) = ReportDocument::from_json(s) {
        let _ = doc.to_text();
        let _ = doc.to_csv();
        let back = ReportDocument::from_json(&doc.to_json()).expect("own output parses");
        assert_eq!(back.to_json(), doc.to_json());
    }
});
