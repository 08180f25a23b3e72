#![no_main]

use libfuzzer_sys::fuzz_target;
use ttd_core::io::ComplexDocument;
use ttd_core::simplicial::load_complex;

fuzz_target!(|data: &[u8]| {
    // large complexes only make the run slow
    if data.len() > 4096 {
        return;
    }
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(doc) = ComplexDocument::from_json(text) {
            let _ = load_complex(&doc);
        }
    }
});
