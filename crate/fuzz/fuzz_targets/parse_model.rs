#![no_main]

use libfuzzer_sys::fuzz_target;
use ttd_core::io::ModelDocument;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = ModelDocument::from_json(text);
    }
});
