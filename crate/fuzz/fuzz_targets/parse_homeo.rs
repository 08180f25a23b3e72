#![no_main]

use std::sync::{Arc, OnceLock};

use libfuzzer_sys::fuzz_target;
use ttd_core::corpus;
use ttd_core::io::HomeoDocument;
use ttd_core::moduli::HomeoData;
use ttd_core::simplicial::{load_complex, SimplicialComplex};

fn torus() -> &'static Arc<SimplicialComplex> {
    static TORUS: OnceLock<Arc<SimplicialComplex>> = OnceLock::new();
    TORUS.get_or_init(|| Arc::new(load_complex(&corpus::torus7()).unwrap()))
}

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(doc) = HomeoDocument::from_json(text) {
            let _ = HomeoData::from_document(&doc, torus().clone());
        }
    }
});
