#![no_main]

use std::sync::{Arc, OnceLock};

use libfuzzer_sys::fuzz_target;
use ttd_cli::parse_class;
use ttd_core::corpus;
use ttd_core::simplicial::{load_complex, SimplicialComplex};

fn torus() -> &'static Arc<SimplicialComplex> {
    static TORUS: OnceLock<Arc<SimplicialComplex>> = OnceLock::new();
    TORUS.get_or_init(|| Arc::new(load_complex(&corpus::torus3()).unwrap()))
}

// `--c` and `--d` arguments
fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_class(torus(), 2, text, "c");
    }
});
