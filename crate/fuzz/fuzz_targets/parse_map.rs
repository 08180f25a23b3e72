#![no_main]

use std::sync::{Arc, OnceLock};

use libfuzzer_sys::fuzz_target;
use ttd_core::corpus;
use ttd_core::io::SimplicialMapDocument;
use ttd_core::simplicial::{load_complex, SimplicialComplex, SimplicialMap};

fn spaces() -> &'static (Arc<SimplicialComplex>, Arc<SimplicialComplex>) {
    static SPACES: OnceLock<(Arc<SimplicialComplex>, Arc<SimplicialComplex>)> = OnceLock::new();
    SPACES.get_or_init(|| {
        (
            Arc::new(load_complex(&corpus::equator()).unwrap()),
            Arc::new(load_complex(&corpus::octahedron()).unwrap()),
        )
    })
}

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(doc) = SimplicialMapDocument::from_json(text) {
            let (a, x) = spaces();
            if let Ok(f) = SimplicialMap::from_document(&doc, a.clone(), x.clone()) {
                let _ = f.induced_map(1);
            }
            let _ = SimplicialMap::from_document(&doc, x.clone(), x.clone());
        }
    }
});
