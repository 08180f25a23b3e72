#![no_main]

use std::sync::{Arc, OnceLock};

use libfuzzer_sys::fuzz_target;
use ttd_core::corpus;
use ttd_core::io::PairClassRecord;
use ttd_core::pairs::{t_dual, PairClass};
use ttd_core::simplicial::{load_complex, SimplicialComplex};

fn torus() -> &'static Arc<SimplicialComplex> {
    static TORUS: OnceLock<Arc<SimplicialComplex>> = OnceLock::new();
    TORUS.get_or_init(|| Arc::new(load_complex(&corpus::torus7()).unwrap()))
}

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(record) = PairClassRecord::from_json(text) {
            if let Ok(p) = PairClass::from_record(&record, torus().clone()) {
                assert_eq!(t_dual(&t_dual(&p)), p);
                assert_eq!(PairClass::from_record(&p.to_record(), torus().clone()).unwrap(), p);
            }
        }
    }
});
