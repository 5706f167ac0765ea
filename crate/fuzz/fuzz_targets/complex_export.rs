#![no_main]

use ecom_core::complex::SimplicialComplex;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(k) = SimplicialComplex::from_json_bytes(data) {
        let again = SimplicialComplex::from_export(k.to_export()).expect("export re-imports");
        assert_eq!(again.facets(), k.facets());
        if k.simplex_bound(2) < 10_000 {
            let _ = k.count_simplices(2);
            let _ = k.is_connected();
        }
    }
});
