#![no_main]

use ecom_core::group::{load_group, GroupSpec, LoadOptions};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(spec) = GroupSpec::from_json_bytes(data) {
        let opts = LoadOptions { max_order: 64, ..LoadOptions::default() };
        if let Ok(g) = load_group(&spec, &opts) {
            assert!(g.order() <= 64);
            assert_eq!(g.mul(0, 0), 0);
        }
    }
});
