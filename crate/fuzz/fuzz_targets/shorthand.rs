#![no_main]

use ecom_core::group::GroupSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(spec) = GroupSpec::parse_shorthand(text) {
            assert_eq!(GroupSpec::parse_shorthand(&spec.to_string()).ok(), Some(spec));
        }
    }
});
