#![no_main]

use ecom_core::pi1::{abelian_invariants, tietze_round, todd_coxeter, Presentation};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(p) = Presentation::from_json_bytes(data) {
        if p.generator_count() <= 16 && p.total_length() <= 256 {
            let ab = abelian_invariants(&p);
            if let Some(q) = tietze_round(&p) {
                assert_eq!(abelian_invariants(&q), ab);
            }
            let _ = todd_coxeter(&p, 2_000);
        }
    }
});
