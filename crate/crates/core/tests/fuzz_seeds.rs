//! Replays the checked-in fuzz corpora through the same decoders.

use std::path::PathBuf;

use ecom_core::complex::SimplicialComplex;
use ecom_core::group::{load_group, GroupSpec, LoadOptions};
use ecom_core::pi1::{abelian_invariants, tietze_round, Presentation};

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, Vec<u8>)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            (path.display().to_string(), std::fs::read(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn group_spec_seeds_load() {
    for (name, bytes) in seeds("group_spec") {
        let spec = GroupSpec::from_json_bytes(&bytes).unwrap_or_else(|e| panic!("{name}: {e}"));
        let g = load_group(&spec, &LoadOptions { max_order: 64, ..LoadOptions::default() }).unwrap();
        assert_eq!(g.mul(0, 0), 0, "{name}");
    }
}

#[test]
fn shorthand_seeds_round_trip() {
    for (name, bytes) in seeds("shorthand") {
        let spec = GroupSpec::parse_shorthand(std::str::from_utf8(&bytes).unwrap()).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(GroupSpec::parse_shorthand(&spec.to_string()).unwrap(), spec);
    }
}

#[test]
fn complex_seeds_round_trip() {
    for (name, bytes) in seeds("complex_export") {
        let k = SimplicialComplex::from_json_bytes(&bytes).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(SimplicialComplex::from_export(k.to_export()).unwrap().facets(), k.facets());
    }
}

#[test]
fn presentation_seeds_keep_invariants() {
    for (name, bytes) in seeds("presentation") {
        let p = Presentation::from_json_bytes(&bytes).unwrap_or_else(|e| panic!("{name}: {e}"));
        if let Some(q) = tietze_round(&p) {
            assert_eq!(abelian_invariants(&q), abelian_invariants(&p), "{name}");
        }
    }
}

#[test]
fn malformed_inputs_are_rejected() {
    let bad: [&[u8]; 6] = [
        b"",
        b"{\"kind\":\"table\",\"table\":[[0,1],[0,1]]}",
        b"{\"kind\":\"table\",\"table\":[[1,0],[0,1]]}",
        b"{\"kind\":\"named\",\"family\":\"cyclic\",\"param\":-1}",
        b"{\"kind\":\"permutations\",\"degree\":3,\"generators\":[[[1,1]]]}",
        b"\xff\xfe",
    ];
    for bytes in bad {
        let loaded = GroupSpec::from_json_bytes(bytes).ok().map(|s| load_group(&s, &LoadOptions::default()));
        assert!(!matches!(loaded, Some(Ok(_))), "{:?}", String::from_utf8_lossy(bytes));
    }
    assert!(SimplicialComplex::from_json_bytes(b"{\"vertices\":2,\"facets\":[[0,5]]}").is_err());
    assert!(SimplicialComplex::from_json_bytes(b"{\"vertices\":2,\"facets\":[[0,0]]}").is_err());
    assert!(Presentation::from_json_bytes(b"{\"generators\":1,\"relators\":[[0]]}").is_err());
    assert!(Presentation::from_json_bytes(b"{\"generators\":1,\"relators\":[[2]]}").is_err());
}
