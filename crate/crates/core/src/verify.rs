//! Verification suites: the reference numbers for `AfCom(G)` and its
//! relatives, and seeded property checks.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complex::{
    abco_poset, afcom_complex, commutator_cover, euler_characteristic, k_simplices, mabco_poset, order_complex,
    SimplicialComplex,
};
use crate::group::{
    abelian_subgroups, is_affinely_commutative, is_affinely_commutative_ordered, load_group, maximal_abelian_subgroups,
    minimal_enclosing_coset, named, named_catalogue, AffineTest, ElementSet, FiniteGroup, LoadOptions,
};
use crate::homology::{boundary_matrix, homology, homology_with, HomologyGroup, HomologyOptions};
use crate::o2::{check_commutator_identities, dihedral_table_agrees};
use crate::pi1::{
    abelian_invariants, commutator_morphism, pi1_presentation, pi1_presentation_with, tietze_simplify,
    tietze_simplify_observed, todd_coxeter, CosetEnumeration, TreeStrategy, DEFAULT_TIETZE_ROUNDS,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIPPED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl Check {
    fn new(id: &str, name: &str, result: Result<String, String>) -> Self {
        let (verdict, detail) = match result {
            Ok(d) => (Verdict::Pass, d),
            Err(d) => (Verdict::Fail, d),
        };
        Check { id: id.into(), name: name.into(), verdict, detail }
    }

    pub fn line(&self) -> String {
        format!("[{}] {} {}: {}", self.verdict, self.id, self.name, self.detail)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Reference values for named groups.
    Paper,
    /// Seeded structural checks.
    Properties,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Wall-clock allowance for the extraspecial check.
    pub stretch_limit: Duration,
    pub max_cosets: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 42, stretch_limit: Duration::from_secs(600), max_cosets: 1_000_000 }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.verdict != Verdict::Fail)
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Vec<Check> {
    match suite {
        Suite::Paper => reference_suite(opts),
        Suite::Properties => properties_suite(opts),
    }
}

fn catalogue(max_order: usize) -> Vec<FiniteGroup> {
    named_catalogue(max_order)
        .iter()
        .map(|s| load_group(s, &LoadOptions::default()).expect("catalogue entries load"))
        .collect()
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn full_homology(k: &SimplicialComplex, reduced: bool) -> Vec<HomologyGroup> {
    homology(k, k.dimension().unwrap_or(0), reduced).expect("default budgets suffice here")
}

fn mabco_nerve(g: &FiniteGroup) -> SimplicialComplex {
    order_complex(&mabco_poset(g), 10_000_000).expect("chains fit the default budget")
}

fn padded(mut h: Vec<HomologyGroup>, len: usize) -> Vec<HomologyGroup> {
    h.resize(len, HomologyGroup::default());
    h
}

// ---------------------------------------------------------------------------
// reference numbers

fn reference_suite(opts: &VerifyOptions) -> Vec<Check> {
    vec![
        Check::new("1", "S3 wedge of 8 circles", check_s3_wedge()),
        Check::new("2", "AfCom(S3) census", check_s3_census()),
        Check::new("3", "quaternion formulas", check_quaternion()),
        check_extraspecial(opts),
        Check::new("5", "AfCom and mAbCo homology agree", check_model_agreement()),
        Check::new("6", "affine triple identity", check_afftrip()),
        Check::new("7", "commutator map onto [G,G]", check_t1()),
        Check::new("8", "Hurewicz consistency", check_hurewicz()),
        Check::new("9", "O(2) commutator identities", check_o2(opts.seed)),
        Check::new("10", "abelian groups are contractible", check_abelian()),
    ]
}

fn check_s3_wedge() -> Result<String, String> {
    let k = afcom_complex(&named::symmetric(3).expect("S3"));
    let h = homology(&k, 2, false).map_err(|e| e.to_string())?;
    expect("homology", h, vec![HomologyGroup::free(1), HomologyGroup::free(8), HomologyGroup::free(0)])?;
    let p = tietze_simplify(&pi1_presentation(&k, 0).map_err(|e| e.to_string())?, DEFAULT_TIETZE_ROUNDS);
    expect("simplified presentation (generators, relators)", (p.generator_count(), p.relators().len()), (8, 0))?;
    Ok("H = (Z, Z^8, 0); pi1 free of rank 8".into())
}

fn check_s3_census() -> Result<String, String> {
    let k = afcom_complex(&named::symmetric(3).expect("S3"));
    let counts: Vec<usize> = (0..=2).map(|d| k.count_simplices(d)).collect();
    expect("simplex counts", counts, vec![6, 15, 2])?;
    expect("facets", k.facets().len(), 11)?;
    expect("euler characteristic", euler_characteristic(&k), -7)?;
    Ok("6 vertices, 15 edges, 2 triangles, chi = -7".into())
}

fn check_quaternion() -> Result<String, String> {
    let mut parts = Vec::new();
    for n in 3..=5u32 {
        let g = named::quaternion(1 << n).map_err(|e| e.to_string())?;
        let poset = mabco_poset(&g);
        let v = (1usize << (2 * n - 4)) + (1 << (n - 1)) + 2;
        let e = (1usize << (2 * n - 3)) + (1 << (n - 1));
        let r = (1usize << (2 * n - 4)) - 1;
        expect(&format!("Q{} vertices", 1 << n), poset.len(), v)?;
        expect(&format!("Q{} Hasse edges", 1 << n), poset.hasse_edges().len(), e)?;
        let nerve = mabco_nerve(&g);
        let afcom = afcom_complex(&g);
        for (what, k) in [("nerve", &nerve), ("AfCom", &afcom)] {
            let h = homology(k, 1, false).map_err(|e| e.to_string())?;
            expect(&format!("Q{} {what} H1", 1 << n), h[1].clone(), HomologyGroup::free(r))?;
        }
        parts.push(format!("Q{}: v={v} e={e} H1=Z^{r}", 1 << n));
    }
    Ok(parts.join("; "))
}

/// `Ok(None)` when the allowance ran out before the computation finished.
fn extraspecial_values(plus: bool, opts: &VerifyOptions, start: Instant) -> Result<Option<String>, String> {
    let g = named::extraspecial32(plus).map_err(|e| e.to_string())?;
    let cover = commutator_cover(&g);
    let hc = homology(&cover, 2, false).map_err(|e| e.to_string())?;
    if start.elapsed() > opts.stretch_limit {
        return Ok(None);
    }
    expect("H2 of the universal cover", hc[2].clone(), HomologyGroup::free(151))?;
    let k = afcom_complex(&g);
    let h = homology(&k, 2, false).map_err(|e| e.to_string())?;
    let p = tietze_simplify(&pi1_presentation(&k, 0).map_err(|e| e.to_string())?, DEFAULT_TIETZE_ROUNDS);
    let tc = todd_coxeter(&p, opts.max_cosets);
    if start.elapsed() > opts.stretch_limit {
        return Ok(None);
    }
    match tc {
        CosetEnumeration::Order(n) => expect("pi1 order", n, 2)?,
        CosetEnumeration::Unknown { .. } => return Ok(None),
    }
    Ok(Some(format!(
        "{}: cover H2 = {}, pi1 order 2, AfCom H1 = {}, H2 = {}",
        if plus { "+" } else { "-" },
        hc[2],
        h[1],
        h[2]
    )))
}

fn check_extraspecial(opts: &VerifyOptions) -> Check {
    let start = Instant::now();
    let mut parts = Vec::new();
    for plus in [true, false] {
        match extraspecial_values(plus, opts, start) {
            Ok(Some(d)) => parts.push(d),
            Ok(None) => {
                return Check {
                    id: "4".into(),
                    name: "extraspecial groups of order 32".into(),
                    verdict: Verdict::Skipped,
                    detail: format!("allowance of {:?} exhausted", opts.stretch_limit),
                }
            }
            Err(e) => return Check::new("4", "extraspecial groups of order 32", Err(e)),
        }
    }
    Check::new("4", "extraspecial groups of order 32", Ok(parts.join("; ")))
}

fn check_model_agreement() -> Result<String, String> {
    let groups = catalogue(16);
    for g in &groups {
        let a = afcom_complex(g);
        let m = mabco_nerve(g);
        let top = a.dimension().unwrap_or(0).max(m.dimension().unwrap_or(0));
        let ha = homology(&a, top, false).map_err(|e| e.to_string())?;
        let hm = homology(&m, top, false).map_err(|e| e.to_string())?;
        expect(g.name(), ha, hm)?;
    }
    Ok(format!("{} groups", groups.len()))
}

fn check_afftrip() -> Result<String, String> {
    let mut triples = 0usize;
    let groups = catalogue(24);
    for g in &groups {
        let n = g.order();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if a == b || b == c || a == c {
                        continue;
                    }
                    let set = ElementSet::from_indices(n, [a, b, c]);
                    if !is_affinely_commutative(g, &set, AffineTest::EnclosingCoset).map_err(|e| e.to_string())? {
                        continue;
                    }
                    triples += 1;
                    if g.mul(g.commutator(a, b), g.commutator(b, c)) != g.commutator(a, c) {
                        return Err(format!("{}: violated at ({a}, {b}, {c})", g.name()));
                    }
                }
            }
        }
    }
    Ok(format!("{triples} ordered triples over {} groups, no violations", groups.len()))
}

fn check_t1() -> Result<String, String> {
    let groups = catalogue(24);
    for g in &groups {
        let m = commutator_morphism(g, &afcom_complex(g)).map_err(|e| format!("{}: {e}", g.name()))?;
        if !m.surjective_onto_derived() {
            return Err(format!("{}: image of order {} vs [G,G] of order {}", g.name(), m.image.order(), m.derived.order()));
        }
    }
    Ok(format!("{} groups", groups.len()))
}

fn hurewicz_complexes() -> Vec<(String, SimplicialComplex)> {
    let mut out = Vec::new();
    let s3 = named::symmetric(3).expect("S3");
    out.push(("AfCom(S3)".to_string(), afcom_complex(&s3)));
    for n in 3..=5u32 {
        let q = named::quaternion(1 << n).expect("quaternion");
        out.push((format!("AfCom(Q{})", 1 << n), afcom_complex(&q)));
        out.push((format!("mAbCo(Q{})", 1 << n), mabco_nerve(&q)));
    }
    for plus in [true, false] {
        let g = named::extraspecial32(plus).expect("extraspecial");
        out.push((format!("AfCom({})", g.name()), afcom_complex(&g)));
    }
    for g in catalogue(16) {
        out.push((format!("AfCom({})", g.name()), afcom_complex(&g)));
        out.push((format!("mAbCo({})", g.name()), mabco_nerve(&g)));
    }
    out
}

fn check_hurewicz() -> Result<String, String> {
    let complexes = hurewicz_complexes();
    for (name, k) in &complexes {
        let h = homology(k, 1, false).map_err(|e| e.to_string())?;
        let ab = abelian_invariants(&pi1_presentation(k, 0).map_err(|e| format!("{name}: {e}"))?);
        if !ab.matches(&h[1]) {
            return Err(format!("{name}: abelianization {ab:?} vs H1 = {}", h[1]));
        }
    }
    Ok(format!("{} complexes", complexes.len()))
}

fn check_o2(seed: u64) -> Result<String, String> {
    let r = check_commutator_identities(seed, 1000);
    if !r.passed() {
        return Err(format!("violations {:?}, non-rotations {}", r.violations, r.non_rotations));
    }
    if let Some(n) = (1..=12).find(|&n| !dihedral_table_agrees(n)) {
        return Err(format!("dihedral table mismatch at n = {n}"));
    }
    Ok(format!("{} samples, seed {seed}, no violations", r.samples))
}

fn check_abelian() -> Result<String, String> {
    let groups: Vec<FiniteGroup> = catalogue(16).into_iter().filter(FiniteGroup::is_abelian).collect();
    for g in &groups {
        let h = full_homology(&afcom_complex(g), true);
        if let Some((d, x)) = h.iter().enumerate().find(|(_, x)| !x.is_trivial()) {
            return Err(format!("{}: reduced H{d} = {x}", g.name()));
        }
    }
    Ok(format!("{} abelian groups", groups.len()))
}

// ---------------------------------------------------------------------------
// seeded properties

fn properties_suite(opts: &VerifyOptions) -> Vec<Check> {
    let seed = opts.seed;
    vec![
        Check::new("P1", "affine tests agree and ignore order", prop_affine_tests(seed)),
        Check::new("P2", "maximal abelian subgroups match the filter", prop_maximal_abelian()),
        Check::new("P3", "enclosing coset is minimal", prop_enclosing_coset(seed)),
        Check::new("P4", "AfCom facets match brute force", prop_afcom_brute_force()),
        Check::new("P5", "simplices are affinely commutative", prop_simplices_affine()),
        Check::new("P6", "boundary of boundary vanishes", prop_boundary_squared()),
        Check::new("P7", "homology ignores facet order", prop_facet_order(seed)),
        Check::new("P8", "mAbCo least elements", prop_least_element()),
        Check::new("P9", "Tietze rounds keep abelian invariants", prop_tietze()),
        Check::new("P10", "spanning tree independence", prop_spanning_tree()),
        Check::new("P11", "coset enumeration consistency", prop_todd_coxeter(opts.max_cosets)),
        Check::new("P12", "Euler characteristic matches Betti numbers", prop_euler()),
        Check::new("P13", "O(2) identities on fresh samples", check_o2(seed.wrapping_add(1))),
    ]
}

fn prop_affine_tests(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = 0;
    for g in catalogue(24) {
        let n = g.order();
        for _ in 0..100 {
            let size = rng.gen_range(1..=4.min(n));
            let mut elems: Vec<usize> = (0..n).collect();
            elems.shuffle(&mut rng);
            elems.truncate(size);
            let set = ElementSet::from_indices(n, elems.iter().copied());
            let answers: Vec<bool> = [AffineTest::ConsecutiveQuotients, AffineTest::GeneratedQuotients, AffineTest::EnclosingCoset]
                .into_iter()
                .map(|m| is_affinely_commutative(&g, &set, m))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            let shuffled = is_affinely_commutative_ordered(&g, &elems).map_err(|e| e.to_string())?;
            if answers.iter().any(|&a| a != answers[0]) || shuffled != answers[0] {
                return Err(format!("{}: disagreement on {elems:?}: {answers:?} / {shuffled}", g.name()));
            }
            samples += 1;
        }
    }
    Ok(format!("{samples} subsets"))
}

fn prop_maximal_abelian() -> Result<String, String> {
    for g in catalogue(24) {
        let all = abelian_subgroups(&g, 1_000_000).map_err(|e| e.to_string())?;
        let filtered: Vec<_> = all
            .iter()
            .filter(|a| !all.iter().any(|b| b.order() > a.order() && a.elements().is_subset(b.elements())))
            .cloned()
            .collect();
        expect(g.name(), maximal_abelian_subgroups(&g), filtered)?;
    }
    Ok("all groups of order <= 24".into())
}

fn prop_enclosing_coset(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    for g in catalogue(16) {
        let n = g.order();
        let poset = abco_poset(&g, 1_000_000).map_err(|e| e.to_string())?;
        for _ in 0..60 {
            let size = rng.gen_range(1..=4.min(n));
            let mut elems: Vec<usize> = (0..n).collect();
            elems.shuffle(&mut rng);
            let set = ElementSet::from_indices(n, elems[..size].iter().copied());
            let Some(min) = minimal_enclosing_coset(&g, &set) else { continue };
            for c in poset.elements() {
                if set.is_subset(c.elements()) && !min.elements().is_subset(c.elements()) {
                    return Err(format!("{}: {:?} not below {:?}", g.name(), min.elements(), c.elements()));
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} affinely commutative subsets"))
}

fn prop_afcom_brute_force() -> Result<String, String> {
    let groups: Vec<FiniteGroup> = catalogue(12);
    for g in &groups {
        let n = g.order();
        let affine: Vec<u32> = (1u32..1 << n)
            .filter(|&mask| {
                let set = ElementSet::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1));
                is_affinely_commutative(g, &set, AffineTest::GeneratedQuotients).unwrap_or(false)
            })
            .collect();
        let lookup: std::collections::HashSet<u32> = affine.iter().copied().collect();
        let mut maximal: Vec<Vec<u32>> = affine
            .iter()
            .filter(|&&m| (0..n).all(|i| m >> i & 1 == 1 || !lookup.contains(&(m | 1 << i))))
            .map(|&m| (0..n as u32).filter(|i| m >> i & 1 == 1).collect())
            .collect();
        maximal.sort();
        expect(g.name(), afcom_complex(g).facets().to_vec(), maximal)?;
    }
    Ok(format!("{} groups", groups.len()))
}

fn prop_simplices_affine() -> Result<String, String> {
    let mut count = 0usize;
    for g in catalogue(24) {
        let k = afcom_complex(&g);
        for d in 0..=3.min(k.dimension().unwrap_or(0)) {
            for s in k_simplices(&k, d) {
                let set = ElementSet::from_indices(g.order(), s.vertices().iter().map(|&v| v as usize));
                if !is_affinely_commutative(&g, &set, AffineTest::ConsecutiveQuotients).map_err(|e| e.to_string())? {
                    return Err(format!("{}: {:?}", g.name(), s.vertices()));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} simplices of dimension <= 3"))
}

fn prop_boundary_squared() -> Result<String, String> {
    let mut checked = 0;
    for g in catalogue(16) {
        let complexes = [afcom_complex(&g), mabco_nerve(&g)];
        for k in &complexes {
            let top = k.dimension().unwrap_or(0).min(if g.order() <= 12 { usize::MAX } else { 4 });
            for d in 2..=top {
                if boundary_matrix(k, d - 1).mul(&boundary_matrix(k, d)).nnz() != 0 {
                    return Err(format!("{}: d{} d{} != 0", g.name(), d - 1, d));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} compositions"))
}

fn prop_facet_order(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let groups = catalogue(16);
    for g in groups.iter().filter(|g| !g.is_abelian()) {
        let k = afcom_complex(g);
        let mut order: Vec<usize> = (0..k.facets().len()).collect();
        order.shuffle(&mut rng);
        let shuffled = k.with_facet_order(&order).map_err(|e| e.to_string())?;
        expect(g.name(), full_homology(&shuffled, false), full_homology(&k, false))?;
    }
    Ok("all non-abelian groups of order <= 16".into())
}

fn prop_least_element() -> Result<String, String> {
    let mut checked = 0;
    for g in catalogue(16) {
        let abco = abco_poset(&g, 1_000_000).map_err(|e| e.to_string())?;
        let mabco = mabco_poset(&g);
        for c in abco.elements() {
            let above: Vec<_> = mabco.elements().iter().filter(|m| c.is_subset(m)).collect();
            let least = above.iter().find(|m| above.iter().all(|x| m.is_subset(x)));
            if least.is_none() {
                return Err(format!("{}: no least element above {:?}", g.name(), c.elements()));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} cosets"))
}

fn prop_tietze() -> Result<String, String> {
    let mut rounds = 0usize;
    for g in catalogue(16) {
        let p = pi1_presentation(&afcom_complex(&g), 0).map_err(|e| e.to_string())?;
        let want = abelian_invariants(&p);
        let mut failure = None;
        tietze_simplify_observed(&p, DEFAULT_TIETZE_ROUNDS, |q| {
            rounds += 1;
            if failure.is_none()
                && (abelian_invariants(q) != want
                    || q.generator_count() > p.generator_count()
                    || q.total_length() > p.total_length())
            {
                failure = Some(format!("{}: round {rounds} changed the invariants or grew", g.name()));
            }
        });
        if let Some(f) = failure {
            return Err(f);
        }
    }
    Ok(format!("{rounds} rounds"))
}

fn prop_spanning_tree() -> Result<String, String> {
    for g in catalogue(16) {
        let k = afcom_complex(&g);
        let star = abelian_invariants(&pi1_presentation(&k, 0).map_err(|e| e.to_string())?);
        let dfs = abelian_invariants(
            &pi1_presentation_with(&k, g.order() - 1, TreeStrategy::Dfs).map_err(|e| e.to_string())?,
        );
        expect(g.name(), dfs, star)?;
    }
    Ok("star and depth-first trees agree".into())
}

fn prop_todd_coxeter(max_cosets: usize) -> Result<String, String> {
    let mut completed = 0;
    let mut groups = catalogue(16);
    groups.push(named::extraspecial32(true).expect("extraspecial"));
    for g in &groups {
        let p = tietze_simplify(&pi1_presentation(&afcom_complex(g), 0).map_err(|e| e.to_string())?, DEFAULT_TIETZE_ROUNDS);
        let ab = abelian_invariants(&p);
        if let CosetEnumeration::Order(n) = todd_coxeter(&p, max_cosets.min(20_000)) {
            completed += 1;
            let ab_order: BigInt = ab.torsion.iter().product();
            if ab.rank != 0 || BigInt::from(n) % &ab_order != BigInt::from(0) {
                return Err(format!("{}: order {n} vs abelianization {ab:?}", g.name()));
            }
        }
    }
    Ok(format!("{completed} enumerations completed"))
}

fn prop_euler() -> Result<String, String> {
    for g in catalogue(16) {
        for k in [afcom_complex(&g), mabco_nerve(&g)] {
            let top = k.dimension().unwrap_or(0);
            let report = homology_with(&k, top, false, &HomologyOptions::default()).map_err(|e| e.to_string())?;
            let groups = padded(report.groups(), top + 1);
            if groups.iter().any(|h| !h.torsion.is_empty()) {
                continue;
            }
            let betti: i64 = groups
                .iter()
                .enumerate()
                .map(|(d, h)| if d % 2 == 0 { h.betti as i64 } else { -(h.betti as i64) })
                .sum();
            expect(g.name(), betti, euler_characteristic(&k))?;
        }
    }
    Ok("all torsion-free cases of order <= 16".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_lines() {
        let c = Check::new("x", "demo", Ok("fine".into()));
        assert_eq!(c.line(), "[PASS] x demo: fine");
        let f = Check::new("y", "demo", Err("bad".into()));
        assert!(!all_passed(&[c, f]));
    }

    #[test]
    fn quick_reference_checks() {
        assert!(check_s3_wedge().is_ok());
        assert!(check_s3_census().is_ok());
        assert!(check_o2(1).is_ok());
    }
}
