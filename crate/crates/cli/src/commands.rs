use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};

use ecom_core::complex::{
    abco_poset, afcom_complex, commutator_cover, euler_characteristic, mabco_poset, order_complex, SimplicialComplex,
};
use ecom_core::group::{
    abelian_subgroups, derived_subgroup, maximal_abelian_subgroups, named, FiniteGroup, GroupSpec, NamedParam,
};
use ecom_core::homology::{homology_with, HomologyEntry, HomologyError, HomologyOptions};
use ecom_core::pi1::{
    abelian_invariants, commutator_morphism, feit_thompson_witness, pi1_presentation, tietze_simplify,
    todd_coxeter_with, AbelianInvariants, CosetOptions, Presentation, DEFAULT_TIETZE_ROUNDS,
};
use ecom_core::verify::{all_passed, run_suite, Check, Suite, VerifyOptions};

use crate::report::{load, memory_budget_mb, CliError, Session};
use crate::{GlobalOpts, SuiteArg, Variant};

const ABELIAN_TORSION_NOTE: &str =
    "torsion in the abelianization does not certify torsion in the fundamental group";

fn emit(session: &Session, report: &Value) {
    let mut out = std::io::stdout().lock();
    // a closed pipe downstream is not an error for us
    let _ = writeln!(out, "{}", session.render(report));
}

fn budget(what: impl Into<String>) -> CliError {
    CliError::Budget { what: what.into(), report: None }
}

/// Rough bytes for enumerating and eliminating the simplices up to `top`.
fn homology_bytes(k: &SimplicialComplex, top: usize) -> u128 {
    (0..=top + 1)
        .map(|d| k.simplex_bound(d).saturating_mul(8 * (d as u128 + 1) + 48))
        .fold(0u128, u128::saturating_add)
}

pub fn group_info(g: &GlobalOpts, text: &str) -> Result<i32, CliError> {
    let mut s = Session::new(g, "group-info")?;
    let (spec, group) = load(g, text)?;
    s.phase("load")?;
    let abelian = abelian_subgroups(&group, g.max_simplices).map_err(|e| budget(e.to_string()))?;
    let maximal = maximal_abelian_subgroups(&group);
    s.phase("subgroups")?;
    let payload = json!({
        "order": group.order(),
        "abelian": group.is_abelian(),
        "center_order": group.center().order(),
        "derived_order": derived_subgroup(&group).order(),
        "abelian_subgroups": abelian.len(),
        "maximal_abelian_subgroups": maximal.len(),
        "maximal_abelian_orders": maximal.iter().map(|m| m.order()).collect::<Vec<_>>(),
        "feit_thompson_witness": feit_thompson_witness(&group).ok(),
    });
    emit(&s, &s.finish(Some((&spec, &group)), payload));
    Ok(0)
}

#[derive(Serialize)]
struct ComplexStats {
    vertices: usize,
    facets: usize,
    dimension: Option<usize>,
    facet_sizes: BTreeMap<usize, usize>,
    /// Counts per dimension, stopping where the simplex budget would be exceeded.
    simplex_counts: Vec<usize>,
    simplex_counts_complete: bool,
    chi: Option<i64>,
}

fn stats(k: &SimplicialComplex, max_simplices: usize) -> ComplexStats {
    let mut facet_sizes = BTreeMap::new();
    for f in k.facets() {
        *facet_sizes.entry(f.len()).or_insert(0) += 1;
    }
    let top = k.dimension().unwrap_or(0);
    let mut simplex_counts = Vec::new();
    let mut complete = true;
    for d in 0..=top {
        if k.simplex_bound(d) > max_simplices as u128 {
            complete = false;
            break;
        }
        simplex_counts.push(k.count_simplices(d));
    }
    ComplexStats {
        vertices: k.vertex_count(),
        facets: k.facets().len(),
        dimension: k.dimension(),
        facet_sizes,
        chi: complete.then(|| euler_characteristic(k)),
        simplex_counts,
        simplex_counts_complete: complete,
    }
}

fn build_afcom(s: &Session, group: &FiniteGroup) -> Result<SimplicialComplex, CliError> {
    let maximal = maximal_abelian_subgroups(group);
    let facets: usize = maximal.iter().map(|m| group.order() / m.order()).sum();
    if facets > s.opts().max_simplices {
        return Err(budget(format!("{facets} facets exceed --max-simplices {}", s.opts().max_simplices)));
    }
    s.check_memory("AfCom facets", facets as u128 * group.order() as u128 * 8)?;
    Ok(afcom_complex(group))
}

pub fn afcom(g: &GlobalOpts, text: &str, out: Option<&Path>) -> Result<i32, CliError> {
    let mut s = Session::new(g, "afcom")?;
    let (spec, group) = load(g, text)?;
    s.phase("load")?;
    let k = build_afcom(&s, &group)?;
    s.phase("complex")?;
    let st = stats(&k, g.max_simplices);
    s.phase("statistics")?;
    let export = k.to_export();
    let payload = match out {
        Some(path) => {
            std::fs::write(path, serde_json::to_vec(&export).expect("export serializes"))?;
            json!({ "stats": st, "out": path.display().to_string() })
        }
        None => json!({ "stats": st, "complex": export }),
    };
    emit(&s, &s.finish(Some((&spec, &group)), payload));
    Ok(0)
}

fn build_variant(s: &Session, group: &FiniteGroup, variant: Variant) -> Result<SimplicialComplex, CliError> {
    let limit = s.opts().max_simplices;
    let chain_error = |e: ecom_core::complex::ComplexError| budget(e.to_string());
    match variant {
        Variant::Afcom => build_afcom(s, group),
        Variant::Cover => {
            let d = derived_subgroup(group).order();
            s.check_memory("covering complex", group.order() as u128 * d as u128 * group.order() as u128 * 8)?;
            Ok(commutator_cover(group))
        }
        Variant::Abco => order_complex(&abco_poset(group, limit).map_err(chain_error)?, limit).map_err(chain_error),
        Variant::Mabco => order_complex(&mabco_poset(group), limit).map_err(chain_error),
    }
}

pub fn homology(
    g: &GlobalOpts,
    text: &str,
    variant: Variant,
    max_dim: Option<usize>,
    reduced: bool,
    betti_only: bool,
) -> Result<i32, CliError> {
    let mut s = Session::new(g, "homology")?;
    let (spec, group) = load(g, text)?;
    s.phase("load")?;
    let k = build_variant(&s, &group, variant)?;
    s.phase("complex")?;
    let top = max_dim.unwrap_or_else(|| k.dimension().unwrap_or(0));
    s.check_memory("homology", homology_bytes(&k, top))?;
    let opts = HomologyOptions { torsion: !betti_only, max_simplices: g.max_simplices };
    let variant_name = format!("{variant:?}").to_lowercase();
    let report = match homology_with(&k, top, reduced, &opts) {
        Ok(r) => r,
        Err(HomologyError::Budget { what, count, limit, partial }) => {
            let partial_report = s.finish(
                Some((&spec, &group)),
                json!({
                    "variant": variant_name,
                    "status": "budget_exceeded",
                    "partial": partial
                        .into_iter()
                        .enumerate()
                        .map(|(dim, h)| HomologyEntry { dim, betti: h.betti, torsion: h.torsion })
                        .collect::<Vec<_>>(),
                }),
            );
            return Err(CliError::Budget {
                what: format!("{what} {count} exceeds --max-simplices {limit}"),
                report: Some(partial_report),
            });
        }
        Err(e) => return Err(CliError::Usage(e.to_string())),
    };
    s.phase("homology")?;
    let wedge = if top >= k.dimension().unwrap_or(0) && !reduced && k.is_connected() {
        let groups = report.groups();
        let ok = groups[0].betti == 1
            && groups.get(1).is_none_or(|h| h.torsion.is_empty())
            && groups.iter().skip(2).all(|h| h.is_trivial());
        ok.then(|| groups.get(1).map_or(0, |h| h.betti))
    } else {
        None
    };
    let payload = json!({
        "variant": variant_name,
        "vertices": k.vertex_count(),
        "dimension": k.dimension(),
        "homology": report.homology,
        "reduced": report.reduced,
        "torsion_exact": report.torsion_exact,
        "chi": report.chi,
        "simplex_counts": report.simplex_counts,
        "wedge_of_circles": wedge,
    });
    emit(&s, &s.finish(Some((&spec, &group)), payload));
    Ok(0)
}

/// Coset enumeration, or the reason it was not attempted.
fn enumerate(p: &Presentation, ab: &AbelianInvariants, limit: usize) -> Result<Value, CliError> {
    if limit == 0 {
        return Ok(Value::Null);
    }
    if ab.rank > 0 {
        // an infinite abelianization means the enumeration cannot close
        return Ok(json!({ "infinite": true, "reason": format!("abelianization has free rank {}", ab.rank) }));
    }
    let width = 2 * p.generator_count().max(1);
    let mut entries = limit.saturating_mul(width).min(CosetOptions::default().max_table_entries);
    if let Some(mb) = memory_budget_mb()? {
        entries = entries.min((mb as usize).saturating_mul(1024 * 1024) / 4);
    }
    let tc = todd_coxeter_with(p, &CosetOptions { max_cosets: limit, max_table_entries: entries.max(width) });
    Ok(serde_json::to_value(tc).expect("enumeration serializes"))
}

pub fn pi1(g: &GlobalOpts, text: &str, simplify: bool, tc_limit: Option<usize>) -> Result<i32, CliError> {
    let mut s = Session::new(g, "pi1")?;
    let (spec, group) = load(g, text)?;
    s.phase("load")?;
    let k = build_afcom(&s, &group)?;
    let triangles = k.simplex_bound(2);
    if triangles > 4 * g.max_simplices as u128 {
        return Err(budget(format!("about {triangles} triangles exceed --max-simplices {}", g.max_simplices)));
    }
    s.phase("complex")?;
    let p = pi1_presentation(&k, 0).map_err(|e| CliError::Usage(e.to_string()))?;
    s.phase("presentation")?;
    let simplified = simplify.then(|| tietze_simplify(&p, DEFAULT_TIETZE_ROUNDS));
    s.phase("simplify")?;
    let target = simplified.as_ref().unwrap_or(&p);
    let ab = abelian_invariants(target);
    s.phase("abelianize")?;
    let tc = enumerate(target, &ab, tc_limit.unwrap_or(g.max_cosets))?;
    s.phase("enumerate")?;
    let morphism = commutator_morphism(&group, &k).map_err(|e| CliError::Usage(e.to_string()))?;
    let payload = json!({
        "presentation": p.to_export(),
        "simplified": simplified.as_ref().map(Presentation::to_export),
        "abelian_invariants": ab,
        "abelian_invariants_note": ABELIAN_TORSION_NOTE,
        "todd_coxeter": tc,
        "commutator_map": {
            "image_order": morphism.image.order(),
            "derived_order": morphism.derived.order(),
            "surjective": morphism.surjective_onto_derived(),
            "triangles_checked": morphism.triangles_checked,
        },
    });
    emit(&s, &s.finish(Some((&spec, &group)), payload));
    Ok(0)
}

pub fn verify(g: &GlobalOpts, suites: &[SuiteArg], seed: u64, budget_s: u64) -> Result<i32, CliError> {
    if suites.is_empty() {
        return Err(CliError::Usage("select at least one suite with --suite paper|properties".into()));
    }
    let mut s = Session::new(g, "verify")?;
    let opts = VerifyOptions { seed, stretch_limit: Duration::from_secs(budget_s), max_cosets: g.max_cosets };
    let mut checks: Vec<Check> = Vec::new();
    let mut names = Vec::new();
    for suite in suites {
        let which = match suite {
            SuiteArg::Paper => Suite::Paper,
            SuiteArg::Properties => Suite::Properties,
        };
        names.push(which);
        checks.extend(run_suite(which, &opts));
        s.phase(&format!("{which:?}").to_lowercase())?;
    }
    let passed = all_passed(&checks);
    if g.pretty {
        let mut out = std::io::stdout().lock();
        for c in &checks {
            let _ = writeln!(out, "{}", c.line());
        }
        let _ = writeln!(out, "{}", if passed { "all checks passed" } else { "some checks FAILED" });
    } else {
        for c in &checks {
            eprintln!("{}", c.line());
        }
        let payload = json!({ "suites": names, "seed": seed, "checks": checks, "passed": passed });
        emit(&s, &s.finish(None, payload));
    }
    Ok(if passed { 0 } else { 1 })
}

pub fn stretch_s5(g: &GlobalOpts, tc_limit: Option<usize>) -> Result<i32, CliError> {
    let mut s = Session::new(g, "stretch s5")?;
    let spec = GroupSpec::Named { family: "symmetric".into(), param: NamedParam::Int(5) };
    let group = named::symmetric(5).map_err(|e| CliError::Parse(e.to_string()))?;
    let k = build_afcom(&s, &group)?;
    s.phase("complex")?;
    let p = pi1_presentation(&k, 0).map_err(|e| CliError::Usage(e.to_string()))?;
    let simplified = tietze_simplify(&p, DEFAULT_TIETZE_ROUNDS);
    s.phase("simplify")?;
    let ab = abelian_invariants(&simplified);
    let tc = enumerate(&simplified, &ab, tc_limit.unwrap_or(g.max_cosets))?;
    s.phase("enumerate")?;
    // a finite group of even order has an element of order two
    let certified = match tc.get("order").and_then(Value::as_u64) {
        Some(n) if n % 2 == 0 => json!(true),
        Some(_) => json!(false),
        None => json!("unknown"),
    };
    let payload = json!({
        "generators": p.generator_count(),
        "relators": p.relators().len(),
        "simplified_generators": simplified.generator_count(),
        "simplified_relators": simplified.relators().len(),
        "simplified_length": simplified.total_length(),
        "abelian_invariants": ab,
        "abelian_invariants_note": ABELIAN_TORSION_NOTE,
        "todd_coxeter": tc,
        "order_two_certified": certified,
    });
    emit(&s, &s.finish(Some((&spec, &group)), payload));
    Ok(0)
}
