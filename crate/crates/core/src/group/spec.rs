//! The JSON group-spec format and its loader.
//!
//! ```json
//! {"kind":"table","table":[[0,1],[1,0]]}
//! {"kind":"permutations","degree":3,"generators":[[[1,2]],[[1,2,3]]]}
//! {"kind":"named","family":"quaternion","param":8}
//! {"kind":"product","factors":[{"kind":"named","family":"cyclic","param":2}, ...]}
//! ```
//!
//! Permutation points are 1-based; a generator is a list of disjoint cycles.

use serde::{Deserialize, Serialize};

use super::named::{self, Perm};
use super::{FiniteGroup, GroupError, DEFAULT_MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupSpec {
    Table {
        table: Vec<Vec<usize>>,
    },
    Permutations {
        degree: usize,
        generators: Vec<Vec<Vec<usize>>>,
    },
    Named {
        family: String,
        param: NamedParam,
    },
    Product {
        factors: Vec<GroupSpec>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NamedParam {
    Int(u64),
    Text(String),
}

impl std::fmt::Display for NamedParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NamedParam::Int(n) => write!(f, "{n}"),
            NamedParam::Text(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoadOptions {
    pub max_order: usize,
    /// Run the cubic associativity check even above the default limit.
    pub check_large_associativity: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions { max_order: DEFAULT_MAX_ORDER, check_large_associativity: false }
    }
}

impl GroupSpec {
    pub fn named(family: &str, param: u64) -> Self {
        GroupSpec::Named { family: family.to_string(), param: NamedParam::Int(param) }
    }

    pub fn from_json(text: &str) -> Result<Self, GroupError> {
        serde_json::from_str(text).map_err(|e| GroupError::Malformed(e.to_string()))
    }

    pub fn from_json_bytes(bytes: &[u8]) -> Result<Self, GroupError> {
        serde_json::from_slice(bytes).map_err(|e| GroupError::Malformed(e.to_string()))
    }

    /// Parses `family:param`, e.g. `symmetric:3` or `extraspecial32:+`.
    pub fn parse_shorthand(text: &str) -> Result<Self, GroupError> {
        let (family, param) = text
            .split_once(':')
            .ok_or_else(|| GroupError::Malformed(format!("expected family:param, got `{text}`")))?;
        let param = match param.trim().parse::<u64>() {
            Ok(n) => NamedParam::Int(n),
            Err(_) => NamedParam::Text(param.trim().to_string()),
        };
        Ok(GroupSpec::Named { family: family.trim().to_string(), param })
    }
}

fn int_param(family: &str, param: &NamedParam) -> Result<usize, GroupError> {
    match param {
        NamedParam::Int(n) => usize::try_from(*n).map_err(|_| GroupError::InvalidParameter {
            family: family.to_string(),
            reason: format!("parameter {n} too large"),
        }),
        NamedParam::Text(s) => Err(GroupError::InvalidParameter {
            family: family.to_string(),
            reason: format!("expected an integer, got `{s}`"),
        }),
    }
}

fn factorial(n: usize) -> u128 {
    let mut acc: u128 = 1;
    for k in 2..=n as u128 {
        acc = acc.saturating_mul(k);
    }
    acc
}

fn check_order(order: u128, opts: &LoadOptions) -> Result<(), GroupError> {
    if order > opts.max_order as u128 {
        Err(GroupError::OrderTooLarge { order, max: opts.max_order })
    } else {
        Ok(())
    }
}

/// Builds the group described by `spec`.
pub fn load_group(spec: &GroupSpec, opts: &LoadOptions) -> Result<FiniteGroup, GroupError> {
    match spec {
        GroupSpec::Table { table } => {
            check_order(table.len() as u128, opts)?;
            let n = table.len();
            FiniteGroup::from_table(format!("table({n})"), table, None, opts.check_large_associativity)
        }
        GroupSpec::Permutations { degree, generators } => {
            let perms = generators
                .iter()
                .map(|cycles| named::perm_from_cycles(*degree, cycles))
                .collect::<Result<Vec<Perm>, _>>()?;
            named::from_permutations(format!("permutations(degree {degree})"), *degree, &perms, opts.max_order)
        }
        GroupSpec::Named { family, param } => load_named(family, param, opts),
        GroupSpec::Product { factors } => {
            if factors.is_empty() {
                return Err(GroupError::Malformed("product needs at least one factor".into()));
            }
            let groups = factors
                .iter()
                .map(|f| load_group(f, opts))
                .collect::<Result<Vec<_>, _>>()?;
            let order = groups
                .iter()
                .fold(1u128, |acc, g| acc.saturating_mul(g.order() as u128));
            check_order(order, opts)?;
            named::direct_product(&groups)
        }
    }
}

fn load_named(family: &str, param: &NamedParam, opts: &LoadOptions) -> Result<FiniteGroup, GroupError> {
    match family {
        "cyclic" => {
            let n = int_param(family, param)?;
            check_order(n as u128, opts)?;
            named::cyclic(n)
        }
        "dihedral" => {
            let n = int_param(family, param)?;
            check_order(2 * n as u128, opts)?;
            named::dihedral(n)
        }
        "quaternion" => {
            let n = int_param(family, param)?;
            check_order(n as u128, opts)?;
            named::quaternion(n)
        }
        "symmetric" => {
            let n = int_param(family, param)?;
            check_order(factorial(n), opts)?;
            named::symmetric_bounded(n, opts.max_order)
        }
        "alternating" => {
            let n = int_param(family, param)?;
            check_order(factorial(n).div_ceil(2), opts)?;
            named::alternating_bounded(n, opts.max_order)
        }
        "extraspecial32" => {
            check_order(32, opts)?;
            match param {
                NamedParam::Text(s) if s == "+" => named::extraspecial32(true),
                NamedParam::Text(s) if s == "-" => named::extraspecial32(false),
                other => Err(GroupError::InvalidParameter {
                    family: family.to_string(),
                    reason: format!("expected \"+\" or \"-\", got `{other}`"),
                }),
            }
        }
        other => Err(GroupError::UnknownFamily(other.to_string())),
    }
}

/// Every named group of order at most `max_order`, in family order.
pub fn named_catalogue(max_order: usize) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        out.push(GroupSpec::named("cyclic", n as u64));
    }
    for n in 1..=max_order / 2 {
        out.push(GroupSpec::named("dihedral", n as u64));
    }
    let mut q = 8;
    while q <= max_order {
        out.push(GroupSpec::named("quaternion", q as u64));
        q *= 2;
    }
    for n in 1.. {
        if factorial(n) > max_order as u128 {
            break;
        }
        out.push(GroupSpec::named("symmetric", n as u64));
    }
    for n in 1.. {
        if factorial(n).div_ceil(2) > max_order as u128 {
            break;
        }
        out.push(GroupSpec::named("alternating", n as u64));
    }
    if max_order >= 32 {
        for sign in ["+", "-"] {
            out.push(GroupSpec::Named { family: "extraspecial32".into(), param: NamedParam::Text(sign.into()) });
        }
    }
    out
}

impl std::fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupSpec::Named { family, param } => write!(f, "{family}:{param}"),
            GroupSpec::Table { table } => write!(f, "table({})", table.len()),
            GroupSpec::Permutations { degree, generators } => {
                write!(f, "permutations(degree {degree}, {} generators)", generators.len())
            }
            GroupSpec::Product { factors } => {
                let parts: Vec<String> = factors.iter().map(ToString::to_string).collect();
                write!(f, "product({})", parts.join(", "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(json: &str) -> Result<FiniteGroup, GroupError> {
        load_group(&GroupSpec::from_json(json)?, &LoadOptions::default())
    }

    #[test]
    fn named_specs() {
        assert_eq!(load(r#"{"kind":"named","family":"cyclic","param":1}"#).unwrap().order(), 1);
        assert_eq!(load(r#"{"kind":"named","family":"symmetric","param":3}"#).unwrap().order(), 6);
        assert_eq!(load(r#"{"kind":"named","family":"extraspecial32","param":"-"}"#).unwrap().order(), 32);
        assert_eq!(load(r#"{"kind":"named","family":"dihedral","param":6}"#).unwrap().order(), 12);
    }

    #[test]
    fn quaternion_eight_has_small_center() {
        let q = load(r#"{"kind":"named","family":"quaternion","param":8}"#).unwrap();
        assert_eq!(q.order(), 8);
        assert_eq!(q.center().order(), 2);
        // the cyclic subgroup M of order 4 generated by x
        assert_eq!(q.element_order(1), 4);
    }

    #[test]
    fn table_and_permutation_specs() {
        let g = load(r#"{"kind":"table","table":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(g.order(), 2);
        let s3 = load(r#"{"kind":"permutations","degree":3,"generators":[[[1,2]],[[1,2,3]]]}"#).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.label(0), "()");
    }

    #[test]
    fn product_spec() {
        let g = load(
            r#"{"kind":"product","factors":[
                {"kind":"named","family":"cyclic","param":2},
                {"kind":"named","family":"symmetric","param":3}]}"#,
        )
        .unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.center().order(), 2);
    }

    #[test]
    fn errors() {
        assert!(matches!(load(r#"{"kind":"named","family":"monster","param":1}"#), Err(GroupError::UnknownFamily(_))));
        assert!(matches!(
            load(r#"{"kind":"named","family":"symmetric","param":8}"#),
            Err(GroupError::OrderTooLarge { order: 40320, max: 4096 })
        ));
        assert!(matches!(load(r#"{"kind":"named","family":"cyclic","param":"x"}"#), Err(GroupError::InvalidParameter { .. })));
        assert!(matches!(load(r#"{"kind":"table","table":[[0,1],[0,1]]}"#), Err(GroupError::NotLatin { .. })));
        assert!(matches!(load(r#"{"kind":"wat"}"#), Err(GroupError::Malformed(_))));
        assert!(matches!(load(r#"{"kind":"product","factors":[]}"#), Err(GroupError::Malformed(_))));
    }

    #[test]
    fn catalogue_orders() {
        let specs = named_catalogue(24);
        assert_eq!(specs.len(), 24 + 12 + 2 + 4 + 4);
        for s in &specs {
            assert!(load_group(s, &LoadOptions::default()).unwrap().order() <= 24, "{s}");
        }
        assert_eq!(named_catalogue(32).len(), 32 + 16 + 3 + 4 + 4 + 2);
    }

    #[test]
    fn shorthand() {
        assert_eq!(GroupSpec::parse_shorthand("symmetric:3").unwrap(), GroupSpec::named("symmetric", 3));
        assert_eq!(
            GroupSpec::parse_shorthand("extraspecial32:+").unwrap(),
            GroupSpec::Named { family: "extraspecial32".into(), param: NamedParam::Text("+".into()) }
        );
        assert!(GroupSpec::parse_shorthand("symmetric").is_err());
    }
}
