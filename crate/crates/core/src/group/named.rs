//! Constructions of the named group families and of permutation groups.

use std::collections::HashMap;

use super::{FiniteGroup, GroupError};

/// Permutations of `0..degree` stored as image arrays. The product `p * q`
/// applies `p` first, so `(p * q)[x] = q[p[x]]`.
pub type Perm = Vec<u16>;

/// Largest permutation degree accepted.
pub const MAX_DEGREE: usize = 1024;

pub fn compose(p: &[u16], q: &[u16]) -> Perm {
    p.iter().map(|&x| q[x as usize]).collect()
}

/// Converts 1-based cycles on `degree` points into an image array.
pub fn perm_from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Perm, GroupError> {
    if degree == 0 || degree > MAX_DEGREE {
        return Err(GroupError::InvalidPermutation(format!("degree {degree} outside 1..={MAX_DEGREE}")));
    }
    let mut img: Perm = (0..degree as u16).collect();
    let mut used = vec![false; degree];
    for cycle in cycles {
        for &p in cycle {
            if p == 0 || p > degree {
                return Err(GroupError::InvalidPermutation(format!("point {p} outside 1..={degree}")));
            }
            if std::mem::replace(&mut used[p - 1], true) {
                return Err(GroupError::InvalidPermutation(format!("point {p} repeated")));
            }
        }
        for (k, &p) in cycle.iter().enumerate() {
            let next = cycle[(k + 1) % cycle.len()];
            img[p - 1] = (next - 1) as u16;
        }
    }
    Ok(img)
}

/// Cycle notation with 1-based points; the identity is `()`.
pub fn cycle_notation(p: &[u16]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push((x + 1).to_string());
            x = p[x] as usize;
        }
        out.push('(');
        out.push_str(&cycle.join(","));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// The group generated by `gens`, elements sorted lexicographically by image
/// array (so the identity comes first).
pub fn from_permutations(
    name: impl Into<String>,
    degree: usize,
    gens: &[Perm],
    max_order: usize,
) -> Result<FiniteGroup, GroupError> {
    if degree == 0 || degree > MAX_DEGREE {
        return Err(GroupError::InvalidPermutation(format!("degree {degree} outside 1..={MAX_DEGREE}")));
    }
    let identity: Perm = (0..degree as u16).collect();
    let mut index: HashMap<Perm, usize> = HashMap::new();
    let mut elements = vec![identity.clone()];
    index.insert(identity, 0);
    let mut next = 0;
    while next < elements.len() {
        for g in gens {
            let y = compose(&elements[next], g);
            if !index.contains_key(&y) {
                if elements.len() >= max_order {
                    return Err(GroupError::OrderTooLarge { order: elements.len() as u128 + 1, max: max_order });
                }
                index.insert(y.clone(), elements.len());
                elements.push(y);
            }
        }
        next += 1;
    }
    elements.sort();
    let index: HashMap<&[u16], usize> = elements.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let n = elements.len();
    let mut flat = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            flat.push(index[compose(a, b).as_slice()] as u32);
        }
    }
    let labels = elements.iter().map(|p| cycle_notation(p)).collect();
    FiniteGroup::from_flat(name.into(), n, flat, Some(labels), false)
}

fn from_rule(
    name: String,
    n: usize,
    labels: Vec<String>,
    mul: impl Fn(usize, usize) -> usize,
) -> Result<FiniteGroup, GroupError> {
    let mut flat = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            flat.push(mul(a, b) as u32);
        }
    }
    FiniteGroup::from_flat(name, n, flat, Some(labels), false)
}

fn power_label(base: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{k}"),
    }
}

fn join_label(parts: &[String]) -> String {
    let parts: Vec<&str> = parts.iter().map(String::as_str).filter(|s| !s.is_empty()).collect();
    if parts.is_empty() {
        "e".to_string()
    } else {
        parts.join(" ")
    }
}

fn invalid(family: &str, reason: impl Into<String>) -> GroupError {
    GroupError::InvalidParameter { family: family.to_string(), reason: reason.into() }
}

pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(invalid("cyclic", "order must be at least 1"));
    }
    let labels = (0..n).map(|k| join_label(&[power_label("g", k)])).collect();
    from_rule(format!("cyclic({n})"), n, labels, |a, b| (a + b) % n)
}

/// Dihedral group of order `2n`. Element `f*n + a` is `s^f r^a`, with
/// `r s = s r⁻¹`.
pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(invalid("dihedral", "n must be at least 1"));
    }
    let labels = (0..2 * n)
        .map(|i| join_label(&[power_label("s", i / n), power_label("r", i % n)]))
        .collect();
    from_rule(format!("dihedral({n})"), 2 * n, labels, |x, y| {
        let (f, a) = (x / n, x % n);
        let (g, b) = (y / n, y % n);
        // s^f r^a s^g r^b = s^(f+g) r^(b + (-1)^g a)
        let a = if g == 1 { (n - a) % n } else { a };
        ((f + g) % 2) * n + (a + b) % n
    })
}

/// Generalized quaternion group of the given order `2^k`, `k ≥ 3`.
/// Element `b*m + a` is `x^a y^b` with `m = order/2`, `y x y⁻¹ = x⁻¹` and
/// `y² = x^(m/2)`.
pub fn quaternion(order: usize) -> Result<FiniteGroup, GroupError> {
    if order < 8 || !order.is_power_of_two() {
        return Err(invalid("quaternion", "order must be a power of two, at least 8"));
    }
    let m = order / 2;
    let labels = (0..order)
        .map(|i| join_label(&[power_label("x", i % m), power_label("y", i / m)]))
        .collect();
    from_rule(format!("quaternion({order})"), order, labels, |p, q| {
        let (b, a) = (p / m, p % m);
        let (d, c) = (q / m, q % m);
        // x^a y^b x^c y^d = x^(a + (-1)^b c) y^(b+d)
        let c = if b == 1 { (m - c) % m } else { c };
        let mut e = (a + c) % m;
        if b + d == 2 {
            e = (e + m / 2) % m;
        }
        ((b + d) % 2) * m + e
    })
}

pub fn symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
    symmetric_bounded(n, usize::MAX)
}

pub(crate) fn symmetric_bounded(n: usize, max_order: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 || n > MAX_DEGREE {
        return Err(invalid("symmetric", format!("degree must be in 1..={MAX_DEGREE}")));
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(perm_from_cycles(n, &[vec![1, 2]])?);
        gens.push(perm_from_cycles(n, &[(1..=n).collect()])?);
    }
    from_permutations(format!("symmetric({n})"), n, &gens, max_order)
}

pub fn alternating(n: usize) -> Result<FiniteGroup, GroupError> {
    alternating_bounded(n, usize::MAX)
}

pub(crate) fn alternating_bounded(n: usize, max_order: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 || n > MAX_DEGREE {
        return Err(invalid("alternating", format!("degree must be in 1..={MAX_DEGREE}")));
    }
    let gens = (3..=n)
        .map(|k| perm_from_cycles(n, &[vec![1, 2, k]]))
        .collect::<Result<Vec<_>, _>>()?;
    from_permutations(format!("alternating({n})"), n, &gens, max_order)
}

/// Direct product; element `(i₁, …, i_k)` has mixed-radix index with the
/// first factor most significant.
pub fn direct_product(factors: &[FiniteGroup]) -> Result<FiniteGroup, GroupError> {
    let orders: Vec<usize> = factors.iter().map(FiniteGroup::order).collect();
    let n: usize = orders.iter().product();
    let split = |mut x: usize| {
        let mut digits = vec![0; orders.len()];
        for k in (0..orders.len()).rev() {
            digits[k] = x % orders[k];
            x /= orders[k];
        }
        digits
    };
    let labels = (0..n)
        .map(|x| {
            let parts: Vec<&str> = split(x).iter().zip(factors).map(|(&d, g)| g.label(d)).collect();
            format!("({})", parts.join(", "))
        })
        .collect();
    let name = factors.iter().map(|g| g.name().to_string()).collect::<Vec<_>>().join(" x ");
    let digits: Vec<Vec<usize>> = (0..n).map(split).collect();
    from_rule(name, n, labels, |x, y| {
        digits[x]
            .iter()
            .zip(&digits[y])
            .zip(factors)
            .fold(0, |acc, ((&a, &b), g)| acc * g.order() + g.mul(a, b))
    })
}

/// `G / N` for a normal subgroup `N` given by its elements. Cosets are indexed
/// by their minimal element and labelled by it.
pub fn quotient(group: &FiniteGroup, normal: &[usize], name: String) -> Result<FiniteGroup, GroupError> {
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for g in 0..n {
        if coset_of[g] != usize::MAX {
            continue;
        }
        for &h in normal {
            coset_of[group.mul(g, h)] = reps.len();
        }
        reps.push(g);
    }
    let labels = reps.iter().map(|&g| group.label(g).to_string()).collect();
    from_rule(name, reps.len(), labels, |a, b| coset_of[group.mul(reps[a], reps[b])])
}

/// Extraspecial groups of order 32: `D₈∘D₈` (plus type) or `D₈∘Q₈` (minus type).
pub fn extraspecial32(plus: bool) -> Result<FiniteGroup, GroupError> {
    let d8 = dihedral(4)?;
    let other = if plus { dihedral(4)? } else { quaternion(8)? };
    // r² in D₈ and x² in Q₈ both sit at index 2 and generate the centers.
    let product = direct_product(&[d8, other])?;
    let z = 2 * 8 + 2;
    let sign = if plus { '+' } else { '-' };
    quotient(&product, &[0, z], format!("extraspecial32({sign})"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{derived_subgroup, maximal_abelian_subgroups};

    #[test]
    fn family_orders() {
        assert_eq!(cyclic(1).unwrap().order(), 1);
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(dihedral(5).unwrap().order(), 10);
        assert_eq!(quaternion(16).unwrap().order(), 16);
        assert_eq!(extraspecial32(true).unwrap().order(), 32);
        assert_eq!(extraspecial32(false).unwrap().order(), 32);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(cyclic(0).is_err());
        assert!(quaternion(4).is_err());
        assert!(quaternion(24).is_err());
        assert!(symmetric(0).is_err());
    }

    #[test]
    fn small_dihedral_cases_are_abelian() {
        assert!(dihedral(1).unwrap().is_abelian());
        assert!(dihedral(2).unwrap().is_abelian());
        assert!(!dihedral(3).unwrap().is_abelian());
    }

    #[test]
    fn s3_has_trivial_center() {
        let g = symmetric(3).unwrap();
        // brute force over the table
        let central: Vec<usize> = (0..6).filter(|&a| (0..6).all(|b| g.commutes(a, b))).collect();
        assert_eq!(central, vec![0]);
        assert_eq!(g.center().order(), 1);
        assert_eq!(g.label(0), "()");
    }

    #[test]
    fn quaternion_structure() {
        for order in [8, 16, 32] {
            let q = quaternion(order).unwrap();
            assert_eq!(q.center().order(), 2);
            let involutions = (1..order).filter(|&x| q.element_order(x) == 2).count();
            assert_eq!(involutions, 1);
            let m = maximal_abelian_subgroups(&q);
            assert_eq!(m.len(), 1 + order / 4);
            assert!(m.iter().any(|h| h.order() == order / 2));
            assert_eq!(m.iter().filter(|h| h.order() == 4).count(), if order == 8 { 3 } else { order / 4 });
        }
    }

    #[test]
    fn extraspecial_structure() {
        for (plus, involutions) in [(true, 19), (false, 11)] {
            let g = extraspecial32(plus).unwrap();
            let z = g.center();
            assert_eq!(z.order(), 2);
            assert_eq!(derived_subgroup(&g), z);
            assert!((0..32).all(|x| z.contains(g.mul(x, x))));
            assert_eq!((1..32).filter(|&x| g.element_order(x) == 2).count(), involutions);
            let m = maximal_abelian_subgroups(&g);
            assert_eq!(m.len(), 15);
            assert!(m.iter().all(|h| h.order() == 8));
        }
    }

    #[test]
    fn cycle_round_trip() {
        let p = perm_from_cycles(5, &[vec![1, 3, 2], vec![4, 5]]).unwrap();
        assert_eq!(cycle_notation(&p), "(1,3,2)(4,5)");
        assert!(perm_from_cycles(3, &[vec![1, 1]]).is_err());
        assert!(perm_from_cycles(3, &[vec![4]]).is_err());
    }

    #[test]
    fn order_21_from_permutations() {
        let a = perm_from_cycles(7, &[(1..=7).collect()]).unwrap();
        let b = perm_from_cycles(7, &[vec![2, 3, 5], vec![4, 7, 6]]).unwrap();
        let g = from_permutations("F21", 7, &[a, b], 4096).unwrap();
        assert_eq!(g.order(), 21);
        assert_eq!(derived_subgroup(&g).order(), 7);
    }

    #[test]
    fn permutation_closure_respects_cap() {
        let err = symmetric_bounded(5, 100).unwrap_err();
        assert!(matches!(err, GroupError::OrderTooLarge { .. }));
    }
}
