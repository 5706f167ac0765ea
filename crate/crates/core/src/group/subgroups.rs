use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use super::{Coset, ElementSet, FiniteGroup, GroupError, Subgroup};

/// `{ g : gs = sg for all s ∈ S }`.
pub fn centralizer(group: &FiniteGroup, set: &ElementSet) -> Subgroup {
    let members = set.to_vec();
    let mut out = ElementSet::empty(group.order());
    for g in 0..group.order() {
        if members.iter().all(|&s| group.commutes(g, s)) {
            out.insert(g);
        }
    }
    Subgroup::from_elements_unchecked(out)
}

/// The cyclic subgroup `⟨g⟩`.
fn cyclic(group: &FiniteGroup, g: usize) -> ElementSet {
    let mut out = ElementSet::singleton(group.order(), 0);
    let mut x = g;
    while out.insert(x) {
        x = group.mul(x, g);
    }
    out
}

/// Smallest subgroup containing `set`; `⟨∅⟩` is the trivial subgroup.
pub fn generated_subgroup(group: &FiniteGroup, set: &ElementSet) -> Subgroup {
    let mut current = ElementSet::singleton(group.order(), 0);
    for g in set.iter() {
        if !current.contains(g) {
            current = close_by(group, &current, g);
        }
    }
    Subgroup::from_elements_unchecked(current)
}

/// `⟨H, g⟩` for a subgroup `H`, grown one left coset `zH` at a time.
fn close_by(group: &FiniteGroup, subgroup: &ElementSet, g: usize) -> ElementSet {
    let sub: Vec<usize> = subgroup.iter().collect();
    let mut out = subgroup.clone();
    let mut queue: VecDeque<usize> = sub.iter().copied().collect();
    while let Some(y) = queue.pop_front() {
        let z = group.mul(y, g);
        if !out.contains(z) {
            for &h in &sub {
                let w = group.mul(z, h);
                out.insert(w);
                queue.push_back(w);
            }
        }
    }
    out
}

/// Subgroup generated by all commutators `[x, y]` of elements of `h`.
pub fn derived_subgroup_of(group: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let members = h.elements().to_vec();
    let mut comms = ElementSet::empty(group.order());
    for (k, &x) in members.iter().enumerate() {
        for &y in &members[k + 1..] {
            comms.insert(group.commutator(x, y));
        }
    }
    generated_subgroup(group, &comms)
}

/// `[G, G]`.
pub fn derived_subgroup(group: &FiniteGroup) -> Subgroup {
    derived_subgroup_of(group, &Subgroup::whole(group))
}

/// All abelian subgroups, sorted by order and then element set.
///
/// Grows each abelian subgroup `A` by elements of `C(A) \ A`, which keeps
/// every intermediate subgroup abelian. Fails once more than `budget`
/// distinct subgroups have been found.
pub fn abelian_subgroups(group: &FiniteGroup, budget: usize) -> Result<Vec<Subgroup>, GroupError> {
    let n = group.order();
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut queue: VecDeque<ElementSet> = VecDeque::new();
    let mut cyclic_done = ElementSet::empty(n);
    for g in 0..n {
        if cyclic_done.contains(g) {
            continue;
        }
        let cyc = cyclic(group, g);
        // Elements generating the same cyclic subgroup need no second pass.
        for h in cyc.iter() {
            if group.element_order(h) == cyc.len() {
                cyclic_done.insert(h);
            }
        }
        if seen.insert(cyc.clone()) {
            queue.push_back(cyc);
        }
        if seen.len() > budget {
            return Err(GroupError::BudgetExceeded { attempted: seen.len() });
        }
    }
    while let Some(a) = queue.pop_front() {
        let mut candidates = centralizer(group, &a).elements().difference(&a);
        while let Some(g) = candidates.first() {
            let b = close_by(group, &a, g);
            candidates.difference_with(&b);
            if seen.insert(b.clone()) {
                if seen.len() > budget {
                    return Err(GroupError::BudgetExceeded { attempted: seen.len() });
                }
                queue.push_back(b);
            }
        }
    }
    let mut out: Vec<Subgroup> = seen.into_iter().map(Subgroup::from_elements_unchecked).collect();
    out.sort_by(Subgroup::canonical_cmp);
    Ok(out)
}

/// Abelian subgroups equal to their own centralizer, sorted canonically.
///
/// Every maximal abelian subgroup contains the center, so the search only
/// walks abelian subgroups above `Z(G)`.
pub fn maximal_abelian_subgroups(group: &FiniteGroup) -> Vec<Subgroup> {
    let center = group.center().elements().clone();
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut out = Vec::new();
    let mut stack = vec![center.clone()];
    seen.insert(center);
    while let Some(a) = stack.pop() {
        let c = centralizer(group, &a);
        if c.elements() == &a {
            out.push(Subgroup::from_elements_unchecked(a));
            continue;
        }
        let mut candidates = c.elements().difference(&a);
        while let Some(g) = candidates.first() {
            let b = close_by(group, &a, g);
            candidates.difference_with(&b);
            if seen.insert(b.clone()) {
                stack.push(b);
            }
        }
    }
    out.sort_by(Subgroup::canonical_cmp);
    out
}

/// Left cosets of `h`, ordered by minimal representative.
pub fn left_cosets(group: &FiniteGroup, h: &Subgroup) -> Vec<Coset> {
    let shared = Arc::new(h.clone());
    let mut covered = ElementSet::empty(group.order());
    let mut out = Vec::with_capacity(group.order() / h.order().max(1));
    for g in 0..group.order() {
        if covered.contains(g) {
            continue;
        }
        let c = Coset::new(group, shared.clone(), g);
        covered.union_with(c.elements());
        out.push(c);
    }
    out
}

/// The three equivalent affine-commutativity tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AffineTest {
    /// Consecutive quotients `sᵢ⁻¹sᵢ₊₁` commute pairwise.
    ConsecutiveQuotients = 1,
    /// `⟨sᵢ⁻¹sⱼ⟩` is abelian.
    GeneratedQuotients = 2,
    /// `S` lies in the coset returned by [`minimal_enclosing_coset`].
    EnclosingCoset = 3,
}

impl AffineTest {
    pub fn from_number(m: u8) -> Option<Self> {
        match m {
            1 => Some(AffineTest::ConsecutiveQuotients),
            2 => Some(AffineTest::GeneratedQuotients),
            3 => Some(AffineTest::EnclosingCoset),
            _ => None,
        }
    }
}

/// Method 1 on an explicit enumeration order of `S`.
pub fn is_affinely_commutative_ordered(group: &FiniteGroup, elements: &[usize]) -> Result<bool, GroupError> {
    if elements.is_empty() {
        return Err(GroupError::EmptySet);
    }
    let quotients: Vec<usize> = elements
        .windows(2)
        .map(|w| group.mul(group.inv(w[0]), w[1]))
        .collect();
    Ok(quotients
        .iter()
        .enumerate()
        .all(|(k, &a)| quotients[k + 1..].iter().all(|&b| group.commutes(a, b))))
}

/// Whether `set` lies in a single left coset of an abelian subgroup.
pub fn is_affinely_commutative(group: &FiniteGroup, set: &ElementSet, method: AffineTest) -> Result<bool, GroupError> {
    if set.is_empty() {
        return Err(GroupError::EmptySet);
    }
    match method {
        AffineTest::ConsecutiveQuotients => is_affinely_commutative_ordered(group, &set.to_vec()),
        AffineTest::GeneratedQuotients => {
            let members = set.to_vec();
            let mut quotients = ElementSet::empty(group.order());
            for &a in &members {
                for &b in &members {
                    quotients.insert(group.mul(group.inv(a), b));
                }
            }
            Ok(generated_subgroup(group, &quotients).is_abelian(group))
        }
        AffineTest::EnclosingCoset => Ok(minimal_enclosing_coset(group, set)
            .is_some_and(|c| set.is_subset(c.elements()) && c.subgroup().is_abelian(group))),
    }
}

/// `s⟨s⁻¹S⟩` for `s = min S` when that subgroup is abelian, else `None`.
pub fn minimal_enclosing_coset(group: &FiniteGroup, set: &ElementSet) -> Option<Coset> {
    let s = set.first()?;
    let s_inv = group.inv(s);
    let shifted = ElementSet::from_indices(group.order(), set.iter().map(|x| group.mul(s_inv, x)));
    let h = generated_subgroup(group, &shifted);
    if !h.is_abelian(group) {
        return None;
    }
    Some(Coset::new(group, Arc::new(h), s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named;

    fn s3() -> FiniteGroup {
        named::symmetric(3).unwrap()
    }

    fn find(g: &FiniteGroup, label: &str) -> usize {
        (0..g.order()).find(|&i| g.label(i) == label).unwrap_or_else(|| panic!("no element {label}"))
    }

    #[test]
    fn centralizer_of_empty_set_is_everything() {
        let g = s3();
        assert_eq!(centralizer(&g, &ElementSet::empty(6)).order(), 6);
    }

    #[test]
    fn centralizer_of_three_cycle_in_s3() {
        let g = s3();
        let c = find(&g, "(1,2,3)");
        let z = centralizer(&g, &ElementSet::singleton(6, c));
        assert_eq!(z.order(), 3);
        assert!(z.elements().iter().all(|x| x == 0 || g.element_order(x) == 3));
    }

    #[test]
    fn minus_one_is_central_in_q8() {
        let g = named::quaternion(8).unwrap();
        let minus_one = (1..8).find(|&x| g.element_order(x) == 2).unwrap();
        assert_eq!(centralizer(&g, &ElementSet::singleton(8, minus_one)).order(), 8);
    }

    #[test]
    fn generated_subgroups() {
        let g = s3();
        assert_eq!(generated_subgroup(&g, &ElementSet::empty(6)).elements().to_vec(), vec![0]);
        let t = find(&g, "(1,2)");
        assert_eq!(generated_subgroup(&g, &ElementSet::singleton(6, t)).order(), 2);
        let q = named::quaternion(8).unwrap();
        // x and y generate Q8.
        let i = find(&q, "x");
        let j = find(&q, "y");
        assert_eq!(generated_subgroup(&q, &ElementSet::from_indices(8, [i, j])).order(), 8);
    }

    #[test]
    fn derived_subgroups() {
        assert_eq!(derived_subgroup(&named::cyclic(6).unwrap()).order(), 1);
        let d = derived_subgroup(&s3());
        assert_eq!(d.order(), 3);
        let q = named::quaternion(8).unwrap();
        assert_eq!(derived_subgroup(&q), q.center());
        assert_eq!(q.center().order(), 2);
    }

    #[test]
    fn abelian_subgroup_counts() {
        assert_eq!(abelian_subgroups(&named::cyclic(4).unwrap(), 100).unwrap().len(), 3);
        let ab = abelian_subgroups(&s3(), 100).unwrap();
        let orders: Vec<usize> = ab.iter().map(|h| h.order()).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3]);
        assert_eq!(abelian_subgroups(&named::cyclic(1).unwrap(), 100).unwrap().len(), 1);
    }

    #[test]
    fn abelian_subgroup_budget() {
        let err = abelian_subgroups(&named::symmetric(4).unwrap(), 5).unwrap_err();
        assert!(matches!(err, GroupError::BudgetExceeded { attempted } if attempted > 5));
    }

    #[test]
    fn maximal_abelian_subgroups_examples() {
        let q = named::quaternion(8).unwrap();
        let m = maximal_abelian_subgroups(&q);
        assert_eq!(m.len(), 3);
        assert!(m.iter().all(|h| h.order() == 4));
        let s = maximal_abelian_subgroups(&s3());
        assert_eq!(s.iter().map(|h| h.order()).collect::<Vec<_>>(), vec![2, 2, 2, 3]);
        let z = named::cyclic(12).unwrap();
        assert_eq!(maximal_abelian_subgroups(&z), vec![Subgroup::whole(&z)]);
    }

    #[test]
    fn coset_counts() {
        let g = s3();
        assert_eq!(left_cosets(&g, &Subgroup::whole(&g)).len(), 1);
        let a3 = derived_subgroup(&g);
        let cs = left_cosets(&g, &a3);
        assert_eq!(cs.len(), 2);
        assert!(cs[0].elements().is_disjoint(cs[1].elements()));
        let q = named::quaternion(8).unwrap();
        assert_eq!(left_cosets(&q, &q.center()).len(), 4);
    }

    #[test]
    fn affine_commutativity_examples() {
        let g = s3();
        for a in 0..6 {
            for b in 0..6 {
                let s = ElementSet::from_indices(6, [a, b]);
                assert!(is_affinely_commutative(&g, &s, AffineTest::ConsecutiveQuotients).unwrap());
            }
        }
        let s = ElementSet::from_indices(6, [0, find(&g, "(1,2)"), find(&g, "(1,2,3)")]);
        for m in 1..=3 {
            assert!(!is_affinely_commutative(&g, &s, AffineTest::from_number(m).unwrap()).unwrap());
        }
        assert_eq!(
            is_affinely_commutative(&g, &ElementSet::empty(6), AffineTest::GeneratedQuotients),
            Err(GroupError::EmptySet)
        );
    }

    #[test]
    fn enclosing_coset_examples() {
        let g = s3();
        let x = find(&g, "(1,3)");
        let c = minimal_enclosing_coset(&g, &ElementSet::singleton(6, x)).unwrap();
        assert_eq!(c.elements().to_vec(), vec![x]);
        assert_eq!(c.subgroup().order(), 1);

        let a3 = derived_subgroup(&g);
        for coset in left_cosets(&g, &a3) {
            let m = minimal_enclosing_coset(&g, coset.elements()).unwrap();
            assert_eq!(m, coset);
        }

        let pair = ElementSet::from_indices(6, [find(&g, "(1,2)"), find(&g, "(1,3)")]);
        let m = minimal_enclosing_coset(&g, &pair).unwrap();
        assert_eq!(m.subgroup(), &a3);
        assert!(pair.is_subset(m.elements()));
        assert_eq!(m.len(), 3);
    }
}
