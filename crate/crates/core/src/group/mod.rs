//! Finite groups given by complete multiplication tables, together with the
//! subgroup, centralizer and coset machinery used by the complexes.
//!
//! Elements are dense indices `0..n` with the identity pinned at index 0.
//! Every set of elements is an [`ElementSet`] bitset, so subgroup and coset
//! equality is bitset equality.

mod bitset;
pub mod named;
pub mod spec;
mod subgroups;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use bitset::ElementSet;
pub use spec::{load_group, named_catalogue, GroupSpec, LoadOptions, NamedParam};
pub use subgroups::{
    abelian_subgroups, centralizer, derived_subgroup, derived_subgroup_of, generated_subgroup,
    is_affinely_commutative, is_affinely_commutative_ordered, left_cosets,
    maximal_abelian_subgroups, minimal_enclosing_coset, AffineTest,
};

/// Default cap on group order accepted by [`load_group`].
pub const DEFAULT_MAX_ORDER: usize = 4096;

/// Tables up to this order are checked for associativity on load.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 512;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is empty")]
    EmptyTable,
    #[error("multiplication table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("table entry {value} at ({row}, {col}) is out of range for order {order}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("multiplication table is not a Latin square ({axis} {index} repeats an element)")]
    NotLatin { axis: &'static str, index: usize },
    #[error("element 0 is not a two-sided identity")]
    NoIdentity,
    #[error("multiplication is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("unknown group family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameter for {family}: {reason}")]
    InvalidParameter { family: String, reason: String },
    #[error("group order {order} exceeds the configured maximum {max}")]
    OrderTooLarge { order: u128, max: usize },
    #[error("invalid permutation generator: {0}")]
    InvalidPermutation(String),
    #[error("malformed group spec: {0}")]
    Malformed(String),
    #[error("affine commutativity is undefined for the empty set")]
    EmptySet,
    #[error("abelian subgroup enumeration exceeded its budget after {attempted} subgroups")]
    BudgetExceeded { attempted: usize },
}

/// How associativity of the table was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Associativity {
    /// Checked exhaustively over all triples.
    Checked,
    /// Above [`ASSOCIATIVITY_CHECK_LIMIT`] and skipped on request.
    Trusted,
}

/// A finite group stored as its full Cayley table.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    labels: Vec<String>,
    associativity: Associativity,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

impl FiniteGroup {
    /// Validates a table and builds the group. `table[i][j]` is the index of
    /// `g_i * g_j`. Associativity is always checked up to
    /// [`ASSOCIATIVITY_CHECK_LIMIT`]; above it only if `check_large` is set.
    pub fn from_table(
        name: impl Into<String>,
        table: &[Vec<usize>],
        labels: Option<Vec<String>>,
        check_large: bool,
    ) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::EmptyTable);
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotSquare { row: i, len: row.len(), expected: n });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::EntryOutOfRange { row: i, col: j, value: v, order: n });
                }
                flat.push(v as u32);
            }
        }
        Self::from_flat(name.into(), n, flat, labels, check_large)
    }

    pub(crate) fn from_flat(
        name: String,
        n: usize,
        flat: Vec<u32>,
        labels: Option<Vec<String>>,
        check_large: bool,
    ) -> Result<Self, GroupError> {
        for i in 0..n {
            let mut seen = ElementSet::empty(n);
            if !(0..n).all(|j| seen.insert(flat[i * n + j] as usize)) {
                return Err(GroupError::NotLatin { axis: "row", index: i });
            }
        }
        for j in 0..n {
            let mut seen = ElementSet::empty(n);
            if !(0..n).all(|i| seen.insert(flat[i * n + j] as usize)) {
                return Err(GroupError::NotLatin { axis: "column", index: j });
            }
        }
        for j in 0..n {
            if flat[j] as usize != j || flat[j * n] as usize != j {
                return Err(GroupError::NoIdentity);
            }
        }
        let mut inverse = vec![0u32; n];
        for i in 0..n {
            // Latin rows guarantee a unique right inverse; with a two-sided
            // identity and associativity it is also a left inverse.
            let j = (0..n).find(|&j| flat[i * n + j] == 0).expect("latin row contains 0");
            inverse[i] = j as u32;
        }
        let associativity = if n <= ASSOCIATIVITY_CHECK_LIMIT || check_large {
            check_associative(n, &flat)?;
            Associativity::Checked
        } else {
            Associativity::Trusted
        };
        for i in 0..n {
            if flat[inverse[i] as usize * n + i] != 0 {
                return Err(GroupError::NotAssociative { a: inverse[i] as usize, b: i, c: inverse[i] as usize });
            }
        }
        let labels = match labels {
            Some(l) if l.len() == n => l,
            _ => (0..n).map(|i| i.to_string()).collect(),
        };
        Ok(FiniteGroup { name, order: n, table: flat, inverse, labels, associativity })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn associativity(&self) -> Associativity {
        self.associativity
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `[x, y] = x⁻¹ y⁻¹ x y`.
    #[inline]
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        let xi = self.inv(x);
        let yi = self.inv(y);
        self.mul(self.mul(xi, yi), self.mul(x, y))
    }

    #[inline]
    pub fn commutes(&self, x: usize, y: usize) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commutes(a, b)))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.order)
    }

    /// Returns the table as nested rows.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.mul(i, j)).collect())
            .collect()
    }

    pub fn center(&self) -> Subgroup {
        centralizer(self, &self.all())
    }

    pub fn is_subgroup(&self, s: &ElementSet) -> bool {
        s.contains(0)
            && s.iter()
                .all(|a| s.contains(self.inv(a)) && s.iter().all(|b| s.contains(self.mul(a, b))))
    }
}

fn check_associative(n: usize, t: &[u32]) -> Result<(), GroupError> {
    for a in 0..n {
        for b in 0..n {
            let ab = t[a * n + b] as usize;
            let row_ab = &t[ab * n..ab * n + n];
            let row_b = &t[b * n..b * n + n];
            let row_a = &t[a * n..a * n + n];
            for c in 0..n {
                if row_ab[c] != row_a[row_b[c] as usize] {
                    return Err(GroupError::NotAssociative { a, b, c });
                }
            }
        }
    }
    Ok(())
}

/// A subgroup, identified by its element set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: ElementSet,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.elements)
    }
}

impl Subgroup {
    /// Wraps a set already known to be a subgroup.
    pub(crate) fn from_elements_unchecked(elements: ElementSet) -> Self {
        Subgroup { elements }
    }

    /// Wraps `elements` after checking closure.
    pub fn new(group: &FiniteGroup, elements: ElementSet) -> Option<Self> {
        group.is_subgroup(&elements).then_some(Subgroup { elements })
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Subgroup { elements: ElementSet::singleton(group.order(), 0) }
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Subgroup { elements: group.all() }
    }

    pub fn elements(&self) -> &ElementSet {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.contains(g)
    }

    pub fn is_abelian(&self, group: &FiniteGroup) -> bool {
        let members = self.elements.to_vec();
        members
            .iter()
            .enumerate()
            .all(|(k, &a)| members[k + 1..].iter().all(|&b| group.commutes(a, b)))
    }

    /// Canonical sort key: by order, then by element set.
    pub(crate) fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.elements.cmp(&other.elements))
    }
}

/// A left coset `gH`, represented by its minimal element.
#[derive(Clone)]
pub struct Coset {
    subgroup: Arc<Subgroup>,
    representative: usize,
    elements: ElementSet,
}

impl Coset {
    pub fn new(group: &FiniteGroup, subgroup: Arc<Subgroup>, g: usize) -> Self {
        let mut elements = ElementSet::empty(group.order());
        for a in subgroup.elements().iter() {
            elements.insert(group.mul(g, a));
        }
        let representative = elements.first().expect("cosets are nonempty");
        Coset { subgroup, representative, elements }
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn subgroup_arc(&self) -> &Arc<Subgroup> {
        &self.subgroup
    }

    pub fn representative(&self) -> usize {
        self.representative
    }

    pub fn elements(&self) -> &ElementSet {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.subgroup.order()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_subset(&self, other: &Coset) -> bool {
        self.elements.is_subset(&other.elements)
    }

    pub fn label(&self, group: &FiniteGroup) -> String {
        let members: Vec<&str> = self.elements.iter().map(|g| group.label(g)).collect();
        format!("{{{}}}", members.join(","))
    }
}

impl PartialEq for Coset {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Coset {}

impl std::hash::Hash for Coset {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl fmt::Debug for Coset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coset({} ; {:?})", self.representative, self.elements)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3_table() -> Vec<Vec<usize>> {
        (0..3).map(|i| (0..3).map(|j| (i + j) % 3).collect()).collect()
    }

    #[test]
    fn accepts_cyclic_table() {
        let g = FiniteGroup::from_table("Z3", &z3_table(), None, false).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.inv(1), 2);
        assert_eq!(g.associativity(), Associativity::Checked);
        assert!(g.is_abelian());
    }

    #[test]
    fn rejects_non_latin_table() {
        let t = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(
            FiniteGroup::from_table("bad", &t, None, false),
            Err(GroupError::NotLatin { .. })
        ));
    }

    #[test]
    fn rejects_identity_elsewhere() {
        // Z2 with the identity stored at index 1.
        let t = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(FiniteGroup::from_table("bad", &t, None, false).unwrap_err(), GroupError::NoIdentity);
    }

    #[test]
    fn rejects_non_associative_loop() {
        // A Latin square loop of order 5 with identity 0 that is not a group.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table("loop", &t, None, false),
            Err(GroupError::NotAssociative { .. })
        ));
    }

    #[test]
    fn rejects_ragged_and_out_of_range() {
        assert!(matches!(
            FiniteGroup::from_table("r", &[vec![0, 1], vec![1]], None, false),
            Err(GroupError::NotSquare { .. })
        ));
        assert!(matches!(
            FiniteGroup::from_table("r", &[vec![0, 2], vec![1, 0]], None, false),
            Err(GroupError::EntryOutOfRange { .. })
        ));
        assert_eq!(FiniteGroup::from_table("r", &[], None, false).unwrap_err(), GroupError::EmptyTable);
    }
}
