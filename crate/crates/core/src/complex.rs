//! Simplicial complexes stored by their facets, the complex `AfCom(G)`, the
//! coset posets `AbCo(G)` and `mAbCo(G)`, and order complexes of posets.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{
    abelian_subgroups, derived_subgroup, left_cosets, maximal_abelian_subgroups, Coset, ElementSet, FiniteGroup, GroupError,
    Subgroup,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("vertex {vertex} out of range for a complex on {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("vertex {0} lies in no facet")]
    UncoveredVertex(usize),
    #[error("label map names vertex {0}, which does not exist")]
    UnknownLabel(usize),
    #[error("{what} exceeded the budget of {limit}")]
    Budget { what: &'static str, limit: usize },
    #[error("malformed complex export: {0}")]
    Malformed(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A simplex as a strictly increasing vertex list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    vertices: Vec<u32>,
}

impl Simplex {
    pub fn new(vertices: Vec<u32>) -> Option<Self> {
        vertices.windows(2).all(|w| w[0] < w[1]).then_some(Simplex { vertices })
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn dimension(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    /// The face obtained by deleting the `i`-th vertex.
    pub fn face(&self, i: usize) -> Simplex {
        let mut v = self.vertices.clone();
        v.remove(i);
        Simplex { vertices: v }
    }
}

/// A finite simplicial complex given by its maximal faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    facets: Vec<Vec<u32>>,
    labels: Vec<String>,
}

/// JSON form: `{"vertices": n, "facets": [[...], ...], "labels": {"0": "...", ...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexExport {
    pub vertices: usize,
    pub facets: Vec<Vec<u32>>,
    #[serde(default)]
    pub labels: BTreeMap<usize, String>,
}

/// Largest vertex count accepted from an export.
pub const MAX_IMPORT_VERTICES: usize = 1 << 20;

impl SimplicialComplex {
    /// Builds the complex generated by `faces`, keeping only the maximal ones.
    pub fn from_faces(
        vertex_count: usize,
        faces: Vec<Vec<u32>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, ComplexError> {
        let mut faces: Vec<Vec<u32>> = faces
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .filter(|f| !f.is_empty())
            .collect();
        for f in &faces {
            if let Some(&v) = f.iter().find(|&&v| v as usize >= vertex_count) {
                return Err(ComplexError::VertexOutOfRange { vertex: v as usize, vertex_count });
            }
        }
        faces.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        faces.dedup();

        let mut kept: Vec<(Vec<u32>, ElementSet)> = Vec::with_capacity(faces.len());
        for f in faces {
            let bits = ElementSet::from_indices(vertex_count, f.iter().map(|&v| v as usize));
            let dominated = kept
                .iter()
                .take_while(|(g, _)| g.len() > f.len())
                .any(|(_, gb)| bits.is_subset(gb));
            if !dominated {
                kept.push((f, bits));
            }
        }
        let mut covered = ElementSet::empty(vertex_count);
        for (_, b) in &kept {
            covered.union_with(b);
        }
        if let Some(v) = ElementSet::full(vertex_count).difference(&covered).first() {
            return Err(ComplexError::UncoveredVertex(v));
        }
        let mut facets: Vec<Vec<u32>> = kept.into_iter().map(|(f, _)| f).collect();
        facets.sort_unstable();
        let labels = match labels {
            Some(l) if l.len() == vertex_count => l,
            _ => (0..vertex_count).map(|i| i.to_string()).collect(),
        };
        Ok(SimplicialComplex { vertex_count, facets, labels })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn facets(&self) -> &[Vec<u32>] {
        &self.facets
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Largest facet dimension, or `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.len() - 1).max()
    }

    /// The same complex with facets supplied in a different order; used to
    /// check that nothing downstream depends on input order.
    pub fn with_facet_order(&self, order: &[usize]) -> Result<Self, ComplexError> {
        let faces = order.iter().map(|&i| self.facets[i].clone()).collect();
        SimplicialComplex::from_faces(self.vertex_count, faces, Some(self.labels.clone()))
    }

    /// Number of `k`-faces, counted without materialising them when `k`
    /// exceeds every facet dimension.
    /// `Σ_F C(|F|, k+1)`, an upper bound on the number of `k`-simplices that
    /// is exact when facets share no `k`-face. Saturates.
    pub fn simplex_bound(&self, k: usize) -> u128 {
        self.facets
            .iter()
            .map(|f| binomial(f.len() as u128, k as u128 + 1))
            .fold(0u128, u128::saturating_add)
    }

    pub fn count_simplices(&self, k: usize) -> usize {
        if self.facets.iter().all(|f| f.len() <= k) {
            return 0;
        }
        k_simplices(self, k).len()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for f in &self.facets {
            let a = find(&mut parent, f[0] as usize);
            for &v in &f[1..] {
                let b = find(&mut parent, v as usize);
                parent[b] = a;
            }
        }
        let root = find(&mut parent, 0);
        (0..self.vertex_count).all(|v| find(&mut parent, v) == root)
    }

    pub fn to_export(&self) -> ComplexExport {
        ComplexExport {
            vertices: self.vertex_count,
            facets: self.facets.clone(),
            labels: self.labels.iter().cloned().enumerate().collect(),
        }
    }

    pub fn from_export(export: ComplexExport) -> Result<Self, ComplexError> {
        if export.vertices > MAX_IMPORT_VERTICES {
            return Err(ComplexError::Malformed(format!(
                "{} vertices exceeds the import limit {MAX_IMPORT_VERTICES}",
                export.vertices
            )));
        }
        let mut labels: Vec<String> = (0..export.vertices).map(|i| i.to_string()).collect();
        for (k, v) in export.labels {
            *labels.get_mut(k).ok_or(ComplexError::UnknownLabel(k))? = v;
        }
        SimplicialComplex::from_faces(export.vertices, export.facets, Some(labels))
    }

    pub fn from_json_bytes(bytes: &[u8]) -> Result<Self, ComplexError> {
        let export: ComplexExport =
            serde_json::from_slice(bytes).map_err(|e| ComplexError::Malformed(e.to_string()))?;
        Self::from_export(export)
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // exact: acc·(n-i) is divisible by i+1 after the multiplication
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

fn push_combinations(facet: &[u32], size: usize, out: &mut Vec<Simplex>) {
    let n = facet.len();
    if size == 0 || size > n {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(Simplex { vertices: idx.iter().map(|&i| facet[i]).collect() });
        let mut i = size;
        while i > 0 && idx[i - 1] == n - size + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All `k`-faces, deduplicated and lexicographically sorted. The position of
/// a simplex in this list is its row/column index in boundary matrices.
pub fn k_simplices(complex: &SimplicialComplex, k: usize) -> Vec<Simplex> {
    let mut all: Vec<Simplex> = complex
        .facets
        .par_iter()
        .flat_map_iter(|f| {
            let mut local = Vec::new();
            push_combinations(f, k + 1, &mut local);
            local
        })
        .collect();
    all.par_sort_unstable();
    all.dedup();
    all
}

/// `Σ (-1)^k · #k-simplices`.
pub fn euler_characteristic(complex: &SimplicialComplex) -> i64 {
    let Some(dim) = complex.dimension() else { return 0 };
    (0..=dim)
        .map(|k| {
            let n = complex.count_simplices(k) as i64;
            if k % 2 == 0 {
                n
            } else {
                -n
            }
        })
        .sum()
}

/// `AfCom(G)`: vertices are the elements of `G` and the facets are the left
/// cosets of the maximal abelian subgroups.
pub fn afcom_complex(group: &FiniteGroup) -> SimplicialComplex {
    let mut faces = Vec::new();
    for m in maximal_abelian_subgroups(group) {
        for c in left_cosets(group, &m) {
            faces.push(c.elements().iter().map(|g| g as u32).collect());
        }
    }
    SimplicialComplex::from_faces(group.order(), faces, Some(group.labels().to_vec()))
        .expect("cosets of maximal abelian subgroups cover the group")
}

/// The covering of `AfCom(G)` determined by `x_{g,h} ↦ [g,h]`.
///
/// Vertices are pairs `(g, c)` with `c ∈ [G,G]`, indexed `g·|[G,G]| + i` where
/// `i` is the position of `c` among the sorted elements of `[G,G]`. A facet
/// `F` with least vertex `g₀` lifts to `{(g, c·[g₀,g]) : g ∈ F}` for each `c`.
/// When that map is an isomorphism onto `[G,G]` this is the universal cover.
pub fn commutator_cover(group: &FiniteGroup) -> SimplicialComplex {
    let derived: Vec<usize> = derived_subgroup(group).elements().to_vec();
    let d = derived.len();
    let position = |x: usize| derived.binary_search(&x).expect("commutator lies in the derived subgroup");
    let base = afcom_complex(group);
    let mut faces = Vec::with_capacity(base.facets().len() * d);
    for facet in base.facets() {
        let g0 = facet[0] as usize;
        for &c in &derived {
            faces.push(
                facet
                    .iter()
                    .map(|&g| (g as usize * d + position(group.mul(c, group.commutator(g0, g as usize)))) as u32)
                    .collect(),
            );
        }
    }
    let labels = (0..group.order())
        .flat_map(|g| derived.iter().map(move |&c| (g, c)))
        .map(|(g, c)| format!("({}, {})", group.label(g), group.label(c)))
        .collect();
    SimplicialComplex::from_faces(group.order() * d, faces, Some(labels))
        .expect("lifted facets cover every sheet")
}

/// A finite poset of cosets ordered by inclusion.
#[derive(Debug, Clone)]
pub struct Poset {
    elements: Vec<Coset>,
    labels: Vec<String>,
    covers: Vec<Vec<usize>>,
}

/// Above this size the order axioms are not re-checked on construction.
pub const POSET_CHECK_LIMIT: usize = 2000;

impl Poset {
    /// Deduplicates `cosets`, sorts them by size and then element set, and
    /// computes the covering relation.
    pub fn from_cosets(group: &FiniteGroup, mut cosets: Vec<Coset>) -> Self {
        cosets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.elements().cmp(b.elements())));
        cosets.dedup();
        let n = cosets.len();
        let mut covers = vec![Vec::new(); n];
        for i in 0..n {
            let mut found: Vec<usize> = Vec::new();
            for j in i + 1..n {
                if cosets[j].len() == cosets[i].len() || !cosets[i].is_subset(&cosets[j]) {
                    continue;
                }
                if !found.iter().any(|&c| cosets[c].is_subset(&cosets[j])) {
                    found.push(j);
                }
            }
            covers[i] = found;
        }
        let labels = cosets.iter().map(|c| c.label(group)).collect();
        let poset = Poset { elements: cosets, labels, covers };
        if n <= POSET_CHECK_LIMIT {
            debug_assert!(poset.check_order_axioms());
        }
        poset
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Coset] {
        &self.elements
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.elements[a].is_subset(&self.elements[b])
    }

    /// Elements covering `a`.
    pub fn covers(&self, a: usize) -> &[usize] {
        &self.covers[a]
    }

    /// Covering pairs `(a, b)` with `a ⋖ b`.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        self.covers
            .iter()
            .enumerate()
            .flat_map(|(a, cs)| cs.iter().map(move |&b| (a, b)))
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        let mut has_lower = vec![false; self.len()];
        for cs in &self.covers {
            for &b in cs {
                has_lower[b] = true;
            }
        }
        (0..self.len()).filter(|&i| !has_lower[i]).collect()
    }

    /// Length of the longest chain (number of elements minus one).
    pub fn rank(&self) -> usize {
        let mut height = vec![0usize; self.len()];
        // indices are sorted by size, so covers always point forward
        for a in 0..self.len() {
            for &b in &self.covers[a] {
                height[b] = height[b].max(height[a] + 1);
            }
        }
        height.into_iter().max().unwrap_or(0)
    }

    /// Reflexivity, antisymmetry and transitivity of `leq`, checked directly.
    pub fn check_order_axioms(&self) -> bool {
        let n = self.len();
        for a in 0..n {
            if !self.leq(a, a) {
                return false;
            }
            for b in 0..n {
                if a != b && self.leq(a, b) && self.leq(b, a) {
                    return false;
                }
            }
            for &b in &self.covers[a] {
                for &c in &self.covers[b] {
                    if !self.leq(a, c) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn cosets_of_all(group: &FiniteGroup, subgroups: &[Subgroup]) -> Vec<Coset> {
    subgroups.iter().flat_map(|h| left_cosets(group, h)).collect()
}

/// `AbCo(G)`: cosets of all abelian subgroups.
pub fn abco_poset(group: &FiniteGroup, budget: usize) -> Result<Poset, ComplexError> {
    let subs = abelian_subgroups(group, budget)?;
    Ok(Poset::from_cosets(group, cosets_of_all(group, &subs)))
}

/// The maximal abelian subgroups closed under pairwise intersection; the
/// empty intersection is not included.
pub fn intersection_closure(group: &FiniteGroup) -> Vec<Subgroup> {
    let mut family: Vec<ElementSet> = maximal_abelian_subgroups(group)
        .into_iter()
        .map(|h| h.elements().clone())
        .collect();
    let mut seen: HashSet<ElementSet> = family.iter().cloned().collect();
    let mut start = 0;
    while start < family.len() {
        let end = family.len();
        for i in start..end {
            for j in 0..i {
                let meet = family[i].intersection(&family[j]);
                if seen.insert(meet.clone()) {
                    family.push(meet);
                }
            }
        }
        start = end;
    }
    let mut out: Vec<Subgroup> = family
        .into_iter()
        .map(|e| Subgroup::new(group, e).expect("intersections of subgroups are subgroups"))
        .collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements().cmp(b.elements())));
    out
}

/// `mAbCo(G)`: cosets of intersections of maximal abelian subgroups.
pub fn mabco_poset(group: &FiniteGroup) -> Poset {
    Poset::from_cosets(group, cosets_of_all(group, &intersection_closure(group)))
}

/// The nerve of a poset: vertices are poset elements and facets are maximal
/// chains. Fails if more than `max_chains` maximal chains exist.
pub fn order_complex(poset: &Poset, max_chains: usize) -> Result<SimplicialComplex, ComplexError> {
    let mut chains: Vec<Vec<u32>> = Vec::new();
    let mut stack: Vec<u32> = Vec::new();
    fn walk(
        poset: &Poset,
        at: usize,
        stack: &mut Vec<u32>,
        chains: &mut Vec<Vec<u32>>,
        max_chains: usize,
    ) -> Result<(), ComplexError> {
        stack.push(at as u32);
        let ups = poset.covers(at);
        if ups.is_empty() {
            if chains.len() >= max_chains {
                return Err(ComplexError::Budget { what: "maximal chain count", limit: max_chains });
            }
            chains.push(stack.clone());
        }
        for &b in ups {
            walk(poset, b, stack, chains, max_chains)?;
        }
        stack.pop();
        Ok(())
    }
    for m in poset.minimal_elements() {
        walk(poset, m, &mut stack, &mut chains, max_chains)?;
    }
    SimplicialComplex::from_faces(poset.len(), chains, Some(poset.labels().to_vec()))
}

/// Looks up cosets by element set; used when checking least-element claims.
pub fn coset_index(poset: &Poset) -> std::collections::HashMap<ElementSet, usize> {
    poset
        .elements()
        .iter()
        .enumerate()
        .map(|(i, c)| (c.elements().clone(), i))
        .collect()
}

/// `{C′ ∈ mAbCo(G) : C ⊆ C′}` has a least element for the given coset.
pub fn least_enclosing_element(poset: &Poset, set: &ElementSet) -> Option<usize> {
    let above: Vec<usize> = (0..poset.len())
        .filter(|&i| set.is_subset(poset.elements()[i].elements()))
        .collect();
    above
        .iter()
        .copied()
        .find(|&a| above.iter().all(|&b| poset.leq(a, b)))
}

/// Wraps a subgroup in an `Arc` coset at `g`; convenience for tests and
/// verification code.
pub fn coset_of(group: &FiniteGroup, subgroup: &Subgroup, g: usize) -> Coset {
    Coset::new(group, Arc::new(subgroup.clone()), g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named;

    #[test]
    fn maximality_is_enforced() {
        let k = SimplicialComplex::from_faces(3, vec![vec![0, 1], vec![1, 0, 2], vec![2]], None).unwrap();
        assert_eq!(k.facets(), &[vec![0, 1, 2]]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            SimplicialComplex::from_faces(2, vec![vec![0, 2]], None).unwrap_err(),
            ComplexError::VertexOutOfRange { vertex: 2, vertex_count: 2 }
        );
        assert_eq!(
            SimplicialComplex::from_faces(3, vec![vec![0, 1]], None).unwrap_err(),
            ComplexError::UncoveredVertex(2)
        );
    }

    #[test]
    fn abelian_afcom_is_a_full_simplex() {
        let g = named::cyclic(5).unwrap();
        let k = afcom_complex(&g);
        assert_eq!(k.facets(), &[vec![0, 1, 2, 3, 4]]);
        let z2 = afcom_complex(&named::cyclic(2).unwrap());
        assert_eq!(z2.facets(), &[vec![0, 1]]);
    }

    #[test]
    fn afcom_s3_census() {
        let k = afcom_complex(&named::symmetric(3).unwrap());
        assert_eq!(k.vertex_count(), 6);
        assert_eq!(k.facets().len(), 11);
        assert_eq!(k.facets().iter().filter(|f| f.len() == 3).count(), 2);
        assert_eq!(k_simplices(&k, 0).len(), 6);
        assert_eq!(k_simplices(&k, 1).len(), 15);
        assert_eq!(k_simplices(&k, 2).len(), 2);
        assert_eq!(euler_characteristic(&k), -7);
    }

    #[test]
    fn afcom_q8_has_six_tetrahedra() {
        let g = named::quaternion(8).unwrap();
        let k = afcom_complex(&g);
        assert_eq!(k.facets().len(), 6);
        assert!(k.facets().iter().all(|f| f.len() == 4));
        assert_eq!(k.dimension(), Some(3));
        // distinct facets meet in at most a coset of the center
        let z = g.center();
        for (i, a) in k.facets().iter().enumerate() {
            for b in &k.facets()[i + 1..] {
                let common: Vec<_> = a.iter().filter(|v| b.contains(v)).collect();
                assert!(common.is_empty() || common.len() == z.order());
            }
        }
    }

    #[test]
    fn abco_counts() {
        assert_eq!(abco_poset(&named::cyclic(1).unwrap(), 100).unwrap().len(), 1);
        assert_eq!(abco_poset(&named::cyclic(2).unwrap(), 100).unwrap().len(), 3);
        assert_eq!(abco_poset(&named::symmetric(3).unwrap(), 100).unwrap().len(), 17);
    }

    #[test]
    fn mabco_q8_is_a_graph() {
        let p = mabco_poset(&named::quaternion(8).unwrap());
        assert_eq!(p.len(), 10);
        assert_eq!(p.hasse_edges().len(), 12);
        assert_eq!(p.rank(), 1);
        let nerve = order_complex(&p, 1000).unwrap();
        assert_eq!(nerve.vertex_count(), 10);
        assert_eq!(nerve.dimension(), Some(1));
        assert_eq!(nerve.facets().len(), 12);
        assert_eq!(euler_characteristic(&nerve), -2);
    }

    #[test]
    fn mabco_of_abelian_group_is_a_point() {
        let p = mabco_poset(&named::cyclic(6).unwrap());
        assert_eq!(p.len(), 1);
        assert_eq!(p.elements()[0].len(), 6);
    }

    #[test]
    fn order_complex_edge_cases() {
        // An antichain: the four cosets of the trivial subgroup in Z/4 alone.
        let g = named::cyclic(4).unwrap();
        let t = Subgroup::trivial(&g);
        let p = Poset::from_cosets(&g, left_cosets(&g, &t));
        let k = order_complex(&p, 10).unwrap();
        assert_eq!(k.facets().len(), 4);
        assert_eq!(k.dimension(), Some(0));

        // A three-element chain {e} < {e, g²} < G.
        let subs = abelian_subgroups(&g, 10).unwrap();
        let chain: Vec<Coset> = subs.iter().map(|h| coset_of(&g, h, 0)).collect();
        let k = order_complex(&Poset::from_cosets(&g, chain), 10).unwrap();
        assert_eq!(k.facets(), &[vec![0, 1, 2]]);
    }

    #[test]
    fn chain_budget() {
        let p = mabco_poset(&named::quaternion(8).unwrap());
        assert!(matches!(order_complex(&p, 5), Err(ComplexError::Budget { .. })));
    }

    #[test]
    fn export_round_trip_and_rejections() {
        let k = afcom_complex(&named::symmetric(3).unwrap());
        let json = serde_json::to_vec(&k.to_export()).unwrap();
        assert_eq!(SimplicialComplex::from_json_bytes(&json).unwrap(), k);
        assert!(SimplicialComplex::from_json_bytes(br#"{"vertices":2,"facets":[[0,5]]}"#).is_err());
        assert!(matches!(
            SimplicialComplex::from_json_bytes(br#"{"vertices":1,"facets":[[0]],"labels":{"3":"x"}}"#),
            Err(ComplexError::UnknownLabel(3))
        ));
    }

    #[test]
    fn simplex_faces() {
        let s = Simplex::new(vec![1, 4, 7]).unwrap();
        assert_eq!(s.face(1).vertices(), &[1, 7]);
        assert!(Simplex::new(vec![2, 2]).is_none());
    }
}
