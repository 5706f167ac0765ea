//! Fundamental-group presentations of simplicial complexes, Tietze
//! simplification, abelianization, the commutator homomorphism of `AfCom(G)`
//! and coset enumeration.
//!
//! Letters are signed and 1-based: generator `i` (0-based) is written `i+1`
//! and its inverse `-(i+1)`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::complex::{k_simplices, SimplicialComplex};
use crate::group::{derived_subgroup, generated_subgroup, ElementSet, FiniteGroup, Subgroup};
use crate::homology::{serialize_factors, smith_normal_form, HomologyGroup, IntegerMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Pi1Error {
    #[error("complex is disconnected")]
    Disconnected,
    #[error("base vertex {base} out of range for {vertex_count} vertices")]
    BadBase { base: usize, vertex_count: usize },
    #[error("complex has {vertices} vertices but the group has order {order}")]
    NotAfCom { vertices: usize, order: usize },
    #[error("relator {0} does not map to the identity")]
    RelatorViolation(usize),
    #[error("group is abelian")]
    AbelianInput,
    #[error("malformed presentation: {0}")]
    Malformed(String),
}

/// A word in the generators, as signed 1-based letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<i32>);

impl Word {
    pub fn new(letters: Vec<i32>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<i32> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Free reduction followed by cancellation between the two ends.
    pub fn cyclic_reduce(&self) -> Word {
        let w = self.free_reduce().0;
        let (mut a, mut b) = (0, w.len());
        while b - a >= 2 && w[a] == -w[b - 1] {
            a += 1;
            b -= 1;
        }
        Word(w[a..b].to_vec())
    }

    /// Least rotation of the word or its inverse; relators equal up to
    /// conjugation and inversion get the same form.
    pub fn canonical_relator(&self) -> Word {
        let w = self.cyclic_reduce();
        if w.is_empty() {
            return w;
        }
        let inv = w.inverse();
        let n = w.len();
        let mut best: Option<Vec<i32>> = None;
        for base in [&w.0, &inv.0] {
            for k in 0..n {
                let rot: Vec<i32> = base[k..].iter().chain(&base[..k]).copied().collect();
                if best.as_ref().is_none_or(|b| rot < *b) {
                    best = Some(rot);
                }
            }
        }
        Word(best.unwrap_or_default())
    }

    fn occurrences(&self, generator: usize) -> usize {
        self.0.iter().filter(|l| l.unsigned_abs() as usize == generator + 1).count()
    }
}

fn letter(generator: usize, positive: bool) -> i32 {
    let l = generator as i32 + 1;
    if positive {
        l
    } else {
        -l
    }
}

/// A finite presentation `⟨x₁ … xₙ | r₁ … r_m⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generator_count: usize,
    relators: Vec<Word>,
    labels: Vec<(String, String)>,
}

pub const MAX_GENERATORS: usize = 1 << 20;
pub const MAX_TOTAL_LETTERS: usize = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationExport {
    pub generators: usize,
    #[serde(default)]
    pub labels: Vec<(String, String)>,
    pub relators: Vec<Vec<i32>>,
}

impl Presentation {
    /// Checks every letter; `labels` may be empty.
    pub fn new(generator_count: usize, relators: Vec<Word>, labels: Vec<(String, String)>) -> Result<Self, Pi1Error> {
        if generator_count > MAX_GENERATORS {
            return Err(Pi1Error::Malformed(format!("{generator_count} generators exceeds {MAX_GENERATORS}")));
        }
        if !labels.is_empty() && labels.len() != generator_count {
            return Err(Pi1Error::Malformed(format!(
                "{} labels for {generator_count} generators",
                labels.len()
            )));
        }
        let total: usize = relators.iter().map(Word::len).sum();
        if total > MAX_TOTAL_LETTERS {
            return Err(Pi1Error::Malformed(format!("{total} letters exceeds {MAX_TOTAL_LETTERS}")));
        }
        for (i, r) in relators.iter().enumerate() {
            if let Some(&l) = r.0.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > generator_count) {
                return Err(Pi1Error::Malformed(format!("relator {i} has letter {l}")));
            }
        }
        let labels = if labels.is_empty() {
            (0..generator_count).map(|i| (format!("x{}", i + 1), String::new())).collect()
        } else {
            labels
        };
        Ok(Presentation { generator_count, relators, labels })
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn labels(&self) -> &[(String, String)] {
        &self.labels
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    pub fn to_export(&self) -> PresentationExport {
        PresentationExport {
            generators: self.generator_count,
            labels: self.labels.clone(),
            relators: self.relators.iter().map(|r| r.0.clone()).collect(),
        }
    }

    pub fn from_export(export: PresentationExport) -> Result<Self, Pi1Error> {
        Presentation::new(export.generators, export.relators.into_iter().map(Word).collect(), export.labels)
    }

    pub fn from_json_bytes(bytes: &[u8]) -> Result<Self, Pi1Error> {
        let export: PresentationExport =
            serde_json::from_slice(bytes).map_err(|e| Pi1Error::Malformed(e.to_string()))?;
        Presentation::from_export(export)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TreeStrategy {
    /// Breadth-first; for a base adjacent to every vertex this is the star.
    #[default]
    Bfs,
    Dfs,
}

fn spanning_tree(
    vertex_count: usize,
    edges: &[(u32, u32)],
    base: usize,
    strategy: TreeStrategy,
) -> Result<BTreeSet<(u32, u32)>, Pi1Error> {
    let mut adjacency = vec![Vec::new(); vertex_count];
    for &(u, v) in edges {
        adjacency[u as usize].push(v);
        adjacency[v as usize].push(u);
    }
    let mut seen = vec![false; vertex_count];
    let mut tree = BTreeSet::new();
    seen[base] = true;
    match strategy {
        TreeStrategy::Bfs => {
            let mut queue = VecDeque::from([base as u32]);
            while let Some(u) = queue.pop_front() {
                for &v in &adjacency[u as usize] {
                    if !seen[v as usize] {
                        seen[v as usize] = true;
                        tree.insert((u.min(v), u.max(v)));
                        queue.push_back(v);
                    }
                }
            }
        }
        TreeStrategy::Dfs => {
            let mut stack = vec![(base as u32, 0usize)];
            while let Some((u, next)) = stack.last_mut() {
                let u = *u;
                if let Some(&v) = adjacency[u as usize].get(*next) {
                    *next += 1;
                    if !seen[v as usize] {
                        seen[v as usize] = true;
                        tree.insert((u.min(v), u.max(v)));
                        stack.push((v, 0));
                    }
                } else {
                    stack.pop();
                }
            }
        }
    }
    if seen.iter().all(|&s| s) {
        Ok(tree)
    } else {
        Err(Pi1Error::Disconnected)
    }
}

/// `π₁(|K|, base)`: one generator `x_{u,v}` (`u < v`) per edge outside a
/// spanning tree and one relator `x_{u,v} x_{v,w} x_{u,w}⁻¹` per triangle
/// `u < v < w`, tree letters deleted. Empty relators are dropped.
pub fn pi1_presentation(complex: &SimplicialComplex, base: usize) -> Result<Presentation, Pi1Error> {
    pi1_presentation_with(complex, base, TreeStrategy::Bfs)
}

pub fn pi1_presentation_with(
    complex: &SimplicialComplex,
    base: usize,
    strategy: TreeStrategy,
) -> Result<Presentation, Pi1Error> {
    let n = complex.vertex_count();
    if base >= n {
        return Err(Pi1Error::BadBase { base, vertex_count: n });
    }
    let edges: Vec<(u32, u32)> = k_simplices(complex, 1)
        .iter()
        .map(|s| (s.vertices()[0], s.vertices()[1]))
        .collect();
    let tree = spanning_tree(n, &edges, base, strategy)?;
    let mut index: HashMap<(u32, u32), usize> = HashMap::new();
    let mut labels = Vec::new();
    for &e in &edges {
        if !tree.contains(&e) {
            index.insert(e, labels.len());
            labels.push((complex.labels()[e.0 as usize].clone(), complex.labels()[e.1 as usize].clone()));
        }
    }
    let mut relators = Vec::new();
    for t in k_simplices(complex, 2) {
        let [u, v, w] = [t.vertices()[0], t.vertices()[1], t.vertices()[2]];
        let word: Vec<i32> = [((u, v), true), ((v, w), true), ((u, w), false)]
            .into_iter()
            .filter_map(|(e, pos)| index.get(&e).map(|&g| letter(g, pos)))
            .collect();
        if !word.is_empty() {
            relators.push(Word(word));
        }
    }
    Presentation::new(labels.len(), relators, labels)
}

// ---------------------------------------------------------------------------
// abelianization

/// `Z^rank ⊕ ⊕ Z/dᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct AbelianInvariants {
    pub rank: usize,
    #[serde(serialize_with = "serialize_factors")]
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn matches(&self, h: &HomologyGroup) -> bool {
        self.rank == h.betti && self.torsion == h.torsion
    }
}

pub fn abelian_invariants(p: &Presentation) -> AbelianInvariants {
    let mut m = IntegerMatrix::zeros(p.relators.len(), p.generator_count);
    for (i, r) in p.relators.iter().enumerate() {
        let mut sums: HashMap<usize, i64> = HashMap::new();
        for &l in r.letters() {
            *sums.entry(l.unsigned_abs() as usize - 1).or_default() += l.signum() as i64;
        }
        for (g, s) in sums {
            m.set(i, g, BigInt::from(s));
        }
    }
    let snf = smith_normal_form(&m);
    AbelianInvariants { rank: p.generator_count - snf.rank, torsion: snf.torsion() }
}

// ---------------------------------------------------------------------------
// Tietze transformations

/// Cyclically reduces, canonicalizes, drops empty and repeated relators.
fn normalize(relators: &[Word]) -> Vec<Word> {
    let mut out: Vec<Word> = relators
        .iter()
        .map(Word::canonical_relator)
        .filter(|w| !w.is_empty())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out.dedup();
    out
}

/// Replaces every letter by a word; `images[g]` is the image of generator `g`.
fn substitute(relators: &[Word], images: &[Word]) -> Vec<Word> {
    relators
        .iter()
        .map(|r| {
            let mut out = Vec::new();
            for &l in r.letters() {
                let img = &images[l.unsigned_abs() as usize - 1];
                if l > 0 {
                    out.extend_from_slice(img.letters());
                } else {
                    out.extend(img.letters().iter().rev().map(|x| -x));
                }
            }
            Word(out)
        })
        .collect()
}

/// Drops generators whose image is another generator or empty and renumbers
/// the survivors. `images` uses old numbering; survivors map to themselves.
fn eliminate(p: &Presentation, images: Vec<Word>, survivors: &[usize]) -> Presentation {
    let mut renumber = vec![0i32; p.generator_count];
    for (new, &old) in survivors.iter().enumerate() {
        renumber[old] = new as i32 + 1;
    }
    let relators = substitute(&p.relators, &images)
        .into_iter()
        .map(|w| Word(w.0.iter().map(|&l| renumber[l.unsigned_abs() as usize - 1] * l.signum()).collect()))
        .collect::<Vec<_>>();
    Presentation {
        generator_count: survivors.len(),
        relators: normalize(&relators),
        labels: survivors.iter().map(|&g| p.labels[g].clone()).collect(),
    }
}

/// Generators killed or identified by relators of length one or two.
fn short_relator_pass(p: &Presentation) -> Option<Presentation> {
    let n = p.generator_count;
    // parent[g] = (root, sign) with g = root^sign; node n is the identity
    let mut parent: Vec<(usize, i32)> = (0..=n).map(|g| (g, 1)).collect();
    fn find(parent: &mut [(usize, i32)], g: usize) -> (usize, i32) {
        let mut path = Vec::new();
        let mut node = g;
        while parent[node].0 != node {
            path.push(node);
            node = parent[node].0;
        }
        let root = node;
        // compress from the node nearest the root outwards
        let mut sign_to_root = 1;
        for &k in path.iter().rev() {
            sign_to_root *= parent[k].1;
            parent[k] = (root, sign_to_root);
        }
        (root, if g == root { 1 } else { parent[g].1 })
    }
    let mut changed = false;
    for r in &p.relators {
        let l = r.letters();
        let (x, y, t) = match l.len() {
            1 => (l[0].unsigned_abs() as usize - 1, n, 1),
            2 if l[0].abs() != l[1].abs() => {
                // x^e y^f = 1 gives x = y^(-e f)
                (l[0].unsigned_abs() as usize - 1, l[1].unsigned_abs() as usize - 1, -l[0].signum() * l[1].signum())
            }
            _ => continue,
        };
        let (rx, sx) = find(&mut parent, x);
        let (ry, sy) = find(&mut parent, y);
        if rx == ry {
            continue;
        }
        // rx^sx = ry^(t sy); keep the smaller index (or the identity) as root
        changed = true;
        if ry == n || (rx != n && ry < rx) {
            parent[rx] = (ry, t * sy * sx);
        } else {
            parent[ry] = (rx, t * sy * sx);
        }
    }
    if !changed {
        return None;
    }
    let mut images = Vec::with_capacity(n);
    let mut survivors = Vec::new();
    for g in 0..n {
        let (root, s) = find(&mut parent, g);
        if root == g {
            survivors.push(g);
        }
        images.push(if root == n { Word::default() } else { Word(vec![letter(root, s > 0)]) });
    }
    Some(eliminate(p, images, &survivors))
}

/// Eliminates one generator occurring exactly once in some relator when the
/// total relator length does not grow.
fn single_occurrence_pass(p: &Presentation) -> Option<Presentation> {
    let n = p.generator_count;
    let mut total_occ = vec![0usize; n];
    for r in &p.relators {
        for &l in r.letters() {
            total_occ[l.unsigned_abs() as usize - 1] += 1;
        }
    }
    let mut best: Option<(i64, usize, usize, usize)> = None; // (delta, len, relator, generator)
    for (ri, r) in p.relators.iter().enumerate() {
        let mut seen = BTreeSet::new();
        for &l in r.letters() {
            let g = l.unsigned_abs() as usize - 1;
            if !seen.insert(g) || r.occurrences(g) != 1 {
                continue;
            }
            let others = (total_occ[g] - 1) as i64;
            let delta = others * (r.len() as i64 - 2) - r.len() as i64;
            let key = (delta, r.len(), ri, g);
            if delta <= 0 && best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
    }
    let (_, _, ri, g) = best?;
    let r = &p.relators[ri];
    let pos = r.letters().iter().position(|l| l.unsigned_abs() as usize == g + 1)?;
    let rotated: Vec<i32> = r.letters()[pos..].iter().chain(&r.letters()[..pos]).copied().collect();
    // rotated = x^e w, so x = w⁻¹ when e = 1 and x = w when e = -1
    let w = Word(rotated[1..].to_vec());
    let image = if rotated[0] > 0 { w.inverse() } else { w };
    let mut images: Vec<Word> = (0..n).map(|h| Word(vec![letter(h, true)])).collect();
    images[g] = image;
    let survivors: Vec<usize> = (0..n).filter(|&h| h != g).collect();
    let mut reduced = p.clone();
    reduced.relators.remove(ri);
    Some(eliminate(&reduced, images, &survivors))
}

/// Shortens relators using a cyclic subword that is more than half of
/// another relator. `work` bounds the letter comparisons spent.
fn substring_pass(p: &Presentation, work: &mut u64) -> Option<Presentation> {
    let rels = &p.relators;
    for (ri, r) in rels.iter().enumerate() {
        let m = r.len();
        if m < 2 {
            continue;
        }
        let k = m / 2 + 1;
        for base in [r.clone(), r.inverse()] {
            for rot in 0..m {
                let c: Vec<i32> = base.0[rot..].iter().chain(&base.0[..rot]).copied().collect();
                let u = &c[..k];
                for (si, s) in rels.iter().enumerate() {
                    if si == ri || s.len() < k {
                        continue;
                    }
                    *work = work.saturating_sub(s.len() as u64 * k as u64);
                    if *work == 0 {
                        return None;
                    }
                    let sl = s.len();
                    let hit = (0..sl).find(|&start| (0..k).all(|j| s.0[(start + j) % sl] == u[j]));
                    if let Some(start) = hit {
                        // u = v⁻¹ where c = u v
                        let v_inv = Word(c[k..].to_vec()).inverse();
                        let mut new = v_inv.0;
                        new.extend((k..sl).map(|j| s.0[(start + j) % sl]));
                        let mut relators = rels.clone();
                        relators[si] = Word(new);
                        return Some(Presentation {
                            generator_count: p.generator_count,
                            relators: normalize(&relators),
                            labels: p.labels.clone(),
                        });
                    }
                }
            }
        }
    }
    None
}

pub const DEFAULT_SUBSTRING_WORK: u64 = 50_000_000;

/// One deterministic round. Returns `None` at a fixed point.
pub fn tietze_round(p: &Presentation) -> Option<Presentation> {
    let normalized = Presentation {
        generator_count: p.generator_count,
        relators: normalize(&p.relators),
        labels: p.labels.clone(),
    };
    let changed_by_normalizing = normalized.relators != p.relators;
    if let Some(q) = short_relator_pass(&normalized) {
        return Some(q);
    }
    if let Some(q) = single_occurrence_pass(&normalized) {
        return Some(q);
    }
    let mut work = DEFAULT_SUBSTRING_WORK;
    if let Some(q) = substring_pass(&normalized, &mut work) {
        return Some(q);
    }
    changed_by_normalizing.then_some(normalized)
}

/// Runs up to `budget` rounds, calling `observe` after each.
pub fn tietze_simplify_observed(
    p: &Presentation,
    budget: usize,
    mut observe: impl FnMut(&Presentation),
) -> Presentation {
    let mut current = p.clone();
    for _ in 0..budget {
        match tietze_round(&current) {
            Some(next) => {
                observe(&next);
                current = next;
            }
            None => break,
        }
    }
    current
}

/// Simplifies `p` for at most `budget` rounds. Neither the generator count
/// nor the total relator length ever increases.
pub fn tietze_simplify(p: &Presentation, budget: usize) -> Presentation {
    tietze_simplify_observed(p, budget, |_| {})
}

pub const DEFAULT_TIETZE_ROUNDS: usize = 100_000;

// ---------------------------------------------------------------------------
// coset enumeration

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosetEnumeration {
    Order(u64),
    Unknown { cosets_used: usize },
}

impl Serialize for CosetEnumeration {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match self {
            CosetEnumeration::Order(n) => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("order", n)?;
                m.end()
            }
            CosetEnumeration::Unknown { cosets_used } => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("order", "unknown")?;
                m.serialize_entry("cosets_used", cosets_used)?;
                m.end()
            }
        }
    }
}

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;
const NONE: u32 = u32::MAX;

struct CosetTable {
    width: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    queue: Vec<u32>,
    max_cosets: usize,
    max_entries: usize,
}

struct Exhausted;

impl CosetTable {
    fn get(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.width + col]
    }

    fn put(&mut self, c: u32, col: usize, d: u32) {
        self.table[c as usize * self.width + col] = d;
    }

    fn defined(&self) -> usize {
        self.parent.len()
    }

    fn define(&mut self, c: u32, col: usize) -> Result<(), Exhausted> {
        if self.defined() >= self.max_cosets || (self.defined() + 1) * self.width > self.max_entries {
            return Err(Exhausted);
        }
        let d = self.parent.len() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(NONE, self.width));
        self.put(c, col, d);
        self.put(d, col ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut k = c;
        while self.parent[k as usize] != root {
            let next = self.parent[k as usize];
            self.parent[k as usize] = root;
            k = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi as usize] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let gamma = self.queue[i];
            i += 1;
            for col in 0..self.width {
                let delta = self.get(gamma, col);
                if delta == NONE {
                    continue;
                }
                self.put(delta, col ^ 1, NONE);
                let mu = self.rep(gamma);
                let nu = self.rep(delta);
                let mu_x = self.get(mu, col);
                if mu_x != NONE {
                    self.merge(nu, mu_x);
                } else {
                    let nu_inv = self.get(nu, col ^ 1);
                    if nu_inv != NONE {
                        self.merge(mu, nu_inv);
                    } else {
                        self.put(mu, col, nu);
                        self.put(nu, col ^ 1, mu);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, alpha: u32, word: &[usize]) -> Result<(), Exhausted> {
        let (mut f, mut b) = (alpha, alpha);
        let (mut i, mut j) = (0usize, word.len());
        loop {
            while i < j && self.get(f, word[i]) != NONE {
                f = self.get(f, word[i]);
                i += 1;
            }
            if i >= j {
                if f != alpha {
                    self.coincidence(f, alpha);
                }
                return Ok(());
            }
            while j > i && self.get(b, word[j - 1] ^ 1) != NONE {
                b = self.get(b, word[j - 1] ^ 1);
                j -= 1;
            }
            if j <= i {
                self.coincidence(f, b);
                return Ok(());
            } else if j == i + 1 {
                self.put(f, word[i], b);
                self.put(b, word[i] ^ 1, f);
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CosetOptions {
    pub max_cosets: usize,
    /// Cap on coset-table cells (four bytes each).
    pub max_table_entries: usize,
}

impl Default for CosetOptions {
    fn default() -> Self {
        CosetOptions { max_cosets: DEFAULT_MAX_COSETS, max_table_entries: 1 << 28 }
    }
}

/// Order of the presented group by HLT enumeration over the trivial
/// subgroup, or `Unknown` if the limits are reached first.
pub fn todd_coxeter(p: &Presentation, max_cosets: usize) -> CosetEnumeration {
    todd_coxeter_with(p, &CosetOptions { max_cosets, ..Default::default() })
}

pub fn todd_coxeter_with(p: &Presentation, opts: &CosetOptions) -> CosetEnumeration {
    let width = 2 * p.generator_count;
    if width == 0 {
        return CosetEnumeration::Order(1);
    }
    let words: Vec<Vec<usize>> = normalize(&p.relators)
        .iter()
        .map(|r| {
            r.letters()
                .iter()
                .map(|&l| 2 * (l.unsigned_abs() as usize - 1) + usize::from(l < 0))
                .collect()
        })
        .collect();
    let mut t = CosetTable {
        width,
        table: vec![NONE; width],
        parent: vec![0],
        queue: Vec::new(),
        max_cosets: opts.max_cosets.max(1),
        max_entries: opts.max_table_entries.max(width),
    };
    let mut alpha = 0u32;
    while (alpha as usize) < t.defined() {
        if t.parent[alpha as usize] == alpha {
            for w in &words {
                if t.scan_and_fill(alpha, w).is_err() {
                    return CosetEnumeration::Unknown { cosets_used: t.defined() };
                }
                if t.parent[alpha as usize] != alpha {
                    break;
                }
            }
            for col in 0..width {
                if t.parent[alpha as usize] != alpha {
                    break;
                }
                if t.get(alpha, col) == NONE && t.define(alpha, col).is_err() {
                    return CosetEnumeration::Unknown { cosets_used: t.defined() };
                }
            }
        }
        alpha += 1;
    }
    let live = (0..t.defined()).filter(|&c| t.parent[c] == c as u32).count();
    CosetEnumeration::Order(live as u64)
}

// ---------------------------------------------------------------------------
// the commutator homomorphism

/// The map `x_{g,h} ↦ [g,h]` on `π₁(AfCom(G), e)` with the star tree at the
/// identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutatorMorphism {
    pub generator_images: Vec<usize>,
    pub image: Subgroup,
    pub derived: Subgroup,
    pub triangles_checked: usize,
}

impl CommutatorMorphism {
    pub fn surjective_onto_derived(&self) -> bool {
        self.image == self.derived
    }
}

pub fn commutator_morphism(group: &FiniteGroup, complex: &SimplicialComplex) -> Result<CommutatorMorphism, Pi1Error> {
    if complex.vertex_count() != group.order() {
        return Err(Pi1Error::NotAfCom { vertices: complex.vertex_count(), order: group.order() });
    }
    let triangles = k_simplices(complex, 2);
    for (i, t) in triangles.iter().enumerate() {
        let [g, h, k] = [t.vertices()[0] as usize, t.vertices()[1] as usize, t.vertices()[2] as usize];
        if group.mul(group.commutator(g, h), group.commutator(h, k)) != group.commutator(g, k) {
            return Err(Pi1Error::RelatorViolation(i));
        }
    }
    let all_edges: Vec<(usize, usize)> = k_simplices(complex, 1)
        .iter()
        .map(|s| (s.vertices()[0] as usize, s.vertices()[1] as usize))
        .collect();
    let star = all_edges.iter().filter(|&&(u, _)| u == 0).count();
    if star + 1 != group.order() {
        return Err(Pi1Error::NotAfCom { vertices: complex.vertex_count(), order: group.order() });
    }
    // with a complete 1-skeleton the BFS tree at 0 is the star, so the
    // generators are the edges avoiding 0, in order
    let edges: Vec<(usize, usize)> = all_edges.into_iter().filter(|&(u, _)| u != 0).collect();
    let generator_images: Vec<usize> = edges.iter().map(|&(g, h)| group.commutator(g, h)).collect();
    let image = generated_subgroup(group, &ElementSet::from_indices(group.order(), generator_images.iter().copied()));
    Ok(CommutatorMorphism {
        generator_images,
        image,
        derived: derived_subgroup(group),
        triangles_checked: triangles.len(),
    })
}

/// Whether the abelianized commutator map is nonzero, i.e. `[G,G]` is not
/// perfect.
pub fn feit_thompson_witness(group: &FiniteGroup) -> Result<bool, Pi1Error> {
    if group.is_abelian() {
        return Err(Pi1Error::AbelianInput);
    }
    let d = derived_subgroup(group);
    let dd = crate::group::derived_subgroup_of(group, &d);
    Ok(dd.order() < d.order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::afcom_complex;
    use crate::group::named;
    use crate::homology::homology;

    fn pres(n: usize, rels: &[&[i32]]) -> Presentation {
        Presentation::new(n, rels.iter().map(|r| Word(r.to_vec())).collect(), vec![]).unwrap()
    }

    #[test]
    fn word_reduction() {
        assert_eq!(Word(vec![1, 2, -2, -1, 3]).free_reduce(), Word(vec![3]));
        assert_eq!(Word(vec![-1, 2, 3, 1]).cyclic_reduce(), Word(vec![2, 3]));
        assert_eq!(Word(vec![2, 1]).canonical_relator(), Word(vec![-2, -1]).canonical_relator());
    }

    #[test]
    fn triangle_and_edge_are_trivial() {
        let t = SimplicialComplex::from_faces(3, vec![vec![0, 1, 2]], None).unwrap();
        let p = pi1_presentation(&t, 0).unwrap();
        assert_eq!(tietze_simplify(&p, 100).generator_count(), 0);
        let e = afcom_complex(&named::cyclic(2).unwrap());
        assert_eq!(pi1_presentation(&e, 0).unwrap().generator_count(), 0);
    }

    #[test]
    fn s3_is_free_of_rank_eight() {
        let k = afcom_complex(&named::symmetric(3).unwrap());
        let p = pi1_presentation(&k, 0).unwrap();
        let s = tietze_simplify(&p, 1000);
        assert_eq!((s.generator_count(), s.relators().len()), (8, 0));
        assert_eq!(abelian_invariants(&p), AbelianInvariants { rank: 8, torsion: vec![] });
    }

    #[test]
    fn tietze_examples() {
        let s = tietze_simplify(&pres(2, &[&[2]]), 10);
        assert_eq!((s.generator_count(), s.relators().len()), (1, 0));
        let s = tietze_simplify(&pres(1, &[&[1, 1], &[1, 1, 1]]), 10);
        assert_eq!(s.generator_count(), 0);
        // x = y⁻¹ identification keeps the relation on the survivor
        let s = tietze_simplify(&pres(2, &[&[1, 2], &[1, 1, 1]]), 10);
        assert_eq!(s.generator_count(), 1);
        assert_eq!(abelian_invariants(&s).torsion, vec![BigInt::from(3)]);
    }

    #[test]
    fn coset_enumeration_examples() {
        assert_eq!(todd_coxeter(&pres(1, &[&[1, 1]]), 100), CosetEnumeration::Order(2));
        let klein = pres(2, &[&[1, 1], &[2, 2], &[1, 2, 1, 2]]);
        assert_eq!(todd_coxeter(&klein, 100), CosetEnumeration::Order(4));
        let s3 = pres(2, &[&[1, 1], &[2, 2, 2], &[1, 2, 1, 2]]);
        assert_eq!(todd_coxeter(&s3, 100), CosetEnumeration::Order(6));
        // ⟨a,b | a³, b³, (ab)³⟩ is infinite
        let inf = pres(2, &[&[1, 1, 1], &[2, 2, 2], &[1, 2, 1, 2, 1, 2]]);
        assert!(matches!(todd_coxeter(&inf, 2000), CosetEnumeration::Unknown { .. }));
        assert_eq!(todd_coxeter(&pres(0, &[]), 1), CosetEnumeration::Order(1));
        // A5 = ⟨a,b | a², b³, (ab)⁵⟩
        let a5 = pres(2, &[&[1, 1], &[2, 2, 2], &[1, 2, 1, 2, 1, 2, 1, 2, 1, 2]]);
        assert_eq!(todd_coxeter(&a5, 10_000), CosetEnumeration::Order(60));
    }

    #[test]
    fn coset_enumeration_json() {
        assert_eq!(serde_json::to_string(&CosetEnumeration::Order(2)).unwrap(), r#"{"order":2}"#);
        assert_eq!(
            serde_json::to_string(&CosetEnumeration::Unknown { cosets_used: 7 }).unwrap(),
            r#"{"order":"unknown","cosets_used":7}"#
        );
    }

    #[test]
    fn presentation_round_trip_and_validation() {
        let k = afcom_complex(&named::quaternion(8).unwrap());
        let p = pi1_presentation(&k, 0).unwrap();
        let json = serde_json::to_vec(&p.to_export()).unwrap();
        assert_eq!(Presentation::from_json_bytes(&json).unwrap(), p);
        assert!(Presentation::from_json_bytes(br#"{"generators":1,"relators":[[2]]}"#).is_err());
        assert!(Presentation::from_json_bytes(br#"{"generators":1,"relators":[[0]]}"#).is_err());
    }

    #[test]
    fn disconnected_complex() {
        let k = SimplicialComplex::from_faces(2, vec![vec![0], vec![1]], None).unwrap();
        assert_eq!(pi1_presentation(&k, 0).unwrap_err(), Pi1Error::Disconnected);
        assert!(matches!(pi1_presentation(&k, 5), Err(Pi1Error::BadBase { .. })));
    }

    #[test]
    fn hurewicz_q8() {
        let k = afcom_complex(&named::quaternion(8).unwrap());
        let h = homology(&k, 1, false).unwrap();
        let p = pi1_presentation(&k, 0).unwrap();
        assert!(abelian_invariants(&p).matches(&h[1]));
        let dfs = pi1_presentation_with(&k, 3, TreeStrategy::Dfs).unwrap();
        assert_eq!(abelian_invariants(&dfs), abelian_invariants(&p));
    }

    #[test]
    fn commutator_morphism_examples() {
        for g in [named::cyclic(4).unwrap(), named::symmetric(3).unwrap(), named::quaternion(8).unwrap()] {
            let m = commutator_morphism(&g, &afcom_complex(&g)).unwrap();
            assert!(m.surjective_onto_derived(), "{}", g.name());
        }
        let s3 = named::symmetric(3).unwrap();
        assert_eq!(commutator_morphism(&s3, &afcom_complex(&s3)).unwrap().image.order(), 3);
    }

    #[test]
    fn feit_thompson_examples() {
        assert!(feit_thompson_witness(&named::symmetric(3).unwrap()).unwrap());
        assert!(!feit_thompson_witness(&named::alternating(5).unwrap()).unwrap());
        assert_eq!(feit_thompson_witness(&named::cyclic(3).unwrap()), Err(Pi1Error::AbelianInput));
    }
}
