//! Integral simplicial homology through boundary matrices and Smith normal
//! form.
//!
//! Elimination runs on machine integers with checked arithmetic and restarts
//! with arbitrary precision on overflow, so results are always exact.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::complex::{k_simplices, Simplex, SimplicialComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    /// `count` is exact, or a facet-based upper bound when enumerating would
    /// already be far over the limit.
    #[error("{what} {count} exceeds the budget of {limit} (computed H_0..H_{})", partial.len() as isize - 1)]
    Budget { what: &'static str, count: usize, limit: usize, partial: Vec<HomologyGroup> },
    #[error("complex is disconnected")]
    Disconnected,
}

/// A sparse integer matrix; zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn from_dense<T: Into<BigInt> + Clone>(data: &[Vec<T>]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        let mut m = IntegerMatrix::zeros(rows, cols);
        for (i, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone().into());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.entries.get(&(r, c)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        assert!(r < self.rows && c < self.cols, "entry ({r}, {c}) outside {}x{}", self.rows, self.cols);
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    /// `self * other`, exact.
    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows);
        let mut by_row: Vec<Vec<(usize, &BigInt)>> = vec![Vec::new(); other.rows];
        for (r, c, v) in other.iter() {
            by_row[r].push((c, v));
        }
        let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (i, k, a) in self.iter() {
            for &(j, b) in &by_row[k] {
                *acc.entry((i, j)).or_default() += a * b;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        IntegerMatrix { rows: self.rows, cols: other.cols, entries: acc }
    }

    fn to_rows_i64(&self) -> Option<Vec<Vec<(u32, i64)>>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (r, c, v) in self.iter() {
            rows[r].push((c as u32, v.to_i64()?));
        }
        Some(rows)
    }

    fn to_rows_big(&self) -> Vec<Vec<(u32, BigInt)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (r, c, v) in self.iter() {
            rows[r].push((c as u32, v.clone()));
        }
        rows
    }
}

/// Invariant factors `d₁ | d₂ | … | d_r` of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithNormalFormResult {
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

impl SmithNormalFormResult {
    /// Factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

// ---------------------------------------------------------------------------
// elimination engine

trait Coeff: Clone + std::fmt::Debug {
    fn vanishes(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn magnitude_cmp(&self, other: &Self) -> Ordering;
    /// Quotient `q` with `|self - q·p| < |p|`.
    fn quotient(&self, p: &Self) -> Self;
    fn divisible_by(&self, p: &Self) -> bool;
    /// `self - q·b`, or `None` on overflow.
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    /// `-q·self`, or `None` on overflow.
    fn neg_mul(&self, q: &Self) -> Option<Self>;
    fn to_big_abs(&self) -> BigInt;
}

impl Coeff for i64 {
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn magnitude_cmp(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn quotient(&self, p: &Self) -> Self {
        self.checked_div(*p).unwrap_or(0)
    }
    fn divisible_by(&self, p: &Self) -> bool {
        self.checked_rem(*p) == Some(0)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn neg_mul(&self, q: &Self) -> Option<Self> {
        q.checked_mul(*self)?.checked_neg()
    }
    fn to_big_abs(&self) -> BigInt {
        BigInt::from(self.unsigned_abs())
    }
}

impl Coeff for BigInt {
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn magnitude_cmp(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn quotient(&self, p: &Self) -> Self {
        self / p
    }
    fn divisible_by(&self, p: &Self) -> bool {
        Zero::is_zero(&(self % p))
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn neg_mul(&self, q: &Self) -> Option<Self> {
        Some(-(q * self))
    }
    fn to_big_abs(&self) -> BigInt {
        self.abs()
    }
}

/// Residues modulo a prime `P < 2³²`; every nonzero value is a unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct ModP<const P: u64>(u64);

impl<const P: u64> ModP<P> {
    fn from_i64(v: i64) -> Self {
        ModP(v.rem_euclid(P as i64) as u64)
    }
    fn inverse(self) -> Self {
        let mut result = 1u64;
        let mut base = self.0;
        let mut e = P - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        ModP(result)
    }
}

impl<const P: u64> Coeff for ModP<P> {
    fn vanishes(&self) -> bool {
        self.0 == 0
    }
    fn is_unit(&self) -> bool {
        self.0 != 0
    }
    fn magnitude_cmp(&self, _other: &Self) -> Ordering {
        Ordering::Equal
    }
    fn quotient(&self, p: &Self) -> Self {
        ModP(self.0 * p.inverse().0 % P)
    }
    fn divisible_by(&self, _p: &Self) -> bool {
        true
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(ModP((self.0 + P - q.0 * b.0 % P) % P))
    }
    fn neg_mul(&self, q: &Self) -> Option<Self> {
        Some(ModP((P - q.0 * self.0 % P) % P))
    }
    fn to_big_abs(&self) -> BigInt {
        BigInt::one()
    }
}

pub(crate) const PRIME_A: u64 = 2_147_483_647;
pub(crate) const PRIME_B: u64 = 1_000_000_007;

struct Overflow;

struct Eliminator<T> {
    rows: Vec<Vec<(u32, T)>>,
    col_rows: Vec<BTreeSet<u32>>,
    /// Rows holding a unit, keyed by (row length, row).
    unit_rows: BTreeSet<(u32, u32)>,
    unit_key: Vec<Option<u32>>,
    diagonal: Vec<BigInt>,
}

impl<T: Coeff> Eliminator<T> {
    fn new(rows: Vec<Vec<(u32, T)>>, cols: usize) -> Self {
        let mut col_rows = vec![BTreeSet::new(); cols];
        let mut unit_rows = BTreeSet::new();
        let mut unit_key = vec![None; rows.len()];
        for (r, row) in rows.iter().enumerate() {
            for (c, _) in row {
                col_rows[*c as usize].insert(r as u32);
            }
            if row.iter().any(|(_, v)| v.is_unit()) {
                unit_rows.insert((row.len() as u32, r as u32));
                unit_key[r] = Some(row.len() as u32);
            }
        }
        Eliminator { rows, col_rows, unit_rows, unit_key, diagonal: Vec::new() }
    }

    fn entry(&self, r: u32, c: u32) -> Option<&T> {
        let row = &self.rows[r as usize];
        row.binary_search_by_key(&c, |e| e.0).ok().map(|k| &row[k].1)
    }

    fn refresh_unit(&mut self, r: u32) {
        if let Some(len) = self.unit_key[r as usize].take() {
            self.unit_rows.remove(&(len, r));
        }
        let row = &self.rows[r as usize];
        if row.iter().any(|(_, v)| v.is_unit()) {
            let len = row.len() as u32;
            self.unit_rows.insert((len, r));
            self.unit_key[r as usize] = Some(len);
        }
    }

    /// A unit in the shortest row holding one, in its sparsest column; with
    /// no units, the smallest magnitude entry, ties by lowest row then column.
    fn pick_pivot(&self) -> Option<(u32, u32)> {
        if let Some(&(_, r)) = self.unit_rows.iter().next() {
            let c = self.rows[r as usize]
                .iter()
                .filter(|(_, v)| v.is_unit())
                .min_by_key(|(c, _)| (self.col_rows[*c as usize].len(), *c))
                .map(|e| e.0)?;
            return Some((r, c));
        }
        let mut best: Option<(u32, u32, &T)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                if best.as_ref().is_none_or(|(_, _, b)| v.magnitude_cmp(b) == Ordering::Less) {
                    best = Some((r as u32, *c, v));
                }
            }
        }
        best.map(|(r, c, _)| (r, c))
    }

    /// `row[target] -= q * row[source]`.
    fn row_axpy(&mut self, target: u32, q: &T, source: u32) -> Result<(), Overflow> {
        let src = std::mem::take(&mut self.rows[source as usize]);
        let old = std::mem::take(&mut self.rows[target as usize]);
        let mut out = Vec::with_capacity(old.len() + src.len());
        let (mut i, mut j) = (0, 0);
        let mut result = Ok(());
        while i < old.len() || j < src.len() {
            let take_old = j >= src.len() || (i < old.len() && old[i].0 < src[j].0);
            let take_src = i >= old.len() || (j < src.len() && src[j].0 < old[i].0);
            if take_old {
                out.push(old[i].clone());
                i += 1;
            } else if take_src {
                let c = src[j].0;
                match src[j].1.neg_mul(q) {
                    Some(v) if !v.vanishes() => {
                        self.col_rows[c as usize].insert(target);
                        out.push((c, v));
                    }
                    Some(_) => {}
                    None => {
                        result = Err(Overflow);
                        break;
                    }
                }
                j += 1;
            } else {
                let c = old[i].0;
                match old[i].1.sub_mul(q, &src[j].1) {
                    Some(v) if !v.vanishes() => out.push((c, v)),
                    Some(_) => {
                        self.col_rows[c as usize].remove(&target);
                    }
                    None => {
                        result = Err(Overflow);
                        break;
                    }
                }
                i += 1;
                j += 1;
            }
        }
        self.rows[source as usize] = src;
        self.rows[target as usize] = out;
        self.refresh_unit(target);
        result
    }

    fn remove_row(&mut self, r: u32) {
        let row = std::mem::take(&mut self.rows[r as usize]);
        for (c, _) in row {
            self.col_rows[c as usize].remove(&r);
        }
        self.refresh_unit(r);
    }

    fn run(mut self) -> Result<Vec<BigInt>, Overflow> {
        while let Some((mut r, mut c)) = self.pick_pivot() {
            loop {
                let p = self.entry(r, c).expect("pivot present").clone();
                let others: Vec<u32> = self.col_rows[c as usize].iter().copied().filter(|&t| t != r).collect();
                for &t in &others {
                    let a = self.entry(t, c).expect("column index in sync").clone();
                    let q = a.quotient(&p);
                    if !q.vanishes() {
                        self.row_axpy(t, &q, r)?;
                    }
                }
                // Rows still meeting column c hold remainders smaller than |p|.
                let mut next: Option<(u32, T)> = None;
                for &t in self.col_rows[c as usize].iter().filter(|&&t| t != r) {
                    let v = self.entry(t, c).expect("column index in sync");
                    if next.as_ref().is_none_or(|(_, b)| v.magnitude_cmp(b) == Ordering::Less) {
                        next = Some((t, v.clone()));
                    }
                }
                if let Some((t, _)) = next {
                    r = t;
                    continue;
                }
                let stubborn = self.rows[r as usize]
                    .iter()
                    .find(|(c2, b)| *c2 != c && !b.divisible_by(&p))
                    .map(|(c2, b)| (*c2, b.clone()));
                match stubborn {
                    None => {
                        self.diagonal.push(p.to_big_abs());
                        self.remove_row(r);
                        break;
                    }
                    Some((c2, b)) => {
                        // Column c meets only row r, so this column operation
                        // touches row r alone.
                        let q = b.quotient(&p);
                        let rem = b.sub_mul(&q, &p).ok_or(Overflow)?;
                        let row = &mut self.rows[r as usize];
                        let k = row.binary_search_by_key(&c2, |e| e.0).expect("entry present");
                        row[k].1 = rem;
                        self.refresh_unit(r);
                        c = c2;
                    }
                }
            }
        }
        Ok(self.diagonal)
    }
}

/// Turns a diagonal into the invariant-factor chain.
fn normalize_diagonal(diagonal: Vec<BigInt>) -> Vec<BigInt> {
    let (ones, mut rest): (Vec<BigInt>, Vec<BigInt>) = diagonal.into_iter().partition(|d| d.is_one());
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let g = rest[i].gcd(&rest[j]);
            let l = &rest[i] / &g * &rest[j];
            rest[i] = g;
            rest[j] = l;
        }
    }
    let mut out = ones;
    out.extend(rest);
    out
}

fn snf_from_rows_i64(rows: Vec<Vec<(u32, i64)>>, cols: usize) -> SmithNormalFormResult {
    let diag = match Eliminator::new(rows.clone(), cols).run() {
        Ok(d) => d,
        Err(Overflow) => {
            let big = rows
                .into_iter()
                .map(|r| r.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect())
                .collect();
            run_big(big, cols)
        }
    };
    finish(diag)
}

fn run_big(rows: Vec<Vec<(u32, BigInt)>>, cols: usize) -> Vec<BigInt> {
    match Eliminator::new(rows, cols).run() {
        Ok(d) => d,
        Err(Overflow) => unreachable!("arbitrary precision cannot overflow"),
    }
}

fn finish(diag: Vec<BigInt>) -> SmithNormalFormResult {
    let invariant_factors = normalize_diagonal(diag);
    SmithNormalFormResult { rank: invariant_factors.len(), invariant_factors }
}

/// Invariant factors of `m` over the integers.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithNormalFormResult {
    match m.to_rows_i64() {
        Some(rows) => snf_from_rows_i64(rows, m.cols()),
        None => finish(run_big(m.to_rows_big(), m.cols())),
    }
}

fn rank_mod<const P: u64>(rows: &[Vec<(u32, i64)>], cols: usize) -> usize {
    let rows = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&(c, v)| (c, ModP::<P>::from_i64(v)))
                .filter(|(_, v)| v.0 != 0)
                .collect()
        })
        .collect();
    match Eliminator::new(rows, cols).run() {
        Ok(d) => d.len(),
        Err(Overflow) => unreachable!("modular arithmetic cannot overflow"),
    }
}

/// Rank over the rationals via two primes, falling back to exact elimination
/// when the modular ranks disagree.
fn rank_fast(rows: Vec<Vec<(u32, i64)>>, cols: usize) -> usize {
    let a = rank_mod::<PRIME_A>(&rows, cols);
    let b = rank_mod::<PRIME_B>(&rows, cols);
    if a == b {
        a
    } else {
        snf_from_rows_i64(rows, cols).rank
    }
}

// ---------------------------------------------------------------------------
// boundary matrices

fn boundary_rows(higher: &[Simplex], lower: &[Simplex]) -> Vec<Vec<(u32, i64)>> {
    let columns: Vec<Vec<(u32, i64)>> = higher
        .par_iter()
        .map(|s| {
            (0..s.vertices().len())
                .map(|i| {
                    let face = s.face(i);
                    let row = lower.binary_search(&face).expect("faces of a simplex belong to the complex");
                    (row as u32, if i % 2 == 0 { 1 } else { -1 })
                })
                .collect()
        })
        .collect();
    let mut rows = vec![Vec::new(); lower.len()];
    for (c, col) in columns.into_iter().enumerate() {
        for (r, v) in col {
            rows[r as usize].push((c as u32, v));
        }
    }
    rows
}

/// `∂ₖ`: columns are `k`-simplices, rows `(k-1)`-simplices, both in
/// [`k_simplices`] order. The `i`-th vertex deletion carries sign `(-1)^i`.
pub fn boundary_matrix(complex: &SimplicialComplex, k: usize) -> IntegerMatrix {
    assert!(k >= 1, "boundary matrices start at k = 1");
    let higher = k_simplices(complex, k);
    let lower = k_simplices(complex, k - 1);
    let rows = boundary_rows(&higher, &lower);
    let mut m = IntegerMatrix::zeros(lower.len(), higher.len());
    for (r, row) in rows.into_iter().enumerate() {
        for (c, v) in row {
            m.entries.insert((r, c as usize), BigInt::from(v));
        }
    }
    m
}

// ---------------------------------------------------------------------------
// homology

/// `Z^betti ⊕ ⊕ Z/dᵢ` with torsion in invariant-factor form.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(betti: usize) -> Self {
        HomologyGroup { betti, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

pub(crate) fn serialize_factors<S: Serializer>(factors: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(factors.len()))?;
    for d in factors {
        match d.to_u64() {
            Some(v) => seq.serialize_element(&v)?,
            None => seq.serialize_element(&d.to_string())?,
        }
    }
    seq.end()
}

/// One entry of the JSON homology report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyEntry {
    pub dim: usize,
    pub betti: usize,
    #[serde(serialize_with = "serialize_factors")]
    pub torsion: Vec<BigInt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomologyOptions {
    /// Compute torsion with exact Smith normal form. When false only Betti
    /// numbers are computed, through modular ranks.
    pub torsion: bool,
    /// Largest number of simplices allowed in any single dimension.
    pub max_simplices: usize,
}

impl Default for HomologyOptions {
    fn default() -> Self {
        HomologyOptions { torsion: true, max_simplices: 5_000_000 }
    }
}

/// Homology together with the quantities printed alongside it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub homology: Vec<HomologyEntry>,
    pub reduced: bool,
    pub torsion_exact: bool,
    /// Euler characteristic over the dimensions enumerated.
    pub chi: i64,
    pub simplex_counts: Vec<usize>,
}

impl HomologyReport {
    pub fn groups(&self) -> Vec<HomologyGroup> {
        self.homology
            .iter()
            .map(|e| HomologyGroup { betti: e.betti, torsion: e.torsion.clone() })
            .collect()
    }
}

/// `H₀ … H_max_dim` with exact torsion.
pub fn homology(
    complex: &SimplicialComplex,
    max_dim: usize,
    reduced: bool,
) -> Result<Vec<HomologyGroup>, HomologyError> {
    Ok(homology_with(complex, max_dim, reduced, &HomologyOptions::default())?.groups())
}

pub fn homology_with(
    complex: &SimplicialComplex,
    max_dim: usize,
    reduced: bool,
    opts: &HomologyOptions,
) -> Result<HomologyReport, HomologyError> {
    let mut groups: Vec<HomologyGroup> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    let budget = |k: usize, n: usize, groups: &Vec<HomologyGroup>| {
        if n > opts.max_simplices {
            Err(HomologyError::Budget {
                what: if k == 0 { "vertex count" } else { "simplex count" },
                count: n,
                limit: opts.max_simplices,
                partial: groups.clone(),
            })
        } else {
            Ok(())
        }
    };
    budget(0, complex.vertex_count(), &groups)?;
    let mut lower = k_simplices(complex, 0);
    counts.push(lower.len());
    // rank of ∂_k for the current k; ∂_0 = 0
    let mut rank_in = 0usize;
    for k in 0..=max_dim {
        // enumerate for an exact count only when that is affordable
        let bound = complex.simplex_bound(k + 1);
        if bound > 4 * opts.max_simplices as u128 {
            budget(k + 1, usize::try_from(bound).unwrap_or(usize::MAX), &groups)?;
        }
        let higher = k_simplices(complex, k + 1);
        budget(k + 1, higher.len(), &groups)?;
        let rows = boundary_rows(&higher, &lower);
        let (rank_out, torsion) = if higher.is_empty() {
            (0, Vec::new())
        } else if opts.torsion {
            let snf = snf_from_rows_i64(rows, higher.len());
            (snf.rank, snf.torsion())
        } else {
            (rank_fast(rows, higher.len()), Vec::new())
        };
        let mut betti = lower.len() - rank_in - rank_out;
        if k == 0 && reduced && !lower.is_empty() {
            betti -= 1;
        }
        groups.push(HomologyGroup { betti, torsion });
        if k < max_dim {
            counts.push(higher.len());
        }
        rank_in = rank_out;
        lower = higher;
    }
    let chi = counts
        .iter()
        .enumerate()
        .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum();
    let homology = groups
        .into_iter()
        .enumerate()
        .map(|(dim, g)| HomologyEntry { dim, betti: g.betti, torsion: g.torsion })
        .collect();
    Ok(HomologyReport { homology, reduced, torsion_exact: opts.torsion, chi, simplex_counts: counts })
}

/// `Some(r)` when `H₀ = Z`, `H₁ = Z^r` and higher homology vanishes. This is
/// a homology-level certificate only.
pub fn is_homology_wedge_of_circles(complex: &SimplicialComplex) -> Result<Option<usize>, HomologyError> {
    if !complex.is_connected() {
        return Err(HomologyError::Disconnected);
    }
    let dim = complex.dimension().unwrap_or(0).max(1);
    let h = homology(complex, dim, false)?;
    let ok = h[0] == HomologyGroup::free(1) && h[1].torsion.is_empty() && h[2..].iter().all(HomologyGroup::is_trivial);
    Ok(ok.then_some(h[1].betti))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::afcom_complex;
    use crate::group::named;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_examples() {
        let id = IntegerMatrix::from_dense(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(smith_normal_form(&id).invariant_factors, big(&[1, 1, 1]));
        let d = IntegerMatrix::from_dense(&[vec![6, 0], vec![0, 4]]);
        assert_eq!(smith_normal_form(&d).invariant_factors, big(&[2, 12]));
        let z = IntegerMatrix::zeros(3, 4);
        assert_eq!(smith_normal_form(&z), SmithNormalFormResult { invariant_factors: vec![], rank: 0 });
    }

    #[test]
    fn snf_needs_column_and_row_work() {
        let m = IntegerMatrix::from_dense(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        // classical example: diag(2, 6, 12)
        assert_eq!(smith_normal_form(&m).invariant_factors, big(&[2, 6, 12]));
    }

    #[test]
    fn snf_survives_overflow() {
        let huge = i64::MAX / 3;
        let m = IntegerMatrix::from_dense(&[vec![huge, huge - 1], vec![huge - 1, huge]]);
        let snf = smith_normal_form(&m);
        // det = huge² - (huge-1)² = 2·huge - 1, and the gcd of the entries is 1
        let det = BigInt::from(huge) * 2 - 1;
        assert_eq!(snf.invariant_factors, vec![BigInt::one(), det]);
    }

    #[test]
    fn single_edge_boundary() {
        let k = SimplicialComplex::from_faces(2, vec![vec![0, 1]], None).unwrap();
        let d = boundary_matrix(&k, 1);
        assert_eq!((d.rows(), d.cols()), (2, 1));
        assert_eq!(d.get(0, 0), BigInt::from(-1));
        assert_eq!(d.get(1, 0), BigInt::from(1));
    }

    #[test]
    fn s3_boundaries_compose_to_zero() {
        let k = afcom_complex(&named::symmetric(3).unwrap());
        let d1 = boundary_matrix(&k, 1);
        let d2 = boundary_matrix(&k, 2);
        assert_eq!((d1.rows(), d1.cols()), (6, 15));
        assert_eq!((d2.rows(), d2.cols()), (15, 2));
        assert_eq!(d1.mul(&d2).nnz(), 0);
    }

    #[test]
    fn s3_homology() {
        let k = afcom_complex(&named::symmetric(3).unwrap());
        let h = homology(&k, 2, false).unwrap();
        assert_eq!(h, vec![HomologyGroup::free(1), HomologyGroup::free(8), HomologyGroup::free(0)]);
        assert_eq!(is_homology_wedge_of_circles(&k).unwrap(), Some(8));
    }

    #[test]
    fn abelian_afcom_is_acyclic() {
        let k = afcom_complex(&named::cyclic(6).unwrap());
        let h = homology(&k, 5, true).unwrap();
        assert!(h.iter().all(HomologyGroup::is_trivial));
        assert_eq!(is_homology_wedge_of_circles(&k).unwrap(), Some(0));
    }

    #[test]
    fn projective_plane_has_two_torsion() {
        // minimal 6-vertex triangulation of RP²
        let faces = vec![
            vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 4], vec![0, 4, 5], vec![0, 5, 1],
            vec![1, 2, 4], vec![2, 3, 5], vec![3, 4, 1], vec![4, 5, 2], vec![5, 1, 3],
        ];
        let k = SimplicialComplex::from_faces(6, faces, None).unwrap();
        let h = homology(&k, 2, false).unwrap();
        assert_eq!(h[1], HomologyGroup { betti: 0, torsion: big(&[2]) });
        assert!(h[2].is_trivial());
        let fast = homology_with(&k, 2, false, &HomologyOptions { torsion: false, ..Default::default() }).unwrap();
        assert_eq!(fast.groups()[1], HomologyGroup::free(0));
        assert_eq!(is_homology_wedge_of_circles(&k).unwrap(), None);
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let k = SimplicialComplex::from_faces(2, vec![vec![0], vec![1]], None).unwrap();
        assert_eq!(is_homology_wedge_of_circles(&k).unwrap_err(), HomologyError::Disconnected);
        assert_eq!(homology(&k, 0, true).unwrap(), vec![HomologyGroup::free(1)]);
    }

    #[test]
    fn budget_reports_partial_results() {
        let k = afcom_complex(&named::cyclic(6).unwrap());
        let err = homology_with(&k, 3, false, &HomologyOptions { torsion: true, max_simplices: 16 }).unwrap_err();
        match err {
            HomologyError::Budget { partial, count, .. } => {
                assert_eq!(count, 20);
                assert_eq!(partial.len(), 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn report_serialization() {
        let k = afcom_complex(&named::symmetric(3).unwrap());
        let r = homology_with(&k, 1, false, &HomologyOptions::default()).unwrap();
        let json = serde_json::to_string(&r.homology).unwrap();
        assert_eq!(json, r#"[{"dim":0,"betti":1,"torsion":[]},{"dim":1,"betti":8,"torsion":[]}]"#);
        assert_eq!(r.simplex_counts, vec![6, 15]);
        assert_eq!(r.chi, -9);
    }
}
