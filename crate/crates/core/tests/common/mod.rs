//! Reference computations that share no code with the library beyond the
//! multiplication table of the input group.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use ecom_core::group::FiniteGroup;

pub const P_LARGE: u64 = 1_000_000_007;

/// Multiplication table with inverses, found by search.
pub struct Table {
    pub n: usize,
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub identity: usize,
}

impl Table {
    pub fn of(g: &FiniteGroup) -> Self {
        let mul = g.table_rows();
        let n = mul.len();
        let identity = (0..n).find(|&e| (0..n).all(|x| mul[e][x] == x && mul[x][e] == x)).expect("identity");
        let inv = (0..n).map(|x| (0..n).find(|&y| mul[x][y] == identity).expect("inverse")).collect();
        Table { n, mul, inv, identity }
    }

    pub fn m(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul[a][b] == self.mul[b][a]
    }

    /// `x⁻¹ y⁻¹ x y`.
    pub fn comm(&self, x: usize, y: usize) -> usize {
        let a = self.m(self.inv[x], self.inv[y]);
        self.m(self.m(a, x), y)
    }

    /// Translates of `s` by its first element commute pairwise.
    pub fn affine(&self, s: &[usize]) -> bool {
        let t: Vec<usize> = s.iter().map(|&x| self.m(self.inv[s[0]], x)).collect();
        t.iter().enumerate().all(|(i, &a)| t[i + 1..].iter().all(|&b| self.commutes(a, b)))
    }

    /// The subgroup generated by all commutators, by closure.
    pub fn derived(&self) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([self.identity]);
        for x in 0..self.n {
            for y in 0..self.n {
                set.insert(self.comm(x, y));
            }
        }
        loop {
            let items: Vec<usize> = set.iter().copied().collect();
            let before = set.len();
            for &a in &items {
                for &b in &items {
                    set.insert(self.m(a, b));
                }
            }
            if set.len() == before {
                return set;
            }
        }
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.commutes(a, b)))
    }
}

/// Simplices of the affine commutativity complex, by dimension, up to `top`.
pub fn afcom_simplices(t: &Table, top: usize) -> Vec<Vec<Vec<u32>>> {
    let mut out = vec![Vec::new(); top + 1];
    fn grow(t: &Table, cur: &mut Vec<usize>, trans: &mut Vec<usize>, top: usize, out: &mut Vec<Vec<Vec<u32>>>) {
        out[cur.len() - 1].push(cur.iter().map(|&x| x as u32).collect());
        if cur.len() > top {
            return;
        }
        let last = *cur.last().unwrap();
        for s in last + 1..t.n {
            let u = t.m(t.inv[cur[0]], s);
            if trans.iter().all(|&v| t.commutes(u, v)) {
                cur.push(s);
                trans.push(u);
                grow(t, cur, trans, top, out);
                cur.pop();
                trans.pop();
            }
        }
    }
    for s0 in 0..t.n {
        grow(t, &mut vec![s0], &mut vec![t.identity], top, &mut out);
    }
    out
}

/// Simplices of the covering of the affine complex along `x_{g,h} ↦ [g,h]`.
///
/// Vertices are `g·|D| + i` for `c = D[i]`. A set of lifts is a simplex when
/// every pair satisfies `c_j = c_i·[g_i, g_j]`; the second value counts base
/// simplices where that pairwise rule was inconsistent.
pub fn cover_simplices(t: &Table, top: usize) -> (Vec<Vec<Vec<u32>>>, usize) {
    let d: Vec<usize> = t.derived().into_iter().collect();
    let pos: HashMap<usize, usize> = d.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let base = afcom_simplices(t, top);
    let mut out = vec![Vec::new(); top + 1];
    let mut inconsistent = 0;
    for (k, simplices) in base.iter().enumerate() {
        for s in simplices {
            let g: Vec<usize> = s.iter().map(|&x| x as usize).collect();
            for &c0 in &d {
                let cs: Vec<usize> = g.iter().map(|&gi| t.m(c0, t.comm(g[0], gi))).collect();
                let ok = (0..g.len()).all(|i| (i + 1..g.len()).all(|j| cs[j] == t.m(cs[i], t.comm(g[i], g[j]))));
                if !ok {
                    inconsistent += 1;
                    continue;
                }
                let mut v: Vec<u32> = g.iter().zip(&cs).map(|(&gi, c)| (gi * d.len() + pos[c]) as u32).collect();
                v.sort_unstable();
                out[k].push(v);
            }
        }
    }
    (out, inconsistent)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Rank of the boundary map from `k`-simplices to `(k-1)`-simplices over `F_p`.
pub fn boundary_rank(faces: &[Vec<u32>], simplices: &[Vec<u32>], p: u64) -> usize {
    let index: HashMap<&[u32], u32> = faces.iter().enumerate().map(|(i, f)| (f.as_slice(), i as u32)).collect();
    let mut pivots: HashMap<u32, Vec<(u32, u64)>> = HashMap::new();
    for s in simplices {
        let mut col: Vec<(u32, u64)> = (0..s.len())
            .map(|i| {
                let mut f = s.clone();
                f.remove(i);
                let sign = if i % 2 == 0 { 1 } else { p - 1 };
                (index[f.as_slice()], sign % p)
            })
            .collect();
        col.sort_unstable();
        while let Some(&(low, v)) = col.last() {
            let Some(piv) = pivots.get(&low) else { break };
            let pv = piv.last().unwrap().1;
            let f = v * pow_mod(pv, p - 2, p) % p;
            col = sub_scaled(&col, piv, f, p);
        }
        if let Some(&(low, _)) = col.last() {
            pivots.insert(low, col);
        }
    }
    pivots.len()
}

fn sub_scaled(a: &[(u32, u64)], b: &[(u32, u64)], f: u64, p: u64) -> Vec<(u32, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, (p - b[j].1 * f % p) % p));
            j += 1;
        } else {
            let v = (a[i].1 + p - b[j].1 * f % p) % p;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Betti numbers over `F_p` in degrees `0..simplices.len()-1`; the last
/// dimension supplied is used only as a boundary.
pub fn betti_mod(simplices: &[Vec<Vec<u32>>], p: u64) -> Vec<usize> {
    let ranks: Vec<usize> = (0..simplices.len())
        .map(|k| if k == 0 { 0 } else { boundary_rank(&simplices[k - 1], &simplices[k], p) })
        .collect();
    (0..simplices.len() - 1).map(|k| simplices[k].len() - ranks[k] - ranks[k + 1]).collect()
}
