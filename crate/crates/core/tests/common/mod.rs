//! Dense reference computations, written without the engine's ranking, echelon or
//! ideal code. Polynomials are maps from exponent vectors to coefficients; subspaces are
//! row-reduced dense matrices over monomials listed in lexicographic order.

#![allow(dead_code)]

use std::collections::HashMap;

use noether::rep::Representation;

pub type Poly = HashMap<Vec<u8>, u64>;

pub fn monomials(n: usize, d: u32) -> Vec<Vec<u8>> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if prefix.len() + 1 == n {
            prefix.push(d as u8);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e as u8);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

pub fn mul(p: u64, a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u8> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let c = out.entry(e).or_insert(0);
            *c = (*c + ca * cb) % p;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn monomial_poly(e: &[u8]) -> Poly {
    Poly::from([(e.to_vec(), 1)])
}

/// `g · x^e` with `g · x_j = Σ_i ρ(g)_{ij} x_i`.
pub fn act(rep: &Representation, g: u32, e: &[u8]) -> Poly {
    let n = rep.dim();
    let p = rep.field().p() as u64;
    let mut acc = Poly::from([(vec![0u8; n], 1)]);
    for (j, &k) in e.iter().enumerate() {
        let mut lin = Poly::new();
        for i in 0..n {
            let c = rep.entry(g, i, j) as u64;
            if c != 0 {
                let mut v = vec![0u8; n];
                v[i] = 1;
                lin.insert(v, c);
            }
        }
        for _ in 0..k {
            acc = mul(p, &acc, &lin);
        }
    }
    acc
}

fn inv_mod(p: u64, a: u64) -> u64 {
    let (mut r, mut e, mut b) = (1u64, p - 2, a % p);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Reduced row echelon form; returns the nonzero rows.
pub fn rref(p: u64, mut rows: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, piv);
        let s = inv_mod(p, rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = *x * s % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..ncols {
                    rows[i][j] = (rows[i][j] + (p - f) * rows[r][j]) % p;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

pub fn rank(p: u64, rows: Vec<Vec<u64>>) -> usize {
    rref(p, rows).len()
}

pub fn to_dense(basis: &[Vec<u8>], f: &Poly) -> Vec<u64> {
    basis.iter().map(|e| f.get(e).copied().unwrap_or(0)).collect()
}

pub fn from_dense(basis: &[Vec<u8>], v: &[u64]) -> Poly {
    basis.iter().zip(v).filter(|(_, &c)| c != 0).map(|(e, &c)| (e.clone(), c)).collect()
}

/// Null space of a matrix given by rows (vectors `x` with `M x = 0`).
fn kernel(p: u64, rows: Vec<Vec<u64>>, ncols: usize) -> Vec<Vec<u64>> {
    let red = rref(p, rows);
    let mut pivots = Vec::new();
    for row in &red {
        pivots.push(row.iter().position(|&x| x != 0).unwrap());
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0; ncols];
        v[free] = 1;
        for (row, &pc) in red.iter().zip(&pivots) {
            v[pc] = (p - row[free]) % p;
        }
        out.push(v);
    }
    out
}

/// A basis of `S(W)^G_d`: the common kernel of `g - 1` over the generators.
pub fn invariants(rep: &Representation, d: u32) -> Vec<Poly> {
    let p = rep.field().p() as u64;
    let basis = monomials(rep.dim(), d);
    let index: HashMap<&Vec<u8>, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let m = basis.len();
    let mut rows = Vec::new();
    for &g in rep.group().generators() {
        // column j of (g - 1) is g·x^{e_j} - x^{e_j}
        let mut mat = vec![vec![0u64; m]; m];
        for (j, e) in basis.iter().enumerate() {
            for (f, c) in act(rep, g, e) {
                mat[index[&f]][j] = (mat[index[&f]][j] + c) % p;
            }
            mat[j][j] = (mat[j][j] + p - 1) % p;
        }
        rows.extend(mat);
    }
    if rows.is_empty() {
        return basis.iter().map(|e| monomial_poly(e)).collect();
    }
    kernel(p, rows, m).iter().map(|v| from_dense(&basis, v)).collect()
}

/// Dimensions of `Inv_d`, `((S^G_+)^j)_d` for `j = 1..=jmax`, and `((S^G_+)^k S)_d`,
/// for all `d <= dmax`.
pub struct Tables {
    pub inv: Vec<Vec<Poly>>,
    /// `powers[j][d]`: a spanning set (reduced) of `((S^G_+)^j)_d`, `j >= 1`.
    pub powers: Vec<Vec<Vec<Poly>>>,
}

fn reduce_span(p: u64, basis: &[Vec<u8>], polys: Vec<Poly>) -> Vec<Poly> {
    if polys.is_empty() {
        return polys;
    }
    let rows: Vec<Vec<u64>> = polys.iter().map(|f| to_dense(basis, f)).collect();
    rref(p, rows).iter().map(|r| from_dense(basis, r)).collect()
}

pub fn tables(rep: &Representation, jmax: u32, dmax: u32) -> Tables {
    let p = rep.field().p() as u64;
    let n = rep.dim();
    let inv: Vec<Vec<Poly>> = (0..=dmax).map(|d| if d == 0 { Vec::new() } else { invariants(rep, d) }).collect();
    let mut powers = vec![Vec::new(); jmax as usize + 1];
    powers[1] = inv.clone();
    for j in 2..=jmax as usize {
        let mut level = vec![Vec::new(); dmax as usize + 1];
        for d in 0..=dmax as usize {
            let mut span = Vec::new();
            for a in 1..d {
                for f in &inv[a] {
                    for g in &powers[j - 1][d - a] {
                        span.push(mul(p, f, g));
                    }
                }
            }
            level[d] = reduce_span(p, &monomials(n, d as u32), span);
        }
        powers[j] = level;
    }
    Tables { inv, powers }
}

/// `dim ((S^G_+)^k S)_d`.
pub fn ideal_dim(rep: &Representation, t: &Tables, k: u32, d: u32) -> usize {
    let p = rep.field().p() as u64;
    let n = rep.dim();
    let basis = monomials(n, d);
    let mut rows = Vec::new();
    for e in 1..=d {
        for f in &t.powers[k as usize][e as usize] {
            for m in monomials(n, d - e) {
                rows.push(to_dense(&basis, &mul(p, f, &monomial_poly(&m))));
            }
        }
    }
    if rows.is_empty() {
        0
    } else {
        rank(p, rows)
    }
}

/// `β_k` by the degree-wise Nakayama criterion, searched up to `dmax`.
pub fn beta_k(rep: &Representation, k: u32, dmax: u32) -> u32 {
    let t = tables(rep, k + 1, dmax);
    (1..=dmax)
        .filter(|&d| t.inv[d as usize].len() > t.powers[k as usize + 1][d as usize].len())
        .max()
        .unwrap_or(0)
}

/// `b_k`: the last degree where `(S^G_+)^k S` misses a monomial, searched up to `dmax`.
pub fn b_k(rep: &Representation, k: u32, dmax: u32) -> Option<u32> {
    let t = tables(rep, k, dmax);
    let n = rep.dim();
    if n == 0 {
        return Some(0);
    }
    (0..=dmax).find(|&d| ideal_dim(rep, &t, k, d) == monomials(n, d).len()).map(|d| d.saturating_sub(1))
}
