//! Finite-dimensional representations over `F_p`, stored as one dense matrix per
//! group element.
//!
//! Convention: column `j` of `ρ(g)` is the image of basis vector `j`, and the degree-1
//! component of `S(W)` is `W` itself (`g·x_j = Σ_i ρ(g)[i][j] x_i`).

use std::ops::Range;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::group::{GroupTable, QuotientGroup, SubgroupHandle};

#[derive(Debug, Clone)]
pub struct Representation {
    group: Arc<GroupTable>,
    field: PrimeField,
    dim: usize,
    matrices: Vec<Vec<u32>>,
    blocks: Vec<Range<usize>>,
    label: String,
    monomial: bool,
}

fn identity_matrix(dim: usize) -> Vec<u32> {
    let mut m = vec![0; dim * dim];
    for i in 0..dim {
        m[i * dim + i] = 1;
    }
    m
}

fn mat_mul(field: &PrimeField, dim: usize, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let aik = a[i * dim + k];
            if aik == 0 {
                continue;
            }
            for j in 0..dim {
                let bkj = b[k * dim + j];
                if bkj != 0 {
                    out[i * dim + j] = field.mul_add(out[i * dim + j], aik, bkj);
                }
            }
        }
    }
    out
}

pub(crate) fn same_group(a: &Arc<GroupTable>, b: &Arc<GroupTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Representation {
    /// Builds `ρ` from the images of the group's generators, extending along the
    /// closure, and checks the homomorphism law.
    pub fn from_generator_images(
        group: &Arc<GroupTable>,
        field: PrimeField,
        dim: usize,
        images: &[Vec<u32>],
        label: impl Into<String>,
    ) -> Result<Self> {
        let gens = group.generators();
        if images.len() != gens.len() {
            return Err(Error::Representation(format!(
                "{} generator images for {} generators",
                images.len(),
                gens.len()
            )));
        }
        if images.iter().any(|m| m.len() != dim * dim || m.iter().any(|&x| x >= field.p())) {
            return Err(Error::Representation("generator image has the wrong shape or entries".into()));
        }
        let n = group.order();
        let mut matrices: Vec<Option<Vec<u32>>> = vec![None; n];
        matrices[0] = Some(identity_matrix(dim));
        let mut queue = vec![0u32];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (s, img) in gens.iter().zip(images) {
                let y = group.mul(*s, x);
                if matrices[y as usize].is_none() {
                    let m = mat_mul(&field, dim, img, matrices[x as usize].as_ref().unwrap());
                    matrices[y as usize] = Some(m);
                    queue.push(y);
                }
            }
            i += 1;
        }
        let matrices: Vec<Vec<u32>> = matrices.into_iter().map(|m| m.expect("generators generate")).collect();
        let rep = Self::from_parts(group, field, dim, matrices, vec![0..dim], label.into());
        rep.check_homomorphism()?;
        Ok(rep)
    }

    fn from_parts(
        group: &Arc<GroupTable>,
        field: PrimeField,
        dim: usize,
        matrices: Vec<Vec<u32>>,
        blocks: Vec<Range<usize>>,
        label: String,
    ) -> Self {
        let monomial = matrices.iter().all(|m| {
            (0..dim).all(|j| (0..dim).filter(|&i| m[i * dim + j] != 0).count() == 1)
        });
        let blocks = blocks.into_iter().filter(|b| !b.is_empty()).collect();
        Representation { group: Arc::clone(group), field, dim, matrices, blocks, label, monomial }
    }

    /// Checks `ρ(s)ρ(x) = ρ(sx)` for every generator `s` and element `x` (which forces the
    /// homomorphism law), and all pairs when `|G| <= 24`.
    pub fn check_homomorphism(&self) -> Result<()> {
        let n = self.group.order() as u32;
        if self.matrices[0] != identity_matrix(self.dim) {
            return Err(Error::Representation("identity does not act trivially".into()));
        }
        let pairs: Vec<(u32, u32)> = if n <= 24 {
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()
        } else {
            self.group.generators().iter().flat_map(|&s| (0..n).map(move |b| (s, b))).collect()
        };
        for (a, b) in pairs {
            let lhs = mat_mul(&self.field, self.dim, self.matrix(a), self.matrix(b));
            if lhs != *self.matrix(self.group.mul(a, b)) {
                return Err(Error::Representation(format!("rho({a}) rho({b}) != rho({a}*{b})")));
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Row-major `dim × dim` matrix of `ρ(g)`.
    pub fn matrix(&self, g: u32) -> &[u32] {
        &self.matrices[g as usize]
    }

    pub fn entry(&self, g: u32, row: usize, col: usize) -> u32 {
        self.matrices[g as usize][row * self.dim + col]
    }

    pub fn trace(&self, g: u32) -> u32 {
        (0..self.dim).fold(0, |acc, i| self.field.add(acc, self.entry(g, i, i)))
    }

    /// Every `ρ(g)` has exactly one nonzero entry per column.
    pub fn is_monomial(&self) -> bool {
        self.monomial
    }

    /// Summand index ranges, finest known decomposition.
    pub fn blocks(&self) -> &[Range<usize>] {
        &self.blocks
    }

    /// Image of `x_j` under `g` as `(variable, coefficient)` pairs.
    pub fn image_of_variable(&self, g: u32, j: usize) -> Vec<(usize, u32)> {
        (0..self.dim)
            .filter_map(|i| {
                let c = self.entry(g, i, j);
                (c != 0).then_some((i, c))
            })
            .collect()
    }

    /// Content hash of the field, group table and matrices.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.field.p().to_le_bytes());
        h.update((self.dim as u64).to_le_bytes());
        h.update((self.group.order() as u64).to_le_bytes());
        for a in 0..self.group.order() as u32 {
            for &g in self.group.generators() {
                h.update(self.group.mul(g, a).to_le_bytes());
            }
        }
        for m in &self.matrices {
            for &x in m {
                h.update(x.to_le_bytes());
            }
        }
        let digest = h.finalize();
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

/// One-dimensional module of an abelian group with a known basis: the `i`-th basis
/// element acts by `ω_i^{exponents[i]}`, `ω_i` the smallest primitive root of its order.
pub fn character_rep(group: &Arc<GroupTable>, field: PrimeField, exponents: &[i64]) -> Result<Representation> {
    let basis = group.abelian_basis().ok_or_else(|| {
        Error::Representation(format!("{} has no known abelian basis for characters", group.name()))
    })?;
    if basis.len() != exponents.len() {
        return Err(Error::Representation(format!(
            "{} needs {} character exponents, got {}",
            group.name(),
            basis.len(),
            exponents.len()
        )));
    }
    let mut values = vec![u32::MAX; group.order()];
    // enumerate coordinates of prod b_i^{c_i}
    let mut elems = vec![(0u32, 1u32)];
    for (&(b, ord), &e) in basis.iter().zip(exponents) {
        let omega = field.primitive_root_of_unity(ord as u64)?.value();
        let step = field.pow(omega, e.rem_euclid(ord as i64) as u64);
        let mut next = Vec::with_capacity(elems.len() * ord as usize);
        for &(x, v) in &elems {
            let (mut y, mut w) = (x, v);
            for _ in 0..ord {
                next.push((y, w));
                y = group.mul(y, b);
                w = field.mul(w, step);
            }
        }
        elems = next;
    }
    for (x, v) in elems {
        values[x as usize] = v;
    }
    if values.contains(&u32::MAX) {
        return Err(Error::Representation("abelian basis does not cover the group".into()));
    }
    let label = format!("chi[{}]", exponents.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","));
    let matrices = values.into_iter().map(|v| vec![v]).collect();
    let rep = Representation::from_parts(group, field, 1, matrices, vec![0..1], label);
    rep.check_homomorphism()?;
    Ok(rep)
}

pub fn trivial_rep(group: &Arc<GroupTable>, field: PrimeField, dim: usize) -> Representation {
    let matrices = vec![identity_matrix(dim); group.order()];
    let blocks = (0..dim).map(|i| i..i + 1).collect();
    Representation::from_parts(group, field, dim, matrices, blocks, format!("triv^{dim}"))
}

/// Left translation on `F[G]`: `ρ(g) e_h = e_{gh}`.
pub fn regular_rep(group: &Arc<GroupTable>, field: PrimeField) -> Representation {
    let n = group.order();
    let matrices = (0..n as u32)
        .map(|g| {
            let mut m = vec![0; n * n];
            for h in 0..n as u32 {
                m[group.mul(g, h) as usize * n + h as usize] = 1;
            }
            m
        })
        .collect();
    Representation::from_parts(group, field, n, matrices, vec![0..n], "regular".into())
}

/// Permutation module from the action of each generator on `{0, .., m-1}`
/// (generator `s` sends point `i` to `perms[s][i]`).
pub fn permutation_rep(group: &Arc<GroupTable>, field: PrimeField, perms: &[Vec<usize>]) -> Result<Representation> {
    let m = perms.first().map_or(0, |p| p.len());
    let mut images = Vec::with_capacity(perms.len());
    for p in perms {
        let mut seen = vec![false; m];
        if p.len() != m || p.iter().any(|&i| i >= m || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::Representation("permutation images must be permutations of a common degree".into()));
        }
        let mut mat = vec![0; m * m];
        for (i, &j) in p.iter().enumerate() {
            mat[j * m + i] = 1;
        }
        images.push(mat);
    }
    Representation::from_generator_images(group, field, m, &images, format!("perm{m}"))
}

pub fn direct_sum(a: &Representation, b: &Representation) -> Result<Representation> {
    if !same_group(&a.group, &b.group) || a.field.p() != b.field.p() {
        return Err(Error::Mismatch);
    }
    let (da, db) = (a.dim, b.dim);
    let d = da + db;
    let matrices = (0..a.group.order())
        .map(|g| {
            let mut m = vec![0; d * d];
            for i in 0..da {
                m[i * d..i * d + da].copy_from_slice(&a.matrices[g][i * da..(i + 1) * da]);
            }
            for i in 0..db {
                m[(da + i) * d + da..(da + i) * d + d].copy_from_slice(&b.matrices[g][i * db..(i + 1) * db]);
            }
            m
        })
        .collect();
    let blocks = a.blocks.iter().cloned().chain(b.blocks.iter().map(|r| r.start + da..r.end + da)).collect();
    Ok(Representation::from_parts(&a.group, a.field, d, matrices, blocks, format!("{}+{}", a.label, b.label)))
}

/// Views a `G/N`-module as a `G`-module on which `N` acts trivially.
pub fn inflate(quotient_rep: &Representation, quotient: &QuotientGroup) -> Result<Representation> {
    if !same_group(quotient_rep.group(), quotient.table()) {
        return Err(Error::Mismatch);
    }
    let g = quotient.parent();
    let matrices = (0..g.order() as u32)
        .map(|x| quotient_rep.matrices[quotient.project(x) as usize].clone())
        .collect();
    Ok(Representation::from_parts(
        g,
        quotient_rep.field,
        quotient_rep.dim,
        matrices,
        quotient_rep.blocks.clone(),
        format!("Inf({})", quotient_rep.label),
    ))
}

/// The restriction of a `G`-module to a subgroup.
pub fn restrict(rep: &Representation, sub: &SubgroupHandle) -> Result<Representation> {
    if !same_group(rep.group(), sub.parent()) {
        return Err(Error::Mismatch);
    }
    let matrices = (0..sub.order() as u32).map(|h| rep.matrices[sub.embed(h) as usize].clone()).collect();
    Ok(Representation::from_parts(
        sub.table(),
        rep.field,
        rep.dim,
        matrices,
        rep.blocks.clone(),
        format!("Res[{}]({})", sub.table().name(), rep.label),
    ))
}

/// `Ind_H^G V = ⊕_{c ∈ C} c·V`, blocks ordered as the coset representatives (identity
/// first). For `x ∈ G` and representative `c`, write `x c = c' h`; then `x` maps block
/// `c` to block `c'` through `ρ_V(h)`.
pub fn induce(sub: &SubgroupHandle, inner: &Representation) -> Result<Representation> {
    if !same_group(inner.group(), sub.table()) {
        return Err(Error::Mismatch);
    }
    let g = sub.parent();
    let reps = sub.coset_reps();
    let (q, dv) = (reps.len(), inner.dim);
    let d = q * dv;
    let field = inner.field;
    let matrices = (0..g.order() as u32)
        .map(|x| {
            let mut m = vec![0; d * d];
            for (i, &c) in reps.iter().enumerate() {
                let xc = g.mul(x, c);
                let j = sub.coset_of(xc) as usize;
                let h = g.mul(g.inv(reps[j]), xc);
                let h_own = sub.own(h).expect("c'^-1 x c lies in H");
                let block = inner.matrix(h_own);
                for a in 0..dv {
                    for b in 0..dv {
                        m[(j * dv + a) * d + i * dv + b] = block[a * dv + b];
                    }
                }
            }
            m
        })
        .collect();
    let blocks = (0..q)
        .flat_map(|i| inner.blocks.iter().map(move |r| i * dv + r.start..i * dv + r.end))
        .collect();
    let label = format!("Ind[{}]({})", sub.table().name(), inner.label);
    Ok(Representation::from_parts(g, field, d, matrices, blocks, label))
}

/// Variables kept by an algebra projection `S(W) → S(block)`; every other variable is
/// sent to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableProjection {
    nvars: usize,
    keep: Vec<usize>,
}

impl VariableProjection {
    pub fn new(nvars: usize, mut keep: Vec<usize>) -> Result<Self> {
        keep.sort_unstable();
        keep.dedup();
        if let Some(&j) = keep.iter().find(|&&j| j >= nvars) {
            return Err(Error::VariableOutOfRange { index: j, nvars });
        }
        Ok(VariableProjection { nvars, keep })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn kept(&self) -> &[usize] {
        &self.keep
    }

    /// `Some(position in the smaller ring)` for kept variables.
    pub fn target(&self, var: usize) -> Option<usize> {
        self.keep.binary_search(&var).ok()
    }
}

/// Projection onto the variables of `block`, which must be a union of summand ranges.
pub fn restrict_projection(whole: &Representation, block: Range<usize>) -> Result<VariableProjection> {
    if block.end > whole.dim || block.start > block.end {
        return Err(Error::VariableOutOfRange { index: block.end, nvars: whole.dim });
    }
    let aligned = whole
        .blocks
        .iter()
        .all(|r| r.end <= block.start || r.start >= block.end || (r.start >= block.start && r.end <= block.end));
    if !aligned {
        return Err(Error::Precondition(format!("{block:?} cuts through a summand of {}", whole.label)));
    }
    VariableProjection::new(whole.dim, block.collect())
}
