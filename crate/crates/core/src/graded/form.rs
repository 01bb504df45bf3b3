//! Homogeneous polynomials of one fixed degree, as sorted `(rank, coefficient)` terms.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::graded::monomial::{basis, rank_of};
use crate::rep::VariableProjection;

/// A homogeneous polynomial: terms sorted by monomial rank, no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Form {
    nvars: usize,
    degree: u32,
    terms: Vec<(u32, u32)>,
}

/// Sorts and combines `(index, value)` pairs, dropping zeros.
pub(crate) fn normalize_terms(field: &PrimeField, mut terms: Vec<(u32, u32)>) -> Vec<(u32, u32)> {
    terms.sort_unstable_by_key(|t| t.0);
    let mut out: Vec<(u32, u32)> = Vec::with_capacity(terms.len());
    for (i, c) in terms {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 = field.add(last.1, c),
            _ => out.push((i, c)),
        }
    }
    out.retain(|t| t.1 != 0);
    out
}

impl Form {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        Form { nvars, degree, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Form { nvars, degree: 0, terms: vec![(0, 1)] }
    }

    pub fn monomial(nvars: usize, degree: u32, rank: u32, coeff: u32) -> Self {
        let terms = if coeff == 0 { Vec::new() } else { vec![(rank, coeff)] };
        Form { nvars, degree, terms }
    }

    /// The monomial with the given exponent vector.
    pub fn from_exponents(exps: &[u8]) -> Self {
        let degree = exps.iter().map(|&a| a as u32).sum();
        let rank = rank_of(exps.iter().map(|&a| a as u32)) as u32;
        Form { nvars: exps.len(), degree, terms: vec![(rank, 1)] }
    }

    /// Builds a form from arbitrary terms (unsorted, possibly repeated).
    pub fn from_terms(nvars: usize, degree: u32, terms: Vec<(u32, u32)>, field: &PrimeField) -> Self {
        Form { nvars, degree, terms: normalize_terms(field, terms) }
    }

    /// Terms already sorted, combined and nonzero.
    pub(crate) fn from_sorted(nvars: usize, degree: u32, terms: Vec<(u32, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Form { nvars, degree, terms }
    }

    pub fn from_dense(nvars: usize, degree: u32, dense: &[u32]) -> Self {
        let terms = dense.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i as u32, c)).collect();
        Form { nvars, degree, terms }
    }

    pub fn to_dense(&self) -> Result<Vec<u32>> {
        let b = basis(self.nvars, self.degree)?;
        let mut v = vec![0; b.count()];
        for &(i, c) in &self.terms {
            v[i as usize] = c;
        }
        Ok(v)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &[(u32, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(u32, u32)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, rank: u32) -> u32 {
        self.terms.binary_search_by_key(&rank, |t| t.0).map_or(0, |k| self.terms[k].1)
    }

    /// Term with the largest rank.
    pub fn leading(&self) -> Option<(u32, u32)> {
        self.terms.last().copied()
    }

    fn check_same(&self, other: &Form) -> Result<()> {
        if self.nvars != other.nvars || self.degree != other.degree {
            return Err(Error::Precondition(format!(
                "forms live in different components ({}, {}) vs ({}, {})",
                self.nvars, self.degree, other.nvars, other.degree
            )));
        }
        Ok(())
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, other: &Form, c: u32, field: &PrimeField) -> Result<Form> {
        self.check_same(other)?;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                let v = field.mul(b[j].1, c);
                if v != 0 {
                    out.push((b[j].0, v));
                }
                j += 1;
            } else {
                let v = field.mul_add(a[i].1, b[j].1, c);
                if v != 0 {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        Ok(Form { nvars: self.nvars, degree: self.degree, terms: out })
    }

    pub fn add(&self, other: &Form, field: &PrimeField) -> Result<Form> {
        self.add_scaled(other, 1, field)
    }

    pub fn sub(&self, other: &Form, field: &PrimeField) -> Result<Form> {
        self.add_scaled(other, field.p() - 1, field)
    }

    pub fn scale(&self, c: u32, field: &PrimeField) -> Form {
        if c == 0 {
            return Form::zero(self.nvars, self.degree);
        }
        let terms = self.terms.iter().map(|&(i, v)| (i, field.mul(v, c))).collect();
        Form { nvars: self.nvars, degree: self.degree, terms }
    }

    /// Copy living in a larger ring, variable `v` renamed to `var_map[v]`.
    pub fn embed(&self, var_map: &[usize], target_nvars: usize) -> Result<Form> {
        if var_map.len() != self.nvars {
            return Err(Error::Precondition("variable map has the wrong length".into()));
        }
        if let Some(&v) = var_map.iter().find(|&&v| v >= target_nvars) {
            return Err(Error::VariableOutOfRange { index: v, nvars: target_nvars });
        }
        let b = basis(self.nvars, self.degree)?;
        let mut terms: Vec<(u32, u32)> = self
            .terms
            .iter()
            .map(|&(i, c)| {
                let mut e = vec![0u32; target_nvars];
                for (v, &a) in b.exps(i).iter().enumerate() {
                    e[var_map[v]] += a as u32;
                }
                (rank_of(e) as u32, c)
            })
            .collect();
        terms.sort_unstable_by_key(|t| t.0);
        Ok(Form { nvars: target_nvars, degree: self.degree, terms })
    }

    pub fn describe(&self) -> String {
        let Ok(b) = basis(self.nvars, self.degree) else {
            return format!("<form of degree {}>", self.degree);
        };
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .rev()
            .map(|&(i, c)| if c == 1 { b.describe(i) } else { format!("{c}*{}", b.describe(i)) })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Product in `S(W)`; degrees add.
pub fn multiply(u: &Form, v: &Form, field: &PrimeField) -> Result<Form> {
    if u.nvars != v.nvars {
        return Err(Error::Precondition("factors have different numbers of variables".into()));
    }
    let degree = u.degree + v.degree;
    basis(u.nvars, degree)?;
    if u.is_zero() || v.is_zero() {
        return Ok(Form::zero(u.nvars, degree));
    }
    let (bu, bv) = (basis(u.nvars, u.degree)?, basis(v.nvars, v.degree)?);
    let mut terms = Vec::with_capacity(u.terms.len() * v.terms.len());
    for &(i, a) in &u.terms {
        for &(j, b) in &v.terms {
            terms.push((bu.product_rank(i, &bv, j), field.mul(a, b)));
        }
    }
    Ok(Form { nvars: u.nvars, degree, terms: normalize_terms(field, terms) })
}

/// Applies the algebra surjection that kills every variable outside the projection; the
/// result lives in the ring of the kept variables (renumbered in order).
pub fn kill_variables(proj: &VariableProjection, f: &Form) -> Result<Form> {
    if f.nvars != proj.nvars() {
        return Err(Error::Precondition("projection and form disagree on the number of variables".into()));
    }
    let kept = proj.kept();
    let b = basis(f.nvars, f.degree)?;
    let mut terms = Vec::new();
    for &(i, c) in &f.terms {
        let e = b.exps(i);
        let inside: u32 = kept.iter().map(|&v| e[v] as u32).sum();
        if inside == f.degree {
            terms.push((rank_of(kept.iter().map(|&v| e[v] as u32)) as u32, c));
        }
    }
    terms.sort_unstable_by_key(|t| t.0);
    Ok(Form { nvars: kept.len(), degree: f.degree, terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> PrimeField {
        PrimeField::new(7).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        let f = f7();
        let x = Form::from_exponents(&[1, 0]);
        let y = Form::from_exponents(&[0, 1]);
        assert_eq!(multiply(&x, &x, &f).unwrap(), Form::from_exponents(&[2, 0]));
        let xpy = x.add(&y, &f).unwrap();
        let xmy = x.sub(&y, &f).unwrap();
        let expect = Form::from_exponents(&[2, 0]).sub(&Form::from_exponents(&[0, 2]), &f).unwrap();
        assert_eq!(multiply(&xpy, &xmy, &f).unwrap(), expect);
        let a = Form::from_exponents(&[3]);
        let b = Form::from_exponents(&[4]);
        assert_eq!(multiply(&a, &b, &f).unwrap(), Form::from_exponents(&[7]));
    }

    #[test]
    fn kill_examples() {
        let f = f7();
        let p = Form::from_exponents(&[2, 0]).add(&Form::from_exponents(&[1, 1]), &f).unwrap();
        let keep_x = VariableProjection::new(2, vec![0]).unwrap();
        assert_eq!(kill_variables(&keep_x, &p).unwrap(), Form::from_exponents(&[2]));
        let keep_all = VariableProjection::new(2, vec![0, 1]).unwrap();
        assert_eq!(kill_variables(&keep_all, &p).unwrap(), p);
        let keep_none = VariableProjection::new(2, vec![]).unwrap();
        assert!(kill_variables(&keep_none, &p).unwrap().is_zero());
    }

    #[test]
    fn kill_is_an_algebra_map() {
        let f = PrimeField::new(101).unwrap();
        let proj = VariableProjection::new(3, vec![0, 2]).unwrap();
        let u = Form::from_terms(3, 2, vec![(0, 3), (2, 5), (4, 1)], &f);
        let v = Form::from_terms(3, 1, vec![(0, 2), (1, 7), (2, 9)], &f);
        let lhs = kill_variables(&proj, &multiply(&u, &v, &f).unwrap()).unwrap();
        let rhs = multiply(&kill_variables(&proj, &u).unwrap(), &kill_variables(&proj, &v).unwrap(), &f).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn embed_renames_variables() {
        let x0 = Form::from_exponents(&[1, 2]);
        let e = x0.embed(&[2, 0], 3).unwrap();
        assert_eq!(e, Form::from_exponents(&[2, 0, 1]));
    }

    #[test]
    fn dense_roundtrip() {
        let f = f7();
        let u = Form::from_terms(2, 3, vec![(1, 3), (3, 6)], &f);
        let d = u.to_dense().unwrap();
        assert_eq!(d.len(), 4);
        assert_eq!(Form::from_dense(2, 3, &d), u);
    }
}
