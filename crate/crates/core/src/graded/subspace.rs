//! Subspaces of a graded component in reduced echelon form.
//!
//! Pivot convention: a row's pivot is its *largest* index, normalized to 1, and every
//! other row is zero in that column. With the monomial ranking this makes the
//! standard monomials of an ideal component exactly the non-pivot columns.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::graded::form::{normalize_terms, Form};

/// Dense scratch for summing sparse rows over an index space of known size.
pub(crate) struct Accumulator {
    dense: Vec<u32>,
    touched: Vec<u32>,
}

impl Accumulator {
    pub(crate) fn new(len: usize) -> Self {
        Accumulator { dense: vec![0; len], touched: Vec::new() }
    }

    #[inline]
    pub(crate) fn add(&mut self, field: &PrimeField, i: u32, c: u32) {
        let slot = &mut self.dense[i as usize];
        if *slot == 0 {
            self.touched.push(i);
        }
        *slot = field.add(*slot, c);
    }

    pub(crate) fn add_scaled(&mut self, field: &PrimeField, row: &[(u32, u32)], c: u32) {
        for &(i, v) in row {
            self.add(field, i, field.mul(v, c));
        }
    }

    /// Sorted nonzero terms; resets the scratch.
    pub(crate) fn drain(&mut self) -> Vec<(u32, u32)> {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            let v = std::mem::replace(&mut self.dense[i as usize], 0);
            if v != 0 {
                out.push((i, v));
            }
        }
        self.touched.clear();
        out
    }
}

/// Reduced echelon basis over an abstract index space.
#[derive(Debug, Clone)]
pub(crate) struct Echelon {
    field: PrimeField,
    rows: Vec<Vec<(u32, u32)>>,
    pivot_row: HashMap<u32, usize>,
}

impl Echelon {
    pub(crate) fn new(field: PrimeField) -> Self {
        Echelon { field, rows: Vec::new(), pivot_row: HashMap::new() }
    }

    /// Rows must already be in reduced form under the pivot convention.
    pub(crate) fn from_reduced_rows(field: PrimeField, rows: Vec<Vec<(u32, u32)>>) -> Self {
        let pivot_row = rows.iter().enumerate().map(|(k, r)| (r.last().expect("nonzero row").0, k)).collect();
        Echelon { field, rows, pivot_row }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn rows(&self) -> &[Vec<(u32, u32)>] {
        &self.rows
    }

    pub(crate) fn is_pivot(&self, i: u32) -> bool {
        self.pivot_row.contains_key(&i)
    }

    pub(crate) fn pivot_row(&self, i: u32) -> Option<&[(u32, u32)]> {
        self.pivot_row.get(&i).map(|&k| self.rows[k].as_slice())
    }

    /// Remainder of `v` modulo the span; supported on non-pivot columns.
    pub(crate) fn reduce(&self, v: &[(u32, u32)]) -> Vec<(u32, u32)> {
        if v.iter().all(|t| !self.is_pivot(t.0)) {
            return v.to_vec();
        }
        let f = &self.field;
        let mut all: Vec<(u32, u32)> = Vec::with_capacity(v.len() * 2);
        for &(i, c) in v {
            match self.pivot_row.get(&i) {
                Some(&k) => {
                    let neg = f.neg(c);
                    for &(j, r) in &self.rows[k] {
                        if j != i {
                            all.push((j, f.mul(r, neg)));
                        }
                    }
                }
                None => all.push((i, c)),
            }
        }
        normalize_terms(f, all)
    }

    /// Adds an already-reduced nonzero vector as a new row.
    pub(crate) fn push_reduced(&mut self, mut r: Vec<(u32, u32)>) {
        let f = self.field;
        let (q, lead) = *r.last().expect("nonzero");
        let scale = f.inv(lead);
        for t in r.iter_mut() {
            t.1 = f.mul(t.1, scale);
        }
        for row in self.rows.iter_mut() {
            if let Ok(pos) = row.binary_search_by_key(&q, |t| t.0) {
                let c = f.neg(row[pos].1);
                let mut merged = Vec::with_capacity(row.len() + r.len());
                merged.extend(row.iter().copied().filter(|t| t.0 != q));
                merged.extend(r.iter().filter(|t| t.0 != q).map(|&(j, v)| (j, f.mul(v, c))));
                *row = normalize_terms(&f, merged);
            }
        }
        self.pivot_row.insert(q, self.rows.len());
        self.rows.push(r);
    }

    /// Inserts `v`; returns whether the rank grew.
    pub(crate) fn insert(&mut self, v: &[(u32, u32)]) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        self.push_reduced(r);
        true
    }
}

/// A subspace of the degree-`d` component of a polynomial ring in `nvars` variables.
#[derive(Debug, Clone)]
pub struct Subspace {
    nvars: usize,
    degree: u32,
    ech: Echelon,
}

impl Subspace {
    pub fn new(nvars: usize, degree: u32, field: PrimeField) -> Self {
        Subspace { nvars, degree, ech: Echelon::new(field) }
    }

    pub fn span<'a, I: IntoIterator<Item = &'a Form>>(nvars: usize, degree: u32, field: PrimeField, forms: I) -> Result<Self> {
        let mut s = Subspace::new(nvars, degree, field);
        for f in forms {
            s.insert(f)?;
        }
        Ok(s)
    }

    pub(crate) fn from_echelon(nvars: usize, degree: u32, ech: Echelon) -> Self {
        Subspace { nvars, degree, ech }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> PrimeField {
        self.ech.field
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<u32> {
        let mut p: Vec<u32> = self.ech.pivot_row.keys().copied().collect();
        p.sort_unstable();
        p
    }

    /// Basis rows ordered by pivot.
    pub fn basis(&self) -> Vec<Form> {
        self.pivots()
            .into_iter()
            .map(|p| Form::from_sorted(self.nvars, self.degree, self.ech.pivot_row(p).unwrap().to_vec()))
            .collect()
    }

    fn check(&self, f: &Form) -> Result<()> {
        if f.nvars() != self.nvars || f.degree() != self.degree {
            return Err(Error::Precondition(format!(
                "form of ({}, {}) does not live in the ambient ({}, {})",
                f.nvars(),
                f.degree(),
                self.nvars,
                self.degree
            )));
        }
        Ok(())
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.nvars != other.nvars || self.degree != other.degree || self.field().p() != other.field().p() {
            return Err(Error::Precondition("subspaces live in different ambient spaces".into()));
        }
        Ok(())
    }

    pub fn insert(&mut self, f: &Form) -> Result<bool> {
        self.check(f)?;
        Ok(self.ech.insert(f.terms()))
    }

    pub fn reduce(&self, f: &Form) -> Result<Form> {
        self.check(f)?;
        Ok(Form::from_sorted(self.nvars, self.degree, self.ech.reduce(f.terms())))
    }

    pub fn contains(&self, f: &Form) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }

    /// Coordinates of `f` in the basis returned by [`Subspace::basis`], if `f` lies here.
    pub fn coordinates(&self, f: &Form) -> Result<Option<Vec<u32>>> {
        if !self.contains(f)? {
            return Ok(None);
        }
        Ok(Some(self.pivots().into_iter().map(|p| f.coeff(p)).collect()))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let (big, small) = if self.dim() >= other.dim() { (self, other) } else { (other, self) };
        let mut out = big.clone();
        for row in small.ech.rows() {
            out.ech.insert(row);
        }
        Ok(out)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.ech.rows().iter().all(|r| self.ech.reduce(r).is_empty()))
    }

    pub fn same_as(&self, other: &Subspace) -> Result<bool> {
        Ok(self.dim() == other.dim() && self.contains_subspace(other)?)
    }

    pub fn dim_intersection(&self, other: &Subspace) -> Result<usize> {
        Ok(self.dim() + other.dim() - self.sum(other)?.dim())
    }

    /// `dim(self) - dim(sub)` for `sub ⊆ self`.
    pub fn quotient_dim(&self, sub: &Subspace) -> Result<usize> {
        if !self.contains_subspace(sub)? {
            return Err(Error::Precondition("quotient by a subspace that is not contained".into()));
        }
        Ok(self.dim() - sub.dim())
    }

    /// Explicit basis of `self ∩ other`, from the kernel of `b ↦ reduce_self(b)` on a
    /// basis of `other`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let f = self.field();
        let others = other.basis();
        let shift = others.len() as u32;
        // tags sit below the shifted remainder so pivots fall in the remainder part
        let mut ech = Echelon::new(f);
        let mut out = Subspace::new(self.nvars, self.degree, f);
        for (i, b) in others.iter().enumerate() {
            let rem = self.ech.reduce(b.terms());
            let mut v: Vec<(u32, u32)> = vec![(i as u32, 1)];
            v.extend(rem.iter().map(|&(j, c)| (j + shift, c)));
            let r = ech.reduce(&v);
            if r.last().is_some_and(|t| t.0 >= shift) {
                ech.push_reduced(r);
            } else {
                let mut combo = Form::zero(self.nvars, self.degree);
                for &(k, c) in &r {
                    combo = combo.add_scaled(&others[k as usize], c, &f)?;
                }
                out.insert(&combo)?;
            }
        }
        Ok(out)
    }

    /// Image under a linear map on forms.
    pub fn map<F>(&self, nvars: usize, degree: u32, mut f: F) -> Result<Subspace>
    where
        F: FnMut(&Form) -> Result<Form>,
    {
        let mut out = Subspace::new(nvars, degree, self.field());
        for b in self.basis() {
            out.insert(&f(&b)?)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    fn var(n: usize, i: usize) -> Form {
        let mut e = vec![0u8; n];
        e[i] = 1;
        Form::from_exponents(&e)
    }

    #[test]
    fn examples() {
        let f = f();
        let x = var(3, 0);
        let s = Subspace::span(3, 1, f, [&x, &x.scale(2, &f)]).unwrap();
        assert_eq!(s.dim(), 1);
        let x2 = Form::from_exponents(&[2, 0, 0]);
        let xy = Form::from_exponents(&[1, 1, 0]);
        let s2 = Subspace::span(3, 2, f, [&x2]).unwrap();
        assert!(!s2.contains(&x2.add(&xy, &f).unwrap()).unwrap());
        let a = Subspace::span(3, 1, f, [&var(3, 0), &var(3, 1)]).unwrap();
        let b = Subspace::span(3, 1, f, [&var(3, 1), &var(3, 2)]).unwrap();
        assert_eq!(a.dim_intersection(&b).unwrap(), 1);
        let i = a.intersection(&b).unwrap();
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&var(3, 1)).unwrap());
    }

    #[test]
    fn rows_are_reduced() {
        let f = f();
        let forms: Vec<Form> = (0..6)
            .map(|k| Form::from_terms(2, 3, vec![(0, k + 1), (1, 2 * k + 1), (2, 3), (3, k * k)], &f))
            .collect();
        let s = Subspace::span(2, 3, f, &forms).unwrap();
        let piv = s.pivots();
        for b in s.basis() {
            let (lead, c) = b.leading().unwrap();
            assert_eq!(c, 1);
            for &p in &piv {
                if p != lead {
                    assert_eq!(b.coeff(p), 0);
                }
            }
        }
    }

    fn arb_forms() -> impl Strategy<Value = Vec<Vec<(u32, u32)>>> {
        prop::collection::vec(prop::collection::vec((0u32..10, 0u32..101), 0..6), 0..7)
    }

    proptest! {
        #[test]
        fn echelon_laws(a in arb_forms(), b in arb_forms()) {
            let f = f();
            // 4 variables in degree 2: 10 monomials
            let fa: Vec<Form> = a.into_iter().map(|t| Form::from_terms(4, 2, t, &f)).collect();
            let fb: Vec<Form> = b.into_iter().map(|t| Form::from_terms(4, 2, t, &f)).collect();
            let sa = Subspace::span(4, 2, f, &fa).unwrap();
            let sb = Subspace::span(4, 2, f, &fb).unwrap();
            let sum = sa.sum(&sb).unwrap();
            prop_assert!(sum.contains_subspace(&sa).unwrap());
            prop_assert!(sum.contains_subspace(&sb).unwrap());
            for v in fa.iter().chain(&fb) {
                prop_assert!(sum.contains(v).unwrap());
            }
            let inter = sa.intersection(&sb).unwrap();
            prop_assert_eq!(inter.dim(), sa.dim_intersection(&sb).unwrap());
            prop_assert!(sa.contains_subspace(&inter).unwrap());
            prop_assert!(sb.contains_subspace(&inter).unwrap());
            prop_assert_eq!(sum.quotient_dim(&sa).unwrap(), sum.dim() - sa.dim());
            // reduction is idempotent and lands outside the pivots
            for v in &fb {
                let r = sa.reduce(v).unwrap();
                prop_assert_eq!(sa.reduce(&r).unwrap(), r.clone());
                prop_assert!(sa.contains(&v.sub(&r, &f).unwrap()).unwrap());
            }
        }
    }
}
