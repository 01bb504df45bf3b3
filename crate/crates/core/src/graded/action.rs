//! The action of `G` on graded components of `S(W)`.
//!
//! `g·m` for a monomial `m = Π x_j^{a_j}` is expanded by multiplying the linear forms
//! `g·x_j` one factor at a time. Components that are acted on repeatedly get their
//! symmetric-power matrices materialized per group element.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::graded::form::{normalize_terms, Form};
use crate::graded::monomial::basis;
use crate::rep::Representation;

/// Number of `act` calls on a component before its symmetric-power matrices are cached.
pub const DEFAULT_CACHE_THRESHOLD: usize = 64;
/// Largest `|G| · #monomials` for which the cache is built.
const CACHE_LIMIT: usize = 2_000_000;

type SymPower = Arc<Vec<Vec<Form>>>;

pub struct GradedAction {
    rep: Arc<Representation>,
    images: Vec<Vec<Vec<(usize, u32)>>>,
    threshold: usize,
    visits: Mutex<HashMap<u32, usize>>,
    cache: Mutex<HashMap<u32, SymPower>>,
}

impl std::fmt::Debug for GradedAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedAction").field("rep", &self.rep.label()).finish()
    }
}

impl GradedAction {
    pub fn new(rep: Arc<Representation>) -> Self {
        Self::with_threshold(rep, DEFAULT_CACHE_THRESHOLD)
    }

    pub fn with_threshold(rep: Arc<Representation>, threshold: usize) -> Self {
        let images = (0..rep.group().order() as u32)
            .map(|g| (0..rep.dim()).map(|j| rep.image_of_variable(g, j)).collect())
            .collect();
        GradedAction {
            rep,
            images,
            threshold,
            visits: Mutex::new(HashMap::new()),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn rep(&self) -> &Arc<Representation> {
        &self.rep
    }

    pub fn field(&self) -> PrimeField {
        self.rep.field()
    }

    pub fn nvars(&self) -> usize {
        self.rep.dim()
    }

    /// `g·m` for the monomial of rank `m` in degree `d`.
    pub fn act_monomial(&self, g: u32, degree: u32, m: u32) -> Result<Form> {
        let n = self.nvars();
        let f = self.field();
        let exps = basis(n, degree)?.exps(m).to_vec();
        let mut cur: Vec<(u32, u32)> = vec![(0, 1)];
        let mut e = 0u32;
        for (j, &a) in exps.iter().enumerate() {
            let img = &self.images[g as usize][j];
            for _ in 0..a {
                let b = basis(n, e)?;
                let mut next = Vec::with_capacity(cur.len() * img.len());
                for &(r, c) in &cur {
                    for &(i, v) in img {
                        next.push((b.times_var(r, i), f.mul(c, v)));
                    }
                }
                cur = if img.len() == 1 { sort_only(next) } else { normalize_terms(&f, next) };
                e += 1;
            }
        }
        Ok(Form::from_sorted(n, degree, cur))
    }

    fn sym_power(&self, degree: u32) -> Result<Option<SymPower>> {
        if let Some(c) = self.cache.lock().unwrap().get(&degree) {
            return Ok(Some(Arc::clone(c)));
        }
        let count = basis(self.nvars(), degree)?.count();
        let order = self.rep.group().order();
        let hits = {
            let mut v = self.visits.lock().unwrap();
            let h = v.entry(degree).or_insert(0);
            *h += 1;
            *h
        };
        if hits <= self.threshold || count * order > CACHE_LIMIT {
            return Ok(None);
        }
        let table: Vec<Vec<Form>> = (0..order as u32)
            .into_par_iter()
            .map(|g| (0..count as u32).map(|m| self.act_monomial(g, degree, m)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let table = Arc::new(table);
        self.cache.lock().unwrap().insert(degree, Arc::clone(&table));
        Ok(Some(table))
    }

    /// `g·f`.
    pub fn act(&self, g: u32, form: &Form) -> Result<Form> {
        if form.nvars() != self.nvars() {
            return Err(Error::Precondition("form and module have different numbers of variables".into()));
        }
        if g as usize >= self.rep.group().order() {
            return Err(Error::ElementOutOfRange { index: g as usize, order: self.rep.group().order() });
        }
        let f = self.field();
        let d = form.degree();
        let cached = self.sym_power(d)?;
        let mut terms = Vec::new();
        for &(m, c) in form.terms() {
            let img = match &cached {
                Some(t) => t[g as usize][m as usize].clone(),
                None => self.act_monomial(g, d, m)?,
            };
            terms.extend(img.terms().iter().map(|&(i, v)| (i, f.mul(v, c))));
        }
        Ok(Form::from_sorted(self.nvars(), d, normalize_terms(&f, terms)))
    }

    /// Whether the degree-`d` symmetric-power matrices are cached.
    pub fn is_cached(&self, degree: u32) -> bool {
        self.cache.lock().unwrap().contains_key(&degree)
    }
}

fn sort_only(mut v: Vec<(u32, u32)>) -> Vec<(u32, u32)> {
    v.sort_unstable_by_key(|t| t.0);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::choose_splitting_prime;
    use crate::graded::form::multiply;
    use crate::group::{catalog, subgroup, CatalogGroup};
    use crate::rep::{character_rep, induce, regular_rep};
    use proptest::prelude::*;

    fn sign_action() -> GradedAction {
        let g = catalog(&CatalogGroup::Cyclic(2)).unwrap();
        let f = choose_splitting_prime(2, 257).unwrap();
        GradedAction::new(Arc::new(character_rep(&g, f, &[1]).unwrap()))
    }

    #[test]
    fn sign_examples() {
        let a = sign_action();
        let f = a.field();
        let s = a.rep().group().generators()[0];
        let x2 = Form::from_exponents(&[2]);
        let x3 = Form::from_exponents(&[3]);
        assert_eq!(a.act(0, &x3).unwrap(), x3);
        assert_eq!(a.act(s, &x2).unwrap(), x2);
        assert_eq!(a.act(s, &x3).unwrap(), x3.scale(f.p() - 1, &f));
    }

    fn dihedral_action() -> GradedAction {
        let g = catalog(&CatalogGroup::Dihedral(4)).unwrap();
        let f = choose_splitting_prime(g.exponent(), 257).unwrap();
        let h = subgroup(&g, &[g.generators()[0]]).unwrap();
        let w = induce(&h, &character_rep(h.table(), f, &[1]).unwrap()).unwrap();
        let sum = crate::rep::direct_sum(&w, &regular_rep(&g, f)).unwrap();
        GradedAction::new(Arc::new(sum))
    }

    fn random_form(nvars: usize, degree: u32, seed: &[(u32, u32)], f: &PrimeField) -> Form {
        let count = basis(nvars, degree).unwrap().count() as u32;
        Form::from_terms(nvars, degree, seed.iter().map(|&(i, c)| (i % count, c % f.p())).collect(), f)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn act_is_algebra_map_and_action(
            g in 0u32..8, h in 0u32..8,
            su in prop::collection::vec((any::<u32>(), any::<u32>()), 1..5),
            sv in prop::collection::vec((any::<u32>(), any::<u32>()), 1..5),
        ) {
            let a = dihedral_action();
            let f = a.field();
            let n = a.nvars();
            let u = random_form(n, 2, &su, &f);
            let v = random_form(n, 1, &sv, &f);
            let uv = multiply(&u, &v, &f).unwrap();
            prop_assert_eq!(a.act(g, &uv).unwrap(), multiply(&a.act(g, &u).unwrap(), &a.act(g, &v).unwrap(), &f).unwrap());
            let gh = a.rep().group().mul(g, h);
            prop_assert_eq!(a.act(g, &a.act(h, &u).unwrap()).unwrap(), a.act(gh, &u).unwrap());
        }
    }

    #[test]
    fn cache_matches_expansion() {
        let a = {
            let g = catalog(&CatalogGroup::Symmetric(3)).unwrap();
            let f = choose_splitting_prime(6, 257).unwrap();
            GradedAction::with_threshold(Arc::new(regular_rep(&g, f)), 2)
        };
        let f = a.field();
        let u = Form::from_terms(6, 3, vec![(0, 1), (5, 7), (30, 2), (55, 9)], &f);
        let direct: Vec<Form> = (0..6).map(|g| a.act(g, &u).unwrap()).collect();
        assert!(a.is_cached(3));
        for g in 0..6 {
            assert_eq!(a.act(g, &u).unwrap(), direct[g as usize]);
        }
    }
}
