//! Homogeneous ideals generated degree by degree, tracked through normal forms.
//!
//! For each degree `d` the chain keeps the standard monomials `B_d` (the non-pivots of
//! the ideal component `K_d`) and the normal form of every degree-`d` monomial over
//! `B_d`. Then `K_{d+1} = S_1·K_d + P_{d+1}` is computed on the candidates of degree
//! `d + 1`, the monomials all of whose divisors are standard. Every other monomial is
//! rewritten through one of its nonstandard divisors; rewriting through another one
//! gives a relation. No dense component of `S` is ever formed.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::graded::form::Form;
use crate::graded::monomial::basis;
use crate::graded::subspace::{Accumulator, Echelon, Subspace};

const NONE: u32 = u32::MAX;
const RELATION_CHUNK: usize = 4096;

#[derive(Debug, Clone)]
struct Level {
    standard: Vec<u32>,
    /// Position in `standard` of every monomial, or `NONE`.
    pos: Vec<u32>,
    /// Normal form over positions of `standard`; empty when the whole component lies in the ideal.
    nf: Vec<Vec<(u32, u32)>>,
}

impl Level {
    fn nf(&self, m: u32) -> &[(u32, u32)] {
        self.nf.get(m as usize).map_or(&[], |v| v.as_slice())
    }

    fn is_standard(&self, m: u32) -> bool {
        self.pos.get(m as usize).is_some_and(|&p| p != NONE)
    }

    fn exhausted() -> Level {
        Level { standard: Vec::new(), pos: Vec::new(), nf: Vec::new() }
    }
}

/// A homogeneous ideal of `F_p[x_0..x_{n-1}]`, known up to the last degree stepped to.
#[derive(Debug, Clone)]
pub struct IdealChain {
    nvars: usize,
    field: PrimeField,
    levels: Vec<Level>,
}

impl IdealChain {
    /// The zero ideal, known in degree 0.
    pub fn new(nvars: usize, field: PrimeField) -> Self {
        let base = Level { standard: vec![0], pos: vec![0], nf: vec![vec![(0, 1)]] };
        IdealChain { nvars, field, levels: vec![base] }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Highest degree computed so far.
    pub fn top(&self) -> u32 {
        self.levels.len() as u32 - 1
    }

    /// Whether the top component already fills its degree; then so do all later ones.
    pub fn is_exhausted(&self) -> bool {
        self.levels.last().is_some_and(|l| l.standard.is_empty())
    }

    /// `dim S_d / K_d`, if degree `d` has been computed.
    pub fn quotient_dim(&self, degree: u32) -> Option<usize> {
        self.levels.get(degree as usize).map(|l| l.standard.len())
    }

    /// Standard monomials (ranks) of degree `d`.
    pub fn standard_monomials(&self, degree: u32) -> Option<&[u32]> {
        self.levels.get(degree as usize).map(|l| l.standard.as_slice())
    }

    /// Adds degree `top + 1`, with `generators` the new generators in that degree.
    pub fn step(&mut self, generators: &[Form]) -> Result<()> {
        let d = self.top();
        for g in generators {
            if g.nvars() != self.nvars || g.degree() != d + 1 {
                return Err(Error::Precondition(format!("generator is not a form of degree {} in {} variables", d + 1, self.nvars)));
            }
        }
        let next = self.advance(d, generators)?;
        self.levels.push(next);
        Ok(())
    }

    fn advance(&self, d: u32, generators: &[Form]) -> Result<Level> {
        let prev = &self.levels[d as usize];
        if prev.standard.is_empty() {
            return Ok(Level::exhausted());
        }
        let f = self.field;
        let n = self.nvars;
        let lower = basis(n, d)?;
        let upper = basis(n, d + 1)?;
        let count = upper.count();

        // candidates and, for the others, their nonstandard divisors
        let mut cand_pos = vec![NONE; count];
        let mut candidates = Vec::new();
        let mut routes: Vec<Vec<(usize, u32)>> = vec![Vec::new(); count];
        for m in 0..count as u32 {
            let mut route = Vec::new();
            for j in 0..n {
                if let Some(q) = upper.divide_var(m, j) {
                    if !prev.is_standard(q) {
                        route.push((j, q));
                    }
                }
            }
            if route.is_empty() {
                cand_pos[m as usize] = candidates.len() as u32;
                candidates.push(m);
            } else {
                routes[m as usize] = route;
            }
        }
        if candidates.is_empty() {
            return Ok(Level::exhausted());
        }

        // red(m): m modulo S_1·K_d, written over the candidates
        let mut acc = Accumulator::new(candidates.len());
        let mut red: Vec<Vec<(u32, u32)>> = Vec::with_capacity(count);
        for m in 0..count as u32 {
            if cand_pos[m as usize] != NONE {
                red.push(vec![(cand_pos[m as usize], 1)]);
                continue;
            }
            let (j, q) = routes[m as usize][0];
            for &(bpos, c) in prev.nf(q) {
                let xb = lower.times_var(prev.standard[bpos as usize], j);
                debug_assert!(xb < m);
                acc.add_scaled(&f, &red[xb as usize], c);
            }
            red.push(acc.drain());
        }

        let through = |m: u32, j: usize, q: u32, acc: &mut Accumulator| -> Vec<(u32, u32)> {
            acc.add_scaled(&f, &red[m as usize], 1);
            for &(bpos, c) in prev.nf(q) {
                let xb = lower.times_var(prev.standard[bpos as usize], j);
                acc.add_scaled(&f, &red[xb as usize], f.neg(c));
            }
            acc.drain()
        };

        let mut ech = Echelon::new(f);
        let full = candidates.len();
        let multi: Vec<u32> = (0..count as u32).filter(|&m| routes[m as usize].len() > 1).collect();
        for chunk in multi.chunks(RELATION_CHUNK) {
            if ech.rank() == full {
                break;
            }
            let rels: Vec<Vec<(u32, u32)>> = chunk
                .par_iter()
                .map_init(
                    || Accumulator::new(full),
                    |acc, &m| {
                        let mut out = Vec::new();
                        for &(j, q) in &routes[m as usize][1..] {
                            let r = through(m, j, q, acc);
                            if !r.is_empty() {
                                out.push(r);
                            }
                        }
                        out
                    },
                )
                .flatten()
                .collect();
            for r in rels {
                if ech.rank() == full {
                    break;
                }
                ech.insert(&r);
            }
        }
        for g in generators {
            if ech.rank() == full {
                break;
            }
            for &(m, c) in g.terms() {
                acc.add_scaled(&f, &red[m as usize], c);
            }
            let v = acc.drain();
            ech.insert(&v);
        }
        if ech.rank() == full {
            return Ok(Level::exhausted());
        }

        let mut new_pos_of_cand = vec![NONE; full];
        let mut standard = Vec::new();
        for (k, &m) in candidates.iter().enumerate() {
            if !ech.is_pivot(k as u32) {
                new_pos_of_cand[k] = standard.len() as u32;
                standard.push(m);
            }
        }
        let mut pos = vec![NONE; count];
        for (k, &m) in standard.iter().enumerate() {
            pos[m as usize] = k as u32;
        }
        let nf: Vec<Vec<(u32, u32)>> = red
            .par_iter()
            .map(|r| {
                ech.reduce(r)
                    .into_iter()
                    .map(|(k, c)| (new_pos_of_cand[k as usize], c))
                    .collect()
            })
            .collect();
        Ok(Level { standard, pos, nf })
    }

    fn level(&self, degree: u32) -> Result<&Level> {
        self.levels
            .get(degree as usize)
            .ok_or_else(|| Error::Precondition(format!("degree {degree} has not been computed yet (top is {})", self.top())))
    }

    /// Normal form of a form whose degree has been computed: its remainder modulo the ideal.
    pub fn normal_form(&self, form: &Form) -> Result<Form> {
        if form.nvars() != self.nvars {
            return Err(Error::Precondition("form lives in a different ring".into()));
        }
        let level = self.level(form.degree())?;
        let f = self.field;
        let mut acc = Accumulator::new(level.standard.len().max(1));
        for &(m, c) in form.terms() {
            acc.add_scaled(&f, level.nf(m), c);
        }
        let terms = acc.drain().into_iter().map(|(k, c)| (level.standard[k as usize], c)).collect();
        Ok(Form::from_sorted(self.nvars, form.degree(), terms))
    }

    pub fn contains(&self, form: &Form) -> Result<bool> {
        Ok(self.normal_form(form)?.is_zero())
    }

    fn materialize(&self, level: &Level, degree: u32) -> Result<Subspace> {
        let count = basis(self.nvars, degree)?.count();
        let mut rows = Vec::with_capacity(count - level.standard.len());
        for m in 0..count as u32 {
            if level.is_standard(m) {
                continue;
            }
            let mut row: Vec<(u32, u32)> =
                level.nf(m).iter().map(|&(k, c)| (level.standard[k as usize], self.field.neg(c))).collect();
            debug_assert!(row.last().is_none_or(|t| t.0 < m));
            row.push((m, 1));
            rows.push(row);
        }
        Ok(Subspace::from_echelon(self.nvars, degree, Echelon::from_reduced_rows(self.field, rows)))
    }

    /// The component `K_d` in reduced echelon form.
    pub fn component(&self, degree: u32) -> Result<Subspace> {
        let level = self.level(degree)?;
        self.materialize(level, degree)
    }

    /// `S_1·K_{d-1}` inside degree `d`, for `1 <= d <= top + 1`.
    pub fn shifted_component(&self, degree: u32) -> Result<Subspace> {
        if degree == 0 || degree > self.top() + 1 {
            return Err(Error::Precondition(format!("shifted component in degree {degree} needs degree {} computed", degree.saturating_sub(1))));
        }
        let level = self.advance(degree - 1, &[])?;
        self.materialize(&level, degree)
    }

    /// Basis of `span(forms) ∩ K_d`, from the kernel of `f ↦ normal_form(f)` on the span.
    pub fn intersect_span(&self, degree: u32, forms: &[Form]) -> Result<Vec<Form>> {
        let shift = forms.len() as u32;
        let f = self.field;
        let mut ech = Echelon::new(f);
        let mut out = Subspace::new(self.nvars, degree, f);
        for (i, g) in forms.iter().enumerate() {
            if g.degree() != degree {
                return Err(Error::Precondition("forms of mixed degree".into()));
            }
            let rem = self.normal_form(g)?;
            let mut v: Vec<(u32, u32)> = vec![(i as u32, 1)];
            v.extend(rem.terms().iter().map(|&(j, c)| (j + shift, c)));
            let r = ech.reduce(&v);
            if r.last().is_some_and(|t| t.0 >= shift) {
                ech.push_reduced(r);
            } else {
                let mut combo = Form::zero(self.nvars, degree);
                for &(k, c) in &r {
                    combo = combo.add_scaled(&forms[k as usize], c, &f)?;
                }
                out.insert(&combo)?;
            }
        }
        Ok(out.basis())
    }

    /// `dim S_d / K_d` for `d = 0..=top`.
    pub fn hilbert_function(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.standard.len()).collect()
    }
}
