//! Reynolds operators and bases of invariant components `S(W)^G_d`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::graded::form::{normalize_terms, Form};
use crate::graded::monomial::basis;
use crate::graded::subspace::{Echelon, Subspace};
use crate::graded::GradedAction;
use crate::group::SubgroupHandle;
use crate::rep::{same_group, Representation};

/// `τ^G(f) = (1/|G|) Σ_g g·f`.
pub fn reynolds(action: &GradedAction, f: &Form) -> Result<Form> {
    let field = action.field();
    let order = action.rep().group().order() as u32;
    let mut acc = Form::zero(f.nvars(), f.degree());
    for g in 0..order {
        acc = acc.add(&action.act(g, f)?, &field)?;
    }
    Ok(acc.scale(field.inv(field.from_u64(order as u64)), &field))
}

/// `τ_N^G(m) = (1/|G:N|) Σ_{c ∈ C} c⁻¹·m` for an `N`-invariant `m`.
pub fn relative_reynolds(action: &GradedAction, normal: &SubgroupHandle, f: &Form) -> Result<Form> {
    if !same_group(action.rep().group(), normal.parent()) {
        return Err(Error::Mismatch);
    }
    if !normal.is_normal() {
        return Err(Error::Precondition("relative Reynolds operator needs a normal subgroup".into()));
    }
    for &n in normal.elements() {
        if action.act(n, f)? != *f {
            return Err(Error::NotInvariant);
        }
    }
    let field = action.field();
    let group = action.rep().group();
    let mut acc = Form::zero(f.nvars(), f.degree());
    for &c in normal.coset_reps() {
        acc = acc.add(&action.act(group.inv(c), f)?, &field)?;
    }
    let index = field.from_u64(normal.index() as u64);
    Ok(acc.scale(field.inv(index), &field))
}

fn reynolds_of_monomial(action: &GradedAction, degree: u32, m: u32) -> Result<Vec<(u32, u32)>> {
    let field = action.field();
    let order = action.rep().group().order() as u32;
    let mut terms = Vec::new();
    for g in 0..order {
        terms.extend(action.act_monomial(g, degree, m)?.into_terms());
    }
    let scale = field.inv(field.from_u64(order as u64));
    let mut t = normalize_terms(&field, terms);
    for x in t.iter_mut() {
        x.1 = field.mul(x.1, scale);
    }
    Ok(t)
}

/// Row-echelon basis of `S(W)^G_d`, spanned by the Reynolds images of the monomials.
///
/// For monomial modules each orbit of monomials contributes at most one orbit sum and
/// orbit sums have disjoint supports. Otherwise the images are computed in parallel and
/// assembled until the dimension predicted by the trace formula is reached.
pub fn invariant_basis(action: &GradedAction, degree: u32) -> Result<Subspace> {
    let rep = action.rep();
    let n = rep.dim();
    let field = rep.field();
    let b = basis(n, degree)?;
    let count = b.count();
    let expected = trace_dimension(rep, degree);
    let space = if rep.is_monomial() {
        let order = rep.group().order() as u32;
        let mut seen = vec![false; count];
        let mut rows = Vec::new();
        for m in 0..count as u32 {
            if seen[m as usize] {
                continue;
            }
            let mut terms = Vec::with_capacity(order as usize);
            for g in 0..order {
                let img = action.act_monomial(g, degree, m)?;
                let (r, c) = img.terms()[0];
                seen[r as usize] = true;
                terms.push((r, c));
            }
            let mut t = normalize_terms(&field, terms);
            if let Some(&(_, lead)) = t.last() {
                let s = field.inv(lead);
                for x in t.iter_mut() {
                    x.1 = field.mul(x.1, s);
                }
                rows.push(t);
            }
        }
        Subspace::from_echelon(n, degree, Echelon::from_reduced_rows(field, rows))
    } else {
        let exact = expected.filter(|_| (field.p() as usize) > count);
        let mut ech = Echelon::new(field);
        let chunk = 256usize;
        let mut start = 0usize;
        while start < count {
            if exact.is_some_and(|e| ech.rank() as u64 == e) {
                break;
            }
            let end = (start + chunk).min(count);
            let images: Vec<Vec<(u32, u32)>> = (start as u32..end as u32)
                .into_par_iter()
                .map(|m| reynolds_of_monomial(action, degree, m))
                .collect::<Result<_>>()?;
            for img in images {
                ech.insert(&img);
            }
            start = end;
        }
        Subspace::from_echelon(n, degree, ech)
    };
    if let Some(e) = expected {
        let p = field.p() as u64;
        if space.dim() as u64 % p != e {
            return Err(Error::Inconsistent(format!(
                "invariant dimension {} in degree {degree} disagrees with the trace formula ({e} mod {p})",
                space.dim()
            )));
        }
    }
    Ok(space)
}

/// Coefficients of `det(I - tA)`, via the Faddeev–LeVerrier recursion (needs `p > dim`).
fn reversed_charpoly(field: &PrimeField, dim: usize, a: &[u32]) -> Vec<u32> {
    let mut c = vec![0u32; dim + 1];
    c[dim] = 1;
    let mut m = vec![0u32; dim * dim];
    for k in 1..=dim {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![0u32; dim * dim];
        for i in 0..dim {
            for l in 0..dim {
                let ail = a[i * dim + l];
                if ail == 0 {
                    continue;
                }
                for j in 0..dim {
                    next[i * dim + j] = field.mul_add(next[i * dim + j], ail, m[l * dim + j]);
                }
            }
            next[i * dim + i] = field.add(next[i * dim + i], c[dim - k + 1]);
        }
        m = next;
        let mut tr = 0u32;
        for i in 0..dim {
            for l in 0..dim {
                tr = field.mul_add(tr, a[i * dim + l], m[l * dim + i]);
            }
        }
        let kinv = field.inv(field.from_u64(k as u64));
        c[dim - k] = field.neg(field.mul(tr, kinv));
    }
    (0..=dim).map(|j| c[dim - j]).collect()
}

/// `(1/|G|) Σ_g tr S^d(ρ(g))` in `F_p` for `d = 0..=max_degree`: the dimensions of the
/// invariant components modulo `p`. `None` when `p <= dim`.
pub fn trace_dimensions(rep: &Representation, max_degree: u32) -> Option<Vec<u64>> {
    let field = rep.field();
    let dim = rep.dim();
    if field.p() as usize <= dim {
        return None;
    }
    let order = rep.group().order() as u32;
    let mut total = vec![0u32; max_degree as usize + 1];
    for g in 0..order {
        let q = reversed_charpoly(&field, dim, rep.matrix(g));
        let mut h = vec![0u32; max_degree as usize + 1];
        h[0] = 1;
        for d in 1..=max_degree as usize {
            let mut s = 0u32;
            for j in 1..=d.min(dim) {
                s = field.mul_add(s, q[j], h[d - j]);
            }
            h[d] = field.neg(s);
        }
        for d in 0..=max_degree as usize {
            total[d] = field.add(total[d], h[d]);
        }
    }
    let inv = field.inv(field.from_u64(order as u64));
    Some(total.into_iter().map(|t| field.mul(t, inv) as u64).collect())
}

fn trace_dimension(rep: &Representation, degree: u32) -> Option<u64> {
    trace_dimensions(rep, degree).map(|v| v[degree as usize])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::choose_splitting_prime;
    use crate::graded::form::multiply;
    use crate::group::{catalog, subgroup, CatalogGroup};
    use crate::rep::{character_rep, direct_sum, induce, regular_rep, trivial_rep};
    use std::sync::Arc;

    /// Coefficients of `Π 1/(1 - t^{d_i})` up to `t^max`.
    fn series(degrees: &[usize], max: usize) -> Vec<u64> {
        let mut c = vec![0u64; max + 1];
        c[0] = 1;
        for &d in degrees {
            for i in d..=max {
                c[i] += c[i - d];
            }
        }
        c
    }

    fn dihedral(n: u32) -> GradedAction {
        let g = catalog(&CatalogGroup::Dihedral(n)).unwrap();
        let f = choose_splitting_prime(g.exponent(), 257).unwrap();
        let h = subgroup(&g, &[g.generators()[0]]).unwrap();
        GradedAction::new(Arc::new(induce(&h, &character_rep(h.table(), f, &[1]).unwrap()).unwrap()))
    }

    fn sign() -> GradedAction {
        let g = catalog(&CatalogGroup::Cyclic(2)).unwrap();
        let f = choose_splitting_prime(2, 257).unwrap();
        GradedAction::new(Arc::new(character_rep(&g, f, &[1]).unwrap()))
    }

    #[test]
    fn reynolds_examples() {
        let a = sign();
        assert_eq!(reynolds(&a, &Form::from_exponents(&[2])).unwrap(), Form::from_exponents(&[2]));
        assert!(reynolds(&a, &Form::from_exponents(&[3])).unwrap().is_zero());
        let t = catalog(&CatalogGroup::Cyclic(1)).unwrap();
        let f = choose_splitting_prime(1, 257).unwrap();
        let triv = GradedAction::new(Arc::new(trivial_rep(&t, f, 2)));
        let u = Form::from_terms(2, 2, vec![(0, 3), (2, 5)], &f);
        assert_eq!(reynolds(&triv, &u).unwrap(), u);
    }

    #[test]
    fn dihedral_degree_two_is_one_dimensional() {
        let a = dihedral(3);
        let imgs: Vec<Form> = (0..3).map(|m| reynolds(&a, &Form::monomial(2, 2, m, 1)).unwrap()).collect();
        let s = Subspace::span(2, 2, a.field(), &imgs).unwrap();
        assert_eq!(s.dim(), 1);
    }

    #[test]
    fn dihedral_dimensions_follow_molien_series() {
        for n in 3..=6u32 {
            let a = dihedral(n);
            let expect = series(&[2, n as usize], 12);
            for d in 1..=12u32 {
                assert_eq!(invariant_basis(&a, d).unwrap().dim() as u64, expect[d as usize], "n={n} d={d}");
            }
        }
        let a = dihedral(3);
        let dims: Vec<usize> = (1..=6).map(|d| invariant_basis(&a, d).unwrap().dim()).collect();
        assert_eq!(dims, vec![0, 1, 1, 1, 1, 2]);
    }

    #[test]
    fn sign_and_trivial_bases() {
        let a = sign();
        assert_eq!(invariant_basis(&a, 1).unwrap().dim(), 0);
        assert_eq!(invariant_basis(&a, 2).unwrap().dim(), 1);
        let g = catalog(&CatalogGroup::Cyclic(3)).unwrap();
        let f = choose_splitting_prime(3, 257).unwrap();
        let t = GradedAction::new(Arc::new(trivial_rep(&g, f, 3)));
        for d in 1..5 {
            assert_eq!(invariant_basis(&t, d).unwrap().dim(), basis(3, d).unwrap().count());
        }
    }

    /// A non-monomial module: the regular module of C3 in a conjugated basis.
    fn twisted_regular() -> GradedAction {
        let g = catalog(&CatalogGroup::Cyclic(3)).unwrap();
        let f = choose_splitting_prime(3, 257).unwrap();
        let reg = regular_rep(&g, f);
        // P = upper unitriangular with ones
        let p = [1u32, 1, 1, 0, 1, 1, 0, 0, 1];
        let pinv = [1u32, f.p() - 1, 0, 0, 1, f.p() - 1, 0, 0, 1];
        let mm = |a: &[u32], b: &[u32]| -> Vec<u32> {
            let mut o = vec![0u32; 9];
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        o[i * 3 + j] = f.mul_add(o[i * 3 + j], a[i * 3 + k], b[k * 3 + j]);
                    }
                }
            }
            o
        };
        let s = g.generators()[0];
        let img = mm(&mm(&p, reg.matrix(s)), &pinv);
        let rep = Representation::from_generator_images(&g, f, 3, &[img], "twisted").unwrap();
        assert!(!rep.is_monomial());
        GradedAction::new(Arc::new(rep))
    }

    #[test]
    fn general_path_agrees_with_monomial_path() {
        let twisted = twisted_regular();
        let g = catalog(&CatalogGroup::Cyclic(3)).unwrap();
        let f = choose_splitting_prime(3, 257).unwrap();
        let plain = GradedAction::new(Arc::new(regular_rep(&g, f)));
        for d in 1..=6 {
            assert_eq!(invariant_basis(&twisted, d).unwrap().dim(), invariant_basis(&plain, d).unwrap().dim());
        }
    }

    #[test]
    fn bases_are_invariant_and_reynolds_is_a_projection() {
        let g = catalog(&CatalogGroup::Symmetric(3)).unwrap();
        let f = choose_splitting_prime(6, 257).unwrap();
        let a = GradedAction::new(Arc::new(regular_rep(&g, f)));
        for d in 1..=3 {
            let s = invariant_basis(&a, d).unwrap();
            for v in s.basis() {
                for x in 0..6 {
                    assert_eq!(a.act(x, &v).unwrap(), v);
                }
                assert_eq!(reynolds(&a, &v).unwrap(), v);
            }
        }
        // module map: τ(f h) = f τ(h) for invariant f
        let inv2 = invariant_basis(&a, 2).unwrap().basis();
        let h = Form::from_terms(6, 1, vec![(0, 1), (3, 4)], &f);
        for inv in inv2 {
            let lhs = reynolds(&a, &multiply(&inv, &h, &f).unwrap()).unwrap();
            let rhs = multiply(&inv, &reynolds(&a, &h).unwrap(), &f).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn relative_reynolds_composes() {
        let g = catalog(&CatalogGroup::Symmetric(3)).unwrap();
        let f = choose_splitting_prime(6, 257).unwrap();
        let h = subgroup(&g, &[(0..6).find(|&x| g.element_order(x) == 2).unwrap()]).unwrap();
        let a = GradedAction::new(Arc::new(induce(&h, &character_rep(h.table(), f, &[1]).unwrap()).unwrap()));
        let c3 = subgroup(&g, &[(0..6).find(|&x| g.element_order(x) == 3).unwrap()]).unwrap();
        let sub_action = |v: &Form| -> Form {
            let mut acc = Form::zero(v.nvars(), v.degree());
            for &n in c3.elements() {
                acc = acc.add(&a.act(n, v).unwrap(), &f).unwrap();
            }
            acc.scale(f.inv(3), &f)
        };
        for seed in 0..10u32 {
            let v = Form::from_terms(3, 3, vec![(seed % 10, 1 + seed), ((seed * 7) % 10, 3)], &f);
            let tn = sub_action(&v);
            let lhs = relative_reynolds(&a, &c3, &tn).unwrap();
            assert_eq!(lhs, reynolds(&a, &v).unwrap());
        }
        let whole = subgroup(&g, g.generators()).unwrap();
        let inv = invariant_basis(&a, 2).unwrap().basis();
        assert_eq!(relative_reynolds(&a, &whole, &inv[0]).unwrap(), inv[0]);
        let trivial = subgroup(&g, &[]).unwrap();
        let v = Form::from_terms(3, 2, vec![(1, 1), (4, 2)], &f);
        assert_eq!(relative_reynolds(&a, &trivial, &v).unwrap(), reynolds(&a, &v).unwrap());
        assert_eq!(relative_reynolds(&a, &c3, &v), Err(Error::NotInvariant));
    }

    #[test]
    fn trace_dimensions_match_bases() {
        let g = catalog(&CatalogGroup::Abelian(vec![2, 2])).unwrap();
        let f = choose_splitting_prime(2, 257).unwrap();
        let w = [[1, 0], [0, 1], [1, 1]]
            .iter()
            .map(|e| character_rep(&g, f, e).unwrap())
            .reduce(|a, b| direct_sum(&a, &b).unwrap())
            .unwrap();
        let a = GradedAction::new(Arc::new(w));
        let t = trace_dimensions(a.rep(), 6).unwrap();
        for d in 1..=6 {
            assert_eq!(invariant_basis(&a, d).unwrap().dim() as u64, t[d as usize]);
        }
    }
}
