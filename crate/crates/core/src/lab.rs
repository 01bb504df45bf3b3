//! Degreewise verification of the subgroup and normal-subgroup lower bounds, with
//! concrete witnesses on failure.
//!
//! Module conventions: `Ind_H^G V` puts the identity-coset block first, so `S(V)` sits
//! on variables `0..dim V`. `U ⊕ Ind_N^G V` puts `U` first, then the blocks, so `S(U ⊕ V)`
//! sits on variables `0..dim U + dim V`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use crate::analysis::{CapPolicy, ModuleAnalysis};
use crate::coinvariants::IdealChain;
use crate::error::{Error, Result};
use crate::field::{choose_splitting_prime, default_floor, PrimeField};
use crate::graded::form::{kill_variables, Form};
use crate::graded::monomial::{basis, monomial_count};
use crate::graded::subspace::Subspace;
use crate::group::{catalog, permutation_group, quotient, subgroup_named, CatalogGroup, GroupTable, QuotientGroup, SubgroupHandle};
use crate::rep::{character_rep, direct_sum, induce, inflate, regular_rep, restrict, trivial_rep, Representation, VariableProjection};
use crate::report::{ComputationReport, Statement, TheoremInstance, Verdict};

type Shared = Arc<Mutex<ModuleAnalysis>>;

/// Analyses shared between checks, keyed by module fingerprint.
#[derive(Default)]
pub struct Lab {
    cache: Mutex<HashMap<String, Shared>>,
}

impl Lab {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn analysis(&self, rep: &Representation) -> Shared {
        let key = rep.fingerprint();
        let mut cache = self.cache.lock().unwrap();
        Arc::clone(cache.entry(key).or_insert_with(|| Arc::new(Mutex::new(ModuleAnalysis::from_rep(rep.clone())))))
    }

    fn beta(&self, rep: &Representation, k: u32) -> Result<u32> {
        Ok(self.analysis(rep).lock().unwrap().noether_number(k, CapPolicy::Default)?.value)
    }

    fn b(&self, rep: &Representation, k: u32) -> Result<u32> {
        Ok(self.analysis(rep).lock().unwrap().b_value(k)?.value)
    }
}

fn project(proj: &VariableProjection, forms: &[Form], nvars: usize, degree: u32, field: PrimeField) -> Result<Subspace> {
    let images: Vec<Form> = forms.iter().map(|f| kill_variables(proj, f)).collect::<Result<_>>()?;
    Subspace::span(nvars, degree, field, &images)
}

/// Degree-`d` monomials of `S(V)` as forms of `S(W)`, `V` on the first variables.
fn subring_monomials(vdim: usize, wdim: usize, degree: u32) -> Result<Vec<Form>> {
    let map: Vec<usize> = (0..vdim).collect();
    (0..basis(vdim, degree)?.count() as u32).map(|m| Form::monomial(vdim, degree, m, 1).embed(&map, wdim)).collect()
}

fn first_uncontained(space: &Subspace, forms: &[Form]) -> Result<Option<Form>> {
    for f in forms {
        if !space.contains(f)? {
            return Ok(Some(f.clone()));
        }
    }
    Ok(None)
}

fn induced_instance(statement: Statement, sub: &SubgroupHandle, v: &Representation, w: &Representation) -> TheoremInstance {
    let mut t = TheoremInstance::new(statement, sub.parent(), w.field().p()).module(w).module(v);
    t.subgroup = Some(sub.table().name().to_string());
    t
}

/// `π(S(W)^G_d) = S(V)^H_d` for `d <= d_max` (default: the larger of the two Noether numbers).
pub fn check_projection_identity(lab: &Lab, sub: &SubgroupHandle, v: &Representation, d_max: Option<u32>) -> Result<TheoremInstance> {
    let w = induce(sub, v)?;
    let mut t = induced_instance(Statement::ProjectionIdentity, sub, v, &w);
    let bound = match d_max {
        Some(d) => d,
        None => lab.beta(v, 1)?.max(lab.beta(&w, 1)?),
    };
    t.degree_bound = bound;
    let proj = VariableProjection::new(w.dim(), (0..v.dim()).collect())?;
    let (aw, av) = (lab.analysis(&w), lab.analysis(v));
    for d in 1..=bound {
        let left = {
            let inv = aw.lock().unwrap().invariants(d)?;
            project(&proj, &inv.basis(), v.dim(), d, w.field())?
        };
        let right = av.lock().unwrap().invariants(d)?;
        if !left.same_as(&right)? {
            let inter = left.dim_intersection(&right)?;
            t.verdict = Verdict::Fail {
                witness: format!(
                    "degree {d}: dim pi(Inv_d(W)) = {}, dim Inv_d(V) = {}, intersection {inter}",
                    left.dim(),
                    right.dim()
                ),
            };
            t.value("failing_degree", d);
            return Ok(t);
        }
    }
    t.verdict = Verdict::Pass;
    Ok(t)
}

fn intersection_containment(lab: &Lab, sub: &SubgroupHandle, v: &Representation, d_max: Option<u32>, statement: Statement) -> Result<TheoremInstance> {
    let w = induce(sub, v)?;
    let mut t = induced_instance(statement, sub, v, &w);
    let bound = match d_max {
        Some(d) => d,
        // beyond b(G,W)+1 both sides are full components
        None => lab.b(&w, 1)? + 2,
    };
    t.degree_bound = bound;
    let proj = VariableProjection::new(w.dim(), (0..v.dim()).collect())?;
    let (aw, av) = (lab.analysis(&w), lab.analysis(v));
    for d in 1..=bound {
        let right = av.lock().unwrap().hilbert_ideal(1, d - 1)?.shifted_component(d)?;
        let left = {
            let mut a = aw.lock().unwrap();
            let chain = a.hilbert_ideal(1, d)?;
            let mons = subring_monomials(v.dim(), w.dim(), d)?;
            chain.intersect_span(d, &mons)?
        };
        let left: Vec<Form> = left.iter().map(|f| kill_variables(&proj, f)).collect::<Result<_>>()?;
        if let Some(bad) = first_uncontained(&right, &left)? {
            t.verdict = Verdict::Fail {
                witness: format!("degree {d}: {} lies in the Hilbert ideal of W but not in S(V)^H_+ S(V)_+", bad.describe()),
            };
            t.value("failing_degree", d);
            return Ok(t);
        }
    }
    t.verdict = Verdict::Pass;
    Ok(t)
}

/// `K_d(W, G) ∩ S(V)_d ⊆ (S(V)^H_+ S(V)_+)_d` for `d <= d_max` (default `b(G, W) + 2`).
pub fn check_corollary_intersection(lab: &Lab, sub: &SubgroupHandle, v: &Representation, d_max: Option<u32>) -> Result<TheoremInstance> {
    if !sub.is_proper() {
        return Err(Error::Precondition("the intersection containment needs a proper subgroup".into()));
    }
    intersection_containment(lab, sub, v, d_max, Statement::IntersectionContainment)
}

/// The same containment with the properness hypothesis dropped. For `H = G` it is
/// expected to fail; the verdict records the first failing degree.
pub fn check_corollary_intersection_forced(lab: &Lab, sub: &SubgroupHandle, v: &Representation, d_max: Option<u32>) -> Result<TheoremInstance> {
    intersection_containment(lab, sub, v, d_max, Statement::PropernessControl)
}

/// `(S(W)^G_+)^k S(W) ∩ S(V)^H ⊆ (S(V)^H_+)^{k+1}` degreewise, up to
/// `max(b_k(G, W), β_k(H, V)) + 1`.
pub fn check_intersection_power(lab: &Lab, sub: &SubgroupHandle, v: &Representation, k: u32) -> Result<TheoremInstance> {
    let w = induce(sub, v)?;
    let mut t = induced_instance(Statement::IntersectionPower, sub, v, &w);
    t.k = Some(k);
    let bound = lab.b(&w, k)?.max(lab.beta(v, k)?) + 1;
    t.degree_bound = bound;
    let map: Vec<usize> = (0..v.dim()).collect();
    let proj = VariableProjection::new(w.dim(), map.clone())?;
    let (aw, av) = (lab.analysis(&w), lab.analysis(v));
    for d in 1..=bound {
        let (inv, power) = {
            let mut a = av.lock().unwrap();
            (a.invariants(d)?, a.power(k + 1, d)?)
        };
        let lifted: Vec<Form> = inv.basis().iter().map(|f| f.embed(&map, w.dim())).collect::<Result<_>>()?;
        let left = {
            let mut a = aw.lock().unwrap();
            a.hilbert_ideal(k, d)?.intersect_span(d, &lifted)?
        };
        let left: Vec<Form> = left.iter().map(|f| kill_variables(&proj, f)).collect::<Result<_>>()?;
        if let Some(bad) = first_uncontained(&power, &left)? {
            t.verdict = Verdict::Fail {
                witness: format!("degree {d}: invariant {} lies in the k-th Hilbert ideal of W but is not a product of {} invariants", bad.describe(), k + 1),
            };
            t.value("failing_degree", d);
            return Ok(t);
        }
    }
    t.verdict = Verdict::Pass;
    Ok(t)
}

/// `b_k(G, Ind V) >= β_k(H, V)`.
pub fn check_thm_betab(lab: &Lab, sub: &SubgroupHandle, v: &Representation, k: u32) -> Result<TheoremInstance> {
    if !sub.is_proper() {
        return Err(Error::Precondition("the induced lower bound needs a proper subgroup".into()));
    }
    let w = induce(sub, v)?;
    let mut t = induced_instance(Statement::InducedLowerBound, sub, v, &w);
    t.k = Some(k);
    let beta_h = lab.beta(v, k)?;
    let b_g = lab.b(&w, k)?;
    t.degree_bound = b_g + 1;
    t.value("beta_k(H,V)", beta_h);
    t.value("b_k(G,W)", b_g);
    t.verdict = if b_g >= beta_h {
        Verdict::Pass
    } else {
        Verdict::Fail { witness: format!("b_{k}(G,W) = {b_g} < beta_{k}(H,V) = {beta_h}") }
    };
    Ok(t)
}

/// `U ⊕ Ind_N^G V` with `U` inflated from `G/N`.
pub fn quotient_module(q: &QuotientGroup, u: &Representation, v: &Representation) -> Result<Representation> {
    let ui = inflate(u, q)?;
    let iv = induce(q.normal(), v)?;
    direct_sum(&ui, &iv)
}

fn quotient_instance(statement: Statement, q: &QuotientGroup, u: &Representation, v: &Representation, w: &Representation) -> TheoremInstance {
    let mut t = TheoremInstance::new(statement, q.parent(), w.field().p()).module(w).module(u).module(v);
    t.subgroup = Some(q.normal().table().name().to_string());
    t
}

/// `b_{r+s-1}(G, U ⊕ Ind V) >= b_r(G/N, U) + b_s(N, V)`.
pub fn check_thm_quotient(lab: &Lab, q: &QuotientGroup, u: &Representation, v: &Representation, r: u32, s: u32) -> Result<TheoremInstance> {
    if r == 0 || s == 0 {
        return Err(Error::Precondition("r and s must be positive".into()));
    }
    let w = quotient_module(q, u, v)?;
    let mut t = quotient_instance(Statement::QuotientLowerBound, q, u, v, &w);
    let k = r + s - 1;
    t.k = Some(k);
    let lhs = lab.b(&w, k)?;
    let bu = lab.b(u, r)?;
    let bv = lab.b(v, s)?;
    t.degree_bound = lhs + 1;
    t.value("r", r);
    t.value("s", s);
    t.value("b_{r+s-1}(G,W)", lhs);
    t.value("b_r(G/N,U)", bu);
    t.value("b_s(N,V)", bv);
    t.verdict = if lhs >= bu + bv {
        Verdict::Pass
    } else {
        Verdict::Fail { witness: format!("b_{k}(G,W) = {lhs} < {bu} + {bv}") }
    };
    Ok(t)
}

/// `S_d / (ideal)_d` dimensions agree and the projected ideal is contained in the target,
/// degree by degree, until both quotients vanish.
pub fn projected_hilbert_ideal_check(lab: &Lab, q: &QuotientGroup, u: &Representation, v: &Representation) -> Result<TheoremInstance> {
    let w = quotient_module(q, u, v)?;
    let mut t = quotient_instance(Statement::HilbertIdealImage, q, u, v, &w);
    let (du, dv) = (u.dim(), v.dim());
    let n = du + dv;
    let field = w.field();
    let proj = VariableProjection::new(w.dim(), (0..n).collect())?;
    let umap: Vec<usize> = (0..du).collect();
    let vmap: Vec<usize> = (du..n).collect();
    let (aw, au, av) = (lab.analysis(&w), lab.analysis(u), lab.analysis(v));
    let mut image = IdealChain::new(n, field);
    let mut target = IdealChain::new(n, field);
    let limit = q.parent().order() as u32 + 1;
    let mut d = 0;
    while !(image.is_exhausted() && target.is_exhausted()) {
        d += 1;
        if d > limit {
            return Err(Error::Inconsistent(format!("projected ideals do not fill degree {limit}")));
        }
        let from_w = aw.lock().unwrap().invariants(d)?.basis();
        let from_w: Vec<Form> = from_w.iter().map(|f| kill_variables(&proj, f)).collect::<Result<_>>()?;
        let mut gens: Vec<Form> = au.lock().unwrap().invariants(d)?.basis().iter().map(|f| f.embed(&umap, n)).collect::<Result<_>>()?;
        gens.extend(av.lock().unwrap().invariants(d)?.basis().iter().map(|f| f.embed(&vmap, n)).collect::<Result<Vec<_>>>()?);
        image.step(&from_w)?;
        target.step(&gens)?;
        for f in &from_w {
            if !target.contains(f)? {
                t.degree_bound = d;
                t.value("failing_degree", d);
                t.verdict = Verdict::Fail { witness: format!("degree {d}: projected invariant {} is outside the target ideal", f.describe()) };
                return Ok(t);
            }
        }
        let (a, b) = (image.quotient_dim(d).unwrap(), target.quotient_dim(d).unwrap());
        if a != b {
            t.degree_bound = d;
            t.value("failing_degree", d);
            t.verdict = Verdict::Fail { witness: format!("degree {d}: quotient by the image has dim {a}, by the target {b}") };
            return Ok(t);
        }
    }
    t.degree_bound = d;
    t.verdict = Verdict::Pass;
    Ok(t)
}

/// `β_k <= b_k + 1` with the β search run to the Noether bound `k|G|`.
pub fn check_beta_b_bridge(lab: &Lab, rep: &Representation, k: u32) -> Result<TheoremInstance> {
    let mut t = TheoremInstance::new(Statement::NoetherBridge, rep.group(), rep.field().p()).module(rep);
    t.k = Some(k);
    let a = lab.analysis(rep);
    let mut a = a.lock().unwrap();
    let beta = a.noether_number(k, CapPolicy::NoetherBound)?;
    let b = a.b_value(k)?.value;
    t.degree_bound = beta.cap;
    t.value("beta_k", beta.value);
    t.value("b_k", b);
    t.verdict = if beta.value <= b + 1 {
        Verdict::Pass
    } else {
        Verdict::Fail { witness: format!("beta_{k} = {} > b_{k} + 1 = {}", beta.value, b + 1) }
    };
    Ok(t)
}

/// Compares `β` of the first candidate module reaching `expected` with the closed form.
/// A smaller value moves on to the next candidate; a larger one is a failure.
pub fn check_known_value(lab: &Lab, group: &Arc<GroupTable>, candidates: &[Representation], expected: u32, note: &str) -> Result<TheoremInstance> {
    let prime = candidates.first().map_or(0, |c| c.field().p());
    let mut t = TheoremInstance::new(Statement::KnownValue, group, prime);
    t.value("expected", expected);
    let mut tried = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        let r = lab.analysis(c).lock().unwrap().noether_number(1, CapPolicy::Default)?;
        t = t.module(c);
        t.degree_bound = r.cap;
        tried.push(format!("{} -> {}", c.label(), r.value));
        t.value("beta", r.value);
        t.value("candidate", i as u32);
        if r.value > expected {
            t.verdict = Verdict::Fail { witness: format!("beta({}) = {} exceeds {expected}", c.label(), r.value) };
            break;
        }
        if r.value == expected {
            t.verdict = Verdict::Pass;
            break;
        }
        t.verdict = Verdict::Fail { witness: format!("no candidate reached {expected}: {}", tried.join(", ")) };
    }
    t.note = Some(if tried.len() > 1 { format!("{note}; escalated: {}", tried.join(", ")) } else { note.to_string() });
    Ok(t)
}

/// `β` strictly decreases along the listed modules (of a chain of subgroups).
pub fn check_monotonicity(lab: &Lab, chain: &[Representation]) -> Result<TheoremInstance> {
    let top = chain.first().ok_or_else(|| Error::Precondition("empty chain".into()))?;
    let mut t = TheoremInstance::new(Statement::SubgroupMonotonicity, top.group(), top.field().p());
    let mut values = Vec::new();
    for (i, rep) in chain.iter().enumerate() {
        let v = lab.beta(rep, 1)?;
        t = t.module(rep);
        t.value(&format!("beta_{i}"), v);
        values.push(v);
    }
    t.degree_bound = values.iter().copied().max().unwrap_or(0);
    t.verdict = if values.windows(2).all(|w| w[0] > w[1]) {
        Verdict::Pass
    } else {
        Verdict::Fail { witness: format!("values {values:?} are not strictly decreasing") }
    };
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteScale {
    Core,
    Stretch,
}

/// Field used throughout the suite for `G`.
pub fn suite_field(g: &GroupTable) -> Result<PrimeField> {
    choose_splitting_prime(g.exponent(), default_floor(g.order()))
}

/// `(G, H, V)` with `V` a character of `H`.
#[derive(Clone)]
pub struct InducedCase {
    pub name: String,
    pub sub: SubgroupHandle,
    pub v: Representation,
}

/// `(G, N, U, V)` with characters of `G/N` and `N`.
#[derive(Clone)]
pub struct QuotientCase {
    pub name: String,
    pub q: QuotientGroup,
    pub u: Representation,
    pub v: Representation,
}

fn named_sub(g: &Arc<GroupTable>, gens: &[u32], name: &str) -> Result<SubgroupHandle> {
    subgroup_named(g, gens, Some(name.to_string()))
}

fn induced_case(g: &Arc<GroupTable>, gens: &[u32], sub_name: &str, exps: &[i64]) -> Result<InducedCase> {
    let f = suite_field(g)?;
    let sub = named_sub(g, gens, sub_name)?;
    let v = if exps.is_empty() { trivial_rep(sub.table(), f, 1) } else { character_rep(sub.table(), f, exps)? };
    Ok(InducedCase { name: format!("{} > {} with {}", g.name(), sub_name, v.label()), sub, v })
}

fn alternating4() -> Result<Arc<GroupTable>> {
    permutation_group("A4", &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])
}

fn element_of_order(g: &GroupTable, order: u32) -> u32 {
    (0..g.order() as u32).find(|&x| g.element_order(x) == order).expect("element of the requested order")
}

/// Subgroup-module triples with `|G| <= 12`.
pub fn induced_catalog() -> Result<Vec<InducedCase>> {
    let cat = |c: CatalogGroup| catalog(&c);
    let mut out = Vec::new();
    let c4 = cat(CatalogGroup::Cyclic(4))?;
    out.push(induced_case(&c4, &[c4.pow(c4.generators()[0], 2)], "C2", &[1])?);
    let s3 = cat(CatalogGroup::Symmetric(3))?;
    out.push(induced_case(&s3, &[s3.generators()[0]], "C3", &[1])?);
    out.push(induced_case(&s3, &[s3.generators()[1]], "C2", &[1])?);
    out.push(induced_case(&s3, &[], "1", &[])?);
    let d6 = cat(CatalogGroup::Dihedral(3))?;
    out.push(induced_case(&d6, &[d6.generators()[0]], "C3", &[1])?);
    out.push(induced_case(&d6, &[d6.generators()[1]], "C2", &[1])?);
    let d8 = cat(CatalogGroup::Dihedral(4))?;
    out.push(induced_case(&d8, &[d8.generators()[0]], "C4", &[1])?);
    out.push(induced_case(&d8, &[d8.generators()[1]], "C2", &[1])?);
    let v4 = cat(CatalogGroup::Abelian(vec![2, 2]))?;
    out.push(induced_case(&v4, &[v4.generators()[0]], "C2", &[1])?);
    let c6 = cat(CatalogGroup::Cyclic(6))?;
    let x = c6.generators()[0];
    out.push(induced_case(&c6, &[c6.pow(x, 2)], "C3", &[1])?);
    out.push(induced_case(&c6, &[c6.pow(x, 3)], "C2", &[1])?);
    let q8 = cat(CatalogGroup::Quaternion8)?;
    out.push(induced_case(&q8, &[q8.generators()[0]], "C4", &[1])?);
    let d10 = cat(CatalogGroup::Dihedral(5))?;
    out.push(induced_case(&d10, &[d10.generators()[0]], "C5", &[1])?);
    let d12 = cat(CatalogGroup::Dihedral(6))?;
    out.push(induced_case(&d12, &[d12.generators()[0]], "C6", &[1])?);
    out.push(induced_case(&d12, &[d12.generators()[1]], "C2", &[1])?);
    let dic = cat(CatalogGroup::Semidirect { m: 3, k: 4, a: 2 })?;
    out.push(induced_case(&dic, &[dic.generators()[0]], "C3", &[1])?);
    out.push(induced_case(&dic, &[dic.generators()[1]], "C4", &[1])?);
    let c12 = cat(CatalogGroup::Cyclic(12))?;
    let y = c12.generators()[0];
    out.push(induced_case(&c12, &[c12.pow(y, 2)], "C6", &[1])?);
    out.push(induced_case(&c12, &[c12.pow(y, 3)], "C4", &[1])?);
    let a4 = alternating4()?;
    out.push(induced_case(&a4, &[element_of_order(&a4, 3)], "C3", &[1])?);
    let doubles: Vec<u32> = (0..12).filter(|&e| a4.element_order(e) == 2).collect();
    out.push(induced_case(&a4, &doubles[..2], "V4", &[1, 0])?);
    Ok(out)
}

fn quotient_case(g: &Arc<GroupTable>, gens: &[u32], n_name: &str, u_exps: &[i64], v_exps: &[i64]) -> Result<QuotientCase> {
    let f = suite_field(g)?;
    let n = named_sub(g, gens, n_name)?;
    let q = quotient(g, &n)?;
    let u = character_rep(q.table(), f, u_exps)?;
    let v = character_rep(n.table(), f, v_exps)?;
    Ok(QuotientCase { name: format!("{} > {} with U={} V={}", g.name(), n_name, u.label(), v.label()), q, u, v })
}

/// Normal-subgroup cases with `|G| <= 12`.
pub fn quotient_catalog() -> Result<Vec<QuotientCase>> {
    let cat = |c: CatalogGroup| catalog(&c);
    let mut out = Vec::new();
    let s3 = cat(CatalogGroup::Symmetric(3))?;
    out.push(quotient_case(&s3, &[s3.generators()[0]], "C3", &[1], &[1])?);
    let c4 = cat(CatalogGroup::Cyclic(4))?;
    out.push(quotient_case(&c4, &[c4.pow(c4.generators()[0], 2)], "C2", &[1], &[1])?);
    let v4 = cat(CatalogGroup::Abelian(vec![2, 2]))?;
    out.push(quotient_case(&v4, &[v4.generators()[0]], "C2", &[1], &[1])?);
    let c6 = cat(CatalogGroup::Cyclic(6))?;
    let x = c6.generators()[0];
    out.push(quotient_case(&c6, &[c6.pow(x, 2)], "C3", &[1], &[1])?);
    out.push(quotient_case(&c6, &[c6.pow(x, 3)], "C2", &[1], &[1])?);
    let d8 = cat(CatalogGroup::Dihedral(4))?;
    out.push(quotient_case(&d8, &[d8.generators()[0]], "C4", &[1], &[1])?);
    out.push(quotient_case(&d8, &[d8.pow(d8.generators()[0], 2)], "Z2", &[1, 1], &[1])?);
    let q8 = cat(CatalogGroup::Quaternion8)?;
    out.push(quotient_case(&q8, &[q8.generators()[0]], "C4", &[1], &[1])?);
    out.push(quotient_case(&q8, &[q8.pow(q8.generators()[0], 2)], "Z2", &[1, 0], &[1])?);
    let d10 = cat(CatalogGroup::Dihedral(5))?;
    out.push(quotient_case(&d10, &[d10.generators()[0]], "C5", &[1], &[1])?);
    let d12 = cat(CatalogGroup::Dihedral(6))?;
    out.push(quotient_case(&d12, &[d12.generators()[0]], "C6", &[1], &[1])?);
    out.push(quotient_case(&d12, &[d12.pow(d12.generators()[0], 2)], "C3", &[1, 1], &[1])?);
    let dic = cat(CatalogGroup::Semidirect { m: 3, k: 4, a: 2 })?;
    out.push(quotient_case(&dic, &[dic.generators()[0]], "C3", &[1], &[1])?);
    let c12 = cat(CatalogGroup::Cyclic(12))?;
    let y = c12.generators()[0];
    out.push(quotient_case(&c12, &[c12.pow(y, 3)], "C4", &[1], &[1])?);
    out.push(quotient_case(&c12, &[c12.pow(y, 2)], "C6", &[1], &[1])?);
    let a4 = alternating4()?;
    let doubles: Vec<u32> = (0..12).filter(|&e| a4.element_order(e) == 2).collect();
    out.push(quotient_case(&a4, &doubles[..2], "V4", &[1], &[1, 0])?);
    Ok(out)
}

/// `C_n` with the character `x ↦ ω x`.
pub fn cyclic_character(n: u32) -> Result<Representation> {
    let g = catalog(&CatalogGroup::Cyclic(n))?;
    character_rep(&g, suite_field(&g)?, &[1])
}

/// The 2-dimensional module of `D_{2n}` induced from a faithful character of the rotations.
pub fn dihedral_module(n: u32) -> Result<Representation> {
    let g = catalog(&CatalogGroup::Dihedral(n))?;
    let f = suite_field(&g)?;
    let rot = named_sub(&g, &[g.generators()[0]], &format!("C{n}"))?;
    induce(&rot, &character_rep(rot.table(), f, &[1])?)
}

/// Sum of all nontrivial characters of an abelian group with the given invariant factors.
pub fn nontrivial_characters(factors: &[u32]) -> Result<Representation> {
    let g = catalog(&CatalogGroup::Abelian(factors.to_vec()))?;
    let f = suite_field(&g)?;
    let mut exps: Vec<Vec<i64>> = vec![vec![]];
    for &n in factors {
        exps = exps.into_iter().flat_map(|e| (0..n as i64).map(move |i| [e.clone(), vec![i]].concat())).collect();
    }
    let mut acc: Option<Representation> = None;
    for e in exps.iter().filter(|e| e.iter().any(|&i| i != 0)) {
        let c = character_rep(&g, f, e)?;
        acc = Some(match acc {
            None => c,
            Some(a) => direct_sum(&a, &c)?,
        });
    }
    Ok(acc.expect("a nontrivial group").with_label(format!("nontrivial characters of {}", g.name())))
}

/// Candidate modules for `C_m ⋊ C_k`: `U ⊕ Ind_{C_m} χ` with `U` a growing sum of faithful
/// characters of the quotient, then the regular module.
pub fn semidirect_candidates(m: u32, k: u32, a: u32, with_regular: bool) -> Result<Vec<Representation>> {
    let g = catalog(&CatalogGroup::Semidirect { m, k, a })?;
    let f = suite_field(&g)?;
    let n = named_sub(&g, &[g.generators()[0]], &format!("C{m}"))?;
    let q = quotient(&g, &n)?;
    let ind = induce(&n, &character_rep(n.table(), f, &[1])?)?;
    let units: Vec<i64> = (1..k as i64).filter(|&e| crate::field::gcd(e as u64, k as u64) == 1).collect();
    let mut out = Vec::new();
    let mut u = inflate(&character_rep(q.table(), f, &[1])?, &q)?;
    out.push(direct_sum(&u, &ind)?);
    for &e in units.iter().skip(1) {
        u = direct_sum(&u, &inflate(&character_rep(q.table(), f, &[e])?, &q)?)?;
        out.push(direct_sum(&u, &ind)?);
    }
    if with_regular {
        out.push(regular_rep(&g, f));
    }
    Ok(out)
}

const BRIDGE_MONOMIAL_LIMIT: u64 = 20_000;

type Job = Box<dyn Fn(&Lab) -> Result<Vec<TheoremInstance>> + Send + Sync>;

fn job<F>(f: F) -> (String, Job)
where
    F: Fn(&Lab) -> Result<Vec<TheoremInstance>> + Send + Sync + 'static,
{
    (String::new(), Box::new(f))
}

fn named(name: String, (_, j): (String, Job)) -> (String, Job) {
    (name, j)
}

fn suite_jobs(scale: SuiteScale) -> Result<Vec<(String, Job)>> {
    let mut jobs: Vec<(String, Job)> = Vec::new();
    for case in induced_catalog()? {
        let c = case.clone();
        jobs.push(named(
            format!("induced {}", c.name),
            job(move |lab| {
                let mut out = vec![
                    check_projection_identity(lab, &c.sub, &c.v, None)?,
                    check_corollary_intersection(lab, &c.sub, &c.v, None)?,
                ];
                for k in 1..=2 {
                    out.push(check_thm_betab(lab, &c.sub, &c.v, k)?);
                    out.push(check_intersection_power(lab, &c.sub, &c.v, k)?);
                    let w = induce(&c.sub, &c.v)?;
                    // the search runs to k|G|; skip it where that degree is too wide
                    if monomial_count(w.dim(), k * w.group().order() as u32) <= BRIDGE_MONOMIAL_LIMIT {
                        out.push(check_beta_b_bridge(lab, &w, k)?);
                    }
                }
                Ok(out)
            }),
        ));
    }
    for case in quotient_catalog()? {
        let c = case.clone();
        jobs.push(named(
            format!("quotient {}", c.name),
            job(move |lab| {
                let mut out = vec![projected_hilbert_ideal_check(lab, &c.q, &c.u, &c.v)?];
                for (r, s) in [(1, 1), (1, 2), (2, 2)] {
                    out.push(check_thm_quotient(lab, &c.q, &c.u, &c.v, r, s)?);
                }
                Ok(out)
            }),
        ));
    }
    for n in 2..=6u32 {
        jobs.push(named(
            format!("properness control C{n}"),
            job(move |lab| {
                let v = cyclic_character(n)?;
                let whole = named_sub(v.group(), v.group().generators(), &format!("C{n}"))?;
                let vh = restrict(&v, &whole)?;
                let mut t = check_corollary_intersection_forced(lab, &whole, &vh, Some(n + 1))?;
                // x^n lies in the Hilbert ideal, while S^G_+ S_+ starts in degree n + 1
                t.verdict = match t.values.get("failing_degree") {
                    Some(&d) if d == n => {
                        t.note = Some(format!("containment fails at degree {n}, as it must for H = G"));
                        Verdict::Pass
                    }
                    Some(&d) => Verdict::Fail { witness: format!("containment failed at degree {d}, expected {n}") },
                    None => Verdict::Fail { witness: format!("containment held through degree {}", n + 1) },
                };
                Ok(vec![t])
            }),
        ));
    }
    for n in 3..=6u32 {
        jobs.push(named(
            format!("dihedral D{}", 2 * n),
            job(move |lab| {
                let w = dihedral_module(n)?;
                let mut t = check_known_value(lab, w.group(), std::slice::from_ref(&w), n, "dihedral two-dimensional module")?;
                let degs = lab.analysis(&w).lock().unwrap().noether_number(1, CapPolicy::Default)?.generator_degrees.unwrap_or_default();
                if t.verdict.is_pass() && degs != vec![2, n] {
                    t.verdict = Verdict::Fail { witness: format!("generator degrees {degs:?}") };
                }
                Ok(vec![t])
            }),
        ));
    }
    jobs.push(named(
        "Davenport values".into(),
        job(|lab| {
            let a = nontrivial_characters(&[2, 2])?;
            let b = nontrivial_characters(&[4, 2])?;
            Ok(vec![
                check_known_value(lab, a.group(), std::slice::from_ref(&a), 3, "C2xC2: 2 + 2 - 1")?,
                check_known_value(lab, b.group(), std::slice::from_ref(&b), 5, "C4xC2: 4 + 2 - 1")?,
            ])
        }),
    ));
    jobs.push(named(
        "index-two subgroup chain".into(),
        job(|lab| {
            let s3 = catalog(&CatalogGroup::Symmetric(3))?;
            let f = suite_field(&s3)?;
            let reg = regular_rep(&s3, f);
            let t = check_known_value(lab, &s3, std::slice::from_ref(&reg), 4, "S3 regular module: beta(C3) + 1")?;
            let chain = [reg, cyclic_character(3)?, cyclic_character(2)?];
            Ok(vec![t, check_monotonicity(lab, &chain)?])
        }),
    ));
    jobs.push(named(
        "cyclic closed forms".into(),
        job(|lab| {
            let mut out = Vec::new();
            for n in 1..=6u32 {
                let v = cyclic_character(n)?;
                for k in 1..=3 {
                    out.push(check_beta_b_bridge(lab, &v, k)?);
                }
            }
            Ok(out)
        }),
    ));
    if scale == SuiteScale::Stretch {
        jobs.push(named(
            "C5:C4".into(),
            job(|lab| {
                let c = semidirect_candidates(5, 4, 2, true)?;
                Ok(vec![check_known_value(lab, c[0].group(), &c, 8, "C5:C4 candidate modules: 5 + 4 - 1")?])
            }),
        ));
        jobs.push(named(
            "C7:C3".into(),
            job(|lab| {
                let c = semidirect_candidates(7, 3, 2, false)?;
                Ok(vec![check_known_value(lab, c[0].group(), &c, 9, "C7:C3 candidate modules: 7 + 2")?])
            }),
        ));
    }
    Ok(jobs)
}

/// Runs every check over the catalog. Independent jobs run on plain worker threads
/// (engine calls inside them use the rayon pool, and a pool thread never blocks on a
/// lock another job holds); the report keeps job order. An engine error inside a job
/// becomes a failing verdict.
pub fn run_paper_suite(scale: SuiteScale) -> Result<ComputationReport> {
    let start = Instant::now();
    let lab = Lab::new();
    let jobs = suite_jobs(scale)?;
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<(f64, Vec<TheoremInstance>)>>> = jobs.iter().map(|_| Mutex::new(None)).collect();
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(jobs.len()).max(1);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some((name, j)) = jobs.get(i) else { break };
                let t0 = Instant::now();
                let out = match j(&lab) {
                    Ok(v) => v,
                    Err(e) => vec![error_instance(name, &e)],
                };
                *slots[i].lock().unwrap() = Some((t0.elapsed().as_secs_f64() * 1e3, out));
            });
        }
    });
    let mut report = ComputationReport::default();
    for ((name, _), slot) in jobs.iter().zip(slots) {
        let (ms, out) = slot.into_inner().unwrap().expect("every job ran");
        report.timings.steps.insert(name.clone(), ms);
        report.verdicts.extend(out);
    }
    report.timings.total_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

fn error_instance(job: &str, e: &Error) -> TheoremInstance {
    let g = catalog(&CatalogGroup::Cyclic(1)).expect("trivial group");
    let mut t = TheoremInstance::new(Statement::KnownValue, &g, 0);
    t.group = job.to_string();
    t.verdict = Verdict::Fail { witness: format!("engine error: {e}") };
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::subgroup;

    #[test]
    fn projection_identity_examples() {
        let lab = Lab::new();
        let d6 = catalog(&CatalogGroup::Dihedral(3)).unwrap();
        let f = suite_field(&d6).unwrap();
        let rot = subgroup(&d6, &[d6.generators()[0]]).unwrap();
        let chi = character_rep(rot.table(), f, &[1]).unwrap();
        assert!(check_projection_identity(&lab, &rot, &chi, Some(6)).unwrap().verdict.is_pass());
        let whole = subgroup(&d6, d6.generators()).unwrap();
        let w = dihedral_module(3).unwrap();
        let t = check_projection_identity(&lab, &whole, &restrict(&w, &whole).unwrap(), Some(4)).unwrap();
        assert!(t.verdict.is_pass());
    }

    #[test]
    fn corollary_and_its_control() {
        let lab = Lab::new();
        let s3 = catalog(&CatalogGroup::Symmetric(3)).unwrap();
        let f = suite_field(&s3).unwrap();
        let c3 = subgroup(&s3, &[s3.generators()[0]]).unwrap();
        let chi = character_rep(c3.table(), f, &[1]).unwrap();
        assert!(check_corollary_intersection(&lab, &c3, &chi, Some(6)).unwrap().verdict.is_pass());
        let whole = subgroup(&s3, s3.generators()).unwrap();
        assert!(check_corollary_intersection(&lab, &whole, &chi, None).is_err());
        for n in 2..=5 {
            let v = cyclic_character(n).unwrap();
            let whole = subgroup(v.group(), v.group().generators()).unwrap();
            let vh = restrict(&v, &whole).unwrap();
            let t = check_corollary_intersection_forced(&lab, &whole, &vh, Some(n + 2)).unwrap();
            assert!(t.verdict.is_fail());
            assert_eq!(t.values["failing_degree"], n);
        }
    }

    #[test]
    fn inequalities_on_small_cases() {
        let lab = Lab::new();
        let s3 = catalog(&CatalogGroup::Symmetric(3)).unwrap();
        let f = suite_field(&s3).unwrap();
        let c3 = subgroup(&s3, &[s3.generators()[0]]).unwrap();
        let chi = character_rep(c3.table(), f, &[1]).unwrap();
        let t = check_thm_betab(&lab, &c3, &chi, 1).unwrap();
        assert_eq!((t.values["beta_k(H,V)"], t.values["b_k(G,W)"]), (3, 3));
        let q = quotient(&s3, &c3).unwrap();
        let sign = character_rep(q.table(), f, &[1]).unwrap();
        let t = check_thm_quotient(&lab, &q, &sign, &chi, 1, 1).unwrap();
        assert!(t.verdict.is_pass());
        assert_eq!((t.values["b_r(G/N,U)"], t.values["b_s(N,V)"]), (1, 2));
        let t = check_thm_quotient(&lab, &q, &sign, &chi, 1, 2).unwrap();
        assert_eq!(t.values["b_s(N,V)"], 5);
        assert!(t.verdict.is_pass());
        assert!(projected_hilbert_ideal_check(&lab, &q, &sign, &chi).unwrap().verdict.is_pass());
    }

    #[test]
    fn hilbert_image_degenerate_cases() {
        let lab = Lab::new();
        let s3 = catalog(&CatalogGroup::Symmetric(3)).unwrap();
        let f = suite_field(&s3).unwrap();
        // N = G, U = 0
        let whole = subgroup(&s3, s3.generators()).unwrap();
        let q = quotient(&s3, &whole).unwrap();
        let zero = trivial_rep(q.table(), f, 0);
        let reg = restrict(&regular_rep(&s3, f), &whole).unwrap();
        assert!(projected_hilbert_ideal_check(&lab, &q, &zero, &reg).unwrap().verdict.is_pass());
        // V = 0
        let c3 = subgroup(&s3, &[s3.generators()[0]]).unwrap();
        let q = quotient(&s3, &c3).unwrap();
        let sign = character_rep(q.table(), f, &[1]).unwrap();
        let none = trivial_rep(c3.table(), f, 0);
        assert!(projected_hilbert_ideal_check(&lab, &q, &sign, &none).unwrap().verdict.is_pass());
    }

    #[test]
    fn known_value_escalates() {
        let lab = Lab::new();
        let g = catalog(&CatalogGroup::Symmetric(3)).unwrap();
        let f = suite_field(&g).unwrap();
        let c3 = subgroup(&g, &[g.generators()[0]]).unwrap();
        let small = induce(&c3, &character_rep(c3.table(), f, &[1]).unwrap()).unwrap();
        let t = check_known_value(&lab, &g, &[small, regular_rep(&g, f)], 4, "test").unwrap();
        assert!(t.verdict.is_pass());
        assert_eq!(t.values["candidate"], 1);
        assert!(t.note.unwrap().contains("escalated"));
    }
}
