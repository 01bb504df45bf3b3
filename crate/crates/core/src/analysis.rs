//! Per-module cache shared by the Noether-number and coinvariant computations.
//!
//! A [`ModuleAnalysis`] owns the graded action of one representation and memoizes the
//! invariant components `Inv_d`, the product spaces `P^(j)_d = ((S^G_+)^j)_d` and the
//! ideal chains of `(S^G_+)^k S`. Whenever both `β_k` and `b_k` are known for the same
//! module the inequality `β_k <= b_k + 1` is evaluated and a violation is an error.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coinvariants::IdealChain;
use crate::error::{Error, Result};
use crate::graded::form::{multiply, Form};
use crate::graded::subspace::{Echelon, Subspace};
use crate::graded::GradedAction;
use crate::invariants::invariant_basis;
use crate::rep::Representation;

static BRIDGE_CHECKS: AtomicUsize = AtomicUsize::new(0);
static BRIDGE_SHARP_CHECKS: AtomicUsize = AtomicUsize::new(0);

/// Process-wide counts of `β_k <= b_k + 1` evaluations: all of them, and those where the
/// β search ran past `b_k + 1` so the inequality was not implied by the cap.
pub fn bridge_statistics() -> (usize, usize) {
    (BRIDGE_CHECKS.load(Ordering::Relaxed), BRIDGE_SHARP_CHECKS.load(Ordering::Relaxed))
}

/// How far the search for `β_k` runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "rule", content = "degree")]
pub enum CapPolicy {
    /// `k·|G|`, tightened to `b_k + 1` after computing `b_k`.
    Default,
    /// `k·|G|` without tightening.
    NoetherBound,
    /// A caller-chosen degree; the value is uncertified if it lies below the default.
    Explicit(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRow {
    pub degree: u32,
    pub invariants: usize,
    pub decomposable: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoetherResult {
    pub k: u32,
    pub value: u32,
    pub cap: u32,
    pub cap_rule: String,
    pub certified: bool,
    pub table: Vec<DegreeRow>,
    /// Degrees of a minimal generating set, with multiplicity (`k = 1` only).
    pub generator_degrees: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoinvariantResult {
    pub k: u32,
    pub value: u32,
    /// `dim (S/(S^G_+)^k S)_d` for `d = 0..=value`.
    pub hilbert_series: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeCheck {
    pub k: u32,
    pub beta: u32,
    pub b: u32,
    pub beta_cap: u32,
    pub holds: bool,
}

pub struct ModuleAnalysis {
    action: Arc<GradedAction>,
    fingerprint: String,
    inv: BTreeMap<u32, Arc<Subspace>>,
    powers: HashMap<(u32, u32), Arc<Subspace>>,
    chains: BTreeMap<u32, IdealChain>,
    beta: BTreeMap<u32, NoetherResult>,
    b: BTreeMap<u32, CoinvariantResult>,
    bridge: Vec<BridgeCheck>,
}

impl std::fmt::Debug for ModuleAnalysis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ModuleAnalysis").field("rep", &self.rep().label()).field("fingerprint", &self.fingerprint).finish()
    }
}

impl ModuleAnalysis {
    pub fn new(rep: Arc<Representation>) -> Self {
        let fingerprint = rep.fingerprint();
        ModuleAnalysis {
            action: Arc::new(GradedAction::new(rep)),
            fingerprint,
            inv: BTreeMap::new(),
            powers: HashMap::new(),
            chains: BTreeMap::new(),
            beta: BTreeMap::new(),
            b: BTreeMap::new(),
            bridge: Vec::new(),
        }
    }

    pub fn from_rep(rep: Representation) -> Self {
        Self::new(Arc::new(rep))
    }

    pub fn rep(&self) -> &Arc<Representation> {
        self.action.rep()
    }

    pub fn action(&self) -> &Arc<GradedAction> {
        &self.action
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    fn nvars(&self) -> usize {
        self.rep().dim()
    }

    fn order(&self) -> u32 {
        self.rep().group().order() as u32
    }

    /// `S(W)^G_d`.
    pub fn invariants(&mut self, degree: u32) -> Result<Arc<Subspace>> {
        if let Some(s) = self.inv.get(&degree) {
            return Ok(Arc::clone(s));
        }
        let s = Arc::new(invariant_basis(&self.action, degree)?);
        self.inv.insert(degree, Arc::clone(&s));
        Ok(s)
    }

    /// `((S^G_+)^j)_d`; `j = 1` gives the invariants themselves.
    pub fn power(&mut self, j: u32, degree: u32) -> Result<Arc<Subspace>> {
        if j == 0 {
            return Err(Error::Precondition("products of zero invariants".into()));
        }
        if j == 1 {
            return self.invariants(degree);
        }
        if let Some(s) = self.powers.get(&(j, degree)) {
            return Ok(Arc::clone(s));
        }
        let field = self.rep().field();
        let n = self.nvars();
        let inv_d = self.invariants(degree)?;
        let mut out = Subspace::new(n, degree, field);
        if degree >= j && inv_d.dim() > 0 {
            let target = inv_d.dim();
            let coord: HashMap<u32, u32> = inv_d.pivots().into_iter().enumerate().map(|(k, p)| (p, k as u32)).collect();
            let mut ech = Echelon::new(field);
            let mut kept: Vec<Form> = Vec::new();
            // the factor of smallest degree e satisfies e <= d / j
            'outer: for e in 1..=degree / j {
                let a = self.invariants(e)?;
                let b = self.power(j - 1, degree - e)?;
                if a.dim() == 0 || b.dim() == 0 {
                    continue;
                }
                let (abasis, bbasis) = (a.basis(), b.basis());
                let symmetric = j == 2 && 2 * e == degree;
                let pairs: Vec<(usize, usize)> = (0..abasis.len())
                    .flat_map(|x| (0..bbasis.len()).filter(move |&y| !symmetric || y >= x).map(move |y| (x, y)))
                    .collect();
                for chunk in pairs.chunks(1024) {
                    let prods: Vec<Form> = chunk
                        .par_iter()
                        .map(|&(x, y)| multiply(&abasis[x], &bbasis[y], &field))
                        .collect::<Result<_>>()?;
                    for p in prods {
                        let c: Vec<(u32, u32)> =
                            p.terms().iter().filter_map(|&(m, v)| coord.get(&m).map(|&k| (k, v))).collect();
                        if ech.insert(&c) {
                            kept.push(p);
                            if ech.rank() == target {
                                break 'outer;
                            }
                        }
                    }
                }
            }
            if ech.rank() == target {
                out = (*inv_d).clone();
            } else {
                out = Subspace::span(n, degree, field, &kept)?;
            }
        }
        let out = Arc::new(out);
        self.powers.insert((j, degree), Arc::clone(&out));
        Ok(out)
    }

    fn chain_to(&mut self, k: u32, degree: u32) -> Result<&IdealChain> {
        if k == 0 {
            return Err(Error::Precondition("k must be positive".into()));
        }
        let (n, field) = (self.nvars(), self.rep().field());
        let mut chain = self.chains.remove(&k).unwrap_or_else(|| IdealChain::new(n, field));
        let result = (|| {
            while chain.top() < degree {
                let next = chain.top() + 1;
                if chain.is_exhausted() {
                    chain.step(&[])?;
                    continue;
                }
                let gens = self.power(k, next)?.basis();
                chain.step(&gens)?;
            }
            Ok(())
        })();
        self.chains.insert(k, chain);
        result?;
        Ok(&self.chains[&k])
    }

    /// `K_d = ((S^G_+)^k S)_d`.
    pub fn hilbert_ideal_component(&mut self, k: u32, degree: u32) -> Result<Subspace> {
        self.chain_to(k, degree)?.component(degree)
    }

    /// The ideal chain of `(S^G_+)^k S`, computed at least through `degree`.
    pub fn hilbert_ideal(&mut self, k: u32, degree: u32) -> Result<&IdealChain> {
        self.chain_to(k, degree)
    }

    /// `b_k(G, W)` with the Hilbert series of `S/(S^G_+)^k S`.
    pub fn b_value(&mut self, k: u32) -> Result<CoinvariantResult> {
        if let Some(r) = self.b.get(&k) {
            return Ok(r.clone());
        }
        // S_+^{k|G|} lies in the ideal, so the quotient vanishes by degree k|G|
        let limit = k * self.order();
        let mut d = 0;
        loop {
            let chain = self.chain_to(k, d)?;
            if chain.is_exhausted() {
                break;
            }
            if d >= limit {
                return Err(Error::Inconsistent(format!("coinvariants of {} do not vanish by degree {limit}", self.rep().label())));
            }
            d += 1;
        }
        let series = self.chains[&k].hilbert_function();
        let last = series.iter().rposition(|&c| c > 0).unwrap_or(0);
        if series[..=last].iter().any(|&c| c == 0) {
            return Err(Error::Inconsistent("coinvariant dimension returned from zero".into()));
        }
        let r = CoinvariantResult { k, value: last as u32, hilbert_series: series[..=last].to_vec() };
        self.b.insert(k, r.clone());
        self.bridge_check(k)?;
        Ok(r)
    }

    /// `β_k(G, W)`: the top degree of `S^G / (S^G_+)^{k+1}` searched up to the cap.
    pub fn noether_number(&mut self, k: u32, policy: CapPolicy) -> Result<NoetherResult> {
        if k == 0 {
            return Err(Error::Precondition("k must be positive".into()));
        }
        let bound = k * self.order();
        let (cap, rule) = match policy {
            CapPolicy::Default => {
                let b = self.b_value(k)?.value;
                if b < bound {
                    (b + 1, "b_k+1".to_string())
                } else {
                    (bound, "k|G|".to_string())
                }
            }
            CapPolicy::NoetherBound => (bound, "k|G|".to_string()),
            CapPolicy::Explicit(c) => {
                if c == 0 {
                    return Err(Error::Precondition("degree cap must be at least 1".into()));
                }
                (c, "explicit".to_string())
            }
        };
        let sufficient = cap >= bound || self.b.get(&k).is_some_and(|r| cap > r.value);
        if let Some(prev) = self.beta.get(&k).filter(|p| p.cap == cap && p.cap_rule == rule) {
            return Ok(prev.clone());
        }
        let mut table = Vec::with_capacity(cap as usize);
        let mut value = 0;
        for d in 1..=cap {
            let inv = self.invariants(d)?.dim();
            let dec = self.power(k + 1, d)?.dim();
            if inv > dec {
                value = d;
            }
            table.push(DegreeRow { degree: d, invariants: inv, decomposable: dec });
        }
        let generator_degrees = (k == 1).then(|| {
            table.iter().flat_map(|r| std::iter::repeat_n(r.degree, r.invariants - r.decomposable)).collect()
        });
        let r = NoetherResult { k, value, cap, cap_rule: rule, certified: sufficient, table, generator_degrees };
        if r.certified {
            self.beta.insert(k, r.clone());
            self.bridge_check(k)?;
            self.monotonicity_check(k)?;
        }
        Ok(r)
    }

    fn bridge_check(&mut self, k: u32) -> Result<()> {
        let (Some(beta), Some(b)) = (self.beta.get(&k), self.b.get(&k)) else {
            return Ok(());
        };
        if self.bridge.iter().any(|c| c.k == k && c.beta_cap == beta.cap) {
            return Ok(());
        }
        let check =
            BridgeCheck { k, beta: beta.value, b: b.value, beta_cap: beta.cap, holds: beta.value <= b.value + 1 };
        BRIDGE_CHECKS.fetch_add(1, Ordering::Relaxed);
        if beta.cap > b.value + 1 {
            BRIDGE_SHARP_CHECKS.fetch_add(1, Ordering::Relaxed);
        }
        let holds = check.holds;
        self.bridge.push(check);
        if !holds {
            return Err(Error::Inconsistent(format!(
                "beta_{k} = {} exceeds b_{k} + 1 = {} for {}",
                beta.value,
                b.value + 1,
                self.rep().label()
            )));
        }
        Ok(())
    }

    fn monotonicity_check(&self, k: u32) -> Result<()> {
        let here = self.beta[&k].value;
        if let Some(lo) = k.checked_sub(1).and_then(|j| self.beta.get(&j)) {
            if lo.value > here {
                return Err(Error::Inconsistent(format!("beta_{} = {} exceeds beta_{k} = {here}", k - 1, lo.value)));
            }
        }
        if let Some(hi) = self.beta.get(&(k + 1)) {
            if here > hi.value {
                return Err(Error::Inconsistent(format!("beta_{k} = {here} exceeds beta_{} = {}", k + 1, hi.value)));
            }
        }
        Ok(())
    }

    /// Every `β_k <= b_k + 1` evaluation recorded for this module.
    pub fn bridge_checks(&self) -> &[BridgeCheck] {
        &self.bridge
    }

    /// Certified results computed so far.
    pub fn known_beta(&self, k: u32) -> Option<&NoetherResult> {
        self.beta.get(&k)
    }

    pub fn known_b(&self, k: u32) -> Option<&CoinvariantResult> {
        self.b.get(&k)
    }
}

/// `β_k(G, W)` on a fresh analysis.
pub fn noether_number(rep: &Representation, k: u32, policy: CapPolicy) -> Result<NoetherResult> {
    ModuleAnalysis::from_rep(rep.clone()).noether_number(k, policy)
}

/// `b_k(G, W)` on a fresh analysis.
pub fn b_value(rep: &Representation, k: u32) -> Result<CoinvariantResult> {
    ModuleAnalysis::from_rep(rep.clone()).b_value(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::choose_splitting_prime;
    use crate::group::{catalog, subgroup, CatalogGroup};
    use crate::rep::{character_rep, direct_sum, induce, regular_rep};

    fn cyclic_char(n: u32) -> Representation {
        let g = catalog(&CatalogGroup::Cyclic(n)).unwrap();
        let f = choose_splitting_prime(g.exponent(), 257).unwrap();
        character_rep(&g, f, &[1]).unwrap()
    }

    fn dihedral(n: u32) -> Representation {
        let g = catalog(&CatalogGroup::Dihedral(n)).unwrap();
        let f = choose_splitting_prime(g.exponent(), 257).unwrap();
        let h = subgroup(&g, &[g.generators()[0]]).unwrap();
        induce(&h, &character_rep(h.table(), f, &[1]).unwrap()).unwrap()
    }

    fn klein_three() -> Representation {
        let g = catalog(&CatalogGroup::Abelian(vec![2, 2])).unwrap();
        let f = choose_splitting_prime(2, 257).unwrap();
        [[1, 0], [0, 1], [1, 1]]
            .iter()
            .map(|e| character_rep(&g, f, e).unwrap())
            .reduce(|a, b| direct_sum(&a, &b).unwrap())
            .unwrap()
    }

    #[test]
    fn cyclic_closed_forms() {
        for n in 1..=6 {
            let mut a = ModuleAnalysis::from_rep(cyclic_char(n));
            for k in 1..=3 {
                let r = a.noether_number(k, CapPolicy::NoetherBound).unwrap();
                assert_eq!(r.value, k * n, "n={n} k={k}");
                assert!(r.certified);
                let b = a.b_value(k).unwrap();
                assert_eq!(b.value, k * n - 1);
                assert_eq!(b.hilbert_series, vec![1; (k * n) as usize]);
            }
            let r = a.noether_number(1, CapPolicy::Default).unwrap();
            assert_eq!(r.generator_degrees, Some(vec![n]));
        }
    }

    #[test]
    fn dihedral_generators_and_coinvariants() {
        for n in 3..=6 {
            let mut a = ModuleAnalysis::from_rep(dihedral(n));
            let r = a.noether_number(1, CapPolicy::NoetherBound).unwrap();
            assert_eq!(r.value, n);
            assert_eq!(r.generator_degrees, Some(vec![2, n]));
        }
        let mut a = ModuleAnalysis::from_rep(dihedral(3));
        let b = a.b_value(1).unwrap();
        assert_eq!(b.value, 3);
        assert_eq!(b.hilbert_series, vec![1, 2, 2, 1]);
        let dims: Vec<usize> = (1..=4).map(|d| a.hilbert_ideal_component(1, d).unwrap().dim()).collect();
        assert_eq!(dims, vec![0, 1, 3, 5]);
        assert!(a.bridge_checks().iter().all(|c| c.holds));
    }

    #[test]
    fn klein_generators() {
        let mut a = ModuleAnalysis::from_rep(klein_three());
        let r = a.noether_number(1, CapPolicy::Default).unwrap();
        assert_eq!(r.value, 3);
        assert_eq!(r.generator_degrees, Some(vec![2, 2, 2, 3]));
    }

    #[test]
    fn symmetric_regular_module() {
        let g = catalog(&CatalogGroup::Symmetric(3)).unwrap();
        let f = choose_splitting_prime(6, 257).unwrap();
        let mut a = ModuleAnalysis::from_rep(regular_rep(&g, f));
        assert_eq!(a.noether_number(1, CapPolicy::NoetherBound).unwrap().value, 4);
    }

    #[test]
    fn explicit_caps_are_labelled() {
        let mut a = ModuleAnalysis::from_rep(cyclic_char(5));
        let r = a.noether_number(1, CapPolicy::Explicit(3)).unwrap();
        assert!(!r.certified);
        assert_eq!(r.value, 0);
        let r = a.noether_number(1, CapPolicy::Explicit(5)).unwrap();
        assert!(r.certified);
        assert_eq!(r.value, 5);
    }

    #[test]
    fn ideal_powers_are_nested() {
        let mut a = ModuleAnalysis::from_rep(dihedral(4));
        for d in 1..=8 {
            let k1 = a.hilbert_ideal_component(1, d).unwrap();
            let k2 = a.hilbert_ideal_component(2, d).unwrap();
            assert!(k1.contains_subspace(&k2).unwrap());
            let inv = a.invariants(d).unwrap();
            assert!(k1.contains_subspace(&inv).unwrap());
            let p2 = a.power(2, d).unwrap();
            assert!(k2.contains_subspace(&p2).unwrap());
        }
    }

    #[test]
    fn zero_dimensional_module() {
        let g = catalog(&CatalogGroup::Cyclic(3)).unwrap();
        let f = choose_splitting_prime(3, 257).unwrap();
        let zero = crate::rep::trivial_rep(&g, f, 0);
        let mut a = ModuleAnalysis::from_rep(zero);
        assert_eq!(a.noether_number(1, CapPolicy::NoetherBound).unwrap().value, 0);
        assert_eq!(a.b_value(1).unwrap().value, 0);
        let one = crate::rep::trivial_rep(&g, f, 1);
        let mut a = ModuleAnalysis::from_rep(one);
        assert_eq!(a.noether_number(1, CapPolicy::NoetherBound).unwrap().value, 1);
        assert_eq!(a.b_value(1).unwrap().value, 0);
    }

    #[test]
    fn dimensions_do_not_depend_on_the_prime() {
        let g = catalog(&CatalogGroup::Dihedral(4)).unwrap();
        let p1 = choose_splitting_prime(4, 257).unwrap();
        let p2 = choose_splitting_prime(4, p1.p() as u64 + 1).unwrap();
        assert_ne!(p1.p(), p2.p());
        let dims = |f| {
            let mut a = ModuleAnalysis::from_rep(regular_rep(&g, f));
            (1..=5).map(|d| a.invariants(d).unwrap().dim()).collect::<Vec<_>>()
        };
        assert_eq!(dims(p1), dims(p2));
    }
}
