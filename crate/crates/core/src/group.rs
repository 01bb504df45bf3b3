//! Finite groups as explicit multiplication tables.
//!
//! Element `0` is always the identity. Products are `mul(a, b) = a·b`, and all
//! cosets and actions are on the left.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{gcd, lcm};

/// Default cap on the size of a closure.
pub const DEFAULT_CLOSURE_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    name: String,
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    generators: Vec<u32>,
    element_orders: Vec<u32>,
    exponent: u64,
    /// Elements `b_i` of orders `o_i` with `G = <b_1> x ... x <b_r>`, when known.
    abelian_basis: Option<Vec<(u32, u32)>>,
}

impl GroupTable {
    /// Builds a table from a full multiplication table (row-major, `mul[a * n + b] = a·b`).
    ///
    /// Checks the identity and inverse laws and that `generators` generate; associativity is
    /// checked separately by [`GroupTable::verify_associativity`].
    pub fn from_table(name: impl Into<String>, order: usize, mul: Vec<u32>, generators: Vec<u32>) -> Result<Self> {
        let name = name.into();
        if order == 0 || mul.len() != order * order {
            return Err(Error::InvalidGroup(format!("{name}: table has wrong shape")));
        }
        if mul.iter().any(|&x| x as usize >= order) {
            return Err(Error::InvalidGroup(format!("{name}: table entry out of range")));
        }
        for a in 0..order {
            if mul[a] as usize != a || mul[a * order] as usize != a {
                return Err(Error::InvalidGroup(format!("{name}: element 0 is not the identity")));
            }
        }
        let mut inv = vec![u32::MAX; order];
        for a in 0..order {
            let row = &mul[a * order..(a + 1) * order];
            if let Some(b) = row.iter().position(|&x| x == 0) {
                if mul[b * order + a] != 0 {
                    return Err(Error::InvalidGroup(format!("{name}: one-sided inverse for {a}")));
                }
                inv[a] = b as u32;
            } else {
                return Err(Error::InvalidGroup(format!("{name}: element {a} has no inverse")));
            }
        }
        if let Some(&g) = generators.iter().find(|&&g| g as usize >= order) {
            return Err(Error::ElementOutOfRange { index: g as usize, order });
        }
        let mut element_orders = vec![0u32; order];
        for a in 0..order {
            let mut x = a;
            let mut k = 1u32;
            while x != 0 {
                x = mul[x * order + a] as usize;
                k += 1;
                if k as usize > order + 1 {
                    return Err(Error::InvalidGroup(format!("{name}: element {a} has no finite order")));
                }
            }
            element_orders[a] = k;
        }
        let exponent = element_orders.iter().fold(1u64, |acc, &o| lcm(acc, o as u64));
        let table = GroupTable {
            name,
            order,
            mul,
            inv,
            generators,
            element_orders,
            exponent,
            abelian_basis: None,
        };
        if table.closure(&table.generators).len() != order {
            return Err(Error::InvalidGroup(format!("{}: generators do not generate", table.name)));
        }
        Ok(table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn element_order(&self, a: u32) -> u32 {
        self.element_orders[a as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        let e = e % self.element_order(a) as u64;
        (0..e).fold(0, |acc, _| self.mul(acc, a))
    }

    /// `g·x·g⁻¹`.
    pub fn conjugate(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Product of generators along a word of generator positions.
    pub fn word(&self, word: &[usize]) -> Result<u32> {
        word.iter().try_fold(0u32, |acc, &w| {
            let g = *self.generators.get(w).ok_or_else(|| {
                Error::InvalidGroup(format!("{}: no generator at position {w}", self.name))
            })?;
            Ok(self.mul(acc, g))
        })
    }

    /// Sorted element set of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut out = vec![0u32];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(g, x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn verify_associativity(&self) -> bool {
        let n = self.order as u32;
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)))))
    }

    pub fn abelian_basis(&self) -> Option<&[(u32, u32)]> {
        self.abelian_basis.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    fn with_abelian_basis(mut self, basis: Vec<(u32, u32)>) -> Self {
        self.abelian_basis = Some(basis);
        self
    }

    /// Finds a basis of an abelian group: the generators themselves when their orders
    /// multiply to `|G|`, otherwise a single element of order `|G|` if the group is cyclic.
    fn detect_abelian_basis(mut self) -> Self {
        if !self.is_abelian() {
            return self;
        }
        let gens: Vec<u32> = self.generators.iter().copied().filter(|&g| g != 0).collect();
        let product: usize = gens.iter().map(|&g| self.element_order(g) as usize).product();
        if product == self.order {
            self.abelian_basis = Some(gens.iter().map(|&g| (g, self.element_order(g))).collect());
            return self;
        }
        let full = gens
            .iter()
            .copied()
            .find(|&g| self.element_order(g) as usize == self.order)
            .or_else(|| (0..self.order as u32).find(|&g| self.element_order(g) as usize == self.order));
        if let Some(g) = full {
            self.abelian_basis = Some(vec![(g, self.order as u32)]);
        }
        self
    }
}

impl fmt::Display for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order)
    }
}

/// Breadth-first closure of a generator set under a composition rule.
///
/// Elements are indexed in discovery order with the identity at index 0. Returns the
/// table and the element values in index order.
pub fn close_group<T, F>(name: impl Into<String>, identity: T, gens: &[T], compose: F, cap: usize) -> Result<(GroupTable, Vec<T>)>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<T, u32> = HashMap::new();
    index.insert(identity, 0);
    let mut i = 0;
    while i < elements.len() {
        for g in gens {
            let y = compose(g, &elements[i]);
            if !index.contains_key(&y) {
                if elements.len() >= cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                index.insert(y.clone(), elements.len() as u32);
                elements.push(y);
            }
        }
        i += 1;
    }
    let n = elements.len();
    let mut mul = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            let c = compose(a, b);
            let k = *index
                .get(&c)
                .ok_or_else(|| Error::InvalidGroup("composition rule is not closed".into()))?;
            mul.push(k);
        }
    }
    let generators = gens.iter().map(|g| index[g]).collect();
    let table = GroupTable::from_table(name, n, mul, generators)?;
    Ok((table, elements))
}

/// Groups with closed-form constructions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CatalogGroup {
    Cyclic(u32),
    Abelian(Vec<u32>),
    /// Dihedral group of order `2n`.
    Dihedral(u32),
    Symmetric(u32),
    Quaternion8,
    /// `C_m ⋊ C_k` with `(i, j)(i', j') = (i + a^j i', j + j')`.
    Semidirect { m: u32, k: u32, a: u32 },
}

impl CatalogGroup {
    pub fn label(&self) -> String {
        match self {
            CatalogGroup::Cyclic(n) => format!("C{n}"),
            CatalogGroup::Abelian(ns) => ns.iter().map(|n| format!("C{n}")).collect::<Vec<_>>().join("x"),
            CatalogGroup::Dihedral(n) => format!("D{}", 2 * n),
            CatalogGroup::Symmetric(n) => format!("S{n}"),
            CatalogGroup::Quaternion8 => "Q8".into(),
            CatalogGroup::Semidirect { m, k, a } => format!("C{m}:C{k}[{a}]"),
        }
    }

    pub fn expected_order(&self) -> usize {
        match self {
            CatalogGroup::Cyclic(n) => *n as usize,
            CatalogGroup::Abelian(ns) => ns.iter().map(|&n| n as usize).product(),
            CatalogGroup::Dihedral(n) => 2 * *n as usize,
            CatalogGroup::Symmetric(n) => (1..=*n as usize).product(),
            CatalogGroup::Quaternion8 => 8,
            CatalogGroup::Semidirect { m, k, .. } => (*m * *k) as usize,
        }
    }
}

fn semidirect_table(name: String, m: u32, k: u32, a: u32) -> Result<GroupTable> {
    if m == 0 || k == 0 {
        return Err(Error::InvalidGroup("semidirect factors must be positive".into()));
    }
    let mm = m as u64;
    if gcd(a as u64 % mm, mm) != 1 && m > 1 {
        return Err(Error::InvalidGroup(format!("action {a} is not a unit mod {m}")));
    }
    let powers: Vec<u64> = (0..=k as u64).scan(1 % mm, |acc, _| {
        let cur = *acc;
        *acc = *acc * (a as u64 % mm) % mm;
        Some(cur)
    }).collect();
    if powers[k as usize] != 1 % mm {
        return Err(Error::InvalidGroup(format!("{a}^{k} is not 1 mod {m}")));
    }
    let compose = |x: &(u32, u32), y: &(u32, u32)| {
        let i = (x.0 as u64 + powers[x.1 as usize] * y.0 as u64) % mm;
        ((i as u32), (x.1 + y.1) % k)
    };
    let gens = [(1 % m, 0), (0, 1 % k)];
    let (t, _) = close_group(name, (0, 0), &gens, compose, DEFAULT_CLOSURE_CAP)?;
    Ok(t)
}

/// Constructs a catalog group.
pub fn catalog(which: &CatalogGroup) -> Result<Arc<GroupTable>> {
    let name = which.label();
    let table = match which {
        CatalogGroup::Cyclic(n) => {
            if *n == 0 {
                return Err(Error::InvalidGroup("cyclic group of order 0".into()));
            }
            let n = *n;
            let (t, _) = close_group(name, 0u32, &[1 % n], |a, b| (a + b) % n, DEFAULT_CLOSURE_CAP)?;
            let g = t.generators()[0];
            t.with_abelian_basis(vec![(g, n)])
        }
        CatalogGroup::Abelian(ns) => {
            if ns.is_empty() || ns.contains(&0) {
                return Err(Error::InvalidGroup("abelian factors must be positive".into()));
            }
            let r = ns.len();
            let gens: Vec<Vec<u32>> = (0..r)
                .map(|i| (0..r).map(|j| if i == j { 1 % ns[i] } else { 0 }).collect())
                .collect();
            let compose = |a: &Vec<u32>, b: &Vec<u32>| -> Vec<u32> {
                a.iter().zip(b).zip(ns).map(|((x, y), n)| (x + y) % n).collect()
            };
            let (t, _) = close_group(name, vec![0; r], &gens, compose, DEFAULT_CLOSURE_CAP)?;
            let basis = t.generators().iter().zip(ns).map(|(&g, &n)| (g, n)).collect();
            t.with_abelian_basis(basis)
        }
        CatalogGroup::Dihedral(n) => {
            if *n == 0 {
                return Err(Error::InvalidGroup("dihedral group needs n >= 1".into()));
            }
            semidirect_table(name, *n, 2, n - 1)?
        }
        CatalogGroup::Symmetric(n) => {
            if *n == 0 || *n > 6 {
                return Err(Error::InvalidGroup("symmetric groups are supported for 1 <= n <= 6".into()));
            }
            let n = *n as usize;
            let cycle: Vec<u8> = (0..n).map(|i| ((i + 1) % n) as u8).collect();
            let mut swap: Vec<u8> = (0..n as u8).collect();
            if n > 1 {
                swap.swap(0, 1);
            }
            let (t, _) = close_group(name, (0..n as u8).collect(), &[cycle, swap], compose_perm, DEFAULT_CLOSURE_CAP)?;
            t
        }
        CatalogGroup::Quaternion8 => {
            // i^a j^b with j i = i^-1 j and j^2 = i^2
            let compose = |x: &(u32, u32), y: &(u32, u32)| {
                let sign: i64 = if x.1 == 1 { -1 } else { 1 };
                let a = (x.0 as i64 + sign * y.0 as i64 + 2 * (x.1 * y.1) as i64).rem_euclid(4);
                (a as u32, (x.1 + y.1) % 2)
            };
            let (t, _) = close_group(name, (0, 0), &[(1, 0), (0, 1)], compose, DEFAULT_CLOSURE_CAP)?;
            t
        }
        CatalogGroup::Semidirect { m, k, a } => semidirect_table(name, *m, *k, *a)?,
    };
    let table = if table.abelian_basis.is_none() { table.detect_abelian_basis() } else { table };
    Ok(Arc::new(table))
}

/// `(σ·τ)(i) = σ(τ(i))`.
pub fn compose_perm(s: &Vec<u8>, t: &Vec<u8>) -> Vec<u8> {
    t.iter().map(|&i| s[i as usize]).collect()
}

/// The group generated by permutations given as 0-based image arrays of a common degree.
pub fn permutation_group(name: impl Into<String>, perms: &[Vec<usize>]) -> Result<Arc<GroupTable>> {
    let degree = perms.first().map_or(0, |p| p.len());
    if degree > 255 {
        return Err(Error::InvalidGroup("permutation degree above 255".into()));
    }
    let mut gens = Vec::with_capacity(perms.len());
    for p in perms {
        let mut seen = vec![false; degree];
        if p.len() != degree || p.iter().any(|&i| i >= degree || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::InvalidGroup("generator is not a permutation of the common degree".into()));
        }
        gens.push(p.iter().map(|&i| i as u8).collect::<Vec<u8>>());
    }
    let identity: Vec<u8> = (0..degree as u8).collect();
    let (t, _) = close_group(name, identity, &gens, compose_perm, DEFAULT_CLOSURE_CAP)?;
    Ok(Arc::new(t.detect_abelian_basis()))
}

/// A subgroup `H` with its left-coset representatives (identity first) and its own table.
#[derive(Debug, Clone)]
pub struct SubgroupHandle {
    parent: Arc<GroupTable>,
    elements: Vec<u32>,
    generators: Vec<u32>,
    coset_reps: Vec<u32>,
    coset_of: Vec<u32>,
    table: Arc<GroupTable>,
    embedding: Vec<u32>,
    own_index: Vec<u32>,
}

impl SubgroupHandle {
    pub fn parent(&self) -> &Arc<GroupTable> {
        &self.parent
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn index(&self) -> usize {
        self.coset_reps.len()
    }

    pub fn coset_reps(&self) -> &[u32] {
        &self.coset_reps
    }

    /// Index of the left coset `xH` containing `x`.
    pub fn coset_of(&self, x: u32) -> u32 {
        self.coset_of[x as usize]
    }

    pub fn contains(&self, x: u32) -> bool {
        self.own_index[x as usize] != u32::MAX
    }

    /// The subgroup as a group in its own right.
    pub fn table(&self) -> &Arc<GroupTable> {
        &self.table
    }

    /// Own index → parent index.
    pub fn embed(&self, own: u32) -> u32 {
        self.embedding[own as usize]
    }

    /// Parent index → own index, if the element lies in the subgroup.
    pub fn own(&self, x: u32) -> Option<u32> {
        let i = self.own_index[x as usize];
        (i != u32::MAX).then_some(i)
    }

    pub fn is_proper(&self) -> bool {
        self.order() < self.parent.order()
    }

    /// First pair `(g, n)` with `g` a parent generator and `g n g⁻¹ ∉ H`.
    pub fn normality_witness(&self) -> Option<(u32, u32, u32)> {
        for &g in self.parent.generators() {
            for &n in &self.elements {
                let c = self.parent.conjugate(g, n);
                if !self.contains(c) {
                    return Some((g, n, c));
                }
            }
        }
        None
    }

    pub fn is_normal(&self) -> bool {
        self.normality_witness().is_none()
    }
}

/// The subgroup generated by the given parent elements.
pub fn subgroup(parent: &Arc<GroupTable>, generator_indices: &[u32]) -> Result<SubgroupHandle> {
    subgroup_named(parent, generator_indices, None)
}

pub fn subgroup_named(parent: &Arc<GroupTable>, generator_indices: &[u32], name: Option<String>) -> Result<SubgroupHandle> {
    let n = parent.order();
    if let Some(&g) = generator_indices.iter().find(|&&g| g as usize >= n) {
        return Err(Error::ElementOutOfRange { index: g as usize, order: n });
    }
    let elements = parent.closure(generator_indices);
    let mut generators: Vec<u32> = Vec::new();
    for &g in generator_indices {
        if g != 0 && !generators.contains(&g) {
            generators.push(g);
        }
    }
    let mut coset_of = vec![u32::MAX; n];
    let mut coset_reps = Vec::new();
    for x in 0..n as u32 {
        if coset_of[x as usize] == u32::MAX {
            let c = coset_reps.len() as u32;
            for &h in &elements {
                coset_of[parent.mul(x, h) as usize] = c;
            }
            coset_reps.push(x);
        }
    }
    let name = name.unwrap_or_else(|| format!("<{}>", generators.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(",")));
    let (own, embedding) = close_group(name, 0u32, &generators, |a, b| parent.mul(*a, *b), n.max(1))?;
    let mut own_index = vec![u32::MAX; n];
    for (i, &x) in embedding.iter().enumerate() {
        own_index[x as usize] = i as u32;
    }
    Ok(SubgroupHandle {
        parent: Arc::clone(parent),
        elements,
        generators,
        coset_reps,
        coset_of,
        table: Arc::new(own.detect_abelian_basis()),
        embedding,
        own_index,
    })
}

/// `G/N` on the left cosets of a normal subgroup, in coset-representative order.
#[derive(Debug, Clone)]
pub struct QuotientGroup {
    parent: Arc<GroupTable>,
    normal: SubgroupHandle,
    table: Arc<GroupTable>,
    projection: Vec<u32>,
}

impl QuotientGroup {
    pub fn parent(&self) -> &Arc<GroupTable> {
        &self.parent
    }

    pub fn normal(&self) -> &SubgroupHandle {
        &self.normal
    }

    pub fn table(&self) -> &Arc<GroupTable> {
        &self.table
    }

    pub fn project(&self, x: u32) -> u32 {
        self.projection[x as usize]
    }
}

pub fn quotient(parent: &Arc<GroupTable>, normal: &SubgroupHandle) -> Result<QuotientGroup> {
    if !Arc::ptr_eq(parent, normal.parent()) {
        return Err(Error::Mismatch);
    }
    if let Some((g, n, conj)) = normal.normality_witness() {
        return Err(Error::NotNormal { g, n, conj });
    }
    let reps = normal.coset_reps();
    let q = reps.len();
    let mut mul = Vec::with_capacity(q * q);
    for &a in reps {
        for &b in reps {
            mul.push(normal.coset_of(parent.mul(a, b)));
        }
    }
    let mut generators = Vec::new();
    for &g in parent.generators() {
        let c = normal.coset_of(g);
        if c != 0 && !generators.contains(&c) {
            generators.push(c);
        }
    }
    let name = format!("{}/{}", parent.name(), normal.table().name());
    let table = GroupTable::from_table(name, q, mul, generators)?.detect_abelian_basis();
    let projection = (0..parent.order() as u32).map(|x| normal.coset_of(x)).collect();
    Ok(QuotientGroup {
        parent: Arc::clone(parent),
        normal: normal.clone(),
        table: Arc::new(table),
        projection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Arc<GroupTable> {
        catalog(&CatalogGroup::Symmetric(3)).unwrap()
    }

    #[test]
    fn closure_examples() {
        let (c3, _) = close_group("c3", vec![0u8, 1, 2], &[vec![1u8, 2, 0]], compose_perm, 100).unwrap();
        assert_eq!(c3.order(), 3);
        let g = permutation_group("s3", &[vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        assert_eq!(g.order(), 6);
        let trivial = permutation_group("1", &[]).unwrap();
        assert_eq!(trivial.order(), 1);
        let (t, _) = close_group("t", 0u32, &[], |a, b| a + b, 10).unwrap();
        assert_eq!(t.order(), 1);
    }

    #[test]
    fn closure_cap() {
        let err = close_group("c100", 0u32, &[1], |a, b| (a + b) % 100, 50).unwrap_err();
        assert_eq!(err, Error::GroupTooLarge { cap: 50 });
    }

    #[test]
    fn catalog_orders_and_exponents() {
        let cases = [
            (CatalogGroup::Cyclic(1), 1, 1),
            (CatalogGroup::Cyclic(12), 12, 12),
            (CatalogGroup::Abelian(vec![4, 2]), 8, 4),
            (CatalogGroup::Abelian(vec![2, 2]), 4, 2),
            (CatalogGroup::Dihedral(3), 6, 6),
            (CatalogGroup::Dihedral(4), 8, 4),
            (CatalogGroup::Dihedral(6), 12, 6),
            (CatalogGroup::Symmetric(3), 6, 6),
            (CatalogGroup::Symmetric(4), 24, 12),
            (CatalogGroup::Quaternion8, 8, 4),
            (CatalogGroup::Semidirect { m: 5, k: 4, a: 2 }, 20, 20),
            (CatalogGroup::Semidirect { m: 7, k: 3, a: 2 }, 21, 21),
            (CatalogGroup::Semidirect { m: 3, k: 4, a: 2 }, 12, 12),
        ];
        for (which, order, exponent) in cases {
            let g = catalog(&which).unwrap();
            assert_eq!(g.order(), order, "{which:?}");
            assert_eq!(g.order(), which.expected_order());
            assert_eq!(g.exponent(), exponent, "{which:?}");
            assert!(g.verify_associativity(), "{which:?}");
        }
    }

    #[test]
    fn nonabelian_semidirect() {
        let g = catalog(&CatalogGroup::Semidirect { m: 5, k: 4, a: 2 }).unwrap();
        assert!(!g.is_abelian());
        assert!(g.abelian_basis().is_none());
        assert!(catalog(&CatalogGroup::Semidirect { m: 5, k: 4, a: 3 }).is_ok());
        assert!(catalog(&CatalogGroup::Semidirect { m: 5, k: 3, a: 2 }).is_err());
        assert!(catalog(&CatalogGroup::Semidirect { m: 6, k: 2, a: 2 }).is_err());
    }

    #[test]
    fn quaternion_has_unique_involution() {
        let q = catalog(&CatalogGroup::Quaternion8).unwrap();
        let involutions = (0..8).filter(|&x| q.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
        assert!(!q.is_abelian());
    }

    #[test]
    fn subgroup_examples() {
        let g = s3();
        let three_cycle = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
        let h = subgroup(&g, &[three_cycle]).unwrap();
        assert_eq!(h.order(), 3);
        assert_eq!(h.index(), 2);
        let whole = subgroup(&g, g.generators()).unwrap();
        assert_eq!(whole.index(), 1);
        let c4 = catalog(&CatalogGroup::Cyclic(4)).unwrap();
        let two = (0..4).find(|&x| c4.element_order(x) == 2).unwrap();
        let h = subgroup(&c4, &[two]).unwrap();
        assert_eq!((h.order(), h.index()), (2, 2));
    }

    #[test]
    fn cosets_partition() {
        for which in [CatalogGroup::Dihedral(6), CatalogGroup::Quaternion8, CatalogGroup::Symmetric(4)] {
            let g = catalog(&which).unwrap();
            for x in 0..g.order() as u32 {
                let h = subgroup(&g, &[x]).unwrap();
                assert_eq!(h.order() * h.index(), g.order());
                assert_eq!(h.coset_reps()[0], 0);
                let mut count = vec![0; g.order()];
                for &c in h.coset_reps() {
                    for &e in h.elements() {
                        count[g.mul(c, e) as usize] += 1;
                    }
                }
                assert!(count.iter().all(|&c| c == 1));
                for own in 0..h.order() as u32 {
                    assert_eq!(h.own(h.embed(own)), Some(own));
                }
            }
        }
    }

    #[test]
    fn quotient_examples() {
        let g = s3();
        let r = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
        let n = subgroup(&g, &[r]).unwrap();
        let q = quotient(&g, &n).unwrap();
        assert_eq!(q.table().order(), 2);
        let c4 = catalog(&CatalogGroup::Cyclic(4)).unwrap();
        let n = subgroup(&c4, &[c4.pow(c4.generators()[0], 2)]).unwrap();
        assert_eq!(quotient(&c4, &n).unwrap().table().order(), 2);
        let t = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        let n = subgroup(&g, &[t]).unwrap();
        assert!(matches!(quotient(&g, &n), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn projection_is_homomorphism() {
        let g = catalog(&CatalogGroup::Dihedral(6)).unwrap();
        for x in 0..g.order() as u32 {
            let n = subgroup(&g, &[x]).unwrap();
            if let Ok(q) = quotient(&g, &n) {
                for a in 0..g.order() as u32 {
                    for b in 0..g.order() as u32 {
                        assert_eq!(q.project(g.mul(a, b)), q.table().mul(q.project(a), q.project(b)));
                    }
                }
            }
        }
    }

    #[test]
    fn derived_groups_find_abelian_bases() {
        let g = catalog(&CatalogGroup::Semidirect { m: 5, k: 4, a: 2 }).unwrap();
        let n = subgroup(&g, &[g.generators()[0]]).unwrap();
        assert_eq!(n.table().abelian_basis().unwrap().len(), 1);
        let q = quotient(&g, &n).unwrap();
        assert_eq!(q.table().abelian_basis().unwrap(), &[(q.project(g.generators()[1]), 4)]);
        let d8 = catalog(&CatalogGroup::Dihedral(4)).unwrap();
        let center = subgroup(&d8, &[d8.pow(d8.generators()[0], 2)]).unwrap();
        let klein = quotient(&d8, &center).unwrap();
        assert_eq!(klein.table().abelian_basis().unwrap().len(), 2);
    }
}
