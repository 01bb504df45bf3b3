//! Monomials of a fixed degree, ranked by the combinatorial number system.
//!
//! A monomial in `n` variables of degree `d` is written as the sorted multiset of its
//! variable indices `i_1 <= ... <= i_d`; with `c_t = i_t + t - 1` its rank is
//! `Σ_t C(c_t, t)`. The induced order is a monomial order within each degree:
//! multiplying two monomials by the same variable preserves their relative order.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Upper bound on the number of monomials in one component.
pub const MAX_COMPONENT: u64 = 16_000_000;

const BINOM_N: usize = 320;
const BINOM_K: usize = 160;

fn binom_table() -> &'static Vec<u64> {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![0u64; BINOM_N * BINOM_K];
        for n in 0..BINOM_N {
            t[n * BINOM_K] = 1;
            for k in 1..BINOM_K.min(n + 1) {
                let a = t[(n - 1) * BINOM_K + k - 1];
                let b = if k < n { t[(n - 1) * BINOM_K + k] } else { 0 };
                t[n * BINOM_K + k] = a.saturating_add(b);
            }
        }
        t
    })
}

/// `C(n, k)`, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    if n < BINOM_N && k < BINOM_K {
        return binom_table()[n * BINOM_K + k];
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Number of degree-`d` monomials in `n` variables.
pub fn monomial_count(nvars: usize, degree: u32) -> u64 {
    if nvars == 0 {
        return (degree == 0) as u64;
    }
    binomial(nvars + degree as usize - 1, degree as usize)
}

/// Rank of the monomial with the given per-variable multiplicities.
pub fn rank_of<I: IntoIterator<Item = u32>>(multiplicities: I) -> u64 {
    let mut t = 0usize;
    let mut r = 0u64;
    for (i, a) in multiplicities.into_iter().enumerate() {
        for _ in 0..a {
            t += 1;
            r += binomial(i + t - 1, t);
        }
    }
    r
}

#[derive(Debug)]
pub struct MonomialBasis {
    nvars: usize,
    degree: u32,
    count: usize,
    exps: Vec<u8>,
    up: OnceLock<Vec<u32>>,
}

impl MonomialBasis {
    fn build(nvars: usize, degree: u32) -> Result<Self> {
        let count = monomial_count(nvars, degree);
        if count > MAX_COMPONENT || degree > 255 {
            return Err(Error::ComponentTooLarge { nvars, degree });
        }
        let count = count as usize;
        let mut exps = vec![0u8; count * nvars];
        for r in 0..count {
            let e = unrank(nvars, degree, r as u64);
            exps[r * nvars..(r + 1) * nvars].copy_from_slice(&e);
        }
        Ok(MonomialBasis { nvars, degree, count, exps, up: OnceLock::new() })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Exponent vector of the monomial of rank `i`.
    pub fn exps(&self, i: u32) -> &[u8] {
        let i = i as usize;
        &self.exps[i * self.nvars..(i + 1) * self.nvars]
    }

    pub fn rank(&self, exps: &[u8]) -> Option<u32> {
        if exps.len() != self.nvars || exps.iter().map(|&a| a as u32).sum::<u32>() != self.degree {
            return None;
        }
        Some(rank_of(exps.iter().map(|&a| a as u32)) as u32)
    }

    /// Rank in degree `d + 1` of `x_var` times monomial `i`.
    pub fn times_var(&self, i: u32, var: usize) -> u32 {
        let up = self.up.get_or_init(|| {
            let mut t = Vec::with_capacity(self.count * self.nvars);
            for r in 0..self.count as u32 {
                let e = self.exps(r);
                for v in 0..self.nvars {
                    t.push(rank_of(e.iter().enumerate().map(|(k, &a)| a as u32 + (k == v) as u32)) as u32);
                }
            }
            t
        });
        up[i as usize * self.nvars + var]
    }

    /// Rank in degree `d - 1` of the quotient by `x_var`, if `x_var` divides monomial `i`.
    pub fn divide_var(&self, i: u32, var: usize) -> Option<u32> {
        let e = self.exps(i);
        if e[var] == 0 {
            return None;
        }
        Some(rank_of(e.iter().enumerate().map(|(k, &a)| a as u32 - (k == var) as u32)) as u32)
    }

    /// Rank of the product of monomial `i` here and monomial `j` of `other`.
    pub fn product_rank(&self, i: u32, other: &MonomialBasis, j: u32) -> u32 {
        let (a, b) = (self.exps(i), other.exps(j));
        rank_of(a.iter().zip(b).map(|(&x, &y)| x as u32 + y as u32)) as u32
    }

    pub fn describe(&self, i: u32) -> String {
        let e = self.exps(i);
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(v, &a)| if a == 1 { format!("x{v}") } else { format!("x{v}^{a}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Exponent vector of the monomial of rank `r`.
pub fn unrank(nvars: usize, degree: u32, mut r: u64) -> Vec<u8> {
    let mut e = vec![0u8; nvars];
    if nvars == 0 {
        return e;
    }
    let mut hi = (nvars + degree as usize).saturating_sub(2);
    for t in (1..=degree as usize).rev() {
        let mut c = hi;
        while binomial(c, t) > r {
            c -= 1;
        }
        r -= binomial(c, t);
        e[c + 1 - t] += 1;
        hi = c.saturating_sub(1);
    }
    e
}

/// Shared basis for `(nvars, degree)`.
pub fn basis(nvars: usize, degree: u32) -> Result<Arc<MonomialBasis>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Arc<MonomialBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().unwrap().get(&(nvars, degree)) {
        return Ok(Arc::clone(b));
    }
    let b = Arc::new(MonomialBasis::build(nvars, degree)?);
    let mut guard = cache.lock().unwrap();
    Ok(Arc::clone(guard.entry((nvars, degree)).or_insert(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn stars_and_bars(n: u64, d: u64) -> u64 {
        // C(n + d - 1, n - 1) by the multiplicative formula
        if n == 0 {
            return (d == 0) as u64;
        }
        let mut acc = 1u64;
        for i in 1..n {
            acc = acc * (d + i) / i;
        }
        acc
    }

    #[test]
    fn counts_match_closed_form() {
        for n in 0..=12u64 {
            for d in 0..=12u64 {
                assert_eq!(monomial_count(n as usize, d as u32), stars_and_bars(n, d), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn small_orders() {
        let b = basis(2, 2).unwrap();
        let listed: Vec<&[u8]> = (0..3).map(|i| b.exps(i)).collect();
        assert_eq!(listed, vec![&[2u8, 0][..], &[1, 1], &[0, 2]]);
        let b0 = basis(3, 0).unwrap();
        assert_eq!(b0.count(), 1);
        assert_eq!(basis(0, 3).unwrap().count(), 0);
    }

    #[test]
    fn bijection_exhaustive() {
        for n in 1..=6 {
            for d in 0..=6 {
                let b = basis(n, d).unwrap();
                for i in 0..b.count() as u32 {
                    assert_eq!(b.rank(b.exps(i)), Some(i));
                }
            }
        }
    }

    #[test]
    fn order_is_multiplicative() {
        let b = basis(4, 3).unwrap();
        for i in 0..b.count() as u32 {
            for j in i + 1..b.count() as u32 {
                for v in 0..4 {
                    assert!(b.times_var(i, v) < b.times_var(j, v));
                }
            }
        }
    }

    #[test]
    fn division_inverts_multiplication() {
        let b = basis(3, 4).unwrap();
        let up = basis(3, 5).unwrap();
        for i in 0..b.count() as u32 {
            for v in 0..3 {
                assert_eq!(up.divide_var(b.times_var(i, v), v), Some(i));
            }
        }
    }

    proptest! {
        #[test]
        fn rank_unrank_roundtrip(n in 1usize..10, d in 0u32..10, seed in any::<u64>()) {
            let count = monomial_count(n, d);
            let r = seed % count;
            let e = unrank(n, d, r);
            prop_assert_eq!(e.iter().map(|&a| a as u32).sum::<u32>(), d);
            prop_assert_eq!(rank_of(e.iter().map(|&a| a as u32)), r);
        }
    }
}
