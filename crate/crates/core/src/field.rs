//! Arithmetic in a prime field `F_p` with `p < 2^31`.
//!
//! Field elements are stored as raw `u32` residues in `[0, p)` inside vectors and
//! matrices; [`Scalar`] is the checked wrapper handed out by the public API.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MODULUS_LIMIT: u64 = 1 << 31;

/// A residue in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Scalar(u32);

impl Scalar {
    pub fn value(self) -> u32 {
        self.0
    }
}

/// The prime field `F_p`, together with the exponent `m` it was chosen for
/// (`p = 1 mod m`, so `F_p` contains every `m`-th root of unity).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
    exponent_served: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Smallest prime `p >= floor` with `p = 1 mod group_exponent`.
pub fn choose_splitting_prime(group_exponent: u64, floor: u64) -> Result<PrimeField> {
    let exponent = group_exponent.max(1);
    let floor = floor.max(2);
    // first candidate >= floor congruent to 1 mod exponent
    let mut candidate = floor + (1 + exponent - floor % exponent) % exponent;
    while candidate < MODULUS_LIMIT {
        if is_prime(candidate) {
            return Ok(PrimeField { p: candidate as u32, exponent_served: exponent });
        }
        candidate += exponent;
    }
    Err(Error::NoSplittingPrime { exponent, floor })
}

/// The default floor for the prime search: `max(257, |G| + 1)`.
pub fn default_floor(group_order: usize) -> u64 {
    257.max(group_order as u64 + 1)
}

impl PrimeField {
    /// A field for an explicitly requested prime. The served exponent is `p - 1`.
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p as u64) || p as u64 >= MODULUS_LIMIT {
            return Err(Error::Precondition(format!("{p} is not a prime below 2^31")));
        }
        Ok(PrimeField { p, exponent_served: p as u64 - 1 })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn exponent_served(&self) -> u64 {
        self.exponent_served
    }

    /// Reduces a signed integer into the field.
    pub fn scalar(&self, v: i64) -> Scalar {
        Scalar(v.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + (self.p - b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// `a + b * c`.
    #[inline]
    pub fn mul_add(&self, a: u32, b: u32, c: u32) -> u32 {
        ((a as u64 + b as u64 * c as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let p = self.p as u64;
        let mut base = a as u64 % p;
        let mut acc = 1u64 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc as u32
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a % self.p != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    pub fn inverse(&self, a: Scalar) -> Option<Scalar> {
        (a.0 != 0).then(|| Scalar(self.inv(a.0)))
    }

    /// Image of an unsigned integer (e.g. a group order) in the field.
    pub fn from_u64(&self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }

    /// Multiplicative order of a nonzero residue.
    pub fn order(&self, a: u32) -> u64 {
        assert!(a != 0);
        let n = self.p as u64 - 1;
        let mut ord = n;
        for q in prime_factors(n) {
            while ord % q == 0 && self.pow(a, ord / q) == 1 {
                ord /= q;
            }
        }
        ord
    }

    /// Smallest generator of the multiplicative group.
    pub fn multiplicative_generator(&self) -> u32 {
        let n = self.p as u64 - 1;
        let factors = prime_factors(n);
        (1..self.p)
            .find(|&g| factors.iter().all(|&q| self.pow(g, n / q) != 1))
            .expect("a prime field has a primitive element")
    }

    /// The smallest residue of multiplicative order exactly `m`.
    pub fn primitive_root_of_unity(&self, m: u64) -> Result<Scalar> {
        let n = self.p as u64 - 1;
        if m == 0 || n % m != 0 {
            return Err(Error::NoRootOfUnity { p: self.p, m });
        }
        let base = self.pow(self.multiplicative_generator(), n / m);
        // the primitive m-th roots are exactly base^j with gcd(j, m) = 1
        let root = (1..=m)
            .filter(|&j| gcd(j, m) == 1)
            .map(|j| self.pow(base, j))
            .min()
            .expect("m >= 1");
        debug_assert_eq!(self.order(root), m);
        Ok(Scalar(root))
    }
}
