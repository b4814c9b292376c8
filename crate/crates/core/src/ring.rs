//! Arithmetic in the chain ring `Z/p^eZ`.
//!
//! Every element of `Z/p^eZ` is either a unit (not divisible by `p`) or
//! nilpotent (divisible by `p`, and then its `e`-th power vanishes). The
//! elimination routines in [`crate::linalg`] rely on that dichotomy to pick
//! invertible pivots.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported modulus; products of two residues fit in a `u64`.
pub const MAX_MODULUS: u64 = (1 << 31) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("NotPrime: {0} is not a prime")]
    NotPrime(u64),
    #[error("Overflow: {p}^{e} exceeds the supported modulus bound 2^31 - 1")]
    Overflow { p: u64, e: u32 },
    #[error("BadExponent: the exponent must be at least 1")]
    BadExponent,
    #[error("NotAUnit: {value} is not invertible modulo {modulus}")]
    NotAUnit { value: u32, modulus: u32 },
    #[error("ParseError: ring must be written as \"p^e\" or \"p\", got {0:?}")]
    Parse(String),
}

/// A canonical residue in `[0, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[repr(transparent)]
pub struct Residue(u32);

impl Residue {
    pub const ZERO: Residue = Residue(0);
    pub const ONE: Residue = Residue(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Unit / nilpotent classification of a ring element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Unit,
    Nilpotent,
}

/// The ring `Z/p^eZ` with `p` prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RingRepr", into = "RingRepr")]
pub struct Ring {
    p: u32,
    e: u32,
    modulus: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingRepr {
    p: u64,
    e: u32,
}

impl TryFrom<RingRepr> for Ring {
    type Error = RingError;

    fn try_from(r: RingRepr) -> Result<Self, Self::Error> {
        Ring::new(r.p, r.e)
    }
}

impl From<Ring> for RingRepr {
    fn from(r: Ring) -> Self {
        RingRepr {
            p: r.p as u64,
            e: r.e,
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    /// Builds `Z/p^eZ`, checking primality of `p` by trial division.
    pub fn new(p: u64, e: u32) -> Result<Self, RingError> {
        if e == 0 {
            return Err(RingError::BadExponent);
        }
        if p > MAX_MODULUS {
            return Err(RingError::Overflow { p, e });
        }
        if !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        let mut modulus = 1u64;
        for _ in 0..e {
            modulus *= p;
            if modulus > MAX_MODULUS {
                return Err(RingError::Overflow { p, e });
            }
        }
        Ok(Ring {
            p: p as u32,
            e,
            modulus: modulus as u32,
        })
    }

    /// The prime field `F_p`.
    pub fn prime_field(p: u64) -> Result<Self, RingError> {
        Ring::new(p, 1)
    }

    #[inline]
    pub fn prime(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn exponent(&self) -> u32 {
        self.e
    }

    /// `m = p^e`, which is also the cardinality of the ring.
    #[inline]
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn is_field(&self) -> bool {
        self.e == 1
    }

    /// Reduces an arbitrary integer to its canonical residue.
    #[inline]
    pub fn elem(&self, v: i64) -> Residue {
        Residue(v.rem_euclid(self.modulus as i64) as u32)
    }

    /// Wraps `v` if it is already canonical.
    pub fn residue(&self, v: u64) -> Option<Residue> {
        (v < self.modulus as u64).then_some(Residue(v as u32))
    }

    #[inline]
    pub fn contains(&self, v: u64) -> bool {
        v < self.modulus as u64
    }

    #[inline]
    pub fn add(&self, a: Residue, b: Residue) -> Residue {
        let s = a.0 as u64 + b.0 as u64;
        Residue((s % self.modulus as u64) as u32)
    }

    #[inline]
    pub fn sub(&self, a: Residue, b: Residue) -> Residue {
        let m = self.modulus as u64;
        Residue(((a.0 as u64 + m - b.0 as u64) % m) as u32)
    }

    #[inline]
    pub fn neg(&self, a: Residue) -> Residue {
        self.sub(Residue::ZERO, a)
    }

    #[inline]
    pub fn mul(&self, a: Residue, b: Residue) -> Residue {
        Residue(((a.0 as u64 * b.0 as u64) % self.modulus as u64) as u32)
    }

    /// `acc + a * b`
    #[inline]
    pub fn mul_add(&self, acc: Residue, a: Residue, b: Residue) -> Residue {
        let m = self.modulus as u64;
        Residue(((acc.0 as u64 + a.0 as u64 * b.0 as u64) % m) as u32)
    }

    pub fn pow(&self, a: Residue, mut exp: u64) -> Residue {
        let mut base = a;
        let mut acc = Residue(1 % self.modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn classify(&self, a: Residue) -> Kind {
        if !a.0.is_multiple_of(self.p) {
            Kind::Unit
        } else {
            Kind::Nilpotent
        }
    }

    #[inline]
    pub fn is_unit(&self, a: Residue) -> bool {
        !a.0.is_multiple_of(self.p)
    }

    /// Inverse of a unit via the extended Euclidean algorithm on `(a, m)`.
    pub fn inverse(&self, a: Residue) -> Result<Residue, RingError> {
        if !self.is_unit(a) {
            return Err(RingError::NotAUnit {
                value: a.0,
                modulus: self.modulus,
            });
        }
        let (mut old_r, mut r) = (a.0 as i64, self.modulus as i64);
        let (mut old_s, mut s) = (1i64, 0i64);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        debug_assert_eq!(old_r, 1);
        Ok(self.elem(old_s))
    }

    /// `p^(e-1)`, the generator of the minimal ideal. Multiplying by it kills
    /// every nilpotent and keeps every unit nonzero.
    pub fn socle_generator(&self) -> Residue {
        Residue(self.modulus / self.p)
    }

    pub fn elements(&self) -> impl Iterator<Item = Residue> {
        (0..self.modulus).map(Residue)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.e)
    }
}

impl FromStr for Ring {
    type Err = RingError;

    /// Accepts `"p^e"` or a bare prime `"p"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RingError::Parse(s.to_string());
        let (p, e) = match s.trim().split_once('^') {
            Some((p, e)) => (p.trim(), e.trim()),
            None => (s.trim(), "1"),
        };
        let p: u64 = p.parse().map_err(|_| bad())?;
        let e: u32 = e.parse().map_err(|_| bad())?;
        Ring::new(p, e)
    }
}
