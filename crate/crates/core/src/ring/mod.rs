//! Exact arithmetic: arbitrary-precision integers, residues mod p, sparse
//! multivariate polynomials, univariate polynomials, and localizations at a
//! finite denominator set.

pub mod fp;
pub mod fq;
pub mod localized;
pub mod multipoly;
pub mod parse;
pub mod unipoly;

pub use fp::FpPoly;
pub use fq::{FqCtx, FqElem, MatFq};
pub use localized::{DenominatorSet, LocalizedElem};
pub use multipoly::{Monomial, MultiPoly};
pub use unipoly::{
    enumerate_irreducibles, gauss_irreducible_count, mobius, unipoly_eval_mod, UniPoly,
};

use crate::error::RingError;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::fmt;

/// Characteristic of the coefficient ring: 0 (integers) or a prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Char {
    Zero,
    Prime(u64),
}

impl Char {
    pub fn prime(self) -> Option<u64> {
        match self {
            Char::Zero => None,
            Char::Prime(p) => Some(p),
        }
    }

    pub fn check_same(self, other: Char) -> Result<(), RingError> {
        if self == other {
            Ok(())
        } else {
            Err(RingError::CharMismatch(self.to_string(), other.to_string()))
        }
    }
}

impl fmt::Display for Char {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Char::Zero => write!(f, "0"),
            Char::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// A single coefficient: an arbitrary-precision integer, or a residue in
/// `[0, p)` tagged with its prime modulus. Residues are always kept reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coefficient {
    Int(BigInt),
    Res { value: u64, modulus: u64 },
}

impl Coefficient {
    pub fn zero(ch: Char) -> Self {
        match ch {
            Char::Zero => Coefficient::Int(BigInt::zero()),
            Char::Prime(p) => Coefficient::Res { value: 0, modulus: p },
        }
    }

    pub fn one(ch: Char) -> Self {
        Self::from_i64(1, ch)
    }

    pub fn from_i64(v: i64, ch: Char) -> Self {
        match ch {
            Char::Zero => Coefficient::Int(BigInt::from(v)),
            Char::Prime(p) => {
                let r = v.rem_euclid(p as i64) as u64;
                Coefficient::Res { value: r, modulus: p }
            }
        }
    }

    pub fn from_bigint(v: BigInt, ch: Char) -> Self {
        match ch {
            Char::Zero => Coefficient::Int(v),
            Char::Prime(p) => {
                let m = BigInt::from(p);
                let mut r = v % &m;
                if r.is_negative() {
                    r += &m;
                }
                let digits = r.iter_u64_digits().next().unwrap_or(0);
                Coefficient::Res { value: digits, modulus: p }
            }
        }
    }

    pub fn characteristic(&self) -> Char {
        match self {
            Coefficient::Int(_) => Char::Zero,
            Coefficient::Res { modulus, .. } => Char::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Int(v) => v.is_zero(),
            Coefficient::Res { value, .. } => *value == 0,
        }
    }

    fn moduli_match(&self, other: &Self) -> u64 {
        match (self, other) {
            (Coefficient::Res { modulus: p, .. }, Coefficient::Res { modulus: q, .. }) if p == q => *p,
            _ => panic!("combined residues must share a modulus; callers validate characteristics first"),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Coefficient::Int(a), Coefficient::Int(b)) => Coefficient::Int(a + b),
            _ => {
                let p = self.moduli_match(other);
                let (a, b) = (self.res_value(), other.res_value());
                Coefficient::Res { value: (a + b) % p, modulus: p }
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        match (self, other) {
            (Coefficient::Int(a), Coefficient::Int(b)) => Coefficient::Int(a - b),
            _ => {
                let p = self.moduli_match(other);
                let (a, b) = (self.res_value(), other.res_value());
                Coefficient::Res { value: (a + p - b) % p, modulus: p }
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Coefficient::Int(a), Coefficient::Int(b)) => Coefficient::Int(a * b),
            _ => {
                let p = self.moduli_match(other);
                let (a, b) = (self.res_value() as u128, other.res_value() as u128);
                Coefficient::Res { value: ((a * b) % p as u128) as u64, modulus: p }
            }
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Coefficient::Int(a) => Coefficient::Int(-a),
            Coefficient::Res { value, modulus } => Coefficient::Res {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    fn res_value(&self) -> u64 {
        match self {
            Coefficient::Res { value, .. } => *value,
            Coefficient::Int(_) => unreachable!(),
        }
    }

    /// Absolute value, defined for characteristic zero only.
    pub fn abs_int(&self) -> Option<BigInt> {
        match self {
            Coefficient::Int(v) => Some(v.abs()),
            Coefficient::Res { .. } => None,
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Int(v) => write!(f, "{v}"),
            Coefficient::Res { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Deterministic primality test for u64 via trial division; moduli here stay
/// desk-scale so nothing fancier is warranted.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map(|s| s <= n).unwrap_or(false) {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Iterator over primes 2, 3, 5, ...
pub fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| is_prime(n))
}

/// Smallest prime that does not divide `n` (n nonzero).
pub fn smallest_prime_not_dividing(n: &BigInt) -> u64 {
    debug_assert!(!n.is_zero());
    primes()
        .find(|&p| !(n % BigInt::from(p)).is_zero())
        .expect("some prime always fails to divide a fixed nonzero integer")
}
