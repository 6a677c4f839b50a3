//! Univariate polynomials in the indeterminate `tau`, plus the counting and
//! enumeration machinery for monic irreducibles over prime fields.

use super::{fp::FpPoly, is_prime, Char, Coefficient};
use crate::error::RingError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// A univariate polynomial with `Coefficient` entries, stored densely in
/// ascending degree. Invariant: the last stored coefficient is nonzero
/// unless the polynomial is zero (empty vector).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    characteristic: Char,
    coeffs: Vec<Coefficient>,
}

impl UniPoly {
    pub fn zero(ch: Char) -> Self {
        UniPoly { characteristic: ch, coeffs: Vec::new() }
    }

    pub fn from_coeffs(ch: Char, mut coeffs: Vec<Coefficient>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly { characteristic: ch, coeffs }
    }

    pub fn constant(ch: Char, v: i64) -> Self {
        Self::from_coeffs(ch, vec![Coefficient::from_i64(v, ch)])
    }

    pub fn tau(ch: Char) -> Self {
        Self::from_coeffs(ch, vec![Coefficient::zero(ch), Coefficient::one(ch)])
    }

    pub fn characteristic(&self) -> Char {
        self.characteristic
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Coefficient {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| Coefficient::zero(self.characteristic))
    }

    pub fn coeffs(&self) -> &[Coefficient] {
        &self.coeffs
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        self.characteristic.check_same(other.characteristic)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        Ok(Self::from_coeffs(self.characteristic, coeffs))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        self.characteristic.check_same(other.characteristic)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.characteristic));
        }
        let mut coeffs =
            vec![Coefficient::zero(self.characteristic); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Ok(Self::from_coeffs(self.characteristic, coeffs))
    }

    /// Largest absolute coefficient (characteristic zero only).
    pub fn max_abs_coeff(&self) -> Option<BigInt> {
        if self.characteristic != Char::Zero {
            return None;
        }
        Some(
            self.coeffs
                .iter()
                .filter_map(|c| c.abs_int())
                .max()
                .unwrap_or_else(BigInt::zero),
        )
    }

    /// Exact evaluation over Z at an integer point.
    pub fn eval_int(&self, m: &BigInt) -> Result<BigInt, RingError> {
        if self.characteristic != Char::Zero {
            return Err(RingError::ExpectedCharZero);
        }
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            let Coefficient::Int(v) = c else { unreachable!() };
            acc = acc * m + v;
        }
        Ok(acc)
    }

    /// View a characteristic-p polynomial as an `FpPoly`.
    pub fn to_fp(&self) -> Result<FpPoly, RingError> {
        let Char::Prime(p) = self.characteristic else {
            return Err(RingError::ExpectedCharP);
        };
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| match c {
                Coefficient::Res { value, .. } => *value,
                Coefficient::Int(_) => unreachable!(),
            })
            .collect();
        Ok(FpPoly::from_coeffs(p, coeffs))
    }

    pub fn from_fp(p: &FpPoly) -> Self {
        let ch = Char::Prime(p.modulus());
        Self::from_coeffs(
            ch,
            p.coeffs()
                .iter()
                .map(|&v| Coefficient::Res { value: v, modulus: p.modulus() })
                .collect(),
        )
    }

    /// Reduce a characteristic-zero polynomial mod p.
    pub fn reduce_mod(&self, p: u64) -> Result<FpPoly, RingError> {
        if self.characteristic != Char::Zero {
            return Err(RingError::ExpectedCharZero);
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let Coefficient::Int(v) = c else { unreachable!() };
                let m = BigInt::from(p);
                let mut r = v % &m;
                if r.is_negative() {
                    r += &m;
                }
                r.to_u64().unwrap()
            })
            .collect();
        Ok(FpPoly::from_coeffs(p, coeffs))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::parse::format_unipoly(self, f)
    }
}

/// Evaluate an integer polynomial at `m` mod the prime `p`, reducing at
/// every Horner step.
pub fn unipoly_eval_mod(h: &UniPoly, m: i64, p: u64) -> Result<u64, RingError> {
    if h.characteristic() != Char::Zero {
        return Err(RingError::ExpectedCharZero);
    }
    if !is_prime(p) {
        return Err(RingError::NotPrime(p));
    }
    let mm = (m.rem_euclid(p as i64)) as u128;
    let pp = p as u128;
    let mut acc: u128 = 0;
    for c in h.coeffs().iter().rev() {
        let Coefficient::Int(v) = c else { unreachable!() };
        let vm = {
            let m = BigInt::from(p);
            let mut r = v % &m;
            if r.is_negative() {
                r += &m;
            }
            r.to_u128().unwrap()
        };
        acc = (acc * mm + vm) % pp;
    }
    Ok(acc as u64)
}

/// Moebius function on positive integers.
pub fn mobius(n: u64) -> Result<i64, RingError> {
    if n == 0 {
        return Err(RingError::ZeroArgument);
    }
    let mut n = n;
    let mut factors = 0;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return Ok(0);
            }
            factors += 1;
        }
        d += 1;
    }
    if n > 1 {
        factors += 1;
    }
    Ok(if factors % 2 == 0 { 1 } else { -1 })
}

/// The Gauss count of monic irreducible polynomials of degree m over F_p:
/// `I_m(p) = (1/m) * sum_{d | m} mu(d) p^{m/d}`, computed exactly.
pub fn gauss_irreducible_count(p: u64, m: u64) -> Result<BigInt, RingError> {
    if !is_prime(p) {
        return Err(RingError::NotPrime(p));
    }
    if m == 0 {
        return Err(RingError::ZeroArgument);
    }
    let mut sum = BigInt::zero();
    for d in 1..=m {
        if !m.is_multiple_of(d) {
            continue;
        }
        let mu = mobius(d)?;
        if mu == 0 {
            continue;
        }
        let term = BigInt::from(p).pow((m / d) as u32);
        if mu > 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let (q, r) = sum.div_rem(&BigInt::from(m));
    debug_assert!(r.is_zero());
    debug_assert!(q >= BigInt::one() || q.is_zero());
    Ok(q)
}

/// All monic irreducibles of degree <= max_deg over F_p, ordered by degree
/// and then by the coefficient tuple read as a base-p integer (constant term
/// least significant). Irreducibility is decided by trial division against
/// the lower-degree irreducibles already enumerated.
pub fn enumerate_irreducibles(p: u64, max_deg: usize) -> Result<Vec<UniPoly>, RingError> {
    if !is_prime(p) {
        return Err(RingError::NotPrime(p));
    }
    Ok(FpPoly::enumerate_irreducibles(p, max_deg)
        .iter()
        .map(UniPoly::from_fp)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_mod_examples() {
        let ch = Char::Zero;
        // tau^2 - tau at m=2 mod 3 = 2
        let h = UniPoly::from_coeffs(
            ch,
            vec![
                Coefficient::from_i64(0, ch),
                Coefficient::from_i64(-1, ch),
                Coefficient::from_i64(1, ch),
            ],
        );
        assert_eq!(unipoly_eval_mod(&h, 2, 3).unwrap(), 2);
        assert_eq!(unipoly_eval_mod(&UniPoly::tau(ch), 0, 5).unwrap(), 0);
        assert_eq!(unipoly_eval_mod(&UniPoly::constant(ch, 7), 5, 7).unwrap(), 0);
        assert!(matches!(
            unipoly_eval_mod(&UniPoly::tau(ch), 1, 6),
            Err(RingError::NotPrime(6))
        ));
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(2).unwrap(), -1);
        assert_eq!(mobius(6).unwrap(), 1);
        assert_eq!(mobius(12).unwrap(), 0);
        assert!(mobius(0).is_err());
    }

    #[test]
    fn gauss_counts_small() {
        assert_eq!(gauss_irreducible_count(2, 1).unwrap(), BigInt::from(2));
        assert_eq!(gauss_irreducible_count(2, 2).unwrap(), BigInt::from(1));
        assert_eq!(gauss_irreducible_count(2, 3).unwrap(), BigInt::from(2));
        assert_eq!(gauss_irreducible_count(3, 2).unwrap(), BigInt::from(3));
    }

    #[test]
    fn enumerate_f2() {
        let irr = enumerate_irreducibles(2, 2).unwrap();
        let strs: Vec<String> = irr.iter().map(|w| w.to_string()).collect();
        assert_eq!(strs, vec!["tau", "tau + 1", "tau^2 + tau + 1"]);

        let irr3 = enumerate_irreducibles(3, 1).unwrap();
        let strs3: Vec<String> = irr3.iter().map(|w| w.to_string()).collect();
        assert_eq!(strs3, vec!["tau", "tau + 1", "tau + 2"]);

        assert_eq!(enumerate_irreducibles(2, 3).unwrap().len(), 5);
    }

    #[test]
    fn eval_int_horner() {
        let ch = Char::Zero;
        let h = UniPoly::from_coeffs(
            ch,
            vec![
                Coefficient::from_i64(1, ch),
                Coefficient::from_i64(-3, ch),
                Coefficient::from_i64(2, ch),
            ],
        );
        // 2m^2 - 3m + 1 at 4 = 21
        assert_eq!(h.eval_int(&BigInt::from(4)).unwrap(), BigInt::from(21));
    }
}
