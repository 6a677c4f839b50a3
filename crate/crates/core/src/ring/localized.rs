//! Localization of a polynomial ring at a finite set S of nonzero
//! polynomials. Fractions are never reduced to lowest terms; equality is by
//! cross-multiplication.

use super::{Char, MultiPoly};
use crate::error::RingError;
use std::collections::BTreeMap;
use std::fmt;

/// The finite denominator set S. Deduplicated, all members nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenominatorSet {
    elements: Vec<MultiPoly>,
}

impl DenominatorSet {
    pub fn new(elements: Vec<MultiPoly>) -> Result<Self, RingError> {
        let mut out: Vec<MultiPoly> = Vec::new();
        for e in elements {
            if e.is_zero() {
                return Err(RingError::ZeroPolynomial);
            }
            if !out.contains(&e) {
                out.push(e);
            }
        }
        Ok(DenominatorSet { elements: out })
    }

    pub fn empty() -> Self {
        DenominatorSet { elements: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&MultiPoly> {
        self.elements.get(i)
    }

    pub fn iter(&self) -> impl Iterator<Item = &MultiPoly> {
        self.elements.iter()
    }

    /// Index of a member equal (structurally) to the given polynomial.
    pub fn index_of(&self, p: &MultiPoly) -> Option<usize> {
        self.elements.iter().position(|e| e == p)
    }
}

/// Multiset of denominator factors: index into S -> positive power.
pub type DenomPowers = BTreeMap<usize, u32>;

/// An element of the localization: numerator polynomial over a product of
/// powers of members of S.
#[derive(Debug, Clone)]
pub struct LocalizedElem {
    pub numerator: MultiPoly,
    pub denominator: DenomPowers,
}

impl LocalizedElem {
    pub fn from_poly(numerator: MultiPoly) -> Self {
        LocalizedElem { numerator, denominator: BTreeMap::new() }
    }

    pub fn zero(num_vars: usize, ch: Char) -> Self {
        Self::from_poly(MultiPoly::zero(num_vars, ch))
    }

    pub fn one(num_vars: usize, ch: Char) -> Self {
        Self::from_poly(MultiPoly::one(num_vars, ch))
    }

    pub fn new(numerator: MultiPoly, denominator: DenomPowers, s: &DenominatorSet) -> Result<Self, RingError> {
        for (&i, &e) in &denominator {
            if i >= s.len() {
                return Err(RingError::DenominatorIndex(i, s.len()));
            }
            debug_assert!(e > 0);
        }
        let denominator: DenomPowers = denominator.into_iter().filter(|&(_, e)| e > 0).collect();
        Ok(LocalizedElem { numerator, denominator })
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.is_empty()
    }

    /// Expand the denominator multiset into an actual polynomial.
    pub fn denominator_poly(&self, s: &DenominatorSet) -> MultiPoly {
        expand_powers(&self.denominator, s, self.numerator.num_vars(), self.numerator.characteristic())
    }

    /// Exact equality by cross-multiplication: a/b = c/d iff a*d = c*b.
    pub fn eq_cross(&self, other: &Self, s: &DenominatorSet) -> bool {
        let ad = self
            .numerator
            .mul(&other.denominator_poly(s))
            .expect("same ring");
        let cb = other
            .numerator
            .mul(&self.denominator_poly(s))
            .expect("same ring");
        ad == cb
    }

    pub fn add(&self, other: &Self, s: &DenominatorSet) -> Self {
        // Common denominator by per-index max powers.
        let mut common: DenomPowers = self.denominator.clone();
        for (&i, &e) in &other.denominator {
            let slot = common.entry(i).or_insert(0);
            *slot = (*slot).max(e);
        }
        let lift = |elem: &Self| -> MultiPoly {
            let mut missing: DenomPowers = BTreeMap::new();
            for (&i, &e) in &common {
                let have = elem.denominator.get(&i).copied().unwrap_or(0);
                if e > have {
                    missing.insert(i, e - have);
                }
            }
            let factor = expand_powers(&missing, s, elem.numerator.num_vars(), elem.numerator.characteristic());
            elem.numerator.mul(&factor).expect("same ring")
        };
        let num = lift(self).add(&lift(other)).expect("same ring");
        LocalizedElem { numerator: num, denominator: common }
    }

    pub fn sub(&self, other: &Self, s: &DenominatorSet) -> Self {
        self.add(&other.neg(), s)
    }

    pub fn neg(&self) -> Self {
        LocalizedElem { numerator: self.numerator.neg(), denominator: self.denominator.clone() }
    }

    pub fn mul(&self, other: &Self, _s: &DenominatorSet) -> Self {
        let num = self.numerator.mul(&other.numerator).expect("same ring");
        if num.is_zero() {
            return LocalizedElem { numerator: num, denominator: BTreeMap::new() };
        }
        let mut den = self.denominator.clone();
        for (&i, &e) in &other.denominator {
            *den.entry(i).or_insert(0) += e;
        }
        LocalizedElem { numerator: num, denominator: den }
    }
}

pub(crate) fn expand_powers(
    powers: &DenomPowers,
    s: &DenominatorSet,
    num_vars: usize,
    ch: Char,
) -> MultiPoly {
    let mut acc = MultiPoly::one(num_vars, ch);
    for (&i, &e) in powers {
        let base = s.get(i).expect("validated index");
        acc = acc.mul(&base.pow(e)).expect("same ring");
    }
    acc
}

// Display prints denominators in index form (S0, S1, ...); rendering through
// the actual polynomials of S needs the set and goes through the CLI.
impl fmt::Display for LocalizedElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_empty() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ", self.numerator)?;
            let mut first = true;
            for (i, e) in &self.denominator {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if *e == 1 {
                    write!(f, "S{}", i)?;
                } else {
                    write!(f, "S{}^{}", i, e)?;
                }
            }
            Ok(())
        }
    }
}
