//! Sparse multivariate polynomials with a graded-lexicographic canonical
//! term order, over Z or F_p.

use super::{Char, Coefficient};
use crate::error::RingError;
use num_bigint::BigInt;
use num_traits::Zero;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector of one term. Ordered graded-lexicographically (total
/// degree first, then lexicographic), which fixes the iteration order of all
/// polynomials and makes equality structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse multivariate polynomial. Invariants: no stored zero
/// coefficients, every exponent vector has length `num_vars`, and all
/// coefficients share `characteristic`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    num_vars: usize,
    characteristic: Char,
    terms: BTreeMap<Monomial, Coefficient>,
}

impl MultiPoly {
    pub fn zero(num_vars: usize, ch: Char) -> Self {
        MultiPoly { num_vars, characteristic: ch, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, ch: Char, value: i64) -> Self {
        let mut p = Self::zero(num_vars, ch);
        p.add_term(Monomial(vec![0; num_vars]), Coefficient::from_i64(value, ch));
        p
    }

    pub fn constant_big(num_vars: usize, ch: Char, value: BigInt) -> Self {
        let mut p = Self::zero(num_vars, ch);
        p.add_term(Monomial(vec![0; num_vars]), Coefficient::from_bigint(value, ch));
        p
    }

    pub fn one(num_vars: usize, ch: Char) -> Self {
        Self::constant(num_vars, ch, 1)
    }

    /// The single variable `T_{index+1}` (zero-based index).
    pub fn variable(num_vars: usize, ch: Char, index: usize) -> Self {
        assert!(index < num_vars, "variable index out of range");
        let mut exps = vec![0u32; num_vars];
        exps[index] = 1;
        let mut p = Self::zero(num_vars, ch);
        p.add_term(Monomial(exps), Coefficient::one(ch));
        p
    }

    pub fn from_terms(
        num_vars: usize,
        ch: Char,
        terms: impl IntoIterator<Item = (Vec<u32>, Coefficient)>,
    ) -> Self {
        let mut p = Self::zero(num_vars, ch);
        for (exps, c) in terms {
            assert_eq!(exps.len(), num_vars, "exponent vector length must equal num_vars");
            p.add_term(Monomial(exps), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn characteristic(&self) -> Char {
        self.characteristic
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.total_degree() == 0 && c.sub(&Coefficient::one(self.characteristic)).is_zero())
                .unwrap_or(false)
    }

    /// Total degree; zero polynomial reports 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Largest absolute coefficient value (characteristic zero only).
    pub fn max_abs_coeff(&self) -> Option<BigInt> {
        if self.characteristic != Char::Zero {
            return None;
        }
        Some(
            self.terms
                .values()
                .filter_map(|c| c.abs_int())
                .max()
                .unwrap_or_else(BigInt::zero),
        )
    }

    fn check_compat(&self, other: &Self) -> Result<(), RingError> {
        if self.num_vars != other.num_vars {
            return Err(RingError::ArityMismatch(self.num_vars, other.num_vars));
        }
        self.characteristic.check_same(other.characteristic)
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        self.check_compat(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RingError> {
        self.check_compat(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check_compat(other)?;
        let mut out = Self::zero(self.num_vars, self.characteristic);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(exps), ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.num_vars, self.characteristic);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.num_vars, self.characteristic);
        for _ in 0..e {
            out = out.mul(self).expect("same ring");
        }
        out
    }

    /// Substitute `T_i := tau^{n_i}`, collecting coefficients exactly.
    /// The result may be zero (cancellation is allowed, e.g. mod p).
    pub fn substitute_powers(&self, n_vec: &[u64]) -> Result<super::UniPoly, RingError> {
        if n_vec.len() != self.num_vars {
            return Err(RingError::ArityMismatch(self.num_vars, n_vec.len()));
        }
        let mut acc: BTreeMap<u64, Coefficient> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e: u64 = m.0.iter().zip(n_vec).map(|(&a, &n)| a as u64 * n).sum();
            match acc.entry(e) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    let sum = o.get().add(c);
                    if sum.is_zero() {
                        o.remove();
                    } else {
                        *o.get_mut() = sum;
                    }
                }
            }
        }
        let deg = acc.keys().next_back().copied().unwrap_or(0);
        let mut coeffs = vec![Coefficient::zero(self.characteristic); deg as usize + 1];
        for (e, c) in acc {
            coeffs[e as usize] = c;
        }
        Ok(super::UniPoly::from_coeffs(self.characteristic, coeffs))
    }

    /// Minimum exponent of variable `var` across all terms (0 for zero poly).
    pub fn min_var_exponent(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).min().unwrap_or(0)
    }

    /// Divide every term by `T_var^k` (requires `k <= min_var_exponent`).
    pub fn shift_down_var(&self, var: usize, k: u32) -> Self {
        let mut out = Self::zero(self.num_vars, self.characteristic);
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            assert!(exps[var] >= k);
            exps[var] -= k;
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Split as `h0 + T_var * h1` where `h0` collects the terms with zero
    /// exponent in `var`.
    pub fn split_on_var(&self, var: usize) -> (Self, Self) {
        let mut h0 = Self::zero(self.num_vars, self.characteristic);
        let mut h1 = Self::zero(self.num_vars, self.characteristic);
        for (m, c) in &self.terms {
            if m.0[var] == 0 {
                h0.add_term(m.clone(), c.clone());
            } else {
                let mut exps = m.0.clone();
                exps[var] -= 1;
                h1.add_term(Monomial(exps), c.clone());
            }
        }
        (h0, h1)
    }

    /// Remap into a ring with fewer variables by deleting variable `var`
    /// (valid only when no term uses it).
    pub fn drop_var(&self, var: usize) -> Self {
        let mut out = Self::zero(self.num_vars - 1, self.characteristic);
        for (m, c) in &self.terms {
            assert_eq!(m.0[var], 0, "cannot drop a live variable");
            let mut exps = m.0.clone();
            exps.remove(var);
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::parse::format_multipoly(self, f)
    }
}
