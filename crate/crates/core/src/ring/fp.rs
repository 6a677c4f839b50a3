//! Dense univariate polynomials over a prime field F_p with u64 coefficient
//! arithmetic. This is the fast path behind irreducible enumeration,
//! divisibility tests, and finite-field construction.

use std::fmt;

#[inline]
fn addm(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

#[inline]
fn subm(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b) % p
}

#[inline]
fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Modular inverse mod prime p via Fermat.
pub fn invm(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    powm(a % p, p - 2, p)
}

pub fn powm(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, b, p);
        }
        b = mulm(b, b, p);
        e >>= 1;
    }
    acc
}

/// Dense polynomial over F_p, coefficients ascending, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn from_coeffs(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in &mut coeffs {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::from_coeffs(p, vec![1])
    }

    pub fn tau(p: u64) -> Self {
        Self::from_coeffs(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                addm(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    other.coeffs.get(i).copied().unwrap_or(0),
                    self.p,
                )
            })
            .collect();
        Self::from_coeffs(self.p, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                subm(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    other.coeffs.get(i).copied().unwrap_or(0),
                    self.p,
                )
            })
            .collect();
        Self::from_coeffs(self.p, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = addm(coeffs[i + j], mulm(a, b, self.p), self.p);
            }
        }
        Self::from_coeffs(self.p, coeffs)
    }

    /// Euclidean division: returns (quotient, remainder).
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        debug_assert_eq!(self.p, divisor.p);
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dlen = divisor.coeffs.len();
        if self.coeffs.len() < dlen {
            return (Self::zero(p), self.clone());
        }
        let lead_inv = invm(*divisor.coeffs.last().unwrap(), p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.coeffs.len() - dlen + 1];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dlen - 1];
            if c == 0 {
                continue;
            }
            let q = mulm(c, lead_inv, p);
            quot[i] = q;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = subm(rem[i + j], mulm(q, d, p), p);
            }
        }
        (Self::from_coeffs(p, quot), Self::from_coeffs(p, rem))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_rem(self).1.is_zero()
    }

    pub fn rem(&self, modulus: &Self) -> Self {
        self.div_rem(modulus).1
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = addm(mulm(acc, x, self.p), c, self.p);
        }
        acc
    }

    /// Extended gcd: returns (g, u, v) with u*self + v*other = g, g monic
    /// (or zero).
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lead = *r0.coeffs.last().unwrap();
        let scale = Self::from_coeffs(p, vec![invm(lead, p)]);
        (r0.mul(&scale), s0.mul(&scale), t0.mul(&scale))
    }

    /// Decode a monic polynomial of the given degree from a base-p integer:
    /// digit i is the coefficient of tau^i, the leading coefficient is 1.
    fn monic_from_index(p: u64, degree: usize, mut index: u64) -> Self {
        let mut coeffs = vec![0u64; degree + 1];
        for c in coeffs.iter_mut().take(degree) {
            *c = index % p;
            index /= p;
        }
        coeffs[degree] = 1;
        Self::from_coeffs(p, coeffs)
    }

    /// All monic irreducibles of degree <= max_deg, ordered by (degree,
    /// coefficient index), via trial division by the irreducibles of at most
    /// half the degree.
    pub fn enumerate_irreducibles(p: u64, max_deg: usize) -> Vec<Self> {
        let mut out: Vec<Self> = Vec::new();
        for deg in 1..=max_deg {
            let count = (p as u128).pow(deg as u32);
            for idx in 0..count {
                let cand = Self::monic_from_index(p, deg, idx as u64);
                let composite = out
                    .iter()
                    .take_while(|w| w.degree() * 2 <= deg)
                    .any(|w| w.divides(&cand));
                if !composite {
                    out.push(cand);
                }
            }
        }
        out
    }

    /// Smallest monic irreducible (degree, then coefficient index) that does
    /// not divide `h`; h must be nonzero.
    pub fn smallest_irreducible_not_dividing(h: &Self) -> Self {
        assert!(!h.is_zero());
        let p = h.p;
        let mut found: Vec<Self> = Vec::new();
        for deg in 1.. {
            let count = (p as u128).pow(deg as u32);
            for idx in 0..count {
                let cand = Self::monic_from_index(p, deg, idx as u64);
                let composite = found
                    .iter()
                    .take_while(|w| w.degree() * 2 <= deg)
                    .any(|w| w.divides(&cand));
                if composite {
                    continue;
                }
                if !cand.divides(h) {
                    return cand;
                }
                found.push(cand);
            }
        }
        unreachable!("h has finitely many irreducible factors")
    }

    /// First irreducible of exactly this degree (used for canonical field
    /// construction F_{p^deg}).
    pub fn first_irreducible_of_degree(p: u64, deg: usize) -> Self {
        let count = (p as u128).pow(deg as u32);
        let lower = Self::enumerate_irreducibles(p, deg / 2);
        for idx in 0..count {
            let cand = Self::monic_from_index(p, deg, idx as u64);
            if !lower
                .iter()
                .take_while(|w| w.degree() * 2 <= deg)
                .any(|w| w.divides(&cand))
            {
                return cand;
            }
        }
        unreachable!("irreducibles of every degree exist over F_p")
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::UniPoly::from_fp(self))
    }
}
