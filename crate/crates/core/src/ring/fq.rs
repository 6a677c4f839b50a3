//! The finite field F_q = F_p[tau]/(w) for a monic irreducible w, and dense
//! square matrices over it. Elements carry their field description inline so
//! they can live in heterogeneous element tables.

use super::fp::{invm, FpPoly};
use std::fmt;

/// Field context: prime and irreducible modulus (monic).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqCtx {
    pub p: u64,
    pub modulus: FpPoly,
}

impl FqCtx {
    pub fn new(p: u64, modulus: FpPoly) -> Self {
        assert!(modulus.is_monic() && modulus.degree() >= 1);
        FqCtx { p, modulus }
    }

    /// Prime field F_p presented as F_p[tau]/(tau).
    pub fn prime_field(p: u64) -> Self {
        Self::new(p, FpPoly::tau(p))
    }

    /// Canonical F_{p^e}: first irreducible of degree e in enumeration order.
    pub fn extension(p: u64, e: usize) -> Self {
        Self::new(p, FpPoly::first_irreducible_of_degree(p, e))
    }

    pub fn ext_degree(&self) -> usize {
        self.modulus.degree()
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.ext_degree() as u32)
    }
}

/// A field element: residue polynomial of degree < deg(modulus), stored as a
/// fixed-width coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem {
    coeffs: Vec<u64>,
}

impl FqElem {
    pub fn zero(ctx: &FqCtx) -> Self {
        FqElem { coeffs: vec![0; ctx.ext_degree()] }
    }

    pub fn one(ctx: &FqCtx) -> Self {
        Self::from_fp(ctx, &FpPoly::one(ctx.p))
    }

    pub fn from_fp(ctx: &FqCtx, poly: &FpPoly) -> Self {
        let r = poly.rem(&ctx.modulus);
        let mut coeffs = vec![0; ctx.ext_degree()];
        for (i, &c) in r.coeffs().iter().enumerate() {
            coeffs[i] = c;
        }
        FqElem { coeffs }
    }

    pub fn from_u64(ctx: &FqCtx, v: u64) -> Self {
        Self::from_fp(ctx, &FpPoly::from_coeffs(ctx.p, vec![v]))
    }

    /// Basis element tau^i.
    pub fn tau_power(ctx: &FqCtx, i: usize) -> Self {
        let mut coeffs = vec![0u64; i + 1];
        coeffs[i] = 1;
        Self::from_fp(ctx, &FpPoly::from_coeffs(ctx.p, coeffs))
    }

    pub fn to_fp(&self, ctx: &FqCtx) -> FpPoly {
        FpPoly::from_coeffs(ctx.p, self.coeffs.clone())
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self, ctx: &FqCtx) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + b) % ctx.p)
            .collect();
        FqElem { coeffs }
    }

    pub fn sub(&self, other: &Self, ctx: &FqCtx) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + ctx.p - b) % ctx.p)
            .collect();
        FqElem { coeffs }
    }

    pub fn mul(&self, other: &Self, ctx: &FqCtx) -> Self {
        Self::from_fp(ctx, &self.to_fp(ctx).mul(&other.to_fp(ctx)))
    }

    pub fn inv(&self, ctx: &FqCtx) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if ctx.ext_degree() == 1 {
            return Some(Self { coeffs: vec![invm(self.coeffs[0], ctx.p)] });
        }
        let (g, u, _) = self.to_fp(ctx).ext_gcd(&ctx.modulus);
        if g != FpPoly::one(ctx.p) {
            return None;
        }
        Some(Self::from_fp(ctx, &u))
    }

    pub fn pow(&self, mut e: u64, ctx: &FqCtx) -> Self {
        let mut acc = FqElem::one(ctx);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b, ctx);
            }
            b = b.mul(&b, ctx);
            e >>= 1;
        }
        acc
    }

    /// Frobenius x -> x^p.
    pub fn frobenius(&self, ctx: &FqCtx) -> Self {
        self.pow(ctx.p, ctx)
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c == 1 => write!(f, "t")?,
                1 => write!(f, "{c}t")?,
                _ if c == 1 => write!(f, "t^{i}")?,
                _ => write!(f, "{c}t^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Dense square matrix over F_q, carrying its field context so that tables
/// of group elements are self-contained.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatFq {
    pub ctx: FqCtx,
    pub n: usize,
    pub entries: Vec<FqElem>,
}

impl MatFq {
    pub fn identity(ctx: &FqCtx, n: usize) -> Self {
        let mut entries = vec![FqElem::zero(ctx); n * n];
        for i in 0..n {
            entries[i * n + i] = FqElem::one(ctx);
        }
        MatFq { ctx: ctx.clone(), n, entries }
    }

    pub fn from_rows(ctx: &FqCtx, rows: Vec<Vec<FqElem>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n));
        MatFq { ctx: ctx.clone(), n, entries: rows.into_iter().flatten().collect() }
    }

    pub fn at(&self, i: usize, j: usize) -> &FqElem {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        debug_assert_eq!(self.ctx, other.ctx);
        let n = self.n;
        let ctx = &self.ctx;
        let mut entries = vec![FqElem::zero(ctx); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let prod = a.mul(other.at(k, j), ctx);
                    entries[i * n + j] = entries[i * n + j].add(&prod, ctx);
                }
            }
        }
        MatFq { ctx: ctx.clone(), n, entries }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.ctx, self.n)
    }

    /// Inverse by Gauss-Jordan elimination; None for singular input.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let ctx = self.ctx.clone();
        let mut a = self.entries.clone();
        let mut b = Self::identity(&ctx, n).entries;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r * n + col].is_zero())?;
            for j in 0..n {
                a.swap(pivot * n + j, col * n + j);
                b.swap(pivot * n + j, col * n + j);
            }
            let inv = a[col * n + col].inv(&ctx)?;
            for j in 0..n {
                a[col * n + j] = a[col * n + j].mul(&inv, &ctx);
                b[col * n + j] = b[col * n + j].mul(&inv, &ctx);
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let factor = a[r * n + col].clone();
                for j in 0..n {
                    let va = a[col * n + j].mul(&factor, &ctx);
                    let vb = b[col * n + j].mul(&factor, &ctx);
                    a[r * n + j] = a[r * n + j].sub(&va, &ctx);
                    b[r * n + j] = b[r * n + j].sub(&vb, &ctx);
                }
            }
        }
        Some(MatFq { ctx, n, entries: b })
    }
}

impl fmt::Display for MatFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_arithmetic() {
        let ctx = FqCtx::extension(2, 2); // F_4 with modulus tau^2+tau+1
        assert_eq!(ctx.size(), 4);
        let t = FqElem::tau_power(&ctx, 1);
        let t2 = t.mul(&t, &ctx);
        // tau^2 = tau + 1 mod the modulus
        assert_eq!(t2, t.add(&FqElem::one(&ctx), &ctx));
        let inv = t.inv(&ctx).unwrap();
        assert_eq!(t.mul(&inv, &ctx), FqElem::one(&ctx));
    }

    #[test]
    fn frobenius_fixes_prime_field() {
        let ctx = FqCtx::extension(3, 2);
        let two = FqElem::from_u64(&ctx, 2);
        assert_eq!(two.frobenius(&ctx), two);
        let t = FqElem::tau_power(&ctx, 1);
        // Frobenius has order 2 on F_9
        assert_eq!(t.frobenius(&ctx).frobenius(&ctx), t);
        assert_ne!(t.frobenius(&ctx), t);
    }

    #[test]
    fn matrix_inverse() {
        let ctx = FqCtx::prime_field(5);
        let m = MatFq::from_rows(
            &ctx,
            vec![
                vec![FqElem::from_u64(&ctx, 1), FqElem::from_u64(&ctx, 2)],
                vec![FqElem::from_u64(&ctx, 3), FqElem::from_u64(&ctx, 4)],
            ],
        );
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
    }
}
