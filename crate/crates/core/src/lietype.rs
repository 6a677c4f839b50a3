//! Finite (simple) groups of Lie type: order formulas for the classical
//! families, the Tits exception list, extension-boundedness, the Frobenius
//! semidirect and product-automorphism representations, and the rank-ratio
//! statistic.

use crate::error::EnumError;
use crate::finite::{Elem, GroupTable};
use crate::ring::{is_prime, FqCtx, FqElem, MatFq};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

/// Classical family symbol. The twisted family 2A covers the unitary groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    TwoA,
}

impl Family {
    pub fn symbol(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::TwoA => "2A",
        }
    }

    fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B => 2,
            Family::C => 3,
            Family::D => 4,
            Family::TwoA => 2,
        }
    }
}

/// (family, rank, q = p^e) identifying a finite group of Lie type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LieTypeId {
    pub family: Family,
    pub rank: usize,
    pub p: u64,
    pub e: u32,
}

impl LieTypeId {
    pub fn new(family: Family, rank: usize, q: u64) -> Result<Self, EnumError> {
        let (p, e) = split_prime_power(q)
            .ok_or_else(|| EnumError::BadLieType(format!("q = {q} is not a prime power")))?;
        if rank < family.min_rank() {
            return Err(EnumError::BadLieType(format!(
                "rank {rank} below minimum for family {}",
                family.symbol()
            )));
        }
        Ok(LieTypeId { family, rank, p, e })
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.e)
    }

    pub fn name(&self) -> String {
        format!("{}{}({})", self.family.symbol(), self.rank, self.q())
    }
}

/// Factor q as p^e with p prime.
pub fn split_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut v = q;
            let mut e = 0;
            while v.is_multiple_of(p) {
                v /= p;
                e += 1;
            }
            return if v == 1 { Some((p, e)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

/// Order of the simple group (quotient by the center of the universal
/// group), from the classical product formulas.
pub fn lie_order(id: &LieTypeId) -> BigInt {
    let q = BigInt::from(id.q());
    let n = id.rank as u32;
    let qi = |i: u32| q.pow(i);
    match id.family {
        // A_n(q) = PSL_{n+1}(q): q^{n(n+1)/2} prod_{i=2}^{n+1} (q^i - 1) / gcd(n+1, q-1)
        Family::A => {
            let mut ord = q.pow(n * (n + 1) / 2);
            for i in 2..=(n + 1) {
                ord *= qi(i) - BigInt::one();
            }
            let d = BigInt::from(n + 1).gcd(&(q.clone() - BigInt::one()));
            ord / d
        }
        // B_n(q) and C_n(q): q^{n^2} prod_{i=1}^{n} (q^{2i} - 1) / gcd(2, q-1)
        Family::B | Family::C => {
            let mut ord = q.pow(n * n);
            for i in 1..=n {
                ord *= qi(2 * i) - BigInt::one();
            }
            let d = BigInt::from(2u32).gcd(&(q.clone() - BigInt::one()));
            ord / d
        }
        // D_n(q): q^{n(n-1)} (q^n - 1) prod_{i=1}^{n-1} (q^{2i} - 1) / gcd(4, q^n - 1)
        Family::D => {
            let mut ord = q.pow(n * (n - 1));
            ord *= qi(n) - BigInt::one();
            for i in 1..n {
                ord *= qi(2 * i) - BigInt::one();
            }
            let d = BigInt::from(4u32).gcd(&(qi(n) - BigInt::one()));
            ord / d
        }
        // 2A_n(q) = PSU_{n+1}(q): q^{n(n+1)/2} prod_{i=2}^{n+1} (q^i - (-1)^i) / gcd(n+1, q+1)
        Family::TwoA => {
            let mut ord = q.pow(n * (n + 1) / 2);
            for i in 2..=(n + 1) {
                if i % 2 == 0 {
                    ord *= qi(i) - BigInt::one();
                } else {
                    ord *= qi(i) + BigInt::one();
                }
            }
            let d = BigInt::from(n + 1).gcd(&(q.clone() + BigInt::one()));
            ord / d
        }
    }
}

/// Orders of the exceptional families, kept as formulas in q (static data;
/// no constructors are provided for these).
pub fn exceptional_order(family: &str, q: u64) -> Option<BigInt> {
    let q = BigInt::from(q);
    let one = BigInt::one;
    let qp = |i: u32| q.pow(i);
    let ord = match family {
        "G2" => qp(6) * (qp(6) - one()) * (qp(2) - one()),
        "F4" => qp(24) * (qp(12) - one()) * (qp(8) - one()) * (qp(6) - one()) * (qp(2) - one()),
        "E6" => {
            let d = BigInt::from(3u32).gcd(&(q.clone() - one()));
            qp(36)
                * (qp(12) - one())
                * (qp(9) - one())
                * (qp(8) - one())
                * (qp(6) - one())
                * (qp(5) - one())
                * (qp(2) - one())
                / d
        }
        "E7" => {
            let d = BigInt::from(2u32).gcd(&(q.clone() - one()));
            qp(63)
                * (qp(18) - one())
                * (qp(14) - one())
                * (qp(12) - one())
                * (qp(10) - one())
                * (qp(8) - one())
                * (qp(6) - one())
                * (qp(2) - one())
                / d
        }
        "E8" => {
            qp(120)
                * (qp(30) - one())
                * (qp(24) - one())
                * (qp(20) - one())
                * (qp(18) - one())
                * (qp(14) - one())
                * (qp(12) - one())
                * (qp(8) - one())
                * (qp(2) - one())
        }
        "2B2" => qp(2) * (qp(2) + one()) * (q.clone() - one()),
        "2G2" => qp(3) * (qp(3) + one()) * (q.clone() - one()),
        "3D4" => qp(12) * (qp(8) + qp(4) + one()) * (qp(6) - one()) * (qp(2) - one()),
        _ => return None,
    };
    Some(ord)
}

/// Descriptor of a fixed-point group, used for the Tits exception check,
/// which names groups like Sp_4(2) that sit outside the classical id
/// constraints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupDescriptor {
    Sl(usize, u64),
    Su(usize, u64),
    Sp(usize, u64),
    Spin(usize, u64),
    SpinPlus(usize, u64),
    G2(u64),
    TwoB2(u64),
    TwoG2(u64),
    TwoF4(u64),
}

impl GroupDescriptor {
    pub fn name(&self) -> String {
        match self {
            GroupDescriptor::Sl(n, q) => format!("SL{n}({q})"),
            GroupDescriptor::Su(n, q) => format!("SU{n}({q})"),
            GroupDescriptor::Sp(n, q) => format!("Sp{n}({q})"),
            GroupDescriptor::Spin(n, q) => format!("Spin{n}({q})"),
            GroupDescriptor::SpinPlus(n, q) => format!("Spin+{n}({q})"),
            GroupDescriptor::G2(q) => format!("G2({q})"),
            GroupDescriptor::TwoB2(q) => format!("2B2({q})"),
            GroupDescriptor::TwoG2(q) => format!("2G2({q})"),
            GroupDescriptor::TwoF4(q) => format!("2F4({q})"),
        }
    }
}

/// The eight fixed-point groups that fail to be simple modulo center.
pub fn tits_exceptions() -> [GroupDescriptor; 8] {
    [
        GroupDescriptor::Sl(2, 2),
        GroupDescriptor::Sl(2, 3),
        GroupDescriptor::Su(3, 2),
        GroupDescriptor::Sp(4, 2),
        GroupDescriptor::G2(2),
        GroupDescriptor::TwoB2(2),
        GroupDescriptor::TwoG2(3),
        GroupDescriptor::TwoF4(2),
    ]
}

pub fn is_tits_exception(d: &GroupDescriptor) -> bool {
    tits_exceptions().contains(d)
}

/// The universal fixed-point group behind a classical id (B_2 maps to Sp_4
/// since Spin_5 and Sp_4 coincide).
pub fn descriptor_of(id: &LieTypeId) -> GroupDescriptor {
    let q = id.q();
    match id.family {
        Family::A => GroupDescriptor::Sl(id.rank + 1, q),
        Family::B if id.rank == 2 => GroupDescriptor::Sp(4, q),
        Family::B => GroupDescriptor::Spin(2 * id.rank + 1, q),
        Family::C => GroupDescriptor::Sp(2 * id.rank, q),
        Family::D => GroupDescriptor::SpinPlus(2 * id.rank, q),
        Family::TwoA => GroupDescriptor::Su(id.rank + 1, q),
    }
}

/// True iff every id in the family has extension degree at most e.
pub fn extension_bounded(ids: &[LieTypeId], e: u32) -> bool {
    ids.iter().all(|id| id.e <= e)
}

/// Bound on the extension degree of Lie-type quotients of subgroups of
/// GL_l(p): binom(l, 2).
pub fn extension_bound_from_dimension(dimension: usize) -> u64 {
    (dimension as u64) * (dimension as u64 - 1) / 2
}

/// A matrix representation of a finite group over F_{p^k}.
#[derive(Debug, Clone)]
pub struct FiniteRep {
    pub ctx: FqCtx,
    pub dimension: usize,
    pub generators: Vec<MatFq>,
}

impl FiniteRep {
    pub fn field_size(&self) -> u64 {
        self.ctx.size()
    }

    /// Materialize the generated group (capped).
    pub fn materialize(&self, cap: usize) -> Result<GroupTable, EnumError> {
        let gens: Vec<Elem> = self.generators.iter().map(|m| Elem::Mat(m.clone())).collect();
        GroupTable::generate("rep-image", &gens, cap)
    }
}

/// The natural representation of SL_n(q) generated by the elementary
/// matrices E_{ij}(b) for b running over a basis of F_q.
pub fn sl_rep(n: usize, q: u64) -> Result<FiniteRep, EnumError> {
    let (p, e) = split_prime_power(q)
        .ok_or_else(|| EnumError::BadLieType(format!("q = {q} is not a prime power")))?;
    let ctx = if e == 1 { FqCtx::prime_field(p) } else { FqCtx::extension(p, e as usize) };
    let mut generators = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for b in 0..e as usize {
                let mut m = MatFq::identity(&ctx, n);
                m.entries[i * n + j] = FqElem::tau_power(&ctx, b);
                generators.push(m);
            }
        }
    }
    Ok(FiniteRep { ctx, dimension: n, generators })
}

/// Expand a matrix over F_{p^l} into an (l*w) x (l*w) matrix over F_p by
/// replacing each entry with its multiplication block in the tau-power
/// basis of F_{p^l}.
pub fn blow_up_to_prime_field(m: &MatFq) -> MatFq {
    let ell = m.ctx.ext_degree();
    let base = FqCtx::prime_field(m.ctx.p);
    let w = m.n;
    let dim = ell * w;
    let mut rows = vec![vec![FqElem::zero(&base); dim]; dim];
    for bi in 0..w {
        for bj in 0..w {
            let alpha = m.at(bi, bj);
            for j in 0..ell {
                let tj = FqElem::tau_power(&m.ctx, j);
                let col = alpha.mul(&tj, &m.ctx);
                for (r, &coef) in col.coeffs().iter().enumerate() {
                    rows[bi * ell + r][bj * ell + j] = FqElem::from_u64(&base, coef);
                }
            }
        }
    }
    MatFq::from_rows(&base, rows)
}

/// The blockwise Frobenius operator on (F_{p^l})^w in the tau-power basis:
/// w diagonal copies of the matrix of x -> x^p.
pub fn frobenius_block(ctx: &FqCtx, w: usize) -> MatFq {
    let ell = ctx.ext_degree();
    let base = FqCtx::prime_field(ctx.p);
    let dim = ell * w;
    let mut rows = vec![vec![FqElem::zero(&base); dim]; dim];
    for b in 0..w {
        for j in 0..ell {
            let img = FqElem::tau_power(ctx, j).frobenius(ctx);
            for (r, &coef) in img.coeffs().iter().enumerate() {
                rows[b * ell + r][b * ell + j] = FqElem::from_u64(&base, coef);
            }
        }
    }
    MatFq::from_rows(&base, rows)
}

/// Expand a representation over F_{p^l} to a representation of G x| C_l over
/// F_p of dimension l * w: entries become l x l multiplication blocks in the
/// basis 1, tau, ..., tau^{l-1}, and the C_l generator acts as the blockwise
/// Frobenius operator. Returns (expanded generators, frobenius block).
pub fn frobenius_semidirect_rep(rep: &FiniteRep) -> Result<(FiniteRep, MatFq), EnumError> {
    let generators: Vec<MatFq> = rep.generators.iter().map(blow_up_to_prime_field).collect();
    for g in &generators {
        if g.inverse().is_none() {
            return Err(EnumError::Degenerate("non-invertible generator".into()));
        }
    }
    let frob = frobenius_block(&rep.ctx, rep.dimension);
    let base = FqCtx::prime_field(rep.ctx.p);
    Ok((
        FiniteRep {
            ctx: base,
            dimension: rep.ctx.ext_degree() * rep.dimension,
            generators,
        },
        frob,
    ))
}

/// Entrywise Frobenius of a matrix over F_{p^l}.
pub fn matrix_frobenius(m: &MatFq) -> MatFq {
    MatFq {
        ctx: m.ctx.clone(),
        n: m.n,
        entries: m.entries.iter().map(|e| e.frobenius(&m.ctx)).collect(),
    }
}

/// Block-diagonal m-fold sum of a representation with block-permutation
/// matrices adjoined: a representation of H^m x| Sym(m) of dimension
/// m * dim(rep).
pub fn product_aut_rep(rep: &FiniteRep, multiplicity: usize) -> FiniteRep {
    assert!(multiplicity >= 1);
    let w = rep.dimension;
    let dim = w * multiplicity;
    let ctx = rep.ctx.clone();
    let mut generators = Vec::new();
    // H in the first block
    for g in &rep.generators {
        let mut m = MatFq::identity(&ctx, dim);
        for i in 0..w {
            for j in 0..w {
                m.entries[i * dim + j] = g.at(i, j).clone();
            }
        }
        generators.push(m);
    }
    if multiplicity > 1 {
        // block transposition (1 2) and block m-cycle
        let perm_mat = |perm: &dyn Fn(usize) -> usize| {
            let mut rows = vec![vec![FqElem::zero(&ctx); dim]; dim];
            for b in 0..multiplicity {
                let target = perm(b);
                for i in 0..w {
                    rows[target * w + i][b * w + i] = FqElem::one(&ctx);
                }
            }
            MatFq::from_rows(&ctx, rows)
        };
        generators.push(perm_mat(&|b| if b == 0 { 1 } else if b == 1 { 0 } else { b }));
        generators.push(perm_mat(&|b| (b + 1) % multiplicity));
    }
    FiniteRep { ctx, dimension: dim, generators }
}

/// Maximal element order by closure enumeration.
pub fn m1_bruteforce(rep: &FiniteRep, cap: usize) -> Result<usize, EnumError> {
    Ok(rep.materialize(cap)?.max_element_order())
}

/// Maximal element order of H^l: the maximum of lcm(o_1, ..., o_l) over
/// multisets of element orders of H.
pub fn m1_of_power(orders: &[usize], ell: usize) -> u64 {
    fn rec(orders: &[usize], start: usize, left: usize, acc: u64) -> u64 {
        if left == 0 {
            return acc;
        }
        let mut best = acc;
        for (k, &o) in orders.iter().enumerate().skip(start) {
            let l = acc.lcm(&(o as u64));
            let v = rec(orders, k, left - 1, l);
            if v > best {
                best = v;
            }
        }
        best
    }
    rec(orders, 0, ell, 1)
}

/// Materialize the simple group of an id as a permutation group where a
/// construction is available. Currently: A_1(q) = PSL_2(q) acting on the
/// projective line.
pub fn materialize_simple(id: &LieTypeId, cap: usize) -> Result<GroupTable, EnumError> {
    match (id.family, id.rank) {
        (Family::A, 1) => Ok(psl2_table(id.q(), cap)?),
        _ => Err(EnumError::NotMaterializable(id.name())),
    }
}

/// PSL_2(q) as permutations of the projective line (q + 1 points), generated
/// by z -> z + 1 and z -> -1/z.
pub fn psl2_table(q: u64, cap: usize) -> Result<GroupTable, EnumError> {
    let (p, e) = split_prime_power(q)
        .ok_or_else(|| EnumError::BadLieType(format!("q = {q} is not a prime power")))?;
    if !is_prime(p) {
        return Err(EnumError::BadLieType(format!("{p} is not prime")));
    }
    let ctx = if e == 1 { FqCtx::prime_field(p) } else { FqCtx::extension(p, e as usize) };
    // points: 0..q-1 enumerate the field elements, q is the point at infinity
    let elems: Vec<FqElem> = field_elements(&ctx);
    let index_of = |v: &FqElem| elems.iter().position(|e| e == v).expect("field element");
    let infinity = q as u16;
    // translations z -> z + tau^b for each basis power, plus z -> -1/z:
    // together these generate both unipotent subgroups and hence PSL_2(q)
    let mut gens = Vec::new();
    for b in 0..e as usize {
        let shift = FqElem::tau_power(&ctx, b);
        let translation: Vec<u16> = (0..=q)
            .map(|i| {
                if i == q {
                    infinity
                } else {
                    index_of(&elems[i as usize].add(&shift, &ctx)) as u16
                }
            })
            .collect();
        gens.push(Elem::Perm(translation));
    }
    let neg_inv: Vec<u16> = (0..=q)
        .map(|i| {
            if i == q {
                index_of(&FqElem::zero(&ctx)) as u16
            } else if elems[i as usize].is_zero() {
                infinity
            } else {
                let inv = elems[i as usize].inv(&ctx).expect("nonzero");
                let m = FqElem::zero(&ctx).sub(&inv, &ctx);
                index_of(&m) as u16
            }
        })
        .collect();
    gens.push(Elem::Perm(neg_inv));
    GroupTable::generate(format!("PSL2({q})"), &gens, cap)
}

/// All elements of F_q in a fixed order (coefficient vectors counted in base p).
fn field_elements(ctx: &FqCtx) -> Vec<FqElem> {
    let p = ctx.p;
    let d = ctx.ext_degree();
    let count = p.pow(d as u32);
    (0..count)
        .map(|mut idx| {
            let mut coeffs = vec![0u64; d];
            for c in coeffs.iter_mut() {
                *c = idx % p;
                idx /= p;
            }
            let poly = crate::ring::FpPoly::from_coeffs(p, coeffs);
            FqElem::from_fp(ctx, &poly)
        })
        .collect()
}

/// `log |H^l| / log m_1(H^l)` with the numerator from the catalog order and
/// the denominator from the exact lcm-maximum over element orders.
pub fn rank_ratio(id: &LieTypeId, multiplicity: usize, cap: usize) -> Result<f64, EnumError> {
    let table = materialize_simple(id, cap)?;
    let orders = table.order_spectrum();
    let m1 = m1_of_power(&orders, multiplicity);
    let log_order = (table.order() as f64).ln() * multiplicity as f64;
    Ok(log_order / (m1 as f64).ln())
}
