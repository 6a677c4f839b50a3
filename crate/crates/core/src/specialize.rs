//! The specialization toolchain: multivariate-to-univariate reduction,
//! prime selection in characteristic 0, irreducible-modulus selection in
//! characteristic p, and the induced homomorphisms into matrices over finite
//! fields.

use crate::error::SpecializeError;
use crate::matgroup::GroupSpec;
use crate::ring::{
    smallest_prime_not_dividing, Char, FpPoly, FqCtx, FqElem, MatFq, MultiPoly, UniPoly,
};
use crate::word::Word;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Output of the variable reduction: an exponent vector with
/// `f(tau^{n_1}, ..., tau^{n_s})` nonzero, plus the recursion trace.
#[derive(Debug, Clone)]
pub struct ReductionResult {
    pub n_vec: Vec<u64>,
    pub trace_poly: UniPoly,
    pub audit: Vec<String>,
}

/// Reduce a nonzero multivariate polynomial to one variable by substituting
/// powers of tau. Follows the peel-and-recurse construction with the degree
/// parameter widened to `D = max(deg f, 2)`; the candidate is verified by
/// substitution, and an exhaustive box search backs the construction up.
pub fn reduce_to_one_variable(f: &MultiPoly) -> Result<ReductionResult, SpecializeError> {
    if f.is_zero() {
        return Err(SpecializeError::Ring(crate::error::RingError::ZeroPolynomial));
    }
    let s = f.num_vars();
    let top_d = (f.degree() as u64).max(2);
    let box_cap = top_d.pow(2 * s as u32);
    let mut audit = Vec::new();
    let n_vec = reduce_rec(f, &mut audit);
    let candidate = f.substitute_powers(&n_vec).expect("arity matches");
    let within_box = n_vec.iter().all(|&n| n <= box_cap);
    if !candidate.is_zero() && within_box {
        return Ok(ReductionResult { n_vec, trace_poly: candidate, audit });
    }
    audit.push("candidate rejected; exhaustive box search".to_string());
    let mut point = vec![0u64; s];
    loop {
        let g = f.substitute_powers(&point).expect("arity matches");
        if !g.is_zero() {
            return Ok(ReductionResult { n_vec: point, trace_poly: g, audit });
        }
        // lexicographic increment over {0..box_cap}^s
        let mut i = s;
        loop {
            if i == 0 {
                return Err(SpecializeError::ReductionExhausted);
            }
            i -= 1;
            point[i] += 1;
            if point[i] <= box_cap {
                break;
            }
            point[i] = 0;
        }
    }
}

fn reduce_rec(f: &MultiPoly, audit: &mut Vec<String>) -> Vec<u64> {
    let s = f.num_vars();
    if s == 0 {
        audit.push("constant ring: empty exponent vector".to_string());
        return Vec::new();
    }
    let d = (f.degree() as u64).max(2);
    if f.degree() == 0 {
        audit.push(format!("degree 0 in {s} vars: all zeros"));
        return vec![0; s];
    }
    if s == 1 {
        audit.push("single variable: identity substitution".to_string());
        return vec![1];
    }
    // f = (h0 + T1*h1) * T1^k with h0 free of T1
    let k = f.min_var_exponent(0);
    if k > 0 {
        audit.push(format!("peel T1^{k}"));
        return reduce_rec(&f.shift_down_var(0, k), audit);
    }
    let (h0, h1) = f.split_on_var(0);
    debug_assert!(!h0.is_zero());
    let _ = h1;
    let inner = reduce_rec(&h0.drop_var(0), audit);
    let n1 = d.pow(2 * s as u32);
    audit.push(format!("n1 = {d}^{} = {n1}", 2 * s));
    let mut n_vec = Vec::with_capacity(s);
    n_vec.push(n1);
    n_vec.extend(inner);
    n_vec
}

/// Evaluation point and prime for a nonzero integer polynomial: the smallest
/// `m` with `h(m) != 0` (m = 0 when the constant term is nonzero), then the
/// smallest prime not dividing `h(m)`.
#[derive(Debug, Clone)]
pub struct PrimeChoice {
    pub m: u64,
    pub p: u64,
    /// |h(m)|, the integer whose prime-avoidance picked p.
    pub value_abs: BigInt,
    /// log2 of the largest absolute coefficient of h (audit only).
    pub log2_max_coeff: f64,
    pub trace_degree: usize,
}

pub fn choose_prime(h: &UniPoly) -> Result<PrimeChoice, SpecializeError> {
    if h.is_zero() {
        return Err(SpecializeError::Ring(crate::error::RingError::ZeroPolynomial));
    }
    let max_coeff = h
        .max_abs_coeff()
        .ok_or(SpecializeError::Ring(crate::error::RingError::ExpectedCharZero))?;
    let log2_max_coeff = bigint_log2(&max_coeff);
    let r = h.degree();
    let mut chosen: Option<(u64, BigInt)> = None;
    let constant = h.eval_int(&BigInt::zero())?;
    if !constant.is_zero() {
        chosen = Some((0, constant));
    } else {
        for m in 1..=(r as u64 + 1) {
            let v = h.eval_int(&BigInt::from(m))?;
            if !v.is_zero() {
                chosen = Some((m, v));
                break;
            }
        }
    }
    let (m, value) = chosen.expect("a degree-r polynomial cannot vanish at r+1 points");
    let p = smallest_prime_not_dividing(&value);
    Ok(PrimeChoice { m, p, value_abs: value.abs(), log2_max_coeff, trace_degree: r })
}

fn bigint_log2(v: &BigInt) -> f64 {
    if v.is_zero() {
        return 0.0;
    }
    let bits = v.bits();
    if bits <= 52 {
        (v.abs().to_f64().unwrap_or(1.0)).log2()
    } else {
        bits as f64
    }
}

/// Choice of irreducible modulus over F_p: the smallest monic irreducible
/// (by degree, then enumeration order) not dividing the trace polynomial.
#[derive(Debug, Clone)]
pub struct IrreducibleChoice {
    pub p: u64,
    pub poly: UniPoly,
    pub field_size: BigInt,
}

pub fn choose_irreducible(h: &UniPoly) -> Result<IrreducibleChoice, SpecializeError> {
    if h.is_zero() {
        return Err(SpecializeError::Ring(crate::error::RingError::ZeroPolynomial));
    }
    let hf = h.to_fp()?;
    let w = FpPoly::smallest_irreducible_not_dividing(&hf);
    let field_size = BigInt::from(hf.modulus()).pow(w.degree() as u32);
    Ok(IrreducibleChoice { p: hf.modulus(), poly: UniPoly::from_fp(&w), field_size })
}

/// A specialization of a group spec into GL_l over a finite field: each
/// generator matrix mapped entrywise through `T_i -> tau^{n_i}` followed by
/// evaluation (mod p at a point, or reduction mod an irreducible). Extends
/// to words multiplicatively.
#[derive(Debug, Clone)]
pub struct SpecializedGroup {
    pub ctx: FqCtx,
    pub dimension: usize,
    pub generator_images: Vec<MatFq>,
    inverse_of: Vec<usize>,
}

impl SpecializedGroup {
    pub fn field_size(&self) -> BigInt {
        BigInt::from(self.ctx.p).pow(self.ctx.ext_degree() as u32)
    }

    pub fn image_of_letter(&self, index: usize, inverse: bool) -> &MatFq {
        if inverse {
            &self.generator_images[self.inverse_of[index]]
        } else {
            &self.generator_images[index]
        }
    }

    pub fn evaluate_word(&self, w: &Word) -> MatFq {
        let mut acc = MatFq::identity(&self.ctx, self.dimension);
        for l in w.letters() {
            acc = acc.mul(self.image_of_letter(l.index, l.inverse));
        }
        acc
    }
}

/// Specialize in characteristic zero: substitute powers of tau, evaluate at
/// m, and reduce mod p. Every member of the denominator set must survive.
pub fn specialize_group_char0(
    spec: &GroupSpec,
    n_vec: &[u64],
    m: u64,
    p: u64,
) -> Result<SpecializedGroup, SpecializeError> {
    if spec.characteristic != Char::Zero {
        return Err(SpecializeError::Ring(crate::error::RingError::ExpectedCharZero));
    }
    let ctx = FqCtx::prime_field(p);
    let point = BigInt::from(m);
    let mut denom_values = Vec::with_capacity(spec.denominators.len());
    for (i, s_poly) in spec.denominators.iter().enumerate() {
        let traced = s_poly.substitute_powers(n_vec)?;
        let value = traced.eval_int(&point)?;
        let reduced = value_mod(&value, p);
        if reduced == 0 {
            return Err(SpecializeError::DenominatorCollapse { index: i });
        }
        denom_values.push(FqElem::from_u64(&ctx, reduced));
    }
    let images = spec
        .generators
        .iter()
        .map(|g| {
            let entries = g
                .matrix
                .entries
                .iter()
                .map(|e| {
                    let traced = e.numerator.substitute_powers(n_vec)?;
                    let num_val = value_mod(&traced.eval_int(&point)?, p);
                    let mut val = FqElem::from_u64(&ctx, num_val);
                    for (&idx, &pw) in &e.denominator {
                        let inv = denom_values[idx].inv(&ctx).expect("checked nonzero");
                        for _ in 0..pw {
                            val = val.mul(&inv, &ctx);
                        }
                    }
                    Ok(val)
                })
                .collect::<Result<Vec<_>, SpecializeError>>()?;
            Ok(MatFq { ctx: ctx.clone(), n: spec.dimension, entries })
        })
        .collect::<Result<Vec<_>, SpecializeError>>()?;
    Ok(SpecializedGroup {
        ctx,
        dimension: spec.dimension,
        generator_images: images,
        inverse_of: spec.generators.iter().map(|g| g.inverse).collect(),
    })
}

fn value_mod(v: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let mut r = v % &m;
    if r.is_negative() {
        r += &m;
    }
    r.to_u64().unwrap()
}

/// Specialize in characteristic p: substitute powers of tau and reduce mod
/// the chosen irreducible, landing in the field F_p[tau]/(w).
pub fn specialize_group_charp(
    spec: &GroupSpec,
    n_vec: &[u64],
    choice: &IrreducibleChoice,
) -> Result<SpecializedGroup, SpecializeError> {
    let Char::Prime(p) = spec.characteristic else {
        return Err(SpecializeError::Ring(crate::error::RingError::ExpectedCharP));
    };
    debug_assert_eq!(p, choice.p);
    let ctx = FqCtx::new(p, choice.poly.to_fp()?);
    let mut denom_values = Vec::with_capacity(spec.denominators.len());
    for (i, s_poly) in spec.denominators.iter().enumerate() {
        let traced = s_poly.substitute_powers(n_vec)?.to_fp()?;
        let val = FqElem::from_fp(&ctx, &traced);
        if val.is_zero() {
            return Err(SpecializeError::DenominatorCollapse { index: i });
        }
        denom_values.push(val);
    }
    let images = spec
        .generators
        .iter()
        .map(|g| {
            let entries = g
                .matrix
                .entries
                .iter()
                .map(|e| {
                    let traced = e.numerator.substitute_powers(n_vec)?.to_fp()?;
                    let mut val = FqElem::from_fp(&ctx, &traced);
                    for (&idx, &pw) in &e.denominator {
                        let inv = denom_values[idx].inv(&ctx).expect("checked nonzero");
                        for _ in 0..pw {
                            val = val.mul(&inv, &ctx);
                        }
                    }
                    Ok(val)
                })
                .collect::<Result<Vec<_>, SpecializeError>>()?;
            Ok(MatFq { ctx: ctx.clone(), n: spec.dimension, entries })
        })
        .collect::<Result<Vec<_>, SpecializeError>>()?;
    Ok(SpecializedGroup {
        ctx,
        dimension: spec.dimension,
        generator_images: images,
        inverse_of: spec.generators.iter().map(|g| g.inverse).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::fixtures::{char2_unipotent, poly_unipotent, sanov};
    use crate::ring::{Coefficient, DenominatorSet, LocalizedElem};
    use crate::word::parse_word;

    fn poly(vars: usize, ch: Char, terms: &[(&[u32], i64)]) -> MultiPoly {
        MultiPoly::from_terms(
            vars,
            ch,
            terms
                .iter()
                .map(|(e, c)| (e.to_vec(), Coefficient::from_i64(*c, ch))),
        )
    }

    #[test]
    fn reduce_difference() {
        let f = poly(2, Char::Zero, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let r = reduce_to_one_variable(&f).unwrap();
        assert!(!r.trace_poly.is_zero());
        let cap = 2u64.pow(4);
        assert!(r.n_vec.iter().all(|&n| n <= cap));
    }

    #[test]
    fn reduce_constant() {
        let f = poly(2, Char::Zero, &[(&[0, 0], 5)]);
        let r = reduce_to_one_variable(&f).unwrap();
        assert_eq!(r.n_vec, vec![0, 0]);
        assert_eq!(r.trace_poly.to_string(), "5");
    }

    #[test]
    fn reduce_mod2_sum_avoids_cancellation() {
        let f = poly(2, Char::Prime(2), &[(&[1, 0], 1), (&[0, 1], 1)]);
        let r = reduce_to_one_variable(&f).unwrap();
        assert!(!r.trace_poly.is_zero());
        // the naive (1,1) substitution vanishes mod 2
        assert!(f.substitute_powers(&[1, 1]).unwrap().is_zero());
    }

    #[test]
    fn reduce_zero_rejected() {
        let f = MultiPoly::zero(2, Char::Zero);
        assert!(reduce_to_one_variable(&f).is_err());
    }

    #[test]
    fn choose_prime_examples() {
        let ch = Char::Zero;
        // tau^2 - tau: m=2 (h(1) = 0), h(2) = 2, p = 3
        let h = UniPoly::from_coeffs(
            ch,
            vec![
                Coefficient::from_i64(0, ch),
                Coefficient::from_i64(-1, ch),
                Coefficient::from_i64(1, ch),
            ],
        );
        let c = choose_prime(&h).unwrap();
        assert_eq!((c.m, c.p), (2, 3));

        // tau: m=1, h(1)=1, p=2
        let c = choose_prime(&UniPoly::tau(ch)).unwrap();
        assert_eq!((c.m, c.p), (1, 2));

        // 6: m=0, p=5
        let c = choose_prime(&UniPoly::constant(ch, 6)).unwrap();
        assert_eq!((c.m, c.p), (0, 5));
    }

    #[test]
    fn choose_irreducible_examples() {
        let ch = Char::Prime(2);
        let c = choose_irreducible(&UniPoly::tau(ch)).unwrap();
        assert_eq!(c.poly.to_string(), "tau + 1");

        // tau(tau+1)(tau^2+tau+1): all irreducibles of degree <= 2 divide it
        let t = UniPoly::tau(ch);
        let t1 = UniPoly::from_coeffs(
            ch,
            vec![Coefficient::from_i64(1, ch), Coefficient::from_i64(1, ch)],
        );
        let q = UniPoly::from_coeffs(
            ch,
            vec![
                Coefficient::from_i64(1, ch),
                Coefficient::from_i64(1, ch),
                Coefficient::from_i64(1, ch),
            ],
        );
        let h = t.mul(&t1).unwrap().mul(&q).unwrap();
        let c = choose_irreducible(&h).unwrap();
        assert_eq!(c.poly.to_string(), "tau^3 + tau + 1");
        assert_eq!(c.field_size, BigInt::from(8));

        let c = choose_irreducible(&UniPoly::constant(Char::Prime(3), 1)).unwrap();
        assert_eq!(c.poly.to_string(), "tau");
    }

    #[test]
    fn specialize_sanov_mod3() {
        let spec = sanov();
        let g = specialize_group_char0(&spec, &[], 0, 3).unwrap();
        let a = &g.generator_images[0];
        assert_eq!(a.at(0, 1), &FqElem::from_u64(&g.ctx, 2));
        // image of A times image of its declared inverse is the identity
        let prod = g.generator_images[0].mul(&g.generator_images[1]);
        assert!(prod.is_identity());
    }

    #[test]
    fn specialize_poly_entry() {
        let spec = poly_unipotent();
        let g = specialize_group_char0(&spec, &[1], 2, 5).unwrap();
        // entry 2*T1 -> 2*2 = 4 mod 5
        assert_eq!(g.generator_images[0].at(0, 1), &FqElem::from_u64(&g.ctx, 4));
    }

    #[test]
    fn denominator_collapse_detected() {
        let ch = Char::Zero;
        let t1 = MultiPoly::variable(1, ch, 0);
        let s = DenominatorSet::new(vec![t1.clone()]).unwrap();
        let one = LocalizedElem::one(1, ch);
        let zero = LocalizedElem::zero(1, ch);
        let invt = LocalizedElem::new(MultiPoly::one(1, ch), [(0usize, 1u32)].into(), &s).unwrap();
        let invt_neg =
            LocalizedElem::new(MultiPoly::constant(1, ch, -1), [(0usize, 1u32)].into(), &s).unwrap();
        let m = crate::matgroup::Matrix {
            dim: 2,
            entries: vec![one.clone(), invt, zero.clone(), one.clone()],
        };
        let mi = crate::matgroup::Matrix { dim: 2, entries: vec![one.clone(), invt_neg, zero, one] };
        let spec =
            GroupSpec::new("loc", 2, ch, 1, s, vec![("W".into(), m, "Winv".into(), mi)]).unwrap();
        // m = 0 sends T1 -> 0, killing the denominator
        assert!(matches!(
            specialize_group_char0(&spec, &[1], 0, 5),
            Err(SpecializeError::DenominatorCollapse { index: 0 })
        ));
        assert!(specialize_group_char0(&spec, &[1], 1, 5).is_ok());
    }

    #[test]
    fn specialize_char2_entry() {
        let spec = char2_unipotent();
        // n=(1), modulus tau+1: T1 -> tau -> 1
        let ch = Char::Prime(2);
        let w = UniPoly::from_coeffs(
            ch,
            vec![Coefficient::from_i64(1, ch), Coefficient::from_i64(1, ch)],
        );
        let choice = IrreducibleChoice { p: 2, poly: w, field_size: BigInt::from(2) };
        let g = specialize_group_charp(&spec, &[1], &choice).unwrap();
        assert_eq!(g.generator_images[0].at(0, 1), &FqElem::from_u64(&g.ctx, 1));
    }

    #[test]
    fn specialize_char2_square_entry() {
        // entry T1^2, n=(1), modulus tau^2+tau+1: tau^2 = tau + 1
        let ch = Char::Prime(2);
        let f = poly(1, ch, &[(&[2], 1)]);
        let traced = f.substitute_powers(&[1]).unwrap().to_fp().unwrap();
        let ctx = FqCtx::extension(2, 2);
        let v = FqElem::from_fp(&ctx, &traced);
        let t = FqElem::tau_power(&ctx, 1);
        assert_eq!(v, t.add(&FqElem::one(&ctx), &ctx));
    }

    #[test]
    fn specialized_word_evaluation_is_homomorphic() {
        let spec = sanov();
        let g = specialize_group_char0(&spec, &[], 0, 5).unwrap();
        let names = spec.generator_names();
        let u = parse_word("A B", &names).unwrap();
        let v = parse_word("B^-1 A", &names).unwrap();
        let uv = u.concat(&v);
        assert_eq!(
            g.evaluate_word(&uv),
            g.evaluate_word(&u).mul(&g.evaluate_word(&v))
        );
        let winv = u.concat(&u.inverse());
        assert!(g.evaluate_word(&winv).is_identity());
    }
}
