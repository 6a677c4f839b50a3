//! Matrix groups over localized polynomial rings: group specifications,
//! word evaluation, the denominator product Phi, and the degree and
//! coefficient-magnitude bound checks.

use crate::error::GroupError;
use crate::ring::localized::{expand_powers, DenomPowers};
use crate::ring::{Char, DenominatorSet, LocalizedElem, MultiPoly};
use crate::word::Word;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// A square matrix of localized ring elements.
#[derive(Debug, Clone)]
pub struct Matrix {
    pub dim: usize,
    pub entries: Vec<LocalizedElem>,
}

impl Matrix {
    pub fn identity(dim: usize, num_vars: usize, ch: Char) -> Self {
        let mut entries = vec![LocalizedElem::zero(num_vars, ch); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = LocalizedElem::one(num_vars, ch);
        }
        Matrix { dim, entries }
    }

    pub fn from_rows(rows: Vec<Vec<LocalizedElem>>) -> Result<Self, GroupError> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(GroupError::Dimension);
        }
        Ok(Matrix { dim, entries: rows.into_iter().flatten().collect() })
    }

    pub fn at(&self, i: usize, j: usize) -> &LocalizedElem {
        &self.entries[i * self.dim + j]
    }

    pub fn mul(&self, other: &Matrix, s: &DenominatorSet) -> Matrix {
        debug_assert_eq!(self.dim, other.dim);
        let dim = self.dim;
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut acc: Option<LocalizedElem> = None;
                for k in 0..dim {
                    let a = self.at(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let prod = a.mul(other.at(k, j), s);
                    acc = Some(match acc {
                        None => prod,
                        Some(cur) => cur.add(&prod, s),
                    });
                }
                let num_vars = self.at(0, 0).numerator.num_vars();
                let ch = self.at(0, 0).numerator.characteristic();
                entries.push(acc.unwrap_or_else(|| LocalizedElem::zero(num_vars, ch)));
            }
        }
        Matrix { dim, entries }
    }

    /// Exact equality entrywise by cross-multiplication.
    pub fn eq_exact(&self, other: &Matrix, s: &DenominatorSet) -> bool {
        self.dim == other.dim
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.eq_cross(b, s))
    }

    pub fn is_identity(&self, s: &DenominatorSet) -> bool {
        let probe = self.at(0, 0);
        let id = Matrix::identity(
            self.dim,
            probe.numerator.num_vars(),
            probe.numerator.characteristic(),
        );
        self.eq_exact(&id, s)
    }
}

/// One named generator with a link to its formal inverse.
#[derive(Debug, Clone)]
pub struct Generator {
    pub name: String,
    pub matrix: Matrix,
    /// Index of the generator whose matrix is the inverse of this one.
    pub inverse: usize,
    /// True when this entry was declared as a primary generator (not as the
    /// inverse of another). Primary generators form the search alphabet.
    pub primary: bool,
}

/// A finitely generated matrix group over `L[1/S][T_1..T_s]`, given by named
/// generator matrices closed under formal inversion.
#[derive(Debug, Clone)]
pub struct GroupSpec {
    pub name: String,
    pub dimension: usize,
    pub characteristic: Char,
    pub num_vars: usize,
    pub denominators: DenominatorSet,
    pub generators: Vec<Generator>,
}

impl GroupSpec {
    /// Build and validate a spec from (generator, inverse) matrix pairs.
    /// Every pair is checked to multiply to the identity.
    pub fn new(
        name: impl Into<String>,
        dimension: usize,
        characteristic: Char,
        num_vars: usize,
        denominators: DenominatorSet,
        pairs: Vec<(String, Matrix, String, Matrix)>,
    ) -> Result<Self, GroupError> {
        let mut generators = Vec::new();
        let mut names = std::collections::BTreeSet::new();
        for (name_g, mat_g, name_i, mat_i) in pairs {
            if mat_g.dim != dimension || mat_i.dim != dimension {
                return Err(GroupError::Dimension);
            }
            for n in [&name_g, &name_i] {
                if !names.insert(n.clone()) {
                    return Err(GroupError::DuplicateName(n.clone()));
                }
            }
            let gi = generators.len();
            generators.push(Generator { name: name_g, matrix: mat_g, inverse: gi + 1, primary: true });
            generators.push(Generator { name: name_i, matrix: mat_i, inverse: gi, primary: false });
        }
        let spec = GroupSpec {
            name: name.into(),
            dimension,
            characteristic,
            num_vars,
            denominators,
            generators,
        };
        for g in &spec.generators {
            let prod = g.matrix.mul(&spec.generators[g.inverse].matrix, &spec.denominators);
            if !prod.is_identity(&spec.denominators) {
                return Err(GroupError::BadInverse { name: g.name.clone() });
            }
        }
        Ok(spec)
    }

    pub fn identity_matrix(&self) -> Matrix {
        Matrix::identity(self.dimension, self.num_vars, self.characteristic)
    }

    /// Indices of the primary generators, in declaration order.
    pub fn primary_indices(&self) -> Vec<usize> {
        self.generators
            .iter()
            .enumerate()
            .filter(|(_, g)| g.primary)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    /// Matrix of a single signed letter.
    fn letter_matrix(&self, index: usize, inverse: bool) -> Result<&Matrix, GroupError> {
        let g = self
            .generators
            .get(index)
            .ok_or(GroupError::GeneratorIndex(index, self.generators.len()))?;
        if inverse {
            Ok(&self.generators[g.inverse].matrix)
        } else {
            Ok(&g.matrix)
        }
    }

    /// Evaluate a word left to right. Uses a balanced product tree so that
    /// very long witness words stay tractable.
    pub fn evaluate_word(&self, w: &Word) -> Result<Matrix, GroupError> {
        if w.is_empty() {
            return Ok(self.identity_matrix());
        }
        self.eval_range(w, 0, w.len())
    }

    fn eval_range(&self, w: &Word, lo: usize, hi: usize) -> Result<Matrix, GroupError> {
        if hi - lo == 1 {
            let l = w.letters()[lo];
            return Ok(self.letter_matrix(l.index, l.inverse)?.clone());
        }
        let mid = (lo + hi) / 2;
        let a = self.eval_range(w, lo, mid)?;
        let b = self.eval_range(w, mid, hi)?;
        Ok(a.mul(&b, &self.denominators))
    }

    pub fn is_identity_word(&self, w: &Word) -> Result<bool, GroupError> {
        Ok(self.evaluate_word(w)?.is_identity(&self.denominators))
    }

    /// Phi: the product, with multiplicity, of all denominator polynomials
    /// appearing in generator entries (1 when every entry is polynomial).
    pub fn phi_product(&self) -> MultiPoly {
        expand_powers(
            &self.phi_multiset(),
            &self.denominators,
            self.num_vars,
            self.characteristic,
        )
    }

    /// Phi as a multiset of denominator indices.
    pub fn phi_multiset(&self) -> DenomPowers {
        let mut acc: DenomPowers = BTreeMap::new();
        for g in &self.generators {
            for e in &g.matrix.entries {
                for (&i, &pw) in &e.denominator {
                    *acc.entry(i).or_insert(0) += pw;
                }
            }
        }
        acc
    }

    /// The constants K, C, Phi of the degree and magnitude bounds.
    pub fn generator_constants(&self) -> GeneratorConstants {
        let phi_ms = self.phi_multiset();
        let mut k = 0u32;
        let mut c: Option<BigInt> = if self.characteristic == Char::Zero {
            Some(BigInt::zero())
        } else {
            None
        };
        for g in &self.generators {
            for e in &g.matrix.entries {
                if e.is_zero() {
                    continue;
                }
                let cleared = self.clear_entry(e, &phi_ms);
                k = k.max(cleared.degree());
                if let Some(cmax) = &mut c {
                    let m = e.numerator.max_abs_coeff().expect("char zero");
                    if m > *cmax {
                        *cmax = m;
                    }
                }
            }
        }
        GeneratorConstants { k, c, phi: self.phi_product() }
    }

    /// Multiply entry by the polynomial expand(phi_ms - entry.denominator);
    /// callers guarantee the entry's denominator is a sub-multiset of phi_ms.
    fn clear_entry(&self, e: &LocalizedElem, phi_ms: &DenomPowers) -> MultiPoly {
        let mut rest: DenomPowers = BTreeMap::new();
        for (&i, &pw) in phi_ms {
            let have = e.denominator.get(&i).copied().unwrap_or(0);
            debug_assert!(have <= pw);
            if pw > have {
                rest.insert(i, pw - have);
            }
        }
        let factor = expand_powers(&rest, &self.denominators, self.num_vars, self.characteristic);
        e.numerator.mul(&factor).expect("same ring")
    }

    /// Clear denominators of an evaluated word: returns the polynomial
    /// matrix `Phi^n * M` where n = word length. Errors when the accumulated
    /// denominators do not divide `Phi^n`, which indicates a mis-specified
    /// denominator set.
    pub fn cleared_word_matrix(&self, m: &Matrix, word_len: usize) -> Result<Vec<MultiPoly>, GroupError> {
        let mut phi_n: DenomPowers = BTreeMap::new();
        for (&i, &pw) in &self.phi_multiset() {
            phi_n.insert(i, pw * word_len as u32);
        }
        let mut out = Vec::with_capacity(m.entries.len());
        for e in &m.entries {
            for (&i, &pw) in &e.denominator {
                if phi_n.get(&i).copied().unwrap_or(0) < pw {
                    return Err(GroupError::PhiCancellation);
                }
            }
            out.push(self.clear_entry(e, &phi_n));
        }
        Ok(out)
    }

    /// Check `max deg(Phi^||w|| * w_ij) <= K * ||w||`.
    pub fn check_degree_bound(&self, w: &Word) -> Result<BoundReport, GroupError> {
        let m = self.evaluate_word(w)?;
        let cleared = self.cleared_word_matrix(&m, w.len())?;
        let max_deg = cleared.iter().map(|p| p.degree()).max().unwrap_or(0);
        let k = self.generator_constants().k;
        let bound = BigInt::from(k) * BigInt::from(w.len());
        Ok(BoundReport { holds: BigInt::from(max_deg) <= bound, observed: BigInt::from(max_deg), bound })
    }

    /// Check `max |coeff(Phi^||w|| * w_ij)| <= (2*max(K,1)*C*l)^||w|| * ||w||!`
    /// (characteristic zero only).
    pub fn check_coeff_bound(&self, w: &Word) -> Result<BoundReport, GroupError> {
        if self.characteristic != Char::Zero {
            return Err(GroupError::CoeffBoundCharP);
        }
        let m = self.evaluate_word(w)?;
        let cleared = self.cleared_word_matrix(&m, w.len())?;
        let max_abs = cleared
            .iter()
            .filter_map(|p| p.max_abs_coeff())
            .max()
            .unwrap_or_else(BigInt::zero);
        let consts = self.generator_constants();
        let k = consts.k.max(1);
        let c = consts.c.expect("char zero");
        let n = w.len() as u32;
        let base = BigInt::from(2u32) * BigInt::from(k) * c * BigInt::from(self.dimension);
        let mut bound = base.pow(n);
        let mut fact = BigInt::one();
        for i in 1..=n {
            fact *= BigInt::from(i);
        }
        bound *= fact;
        Ok(BoundReport { holds: max_abs <= bound, observed: max_abs, bound })
    }
}

/// K, C, Phi as used by the degree/magnitude bounds. `c` is `None` in
/// positive characteristic, where coefficient magnitude is undefined.
#[derive(Debug, Clone)]
pub struct GeneratorConstants {
    pub k: u32,
    pub c: Option<BigInt>,
    pub phi: MultiPoly,
}

/// Outcome of a bound check.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub holds: bool,
    pub observed: BigInt,
    pub bound: BigInt,
}

/// Bundled example specs used by tests, benches, and `check`.
pub mod fixtures {
    use super::*;
    use crate::ring::Coefficient;

    fn int_matrix(dim: usize, rows: &[&[i64]]) -> Matrix {
        let entries = rows
            .iter()
            .flat_map(|r| r.iter())
            .map(|&v| LocalizedElem::from_poly(MultiPoly::constant(0, Char::Zero, v)))
            .collect();
        Matrix { dim, entries }
    }

    /// The Sanov subgroup of SL_2(Z): A = [[1,2],[0,1]], B = [[1,0],[2,1]],
    /// free of rank 2.
    pub fn sanov() -> GroupSpec {
        GroupSpec::new(
            "sanov",
            2,
            Char::Zero,
            0,
            DenominatorSet::empty(),
            vec![
                (
                    "A".into(),
                    int_matrix(2, &[&[1, 2], &[0, 1]]),
                    "Ainv".into(),
                    int_matrix(2, &[&[1, -2], &[0, 1]]),
                ),
                (
                    "B".into(),
                    int_matrix(2, &[&[1, 0], &[2, 1]]),
                    "Binv".into(),
                    int_matrix(2, &[&[1, 0], &[-2, 1]]),
                ),
            ],
        )
        .expect("fixture is valid")
    }

    fn poly_entry(num_vars: usize, ch: Char, terms: &[(&[u32], i64)]) -> LocalizedElem {
        LocalizedElem::from_poly(MultiPoly::from_terms(
            num_vars,
            ch,
            terms
                .iter()
                .map(|(e, c)| (e.to_vec(), Coefficient::from_i64(*c, ch))),
        ))
    }

    /// Unipotent generators with polynomial entries over Z[T1]:
    /// U = [[1, 2*T1],[0,1]], V = [[1,0],[2*T1,1]].
    pub fn poly_unipotent() -> GroupSpec {
        let ch = Char::Zero;
        let e0 = || poly_entry(1, ch, &[]);
        let e1 = || poly_entry(1, ch, &[(&[0], 1)]);
        let t2 = || poly_entry(1, ch, &[(&[1], 2)]);
        let t2n = || poly_entry(1, ch, &[(&[1], -2)]);
        let m = |a: LocalizedElem, b: LocalizedElem, c: LocalizedElem, d: LocalizedElem| Matrix {
            dim: 2,
            entries: vec![a, b, c, d],
        };
        GroupSpec::new(
            "poly-unipotent",
            2,
            ch,
            1,
            DenominatorSet::empty(),
            vec![
                ("U".into(), m(e1(), t2(), e0(), e1()), "Uinv".into(), m(e1(), t2n(), e0(), e1())),
                ("V".into(), m(e1(), e0(), t2(), e1()), "Vinv".into(), m(e1(), e0(), t2n(), e1())),
            ],
        )
        .expect("fixture is valid")
    }

    /// A spec with genuine denominators over Z[1/T1][T1]:
    /// W = [[1, 1/T1],[0,1]] and D = [[T1, 0],[0, 1/T1]] (det 1, scaled shear).
    pub fn localized() -> GroupSpec {
        let ch = Char::Zero;
        let t1 = MultiPoly::variable(1, ch, 0);
        let s = DenominatorSet::new(vec![t1.clone()]).unwrap();
        let zero = || LocalizedElem::zero(1, ch);
        let one = || LocalizedElem::one(1, ch);
        let t = || LocalizedElem::from_poly(t1.clone());
        let inv_t = |sign: i64| {
            LocalizedElem::new(
                MultiPoly::constant(1, ch, sign),
                [(0usize, 1u32)].into(),
                &s,
            )
            .unwrap()
        };
        let m = |a: LocalizedElem, b: LocalizedElem, c: LocalizedElem, d: LocalizedElem| Matrix {
            dim: 2,
            entries: vec![a, b, c, d],
        };
        GroupSpec::new(
            "localized",
            2,
            ch,
            1,
            s.clone(),
            vec![
                ("W".into(), m(one(), inv_t(1), zero(), one()), "Winv".into(), m(one(), inv_t(-1), zero(), one())),
                ("D".into(), m(t(), zero(), zero(), inv_t(1)), "Dinv".into(), m(inv_t(1), zero(), zero(), t())),
            ],
        )
        .expect("fixture is valid")
    }

    /// Two-variable unipotent generators over Z[T1, T2]:
    /// U = [[1, T1],[0,1]], V = [[1,0],[T2,1]].
    pub fn two_vars() -> GroupSpec {
        let ch = Char::Zero;
        let zero = || poly_entry(2, ch, &[]);
        let one = || poly_entry(2, ch, &[(&[0, 0], 1)]);
        let t1 = |s: i64| poly_entry(2, ch, &[(&[1, 0], s)]);
        let t2 = |s: i64| poly_entry(2, ch, &[(&[0, 1], s)]);
        let m = |a: LocalizedElem, b: LocalizedElem, c: LocalizedElem, d: LocalizedElem| Matrix {
            dim: 2,
            entries: vec![a, b, c, d],
        };
        GroupSpec::new(
            "two-vars",
            2,
            ch,
            2,
            DenominatorSet::empty(),
            vec![
                ("U".into(), m(one(), t1(1), zero(), one()), "Uinv".into(), m(one(), t1(-1), zero(), one())),
                ("V".into(), m(one(), zero(), t2(1), one()), "Vinv".into(), m(one(), zero(), t2(-1), one())),
            ],
        )
        .expect("fixture is valid")
    }

    /// Two-variable characteristic-2 version of the same shape over F_2[T1, T2].
    pub fn two_vars_char2() -> GroupSpec {
        let ch = Char::Prime(2);
        let zero = || poly_entry(2, ch, &[]);
        let one = || poly_entry(2, ch, &[(&[0, 0], 1)]);
        let t1 = || poly_entry(2, ch, &[(&[1, 0], 1)]);
        let t2 = || poly_entry(2, ch, &[(&[0, 1], 1)]);
        let m = |a: LocalizedElem, b: LocalizedElem, c: LocalizedElem, d: LocalizedElem| Matrix {
            dim: 2,
            entries: vec![a, b, c, d],
        };
        GroupSpec::new(
            "two-vars-char2",
            2,
            ch,
            2,
            DenominatorSet::empty(),
            vec![
                ("U".into(), m(one(), t1(), zero(), one()), "Uinv".into(), m(one(), t1(), zero(), one())),
                ("V".into(), m(one(), zero(), t2(), one()), "Vinv".into(), m(one(), zero(), t2(), one())),
            ],
        )
        .expect("fixture is valid")
    }

    /// A spec whose only generator is the identity; useful for the trivial
    /// edges of the constants and image computations.
    pub fn identity_only() -> GroupSpec {
        let ch = Char::Zero;
        GroupSpec::new(
            "identity-only",
            2,
            ch,
            0,
            DenominatorSet::empty(),
            vec![(
                "E".into(),
                Matrix::identity(2, 0, ch),
                "Einv".into(),
                Matrix::identity(2, 0, ch),
            )],
        )
        .expect("fixture is valid")
    }

    /// Characteristic-2 spec over F_2[T1]: U = [[1, T1],[0,1]], V = [[1,0],[T1,1]].
    pub fn char2_unipotent() -> GroupSpec {
        let ch = Char::Prime(2);
        let zero = || poly_entry(1, ch, &[]);
        let one = || poly_entry(1, ch, &[(&[0], 1)]);
        let t = || poly_entry(1, ch, &[(&[1], 1)]);
        let m = |a: LocalizedElem, b: LocalizedElem, c: LocalizedElem, d: LocalizedElem| Matrix {
            dim: 2,
            entries: vec![a, b, c, d],
        };
        GroupSpec::new(
            "char2-unipotent",
            2,
            ch,
            1,
            DenominatorSet::empty(),
            vec![
                ("U".into(), m(one(), t(), zero(), one()), "Uinv".into(), m(one(), t(), zero(), one())),
                ("V".into(), m(one(), zero(), t(), one()), "Vinv".into(), m(one(), zero(), t(), one())),
            ],
        )
        .expect("fixture is valid")
    }
}
