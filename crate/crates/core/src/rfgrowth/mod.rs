//! Brute-force residual-finiteness oracle and growth-curve machinery: depth
//! functions over a quotient catalog, restricted target classes, invariance
//! under supplied automorphisms, invariant cores, and empirical polynomial
//! fitting.

pub mod catalog;

pub use catalog::{default_catalog, CatalogEntry, ClassTag, QuotientCatalog, Target};

use crate::error::EnumError;
use crate::finite::GroupTable;
use crate::matgroup::GroupSpec;
use crate::separate::{separate_element, SeparationMode};
use crate::word::{Letter, Word};
use num_bigint::BigInt;
use std::collections::HashSet;
use std::sync::Arc;

/// Restriction on the quotients the depth oracle may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassFilter {
    /// Any finite group.
    Any,
    /// Finite products of finite simple groups of Lie type.
    LieProducts,
    /// Lie products whose factors have extension degree at most e.
    ExtBounded(u32),
}

impl ClassFilter {
    fn admits(self, tag: ClassTag) -> bool {
        match (self, tag) {
            (ClassFilter::Any, _) => true,
            (ClassFilter::LieProducts, ClassTag::SimpleLie { .. }) => true,
            (ClassFilter::LieProducts, ClassTag::ProductOfLie { .. }) => true,
            (ClassFilter::ExtBounded(e), ClassTag::SimpleLie { ext_degree }) => ext_degree <= e,
            (ClassFilter::ExtBounded(e), ClassTag::ProductOfLie { max_ext_degree }) => {
                max_ext_degree <= e
            }
            _ => false,
        }
    }

    pub fn as_str(self) -> String {
        match self {
            ClassFilter::Any => "any".into(),
            ClassFilter::LieProducts => "lie-products".into(),
            ClassFilter::ExtBounded(e) => format!("ext-bounded({e})"),
        }
    }
}

/// A homomorphism from a free group into a materialized target, given by the
/// generator images.
#[derive(Debug, Clone)]
pub struct FiniteHom {
    pub target: Arc<GroupTable>,
    pub images: Vec<usize>,
}

impl FiniteHom {
    pub fn eval(&self, w: &Word) -> usize {
        self.target.eval_word(&self.images, w)
    }

    /// Order of the image subgroup.
    pub fn image_order(&self) -> usize {
        self.target.subgroup(&self.images).len()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_order() == self.target.order()
    }
}

/// A homomorphism into a finite product of materialized targets.
#[derive(Debug, Clone)]
pub struct ProductHom {
    pub factors: Vec<FiniteHom>,
}

impl ProductHom {
    pub fn eval(&self, w: &Word) -> Vec<usize> {
        self.factors.iter().map(|f| f.eval(w)).collect()
    }

    pub fn kills(&self, w: &Word) -> bool {
        self.eval(w).iter().all(|&x| x == 0)
    }

    /// Order of the joint image inside the product, by tuple closure.
    pub fn image_order(&self) -> usize {
        let rank = self.factors.first().map(|f| f.images.len()).unwrap_or(0);
        let gens: Vec<Vec<usize>> = (0..rank)
            .map(|i| self.factors.iter().map(|f| f.images[i]).collect())
            .collect();
        tuple_closure(&self.factors, &gens).len()
    }
}

/// Closure of tuples under componentwise multiplication.
fn tuple_closure(factors: &[FiniteHom], gens: &[Vec<usize>]) -> HashSet<Vec<usize>> {
    let ident: Vec<usize> = vec![0; factors.len()];
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert(ident.clone());
    let mut frontier = vec![ident];
    while let Some(t) = frontier.pop() {
        for g in gens {
            let prod: Vec<usize> = t
                .iter()
                .zip(g.iter())
                .zip(factors.iter())
                .map(|((&a, &b), f)| f.target.mul(a, b))
                .collect();
            if seen.insert(prod.clone()) {
                frontier.push(prod);
            }
        }
    }
    seen
}

/// All k-tuples of elements of the target, each defining a homomorphism from
/// F_k; deterministic lexicographic order over element indices.
pub fn enumerate_homs(
    rank: usize,
    target: Arc<GroupTable>,
    budget: u128,
) -> Result<impl Iterator<Item = FiniteHom>, EnumError> {
    let needed = (target.order() as u128)
        .checked_pow(rank as u32)
        .unwrap_or(u128::MAX);
    if needed > budget {
        return Err(EnumError::Budget { needed, budget });
    }
    let order = target.order();
    let mut counter = vec![0usize; rank];
    let mut done = rank == 0;
    Ok(std::iter::from_fn(move || {
        if done {
            return None;
        }
        let hom = FiniteHom { target: Arc::clone(&target), images: counter.clone() };
        let mut i = rank;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            counter[i] += 1;
            if counter[i] < order {
                break;
            }
            counter[i] = 0;
        }
        Some(hom)
    }))
}

/// A substitution rule on the free group, with its declared inverse.
#[derive(Debug, Clone)]
pub struct AutRule {
    pub name: String,
    pub forward: Vec<Word>,
    pub inverse: Vec<Word>,
}

impl AutRule {
    /// Apply the forward substitution to a word.
    pub fn apply(&self, w: &Word) -> Word {
        apply_subst(&self.forward, w)
    }

    pub fn apply_inverse(&self, w: &Word) -> Word {
        apply_subst(&self.inverse, w)
    }

    /// Check that forward and inverse compose to the identity on the free
    /// generators, in both orders.
    pub fn validate(&self, rank: usize) -> Result<(), EnumError> {
        if self.forward.len() != rank || self.inverse.len() != rank {
            return Err(EnumError::BadAutRule);
        }
        for i in 0..rank {
            let fw_then_inv = apply_subst(&self.inverse, &self.forward[i]);
            let inv_then_fw = apply_subst(&self.forward, &self.inverse[i]);
            let gen = Word::gen(i);
            if fw_then_inv.free_reduce() != gen || inv_then_fw.free_reduce() != gen {
                return Err(EnumError::BadAutRule);
            }
        }
        Ok(())
    }
}

fn apply_subst(images: &[Word], w: &Word) -> Word {
    let mut out = Word::empty();
    for l in w.letters() {
        let img = &images[l.index];
        out = out.concat(&if l.inverse { img.inverse() } else { img.clone() });
    }
    out
}

/// The Nielsen generating set of Aut(F_k): swap the first two generators,
/// invert the first, right-translate the first by the second, and (for
/// k >= 3) cycle the generators.
pub fn nielsen_rules(rank: usize) -> Vec<AutRule> {
    assert!(rank >= 2);
    let gen = |i: usize| Word::gen(i);
    let mut rules = Vec::new();
    // swap x1 <-> x2
    let mut swap: Vec<Word> = (0..rank).map(gen).collect();
    swap.swap(0, 1);
    rules.push(AutRule { name: "swap".into(), forward: swap.clone(), inverse: swap });
    // invert x1
    let mut inv: Vec<Word> = (0..rank).map(gen).collect();
    inv[0] = gen(0).inverse();
    rules.push(AutRule { name: "invert".into(), forward: inv.clone(), inverse: inv });
    // translate x1 -> x1 x2
    let mut tr: Vec<Word> = (0..rank).map(gen).collect();
    tr[0] = gen(0).concat(&gen(1));
    let mut tr_inv: Vec<Word> = (0..rank).map(gen).collect();
    tr_inv[0] = gen(0).concat(&gen(1).inverse());
    rules.push(AutRule { name: "translate".into(), forward: tr, inverse: tr_inv });
    if rank >= 3 {
        let cyc: Vec<Word> = (0..rank).map(|i| gen((i + 1) % rank)).collect();
        let cyc_inv: Vec<Word> = (0..rank).map(|i| gen((i + rank - 1) % rank)).collect();
        rules.push(AutRule { name: "cycle".into(), forward: cyc, inverse: cyc_inv });
    }
    rules
}

/// Kernel invariance of a homomorphism under each rule and its inverse,
/// decided by the joint-image test: ker phi is contained in ker (phi o alpha)
/// iff the closure of the pairs (phi(x_i), phi(alpha(x_i))) has the same
/// order as the image of phi.
pub fn kernel_invariant(hom: &FiniteHom, rules: &[AutRule]) -> Result<bool, EnumError> {
    let rank = hom.images.len();
    for rule in rules {
        rule.validate(rank)?;
        for dir in [true, false] {
            let composed: Vec<usize> = (0..rank)
                .map(|i| {
                    let img = if dir {
                        rule.apply(&Word::gen(i))
                    } else {
                        rule.apply_inverse(&Word::gen(i))
                    };
                    hom.eval(&img)
                })
                .collect();
            if !kernel_contained(hom, &FiniteHom { target: Arc::clone(&hom.target), images: composed }) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// ker a is contained in ker b, via the joint-image size test. Both homs
/// must share a rank (targets may differ).
fn kernel_contained(a: &FiniteHom, b: &FiniteHom) -> bool {
    let pair = ProductHom { factors: vec![a.clone(), b.clone()] };
    pair.image_order() == a.image_order()
}

fn same_kernel(a: &FiniteHom, b: &FiniteHom) -> bool {
    kernel_contained(a, b) && kernel_contained(b, a)
}

/// Result of the invariant-core computation: the diagonal homomorphism over
/// the kernel orbit, whose kernel is the invariant core relative to the
/// supplied automorphism generators.
#[derive(Debug, Clone)]
pub struct InvariantCore {
    pub diagonal: ProductHom,
    pub orbit_size: usize,
}

/// Walk the orbit of ker(hom) under the group generated by the rules,
/// representing kernels by composed homomorphisms and comparing them with
/// the joint-image test.
pub fn invariant_core(
    hom: &FiniteHom,
    rules: &[AutRule],
    orbit_cap: usize,
) -> Result<InvariantCore, EnumError> {
    let rank = hom.images.len();
    for rule in rules {
        rule.validate(rank)?;
    }
    let mut reps: Vec<FiniteHom> = vec![hom.clone()];
    let mut frontier = vec![hom.clone()];
    while let Some(cur) = frontier.pop() {
        for rule in rules {
            for dir in [true, false] {
                let composed: Vec<usize> = (0..rank)
                    .map(|i| {
                        let img = if dir {
                            rule.apply(&Word::gen(i))
                        } else {
                            rule.apply_inverse(&Word::gen(i))
                        };
                        cur.eval(&img)
                    })
                    .collect();
                let next = FiniteHom { target: Arc::clone(&hom.target), images: composed };
                if !reps.iter().any(|r| same_kernel(r, &next)) {
                    if reps.len() >= orbit_cap {
                        return Err(EnumError::OrbitUnbounded { cap: orbit_cap });
                    }
                    reps.push(next.clone());
                    frontier.push(next);
                }
            }
        }
    }
    let orbit_size = reps.len();
    Ok(InvariantCore { diagonal: ProductHom { factors: reps }, orbit_size })
}

/// Coordinate projection of a product homomorphism, selecting the first
/// factor in which the tracked word survives.
pub fn project_to_factor(
    hom: &ProductHom,
    tracked: &Word,
) -> Result<(usize, FiniteHom), EnumError> {
    for (i, f) in hom.factors.iter().enumerate() {
        if f.eval(tracked) != 0 {
            return Ok((i, f.clone()));
        }
    }
    Err(EnumError::DeadInAllFactors)
}

/// Brute-force depth report: the first catalog target that separates the
/// word under the given restrictions.
#[derive(Debug, Clone)]
pub struct DepthReport {
    pub word: Word,
    pub target_name: String,
    pub order: u64,
    pub class: String,
    pub invariance_required: bool,
    /// True when the catalog provably contains every admissible group of
    /// order below the answer, making the answer the true depth.
    pub exhaustive: bool,
}

/// Options for the depth scan.
#[derive(Debug, Clone)]
pub struct DepthOptions {
    pub filter: ClassFilter,
    pub budget: u128,
    /// When set, kernels must additionally be invariant under these rules.
    pub aut: Option<Vec<AutRule>>,
}

impl Default for DepthOptions {
    fn default() -> Self {
        DepthOptions { filter: ClassFilter::Any, budget: 30_000_000, aut: None }
    }
}

/// Scan the catalog ascending by order and return the first target that
/// admits a homomorphism separating the word (an epimorphism, for restricted
/// classes). The result is catalog-relative: an upper bound on the true
/// depth, exact when the exhaustiveness flag is set.
pub fn depth(
    rank: usize,
    word: &Word,
    cat: &QuotientCatalog,
    opts: &DepthOptions,
) -> Result<DepthReport, EnumError> {
    if word.is_trivial_free() {
        return Err(EnumError::TrivialWord);
    }
    let needs_epi = opts.filter != ClassFilter::Any;
    for entry in &cat.entries {
        if !opts.filter.admits(entry.class) {
            continue;
        }
        let found = match &entry.target {
            Target::Single(table) => scan_single(rank, word, table, needs_epi, opts)?,
            Target::Product(a, b) => scan_product(rank, word, a, b, needs_epi, opts)?,
        };
        if found {
            let exhaustive = match opts.filter {
                ClassFilter::Any => entry.order <= cat.complete_through + 1,
                _ => entry.order <= cat.lie_complete_through + 1,
            };
            return Ok(DepthReport {
                word: word.clone(),
                target_name: entry.name.clone(),
                order: entry.order,
                class: opts.filter.as_str(),
                invariance_required: opts.aut.is_some(),
                exhaustive,
            });
        }
    }
    Err(EnumError::NotSeparated)
}

fn scan_single(
    rank: usize,
    word: &Word,
    table: &Arc<GroupTable>,
    needs_epi: bool,
    opts: &DepthOptions,
) -> Result<bool, EnumError> {
    for hom in enumerate_homs(rank, Arc::clone(table), opts.budget)? {
        if hom.eval(word) == 0 {
            continue;
        }
        if needs_epi && !hom.is_surjective() {
            continue;
        }
        if let Some(rules) = &opts.aut {
            if !kernel_invariant(&hom, rules)? {
                continue;
            }
        }
        return Ok(true);
    }
    Ok(false)
}

fn scan_product(
    rank: usize,
    word: &Word,
    a: &Arc<GroupTable>,
    b: &Arc<GroupTable>,
    needs_epi: bool,
    opts: &DepthOptions,
) -> Result<bool, EnumError> {
    let needed = ((a.order() * b.order()) as u128)
        .checked_pow(rank as u32)
        .unwrap_or(u128::MAX);
    if needed > opts.budget {
        return Err(EnumError::Budget { needed, budget: opts.budget });
    }
    for ha in enumerate_homs(rank, Arc::clone(a), u128::MAX)? {
        for hb in enumerate_homs(rank, Arc::clone(b), u128::MAX)? {
            let pair = ProductHom { factors: vec![ha.clone(), hb.clone()] };
            if pair.kills(word) {
                continue;
            }
            if needs_epi && pair.image_order() != a.order() * b.order() {
                continue;
            }
            if let Some(rules) = &opts.aut {
                // invariance of the product kernel: both coordinates jointly
                let joint = FiniteHom {
                    target: Arc::clone(a),
                    images: ha.images.clone(),
                };
                let _ = joint;
                if !product_kernel_invariant(&pair, rules)? {
                    continue;
                }
            }
            return Ok(true);
        }
    }
    Ok(false)
}

fn product_kernel_invariant(pair: &ProductHom, rules: &[AutRule]) -> Result<bool, EnumError> {
    let rank = pair.factors[0].images.len();
    for rule in rules {
        rule.validate(rank)?;
        for dir in [true, false] {
            let mut all = pair.factors.clone();
            for f in &pair.factors {
                let composed: Vec<usize> = (0..rank)
                    .map(|i| {
                        let img = if dir {
                            rule.apply(&Word::gen(i))
                        } else {
                            rule.apply_inverse(&Word::gen(i))
                        };
                        f.eval(&img)
                    })
                    .collect();
                all.push(FiniteHom { target: Arc::clone(&f.target), images: composed });
            }
            let joint = ProductHom { factors: all };
            if joint.image_order() != pair.image_order() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Enumerate the freely reduced nontrivial words of length exactly `len`
/// over `rank` generators.
pub fn reduced_words(rank: usize, len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let alphabet: Vec<Letter> = (0..rank)
        .flat_map(|i| [Letter::gen(i), Letter::inv_gen(i)])
        .collect();
    fn rec(alphabet: &[Letter], len: usize, cur: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if cur.len() == len {
            out.push(Word(cur.clone()));
            return;
        }
        for &l in alphabet {
            if let Some(&last) = cur.last() {
                if last.index == l.index && last.inverse != l.inverse {
                    continue;
                }
            }
            cur.push(l);
            rec(alphabet, len, cur, out);
            cur.pop();
        }
    }
    let mut cur = Vec::new();
    rec(&alphabet, len, &mut cur, &mut out);
    out
}

/// Source of a residual-finiteness curve.
pub enum CurveSource<'a> {
    /// Brute-force catalog depth over the free group F_rank.
    Oracle {
        rank: usize,
        catalog: &'a QuotientCatalog,
        opts: DepthOptions,
    },
    /// Pipeline certificate order bounds over a matrix group spec.
    Pipeline { spec: &'a GroupSpec, mode: SeparationMode },
}

/// `(n, max over nontrivial words of length <= n of depth-or-bound)` for
/// n = 1..n_max. Monotone by construction.
pub fn rf_curve(source: &CurveSource<'_>, n_max: usize) -> Result<Vec<(usize, BigInt)>, EnumError> {
    let mut out = Vec::with_capacity(n_max);
    let mut running = BigInt::from(0u32);
    for n in 1..=n_max {
        match source {
            CurveSource::Oracle { rank, catalog, opts } => {
                for w in reduced_words(*rank, n) {
                    let rep = depth(*rank, &w, catalog, opts)?;
                    let v = BigInt::from(rep.order);
                    if v > running {
                        running = v;
                    }
                }
            }
            CurveSource::Pipeline { spec, mode } => {
                let rank = spec.primary_indices().len();
                for w in reduced_words(rank, n) {
                    let native = crate::witness::GroupHandle::Matrix(spec).to_native(&w);
                    match separate_element(spec, &native, *mode) {
                        Ok(cert) => {
                            if cert.order_bound > running {
                                running = cert.order_bound;
                            }
                        }
                        Err(crate::error::SeparateError::IdentityWord) => continue,
                        Err(e) => return Err(EnumError::Degenerate(e.to_string())),
                    }
                }
            }
        }
        out.push((n, running.clone()));
    }
    Ok(out)
}

/// Least-squares fit of `log(value) = log(C) + d*log(n)`. Returns
/// (C, d, max residual in log space).
pub fn fit_polynomial(curve: &[(usize, BigInt)]) -> Result<(f64, f64, f64), EnumError> {
    let pts: Vec<(f64, f64)> = curve
        .iter()
        .filter(|(n, v)| *n >= 1 && *v > BigInt::from(0u32))
        .map(|(n, v)| ((*n as f64).ln(), bigint_ln(v)))
        .collect();
    if pts.len() < 3 {
        return Err(EnumError::Degenerate("need at least 3 positive points".into()));
    }
    let n = pts.len() as f64;
    let mean_x = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    if sxx == 0.0 {
        return Err(EnumError::Degenerate("all points share one n".into()));
    }
    let d = sxy / sxx;
    let log_c = mean_y - d * mean_x;
    let resid = pts
        .iter()
        .map(|p| (p.1 - (log_c + d * p.0)).abs())
        .fold(0.0f64, f64::max);
    Ok((log_c.exp(), d, resid))
}

fn bigint_ln(v: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    match v.to_f64() {
        Some(f) if f.is_finite() && f > 0.0 => f.ln(),
        _ => v.bits() as f64 * std::f64::consts::LN_2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{free_names, parse_word};
    use std::cell::OnceCell;

    fn fw(s: &str) -> Word {
        parse_word(s, &free_names(2)).unwrap()
    }

    thread_local! {
        static CATALOG: OnceCell<QuotientCatalog> = const { OnceCell::new() };
    }

    fn with_catalog<R>(f: impl FnOnce(&QuotientCatalog) -> R) -> R {
        CATALOG.with(|c| f(c.get_or_init(default_catalog)))
    }

    #[test]
    fn depth_of_generator_is_2() {
        with_catalog(|cat| {
            let rep = depth(2, &fw("x"), cat, &DepthOptions::default()).unwrap();
            assert_eq!(rep.order, 2);
            assert_eq!(rep.target_name, "C2");
            assert!(rep.exhaustive);
        });
    }

    #[test]
    fn depth_of_commutator_is_6() {
        with_catalog(|cat| {
            let rep = depth(2, &fw("[x,y]"), cat, &DepthOptions::default()).unwrap();
            assert_eq!(rep.order, 6);
            assert!(rep.exhaustive);
        });
    }

    #[test]
    fn depth_of_commutator_in_lie_class_is_60() {
        with_catalog(|cat| {
            let opts = DepthOptions { filter: ClassFilter::LieProducts, ..Default::default() };
            let rep = depth(2, &fw("[x,y]"), cat, &opts).unwrap();
            assert_eq!(rep.order, 60);
        });
    }

    #[test]
    fn trivial_word_rejected() {
        with_catalog(|cat| {
            assert!(matches!(
                depth(2, &fw("x x^-1"), cat, &DepthOptions::default()),
                Err(EnumError::TrivialWord)
            ));
        });
    }

    #[test]
    fn budget_error_on_tiny_budget() {
        with_catalog(|cat| {
            let opts = DepthOptions { budget: 2, ..Default::default() };
            assert!(matches!(
                depth(2, &fw("[x,y]"), cat, &opts),
                Err(EnumError::Budget { .. })
            ));
        });
    }

    #[test]
    fn hom_count_is_order_to_the_rank() {
        with_catalog(|cat| {
            let s3 = cat
                .entries
                .iter()
                .find(|e| e.name == "D3")
                .map(|e| match &e.target {
                    Target::Single(t) => Arc::clone(t),
                    _ => panic!(),
                })
                .unwrap();
            let homs: Vec<_> = enumerate_homs(2, Arc::clone(&s3), 1000).unwrap().collect();
            assert_eq!(homs.len(), 36);
            let c2 = cat
                .entries
                .iter()
                .find(|e| e.name == "C2")
                .map(|e| match &e.target {
                    Target::Single(t) => Arc::clone(t),
                    _ => panic!(),
                })
                .unwrap();
            assert_eq!(enumerate_homs(1, c2, 1000).unwrap().count(), 2);
            assert!(matches!(
                enumerate_homs(2, s3, 10),
                Err(EnumError::Budget { .. })
            ));
        });
    }

    #[test]
    fn nielsen_rules_are_automorphisms() {
        for rule in nielsen_rules(2) {
            rule.validate(2).unwrap();
        }
        for rule in nielsen_rules(3) {
            rule.validate(3).unwrap();
        }
    }

    #[test]
    fn mod2_abelianization_kernel_is_invariant() {
        with_catalog(|cat| {
            // phi: F_2 -> C2 x C2 (x -> (1,0), y -> (0,1))
            let c2c2 = cat
                .entries
                .iter()
                .find(|e| e.name == "C2xC2")
                .map(|e| match &e.target {
                    Target::Single(t) => Arc::clone(t),
                    _ => panic!(),
                })
                .unwrap();
            let g0 = c2c2.gens[0];
            let g1 = c2c2.gens[1];
            let hom = FiniteHom { target: c2c2, images: vec![g0, g1] };
            assert!(kernel_invariant(&hom, &nielsen_rules(2)).unwrap());
        });
    }

    #[test]
    fn single_c2_kernel_is_not_invariant() {
        with_catalog(|cat| {
            let c2 = cat
                .entries
                .iter()
                .find(|e| e.name == "C2")
                .map(|e| match &e.target {
                    Target::Single(t) => Arc::clone(t),
                    _ => panic!(),
                })
                .unwrap();
            // x -> 1, y -> 0
            let hom = FiniteHom { target: c2, images: vec![1, 0] };
            assert!(!kernel_invariant(&hom, &nielsen_rules(2)).unwrap());
        });
    }

    #[test]
    fn xy_parity_kernel_fails_translation() {
        with_catalog(|cat| {
            // phi(x) = phi(y) = 1 in C2; under x -> xy the kernel moves
            let c2 = cat
                .entries
                .iter()
                .find(|e| e.name == "C2")
                .map(|e| match &e.target {
                    Target::Single(t) => Arc::clone(t),
                    _ => panic!(),
                })
                .unwrap();
            let hom = FiniteHom { target: c2, images: vec![1, 1] };
            let translate = nielsen_rules(2)
                .into_iter()
                .find(|r| r.name == "translate")
                .unwrap();
            assert!(!kernel_invariant(&hom, &[translate]).unwrap());
        });
    }

    #[test]
    fn invariant_core_of_single_c2() {
        with_catalog(|cat| {
            let c2 = cat
                .entries
                .iter()
                .find(|e| e.name == "C2")
                .map(|e| match &e.target {
                    Target::Single(t) => Arc::clone(t),
                    _ => panic!(),
                })
                .unwrap();
            let hom = FiniteHom { target: c2, images: vec![1, 0] };
            let core = invariant_core(&hom, &nielsen_rules(2), 16).unwrap();
            // orbit: the three index-2 kernels (x-parity, y-parity, xy-parity)
            assert_eq!(core.orbit_size, 3);
            // the diagonal image is the mod-2 abelianization C2 x C2
            assert_eq!(core.diagonal.image_order(), 4);
        });
    }

    #[test]
    fn invariant_core_under_swap_alone_has_orbit_two() {
        with_catalog(|cat| {
            let c2 = cat
                .entries
                .iter()
                .find(|e| e.name == "C2")
                .map(|e| match &e.target {
                    Target::Single(t) => Arc::clone(t),
                    _ => panic!(),
                })
                .unwrap();
            let hom = FiniteHom { target: c2, images: vec![1, 0] };
            let swap = nielsen_rules(2).into_iter().find(|r| r.name == "swap").unwrap();
            let core = invariant_core(&hom, &[swap], 16).unwrap();
            assert_eq!(core.orbit_size, 2);
            // intersection of the x- and y-parity kernels: quotient C2 x C2
            assert_eq!(core.diagonal.image_order(), 4);
        });
    }

    #[test]
    fn invariant_core_of_characteristic_kernel_is_trivial_orbit() {
        with_catalog(|cat| {
            let c2c2 = cat
                .entries
                .iter()
                .find(|e| e.name == "C2xC2")
                .map(|e| match &e.target {
                    Target::Single(t) => Arc::clone(t),
                    _ => panic!(),
                })
                .unwrap();
            let g0 = c2c2.gens[0];
            let g1 = c2c2.gens[1];
            let hom = FiniteHom { target: c2c2, images: vec![g0, g1] };
            let core = invariant_core(&hom, &nielsen_rules(2), 16).unwrap();
            assert_eq!(core.orbit_size, 1);
        });
    }

    #[test]
    fn orbit_cap_errors() {
        with_catalog(|cat| {
            let s3 = cat
                .entries
                .iter()
                .find(|e| e.name == "D3")
                .map(|e| match &e.target {
                    Target::Single(t) => Arc::clone(t),
                    _ => panic!(),
                })
                .unwrap();
            // a surjection F_2 -> S3 whose kernel orbit under Nielsen moves
            let images = vec![s3.gens[0], s3.gens[1]];
            let hom = FiniteHom { target: s3, images };
            let r = invariant_core(&hom, &nielsen_rules(2), 1);
            assert!(matches!(r, Err(EnumError::OrbitUnbounded { cap: 1 })));
        });
    }

    #[test]
    fn project_to_first_survivor() {
        with_catalog(|cat| {
            let c2 = cat
                .entries
                .iter()
                .find(|e| e.name == "C2")
                .map(|e| match &e.target {
                    Target::Single(t) => Arc::clone(t),
                    _ => panic!(),
                })
                .unwrap();
            let dead = FiniteHom { target: Arc::clone(&c2), images: vec![0, 0] };
            let live = FiniteHom { target: c2, images: vec![1, 0] };
            let prod = ProductHom { factors: vec![dead, live.clone()] };
            let (idx, f) = project_to_factor(&prod, &fw("x")).unwrap();
            assert_eq!(idx, 1);
            assert_eq!(f.images, live.images);
            let both = ProductHom { factors: vec![live.clone(), live.clone()] };
            assert_eq!(project_to_factor(&both, &fw("x")).unwrap().0, 0);
            let none = ProductHom { factors: vec![prod.factors[0].clone()] };
            assert!(matches!(
                project_to_factor(&none, &fw("x")),
                Err(EnumError::DeadInAllFactors)
            ));
        });
    }

    #[test]
    fn oracle_curve_small() {
        with_catalog(|cat| {
            let src = CurveSource::Oracle { rank: 2, catalog: cat, opts: DepthOptions::default() };
            let curve = rf_curve(&src, 2).unwrap();
            assert_eq!(curve[0], (1, BigInt::from(2)));
            // x^2 dies in every order-2 quotient and needs C3, so the
            // exhaustive scan over the 12 reduced words of length <= 2
            // yields 3
            assert_eq!(curve[1], (2, BigInt::from(3)));
        });
    }

    #[test]
    fn pipeline_curve_monotone() {
        let spec = crate::matgroup::fixtures::sanov();
        let src = CurveSource::Pipeline { spec: &spec, mode: SeparationMode::Direct };
        let curve = rf_curve(&src, 4).unwrap();
        for w in curve.windows(2) {
            assert!(w[0].1 <= w[1].1);
        }
    }

    #[test]
    fn fit_exact_power_laws() {
        let sq: Vec<(usize, BigInt)> = (1..=8).map(|n| (n, BigInt::from((n * n) as u64))).collect();
        let (_, d, r) = fit_polynomial(&sq).unwrap();
        assert!((d - 2.0).abs() < 1e-9);
        assert!(r < 1e-9);

        let constant: Vec<(usize, BigInt)> = (1..=5).map(|n| (n, BigInt::from(7u64))).collect();
        let (c, d, _) = fit_polynomial(&constant).unwrap();
        assert!((d - 0.0).abs() < 1e-9);
        assert!((c - 7.0).abs() < 1e-6);

        let cubic: Vec<(usize, BigInt)> =
            (1..=6).map(|n| (n, BigInt::from(3 * (n * n * n) as u64))).collect();
        let (c, d, _) = fit_polynomial(&cubic).unwrap();
        assert!((d - 3.0).abs() < 1e-9);
        assert!((c - 3.0).abs() < 1e-6);
    }

    #[test]
    fn fit_degenerate_inputs() {
        let two: Vec<(usize, BigInt)> = vec![(1, BigInt::from(1u32)), (2, BigInt::from(2u32))];
        assert!(fit_polynomial(&two).is_err());
    }

    #[test]
    fn reduced_word_counts() {
        assert_eq!(reduced_words(2, 1).len(), 4);
        assert_eq!(reduced_words(2, 2).len(), 12);
        assert_eq!(reduced_words(2, 3).len(), 36);
    }
}
