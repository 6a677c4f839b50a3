//! Materialized finite groups: element tables built by closure from
//! permutation or matrix generators, with subgroup, normal-closure, and
//! derived-series computations over the table.

use crate::error::EnumError;
use crate::ring::{FqCtx, MatFq};
use crate::word::Word;
use std::collections::{HashMap, HashSet};

/// A concrete group element. Permutations act on 0-based points; matrices
/// carry their field inline.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Perm(Vec<u16>),
    Mat(MatFq),
}

impl Elem {
    pub fn identity_like(&self) -> Elem {
        match self {
            Elem::Perm(p) => Elem::Perm((0..p.len() as u16).collect()),
            Elem::Mat(m) => Elem::Mat(MatFq::identity(&m.ctx, m.n)),
        }
    }

    pub fn mul(&self, other: &Elem) -> Elem {
        match (self, other) {
            (Elem::Perm(a), Elem::Perm(b)) => {
                // (a*b)(x) = a(b(x)): apply b first, matching left-to-right
                // word evaluation under left actions.
                debug_assert_eq!(a.len(), b.len());
                Elem::Perm(b.iter().map(|&x| a[x as usize]).collect())
            }
            (Elem::Mat(a), Elem::Mat(b)) => Elem::Mat(a.mul(b)),
            _ => panic!("mixed element kinds in one group"),
        }
    }

    pub fn inv(&self) -> Elem {
        match self {
            Elem::Perm(a) => {
                let mut out = vec![0u16; a.len()];
                for (i, &x) in a.iter().enumerate() {
                    out[x as usize] = i as u16;
                }
                Elem::Perm(out)
            }
            Elem::Mat(m) => Elem::Mat(m.inverse().expect("group elements are invertible")),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Elem::Perm(a) => a.iter().enumerate().all(|(i, &x)| i as u16 == x),
            Elem::Mat(m) => m.is_identity(),
        }
    }
}

/// Build a permutation from disjoint cycles over 0-based points.
pub fn perm_from_cycles(degree: usize, cycles: &[Vec<u16>]) -> Elem {
    let mut map: Vec<u16> = (0..degree as u16).collect();
    for cyc in cycles {
        for i in 0..cyc.len() {
            let from = cyc[i] as usize;
            let to = cyc[(i + 1) % cyc.len()];
            map[from] = to;
        }
    }
    Elem::Perm(map)
}

/// A materialized finite group: every element, indexed, with generator
/// indices and constant-time multiplication through a hash table.
#[derive(Debug, Clone)]
pub struct GroupTable {
    pub name: String,
    elems: Vec<Elem>,
    index: HashMap<Elem, usize>,
    pub gens: Vec<usize>,
    inverse: Vec<usize>,
}

impl GroupTable {
    /// Closure of the generators under multiplication, capped.
    pub fn generate(name: impl Into<String>, generators: &[Elem], cap: usize) -> Result<Self, EnumError> {
        let ident = generators
            .first()
            .map(|g| g.identity_like())
            .unwrap_or(Elem::Perm(vec![0]));
        let mut elems = vec![ident.clone()];
        let mut index = HashMap::new();
        index.insert(ident, 0usize);
        let mut frontier = 0usize;
        // seed with generators
        let mut gens = Vec::new();
        for g in generators {
            let next = elems.len();
            let i = *index.entry(g.clone()).or_insert_with(|| {
                elems.push(g.clone());
                next
            });
            gens.push(i);
        }
        while frontier < elems.len() {
            let e = elems[frontier].clone();
            frontier += 1;
            for &g in &gens {
                let prod = e.mul(&elems[g]);
                if !index.contains_key(&prod) {
                    if elems.len() >= cap {
                        return Err(EnumError::Capacity { cap });
                    }
                    index.insert(prod.clone(), elems.len());
                    elems.push(prod);
                }
            }
        }
        let mut inverse = vec![0usize; elems.len()];
        for (i, e) in elems.iter().enumerate() {
            inverse[i] = index[&e.inv()];
        }
        Ok(GroupTable { name: name.into(), elems, index, gens, inverse })
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elem(&self, i: usize) -> &Elem {
        &self.elems[i]
    }

    pub fn index_of(&self, e: &Elem) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let prod = self.elems[a].mul(&self.elems[b]);
        self.index[&prod]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        // g x g^-1
        self.mul(self.mul(g, x), self.inverse[g])
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        // [a, b] = a^-1 b^-1 a b
        self.mul(self.mul(self.inverse[a], self.inverse[b]), self.mul(a, b))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// Distinct element orders.
    pub fn order_spectrum(&self) -> Vec<usize> {
        let mut orders: Vec<usize> = (0..self.order()).map(|i| self.element_order(i)).collect();
        orders.sort_unstable();
        orders.dedup();
        orders
    }

    pub fn max_element_order(&self) -> usize {
        (0..self.order()).map(|i| self.element_order(i)).max().unwrap_or(1)
    }

    /// Evaluate a word at the given generator images (independent of the
    /// table's own generators).
    pub fn eval_word(&self, images: &[usize], w: &Word) -> usize {
        let mut acc = 0usize; // identity sits at index 0
        for l in w.letters() {
            let g = images[l.index];
            let g = if l.inverse { self.inverse[g] } else { g };
            acc = self.mul(acc, g);
        }
        acc
    }

    /// Subgroup generated by the given element indices, as a sorted list.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut list = vec![0usize];
        let mut frontier = 0;
        while frontier < list.len() {
            let e = list[frontier];
            frontier += 1;
            for &g in gens {
                let p = self.mul(e, g);
                if !seen[p] {
                    seen[p] = true;
                    list.push(p);
                }
            }
        }
        list.sort_unstable();
        list
    }

    /// Generators of the normal closure of `seeds` inside the subgroup
    /// generated by `ambient_gens`: close the seed set under conjugation by
    /// the ambient generators (and their inverses), then strip redundant
    /// generators.
    pub fn normal_closure_gens(&self, ambient_gens: &[usize], seeds: &[usize]) -> Vec<usize> {
            let mut seen: HashSet<usize> = HashSet::new();
        let mut order: Vec<usize> = Vec::new();
        let mut frontier: Vec<usize> = seeds.iter().copied().filter(|&s| s != 0).collect();
        while let Some(x) = frontier.pop() {
            if !seen.insert(x) {
                continue;
            }
            order.push(x);
            for &g in ambient_gens {
                for h in [g, self.inverse[g]] {
                    let c = self.conjugate(h, x);
                    if !seen.contains(&c) {
                        frontier.push(c);
                    }
                }
            }
        }
        self.reduce_generators(&order)
    }

    /// Greedy generating-set reduction: keep an element only when it falls
    /// outside the subgroup generated so far. Keeps later subgroup and
    /// commutator computations near-logarithmic in the subgroup order.
    pub fn reduce_generators(&self, gens: &[usize]) -> Vec<usize> {
        let mut kept: Vec<usize> = Vec::new();
        let mut sub: Vec<bool> = vec![false; self.order()];
        sub[0] = true;
        for &g in gens {
            if g == 0 || sub[g] {
                continue;
            }
            kept.push(g);
            // refresh the membership table
            for s in sub.iter_mut() {
                *s = false;
            }
            for e in self.subgroup(&kept) {
                sub[e] = true;
            }
        }
        kept
    }

    /// The normal closure of `seeds` in the subgroup generated by
    /// `ambient_gens`, as a sorted element list.
    pub fn normal_closure_in(&self, ambient_gens: &[usize], seeds: &[usize]) -> Vec<usize> {
        self.subgroup(&self.normal_closure_gens(ambient_gens, seeds))
    }

    /// Derived subgroup of the subgroup generated by `sub_gens`:
    /// the normal closure (within that subgroup) of the pairwise commutators
    /// of its generators. Returns generator indices.
    pub fn derived_gens(&self, sub_gens: &[usize]) -> Vec<usize> {
        let mut comms = Vec::new();
        for &a in sub_gens {
            for &b in sub_gens {
                let c = self.commutator(a, b);
                if c != 0 && !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        self.normal_closure_gens(sub_gens, &comms)
    }

    /// n-th derived subgroup of the subgroup generated by `sub_gens`,
    /// returned as a sorted element list.
    pub fn derived_series_at(&self, sub_gens: &[usize], n: usize) -> Vec<usize> {
        let mut gens: Vec<usize> = sub_gens.to_vec();
        for _ in 0..n {
            gens = self.derived_gens(&gens);
            if gens.is_empty() {
                break;
            }
        }
        self.subgroup(&gens)
    }

    /// Number of conjugacy classes (used as an isomorphism invariant in
    /// catalog self-checks).
    pub fn conjugacy_class_count(&self) -> usize {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = 0;
        for x in 0..n {
            if seen[x] {
                continue;
            }
            classes += 1;
            let mut orbit = vec![x];
            seen[x] = true;
            let mut f = 0;
            while f < orbit.len() {
                let y = orbit[f];
                f += 1;
                for &g in &self.gens.clone() {
                    for h in [g, self.inverse[g]] {
                        let c = self.conjugate(h, y);
                        if !seen[c] {
                            seen[c] = true;
                            orbit.push(c);
                        }
                    }
                }
            }
        }
        classes
    }

    pub fn center_order(&self) -> usize {
        (0..self.order())
            .filter(|&x| self.gens.iter().all(|&g| self.mul(x, g) == self.mul(g, x)))
            .count()
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// Build the right-regular permutation representation of an abstract group
/// given by its full element list and multiplication function. Returns the
/// permutations of the requested generators.
pub fn regular_perm_rep<T, F>(elems: &[T], mul: F, gens: &[T]) -> Vec<Elem>
where
    T: Clone + Eq + std::hash::Hash,
    F: Fn(&T, &T) -> T,
{
    let index: HashMap<&T, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    gens.iter()
        .map(|g| {
            let map: Vec<u16> = elems
                .iter()
                .map(|e| index[&mul(e, g)] as u16)
                .collect();
            Elem::Perm(map)
        })
        .collect()
}

/// The finite field context for matrices over F_p.
pub fn prime_field(p: u64) -> FqCtx {
    FqCtx::prime_field(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> GroupTable {
        let t = perm_from_cycles(3, &[vec![0, 1]]);
        let c = perm_from_cycles(3, &[vec![0, 1, 2]]);
        GroupTable::generate("S3", &[t, c], 100).unwrap()
    }

    fn s5() -> GroupTable {
        let t = perm_from_cycles(5, &[vec![0, 1]]);
        let c = perm_from_cycles(5, &[vec![0, 1, 2, 3, 4]]);
        GroupTable::generate("S5", &[t, c], 200).unwrap()
    }

    #[test]
    fn s3_structure() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(g.center_order(), 1);
        assert_eq!(g.conjugacy_class_count(), 3);
        assert_eq!(g.max_element_order(), 3);
    }

    #[test]
    fn derived_series_of_s3() {
        let g = s3();
        let gens: Vec<usize> = g.gens.clone();
        let d1 = g.derived_series_at(&gens, 1);
        assert_eq!(d1.len(), 3); // A3
        let d2 = g.derived_series_at(&gens, 2);
        assert_eq!(d2.len(), 1);
    }

    #[test]
    fn normal_closure_of_transposition_in_s5() {
        let g = s5();
        assert_eq!(g.order(), 120);
        let t = g.index_of(&perm_from_cycles(5, &[vec![0, 1]])).unwrap();
        let nc = g.normal_closure_in(&g.gens.clone(), &[t]);
        assert_eq!(nc.len(), 120); // transpositions generate S5
        let three = g.index_of(&perm_from_cycles(5, &[vec![0, 1, 2]])).unwrap();
        let nc3 = g.normal_closure_in(&g.gens.clone(), &[three]);
        assert_eq!(nc3.len(), 60); // A5
    }

    #[test]
    fn capacity_error() {
        let c = perm_from_cycles(5, &[vec![0, 1, 2, 3, 4]]);
        assert!(matches!(
            GroupTable::generate("C5", &[c], 3),
            Err(EnumError::Capacity { cap: 3 })
        ));
    }

    #[test]
    fn eval_word_respects_signs() {
        let g = s3();
        let images = vec![g.gens[0], g.gens[1]];
        let w = Word::commutator(&Word::gen(0), &Word::gen(1));
        let v = g.eval_word(&images, &w);
        assert_ne!(v, 0);
        let w_inv = w.concat(&w.inverse());
        assert_eq!(g.eval_word(&images, &w_inv), 0);
    }

    #[test]
    fn regular_rep_of_modular_group_of_order_16() {
        // M16 = <x, y | x^8, y^2, y x y^-1 = x^5> via the metacyclic model
        let elems: Vec<(u8, u8)> = (0..8).flat_map(|i| (0..2).map(move |j| (i, j))).collect();
        let mul = |a: &(u8, u8), b: &(u8, u8)| {
            // (x^i y^j)(x^k y^l) = x^{i + k*5^j} y^{j+l}, y^2 = 1
            let (i, j) = *a;
            let (k, l) = *b;
            let r = if j == 1 { (k as u32 * 5) % 8 } else { k as u32 };
            let i2 = ((i as u32 + r) % 8) as u8;
            let j2 = (j + l) % 2;
            (i2, j2)
        };
        let gens = regular_perm_rep(&elems, mul, &[(1, 0), (0, 1)]);
        let g = GroupTable::generate("M16", &gens, 64).unwrap();
        assert_eq!(g.order(), 16);
        assert!(!g.is_abelian());
    }
}
