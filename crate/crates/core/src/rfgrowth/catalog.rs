//! The default quotient catalog: every group of order at most 24, cyclic and
//! dihedral groups through order 48, S_n and A_n for n <= 7, PSL_2(q) for
//! small q, and products of two simple factors. Entries are sorted ascending
//! by order; the catalog records through which order it is complete.

use crate::finite::{perm_from_cycles, regular_perm_rep, Elem, GroupTable};
use crate::lietype::psl2_table;
use crate::ring::{FqCtx, FqElem, MatFq};
use std::sync::Arc;

/// Class tag of a catalog target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassTag {
    Any,
    /// A finite simple group of Lie type, with its extension degree.
    SimpleLie { ext_degree: u32 },
    /// A product of finite simple groups of Lie type; the maximum extension
    /// degree over the factors.
    ProductOfLie { max_ext_degree: u32 },
}

/// A catalog target: one materialized table, or a lazy product of two.
#[derive(Debug, Clone)]
pub enum Target {
    Single(Arc<GroupTable>),
    Product(Arc<GroupTable>, Arc<GroupTable>),
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub order: u64,
    pub target: Target,
    pub class: ClassTag,
}

/// An ordered list of finite target groups for the depth oracle.
#[derive(Debug, Clone)]
pub struct QuotientCatalog {
    pub entries: Vec<CatalogEntry>,
    /// Every group of order <= this bound is present (isomorphism classes).
    pub complete_through: u64,
    /// Every product of finite simple groups of Lie type of order <= this
    /// bound is present.
    pub lie_complete_through: u64,
}

impl QuotientCatalog {
    pub fn new(mut entries: Vec<CatalogEntry>, complete_through: u64, lie_complete_through: u64) -> Self {
        entries.sort_by_key(|a| a.order);
        QuotientCatalog { entries, complete_through, lie_complete_through }
    }

    /// An empty catalog to extend from a data file.
    pub fn empty() -> Self {
        QuotientCatalog { entries: Vec::new(), complete_through: 1, lie_complete_through: 1 }
    }

    pub fn push_table(&mut self, table: GroupTable, class: ClassTag) {
        let entry = CatalogEntry {
            name: table.name.clone(),
            order: table.order() as u64,
            target: Target::Single(Arc::new(table)),
            class,
        };
        let pos = self
            .entries
            .partition_point(|e| e.order <= entry.order);
        self.entries.insert(pos, entry);
    }
}

fn cyclic(n: usize) -> GroupTable {
    let gen = perm_from_cycles(n, &[(0..n as u16).collect()]);
    GroupTable::generate(format!("C{n}"), &[gen], n + 1).expect("cyclic group fits")
}

fn dihedral(n: usize) -> GroupTable {
    assert!(n >= 3);
    let rot = perm_from_cycles(n, &[(0..n as u16).collect()]);
    // reflection i -> -i mod n
    let refl = Elem::Perm((0..n as u16).map(|i| (n as u16 - i) % n as u16).collect());
    GroupTable::generate(format!("D{n}"), &[rot, refl], 2 * n + 1).expect("dihedral group fits")
}

/// Metacyclic group <x, y | x^a = 1, y^b = x^e, y x y^-1 = x^r> realized by
/// its right-regular representation on a*b points. Requires r^b = 1 and
/// e(r-1) = 0 mod a.
fn metacyclic(name: &str, a: u64, b: u64, r: u64, e: u64) -> GroupTable {
    assert_eq!(pow_mod(r, b, a), 1 % a, "r^b must be 1 mod a");
    assert_eq!((e * (r + a - 1)) % a, 0, "e(r-1) must be 0 mod a");
    let elems: Vec<(u64, u64)> = (0..a).flat_map(|i| (0..b).map(move |j| (i, j))).collect();
    let mul = |x: &(u64, u64), y: &(u64, u64)| -> (u64, u64) {
        let (i, j) = *x;
        let (k, l) = *y;
        // (x^i y^j)(x^k y^l) = x^{i + k r^j} y^{j+l}, folding y^b = x^e
        let mut i2 = (i + k * pow_mod(r, j, a)) % a;
        let mut j2 = j + l;
        if j2 >= b {
            j2 -= b;
            i2 = (i2 + e) % a;
        }
        (i2, j2)
    };
    let gens = regular_perm_rep(&elems, mul, &[(1 % a, 0), (0, 1 % b)]);
    GroupTable::generate(name, &gens, (a * b) as usize + 1).expect("metacyclic group fits")
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Permutation generators of a table: native when the table is already a
/// permutation group, the right-regular representation otherwise.
fn perm_gens(table: &GroupTable) -> (usize, Vec<Elem>) {
    let native = table
        .gens
        .iter()
        .map(|&g| table.elem(g).clone())
        .collect::<Vec<_>>();
    if let Some(Elem::Perm(p)) = native.first() {
        if native.iter().all(|e| matches!(e, Elem::Perm(_))) {
            return (p.len(), native);
        }
    }
    let n = table.order();
    let gens = table
        .gens
        .iter()
        .map(|&g| Elem::Perm((0..n).map(|h| table.mul(h, g) as u16).collect()))
        .collect();
    (n, gens)
}

/// Direct product on disjoint supports.
fn product(name: &str, a: &GroupTable, b: &GroupTable) -> GroupTable {
    let (da, ga) = perm_gens(a);
    let (db, gb) = perm_gens(b);
    let deg = da + db;
    let mut gens = Vec::new();
    for g in ga {
        let Elem::Perm(p) = g else { unreachable!() };
        let mut map: Vec<u16> = (0..deg as u16).collect();
        map[..da].copy_from_slice(&p);
        gens.push(Elem::Perm(map));
    }
    for g in gb {
        let Elem::Perm(p) = g else { unreachable!() };
        let mut map: Vec<u16> = (0..deg as u16).collect();
        for (i, &x) in p.iter().enumerate() {
            map[da + i] = da as u16 + x;
        }
        gens.push(Elem::Perm(map));
    }
    GroupTable::generate(name, &gens, a.order() * b.order() + 1).expect("product fits")
}

fn a4() -> GroupTable {
    GroupTable::generate(
        "A4",
        &[
            perm_from_cycles(4, &[vec![0, 1, 2]]),
            perm_from_cycles(4, &[vec![0, 1], vec![2, 3]]),
        ],
        13,
    )
    .expect("A4")
}

fn s4() -> GroupTable {
    GroupTable::generate(
        "S4",
        &[
            perm_from_cycles(4, &[vec![0, 1, 2, 3]]),
            perm_from_cycles(4, &[vec![0, 1]]),
        ],
        25,
    )
    .expect("S4")
}

fn symmetric(n: usize) -> GroupTable {
    GroupTable::generate(
        format!("S{n}"),
        &[
            perm_from_cycles(n, &[vec![0, 1]]),
            perm_from_cycles(n, &[(0..n as u16).collect()]),
        ],
        factorial(n) + 1,
    )
    .expect("S_n")
}

fn alternating(n: usize) -> GroupTable {
    let cycle = if n % 2 == 1 {
        perm_from_cycles(n, &[(0..n as u16).collect()])
    } else {
        perm_from_cycles(n, &[(1..n as u16).collect()])
    };
    GroupTable::generate(
        format!("A{n}"),
        &[perm_from_cycles(n, &[vec![0, 1, 2]]), cycle],
        factorial(n) / 2 + 1,
    )
    .expect("A_n")
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// SL(2,3) as 2x2 matrices over F_3.
fn sl2_3() -> GroupTable {
    let ctx = FqCtx::prime_field(3);
    let m = |a: u64, b: u64, c: u64, d: u64| {
        Elem::Mat(MatFq::from_rows(
            &ctx,
            vec![
                vec![FqElem::from_u64(&ctx, a), FqElem::from_u64(&ctx, b)],
                vec![FqElem::from_u64(&ctx, c), FqElem::from_u64(&ctx, d)],
            ],
        ))
    };
    GroupTable::generate("SL(2,3)", &[m(1, 1, 0, 1), m(1, 0, 1, 1)], 25).expect("SL(2,3)")
}

/// The central product D4 o C4 (order 16) via matrices over F_5, where
/// i = 2 plays the fourth root of unity.
fn d4_central_c4() -> GroupTable {
    let ctx = FqCtx::prime_field(5);
    let m = |a: u64, b: u64, c: u64, d: u64| {
        Elem::Mat(MatFq::from_rows(
            &ctx,
            vec![
                vec![FqElem::from_u64(&ctx, a), FqElem::from_u64(&ctx, b)],
                vec![FqElem::from_u64(&ctx, c), FqElem::from_u64(&ctx, d)],
            ],
        ))
    };
    let x = m(0, 1, 1, 0);
    let z = m(1, 0, 0, 4);
    let i2 = m(2, 0, 0, 2);
    GroupTable::generate("D4oC4", &[x, z, i2], 17).expect("central product")
}

/// (C2 x C2) x| C4 of order 16: the C4 generator swaps the two involutions
/// and squares outside the Klein subgroup.
fn c2c2_semidirect_c4() -> GroupTable {
    let u = perm_from_cycles(8, &[vec![0, 1]]);
    let a = perm_from_cycles(8, &[vec![0, 2, 1, 3], vec![4, 5, 6, 7]]);
    GroupTable::generate("(C2xC2):C4", &[u, a], 17).expect("order 16")
}

/// Generalized dihedral group of C3 x C3 (order 18): translations of the
/// affine plane over F_3 together with negation.
fn gendihedral_c3c3() -> GroupTable {
    let point = |i: u16, j: u16| 3 * i + j;
    let map = |f: &dyn Fn(u16, u16) -> (u16, u16)| {
        Elem::Perm(
            (0..9u16)
                .map(|p| {
                    let (i, j) = (p / 3, p % 3);
                    let (a, b) = f(i, j);
                    point(a % 3, b % 3)
                })
                .collect(),
        )
    };
    let t1 = map(&|i, j| (i + 1, j));
    let t2 = map(&|i, j| (i, j + 1));
    let neg = map(&|i, j| ((3 - i) % 3, (3 - j) % 3));
    GroupTable::generate("Dih(C3xC3)", &[t1, t2, neg], 19).expect("order 18")
}

/// C3 x| D4 of order 24 (SmallGroup(24,8)-type): D4 acts through its
/// reflection quotient, inverting the C3.
fn c3_semidirect_d4() -> GroupTable {
    // triangle points 0..2, square points 3..6
    let g1 = perm_from_cycles(7, &[vec![0, 1, 2], vec![4, 6]]);
    let g2 = perm_from_cycles(7, &[vec![1, 2], vec![3, 4, 5, 6]]);
    GroupTable::generate("C3:D4", &[g1, g2], 25).expect("order 24")
}

fn push_unique(entries: &mut Vec<CatalogEntry>, entry: CatalogEntry) {
    if !entries.iter().any(|e| e.name == entry.name) {
        entries.push(entry);
    }
}

fn single(table: GroupTable, class: ClassTag) -> CatalogEntry {
    CatalogEntry {
        name: table.name.clone(),
        order: table.order() as u64,
        target: Target::Single(Arc::new(table)),
        class,
    }
}

/// Every group of order at most 24, by explicit construction.
fn groups_through_24() -> Vec<GroupTable> {
    let mut out: Vec<GroupTable> = Vec::new();
    // cyclic groups and products of cyclics
    for n in 2..=24usize {
        out.push(cyclic(n));
    }
    out.push(product("C2xC2", &cyclic(2), &cyclic(2)));
    out.push(product("C4xC2", &cyclic(4), &cyclic(2)));
    out.push(product("C2xC2xC2", &product("t", &cyclic(2), &cyclic(2)), &cyclic(2)));
    out.push(product("C3xC3", &cyclic(3), &cyclic(3)));
    out.push(product("C6xC2", &cyclic(6), &cyclic(2)));
    out.push(product("C8xC2", &cyclic(8), &cyclic(2)));
    out.push(product("C4xC4", &cyclic(4), &cyclic(4)));
    out.push(product("C4xC2xC2", &product("t", &cyclic(4), &cyclic(2)), &cyclic(2)));
    out.push(product(
        "C2xC2xC2xC2",
        &product("t", &cyclic(2), &cyclic(2)),
        &product("t", &cyclic(2), &cyclic(2)),
    ));
    out.push(product("C3xC6", &cyclic(3), &cyclic(6)));
    out.push(product("C10xC2", &cyclic(10), &cyclic(2)));
    out.push(product("C12xC2", &cyclic(12), &cyclic(2)));
    out.push(product("C6xC2xC2", &product("t", &cyclic(6), &cyclic(2)), &cyclic(2)));
    // dihedral groups through order 24
    for n in 3..=12usize {
        out.push(dihedral(n));
    }
    // quaternion and dicyclic groups
    out.push(metacyclic("Q8", 4, 2, 3, 2));
    out.push(metacyclic("Dic3", 6, 2, 5, 3));
    out.push(metacyclic("Q16", 8, 2, 7, 4));
    out.push(metacyclic("Dic5", 10, 2, 9, 5));
    out.push(metacyclic("Dic6", 12, 2, 11, 6));
    // remaining order-16 groups
    out.push(metacyclic("SD16", 8, 2, 3, 0));
    out.push(metacyclic("M16", 8, 2, 5, 0));
    out.push(metacyclic("C4:C4", 4, 4, 3, 0));
    out.push(c2c2_semidirect_c4());
    out.push(product("D4xC2", &dihedral(4), &cyclic(2)));
    out.push(product("Q8xC2", &metacyclic("Q8", 4, 2, 3, 2), &cyclic(2)));
    out.push(d4_central_c4());
    // remaining order-18 groups
    out.push(product("S3xC3", &dihedral(3), &cyclic(3)));
    out.push(gendihedral_c3c3());
    // remaining order-20 and order-21 groups
    out.push(metacyclic("F20", 5, 4, 2, 0));
    out.push(metacyclic("C7:C3", 7, 3, 2, 0));
    // remaining order-12 groups
    out.push(a4());
    // remaining order-24 groups
    out.push(product("C3xD4", &cyclic(3), &dihedral(4)));
    out.push(product("C3xQ8", &cyclic(3), &metacyclic("Q8", 4, 2, 3, 2)));
    out.push(s4());
    out.push(product("A4xC2", &a4(), &cyclic(2)));
    out.push(sl2_3());
    out.push(metacyclic("C3:C8", 3, 8, 2, 0));
    out.push(product("C4xS3", &cyclic(4), &dihedral(3)));
    out.push(product("C2xDic3", &cyclic(2), &metacyclic("Dic3", 6, 2, 5, 3)));
    out.push(product("C2xD6", &cyclic(2), &dihedral(6)));
    out.push(c3_semidirect_d4());
    out
}

/// The default catalog.
pub fn default_catalog() -> QuotientCatalog {
    let mut entries: Vec<CatalogEntry> = Vec::new();
    for table in groups_through_24() {
        push_unique(&mut entries, single(table, ClassTag::Any));
    }
    // cyclic and dihedral groups through order 48
    for n in 25..=48usize {
        push_unique(&mut entries, single(cyclic(n), ClassTag::Any));
    }
    for n in 13..=24usize {
        push_unique(&mut entries, single(dihedral(n), ClassTag::Any));
    }
    // symmetric and alternating groups through degree 7
    for n in 5..=7usize {
        push_unique(&mut entries, single(symmetric(n), ClassTag::Any));
    }
    // A5 and A6 are PSL_2(4) and PSL_2(9)
    push_unique(&mut entries, single(alternating(5), ClassTag::SimpleLie { ext_degree: 2 }));
    push_unique(&mut entries, single(alternating(6), ClassTag::SimpleLie { ext_degree: 2 }));
    push_unique(&mut entries, single(alternating(7), ClassTag::Any));
    // PSL_2(q)
    for q in [4u64, 5, 7, 8, 9, 11, 13] {
        let e = match q {
            4 | 9 => 2,
            8 => 3,
            _ => 1,
        };
        let table = psl2_table(q, 10_000).expect("PSL2 table");
        push_unique(&mut entries, single(table, ClassTag::SimpleLie { ext_degree: e }));
    }
    // products of two simple factors from the list (distinct isomorphism
    // classes of factors; lazy pair targets)
    let simple_factors: Vec<(Arc<GroupTable>, u32)> = {
        let mut v: Vec<(Arc<GroupTable>, u32)> = Vec::new();
        for (q, e) in [(4u64, 2u32), (7, 1), (8, 3), (9, 2), (11, 1), (13, 1)] {
            v.push((Arc::new(psl2_table(q, 10_000).expect("PSL2 table")), e));
        }
        v.push((Arc::new(alternating(7)), 0)); // A7 is not of Lie type
        v
    };
    for (i, (fa, ea)) in simple_factors.iter().enumerate() {
        for (fb, eb) in simple_factors.iter().skip(i) {
            let class = if *ea == 0 || *eb == 0 {
                ClassTag::Any
            } else {
                ClassTag::ProductOfLie { max_ext_degree: (*ea).max(*eb) }
            };
            push_unique(
                &mut entries,
                CatalogEntry {
                    name: format!("{}x{}", fa.name, fb.name),
                    order: (fa.order() * fb.order()) as u64,
                    target: Target::Product(Arc::clone(fa), Arc::clone(fb)),
                    class,
                },
            );
        }
    }
    // PSL2(16) (order 4080) is the smallest Lie-type group missing; products
    // of two factors start at 60 * 60.
    QuotientCatalog::new(entries, 24, 4079)
}
