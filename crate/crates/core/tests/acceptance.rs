//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `cargo test --test acceptance -- --nocapture` to see them all).

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use resfin::finite::Elem;
use resfin::lietype::{
    blow_up_to_prime_field, frobenius_block, lie_order, matrix_frobenius, sl_rep,
    tits_exceptions, Family, GroupDescriptor, LieTypeId,
};
use resfin::matgroup::fixtures;
use resfin::rfgrowth::{
    default_catalog, depth, fit_polynomial, invariant_core, kernel_invariant, nielsen_rules,
    reduced_words, rf_curve, CurveSource, DepthOptions, FiniteHom, QuotientCatalog, Target,
};
use resfin::ring::{enumerate_irreducibles, gauss_irreducible_count, Char, Coefficient, MultiPoly};
use resfin::separate::{
    finite_image, normal_closure_derived_depth, separate_element, verify_certificate,
    ModulusChoice, SeparationMode,
};
use resfin::specialize::reduce_to_one_variable;
use resfin::witness::{derived_witness, lcm_witness, MalabelianContext};
use resfin::word::{Letter, Word};
use std::sync::Arc;
use std::time::Instant;

fn report(id: u32, label: &str, ok: bool, detail: &str) {
    println!(
        "ACCEPTANCE {:02} {:<28} {} ({})",
        id,
        label,
        if ok { "PASS" } else { "FAIL" },
        detail
    );
    assert!(ok, "criterion {id} ({label}): {detail}");
}

fn random_nonzero_poly(rng: &mut StdRng) -> MultiPoly {
    loop {
        let s = rng.gen_range(1..=3usize);
        let ch = match rng.gen_range(0..4) {
            0 => Char::Zero,
            1 => Char::Prime(2),
            2 => Char::Prime(3),
            _ => Char::Prime(5),
        };
        let terms = rng.gen_range(1..=6usize);
        let mut list = Vec::new();
        for _ in 0..terms {
            // total degree at most 4
            let mut exps = vec![0u32; s];
            let mut left = 4u32;
            for e in exps.iter_mut() {
                let v = rng.gen_range(0..=left);
                *e = v;
                left -= v;
            }
            let c = match ch {
                Char::Zero => rng.gen_range(-9i64..=9),
                Char::Prime(p) => rng.gen_range(0..p as i64),
            };
            list.push((exps, Coefficient::from_i64(c, ch)));
        }
        let f = MultiPoly::from_terms(s, ch, list);
        if !f.is_zero() {
            return f;
        }
    }
}

#[test]
fn criterion_01_variable_reduction() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(1001);
    let mut ok = 0;
    for _ in 0..500 {
        let f = random_nonzero_poly(&mut rng);
        let r = reduce_to_one_variable(&f).expect("reduction succeeds");
        let cap = (f.degree() as u64).max(2).pow(2 * f.num_vars() as u32);
        if !r.trace_poly.is_zero() && r.n_vec.iter().all(|&n| n <= cap) {
            ok += 1;
        }
    }
    let dt = start.elapsed();
    report(
        1,
        "variable-reduction",
        ok == 500 && dt.as_secs_f64() < 10.0,
        &format!("{ok}/500 nonzero traces within the box in {:.2}s", dt.as_secs_f64()),
    );
}

#[test]
fn criterion_02_gauss_counts() {
    let start = Instant::now();
    let mut ok = true;
    for p in [2u64, 3, 5] {
        let irr = enumerate_irreducibles(p, 6).unwrap();
        for m in 1..=6usize {
            let count = irr.iter().filter(|w| w.degree() == m).count();
            let expect = gauss_irreducible_count(p, m as u64).unwrap();
            ok &= BigInt::from(count) == expect;
        }
    }
    ok &= gauss_irreducible_count(2, 2).unwrap() == BigInt::from(1);
    ok &= gauss_irreducible_count(2, 3).unwrap() == BigInt::from(2);
    let dt = start.elapsed();
    ok &= dt.as_secs_f64() < 5.0;
    report(
        2,
        "gauss-irreducible-counts",
        ok,
        &format!("p in {{2,3,5}}, m <= 6 in {:.2}s", dt.as_secs_f64()),
    );
}

#[test]
fn criterion_03_sanov_pipeline_soundness() {
    let start = Instant::now();
    let spec = fixtures::sanov();
    let mut total = 0;
    let mut good = 0;
    for len in 1..=6usize {
        for w in reduced_words(2, len) {
            let native = to_native(&spec, &w);
            total += 1;
            let cert = match separate_element(&spec, &native, SeparationMode::Direct) {
                Ok(c) => c,
                Err(_) => continue,
            };
            let p = match &cert.modulus {
                ModulusChoice::Prime(c) => c.p,
                _ => continue,
            };
            let verified = verify_certificate(&spec, &cert).ok;
            let bound_ok = cert.order_bound == BigInt::from(p).pow(4);
            if verified && bound_ok {
                good += 1;
            }
        }
    }
    let dt = start.elapsed();
    report(
        3,
        "sanov-pipeline-soundness",
        good == total && total == 1456 && dt.as_secs_f64() < 60.0,
        &format!("{good}/{total} certificates verified in {:.2}s", dt.as_secs_f64()),
    );
}

fn to_native(spec: &resfin::GroupSpec, w: &Word) -> Word {
    resfin::witness::GroupHandle::Matrix(spec).to_native(w)
}

#[test]
fn criterion_04_known_depths() {
    let cat = default_catalog();
    let opts = DepthOptions::default();
    let x = Word::gen(0);
    let c = Word::commutator(&Word::gen(0), &Word::gen(1));
    let rx = depth(2, &x, &cat, &opts).unwrap();
    let rc = depth(2, &c, &cat, &opts).unwrap();
    let ok = rx.order == 2 && rx.exhaustive && rc.order == 6 && rc.exhaustive;
    report(
        4,
        "known-depth-values",
        ok,
        &format!(
            "depth(x) = {} ({}, exhaustive={}), depth([x,y]) = {} ({}, exhaustive={})",
            rx.order, rx.target_name, rx.exhaustive, rc.order, rc.target_name, rc.exhaustive
        ),
    );
}

#[test]
fn criterion_05_oracle_vs_pipeline() {
    let cat = default_catalog();
    let opts = DepthOptions::default();
    let spec = fixtures::sanov();
    let mut rng = StdRng::seed_from_u64(1005);
    let mut good = 0;
    for _ in 0..100 {
        let len = rng.gen_range(1..=5usize);
        let w = random_reduced(&mut rng, 2, len);
        let oracle = depth(2, &w, &cat, &opts).unwrap();
        let cert = separate_element(&spec, &to_native(&spec, &w), SeparationMode::Direct).unwrap();
        if BigInt::from(oracle.order) <= cert.order_bound {
            good += 1;
        }
    }
    report(5, "oracle-vs-pipeline", good == 100, &format!("{good}/100 words consistent"));
}

fn random_reduced(rng: &mut StdRng, rank: usize, len: usize) -> Word {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let i = rng.gen_range(0..rank);
        let inv = rng.gen_bool(0.5);
        let l = if inv { Letter::inv_gen(i) } else { Letter::gen(i) };
        if let Some(&last) = letters.last() {
            if last.index == l.index && last.inverse != l.inverse {
                continue;
            }
        }
        letters.push(l);
    }
    Word::from_letters(letters)
}

fn s5_table() -> Arc<resfin::finite::GroupTable> {
    use resfin::finite::{perm_from_cycles, GroupTable};
    Arc::new(
        GroupTable::generate(
            "S5",
            &[
                perm_from_cycles(5, &[vec![0, 1]]),
                perm_from_cycles(5, &[vec![0, 1, 2, 3, 4]]),
            ],
            130,
        )
        .unwrap(),
    )
}

#[test]
fn criterion_06_witness_properties() {
    let ctx = MalabelianContext::free(2);
    let mut rng = StdRng::seed_from_u64(1006);
    let s5 = s5_table();
    let mut violations = 0;
    // 50 random homomorphisms to S5, fixed across the run
    let homs: Vec<FiniteHom> = (0..50)
        .map(|_| FiniteHom {
            target: Arc::clone(&s5),
            images: vec![rng.gen_range(0..120), rng.gen_range(0..120)],
        })
        .collect();
    for _ in 0..200 {
        let len = rng.gen_range(1..=6usize);
        let a = random_reduced(&mut rng, 2, len);
        let n = rng.gen_range(1..=3usize);
        let rec = match derived_witness(&ctx, &a, n) {
            Ok(r) => r,
            Err(_) => {
                violations += 1;
                continue;
            }
        };
        if rec.word.is_trivial_free() {
            violations += 1;
        }
        if rec.word.len() as u64 > 8u64.pow(n as u32) * (a.len().max(1) as u64) {
            violations += 1;
        }
        for hom in &homs {
            let ia = hom.eval(&a);
            let iw = hom.eval(&rec.word);
            if ia == 0 && iw != 0 {
                violations += 1;
                continue;
            }
            // witness image lands in D^n of the normal closure of the image
            // of a inside the image subgroup
            let image_gens = hom.target.reduce_generators(&hom.images);
            let mut gens = hom.target.normal_closure_gens(&image_gens, &[ia]);
            for _ in 0..n {
                gens = hom.target.derived_gens(&gens);
                if gens.is_empty() {
                    break;
                }
            }
            let dn = hom.target.subgroup(&gens);
            if dn.binary_search(&iw).is_err() {
                violations += 1;
            }
        }
    }
    report(
        6,
        "witness-properties",
        violations == 0,
        &format!("{violations} violations over 200 witnesses x 50 homomorphisms"),
    );
}

#[test]
fn criterion_07_lcm_properties() {
    let ctx = MalabelianContext::free(2);
    let mut rng = StdRng::seed_from_u64(1007);
    let s5 = s5_table();
    let mut violations = 0;
    let homs: Vec<FiniteHom> = (0..50)
        .map(|_| FiniteHom {
            target: Arc::clone(&s5),
            images: vec![rng.gen_range(0..120), rng.gen_range(0..120)],
        })
        .collect();
    for _ in 0..120 {
        let count = rng.gen_range(1..=4usize);
        let inputs: Vec<Word> = (0..count)
            .map(|_| {
                let len = rng.gen_range(1..=4usize);
                random_reduced(&mut rng, 2, len)
            })
            .collect();
        let rec = match lcm_witness(&ctx, &inputs) {
            Ok(r) => r,
            Err(_) => {
                violations += 1;
                continue;
            }
        };
        let max_len = inputs.iter().map(|t| t.len()).max().unwrap() as u64;
        let bound = 4 * (count as u64).pow(2) * (max_len + 3);
        if rec.word.len() as u64 > bound {
            violations += 1;
        }
        if rec.word.is_trivial_free() {
            violations += 1;
        }
        for hom in &homs {
            if hom.eval(&rec.word) != 0 && inputs.iter().any(|t| hom.eval(t) == 0) {
                violations += 1;
            }
        }
    }
    report(
        7,
        "lcm-properties",
        violations == 0,
        &format!("{violations} violations over 120 sets x 50 homomorphisms"),
    );
}

#[test]
fn criterion_08_lie_catalog() {
    // q | order for every classical id with q <= 32 and rank <= 4
    let mut checked = 0;
    let mut ok = true;
    for q in 2u64..=32 {
        if resfin::lietype::split_prime_power(q).is_none() {
            continue;
        }
        for (family, min_rank) in [
            (Family::A, 1usize),
            (Family::B, 2),
            (Family::C, 3),
            (Family::D, 4),
            (Family::TwoA, 2),
        ] {
            for rank in min_rank..=4 {
                let id = LieTypeId::new(family, rank, q).unwrap();
                let ord = lie_order(&id);
                checked += 1;
                ok &= (ord % BigInt::from(q)) == BigInt::from(0);
            }
        }
    }
    // the Tits exception list, verbatim
    let expected = [
        GroupDescriptor::Sl(2, 2),
        GroupDescriptor::Sl(2, 3),
        GroupDescriptor::Su(3, 2),
        GroupDescriptor::Sp(4, 2),
        GroupDescriptor::G2(2),
        GroupDescriptor::TwoB2(2),
        GroupDescriptor::TwoG2(3),
        GroupDescriptor::TwoF4(2),
    ];
    ok &= tits_exceptions() == expected;
    report(
        8,
        "lie-type-catalog",
        ok,
        &format!("q | order on {checked} ids; Tits list has 8 entries"),
    );
}

#[test]
fn criterion_09_frobenius_semidirect() {
    let start = Instant::now();
    let rep = sl_rep(2, 4).unwrap();
    let table = rep.materialize(500).unwrap();
    let ok_order = table.order() == 60;
    let frob = frobenius_block(&rep.ctx, rep.dimension);
    // the image of each (g, t): blow-up of g times the Frobenius block^t
    let elems: Vec<(usize, u8)> = (0..table.order())
        .flat_map(|g| [(g, 0u8), (g, 1u8)])
        .collect();
    let image = |&(g, t): &(usize, u8)| {
        let Elem::Mat(m) = table.elem(g) else { panic!() };
        let b = blow_up_to_prime_field(m);
        if t == 1 {
            b.mul(&frob)
        } else {
            b
        }
    };
    // abstract multiplication via the cocycle rule
    let mul = |&(g1, t1): &(usize, u8), &(g2, t2): &(usize, u8)| -> (usize, u8) {
        let g2m = if t1 == 1 {
            let Elem::Mat(m) = table.elem(g2) else { panic!() };
            table.index_of(&Elem::Mat(matrix_frobenius(m))).unwrap()
        } else {
            g2
        };
        (table.mul(g1, g2m), (t1 + t2) % 2)
    };
    let mut hom_ok = true;
    for a in &elems {
        let ia = image(a);
        for b in &elems {
            let lhs = ia.mul(&image(b));
            let rhs = image(&mul(a, b));
            if lhs != rhs {
                hom_ok = false;
            }
        }
    }
    let mut images: Vec<_> = elems.iter().map(image).collect();
    images.sort();
    images.dedup();
    let injective = images.len() == 120;
    let dt = start.elapsed();
    report(
        9,
        "frobenius-semidirect",
        ok_order && hom_ok && injective && dt.as_secs_f64() < 30.0,
        &format!(
            "homomorphism on 120^2 pairs, {} distinct images in {:.2}s",
            images.len(),
            dt.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_10_degree_and_coeff_bounds() {
    let spec = fixtures::poly_unipotent();
    let mut rng = StdRng::seed_from_u64(1010);
    let mut good = 0;
    for _ in 0..500 {
        let len = rng.gen_range(1..=12usize);
        let w = to_native(&spec, &random_word_any(&mut rng, 2, len));
        let d = spec.check_degree_bound(&w).unwrap();
        let c = spec.check_coeff_bound(&w).unwrap();
        if d.holds && c.holds {
            good += 1;
        }
    }
    report(10, "degree-coefficient-bounds", good == 500, &format!("{good}/500 words within bounds"));
}

fn random_word_any(rng: &mut StdRng, rank: usize, len: usize) -> Word {
    Word::from_letters(
        (0..len)
            .map(|_| {
                let i = rng.gen_range(0..rank);
                if rng.gen_bool(0.5) {
                    Letter::inv_gen(i)
                } else {
                    Letter::gen(i)
                }
            })
            .collect(),
    )
}

#[test]
fn criterion_11_growth_curve() {
    let spec = fixtures::sanov();
    let src = CurveSource::Pipeline { spec: &spec, mode: SeparationMode::Direct };
    let curve = rf_curve(&src, 6).unwrap();
    let monotone = curve.windows(2).all(|w| w[0].1 <= w[1].1);
    let (c, d, resid) = fit_polynomial(&curve).unwrap();
    let ok = monotone && d.is_finite() && resid < 1.0;
    report(
        11,
        "growth-curve-sanity",
        ok,
        &format!("fit C = {c:.2}, d = {d:.3}, max log-residual = {resid:.3}"),
    );
}

#[test]
fn criterion_12_invariance_machinery() {
    let cat: QuotientCatalog = default_catalog();
    let find = |name: &str| -> Arc<resfin::finite::GroupTable> {
        cat.entries
            .iter()
            .find(|e| e.name == name)
            .map(|e| match &e.target {
                Target::Single(t) => Arc::clone(t),
                _ => panic!(),
            })
            .unwrap()
    };
    let rules = nielsen_rules(2);
    // mod-2 abelianization kernel is invariant under all Nielsen generators
    let c2c2 = find("C2xC2");
    let images = vec![c2c2.gens[0], c2c2.gens[1]];
    let ab2 = FiniteHom { target: c2c2, images };
    let inv_ok = kernel_invariant(&ab2, &rules).unwrap();
    // a single index-2 kernel is not
    let c2 = find("C2");
    let single = FiniteHom { target: c2, images: vec![1, 0] };
    let noninv_ok = !kernel_invariant(&single, &rules).unwrap();
    // and its invariant core reproduces the C2 x C2 quotient
    let core = invariant_core(&single, &rules, 16).unwrap();
    let core_ok = core.diagonal.image_order() == 4;
    report(
        12,
        "invariance-machinery",
        inv_ok && noninv_ok && core_ok,
        &format!(
            "abelianization invariant = {inv_ok}, single-C2 invariant = {}, core image = {}",
            !noninv_ok,
            core.diagonal.image_order()
        ),
    );
}

#[test]
fn semisimple_witness_survival_spotcheck() {
    // companion check to the pipeline criteria: in semisimple mode the
    // witness survives and certifies non-solvability of the normal closure
    let spec = fixtures::sanov();
    let a = to_native(&spec, &Word::gen(0));
    let cert = separate_element(&spec, &a, SeparationMode::Semisimple).unwrap();
    assert!(verify_certificate(&spec, &cert).ok);
    let (table, image) = finite_image(&spec, &cert, 200_000).unwrap();
    let ih = table
        .index_of(&Elem::Mat(image.evaluate_word(&cert.witness_word())))
        .unwrap();
    let ia = table.index_of(&Elem::Mat(image.evaluate_word(&a))).unwrap();
    let dn = normal_closure_derived_depth(&table, ia, cert.witness_level, 200_000).unwrap();
    assert_ne!(ih, 0);
    assert!(dn.binary_search(&ih).is_ok());
}
