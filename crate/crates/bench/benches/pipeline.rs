//! Benchmarks for the hot paths: exact polynomial arithmetic, word
//! evaluation, the separation pipeline, the depth oracle, irreducible
//! enumeration, and closure enumeration.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use resfin::matgroup::fixtures;
use resfin::rfgrowth::{default_catalog, depth, DepthOptions};
use resfin::ring::{enumerate_irreducibles, Char, Coefficient, MultiPoly};
use resfin::separate::{separate_element, verify_certificate, SeparationMode};
use resfin::specialize::reduce_to_one_variable;
use resfin::word::{parse_word, Word};

fn dense_poly(vars: usize, deg: u32) -> MultiPoly {
    let ch = Char::Zero;
    let mut terms = Vec::new();
    fn rec(vars: usize, deg: u32, cur: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, i64)>) {
        if cur.len() == vars {
            out.push((cur.clone(), 1 + cur.iter().sum::<u32>() as i64));
            return;
        }
        let used: u32 = cur.iter().sum();
        for e in 0..=(deg - used) {
            cur.push(e);
            rec(vars, deg, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    rec(vars, deg, &mut Vec::new(), &mut raw);
    for (e, c) in raw {
        terms.push((e, Coefficient::from_i64(c, ch)));
    }
    MultiPoly::from_terms(vars, ch, terms)
}

fn bench_poly_mul(c: &mut Criterion) {
    let a = dense_poly(3, 4);
    let b = dense_poly(3, 3);
    c.bench_function("multipoly-mul-3vars", |bench| {
        bench.iter(|| black_box(a.mul(&b).unwrap()))
    });
}

fn bench_reduction(c: &mut Criterion) {
    let f = dense_poly(3, 4);
    c.bench_function("reduce-to-one-variable", |bench| {
        bench.iter(|| black_box(reduce_to_one_variable(&f).unwrap()))
    });
}

fn bench_word_evaluation(c: &mut Criterion) {
    let spec = fixtures::poly_unipotent();
    let names = spec.generator_names();
    let w = parse_word("U V U^-1 V U V^-1 U V U^-1 V U V", &names).unwrap();
    c.bench_function("evaluate-word-len12-poly", |bench| {
        bench.iter(|| black_box(spec.evaluate_word(&w).unwrap()))
    });
}

fn bench_separate(c: &mut Criterion) {
    let spec = fixtures::sanov();
    let names = spec.generator_names();
    let w = parse_word("A B^-1 A B A^-1 B", &names).unwrap();
    c.bench_function("separate-direct-len6", |bench| {
        bench.iter(|| black_box(separate_element(&spec, &w, SeparationMode::Direct).unwrap()))
    });
    let cert = separate_element(&spec, &w, SeparationMode::Direct).unwrap();
    c.bench_function("verify-certificate", |bench| {
        bench.iter(|| black_box(verify_certificate(&spec, &cert).ok))
    });
}

fn bench_depth(c: &mut Criterion) {
    let cat = default_catalog();
    let opts = DepthOptions::default();
    let w = Word::commutator(&Word::gen(0), &Word::gen(1));
    c.bench_function("depth-commutator", |bench| {
        bench.iter(|| black_box(depth(2, &w, &cat, &opts).unwrap().order))
    });
}

fn bench_irreducibles(c: &mut Criterion) {
    c.bench_function("enumerate-irreducibles-f5-deg6", |bench| {
        bench.iter(|| black_box(enumerate_irreducibles(5, 6).unwrap().len()))
    });
}

fn bench_closure(c: &mut Criterion) {
    c.bench_function("psl2-7-closure", |bench| {
        bench.iter(|| black_box(resfin::lietype::psl2_table(7, 1000).unwrap().order()))
    });
}

criterion_group!(
    benches,
    bench_poly_mul,
    bench_reduction,
    bench_word_evaluation,
    bench_separate,
    bench_depth,
    bench_irreducibles,
    bench_closure
);
criterion_main!(benches);
