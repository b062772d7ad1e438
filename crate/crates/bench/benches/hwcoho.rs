use criterion::{black_box, criterion_group, criterion_main, Criterion};

use hwcoho::enumerate::{canonical_form, classify};
use hwcoho::f2::gl_random;
use hwcoho::hwmatrix::examples::dim5_a;
use hwcoho::reconstruct::{invariant_of, recover, scramble};
use hwcoho::{lin_mul, quad_factor, transgression, LinForm};

fn bench(c: &mut Criterion) {
    let reps7 = classify(7).unwrap().representatives();

    c.bench_function("classify_5", |b| b.iter(|| classify(black_box(5)).unwrap()));

    c.bench_function("canonical_form_7", |b| {
        b.iter(|| reps7.iter().map(|a| canonical_form(black_box(a))).count())
    });

    let q = lin_mul(LinForm::new(8, 0b1011_0001), LinForm::new(8, 0b0110_1110)).unwrap();
    c.bench_function("quad_factor_8", |b| b.iter(|| quad_factor(black_box(&q)).unwrap()));

    c.bench_function("transgression_7", |b| b.iter(|| transgression(black_box(&reps7[0])).unwrap()));

    let inv5 = scramble(&invariant_of(&dim5_a()).unwrap(), &gl_random(4, 42)).unwrap();
    c.bench_function("recover_5", |b| b.iter(|| recover(black_box(&inv5)).unwrap()));

    let inv7 = scramble(&invariant_of(&reps7[30]).unwrap(), &gl_random(6, 42)).unwrap();
    c.bench_function("recover_7", |b| b.iter(|| recover(black_box(&inv7)).unwrap()));
}

criterion_group!(benches, bench);
criterion_main!(benches);
