use criterion::{criterion_group, criterion_main, Criterion};
use cyclo_core::cyclic::{run_suite, Sector, WordDomain};

fn bench_conjugation(c: &mut Criterion) {
    let mfa = {
        use cyclo_core::mf::{MfAlgebra, Poly, PolyDecomposition};
        let vs: Vec<String> = vec!["x".into()];
        let w = Poly::parse("x^2", &vs).unwrap();
        let dec = PolyDecomposition::greedy(&w).unwrap();
        std::sync::Arc::new(MfAlgebra::build(&w, dec, 4).unwrap())
    };
    let ids = cyclo_core::mf::suite_conjugation_brackets(&mfa);
    c.bench_function("conjugation-L2", |b| {
        b.iter(|| {
            let dom = WordDomain::new(Sector::Ce, 2);
            run_suite("x", &mfa.alg, Sector::Ce, 8, &dom, &ids).unwrap()
        })
    });
}

criterion_group!(benches, bench_conjugation);
criterion_main!(benches);
