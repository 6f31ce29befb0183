fn main() {
    use cyclo_core::cyclic::{run_suite, Sector, WordDomain};
    let mfa = {
        use cyclo_core::mf::{MfAlgebra, Poly, PolyDecomposition};
        let vs: Vec<String> = vec!["x".into()];
        let w = Poly::parse("x^2", &vs).unwrap();
        let dec = PolyDecomposition::greedy(&w).unwrap();
        std::sync::Arc::new(MfAlgebra::build(&w, dec, 4).unwrap())
    };
    let ids = cyclo_core::mf::suite_conjugation_brackets(&mfa);
    let t = std::time::Instant::now();
    let dom = WordDomain::new(Sector::Ce, 3);
    let rep = run_suite("x", &mfa.alg, Sector::Ce, 8, &dom, &ids).unwrap();
    println!("L3 six-identity suite: {:?}, pass={}", t.elapsed(), rep.passed());
}
