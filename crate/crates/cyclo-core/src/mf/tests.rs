use std::sync::Arc;

use crate::cyclic::{run_suite, Sector, Status, WordDomain};
use crate::uconn::{verify_certificate_with, verify_connection_law_with};

use super::alg::{MfAlgebra, PolyDecomposition};
use super::poly::Poly;
use super::suites::*;

pub fn a_w(wtxt: &str, vars: &[&str]) -> Arc<MfAlgebra> {
    let vs: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let w = Poly::parse(wtxt, &vs).unwrap();
    let max_deg = (2 * w.deg().max(1)) as u32;
    let dec = PolyDecomposition::greedy(&w).unwrap();
    Arc::new(MfAlgebra::build(&w, dec, max_deg).unwrap())
}

fn assert_pass(rep: &crate::cyclic::SuiteReport) {
    for id in &rep.identities {
        assert!(id.status == Status::Pass, "{} failed: {:?}", id.name, id.counterexample);
        assert!(id.certified > 0, "{} never certified", id.name);
    }
}

#[test]
fn decomposition_checks() {
    let vs: Vec<String> = vec!["x".into()];
    let w = Poly::parse("x^2", &vs).unwrap();
    let dec = PolyDecomposition::greedy(&w).unwrap();
    assert_eq!(dec.parts[0], Poly::parse("x", &vs).unwrap());
    let bad = PolyDecomposition::check(&w, vec![Poly::parse("x^2", &vs).unwrap()]);
    assert!(bad.is_err());
}

#[test]
fn dw_squares_to_w() {
    for (wtxt, vars) in [("x^2", vec!["x"]), ("x*y", vec!["x", "y"])] {
        let mfa = a_w(wtxt, &vars);
        let dsq = mfa.alg.mul_elem(&mfa.dw_elem, &mfa.dw_elem).unwrap();
        assert_eq!(dsq, mfa.w_elem_tensor);
    }
}

#[test]
fn insertion_brackets_on_quadratic() {
    let mfa = a_w("x^2", &["x"]);
    let dom = WordDomain::new(Sector::Ce, 3);
    let rep = run_suite("insertion-brackets", &mfa.alg, Sector::Ce, 8, &dom, &suite_insertion_brackets(&mfa)).unwrap();
    assert_pass(&rep);
}

#[test]
fn conjugation_brackets_on_quadratic() {
    let mfa = a_w("x^2", &["x"]);
    let dom = WordDomain::new(Sector::Ce, 3);
    let rep = run_suite("conjugation-brackets", &mfa.alg, Sector::Ce, 8, &dom, &suite_conjugation_brackets(&mfa)).unwrap();
    assert_pass(&rep);
}

#[test]
fn trade_certificate_on_quadratic() {
    let mfa = a_w("x^2", &["x"]);
    let (residual, witness, d) = twisted_trade_certificate(&mfa);
    let dom = WordDomain::new(Sector::Ce, 3);
    let rep = verify_certificate_with("twisted-trade", &residual, &witness, &d, &mfa.alg, &dom, 8).unwrap();
    assert_pass(&rep);
}

#[test]
fn twisted_connection_laws() {
    let mfa = a_w("x^2", &["x"]);
    let dom = WordDomain::new(Sector::Ce, 3);
    let rep = verify_connection_law_with(
        "flat-law",
        &nabla_flat(&mfa),
        &d_w_total(&mfa.w_elem_tensor),
        &mfa.alg,
        &dom,
        8,
    )
    .unwrap();
    assert_pass(&rep);
    let rep = verify_connection_law_with(
        "sharp-law",
        &nabla_sharp(&mfa),
        &d_w_total(&mfa.w_elem_poly),
        &mfa.poly_alg,
        &dom,
        8,
    )
    .unwrap();
    assert_pass(&rep);
}

#[test]
fn trace_intertwining_on_quadratic() {
    let mfa = a_w("x^2", &["x"]);
    let dom = WordDomain::new(Sector::Ce, 3);
    let rep = run_suite("trace", &mfa.alg, Sector::Ce, 8, &dom, &suite_trace_intertwining(&mfa)).unwrap();
    assert_pass(&rep);
}

#[test]
fn eps_intertwining_on_quadratic() {
    let mfa = a_w("x^2", &["x"]);
    let dom = WordDomain::new(Sector::Ce, 3);
    let rep = run_suite("eps", &mfa.poly_alg, Sector::Ce, 8, &dom, &suite_eps_intertwining(&mfa)).unwrap();
    assert_pass(&rep);
    assert!(check_form_homotopy(&mfa.w, mfa.max_deg + 2));
}

#[test]
fn composite_chain_map_on_quadratic() {
    let mfa = a_w("x^2", &["x"]);
    let dom = WordDomain::new(Sector::Ce, 3);
    let rep = run_suite("composite", &mfa.alg, Sector::Ce, 8, &dom, &suite_composite_chain_map(&mfa)).unwrap();
    assert_pass(&rep);
}

#[test]
fn composite_residual_certificate_on_quadratic() {
    let mfa = a_w("x^2", &["x"]);
    let rep = verify_composite_residual(&mfa, 2, None).unwrap();
    assert!(rep.counterexample.is_none(), "counterexample: {:?}", rep.counterexample);
    assert!(rep.certified > 0);
}

#[test]
fn composite_hits_the_volume_class() {
    // for w = x² the image of the composite contains a nonzero multiple of
    // the generator [dx] modulo the image of -dw∧
    let mfa = a_w("x^2", &["x"]);
    let images = composite_image_of_words_export(&mfa);
    let found = images.iter().any(|f| {
        // reduce coefficient of dx modulo the ideal (2x): constant term of
        // the dx-component must be nonzero
        f.terms
            .iter()
            .any(|((mask, m), c)| *mask == 1 && m.iter().all(|e| *e == 0) && !c.is_zero())
    });
    assert!(found, "no word maps onto the volume class");
}

fn composite_image_of_words_export(mfa: &Arc<MfAlgebra>) -> Vec<super::form::Form> {
    super::suites::composite_image_of_words(mfa, 2, None)
        .unwrap()
        .into_iter()
        .map(|(_, f)| f)
        .collect()
}
