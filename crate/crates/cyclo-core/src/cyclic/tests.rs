use crate::scalars::q::{q, qi};
use crate::superalg::tests::exterior_algebra;
use crate::superalg::{end_odd_variables, SuperAlgebra};

use super::suites::*;
use super::*;

fn lam() -> SuperAlgebra {
    exterior_algebra()
}

fn ctx_plain(alg: &SuperAlgebra) -> Ctx<'_> {
    Ctx::new(alg, Sector::Plain, 8)
}

fn ctx_ce(alg: &SuperAlgebra) -> Ctx<'_> {
    Ctx::new(alg, Sector::Ce, 8)
}

fn w(head: u32, tail: &[u32]) -> Word {
    Word::new(head, tail.to_vec().as_slice())
}

fn we(tail: &[u32]) -> Word {
    Word::new(HEAD_E, tail.to_vec().as_slice())
}

#[test]
fn tau_sign_on_unit_words() {
    let a = lam();
    let ctx = ctx_plain(&a);
    // τ(1[1]) = -1[1]  (|s1| odd)
    let r = Op::tau(1).apply_to_word(&w(0, &[0]), &ctx).unwrap();
    assert_eq!(r.chain, Chain::of_word(w(0, &[0])).scale(&qi(-1)));
    // τ(1[eps]) = +eps[1]
    let r = Op::tau(1).apply_to_word(&w(0, &[1]), &ctx).unwrap();
    assert_eq!(r.chain, Chain::of_word(w(1, &[0])));
}

#[test]
fn mu_edge_values() {
    let a = lam();
    let ctx = ctx_plain(&a);
    // μ^(0)(1[eps]) = (-1)^{|1|} eps = eps
    let r = Op::mu(0).apply_to_word(&w(0, &[1]), &ctx).unwrap();
    assert_eq!(r.chain, Chain::of_word(Word::of_head(1)));
    // b(μ)(1[eps]) = μ^(0) + μ^(1) = eps - eps = 0
    let r = Op::Gen(Gen::BMu).apply_to_word(&w(0, &[1]), &ctx).unwrap();
    assert!(r.chain.is_zero());
}

#[test]
fn connes_values_on_exterior_algebra() {
    let a = lam();
    let ctx = ctx_plain(&a);
    // B(eps) = 1[eps] - eps[1]
    let r = apply_connes(&Chain::of_word(Word::of_head(1)), &ctx).unwrap();
    let want = Chain::from_terms(vec![(w(0, &[1]), qi(1)), (w(1, &[0]), qi(-1))]);
    assert_eq!(r.chain, want);
    // B(1) = 2·1[1]
    let r = apply_connes(&Chain::of_word(Word::of_head(0)), &ctx).unwrap();
    assert_eq!(r.chain, Chain::of_word(w(0, &[0])).scale(&qi(2)));
    // B(B(x)) = 0 for basis chains
    for x in [Word::of_head(0), Word::of_head(1), w(0, &[1]), w(1, &[0])] {
        let once = apply_connes(&Chain::of_word(x), &ctx).unwrap();
        let twice = apply_connes(&once.chain, &ctx).unwrap();
        assert!(twice.chain.is_zero());
    }
}

#[test]
fn connes_e_is_lower_triangular() {
    let a = lam();
    let ctx = ctx_ce(&a);
    // Bᵉ(a0) = e[a0]
    let r = apply_connes_e(&Chain::of_word(Word::of_head(1)), &ctx).unwrap();
    assert_eq!(r.chain, Chain::of_word(we(&[1])));
    // Bᵉ(e[a1]) = 0
    let r = apply_connes_e(&Chain::of_word(we(&[1])), &ctx).unwrap();
    assert!(r.chain.is_zero());
    // Bᵉ∘Bᵉ = 0
    for x in [Word::of_head(0), w(0, &[1]), we(&[0]), we(&[1, 1])] {
        let once = apply_connes_e(&Chain::of_word(x), &ctx).unwrap();
        let twice = apply_connes_e(&once.chain, &ctx).unwrap();
        assert!(twice.chain.is_zero());
    }
}

#[test]
fn phi_values() {
    let a = lam();
    // Φ(a0) = a0
    let c = apply_phi(&Chain::of_word(Word::of_head(1)), &a);
    assert_eq!(c, Chain::of_word(Word::of_head(1)));
    // Φ(a0[a1]) = -a0[a1]
    let c = apply_phi(&Chain::of_word(w(1, &[1])), &a);
    assert_eq!(c, Chain::of_word(w(1, &[1])).scale(&qi(-1)));
}

#[test]
fn uoperator_style_scaling() {
    let a = lam();
    let ctx = ctx_plain(&a);
    let r = Op::Gen(Gen::Gamma).apply_to_word(&w(0, &[1, 1]), &ctx).unwrap();
    assert_eq!(r.chain, Chain::of_word(w(0, &[1, 1])).scale(&qi(-1)));
    let r = Op::Gen(Gen::Gamma).apply_to_word(&Word::of_head(0), &ctx).unwrap();
    assert!(r.chain.is_zero());
}

#[test]
fn overflow_is_flagged_at_cap() {
    let a = lam();
    let ctx = Ctx::new(&a, Sector::Plain, 1);
    let r = Op::b_connes().apply_to_word(&w(0, &[1]), &ctx).unwrap();
    assert!(r.overflow);
}

fn assert_suite_passes(report: &SuiteReport) {
    for id in &report.identities {
        assert!(
            id.status == Status::Pass,
            "suite {} identity {} failed: {:?}",
            report.suite,
            id.name,
            id.counterexample
        );
        assert!(id.certified > 0, "identity {} never certified", id.name);
    }
}

#[test]
fn appendix_suites_on_exterior_algebra() {
    let a = lam();
    let ae = a.unitalize();
    let l = 4;
    let dom = WordDomain::new(Sector::Plain, l);
    for (name, ids) in [
        ("exchange", suite_b1(l)),
        ("families", suite_b2(l)),
        ("bdelta", suite_b3(l)),
        ("unit-prepender", suite_b4()),
        ("unit-prepender-agg", suite_b5()),
        ("weighted-norm", suite_nprime()),
    ] {
        let rep = run_suite(name, &ae, Sector::Plain, l + 3, &dom, &ids).unwrap();
        assert_suite_passes(&rep);
    }
    let rep = run_suite("squares", &a, Sector::Plain, l + 3, &dom, &suite_squares_plain(true)).unwrap();
    assert_suite_passes(&rep);
    let dom_ce = WordDomain::new(Sector::Ce, l);
    let rep = run_suite("squares-e", &a, Sector::Ce, l + 3, &dom_ce, &suite_squares_ce()).unwrap();
    assert_suite_passes(&rep);
    let rep = run_suite("duality", &a, Sector::Ce, l + 3, &dom_ce, &suite_phi(&a, l + 3)).unwrap();
    assert_suite_passes(&rep);
}

#[test]
fn appendix_suites_on_matrix_algebra() {
    let m = end_odd_variables(1);
    let me = m.unitalize();
    let l = 3;
    let dom = WordDomain::new(Sector::Plain, l);
    for (name, ids) in [
        ("exchange", suite_b1(l)),
        ("families", suite_b2(l)),
        ("bdelta", suite_b3(l)),
        ("unit-prepender", suite_b4()),
        ("unit-prepender-agg", suite_b5()),
    ] {
        let rep = run_suite(name, &me, Sector::Plain, l + 3, &dom, &ids).unwrap();
        assert_suite_passes(&rep);
    }
    let rep = run_suite("squares", &m, Sector::Plain, l + 3, &dom, &suite_squares_plain(true)).unwrap();
    assert_suite_passes(&rep);
    let dom_ce = WordDomain::new(Sector::Ce, l);
    let rep = run_suite("duality", &m, Sector::Ce, l + 3, &dom_ce, &suite_phi(&m, l + 3)).unwrap();
    assert_suite_passes(&rep);
}

#[test]
fn graded_suite_on_exterior_algebra() {
    use crate::superalg::{build_algebra, AlgebraSpec};
    let a = build_algebra(&AlgebraSpec {
        basis: vec!["1".into(), "eps".into()],
        parity: vec![0, 1],
        zdegree: Some(vec![0, 1]),
        unit: Some("1".into()),
        mult: vec![(0, 0, 0, "1".into()), (0, 1, 1, "1".into()), (1, 0, 1, "1".into())],
        diff: vec![],
        name: Some("lambda-graded".into()),
    })
    .unwrap();
    let l = 4;
    let dom = WordDomain::new(Sector::Ce, l);
    let rep = run_suite("grading", &a, Sector::Ce, l + 3, &dom, &suite_gamma(l)).unwrap();
    assert_suite_passes(&rep);
}

#[test]
fn insertion_suite_on_exterior_algebra() {
    let a = lam();
    let samples = vec![vec![(0u32, qi(1))], vec![(1u32, qi(1))]];
    let ids = suite_insertions(&a, &samples);
    let dom = WordDomain::new(Sector::Ce, 3);
    let rep = run_suite("insertions", &a, Sector::Ce, 8, &dom, &ids).unwrap();
    assert_suite_passes(&rep);
}

#[test]
fn retraction_section_identities() {
    let a = lam();
    let (plain, ce) = iota_p_identities();
    let dom = WordDomain::new(Sector::Plain, 4);
    let rep = run_suite("retraction", &a, Sector::Plain, 8, &dom, &plain).unwrap();
    assert_suite_passes(&rep);
    let dom_ce = WordDomain::new(Sector::Ce, 4);
    let rep = run_suite("section", &a, Sector::Ce, 8, &dom_ce, &ce).unwrap();
    assert_suite_passes(&rep);
}

#[test]
fn mu_overflow_in_truncated_algebra() {
    use crate::superalg::poly_algebra;
    let p = poly_algebra(&["x".into()], 2);
    let ctx = ctx_plain(&p);
    let x2 = p.basis_index("x^2").unwrap();
    let x = p.basis_index("x").unwrap();
    let r = Op::mu(0).apply_to_word(&w(x2, &[x]), &ctx).unwrap();
    assert!(r.overflow);
    assert!(r.chain.is_zero());
}

#[test]
fn word_domain_counts() {
    let a = lam();
    // plain sector: 2 heads, tails over 2 letters, len <= 2: 2*(1+2+4) = 14
    assert_eq!(WordDomain::new(Sector::Plain, 2).count(&a), 14);
    // extended sector adds e-heads with nonempty tails: 14 + (2 + 4) = 20
    assert_eq!(WordDomain::new(Sector::Ce, 2).count(&a), 20);
}

#[test]
fn delta_family_on_commutator_differential() {
    use crate::superalg::{elem_normalize, poly_algebra, tensor};
    let t = tensor(&poly_algebra(&["x".into()], 2), &end_odd_variables(1));
    let d_elem = elem_normalize(vec![
        (t.basis_index("x*E12").unwrap(), qi(1)),
        (t.basis_index("x*E21").unwrap(), qi(1)),
    ]);
    let alg = t.set_differential_commutator(&d_elem).unwrap();
    let ctx = ctx_ce(&alg);
    let e11 = alg.basis_index("E11").unwrap();
    // δ^(0) on a length-0 word is the differential of the head
    let r = Op::delta(0).apply_to_word(&Word::of_head(e11), &ctx).unwrap();
    let want = Chain::from_terms(vec![
        (Word::of_head(alg.basis_index("x*E21").unwrap()), qi(1)),
        (Word::of_head(alg.basis_index("x*E12").unwrap()), qi(-1)),
    ]);
    assert_eq!(r.chain, want);
    let _ = q(1, 2);
}
