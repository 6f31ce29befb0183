use crate::scalars::q::{q, qi};
use crate::scalars::Q;

use super::constructions::{theta_del_operator, theta_mul_operator};
use super::*;

pub fn exterior_algebra() -> SuperAlgebra {
    // span{1, eps}, eps odd, eps^2 = 0, d = 0, unit 1
    build_algebra(&AlgebraSpec {
        basis: vec!["1".into(), "eps".into()],
        parity: vec![0, 1],
        zdegree: None,
        unit: Some("1".into()),
        mult: vec![
            (0, 0, 0, "1".into()),
            (0, 1, 1, "1".into()),
            (1, 0, 1, "1".into()),
        ],
        diff: vec![],
        name: Some("lambda".into()),
    })
    .unwrap()
}

#[test]
fn exterior_algebra_valid() {
    let a = exterior_algebra();
    assert_eq!(a.dim(), 2);
    assert_eq!(a.mul_basis(1, 1), &TableEntry::Val(vec![]));
    assert!(a.validate().is_ok());
}

#[test]
fn square_nonzero_differential_rejected() {
    // d(a) = b, d(b) = a gives d^2(a) = a != 0
    let res = build_algebra(&AlgebraSpec {
        basis: vec!["a".into(), "b".into()],
        parity: vec![1, 0],
        zdegree: None,
        unit: None,
        mult: vec![],
        diff: vec![(0, 1, "1".into()), (1, 0, "1".into())],
        name: None,
    });
    match res {
        Err(AlgebraError::InvalidAlgebra { axiom, .. }) => assert!(axiom.contains("d∘d")),
        other => panic!("expected InvalidAlgebra, got {other:?}"),
    }
}

#[test]
fn broken_associativity_rejected() {
    // x*x = y but x*y = x, y*x = 0 breaks (xx)x = x(xx)
    let res = build_algebra(&AlgebraSpec {
        basis: vec!["x".into(), "y".into()],
        parity: vec![0, 0],
        zdegree: None,
        unit: None,
        mult: vec![(0, 0, 1, "1".into()), (0, 1, 0, "1".into())],
        diff: vec![],
        name: None,
    });
    match res {
        Err(AlgebraError::InvalidAlgebra { axiom, .. }) => assert_eq!(axiom, "associativity"),
        other => panic!("expected InvalidAlgebra, got {other:?}"),
    }
}

#[test]
fn matrix_units_multiply() {
    let e = end_odd_variables(1);
    assert_eq!(e.dim(), 4);
    // E12 E21 = E11
    let e12 = e.basis_index("E12").unwrap();
    let e21 = e.basis_index("E21").unwrap();
    let e11 = e.basis_index("E11").unwrap();
    assert_eq!(e.mul_basis(e12, e21), &TableEntry::Val(elem_single(e11)));
    // parities: |E12| = 1, |E11| = 0
    assert_eq!(e.parity(e12), 1);
    assert_eq!(e.parity(e11), 0);
    assert!(e.validate().is_ok());
}

#[test]
fn theta_operators_match_matrix_units() {
    // ordering v1 = 1, v2 = th: ∂θ = E12, θ· = E21
    let e = end_odd_variables(1);
    let del = theta_del_operator(1, 0);
    let mul = theta_mul_operator(1, 0);
    assert_eq!(del, elem_single(e.basis_index("E12").unwrap()));
    assert_eq!(mul, elem_single(e.basis_index("E21").unwrap()));
}

#[test]
fn poly_truncation_overflows() {
    let p = poly_algebra(&["x".into()], 2);
    assert_eq!(p.dim(), 3);
    let x = p.basis_index("x").unwrap();
    let x2 = p.basis_index("x^2").unwrap();
    assert_eq!(p.mul_basis(x, x), &TableEntry::Val(elem_single(x2)));
    assert_eq!(p.mul_basis(x, x2), &TableEntry::Overflow);
    let p1 = poly_algebra(&["x".into(), "y".into()], 1);
    let (x, y) = (p1.basis_index("x").unwrap(), p1.basis_index("y").unwrap());
    assert_eq!(p1.mul_basis(x, y), &TableEntry::Overflow);
    let p4 = poly_algebra(&["x".into()], 4);
    let x2 = p4.basis_index("x^2").unwrap();
    let x4 = p4.basis_index("x^4").unwrap();
    assert_eq!(p4.mul_basis(x2, x2), &TableEntry::Val(elem_single(x4)));
}

#[test]
fn tensor_koszul_signs() {
    let p = poly_algebra(&["x".into()], 2);
    let e = end_odd_variables(1);
    let t = tensor(&p, &e);
    // (1⊗E12)(x⊗E21) = +x⊗E11 (E12 odd, x even)
    let i = t.basis_index("E12").unwrap();
    let j = t.basis_index("x*E21").unwrap();
    let k = t.basis_index("x*E11").unwrap();
    assert_eq!(t.mul_basis(i, j), &TableEntry::Val(elem_single(k)));
    // unit of tensor = unit ⊗ unit
    let u = t.unit().unwrap();
    assert_eq!(u.len(), 2);
    assert!(t.validate().is_ok());
}

#[test]
fn tensor_odd_anticommute() {
    // two odd generators in a tensor product anticommute
    let a = exterior_algebra();
    let t = tensor(&a, &a);
    let i = t.basis_index("eps*1").unwrap_or_else(|| t.basis_index("eps").unwrap());
    // eps⊗1 and 1⊗eps
    let left = t.mul_elem(&elem_single(i), &elem_single(1)).unwrap();
    let right = t.mul_elem(&elem_single(1), &elem_single(i)).unwrap();
    assert_eq!(left, elem_scale(&right, &qi(-1)));
}

#[test]
fn unitalize_adds_central_unit() {
    let a = build_algebra(&AlgebraSpec {
        basis: vec!["eps".into()],
        parity: vec![1],
        zdegree: None,
        unit: None,
        mult: vec![],
        diff: vec![],
        name: None,
    })
    .unwrap();
    let ae = a.unitalize();
    assert_eq!(ae.dim(), 2);
    let e = ae.adjoined_unit().unwrap();
    let eps = ae.basis_index("eps").unwrap();
    assert_eq!(ae.mul_basis(e, eps), &TableEntry::Val(elem_single(eps)));
    assert_eq!(ae.diff_basis(e), &TableEntry::Val(vec![]));
    assert!(ae.validate().is_ok());
    // unitalize twice adds two distinct units
    let aee = ae.unitalize();
    assert_eq!(aee.dim(), 3);
}

#[test]
fn opposite_sign_rule() {
    let e = end_odd_variables(1);
    let op = e.opposite();
    // E12 *op E21 = -E21 E12 = -E22
    let e12 = e.basis_index("E12").unwrap();
    let e21 = e.basis_index("E21").unwrap();
    let e22 = e.basis_index("E22").unwrap();
    assert_eq!(
        op.mul_basis(e12, e21),
        &TableEntry::Val(vec![(e22, qi(-1))])
    );
    // involution
    let opop = op.opposite();
    for i in 0..e.dim() as u32 {
        for j in 0..e.dim() as u32 {
            assert_eq!(opop.mul_basis(i, j), e.mul_basis(i, j));
        }
    }
    // opposite of a commutative even algebra is itself
    let p = poly_algebra(&["x".into()], 3);
    let pop = p.opposite();
    for i in 0..p.dim() as u32 {
        for j in 0..p.dim() as u32 {
            assert_eq!(pop.mul_basis(i, j), p.mul_basis(i, j));
        }
    }
}

#[test]
fn commutator_differential() {
    // D = x(E12 + E21) in Q[x]<=2 ⊗ End: d(E11) = x E21 - x E12
    let t = tensor(&poly_algebra(&["x".into()], 2), &end_odd_variables(1));
    let d_elem = elem_normalize(vec![
        (t.basis_index("x*E12").unwrap(), Q::one()),
        (t.basis_index("x*E21").unwrap(), Q::one()),
    ]);
    let alg = t.set_differential_commutator(&d_elem).unwrap();
    let e11 = alg.basis_index("E11").unwrap();
    let want = elem_normalize(vec![
        (alg.basis_index("x*E21").unwrap(), qi(1)),
        (alg.basis_index("x*E12").unwrap(), qi(-1)),
    ]);
    assert_eq!(alg.diff_basis(e11), &TableEntry::Val(want));
    // d(D) = 2 D^2 = 2 x^2 ⊗ 1
    let d_of_d = alg.diff_elem(&d_elem).unwrap();
    let two_w = elem_normalize(vec![
        (alg.basis_index("x^2*E11").unwrap(), qi(2)),
        (alg.basis_index("x^2*E22").unwrap(), qi(2)),
    ]);
    assert_eq!(d_of_d, two_w);
    // even element rejected
    let even = elem_single(alg.basis_index("E11").unwrap());
    assert!(matches!(t.set_differential_commutator(&even), Err(AlgebraError::NotOdd)));
}

#[test]
fn elem_parity_detection() {
    let e = end_odd_variables(1);
    let mixed = elem_normalize(vec![
        (e.basis_index("E11").unwrap(), q(1, 2)),
        (e.basis_index("E12").unwrap(), q(1, 3)),
    ]);
    assert_eq!(e.elem_parity(&mixed), None);
    assert_eq!(e.elem_parity(&elem_single(e.basis_index("E12").unwrap())), Some(1));
}

#[test]
fn json_roundtrip() {
    let text = r#"{
        "basis": ["1", "eps"],
        "parity": [0, 1],
        "unit": "1",
        "mult": [[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"]],
        "diff": []
    }"#;
    let a = load_algebra_json(text).unwrap();
    assert_eq!(a.dim(), 2);
    assert!(load_algebra_json("{\"basis\": [\"a\"], \"parity\": [3]}").is_err());
}
