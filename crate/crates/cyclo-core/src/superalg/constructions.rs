//! Stock algebra constructions: truncated polynomial rings, endomorphism
//! algebras of odd-variable spaces, and graded tensor products.

use crate::scalars::Q;

use super::{elem_normalize, elem_scale, elem_single, SuperAlgebra, TableEntry};

/// Monomials in `vars` of total degree <= `max_deg`, ordered by (degree, lex
/// exponent vector). Products escaping the cutoff are flagged overflowed.
pub fn poly_algebra(vars: &[String], max_deg: u32) -> SuperAlgebra {
    assert!(max_deg >= 1);
    let k = vars.len();
    let mut monos: Vec<Vec<u32>> = Vec::new();
    fn gen(k: usize, deg_left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for d in 0..=deg_left {
            cur.push(d);
            gen(k, deg_left - d, cur, out);
            cur.pop();
        }
    }
    for total in 0..=max_deg {
        let mut batch = Vec::new();
        gen(k, total, &mut Vec::new(), &mut batch);
        batch.retain(|m| m.iter().sum::<u32>() == total);
        batch.sort();
        monos.extend(batch);
    }
    let name_of = |m: &Vec<u32>| mono_name(vars, m);
    let index = |m: &Vec<u32>| monos.iter().position(|x| x == m).map(|i| i as u32);
    let n = monos.len();
    let mut mult = vec![TableEntry::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            let sum: Vec<u32> = monos[i].iter().zip(&monos[j]).map(|(a, b)| a + b).collect();
            mult[i * n + j] = if sum.iter().sum::<u32>() > max_deg {
                TableEntry::Overflow
            } else {
                TableEntry::Val(elem_single(index(&sum).unwrap()))
            };
        }
    }
    SuperAlgebra {
        name: format!("poly[{}]<= {}", vars.join(","), max_deg),
        basis: monos.iter().map(name_of).collect(),
        parity: vec![0; n],
        zdeg: None,
        mult,
        diff: vec![TableEntry::zero(); n],
        unit: Some(elem_single(0)),
        adjoined_unit: None,
    }
}

pub fn mono_name(vars: &[String], m: &[u32]) -> String {
    let mut parts = Vec::new();
    for (v, e) in vars.iter().zip(m) {
        match e {
            0 => {}
            1 => parts.push(v.clone()),
            e => parts.push(format!("{v}^{e}")),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Basis of the polynomial space in `k` odd variables, ordered by the binary
/// value of the index-subset mask (1 first, then θ1, θ2, θ1θ2, ...).
pub fn theta_basis_names(k: usize) -> Vec<String> {
    (0..1usize << k)
        .map(|mask| {
            if mask == 0 {
                "1".into()
            } else {
                (0..k).filter(|t| mask >> t & 1 == 1).map(|t| format!("th{}", t + 1)).collect::<Vec<_>>().join("")
            }
        })
        .collect()
}

/// Endomorphisms of the space of polynomials in `k` odd variables, with the
/// elementary-matrix basis `E_{ij}` (row i, column j; `E_{ij} v_j = v_i`).
/// Parity of `E_{ij}` is `|v_i| + |v_j|`. Zero differential.
pub fn end_odd_variables(k: usize) -> SuperAlgebra {
    assert!(k >= 1);
    let dim_v = 1usize << k;
    let n = dim_v * dim_v;
    let v_parity = |m: usize| (m.count_ones() % 2) as u8;
    let idx = |i: usize, j: usize| i * dim_v + j;
    let mut basis = Vec::with_capacity(n);
    let mut parity = Vec::with_capacity(n);
    for i in 0..dim_v {
        for j in 0..dim_v {
            basis.push(format!("E{}{}", i + 1, j + 1));
            parity.push((v_parity(i) + v_parity(j)) % 2);
        }
    }
    let mut mult = vec![TableEntry::zero(); n * n];
    for i in 0..dim_v {
        for j in 0..dim_v {
            for l in 0..dim_v {
                for m in 0..dim_v {
                    // E_{ij} E_{lm} = δ_{jl} E_{im}
                    if j == l {
                        mult[idx(i, j) * n + idx(l, m)] = TableEntry::Val(elem_single(idx(i, m) as u32));
                    }
                }
            }
        }
    }
    let unit = elem_normalize((0..dim_v).map(|i| (idx(i, i) as u32, Q::one())).collect());
    SuperAlgebra {
        name: format!("End(V_{k})"),
        basis,
        parity,
        zdeg: None,
        mult,
        diff: vec![TableEntry::zero(); n],
        unit: Some(unit),
        adjoined_unit: None,
    }
}

/// Graded tensor product: `(a⊗b)(a'⊗b') = (-1)^{|b||a'|} aa'⊗bb'`, with
/// differential `d⊗1 + 1⊗d` (Koszul sign on the second summand).
pub fn tensor(a: &SuperAlgebra, b: &SuperAlgebra) -> SuperAlgebra {
    let (na, nb) = (a.dim(), b.dim());
    let n = na * nb;
    let idx = |i: usize, p: usize| i * nb + p;
    let mut basis = Vec::with_capacity(n);
    let mut parity = Vec::with_capacity(n);
    let mut zdeg = match (&a.zdeg, &b.zdeg) {
        (Some(_), Some(_)) => Some(Vec::with_capacity(n)),
        _ => None,
    };
    for i in 0..na {
        for p in 0..nb {
            let an = a.basis_name(i as u32);
            let bn = b.basis_name(p as u32);
            basis.push(if an == "1" {
                bn.to_string()
            } else if bn == "1" {
                an.to_string()
            } else {
                format!("{an}*{bn}")
            });
            parity.push((a.parity(i as u32) + b.parity(p as u32)) % 2);
            if let Some(z) = &mut zdeg {
                z.push(a.zdeg(i as u32).unwrap() + b.zdeg(p as u32).unwrap());
            }
        }
    }
    let mut mult = vec![TableEntry::zero(); n * n];
    for i in 0..na {
        for p in 0..nb {
            for j in 0..na {
                for q in 0..nb {
                    let left = a.mul_basis(i as u32, j as u32);
                    let right = b.mul_basis(p as u32, q as u32);
                    let entry = match (left, right) {
                        (TableEntry::Val(x), TableEntry::Val(y)) => {
                            if x.is_empty() || y.is_empty() {
                                TableEntry::zero()
                            } else {
                                let sign = if b.parity(p as u32) == 1 && a.parity(j as u32) == 1 {
                                    Q::from_int(-1)
                                } else {
                                    Q::one()
                                };
                                let mut terms = Vec::new();
                                for (xi, xc) in x {
                                    for (yi, yc) in y {
                                        terms.push((
                                            idx(*xi as usize, *yi as usize) as u32,
                                            &(xc * yc) * &sign,
                                        ));
                                    }
                                }
                                TableEntry::Val(elem_normalize(terms))
                            }
                        }
                        _ => TableEntry::Overflow,
                    };
                    mult[idx(i, p) * n + idx(j, q)] = entry;
                }
            }
        }
    }
    let mut diff = vec![TableEntry::zero(); n];
    for i in 0..na {
        for p in 0..nb {
            let entry = match (a.diff_basis(i as u32), b.diff_basis(p as u32)) {
                (TableEntry::Val(da), TableEntry::Val(db)) => {
                    let mut terms = Vec::new();
                    for (k, c) in da {
                        terms.push((idx(*k as usize, p) as u32, c.clone()));
                    }
                    let sign = if a.parity(i as u32) == 1 { Q::from_int(-1) } else { Q::one() };
                    for (k, c) in db {
                        terms.push((idx(i, *k as usize) as u32, c * &sign));
                    }
                    TableEntry::Val(elem_normalize(terms))
                }
                _ => TableEntry::Overflow,
            };
            diff[idx(i, p)] = entry;
        }
    }
    let unit = match (a.unit(), b.unit()) {
        (Some(ua), Some(ub)) => {
            let mut terms = Vec::new();
            for (i, ca) in ua {
                for (p, cb) in ub {
                    terms.push((idx(*i as usize, *p as usize) as u32, ca * cb));
                }
            }
            Some(elem_normalize(terms))
        }
        _ => None,
    };
    SuperAlgebra {
        name: format!("{}(x){}", a.name, b.name),
        basis,
        parity,
        zdeg,
        mult,
        diff,
        unit,
        adjoined_unit: None,
    }
}

/// The operator θ_i· (left multiplication) on the odd-variable space, as an
/// element of `end_odd_variables(k)`.
pub fn theta_mul_operator(k: usize, i: usize) -> super::Elem {
    let dim_v = 1usize << k;
    let mut terms = Vec::new();
    for m in 0..dim_v {
        if m >> i & 1 == 0 {
            let target = m | (1 << i);
            // θ_i θ_S: move θ_i past the θ_j with j < i present in S
            let sign = ((m & ((1 << i) - 1)).count_ones() % 2) as i64;
            terms.push((
                (target * dim_v + m) as u32,
                if sign == 1 { Q::from_int(-1) } else { Q::one() },
            ));
        }
    }
    elem_normalize(terms)
}

/// The derivation ∂/∂θ_i on the odd-variable space, as an element of
/// `end_odd_variables(k)`.
pub fn theta_del_operator(k: usize, i: usize) -> super::Elem {
    let dim_v = 1usize << k;
    let mut terms = Vec::new();
    for m in 0..dim_v {
        if m >> i & 1 == 1 {
            let target = m & !(1 << i);
            let sign = ((m & ((1 << i) - 1)).count_ones() % 2) as i64;
            terms.push((
                (target * dim_v + m) as u32,
                if sign == 1 { Q::from_int(-1) } else { Q::one() },
            ));
        }
    }
    elem_normalize(terms)
}

#[allow(unused)]
fn scale_entry(e: &TableEntry, c: &Q) -> TableEntry {
    match e {
        TableEntry::Overflow => TableEntry::Overflow,
        TableEntry::Val(v) => TableEntry::Val(elem_scale(v, c)),
    }
}
