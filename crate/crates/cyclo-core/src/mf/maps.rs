//! The comparison maps to the twisted de Rham side: the index-closing
//! supertrace, the antisymmetrization into forms, and their composite with
//! the insertion exponential (finite thanks to the form-degree cutoff).

use crate::cyclic::{Chain, Ctx, EvalError, Op, Sector, Word};
use crate::scalars::Q;

use super::alg::MfAlgebra;
use super::form::{Form, FormSeries};
use super::poly::Poly;

/// Index-closing trace: words whose matrix indices do not chain and close
/// map to zero; closing words map to the scalar word with the parity sign.
pub fn supertrace(x: &Chain, mfa: &MfAlgebra) -> Chain {
    let mut terms = Vec::new();
    'word: for (w, c) in x.terms() {
        let n = w.len();
        if w.is_e_headed() {
            if n == 0 {
                continue;
            }
            let letters: Vec<(u32, usize, usize)> = w.tail.iter().map(|t| mfa.split(*t)).collect();
            for t in 0..n - 1 {
                if letters[t].2 != letters[t + 1].1 {
                    continue 'word;
                }
            }
            if letters[n - 1].2 != letters[0].1 {
                continue 'word;
            }
            // (-1)^{n|v_{i_1}| + Σ_{s=2..n} |v_{i_s}|}
            let mut exp = (n as u32 & 1) as u8 & mfa.v_parity(letters[0].1);
            for l in letters.iter().skip(1) {
                exp ^= mfa.v_parity(l.1);
            }
            let tail: crate::cyclic::word::Tail = letters.iter().map(|l| l.0).collect();
            let coef = if exp == 1 { -c } else { c.clone() };
            terms.push((Word { head: crate::cyclic::HEAD_E, tail }, coef));
        } else {
            let head = mfa.split(w.head);
            let letters: Vec<(u32, usize, usize)> =
                std::iter::once(head).chain(w.tail.iter().map(|t| mfa.split(*t))).collect();
            for t in 0..n {
                if letters[t].2 != letters[t + 1].1 {
                    continue 'word;
                }
            }
            if letters[n].2 != letters[0].1 {
                continue 'word;
            }
            // (-1)^{(n-1)|v_{i_0}| + Σ_{s=1..n} |v_{i_s}|}
            let mut exp = ((n as u32).wrapping_sub(1) & 1) as u8 & mfa.v_parity(letters[0].1);
            for l in letters.iter().skip(1) {
                exp ^= mfa.v_parity(l.1);
            }
            let tail: crate::cyclic::word::Tail = letters.iter().skip(1).map(|l| l.0).collect();
            let coef = if exp == 1 { -c } else { c.clone() };
            terms.push((Word { head: letters[0].0, tail }, coef));
        }
    }
    Chain::from_terms(terms)
}

/// Antisymmetrization into forms: `φ0[φ1|..|φn] -> (1/n!) φ0 dφ1∧..∧dφn`
/// (with `φ0 = 1` for e-headed words). Words of tail length beyond the
/// number of variables vanish.
pub fn hkr_eps(x: &Chain, mfa: &MfAlgebra) -> Form {
    let k = mfa.k;
    let mut out = Form::zero(k);
    for (w, c) in x.terms() {
        let n = w.len();
        if n > k {
            continue;
        }
        let mut form = if w.is_e_headed() {
            Form::from_poly(&Poly::constant(&mfa.w.vars, Q::one()))
        } else {
            Form::from_poly(&Poly::monomial(&mfa.w.vars, mfa.poly_basis_mono(w.head), Q::one()))
        };
        for t in &w.tail {
            let mono = mfa.poly_basis_mono(*t);
            form = wedge_d_mono(&form, &mono, &mfa.w.vars);
            if form.is_zero() {
                break;
            }
        }
        let mut fact = Q::one();
        for j in 1..=n as i64 {
            fact = &fact * &Q::from_int(j);
        }
        out = out.add(&form.scale(&(c * &fact.recip())));
    }
    out
}

/// current ∧ d(mono), wedging from the right.
fn wedge_d_mono(form: &Form, mono: &super::poly::Mono, vars: &[String]) -> Form {
    let k = vars.len();
    let mut out = Form::zero(k);
    for i in 0..k {
        if mono[i] == 0 {
            continue;
        }
        let mut m2 = mono.clone();
        m2[i] -= 1;
        let part = Poly::monomial(vars, m2, Q::from_int(mono[i] as i64));
        let scaled = form.mul_poly(&part);
        // append dy_i on the right: move it left past the dy_j with j > i
        for ((mask, m), c) in &scaled.terms {
            let bit = 1u32 << i;
            if mask & bit != 0 {
                continue;
            }
            let above = (mask >> (i + 1)).count_ones();
            let coef = if above % 2 == 1 { -c } else { c.clone() };
            out.add_term(mask | bit, m.clone(), &coef);
        }
    }
    out
}

/// The insertion exponential composed with trace and antisymmetrization:
///   Σ_{j>=0} (-1)^j / j! · ε(str(bᵉ(D(w))^j x)),
/// finite because ε kills tail lengths beyond the number of variables.
pub fn composite_to_derham(x: &Chain, mfa: &MfAlgebra) -> Result<Form, EvalError> {
    let k = mfa.k;
    let max_len = x.terms().iter().map(|(w, _)| w.len()).max().unwrap_or(0);
    let ctx = Ctx::new(&mfa.alg, Sector::Ce, max_len + k + 2);
    let bdw = Op::insert_all(std::sync::Arc::new(mfa.dw_elem.clone()), 0);
    let mut out = Form::zero(k);
    let mut cur = x.clone();
    let mut sign = Q::one();
    let mut fact = Q::one();
    for j in 0.. {
        if cur.is_zero() {
            break;
        }
        let min_len = cur.terms().iter().map(|(w, _)| w.len()).min().unwrap_or(usize::MAX);
        if min_len > k {
            break;
        }
        let coeff = &sign * &fact.recip();
        out = out.add(&hkr_eps(&supertrace(&cur, mfa), mfa).scale(&coeff));
        let next = bdw.apply(&cur, &ctx)?;
        debug_assert!(!next.overflow);
        cur = next.chain;
        sign = -sign;
        fact = &fact * &Q::from_int(j + 1);
    }
    Ok(out)
}

/// Like `composite_to_derham` but applied to every u-coefficient of a
/// Laurent chain, producing a form series.
pub fn composite_series(
    x: &crate::uconn::LaurentChain,
    mfa: &MfAlgebra,
) -> Result<FormSeries, EvalError> {
    let mut out = FormSeries::zero();
    for (p, c) in &x.coeffs {
        out.add_form(*p, composite_to_derham(c, mfa)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mf::alg::PolyDecomposition;
    use crate::scalars::q::{q, qi};

    fn a_w(wtxt: &str, vars: &[&str]) -> MfAlgebra {
        let vs: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let w = Poly::parse(wtxt, &vs).unwrap();
        let max_deg = (2 * w.deg().max(1)) as u32;
        let dec = PolyDecomposition::greedy(&w).unwrap();
        MfAlgebra::build(&w, dec, max_deg).unwrap()
    }

    #[test]
    fn supertrace_oracle() {
        let mfa = a_w("x^2", &["x"]);
        // str((x⊗E11)[x⊗E12 | 1⊗E21]) = -x[x|1]
        let x_e11 = mfa.alg.basis_index("x*E11").unwrap();
        let x_e12 = mfa.alg.basis_index("x*E12").unwrap();
        let one_e21 = mfa.alg.basis_index("E21").unwrap();
        let w = Word::new(x_e11, vec![x_e12, one_e21].as_slice());
        let r = supertrace(&Chain::of_word(w), &mfa);
        let x_idx = mfa.poly_alg.basis_index("x").unwrap();
        let one_idx = mfa.poly_alg.basis_index("1").unwrap();
        let want = Chain::of_word(Word::new(x_idx, vec![x_idx, one_idx].as_slice())).scale(&qi(-1));
        assert_eq!(r, want);
        // indices that do not close map to zero
        let x_e11_only = Word::new(x_e12, vec![x_e11].as_slice());
        assert!(supertrace(&Chain::of_word(x_e11_only), &mfa).is_zero());
    }

    #[test]
    fn hkr_oracle() {
        let mfa = a_w("x^2", &["x"]);
        let x_idx = mfa.poly_alg.basis_index("x").unwrap();
        // ε(x[x]) = x dx
        let w = Word::new(x_idx, vec![x_idx].as_slice());
        let f = hkr_eps(&Chain::of_word(w), &mfa);
        let want = Form::top(&Poly::parse("x", &["x".to_string()]).unwrap());
        assert_eq!(f, want);
        // ε(e[x|x]) = ½ dx∧dx = 0
        let w = Word::new(crate::cyclic::HEAD_E, vec![x_idx, x_idx].as_slice());
        assert!(hkr_eps(&Chain::of_word(w), &mfa).is_zero());
        // tail longer than the variable count vanishes
        let w = Word::new(x_idx, vec![x_idx, x_idx].as_slice());
        assert!(hkr_eps(&Chain::of_word(w), &mfa).is_zero());
    }

    #[test]
    fn composite_oracle_on_length_zero() {
        // hand expansion for x = 1⊗E11, w = x², D(w) = x⊗E12 + x⊗E21:
        // j=0: ε(str(1⊗E11)) = 1; j=1: both insertions break the index chain,
        // so the first-order term vanishes; total = 1.
        let mfa = a_w("x^2", &["x"]);
        let e11 = mfa.alg.basis_index("E11").unwrap();
        let f = composite_to_derham(&Chain::of_word(Word::of_head(e11)), &mfa).unwrap();
        let want = Form::from_poly(&Poly::constant(&["x".to_string()], qi(1)));
        assert_eq!(f, want);
        // tail length beyond k gives 0 (k = 1 here)
        let e12 = mfa.alg.basis_index("E12").unwrap();
        let e21 = mfa.alg.basis_index("E21").unwrap();
        let w = Word::new(e11, vec![e12, e21].as_slice());
        assert!(composite_to_derham(&Chain::of_word(w), &mfa).unwrap().is_zero());
    }

    #[test]
    fn composite_produces_one_forms() {
        let mfa = a_w("x^2", &["x"]);
        // a length-1 chain with closing indices maps to a 0-form + 1-form mix
        let x_e11 = mfa.alg.basis_index("x*E11").unwrap();
        let e11 = mfa.alg.basis_index("E11").unwrap();
        let w = Word::new(e11, vec![x_e11].as_slice());
        let f = composite_to_derham(&Chain::of_word(w), &mfa).unwrap();
        assert!(!f.is_zero());
        assert!(f.terms.keys().any(|(mask, _)| *mask != 0), "expected a 1-form part, got {f}");
        let _ = q(1, 2);
    }
}
