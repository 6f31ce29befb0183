//! User-facing algebra construction from a structured description.

use serde::Deserialize;

use crate::scalars::Q;

use super::{elem_normalize, AlgebraError, SuperAlgebra, TableEntry};

/// Structured description of an algebra. Mirrors the JSON file format:
/// `mult` holds quadruples `[i, j, k, "p/q"]` meaning the product of basis
/// `i` and `j` contains `p/q * basis_k`; `diff` holds triples `[i, k, "p/q"]`.
#[derive(Debug, Clone, Deserialize)]
pub struct AlgebraSpec {
    pub basis: Vec<String>,
    pub parity: Vec<u8>,
    #[serde(default)]
    pub zdegree: Option<Vec<i64>>,
    #[serde(default)]
    pub unit: Option<String>,
    #[serde(default)]
    pub mult: Vec<(u32, u32, u32, String)>,
    #[serde(default)]
    pub diff: Vec<(u32, u32, String)>,
    #[serde(default)]
    pub name: Option<String>,
}

/// Builds and fully validates an algebra from its description.
pub fn build_algebra(spec: &AlgebraSpec) -> Result<SuperAlgebra, AlgebraError> {
    let n = spec.basis.len();
    if spec.parity.len() != n {
        return Err(AlgebraError::BadSpec("parity length mismatch".into()));
    }
    if let Some(z) = &spec.zdegree {
        if z.len() != n {
            return Err(AlgebraError::BadSpec("zdegree length mismatch".into()));
        }
    }
    for p in &spec.parity {
        if *p > 1 {
            return Err(AlgebraError::BadSpec("parity entries must be 0 or 1".into()));
        }
    }
    let mut mult_terms: Vec<Vec<(u32, Q)>> = vec![Vec::new(); n * n];
    for (i, j, k, c) in &spec.mult {
        if *i as usize >= n || *j as usize >= n || *k as usize >= n {
            return Err(AlgebraError::BadSpec(format!("mult index out of range: ({i},{j},{k})")));
        }
        let c = Q::parse(c).map_err(AlgebraError::BadSpec)?;
        mult_terms[*i as usize * n + *j as usize].push((*k, c));
    }
    let mult = mult_terms.into_iter().map(|t| TableEntry::Val(elem_normalize(t))).collect();
    let mut diff_terms: Vec<Vec<(u32, Q)>> = vec![Vec::new(); n];
    for (i, k, c) in &spec.diff {
        if *i as usize >= n || *k as usize >= n {
            return Err(AlgebraError::BadSpec(format!("diff index out of range: ({i},{k})")));
        }
        let c = Q::parse(c).map_err(AlgebraError::BadSpec)?;
        diff_terms[*i as usize].push((*k, c));
    }
    let diff = diff_terms.into_iter().map(|t| TableEntry::Val(elem_normalize(t))).collect();
    let unit = match &spec.unit {
        None => None,
        Some(name) => {
            let idx = spec
                .basis
                .iter()
                .position(|b| b == name)
                .ok_or_else(|| AlgebraError::BadSpec(format!("unknown unit name {name}")))?;
            Some(vec![(idx as u32, Q::one())])
        }
    };
    let alg = SuperAlgebra {
        name: spec.name.clone().unwrap_or_else(|| "algebra".into()),
        basis: spec.basis.clone(),
        parity: spec.parity.clone(),
        zdeg: spec.zdegree.clone(),
        mult,
        diff,
        unit,
        adjoined_unit: None,
    };
    alg.validate()?;
    Ok(alg)
}

/// Parses the JSON algebra file format and validates the result.
pub fn load_algebra_json(text: &str) -> Result<SuperAlgebra, AlgebraError> {
    let spec: AlgebraSpec =
        serde_json::from_str(text).map_err(|e| AlgebraError::BadSpec(e.to_string()))?;
    build_algebra(&spec)
}
