//! Right regular representation and G-circulant matrices.
//!
//! `A^g` has entry `(i, j) = 1` iff `g_i g = g_j`. The span of the `A^g` is
//! the algebra of G-circulant matrices, isomorphic to `k[G]` via
//! [`embed`] / [`extract`].

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::ExactMatrix;
use crate::field::{FieldSpec, Scalar};
use crate::group::FiniteGroup;
use crate::groupring::GroupRingElement;

/// `A^g` stored as the permutation `i -> index of g_i g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularRepMatrix {
    g: usize,
    perm: Vec<usize>,
}

impl RegularRepMatrix {
    pub fn element(&self) -> usize {
        self.g
    }

    /// Row `i` has its single 1 in column `perm()[i]`.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    /// The dense 0/1 matrix over `spec`.
    pub fn densify(&self, spec: FieldSpec) -> ExactMatrix {
        let n = self.perm.len();
        let mut m = ExactMatrix::zeros(spec, n, n);
        for (i, &j) in self.perm.iter().enumerate() {
            m[(i, j)] = spec.one();
        }
        m
    }

    /// The permutation of the matrix product `self * other`.
    pub fn compose(&self, other: &RegularRepMatrix) -> Vec<usize> {
        self.perm.iter().map(|&k| other.perm[k]).collect()
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.perm.len()];
        self.perm
            .iter()
            .all(|&j| j < seen.len() && !std::mem::replace(&mut seen[j], true))
    }
}

/// `A^g` for the element with index `g`.
pub fn regular_rep(group: &FiniteGroup, g: usize) -> RegularRepMatrix {
    assert!(g < group.order(), "element index {g} out of range");
    RegularRepMatrix {
        g,
        perm: (0..group.order()).map(|i| group.mul(i, g)).collect(),
    }
}

/// Checks `A^g A^h = A^(gh)` at the level of permutations.
pub fn rep_product(group: &FiniteGroup, g: usize, h: usize) -> bool {
    let composed = regular_rep(group, g).compose(&regular_rep(group, h));
    composed == regular_rep(group, group.mul(g, h)).perm
}

/// `sum_i a_i A^(g_i)`, built entrywise: entry `(i, j)` is the coefficient of
/// `g_i^-1 g_j`. Every diagonal entry equals the identity coefficient.
pub fn embed(x: &GroupRingElement) -> ExactMatrix {
    let g = x.group();
    let n = g.order();
    let entries = (0..n)
        .flat_map(|i| {
            let iinv = g.inverse_index(i);
            (0..n).map(move |j| x.coeffs()[g.mul(iinv, j)].clone())
        })
        .collect();
    ExactMatrix::new(x.spec(), n, n, entries).expect("n x n entries over one field")
}

fn check_dims(m: &ExactMatrix, group: &FiniteGroup) -> Result<()> {
    let n = group.order();
    if m.rows() != n || m.cols() != n {
        return Err(Error::Dimension(format!(
            "{}x{} matrix for {} of order {n}",
            m.rows(),
            m.cols(),
            group.label()
        )));
    }
    Ok(())
}

/// First entry `(i, j)` that differs from `(0, m)` where `g_m = g_i^-1 g_j`.
fn first_violation(m: &ExactMatrix, group: &FiniteGroup) -> Option<(usize, usize, usize, usize)> {
    let n = group.order();
    (0..n).find_map(|i| {
        let iinv = group.inverse_index(i);
        (0..n).find_map(|j| {
            let class = group.mul(iinv, j);
            (m[(i, j)] != m[(0, class)]).then_some((i, j, 0, class))
        })
    })
}

/// Whether `M[i][j] = M[k][l]` whenever `g_i^-1 g_j = g_k^-1 g_l`.
pub fn is_g_circulant(m: &ExactMatrix, group: &FiniteGroup) -> Result<bool> {
    check_dims(m, group)?;
    Ok(first_violation(m, group).is_none())
}

/// Inverse of [`embed`]: reads row 0, then verifies the whole matrix.
pub fn extract(m: &ExactMatrix, group: &Arc<FiniteGroup>) -> Result<GroupRingElement> {
    check_dims(m, group)?;
    if let Some((i, j, k, l)) = first_violation(m, group) {
        return Err(Error::NotCirculant { i, j, k, l });
    }
    GroupRingElement::new(group, m.spec(), m.row(0).to_vec())
}

/// Parses the matrix JSON format: an array of rows of field-element strings
/// (bare integers are accepted too).
pub fn matrix_from_json(text: &str, spec: FieldSpec) -> Result<ExactMatrix> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| Error::parse("matrix JSON", text.trim(), e.to_string()))?;
    let bad = |why: &str| Error::parse("matrix JSON", text.trim(), why.to_string());
    let rows = value
        .as_array()
        .ok_or_else(|| bad("expected an array of rows"))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| bad("each row must be an array"))?
                .iter()
                .map(|v| match v {
                    serde_json::Value::String(s) => spec.parse_scalar(s),
                    serde_json::Value::Number(n) if n.is_i64() => {
                        Ok(spec.from_i64(n.as_i64().expect("checked")))
                    }
                    _ => Err(bad("entries must be strings like \"3\" or \"1/2\"")),
                })
                .collect::<Result<Vec<Scalar>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Err(bad("matrix has no rows"));
    }
    ExactMatrix::from_rows(spec, rows)
}

/// Renders a matrix in the JSON format read by [`matrix_from_json`].
pub fn matrix_to_json(m: &ExactMatrix) -> serde_json::Value {
    serde_json::Value::Array(
        m.to_rows()
            .into_iter()
            .map(|r| {
                r.iter()
                    .map(|x| serde_json::Value::String(x.to_string()))
                    .collect()
            })
            .collect(),
    )
}
