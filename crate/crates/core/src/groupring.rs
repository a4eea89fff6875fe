//! The group algebra `k[G]` as dense coefficient vectors.
//!
//! `coeffs[i]` is the coefficient of `g_(i+1)` in 1-based notation, so
//! `coeffs[0]` is always the coefficient of the identity.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::group::FiniteGroup;

/// An element `sum_i a_i g_i` of `k[G]`.
#[derive(Clone, Debug)]
pub struct GroupRingElement {
    spec: FieldSpec,
    group: Arc<FiniteGroup>,
    coeffs: Vec<Scalar>,
}

impl PartialEq for GroupRingElement {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
            && same_group(&self.group, &other.group)
            && self.coeffs == other.coeffs
    }
}

impl Eq for GroupRingElement {}

fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || a.same_table(b)
}

impl GroupRingElement {
    pub fn new(group: &Arc<FiniteGroup>, spec: FieldSpec, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::Dimension(format!(
                "{} needs {} coefficients, got {}",
                group.label(),
                group.order(),
                coeffs.len()
            )));
        }
        if let Some(c) = coeffs.iter().find(|c| c.spec() != spec) {
            return Err(Error::FieldMismatch(spec, c.spec()));
        }
        Ok(GroupRingElement {
            spec,
            group: Arc::clone(group),
            coeffs,
        })
    }

    pub fn from_i64(group: &Arc<FiniteGroup>, spec: FieldSpec, coeffs: &[i64]) -> Result<Self> {
        Self::new(
            group,
            spec,
            coeffs.iter().map(|&c| spec.from_i64(c)).collect(),
        )
    }

    /// Parses a comma-separated coefficient list in group order, e.g. `2,5,7`
    /// or `1/2,0,-3`.
    pub fn parse_literal(group: &Arc<FiniteGroup>, spec: FieldSpec, literal: &str) -> Result<Self> {
        let coeffs = literal
            .split(',')
            .map(|t| spec.parse_scalar(t))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() != group.order() {
            return Err(Error::parse(
                "element literal",
                literal,
                format!(
                    "{} has order {}, got {} coefficients",
                    group.label(),
                    group.order(),
                    coeffs.len()
                ),
            ));
        }
        Self::new(group, spec, coeffs)
    }

    pub fn zero(group: &Arc<FiniteGroup>, spec: FieldSpec) -> Self {
        GroupRingElement {
            spec,
            group: Arc::clone(group),
            coeffs: vec![spec.zero(); group.order()],
        }
    }

    pub fn one(group: &Arc<FiniteGroup>, spec: FieldSpec) -> Self {
        Self::basis(group, spec, 0)
    }

    /// The group element `g_(i+1)` viewed inside `k[G]`.
    pub fn basis(group: &Arc<FiniteGroup>, spec: FieldSpec, i: usize) -> Self {
        let mut e = Self::zero(group, spec);
        e.coeffs[i] = spec.one();
        e
    }

    /// `sigma = sum_g g`. Central, with `sigma^2 = |G| sigma`.
    pub fn sigma(group: &Arc<FiniteGroup>, spec: FieldSpec) -> Self {
        GroupRingElement {
            spec,
            group: Arc::clone(group),
            coeffs: vec![spec.one(); group.order()],
        }
    }

    /// Uniform residues over `F_p`; small fractions `a/b` with `|a| <= 5`,
    /// `1 <= b <= 3` over `Q`.
    pub fn random<R: Rng + ?Sized>(group: &Arc<FiniteGroup>, spec: FieldSpec, rng: &mut R) -> Self {
        let coeffs = (0..group.order())
            .map(|_| random_scalar(spec, rng))
            .collect();
        GroupRingElement {
            spec,
            group: Arc::clone(group),
            coeffs,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    /// Coefficient of the identity, `a_1` in 1-based notation.
    pub fn identity_coeff(&self) -> &Scalar {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    fn check(&self, other: &GroupRingElement) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::FieldMismatch(self.spec, other.spec));
        }
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    fn with_coeffs(&self, coeffs: Vec<Scalar>) -> Self {
        GroupRingElement {
            spec: self.spec,
            group: Arc::clone(&self.group),
            coeffs,
        }
    }

    pub fn add(&self, other: &GroupRingElement) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_coeffs(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &GroupRingElement) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_coeffs(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    pub fn neg(&self) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|a| -a).collect())
    }

    pub fn scalar_mul(&self, c: &Scalar) -> Result<Self> {
        if c.spec() != self.spec {
            return Err(Error::FieldMismatch(self.spec, c.spec()));
        }
        Ok(self.with_coeffs(self.coeffs.iter().map(|a| c * a).collect()))
    }

    /// Convolution over the Cayley table:
    /// `(xy)[m] = sum over g_i g_j = g_m of x[i] y[j]`.
    pub fn mul(&self, other: &GroupRingElement) -> Result<Self> {
        self.check(other)?;
        let mut out = vec![self.spec.zero(); self.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let m = self.group.mul(i, j);
                    out[m] = &out[m] + &(a * b);
                }
            }
        }
        Ok(self.with_coeffs(out))
    }

    /// `x * g_j^-1`. The identity coefficient of the result is `coeffs[j]`.
    pub fn translate(&self, j: usize) -> Self {
        let jinv = self.group.inverse_index(j);
        let mut out = vec![self.spec.zero(); self.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[self.group.mul(i, jinv)] = a.clone();
        }
        self.with_coeffs(out)
    }

    /// `g_i * x`, used for ideal closures.
    pub fn left_translate(&self, i: usize) -> Self {
        let mut out = vec![self.spec.zero(); self.coeffs.len()];
        for (j, a) in self.coeffs.iter().enumerate() {
            out[self.group.mul(i, j)] = a.clone();
        }
        self.with_coeffs(out)
    }

    /// `x * g_i`.
    pub fn right_translate(&self, i: usize) -> Self {
        let mut out = vec![self.spec.zero(); self.coeffs.len()];
        for (j, a) in self.coeffs.iter().enumerate() {
            out[self.group.mul(j, i)] = a.clone();
        }
        self.with_coeffs(out)
    }

    /// The trace functional `tau(x) = n * a_1`.
    pub fn tau(&self) -> Scalar {
        &self.spec.from_i64(self.group.order() as i64) * &self.coeffs[0]
    }

    /// Sum of the coefficients.
    pub fn augmentation(&self) -> Scalar {
        self.coeffs.iter().fold(self.spec.zero(), |acc, c| &acc + c)
    }

    /// Comma-separated coefficients, the inverse of [`Self::parse_literal`].
    pub fn literal(&self) -> String {
        self.coeffs
            .iter()
            .map(Scalar::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Renders `a1·1 + a2·g2 + ...` with 1-based indices, omitting zero terms.
impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let basis = if i == 0 {
                "1".to_string()
            } else {
                format!("g{}", i + 1)
            };
            if c.is_negative() || c.to_string().contains('/') {
                write!(f, "({c})·{basis}")?;
            } else {
                write!(f, "{c}·{basis}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub(crate) fn random_scalar<R: Rng + ?Sized>(spec: FieldSpec, rng: &mut R) -> Scalar {
    match spec.modulus() {
        Some(p) => spec.residue(rng.gen_range(0..p)),
        None => {
            let num = spec.from_i64(rng.gen_range(-5..=5));
            let den = spec.from_i64(rng.gen_range(1..=3));
            &num * &den.inv().expect("nonzero denominator")
        }
    }
}
