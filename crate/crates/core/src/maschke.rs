//! Semisimplicity verdicts for `k[G]` with recomputable certificates.
//!
//! Three independent ways of getting at `rad(k[G])`:
//!
//! - [`radical_nonmodular`]: kernel of the trace-form Gram matrix
//!   `(tau(g_i g_j))`. When `char k` does not divide `n` the Gram matrix is
//!   `n` times the inversion permutation matrix, so the kernel is zero.
//! - [`modular_witness`]: the two-sided ideal generated by `sigma = sum_g g`,
//!   a square-zero central element whenever `char k` divides `n`. This is a
//!   lower bound for the radical.
//! - [`radical_oracle`]: brute force over the whole algebra using
//!   `alpha in rad <=> 1 - x alpha is a unit for every x`, for prime fields
//!   with at most `2^16` algebra elements.
//!
//! [`verdict`] runs whichever apply and fails hard if they disagree.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circulant::embed;
use crate::error::{Error, Result};
use crate::exactla::{span_basis, ExactMatrix, Polynomial};
use crate::field::{FieldSpec, Scalar};
use crate::group::FiniteGroup;
use crate::groupring::GroupRingElement;

/// Largest algebra size `|k|^n` the oracle will enumerate.
pub const ORACLE_LIMIT: u64 = 1 << 16;

/// Unit-perturbation samples per element in [`lemma_nilpotency_check`].
pub const DEFAULT_UNIT_SAMPLES: usize = 100;

pub const DEFAULT_SEED: u64 = 0x6d61_7363_686b_6531;

/// The Gram matrix `(tau(g_i g_j))_{i,j}` of the trace form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    group: Arc<FiniteGroup>,
    matrix: ExactMatrix,
}

impl GramMatrix {
    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// `sign(i -> g_i^-1) * n^n` as an integer; the Gram determinant over `Q`.
    pub fn expected_determinant(&self) -> BigInt {
        expected_gram_determinant(&self.group)
    }
}

fn n_pow_n(n: usize) -> BigInt {
    BigInt::from(n).pow(n as u32)
}

fn expected_gram_determinant(group: &FiniteGroup) -> BigInt {
    n_pow_n(group.order()) * group.inversion_sign()
}

pub fn gram_matrix(group: &Arc<FiniteGroup>, spec: FieldSpec) -> GramMatrix {
    let n = group.order();
    let entries = (0..n)
        .flat_map(|i| {
            let gi = GroupRingElement::basis(group, spec, i);
            (0..n).map(move |j| gi.right_translate(j).tau())
        })
        .collect();
    GramMatrix {
        group: Arc::clone(group),
        matrix: ExactMatrix::new(spec, n, n, entries).expect("n x n entries"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadicalMethod {
    GramKernel,
    Oracle,
    WitnessIdealClosure,
}

/// A basis (reduced row-echelon, pivots ascending) of a subspace of `k[G]`
/// computed as, or inside, the radical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalBasis {
    pub method: RadicalMethod,
    group: Arc<FiniteGroup>,
    spec: FieldSpec,
    elements: Vec<GroupRingElement>,
}

impl RadicalBasis {
    fn from_vectors(
        method: RadicalMethod,
        group: &Arc<FiniteGroup>,
        spec: FieldSpec,
        vectors: &[Vec<Scalar>],
    ) -> Self {
        let elements = span_basis(vectors, group.order())
            .into_iter()
            .map(|v| GroupRingElement::new(group, spec, v).expect("length n over spec"))
            .collect();
        RadicalBasis {
            method,
            group: Arc::clone(group),
            spec,
            elements,
        }
    }

    pub fn elements(&self) -> &[GroupRingElement] {
        &self.elements
    }

    pub fn dimension(&self) -> usize {
        self.elements.len()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    fn vectors(&self) -> Vec<Vec<Scalar>> {
        self.elements.iter().map(|e| e.coeffs().to_vec()).collect()
    }

    pub fn contains(&self, x: &GroupRingElement) -> bool {
        let mut v = self.vectors();
        v.push(x.coeffs().to_vec());
        span_basis(&v, self.group.order()).len() == self.dimension()
    }

    pub fn contains_span(&self, other: &RadicalBasis) -> bool {
        other.elements.iter().all(|e| self.contains(e))
    }

    /// Same subspace; both sides are already in RREF.
    pub fn same_span(&self, other: &RadicalBasis) -> bool {
        self.vectors() == other.vectors()
    }

    /// Smallest `k` with `I^k = 0` for the span `I`, or `None` if the powers
    /// stabilise at a nonzero subspace. `Some(1)` for the zero ideal.
    pub fn ideal_nilpotency_index(&self) -> Result<Option<usize>> {
        let n = self.group.order();
        let mut power = self.vectors();
        for k in 1..=n + 1 {
            if power.is_empty() {
                return Ok(Some(k));
            }
            let mut products = Vec::with_capacity(power.len() * self.elements.len());
            for a in &power {
                let a = GroupRingElement::new(&self.group, self.spec, a.clone())?;
                for b in &self.elements {
                    products.push(a.mul(b)?.into_coeffs());
                }
            }
            let next = span_basis(&products, n);
            if next.len() == power.len() {
                return Ok(None);
            }
            power = next;
        }
        Ok(None)
    }

    /// Closed under left and right multiplication by every group element.
    pub fn is_two_sided_ideal(&self) -> bool {
        let n = self.group.order();
        self.elements.iter().all(|b| {
            (0..n).all(|i| {
                self.contains(&b.left_translate(i)) && self.contains(&b.right_translate(i))
            })
        })
    }
}

/// Gram-kernel radical; only valid when `char k` does not divide `|G|`.
pub fn radical_nonmodular(group: &Arc<FiniteGroup>, spec: FieldSpec) -> Result<RadicalBasis> {
    if spec.char_divides(group.order()) {
        return Err(Error::Precondition(format!(
            "char {} divides |{}| = {}; the Gram kernel does not compute the radical here",
            spec.characteristic(),
            group.label(),
            group.order()
        )));
    }
    let kernel = gram_matrix(group, spec).matrix.kernel_basis();
    Ok(RadicalBasis::from_vectors(
        RadicalMethod::GramKernel,
        group,
        spec,
        &kernel,
    ))
}

/// Two-sided ideal generated by `sigma`, verified square-zero, central and
/// nilpotent. Only valid when `char k` divides `|G|`.
pub fn modular_witness(group: &Arc<FiniteGroup>, spec: FieldSpec) -> Result<RadicalBasis> {
    let n = group.order();
    if !spec.char_divides(n) {
        return Err(Error::Precondition(format!(
            "char {} does not divide |{}| = {n}; there is no modular witness",
            spec.characteristic(),
            group.label()
        )));
    }
    let sigma = GroupRingElement::sigma(group, spec);
    if sigma.is_zero() {
        return Err(Error::CertificateViolation("sigma is zero".into()));
    }
    if !sigma.mul(&sigma)?.is_zero() {
        return Err(Error::CertificateViolation(format!(
            "sigma^2 != 0 in {spec}[{}]",
            group.label()
        )));
    }
    for i in 0..n {
        if sigma.left_translate(i) != sigma.right_translate(i) {
            return Err(Error::CertificateViolation(format!(
                "sigma does not commute with g{}",
                i + 1
            )));
        }
    }

    let mut basis = span_basis(&[sigma.coeffs().to_vec()], n);
    loop {
        let mut grown = basis.clone();
        for v in &basis {
            let b = GroupRingElement::new(group, spec, v.clone())?;
            for i in 0..n {
                grown.push(b.left_translate(i).into_coeffs());
                grown.push(b.right_translate(i).into_coeffs());
            }
        }
        let next = span_basis(&grown, n);
        if next.len() == basis.len() {
            break;
        }
        basis = next;
    }

    let rad = RadicalBasis::from_vectors(RadicalMethod::WitnessIdealClosure, group, spec, &basis);
    for e in rad.elements() {
        if !embed(e).is_nilpotent()?.nilpotent {
            return Err(Error::CertificateViolation(format!(
                "witness element {e} is not nilpotent"
            )));
        }
    }
    Ok(rad)
}

/// Whether [`radical_oracle`] can run: a prime field with `p^n <= 2^16`.
pub fn oracle_runnable(group: &FiniteGroup, spec: FieldSpec) -> bool {
    spec.modulus()
        .and_then(|p| (p as u64).checked_pow(group.order() as u32))
        .is_some_and(|size| size <= ORACLE_LIMIT)
}

/// `rad(k[G]) = { alpha : 1 - x alpha is a unit for all x }`, by exhaustion.
///
/// `{x alpha : x in k[G]}` is the left ideal spanned by the `g_i alpha`, so
/// each candidate is tested by enumerating that ideal. Units are tabulated
/// once for the whole algebra from the rank of the embedded matrix. The
/// arithmetic here is plain `u32` modular arithmetic, separate from the
/// [`Scalar`] code paths it is used to check.
pub fn radical_oracle(group: &Arc<FiniteGroup>, spec: FieldSpec) -> Result<RadicalBasis> {
    let p = spec.modulus().ok_or_else(|| {
        Error::Unsupported("the radical oracle needs a finite field; Q is infinite".into())
    })?;
    if !oracle_runnable(group, spec) {
        return Err(Error::Capacity(format!(
            "{spec}[{}] has {p}^{} elements, more than the oracle limit {ORACLE_LIMIT}",
            group.label(),
            group.order()
        )));
    }
    let alg = ModpAlgebra::new(group, p);
    let units: Vec<bool> = (0..alg.size).map(|c| alg.is_unit(&alg.decode(c))).collect();

    let one = {
        let mut v = vec![0u32; alg.n];
        v[0] = 1 % p;
        v
    };
    let mut verdict_by_ideal: HashMap<Vec<Vec<u32>>, bool> = HashMap::new();
    let mut members: Vec<Vec<u32>> = Vec::new();
    for code in 0..alg.size {
        let alpha = alg.decode(code);
        let mut gens: Vec<Vec<u32>> = (0..alg.n).map(|i| alg.left_translate(i, &alpha)).collect();
        // the multiples c g_i alpha are ideal elements too; they reject most candidates
        let quick_reject = gens
            .iter()
            .any(|y| (1..p).any(|c| !units[alg.encode(&alg.sub(&one, &alg.scale(c, y)))]));
        if quick_reject {
            continue;
        }
        alg.rref(&mut gens);
        let passes = *verdict_by_ideal.entry(gens.clone()).or_insert_with(|| {
            alg.span_iter(&gens)
                .all(|y| units[alg.encode(&alg.sub(&one, &y))])
        });
        if passes {
            members.push(alpha);
        }
    }

    let mut basis = members.clone();
    let dim = alg.rref(&mut basis);
    if (p as u64).pow(dim as u32) != members.len() as u64 {
        return Err(Error::MethodDisagreement(format!(
            "oracle found {} quasi-regular elements in {spec}[{}], not a subspace of dimension {dim}",
            members.len(),
            group.label()
        )));
    }
    let vectors: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|v| v.iter().map(|&c| spec.residue(c)).collect())
        .collect();
    Ok(RadicalBasis::from_vectors(
        RadicalMethod::Oracle,
        group,
        spec,
        &vectors,
    ))
}

/// `F_p[G]` with coefficient vectors of `u32` residues, elements numbered by
/// their base-`p` digits.
struct ModpAlgebra<'a> {
    group: &'a FiniteGroup,
    p: u32,
    n: usize,
    size: usize,
    inverses: Vec<u32>,
}

impl<'a> ModpAlgebra<'a> {
    fn new(group: &'a FiniteGroup, p: u32) -> Self {
        let n = group.order();
        let inverses = (0..p)
            .map(|a| {
                (1..p)
                    .find(|&b| (a as u64 * b as u64) % p as u64 == 1)
                    .unwrap_or(0)
            })
            .collect();
        ModpAlgebra {
            group,
            p,
            n,
            size: (p as usize).pow(n as u32),
            inverses,
        }
    }

    fn decode(&self, mut code: usize) -> Vec<u32> {
        (0..self.n)
            .map(|_| {
                let d = (code % self.p as usize) as u32;
                code /= self.p as usize;
                d
            })
            .collect()
    }

    fn encode(&self, v: &[u32]) -> usize {
        v.iter()
            .rev()
            .fold(0, |acc, &d| acc * self.p as usize + d as usize)
    }

    fn sub(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect()
    }

    fn scale(&self, c: u32, v: &[u32]) -> Vec<u32> {
        v.iter()
            .map(|&x| ((c as u64 * x as u64) % self.p as u64) as u32)
            .collect()
    }

    fn left_translate(&self, i: usize, v: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.n];
        for (j, &c) in v.iter().enumerate() {
            out[self.group.mul(i, j)] = c;
        }
        out
    }

    /// Full row reduction; drops zero rows and returns the rank.
    fn rref(&self, rows: &mut Vec<Vec<u32>>) -> usize {
        let p = self.p as u64;
        let mut r = 0;
        for c in 0..self.n {
            let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(piv, r);
            let inv = self.inverses[rows[r][c] as usize] as u64;
            for x in rows[r].iter_mut() {
                *x = ((*x as u64 * inv) % p) as u32;
            }
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                let f = row[c] as u64;
                if i != r && f != 0 {
                    for (x, &y) in row.iter_mut().zip(&pivot) {
                        *x = ((*x as u64 + (p - f) * y as u64) % p) as u32;
                    }
                }
            }
            r += 1;
        }
        rows.truncate(r);
        r
    }

    /// Unit iff the embedded matrix `(x[g_i^-1 g_j])` has full rank.
    fn is_unit(&self, x: &[u32]) -> bool {
        let mut m: Vec<Vec<u32>> = (0..self.n)
            .map(|i| {
                let iinv = self.group.inverse_index(i);
                (0..self.n).map(|j| x[self.group.mul(iinv, j)]).collect()
            })
            .collect();
        self.rref(&mut m) == self.n
    }

    /// Every vector in the span of `basis`.
    fn span_iter<'b>(&'b self, basis: &'b [Vec<u32>]) -> impl Iterator<Item = Vec<u32>> + 'b {
        let count = (self.p as usize).pow(basis.len() as u32);
        (0..count).map(move |mut code| {
            let mut v = vec![0u32; self.n];
            for b in basis {
                let c = (code % self.p as usize) as u64;
                code /= self.p as usize;
                if c != 0 {
                    for (x, &y) in v.iter_mut().zip(b) {
                        *x = ((*x as u64 + c * y as u64) % self.p as u64) as u32;
                    }
                }
            }
            v
        })
    }
}

/// The best radical available: exact via the Gram kernel or the oracle,
/// otherwise the witness lower bound.
pub fn radical(group: &Arc<FiniteGroup>, spec: FieldSpec) -> Result<RadicalBasis> {
    if !spec.char_divides(group.order()) {
        radical_nonmodular(group, spec)
    } else if oracle_runnable(group, spec) {
        radical_oracle(group, spec)
    } else {
        modular_witness(group, spec)
    }
}

/// Result of [`lemma_nilpotency_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    /// Minimal polynomial of `embed(alpha)`, always `x^m`.
    pub minimal_polynomial: Polynomial,
    pub m: usize,
    pub unit_checks: usize,
}

pub(crate) fn is_unit(x: &GroupRingElement) -> Result<bool> {
    embed(x).is_invertible()
}

fn random_unit<R: Rng + ?Sized>(
    group: &Arc<FiniteGroup>,
    spec: FieldSpec,
    rng: &mut R,
) -> Result<GroupRingElement> {
    for _ in 0..32 {
        let u = GroupRingElement::random(group, spec, rng);
        if is_unit(&u)? {
            return Ok(u);
        }
    }
    // c * g is always a unit
    let c = loop {
        let c = crate::groupring::random_scalar(spec, rng);
        if !c.is_zero() {
            break c;
        }
    };
    GroupRingElement::basis(group, spec, rng.gen_range(0..group.order())).scalar_mul(&c)
}

/// Checks that `alpha` (an element of the span of `rad`) behaves like a
/// radical element: the minimal polynomial of `embed(alpha)` splits as
/// `x^m * f` with `f = 1`, and `u + alpha b` is a unit for `samples` random
/// units `u` and elements `b`.
pub fn lemma_nilpotency_check<R: Rng + ?Sized>(
    alpha: &GroupRingElement,
    rad: &RadicalBasis,
    rng: &mut R,
    samples: usize,
) -> Result<LemmaReport> {
    if alpha.spec() != rad.spec() {
        return Err(Error::FieldMismatch(rad.spec(), alpha.spec()));
    }
    if !rad.contains(alpha) {
        return Err(Error::Precondition(format!(
            "{alpha} is not in the span of the given radical basis"
        )));
    }
    let n = alpha.group().order();
    let mu = embed(alpha).minimal_polynomial()?;
    let split = mu.split_trailing_power()?;
    if !split.f.is_one() || split.m == 0 || split.m > n {
        return Err(Error::CertificateViolation(format!(
            "minimal polynomial of embed({alpha}) is {mu}, not x^m with 0 < m <= {n}"
        )));
    }
    let (group, spec) = (alpha.group(), alpha.spec());
    for _ in 0..samples {
        let u = random_unit(group, spec, rng)?;
        let b = GroupRingElement::random(group, spec, rng);
        let perturbed = u.add(&alpha.mul(&b)?)?;
        if !is_unit(&perturbed)? {
            return Err(Error::CertificateViolation(format!(
                "u + alpha b is not a unit for alpha = {alpha}, u = {u}, b = {b}"
            )));
        }
    }
    Ok(LemmaReport {
        minimal_polynomial: mu,
        m: split.m,
        unit_checks: samples,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Semisimple,
    NonSemisimple,
}

/// Exact dimension, or a lower bound when only the witness is available.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RadicalDimension {
    Exact(usize),
    AtLeast { at_least: usize },
}

/// Method-specific certificate. Every field is a raw recomputable value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Certificate {
    GramKernel {
        /// Determinant of the Gram matrix, in the field.
        gram_determinant: String,
        n_pow_n: String,
        /// Sign of the inversion permutation `i -> g_i^-1`.
        inversion_sign: i32,
        kernel_dimension: usize,
        oracle_dimension: Option<usize>,
    },
    WitnessIdealClosure {
        sigma: Vec<String>,
        sigma_squared: Vec<String>,
        witness_basis: Vec<Vec<String>>,
        nilpotency_indices: Vec<usize>,
        /// `m` with minimal polynomial `x^m`, per witness element.
        minimal_polynomial_exponents: Vec<usize>,
        unit_checks: usize,
        seed: u64,
        oracle_basis: Option<Vec<Vec<String>>>,
    },
}

/// The verdict for one `(G, k)`, in the JSON report schema.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaschkeVerdict {
    pub group: String,
    pub field: FieldSpec,
    pub order: usize,
    pub characteristic: u32,
    pub outcome: Outcome,
    pub certificate: Certificate,
    pub radical_dimension: RadicalDimension,
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_string).collect()
}

fn parse_element(
    group: &Arc<FiniteGroup>,
    spec: FieldSpec,
    v: &[String],
) -> Result<GroupRingElement> {
    let coeffs = v
        .iter()
        .map(|s| spec.parse_scalar(s))
        .collect::<Result<Vec<_>>>()?;
    GroupRingElement::new(group, spec, coeffs)
}

/// Decides whether `spec[group]` is semisimple and builds the certificate.
pub fn verdict(group: &Arc<FiniteGroup>, spec: FieldSpec, seed: u64) -> Result<MaschkeVerdict> {
    let n = group.order();
    let oracle = if oracle_runnable(group, spec) {
        Some(radical_oracle(group, spec)?)
    } else {
        None
    };

    let (outcome, certificate, radical_dimension) = if !spec.char_divides(n) {
        let gram = gram_matrix(group, spec);
        let det = gram.matrix.determinant()?;
        let expected = spec.from_bigint(&gram.expected_determinant());
        if det != expected || det.is_zero() {
            return Err(Error::CertificateViolation(format!(
                "Gram determinant of {spec}[{}] is {det}, expected {expected} (nonzero)",
                group.label()
            )));
        }
        let kernel = radical_nonmodular(group, spec)?;
        if kernel.dimension() != 0 {
            return Err(Error::MethodDisagreement(format!(
                "Gram kernel of {spec}[{}] has dimension {} despite a nonzero determinant",
                group.label(),
                kernel.dimension()
            )));
        }
        if let Some(o) = &oracle {
            if !o.same_span(&kernel) {
                return Err(Error::MethodDisagreement(format!(
                    "oracle radical of {spec}[{}] has dimension {}, Gram kernel is zero",
                    group.label(),
                    o.dimension()
                )));
            }
        }
        (
            Outcome::Semisimple,
            Certificate::GramKernel {
                gram_determinant: det.to_string(),
                n_pow_n: n_pow_n(n).to_string(),
                inversion_sign: group.inversion_sign(),
                kernel_dimension: kernel.dimension(),
                oracle_dimension: oracle.as_ref().map(RadicalBasis::dimension),
            },
            RadicalDimension::Exact(0),
        )
    } else {
        let witness = modular_witness(group, spec)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut indices = Vec::new();
        let mut exponents = Vec::new();
        for e in witness.elements() {
            let nil = embed(e).is_nilpotent()?;
            indices.push(nil.index.expect("witness elements are verified nilpotent"));
            let report = lemma_nilpotency_check(e, &witness, &mut rng, DEFAULT_UNIT_SAMPLES)?;
            exponents.push(report.m);
        }
        if let Some(o) = &oracle {
            if !o.contains_span(&witness) {
                return Err(Error::MethodDisagreement(format!(
                    "oracle radical of {spec}[{}] does not contain the sigma ideal",
                    group.label()
                )));
            }
        }
        let sigma = GroupRingElement::sigma(group, spec);
        let dimension = match &oracle {
            Some(o) => RadicalDimension::Exact(o.dimension()),
            None => RadicalDimension::AtLeast {
                at_least: witness.dimension(),
            },
        };
        (
            Outcome::NonSemisimple,
            Certificate::WitnessIdealClosure {
                sigma_squared: strings(sigma.mul(&sigma)?.coeffs()),
                sigma: strings(sigma.coeffs()),
                witness_basis: witness
                    .elements()
                    .iter()
                    .map(|e| strings(e.coeffs()))
                    .collect(),
                nilpotency_indices: indices,
                minimal_polynomial_exponents: exponents,
                unit_checks: DEFAULT_UNIT_SAMPLES,
                seed,
                oracle_basis: oracle
                    .as_ref()
                    .map(|o| o.elements().iter().map(|e| strings(e.coeffs())).collect()),
            },
            dimension,
        )
    };

    Ok(MaschkeVerdict {
        group: group.label().to_string(),
        field: spec,
        order: n,
        characteristic: spec.characteristic(),
        outcome,
        certificate,
        radical_dimension,
    })
}

impl MaschkeVerdict {
    pub fn is_semisimple(&self) -> bool {
        self.outcome == Outcome::Semisimple
    }

    /// Re-checks the certificate from its own fields against `group`,
    /// without calling back into the verdict pipeline.
    pub fn verify_certificate(&self, group: &Arc<FiniteGroup>) -> Result<()> {
        let fail = |msg: String| Err(Error::CertificateViolation(msg));
        let spec = self.field;
        let n = group.order();
        if self.order != n || self.characteristic != spec.characteristic() {
            return fail(format!(
                "header says order {} / char {}, group has order {n}, field char {}",
                self.order,
                self.characteristic,
                spec.characteristic()
            ));
        }
        if (self.outcome == Outcome::NonSemisimple) != spec.char_divides(n) {
            return fail(format!(
                "outcome {:?} contradicts char {} and order {n}",
                self.outcome,
                spec.characteristic()
            ));
        }
        match &self.certificate {
            Certificate::GramKernel {
                gram_determinant,
                n_pow_n: npn,
                inversion_sign,
                kernel_dimension,
                ..
            } => {
                let det = spec.parse_scalar(gram_determinant)?;
                let npn: BigInt = npn
                    .parse()
                    .map_err(|_| Error::parse("n^n", npn, "not an integer"))?;
                if npn != n_pow_n(n) || *inversion_sign != group.inversion_sign() {
                    return fail("n^n or inversion sign does not match the group".into());
                }
                if det != spec.from_bigint(&(npn * *inversion_sign)) || det.is_zero() {
                    return fail(format!("determinant {det} is not ±n^n or is zero"));
                }
                if gram_matrix(group, spec).matrix.determinant()? != det {
                    return fail("recomputed Gram determinant differs".into());
                }
                if *kernel_dimension != 0 || self.radical_dimension != RadicalDimension::Exact(0) {
                    return fail("semisimple verdict with a nonzero radical".into());
                }
            }
            Certificate::WitnessIdealClosure {
                sigma,
                sigma_squared,
                witness_basis,
                nilpotency_indices,
                minimal_polynomial_exponents,
                oracle_basis,
                ..
            } => {
                let s = parse_element(group, spec, sigma)?;
                if s != GroupRingElement::sigma(group, spec) {
                    return fail("sigma is not the sum of all group elements".into());
                }
                let s2 = parse_element(group, spec, sigma_squared)?;
                if s2 != s.mul(&s)? || !s2.is_zero() {
                    return fail("sigma^2 is not zero".into());
                }
                if witness_basis.len() != nilpotency_indices.len()
                    || witness_basis.len() != minimal_polynomial_exponents.len()
                    || witness_basis.is_empty()
                {
                    return fail("witness basis and index lists disagree in length".into());
                }
                let vectors: Vec<Vec<Scalar>> = witness_basis
                    .iter()
                    .map(|v| parse_element(group, spec, v).map(GroupRingElement::into_coeffs))
                    .collect::<Result<_>>()?;
                let witness = RadicalBasis::from_vectors(
                    RadicalMethod::WitnessIdealClosure,
                    group,
                    spec,
                    &vectors,
                );
                if witness.dimension() != vectors.len()
                    || !witness.contains(&s)
                    || !witness.is_two_sided_ideal()
                {
                    return fail(
                        "witness basis is not an independent ideal containing sigma".into(),
                    );
                }
                for ((e, &idx), &m) in witness
                    .elements()
                    .iter()
                    .zip(nilpotency_indices)
                    .zip(minimal_polynomial_exponents)
                {
                    let b = embed(e);
                    let mu = b.minimal_polynomial()?;
                    if b.is_nilpotent()?.index != Some(idx)
                        || mu != Polynomial::monomial(spec, m)
                        || m != idx
                    {
                        return fail(format!("nilpotency data for {e} does not recompute"));
                    }
                }
                match (oracle_basis, self.radical_dimension) {
                    (Some(ob), RadicalDimension::Exact(d)) => {
                        let ov: Vec<Vec<Scalar>> = ob
                            .iter()
                            .map(|v| {
                                parse_element(group, spec, v).map(GroupRingElement::into_coeffs)
                            })
                            .collect::<Result<_>>()?;
                        let oracle =
                            RadicalBasis::from_vectors(RadicalMethod::Oracle, group, spec, &ov);
                        if oracle.dimension() != d || !oracle.contains_span(&witness) {
                            return fail("oracle basis does not match the radical dimension or miss the witness".into());
                        }
                    }
                    (None, RadicalDimension::AtLeast { at_least })
                        if at_least == witness.dimension() => {}
                    _ => {
                        return fail(
                            "radical dimension does not match the available evidence".into(),
                        )
                    }
                }
            }
        }
        Ok(())
    }
}
