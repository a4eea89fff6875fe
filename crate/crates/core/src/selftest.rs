//! The invariant suite behind `grouplet selftest`.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::circulant::{embed, extract, is_g_circulant, regular_rep};
use crate::field::FieldSpec;
use crate::group::{catalog, FiniteGroup};
use crate::groupring::GroupRingElement;
use crate::maschke::{
    gram_matrix, lemma_nilpotency_check, modular_witness, oracle_runnable, radical_nonmodular,
    radical_oracle, verdict, MaschkeVerdict,
};

pub const DEFAULT_FIELDS: &[&str] = &["Q", "F2", "F3", "F5", "F7"];

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub max_order: usize,
    pub checks: Vec<CheckOutcome>,
}

impl SelftestReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed()).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }
}

type Cell = (Arc<FiniteGroup>, FieldSpec);

fn cells(max_order: usize) -> Vec<Cell> {
    let fields: Vec<FieldSpec> = DEFAULT_FIELDS
        .iter()
        .map(|f| f.parse().expect("valid field"))
        .collect();
    catalog(max_order)
        .into_iter()
        .map(Arc::new)
        .flat_map(|g| fields.iter().map(move |&k| (Arc::clone(&g), k)))
        .collect()
}

fn label((g, k): &Cell) -> String {
    format!("{k}[{}]", g.label())
}

/// Runs `f` on every item in parallel; failures keep the input order.
fn check<T: Sync>(
    name: &'static str,
    items: &[T],
    f: impl Fn(&T) -> std::result::Result<(), String> + Sync,
) -> CheckOutcome {
    let failures = items.par_iter().filter_map(|x| f(x).err()).collect();
    CheckOutcome {
        name,
        cases: items.len(),
        failures,
    }
}

fn err<E: std::fmt::Display>(ctx: String) -> impl Fn(E) -> String {
    move |e| format!("{ctx}: {e}")
}

pub fn run(max_order: usize, seed: u64, samples: usize) -> SelftestReport {
    let groups: Vec<Arc<FiniteGroup>> = catalog(max_order).into_iter().map(Arc::new).collect();
    let cells = cells(max_order);
    let modular: Vec<Cell> = cells
        .iter()
        .filter(|(g, k)| k.char_divides(g.order()))
        .cloned()
        .collect();
    let nonmodular: Vec<Cell> = cells
        .iter()
        .filter(|(g, k)| !k.char_divides(g.order()))
        .cloned()
        .collect();

    let mut checks = vec![
        check("regular representation axioms", &groups, |g| {
            let n = g.order();
            let mut covered = vec![false; n * n];
            for a in 0..n {
                let ra = regular_rep(g, a);
                if !ra.is_permutation() {
                    return Err(format!("{}: A^g{} is not a permutation", g.label(), a + 1));
                }
                for (i, &j) in ra.perm().iter().enumerate() {
                    if std::mem::replace(&mut covered[i * n + j], true) {
                        return Err(format!(
                            "{}: supports overlap at ({}, {})",
                            g.label(),
                            i + 1,
                            j + 1
                        ));
                    }
                }
                for b in 0..n {
                    if ra.compose(&regular_rep(g, b)) != regular_rep(g, g.mul(a, b)).perm() {
                        return Err(format!(
                            "{}: A^g{} A^g{} != A^(g{} g{})",
                            g.label(),
                            a + 1,
                            b + 1,
                            a + 1,
                            b + 1
                        ));
                    }
                }
            }
            Ok(())
        }),
        check("Gram determinant is sign * n^n over Q", &groups, |g| {
            let q = FieldSpec::rationals();
            let gram = gram_matrix(g, q);
            let det = gram
                .matrix()
                .determinant()
                .map_err(err(g.label().to_string()))?;
            let expected = q.from_bigint(&gram.expected_determinant());
            (det == expected)
                .then_some(())
                .ok_or_else(|| format!("{}: det {det} != {expected}", g.label()))
        }),
        check("non-modular radicals vanish", &nonmodular, |c| {
            let (g, k) = c;
            let kernel = radical_nonmodular(g, *k).map_err(err(label(c)))?;
            if kernel.dimension() != 0 {
                return Err(format!(
                    "{}: Gram kernel dimension {}",
                    label(c),
                    kernel.dimension()
                ));
            }
            if oracle_runnable(g, *k) {
                let o = radical_oracle(g, *k).map_err(err(label(c)))?;
                if !o.same_span(&kernel) {
                    return Err(format!("{}: oracle dimension {}", label(c), o.dimension()));
                }
            }
            Ok(())
        }),
        check(
            "modular witnesses pass the nilpotency lemma",
            &modular,
            |c| {
                let (g, k) = c;
                let w = modular_witness(g, *k).map_err(err(label(c)))?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for e in w.elements() {
                    lemma_nilpotency_check(e, &w, &mut rng, samples.min(100))
                        .map_err(err(label(c)))?;
                }
                if oracle_runnable(g, *k) {
                    let o = radical_oracle(g, *k).map_err(err(label(c)))?;
                    if !o.contains_span(&w) {
                        return Err(format!("{}: oracle misses the witness ideal", label(c)));
                    }
                    if o.ideal_nilpotency_index().map_err(err(label(c)))?.is_none() {
                        return Err(format!(
                            "{}: oracle radical is not a nilpotent ideal",
                            label(c)
                        ));
                    }
                }
                Ok(())
            },
        ),
    ];

    let small: Vec<Cell> = cells
        .iter()
        .filter(|(g, _)| g.order() <= 8)
        .cloned()
        .collect();
    checks.push(check(
        "embedding is a ring homomorphism preserving trace",
        &small,
        |c| {
            let (g, k) = c;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = k.from_i64(g.order() as i64);
            for _ in 0..samples {
                let x = GroupRingElement::random(g, *k, &mut rng);
                let y = GroupRingElement::random(g, *k, &mut rng);
                let (ex, ey) = (embed(&x), embed(&y));
                let ok = embed(&x.mul(&y).map_err(err(label(c)))?)
                    == ex.mul(&ey).map_err(err(label(c)))?
                    && embed(&x.add(&y).map_err(err(label(c)))?)
                        == ex.add(&ey).map_err(err(label(c)))?
                    && ex.trace().map_err(err(label(c)))? == x.tau()
                    && x.tau() == &n * x.identity_coeff();
                if !ok {
                    return Err(format!(
                        "{}: homomorphism fails at x = {x}, y = {y}",
                        label(c)
                    ));
                }
            }
            Ok(())
        },
    ));
    checks.push(check(
        "extract inverts embed and rejects perturbations",
        &small,
        |c| {
            let (g, k) = c;
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
            for _ in 0..samples {
                let x = GroupRingElement::random(g, *k, &mut rng);
                let m = embed(&x);
                if extract(&m, g).map_err(err(label(c)))? != x
                    || !is_g_circulant(&m, g).map_err(err(label(c)))?
                {
                    return Err(format!("{}: round trip fails for {x}", label(c)));
                }
                if g.order() > 1 {
                    let mut bad = m.clone();
                    let v = &bad[(1, 0)] + &k.one();
                    bad[(1, 0)] = v;
                    if extract(&bad, g).is_ok() {
                        return Err(format!("{}: perturbation of embed({x}) accepted", label(c)));
                    }
                }
            }
            Ok(())
        },
    ));
    let small_nonmodular: Vec<Cell> = small
        .iter()
        .filter(|(g, k)| !k.char_divides(g.order()))
        .cloned()
        .collect();
    checks.push(check(
        "nonzero identity coefficient blocks nilpotency",
        &small_nonmodular,
        |c| {
            let (g, k) = c;
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
            for _ in 0..samples {
                let x = GroupRingElement::random(g, *k, &mut rng);
                if x.identity_coeff().is_zero() {
                    continue;
                }
                let m = embed(&x);
                let tr = m.trace().map_err(err(label(c)))?;
                if tr.is_zero() || m.is_nilpotent().map_err(err(label(c)))?.nilpotent {
                    return Err(format!("{}: {x} has trace {tr} or is nilpotent", label(c)));
                }
            }
            Ok(())
        },
    ));
    checks.push(check(
        "verdicts match the characteristic and re-verify",
        &cells,
        |c| {
            let (g, k) = c;
            let v = verdict(g, *k, seed).map_err(err(label(c)))?;
            if v.is_semisimple() == k.char_divides(g.order()) {
                return Err(format!("{}: outcome {:?}", label(c), v.outcome));
            }
            let text = serde_json::to_string(&v).map_err(err(label(c)))?;
            let back: MaschkeVerdict = serde_json::from_str(&text).map_err(err(label(c)))?;
            if back != v {
                return Err(format!("{}: JSON round trip changed the verdict", label(c)));
            }
            back.verify_certificate(g).map_err(err(label(c)))
        },
    ));

    SelftestReport {
        seed,
        max_order,
        checks,
    }
}
