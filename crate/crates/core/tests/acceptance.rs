//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use grouplet::circulant::{embed, extract, is_g_circulant, regular_rep};
use grouplet::group::{catalog, parse_group, FiniteGroup};
use grouplet::maschke::{
    gram_matrix, lemma_nilpotency_check, modular_witness, radical_nonmodular, radical_oracle,
    ORACLE_LIMIT,
};
use grouplet::{Error, ExactMatrix, FieldSpec, GroupRingElement, Polynomial, Scalar};

const FIELDS: &[&str] = &["Q", "F2", "F3", "F5", "F7"];
const SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn groups(max_order: usize) -> Vec<Arc<FiniteGroup>> {
    catalog(max_order).into_iter().map(Arc::new).collect()
}

fn fields() -> Vec<FieldSpec> {
    FIELDS.iter().map(|f| f.parse().unwrap()).collect()
}

/// Characteristic predicate computed from the field string alone.
fn divides(field: &str, n: usize) -> bool {
    field
        .strip_prefix('F')
        .map(|p| n.is_multiple_of(p.parse().unwrap()))
        .unwrap_or(false)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s(e: Error) -> String {
    e.to_string()
}

/// Catalog up to order 24 (S4 included) x {Q, F2, F3, F5, F7}.
fn dichotomy() -> Outcome {
    let start = Instant::now();
    let gs = groups(24);
    let fs = fields();
    let verdicts = grouplet::cli::sweep(&gs, &fs, SEED).map_err(e2s)?;
    let elapsed = start.elapsed();
    let mut mismatches = Vec::new();
    for (v, (g, k)) in verdicts
        .iter()
        .zip(gs.iter().flat_map(|g| fs.iter().map(move |k| (g, k))))
    {
        let field = k.to_string();
        if v.group != g.label() || v.field != *k {
            return Err(format!("sweep order broken at {}/{}", v.group, v.field));
        }
        if v.is_semisimple() == divides(&field, g.order()) {
            mismatches.push(format!("{field}[{}]", g.label()));
        }
        v.verify_certificate(g)
            .map_err(|e| format!("{field}[{}]: {e}", g.label()))?;
    }
    ensure(mismatches.is_empty(), || {
        format!("mismatches: {mismatches:?}")
    })?;
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} cells ({} groups incl. S4), 0 mismatches, {:.2}s",
        verdicts.len(),
        gs.len(),
        elapsed.as_secs_f64()
    ))
}

/// Sign of `i -> i^-1`, found by table search and cycle counting.
fn inversion_sign(g: &FiniteGroup) -> i32 {
    let n = g.order();
    let inv: Vec<usize> = (0..n)
        .map(|i| (0..n).find(|&j| g.mul(i, j) == 0).unwrap())
        .collect();
    let mut seen = vec![false; n];
    let mut sign = 1;
    for s in 0..n {
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = inv[i];
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

fn gram_certificate() -> Outcome {
    let q = FieldSpec::rationals();
    let gs = groups(usize::MAX);
    for g in &gs {
        let n = g.order();
        let gram = gram_matrix(g, q);
        for i in 0..n {
            for j in 0..n {
                let expected = if g.mul(i, j) == 0 { n as i64 } else { 0 };
                ensure(gram.matrix()[(i, j)] == q.from_i64(expected), || {
                    format!("{}: Gram entry ({}, {})", g.label(), i + 1, j + 1)
                })?;
            }
        }
        let det = gram.matrix().determinant().map_err(e2s)?;
        let expected = BigInt::from(n).pow(n as u32) * inversion_sign(g);
        ensure(det == q.from_bigint(&expected), || {
            format!("{}: det {det} != {expected}", g.label())
        })?;
    }
    Ok(format!("{} groups, det = sign * n^n exactly", gs.len()))
}

/// Quasi-regular elements by the definition, with dense determinants.
fn naive_radical(g: &Arc<FiniteGroup>, k: FieldSpec) -> Result<Vec<GroupRingElement>, Error> {
    let p = k.modulus().unwrap() as usize;
    let n = g.order();
    let all: Vec<GroupRingElement> = (0..p.pow(n as u32))
        .map(|mut code| {
            let v: Vec<i64> = (0..n)
                .map(|_| {
                    let d = code % p;
                    code /= p;
                    d as i64
                })
                .collect();
            GroupRingElement::from_i64(g, k, &v).unwrap()
        })
        .collect();
    let one = GroupRingElement::one(g, k);
    let mut members = Vec::new();
    for a in &all {
        let mut ok = true;
        for x in &all {
            if !embed(&one.sub(&x.mul(a)?)?).determinant()?.is_zero() {
                continue;
            }
            ok = false;
            break;
        }
        if ok {
            members.push(a.clone());
        }
    }
    Ok(members)
}

fn oracle_equivalence() -> Outcome {
    let mut cases = 0;
    let mut brute = 0;
    for p in [2u64, 3] {
        let k = FieldSpec::prime(p).unwrap();
        for g in groups(usize::MAX) {
            let n = g.order();
            if p.checked_pow(n as u32).is_none_or(|s| s > ORACLE_LIMIT) {
                continue;
            }
            cases += 1;
            let name = format!("{k}[{}]", g.label());
            let oracle = radical_oracle(&g, k).map_err(e2s)?;
            if !(n as u64).is_multiple_of(p) {
                let gram = radical_nonmodular(&g, k).map_err(e2s)?;
                ensure(oracle.same_span(&gram), || {
                    format!("{name}: oracle != Gram kernel")
                })?;
            } else {
                let w = modular_witness(&g, k).map_err(e2s)?;
                ensure(oracle.contains_span(&w), || {
                    format!("{name}: oracle misses witness")
                })?;
            }
            if p.pow(n as u32) <= 64 {
                brute += 1;
                let members = naive_radical(&g, k).map_err(e2s)?;
                ensure(
                    members.len() as u64 == p.pow(oracle.dimension() as u32)
                        && members.iter().all(|m| oracle.contains(m)),
                    || format!("{name}: brute force finds {} elements", members.len()),
                )?;
            }
        }
    }
    Ok(format!("{cases} cases, {brute} also checked by definition"))
}

fn naive_product(x: &GroupRingElement, y: &GroupRingElement) -> Vec<Scalar> {
    let g = x.group();
    let mut out = vec![x.spec().zero(); g.order()];
    for (i, a) in x.coeffs().iter().enumerate() {
        for (j, b) in y.coeffs().iter().enumerate() {
            let k = g.mul(i, j);
            out[k] = &out[k] + &(a * b);
        }
    }
    out
}

fn diagonal_sum(m: &ExactMatrix) -> Scalar {
    (0..m.rows()).fold(m.spec().zero(), |acc, i| &acc + &m[(i, i)])
}

const FUZZ_CORPUS: &[(&str, &str)] = &[
    ("C3", "Q"),
    ("S3", "Q"),
    ("Q8", "F3"),
    ("D4", "F2"),
    ("C2xC2", "F5"),
    ("C6", "F7"),
    ("D5", "F11"),
];
const PAIRS: usize = 1000;

fn homomorphism_fuzz() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for (gs, ks) in FUZZ_CORPUS {
        let g = Arc::new(parse_group(gs).unwrap());
        let k: FieldSpec = ks.parse().unwrap();
        let n = k.from_i64(g.order() as i64);
        for _ in 0..PAIRS {
            let x = GroupRingElement::random(&g, k, &mut rng);
            let y = GroupRingElement::random(&g, k, &mut rng);
            let xy = x.mul(&y).map_err(e2s)?;
            let (ex, ey) = (embed(&x), embed(&y));
            let ok = xy.coeffs() == naive_product(&x, &y)
                && embed(&xy) == ex.mul(&ey).map_err(e2s)?
                && embed(&x.add(&y).map_err(e2s)?) == ex.add(&ey).map_err(e2s)?
                && diagonal_sum(&ex) == x.tau()
                && x.tau() == &n * &x.coeffs()[0];
            ensure(ok, || format!("{ks}[{gs}]: fails at x = {x}, y = {y}"))?;
        }
    }
    Ok(format!(
        "{} combos x {PAIRS} pairs, 0 failures",
        FUZZ_CORPUS.len()
    ))
}

fn corpus_cells(max_order: usize) -> Vec<(Arc<FiniteGroup>, FieldSpec)> {
    let fs = fields();
    groups(max_order)
        .into_iter()
        .flat_map(|g| fs.iter().map(move |&k| (Arc::clone(&g), k)))
        .collect()
}

fn circulant_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let cells = corpus_cells(12);
    let (mut trips, mut rejected) = (0, 0);
    while trips < 1000 || rejected < 100 {
        let (g, k) = &cells[rng.gen_range(0..cells.len())];
        let x = GroupRingElement::random(g, *k, &mut rng);
        let m = embed(&x);
        ensure(is_g_circulant(&m, g).map_err(e2s)?, || {
            format!("embed({x}) not circulant")
        })?;
        ensure(extract(&m, g).map_err(e2s)? == x, || {
            format!("extract(embed({x})) differs")
        })?;
        trips += 1;
        let n = g.order();
        if n < 2 {
            continue;
        }
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let bump = loop {
            let c = k.from_i64(rng.gen_range(-5..=5));
            if !c.is_zero() {
                break c;
            }
        };
        let mut bad = m.clone();
        bad[(i, j)] = &bad[(i, j)] + &bump;
        ensure(!is_g_circulant(&bad, g).map_err(e2s)?, || {
            format!("perturbed embed({x}) accepted")
        })?;
        ensure(
            matches!(extract(&bad, g), Err(Error::NotCirculant { .. })),
            || format!("extract accepted perturbed embed({x})"),
        )?;
        rejected += 1;
    }
    Ok(format!(
        "{trips} round trips, {rejected} perturbations rejected"
    ))
}

fn lemma_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let (mut cases, mut elements) = (0, 0);
    for (g, k) in corpus_cells(24) {
        let n = g.order();
        if !divides(&k.to_string(), n) {
            continue;
        }
        cases += 1;
        let w = modular_witness(&g, k).map_err(e2s)?;
        for a in w.elements() {
            let r = lemma_nilpotency_check(a, &w, &mut rng, 100).map_err(e2s)?;
            let ea = embed(a);
            ensure(
                (1..=n).contains(&r.m)
                    && r.minimal_polynomial == Polynomial::monomial(k, r.m)
                    && r.unit_checks == 100
                    && ea.pow(r.m as u64).map_err(e2s)?.is_zero()
                    && !ea.pow(r.m as u64 - 1).map_err(e2s)?.is_zero(),
                || format!("{k}[{}]: {a} has m = {}", g.label(), r.m),
            )?;
            elements += 1;
        }
    }
    Ok(format!(
        "{cases} modular cases, {elements} witness elements, 100 unit checks each"
    ))
}

fn trace_obstruction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let cells: Vec<_> = corpus_cells(12)
        .into_iter()
        .filter(|(g, k)| !divides(&k.to_string(), g.order()))
        .collect();
    let mut tested = 0;
    while tested < 1000 {
        let (g, k) = &cells[tested % cells.len()];
        let a = GroupRingElement::random(g, *k, &mut rng);
        if a.coeffs()[0].is_zero() {
            continue;
        }
        let m = embed(&a);
        let n = g.order();
        let tr = diagonal_sum(&m);
        ensure(
            tr == &k.from_i64(n as i64) * &a.coeffs()[0]
                && !tr.is_zero()
                && !m.is_nilpotent().map_err(e2s)?.nilpotent
                && !m.pow(n as u64).map_err(e2s)?.is_zero(),
            || format!("{k}[{}]: {a} has trace {tr} or is nilpotent", g.label()),
        )?;
        tested += 1;
    }
    Ok(format!(
        "{tested} elements over {} non-modular cells",
        cells.len()
    ))
}

fn regular_representation() -> Outcome {
    let gs = groups(usize::MAX);
    let mut pairs = 0;
    for g in &gs {
        let n = g.order();
        // A^g straight from the definition
        let dense: Vec<Vec<Vec<u32>>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|i| (0..n).map(|j| u32::from(g.mul(i, a) == j)).collect())
                    .collect()
            })
            .collect();
        let q = FieldSpec::rationals();
        let mut total = vec![vec![0u32; n]; n];
        for (a, m) in dense.iter().enumerate() {
            let lib = regular_rep(g, a).densify(q);
            ensure(
                (0..n).all(|i| (0..n).all(|j| lib[(i, j)] == q.from_i64(m[i][j] as i64))),
                || format!("{}: A^g{} differs from the definition", g.label(), a + 1),
            )?;
            let perm = (0..n).all(|i| {
                m[i].iter().sum::<u32>() == 1 && (0..n).map(|r| m[r][i]).sum::<u32>() == 1
            });
            ensure(perm, || {
                format!("{}: A^g{} not a permutation", g.label(), a + 1)
            })?;
            for i in 0..n {
                for j in 0..n {
                    total[i][j] += m[i][j];
                }
            }
        }
        ensure(total.iter().flatten().all(|&c| c == 1), || {
            format!("{}: supports overlap", g.label())
        })?;
        for a in 0..n {
            for b in 0..n {
                let ab = &dense[g.mul(a, b)];
                let prod: Vec<Vec<u32>> = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| (0..n).map(|l| dense[a][i][l] * dense[b][l][j]).sum())
                            .collect()
                    })
                    .collect();
                ensure(&prod == ab, || {
                    format!(
                        "{}: A^g{} A^g{} != A^(g{} g{})",
                        g.label(),
                        a + 1,
                        b + 1,
                        a + 1,
                        b + 1
                    )
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{} groups, {pairs} pairs", gs.len()))
}

fn sweep_json(seed: &str) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_grouplet"))
        .args(["sweep", "--format", "json", "--seed", seed])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        String::from_utf8_lossy(&out.stderr).into_owned()
    })?;
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let a = sweep_json("424242")?;
    let b = sweep_json("424242")?;
    ensure(a == b, || "two sweeps differ".into())?;
    let parsed: serde_json::Value = serde_json::from_slice(&a).map_err(|e| e.to_string())?;
    let cells = parsed.as_array().map_or(0, Vec::len);
    ensure(cells > 0, || "empty sweep".into())?;
    Ok(format!("{} bytes, {cells} cells, byte-identical", a.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "Maschke dichotomy table", dichotomy),
        (2, "Gram certificate", gram_certificate),
        (3, "oracle equivalence", oracle_equivalence),
        (4, "homomorphism fuzz", homomorphism_fuzz),
        (5, "circulant round trip", circulant_round_trip),
        (6, "lemma suite", lemma_suite),
        (7, "trace obstruction", trace_obstruction),
        (8, "regular-representation axioms", regular_representation),
        (9, "determinism", determinism),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {id} PASS {name}: {detail} [{secs:.2}s]"),
            Err(why) => {
                failed += 1;
                println!("criterion {id} FAIL {name}: {why} [{secs:.2}s]");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
